//! Indexing schemes and linear independent-components reductions.
//!
//! A problem's input splits into a part that is indexed and a part that is
//! queried. An [`IndexScheme`] preprocesses the first and answers the second.
//! A [`LicReduction`] maps each part of problem A independently into the
//! matching part of problem B, plus a map `s` from B's answer back to A's.
//! [`transfer_index`] turns a scheme for B into one for A:
//!
//! ```text
//! build_A(a_x)      = build_B(r_x(a_x))
//! query_A(idx, a_y) = s(query_B(idx, r_y(a_y)))
//! ```

use std::marker::PhantomData;

use crate::error::Result;
use crate::matcher::Matcher;
use crate::model::{BitVector, LabeledGraph, Pattern};
use crate::reduction::gadget::{assemble_graph, build_pattern, Variant};

/// Declared cost exponents: build time `|x|^alpha`, query time
/// `|x|^delta · |y|^beta`. `parameter` is the reduction parameter `k` whose
/// polynomial factors the costs may carry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostExponents {
    pub alpha: f64,
    pub delta: f64,
    pub beta: f64,
    pub parameter: Option<usize>,
}

pub trait IndexScheme {
    type Indexed;
    type Query;
    type Answer;
    type Index;

    fn costs(&self) -> CostExponents;
    fn build(&self, x: &Self::Indexed) -> Result<Self::Index>;
    fn query(&self, index: &Self::Index, y: &Self::Query) -> Result<Self::Answer>;
}

pub trait LicReduction {
    type SourceIndexed;
    type SourceQuery;
    type SourceAnswer;
    type TargetIndexed;
    type TargetQuery;
    type TargetAnswer;

    fn parameter(&self) -> usize;
    fn reduce_indexed(&self, x: &Self::SourceIndexed) -> Result<Self::TargetIndexed>;
    fn reduce_query(&self, y: &Self::SourceQuery) -> Result<Self::TargetQuery>;
    fn recover(&self, answer: Self::TargetAnswer) -> Self::SourceAnswer;
}

/// Scheme for A obtained from a scheme for B through a reduction A → B.
#[derive(Debug, Clone)]
pub struct TransferredScheme<R, S> {
    reduction: R,
    inner: S,
}

pub fn transfer_index<R, S>(reduction: R, scheme: S) -> TransferredScheme<R, S>
where
    R: LicReduction,
    S: IndexScheme<Indexed = R::TargetIndexed, Query = R::TargetQuery, Answer = R::TargetAnswer>,
{
    TransferredScheme {
        reduction,
        inner: scheme,
    }
}

impl<R, S> IndexScheme for TransferredScheme<R, S>
where
    R: LicReduction,
    S: IndexScheme<Indexed = R::TargetIndexed, Query = R::TargetQuery, Answer = R::TargetAnswer>,
{
    type Indexed = R::SourceIndexed;
    type Query = R::SourceQuery;
    type Answer = R::SourceAnswer;
    type Index = S::Index;

    fn costs(&self) -> CostExponents {
        CostExponents {
            parameter: Some(self.reduction.parameter()),
            ..self.inner.costs()
        }
    }

    fn build(&self, x: &Self::Indexed) -> Result<Self::Index> {
        self.inner.build(&self.reduction.reduce_indexed(x)?)
    }

    fn query(&self, index: &Self::Index, y: &Self::Query) -> Result<Self::Answer> {
        let target = self.reduction.reduce_query(y)?;
        Ok(self.reduction.recover(self.inner.query(index, &target)?))
    }
}

/// The reduction that changes nothing.
#[derive(Debug)]
pub struct IdentityReduction<X, Y, A>(PhantomData<fn(X, Y, A)>);

impl<X, Y, A> IdentityReduction<X, Y, A> {
    pub fn new() -> Self {
        Self(PhantomData)
    }
}

impl<X, Y, A> Default for IdentityReduction<X, Y, A> {
    fn default() -> Self {
        Self::new()
    }
}

impl<X, Y, A> Clone for IdentityReduction<X, Y, A> {
    fn clone(&self) -> Self {
        Self::new()
    }
}

impl<X: Clone, Y: Clone, A> LicReduction for IdentityReduction<X, Y, A> {
    type SourceIndexed = X;
    type SourceQuery = Y;
    type SourceAnswer = A;
    type TargetIndexed = X;
    type TargetQuery = Y;
    type TargetAnswer = A;

    fn parameter(&self) -> usize {
        1
    }

    fn reduce_indexed(&self, x: &X) -> Result<X> {
        Ok(x.clone())
    }

    fn reduce_query(&self, y: &Y) -> Result<Y> {
        Ok(y.clone())
    }

    fn recover(&self, answer: A) -> A {
        answer
    }
}

/// `first` followed by `second`; the parameter is the larger of the two.
#[derive(Debug, Clone)]
pub struct Composed<R1, R2> {
    pub first: R1,
    pub second: R2,
}

pub fn compose<R1, R2>(first: R1, second: R2) -> Composed<R1, R2>
where
    R1: LicReduction,
    R2: LicReduction<
        SourceIndexed = R1::TargetIndexed,
        SourceQuery = R1::TargetQuery,
        SourceAnswer = R1::TargetAnswer,
    >,
{
    Composed { first, second }
}

impl<R1, R2> LicReduction for Composed<R1, R2>
where
    R1: LicReduction,
    R2: LicReduction<
        SourceIndexed = R1::TargetIndexed,
        SourceQuery = R1::TargetQuery,
        SourceAnswer = R1::TargetAnswer,
    >,
{
    type SourceIndexed = R1::SourceIndexed;
    type SourceQuery = R1::SourceQuery;
    type SourceAnswer = R1::SourceAnswer;
    type TargetIndexed = R2::TargetIndexed;
    type TargetQuery = R2::TargetQuery;
    type TargetAnswer = R2::TargetAnswer;

    fn parameter(&self) -> usize {
        self.first.parameter().max(self.second.parameter())
    }

    fn reduce_indexed(&self, x: &Self::SourceIndexed) -> Result<Self::TargetIndexed> {
        self.second.reduce_indexed(&self.first.reduce_indexed(x)?)
    }

    fn reduce_query(&self, y: &Self::SourceQuery) -> Result<Self::TargetQuery> {
        self.second.reduce_query(&self.first.reduce_query(y)?)
    }

    fn recover(&self, answer: Self::TargetAnswer) -> Self::SourceAnswer {
        self.first.recover(self.second.recover(answer))
    }
}

/// OV → SMLG: the graph is built from `X` alone, the pattern from `Y` alone.
#[derive(Debug, Clone, Copy)]
pub struct OvToSmlg {
    pub dim: usize,
    pub variant: Variant,
}

pub fn ov_to_smlg_reduction(dim: usize, variant: Variant) -> OvToSmlg {
    OvToSmlg { dim, variant }
}

impl LicReduction for OvToSmlg {
    type SourceIndexed = Vec<BitVector>;
    type SourceQuery = Vec<BitVector>;
    type SourceAnswer = bool;
    type TargetIndexed = LabeledGraph;
    type TargetQuery = Pattern;
    type TargetAnswer = bool;

    fn parameter(&self) -> usize {
        self.dim
    }

    fn reduce_indexed(&self, xs: &Vec<BitVector>) -> Result<LabeledGraph> {
        Ok(assemble_graph(xs, self.dim, self.variant)?.graph)
    }

    fn reduce_query(&self, ys: &Vec<BitVector>) -> Result<Pattern> {
        build_pattern(ys, self.dim)
    }

    fn recover(&self, answer: bool) -> bool {
        answer
    }
}

/// The online matcher seen as a scheme: building compiles the adjacency,
/// each query runs the frontier DP.
#[derive(Debug, Clone, Copy, Default)]
pub struct OnlineMatcherScheme;

impl IndexScheme for OnlineMatcherScheme {
    type Indexed = LabeledGraph;
    type Query = Pattern;
    type Answer = bool;
    type Index = Matcher;

    fn costs(&self) -> CostExponents {
        CostExponents {
            alpha: 1.0,
            delta: 1.0,
            beta: 1.0,
            parameter: None,
        }
    }

    fn build(&self, g: &LabeledGraph) -> Result<Matcher> {
        Matcher::new(g)
    }

    fn query(&self, index: &Matcher, p: &Pattern) -> Result<bool> {
        index.is_match(p)
    }
}

/// Brute-force OV posing as a scheme that stores `X` verbatim.
#[derive(Debug, Clone, Copy, Default)]
pub struct BruteForceOvScheme;

impl IndexScheme for BruteForceOvScheme {
    type Indexed = Vec<BitVector>;
    type Query = Vec<BitVector>;
    type Answer = bool;
    type Index = Vec<BitVector>;

    fn costs(&self) -> CostExponents {
        CostExponents {
            alpha: 1.0,
            delta: 1.0,
            beta: 1.0,
            parameter: None,
        }
    }

    fn build(&self, xs: &Vec<BitVector>) -> Result<Vec<BitVector>> {
        Ok(xs.clone())
    }

    fn query(&self, index: &Vec<BitVector>, ys: &Vec<BitVector>) -> Result<bool> {
        Ok(crate::ov::has_orthogonal_pair(index, ys))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        BitVector::from_bit_str(s).unwrap()
    }

    #[test]
    fn identity_transfer_keeps_answers_and_costs() {
        let scheme = transfer_index(IdentityReduction::new(), OnlineMatcherScheme);
        let g = LabeledGraph::new(vec!["a".into(), "b".into()], vec![(0, 1)]).unwrap();
        let idx = scheme.build(&g).unwrap();
        assert!(scheme.query(&idx, &Pattern::from_words("a b")).unwrap());
        assert!(!scheme.query(&idx, &Pattern::from_words("b a")).unwrap());
        let costs = scheme.costs();
        assert_eq!((costs.alpha, costs.delta, costs.beta), (1.0, 1.0, 1.0));
        assert_eq!(costs.parameter, Some(1));
    }

    #[test]
    fn ov_transfer_parameter_is_dimension() {
        let scheme = transfer_index(
            ov_to_smlg_reduction(2, Variant::Cyclic),
            OnlineMatcherScheme,
        );
        assert_eq!(scheme.costs().parameter, Some(2));
        let idx = scheme.build(&vec![bv("10"), bv("11")]).unwrap();
        assert!(scheme.query(&idx, &vec![bv("01")]).unwrap());
        assert!(!scheme.query(&idx, &vec![bv("11"), bv("10")]).unwrap());
    }

    #[test]
    fn recover_is_identity() {
        let red = ov_to_smlg_reduction(3, Variant::Acyclic);
        assert!(red.recover(true));
        assert!(!red.recover(false));
    }

    #[test]
    fn composition_of_identities() {
        let red = compose(
            IdentityReduction::<Vec<BitVector>, Vec<BitVector>, bool>::new(),
            IdentityReduction::new(),
        );
        let scheme = transfer_index(red, BruteForceOvScheme);
        let idx = scheme.build(&vec![bv("10")]).unwrap();
        assert!(scheme.query(&idx, &vec![bv("01")]).unwrap());
        assert!(!scheme.query(&idx, &vec![bv("10")]).unwrap());
    }
}
