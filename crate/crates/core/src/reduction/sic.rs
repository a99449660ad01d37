//! Set-intersection queries as string matching on a three-layer DAG.
//!
//! Set `i` appears twice, as a source labeled `s<i>` and a sink labeled
//! `t<i>`. Every universe element is one node labeled `A`. The source of
//! `S^i` points at its elements and its elements point at the sink of `S^i`,
//! so `s<i> A t<j>` occurs iff `S^i ∩ S^j ≠ ∅`. Set indices are 1-based.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matcher::Matcher;
use crate::model::{GraphBuilder, LabeledGraph, Pattern};

pub const ELEMENT_TOKEN: &str = "A";

/// Sets over the universe `[1..universe]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    sets: Vec<BTreeSet<usize>>,
    universe: usize,
}

impl SetFamily {
    pub fn new<S>(sets: Vec<S>, universe: usize) -> Result<Self>
    where
        S: IntoIterator<Item = usize>,
    {
        let sets: Vec<BTreeSet<usize>> =
            sets.into_iter().map(|s| s.into_iter().collect()).collect();
        for (i, set) in sets.iter().enumerate() {
            if let Some(&e) = set.iter().find(|&&e| e == 0 || e > universe) {
                return Err(Error::arg(format!(
                    "set {} holds {e}, outside universe [1..{universe}]",
                    i + 1
                )));
            }
        }
        Ok(Self { sets, universe })
    }

    pub fn sets(&self) -> &[BTreeSet<usize>] {
        &self.sets
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Direct intersection test on 1-based indices.
    pub fn intersects(&self, i: usize, j: usize) -> Result<bool> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(!self.sets[i - 1].is_disjoint(&self.sets[j - 1]))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            return Err(Error::arg(format!(
                "set index {i} outside [1..{}]",
                self.len()
            )));
        }
        Ok(())
    }
}

pub fn source_token(i: usize) -> String {
    format!("s{i}")
}

pub fn sink_token(i: usize) -> String {
    format!("t{i}")
}

#[derive(Debug, Clone)]
pub struct SicGraph {
    pub graph: LabeledGraph,
    pub set_count: usize,
    matcher: Matcher,
}

/// Node layout: sources `0..n`, elements `n..n+u`, sinks `n+u..2n+u`.
pub fn build_sic_graph(family: &SetFamily) -> Result<SicGraph> {
    let n = family.len();
    if n == 0 {
        return Err(Error::arg("need at least one set"));
    }
    let u = family.universe();
    let mut b = GraphBuilder::new();
    for i in 1..=n {
        b.add_node(source_token(i));
    }
    for _ in 0..u {
        b.add_node(ELEMENT_TOKEN);
    }
    for i in 1..=n {
        b.add_node(sink_token(i));
    }
    let element = |e: usize| n + e - 1;
    for (i, set) in family.sets().iter().enumerate() {
        for &e in set {
            b.add_edge(i, element(e));
        }
    }
    for (i, set) in family.sets().iter().enumerate() {
        for &e in set {
            b.add_edge(element(e), n + u + i);
        }
    }
    let graph = b.finish();
    let matcher = Matcher::new(&graph)?;
    Ok(SicGraph {
        graph,
        set_count: n,
        matcher,
    })
}

/// Matches `s<i> A t<j>`; true iff sets `i` and `j` intersect.
pub fn sic_query(g: &SicGraph, i: usize, j: usize) -> Result<bool> {
    for k in [i, j] {
        if k == 0 || k > g.set_count {
            return Err(Error::arg(format!(
                "set index {k} outside [1..{}]",
                g.set_count
            )));
        }
    }
    let pattern = Pattern::new([source_token(i), ELEMENT_TOKEN.to_string(), sink_token(j)]);
    g.matcher.is_match(&pattern)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{is_acyclic, is_deterministic};

    fn example() -> SetFamily {
        SetFamily::new(vec![vec![1, 2], vec![3], vec![2, 3]], 3).unwrap()
    }

    #[test]
    fn sizes() {
        let g = build_sic_graph(&example()).unwrap();
        assert_eq!(g.graph.node_count(), 9);
        assert_eq!(g.graph.edge_count(), 10);
        let out_of_sources = g.graph.edges().iter().filter(|(u, _)| *u < 3).count();
        assert_eq!(out_of_sources, 5);
        assert!(is_acyclic(&g.graph).unwrap());
        assert!(!is_deterministic(&g.graph).unwrap());
    }

    #[test]
    fn queries() {
        let g = build_sic_graph(&example()).unwrap();
        assert!(sic_query(&g, 1, 3).unwrap());
        assert!(!sic_query(&g, 1, 2).unwrap());
        assert!(sic_query(&g, 2, 2).unwrap());
        assert!(sic_query(&g, 0, 1).is_err());
        assert!(sic_query(&g, 1, 4).is_err());
    }

    #[test]
    fn single_empty_set() {
        let fam = SetFamily::new(vec![Vec::<usize>::new()], 2).unwrap();
        let g = build_sic_graph(&fam).unwrap();
        assert_eq!(g.graph.edge_count(), 0);
        assert!(!sic_query(&g, 1, 1).unwrap());
    }

    #[test]
    fn rejects_out_of_universe() {
        assert!(SetFamily::new(vec![vec![4]], 3).is_err());
        assert!(SetFamily::new(vec![vec![0]], 3).is_err());
        let empty = SetFamily::new(Vec::<Vec<usize>>::new(), 3).unwrap();
        assert!(build_sic_graph(&empty).is_err());
    }
}
