//! OV → SMLG gadget graphs.
//!
//! The pattern for `Y` is `B · (B P_y1 E) · … · (B P_yM E) · E`. The graph for
//! `X` chains `K = max(1, 2N-2)` universal components on top, one
//! W-component per vector of `X` in the middle, and another `K` universal
//! components at the bottom, between a `B`-labeled start node `s` and an
//! `E`-labeled end node `t`:
//!
//! ```text
//! s ─► U1_1 ─► … ─► U1_K ─► W_j ─► U2_1 ─► … ─► U2_K
//!
//! s ─► U1_k, s ─► W_j, W_j ─► t, U2_k ─► t   (all j, k)
//! ```
//!
//! The only `B,B` edges leave `s` and the only `E,E`
//! edges enter `t`, so a full occurrence must run from `s` to `t` through
//! exactly one W-component. The cyclic variant adds self-loops from the exit
//! to the entry of `U1_1` and of `U2_K`, letting arbitrarily many pattern
//! blocks be absorbed before and after the W-component.

use crate::error::{Error, Result};
use crate::model::{
    BitVector, GraphBuilder, LabeledGraph, NodeId, Pattern, TOKEN_BEGIN, TOKEN_END, TOKEN_ONE,
    TOKEN_ZERO,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    W,
    Universal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Acyclic,
    Cyclic,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "acyclic" => Ok(Variant::Acyclic),
            "cyclic" => Ok(Variant::Cyclic),
            _ => Err(Error::arg(format!("unknown variant {s:?}"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Acyclic => "acyclic",
            Variant::Cyclic => "cyclic",
        })
    }
}

/// One `B`-entry, `d` layers of `0`/`1` nodes, one `E`-exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetComponent {
    pub kind: ComponentKind,
    pub entry: NodeId,
    pub exit: NodeId,
    /// `layers[h]` holds the `0` node first, then the `1` node if present.
    pub layers: Vec<Vec<NodeId>>,
}

/// A component together with the graph holding only that component.
#[derive(Debug, Clone)]
pub struct Gadget {
    pub component: GadgetComponent,
    pub graph: LabeledGraph,
}

#[derive(Debug, Clone)]
pub struct ReductionGraph {
    pub graph: LabeledGraph,
    pub start: NodeId,
    pub end: NodeId,
    pub top_chain: Vec<GadgetComponent>,
    pub w_components: Vec<GadgetComponent>,
    pub bottom_chain: Vec<GadgetComponent>,
    pub variant: Variant,
}

/// Number of universal components in each chain for `N` vectors.
pub fn chain_len(n: usize) -> usize {
    (2 * n).saturating_sub(2).max(1)
}

/// Layer `h` always offers `0` and offers `1` iff `allow_one(h)`.
fn emit_component(
    b: &mut GraphBuilder,
    kind: ComponentKind,
    dim: usize,
    allow_one: impl Fn(usize) -> bool,
) -> GadgetComponent {
    let entry = b.add_node(TOKEN_BEGIN);
    let layers: Vec<Vec<NodeId>> = (0..dim)
        .map(|h| {
            let mut layer = vec![b.add_node(TOKEN_ZERO)];
            if allow_one(h) {
                layer.push(b.add_node(TOKEN_ONE));
            }
            layer
        })
        .collect();
    let exit = b.add_node(TOKEN_END);

    let mut prev = vec![entry];
    for layer in layers.iter().chain(std::iter::once(&vec![exit])) {
        for &u in &prev {
            for &v in layer {
                b.add_edge(u, v);
            }
        }
        prev = layer.clone();
    }
    GadgetComponent {
        kind,
        entry,
        exit,
        layers,
    }
}

fn emit_w(b: &mut GraphBuilder, x: &BitVector) -> GadgetComponent {
    emit_component(b, ComponentKind::W, x.dim(), |h| !x.get(h))
}

fn emit_universal(b: &mut GraphBuilder, dim: usize) -> GadgetComponent {
    emit_component(b, ComponentKind::Universal, dim, |_| true)
}

/// Component traversable by `B P_y E` exactly when `x · y = 0`.
pub fn build_w_component(x: &BitVector) -> Gadget {
    let mut b = GraphBuilder::new();
    let component = emit_w(&mut b, x);
    Gadget {
        component,
        graph: b.finish(),
    }
}

/// Component traversable by `B P_y E` for every `y`.
pub fn build_universal_component(dim: usize) -> Result<Gadget> {
    if dim == 0 {
        return Err(Error::arg("dimension must be at least 1"));
    }
    let mut b = GraphBuilder::new();
    let component = emit_universal(&mut b, dim);
    Ok(Gadget {
        component,
        graph: b.finish(),
    })
}

/// Tokens `0`/`1` spelling `y`.
pub fn subpattern_tokens(y: &BitVector) -> impl Iterator<Item = &'static str> + '_ {
    y.bits()
        .iter()
        .map(|&bit| if bit { TOKEN_ONE } else { TOKEN_ZERO })
}

/// `B · (B P_y1 E) · … · (B P_yM E) · E`, of length `M(d+2)+2`.
pub fn build_pattern(ys: &[BitVector], dim: usize) -> Result<Pattern> {
    if ys.is_empty() {
        return Err(Error::arg("pattern needs at least one vector"));
    }
    if let Some(y) = ys.iter().find(|y| y.dim() != dim) {
        return Err(Error::arg(format!(
            "vector of dimension {} in a dimension-{dim} pattern",
            y.dim()
        )));
    }
    let mut tokens = Vec::with_capacity(ys.len() * (dim + 2) + 2);
    tokens.push(TOKEN_BEGIN);
    for y in ys {
        tokens.push(TOKEN_BEGIN);
        tokens.extend(subpattern_tokens(y));
        tokens.push(TOKEN_END);
    }
    tokens.push(TOKEN_END);
    Ok(Pattern::new(tokens))
}

/// Builds the graph for `xs`. Node ids follow a fixed layout: `s`, the top
/// chain, the W-components in order, the bottom chain, then `t`.
pub fn assemble_graph(xs: &[BitVector], dim: usize, variant: Variant) -> Result<ReductionGraph> {
    if xs.is_empty() {
        return Err(Error::arg("graph needs at least one vector"));
    }
    if dim == 0 {
        return Err(Error::arg("dimension must be at least 1"));
    }
    if let Some(x) = xs.iter().find(|x| x.dim() != dim) {
        return Err(Error::arg(format!(
            "vector of dimension {} in a dimension-{dim} graph",
            x.dim()
        )));
    }
    let k = chain_len(xs.len());
    let mut b = GraphBuilder::new();

    let start = b.add_node(TOKEN_BEGIN);
    let top: Vec<_> = (0..k).map(|_| emit_universal(&mut b, dim)).collect();
    let ws: Vec<_> = xs.iter().map(|x| emit_w(&mut b, x)).collect();
    let bottom: Vec<_> = (0..k).map(|_| emit_universal(&mut b, dim)).collect();
    let end = b.add_node(TOKEN_END);

    for u in &top {
        b.add_edge(start, u.entry);
    }
    for pair in top.windows(2) {
        b.add_edge(pair[0].exit, pair[1].entry);
    }
    let last_top = top[k - 1].exit;
    for w in &ws {
        b.add_edge(last_top, w.entry);
        b.add_edge(start, w.entry);
        b.add_edge(w.exit, end);
        b.add_edge(w.exit, bottom[0].entry);
    }
    for pair in bottom.windows(2) {
        b.add_edge(pair[0].exit, pair[1].entry);
    }
    for u in &bottom {
        b.add_edge(u.exit, end);
    }
    if variant == Variant::Cyclic {
        b.add_edge(top[0].exit, top[0].entry);
        b.add_edge(bottom[k - 1].exit, bottom[k - 1].entry);
    }

    Ok(ReductionGraph {
        graph: b.finish(),
        start,
        end,
        top_chain: top,
        w_components: ws,
        bottom_chain: bottom,
        variant,
    })
}

/// `2 + (2K + N)(2d + 2)`, an upper bound on the node count.
pub fn node_bound(n: usize, dim: usize) -> usize {
    2 + (2 * chain_len(n) + n) * (2 * dim + 2)
}
