//! Deciding whether some path of a labeled graph spells a pattern.
//!
//! [`Matcher`] runs the frontier dynamic program: the set of nodes at which
//! a prefix of the pattern can end is advanced one token at a time along
//! out-edges. Occurrences are free-standing (any path, not only source to
//! sink) and nodes may repeat on cyclic graphs. Work is bounded by
//! `|V| + |E|·|P|`.
//!
//! [`match_bruteforce`] is a separate memoized depth-first search over
//! label-consistent walks, used as an oracle in tests.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{LabeledGraph, NodeId, Pattern};

/// A path whose labels spell the pattern, one node per token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchWitness {
    pub path: Vec<NodeId>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatchStats {
    /// (edge, position) pairs examined while advancing the frontier.
    pub relaxations: u64,
}

/// A graph compiled for repeated queries: interned labels and forward and
/// reverse adjacency in compressed form.
#[derive(Debug, Clone)]
pub struct Matcher {
    symbols: HashMap<String, u32>,
    labels: Vec<u32>,
    out_offsets: Vec<usize>,
    out_targets: Vec<NodeId>,
    in_offsets: Vec<usize>,
    in_sources: Vec<NodeId>,
    by_label: Vec<Vec<NodeId>>,
}

fn compress(
    n: usize,
    pairs: impl Iterator<Item = (NodeId, NodeId)> + Clone,
) -> (Vec<usize>, Vec<NodeId>) {
    let mut offsets = vec![0usize; n + 1];
    for (u, _) in pairs.clone() {
        offsets[u + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut targets = vec![0; offsets[n]];
    for (u, v) in pairs {
        targets[fill[u]] = v;
        fill[u] += 1;
    }
    (offsets, targets)
}

impl Matcher {
    pub fn new(g: &LabeledGraph) -> Result<Self> {
        g.ensure_valid()?;
        let mut symbols = HashMap::new();
        let mut by_label: Vec<Vec<NodeId>> = Vec::new();
        let labels = g
            .labels()
            .iter()
            .enumerate()
            .map(|(v, token)| {
                let next = symbols.len() as u32;
                let sym = *symbols.entry(token.clone()).or_insert(next);
                if sym as usize == by_label.len() {
                    by_label.push(Vec::new());
                }
                by_label[sym as usize].push(v);
                sym
            })
            .collect();
        let n = g.node_count();
        let edges = g.edges();
        let (out_offsets, out_targets) = compress(n, edges.iter().copied());
        let (in_offsets, in_sources) = compress(n, edges.iter().map(|&(u, v)| (v, u)));
        Ok(Self {
            symbols,
            labels,
            out_offsets,
            out_targets,
            in_offsets,
            in_sources,
            by_label,
        })
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out_targets.len()
    }

    fn successors(&self, v: NodeId) -> &[NodeId] {
        &self.out_targets[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    fn predecessors(&self, v: NodeId) -> &[NodeId] {
        &self.in_sources[self.in_offsets[v]..self.in_offsets[v + 1]]
    }

    /// Interned pattern; `None` if some token never occurs in the graph.
    fn intern(&self, p: &Pattern) -> Result<Option<Vec<u32>>> {
        if p.is_empty() {
            return Err(Error::arg("pattern must contain at least one token"));
        }
        Ok(p.tokens()
            .iter()
            .map(|t| self.symbols.get(t.as_str()).copied())
            .collect())
    }

    /// Runs the frontier DP, calling `keep` with each non-empty frontier.
    /// Returns `false` as soon as a frontier dies out.
    fn run(&self, syms: &[u32], stats: &mut MatchStats, mut keep: impl FnMut(&[NodeId])) -> bool {
        let mut frontier = self.by_label[syms[0] as usize].clone();
        let mut next = Vec::new();
        let mut in_next = vec![false; self.node_count()];
        keep(&frontier);
        for &sym in &syms[1..] {
            for &v in &frontier {
                for &w in self.successors(v) {
                    stats.relaxations += 1;
                    if self.labels[w] == sym && !in_next[w] {
                        in_next[w] = true;
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                return false;
            }
            for &w in &next {
                in_next[w] = false;
            }
            std::mem::swap(&mut frontier, &mut next);
            next.clear();
            keep(&frontier);
        }
        true
    }

    pub fn is_match(&self, p: &Pattern) -> Result<bool> {
        self.is_match_counted(p).map(|(found, _)| found)
    }

    pub fn is_match_counted(&self, p: &Pattern) -> Result<(bool, MatchStats)> {
        let mut stats = MatchStats::default();
        let found = match self.intern(p)? {
            Some(syms) => self.run(&syms, &mut stats, |_| {}),
            None => false,
        };
        Ok((found, stats))
    }

    /// Some witness path iff the pattern occurs.
    pub fn find_path(&self, p: &Pattern) -> Result<Option<MatchWitness>> {
        let Some(syms) = self.intern(p)? else {
            return Ok(None);
        };
        let mut levels: Vec<Vec<NodeId>> = Vec::with_capacity(syms.len());
        if !self.run(&syms, &mut MatchStats::default(), |f| {
            levels.push(f.to_vec())
        }) {
            return Ok(None);
        }
        let mut marked = vec![false; self.node_count()];
        let mut path = vec![levels[levels.len() - 1][0]];
        for level in levels[..levels.len() - 1].iter().rev() {
            for &u in level {
                marked[u] = true;
            }
            let cur = *path.last().unwrap();
            let prev = *self
                .predecessors(cur)
                .iter()
                .find(|&&u| marked[u])
                .expect("frontier node without a predecessor in the previous frontier");
            for &u in level {
                marked[u] = false;
            }
            path.push(prev);
        }
        path.reverse();
        Ok(Some(MatchWitness { path }))
    }
}

/// Online matcher: true iff a path of `|P|` nodes spells `p`.
pub fn match_online(g: &LabeledGraph, p: &Pattern) -> Result<bool> {
    Matcher::new(g)?.is_match(p)
}

pub fn find_match_path(g: &LabeledGraph, p: &Pattern) -> Result<Option<MatchWitness>> {
    Matcher::new(g)?.find_path(p)
}

/// Checks a witness against the graph and pattern directly.
pub fn verify_witness(g: &LabeledGraph, p: &Pattern, w: &MatchWitness) -> bool {
    let path = &w.path;
    if path.len() != p.len() || path.iter().any(|&v| v >= g.node_count()) {
        return false;
    }
    let labels_ok = path.iter().zip(p.tokens()).all(|(&v, t)| g.label(v) == t);
    let edges_ok = path
        .windows(2)
        .all(|pair| g.edges().contains(&(pair[0], pair[1])));
    labels_ok && edges_ok
}

/// Size limits for [`match_bruteforce`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub max_nodes: usize,
    pub max_pattern: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self {
            max_nodes: 64,
            max_pattern: 32,
        }
    }
}

impl OracleCaps {
    /// Caps large enough for the reduction instances used by the
    /// verification harness (N, M ≤ 32, d ≤ 16).
    pub fn harness() -> Self {
        Self {
            max_nodes: 1 << 16,
            max_pattern: 1 << 12,
        }
    }
}

pub fn match_bruteforce(g: &LabeledGraph, p: &Pattern) -> Result<bool> {
    match_bruteforce_with_caps(g, p, OracleCaps::default())
}

pub fn match_bruteforce_with_caps(g: &LabeledGraph, p: &Pattern, caps: OracleCaps) -> Result<bool> {
    g.ensure_valid()?;
    if p.is_empty() {
        return Err(Error::arg("pattern must contain at least one token"));
    }
    if g.node_count() > caps.max_nodes || p.len() > caps.max_pattern {
        return Err(Error::OracleRefused(format!(
            "|V| = {}, |P| = {} exceed caps ({}, {})",
            g.node_count(),
            p.len(),
            caps.max_nodes,
            caps.max_pattern
        )));
    }

    struct Search<'a> {
        g: &'a LabeledGraph,
        succ: Vec<Vec<NodeId>>,
        tokens: &'a [String],
        memo: HashMap<(NodeId, usize), bool>,
    }

    impl Search<'_> {
        // Can a walk starting at v spell tokens[i..]?
        fn walk(&mut self, v: NodeId, i: usize) -> bool {
            if self.g.label(v) != self.tokens[i] {
                return false;
            }
            if i + 1 == self.tokens.len() {
                return true;
            }
            if let Some(&hit) = self.memo.get(&(v, i)) {
                return hit;
            }
            let mut hit = false;
            for k in 0..self.succ[v].len() {
                let w = self.succ[v][k];
                if self.walk(w, i + 1) {
                    hit = true;
                    break;
                }
            }
            self.memo.insert((v, i), hit);
            hit
        }
    }

    let mut search = Search {
        g,
        succ: g.successors(),
        tokens: p.tokens(),
        memo: HashMap::new(),
    };
    Ok((0..g.node_count()).any(|v| search.walk(v, 0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(labels: &[&str], edges: &[(usize, usize)]) -> LabeledGraph {
        LabeledGraph::new(
            labels.iter().map(|s| s.to_string()).collect(),
            edges.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn path_graph() {
        let g = graph(&["0", "1", "0"], &[(0, 1), (1, 2)]);
        assert!(match_online(&g, &Pattern::from_words("1 0")).unwrap());
        assert!(!match_online(&g, &Pattern::from_words("1 1")).unwrap());
        assert!(!match_online(&g, &Pattern::from_words("0 x")).unwrap());
        let w = find_match_path(&g, &Pattern::from_words("0 1 0"))
            .unwrap()
            .unwrap();
        assert_eq!(w.path, vec![0, 1, 2]);
        assert!(find_match_path(&g, &Pattern::from_words("0 0"))
            .unwrap()
            .is_none());
    }

    #[test]
    fn self_loop_reuse() {
        let g = graph(&["0"], &[(0, 0)]);
        let p = Pattern::from_words("0 0 0 0");
        assert!(match_online(&g, &p).unwrap());
        assert!(match_bruteforce(&g, &p).unwrap());
        let w = find_match_path(&g, &p).unwrap().unwrap();
        assert_eq!(w.path, vec![0; 4]);
        assert!(verify_witness(&g, &p, &w));
    }

    #[test]
    fn empty_pattern_is_an_error() {
        let g = graph(&["0"], &[]);
        assert!(matches!(
            match_online(&g, &Pattern::default()),
            Err(Error::InvalidArgument(_))
        ));
        assert!(match_bruteforce(&g, &Pattern::default()).is_err());
    }

    #[test]
    fn oracle_trivia() {
        let g = graph(&["a", "a", "b"], &[]);
        assert!(!match_bruteforce(&g, &Pattern::from_words("a a")).unwrap());
        assert!(match_bruteforce(&g, &Pattern::from_words("b")).unwrap());
        let single = graph(&["a"], &[]);
        assert!(match_bruteforce(&single, &Pattern::from_words("a")).unwrap());
    }

    #[test]
    fn oracle_caps() {
        let labels: Vec<String> = (0..65).map(|_| "a".to_string()).collect();
        let big = LabeledGraph::new(labels, vec![]).unwrap();
        assert!(matches!(
            match_bruteforce(&big, &Pattern::from_words("a")),
            Err(Error::OracleRefused(_))
        ));
        let g = graph(&["a"], &[(0, 0)]);
        let long = Pattern::new(vec!["a"; 33]);
        assert!(match_bruteforce(&g, &long).is_err());
        assert!(match_bruteforce_with_caps(&g, &long, OracleCaps::harness()).unwrap());
    }

    #[test]
    fn invalid_graph_rejected() {
        let g = LabeledGraph::from_parts(vec!["a".into()], vec![(0, 2)]);
        assert!(matches!(Matcher::new(&g), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn witness_verifier_rejects_bad_paths() {
        let g = graph(&["0", "1", "0"], &[(0, 1), (1, 2)]);
        let p = Pattern::from_words("0 1 0");
        assert!(!verify_witness(
            &g,
            &p,
            &MatchWitness {
                path: vec![2, 1, 0]
            }
        ));
        assert!(!verify_witness(&g, &p, &MatchWitness { path: vec![0, 1] }));
        assert!(!verify_witness(
            &g,
            &p,
            &MatchWitness {
                path: vec![0, 1, 9]
            }
        ));
    }
}
