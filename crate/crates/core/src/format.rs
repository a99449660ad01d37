//! Line-oriented text formats for graphs, patterns, OV instances and set
//! families. All formats use LF line endings and base-10 counts, and every
//! serializer output ends with a newline.
//!
//! ```text
//! smlg-graph v1        smlg-pattern v1      ov v1          sic v1
//! nodes 2              B B 1 0 E            1 1 2          3 3
//! 0 a                                       10             1 2
//! 1 b                                       01             3
//! edges 1                                                  2 3
//! 0 1
//! ```

use std::fmt::Write as _;
use std::str::{FromStr, Lines};

use crate::error::{Error, Result};
use crate::model::{is_valid_token, BitVector, LabeledGraph, OvInstance, Pattern};
use crate::reduction::SetFamily;

pub const GRAPH_HEADER: &str = "smlg-graph v1";
pub const PATTERN_HEADER: &str = "smlg-pattern v1";
pub const OV_HEADER: &str = "ov v1";
pub const SIC_HEADER: &str = "sic v1";

struct LineReader<'a> {
    lines: Lines<'a>,
    line_no: usize,
}

impl<'a> LineReader<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            lines: text.lines(),
            line_no: 0,
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        self.line_no += 1;
        self.lines.next().ok_or_else(|| {
            Error::parse(
                self.line_no,
                format!("unexpected end of input, expected {what}"),
            )
        })
    }

    fn header(&mut self, expected: &str) -> Result<()> {
        let line = self.next("header")?;
        if line.trim_end() != expected {
            return Err(self.err(format!("malformed header {line:?}, expected {expected:?}")));
        }
        Ok(())
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line_no, msg)
    }

    fn number<T: FromStr>(&self, word: Option<&str>, what: &str) -> Result<T> {
        let word = word.ok_or_else(|| self.err(format!("missing {what}")))?;
        word.parse()
            .map_err(|_| self.err(format!("bad {what} {word:?}")))
    }

    /// `<keyword> <count>`
    fn counted(&mut self, keyword: &str) -> Result<usize> {
        let line = self.next(keyword)?;
        let mut words = line.split_whitespace();
        if words.next() != Some(keyword) {
            return Err(self.err(format!("expected `{keyword} <count>`, got {line:?}")));
        }
        let count = self.number(words.next(), "count")?;
        self.no_more(words)?;
        Ok(count)
    }

    fn no_more<'b>(&self, mut words: impl Iterator<Item = &'b str>) -> Result<()> {
        match words.next() {
            None => Ok(()),
            Some(w) => Err(self.err(format!("unexpected token {w:?}"))),
        }
    }

    fn finish(mut self) -> Result<()> {
        for line in self.lines.by_ref() {
            self.line_no += 1;
            if !line.trim().is_empty() {
                return Err(Error::parse(self.line_no, "trailing content"));
            }
        }
        Ok(())
    }
}

pub fn parse_graph(text: &str) -> Result<LabeledGraph> {
    let mut r = LineReader::new(text);
    r.header(GRAPH_HEADER)?;
    let n = r.counted("nodes")?;
    let mut labels = Vec::with_capacity(n);
    for expected in 0..n {
        let line = r.next("node line")?;
        let mut words = line.split_whitespace();
        let id: usize = r.number(words.next(), "node id")?;
        if id != expected {
            return Err(r.err(format!("node id {id} out of order, expected {expected}")));
        }
        let token = words.next().ok_or_else(|| r.err("missing label token"))?;
        r.no_more(words)?;
        labels.push(token.to_string());
    }
    let m = r.counted("edges")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let line = r.next("edge line")?;
        let mut words = line.split_whitespace();
        let src: usize = r.number(words.next(), "edge source")?;
        let dst: usize = r.number(words.next(), "edge target")?;
        r.no_more(words)?;
        if src >= n || dst >= n {
            return Err(r.err(format!("edge ({src},{dst}) out of range for {n} nodes")));
        }
        edges.push((src, dst));
    }
    r.finish()?;
    Ok(LabeledGraph::from_parts(labels, edges))
}

pub fn serialize_graph(g: &LabeledGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{GRAPH_HEADER}").unwrap();
    writeln!(out, "nodes {}", g.node_count()).unwrap();
    for (id, token) in g.labels().iter().enumerate() {
        writeln!(out, "{id} {token}").unwrap();
    }
    writeln!(out, "edges {}", g.edge_count()).unwrap();
    for (src, dst) in g.edges() {
        writeln!(out, "{src} {dst}").unwrap();
    }
    out
}

pub fn parse_pattern(text: &str) -> Result<Pattern> {
    let mut r = LineReader::new(text);
    r.header(PATTERN_HEADER)?;
    // an absent token line is the empty pattern
    let line = r.next("token line").unwrap_or("");
    let pattern = Pattern::from_words(line);
    r.finish()?;
    Ok(pattern)
}

pub fn serialize_pattern(p: &Pattern) -> String {
    format!("{PATTERN_HEADER}\n{p}\n")
}

pub fn parse_ov(text: &str) -> Result<OvInstance> {
    let mut r = LineReader::new(text);
    r.header(OV_HEADER)?;
    let line = r.next("`<N> <M> <d>`")?;
    let mut words = line.split_whitespace();
    let n: usize = r.number(words.next(), "N")?;
    let m: usize = r.number(words.next(), "M")?;
    let d: usize = r.number(words.next(), "d")?;
    r.no_more(words)?;
    let mut read_set = |count: usize| -> Result<Vec<BitVector>> {
        (0..count)
            .map(|_| {
                let line = r.next("bit vector")?.trim();
                let v = BitVector::from_bit_str(line)
                    .ok_or_else(|| r.err(format!("bad bit string {line:?}")))?;
                if v.dim() != d {
                    return Err(r.err(format!("vector has {} bits, expected {d}", v.dim())));
                }
                Ok(v)
            })
            .collect()
    };
    let x = read_set(n)?;
    let y = read_set(m)?;
    r.finish()?;
    OvInstance::new(x, y, d)
}

pub fn serialize_ov(inst: &OvInstance) -> String {
    let mut out = String::new();
    writeln!(out, "{OV_HEADER}").unwrap();
    writeln!(out, "{} {} {}", inst.x().len(), inst.y().len(), inst.dim()).unwrap();
    for v in inst.x().iter().chain(inst.y()) {
        writeln!(out, "{v}").unwrap();
    }
    out
}

pub fn parse_sets(text: &str) -> Result<SetFamily> {
    let mut r = LineReader::new(text);
    r.header(SIC_HEADER)?;
    let line = r.next("`<n> <u>`")?;
    let mut words = line.split_whitespace();
    let n: usize = r.number(words.next(), "set count")?;
    let u: usize = r.number(words.next(), "universe size")?;
    r.no_more(words)?;
    let mut sets = Vec::with_capacity(n);
    for _ in 0..n {
        // a missing final line is an empty set
        let line = r.next("set line").unwrap_or("");
        let set: Vec<usize> = line
            .split_whitespace()
            .map(|w| {
                let e: usize = r.number(Some(w), "element")?;
                if e == 0 || e > u {
                    return Err(r.err(format!("element {e} outside universe [1..{u}]")));
                }
                Ok(e)
            })
            .collect::<Result<_>>()?;
        sets.push(set);
    }
    r.finish()?;
    SetFamily::new(sets, u)
}

pub fn serialize_sets(family: &SetFamily) -> String {
    let mut out = String::new();
    writeln!(out, "{SIC_HEADER}").unwrap();
    writeln!(out, "{} {}", family.len(), family.universe()).unwrap();
    for set in family.sets() {
        let words: Vec<String> = set.iter().map(|e| e.to_string()).collect();
        writeln!(out, "{}", words.join(" ")).unwrap();
    }
    out
}

/// Tokens must be writable into a whitespace-separated line.
pub fn check_tokens(p: &Pattern) -> Result<()> {
    match p.tokens().iter().position(|t| !is_valid_token(t)) {
        None => Ok(()),
        Some(i) => Err(Error::arg(format!(
            "pattern token {i} is not a valid token"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = LabeledGraph::new(vec!["a".into(), "b".into()], vec![(0, 1)]).unwrap();
        let text = serialize_graph(&g);
        assert_eq!(text, "smlg-graph v1\nnodes 2\n0 a\n1 b\nedges 1\n0 1\n");
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn ov_direct_reading() {
        let inst = parse_ov("ov v1\n1 1 2\n10\n01\n").unwrap();
        assert_eq!((inst.x().len(), inst.y().len(), inst.dim()), (1, 1, 2));
        assert_eq!(inst.x()[0].to_string(), "10");
        assert_eq!(inst.y()[0].to_string(), "01");
    }

    #[test]
    fn pattern_direct_reading() {
        let p = parse_pattern("smlg-pattern v1\nB B 1 0 E\n").unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.tokens()[2], "1");
        assert_eq!(serialize_pattern(&p), "smlg-pattern v1\nB B 1 0 E\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let line_of = |r: Result<LabeledGraph>| match r {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line_of(parse_graph("smlg-graph v2\n")), 1);
        assert_eq!(line_of(parse_graph("smlg-graph v1\nnodes x\n")), 2);
        assert_eq!(
            line_of(parse_graph("smlg-graph v1\nnodes 1\n0 a\nedges 1\n0 4\n")),
            5
        );
        assert_eq!(line_of(parse_graph("smlg-graph v1\nnodes 2\n1 a\n")), 3);
        assert_eq!(
            line_of(parse_graph("smlg-graph v1\nnodes 1\n0 a\nedges 0\nextra\n")),
            5
        );

        match parse_ov("ov v1\n1 0 2\n1x\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_ov("ov v1\n1 0 3\n10\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sets_round_trip_with_empty_set() {
        let text = "sic v1\n3 3\n1 2\n\n2 3\n";
        let fam = parse_sets(text).unwrap();
        assert_eq!(fam.sets()[1].len(), 0);
        assert_eq!(serialize_sets(&fam), text);
        assert!(matches!(
            parse_sets("sic v1\n1 3\n4\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
