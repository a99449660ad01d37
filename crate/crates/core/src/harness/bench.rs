//! Wall-clock timing of the online matcher on reduction instances.

use std::hint::black_box;
use std::io::Write;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::{random_ov_instance, trial_rng, InstanceShape};
use crate::matcher::Matcher;
use crate::reduction::{assemble_graph, build_pattern, Variant};

pub const BENCH_CSV_HEADER: &str = "n,m,d,variant,v,e,p,ns,answer,seed";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchSize {
    pub n: usize,
    pub m: usize,
    pub d: usize,
}

impl std::str::FromStr for BenchSize {
    type Err = Error;

    /// `N,M,d`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|w| w.trim().parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::arg(format!("bad size {s:?}, expected N,M,d")))?;
        match parts[..] {
            [n, m, d] => Ok(BenchSize { n, m, d }),
            _ => Err(Error::arg(format!("bad size {s:?}, expected N,M,d"))),
        }
    }
}

/// One timed query. `ns` is the mean over a batch of repeated queries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub variant: String,
    pub v: usize,
    pub e: usize,
    pub p: usize,
    pub ns: u64,
    pub answer: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOptions {
    pub repetitions: usize,
    pub seed: u64,
    pub variant: Variant,
    pub p: f64,
    /// Each measurement repeats the query until this much time has passed.
    pub min_batch: Duration,
}

impl BenchOptions {
    pub fn new(repetitions: usize, seed: u64, variant: Variant) -> Self {
        Self {
            repetitions,
            seed,
            variant,
            p: 0.5,
            min_batch: Duration::from_millis(2),
        }
    }
}

/// One record per `(size, repetition)`, in that order. Runs on the calling
/// thread so that timings are not disturbed by other workers.
pub fn bench_matcher(sizes: &[BenchSize], opts: &BenchOptions) -> Result<Vec<BenchRecord>> {
    let mut out = Vec::with_capacity(sizes.len() * opts.repetitions);
    for (si, size) in sizes.iter().enumerate() {
        for rep in 0..opts.repetitions {
            let seed = opts.seed.wrapping_add((si * opts.repetitions + rep) as u64);
            let mut rng = trial_rng(seed, 0);
            let shape = InstanceShape {
                n: size.n,
                m: size.m,
                dim: size.d,
                p: opts.p,
                planted: false,
            };
            let inst = random_ov_instance(&mut rng, shape);
            let red = assemble_graph(inst.x(), size.d, opts.variant)?;
            let pattern = build_pattern(inst.y(), size.d)?;
            let matcher = Matcher::new(&red.graph)?;

            let answer = matcher.is_match(&pattern)?;
            let start = Instant::now();
            let mut iters = 0u128;
            while iters == 0 || start.elapsed() < opts.min_batch {
                black_box(matcher.is_match(black_box(&pattern))?);
                iters += 1;
            }
            let ns = (start.elapsed().as_nanos() / iters).max(1) as u64;
            out.push(BenchRecord {
                n: size.n,
                m: size.m,
                d: size.d,
                variant: opts.variant.to_string(),
                v: red.graph.node_count(),
                e: red.graph.edge_count(),
                p: pattern.len(),
                ns,
                answer,
                seed,
            });
        }
    }
    Ok(out)
}

pub fn write_bench_csv<W: Write>(records: &[BenchRecord], w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    if records.is_empty() {
        wtr.write_record(BENCH_CSV_HEADER.split(','))?;
    }
    for r in records {
        wtr.serialize(r)?;
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_row_count() {
        let mut opts = BenchOptions::new(5, 1, Variant::Cyclic);
        opts.min_batch = Duration::from_micros(50);
        let sizes = [BenchSize { n: 2, m: 3, d: 4 }, "3,2,2".parse().unwrap()];
        let records = bench_matcher(&sizes, &opts).unwrap();
        assert_eq!(records.len(), 10);
        assert!(records
            .iter()
            .all(|r| r.ns > 0 && r.p == r.m * (r.d + 2) + 2));

        let mut buf = Vec::new();
        write_bench_csv(&records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), BENCH_CSV_HEADER);
        assert_eq!(text.lines().count(), 11);

        let mut empty = Vec::new();
        write_bench_csv(&[], &mut empty).unwrap();
        assert_eq!(
            String::from_utf8(empty).unwrap().trim_end(),
            BENCH_CSV_HEADER
        );
    }

    #[test]
    fn size_parsing() {
        assert_eq!(
            "4, 5,6".parse::<BenchSize>().unwrap(),
            BenchSize { n: 4, m: 5, d: 6 }
        );
        assert!("4,5".parse::<BenchSize>().is_err());
        assert!("a,b,c".parse::<BenchSize>().is_err());
    }
}
