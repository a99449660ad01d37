//! End-to-end check of the OV → SMLG reduction against both oracles.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::format::serialize_ov;
use crate::harness::{random_ov_instance, trial_rng, worker_pool, InstanceShape, GENERATOR_NAME};
use crate::matcher::{match_bruteforce_with_caps, Matcher, OracleCaps};
use crate::model::{back_edge_count, is_acyclic};
use crate::ov::solve_ov_bruteforce;
use crate::reduction::{assemble_graph, build_pattern, Variant};

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub trials: usize,
    pub n: RangeInclusive<usize>,
    pub m: RangeInclusive<usize>,
    pub dim: RangeInclusive<usize>,
    pub seed: u64,
    pub variant: Variant,
    /// Probability of a 1 bit.
    pub p: f64,
    /// Draw `M ≤ N`; the acyclic construction only fits such patterns.
    pub m_at_most_n: bool,
}

impl VerifyConfig {
    pub fn new(
        trials: usize,
        max_n: usize,
        max_m: usize,
        max_d: usize,
        seed: u64,
        variant: Variant,
    ) -> Self {
        Self {
            trials,
            n: 1..=max_n,
            m: 1..=max_m,
            dim: 1..=max_d,
            seed,
            variant,
            p: 0.5,
            m_at_most_n: variant == Variant::Acyclic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub planted: bool,
    pub v: usize,
    pub e: usize,
    pub p: usize,
    pub ov: bool,
    pub online: bool,
    pub bruteforce: bool,
    pub acyclic: bool,
    pub back_edges: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialFailure {
    pub trial: usize,
    pub reason: String,
    /// The offending instance in the OV text format.
    pub instance: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub records: Vec<TrialRecord>,
    pub failures: Vec<TrialFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.records.len() == self.config.trials
    }

    pub fn summary(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let max = |f: fn(&TrialRecord) -> usize| self.records.iter().map(f).max().unwrap_or(0);
        writeln!(out, "generator={GENERATOR_NAME}").unwrap();
        writeln!(out, "seed={}", c.seed).unwrap();
        writeln!(out, "variant={}", c.variant).unwrap();
        writeln!(out, "trials={}", c.trials).unwrap();
        writeln!(out, "n_range={}..={}", c.n.start(), c.n.end()).unwrap();
        writeln!(out, "m_range={}..={}", c.m.start(), c.m.end()).unwrap();
        writeln!(out, "d_range={}..={}", c.dim.start(), c.dim.end()).unwrap();
        writeln!(
            out,
            "positives={}",
            self.records.iter().filter(|r| r.ov).count()
        )
        .unwrap();
        writeln!(out, "max_nodes={}", max(|r| r.v)).unwrap();
        writeln!(out, "max_edges={}", max(|r| r.e)).unwrap();
        writeln!(out, "max_pattern={}", max(|r| r.p)).unwrap();
        writeln!(out, "failures={}", self.failures.len()).unwrap();
        for f in &self.failures {
            writeln!(out, "failure trial={} reason={}", f.trial, f.reason).unwrap();
        }
        out
    }
}

fn draw(rng: &mut impl Rng, range: &RangeInclusive<usize>) -> usize {
    rng.gen_range(range.clone())
}

fn run_trial(config: &VerifyConfig, trial: usize) -> (Option<TrialRecord>, Option<TrialFailure>) {
    let mut rng = trial_rng(config.seed, trial as u64);
    let n = draw(&mut rng, &config.n);
    let m_range = if config.m_at_most_n {
        *config.m.start()..=(*config.m.end()).min(n)
    } else {
        config.m.clone()
    };
    let m = draw(&mut rng, &m_range);
    let d = draw(&mut rng, &config.dim);
    let planted = trial.is_multiple_of(2);
    let inst = random_ov_instance(
        &mut rng,
        InstanceShape {
            n,
            m,
            dim: d,
            p: config.p,
            planted,
        },
    );

    let checked = || -> Result<(TrialRecord, Vec<String>)> {
        let red = assemble_graph(inst.x(), d, config.variant)?;
        let pattern = build_pattern(inst.y(), d)?;
        let g = &red.graph;
        let ov = solve_ov_bruteforce(&inst);
        let online = Matcher::new(g)?.is_match(&pattern)?;
        let bruteforce = match_bruteforce_with_caps(g, &pattern, OracleCaps::harness())?;
        let record = TrialRecord {
            trial,
            n,
            m,
            d,
            planted,
            v: g.node_count(),
            e: g.edge_count(),
            p: pattern.len(),
            ov,
            online,
            bruteforce,
            acyclic: is_acyclic(g)?,
            back_edges: back_edge_count(g)?,
        };
        let mut problems = Vec::new();
        if !(online == ov && bruteforce == ov) {
            problems.push(format!(
                "answers disagree: ov={ov} online={online} bruteforce={bruteforce}"
            ));
        }
        if record.p != m * (d + 2) + 2 {
            problems.push(format!("pattern length {} != M(d+2)+2", record.p));
        }
        match config.variant {
            Variant::Acyclic if !record.acyclic => {
                problems.push("acyclic build has a cycle".into())
            }
            Variant::Cyclic if record.back_edges != 2 => {
                problems.push(format!("cyclic build has {} back edges", record.back_edges))
            }
            _ => {}
        }
        Ok((record, problems))
    };

    let failure = |reason: String| TrialFailure {
        trial,
        reason,
        instance: serialize_ov(&inst),
    };
    match checked() {
        Ok((record, problems)) if problems.is_empty() => (Some(record), None),
        Ok((record, problems)) => (Some(record), Some(failure(problems.join("; ")))),
        Err(e) => (None, Some(failure(e.to_string()))),
    }
}

/// Runs `config.trials` independent trials; half of them plant an
/// orthogonal pair. Output order follows the trial index.
pub fn run_verify_reduction(config: &VerifyConfig) -> VerifyReport {
    let outcomes: Vec<_> = worker_pool().install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|t| run_trial(config, t))
            .collect()
    });
    let mut records = Vec::with_capacity(outcomes.len());
    let mut failures = Vec::new();
    for (record, failure) in outcomes {
        records.extend(record);
        failures.extend(failure);
    }
    VerifyReport {
        config: config.clone(),
        records,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_is_clean_and_deterministic() {
        let config = VerifyConfig::new(40, 4, 4, 4, 5, Variant::Cyclic);
        let a = run_verify_reduction(&config);
        let b = run_verify_reduction(&config);
        assert!(a.passed(), "{}", a.summary());
        assert_eq!(a.summary(), b.summary());
        assert_eq!(a.records, b.records);
    }

    #[test]
    fn acyclic_respects_m_at_most_n() {
        let report = run_verify_reduction(&VerifyConfig::new(40, 5, 5, 3, 9, Variant::Acyclic));
        assert!(report.passed(), "{}", report.summary());
        assert!(report.records.iter().all(|r| r.m <= r.n && r.acyclic));
    }
}
