//! Orthogonal vectors: a brute-force solver, the splitting-parameter
//! machinery that turns a hypothetical (N,M)-OV index into a sub-quadratic
//! OV algorithm, and the partitioned solving loop it drives.
//!
//! A plan splits a size-`n` instance into subsets of `N` indexed vectors and
//! `M` query vectors. Its cost is `N^(α-1)·n + N^(δ-1)·M^(β-1)·n²`, and the
//! plan is sound when real-valued sizes `Ñ`, `M̃` satisfy
//!
//! ```text
//! (ã)  Ñ^(α-1)·n              = n^(2-ε')
//! (b̃)  Ñ^(δ-1)·M̃^(β-1)·n²     = n^(2-ε)
//! (c)  N = ⌈Ñ⌉, M = ⌈M̃⌉
//! (d)  1 ≤ Ñ ≤ n, 1 ≤ M̃ ≤ n
//! ```
//!
//! with ε, ε' > 0. The case analysis over (α, δ, β) lives in [`split_plan`].

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{BitVector, OvInstance};

/// True iff some `(x, y) ∈ X × Y` has `x · y = 0`.
pub fn solve_ov_bruteforce(inst: &OvInstance) -> bool {
    has_orthogonal_pair(inst.x(), inst.y())
}

/// Same as [`solve_ov_bruteforce`] on raw slices; usable as an (N,M)-OV
/// sub-solver.
pub fn has_orthogonal_pair(xs: &[BitVector], ys: &[BitVector]) -> bool {
    xs.iter().any(|x| ys.iter().any(|y| x.is_orthogonal(y)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SplitCase {
    C1_1_1,
    C1_1_2,
    C1_2,
    C1_3,
    C2_1,
    C2_2,
}

impl fmt::Display for SplitCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitPlan {
    pub case: SplitCase,
    pub eps: f64,
    pub eps_prime: f64,
    pub n_tilde: f64,
    pub m_tilde: f64,
    pub n_cap: u64,
    pub m_cap: u64,
}

/// Outcome of [`verify_plan`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanReport {
    /// `log_n(N^(α-1)·n)`
    pub cond_a_exp: f64,
    /// `log_n(N^(δ-1)·M^(β-1)·n²)`
    pub cond_b_exp: f64,
    pub cond_at_ok: bool,
    pub cond_bt_ok: bool,
    pub cond_c_ok: bool,
    pub cond_d_ok: bool,
    pub tol: f64,
}

impl PlanReport {
    pub fn conditions_ok(&self) -> bool {
        self.cond_at_ok && self.cond_bt_ok && self.cond_c_ok && self.cond_d_ok
    }

    /// Both achieved exponents below 2 by at least `margin`.
    pub fn subquadratic_by(&self, margin: f64) -> bool {
        2.0 - self.cond_a_exp >= margin && 2.0 - self.cond_b_exp >= margin
    }
}

/// Snaps values that are an integer up to rounding noise, so that e.g.
/// `10^6^0.5` yields `N = 1000` rather than `1001`.
fn settle(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.max(1.0) {
        r
    } else {
        x
    }
}

fn power_of(n: f64, exponent: f64) -> f64 {
    settle(n.powf(exponent)).clamp(1.0, n)
}

/// Chooses `(ε, ε', Ñ, M̃, N, M)` for a hypothetical index with build cost
/// exponent `alpha` and query cost `N^delta · M^beta`.
///
/// For `α ≠ 1` the free exponent `g = (1-ε')/(α-1)` of `Ñ = n^g` is fixed at
/// half its admissible upper bound; ε is taken at the midpoint of its
/// admissible interval except in case `C1_1_2`, where it sits on the closed
/// upper end so that `M̃ = 1` and no ceiling inflates the query term.
pub fn split_plan(alpha: f64, delta: f64, beta: f64, n: u64) -> Result<SplitPlan> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::arg(format!("alpha must be positive, got {alpha}")));
    }
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::arg(format!("delta must be positive, got {delta}")));
    }
    if !beta.is_finite() {
        return Err(Error::arg(format!("beta must be finite, got {beta}")));
    }
    if n == 0 {
        return Err(Error::arg("n must be at least 1"));
    }
    if delta >= 1.0 && beta >= 1.0 {
        return Err(Error::HypothesisViolation(format!(
            "need delta < 1 or beta < 1, got delta = {delta}, beta = {beta}"
        )));
    }
    let nf = n as f64;

    let (case, eps, eps_prime, n_exp, m_exp) = if alpha == 1.0 {
        if delta < 1.0 {
            let eps = (1.0 - delta) / 2.0;
            (SplitCase::C2_1, eps, 1.0, eps / (1.0 - delta), 0.0)
        } else {
            let eps = (1.0 - beta) / 2.0;
            (SplitCase::C2_2, eps, 1.0, 0.0, eps / (1.0 - beta))
        }
    } else {
        let mut bound = 1.0f64.min(1.0 / (alpha - 1.0).abs());
        if delta > 1.0 {
            // keeps the upper end of ε's interval positive in C1_1_1
            bound = bound.min((1.0 - beta) / (delta - 1.0));
        }
        let g = bound / 2.0;
        let eps_prime = 1.0 - g * (alpha - 1.0);
        let shift = g * (1.0 - delta);
        if delta != 1.0 && beta < 1.0 {
            let lo = shift.max(0.0);
            let hi = 1.0 - beta + shift;
            let eps = (lo + hi) / 2.0;
            (
                SplitCase::C1_1_1,
                eps,
                eps_prime,
                g,
                (eps - shift) / (1.0 - beta),
            )
        } else if delta < 1.0 && beta > 1.0 {
            (SplitCase::C1_1_2, shift, eps_prime, g, 0.0)
        } else if delta < 1.0 {
            (SplitCase::C1_2, shift, eps_prime, g, 0.0)
        } else {
            let eps = (1.0 - beta) / 2.0;
            (SplitCase::C1_3, eps, eps_prime, g, eps / (1.0 - beta))
        }
    };

    let n_tilde = power_of(nf, n_exp);
    let m_tilde = power_of(nf, m_exp);
    Ok(SplitPlan {
        case,
        eps,
        eps_prime,
        n_tilde,
        m_tilde,
        n_cap: n_tilde.ceil() as u64,
        m_cap: m_tilde.ceil() as u64,
    })
}

fn close(lhs: f64, rhs: f64, tol: f64) -> bool {
    (lhs - rhs).abs() <= tol * rhs.abs().max(1.0)
}

/// Checks a plan's conditions in natural-log space.
pub fn verify_plan(
    plan: &SplitPlan,
    n: u64,
    alpha: f64,
    delta: f64,
    beta: f64,
    tol: f64,
) -> Result<PlanReport> {
    if n < 2 {
        return Err(Error::arg("verify_plan needs n >= 2"));
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let (nt, mt) = (plan.n_tilde, plan.m_tilde);

    let cond_at_ok = nt > 0.0
        && close(
            (alpha - 1.0) * nt.ln() + ln_n,
            (2.0 - plan.eps_prime) * ln_n,
            tol,
        );
    let cond_bt_ok = nt > 0.0
        && mt > 0.0
        && close(
            (delta - 1.0) * nt.ln() + (beta - 1.0) * mt.ln() + 2.0 * ln_n,
            (2.0 - plan.eps) * ln_n,
            tol,
        );
    let cond_c_ok = plan.n_cap as f64 == nt.ceil() && plan.m_cap as f64 == mt.ceil();
    let cond_d_ok = (1.0..=nf).contains(&nt) && (1.0..=nf).contains(&mt);

    let ln_cap_n = (plan.n_cap as f64).ln();
    let ln_cap_m = (plan.m_cap as f64).ln();
    Ok(PlanReport {
        cond_a_exp: (alpha - 1.0) * ln_cap_n / ln_n + 1.0,
        cond_b_exp: ((delta - 1.0) * ln_cap_n + (beta - 1.0) * ln_cap_m) / ln_n + 2.0,
        cond_at_ok,
        cond_bt_ok,
        cond_c_ok,
        cond_d_ok,
        tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionOutcome {
    pub found: bool,
    pub subproblems: usize,
}

/// Splits `X` into groups of at most `n_cap` vectors and `Y` into groups of
/// at most `m_cap`, then ORs `subsolver` over every pair of groups.
///
/// All `⌈n/N⌉·⌈n/M⌉` pairs are evaluated; there is no early exit.
pub fn partition_and_solve<F>(
    inst: &OvInstance,
    n_cap: usize,
    m_cap: usize,
    mut subsolver: F,
) -> Result<PartitionOutcome>
where
    F: FnMut(&[BitVector], &[BitVector]) -> bool,
{
    let n = inst.x().len();
    if inst.y().len() != n {
        return Err(Error::arg(format!(
            "partitioning needs |X| = |Y|, got {} and {}",
            n,
            inst.y().len()
        )));
    }
    if !(1..=n).contains(&n_cap) || !(1..=n).contains(&m_cap) {
        return Err(Error::arg(format!(
            "need 1 <= N, M <= n = {n}, got N = {n_cap}, M = {m_cap}"
        )));
    }
    let mut found = false;
    let mut subproblems = 0;
    for xs in inst.x().chunks(n_cap) {
        for ys in inst.y().chunks(m_cap) {
            found |= subsolver(xs, ys);
            subproblems += 1;
        }
    }
    Ok(PartitionOutcome { found, subproblems })
}

/// True iff `⌈n^a⌉^b ≤ c·n^(ab)` for every sampled `n`.
pub fn ceil_power_bound_check(a: f64, b: f64, n_values: &[u64], c: f64) -> bool {
    n_values.iter().all(|&n| {
        let nf = n as f64;
        let lhs = settle(nf.powf(a)).ceil().powf(b);
        let rhs = c * nf.powf(a * b);
        lhs <= rhs * (1.0 + 1e-12)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        BitVector::from_bit_str(s).unwrap()
    }

    fn inst(x: &[&str], y: &[&str], d: usize) -> OvInstance {
        OvInstance::new(
            x.iter().map(|s| bv(s)).collect(),
            y.iter().map(|s| bv(s)).collect(),
            d,
        )
        .unwrap()
    }

    #[test]
    fn brute_force_examples() {
        assert!(solve_ov_bruteforce(&inst(&["10"], &["01"], 2)));
        assert!(!solve_ov_bruteforce(&inst(&["11"], &["10", "01"], 2)));
        assert!(!solve_ov_bruteforce(&inst(&[], &["01"], 2)));
    }

    #[test]
    fn plan_case_2_1() {
        let p = split_plan(1.0, 0.5, 1.0, 1_000_000).unwrap();
        assert_eq!(p.case, SplitCase::C2_1);
        assert_eq!((p.eps, p.eps_prime), (0.25, 1.0));
        assert_eq!(
            (p.n_tilde, p.m_tilde, p.n_cap, p.m_cap),
            (1000.0, 1.0, 1000, 1)
        );
        let r = verify_plan(&p, 1_000_000, 1.0, 0.5, 1.0, 1e-9).unwrap();
        assert!(r.conditions_ok());
        assert!(r.cond_b_exp <= 1.75 + 1e-9);
    }

    #[test]
    fn plan_case_1_2() {
        let p = split_plan(2.0, 0.5, 1.0, 10_000).unwrap();
        assert_eq!(p.case, SplitCase::C1_2);
        assert_eq!((p.eps_prime, p.eps, p.n_tilde), (0.5, 0.25, 100.0));
        assert!(verify_plan(&p, 10_000, 2.0, 0.5, 1.0, 1e-9)
            .unwrap()
            .conditions_ok());
    }

    #[test]
    fn case_selection() {
        let case = |a, d, b| split_plan(a, d, b, 1000).unwrap().case;
        assert_eq!(case(1.0, 0.5, 0.5), SplitCase::C2_1);
        assert_eq!(case(1.0, 1.5, 0.5), SplitCase::C2_2);
        assert_eq!(case(2.0, 1.5, 0.5), SplitCase::C1_1_1);
        assert_eq!(case(0.5, 0.5, 0.5), SplitCase::C1_1_1);
        assert_eq!(case(3.0, 0.5, 2.0), SplitCase::C1_1_2);
        assert_eq!(case(0.5, 0.25, 1.0), SplitCase::C1_2);
        assert_eq!(case(1.5, 1.0, 0.5), SplitCase::C1_3);
    }

    #[test]
    fn plan_errors() {
        assert!(matches!(
            split_plan(1.0, 1.0, 1.0, 10),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(matches!(
            split_plan(0.0, 0.5, 1.0, 10),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            split_plan(1.0, -0.5, 1.0, 10),
            Err(Error::InvalidArgument(_))
        ));
        let p = split_plan(1.0, 0.5, 1.0, 100).unwrap();
        assert!(verify_plan(&p, 1, 1.0, 0.5, 1.0, 1e-9).is_err());
    }

    #[test]
    fn verify_flags_broken_plans() {
        let n = 1000;
        let good = split_plan(1.0, 0.5, 1.0, n).unwrap();
        let too_big = SplitPlan {
            n_tilde: n as f64 + 1.0,
            n_cap: n + 1,
            ..good
        };
        let r = verify_plan(&too_big, n, 1.0, 0.5, 1.0, 1e-9).unwrap();
        assert!(!r.cond_d_ok);

        let wrong_cap = SplitPlan {
            n_cap: good.n_cap + 1,
            ..good
        };
        let r = verify_plan(&wrong_cap, n, 1.0, 0.5, 1.0, 1e-9).unwrap();
        assert!(!r.cond_c_ok);
        assert!(r.cond_d_ok);
    }

    #[test]
    fn partition_counts() {
        let all = ["00", "01", "10", "11", "11"];
        let i4 = inst(&all[..4], &all[..4], 2);
        let out = partition_and_solve(&i4, 2, 2, has_orthogonal_pair).unwrap();
        assert_eq!(out.subproblems, 4);
        assert_eq!(out.found, solve_ov_bruteforce(&i4));

        let i5 = inst(&["11"; 5], &all, 2);
        let out = partition_and_solve(&i5, 2, 3, has_orthogonal_pair).unwrap();
        assert_eq!(out.subproblems, 6);
        assert!(out.found);

        assert!(partition_and_solve(&i5, 0, 1, has_orthogonal_pair).is_err());
        assert!(partition_and_solve(&i5, 1, 6, has_orthogonal_pair).is_err());
        let uneven = inst(&["11"], &["11", "00"], 2);
        assert!(partition_and_solve(&uneven, 1, 1, has_orthogonal_pair).is_err());
    }

    #[test]
    fn ceil_power_examples() {
        assert!(ceil_power_bound_check(0.5, 2.0, &[100], 2.0));
        assert!(ceil_power_bound_check(0.37, 0.0, &[2, 17, 1000], 1.0));
        let all: Vec<u64> = (2..=1_000_000).collect();
        assert!(ceil_power_bound_check(0.3, -1.0, &all, 1.0));
        // (n^a + 1)^b exceeds n^(ab) once rounding up is not exact
        assert!(!ceil_power_bound_check(0.5, 2.0, &[101], 1.0));
    }
}
