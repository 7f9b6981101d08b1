//! Named verification cases and their JSON report.
//!
//! Cases are independent and run in parallel. The report keeps the
//! registration order so that repeated runs print identically.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use pionless_core::{
    commutator_bounds, max_couples, max_triples, HamiltonianParams, LatticeConfig, SystemSpec,
    TrotterOrder,
};

use crate::circuit::{Gate, StateVector};
use crate::error::Result;
use crate::lcu::verify_block_encoding;
use crate::operator::{max_abs, DenseOperator, C64};
use crate::verify::{
    seminorm_bounds, verify_kinetic_circuit, verify_phase_kickback, verify_potential_phase_circuit,
    verify_umatch, TrotterLab,
};

/// Tolerance for unitarity and projector identities.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Tolerance for circuit-versus-oracle equality.
pub const CIRCUIT_TOL: f64 = 1e-10;
/// Tolerance for block-encoding reconstruction.
pub const BLOCK_TOL: f64 = 1e-8;
/// Randomized `(t, r)` samples per product-formula order.
pub const TROTTER_SAMPLES: usize = 120;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub name: String,
    pub measured: f64,
    /// Upper limit for `measured`.
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

impl CaseResult {
    fn new(name: &str, measured: f64, tolerance: f64, detail: String) -> Self {
        Self {
            name: name.to_string(),
            measured,
            tolerance,
            pass: measured <= tolerance,
            detail,
        }
    }

    fn failed(name: &str, detail: String) -> Self {
        Self {
            name: name.to_string(),
            measured: f64::NAN,
            tolerance: f64::NAN,
            pass: false,
            detail,
        }
    }
}

/// Results of a suite run in registration order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub cases: Vec<CaseResult>,
    pub passed: usize,
    pub failed: usize,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0 && !self.cases.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

type CaseFn = fn(&str, &HamiltonianParams) -> Result<CaseResult>;

fn spec(p: &HamiltonianParams, d: u32, m: u32, eta: u64) -> Result<SystemSpec> {
    Ok(SystemSpec::new(*p, LatticeConfig::new(d, m)?, eta)?)
}

fn spec_cg(p: &HamiltonianParams, c: f64, g: f64, d: u32, m: u32, eta: u64) -> Result<SystemSpec> {
    let mut p = *p;
    p.c = c;
    p.g = g;
    spec(&p, d, m, eta)
}

fn potential(name: &str, s: SystemSpec, t: f64) -> Result<CaseResult> {
    let r = verify_potential_phase_circuit(&s, t)?;
    let measured = if r.diagonal {
        r.max_deviation
    } else {
        f64::INFINITY
    };
    Ok(CaseResult::new(
        name,
        measured,
        CIRCUIT_TOL,
        format!("{} basis states, entry-wise phases", r.basis_states),
    ))
}

fn umatch(name: &str, s: SystemSpec) -> Result<CaseResult> {
    let r = verify_umatch(&s)?;
    Ok(CaseResult::new(
        name,
        if r.pass { 0.0 } else { 1.0 },
        0.0,
        format!(
            "{} checked, {} skipped, mirror restores: {}, counterexample: {:?}",
            r.checked, r.skipped, r.mirror_restores, r.counterexample
        ),
    ))
}

fn kinetic(name: &str, s: SystemSpec, tau: f64) -> Result<CaseResult> {
    let r = verify_kinetic_circuit(&s, tau, 4, 11)?;
    Ok(CaseResult::new(
        name,
        r.max_deviation,
        CIRCUIT_TOL,
        format!(
            "{} {}",
            r.states,
            if r.exhaustive {
                "columns"
            } else {
                "random states"
            }
        ),
    ))
}

fn qft_unitarity(name: &str, _: &HamiltonianParams) -> Result<CaseResult> {
    let mut worst: f64 = 0.0;
    for n in 1..=5usize {
        let dim = 1usize << n;
        let reg: Vec<usize> = (0..n).collect();
        let mut u = nalgebra::DMatrix::<C64>::zeros(dim, dim);
        for col in 0..dim {
            let mut s = StateVector::basis(n, col as u64);
            s.apply(&Gate::Qft {
                register: reg.clone(),
                inverse: false,
            })?;
            for (row, z) in s.entries() {
                u[(row as usize, col)] = z;
            }
        }
        worst = worst.max(DenseOperator::new(u).unitarity_error());
    }
    Ok(CaseResult::new(
        name,
        worst,
        IDENTITY_TOL,
        "registers of 1 to 5 qubits".into(),
    ))
}

fn kickback(name: &str, diag: &[f64], t: f64, eps: f64, exact: Option<u64>) -> Result<CaseResult> {
    let r = verify_phase_kickback(&DenseOperator::from_diagonal(diag), t, eps, exact)?;
    Ok(CaseResult::new(
        name,
        r.measured,
        eps,
        format!("b = {}, b_lambda = {}", r.b, r.b_lambda),
    ))
}

fn block(name: &str, s: SystemSpec) -> Result<CaseResult> {
    let r = verify_block_encoding(&s, BLOCK_TOL)?;
    Ok(CaseResult::new(
        name,
        r.max_deviation.max(r.column_norm_error),
        BLOCK_TOL,
        format!(
            "{} columns, {} qubits, lambda_H = {:.6}, estimator lambda_H = {:.6}",
            r.columns, r.qubits, r.lambda_h, r.lambda_h_estimator
        ),
    ))
}

fn seminorm(name: &str, s: SystemSpec) -> Result<CaseResult> {
    let r = seminorm_bounds(&s)?;
    let ratio = |(m, b): (f64, f64)| {
        if b > 0.0 {
            m / b
        } else if m > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    };
    let worst = [
        r.kinetic,
        r.v2,
        r.v3,
        r.combined,
        r.commutator,
        r.second_order,
    ]
    .into_iter()
    .map(ratio)
    .fold(0.0, f64::max);
    let projector_ok = r.projector_error.is_none_or(|e| e <= IDENTITY_TOL);
    Ok(CaseResult::new(
        name,
        if projector_ok { worst } else { f64::INFINITY },
        1.0 + 1e-10,
        format!(
            "largest measured/bound; dim {}; T {:.4}/{:.4}, V2 {:.4}/{:.4}, V3 {:.4}/{:.4}, V {:.4}/{:.4}, [T,V] {:.4}/{:.4}, projector error {:?}",
            r.subspace_dim,
            r.kinetic.0, r.kinetic.1, r.v2.0, r.v2.1, r.v3.0, r.v3.1,
            r.combined.0, r.combined.1, r.commutator.0, r.commutator.1,
            r.projector_error
        ),
    ))
}

/// Largest numbers of coinciding pairs and triples over all ways of
/// splitting `η` nucleons into groups of at most four.
pub fn occupancy_extremes(eta: u64) -> (u64, u64) {
    fn walk(left: u64, cap: u64, pairs: u64, triples: u64, best: &mut (u64, u64)) {
        if left == 0 {
            best.0 = best.0.max(pairs);
            best.1 = best.1.max(triples);
            return;
        }
        for k in 1..=cap.min(left) {
            let p = k * (k - 1) / 2;
            let t = k * (k - 1) * (k.saturating_sub(2)) / 6;
            walk(left - k, k, pairs + p, triples + t, best);
        }
    }
    let mut best = (0, 0);
    walk(eta, 4, 0, 0, &mut best);
    best
}

fn partitions(name: &str, _: &HamiltonianParams) -> Result<CaseResult> {
    let mut bad = Vec::new();
    for eta in 0..=9 {
        let (pairs, triples) = occupancy_extremes(eta);
        if (max_couples(eta), max_triples(eta)) != (pairs, triples) {
            bad.push(eta);
        }
    }
    Ok(CaseResult::new(
        name,
        bad.len() as f64,
        0.0,
        format!("eta 0..=9, mismatches at {bad:?}"),
    ))
}

/// Seeded `(t, r)` samples spread so that the bound ranges over
/// `[1e−6, 1]`.
pub fn trotter_samples(alpha: f64, order: u32, count: usize, seed: u64) -> Vec<(f64, u64)> {
    use rand::rngs::ChaCha8Rng;
    use rand::{RngExt, SeedableRng};
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r: u64 = rng.random_range(1..=16);
            let bound = 10f64.powf(rng.random_range(-6.0..0.0));
            let tau = (bound / (r as f64 * alpha)).powf(1.0 / f64::from(order + 1));
            (tau * r as f64, r)
        })
        .collect()
}

fn trotter(name: &str, s: SystemSpec, order: TrotterOrder, seed: u64) -> Result<CaseResult> {
    let lab = TrotterLab::new(&s)?;
    let a = commutator_bounds(&s);
    let alpha = match order {
        TrotterOrder::First => a.alpha1,
        TrotterOrder::Second => a.alpha2,
        TrotterOrder::Fourth => a.alpha4,
    };
    let samples = trotter_samples(alpha, order.as_u32(), TROTTER_SAMPLES, seed);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for (t, r) in &samples {
        let c = lab.check(order, *r, *t);
        worst = worst.max(c.measured / c.bound);
        failures += usize::from(!c.pass());
    }
    Ok(CaseResult::new(
        name,
        worst,
        1.0 + 1e-9,
        format!(
            "largest measured/bound over {} seeded (t, r) samples, {failures} above the bound",
            samples.len()
        ),
    ))
}

fn trotter_ordering(name: &str, params: &HamiltonianParams) -> Result<CaseResult> {
    let lab = TrotterLab::new(&spec(params, 1, 2, 2)?)?;
    let one = lab.check(TrotterOrder::First, 4, 0.01);
    let two = lab.check(TrotterOrder::Second, 4, 0.01);
    let ok = one.pass() && two.pass() && two.measured < one.measured;
    Ok(CaseResult::new(
        name,
        if ok { 0.0 } else { 1.0 },
        0.0,
        format!(
            "order 1: {:.3e} <= {:.3e}; order 2: {:.3e} <= {:.3e}",
            one.measured, one.bound, two.measured, two.bound
        ),
    ))
}

fn projector(name: &str, params: &HamiltonianParams) -> Result<CaseResult> {
    let mut worst: f64 = 0.0;
    for (m, eta) in [(1, 2), (1, 3), (2, 2)] {
        let shape = crate::basis::Shape::new(&spec(params, 1, m, eta)?.lattice, eta)?;
        let pa = crate::antisym::antisymmetrizer(&shape)?;
        let sq = &pa.matrix * &pa.matrix;
        worst = worst
            .max(max_abs(&(&sq - &pa.matrix)))
            .max(pa.hermiticity_error());
    }
    Ok(CaseResult::new(
        name,
        worst,
        IDENTITY_TOL,
        "max |P^2 - P| and |P - P^dagger| for d=1".into(),
    ))
}

/// All registered cases in report order.
pub fn cases() -> Vec<(&'static str, CaseFn)> {
    vec![
        ("circuit/qft-unitarity", qft_unitarity),
        ("circuit/potential/free", |n, p| {
            potential(n, spec_cg(p, 0.0, 0.0, 1, 2, 3)?, 0.9)
        }),
        ("circuit/potential/d3-m1-eta2", |n, p| {
            potential(n, spec(p, 3, 1, 2)?, 0.7)
        }),
        ("circuit/potential/d1-m2-eta3", |n, p| {
            potential(n, spec(p, 1, 2, 3)?, 1.3)
        }),
        ("circuit/potential/d1-m1-eta4", |n, p| {
            potential(n, spec(p, 1, 1, 4)?, 0.4)
        }),
        ("circuit/umatch/d1-m2-eta3", |n, p| {
            umatch(n, spec(p, 1, 2, 3)?)
        }),
        ("circuit/umatch/d1-m2-eta4", |n, p| {
            umatch(n, spec(p, 1, 2, 4)?)
        }),
        ("circuit/umatch/d2-m1-eta4", |n, p| {
            umatch(n, spec(p, 2, 1, 4)?)
        }),
        ("circuit/umatch/d1-m1-eta5", |n, p| {
            umatch(n, spec(p, 1, 1, 5)?)
        }),
        ("circuit/kinetic/d1-m2-eta2", |n, p| {
            kinetic(n, spec(p, 1, 2, 2)?, 0.01)
        }),
        ("circuit/kinetic/d2-m2-eta2", |n, p| {
            kinetic(n, spec(p, 2, 2, 2)?, 0.03)
        }),
        ("circuit/kinetic/d1-m3-eta2", |n, p| {
            kinetic(n, spec(p, 1, 3, 2)?, 0.002)
        }),
        ("circuit/kinetic/d3-m2-eta2", |n, p| {
            kinetic(n, spec(p, 3, 2, 2)?, 0.02)
        }),
        ("circuit/kickback/zero", |n, _| {
            kickback(n, &[0.0; 4], 1.0, 0.05, None)
        }),
        ("circuit/kickback/ramp", |n, _| {
            kickback(
                n,
                &[0.0, 1.0, 2.0, 3.0],
                std::f64::consts::FRAC_PI_4,
                0.05,
                None,
            )
        }),
        ("circuit/kickback/exact", |n, _| {
            kickback(
                n,
                &[0.0, 1.0, 2.0, 3.0, 4.0, 0.5, 1.5, 2.5],
                0.6,
                0.05,
                Some(3),
            )
        }),
        ("circuit/kickback/irregular", |n, _| {
            kickback(
                n,
                &[0.3, 2.9, 1.7, 0.0, 5.2, 4.4, 3.1, 0.8],
                1.1,
                0.02,
                None,
            )
        }),
        ("block-encoding/kinetic-only-m2", |n, p| {
            block(n, spec_cg(p, 0.0, 0.0, 1, 2, 2)?)
        }),
        ("block-encoding/d1-m1-eta2", |n, p| {
            block(n, spec(p, 1, 1, 2)?)
        }),
        ("block-encoding/d1-m2-eta2", |n, p| {
            block(n, spec(p, 1, 2, 2)?)
        }),
        ("block-encoding/d2-m1-eta3", |n, p| {
            block(n, spec(p, 2, 1, 3)?)
        }),
        ("seminorm/projector", projector),
        ("seminorm/d1-m1-eta2", |n, p| seminorm(n, spec(p, 1, 1, 2)?)),
        ("seminorm/d1-m1-eta3", |n, p| seminorm(n, spec(p, 1, 1, 3)?)),
        ("seminorm/d1-m2-eta2", |n, p| seminorm(n, spec(p, 1, 2, 2)?)),
        ("seminorm/d1-m2-eta3", |n, p| seminorm(n, spec(p, 1, 2, 3)?)),
        ("seminorm/d2-m1-eta2", |n, p| seminorm(n, spec(p, 2, 1, 2)?)),
        ("seminorm/partitions", partitions),
        ("trotter/ordering", trotter_ordering),
        ("trotter/random/order1", |n, p| {
            trotter(n, spec(p, 1, 2, 2)?, TrotterOrder::First, 101)
        }),
        ("trotter/random/order2", |n, p| {
            trotter(n, spec(p, 1, 2, 2)?, TrotterOrder::Second, 102)
        }),
        ("trotter/random/order4-eta3", |n, p| {
            trotter(n, spec(p, 1, 1, 3)?, TrotterOrder::Fourth, 104)
        }),
        ("trotter/random/order1-eta3", |n, p| {
            trotter(n, spec(p, 1, 1, 3)?, TrotterOrder::First, 201)
        }),
        ("trotter/random/order2-eta3", |n, p| {
            trotter(n, spec(p, 1, 1, 3)?, TrotterOrder::Second, 202)
        }),
    ]
}

/// Runs every case whose name contains `filter` with the nominal
/// parameters.
pub fn run_suite(filter: Option<&str>) -> VerificationReport {
    run_suite_with(&HamiltonianParams::nominal(), filter)
}

/// Runs every case whose name contains `filter`, in parallel, using
/// `params` wherever a case does not fix its own couplings.
pub fn run_suite_with(params: &HamiltonianParams, filter: Option<&str>) -> VerificationReport {
    let selected: Vec<_> = cases()
        .into_iter()
        .filter(|(name, _)| filter.is_none_or(|f| name.contains(f)))
        .collect();
    let results: Vec<CaseResult> = selected
        .par_iter()
        .map(|(name, run)| {
            run(name, params).unwrap_or_else(|e| CaseResult::failed(name, e.to_string()))
        })
        .collect();
    let passed = results.iter().filter(|c| c.pass).count();
    VerificationReport {
        failed: results.len() - passed,
        passed,
        cases: results,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_maxima() {
        assert_eq!(occupancy_extremes(0), (0, 0));
        assert_eq!(occupancy_extremes(3), (3, 1));
        assert_eq!(occupancy_extremes(9), (12, 8));
    }

    #[test]
    fn names_are_unique() {
        let names: std::collections::BTreeSet<_> = cases().iter().map(|c| c.0).collect();
        assert_eq!(names.len(), cases().len());
    }

    #[test]
    fn filter_selects_substring() {
        let r = run_suite(Some("kickback/zero"));
        assert_eq!(r.cases.len(), 1);
        assert!(r.all_pass());
        assert!(!run_suite(Some("no such case")).all_pass());
    }

    #[test]
    fn samples_are_reproducible() {
        assert_eq!(trotter_samples(3.0, 2, 5, 9), trotter_samples(3.0, 2, 5, 9));
    }
}
