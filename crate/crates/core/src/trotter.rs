//! T-gate and qubit counts for the kinetic and potential exponentials and
//! for product-formula evolution at orders 1, 2 and 4.

use serde::{Deserialize, Serialize};

use crate::cost::{Accounting, CostReport, CostTally};
use crate::error::{positive, Result};
use crate::gates::{
    ceil_log2, kickback_sizing, t_mcrz, t_mcx, t_qft, t_rot, t_squ, KickbackConstant,
    KickbackSizing, QftCost,
};
use crate::norms::commutator_bounds;
use crate::params::{lambda_t, SystemSpec};

/// Breakdown category for the squaring circuits.
pub const KINETIC: &str = "kinetic";
/// Breakdown category for the QFTs.
pub const QFT: &str = "qft";
/// Breakdown category for the phase-kickback additions.
pub const DIAG: &str = "diag";
/// Breakdown category for the Toffoli logic of the potential.
pub const POTENTIAL: &str = "potential";

/// Longest fourth-order kinetic coefficient, `1/(4 − 4^{1/3})`.
pub fn fourth_order_a2() -> f64 {
    1.0 / (4.0 - 4f64.powf(1.0 / 3.0))
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Internal pieces of the kinetic exponential.
#[derive(Debug, Clone)]
pub(crate) struct KineticPieces {
    pub tally: CostTally,
    pub kick: KickbackSizing,
    pub qft: QftCost,
    pub squaring_ancillas: u64,
    pub warnings: Vec<String>,
}

pub(crate) fn kinetic_pieces(
    spec: &SystemSpec,
    eps: f64,
    t: f64,
    constant: KickbackConstant,
) -> Result<KineticPieces> {
    let eps = positive("eps", eps)?;
    let t = positive("time", t)?;
    let m = u64::from(spec.lattice.m);
    let d_eta = u64::from(spec.lattice.d) * spec.eta;
    let inner_eps = eps / (3.0 * d_eta as f64);
    let mut warnings = Vec::new();
    let squaring = if m >= 2 {
        t_squ(m - 1)?
    } else {
        warnings.push("m = 1: squaring an empty register is taken to cost nothing".to_string());
        crate::gates::SquaringCost {
            t_count: 0,
            ancillas: 0,
        }
    };
    let kick = kickback_sizing(t, lambda_t(spec), inner_eps, true, Some(2 * m - 2))?;
    if kick.clamped {
        warnings.push("phase register raised to its minimum size".to_string());
    }
    let qft = t_qft(m, inner_eps)?;
    let mut tally = CostTally::new();
    let de = i128::from(d_eta);
    tally
        .add(KINETIC, de * 2 * i128::from(squaring.t_count))
        .add(DIAG, de * i128::from(kick.t_diag_with(constant)))
        .add(QFT, de * 2 * i128::from(qft.t_count));
    Ok(KineticPieces {
        tally,
        kick,
        qft,
        squaring_ancillas: m * (m - 1),
        warnings,
    })
}

/// Cost of `e^{−iTt}` to precision `eps`.
///
/// Each of the `dη` momentum registers is transformed by a QFT, its square
/// is computed, the phase is kicked back and the steps are undone:
/// `dη(2·T_SQU(m−1) + T_DIAG + 2·T_QFT(m, ε/3dη))`. The diagonal uses the
/// exact-eigenvalue register sizes with `b_λ = 2m − 2` and `Λ = λ_T`.
pub fn cost_exp_t(
    spec: &SystemSpec,
    eps: f64,
    t: f64,
    accounting: &Accounting,
) -> Result<CostReport> {
    let p = kinetic_pieces(spec, eps, t, accounting.kickback)?;
    let b_qft = p.qft.b_qft;
    let b_diag = p.kick.b;
    let ancillas = b_qft + b_diag + (2 * b_qft - 1).max(b_diag).max(p.squaring_ancillas);
    let mut report = CostReport::from_tally(
        &p.tally,
        accounting.system_qubits(spec.eta, spec.dm()),
        ancillas,
    );
    report.registers.insert("b_DIAG".into(), b_diag);
    report.registers.insert("b_QFT".into(), b_qft);
    report.registers.insert("b_lambda".into(), p.kick.b_lambda);
    report.registers.insert("w_H".into(), p.kick.w_h);
    report
        .registers
        .insert("squaring".into(), p.squaring_ancillas);
    report.warnings = p.warnings;
    Ok(report)
}

/// Tally of the compact potential exponential.
pub(crate) fn potential_tally(spec: &SystemSpec, eps: f64) -> Result<CostTally> {
    let eps = positive("eps", eps)?;
    let eta = spec.eta;
    let mut tally = CostTally::new();
    if eta < 2 {
        return Ok(tally);
    }
    let gamma = binom(eta, 3) + binom(eta, 2);
    let cubic = 4 * eta * (eta - 1) * (eta - 2) / 3;
    tally
        .add(
            POTENTIAL,
            i128::from(cubic) + i128::from(gamma) * 2 * i128::from(t_mcx(spec.dm())),
        )
        .add_rotations(gamma as f64 * t_rot(eps / gamma as f64)?);
    Ok(tally)
}

/// Cost of `e^{−iVt}` with one flag qubit and one rotation per pair or
/// triple: `4η(η−1)(η−2)/3 + Γ(2·T_MCX(dm) + T_ROT(ε/Γ))` with
/// `Γ = C(η,3) + C(η,2)`. Uses `dm + 1` ancillas.
pub fn cost_exp_v_compact(
    spec: &SystemSpec,
    eps: f64,
    accounting: &Accounting,
) -> Result<CostReport> {
    let tally = potential_tally(spec, eps)?;
    let ancillas = if spec.eta < 2 { 0 } else { spec.dm() + 1 };
    let mut report = CostReport::from_tally(
        &tally,
        accounting.system_qubits(spec.eta, spec.dm()),
        ancillas,
    );
    if spec.eta < 2 {
        report
            .warnings
            .push("fewer than two particles: no interaction".into());
    }
    Ok(report)
}

/// Cost of `e^{−iVt}` with multi-controlled rotations applied separately to
/// the pair and triple terms.
///
/// `T_V2 = C(η,2)·T_MCRZ(2ε₂/η(η−1), dm−1)` and
/// `T_V3 = C(η,3)·T_MCRZ(6ε₃/η(η−1)(η−2), 2dm−1)`.
pub fn cost_exp_v_separate(
    spec: &SystemSpec,
    eps_v2: f64,
    eps_v3: f64,
    accounting: &Accounting,
) -> Result<CostReport> {
    let eps_v2 = positive("eps_v2", eps_v2)?;
    let eps_v3 = positive("eps_v3", eps_v3)?;
    let dm = spec.dm();
    let pairs = binom(spec.eta, 2);
    let triples = binom(spec.eta, 3);
    let mut tally = CostTally::new();
    let mut ancillas = 0;
    let terms = [
        (pairs, eps_v2, dm.saturating_sub(1)),
        (triples, eps_v3, (2 * dm).saturating_sub(1)),
    ];
    for (count, eps, controls) in terms {
        if count == 0 {
            continue;
        }
        ancillas = ancillas.max(controls.saturating_sub(1));
        let per = eps / count as f64;
        let logic = 8 * controls.saturating_sub(1);
        let rot = t_mcrz(per, controls)? - logic as f64;
        tally
            .add(POTENTIAL, i128::from(count * logic))
            .add_rotations(count as f64 * rot);
    }
    let mut report =
        CostReport::from_tally(&tally, accounting.system_qubits(spec.eta, dm), ancillas);
    report.registers.insert("pairs".into(), pairs);
    report.registers.insert("triples".into(), triples);
    Ok(report)
}

/// Product-formula order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrotterOrder {
    #[serde(rename = "1")]
    First,
    #[serde(rename = "2")]
    Second,
    #[serde(rename = "4")]
    Fourth,
}

impl TrotterOrder {
    /// The order as an integer.
    pub fn as_u32(self) -> u32 {
        match self {
            TrotterOrder::First => 1,
            TrotterOrder::Second => 2,
            TrotterOrder::Fourth => 4,
        }
    }

    /// Parses 1, 2 or 4.
    pub fn from_u32(k: u32) -> Option<Self> {
        match k {
            1 => Some(TrotterOrder::First),
            2 => Some(TrotterOrder::Second),
            4 => Some(TrotterOrder::Fourth),
            _ => None,
        }
    }
}

/// Per-call precisions handed to the exponentials of one step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    /// Precision of each potential exponential.
    pub potential: f64,
    /// Precision of each full-length kinetic exponential.
    pub kinetic: f64,
    /// Precision of the two half-length kinetic exponentials (order 2).
    pub kinetic_half: Option<f64>,
}

/// Number of steps and error split for a product formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrotterPlan {
    pub order: TrotterOrder,
    pub r: u64,
    pub eps: f64,
    pub t: f64,
    pub budget: ErrorBudget,
}

/// Chooses the number of steps.
///
/// ```text
/// r  = ⌈3t²α₁/ε⌉
/// r₂ = ⌈√(4t³α₂/ε)⌉
/// r₄ = ⌈(12t⁵α₄/ε)^{1/4}⌉
/// ```
/// and `r ≥ 1` in every case.
pub fn plan_trotter(
    spec: &SystemSpec,
    order: TrotterOrder,
    eps: f64,
    t: f64,
) -> Result<TrotterPlan> {
    let eps = positive("eps", eps)?;
    let t = positive("time", t)?;
    let a = commutator_bounds(spec);
    let arg = match order {
        TrotterOrder::First => 3.0 * t * t * a.alpha1 / eps,
        TrotterOrder::Second => (4.0 * t.powi(3) * a.alpha2 / eps).sqrt(),
        TrotterOrder::Fourth => (12.0 * t.powi(5) * a.alpha4 / eps).powf(0.25),
    };
    let r = (arg.ceil() as u64).max(1);
    let rf = r as f64;
    let budget = match order {
        TrotterOrder::First => ErrorBudget {
            potential: eps / (3.0 * rf),
            kinetic: eps / (3.0 * rf),
            kinetic_half: None,
        },
        TrotterOrder::Second => ErrorBudget {
            potential: eps / (4.0 * rf),
            kinetic: eps / (4.0 * rf),
            kinetic_half: Some(eps / (8.0 * rf)),
        },
        TrotterOrder::Fourth => ErrorBudget {
            potential: eps / (12.0 * rf),
            kinetic: eps / (12.0 * rf),
            kinetic_half: None,
        },
    };
    Ok(TrotterPlan {
        order,
        r,
        eps,
        t,
        budget,
    })
}

/// Phase-register size quoted for the whole evolution,
/// `⌈log₂(x·log₂ x)⌉` with `x = c·dηtλ_T/ε`.
fn b_diag_closed_form(spec: &SystemSpec, c: f64, eps: f64, t: f64) -> i64 {
    let x = c * (u64::from(spec.lattice.d) * spec.eta) as f64 * t * lambda_t(spec) / eps;
    ceil_log2(x * x.log2())
}

/// T-gate and qubit cost of product-formula evolution for time `t` to
/// precision `eps`.
///
/// ```text
/// order 1: r(T_T(ε/3r, t/r) + T_V(ε/3r))
/// order 2: r·T_V(ε/4r) + (r−1)·T_T(ε/4r, t/r) + 2·T_T(ε/8r, t/2r)
/// order 4: 5r·T_V(ε/12r) + 6r·T_T(ε/12r, a₂t/r),  a₂ = 1/(4 − 4^{1/3})
/// ```
/// Ancillas are `b_QFT + b_DIAG + max(2b_QFT − 1, b_DIAG, m(m−1), dm − 1)`
/// with the registers sized for the longest kinetic exponential.
pub fn cost_trotter(
    spec: &SystemSpec,
    order: TrotterOrder,
    eps: f64,
    t: f64,
    accounting: &Accounting,
) -> Result<CostReport> {
    let plan = plan_trotter(spec, order, eps, t)?;
    let r = plan.r;
    let rf = r as f64;
    let konst = accounting.kickback;
    let v = potential_tally(spec, plan.budget.potential)?;
    let mut tally = CostTally::new();
    let (kin, c_diag) = match order {
        TrotterOrder::First => {
            let k = kinetic_pieces(spec, plan.budget.kinetic, t / rf, konst)?;
            tally.merge(&k.tally.scaled(r)).merge(&v.scaled(r));
            (k, 18.0)
        }
        TrotterOrder::Second => {
            let full = kinetic_pieces(spec, plan.budget.kinetic, t / rf, konst)?;
            let half = kinetic_pieces(
                spec,
                plan.budget
                    .kinetic_half
                    .expect("order 2 has a half-step budget"),
                t / (2.0 * rf),
                konst,
            )?;
            tally
                .merge(&v.scaled(r))
                .merge(&full.tally.scaled(r - 1))
                .merge(&half.tally.scaled(2));
            (full, 24.0)
        }
        TrotterOrder::Fourth => {
            let a2 = fourth_order_a2();
            let k = kinetic_pieces(spec, plan.budget.kinetic, t * a2 / rf, konst)?;
            tally.merge(&v.scaled(5 * r)).merge(&k.tally.scaled(6 * r));
            (k, 72.0 * a2)
        }
    };
    let m = u64::from(spec.lattice.m);
    let dm = spec.dm();
    let b_qft = kin.qft.b_qft;
    let b_diag = kin.kick.b;
    let ancillas = b_qft
        + b_diag
        + (2 * b_qft - 1)
            .max(b_diag)
            .max(m * (m - 1))
            .max(dm.saturating_sub(1));
    let mut report =
        CostReport::from_tally(&tally, accounting.system_qubits(spec.eta, dm), ancillas);
    report.steps = Some(r);
    report.registers.insert("b_DIAG".into(), b_diag);
    report.registers.insert("b_QFT".into(), b_qft);
    report.registers.insert("squaring".into(), m * (m - 1));
    report
        .registers
        .insert("b_lambda".into(), kin.kick.b_lambda);
    report.registers.insert("w_H".into(), kin.kick.w_h);
    let closed = b_diag_closed_form(spec, c_diag, eps, t);
    if closed != b_diag as i64 && !kin.kick.clamped {
        report.warnings.push(format!(
            "step-level phase register {b_diag} differs from closed form {closed}"
        ));
    }
    report.warnings.extend(kin.warnings);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::crossing_time;
    use approx::assert_relative_eq;

    fn acct() -> Accounting {
        Accounting::default()
    }

    #[test]
    fn kinetic_small_case_is_dominated_by_fixed_parts() {
        let s = SystemSpec::with_defaults(1, 3, 1).unwrap();
        let r = cost_exp_t(&s, 0.5, 1e-3, &acct()).unwrap();
        assert_eq!(r.breakdown["kinetic"] + r.breakdown["qft"], 16 + 20);
        assert!(r.t_count >= 36);
    }

    #[test]
    fn kinetic_tiny_time_clamps_register() {
        let s = SystemSpec::with_defaults(1, 3, 1).unwrap();
        let r = cost_exp_t(&s, 0.1, 1e-12, &acct()).unwrap();
        assert_eq!(r.registers["b_DIAG"], 4);
        assert!(r.t_count >= 36);
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn kinetic_m1_uses_zero_squaring() {
        let s = SystemSpec::with_defaults(1, 1, 2).unwrap();
        let r = cost_exp_t(&s, 0.1, 0.01, &acct()).unwrap();
        assert_eq!(r.breakdown["kinetic"], 0);
        assert!(r.warnings.iter().any(|w| w.contains("m = 1")));
    }

    #[test]
    fn compact_potential_values() {
        let s2 = SystemSpec::with_defaults(3, 3, 2).unwrap();
        let r = cost_exp_v_compact(&s2, 1e-3, &acct()).unwrap();
        assert_eq!(r.breakdown["potential"], 2 * 32);
        assert_eq!(r.t_count, 64 + t_rot(1e-3).unwrap().ceil() as u128);
        let s3 = SystemSpec::with_defaults(1, 1, 3).unwrap();
        let r3 = cost_exp_v_compact(&s3, 1e-3, &acct()).unwrap();
        assert_eq!(r3.breakdown["potential"], 8);
        assert_eq!(
            r3.t_count,
            8 + (4.0 * t_rot(1e-3 / 4.0).unwrap()).ceil() as u128
        );
        let s16 = SystemSpec::with_defaults(3, 3, 16).unwrap();
        let r16 = cost_exp_v_compact(&s16, 1.8e-6, &acct()).unwrap();
        assert_eq!(r16.breakdown["potential"], 4480 + 680 * 64);
        assert_eq!(r16.t_count, 65049);
        assert_eq!(r16.ancilla_qubits, 10);
        let s1 = SystemSpec::with_defaults(3, 3, 1).unwrap();
        assert_eq!(cost_exp_v_compact(&s1, 0.1, &acct()).unwrap().t_count, 0);
    }

    #[test]
    fn separate_potential_values() {
        let s = SystemSpec::with_defaults(3, 1, 2).unwrap();
        let r = cost_exp_v_separate(&s, 1e-3, 1e-3, &acct()).unwrap();
        assert_eq!(r.t_count, t_mcrz(1e-3, 2).unwrap().ceil() as u128);
        let s1 = SystemSpec::with_defaults(3, 1, 1).unwrap();
        assert_eq!(
            cost_exp_v_separate(&s1, 1e-3, 1e-3, &acct())
                .unwrap()
                .t_count,
            0
        );
        let s3 = SystemSpec::with_defaults(1, 1, 3).unwrap();
        let r3 = cost_exp_v_separate(&s3, 1e-3, 1e-3, &acct()).unwrap();
        let expect = 3.0 * t_mcrz(1e-3 / 3.0, 0).unwrap() + t_mcrz(1e-3, 1).unwrap();
        assert_eq!(r3.t_count, expect.ceil() as u128);
    }

    #[test]
    fn compact_and_separate_agree_for_two_particles() {
        for (d, m) in [(1, 2), (3, 1), (3, 3)] {
            let s = SystemSpec::with_defaults(d, m, 2).unwrap();
            let eps = 1e-4;
            let c = potential_tally(&s, eps).unwrap();
            let sep = cost_exp_v_separate(&s, eps, eps, &acct()).unwrap();
            let dm = s.dm() as i128;
            // A flag computed and uncomputed with dm controls versus a
            // rotation controlled on dm − 1 qubits: the Toffoli parts differ
            // by one 8-T pair, and the rotation is split in two halves.
            assert_eq!(c.part(POTENTIAL), 8 * (dm - 1));
            assert_eq!(sep.breakdown[POTENTIAL], 8 * (dm - 2).max(0));
            assert_relative_eq!(c.rotations(), t_rot(eps).unwrap());
            let sep_rot = 2.0 * t_rot(eps / 2.0).unwrap();
            assert_relative_eq!(
                sep_rot - 2.0 * c.rotations(),
                2.0 * 0.57,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn step_counts() {
        let s = SystemSpec::with_defaults(3, 3, 16).unwrap();
        let t = crossing_time(&s, 10.0).unwrap();
        assert_eq!(
            plan_trotter(&s, TrotterOrder::Second, 0.1, t).unwrap().r,
            13890
        );
        assert_eq!(
            plan_trotter(&s, TrotterOrder::Fourth, 0.1, t).unwrap().r,
            3081
        );
        assert_eq!(
            plan_trotter(&s, TrotterOrder::First, 0.1, 1e-9).unwrap().r,
            1
        );
    }

    #[test]
    fn table_three_second_order() {
        for (eta, qubits, r, t_count) in [
            (16, 207, 13890, 1_407_597_732u128),
            (40, 427, 21962, 24_651_077_900),
        ] {
            let s = SystemSpec::with_defaults(3, 3, eta).unwrap();
            let t = crossing_time(&s, 10.0).unwrap();
            let rep = cost_trotter(&s, TrotterOrder::Second, 0.1, t, &acct()).unwrap();
            assert_eq!(rep.total_qubits, qubits);
            assert_eq!(rep.steps, Some(r));
            assert_eq!(rep.t_count, t_count);
            assert!(rep.warnings.is_empty(), "{:?}", rep.warnings);
            assert_eq!(rep.breakdown.values().sum::<i128>() as u128, rep.t_count);
        }
    }

    #[test]
    fn order_two_calls_kinetic_r_plus_one_times() {
        let s = SystemSpec::with_defaults(1, 2, 2).unwrap();
        let rep = cost_trotter(&s, TrotterOrder::Second, 0.1, 0.5, &acct()).unwrap();
        let r = rep.steps.unwrap() as i128;
        let per_call_qft = 2 * i128::from(t_qft(2, 1.0).unwrap().t_count) * 2;
        assert_eq!(rep.breakdown[QFT], (r + 1) * per_call_qft);
    }

    #[test]
    fn internal_qubits_flag() {
        let s = SystemSpec::with_defaults(3, 3, 16).unwrap();
        let t = crossing_time(&s, 10.0).unwrap();
        let a = Accounting {
            include_internal: true,
            ..Accounting::default()
        };
        let rep = cost_trotter(&s, TrotterOrder::Second, 0.1, t, &a).unwrap();
        assert_eq!(rep.system_qubits, 144 + 32);
        assert_eq!(rep.total_qubits, 207 + 32);
    }
}
