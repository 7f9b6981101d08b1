//! One-norms, T-gate counts and qubit counts of the LCU block encodings of
//! the kinetic, potential and full Hamiltonians, and of QSP time evolution.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cost::{Accounting, CostTally};
use crate::error::{positive, EstimateError, Result};
use crate::gates::{ceil_log2, t_qft, t_rot};
use crate::params::{lambda_t, SystemSpec};

/// Cost of one block encoding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockEncodingReport {
    /// One-norm `λ` of the encoding, MeV.
    pub lambda: f64,
    /// T gates for one application, rotations rounded up.
    pub t_count: u128,
    /// Size of the block (control) register.
    pub block_qubits: u64,
    /// Additional working ancillas.
    pub ancilla_qubits: u64,
    /// Named sub-costs; they sum to `t_count`.
    pub breakdown: BTreeMap<String, i128>,
    /// Named register sizes.
    pub registers: BTreeMap<String, u64>,
    /// Degenerate-input notes.
    pub warnings: Vec<String>,
}

fn n_eta(eta: u64) -> u64 {
    ceil_log2(eta as f64).max(0) as u64
}

fn half_ceil_log2(x: f64) -> u64 {
    (0.5 * x.log2()).ceil().max(0.0) as u64
}

fn check_eps(eps: f64) -> Result<f64> {
    positive("eps", eps)
}

fn finish(
    lambda: f64,
    tally: &CostTally,
    block_qubits: u64,
    ancilla_qubits: u64,
) -> BlockEncodingReport {
    let (t_count, breakdown) = tally.finish();
    BlockEncodingReport {
        lambda,
        t_count,
        block_qubits,
        ancilla_qubits,
        breakdown,
        registers: BTreeMap::new(),
        warnings: Vec::new(),
    }
}

/// Block encoding of the kinetic energy.
///
/// `λ = dKη·2^{2(m−1)}`; T gates
/// `2d·T_QFT(m, ε/4d) + 12n_η + 16b_r + 16m + 4(2η−1)dm − 4d − 52` with
/// `n_η = ⌈log₂ η⌉` and `b_r = ⌈½·log₂(9π²/ε)⌉`; `η + 2m + 6` block qubits
/// and `b_QFT + max(2b_QFT − 1, m + 6)` ancillas.
pub fn lcu_t(spec: &SystemSpec, eps: f64) -> Result<BlockEncodingReport> {
    let eps = check_eps(eps)?;
    let (d, m, eta) = (
        u64::from(spec.lattice.d),
        u64::from(spec.lattice.m),
        spec.eta,
    );
    let qft = t_qft(m, eps / (4.0 * d as f64))?;
    let ne = n_eta(eta);
    let b_r = half_ceil_log2(9.0 * PI * PI / eps);
    let mut tally = CostTally::new();
    tally.add("qft", 2 * i128::from(d * qft.t_count)).add(
        "logic",
        12 * i128::from(ne)
            + 16 * i128::from(b_r)
            + 16 * i128::from(m)
            + 4 * i128::from(2 * eta - 1) * i128::from(d * m)
            - 4 * i128::from(d)
            - 52,
    );
    let mut rep = finish(
        lambda_t(spec),
        &tally,
        eta + 2 * m + 6,
        qft.b_qft + (2 * qft.b_qft - 1).max(m + 6),
    );
    rep.registers.insert("b_QFT".into(), qft.b_qft);
    rep.registers.insert("b_r".into(), b_r);
    rep.registers.insert("n_eta".into(), ne);
    if eta == 1 {
        rep.warnings.push("single particle: n_eta = 0".into());
    }
    if m < 2 {
        rep.warnings
            .push("m = 1: formula evaluated outside its stated range".into());
    }
    Ok(rep)
}

/// One-norm of the potential encoding, `η(3|C| + 4G)/2`.
pub fn lambda_v(spec: &SystemSpec) -> f64 {
    spec.eta_f() * (3.0 * spec.params.c.abs() + 4.0 * spec.params.g) / 2.0
}

/// Block encoding of the potential energy.
///
/// `λ = η(3|C| + 4G)/2`; T gates `24(η−1)dm − 8η + 44 + 3·T_ROT(ε/6)`;
/// `dm + 4` ancillas.
pub fn lcu_v(spec: &SystemSpec, eps: f64) -> Result<BlockEncodingReport> {
    let eps = check_eps(eps)?;
    let eta = i128::from(spec.eta);
    let dm = i128::from(spec.dm());
    let mut tally = CostTally::new();
    tally
        .add("logic", 24 * (eta - 1) * dm - 8 * eta + 44)
        .add_rotations(3.0 * t_rot(eps / 6.0)?);
    let lambda = lambda_v(spec);
    let mut rep = finish(
        lambda,
        &tally,
        spec.eta + 2 * u64::from(spec.lattice.m) + 6,
        spec.dm() + 4,
    );
    for (name, size) in [("S", 2), ("l", 1), ("p", 1), ("q", 1)] {
        rep.registers.insert(name.into(), size);
    }
    if lambda == 0.0 {
        rep.warnings
            .push("zero one-norm: the potential vanishes".into());
    }
    Ok(rep)
}

/// Block encoding of the full Hamiltonian.
///
/// `λ_H = λ_T + λ_V`; T gates
/// `4(6η−5)dm + 16m − 4d + 2d·T_QFT(m, ε/8d) − 8η + 12n_η + 16b_r
///  + 3·T_ROT(ε/12) + T_ROT(ε/2)` with `b_r = ⌈½·log₂(18π²/ε)⌉`;
/// `η + 2m + 10` block qubits and `b_QFT + max(2b_QFT − 1, dm + 6)`
/// ancillas, `b_QFT = min(m−1, ⌈log₂(8dm/ε)⌉) + 1`.
pub fn lcu_h(spec: &SystemSpec, eps: f64) -> Result<BlockEncodingReport> {
    let eps = check_eps(eps)?;
    let (d, m, eta) = (
        u64::from(spec.lattice.d),
        u64::from(spec.lattice.m),
        spec.eta,
    );
    let dm = spec.dm();
    let qft = t_qft(m, eps / (8.0 * d as f64))?;
    let ne = n_eta(eta);
    let b_r = half_ceil_log2(18.0 * PI * PI / eps);
    let mut tally = CostTally::new();
    tally
        .add("qft", 2 * i128::from(d * qft.t_count))
        .add(
            "logic",
            4 * (6 * i128::from(eta) - 5) * i128::from(dm) + 16 * i128::from(m)
                - 4 * i128::from(d)
                - 8 * i128::from(eta)
                + 12 * i128::from(ne)
                + 16 * i128::from(b_r),
        )
        .add_rotations(3.0 * t_rot(eps / 12.0)? + t_rot(eps / 2.0)?);
    let mut rep = finish(
        lambda_t(spec) + lambda_v(spec),
        &tally,
        eta + 2 * m + 10,
        qft.b_qft + (2 * qft.b_qft - 1).max(dm + 6),
    );
    rep.registers.insert("b_QFT".into(), qft.b_qft);
    rep.registers.insert("b_r".into(), b_r);
    rep.registers.insert("n_eta".into(), ne);
    Ok(rep)
}

/// Cost of QSP time evolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QspReport {
    /// Number of block-encoding segments, `3(⌈2λ_H|t| + 3·log(24/ε)⌉ + 1)`.
    #[serde(rename = "R")]
    pub r: u64,
    pub lambda_h: f64,
    pub t_count: u128,
    pub system_qubits: u64,
    pub ancilla_qubits: u64,
    pub total_qubits: u64,
    /// `select`, `prepare`, `reflections` and `qsp-rotations`; they sum to
    /// `t_count`.
    pub breakdown: BTreeMap<String, i128>,
    pub registers: BTreeMap<String, u64>,
}

/// Repetition count `R = 3(⌈2λ_H|t| + 3·log(24/ε)⌉ + 1)`.
pub fn qsp_repetitions(lambda_h: f64, t: f64, eps: f64, base: crate::cost::LogBase) -> u64 {
    3 * ((2.0 * lambda_h * t.abs() + 3.0 * base.log(24.0 / eps)).ceil() as u64 + 1)
}

/// T-gate and qubit cost of simulating `e^{−iHt}` to precision `eps` by
/// QSP with oblivious amplitude amplification.
///
/// Each of the `R` segments costs
/// ```text
/// 4(6η−5)dm − 4d + 2d·T_QFT(m, ε/32dλ_H|t|) − 4η + 52 + 12n_η + 16b_r + 24m
///   + 3·T_ROT(ε/48λ_H|t|) + T_ROT(ε/8λ_H|t|) + T_ROT(ε/2R)
/// ```
/// with `b_r = ⌈½·log₂(72λ_H|t|π²/ε)⌉`. The integer part is split into the
/// SELECT, PREPARE and reflection contributions it is assembled from.
/// Qubits: system plus `η + 2m + 12 + b_QFT + max(2b_QFT − 1, dm + 6, η + 2m + 9)`.
pub fn qsp_evolution(
    spec: &SystemSpec,
    eps: f64,
    t: f64,
    accounting: &Accounting,
) -> Result<QspReport> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(EstimateError::InvalidArgument {
            name: "eps",
            value: eps,
            requirement: "must lie in (0, 1)",
        });
    }
    let t = positive("time", t)?;
    let lambda_h = lambda_t(spec) + lambda_v(spec);
    if !(lambda_h > 0.0) {
        return Err(EstimateError::ZeroNorm);
    }
    let (d, m, eta) = (
        i128::from(spec.lattice.d),
        i128::from(spec.lattice.m),
        i128::from(spec.eta),
    );
    let dm = d * m;
    let lt = lambda_h * t;
    let r = qsp_repetitions(lambda_h, t, eps, accounting.qsp_log_base);
    let qft = t_qft(spec.lattice.m.into(), eps / (32.0 * d as f64 * lt))?;
    let ne = i128::from(n_eta(spec.eta));
    let b_r = half_ceil_log2(72.0 * lt * PI * PI / eps);
    let mut seg = CostTally::new();
    seg.add(
        "select",
        24 * (eta - 1) * dm + 4 * (d + 2) * (m - 1) + 2 * d * i128::from(qft.t_count) - 8 * eta
            + 88,
    )
    .add("prepare", 12 * ne + 16 * i128::from(b_r) + 8 * m - 64)
    .add("reflections", 4 * (eta + 2 * m + 9))
    .add_rotations(
        3.0 * t_rot(eps / (48.0 * lt))? + t_rot(eps / (8.0 * lt))? + t_rot(eps / (2.0 * r as f64))?,
    );
    let (t_count, breakdown) = seg.scaled(r).finish_as("qsp-rotations");
    let (um, ueta, udm) = (u64::from(spec.lattice.m), spec.eta, spec.dm());
    let b_qft = (um - 1).min(ceil_log2(24.0 * d as f64 * lt * um as f64 / eps).max(0) as u64) + 1;
    let system_qubits = accounting.system_qubits(ueta, udm);
    let ancilla_qubits =
        ueta + 2 * um + 12 + b_qft + (2 * b_qft - 1).max(udm + 6).max(ueta + 2 * um + 9);
    let mut registers = BTreeMap::new();
    registers.insert("b_QFT".into(), b_qft);
    registers.insert("b_r".into(), b_r);
    registers.insert("n_eta".into(), ne as u64);
    registers.insert("block".into(), ueta + 2 * um + 10);
    Ok(QspReport {
        r,
        lambda_h,
        t_count,
        system_qubits,
        ancilla_qubits,
        total_qubits: system_qubits + ancilla_qubits,
        breakdown,
        registers,
    })
}
