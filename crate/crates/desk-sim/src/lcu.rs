//! Block encoding of `H/λ_H` from PREPARE and SELECT on tiny instances.
//!
//! The kinetic term is split into layers: for one particle and axis,
//! `K·q² = Σ_{v=1}^{2^{m−1}} K·(2v−1)·[|q| ≥ v]`, so every unitary in the
//! combination realizes a projector `[|q| ≥ v]` in the momentum basis and
//! the weights add up to `λ_T`. The potential uses
//! `V = Σ_i (c₁·Λ_i + c₂·Λ_i²)` with `c₁ = C/2 − G/6`, `c₂ = G/6` and
//! `Λ_i` the number of other nucleons on the site of nucleon `i`. Writing
//! `Λ = S₀ + 2S₁ = 3·Σ_p κ_p²·S_p` gives the linear term from one `κ`
//! register and the square from two.
//!
//! A projector `P` held in a scratch bit `c` becomes a unitary through the
//! qubit `b` prepared in `|+⟩`: a phase `−1` on `b = 1, c = 0` has
//! `⟨+|·|+⟩_b = P`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use pionless_core::{kinetic_coefficient, lambda_t, lcu_h, SystemSpec};

use crate::basis::Shape;
use crate::builders::{axis, system_sequence, umatch_gates};
use crate::circuit::{Control, Gate, GateSequence, StateVector};
use crate::error::{check_limit, Result, SimError};
use crate::operator::{fold_momentum, max_abs, spatial_kinetic, spatial_potential, C64};

/// Largest spatial Hilbert space for the block-encoding check.
pub const BLOCK_LIMIT: u64 = 1 << 12;

/// Coefficients `(c₁, c₂)` of `Λ` and `Λ²` in the per-nucleon potential.
pub fn potential_coefficients(c: f64, g: f64) -> (f64, f64) {
    (c / 2.0 - g / 6.0, g / 6.0)
}

/// One-norm of the potential combination, `η·(3|c₁| + 9|c₂|)`.
///
/// Equal to `η·(3|C| + 4G)/2` whenever `C ≤ 0 ≤ G`.
pub fn potential_lambda(spec: &SystemSpec) -> f64 {
    let (c1, c2) = potential_coefficients(spec.params.c, spec.params.g);
    spec.eta_f() * (3.0 * c1.abs() + 9.0 * c2.abs())
}

/// Circuit and initial ancilla state of the block encoding.
#[derive(Debug, Clone)]
pub struct BlockEncoding {
    pub shape: Shape,
    /// SELECT acting on the system and ancilla wires.
    pub select: GateSequence,
    /// Ancilla part of PREPARE`|0⟩` as `(basis index, amplitude)` with the
    /// system bits cleared.
    pub prepared: Vec<(u64, C64)>,
    pub lambda_t: f64,
    pub lambda_v: f64,
}

impl BlockEncoding {
    pub fn lambda_h(&self) -> f64 {
        self.lambda_t + self.lambda_v
    }

    /// `⟨0|PREPARE†·SELECT·PREPARE|0⟩` applied to system basis state `x`.
    pub fn column(&self, x: u64) -> Result<Vec<C64>> {
        let n = self.shape.spatial_dim();
        let mut s = StateVector::from_amplitudes(
            self.select.num_qubits(),
            self.prepared.iter().map(|(anc, z)| (anc | x, *z)),
        );
        s.run(&self.select)?;
        Ok((0..n)
            .map(|y| {
                self.prepared
                    .iter()
                    .map(|(anc, z)| z.conj() * s.amplitude(anc | y))
                    .sum()
            })
            .collect())
    }
}

fn z_phase(target: usize, controls: Vec<Control>) -> Gate {
    Gate::Rz {
        target,
        theta: 2.0 * PI,
        controls,
    }
}

fn bits(reg: &[usize], value: u64) -> u64 {
    reg.iter()
        .enumerate()
        .fold(0, |acc, (j, q)| acc | (((value >> j) & 1) << q))
}

/// Builds SELECT and the injected PREPARE state.
///
/// Requires `η ≤ 4` so that `Λ ≤ 3` fits the two-bit counter, and a
/// spatial space of at most [`BLOCK_LIMIT`] states.
pub fn block_encoding(spec: &SystemSpec) -> Result<BlockEncoding> {
    let shape = Shape::new(&spec.lattice, spec.eta)?;
    check_limit("spatial basis", shape.spatial_dim(), BLOCK_LIMIT)?;
    if shape.eta > 4 {
        return Err(SimError::Unsupported(
            "block encoding needs eta <= 4 for the two-bit counter".into(),
        ));
    }
    let (eta, d, m) = (shape.eta as usize, shape.d as usize, shape.m);
    let (mut seq, regs) = system_sequence(&shape);
    let a = seq.register("a", 1)[0];
    let f = seq.register("f", eta);
    let g = seq.register("g", d);
    let h = seq.register("h", (m - 1) as usize);
    let b = seq.register("b", 1)[0];
    let l = seq.register("l", 1)[0];
    let p = seq.register("p", 1)[0];
    let q = seq.register("q", 1)[0];
    let s = seq.register("S", 2);
    let flag = seq.register("flag", 1)[0];
    let cmp = seq.register("cmp", 1)[0];

    // Nucleon i is exchanged with nucleon 0 for the whole of SELECT.
    let mut swap_in = Vec::new();
    for (i, reg) in regs.iter().enumerate().skip(1) {
        for (x, y) in reg.iter().zip(&regs[0]) {
            swap_in.push(Gate::Cswap {
                control: f[i],
                a: *x,
                b: *y,
            });
        }
    }
    seq.push(Gate::Alloc(
        s.iter().chain([&flag, &cmp]).copied().collect(),
    ));
    seq.extend(swap_in.clone());

    // Kinetic branch: axis w of nucleon 0 is exchanged with axis 0.
    let target = axis(&regs[0], m, 0);
    let mut axis_in = Vec::new();
    for (w, gw) in g.iter().enumerate().skip(1) {
        for (x, y) in axis(&regs[0], m, w as u32).iter().zip(&target) {
            axis_in.push(Gate::Cswap {
                control: *gw,
                a: *x,
                b: *y,
            });
        }
    }
    let side = 1u64 << m;
    let table = (0..side << (m - 1))
        .map(|idx| u64::from(fold_momentum(idx % side, m).unsigned_abs() > idx / side))
        .collect();
    let compare = [
        vec![Gate::Qft {
            register: target.clone(),
            inverse: false,
        }],
        vec![Gate::Lookup {
            controls: vec![],
            input: [target.clone(), h.clone()].concat(),
            output: vec![cmp],
            table,
        }],
    ]
    .concat();
    let kinetic_prefix = [axis_in, compare].concat();
    seq.extend(kinetic_prefix.clone());
    seq.push(z_phase(b, vec![Control::zero(a), Control::zero(cmp)]));
    seq.extend(GateSequence::inverse_gates(&kinetic_prefix));

    // Potential branch: Λ of nucleon 0 into S, then the selected projector.
    let count = umatch_gates(&regs, &s, flag);
    let select_bits = (0..32u64)
        .map(|idx| {
            let sb = [idx & 1, (idx >> 1) & 1];
            let (pv, qv, lv) = ((idx >> 2) & 1, (idx >> 3) & 1, (idx >> 4) & 1);
            if lv == 1 {
                sb[pv as usize]
            } else {
                sb[pv as usize] & sb[qv as usize]
            }
        })
        .collect();
    let project = [
        count,
        vec![Gate::Lookup {
            controls: vec![],
            input: vec![s[0], s[1], p, q, l],
            output: vec![cmp],
            table: select_bits,
        }],
    ]
    .concat();
    seq.extend(project.clone());
    seq.push(z_phase(b, vec![Control::one(a), Control::zero(cmp)]));
    seq.extend(GateSequence::inverse_gates(&project));
    let (c1, c2) = potential_coefficients(spec.params.c, spec.params.g);
    if c1 < 0.0 {
        seq.push(z_phase(l, vec![Control::one(a)]));
    }
    if c2 < 0.0 {
        seq.push(Gate::X(l));
        seq.push(z_phase(l, vec![Control::one(a)]));
        seq.push(Gate::X(l));
    }

    seq.extend(GateSequence::inverse_gates(&swap_in));
    seq.push(Gate::Release(
        s.iter().chain([&flag, &cmp]).copied().collect(),
    ));
    seq.validate()?;

    let lt = lambda_t(spec);
    let lv = potential_lambda(spec);
    let lh = lt + lv;
    if lh <= 0.0 || lh.is_nan() {
        return Err(SimError::Estimate(pionless_core::EstimateError::ZeroNorm));
    }
    let plus = std::f64::consts::FRAC_1_SQRT_2;
    let mut prepared = Vec::new();
    let mut push = |base: u64, amp: f64| {
        for bv in 0..2u64 {
            prepared.push((base | (bv << b), C64::new(amp * plus, 0.0)));
        }
    };
    if lt > 0.0 {
        let levels = 1u64 << (m - 1);
        for i in 0..eta {
            for w in 0..d {
                for v in 1..=levels {
                    let amp = (lt / lh).sqrt() / ((eta * d) as f64).sqrt()
                        * ((2 * v - 1) as f64 / (levels * levels) as f64).sqrt();
                    push(bits(&f, 1 << i) | bits(&g, 1 << w) | bits(&h, v - 1), amp);
                }
            }
        }
    }
    if lv > 0.0 {
        let per = 3.0 * c1.abs() + 9.0 * c2.abs();
        let kappa = [(1.0f64 / 3.0).sqrt(), (2.0f64 / 3.0).sqrt()];
        for i in 0..eta {
            let base = (1u64 << a) | bits(&f, 1 << i);
            let amp = (lv / lh).sqrt() / (eta as f64).sqrt();
            let phi1 = (3.0 * c1.abs() / per).sqrt();
            let phi0 = (9.0 * c2.abs() / per).sqrt();
            for pv in 0..2u64 {
                if phi1 > 0.0 {
                    push(base | (1 << l) | (pv << p), amp * phi1 * kappa[pv as usize]);
                }
                for qv in 0..2u64 {
                    if phi0 > 0.0 {
                        let k = kappa[pv as usize] * kappa[qv as usize];
                        push(base | (pv << p) | (qv << q), amp * phi0 * k);
                    }
                }
            }
        }
    }
    Ok(BlockEncoding {
        shape,
        select: seq,
        prepared,
        lambda_t: lt,
        lambda_v: lv,
    })
}

/// Reconstructed block against `H/λ_H`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockEncodingCheck {
    /// `max |⟨y|⟨0|U_H|0⟩|x⟩ − ⟨y|H|x⟩/λ_H|` over all spatial `x, y`.
    pub max_deviation: f64,
    /// Largest `|‖block·x‖² − ‖H·x‖²/λ_H²|` over columns.
    pub column_norm_error: f64,
    pub lambda_h: f64,
    /// `λ_H` from the resource estimator for the same instance.
    pub lambda_h_estimator: f64,
    pub columns: u64,
    pub qubits: usize,
    pub pass: bool,
}

/// Reconstructs every column of the block `⟨0|U_H|0⟩` for the spatial
/// basis and compares it with `H/λ_H`. `eps` is the pass tolerance.
pub fn verify_block_encoding(spec: &SystemSpec, eps: f64) -> Result<BlockEncodingCheck> {
    let be = block_encoding(spec)?;
    let shape = be.shape;
    let k = kinetic_coefficient(spec);
    let mut target = spatial_kinetic(&shape, k)?.matrix;
    for (i, v) in spatial_potential(&shape, spec.params.c, spec.params.g)?
        .into_iter()
        .enumerate()
    {
        target[(i, i)] += v;
    }
    let lh = be.lambda_h();
    target.unscale_mut(lh);
    let n = shape.spatial_dim() as usize;
    let mut block = DMatrix::<C64>::zeros(n, n);
    for x in 0..n {
        for (y, z) in be.column(x as u64)?.into_iter().enumerate() {
            block[(y, x)] = z;
        }
    }
    let max_deviation = max_abs(&(&block - &target));
    let column_norm_error = (0..n)
        .map(|x| (block.column(x).norm_squared() - target.column(x).norm_squared()).abs())
        .fold(0.0, f64::max);
    let lambda_h_estimator = lcu_h(spec, 0.01).map(|r| r.lambda).unwrap_or(f64::NAN);
    Ok(BlockEncodingCheck {
        max_deviation,
        column_norm_error,
        lambda_h: lh,
        lambda_h_estimator,
        columns: n as u64,
        qubits: be.select.num_qubits(),
        pass: max_deviation <= eps && column_norm_error <= eps,
    })
}
