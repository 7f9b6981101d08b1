//! Circuit-versus-oracle checks on tiny instances.

use nalgebra::{DMatrix, DVector};
use rand::rngs::ChaCha8Rng;
use rand::{RngExt, SeedableRng};
use serde::{Deserialize, Serialize};

use pionless_core::{
    commutator_bounds, kickback_sizing, kinetic_coefficient, lambda_t, potential_norm_bounds,
    SystemSpec, TrotterOrder,
};

use crate::antisym::{antisymmetrizer, AntisymmetricBasis};
use crate::basis::Shape;
use crate::builders::{
    kickback_circuit, kinetic_evolution_circuit, potential_phase_circuit, umatch_circuit,
};
use crate::circuit::{simulate_basis, Gate, GateSequence, StateVector};
use crate::error::{check_limit, Result, SimError};
use crate::operator::{
    axis_kinetic, max_abs, occupation_counts, pair_triple_counts, potential_value,
    single_particle_kinetic, spatial_kinetic, spectral_norm, DenseOperator, HermitianExp, C64,
};

/// Largest number of spatial basis states enumerated classically.
pub const CLASSICAL_LIMIT: u64 = 1 << 20;

/// Spatial-qubit count up to which circuits are compared column by column.
pub const EXHAUSTIVE_QUBITS: u32 = 8;

/// `e^{−itV}` circuit against the diagonal oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseCheck {
    /// `max_x |⟨x|U|x⟩ − e^{−itV(x)}|`.
    pub max_deviation: f64,
    pub basis_states: u64,
    /// True when every basis state maps to itself with ancillas cleared.
    pub diagonal: bool,
}

/// Runs the potential phase circuit on every spatial basis state and
/// compares each phase entry-wise with `e^{−it(C·pairs + G·triples)}`.
pub fn verify_potential_phase_circuit(spec: &SystemSpec, t: f64) -> Result<PhaseCheck> {
    let shape = Shape::new(&spec.lattice, spec.eta)?;
    check_limit("spatial basis", shape.spatial_dim(), CLASSICAL_LIMIT)?;
    let (c, g) = (spec.params.c, spec.params.g);
    let seq = potential_phase_circuit(&shape, c, g, t);
    seq.validate()?;
    let mut max_deviation: f64 = 0.0;
    let mut diagonal = true;
    for x in 0..shape.spatial_dim() {
        let (y, phase) = simulate_basis(&seq, x)?;
        if y != x {
            diagonal = false;
            max_deviation = max_deviation.max(2.0);
            continue;
        }
        let want = C64::from_polar(1.0, -t * potential_value(&shape.spatial_sites(x), c, g));
        max_deviation = max_deviation.max((phase - want).norm());
    }
    Ok(PhaseCheck {
        max_deviation,
        basis_states: shape.spatial_dim(),
        diagonal,
    })
}

/// Outcome of the exhaustive `U_match` check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UmatchCheck {
    pub pass: bool,
    pub checked: u64,
    /// Configurations with more than three partners on the first site.
    /// These cannot occur for fermions with four internal states and exceed
    /// the two-bit counter, so they are not checked.
    pub skipped: u64,
    /// True when the circuit followed by its mirror is the identity on
    /// every basis state, counter included.
    pub mirror_restores: bool,
    /// First failing input as `(spatial index, counter, expected)`.
    pub counterexample: Option<(u64, u64, u64)>,
}

/// Checks that `U_match` writes `Λ = Σ_{j≥1} δ(r₀, r_j)` into `S` and
/// restores all other wires, for every spatial basis state.
pub fn verify_umatch(spec: &SystemSpec) -> Result<UmatchCheck> {
    let shape = Shape::new(&spec.lattice, spec.eta)?;
    check_limit("spatial basis", shape.spatial_dim(), CLASSICAL_LIMIT)?;
    let seq = umatch_circuit(&shape);
    seq.validate()?;
    let s = seq.wires("S").to_vec();
    let mut mirror = seq.clone();
    mirror.extend(GateSequence::inverse_gates(seq.gates()));
    let mut out = UmatchCheck {
        pass: true,
        checked: 0,
        skipped: 0,
        mirror_restores: true,
        counterexample: None,
    };
    let sys_mask = shape.spatial_dim() - 1;
    for x in 0..shape.spatial_dim() {
        for counter in 0..4u64 {
            let input = x | (counter << s[0]);
            let (y, _) = simulate_basis(&mirror, input)?;
            out.mirror_restores &= y == input;
        }
        let sites = shape.spatial_sites(x);
        let want = sites[1..].iter().filter(|r| **r == sites[0]).count() as u64;
        if want > 3 {
            out.skipped += 1;
            continue;
        }
        out.checked += 1;
        let (y, _) = simulate_basis(&seq, x)?;
        let got = (y >> s[0]) & 3;
        if y & sys_mask != x || y >> (s[1] + 1) != 0 || got != want {
            out.pass = false;
            out.counterexample.get_or_insert((x, got, want));
        }
    }
    out.pass &= out.mirror_restores;
    Ok(out)
}

/// Kinetic evolution circuit against the matrix exponential.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KineticCheck {
    pub max_deviation: f64,
    /// True when every column was compared; otherwise random states were.
    pub exhaustive: bool,
    pub states: usize,
}

/// Applies `e^{−iτT_axis}` to every axis register of a dense spatial
/// state; `T_axis` is exponentiated by eigendecomposition.
fn kinetic_oracle_apply(shape: &Shape, k_coef: f64, tau: f64, psi: &DVector<C64>) -> DVector<C64> {
    let u = HermitianExp::new(&axis_kinetic(shape.m, k_coef)).at(tau);
    let side = shape.side() as usize;
    let mut cur = psi.clone();
    for r in 0..(shape.eta * shape.d) as usize {
        let stride = side.pow(r as u32);
        let mut next = DVector::zeros(cur.len());
        for idx in 0..cur.len() {
            let x = (idx / stride) % side;
            let base = idx - x * stride;
            let z = cur[idx];
            if z.norm_sqr() == 0.0 {
                continue;
            }
            for y in 0..side {
                next[base + y * stride] += u[(y, x)] * z;
            }
        }
        cur = next;
    }
    cur
}

/// Compares the kinetic circuit with `e^{−iτT}`.
///
/// Up to [`EXHAUSTIVE_QUBITS`] spatial qubits every column is compared with
/// the dense exponential of the full kinetic matrix. Larger instances use
/// `samples` seeded random states and the per-axis exponential.
pub fn verify_kinetic_circuit(
    spec: &SystemSpec,
    tau: f64,
    samples: usize,
    seed: u64,
) -> Result<KineticCheck> {
    let shape = Shape::new(&spec.lattice, spec.eta)?;
    check_limit("spatial basis", shape.spatial_dim(), CLASSICAL_LIMIT)?;
    let k = kinetic_coefficient(spec);
    let seq = kinetic_evolution_circuit(&shape, k, tau);
    seq.validate()?;
    let n = shape.spatial_dim() as usize;
    let mut max_deviation: f64 = 0.0;
    if shape.spatial_qubits() <= EXHAUSTIVE_QUBITS {
        let oracle = spatial_kinetic(&shape, k)?.evolution(tau);
        for col in 0..n {
            let mut s = StateVector::basis(seq.num_qubits(), col as u64);
            s.run(&seq)?;
            let mut column = DVector::zeros(n);
            for (row, z) in s.entries() {
                column[row as usize] = z;
            }
            let diff = column - oracle.matrix.column(col);
            max_deviation = max_deviation.max(diff.iter().fold(0.0, |a, z| a.max(z.norm())));
        }
        return Ok(KineticCheck {
            max_deviation,
            exhaustive: true,
            states: n,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let raw: Vec<C64> = (0..n)
            .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let psi = DVector::from_vec(raw);
        let psi = psi.unscale(psi.norm());
        let mut s = StateVector::from_amplitudes(
            seq.num_qubits(),
            psi.iter().enumerate().map(|(i, z)| (i as u64, *z)),
        );
        s.run(&seq)?;
        let want = kinetic_oracle_apply(&shape, k, tau, &psi);
        let mut got = DVector::zeros(n);
        for (row, z) in s.entries() {
            got[row as usize] = z;
        }
        max_deviation = max_deviation.max(max_abs(&DMatrix::from_column_slice(
            n,
            1,
            (got - want).as_slice(),
        )));
    }
    Ok(KineticCheck {
        max_deviation,
        exhaustive: false,
        states: samples,
    })
}

/// Phase-kickback simulation result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KickbackCheck {
    /// `‖e^{−itH} − ⟨1̄|Q_H|1̄⟩‖`.
    pub measured: f64,
    pub eps: f64,
    pub b: u64,
    pub b_lambda: u64,
    pub pass: bool,
}

/// Simulates the adder-based `Q_H` against a `|1̄⟩` phase register and
/// measures `‖e^{−itH} − ⟨1̄|Q_H|1̄⟩‖`.
///
/// `H` must be diagonal with non-negative eigenvalues on `2^n` states.
/// With `exact_bits = Some(b_λ)` the eigenvalues must equal
/// `Λ·l_m/2^{b_λ}` for integers `l_m`, and the phase register uses the
/// smaller size of the exact case. `Λ` is the largest eigenvalue, or 1 for
/// `H = 0`.
pub fn verify_phase_kickback(
    diag_h: &DenseOperator,
    t: f64,
    eps: f64,
    exact_bits: Option<u64>,
) -> Result<KickbackCheck> {
    if !diag_h.is_diagonal() {
        return Err(SimError::Unsupported(
            "phase kickback needs a diagonal operator".into(),
        ));
    }
    let dim = diag_h.dim();
    if !dim.is_power_of_two() || dim > 1 << 6 {
        return Err(SimError::Unsupported(format!(
            "dimension {dim} is not 2^n with n <= 6"
        )));
    }
    let n = dim.trailing_zeros() as usize;
    let lambdas: Vec<f64> = (0..dim).map(|i| diag_h.matrix[(i, i)].re).collect();
    if lambdas.iter().any(|x| *x < 0.0) {
        return Err(SimError::Unsupported(
            "eigenvalues must be non-negative".into(),
        ));
    }
    let big = lambdas.iter().fold(0.0f64, |a, x| a.max(*x));
    let cap = if big > 0.0 { big } else { 1.0 };
    let sizing = kickback_sizing(t, cap, eps, exact_bits.is_some(), exact_bits)?;
    let scale = f64::powi(2.0, sizing.b_lambda as i32) / cap;
    let mut levels = Vec::with_capacity(dim);
    for lam in &lambdas {
        let l = lam * scale;
        if exact_bits.is_some() && (l - l.round()).abs() > 1e-9 {
            return Err(SimError::Unsupported(format!(
                "eigenvalue {lam} is not representable with {} bits",
                sizing.b_lambda
            )));
        }
        levels.push(l.round() as u64);
    }
    let oracle = kickback_circuit(n, &levels, &sizing);
    oracle.validate()?;
    let z = oracle.wires("z").to_vec();
    // |1̄⟩ is the inverse Fourier transform of |0…01⟩.
    let prep = vec![
        Gate::X(z[0]),
        Gate::Qft {
            register: z.clone(),
            inverse: true,
        },
    ];
    let qubits = oracle.num_qubits();
    let mut onebar = StateVector::basis(qubits, 0);
    onebar.run_gates(&prep)?;
    let onebar = onebar.entries();
    let mut block = DMatrix::<C64>::zeros(dim, dim);
    for col in 0..dim {
        let mut s = StateVector::basis(qubits, col as u64);
        s.run_gates(&prep)?;
        s.run(&oracle)?;
        for row in 0..dim {
            let amp: C64 = onebar
                .iter()
                .map(|(k, a)| a.conj() * s.amplitude(*k | row as u64))
                .sum();
            block[(row, col)] = amp;
        }
    }
    let target = DMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            C64::from_polar(1.0, -t * lambdas[r])
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let measured = spectral_norm(&(target - block));
    Ok(KickbackCheck {
        measured,
        eps,
        b: sizing.b,
        b_lambda: sizing.b_lambda,
        pass: measured <= eps,
    })
}

/// Measured semi-norms next to their closed-form bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeminormCheck {
    /// `(measured, bound)` for `T` against `λ_T`.
    pub kinetic: (f64, f64),
    pub v2: (f64, f64),
    pub v3: (f64, f64),
    pub combined: (f64, f64),
    /// `‖[T, V]‖_A` against `2α₁`.
    pub commutator: (f64, f64),
    /// `‖[V,[V,T]]‖_A/12 + ‖[T,[T,V]]‖_A/24` against `α₂`.
    pub second_order: (f64, f64),
    /// `max|Π_A² − Π_A|` and `max|Π_A − Π_A†|` when `Π_A` was formed
    /// densely.
    pub projector_error: Option<f64>,
    pub subspace_dim: usize,
}

impl SeminormCheck {
    /// True when every measured value is within its bound up to a relative
    /// `1e-10`, and the projector identities hold to `1e-12`.
    pub fn pass(&self) -> bool {
        let ok = |(m, b): (f64, f64)| m <= b * (1.0 + 1e-10) + 1e-10;
        [
            self.kinetic,
            self.v2,
            self.v3,
            self.combined,
            self.commutator,
            self.second_order,
        ]
        .into_iter()
        .all(ok)
            && self.projector_error.is_none_or(|e| e <= 1e-12)
    }
}

/// Operators restricted to the antisymmetric subspace of an instance.
#[derive(Debug, Clone)]
pub struct RestrictedHamiltonian {
    pub basis: AntisymmetricBasis,
    pub kinetic: DMatrix<C64>,
    pub v2: DMatrix<C64>,
    pub v3: DMatrix<C64>,
}

impl RestrictedHamiltonian {
    pub fn new(spec: &SystemSpec) -> Result<Self> {
        let shape = Shape::new(&spec.lattice, spec.eta)?;
        let basis = AntisymmetricBasis::new(shape)?;
        let t1 = single_particle_kinetic(&shape, kinetic_coefficient(spec));
        let kinetic = basis.restrict_one_body(&t1);
        let (c, g) = (spec.params.c, spec.params.g);
        let sites = |states: &[u64]| states.iter().map(|s| s % shape.sites()).collect::<Vec<_>>();
        let v2 = basis.restrict_diagonal(|st| c * occupation_counts(&sites(st)).0 as f64);
        let v3 = basis.restrict_diagonal(|st| g * pair_triple_counts(&sites(st)).1 as f64);
        Ok(Self {
            basis,
            kinetic,
            v2,
            v3,
        })
    }

    pub fn potential(&self) -> DMatrix<C64> {
        &self.v2 + &self.v3
    }
}

fn comm(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    a * b - b * a
}

/// Measures the fermionic semi-norms of `T`, `V₂`, `V₃`, `V₂ + V₃`,
/// `[T, V]` and the second-order commutator combination, and pairs them
/// with the closed-form bounds.
pub fn seminorm_bounds(spec: &SystemSpec) -> Result<SeminormCheck> {
    let h = RestrictedHamiltonian::new(spec)?;
    let shape = *h.basis.shape();
    let projector_error = if shape.full_dim() <= 512 {
        let pa = antisymmetrizer(&shape)?;
        let sq = &pa.matrix * &pa.matrix;
        Some(max_abs(&(&sq - &pa.matrix)).max(pa.hermiticity_error()))
    } else {
        None
    };
    let pb = potential_norm_bounds(spec);
    let ab = commutator_bounds(spec);
    let v = h.potential();
    let tv = comm(&h.kinetic, &v);
    let vvt = comm(&v, &comm(&v, &h.kinetic));
    let ttv = comm(&h.kinetic, &tv);
    Ok(SeminormCheck {
        kinetic: (spectral_norm(&h.kinetic), lambda_t(spec)),
        v2: (spectral_norm(&h.v2), pb.v2),
        v3: (spectral_norm(&h.v3), pb.v3),
        combined: (spectral_norm(&v), pb.combined),
        commutator: (spectral_norm(&tv), 2.0 * ab.alpha1),
        second_order: (
            spectral_norm(&vvt) / 12.0 + spectral_norm(&ttv) / 24.0,
            ab.alpha2,
        ),
        projector_error,
        subspace_dim: h.basis.len(),
    })
}

/// Product-formula error on the antisymmetric subspace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrotterCheck {
    pub order: u32,
    pub r: u64,
    pub t: f64,
    /// `‖(e^{−iHt} − S(t/r)^r)·Π_A‖`.
    pub measured: f64,
    /// `r·(t/r)^{q+1}·α_q`.
    pub bound: f64,
}

impl TrotterCheck {
    pub fn pass(&self) -> bool {
        self.measured <= self.bound * (1.0 + 1e-9) + 1e-12
    }
}

/// Cached exponentials for repeated product-formula checks on one
/// instance.
#[derive(Debug, Clone)]
pub struct TrotterLab {
    full: HermitianExp,
    kinetic: HermitianExp,
    potential: Vec<f64>,
    alpha1: f64,
    alpha2: f64,
    alpha4: f64,
}

impl TrotterLab {
    pub fn new(spec: &SystemSpec) -> Result<Self> {
        let h = RestrictedHamiltonian::new(spec)?;
        let v = h.potential();
        let potential = (0..v.nrows()).map(|i| v[(i, i)].re).collect();
        let a = commutator_bounds(spec);
        Ok(Self {
            full: HermitianExp::new(&(&h.kinetic + &v)),
            kinetic: HermitianExp::new(&h.kinetic),
            potential,
            alpha1: a.alpha1,
            alpha2: a.alpha2,
            alpha4: a.alpha4,
        })
    }

    /// `a·e^{−iVτ}`, scaling columns since `V` is diagonal.
    fn times_exp_v(&self, a: &DMatrix<C64>, tau: f64) -> DMatrix<C64> {
        let mut out = a.clone();
        for (j, v) in self.potential.iter().enumerate() {
            let phase = C64::from_polar(1.0, -v * tau);
            for z in out.column_mut(j).iter_mut() {
                *z *= phase;
            }
        }
        out
    }

    fn second_order_step(&self, tau: f64) -> DMatrix<C64> {
        let half = self.kinetic.at(tau / 2.0);
        self.times_exp_v(&half, tau) * &half
    }

    /// One step of the chosen splitting for time `tau`.
    ///
    /// Order 1 is `e^{−iTτ}e^{−iVτ}`, order 2 is
    /// `e^{−iTτ/2}e^{−iVτ}e^{−iTτ/2}`, and order 4 is
    /// `S₂(a₂τ)²·S₂((1−4a₂)τ)·S₂(a₂τ)²` with `a₂ = 1/(4 − 4^{1/3})`.
    pub fn step(&self, order: TrotterOrder, tau: f64) -> DMatrix<C64> {
        match order {
            TrotterOrder::First => self.times_exp_v(&self.kinetic.at(tau), tau),
            TrotterOrder::Second => self.second_order_step(tau),
            TrotterOrder::Fourth => {
                let a2 = pionless_core::trotter::fourth_order_a2();
                let outer = self.second_order_step(a2 * tau);
                let pair = &outer * &outer;
                &pair * self.second_order_step((1.0 - 4.0 * a2) * tau) * &pair
            }
        }
    }

    /// Measured error of `r` steps against the exact evolution, and the
    /// bound `r·(t/r)^{q+1}·α_q`.
    pub fn check(&self, order: TrotterOrder, r: u64, t: f64) -> TrotterCheck {
        let r = r.max(1);
        let tau = t / r as f64;
        let step = self.step(order, tau);
        let n = step.nrows();
        let mut prod = DMatrix::<C64>::identity(n, n);
        let mut base = step;
        let mut e = r;
        while e > 0 {
            if e & 1 == 1 {
                prod = &prod * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        let measured = spectral_norm(&(self.full.at(t) - prod));
        let (q, alpha) = match order {
            TrotterOrder::First => (1, self.alpha1),
            TrotterOrder::Second => (2, self.alpha2),
            TrotterOrder::Fourth => (4, self.alpha4),
        };
        TrotterCheck {
            order: order.as_u32(),
            r,
            t,
            measured,
            bound: r as f64 * tau.powi(q + 1) * alpha,
        }
    }
}

/// Measured product-formula error on the antisymmetric subspace against
/// `r·(t/r)^{q+1}·α_q`.
pub fn verify_trotter_bound(
    spec: &SystemSpec,
    order: TrotterOrder,
    r: u64,
    t: f64,
) -> Result<TrotterCheck> {
    Ok(TrotterLab::new(spec)?.check(order, r, t))
}

/// Seeded random `(t, r)` pairs with `t ∈ (0, t_max]` and `r ∈ 1..=r_max`.
pub fn random_trotter_cases(count: usize, t_max: f64, r_max: u64, seed: u64) -> Vec<(f64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (
                t_max * (1.0 - rng.random::<f64>()),
                rng.random_range(1..=r_max),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use pionless_core::{HamiltonianParams, LatticeConfig};

    fn spec(d: u32, m: u32, eta: u64) -> SystemSpec {
        SystemSpec::with_defaults(d, m, eta).unwrap()
    }

    fn free(d: u32, m: u32, eta: u64) -> SystemSpec {
        let mut p = HamiltonianParams::nominal();
        p.c = 0.0;
        p.g = 0.0;
        SystemSpec::new(p, LatticeConfig::new(d, m).unwrap(), eta).unwrap()
    }

    #[test]
    fn potential_phases() {
        let z = verify_potential_phase_circuit(&free(1, 2, 3), 0.9).unwrap();
        assert_eq!(z.max_deviation, 0.0);
        let a = verify_potential_phase_circuit(&spec(3, 1, 2), 0.7).unwrap();
        assert!(a.diagonal && a.max_deviation <= 1e-10, "{a:?}");
        let b = verify_potential_phase_circuit(&spec(1, 2, 3), 1.3).unwrap();
        assert!(b.diagonal && b.max_deviation <= 1e-10, "{b:?}");
    }

    #[test]
    fn umatch() {
        for (d, m, eta) in [(1, 1, 2), (1, 2, 3), (1, 2, 4), (2, 1, 4)] {
            let u = verify_umatch(&spec(d, m, eta)).unwrap();
            assert!(u.pass, "{u:?}");
            assert_eq!(u.skipped, 0);
        }
        let five = verify_umatch(&spec(1, 1, 5)).unwrap();
        assert!(five.pass && five.skipped > 0);
    }

    #[test]
    fn kinetic_circuit() {
        let a = verify_kinetic_circuit(&spec(1, 2, 2), 0.01, 0, 1).unwrap();
        assert!(a.exhaustive && a.max_deviation < 1e-10, "{a:?}");
        let b = verify_kinetic_circuit(&spec(3, 2, 2), 0.02, 2, 7).unwrap();
        assert!(!b.exhaustive && b.max_deviation < 1e-10, "{b:?}");
    }

    #[test]
    fn kickback() {
        let zero = verify_phase_kickback(&DenseOperator::from_diagonal(&[0.0; 4]), 1.0, 0.1, None)
            .unwrap();
        assert!(zero.measured < 1e-12);
        let ramp = DenseOperator::from_diagonal(&[0.0, 1.0, 2.0, 3.0]);
        let r = verify_phase_kickback(&ramp, std::f64::consts::FRAC_PI_4, 0.05, None).unwrap();
        assert!(r.pass, "{r:?}");
        let exact = DenseOperator::from_diagonal(&[0.0, 1.0, 2.0, 3.0, 4.0, 0.5, 1.5, 2.5]);
        let e = verify_phase_kickback(&exact, 0.6, 0.05, Some(3)).unwrap();
        let approx = verify_phase_kickback(&exact, 0.6, 0.05, None).unwrap();
        assert!(e.pass && e.b <= approx.b, "{e:?} {approx:?}");
    }

    #[test]
    fn seminorms_within_bounds() {
        for (m, eta) in [(1, 2), (1, 3), (2, 2)] {
            let c = seminorm_bounds(&spec(1, m, eta)).unwrap();
            assert!(c.pass(), "{c:?}");
        }
    }

    #[test]
    fn trotter_bounds() {
        let lab = TrotterLab::new(&spec(1, 2, 2)).unwrap();
        let zero = lab.check(TrotterOrder::First, 3, 0.0);
        assert_eq!((zero.measured < 1e-12, zero.bound), (true, 0.0));
        let one = lab.check(TrotterOrder::First, 4, 0.01);
        let two = lab.check(TrotterOrder::Second, 4, 0.01);
        assert!(one.pass() && two.pass(), "{one:?} {two:?}");
        assert!(two.measured < one.measured);
    }
}
