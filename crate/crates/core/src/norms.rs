//! Upper bounds on fermionic semi-norms of the potential terms and on the
//! nested commutators that control product-formula errors.
//!
//! The semi-norm restricts the spectral norm to the antisymmetric subspace,
//! where at most four nucleons (one per spin/isospin flavor) share a site.

use serde::{Deserialize, Serialize};

use crate::error::{EstimateError, Result};
use crate::params::{single_particle_bound, SystemSpec};

/// Maximum number of site-sharing triples among `η` nucleons.
///
/// A full site contributes four triples; a leftover group of three adds one.
pub fn max_triples(eta: u64) -> u64 {
    4 * (eta / 4) + u64::from(eta % 4 == 3)
}

/// Maximum number of site-sharing pairs among `η` nucleons.
///
/// A full site contributes six pairs; a leftover group of three adds three
/// and a leftover pair adds one.
pub fn max_couples(eta: u64) -> u64 {
    6 * (eta / 4)
        + match eta % 4 {
            3 => 3,
            2 => 1,
            _ => 0,
        }
}

/// Semi-norm bounds on the two- and three-body potentials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialBounds {
    /// Bound on `‖V₂‖_A`, `(3/2)η|C|`.
    pub v2: f64,
    /// Bound on `‖V₃‖_A`, `η|G|`.
    pub v3: f64,
    /// Bound on `‖V₂ + V₃‖_A` accounting for partial cancellation.
    pub combined: f64,
}

/// Bounds on the potential semi-norms.
///
/// The combined bound is the largest of the three fully packed
/// configurations: all nucleons in pairs, in triples, or in quadruples.
pub fn potential_norm_bounds(spec: &SystemSpec) -> PotentialBounds {
    let (c, g) = (spec.params.c, spec.params.g);
    let eta = spec.eta;
    let e = spec.eta_f();
    PotentialBounds {
        v2: 1.5 * e * c.abs(),
        v3: e * g.abs(),
        combined: (c.abs() * (eta / 2) as f64)
            .max((3.0 * c + g).abs() * (eta / 3) as f64)
            .max((6.0 * c + 4.0 * g).abs() * (eta / 4) as f64),
    }
}

/// `M(s) = max{|2^s C/2|, |2^s C + 3^s G/6|, |2^s·3C/2 + 3^s G/2|}` for
/// `s ∈ {1, 2, 3, 4}`.
pub fn m_s(s: u32, c: f64, g: f64) -> Result<f64> {
    if !(1..=4).contains(&s) {
        return Err(EstimateError::InvalidCount {
            name: "s",
            value: u64::from(s),
            requirement: "must lie in 1..=4",
        });
    }
    let p2 = f64::powi(2.0, s as i32);
    let p3 = f64::powi(3.0, s as i32);
    Ok((p2 * c / 2.0)
        .abs()
        .max((p2 * c + p3 * g / 6.0).abs())
        .max((p2 * 3.0 * c / 2.0 + p3 * g / 2.0).abs()))
}

/// Commutator constants for first-, second- and fourth-order splittings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommutatorBounds {
    /// MeV².
    pub alpha1: f64,
    /// MeV³.
    pub alpha2: f64,
    /// MeV⁵.
    pub alpha4: f64,
}

/// `max{|C|, |2C+G/2|, |3C+3G/2|}`: bound on the potential felt by one
/// nucleon from up to three partners.
pub fn single_commutator_factor(c: f64, g: f64) -> f64 {
    c.abs()
        .max((2.0 * c + g / 2.0).abs())
        .max((3.0 * c + 1.5 * g).abs())
}

/// Evaluates `α₁`, `α₂` and `α₄`.
///
/// `k = λ_T/η` is the single-particle kinetic bound; the formulas are
/// ```text
/// α₁ = λ_T·X₁,  X₁ = max{|C|, |2C+G/2|, |3C+3G/2|}
/// α₂ = 4η[k²/24·max{|2C|, |4C+3G/2|, |6C+9G/2|} + k/12·X₁²]
/// α₄ = 16η[0.0047k⁴M(4) + 0.02k³M(3)² + 0.01883k²M(2)³ + 0.0284kM(1)⁴]
/// ```
pub fn commutator_bounds(spec: &SystemSpec) -> CommutatorBounds {
    let (c, g) = (spec.params.c, spec.params.g);
    let e = spec.eta_f();
    let k = single_particle_bound(&spec.params, &spec.lattice);
    let x1 = single_commutator_factor(c, g);
    let x2 = (2.0 * c)
        .abs()
        .max((4.0 * c + 1.5 * g).abs())
        .max((6.0 * c + 4.5 * g).abs());
    let m = |s| m_s(s, c, g).expect("s is in range");
    CommutatorBounds {
        alpha1: k * e * x1,
        alpha2: 4.0 * e * (k * k * x2 / 24.0 + k * x1 * x1 / 12.0),
        alpha4: 16.0
            * e
            * (0.0047 * k.powi(4) * m(4)
                + 0.02 * k.powi(3) * m(3).powi(2)
                + 0.01883 * k * k * m(2).powi(3)
                + 0.0284 * k * m(1).powi(4)),
    }
}
