//! Physical constants, Hamiltonian and lattice parameters, and the two
//! simulation-time models.
//!
//! All energies are in MeV, lengths in fm and times in MeV⁻¹. The conversion
//! between fm and MeV⁻¹ uses [`HBAR_C_MEV_FM`].

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{positive, EstimateError, Result};
use crate::norms::potential_norm_bounds;

/// Reduced Planck constant times the speed of light, in MeV·fm.
pub const HBAR_C_MEV_FM: f64 = 197.326_980_4;

/// Coupling constants and lattice constants of the pionless Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianParams {
    /// ħ²/(2μa²) in MeV.
    pub kinetic_scale: f64,
    /// Two-body contact coupling in MeV.
    pub c: f64,
    /// Three-body contact coupling in MeV.
    pub g: f64,
    /// Lattice spacing in fm.
    pub a: f64,
    /// Nucleon mass in MeV.
    pub mu: f64,
}

impl HamiltonianParams {
    /// Parameters for a lattice spacing of 1.4 fm.
    pub const fn nominal() -> Self {
        Self {
            kinetic_scale: 10.58,
            c: -98.23,
            g: 127.84,
            a: 1.4,
            mu: 939.0,
        }
    }

    /// Checks the physical invariants.
    ///
    /// A zero `kinetic_scale` is admitted so that potential-only test
    /// Hamiltonians can be expressed; negative values are rejected.
    pub fn validate(&self) -> Result<()> {
        let finite = |name: &'static str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(EstimateError::InvalidParameter {
                    name,
                    value: v,
                    requirement: "must be finite",
                })
            }
        };
        finite("c_mev", self.c)?;
        finite("g_mev", self.g)?;
        if !(self.kinetic_scale >= 0.0 && self.kinetic_scale.is_finite()) {
            return Err(EstimateError::InvalidParameter {
                name: "kinetic_scale_mev",
                value: self.kinetic_scale,
                requirement: "must be finite and non-negative",
            });
        }
        for (name, v) in [("a_fm", self.a), ("mu_mev", self.mu)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(EstimateError::InvalidParameter {
                    name,
                    value: v,
                    requirement: "must be finite and strictly positive",
                });
            }
        }
        Ok(())
    }

    /// Parses the flat `key = value` parameter format.
    ///
    /// Blank lines and lines starting with `#` are ignored. Absent keys keep
    /// their default value; unknown keys are rejected.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut p = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| EstimateError::Config {
                line: idx + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, found `{line}`")))?;
            let key = key.trim();
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|e| err(format!("value for `{key}`: {e}")))?;
            match key {
                "kinetic_scale_mev" => p.kinetic_scale = value,
                "c_mev" => p.c = value,
                "g_mev" => p.g = value,
                "a_fm" => p.a = value,
                "mu_mev" => p.mu = value,
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        p.validate()?;
        Ok(p)
    }

    /// Renders the parameters in the format read by [`Self::from_config_str`].
    ///
    /// Values use the shortest decimal form that parses back to the same
    /// `f64`, so a write/read cycle is bit-exact.
    pub fn to_config_string(&self) -> String {
        let mut s = String::from("# pionless Hamiltonian parameters (MeV, fm)\n");
        let _ = writeln!(s, "kinetic_scale_mev = {}", self.kinetic_scale);
        let _ = writeln!(s, "c_mev = {}", self.c);
        let _ = writeln!(s, "g_mev = {}", self.g);
        let _ = writeln!(s, "a_fm = {}", self.a);
        let _ = writeln!(s, "mu_mev = {}", self.mu);
        s
    }
}

impl Default for HamiltonianParams {
    fn default() -> Self {
        Self::nominal()
    }
}

/// Spatial discretization: `d` axes with `2^m` sites each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeConfig {
    /// Number of spatial dimensions.
    pub d: u32,
    /// Qubits per axis.
    pub m: u32,
}

impl LatticeConfig {
    /// Creates a lattice, checking `d ≥ 1` and `m ≥ 1`.
    pub fn new(d: u32, m: u32) -> Result<Self> {
        if d == 0 {
            return Err(EstimateError::InvalidCount {
                name: "d",
                value: 0,
                requirement: "must be at least 1",
            });
        }
        if m == 0 {
            return Err(EstimateError::InvalidCount {
                name: "m",
                value: 0,
                requirement: "must be at least 1",
            });
        }
        if u64::from(d) * u64::from(m) > 60 {
            return Err(EstimateError::InvalidCount {
                name: "d*m",
                value: u64::from(d) * u64::from(m),
                requirement: "must not exceed 60",
            });
        }
        Ok(Self { d, m })
    }

    /// Sites per axis, `M = 2^m`.
    pub fn sites_per_axis(&self) -> u64 {
        1u64 << self.m
    }

    /// Number of lattice sites, `M^d`.
    pub fn sites(&self) -> u64 {
        1u64 << (self.d * self.m)
    }

    /// Single-particle states including spin and isospin, `Ω = 4·M^d`.
    pub fn omega(&self) -> u64 {
        4u64.saturating_mul(self.sites())
    }
}

/// A complete problem instance: Hamiltonian, lattice and particle number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemSpec {
    pub params: HamiltonianParams,
    pub lattice: LatticeConfig,
    /// Number of nucleons η.
    pub eta: u64,
}

impl SystemSpec {
    /// Validates and bundles a problem instance.
    ///
    /// Requires `1 ≤ η ≤ Ω`.
    pub fn new(params: HamiltonianParams, lattice: LatticeConfig, eta: u64) -> Result<Self> {
        params.validate()?;
        if eta == 0 || eta > lattice.omega() {
            return Err(EstimateError::InvalidCount {
                name: "eta",
                value: eta,
                requirement: "must satisfy 1 <= eta <= 4*2^(d*m)",
            });
        }
        Ok(Self {
            params,
            lattice,
            eta,
        })
    }

    /// Instance with the default parameters.
    pub fn with_defaults(d: u32, m: u32, eta: u64) -> Result<Self> {
        Self::new(HamiltonianParams::default(), LatticeConfig::new(d, m)?, eta)
    }

    /// `η` as a float.
    pub fn eta_f(&self) -> f64 {
        self.eta as f64
    }

    /// `d·m`, the number of spatial qubits per particle.
    pub fn dm(&self) -> u64 {
        u64::from(self.lattice.d) * u64::from(self.lattice.m)
    }
}

/// Lattice kinetic coefficient `K = kinetic_scale·(2π/2^m)²`.
pub fn kinetic_coefficient(spec: &SystemSpec) -> f64 {
    let step = 2.0 * PI / spec.lattice.sites_per_axis() as f64;
    spec.params.kinetic_scale * step * step
}

/// Kinetic one-norm `d·K·η·2^{2m−2}` for an arbitrary particle count.
///
/// Equal to `kinetic_scale·d·η·π²`, independent of `m`.
pub fn kinetic_one_norm(params: &HamiltonianParams, lattice: &LatticeConfig, eta: u64) -> f64 {
    single_particle_bound(params, lattice) * eta as f64
}

/// Largest single-particle kinetic eigenvalue `d·K·2^{2m−2}`.
pub fn single_particle_bound(params: &HamiltonianParams, lattice: &LatticeConfig) -> f64 {
    let m = lattice.m as i32;
    let k = params.kinetic_scale * (2.0 * PI / f64::powi(2.0, m)).powi(2);
    f64::from(lattice.d) * k * f64::powi(2.0, 2 * m - 2)
}

/// Kinetic norm bound `λ_T = d·K·η·2^{2m−2}`.
pub fn lambda_t(spec: &SystemSpec) -> f64 {
    kinetic_one_norm(&spec.params, &spec.lattice, spec.eta)
}

/// Time for a nucleon of kinetic energy `energy` to cross the lattice,
/// `a·2^m/(ħc)·√(μ/2E)`.
pub fn crossing_time(spec: &SystemSpec, energy: f64) -> Result<f64> {
    let e = positive("crossing energy", energy)?;
    let length = spec.params.a * spec.lattice.sites_per_axis() as f64;
    Ok(length / HBAR_C_MEV_FM * (spec.params.mu / (2.0 * e)).sqrt())
}

/// Details of a response-time evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponseTime {
    /// Evolution time in MeV⁻¹.
    pub t: f64,
    /// Spectral range `ΔH = λ_T + combined potential bound + 18η`.
    pub delta_h: f64,
    /// `⌈ΔH/Δω⌉ − 1`, the number of resolvable bins beyond the first.
    pub bins: u64,
}

/// Evolution time needed to resolve a response function at resolution
/// `delta_omega`.
///
/// Returns `t = 0` with `bins = 0` when `delta_omega ≥ ΔH`.
pub fn response_time_detail(spec: &SystemSpec, delta_omega: f64) -> Result<ResponseTime> {
    let dw = positive("delta_omega", delta_omega)?;
    let delta_h = lambda_t(spec) + potential_norm_bounds(spec).combined + 18.0 * spec.eta_f();
    let bins = ((delta_h / dw).ceil() as u64).saturating_sub(1);
    let t = if delta_h > 0.0 {
        bins as f64 * 2.0 * PI / delta_h
    } else {
        0.0
    };
    Ok(ResponseTime { t, delta_h, bins })
}

/// Evolution time needed to resolve a response function, in MeV⁻¹.
pub fn response_time(spec: &SystemSpec, delta_omega: f64) -> Result<f64> {
    response_time_detail(spec, delta_omega).map(|r| r.t)
}

/// How the total evolution time is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum TimeSpec {
    /// A fixed time in MeV⁻¹.
    Explicit { t: f64 },
    /// Lattice crossing time for a nucleon with kinetic energy `energy` (MeV).
    Crossing { energy: f64 },
    /// Response time at resolution `delta_omega` (MeV).
    Response { delta_omega: f64 },
}

impl TimeSpec {
    /// Evaluates the time model for a given instance.
    pub fn resolve(&self, spec: &SystemSpec) -> Result<f64> {
        match *self {
            TimeSpec::Explicit { t } => positive("time", t),
            TimeSpec::Crossing { energy } => crossing_time(spec, energy),
            TimeSpec::Response { delta_omega } => response_time(spec, delta_omega),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spec(d: u32, m: u32, eta: u64) -> SystemSpec {
        SystemSpec::with_defaults(d, m, eta).unwrap()
    }

    #[test]
    fn kinetic_coefficient_values() {
        assert_relative_eq!(
            kinetic_coefficient(&spec(3, 3, 16)),
            6.526_275_910_220_338,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            kinetic_coefficient(&spec(1, 1, 1)),
            104.420_414_563_525_41,
            max_relative = 1e-12
        );
        let mut p = HamiltonianParams::nominal();
        p.kinetic_scale = 0.0;
        let s = SystemSpec::new(p, LatticeConfig::new(3, 3).unwrap(), 4).unwrap();
        assert_eq!(kinetic_coefficient(&s), 0.0);
    }

    #[test]
    fn lambda_t_values() {
        assert_relative_eq!(
            lambda_t(&spec(3, 3, 16)),
            5_012.179_899_049_22,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            lambda_t(&spec(3, 3, 40)),
            12_530.449_747_623_05,
            max_relative = 1e-12
        );
        let s = spec(3, 3, 16);
        assert_eq!(kinetic_one_norm(&s.params, &s.lattice, 0), 0.0);
        let k = kinetic_coefficient(&s);
        assert_relative_eq!(lambda_t(&s), 3.0 * k * 16.0 * 16.0, max_relative = 1e-12);
    }

    #[test]
    fn crossing_time_values() {
        let s = spec(3, 3, 16);
        assert_relative_eq!(
            crossing_time(&s, 10.0).unwrap(),
            0.388_910_215_436_530_5,
            max_relative = 1e-12
        );
        assert!(crossing_time(&s, 0.0).is_err());
        assert!(crossing_time(&s, -1.0).is_err());
        let t6 = crossing_time(&spec(3, 6, 16), 10.0).unwrap();
        let t3 = crossing_time(&spec(3, 3, 16), 10.0).unwrap();
        assert_eq!(t6, 8.0 * t3);
        let mut prev = f64::INFINITY;
        for e in [1.0, 10.0, 100.0, 1e4, 1e8] {
            let t = crossing_time(&s, e).unwrap();
            assert!(t < prev);
            prev = t;
        }
    }

    #[test]
    fn response_time_values() {
        let r16 = response_time_detail(&spec(3, 3, 16), 100.0).unwrap();
        assert_eq!(r16.bins, 61);
        assert_relative_eq!(r16.t, 0.062_479_205_084_299_48, max_relative = 1e-12);
        let r40 = response_time_detail(&spec(3, 3, 40), 100.0).unwrap();
        assert_eq!(r40.bins, 154);
        assert_relative_eq!(r40.delta_h, 15_419.499_747_623_05, max_relative = 1e-12);
        assert_relative_eq!(r40.t, 0.062_752_394_898_856_28, max_relative = 1e-12);
        assert!(((r40.t - r16.t) / r16.t).abs() < 0.1);
    }

    #[test]
    fn response_time_single_bin() {
        let s = spec(3, 3, 16);
        let dh = response_time_detail(&s, 100.0).unwrap().delta_h;
        assert_eq!(response_time(&s, dh).unwrap(), 0.0);
        assert_eq!(response_time(&s, 2.0 * dh).unwrap(), 0.0);
        assert!(response_time(&s, 0.0).is_err());
    }

    #[test]
    fn config_round_trip_is_bit_exact() {
        let p = HamiltonianParams::default();
        let back = HamiltonianParams::from_config_str(&p.to_config_string()).unwrap();
        assert_eq!(p, back);
        let odd = HamiltonianParams {
            kinetic_scale: 0.1 + 0.2,
            c: -1.0 / 3.0,
            g: 1e-300,
            a: std::f64::consts::PI,
            mu: 938.918_754,
        };
        assert_eq!(
            HamiltonianParams::from_config_str(&odd.to_config_string()).unwrap(),
            odd
        );
    }

    #[test]
    fn config_defaults_and_errors() {
        let p = HamiltonianParams::from_config_str("# only c\nc_mev = -50\n").unwrap();
        assert_eq!(p.c, -50.0);
        assert_eq!(p.g, 127.84);
        assert!(HamiltonianParams::from_config_str("mu_mev = -939").is_err());
        assert!(HamiltonianParams::from_config_str("bogus = 1").is_err());
        assert!(HamiltonianParams::from_config_str("c_mev 1").is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(SystemSpec::with_defaults(1, 1, 0).is_err());
        assert!(SystemSpec::with_defaults(1, 1, 8).is_ok());
        assert!(SystemSpec::with_defaults(1, 1, 9).is_err());
        assert!(LatticeConfig::new(0, 3).is_err());
        assert!(LatticeConfig::new(3, 0).is_err());
        assert_eq!(LatticeConfig::new(3, 3).unwrap().omega(), 2048);
    }
}
