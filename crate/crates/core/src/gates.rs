//! T-gate costs and register sizes of the primitive subroutines, and the
//! sizing of the phase-kickback construction for diagonal unitaries.
//!
//! Integer-valued costs are returned as integers. Rotation costs are real
//! numbers and are only rounded up when a final report is assembled.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{EstimateError, Result};

/// `⌈log₂ x⌉` for a positive finite `x`.
pub(crate) fn ceil_log2(x: f64) -> i64 {
    x.log2().ceil() as i64
}

/// Cost of squaring an `N`-qubit register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquaringCost {
    pub t_count: u64,
    pub ancillas: u64,
}

/// Squaring an `N`-bit integer: `4N² − 4N` T gates and `N(N−1)` ancillas.
pub fn t_squ(n: u64) -> Result<SquaringCost> {
    if n == 0 {
        return Err(EstimateError::InvalidCount {
            name: "squaring width",
            value: 0,
            requirement: "must be at least 1",
        });
    }
    Ok(SquaringCost {
        t_count: 4 * n * n - 4 * n,
        ancillas: n * (n - 1),
    })
}

/// Cost and register sizes of an approximate QFT.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QftCost {
    pub t_count: u64,
    /// Size of the phase-gradient register.
    pub b_qft: u64,
    /// Working ancillas, `3b − 1`.
    pub ancillas: u64,
}

/// Approximate QFT on `N` qubits to precision `eps`.
///
/// For `N ≥ 3` the count is `7N − 11 + Σ_{n=3}^{N−1} (8·min(⌈log₂(N/ε)⌉, n) − 15)`.
/// Registers of one and two qubits cost 0 and 3 T gates respectively.
/// The rounded logarithm is floored at 2 so that the count stays
/// non-negative when `eps` exceeds the formula's validity range.
pub fn t_qft(n: u64, eps: f64) -> Result<QftCost> {
    if !(eps > 0.0) || eps.is_nan() {
        return Err(EstimateError::InvalidArgument {
            name: "qft eps",
            value: eps,
            requirement: "must be strictly positive",
        });
    }
    if n == 0 {
        return Err(EstimateError::InvalidCount {
            name: "qft width",
            value: 0,
            requirement: "must be at least 1",
        });
    }
    let c = ceil_log2(n as f64 / eps).max(2) as u64;
    let b_qft = (n - 1).min(c) + 1;
    let t_count = match n {
        1 => 0,
        2 => 3,
        _ => 7 * n - 11 + (3..n).map(|k| 8 * c.min(k) - 15).sum::<u64>(),
    };
    Ok(QftCost {
        t_count,
        b_qft,
        ancillas: 3 * b_qft - 1,
    })
}

/// T gates for a single-qubit Z rotation synthesized to precision `eps`,
/// `0.57·log₂(1/ε) + 8.83`.
///
/// The logarithm is clamped at zero for `eps ≥ 1`.
pub fn t_rot(eps: f64) -> Result<f64> {
    if !(eps > 0.0) || eps.is_nan() {
        return Err(EstimateError::InvalidArgument {
            name: "rotation eps",
            value: eps,
            requirement: "must be strictly positive",
        });
    }
    Ok(0.57 * (1.0 / eps).log2().max(0.0) + 8.83)
}

/// T gates for an `N`-controlled Toffoli, `4(N − 1)`.
pub fn t_mcx(n: u64) -> u64 {
    4 * n.saturating_sub(1)
}

/// Ancillas for an `N`-controlled Toffoli, `N − 1`.
pub fn mcx_ancillas(n: u64) -> u64 {
    n.saturating_sub(1)
}

/// T gates for an `N`-controlled Z rotation, `8(N − 1) + 2·T_ROT(ε/2)`.
pub fn t_mcrz(eps: f64, n: u64) -> Result<f64> {
    Ok(8.0 * n.saturating_sub(1) as f64 + 2.0 * t_rot(eps / 2.0)?)
}

/// Which constant multiplies `b·min(...)` in the diagonal-unitary cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum KickbackConstant {
    /// `8b·min(⌈(2m−1)/2⌉, w_H)`, as stated for the kinetic exponential.
    #[default]
    #[serde(rename = "8b")]
    Eight,
    /// `4b·min(⌈(b_λ+1)/2⌉, w_H)`, as derived for the general construction.
    #[serde(rename = "4b")]
    Four,
}

impl KickbackConstant {
    /// The multiplier, 8 or 4.
    pub fn factor(self) -> u64 {
        match self {
            KickbackConstant::Eight => 8,
            KickbackConstant::Four => 4,
        }
    }

    /// Name used in configuration and reports.
    pub fn as_str(self) -> &'static str {
        match self {
            KickbackConstant::Eight => "8b",
            KickbackConstant::Four => "4b",
        }
    }
}

impl std::str::FromStr for KickbackConstant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "8b" => Ok(Self::Eight),
            "4b" => Ok(Self::Four),
            other => Err(format!(
                "unknown kickback constant `{other}` (expected 8b or 4b)"
            )),
        }
    }
}

/// Register sizes and cost of a phase-kickback diagonal unitary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KickbackSizing {
    /// Phase-register qubits.
    pub b: u64,
    /// Eigenvalue-register qubits.
    pub b_lambda: u64,
    /// Hamming weight of `γ = tΛ/2π` truncated to `b_lambda` leading bits.
    pub w_h: u64,
    /// `4b·min(⌈(b_λ+1)/2⌉, w_H)`.
    pub t_diag: f64,
    /// `γ = tΛ/2π`.
    pub gamma: f64,
    /// True when the size formula produced fewer qubits than the minimum
    /// and `b` was raised.
    pub clamped: bool,
}

impl KickbackSizing {
    /// `⌈(b_λ+1)/2⌉`, the cap on the number of additions.
    pub fn addition_cap(&self) -> u64 {
        (self.b_lambda + 1).div_ceil(2)
    }

    /// Number of shifted additions actually performed, `min(cap, w_H)`.
    pub fn additions(&self) -> u64 {
        self.addition_cap().min(self.w_h)
    }

    /// Diagonal cost under the chosen constant.
    pub fn t_diag_with(&self, constant: KickbackConstant) -> u64 {
        constant.factor() * self.b * self.additions()
    }
}

/// Hamming weight of the leading `bits` binary digits of a positive `x`.
///
/// The expansion is anchored at the most significant set bit, so an exact
/// power of two has weight one. Trailing zeros do not add weight.
pub fn leading_hamming_weight(x: f64, bits: u64) -> u64 {
    if !(x > 0.0) || !x.is_finite() || bits == 0 {
        return 0;
    }
    // Normalize the mantissa to a 53-bit integer with its top bit set.
    let raw = x.to_bits();
    let exp_bits = (raw >> 52) & 0x7ff;
    let frac = raw & ((1u64 << 52) - 1);
    let mantissa = if exp_bits == 0 {
        frac << (frac.leading_zeros() - 11)
    } else {
        frac | (1u64 << 52)
    };
    let keep = bits.min(53) as u32;
    (mantissa >> (53 - keep)).count_ones() as u64
}

/// Register sizes for applying `e^{−itH}` with `‖H‖ ≤ Λ` by phase kickback.
///
/// In the approximate case `b_λ = ⌈log₂(3tΛ/ε)⌉` and
/// `b = ⌈log₂((3tΛ/ε)·log₂(3tΛ/ε))⌉`. When the eigenvalues are exactly
/// representable the phase register shrinks to
/// `b = ⌈log₂((2tΛ/ε)·log₂(2tΛ/ε))⌉` and `b_λ` is supplied by the caller.
/// Both sizes are raised to at least one qubit, and `b` to at least `b_λ`;
/// `clamped` records when that happened.
pub fn kickback_sizing(
    t: f64,
    lambda: f64,
    eps: f64,
    exact_eigenvalues: bool,
    b_lambda_override: Option<u64>,
) -> Result<KickbackSizing> {
    let t_lambda = t * lambda;
    if !(t_lambda > 0.0) || !t_lambda.is_finite() {
        return Err(EstimateError::InvalidArgument {
            name: "t*Lambda",
            value: t_lambda,
            requirement: "must be finite and strictly positive",
        });
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(EstimateError::InvalidArgument {
            name: "kickback eps",
            value: eps,
            requirement: "must lie in (0, 1)",
        });
    }
    let x_approx = 3.0 * t_lambda / eps;
    let x = if exact_eigenvalues {
        2.0 * t_lambda / eps
    } else {
        x_approx
    };
    let b_lambda_raw = match (exact_eigenvalues, b_lambda_override) {
        (_, Some(v)) => v as i64,
        _ => ceil_log2(x_approx),
    };
    let b_lambda = b_lambda_raw.max(1) as u64;
    let b_raw = if x > 1.0 {
        let y = x * x.log2();
        if y > 0.0 {
            ceil_log2(y)
        } else {
            i64::MIN
        }
    } else {
        i64::MIN
    };
    let b_floor = b_lambda.max(1) as i64;
    let clamped = b_raw < b_floor || b_lambda_raw < 1;
    let b = b_raw.max(b_floor) as u64;
    let gamma = t_lambda / (2.0 * PI);
    let w_h = leading_hamming_weight(gamma, b_lambda);
    let mut sizing = KickbackSizing {
        b,
        b_lambda,
        w_h,
        t_diag: 0.0,
        gamma,
        clamped,
    };
    sizing.t_diag = sizing.t_diag_with(KickbackConstant::Four) as f64;
    Ok(sizing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn squaring() {
        assert_eq!(t_squ(1).unwrap().t_count, 0);
        assert_eq!(t_squ(2).unwrap().t_count, 8);
        let s3 = t_squ(3).unwrap();
        assert_eq!((s3.t_count, s3.ancillas), (24, 6));
        assert!(t_squ(0).is_err());
    }

    #[test]
    fn qft_values() {
        for eps in [0.7, 0.1, 1e-9] {
            assert_eq!(t_qft(3, eps).unwrap().t_count, 10);
        }
        assert_eq!(t_qft(1, 0.1).unwrap().t_count, 0);
        assert_eq!(t_qft(2, 0.1).unwrap().t_count, 3);
        // ⌈log₂ 6000⌉ = 13, so the min picks n for n = 3, 4, 5.
        assert_eq!(
            t_qft(6, 1e-3).unwrap().t_count,
            31 + (24 - 15) + (32 - 15) + (40 - 15)
        );
        assert_eq!(t_qft(6, 1e-3).unwrap().t_count, 82);
        let q = t_qft(3, 0.1 / (3.0 * 3.0 * 16.0)).unwrap();
        assert_eq!((q.b_qft, q.ancillas), (3, 8));
        assert!(t_qft(3, 0.0).is_err());
    }

    #[test]
    fn qft_saturates_for_tiny_eps() {
        let n = 7;
        let floor = 2f64.powi(1 - n as i32);
        let a = t_qft(n, floor / 2.0).unwrap().t_count;
        let b = t_qft(n, floor / 1e6).unwrap().t_count;
        assert_eq!(a, b);
    }

    #[test]
    fn rotation_values() {
        assert_eq!(t_rot(1.0).unwrap(), 8.83);
        assert_eq!(t_rot(5.0).unwrap(), 8.83);
        assert_relative_eq!(t_rot(2f64.powi(-10)).unwrap(), 14.53, max_relative = 1e-12);
        assert_relative_eq!(
            t_rot(1e-6).unwrap(),
            20.190_994_084_514_777,
            max_relative = 1e-12
        );
        assert!(t_rot(0.0).is_err());
        assert!(t_rot(-1.0).is_err());
    }

    #[test]
    fn toffoli_and_controlled_rotation() {
        assert_eq!(t_mcx(1), 0);
        assert_eq!(t_mcx(2), 4);
        assert_eq!(t_mcx(9), 32);
        assert_relative_eq!(t_mcrz(2.0, 1).unwrap(), 17.66, max_relative = 1e-12);
        assert_relative_eq!(t_mcrz(1e-3, 9).unwrap(), 64.0 + 2.0 * t_rot(5e-4).unwrap());
        assert_relative_eq!(t_mcrz(1e-6, 2).unwrap(), 8.0 + 2.0 * t_rot(5e-7).unwrap());
    }

    #[test]
    fn hamming_weight_of_leading_bits() {
        assert_eq!(leading_hamming_weight(4.0, 5), 1);
        assert_eq!(leading_hamming_weight(0.25, 5), 1);
        assert_eq!(leading_hamming_weight(7.0, 2), 2);
        assert_eq!(leading_hamming_weight(7.0, 8), 3);
        assert_eq!(leading_hamming_weight(0.75, 8), 2);
        assert_eq!(leading_hamming_weight(5.0, 2), 1);
    }

    #[test]
    fn kickback_reference_case() {
        let k = kickback_sizing(1.0, 1.0, 0.1, false, None).unwrap();
        assert_eq!((k.b_lambda, k.b), (5, 8));
        assert!(k.t_diag <= 4.0 * k.b as f64 * ((k.b_lambda + 1) as f64 / 2.0).ceil());
        assert!(!k.clamped);
    }

    #[test]
    fn kickback_power_of_two_gamma() {
        let t = 4.0 * 2.0 * PI;
        let k = kickback_sizing(t, 1.0, 0.1, true, Some(4)).unwrap();
        assert_eq!(k.w_h, 1);
        assert_eq!(k.t_diag, 4.0 * k.b as f64);
    }

    #[test]
    fn kickback_clamps_tiny_arguments() {
        let k = kickback_sizing(1e-9, 1.0, 0.5, true, Some(4)).unwrap();
        assert!(k.clamped);
        assert_eq!(k.b, 4);
        assert!(kickback_sizing(0.0, 1.0, 0.1, false, None).is_err());
        assert!(kickback_sizing(1.0, 1.0, 1.0, false, None).is_err());
    }
}
