//! Gate-level constructions of the evolution and oracle circuits.
//!
//! Every builder starts from [`system_sequence`], which lays out particle
//! `i` on wires `i·d·m .. (i+1)·d·m` with axis `w` occupying the `m` wires
//! starting at `i·d·m + w·m`. Ancillas are added after the system wires.

use pionless_core::gates::KickbackSizing;

use crate::basis::Shape;
use crate::circuit::{Control, Gate, GateSequence};

/// Sequence holding only the system registers `r0, r1, …`.
pub fn system_sequence(shape: &Shape) -> (GateSequence, Vec<Vec<usize>>) {
    let mut seq = GateSequence::new();
    let regs = (0..shape.eta)
        .map(|i| seq.register(&format!("r{i}"), shape.dm() as usize))
        .collect();
    (seq, regs)
}

/// Wires of axis `w` within a particle register.
pub fn axis(reg: &[usize], m: u32, w: u32) -> Vec<usize> {
    reg[(w * m) as usize..((w + 1) * m) as usize].to_vec()
}

/// Weight of momentum bit `r` in the folded momentum: `2^r` for the low
/// bits and `−2^{m−1}` for the top bit, so `q = Σ_r w_r·p_r`.
pub fn momentum_bit_weight(r: u32, m: u32) -> f64 {
    if r + 1 == m {
        -f64::powi(2.0, r as i32)
    } else {
        f64::powi(2.0, r as i32)
    }
}

/// Gates for `e^{−iτK q²}` on one `m`-qubit momentum register.
///
/// `q² = Σ_r w_r²·p_r + 2·Σ_{r<s} w_r·w_s·p_r·p_s` for bits `p_r`, so each
/// monomial becomes an `Rz` or a singly controlled `Rz`.
pub fn momentum_phase_gates(reg: &[usize], k_coef: f64, tau: f64) -> Vec<Gate> {
    let m = reg.len() as u32;
    let mut gates = Vec::new();
    for r in 0..m {
        let wr = momentum_bit_weight(r, m);
        gates.push(Gate::Rz {
            target: reg[r as usize],
            theta: 2.0 * tau * k_coef * wr * wr,
            controls: vec![],
        });
        for s in r + 1..m {
            let ws = momentum_bit_weight(s, m);
            gates.push(Gate::Rz {
                target: reg[s as usize],
                theta: 2.0 * tau * k_coef * 2.0 * wr * ws,
                controls: vec![Control::one(reg[r as usize])],
            });
        }
    }
    gates
}

/// `e^{−iτT}` on the spatial registers: per particle and axis a QFT, the
/// momentum phases, and the inverse QFT.
pub fn kinetic_evolution_circuit(shape: &Shape, k_coef: f64, tau: f64) -> GateSequence {
    let (mut seq, regs) = system_sequence(shape);
    for reg in &regs {
        for w in 0..shape.d {
            let a = axis(reg, shape.m, w);
            seq.push(Gate::Qft {
                register: a.clone(),
                inverse: false,
            });
            seq.extend(momentum_phase_gates(&a, k_coef, tau));
            seq.push(Gate::Qft {
                register: a,
                inverse: true,
            });
        }
    }
    seq
}

fn xor_into(src: &[usize], dst: &[usize]) -> Vec<Gate> {
    src.iter()
        .zip(dst)
        .map(|(c, t)| Gate::Cnot {
            control: *c,
            target: *t,
        })
        .collect()
}

fn all_zero(reg: &[usize], target: usize) -> Gate {
    Gate::Mcx {
        controls: reg.iter().map(|q| Control::zero(*q)).collect(),
        target,
    }
}

/// `e^{−itV}` for the contact potential.
///
/// For each pair `i < j` the coordinates of `i` are XORed into `j`, an
/// all-zero test sets ancilla `a1`, and `Rz(2Ct)` on `a1` applies
/// `e^{−iCt}` when the two nucleons share a site. Inside that block every
/// `k > j` is tested the same way into `a2`, a Toffoli sets `a3` when all
/// three coincide and `Rz(2Gt)` on `a3` applies `e^{−iGt}`. All ancillas
/// are uncomputed.
pub fn potential_phase_circuit(shape: &Shape, c: f64, g: f64, t: f64) -> GateSequence {
    let (mut seq, regs) = system_sequence(shape);
    let a = seq.register("a", 3);
    seq.push(Gate::Alloc(a.clone()));
    let n = regs.len();
    for i in 0..n {
        for j in i + 1..n {
            let pair = [xor_into(&regs[i], &regs[j]), vec![all_zero(&regs[j], a[0])]].concat();
            seq.extend(pair.clone());
            seq.push(Gate::Rz {
                target: a[0],
                theta: 2.0 * c * t,
                controls: vec![],
            });
            for k in j + 1..n {
                let second =
                    [xor_into(&regs[i], &regs[k]), vec![all_zero(&regs[k], a[1])]].concat();
                let and = Gate::Toffoli {
                    c0: a[0],
                    c1: a[1],
                    target: a[2],
                };
                seq.extend(second.clone()).push(and.clone());
                seq.push(Gate::Rz {
                    target: a[2],
                    theta: 2.0 * g * t,
                    controls: vec![],
                });
                seq.push(and);
                seq.extend(GateSequence::inverse_gates(&second));
            }
            seq.extend(GateSequence::inverse_gates(&pair));
        }
    }
    seq.push(Gate::Release(a));
    seq
}

/// Gates of `U_match` on existing wires.
///
/// For each `j ≥ 1` the coordinates of particle 0 are XORed into particle
/// `j`, a zero-controlled `C^{dm}X` sets `flag` on a match, and the flag is
/// added into the two-bit counter `s`. The first addition starts from zero
/// and is a single CNOT; later ones are a Toffoli into the high bit
/// followed by a CNOT into the low bit. The flag and the XORs are undone.
pub fn umatch_gates(regs: &[Vec<usize>], s: &[usize], flag: usize) -> Vec<Gate> {
    let mut gates = Vec::new();
    for (j, reg) in regs.iter().enumerate().skip(1) {
        let test = [xor_into(&regs[0], reg), vec![all_zero(reg, flag)]].concat();
        gates.extend(test.clone());
        if j > 1 {
            gates.push(Gate::Toffoli {
                c0: flag,
                c1: s[0],
                target: s[1],
            });
        }
        gates.push(Gate::Cnot {
            control: flag,
            target: s[0],
        });
        gates.extend(GateSequence::inverse_gates(&test));
    }
    gates
}

/// Standalone `U_match`: system registers, counter `S` and one flag.
pub fn umatch_circuit(shape: &Shape) -> GateSequence {
    let (mut seq, regs) = system_sequence(shape);
    let s = seq.register("S", 2);
    let flag = seq.register("flag", 1);
    seq.push(Gate::Alloc(flag.clone()));
    seq.extend(umatch_gates(&regs, &s, flag[0]));
    seq.push(Gate::Release(flag));
    seq
}

/// Binary digits of `γ` anchored at its most significant set bit.
///
/// Returns `(d_γ, bits)` with `γ ≈ Σ_{k=1}^{n} bits[k−1]·2^{d_γ−k}` and
/// `d_γ = ⌊log₂ γ⌋ + 1`.
pub fn gamma_digits(gamma: f64, n: u64) -> (i32, Vec<bool>) {
    let d = gamma.log2().floor() as i32 + 1;
    let mut rest = gamma;
    let bits = (1..=n as i32)
        .map(|k| {
            let w = f64::powi(2.0, d - k);
            if rest >= w {
                rest -= w;
                true
            } else {
                false
            }
        })
        .collect();
    (d, bits)
}

/// Phase-kickback oracle `Q_H` for a diagonal Hamiltonian.
///
/// Registers: `sys` (`n` qubits), `l` (`b_λ + 1` qubits) and the phase
/// register `z` (`b` qubits). A lookup writes `l_m`; for each set digit
/// `γ_k` the register `z` is decreased by `⌊l_m·2^{d_γ+b−b_λ−k}⌋`; the lookup
/// is repeated to clear `l`. With `z` in `|1̄⟩` each subtraction of `K`
/// multiplies the state by `e^{−2πiK/2^b}`.
pub fn kickback_circuit(n: usize, levels: &[u64], sizing: &KickbackSizing) -> GateSequence {
    let mut seq = GateSequence::new();
    let sys = seq.register("sys", n);
    let l = seq.register("l", sizing.b_lambda as usize + 1);
    let z = seq.register("z", sizing.b as usize);
    let lookup = Gate::Lookup {
        controls: vec![],
        input: sys,
        output: l.clone(),
        table: levels.to_vec(),
    };
    seq.push(Gate::Alloc(l.clone())).push(lookup.clone());
    let (d, bits) = gamma_digits(sizing.gamma, sizing.b_lambda);
    for (k, set) in bits.iter().enumerate() {
        if *set {
            seq.push(Gate::AddShifted {
                src: l.clone(),
                dst: z.clone(),
                shift: d + sizing.b as i32 - sizing.b_lambda as i32 - (k as i32 + 1),
                subtract: true,
            });
        }
    }
    seq.push(lookup).push(Gate::Release(l));
    seq
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::simulate_basis;
    use pionless_core::LatticeConfig;

    fn shape(d: u32, m: u32, eta: u32) -> Shape {
        Shape::new(&LatticeConfig::new(d, m).unwrap(), u64::from(eta)).unwrap()
    }

    #[test]
    fn folded_weights_reproduce_momentum() {
        for m in 1..=5 {
            for p in 0..(1u64 << m) {
                let q: f64 = (0..m)
                    .filter(|r| (p >> r) & 1 == 1)
                    .map(|r| momentum_bit_weight(r, m))
                    .sum();
                assert_eq!(q as i64, crate::operator::fold_momentum(p, m));
            }
        }
    }

    #[test]
    fn gamma_digits_anchor() {
        assert_eq!(gamma_digits(4.0, 3), (3, vec![true, false, false]));
        assert_eq!(gamma_digits(5.0, 3), (3, vec![true, false, true]));
        let (d, bits) = gamma_digits(0.375, 3);
        assert_eq!((d, bits), (-1, vec![true, true, false]));
    }

    #[test]
    fn circuits_validate() {
        let s = shape(2, 2, 3);
        kinetic_evolution_circuit(&s, 1.0, 0.1).validate().unwrap();
        potential_phase_circuit(&s, 1.0, 1.0, 0.1)
            .validate()
            .unwrap();
        umatch_circuit(&s).validate().unwrap();
    }

    #[test]
    fn umatch_counts_three_coincident() {
        let s = shape(1, 2, 3);
        let seq = umatch_circuit(&s);
        // r0 = r1 = r2 = 2.
        let x = 2 | (2 << 2) | (2 << 4);
        let (y, ph) = simulate_basis(&seq, x).unwrap();
        assert_eq!(ph, crate::operator::C64::new(1.0, 0.0));
        assert_eq!(y, x | (2 << 6));
    }
}
