//! Ideal-gate circuits and two simulators for them.
//!
//! [`StateVector`] stores the non-zero amplitudes of a state over up to 64
//! qubits in a sparse map, so circuits that are mostly classical stay
//! cheap. [`simulate_basis`] follows a single basis state through circuits
//! built from permutations and diagonal phases only.
//!
//! Qubit `k` is bit `k` of the basis index. A register listed as
//! `[q0, q1, …]` holds the integer `Σ_j bit(q_j)·2^j`.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::hash::{BuildHasherDefault, DefaultHasher};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::operator::{C64, ZERO};

/// Amplitudes below this squared magnitude are dropped after a QFT.
const PRUNE: f64 = 1e-30;
/// Largest ancilla weight accepted at release.
pub const RELEASE_TOLERANCE: f64 = 1e-10;

/// A control wire with the value that activates it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Control {
    pub qubit: usize,
    /// `true` for a filled dot, `false` for an open (zero-controlled) dot.
    pub on: bool,
}

impl Control {
    pub fn one(qubit: usize) -> Self {
        Self { qubit, on: true }
    }

    pub fn zero(qubit: usize) -> Self {
        Self { qubit, on: false }
    }
}

/// Ideal gates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    X(usize),
    Cnot {
        control: usize,
        target: usize,
    },
    Toffoli {
        c0: usize,
        c1: usize,
        target: usize,
    },
    /// Multi-controlled NOT with a polarity per control.
    Mcx {
        controls: Vec<Control>,
        target: usize,
    },
    Swap(usize, usize),
    Cswap {
        control: usize,
        a: usize,
        b: usize,
    },
    /// Phase `e^{−iθ/2}` on `|1⟩` of the target when all controls are
    /// active, so that `Rz(2π)` is `Z`.
    Rz {
        target: usize,
        theta: f64,
        controls: Vec<Control>,
    },
    /// Exact Fourier transform `|x⟩ → Σ_y e^{±2πixy/M}|y⟩/√M`; the inverse
    /// uses the minus sign.
    Qft {
        register: Vec<usize>,
        inverse: bool,
    },
    /// Classical table: XORs `table[input]` into `output` when all controls
    /// are active.
    Lookup {
        controls: Vec<Control>,
        input: Vec<usize>,
        output: Vec<usize>,
        table: Vec<u64>,
    },
    /// `dst ← dst ± ⌊src·2^shift⌋ mod 2^{|dst|}` with `src` read as an
    /// unsigned integer.
    AddShifted {
        src: Vec<usize>,
        dst: Vec<usize>,
        shift: i32,
        subtract: bool,
    },
    /// Marks qubits that start in `|0⟩`.
    Alloc(Vec<usize>),
    /// Asserts that qubits are back in `|0⟩`.
    Release(Vec<usize>),
}

impl Gate {
    /// Short name for diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Gate::X(_) => "X",
            Gate::Cnot { .. } => "CNOT",
            Gate::Toffoli { .. } => "Toffoli",
            Gate::Mcx { .. } => "MCX",
            Gate::Swap(..) => "SWAP",
            Gate::Cswap { .. } => "CSWAP",
            Gate::Rz { .. } => "Rz",
            Gate::Qft { .. } => "QFT",
            Gate::Lookup { .. } => "Lookup",
            Gate::AddShifted { .. } => "AddShifted",
            Gate::Alloc(_) => "Alloc",
            Gate::Release(_) => "Release",
        }
    }

    /// The inverse gate.
    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Rz {
                target,
                theta,
                controls,
            } => Gate::Rz {
                target: *target,
                theta: -theta,
                controls: controls.clone(),
            },
            Gate::Qft { register, inverse } => Gate::Qft {
                register: register.clone(),
                inverse: !inverse,
            },
            Gate::AddShifted {
                src,
                dst,
                shift,
                subtract,
            } => Gate::AddShifted {
                src: src.clone(),
                dst: dst.clone(),
                shift: *shift,
                subtract: !subtract,
            },
            Gate::Alloc(q) => Gate::Release(q.clone()),
            Gate::Release(q) => Gate::Alloc(q.clone()),
            other => other.clone(),
        }
    }

    fn qubits(&self) -> Vec<usize> {
        let ctrl = |c: &[Control]| c.iter().map(|c| c.qubit).collect::<Vec<_>>();
        match self {
            Gate::X(q) => vec![*q],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Toffoli { c0, c1, target } => vec![*c0, *c1, *target],
            Gate::Mcx { controls, target } => [ctrl(controls), vec![*target]].concat(),
            Gate::Swap(a, b) => vec![*a, *b],
            Gate::Cswap { control, a, b } => vec![*control, *a, *b],
            Gate::Rz {
                target, controls, ..
            } => [ctrl(controls), vec![*target]].concat(),
            Gate::Qft { register, .. } => register.clone(),
            Gate::Lookup {
                controls,
                input,
                output,
                ..
            } => [ctrl(controls), input.clone(), output.clone()].concat(),
            Gate::AddShifted { src, dst, .. } => [src.clone(), dst.clone()].concat(),
            Gate::Alloc(q) | Gate::Release(q) => q.clone(),
        }
    }
}

/// Ordered gate list with named registers.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GateSequence {
    qubits: usize,
    registers: BTreeMap<String, Vec<usize>>,
    gates: Vec<Gate>,
}

impl GateSequence {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a fresh register of `width` qubits and returns its wires.
    pub fn register(&mut self, name: &str, width: usize) -> Vec<usize> {
        let wires: Vec<usize> = (self.qubits..self.qubits + width).collect();
        self.qubits += width;
        self.registers.insert(name.to_string(), wires.clone());
        wires
    }

    /// Wires of a named register.
    pub fn wires(&self, name: &str) -> &[usize] {
        &self.registers[name]
    }

    pub fn registers(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.registers
    }

    pub fn num_qubits(&self) -> usize {
        self.qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    /// Appends every gate of `other`, which must use the same wires.
    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> &mut Self {
        self.gates.extend(gates);
        self
    }

    /// The mirror image: inverse gates in reverse order.
    pub fn inverse_gates(gates: &[Gate]) -> Vec<Gate> {
        gates.iter().rev().map(Gate::inverse).collect()
    }

    /// Checks that every gate addresses existing qubits and that gates do
    /// not reuse a wire within themselves.
    pub fn validate(&self) -> Result<()> {
        for g in &self.gates {
            let qs = g.qubits();
            for (k, q) in qs.iter().enumerate() {
                if *q >= self.qubits || *q >= 64 {
                    return Err(SimError::QubitOutOfRange {
                        qubit: *q,
                        qubits: self.qubits,
                    });
                }
                if !matches!(g, Gate::Alloc(_) | Gate::Release(_)) && qs[..k].contains(q) {
                    return Err(SimError::Unsupported(format!(
                        "{} uses qubit {q} twice",
                        g.name()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Gate counts by name.
    pub fn census(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for g in &self.gates {
            *out.entry(g.name()).or_insert(0) += 1;
        }
        out
    }
}

fn bit(x: u64, q: usize) -> bool {
    (x >> q) & 1 == 1
}

fn active(x: u64, controls: &[Control]) -> bool {
    controls.iter().all(|c| bit(x, c.qubit) == c.on)
}

fn read(x: u64, reg: &[usize]) -> u64 {
    reg.iter()
        .enumerate()
        .fold(0, |acc, (j, q)| acc | (((x >> q) & 1) << j))
}

fn write(x: u64, reg: &[usize], value: u64) -> u64 {
    reg.iter().enumerate().fold(x, |acc, (j, q)| {
        (acc & !(1 << q)) | (((value >> j) & 1) << q)
    })
}

fn mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Image of a basis state under a permutation gate, with the phase picked
/// up; `None` for gates that create superpositions.
fn classical_step(g: &Gate, x: u64) -> Option<(u64, C64)> {
    let one = C64::new(1.0, 0.0);
    let flip = |x: u64, q: usize| x ^ (1 << q);
    Some(match g {
        Gate::X(q) => (flip(x, *q), one),
        Gate::Cnot { control, target } => (
            if bit(x, *control) {
                flip(x, *target)
            } else {
                x
            },
            one,
        ),
        Gate::Toffoli { c0, c1, target } => (
            if bit(x, *c0) && bit(x, *c1) {
                flip(x, *target)
            } else {
                x
            },
            one,
        ),
        Gate::Mcx { controls, target } => (
            if active(x, controls) {
                flip(x, *target)
            } else {
                x
            },
            one,
        ),
        Gate::Swap(a, b) => (swap_bits(x, *a, *b), one),
        Gate::Cswap { control, a, b } => (
            if bit(x, *control) {
                swap_bits(x, *a, *b)
            } else {
                x
            },
            one,
        ),
        Gate::Rz {
            target,
            theta,
            controls,
        } => (
            x,
            if bit(x, *target) && active(x, controls) {
                C64::from_polar(1.0, -theta / 2.0)
            } else {
                one
            },
        ),
        Gate::Lookup {
            controls,
            input,
            output,
            table,
        } => {
            if active(x, controls) {
                let v = table[read(x, input) as usize] & mask(output.len());
                (write(x, output, read(x, output) ^ v), one)
            } else {
                (x, one)
            }
        }
        Gate::AddShifted {
            src,
            dst,
            shift,
            subtract,
        } => {
            let s = read(x, src);
            let term = if *shift >= 0 {
                s.wrapping_shl(*shift as u32)
            } else {
                s >> (-*shift as u32).min(63)
            };
            let d = read(x, dst);
            let nd = if *subtract {
                d.wrapping_sub(term)
            } else {
                d.wrapping_add(term)
            } & mask(dst.len());
            (write(x, dst, nd), one)
        }
        Gate::Alloc(_) | Gate::Release(_) => (x, one),
        Gate::Qft { .. } => return None,
    })
}

fn swap_bits(x: u64, a: usize, b: usize) -> u64 {
    if bit(x, a) == bit(x, b) {
        x
    } else {
        x ^ (1 << a) ^ (1 << b)
    }
}

/// Follows one basis state through a circuit of permutation and diagonal
/// gates, returning the output basis state and the accumulated phase.
///
/// Released qubits must be zero.
pub fn simulate_basis(seq: &GateSequence, input: u64) -> Result<(u64, C64)> {
    let mut x = input;
    let mut amp = C64::new(1.0, 0.0);
    for g in &seq.gates {
        if let Gate::Release(qs) = g {
            if let Some(q) = qs.iter().find(|q| bit(x, **q)) {
                return Err(SimError::DirtyAncilla {
                    qubit: *q,
                    weight: 1.0,
                });
            }
        }
        let (nx, ph) = classical_step(g, x).ok_or(SimError::NotClassical(g.name()))?;
        x = nx;
        amp *= ph;
    }
    Ok((x, amp))
}

/// Amplitude map with a fixed hasher, so that iteration order and hence
/// floating-point summation order repeat from run to run.
type Amplitudes = HashMap<u64, C64, BuildHasherDefault<DefaultHasher>>;

/// Sparse state over up to 64 qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Amplitudes,
}

impl StateVector {
    /// `|x⟩` on `qubits` qubits.
    pub fn basis(qubits: usize, x: u64) -> Self {
        Self {
            qubits,
            amps: Amplitudes::from_iter([(x, C64::new(1.0, 0.0))]),
        }
    }

    /// State with the given amplitudes; zero entries are skipped.
    pub fn from_amplitudes(qubits: usize, entries: impl IntoIterator<Item = (u64, C64)>) -> Self {
        let mut amps = Amplitudes::default();
        for (x, z) in entries {
            if z != ZERO {
                *amps.entry(x).or_insert(ZERO) += z;
            }
        }
        Self { qubits, amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitude(&self, x: u64) -> C64 {
        self.amps.get(&x).copied().unwrap_or(ZERO)
    }

    /// Non-zero amplitudes, sorted by basis index.
    pub fn entries(&self) -> Vec<(u64, C64)> {
        let mut v: Vec<(u64, C64)> = self.amps.iter().map(|(k, z)| (*k, *z)).collect();
        v.sort_unstable_by_key(|(k, _)| *k);
        v
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|z| z.norm_sqr()).sum()
    }

    /// Total weight on basis states where qubit `q` is one.
    pub fn weight_on(&self, q: usize) -> f64 {
        self.amps
            .iter()
            .filter(|(k, _)| bit(**k, q))
            .map(|(_, z)| z.norm_sqr())
            .sum()
    }

    /// Applies one gate.
    pub fn apply(&mut self, g: &Gate) -> Result<()> {
        match g {
            Gate::Qft { register, inverse } => self.apply_qft(register, *inverse),
            Gate::Release(qs) => {
                for q in qs {
                    let w = self.weight_on(*q);
                    if w > RELEASE_TOLERANCE {
                        return Err(SimError::DirtyAncilla {
                            qubit: *q,
                            weight: w,
                        });
                    }
                }
                // Drop the numerically negligible remainder on released wires.
                self.amps.retain(|k, _| qs.iter().all(|q| !bit(*k, *q)));
                Ok(())
            }
            _ => {
                let mut next =
                    Amplitudes::with_capacity_and_hasher(self.amps.len(), Default::default());
                for (x, z) in self.amps.drain() {
                    let (nx, ph) = classical_step(g, x).expect("non-QFT gates are classical");
                    next.insert(nx, z * ph);
                }
                self.amps = next;
                Ok(())
            }
        }
    }

    fn apply_qft(&mut self, register: &[usize], inverse: bool) -> Result<()> {
        let width = register.len();
        let n = 1u64 << width;
        let sign = if inverse { -1.0 } else { 1.0 };
        let norm = 1.0 / (n as f64).sqrt();
        let phases: Vec<C64> = (0..n)
            .map(|k| C64::from_polar(norm, sign * 2.0 * PI * k as f64 / n as f64))
            .collect();
        let mut next =
            Amplitudes::with_capacity_and_hasher(self.amps.len() * n as usize, Default::default());
        for (x, z) in self.amps.drain() {
            let xv = read(x, register);
            for y in 0..n {
                let ph = phases[((xv * y) % n) as usize];
                *next.entry(write(x, register, y)).or_insert(ZERO) += z * ph;
            }
        }
        next.retain(|_, z| z.norm_sqr() > PRUNE);
        self.amps = next;
        Ok(())
    }

    /// Applies every gate of a sequence.
    pub fn run(&mut self, seq: &GateSequence) -> Result<()> {
        self.run_gates(seq.gates())
    }

    pub fn run_gates(&mut self, gates: &[Gate]) -> Result<()> {
        for g in gates {
            self.apply(g)?;
        }
        Ok(())
    }
}
