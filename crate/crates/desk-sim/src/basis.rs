//! Packing of many-nucleon basis states into integer indices.
//!
//! A single-particle state is a lattice site together with a spin and an
//! isospin bit. Its index is `s = site + M^d·(spin + 2·isospin)` with
//! `site = Σ_w x_w·M^w` and `M = 2^m`. An `η`-particle state has index
//! `Σ_i s_i·Ω^i` with `Ω = 4·M^d`, so particle 0 is least significant.
//!
//! Circuits act on the spatial part only. There the index is
//! `Σ_i site_i·(M^d)^i`, which places bit `b` of coordinate `w` of particle
//! `i` on qubit `i·d·m + w·m + b`.

use serde::{Deserialize, Serialize};

use crate::error::{check_limit, Result, SimError};
use pionless_core::LatticeConfig;

/// Largest full Hilbert-space dimension handled by dense routines.
pub const DENSE_LIMIT: u64 = 4096;

/// Shape of a desk-scale many-particle space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    pub d: u32,
    pub m: u32,
    pub eta: u32,
}

impl Shape {
    pub fn new(lattice: &LatticeConfig, eta: u64) -> Result<Self> {
        let eta = u32::try_from(eta).map_err(|_| SimError::Unsupported("eta too large".into()))?;
        let s = Self {
            d: lattice.d,
            m: lattice.m,
            eta,
        };
        // Spatial qubits must fit a 64-bit index with room for ancillas.
        check_limit("spatial qubit count", u64::from(s.spatial_qubits()), 40)?;
        Ok(s)
    }

    /// Sites per axis, `M = 2^m`.
    pub fn side(&self) -> u64 {
        1 << self.m
    }

    /// Lattice sites, `M^d`.
    pub fn sites(&self) -> u64 {
        1 << (self.d * self.m)
    }

    /// Single-particle states, `Ω = 4·M^d`.
    pub fn omega(&self) -> u64 {
        4 * self.sites()
    }

    /// Qubits per particle coordinate block, `d·m`.
    pub fn dm(&self) -> u32 {
        self.d * self.m
    }

    /// Spatial qubits of the whole system, `η·d·m`.
    pub fn spatial_qubits(&self) -> u32 {
        self.eta * self.dm()
    }

    /// Full dimension `Ω^η`, saturating.
    pub fn full_dim(&self) -> u64 {
        self.omega().saturating_pow(self.eta)
    }

    /// Spatial dimension `M^{dη}`.
    pub fn spatial_dim(&self) -> u64 {
        1u64 << self.spatial_qubits()
    }

    /// Lattice site of each particle for a spatial index.
    pub fn spatial_sites(&self, index: u64) -> Vec<u64> {
        let mask = self.sites() - 1;
        (0..self.eta)
            .map(|i| (index >> (i * self.dm())) & mask)
            .collect()
    }

    /// Lattice site of each particle for a full index.
    pub fn full_sites(&self, index: u64) -> Vec<u64> {
        let mut rest = index;
        (0..self.eta)
            .map(|_| {
                let s = rest % self.omega();
                rest /= self.omega();
                s % self.sites()
            })
            .collect()
    }

    /// Single-particle states of a full index, particle 0 first.
    pub fn single_states(&self, index: u64) -> Vec<u64> {
        let mut rest = index;
        (0..self.eta)
            .map(|_| {
                let s = rest % self.omega();
                rest /= self.omega();
                s
            })
            .collect()
    }

    /// Inverse of [`Shape::single_states`].
    pub fn pack_states(&self, states: &[u64]) -> u64 {
        states.iter().rev().fold(0, |acc, s| acc * self.omega() + s)
    }

    /// Refuses spaces above [`DENSE_LIMIT`].
    pub fn require_dense(&self) -> Result<u64> {
        let dim = self.full_dim();
        check_limit("full Hilbert space", dim, DENSE_LIMIT)?;
        Ok(dim)
    }
}

/// Quantum numbers of one basis state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisIndex {
    /// `coords[i][w]` is coordinate `w` of particle `i`, in `[0, 2^m)`.
    pub coords: Vec<Vec<u64>>,
    pub spin: Vec<u8>,
    pub isospin: Vec<u8>,
}

impl BasisIndex {
    /// Packs into the full index described in the module documentation.
    pub fn pack(&self, shape: &Shape) -> u64 {
        let states: Vec<u64> = (0..shape.eta as usize)
            .map(|i| {
                let site = self.coords[i]
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (w, x)| acc + (x << (w as u32 * shape.m)));
                site + shape.sites() * (u64::from(self.spin[i]) + 2 * u64::from(self.isospin[i]))
            })
            .collect();
        shape.pack_states(&states)
    }

    /// Unpacks a full index.
    pub fn unpack(index: u64, shape: &Shape) -> Self {
        let mask = shape.side() - 1;
        let mut out = BasisIndex {
            coords: Vec::new(),
            spin: Vec::new(),
            isospin: Vec::new(),
        };
        for s in shape.single_states(index) {
            let site = s % shape.sites();
            let internal = s / shape.sites();
            out.coords.push(
                (0..shape.d)
                    .map(|w| (site >> (w * shape.m)) & mask)
                    .collect(),
            );
            out.spin.push((internal & 1) as u8);
            out.isospin.push((internal >> 1) as u8);
        }
        out
    }

    /// Spatial index of the same configuration, dropping spin and isospin.
    pub fn spatial_index(&self, shape: &Shape) -> u64 {
        let mut idx = 0;
        for (i, c) in self.coords.iter().enumerate() {
            for (w, x) in c.iter().enumerate() {
                idx |= x << ((i as u32 * shape.d + w as u32) * shape.m);
            }
        }
        idx
    }
}
