//! Antisymmetrization and fermionic semi-norms.
//!
//! `Π_A = (1/η!)·Σ_π sign(π)·P_π` projects onto states that are odd under
//! exchange of any two nucleons. Its range is spanned by normalized Slater
//! determinants, one for each strictly increasing tuple of single-particle
//! states. [`AntisymmetricBasis`] enumerates those columns explicitly and
//! restricts operators to them, so that `‖Π_A·O·Π_A‖` equals the spectral
//! norm of the restricted matrix.

use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::basis::{Shape, DENSE_LIMIT};
use crate::error::{check_limit, Result};
use crate::operator::{spectral_norm, DenseOperator, C64, ZERO};
use pionless_core::SystemSpec;

/// Largest antisymmetric-subspace dimension handled densely.
pub const REDUCED_LIMIT: u64 = 4096;

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, f64)> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push((current.clone(), permutation_sign(&current)));
        // Next lexicographic permutation.
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n)
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .expect("pivot exists");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// `+1` for even and `−1` for odd permutations.
pub fn permutation_sign(p: &[usize]) -> f64 {
    let mut seen = vec![false; p.len()];
    let mut parity = 0;
    for start in 0..p.len() {
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = p[k];
            len += 1;
        }
        if len > 0 {
            parity += len - 1;
        }
    }
    if parity % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Dense `Π_A` on the full `Ω^η` space, summed over all `η!` permutations.
pub fn antisymmetrizer(shape: &Shape) -> Result<DenseOperator> {
    let dim = shape.require_dense()? as usize;
    let perms = permutations(shape.eta as usize);
    let weight = 1.0 / perms.len() as f64;
    let mut pa = DMatrix::zeros(dim, dim);
    for col in 0..dim as u64 {
        let states = shape.single_states(col);
        for (p, sign) in &perms {
            let permuted: Vec<u64> = p.iter().map(|&k| states[k]).collect();
            pa[(shape.pack_states(&permuted) as usize, col as usize)] +=
                C64::new(sign * weight, 0.0);
        }
    }
    Ok(DenseOperator::new(pa))
}

/// Orthonormal basis of the antisymmetric subspace.
#[derive(Debug, Clone)]
pub struct AntisymmetricBasis {
    shape: Shape,
    tuples: Vec<Vec<u64>>,
    lookup: HashMap<Vec<u64>, usize>,
    perms: Vec<(Vec<usize>, f64)>,
    norm: f64,
}

impl AntisymmetricBasis {
    /// Enumerates the `C(Ω, η)` Slater determinants.
    pub fn new(shape: Shape) -> Result<Self> {
        let omega = shape.omega();
        let eta = shape.eta as usize;
        let size = binomial(omega, eta as u64);
        check_limit("antisymmetric subspace", size, REDUCED_LIMIT)?;
        let mut tuples = Vec::with_capacity(size as usize);
        let mut cur: Vec<u64> = (0..eta as u64).collect();
        if eta as u64 <= omega {
            loop {
                tuples.push(cur.clone());
                let Some(i) = (0..eta).rev().find(|&i| cur[i] < omega - (eta - i) as u64) else {
                    break;
                };
                cur[i] += 1;
                for k in i + 1..eta {
                    cur[k] = cur[k - 1] + 1;
                }
            }
        }
        let lookup = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let perms = permutations(eta);
        let norm = 1.0 / (perms.len() as f64).sqrt();
        Ok(Self {
            shape,
            tuples,
            lookup,
            perms,
            norm,
        })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Number of determinants.
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Occupied single-particle states of determinant `a`, increasing.
    pub fn tuple(&self, a: usize) -> &[u64] {
        &self.tuples[a]
    }

    /// Full-space entries of determinant `a`:
    /// `(1/√η!)·Σ_π sign(π)·|s_π(0), …, s_π(η−1)⟩`.
    pub fn column(&self, a: usize) -> Vec<(u64, f64)> {
        let t = &self.tuples[a];
        self.perms
            .iter()
            .map(|(p, sign)| {
                let states: Vec<u64> = p.iter().map(|&k| t[k]).collect();
                (self.shape.pack_states(&states), sign * self.norm)
            })
            .collect()
    }

    /// Overlaps `⟨D_a|v⟩` of a sparse full-space vector with every
    /// determinant.
    pub fn project(&self, entries: &[(u64, C64)]) -> Vec<(usize, C64)> {
        let mut acc: HashMap<usize, C64> = HashMap::new();
        for (idx, z) in entries {
            let mut states = self.shape.single_states(*idx);
            let sign = sort_with_sign(&mut states);
            if states.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let a = self.lookup[&states];
            *acc.entry(a).or_insert(ZERO) += z * (sign * self.norm);
        }
        let mut out: Vec<(usize, C64)> = acc.into_iter().collect();
        out.sort_unstable_by_key(|(a, _)| *a);
        out
    }

    /// Restriction `B†·O·B` of an operator given by its action on basis
    /// states.
    pub fn restrict<F>(&self, apply: F) -> DMatrix<C64>
    where
        F: Fn(u64) -> Vec<(u64, C64)>,
    {
        let n = self.len();
        let mut out = DMatrix::zeros(n, n);
        for b in 0..n {
            let mut image: HashMap<u64, C64> = HashMap::new();
            for (idx, coef) in self.column(b) {
                for (row, z) in apply(idx) {
                    *image.entry(row).or_insert(ZERO) += z * coef;
                }
            }
            let entries: Vec<(u64, C64)> = image.into_iter().collect();
            for (a, z) in self.project(&entries) {
                out[(a, b)] = z;
            }
        }
        out
    }

    /// Restriction of a dense full-space operator.
    pub fn restrict_dense(&self, op: &DenseOperator) -> DMatrix<C64> {
        let dim = op.dim();
        self.restrict(|idx| {
            (0..dim)
                .filter_map(|r| {
                    let z = op.matrix[(r, idx as usize)];
                    (z != ZERO).then_some((r as u64, z))
                })
                .collect()
        })
    }

    /// Restriction of `Σ_i o^{(i)}` for a single-particle operator `o`
    /// given as an `Ω×Ω` matrix.
    pub fn restrict_one_body(&self, single: &DMatrix<C64>) -> DMatrix<C64> {
        let omega = self.shape.omega();
        self.restrict(|idx| {
            let states = self.shape.single_states(idx);
            let mut out = Vec::new();
            for i in 0..states.len() {
                for s in 0..omega {
                    let z = single[(s as usize, states[i] as usize)];
                    if z != ZERO {
                        let mut next = states.clone();
                        next[i] = s;
                        out.push((self.shape.pack_states(&next), z));
                    }
                }
            }
            out
        })
    }

    /// Restriction of a diagonal operator given by its value on the
    /// single-particle states of a basis vector.
    pub fn restrict_diagonal<F>(&self, value: F) -> DMatrix<C64>
    where
        F: Fn(&[u64]) -> f64,
    {
        self.restrict(|idx| vec![(idx, C64::new(value(&self.shape.single_states(idx)), 0.0))])
    }
}

/// Sorts in place and returns the sign of the sorting permutation.
fn sort_with_sign(v: &mut [u64]) -> f64 {
    let mut sign = 1.0;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `‖Π_A·O·Π_A‖` for a dense operator on the full space of `spec`.
///
/// Spaces up to 512 dimensions form `Π_A` explicitly from all `η!`
/// permutations; larger spaces use the determinant basis, which gives the
/// same norm.
pub fn seminorm_oracle(op: &DenseOperator, spec: &SystemSpec) -> Result<f64> {
    let shape = Shape::new(&spec.lattice, spec.eta)?;
    let dim = shape.require_dense()?;
    check_limit("operator dimension", op.dim() as u64, DENSE_LIMIT)?;
    assert_eq!(op.dim() as u64, dim, "operator does not match the instance");
    if dim <= 512 {
        let pa = antisymmetrizer(&shape)?;
        Ok(spectral_norm(&(&pa.matrix * &op.matrix * &pa.matrix)))
    } else {
        let basis = AntisymmetricBasis::new(shape)?;
        Ok(spectral_norm(&basis.restrict_dense(op)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{build_parts, max_abs};
    use pionless_core::LatticeConfig;

    fn shape(d: u32, m: u32, eta: u32) -> Shape {
        Shape::new(&LatticeConfig::new(d, m).unwrap(), u64::from(eta)).unwrap()
    }

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|(_, s)| s).sum::<f64>(), 0.0);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1.0);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1.0);
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn projector_identities() {
        for s in [shape(1, 1, 2), shape(1, 1, 3), shape(2, 1, 2)] {
            let pa = antisymmetrizer(&s).unwrap();
            let sq = &pa.matrix * &pa.matrix;
            assert!(max_abs(&(&sq - &pa.matrix)) < 1e-12);
            assert!(pa.hermiticity_error() < 1e-12);
            let trace: f64 = (0..pa.dim()).map(|i| pa.matrix[(i, i)].re).sum();
            let basis = AntisymmetricBasis::new(s).unwrap();
            assert!((trace - basis.len() as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn pauli_exclusion() {
        let s = shape(1, 1, 2);
        let pa = antisymmetrizer(&s).unwrap();
        let idx = s.pack_states(&[3, 3]) as usize;
        assert!(pa.matrix.column(idx).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn identity_has_unit_seminorm() {
        let spec = SystemSpec::with_defaults(1, 1, 2).unwrap();
        let id = DenseOperator::identity(64);
        assert!((seminorm_oracle(&id, &spec).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_body_seminorm_equals_coupling() {
        let spec = SystemSpec::with_defaults(1, 1, 2).unwrap();
        let parts = build_parts(&spec).unwrap();
        let n = seminorm_oracle(&parts.v2, &spec).unwrap();
        assert!((n - spec.params.c.abs()).abs() < 1e-10);
    }

    #[test]
    fn restricted_and_dense_norms_agree() {
        for (d, m, eta) in [(1, 1, 2), (1, 1, 3), (2, 1, 2)] {
            let spec = SystemSpec::with_defaults(d, m, eta).unwrap();
            let parts = build_parts(&spec).unwrap();
            let basis = AntisymmetricBasis::new(parts.shape).unwrap();
            let pa = antisymmetrizer(basis.shape()).unwrap();
            for op in [parts.kinetic.clone(), parts.potential(), parts.total()] {
                let dense = spectral_norm(&(&pa.matrix * &op.matrix * &pa.matrix));
                let reduced = spectral_norm(&basis.restrict_dense(&op));
                assert!((dense - reduced).abs() < 1e-9 * dense.max(1.0));
            }
            let k = pionless_core::kinetic_coefficient(&spec);
            let one_body = basis
                .restrict_one_body(&crate::operator::single_particle_kinetic(basis.shape(), k));
            assert!(max_abs(&(one_body - basis.restrict_dense(&parts.kinetic))) < 1e-9);
        }
    }
}
