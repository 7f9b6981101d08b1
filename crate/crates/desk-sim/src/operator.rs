//! Dense operators on desk-scale Hilbert spaces and the lattice Hamiltonian.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use pionless_core::{kinetic_coefficient, SystemSpec};

use crate::basis::Shape;
use crate::error::{check_limit, Result};

/// Complex scalar used throughout the simulators.
pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);

/// Square complex matrix over a desk-scale Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    pub matrix: DMatrix<C64>,
}

impl DenseOperator {
    pub fn new(matrix: DMatrix<C64>) -> Self {
        assert!(matrix.is_square(), "operator must be square");
        Self { matrix }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(DMatrix::identity(dim, dim))
    }

    /// Diagonal operator with real entries.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let v = DVector::from_iterator(diag.len(), diag.iter().map(|x| C64::new(*x, 0.0)));
        Self::new(DMatrix::from_diagonal(&v))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.matrix.adjoint())
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        Self::new(&self.matrix * &other.matrix - &other.matrix * &self.matrix)
    }

    /// Largest entry-wise deviation from the adjoint.
    pub fn hermiticity_error(&self) -> f64 {
        max_abs(&(&self.matrix - self.matrix.adjoint()))
    }

    /// Largest entry-wise deviation of `U†U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let n = self.dim();
        max_abs(&(self.matrix.adjoint() * &self.matrix - DMatrix::<C64>::identity(n, n)))
    }

    /// True when every off-diagonal entry is exactly zero.
    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.matrix[(i, j)] == ZERO))
    }

    /// Spectral norm.
    pub fn spectral_norm(&self) -> f64 {
        spectral_norm(&self.matrix)
    }

    /// `e^{−iHt}` for a Hermitian operator, by eigendecomposition.
    pub fn evolution(&self, t: f64) -> Self {
        Self::new(hermitian_exp(&self.matrix, t))
    }
}

/// Largest absolute entry.
pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Spectral norm of an arbitrary square matrix.
///
/// Diagonal matrices use the largest absolute diagonal entry. Otherwise
/// the norm is the square root of the top eigenvalue of `A†A`.
pub fn spectral_norm(m: &DMatrix<C64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let n = m.nrows();
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || m[(i, j)] == ZERO));
    if diagonal {
        return (0..n).fold(0.0, |acc, i| acc.max(m[(i, i)].norm()));
    }
    let gram = m.adjoint() * m;
    let eig = gram.symmetric_eigenvalues();
    eig.iter()
        .fold(0.0f64, |acc, x| acc.max(*x))
        .max(0.0)
        .sqrt()
}

/// `e^{−iHt}` for Hermitian `H`.
pub fn hermitian_exp(h: &DMatrix<C64>, t: f64) -> DMatrix<C64> {
    HermitianExp::new(h).at(t)
}

/// Eigendecomposition cached for repeated exponentials of one Hermitian
/// matrix.
#[derive(Debug, Clone)]
pub struct HermitianExp {
    values: Vec<f64>,
    vectors: DMatrix<C64>,
}

impl HermitianExp {
    pub fn new(h: &DMatrix<C64>) -> Self {
        let e = h.clone().symmetric_eigen();
        Self {
            values: e.eigenvalues.iter().copied().collect(),
            vectors: e.eigenvectors,
        }
    }

    /// `e^{−iHt}`.
    pub fn at(&self, t: f64) -> DMatrix<C64> {
        let mut scaled = self.vectors.clone();
        for (j, lam) in self.values.iter().enumerate() {
            let ph = C64::from_polar(1.0, -lam * t);
            for z in scaled.column_mut(j).iter_mut() {
                *z *= ph;
            }
        }
        scaled * self.vectors.adjoint()
    }
}

/// Momentum `k ∈ [0, 2^m)` folded to `[−2^{m−1}, 2^{m−1} − 1]`.
pub fn fold_momentum(k: u64, m: u32) -> i64 {
    let half = 1i64 << (m - 1);
    let k = k as i64;
    if k < half {
        k
    } else {
        k - (1i64 << m)
    }
}

/// Discrete Fourier transform `F[k][j] = e^{2πijk/M}/√M` on `M = 2^m`
/// points.
pub fn dft(m: u32) -> DMatrix<C64> {
    let n = 1usize << m;
    let norm = 1.0 / (n as f64).sqrt();
    DMatrix::from_fn(n, n, |k, j| {
        C64::from_polar(norm, 2.0 * PI * ((j * k) % n) as f64 / n as f64)
    })
}

/// Kinetic energy along one axis, `F†·diag(K·q_k²)·F`.
pub fn axis_kinetic(m: u32, k_coef: f64) -> DMatrix<C64> {
    let f = dft(m);
    let n = 1usize << m;
    let diag = DVector::from_fn(n, |k, _| {
        let q = fold_momentum(k as u64, m) as f64;
        C64::new(k_coef * q * q, 0.0)
    });
    f.adjoint() * DMatrix::from_diagonal(&diag) * f
}

/// Kinetic energy of one particle over its `Ω` states, acting trivially
/// on spin and isospin.
pub fn single_particle_kinetic(shape: &Shape, k_coef: f64) -> DMatrix<C64> {
    let axis = axis_kinetic(shape.m, k_coef);
    let side = shape.side() as usize;
    let sites = shape.sites() as usize;
    let omega = shape.omega() as usize;
    let mut t = DMatrix::zeros(omega, omega);
    for col in 0..omega {
        let (site, internal) = (col % sites, col / sites);
        for w in 0..shape.d as usize {
            let shift = side.pow(w as u32);
            let x = (site / shift) % side;
            for y in 0..side {
                let z = axis[(y, x)];
                if z != ZERO {
                    let row = site - x * shift + y * shift + internal * sites;
                    t[(row, col)] += z;
                }
            }
        }
    }
    t
}

/// Numbers of coinciding pairs and triples, by explicit double and triple
/// sums over particle labels.
pub fn pair_triple_counts(sites: &[u64]) -> (u64, u64) {
    let n = sites.len();
    let mut pairs = 0;
    let mut triples = 0;
    for i in 0..n {
        for j in i + 1..n {
            if sites[i] == sites[j] {
                pairs += 1;
                for k in j + 1..n {
                    if sites[k] == sites[i] {
                        triples += 1;
                    }
                }
            }
        }
    }
    (pairs, triples)
}

/// Pairs and triples from site occupations, `Σ n(n−1)/2` and
/// `Σ n(n−1)(n−2)/6`.
pub fn occupation_counts(sites: &[u64]) -> (u64, u64) {
    let mut sorted = sites.to_vec();
    sorted.sort_unstable();
    let mut pairs = 0;
    let mut triples = 0;
    for chunk in sorted.chunk_by(|a, b| a == b) {
        let n = chunk.len() as u64;
        pairs += n * n.saturating_sub(1) / 2;
        triples += n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
    }
    (pairs, triples)
}

/// Kinetic, two-body and three-body parts of the Hamiltonian over the full
/// basis including spin and isospin.
#[derive(Debug, Clone)]
pub struct HamiltonianParts {
    pub shape: Shape,
    pub kinetic: DenseOperator,
    pub v2: DenseOperator,
    pub v3: DenseOperator,
}

impl HamiltonianParts {
    pub fn potential(&self) -> DenseOperator {
        DenseOperator::new(&self.v2.matrix + &self.v3.matrix)
    }

    pub fn total(&self) -> DenseOperator {
        DenseOperator::new(&self.kinetic.matrix + &self.v2.matrix + &self.v3.matrix)
    }
}

/// Builds `T`, `V₂` and `V₃` on the full `Ω^η`-dimensional space.
///
/// The potentials use the occupation form and every entry is cross-checked
/// against the explicit pair and triple sums.
pub fn build_parts(spec: &SystemSpec) -> Result<HamiltonianParts> {
    let shape = Shape::new(&spec.lattice, spec.eta)?;
    let dim = shape.require_dense()? as usize;
    let t1 = single_particle_kinetic(&shape, kinetic_coefficient(spec));
    let omega = shape.omega();
    let mut kinetic = DMatrix::zeros(dim, dim);
    let mut v2 = vec![0.0; dim];
    let mut v3 = vec![0.0; dim];
    for col in 0..dim as u64 {
        let states = shape.single_states(col);
        for i in 0..states.len() {
            for s in 0..omega {
                let z = t1[(s as usize, states[i] as usize)];
                if z != ZERO {
                    let mut next = states.clone();
                    next[i] = s;
                    kinetic[(shape.pack_states(&next) as usize, col as usize)] += z;
                }
            }
        }
        let sites = shape.full_sites(col);
        let (p, t) = occupation_counts(&sites);
        assert_eq!(
            (p, t),
            pair_triple_counts(&sites),
            "occupation form disagrees"
        );
        v2[col as usize] = spec.params.c * p as f64;
        v3[col as usize] = spec.params.g * t as f64;
    }
    Ok(HamiltonianParts {
        shape,
        kinetic: DenseOperator::new(kinetic),
        v2: DenseOperator::from_diagonal(&v2),
        v3: DenseOperator::from_diagonal(&v3),
    })
}

/// Full Hamiltonian `H = T + V₂ + V₃` on the `Ω^η`-dimensional space.
pub fn build_exact_h(spec: &SystemSpec) -> Result<DenseOperator> {
    Ok(build_parts(spec)?.total())
}

/// Potential energy of a spatial configuration.
pub fn potential_value(sites: &[u64], c: f64, g: f64) -> f64 {
    let (p, t) = pair_triple_counts(sites);
    c * p as f64 + g * t as f64
}

/// Kinetic energy on the spatial register only, `2^{ηdm}`-dimensional.
pub fn spatial_kinetic(shape: &Shape, k_coef: f64) -> Result<DenseOperator> {
    check_limit(
        "spatial Hilbert space",
        shape.spatial_dim(),
        crate::basis::DENSE_LIMIT,
    )?;
    let axis = axis_kinetic(shape.m, k_coef);
    let regs = (shape.eta * shape.d) as usize;
    let n = shape.spatial_dim() as usize;
    let side = shape.side() as usize;
    let mut t = DMatrix::zeros(n, n);
    for col in 0..n {
        for r in 0..regs {
            let shift = side.pow(r as u32);
            let x = (col / shift) % side;
            for y in 0..side {
                let z = axis[(y, x)];
                if z != ZERO {
                    t[(col - x * shift + y * shift, col)] += z;
                }
            }
        }
    }
    Ok(DenseOperator::new(t))
}

/// Potential energies of every spatial basis state.
pub fn spatial_potential(shape: &Shape, c: f64, g: f64) -> Result<Vec<f64>> {
    check_limit("spatial Hilbert space", shape.spatial_dim(), 1 << 24)?;
    Ok((0..shape.spatial_dim())
        .map(|x| potential_value(&shape.spatial_sites(x), c, g))
        .collect())
}
