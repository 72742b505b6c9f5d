//! Matrix spaces, their tensor blow-ups, and shrunk-subspace witnesses.

mod blowup;
mod witness;

pub use blowup::{is_blowup, BlowUp};
pub use witness::{descend_witness, verify_shrunk, ShrunkWitness};

use rand::Rng;

use crate::error::{AlgebraError, Result};
use crate::exactfield::{random_element, Field};
use crate::linalg::{Mat, Subspace};

/// Anything that acts like a linear space of `n x n` matrices.
pub trait SpaceLike<F: Field> {
    fn field(&self) -> &F;

    /// Size of the matrices.
    fn size(&self) -> usize;

    /// A spanning set, in a fixed order.
    fn spanning(&self) -> Vec<Mat<F::El>>;

    /// `span { B u : B in the space, u in U }`.
    fn apply(&self, u: &Subspace<F::El>) -> Result<Subspace<F::El>>;

    fn contains(&self, a: &Mat<F::El>) -> bool;
}

/// The span of `B_1, ..., B_m`, all `n x n` over `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSpace<F: Field> {
    field: F,
    n: usize,
    basis: Vec<Mat<F::El>>,
    independent: bool,
}

impl<F: Field> MatrixSpace<F> {
    pub fn new(field: F, n: usize, basis: Vec<Mat<F::El>>) -> Result<Self> {
        for (i, b) in basis.iter().enumerate() {
            if b.rows() != n || b.cols() != n {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "basis matrix {i} is {}x{}, expected {n}x{n}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        let vecs: Vec<Vec<F::El>> = basis.iter().map(|b| b.entries().to_vec()).collect();
        let independent = Subspace::span(&field, n * n, &vecs).dim() == basis.len();
        Ok(MatrixSpace {
            field,
            n,
            basis,
            independent,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of given spanning matrices.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Mat<F::El>] {
        &self.basis
    }

    pub fn field_ref(&self) -> &F {
        &self.field
    }

    /// Whether the spanning matrices are linearly independent.
    pub fn is_independent(&self) -> bool {
        self.independent
    }

    /// Span as a subspace of `F^(n^2)`, matrices flattened row by row.
    pub fn span(&self) -> Subspace<F::El> {
        let vecs: Vec<Vec<F::El>> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
        Subspace::span(&self.field, self.n * self.n, &vecs)
    }

    pub fn same_span(&self, other: &Self) -> bool {
        self.n == other.n && self.span() == other.span()
    }

    /// Positions of a maximal linearly independent subset of the basis,
    /// chosen greedily in order.
    pub fn independent_indices(&self) -> Vec<usize> {
        let mut acc = Subspace::zero(self.n * self.n);
        let mut idx = Vec::new();
        for (i, b) in self.basis.iter().enumerate() {
            if !acc.contains(&self.field, b.entries()) {
                acc = acc.join(&self.field, &Subspace::span(&self.field, acc.ambient(), &[b.entries().to_vec()]));
                idx.push(i);
            }
        }
        idx
    }

    /// The same space with a linearly independent basis, and the original
    /// positions of the kept matrices.
    pub fn reduced(&self) -> (Self, Vec<usize>) {
        let idx = self.independent_indices();
        let basis = idx.iter().map(|&i| self.basis[i].clone()).collect();
        (
            MatrixSpace {
                field: self.field.clone(),
                n: self.n,
                basis,
                independent: true,
            },
            idx,
        )
    }

    /// `sum_i c_i B_i`
    pub fn combine(&self, coeffs: &[F::El]) -> Result<Mat<F::El>> {
        if coeffs.len() != self.basis.len() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} coefficients for {} basis matrices",
                coeffs.len(),
                self.basis.len()
            )));
        }
        let mut m = Mat::zeros(&self.field, self.n, self.n);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            m.add_scaled(&self.field, c, b);
        }
        Ok(m)
    }

    /// Coefficients of `a` in the basis, if `a` lies in the span. Requires
    /// an independent basis for uniqueness; otherwise some solution.
    pub fn coordinates(&self, a: &Mat<F::El>) -> Option<Vec<F::El>> {
        let cols: Vec<Vec<F::El>> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
        let sys = Mat::from_columns(self.n * self.n, &cols);
        crate::linalg::solve(&self.field, &sys, a.entries()).ok().flatten()
    }

    /// Maximum rank over `trials` random combinations. Always a lower
    /// bound on the commutative rank.
    pub fn commutative_rank_estimate<G: Rng>(&self, trials: usize, sample_size: u64, rng: &mut G) -> RankEstimate<F::El> {
        let s = effective_sample(&self.field, sample_size);
        let mut best = RankEstimate {
            rank: 0,
            coeffs: vec![self.field.zero(); self.basis.len()],
            trials,
            sample_size: s,
            failure_bound: failure_bound(self.n, s, trials),
        };
        if self.basis.is_empty() {
            return best;
        }
        for _ in 0..trials.max(1) {
            let c: Vec<F::El> = (0..self.basis.len())
                .map(|_| random_element(&self.field, s, rng))
                .collect();
            let m = self.combine(&c).expect("coefficient count matches");
            let r = self.field.rank(&m);
            if r > best.rank {
                best.rank = r;
                best.coeffs = c;
                if r == self.n {
                    break;
                }
            }
        }
        best
    }
}

/// The sample set size actually used: the requested size capped by the
/// field size.
pub fn effective_sample<F: Field>(field: &F, sample_size: u64) -> u64 {
    match field.size() {
        Some(q) => q.min(sample_size.max(1)),
        None => sample_size.max(1),
    }
}

/// Schwartz-Zippel bound `(n / |S|)^trials` on missing the maximum rank.
pub fn failure_bound(n: usize, sample: u64, trials: usize) -> f64 {
    let per = (n as f64 / sample as f64).min(1.0);
    per.powi(trials.max(1) as i32)
}

/// Result of a randomized commutative rank search.
#[derive(Debug, Clone, PartialEq)]
pub struct RankEstimate<E> {
    /// Best rank seen; a certified lower bound.
    pub rank: usize,
    /// Coefficients of a combination achieving `rank`.
    pub coeffs: Vec<E>,
    pub trials: usize,
    pub sample_size: u64,
    /// Upper bound on the probability that `rank` is below the true rank.
    pub failure_bound: f64,
}

impl<F: Field> SpaceLike<F> for MatrixSpace<F> {
    fn field(&self) -> &F {
        &self.field
    }

    fn size(&self) -> usize {
        self.n
    }

    fn spanning(&self) -> Vec<Mat<F::El>> {
        self.basis.clone()
    }

    fn apply(&self, u: &Subspace<F::El>) -> Result<Subspace<F::El>> {
        if u.ambient() != self.n {
            return Err(AlgebraError::DimensionMismatch(format!(
                "subspace of F^{} for a space of {}x{} matrices",
                u.ambient(),
                self.n,
                self.n
            )));
        }
        let mut vecs = Vec::with_capacity(self.basis.len() * u.dim());
        for b in &self.basis {
            for v in u.basis() {
                vecs.push(b.mul_vec(&self.field, v));
            }
        }
        Ok(Subspace::span(&self.field, self.n, &vecs))
    }

    fn contains(&self, a: &Mat<F::El>) -> bool {
        a.rows() == self.n && a.cols() == self.n && self.span().contains(&self.field, a.entries())
    }
}
