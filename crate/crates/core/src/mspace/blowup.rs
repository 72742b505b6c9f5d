use std::collections::BTreeMap;

use rand::Rng;

use super::{effective_sample, failure_bound, MatrixSpace, RankEstimate, SpaceLike};
use crate::error::{AlgebraError, Result};
use crate::exactfield::{random_element, Field};
use crate::linalg::{Mat, Subspace};

/// The blow-up `B (x) M(d)` inside `M(nd)`. Index `a*d + t` is slot `t` of
/// block `a`, so an element consists of `n x n` blocks of size `d x d`.
#[derive(Debug, Clone)]
pub struct BlowUp<F: Field> {
    base: MatrixSpace<F>,
    d: usize,
}

impl<F: Field> BlowUp<F> {
    pub fn new(base: MatrixSpace<F>, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(AlgebraError::InvalidInput("blow-up degree must be positive".into()));
        }
        Ok(BlowUp { base, d })
    }

    pub fn base(&self) -> &MatrixSpace<F> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// `sum_i B_i (x) C_i` for `d x d` coefficient matrices `C_i`.
    pub fn element(&self, coeffs: &[Mat<F::El>]) -> Result<Mat<F::El>> {
        let f = self.base.field_ref();
        if coeffs.len() != self.base.len() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} coefficient blocks for {} basis matrices",
                coeffs.len(),
                self.base.len()
            )));
        }
        let nd = self.n() * self.d;
        let mut out = Mat::zeros(f, nd, nd);
        for (b, c) in self.base.basis().iter().zip(coeffs) {
            if c.rows() != self.d || c.cols() != self.d {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "coefficient block is {}x{}, expected {}x{}",
                    c.rows(),
                    c.cols(),
                    self.d,
                    self.d
                )));
            }
            if c.is_zero(f) {
                continue;
            }
            out = out.add(f, &b.kron(f, c));
        }
        Ok(out)
    }

    /// `sum coeffs[(i, j, k)] * B_i (x) E_jk` with zero-based indices.
    pub fn element_from_map(&self, coeffs: &BTreeMap<(usize, usize, usize), F::El>) -> Result<Mat<F::El>> {
        let f = self.base.field_ref();
        let mut blocks = vec![Mat::zeros(f, self.d, self.d); self.base.len()];
        for (&(i, j, k), v) in coeffs {
            if i >= self.base.len() || j >= self.d || k >= self.d {
                return Err(AlgebraError::InvalidInput(format!(
                    "blow-up index ({i}, {j}, {k}) out of range for {} matrices and degree {}",
                    self.base.len(),
                    self.d
                )));
            }
            blocks[i][(j, k)] = f.add(&blocks[i][(j, k)], v);
        }
        self.element(&blocks)
    }

    /// The `(j, k)` slice: the `n x n` matrix of entries at slot `j` of the
    /// row block and slot `k` of the column block.
    pub fn slice(&self, a: &Mat<F::El>, j: usize, k: usize) -> Mat<F::El> {
        let d = self.d;
        Mat::from_fn(self.n(), self.n(), |x, y| a[(x * d + j, y * d + k)].clone())
    }

    /// Coefficient blocks of `a`, if it lies in the blow-up. Uses the
    /// independent part of the base basis when the basis is dependent.
    pub fn coordinates(&self, a: &Mat<F::El>) -> Option<Vec<Mat<F::El>>> {
        let f = self.base.field_ref();
        let nd = self.n() * self.d;
        if a.rows() != nd || a.cols() != nd {
            return None;
        }
        let mut blocks = vec![Mat::zeros(f, self.d, self.d); self.base.len()];
        for j in 0..self.d {
            for k in 0..self.d {
                let c = self.base.coordinates(&self.slice(a, j, k))?;
                for (i, v) in c.into_iter().enumerate() {
                    blocks[i][(j, k)] = v;
                }
            }
        }
        Some(blocks)
    }

    /// `pi_t(u)`: the vector of slot-`t` entries of `u`.
    pub fn contraction(&self, u: &[F::El], t: usize) -> Vec<F::El> {
        (0..self.n()).map(|a| u[a * self.d + t].clone()).collect()
    }

    /// `span { pi_t(u) : u in U, t < d }`.
    pub fn contract(&self, u: &Subspace<F::El>) -> Subspace<F::El> {
        let f = self.base.field_ref();
        let vecs: Vec<Vec<F::El>> = u
            .basis()
            .iter()
            .flat_map(|v| (0..self.d).map(move |t| self.contraction(v, t)))
            .collect();
        Subspace::span(f, self.n(), &vecs)
    }

    /// `V (x) F^d`.
    pub fn tensor_up(&self, v: &Subspace<F::El>) -> Subspace<F::El> {
        let f = self.base.field_ref();
        let d = self.d;
        let mut vecs = Vec::with_capacity(v.dim() * d);
        for b in v.basis() {
            for t in 0..d {
                let mut w = vec![f.zero(); self.n() * d];
                for (a, x) in b.iter().enumerate() {
                    w[a * d + t] = x.clone();
                }
                vecs.push(w);
            }
        }
        Subspace::span(f, self.n() * d, &vecs)
    }

    /// `(I (x) E_jk) u`
    pub fn unit_action(&self, u: &[F::El], j: usize, k: usize) -> Vec<F::El> {
        let f = self.base.field_ref();
        let mut w = vec![f.zero(); u.len()];
        for a in 0..self.n() {
            w[a * self.d + j] = u[a * self.d + k].clone();
        }
        w
    }

    /// `(I (x) M(d)) U`, computed directly from the unit actions.
    pub fn close(&self, u: &Subspace<F::El>) -> Subspace<F::El> {
        let f = self.base.field_ref();
        let mut vecs = Vec::new();
        for v in u.basis() {
            for j in 0..self.d {
                for k in 0..self.d {
                    vecs.push(self.unit_action(v, j, k));
                }
            }
        }
        Subspace::span(f, self.n() * self.d, &vecs)
    }

    /// Spanning matrices `B_i (x) E_jk` in `(i, j, k)` lexicographic order.
    pub fn basis_elements(&self) -> Vec<Mat<F::El>> {
        let f = self.base.field_ref();
        let mut out = Vec::with_capacity(self.base.len() * self.d * self.d);
        for b in self.base.basis() {
            for j in 0..self.d {
                for k in 0..self.d {
                    out.push(b.kron(f, &Mat::unit(f, self.d, self.d, j, k)));
                }
            }
        }
        out
    }

    /// Random coefficient blocks with entries among the first `sample`
    /// field elements.
    pub fn random_coeffs<G: Rng>(&self, sample: u64, rng: &mut G) -> Vec<Mat<F::El>> {
        let f = self.base.field_ref();
        (0..self.base.len())
            .map(|_| Mat::from_fn(self.d, self.d, |_, _| random_element(f, sample, rng)))
            .collect()
    }

    /// Maximum rank over random elements of the blow-up.
    pub fn rank_estimate<G: Rng>(&self, trials: usize, sample_size: u64, rng: &mut G) -> (RankEstimate<F::El>, Vec<Mat<F::El>>) {
        let f = self.base.field_ref();
        let s = effective_sample(f, sample_size);
        let nd = self.n() * self.d;
        let mut best = RankEstimate {
            rank: 0,
            coeffs: Vec::new(),
            trials,
            sample_size: s,
            failure_bound: failure_bound(nd, s, trials),
        };
        let mut best_blocks = vec![Mat::zeros(f, self.d, self.d); self.base.len()];
        if self.base.is_empty() {
            return (best, best_blocks);
        }
        for _ in 0..trials.max(1) {
            let c = self.random_coeffs(s, rng);
            let r = f.rank(&self.element(&c).expect("shapes match"));
            if r > best.rank {
                best.rank = r;
                best_blocks = c;
                if r == nd {
                    break;
                }
            }
        }
        (best, best_blocks)
    }
}

impl<F: Field> SpaceLike<F> for BlowUp<F> {
    fn field(&self) -> &F {
        self.base.field_ref()
    }

    fn size(&self) -> usize {
        self.n() * self.d
    }

    fn spanning(&self) -> Vec<Mat<F::El>> {
        self.basis_elements()
    }

    /// Uses `A(U) = B(U_0) (x) F^d` where `U_0` is the span of all
    /// contractions of `U`.
    fn apply(&self, u: &Subspace<F::El>) -> Result<Subspace<F::El>> {
        if u.ambient() != self.size() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "subspace of F^{} for a blow-up of size {}",
                u.ambient(),
                self.size()
            )));
        }
        let u0 = self.contract(u);
        Ok(self.tensor_up(&self.base.apply(&u0)?))
    }

    fn contains(&self, a: &Mat<F::El>) -> bool {
        self.coordinates(a).is_some()
    }
}

/// Recognizes a blow-up: if the span of `mats` (all `nd x nd`) is closed
/// under multiplication by `I (x) M(d)` on both sides, returns the base
/// space recovered from its slices; otherwise `None`.
pub fn is_blowup<F: Field>(field: &F, mats: &[Mat<F::El>], n: usize, d: usize) -> Result<Option<MatrixSpace<F>>> {
    let nd = n * d;
    if d == 0 || mats.iter().any(|m| m.rows() != nd || m.cols() != nd) {
        return Err(AlgebraError::DimensionMismatch(format!(
            "expected {nd}x{nd} matrices for n = {n}, d = {d}"
        )));
    }
    let space = MatrixSpace::new(field.clone(), nd, mats.to_vec())?;
    if d == 1 {
        return Ok(Some(space));
    }
    let span = space.span();
    let units: Vec<Mat<F::El>> = (0..d * d)
        .map(|t| {
            let id = Mat::identity(field, n);
            id.kron(field, &Mat::unit(field, d, d, t / d, t % d))
        })
        .collect();
    for a in mats {
        for l in &units {
            let la = l.mul(field, a);
            if la.is_zero(field) {
                continue;
            }
            for r in &units {
                if !span.contains(field, la.mul(field, r).entries()) {
                    return Ok(None);
                }
            }
        }
    }
    // B_ij (x) I = sum_k (I (x) E_ki) A (I (x) E_jk); B_ij is the (i, j) slice.
    let shell = BlowUp::new(MatrixSpace::new(field.clone(), n, Vec::new())?, d)?;
    let mut slices = Vec::new();
    for a in mats {
        for i in 0..d {
            for j in 0..d {
                slices.push(shell.slice(a, i, j));
            }
        }
    }
    let (base, _) = MatrixSpace::new(field.clone(), n, slices)?.reduced();
    if base.span().dim() * d * d != span.dim() {
        return Err(AlgebraError::Internal(
            "closed space has the wrong dimension for a blow-up".into(),
        ));
    }
    Ok(Some(base))
}
