//! Kummer extensions and explicit matrix bases of cyclic division algebras.
//!
//! With `Y1^d = X` and `sigma(Y1) = zeta Y1`, the algebra generated by
//! `L = F'(Y1)` and `U` with `U^d = Y^d`, `U a = sigma(a) U` is a division
//! algebra over `F'(X, Y^d)`. Its regular representation on `L` gives the
//! `d x d` matrices `Gamma_(k,l) = M_k N_l`, where `M_k` is multiplication by
//! `Y1^k` and `N_l = Y^l diag(1, zeta^l, ..., zeta^((d-1)l))`.

use rand::Rng;

use crate::error::Result;
use crate::exactfield::{BiPoly, BiPolyRing, Field, RankRing, Ring, UnityRing};
use crate::linalg::{function_field_rank, Mat, PolyMatrix, Specialization};

type El<F> = <UnityRing<F> as Ring>::El;
type BP<F> = BiPoly<El<F>>;

/// The cyclic extension `F'(Y1) / F'(X)` with `Y1^d = X`.
#[derive(Debug, Clone)]
pub struct KummerExtension<F: Field> {
    pub ring: UnityRing<F>,
    pub poly: BiPolyRing<UnityRing<F>>,
    pub d: usize,
    /// `gamma[k][i][j]`: coefficient of `Y1^j` in `Y1^k * Y1^i`.
    pub gamma: Vec<Vec<Vec<BP<F>>>>,
    /// `sigma[(i, j)]`: coefficient of `Y1^j` in `sigma(Y1^i)`.
    pub sigma: Mat<El<F>>,
}

pub fn kummer_extension<F: Field>(ring: &UnityRing<F>) -> KummerExtension<F> {
    let d = ring.order();
    let poly = BiPolyRing::new(ring.clone());
    let mut gamma = vec![vec![vec![poly.zero(); d]; d]; d];
    for (k, gk) in gamma.iter_mut().enumerate() {
        for (i, gki) in gk.iter_mut().enumerate() {
            if k + i < d {
                gki[k + i] = poly.one();
            } else {
                gki[k + i - d] = poly.x();
            }
        }
    }
    let sigma = Mat::from_fn(d, d, |i, j| if i == j { ring.zeta_pow(i as i64) } else { ring.zero() });
    KummerExtension {
        ring: ring.clone(),
        poly,
        d,
        gamma,
        sigma,
    }
}

/// The `d^2` matrices `Gamma_(k*d + l) = M_k N_l` over `F'[X, Y]`.
#[derive(Debug, Clone)]
pub struct DivisionAlgebraBasis<F: Field> {
    pub ring: UnityRing<F>,
    pub poly: BiPolyRing<UnityRing<F>>,
    pub d: usize,
    pub gamma: Vec<Mat<BP<F>>>,
    /// Largest total degree of an entry.
    pub delta_bound: u32,
}

impl<F: Field> DivisionAlgebraBasis<F> {
    fn from_parts(ext: &KummerExtension<F>, ms: Vec<Mat<BP<F>>>, ns: Vec<Mat<BP<F>>>) -> Self {
        let mut gamma = Vec::with_capacity(ext.d * ext.d);
        for m in &ms {
            for n in &ns {
                gamma.push(m.mul(&ext.poly, n));
            }
        }
        let delta_bound = gamma
            .iter()
            .flat_map(|g| g.entries().iter().filter_map(|p| p.total_degree()))
            .max()
            .unwrap_or(0);
        log::debug!("division algebra basis for d = {}: entry degree {delta_bound}", ext.d);
        DivisionAlgebraBasis {
            ring: ext.ring.clone(),
            poly: ext.poly.clone(),
            d: ext.d,
            gamma,
            delta_bound,
        }
    }

    /// `M_k` from the structure constants.
    pub fn action_matrix(ext: &KummerExtension<F>, k: usize) -> Mat<BP<F>> {
        Mat::from_fn(ext.d, ext.d, |j, i| ext.gamma[k][i][j].clone())
    }

    /// `(d X Y^(d-1)) * E = sum_j lambda_j Gamma_j`; returns the `lambda_j`.
    ///
    /// Uses `sum_l zeta^(m l) = d [m = 0 mod d]`, valid in every component of
    /// the unity ring, to invert the diagonal structure of `M_k N_l`.
    pub fn expand_scaled(&self, e: &Mat<BP<F>>) -> Vec<BP<F>> {
        let d = self.d;
        let p = &self.poly;
        let mut out = Vec::with_capacity(d * d);
        for k in 0..d {
            for l in 0..d {
                let mut acc = p.zero();
                for i0 in 0..d {
                    let entry = &e[((i0 + k) % d, i0)];
                    if p.is_zero(entry) {
                        continue;
                    }
                    let z = self.ring.zeta_pow(-((i0 * l) as i64));
                    let xa = u32::from(i0 + k < d);
                    let shifted = p.shift(&p.scale(entry, &z), xa, (d - 1 - l) as u32);
                    p.add_assign(&mut acc, &shifted);
                }
                out.push(acc);
            }
        }
        out
    }

    /// [`Self::expand_scaled`] for a matrix over the base field.
    pub fn expand_scaled_field(&self, e: &Mat<F::El>) -> Vec<BP<F>> {
        let lifted = e.map(|x| self.poly.constant(self.ring.embed(x)));
        self.expand_scaled(&lifted)
    }

    /// `sum_j c_j Gamma_j`
    pub fn combine(&self, coeffs: &[BP<F>]) -> Mat<BP<F>> {
        let mut acc = Mat::zeros(&self.poly, self.d, self.d);
        for (c, g) in coeffs.iter().zip(&self.gamma) {
            if !self.poly.is_zero(c) {
                acc.add_scaled(&self.poly, c, g);
            }
        }
        acc
    }

    /// Rank over the function field of the `d^2 x d^2` matrix whose rows
    /// are the flattened `Gamma_j`.
    pub fn span_rank<G: Rng>(&self, mode: Specialization, rng: &mut G) -> Result<usize> {
        let rows: Vec<Vec<BP<F>>> = self.gamma.iter().map(|g| g.entries().to_vec()).collect();
        let m = crate::linalg::BiPolyMat {
            ring: self.poly.clone(),
            entries: Mat::from_rows(rows),
        };
        function_field_rank(&self.ring, &m, mode, rng)
    }
}

/// Closed form: `M_k` shifts by `k` with an `X` on wrap-around and
/// `N_l = Y^l diag(zeta^(i l))`.
pub fn cyclic_algebra_basis<F: Field>(ext: &KummerExtension<F>) -> DivisionAlgebraBasis<F> {
    let d = ext.d;
    let p = &ext.poly;
    let ms = (0..d)
        .map(|k| {
            Mat::from_fn(d, d, |j, i| {
                if j != (i + k) % d {
                    p.zero()
                } else if i + k < d {
                    p.one()
                } else {
                    p.x()
                }
            })
        })
        .collect();
    let ns = (0..d)
        .map(|l| {
            Mat::from_fn(d, d, |i, j| {
                if i == j {
                    p.monomial(ext.ring.zeta_pow((i * l) as i64), 0, l as u32)
                } else {
                    p.zero()
                }
            })
        })
        .collect();
    DivisionAlgebraBasis::from_parts(ext, ms, ns)
}

/// General construction from the structure constants and the matrix of
/// `sigma`: `M_k[j][i] = gamma_kij` and `N_l = (Y S)^l` with `S` the action
/// matrix of `sigma`.
pub fn cyclic_algebra_basis_general<F: Field>(ext: &KummerExtension<F>) -> DivisionAlgebraBasis<F> {
    let d = ext.d;
    let p = &ext.poly;
    let ms = (0..d).map(|k| DivisionAlgebraBasis::action_matrix(ext, k)).collect();
    let ys = Mat::from_fn(d, d, |j, i| p.monomial(ext.sigma[(i, j)].clone(), 0, 1));
    let mut ns = Vec::with_capacity(d);
    let mut cur = Mat::identity(p, d);
    for _ in 0..d {
        ns.push(cur.clone());
        cur = cur.mul(p, &ys);
    }
    DivisionAlgebraBasis::from_parts(ext, ms, ns)
}

/// An element `sum_i B_i (x) (sum_j c_ij G_j)` of `M(n) (x) M(d)` over
/// `R[X, Y]`, evaluated lazily.
#[derive(Debug, Clone)]
pub struct TensorFamily<F: Field> {
    pub ring: UnityRing<F>,
    pub poly: BiPolyRing<UnityRing<F>>,
    /// The `n x n` matrices `B_i`, embedded in the unity ring.
    pub outer: Vec<Mat<El<F>>>,
    /// The `d x d` matrices `G_j`.
    pub inner: Vec<Mat<BP<F>>>,
    /// `coeffs[i][j] = c_ij`.
    pub coeffs: Vec<Vec<BP<F>>>,
}

impl<F: Field> TensorFamily<F> {
    pub fn new(
        ring: &UnityRing<F>,
        poly: &BiPolyRing<UnityRing<F>>,
        outer: &[Mat<F::El>],
        inner: Vec<Mat<BP<F>>>,
        coeffs: Vec<Vec<BP<F>>>,
    ) -> Self {
        let outer = outer.iter().map(|b| b.map(|x| ring.embed(x))).collect();
        TensorFamily {
            ring: ring.clone(),
            poly: poly.clone(),
            outer,
            inner,
            coeffs,
        }
    }

    fn n(&self) -> usize {
        self.outer.first().map_or(0, Mat::rows)
    }

    fn d(&self) -> usize {
        self.inner.first().map_or(0, Mat::rows)
    }

    /// `sum_j c_ij G_j` for each `i`, symbolically.
    pub fn blocks(&self) -> Vec<Mat<BP<F>>> {
        let d = self.d();
        self.coeffs
            .iter()
            .map(|row| {
                let mut acc = Mat::zeros(&self.poly, d, d);
                for (c, g) in row.iter().zip(&self.inner) {
                    if !self.poly.is_zero(c) {
                        acc.add_scaled(&self.poly, c, g);
                    }
                }
                acc
            })
            .collect()
    }
}

impl<F: Field> PolyMatrix<UnityRing<F>> for TensorFamily<F> {
    fn shape(&self) -> (usize, usize) {
        let s = self.n() * self.d();
        (s, s)
    }

    fn degree_bound(&self) -> usize {
        let inner = self
            .inner
            .iter()
            .flat_map(|g| g.entries().iter().filter_map(|p| p.total_degree()))
            .max()
            .unwrap_or(0);
        let coeff = self
            .coeffs
            .iter()
            .flatten()
            .filter_map(|p| p.total_degree())
            .max()
            .unwrap_or(0);
        (inner + coeff) as usize
    }

    fn specialize(&self, x0: &El<F>, y0: &El<F>) -> Mat<El<F>> {
        let r = &self.ring;
        let (n, d) = (self.n(), self.d());
        let gs: Vec<Mat<El<F>>> = self.inner.iter().map(|g| g.map(|p| self.poly.eval(p, x0, y0))).collect();
        let mut out = Mat::zeros(r, n * d, n * d);
        for (b, row) in self.outer.iter().zip(&self.coeffs) {
            let mut block = Mat::zeros(r, d, d);
            for (c, g) in row.iter().zip(&gs) {
                if self.poly.is_zero(c) {
                    continue;
                }
                let cv = self.poly.eval(c, x0, y0);
                block.add_scaled(r, &cv, g);
            }
            if block.is_zero(r) {
                continue;
            }
            out = out.add(r, &b.kron(r, &block));
        }
        out
    }
}

/// Rank over the function field of `sum_j C_j (x) Gamma_j` and whether `d`
/// divides it.
pub fn algebra_membership_rank_check<F: Field, G: Rng>(
    basis: &DivisionAlgebraBasis<F>,
    outer: &[Mat<F::El>],
    mode: Specialization,
    rng: &mut G,
) -> Result<(usize, bool)> {
    let p = &basis.poly;
    // one outer matrix per Gamma_j: coefficient 1 on its own Gamma_j
    let coeffs: Vec<Vec<BP<F>>> = (0..outer.len())
        .map(|i| (0..basis.gamma.len()).map(|j| if i == j { p.one() } else { p.zero() }).collect())
        .collect();
    let fam = TensorFamily::new(&basis.ring, p, outer, basis.gamma[..outer.len()].to_vec(), coeffs);
    let r = function_field_rank(&basis.ring, &fam, mode, rng)?;
    Ok((r, r % basis.d == 0))
}
