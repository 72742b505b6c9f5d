//! The non-commutative rank driver.
//!
//! Starting from a matrix of rank `r` in the blow-up of degree `d`, either
//! the second Wong sequence yields a shrunk subspace (and `ncrk = r`), or
//! its escaping chain lifts the rank to `(r+1) d d'` at degree `d d'`.

mod bounds;

pub use bounds::{degree_bounds, DegreeBounds};

use log::{debug, info, warn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::exactfield::{sample_set, Field};
use crate::linalg::{Mat, Subspace};
use crate::mspace::{
    descend_witness, effective_sample, failure_bound, verify_shrunk, BlowUp, MatrixSpace, ShrunkWitness,
};
use crate::roundup::{round_up_rank, RoundUpConfig};
use crate::wong::{pencil_max_rank, second_wong, wong_chain, WongResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NcrkConfig {
    /// Random combinations tried for the starting matrix.
    pub trials: usize,
    /// Random coefficients are drawn from this many field elements.
    pub sample_size: u64,
    /// Abort once a blow-up would exceed this many rows.
    pub cap_dim: usize,
    pub round_up: RoundUpConfig,
}

impl Default for NcrkConfig {
    fn default() -> Self {
        NcrkConfig {
            trials: 16,
            sample_size: 1 << 32,
            cap_dim: 2000,
            round_up: RoundUpConfig::default(),
        }
    }
}

/// A blow-up element of full claimed rank: `sum_i B_i (x) coeffs[i]` has
/// rank `achieved_rank` at degree `degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct FullCert<E> {
    pub degree: usize,
    pub coeffs: Vec<Mat<E>>,
    pub achieved_rank: usize,
}

impl<E: Clone + PartialEq> FullCert<E> {
    /// Rebuilds the matrix and recomputes its rank.
    pub fn verify<F: Field<El = E>>(&self, space: &MatrixSpace<F>) -> Result<bool> {
        let bu = BlowUp::new(space.clone(), self.degree)?;
        let m = bu.element(&self.coeffs)?;
        Ok(space.field_ref().rank(&m) == self.achieved_rank && self.achieved_rank % self.degree == 0)
    }

    /// `achieved_rank / degree`, a lower bound on the non-commutative rank.
    pub fn rank_bound(&self) -> usize {
        self.achieved_rank / self.degree
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NcrkResult<E> {
    pub ncrk: usize,
    pub n: usize,
    /// Lower bound: a blow-up element of rank `ncrk * degree`.
    pub rank_cert: FullCert<E>,
    /// Upper bound when `ncrk < n`: a `(n - ncrk)`-shrunk subspace.
    pub shrunk: Option<ShrunkWitness<E>>,
    /// `(degree, rank / degree)` for every state visited.
    pub trace: Vec<(usize, usize)>,
    /// Rank of the starting matrix.
    pub start_rank: usize,
}

impl<E: Clone + PartialEq> NcrkResult<E> {
    /// Re-checks both certificates against `space`.
    pub fn verify<F: Field<El = E>>(&self, space: &MatrixSpace<F>) -> Result<bool> {
        if self.n != space.n() || self.ncrk > self.n {
            return Ok(false);
        }
        if !self.rank_cert.verify(space)? || self.rank_cert.rank_bound() != self.ncrk {
            return Ok(false);
        }
        match &self.shrunk {
            None => Ok(self.ncrk == self.n),
            Some(w) => Ok(w.c == self.n - self.ncrk && verify_shrunk(space, w)?),
        }
    }
}

/// Outcome of one rank increment.
#[derive(Debug, Clone)]
pub enum Increment<F: Field> {
    /// `A^-1(W*)` in the blow-up, shrunk by `(n - r) d`.
    Shrunk(Subspace<F::El>),
    /// A matrix of rank at least `(r+1) d d'` at degree `d d'`.
    Raised { bu: BlowUp<F>, a: Mat<F::El>, rank: usize },
}

/// Sample set of nonzero elements, clamped to the field.
pub(crate) fn nonzero_samples<F: Field>(field: &F, want: usize) -> Result<Vec<F::El>> {
    let size = match field.size() {
        Some(q) if (q as usize) <= want => {
            warn!("field of size {q} is smaller than the requested sample set of {want}");
            q as usize - 1
        }
        _ => want,
    };
    sample_set(field, size, true)
}

fn rank_multiple<F: Field>(bu: &BlowUp<F>, a: &Mat<F::El>) -> Result<usize> {
    let field = bu.base().field_ref();
    let d = bu.degree();
    let rho = field.rank(a);
    if rho % d != 0 {
        return Err(AlgebraError::InvalidInput(format!(
            "rank {rho} is not a multiple of the degree {d}"
        )));
    }
    Ok(rho / d)
}

/// One step of the driver from a matrix `A` of rank `rd` in the blow-up of
/// degree `d`, with `d' > r`.
pub fn increment_rank<F: Field, G: Rng>(
    bu: &BlowUp<F>,
    a: &Mat<F::El>,
    d_next: usize,
    config: &RoundUpConfig,
    rng: &mut G,
) -> Result<Increment<F>> {
    let r = rank_multiple(bu, a)?;
    if r == bu.n() {
        return Err(AlgebraError::InvalidInput("matrix is already nonsingular".into()));
    }
    let wong = second_wong(bu.base().field_ref(), a, bu, Some(r + 1))?;
    increment_with(bu, a, r, &wong, d_next, config, rng)
}

fn increment_with<F: Field, G: Rng>(
    bu: &BlowUp<F>,
    a: &Mat<F::El>,
    r: usize,
    wong: &WongResult<F::El>,
    d_next: usize,
    config: &RoundUpConfig,
    rng: &mut G,
) -> Result<Increment<F>> {
    let field = bu.base().field_ref();
    let d = bu.degree();
    if d_next <= r {
        return Err(AlgebraError::InvalidInput(format!(
            "new degree factor {d_next} must exceed the rank {r}"
        )));
    }
    if wong.contained_in_image() {
        let u = wong.witness.clone().expect("contained verdict carries a witness");
        return Ok(Increment::Shrunk(u));
    }
    if wong.first_escape().is_none() {
        return Err(AlgebraError::Internal(format!(
            "Wong sequence neither escaped nor stabilized within {} steps",
            r + 1
        )));
    }
    let chain = wong_chain(field, a, bu, wong)?;
    let l = chain.cs.len();
    debug!("increment at d = {d}, r = {r}: chain of length {l}, d' = {d_next}");
    if l > d_next {
        return Err(AlgebraError::Internal(format!("chain length {l} exceeds d' = {d_next}")));
    }
    // Z_i sends u_i to u_(i+1); the last one wraps only when l = d'
    let mut c_next = Mat::zeros(field, a.rows() * d_next, a.cols() * d_next);
    for (i, c) in chain.cs.iter().enumerate() {
        let z = Mat::unit(field, d_next, d_next, (i + 1) % d_next, i);
        c_next = c_next.add(field, &c.kron(field, &z));
    }
    let a_next = a.kron(field, &Mat::identity(field, d_next));
    let bu_next = BlowUp::new(bu.base().clone(), d * d_next)?;
    let rows = bu_next.n() * bu_next.degree();
    let samples = nonzero_samples(field, config.sample_count(rows))?;
    let lifted = pencil_max_rank(field, &a_next, &c_next, r * d * d_next, &samples)?;
    let raised = round_up_rank(&bu_next, &lifted, config, rng)?;
    let rank = field.rank(&raised);
    if rank < (r + 1) * d * d_next {
        return Err(AlgebraError::Internal(format!(
            "increment reached rank {rank}, expected at least {}",
            (r + 1) * d * d_next
        )));
    }
    Ok(Increment::Raised {
        bu: bu_next,
        a: raised,
        rank,
    })
}

/// `r + 1`, or `r + 2` when the characteristic divides `r + 1`.
pub fn next_degree_factor(characteristic: u64, r: usize) -> usize {
    let p = characteristic as usize;
    let d = if p != 0 && (r + 1) % p == 0 { r + 2 } else { r + 1 };
    assert!(p == 0 || d % p != 0, "consecutive integers cannot both be divisible by {p}");
    d
}

/// The best of `trials` random combinations, improved greedily along each
/// basis matrix.
fn starting_matrix<F: Field, G: Rng>(space: &MatrixSpace<F>, config: &NcrkConfig, rng: &mut G) -> Result<Mat<F::El>> {
    let field = space.field_ref();
    let n = space.n();
    let est = space.commutative_rank_estimate(config.trials, config.sample_size, rng);
    let mut a = space.combine(&est.coeffs)?;
    let mut rank = est.rank;
    if rank < n {
        let samples = nonzero_samples(field, (n + 1).max(64))?;
        for b in space.basis() {
            if let Ok(m) = pencil_max_rank(field, &a, b, rank, &samples) {
                a = m;
                rank = field.rank(&a);
                if rank == n {
                    break;
                }
            }
        }
    }
    Ok(a)
}

/// Computes the non-commutative rank with matching certificates.
pub fn ncrk_main<F: Field>(space: &MatrixSpace<F>, seed: u64, config: &NcrkConfig) -> Result<NcrkResult<F::El>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = space.field_ref();
    let n = space.n();
    let (reduced, idx) = space.reduced();

    // certificates are expressed in the caller's basis
    let expand = |blocks: Vec<Mat<F::El>>, d: usize| -> Vec<Mat<F::El>> {
        let mut out = vec![Mat::zeros(field, d, d); space.len()];
        for (b, &i) in blocks.into_iter().zip(&idx) {
            out[i] = b;
        }
        out
    };

    let zero_cert = || FullCert {
        degree: 1,
        coeffs: vec![Mat::zeros(field, 1, 1); space.len()],
        achieved_rank: 0,
    };
    if n == 0 {
        return Ok(NcrkResult {
            ncrk: 0,
            n,
            rank_cert: zero_cert(),
            shrunk: None,
            trace: vec![(1, 0)],
            start_rank: 0,
        });
    }
    if reduced.is_empty() {
        let w = ShrunkWitness::from_subspace(space, Subspace::full(field, n))?;
        return Ok(NcrkResult {
            ncrk: 0,
            n,
            rank_cert: zero_cert(),
            shrunk: Some(w),
            trace: vec![(1, 0)],
            start_rank: 0,
        });
    }

    let mut a = starting_matrix(&reduced, config, &mut rng)?;
    let mut bu = BlowUp::new(reduced.clone(), 1)?;
    let mut r = field.rank(&a);
    let start_rank = r;
    let mut trace = vec![(1, r)];
    info!("ncrk: n = {n}, starting rank {r}");

    loop {
        let d = bu.degree();
        if r == n {
            let blocks = bu.coordinates(&a).expect("driver matrices lie in the blow-up");
            let result = NcrkResult {
                ncrk: n,
                n,
                rank_cert: FullCert {
                    degree: d,
                    coeffs: expand(blocks, d),
                    achieved_rank: n * d,
                },
                shrunk: None,
                trace,
                start_rank,
            };
            return check(space, result);
        }
        let wong = second_wong(field, &a, &bu, Some(r + 1))?;
        if wong.contained_in_image() {
            let u = wong.witness.clone().expect("contained verdict carries a witness");
            let w = descend_witness(&bu, &u)?;
            let w = ShrunkWitness::from_subspace(space, w.u)?;
            if w.c != n - r {
                return Err(AlgebraError::Internal(format!(
                    "descended witness has c = {}, expected {}",
                    w.c,
                    n - r
                )));
            }
            let blocks = bu.coordinates(&a).expect("driver matrices lie in the blow-up");
            let result = NcrkResult {
                ncrk: r,
                n,
                rank_cert: FullCert {
                    degree: d,
                    coeffs: expand(blocks, d),
                    achieved_rank: r * d,
                },
                shrunk: Some(w),
                trace,
                start_rank,
            };
            return check(space, result);
        }
        let d_next = next_degree_factor(field.characteristic(), r);
        let rows = n * d * d_next;
        if rows > config.cap_dim {
            return Err(AlgebraError::CapExceeded {
                rows,
                cap: config.cap_dim,
                best_rank: r,
            });
        }
        match increment_with(&bu, &a, r, &wong, d_next, &config.round_up, &mut rng)? {
            Increment::Shrunk(_) => unreachable!("escape verdict was checked above"),
            Increment::Raised { bu: b2, a: a2, rank } => {
                let d2 = b2.degree();
                let r2 = rank / d2;
                debug_assert_eq!(rank % d2, 0);
                info!("ncrk: degree {d} -> {d2}, rank {r} -> {r2}");
                trace.push((d2, r2));
                bu = b2;
                a = a2;
                r = r2;
            }
        }
    }
}

fn check<E: Clone + PartialEq, F: Field<El = E>>(space: &MatrixSpace<F>, result: NcrkResult<E>) -> Result<NcrkResult<E>> {
    if !result.verify(space)? {
        return Err(AlgebraError::Internal("certificate failed re-verification".into()));
    }
    Ok(result)
}

#[derive(Debug, Clone, PartialEq)]
pub enum NullconeVerdict<E> {
    /// A nonsingular blow-up element.
    NotInNullcone(FullCert<E>),
    /// Every trial was singular.
    InNullcone {
        d_max: usize,
        trials: usize,
        /// Probability bound of missing a nonsingular element at `d_max`.
        failure_bound: f64,
        /// Whether `d_max` reaches the degree bound `(n+1)!`.
        definitive: bool,
    },
}

/// Looks for a nonsingular element in the blow-ups of degree `1..=d_max`.
pub fn nullcone_test_randomized<F: Field>(
    space: &MatrixSpace<F>,
    d_max: usize,
    trials: usize,
    seed: u64,
    sample_size: u64,
) -> Result<NullconeVerdict<F::El>> {
    if d_max == 0 {
        return Err(AlgebraError::InvalidInput("d_max must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = space.field_ref();
    let n = space.n();
    for d in 1..=d_max {
        let bu = BlowUp::new(space.clone(), d)?;
        for _ in 0..trials.max(1) {
            let coeffs = bu.random_coeffs(sample_size, &mut rng);
            let m = bu.element(&coeffs)?;
            if field.rank(&m) == n * d {
                return Ok(NullconeVerdict::NotInNullcone(FullCert {
                    degree: d,
                    coeffs,
                    achieved_rank: n * d,
                }));
            }
        }
    }
    let s = effective_sample(field, sample_size);
    let factorial = (1..=n + 1).try_fold(1usize, |acc, k| acc.checked_mul(k));
    Ok(NullconeVerdict::InNullcone {
        d_max,
        trials,
        failure_bound: failure_bound(n * d_max, s, trials),
        definitive: factorial.is_some_and(|f| d_max >= f),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, Rationals};

    fn f() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }

    fn skew3<F: Field>(f: &F) -> MatrixSpace<F> {
        let m = |i, j| {
            let mut a = Mat::unit(f, 3, 3, i, j);
            a[(j, i)] = f.from_int(-1);
            a
        };
        MatrixSpace::new(f.clone(), 3, vec![m(0, 1), m(0, 2), m(1, 2)]).unwrap()
    }

    #[test]
    fn degree_factor() {
        assert_eq!(next_degree_factor(0, 2), 3);
        assert_eq!(next_degree_factor(3, 2), 4);
        assert_eq!(next_degree_factor(2, 1), 3);
        assert_eq!(next_degree_factor(2, 2), 3);
    }

    #[test]
    fn identity_is_full() {
        let f = f();
        let s = MatrixSpace::new(f, 3, vec![Mat::identity(&f, 3)]).unwrap();
        let r = ncrk_main(&s, 1, &NcrkConfig::default()).unwrap();
        assert_eq!(r.ncrk, 3);
        assert_eq!(r.rank_cert.degree, 1);
        assert!(r.shrunk.is_none());
    }

    #[test]
    fn e11_is_shrunk() {
        let f = f();
        let s = MatrixSpace::new(f, 2, vec![Mat::unit(&f, 2, 2, 0, 0)]).unwrap();
        let r = ncrk_main(&s, 1, &NcrkConfig::default()).unwrap();
        assert_eq!(r.ncrk, 1);
        // the Wong limit is 0, so the witness is ker E11 itself
        let w = r.shrunk.unwrap();
        assert_eq!((w.u, w.w, w.c), (Subspace::span(&f, 2, &[vec![0, 1]]), Subspace::zero(2), 1));
    }

    #[test]
    fn skew_is_full_over_both_fields() {
        let r = ncrk_main(&skew3(&f()), 7, &NcrkConfig::default()).unwrap();
        assert_eq!((r.ncrk, r.start_rank), (3, 2));
        assert_eq!(r.trace, vec![(1, 2), (3, 3)]);
        assert!(r.verify(&skew3(&f())).unwrap());

        let r = ncrk_main(&skew3(&Rationals), 7, &NcrkConfig::default()).unwrap();
        assert_eq!(r.ncrk, 3);
    }

    #[test]
    fn skew_increment_certifies_full_rank() {
        let f = f();
        let s = skew3(&f);
        let bu = BlowUp::new(s.clone(), 1).unwrap();
        let a = s.basis()[0].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        match increment_rank(&bu, &a, 3, &RoundUpConfig::default(), &mut rng).unwrap() {
            Increment::Raised { bu, a, rank } => {
                assert_eq!((bu.degree(), rank), (3, 9));
                assert!(bu.coordinates(&a).is_some());
            }
            Increment::Shrunk(_) => panic!("skew space has no shrunk subspace"),
        }
    }

    #[test]
    fn e11_increment_returns_witness() {
        let f = f();
        let s = MatrixSpace::new(f, 2, vec![Mat::unit(&f, 2, 2, 0, 0)]).unwrap();
        let bu = BlowUp::new(s.clone(), 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        match increment_rank(&bu, &s.basis()[0], 2, &RoundUpConfig::default(), &mut rng).unwrap() {
            Increment::Shrunk(u) => assert_eq!(u, Subspace::span(&f, 2, &[vec![0, 1]])),
            Increment::Raised { .. } => panic!("expected a witness"),
        }
        assert!(matches!(
            increment_rank(&bu, &Mat::identity(&f, 2), 3, &RoundUpConfig::default(), &mut rng),
            Err(AlgebraError::InvalidInput(_))
        ));
    }

    #[test]
    fn zero_space() {
        let f = f();
        let s = MatrixSpace::new(f, 2, vec![Mat::zeros(&f, 2, 2)]).unwrap();
        let r = ncrk_main(&s, 0, &NcrkConfig::default()).unwrap();
        assert_eq!(r.ncrk, 0);
        assert_eq!(r.shrunk.unwrap().c, 2);
    }

    #[test]
    fn diagonal_pair_needs_a_raise() {
        let f = f();
        let s = MatrixSpace::new(f, 2, vec![Mat::unit(&f, 2, 2, 0, 0), Mat::unit(&f, 2, 2, 1, 1)]).unwrap();
        let bu = BlowUp::new(s.clone(), 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        match increment_rank(&bu, &s.basis()[0], 2, &RoundUpConfig::default(), &mut rng).unwrap() {
            Increment::Raised { rank, .. } => assert_eq!(rank, 4),
            Increment::Shrunk(_) => panic!("space contains the identity"),
        }
    }

    #[test]
    fn cap_is_enforced() {
        let f = f();
        let cfg = NcrkConfig {
            cap_dim: 5,
            ..NcrkConfig::default()
        };
        assert_eq!(
            ncrk_main(&skew3(&f), 7, &cfg),
            Err(AlgebraError::CapExceeded {
                rows: 9,
                cap: 5,
                best_rank: 2
            })
        );
    }

    #[test]
    fn nullcone_examples() {
        let f = f();
        let id = MatrixSpace::new(f, 2, vec![Mat::identity(&f, 2)]).unwrap();
        match nullcone_test_randomized(&id, 3, 4, 1, 1 << 32).unwrap() {
            NullconeVerdict::NotInNullcone(c) => assert_eq!(c.degree, 1),
            v => panic!("{v:?}"),
        }
        let e = MatrixSpace::new(f, 2, vec![Mat::unit(&f, 2, 2, 0, 0), Mat::unit(&f, 2, 2, 0, 1)]).unwrap();
        match nullcone_test_randomized(&e, 3, 4, 1, 1 << 32).unwrap() {
            NullconeVerdict::InNullcone { definitive, .. } => assert!(!definitive),
            v => panic!("{v:?}"),
        }
        match nullcone_test_randomized(&skew3(&f), 3, 4, 1, 1 << 32).unwrap() {
            NullconeVerdict::NotInNullcone(c) => {
                assert_eq!(c.degree, 2);
                assert!(c.verify(&skew3(&f)).unwrap());
            }
            v => panic!("{v:?}"),
        }
    }
}
