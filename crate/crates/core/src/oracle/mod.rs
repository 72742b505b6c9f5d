//! Brute-force reference computations for small instances.
//!
//! `enumerate_shrunk` visits every subspace of `F_q^n` once, through its
//! reduced row echelon form. Over a large field the same walk restricted to
//! echelon entries from a fixed anchor set still yields valid (if weaker)
//! upper bounds. Lower bounds come from random blow-up elements.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::exactfield::{Field, FieldDesc};
use crate::linalg::{Mat, Subspace};
use crate::mspace::{BlowUp, MatrixSpace, ShrunkWitness, SpaceLike};

/// Default bound on the number of subspaces or combinations visited.
pub const DEFAULT_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ShrunkSearch<E> {
    /// Largest `c` found; `0` when no subspace shrinks.
    pub c: usize,
    /// The first maximizer in enumeration order, when `c > 0`.
    pub witness: Option<ShrunkWitness<E>>,
    pub visited: u64,
}

/// Number of echelon forms with entries from a set of `v` values.
pub fn echelon_count(n: usize, v: u64) -> u64 {
    let mut total: u64 = 0;
    for pivots in all_pivot_sets(n) {
        total = total.saturating_add(v.saturating_pow(free_positions(n, &pivots).len() as u32));
    }
    total
}

fn all_pivot_sets(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect()
}

/// `(row, col)` positions of an echelon form that are free to vary.
fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        for j in p + 1..n {
            if !pivots.contains(&j) {
                out.push((r, j));
            }
        }
    }
    out
}

/// Calls `visit` on every subspace whose reduced echelon entries lie in
/// `values` (which must contain zero and one), largest dimension first.
pub fn for_each_echelon_subspace<F: Field>(
    field: &F,
    n: usize,
    values: &[F::El],
    limit: u64,
    mut visit: impl FnMut(Subspace<F::El>),
) -> Result<u64> {
    let count = echelon_count(n, values.len() as u64);
    if count > limit {
        return Err(AlgebraError::InstanceTooLarge(format!(
            "{count} subspaces of F^{n} exceed the enumeration limit {limit}"
        )));
    }
    let mut sets = all_pivot_sets(n);
    sets.sort_by_key(|s| (std::cmp::Reverse(s.len()), s.clone()));
    for pivots in sets {
        let free = free_positions(n, &pivots);
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut rows: Vec<Vec<F::El>> = pivots
                .iter()
                .map(|&p| {
                    let mut v = vec![field.zero(); n];
                    v[p] = field.one();
                    v
                })
                .collect();
            for (&(r, j), &dg) in free.iter().zip(&digits) {
                rows[r][j] = values[dg].clone();
            }
            visit(Subspace::span(field, n, &rows));
            // odometer
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if digits[k] < values.len() {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
    }
    Ok(count)
}

fn best_shrunk<F: Field>(space: &MatrixSpace<F>, values: &[F::El], limit: u64) -> Result<ShrunkSearch<F::El>> {
    let field = space.field_ref();
    let mut best: ShrunkSearch<F::El> = ShrunkSearch {
        c: 0,
        witness: None,
        visited: 0,
    };
    let mut err = None;
    best.visited = for_each_echelon_subspace(field, space.n(), values, limit, |u| {
        if err.is_some() {
            return;
        }
        match space.apply(&u) {
            Ok(w) => {
                let c = u.dim().saturating_sub(w.dim());
                if c > best.c {
                    best.c = c;
                    best.witness = Some(ShrunkWitness { u, w, c });
                }
            }
            Err(e) => err = Some(e),
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(best),
    }
}

/// All subspaces of `F_q^n`: the largest `c` with a `c`-shrunk subspace.
pub fn enumerate_shrunk<F: Field>(space: &MatrixSpace<F>, limit: u64) -> Result<ShrunkSearch<F::El>> {
    let field = space.field_ref();
    let q = field.size().ok_or_else(|| {
        AlgebraError::InstanceTooLarge("exhaustive enumeration needs a finite field".into())
    })?;
    if q > limit {
        return Err(AlgebraError::InstanceTooLarge(format!("field of size {q} is too large to enumerate")));
    }
    let values: Vec<F::El> = (0..q).map(|i| field.element(i)).collect();
    best_shrunk(space, &values, limit)
}

/// Subspaces whose echelon entries come from `anchors` (zero and one are
/// added). Any witness found is valid over the full field.
pub fn enumerate_shrunk_anchored<F: Field>(
    space: &MatrixSpace<F>,
    anchors: &[F::El],
    limit: u64,
) -> Result<ShrunkSearch<F::El>> {
    let field = space.field_ref();
    let mut values = vec![field.zero(), field.one()];
    for a in anchors {
        if !values.contains(a) {
            values.push(a.clone());
        }
    }
    best_shrunk(space, &values, limit)
}

/// Maximum rank over all `q^m` combinations, with every combination that
/// attains it.
pub fn exhaustive_max_rank<F: Field>(space: &MatrixSpace<F>, limit: u64) -> Result<(usize, Vec<Mat<F::El>>)> {
    let field = space.field_ref();
    let q = field
        .size()
        .ok_or_else(|| AlgebraError::InstanceTooLarge("exhaustive rank needs a finite field".into()))?;
    let m = space.len();
    let total = q.checked_pow(m as u32).filter(|&t| t <= limit).ok_or_else(|| {
        AlgebraError::InstanceTooLarge(format!("{q}^{m} combinations exceed the limit {limit}"))
    })?;
    let mut best = 0;
    let mut best_mats = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let coeffs: Vec<F::El> = (0..m)
            .map(|_| {
                let c = field.element(rest % q);
                rest /= q;
                c
            })
            .collect();
        let a = space.combine(&coeffs)?;
        let r = field.rank(&a);
        if r > best {
            best = r;
            best_mats.clear();
        }
        if r == best {
            best_mats.push(a);
        }
    }
    Ok((best, best_mats))
}

/// Maximum rank over all `q^m` combinations.
pub fn exhaustive_rank<F: Field>(space: &MatrixSpace<F>, limit: u64) -> Result<usize> {
    Ok(exhaustive_max_rank(space, limit)?.0)
}

/// Largest rank seen over `trials` random elements of the degree-`d`
/// blow-up.
pub fn blowup_rank_search<F: Field>(space: &MatrixSpace<F>, d: usize, trials: usize, seed: u64, sample_size: u64) -> Result<usize> {
    let bu = BlowUp::new(space.clone(), d)?;
    let field = space.field_ref();
    let full = space.n() * d;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let m = bu.element(&bu.random_coeffs(sample_size, &mut rng))?;
        best = best.max(field.rank(&m));
        if best == full {
            break;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport<E> {
    /// `n - c` for the best shrunk subspace found.
    pub ncrk_upper: usize,
    /// `max_d ceil(rk(B^[d]) / d)` over the sampled degrees.
    pub ncrk_lower: usize,
    /// Lower bound on the commutative rank.
    pub rank_lower: usize,
    pub enumeration_field: FieldDesc,
    /// Whether every subspace was visited (otherwise anchored).
    pub exhaustive: bool,
    pub witness: Option<ShrunkWitness<E>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub d_cap: usize,
    pub trials: usize,
    pub sample_size: u64,
    pub limit: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            d_cap: 3,
            trials: 16,
            sample_size: 1 << 32,
            limit: DEFAULT_LIMIT,
        }
    }
}

/// One-sided bounds on the non-commutative and commutative ranks. Small
/// fields are enumerated in full; larger ones use the anchors
/// `{0, 1, -1, 2}`.
pub fn oracle_report<F: Field>(space: &MatrixSpace<F>, seed: u64, config: &OracleConfig) -> Result<OracleReport<F::El>> {
    let field = space.field_ref();
    let n = space.n();
    let full = field
        .size()
        .is_some_and(|q| echelon_count(n, q) <= config.limit);
    let search = if full {
        enumerate_shrunk(space, config.limit)?
    } else {
        let anchors = [field.from_int(-1), field.from_int(2)];
        enumerate_shrunk_anchored(space, &anchors, config.limit)?
    };
    let mut lower = 0;
    let mut blowup1 = 0;
    for d in 1..=config.d_cap.max(1) {
        let rk = blowup_rank_search(space, d, config.trials, seed.wrapping_add(d as u64), config.sample_size)?;
        if d == 1 {
            blowup1 = rk;
        }
        lower = lower.max(rk.div_ceil(d));
        if lower == n - search.c {
            break;
        }
    }
    let exhaustive_ok = field
        .size()
        .and_then(|q| q.checked_pow(space.len() as u32))
        .is_some_and(|t| t <= config.limit);
    let rank_lower = if exhaustive_ok {
        exhaustive_rank(space, config.limit)?
    } else {
        blowup1
    };
    Ok(OracleReport {
        ncrk_upper: n - search.c,
        ncrk_lower: lower,
        rank_lower,
        enumeration_field: field.descriptor(),
        exhaustive: full,
        witness: search.witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, Ring};
    use crate::mspace::verify_shrunk;

    fn skew3(f: &PrimeField) -> MatrixSpace<PrimeField> {
        let m = |i, j| {
            let mut a = Mat::unit(f, 3, 3, i, j);
            a[(j, i)] = f.from_int(-1);
            a
        };
        MatrixSpace::new(*f, 3, vec![m(0, 1), m(0, 2), m(1, 2)]).unwrap()
    }

    #[test]
    fn subspace_counts() {
        // Gaussian binomial sums: F_2^3 has 16 subspaces, F_3^2 has 6
        assert_eq!(echelon_count(3, 2), 16);
        assert_eq!(echelon_count(2, 3), 6);
        let f = PrimeField::new(2).unwrap();
        let mut seen = Vec::new();
        for_each_echelon_subspace(&f, 3, &[0, 1], 100, |u| seen.push(u)).unwrap();
        assert_eq!(seen.len(), 16);
        for i in 0..seen.len() {
            for j in 0..i {
                assert_ne!(seen[i], seen[j]);
            }
        }
    }

    #[test]
    fn shrunk_examples() {
        let f2 = PrimeField::new(2).unwrap();
        let id = MatrixSpace::new(f2, 3, vec![Mat::identity(&f2, 3)]).unwrap();
        assert_eq!(enumerate_shrunk(&id, DEFAULT_LIMIT).unwrap().c, 0);

        let e11 = MatrixSpace::new(f2, 2, vec![Mat::unit(&f2, 2, 2, 0, 0)]).unwrap();
        let s = enumerate_shrunk(&e11, DEFAULT_LIMIT).unwrap();
        assert_eq!(s.c, 1);
        let w = s.witness.unwrap();
        assert_eq!((w.u.clone(), w.w.clone()), (Subspace::full(&f2, 2), Subspace::span(&f2, 2, &[vec![1, 0]])));
        assert!(verify_shrunk(&e11, &w).unwrap());

        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(enumerate_shrunk(&skew3(&f3), DEFAULT_LIMIT).unwrap().c, 0);
    }

    #[test]
    fn rank_examples() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(exhaustive_rank(&skew3(&f3), DEFAULT_LIMIT).unwrap(), 2);
        let f2 = PrimeField::new(2).unwrap();
        let id = MatrixSpace::new(f2, 3, vec![Mat::identity(&f2, 3)]).unwrap();
        assert_eq!(exhaustive_rank(&id, DEFAULT_LIMIT).unwrap(), 3);
        let diag = MatrixSpace::new(f2, 2, vec![Mat::unit(&f2, 2, 2, 0, 0), Mat::unit(&f2, 2, 2, 1, 1)]).unwrap();
        let (r, mats) = exhaustive_max_rank(&diag, DEFAULT_LIMIT).unwrap();
        assert_eq!((r, mats), (2, vec![Mat::identity(&f2, 2)]));
        let big = PrimeField::new(10007).unwrap();
        assert!(matches!(
            exhaustive_rank(&skew3(&big), DEFAULT_LIMIT),
            Err(AlgebraError::InstanceTooLarge(_))
        ));
    }

    #[test]
    fn blowup_search_examples() {
        let f = PrimeField::new(10007).unwrap();
        let id = MatrixSpace::new(f, 2, vec![Mat::identity(&f, 2)]).unwrap();
        assert_eq!(blowup_rank_search(&id, 2, 4, 1, 1 << 32).unwrap(), 4);
        assert_eq!(blowup_rank_search(&skew3(&f), 2, 8, 1, 1 << 32).unwrap(), 6);
        let zero = MatrixSpace::new(f, 2, vec![Mat::zeros(&f, 2, 2)]).unwrap();
        assert_eq!(blowup_rank_search(&zero, 3, 4, 1, 1 << 32).unwrap(), 0);
    }

    #[test]
    fn reports() {
        let f = PrimeField::new(10007).unwrap();
        let r = oracle_report(&skew3(&f), 1, &OracleConfig::default()).unwrap();
        assert_eq!((r.ncrk_lower, r.ncrk_upper), (3, 3));
        assert!(!r.exhaustive);
        let e = MatrixSpace::new(f, 2, vec![Mat::unit(&f, 2, 2, 0, 0), Mat::unit(&f, 2, 2, 0, 1)]).unwrap();
        let r = oracle_report(&e, 1, &OracleConfig::default()).unwrap();
        assert_eq!((r.ncrk_lower, r.ncrk_upper), (1, 1));
        let f3 = PrimeField::new(3).unwrap();
        let r = oracle_report(&skew3(&f3), 1, &OracleConfig::default()).unwrap();
        assert!(r.exhaustive);
        assert_eq!((r.rank_lower, r.ncrk_upper), (2, 3));
    }
}
