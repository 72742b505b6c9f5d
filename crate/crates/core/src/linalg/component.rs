use super::charpoly::charpoly_coeffs_desc;
use super::Mat;
use crate::error::{AlgebraError, Result};
use crate::exactfield::{PolyRing, Ring};

/// Maximum rank of `b` over the field components of `ring`, for square `b`.
pub fn component_max_rank<R: Ring>(ring: &R, b: &Mat<R::El>) -> Result<usize> {
    if !b.is_square() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "component rank of a {}x{} matrix",
            b.rows(),
            b.cols()
        )));
    }
    Ok(mulmuley_rank(ring, b))
}

/// `[[0, B], [B^T, 0]]`, symmetric of rank `2 rk(B)` in every component.
fn symmetrize<R: Ring>(ring: &R, b: &Mat<R::El>) -> Mat<R::El> {
    let (r, c) = (b.rows(), b.cols());
    Mat::from_fn(r + c, r + c, |i, j| match (i < r, j < r) {
        (true, false) => b[(i, j - r)].clone(),
        (false, true) => b[(j, i - r)].clone(),
        _ => ring.zero(),
    })
}

/// The exponent of the lowest power of `x` with a nonzero coefficient in
/// a descending coefficient list of degree `n`.
fn x_valuation<E>(desc: &[E], is_zero: impl Fn(&E) -> bool) -> usize {
    let n = desc.len() - 1;
    (0..=n).find(|&k| !is_zero(&desc[n - k])).unwrap_or(n)
}

/// Mulmuley's rank: with `D = diag(1, y, y^2, ...)` the characteristic
/// polynomial of `D B'` has `x^(N - rk)` as its exact lowest power in each
/// component, computed over `R[y]` without division. Works for any shape.
pub fn mulmuley_rank<R: Ring>(ring: &R, b: &Mat<R::El>) -> usize {
    let size = b.rows() + b.cols();
    if size == 0 || b.is_zero(ring) {
        return 0;
    }
    let py = PolyRing::new(ring.clone());
    let bp = symmetrize(ring, b);
    let a = Mat::from_fn(size, size, |i, j| py.monomial(bp[(i, j)].clone(), i));
    let desc = charpoly_coeffs_desc(&py, &a);
    let m = x_valuation(&desc, |p| py.is_zero(p));
    (size - m) / 2
}

/// [`mulmuley_rank`] with `y` specialized to `y0`. Never exceeds the true
/// maximum component rank, and equals it unless `y0` is a root of a fixed
/// nonzero polynomial.
pub fn mulmuley_rank_at<R: Ring>(ring: &R, b: &Mat<R::El>, y0: &R::El) -> usize {
    let size = b.rows() + b.cols();
    if size == 0 || b.is_zero(ring) {
        return 0;
    }
    let bp = symmetrize(ring, b);
    let mut yp = ring.one();
    let mut a = bp;
    for i in 0..size {
        for x in a.row_mut(i) {
            *x = ring.mul(x, &yp);
        }
        yp = ring.mul(&yp, y0);
    }
    let desc = charpoly_coeffs_desc(ring, &a);
    let m = x_valuation(&desc, |p| ring.is_zero(p));
    (size - m).div_ceil(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, RankRing, UnityRing};

    #[test]
    fn examples() {
        let f = PrimeField::new(7).unwrap();
        for d in 1..=4 {
            let r = UnityRing::new(f, d).unwrap();
            assert_eq!(component_max_rank(&r, &Mat::identity(&r, 3)).unwrap(), 3);
            assert_eq!(component_max_rank(&r, &Mat::zeros(&r, 3, 3)).unwrap(), 0);
        }
        let r = UnityRing::new(f, 2).unwrap();
        let m = Mat::from_rows(vec![
            vec![r.sub(&r.zeta(), &r.one()), r.zero()],
            vec![r.zero(), r.one()],
        ]);
        assert_eq!(component_max_rank(&r, &m).unwrap(), 2);
        assert!(component_max_rank(&r, &Mat::zeros(&r, 2, 3)).is_err());
    }

    #[test]
    fn field_rank_agrees() {
        let f = PrimeField::new(101).unwrap();
        let m = Mat::from_rows(vec![vec![1u64, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(mulmuley_rank(&f, &m), 2);
        assert_eq!(mulmuley_rank_at(&f, &m, &5), 2);
        let rect = Mat::from_rows(vec![vec![1u64, 0, 0, 1], vec![0, 1, 1, 0]]);
        assert_eq!(mulmuley_rank(&f, &rect), 2);
    }

    #[test]
    fn max_over_split_components() {
        // F_5, d = 4: components zeta -> 2 and zeta -> 3.
        let f = PrimeField::new(5).unwrap();
        let r = UnityRing::new(f, 4).unwrap();
        let z2 = r.sub(&r.zeta(), &r.from_int(2));
        let z3 = r.sub(&r.zeta(), &r.from_int(3));
        // diag(z-2, z-3): rank 1 in each component, never 2.
        let m = Mat::from_rows(vec![vec![z2.clone(), r.zero()], vec![r.zero(), z3.clone()]]);
        assert_eq!(component_max_rank(&r, &m).unwrap(), 1);
        assert_eq!(r.max_rank(&m), 1);
        // diag(z-2, z-2): rank 2 where zeta = 3.
        let m = Mat::from_rows(vec![vec![z2.clone(), r.zero()], vec![r.zero(), z2]]);
        assert_eq!(component_max_rank(&r, &m).unwrap(), 2);
        assert_eq!(r.max_rank(&m), 2);
    }
}
