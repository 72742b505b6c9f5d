use super::Mat;
use crate::exactfield::{Poly, PolyRing, Ring};

/// `det(xI - A)` by Berkowitz's recurrence. Uses only ring additions and
/// multiplications, so it works over rings with zero divisors.
pub fn charpoly_division_free<R: Ring>(ring: &R, a: &Mat<R::El>) -> Poly<R::El> {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let pr = PolyRing::new(ring.clone());
    let mut c = charpoly_coeffs_desc(ring, a);
    c.reverse();
    pr.from_coeffs(c)
}

/// Coefficients of `det(xI - A)` from `x^n` down to `x^0`.
pub(crate) fn charpoly_coeffs_desc<R: Ring>(ring: &R, a: &Mat<R::El>) -> Vec<R::El> {
    let n = a.rows();
    let mut p = vec![ring.one()];
    for r in 0..n {
        // A_{r+1} = [[M, C], [R, a]] with M the leading r x r block.
        let arr = &a[(r, r)];
        // t = (1, -a, -R C, -R M C, ..., -R M^{r-1} C)
        let mut t = Vec::with_capacity(r + 2);
        t.push(ring.one());
        t.push(ring.neg(arr));
        let mut v: Vec<R::El> = (0..r).map(|i| a[(i, r)].clone()).collect();
        for k in 0..r {
            let mut s = ring.zero();
            for (j, x) in v.iter().enumerate() {
                ring.mul_add_assign(&mut s, &a[(r, j)], x);
            }
            t.push(ring.neg(&s));
            if k + 1 < r {
                v = (0..r)
                    .map(|i| {
                        let mut acc = ring.zero();
                        for (j, x) in v.iter().enumerate() {
                            let m = &a[(i, j)];
                            if !ring.is_zero(m) && !ring.is_zero(x) {
                                ring.mul_add_assign(&mut acc, m, x);
                            }
                        }
                        acc
                    })
                    .collect();
            }
        }
        // p_new = T p where T is the (r+2) x (r+1) lower-triangular Toeplitz
        // matrix with first column t.
        let mut q = vec![ring.zero(); r + 2];
        for (i, qi) in q.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate().take(i + 1) {
                let tij = &t[i - j];
                if !ring.is_zero(tij) && !ring.is_zero(pj) {
                    ring.mul_add_assign(qi, tij, pj);
                }
            }
        }
        p = q;
    }
    p
}
