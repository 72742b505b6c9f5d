use rand::Rng;

use super::{random_element, Field, Poly, PolyRing, RankRing, Ring};
use crate::error::{AlgebraError, Result};
use crate::linalg::{mulmuley_rank, mulmuley_rank_at, Mat};

/// `R = F[x] / g` where `g` is the gcd of `x^d - 1` and all
/// `(x^d - 1) / (x^e - 1)` for proper divisors `e` of `d`.
///
/// The image `zeta` of `x` has order exactly `d` in every component of `R`,
/// so `R` behaves like `F[zeta]` without factoring anything. Elements are
/// coefficient vectors of length `deg g`.
#[derive(Debug, Clone)]
pub struct UnityRing<F: Field> {
    base: F,
    d: usize,
    modulus: Vec<F::El>,
}

impl<F: Field> UnityRing<F> {
    pub fn new(base: F, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(AlgebraError::InvalidInput("root of unity order must be positive".into()));
        }
        let p = base.characteristic();
        if p != 0 && (d as u64) % p == 0 {
            return Err(AlgebraError::UnsupportedCharacteristic {
                characteristic: p,
                degree: d,
            });
        }
        let pr = PolyRing::new(base.clone());
        let xd1 = x_pow_minus_one(&pr, d);
        let mut g = xd1.clone();
        for e in (1..d).filter(|e| d % e == 0) {
            let (h, r) = pr.div_rem(&xd1, &x_pow_minus_one(&pr, e))?;
            debug_assert!(pr.is_zero(&r));
            g = pr.gcd(&g, &h);
        }
        let g = pr.monic(&g)?;
        Ok(UnityRing {
            base,
            d,
            modulus: g.coeffs().to_vec(),
        })
    }

    /// Order of the simulated root of unity.
    pub fn order(&self) -> usize {
        self.d
    }

    /// Number of base-field coordinates of an element (`deg g`).
    pub fn width(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Coefficients of the monic modulus `g`, constant term first.
    pub fn modulus(&self) -> &[F::El] {
        &self.modulus
    }

    pub fn base_field(&self) -> &F {
        &self.base
    }

    /// Canonical element from an arbitrary polynomial in `x`.
    pub fn from_coeffs(&self, mut c: Vec<F::El>) -> Vec<F::El> {
        let m = self.width();
        if c.len() < m {
            c.resize(m, self.base.zero());
            return c;
        }
        for k in (m..c.len()).rev() {
            let lead = c[k].clone();
            if self.base.is_zero(&lead) {
                continue;
            }
            for j in 0..m {
                let t = self.base.mul(&lead, &self.modulus[j]);
                c[k - m + j] = self.base.sub(&c[k - m + j], &t);
            }
        }
        c.truncate(m);
        c
    }

    pub fn zeta(&self) -> Vec<F::El> {
        self.zeta_pow(1)
    }

    /// `zeta^e` for any integer exponent.
    pub fn zeta_pow(&self, e: i64) -> Vec<F::El> {
        let k = e.rem_euclid(self.d as i64) as usize;
        let mut c = vec![self.base.zero(); k + 1];
        c[k] = self.base.one();
        self.from_coeffs(c)
    }

    fn poly(&self, a: &[F::El]) -> Poly<F::El> {
        PolyRing::new(self.base.clone()).from_coeffs(a.to_vec())
    }

    fn modulus_poly(&self) -> Poly<F::El> {
        self.poly(&self.modulus)
    }

    /// Inverse of `a` when `a` is a unit (nonzero in every component).
    pub(crate) fn unit_inverse(&self, a: &[F::El]) -> Option<Vec<F::El>> {
        let pr = PolyRing::new(self.base.clone());
        let (g, s) = pr.ext_gcd_mod(&self.poly(a), &self.modulus_poly());
        if g.degree() == Some(0) {
            Some(self.from_coeffs(s.coeffs().to_vec()))
        } else {
            None
        }
    }

    pub fn is_unit(&self, a: &[F::El]) -> bool {
        self.unit_inverse(a).is_some()
    }

    /// Division is deliberately unavailable: the ring may have zero
    /// divisors, and every algorithm here is arranged to avoid it.
    pub fn div(&self, _a: &[F::El], _b: &[F::El]) -> Result<Vec<F::El>> {
        Err(AlgebraError::UnsupportedOperation("division in the unity ring"))
    }

    /// The image of `a` in the component where `zeta` maps to `root`.
    /// `root` must be a root of the modulus in `F`.
    pub fn eval_at(&self, a: &[F::El], root: &F::El) -> F::El {
        let mut acc = self.base.zero();
        for c in a.iter().rev() {
            acc = self.base.mul(&acc, root);
            self.base.add_assign(&mut acc, c);
        }
        acc
    }

    /// Unit-pivot elimination. Returns the number of pivots and the residual
    /// block in which no entry is a unit. Every pivot is nonzero in every
    /// component, so the component ranks of the input are the pivot count
    /// plus those of the residual.
    fn unit_eliminate(&self, m: &Mat<Vec<F::El>>) -> (usize, Mat<Vec<F::El>>) {
        let mut a: Vec<Vec<Vec<F::El>>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        let mut rows: Vec<usize> = (0..m.rows()).collect();
        let mut cols: Vec<usize> = (0..m.cols()).collect();
        let mut pivots = 0;
        loop {
            let mut found = None;
            'search: for (ri, &i) in rows.iter().enumerate() {
                for (ci, &j) in cols.iter().enumerate() {
                    if self.is_zero(&a[i][j]) {
                        continue;
                    }
                    if let Some(inv) = self.unit_inverse(&a[i][j]) {
                        found = Some((ri, ci, inv));
                        break 'search;
                    }
                }
            }
            let Some((ri, ci, inv)) = found else { break };
            let pi = rows.swap_remove(ri);
            let pj = cols.swap_remove(ci);
            let prow: Vec<Vec<F::El>> = cols.iter().map(|&j| a[pi][j].clone()).collect();
            for &k in &rows {
                if self.is_zero(&a[k][pj]) {
                    continue;
                }
                let f = self.mul(&a[k][pj], &inv);
                for (t, &j) in cols.iter().enumerate() {
                    let s = self.mul(&f, &prow[t]);
                    a[k][j] = self.sub(&a[k][j], &s);
                }
                a[k][pj] = self.zero();
            }
            pivots += 1;
        }
        rows.sort_unstable();
        cols.sort_unstable();
        let residual = Mat::from_fn(rows.len(), cols.len(), |i, j| a[rows[i]][cols[j]].clone());
        (pivots, residual)
    }
}

fn x_pow_minus_one<F: Field>(pr: &PolyRing<F>, e: usize) -> Poly<F::El> {
    let b = pr.base();
    pr.sub(&pr.monomial(b.one(), e), &pr.one())
}

impl<F: Field> Ring for UnityRing<F> {
    type El = Vec<F::El>;

    fn zero(&self) -> Self::El {
        vec![self.base.zero(); self.width()]
    }

    fn one(&self) -> Self::El {
        self.embed(&self.base.one())
    }

    fn from_int(&self, v: i64) -> Self::El {
        self.embed(&self.base.from_int(v))
    }

    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::El) -> Self::El {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let m = self.width();
        if m == 1 {
            return vec![self.base.mul(&a[0], &b[0])];
        }
        let mut c = vec![self.base.zero(); 2 * m - 1];
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                self.base.mul_add_assign(&mut c[i + j], x, y);
            }
        }
        self.from_coeffs(c)
    }

    fn is_zero(&self, a: &Self::El) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
}

impl<F: Field> RankRing for UnityRing<F> {
    type Base = F;

    fn base(&self) -> &F {
        &self.base
    }

    fn embed(&self, a: &F::El) -> Self::El {
        let mut v = self.zero();
        v[0] = a.clone();
        v
    }

    fn scale(&self, a: &Self::El, s: &F::El) -> Self::El {
        a.iter().map(|x| self.base.mul(x, s)).collect()
    }

    fn max_rank(&self, m: &Mat<Self::El>) -> usize {
        let (pivots, residual) = self.unit_eliminate(m);
        if residual.is_zero_with(|x| self.is_zero(x)) {
            return pivots;
        }
        pivots + mulmuley_rank(self, &residual)
    }

    fn max_rank_probe<G: Rng>(&self, m: &Mat<Self::El>, sample_size: u64, rng: &mut G) -> usize {
        let (pivots, residual) = self.unit_eliminate(m);
        if residual.is_zero_with(|x| self.is_zero(x)) {
            return pivots;
        }
        let y0 = self.embed(&random_element(&self.base, sample_size, rng));
        pivots + mulmuley_rank_at(self, &residual, &y0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, Rationals};

    #[test]
    fn trivial_order_one() {
        let r = UnityRing::new(PrimeField::new(7).unwrap(), 1).unwrap();
        assert_eq!(r.width(), 1);
        assert_eq!(r.zeta(), r.one());
    }

    #[test]
    fn order_four_over_f5_splits() {
        let f5 = PrimeField::new(5).unwrap();
        let r = UnityRing::new(f5, 4).unwrap();
        // g = x^2 + 1, roots 2 and 3
        assert_eq!(r.modulus(), &[1, 0, 1]);
        let z = r.zeta();
        assert_eq!(r.mul(&z, &r.pow(&z, 3)), r.one());
        assert_eq!(r.eval_at(&z, &2), 2);
        assert_eq!(r.eval_at(&z, &3), 3);
        assert!(!r.is_zero(&r.sub(&r.pow(&z, 2), &r.one())));
    }

    #[test]
    fn order_three_over_q() {
        let r = UnityRing::new(Rationals, 3).unwrap();
        let expected: Vec<_> = [1, 1, 1].iter().map(|&c| Rationals.from_int(c)).collect();
        assert_eq!(r.modulus(), expected.as_slice());
    }

    #[test]
    fn zeta_has_exact_order() {
        for d in 1..=12usize {
            for p in [7u64, 11, 13, 10007] {
                if d as u64 % p == 0 {
                    continue;
                }
                let r = UnityRing::new(PrimeField::new(p).unwrap(), d).unwrap();
                let z = r.zeta();
                assert_eq!(r.pow(&z, d as u64), r.one(), "d={d} p={p}");
                for e in (1..d).filter(|e| d % e == 0) {
                    let t = r.sub(&r.pow(&z, e as u64), &r.one());
                    assert!(!r.is_zero(&t), "d={d} e={e} p={p}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_characteristic() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(
            UnityRing::new(f3, 6).unwrap_err(),
            AlgebraError::UnsupportedCharacteristic {
                characteristic: 3,
                degree: 6
            }
        );
    }

    #[test]
    fn division_is_unsupported() {
        let r = UnityRing::new(PrimeField::new(5).unwrap(), 4).unwrap();
        assert!(matches!(
            r.div(&r.one(), &r.one()),
            Err(AlgebraError::UnsupportedOperation(_))
        ));
        let z = r.zeta();
        let zi = r.unit_inverse(&z).unwrap();
        assert_eq!(r.mul(&z, &zi), r.one());
        // zeta - 2 vanishes in one component
        let t = r.sub(&z, &r.from_int(2));
        assert!(r.unit_inverse(&t).is_none());
    }

    #[test]
    fn component_rank_mixed() {
        // diag(zeta - 1, 1) over F_7 with d = 2: components zeta = -1 and... only
        // zeta = -1 survives since g = x + 1, so the rank is 2.
        let r = UnityRing::new(PrimeField::new(7).unwrap(), 2).unwrap();
        let m = Mat::from_rows(vec![
            vec![r.sub(&r.zeta(), &r.one()), r.zero()],
            vec![r.zero(), r.one()],
        ]);
        assert_eq!(r.max_rank(&m), 2);
    }
}
