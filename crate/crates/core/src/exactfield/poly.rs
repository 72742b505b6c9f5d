use super::{Field, Ring};
use crate::error::{AlgebraError, Result};

/// Dense univariate polynomial, coefficients from the constant term upward.
/// Never carries trailing zero coefficients, so the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff<R: Ring<El = E>>(&self, ring: &R, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero())
    }
}

/// The polynomial ring `R[t]`.
#[derive(Debug, Clone)]
pub struct PolyRing<R> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::El>) -> Poly<R::El> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(&self, c: R::El) -> Poly<R::El> {
        self.from_coeffs(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(&self, c: R::El, k: usize) -> Poly<R::El> {
        let mut v = vec![self.base.zero(); k + 1];
        v[k] = c;
        self.from_coeffs(v)
    }

    pub fn scalar_mul(&self, p: &Poly<R::El>, c: &R::El) -> Poly<R::El> {
        self.from_coeffs(p.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    pub fn eval(&self, p: &Poly<R::El>, x: &R::El) -> R::El {
        let mut acc = self.base.zero();
        for c in p.coeffs.iter().rev() {
            acc = self.base.mul(&acc, x);
            self.base.add_assign(&mut acc, c);
        }
        acc
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type El = Poly<R::El>;

    fn zero(&self) -> Self::El {
        Poly { coeffs: Vec::new() }
    }

    fn one(&self) -> Self::El {
        self.constant(self.base.one())
    }

    fn from_int(&self, v: i64) -> Self::El {
        self.constant(self.base.from_int(v))
    }

    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.base.zero();
        let v = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&z);
                let y = b.coeffs.get(i).unwrap_or(&z);
                self.base.add(x, y)
            })
            .collect();
        self.from_coeffs(v)
    }

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.base.zero();
        let v = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&z);
                let y = b.coeffs.get(i).unwrap_or(&z);
                self.base.sub(x, y)
            })
            .collect();
        self.from_coeffs(v)
    }

    fn neg(&self, a: &Self::El) -> Self::El {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }

    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero();
        }
        let mut v = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                self.base.mul_add_assign(&mut v[i + j], x, y);
            }
        }
        self.from_coeffs(v)
    }

    fn is_zero(&self, a: &Self::El) -> bool {
        a.coeffs.is_empty()
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
}

impl<F: Field> PolyRing<F> {
    /// Euclidean division `a = q * b + r` with `deg r < deg b`.
    pub fn div_rem(&self, a: &Poly<F::El>, b: &Poly<F::El>) -> Result<(Poly<F::El>, Poly<F::El>)> {
        let db = b.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lead_inv = self.base.inv(&b.coeffs[db])?;
        let mut r = a.coeffs.clone();
        let Some(da) = a.degree() else {
            return Ok((self.zero(), self.zero()));
        };
        if da < db {
            return Ok((self.zero(), a.clone()));
        }
        let mut q = vec![self.base.zero(); da - db + 1];
        for k in (0..=(da - db)).rev() {
            let c = self.base.mul(&r[k + db], &lead_inv);
            if self.base.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                let t = self.base.mul(&c, bj);
                r[k + j] = self.base.sub(&r[k + j], &t);
            }
            q[k] = c;
        }
        r.truncate(db);
        Ok((self.from_coeffs(q), self.from_coeffs(r)))
    }

    pub fn rem(&self, a: &Poly<F::El>, b: &Poly<F::El>) -> Result<Poly<F::El>> {
        Ok(self.div_rem(a, b)?.1)
    }

    /// Scales a nonzero polynomial to leading coefficient one.
    pub fn monic(&self, a: &Poly<F::El>) -> Result<Poly<F::El>> {
        let d = a.degree().ok_or(AlgebraError::DivisionByZero)?;
        let inv = self.base.inv(&a.coeffs[d])?;
        Ok(self.scalar_mul(a, &inv))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, a: &Poly<F::El>, b: &Poly<F::El>) -> Poly<F::El> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !self.is_zero(&y) {
            let r = self.rem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        if self.is_zero(&x) {
            x
        } else {
            self.monic(&x).expect("nonzero")
        }
    }

    /// Returns `(g, s)` with `g = gcd(a, m)` monic and `s * a = g (mod m)`.
    pub fn ext_gcd_mod(&self, a: &Poly<F::El>, m: &Poly<F::El>) -> (Poly<F::El>, Poly<F::El>) {
        let (mut r0, mut r1) = (m.clone(), a.clone());
        let (mut s0, mut s1) = (self.zero(), self.one());
        while !self.is_zero(&r1) {
            let (q, r) = self.div_rem(&r0, &r1).expect("nonzero divisor");
            let s = self.sub(&s0, &self.mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        match r0.degree() {
            None => (r0, s0),
            Some(d) => {
                let inv = self.base.inv(&r0.coeffs[d]).expect("nonzero lead");
                (self.scalar_mul(&r0, &inv), self.scalar_mul(&s0, &inv))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, Rationals};

    #[test]
    fn division_with_remainder_over_q() {
        let r = PolyRing::new(Rationals);
        let p = |v: &[i64]| r.from_coeffs(v.iter().map(|&c| Rationals.from_int(c)).collect());
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let (q, rem) = r.div_rem(&p(&[-1, 0, 0, 1]), &p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero(&rem));
        let g = r.gcd(&p(&[-1, 0, 0, 1]), &p(&[-1, 0, 1]));
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn extended_gcd_inverts_units() {
        let f = PrimeField::new(7).unwrap();
        let r = PolyRing::new(f);
        let m = r.from_coeffs(vec![1, 1, 1]); // x^2 + x + 1
        let a = r.from_coeffs(vec![1, 2]);
        let (g, s) = r.ext_gcd_mod(&a, &m);
        assert_eq!(g, r.one());
        let prod = r.rem(&r.mul(&s, &a), &m).unwrap();
        assert_eq!(prod, r.one());
    }
}
