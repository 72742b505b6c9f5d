use std::collections::BTreeMap;

use super::{Field, Ring};
use crate::error::{AlgebraError, Result};

/// Sparse polynomial in two variables `X`, `Y`. The key `(a, b)` stands for
/// `X^a Y^b`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly<E> {
    terms: BTreeMap<(u32, u32), E>,
}

impl<E> BiPoly<E> {
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &E)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }
}

#[derive(Debug, Clone)]
pub struct BiPolyRing<R> {
    base: R,
}

impl<R: Ring> BiPolyRing<R> {
    pub fn new(base: R) -> Self {
        BiPolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// `c * X^a * Y^b`
    pub fn monomial(&self, c: R::El, a: u32, b: u32) -> BiPoly<R::El> {
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&c) {
            terms.insert((a, b), c);
        }
        BiPoly { terms }
    }

    pub fn constant(&self, c: R::El) -> BiPoly<R::El> {
        self.monomial(c, 0, 0)
    }

    pub fn x(&self) -> BiPoly<R::El> {
        self.monomial(self.base.one(), 1, 0)
    }

    pub fn y(&self) -> BiPoly<R::El> {
        self.monomial(self.base.one(), 0, 1)
    }

    pub fn from_terms<I>(&self, terms: I) -> BiPoly<R::El>
    where
        I: IntoIterator<Item = ((u32, u32), R::El)>,
    {
        let mut p = self.zero();
        for (k, c) in terms {
            self.add_term(&mut p, k, &c);
        }
        p
    }

    fn add_term(&self, p: &mut BiPoly<R::El>, key: (u32, u32), c: &R::El) {
        if self.base.is_zero(c) {
            return;
        }
        match p.terms.get_mut(&key) {
            Some(v) => {
                self.base.add_assign(v, c);
                if self.base.is_zero(v) {
                    p.terms.remove(&key);
                }
            }
            None => {
                p.terms.insert(key, c.clone());
            }
        }
    }

    pub fn coeff(&self, p: &BiPoly<R::El>, a: u32, b: u32) -> R::El {
        p.terms.get(&(a, b)).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn scale(&self, p: &BiPoly<R::El>, c: &R::El) -> BiPoly<R::El> {
        self.from_terms(p.terms.iter().map(|(&k, v)| (k, self.base.mul(v, c))))
    }

    /// Multiplies by the monomial `X^a Y^b`.
    pub fn shift(&self, p: &BiPoly<R::El>, a: u32, b: u32) -> BiPoly<R::El> {
        BiPoly {
            terms: p
                .terms
                .iter()
                .map(|(&(i, j), v)| ((i + a, j + b), v.clone()))
                .collect(),
        }
    }

    /// Evaluates at `X = x0`, `Y = y0`.
    pub fn eval(&self, p: &BiPoly<R::El>, x0: &R::El, y0: &R::El) -> R::El {
        let dx = p.degree_x().unwrap_or(0) as usize;
        let dy = p.degree_y().unwrap_or(0) as usize;
        let xp = powers(&self.base, x0, dx);
        let yp = powers(&self.base, y0, dy);
        let mut acc = self.base.zero();
        for (&(a, b), c) in &p.terms {
            let m = self.base.mul(&xp[a as usize], &yp[b as usize]);
            self.base.mul_add_assign(&mut acc, c, &m);
        }
        acc
    }

    /// Applies a coefficient map into another ring.
    pub fn map<S: Ring, G>(&self, target: &BiPolyRing<S>, p: &BiPoly<R::El>, f: G) -> BiPoly<S::El>
    where
        G: Fn(&R::El) -> S::El,
    {
        target.from_terms(p.terms.iter().map(|(&k, v)| (k, f(v))))
    }
}

fn powers<R: Ring>(ring: &R, x: &R::El, max: usize) -> Vec<R::El> {
    let mut v = Vec::with_capacity(max + 1);
    v.push(ring.one());
    for i in 0..max {
        let next = ring.mul(&v[i], x);
        v.push(next);
    }
    v
}

impl<R: Ring> Ring for BiPolyRing<R> {
    type El = BiPoly<R::El>;

    fn zero(&self) -> Self::El {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    fn one(&self) -> Self::El {
        self.constant(self.base.one())
    }

    fn from_int(&self, v: i64) -> Self::El {
        self.constant(self.base.from_int(v))
    }

    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let mut r = a.clone();
        self.add_assign(&mut r, b);
        r
    }

    fn add_assign(&self, a: &mut Self::El, b: &Self::El) {
        for (&k, c) in &b.terms {
            self.add_term(a, k, c);
        }
    }

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let mut r = a.clone();
        for (&k, c) in &b.terms {
            self.add_term(&mut r, k, &self.base.neg(c));
        }
        r
    }

    fn neg(&self, a: &Self::El) -> Self::El {
        BiPoly {
            terms: a.terms.iter().map(|(&k, v)| (k, self.base.neg(v))).collect(),
        }
    }

    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let mut r = self.zero();
        for (&(i, j), x) in &a.terms {
            for (&(k, l), y) in &b.terms {
                self.add_term(&mut r, (i + k, j + l), &self.base.mul(x, y));
            }
        }
        r
    }

    fn is_zero(&self, a: &Self::El) -> bool {
        a.terms.is_empty()
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
}

/// A quotient `num / den` of bivariate polynomials. Not reduced by gcd.
#[derive(Debug, Clone)]
pub struct BiRational<E> {
    pub num: BiPoly<E>,
    pub den: BiPoly<E>,
}

impl<E: PartialEq> PartialEq for BiRational<E> {
    /// Structural equality only; use [`BiRationalRing::equal`] for value
    /// equality.
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

/// The field of fractions `F(X, Y)` over a base field.
#[derive(Debug, Clone)]
pub struct BiRationalRing<F> {
    poly: BiPolyRing<F>,
}

impl<F: Field> BiRationalRing<F> {
    pub fn new(base: F) -> Self {
        BiRationalRing {
            poly: BiPolyRing::new(base),
        }
    }

    pub fn poly_ring(&self) -> &BiPolyRing<F> {
        &self.poly
    }

    pub fn from_poly(&self, p: BiPoly<F::El>) -> BiRational<F::El> {
        BiRational {
            num: p,
            den: self.poly.one(),
        }
    }

    pub fn new_frac(&self, num: BiPoly<F::El>, den: BiPoly<F::El>) -> Result<BiRational<F::El>> {
        if self.poly.is_zero(&den) {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.normalize(BiRational { num, den }))
    }

    /// Content normalization: makes the leading coefficient of the
    /// denominator one, and a zero numerator gets denominator one.
    fn normalize(&self, r: BiRational<F::El>) -> BiRational<F::El> {
        if self.poly.is_zero(&r.num) {
            return self.zero();
        }
        let lead = r.den.terms.values().next_back().expect("nonzero denominator");
        if self.poly.base.is_one(lead) {
            return r;
        }
        let inv = self.poly.base.inv(lead).expect("nonzero");
        BiRational {
            num: self.poly.scale(&r.num, &inv),
            den: self.poly.scale(&r.den, &inv),
        }
    }

    pub fn equal(&self, a: &BiRational<F::El>, b: &BiRational<F::El>) -> bool {
        let l = self.poly.mul(&a.num, &b.den);
        let r = self.poly.mul(&b.num, &a.den);
        l == r
    }

    pub fn inv(&self, a: &BiRational<F::El>) -> Result<BiRational<F::El>> {
        if self.poly.is_zero(&a.num) {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.normalize(BiRational {
            num: a.den.clone(),
            den: a.num.clone(),
        }))
    }

    pub fn div(&self, a: &BiRational<F::El>, b: &BiRational<F::El>) -> Result<BiRational<F::El>> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Evaluation; fails when the denominator vanishes at the point.
    pub fn eval(&self, a: &BiRational<F::El>, x0: &F::El, y0: &F::El) -> Result<F::El> {
        let d = self.poly.eval(&a.den, x0, y0);
        let n = self.poly.eval(&a.num, x0, y0);
        self.poly.base.div(&n, &d)
    }
}

impl<F: Field> Ring for BiRationalRing<F> {
    type El = BiRational<F::El>;

    fn zero(&self) -> Self::El {
        self.from_poly(self.poly.zero())
    }

    fn one(&self) -> Self::El {
        self.from_poly(self.poly.one())
    }

    fn from_int(&self, v: i64) -> Self::El {
        self.from_poly(self.poly.from_int(v))
    }

    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        if a.den == b.den {
            return self.normalize(BiRational {
                num: self.poly.add(&a.num, &b.num),
                den: a.den.clone(),
            });
        }
        let num = self
            .poly
            .add(&self.poly.mul(&a.num, &b.den), &self.poly.mul(&b.num, &a.den));
        self.normalize(BiRational {
            num,
            den: self.poly.mul(&a.den, &b.den),
        })
    }

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Self::El) -> Self::El {
        BiRational {
            num: self.poly.neg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.normalize(BiRational {
            num: self.poly.mul(&a.num, &b.num),
            den: self.poly.mul(&a.den, &b.den),
        })
    }

    fn is_zero(&self, a: &Self::El) -> bool {
        self.poly.is_zero(&a.num)
    }

    fn characteristic(&self) -> u64 {
        self.poly.characteristic()
    }
}
