//! Exact scalar arithmetic.
//!
//! Rings are context objects: a ring value knows its modulus (or other
//! parameters) and performs arithmetic on plain element values. Elements are
//! always stored in canonical form, so `==` on elements is ring equality.

mod bipoly;
mod descriptor;
mod poly;
mod prime;
mod rational;
mod sample;
mod unity;

pub use bipoly::{BiPoly, BiPolyRing, BiRational, BiRationalRing};
pub use descriptor::FieldDesc;
pub use poly::{Poly, PolyRing};
pub use prime::{is_prime, PrimeField};
pub use rational::Rationals;
pub use sample::{random_element, sample_set};
pub use unity::UnityRing;

use std::fmt::Debug;

use num_bigint::BigInt;

use crate::error::Result;
use crate::linalg::Mat;

/// A commutative ring with identity.
pub trait Ring: Clone + Debug + Send + Sync {
    type El: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn from_int(&self, v: i64) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;

    /// Zero for fields of characteristic zero.
    fn characteristic(&self) -> u64;

    fn is_one(&self, a: &Self::El) -> bool {
        *a == self.one()
    }

    fn add_assign(&self, a: &mut Self::El, b: &Self::El) {
        *a = self.add(a, b);
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::El, a: &Self::El, b: &Self::El) {
        let p = self.mul(a, b);
        self.add_assign(acc, &p);
    }

    fn pow(&self, a: &Self::El, mut e: u64) -> Self::El {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::El
    where
        I: IntoIterator<Item = &'a Self::El>,
        Self::El: 'a,
    {
        let mut acc = self.zero();
        for x in items {
            self.add_assign(&mut acc, x);
        }
        acc
    }
}

/// A field: every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self, a: &Self::El) -> Result<Self::El>;

    fn div(&self, a: &Self::El, b: &Self::El) -> Result<Self::El> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Number of elements, `None` when infinite.
    fn size(&self) -> Option<u64>;

    /// The image of the integer `index`; distinct for `index < size()`.
    fn element(&self, index: u64) -> Self::El;

    /// The image of `num / den`.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::El>;

    /// Decimal rendering (`"5"`, `"-3/4"`).
    fn format(&self, a: &Self::El) -> String;

    fn descriptor(&self) -> FieldDesc;

    /// Exact rank.
    fn rank(&self, m: &Mat<Self::El>) -> usize {
        crate::linalg::gauss_rank(self, m)
    }
}

/// Rings whose matrices have a well-defined "maximum rank over components".
///
/// For a field this is the ordinary rank. For the unity ring it is the
/// maximum rank over the field components of the ring.
pub trait RankRing: Ring {
    type Base: Field;

    fn base(&self) -> &Self::Base;

    fn embed(&self, a: &<Self::Base as Ring>::El) -> Self::El;

    /// `a * s` for a base scalar `s`.
    fn scale(&self, a: &Self::El, s: &<Self::Base as Ring>::El) -> Self::El {
        self.mul(a, &self.embed(s))
    }

    /// Exact maximum component rank.
    fn max_rank(&self, m: &Mat<Self::El>) -> usize;

    /// A certified lower bound on the maximum component rank; equal to it
    /// with high probability. `sample_size` bounds the random choices made.
    fn max_rank_probe<G: rand::Rng>(&self, m: &Mat<Self::El>, sample_size: u64, rng: &mut G)
        -> usize;
}

macro_rules! field_rank_ring {
    ($t:ty) => {
        impl RankRing for $t {
            type Base = $t;

            fn base(&self) -> &Self::Base {
                self
            }

            fn embed(&self, a: &Self::El) -> Self::El {
                a.clone()
            }

            fn max_rank(&self, m: &Mat<Self::El>) -> usize {
                Field::rank(self, m)
            }

            fn max_rank_probe<G: rand::Rng>(
                &self,
                m: &Mat<Self::El>,
                _sample_size: u64,
                _rng: &mut G,
            ) -> usize {
                Field::rank(self, m)
            }
        }
    };
}

field_rank_ring!(PrimeField);
field_rank_ring!(Rationals);
