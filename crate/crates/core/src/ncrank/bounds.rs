use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::error::{AlgebraError, Result};

/// Degree bounds for the invariant ring of `m`-tuples of `n x n` matrices
/// under left-right action, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBounds {
    pub n: u32,
    pub m: u32,
    /// `(n+1)!`
    pub sigma_factorial: BigRational,
    /// `n^2 4^(n^2) / 4`
    pub sigma_derksen: BigRational,
    /// `max{2, 3/8 n^4 sigma_factorial^2}`
    pub beta_derksen: BigRational,
    /// `3/128 n^8 16^(n^2)`
    pub beta_explicit: BigRational,
}

pub fn degree_bounds(n: u32, m: u32) -> Result<DegreeBounds> {
    if n == 0 || m == 0 {
        return Err(AlgebraError::InvalidInput("n and m must be positive".into()));
    }
    let int = |v: BigInt| BigRational::from_integer(v);
    let ratio = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let bn = BigInt::from(n);
    let n2 = n * n;

    let sigma_factorial = int((1..=n + 1).map(BigInt::from).product());
    let sigma_derksen = int(bn.clone().pow(2u32) * BigInt::from(4).pow(n2)) * ratio(1, 4);
    let beta = ratio(3, 8) * int(bn.clone().pow(4u32)) * sigma_factorial.clone() * sigma_factorial.clone();
    let two = int(BigInt::from(2));
    let beta_derksen = if beta > two { beta } else { two };
    let beta_explicit = ratio(3, 128) * int(bn.pow(8u32) * BigInt::from(16).pow(n2));
    debug_assert!(sigma_factorial >= BigRational::one());
    Ok(DegreeBounds {
        n,
        m,
        sigma_factorial,
        sigma_derksen,
        beta_derksen,
        beta_explicit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn small_cases() {
        let b = degree_bounds(1, 1).unwrap();
        assert_eq!((b.sigma_factorial.clone(), b.beta_derksen.clone()), (q(2), q(2)));
        assert_eq!(b.sigma_derksen, q(1));
        assert_eq!(b.beta_explicit, BigRational::new(BigInt::from(3 * 16), BigInt::from(128)));

        let b = degree_bounds(2, 3).unwrap();
        assert_eq!(b.sigma_derksen, q(256));
        assert_eq!(b.beta_explicit, q(393216));
        assert_eq!(b.sigma_factorial, q(6));
        assert_eq!(b.beta_derksen, q(216));

        assert_eq!(degree_bounds(3, 2).unwrap().sigma_factorial, q(24));
        assert!(degree_bounds(0, 2).is_err());
    }
}
