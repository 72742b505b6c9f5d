use std::fmt;
use std::str::FromStr;

use super::is_prime;
use crate::error::AlgebraError;

/// Base field selector used in instance files and on the command line:
/// `Q` or `Fp:<prime>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Rational,
    Prime(u64),
}

impl FromStr for FieldDesc {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldDesc::Rational);
        }
        let Some(p) = s.strip_prefix("Fp:") else {
            return Err(AlgebraError::InvalidInput(format!(
                "unknown field descriptor {s:?} (expected `Q` or `Fp:<prime>`)"
            )));
        };
        let p: u64 = p
            .parse()
            .map_err(|_| AlgebraError::InvalidInput(format!("bad modulus in {s:?}")))?;
        if !is_prime(p) {
            return Err(AlgebraError::InvalidInput(format!("{p} is not prime")));
        }
        Ok(FieldDesc::Prime(p))
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rational => write!(f, "Q"),
            FieldDesc::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}
