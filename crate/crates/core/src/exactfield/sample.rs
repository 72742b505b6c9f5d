use rand::Rng;

use super::Field;
use crate::error::{AlgebraError, Result};

/// `size` distinct field elements: the images of `0, 1, 2, ...`, or of
/// `1, 2, 3, ...` when `exclude_zero` is set.
pub fn sample_set<F: Field>(field: &F, size: usize, exclude_zero: bool) -> Result<Vec<F::El>> {
    let offset = u64::from(exclude_zero);
    let required = size as u64 + offset;
    if let Some(q) = field.size() {
        if q < required {
            return Err(AlgebraError::FieldTooSmall { required });
        }
    }
    Ok((0..size as u64).map(|i| field.element(i + offset)).collect())
}

/// A uniformly random element among the first `sample_size` elements of the
/// field's canonical enumeration (the whole field when it is smaller).
pub fn random_element<F: Field, G: Rng>(field: &F, sample_size: u64, rng: &mut G) -> F::El {
    let bound = match field.size() {
        Some(q) => q.min(sample_size.max(1)),
        None => sample_size.max(1),
    };
    field.element(rng.gen_range(0..bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, Rationals, Ring};

    #[test]
    fn deterministic_enumeration() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(sample_set(&f7, 3, false).unwrap(), vec![0, 1, 2]);
        assert_eq!(sample_set(&f7, 3, true).unwrap(), vec![1, 2, 3]);
        let q = sample_set(&Rationals, 5, false).unwrap();
        let expected: Vec<_> = (0..5).map(|i| Rationals.from_int(i)).collect();
        assert_eq!(q, expected);
    }

    #[test]
    fn too_small() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(
            sample_set(&f2, 3, false),
            Err(AlgebraError::FieldTooSmall { required: 3 })
        );
        assert_eq!(
            sample_set(&f2, 2, true),
            Err(AlgebraError::FieldTooSmall { required: 3 })
        );
        assert!(sample_set(&f2, 2, false).is_ok());
    }
}
