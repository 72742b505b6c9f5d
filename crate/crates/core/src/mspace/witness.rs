use super::{BlowUp, SpaceLike};
use crate::error::{AlgebraError, Result};
use crate::exactfield::Field;
use crate::linalg::Subspace;

/// `U` with `B(U) <= W` and `dim W <= dim U - c`, proving `ncrk <= n - c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShrunkWitness<E> {
    pub u: Subspace<E>,
    pub w: Subspace<E>,
    pub c: usize,
}

impl<E: Clone + PartialEq> ShrunkWitness<E> {
    /// Builds the tightest witness for `U` (with `W = B(U)`) and checks it.
    pub fn from_subspace<F, S>(space: &S, u: Subspace<E>) -> Result<Self>
    where
        F: Field<El = E>,
        S: SpaceLike<F>,
    {
        let w = space.apply(&u)?;
        if w.dim() >= u.dim() {
            return Err(AlgebraError::InvalidWitness(format!(
                "U of dimension {} maps onto dimension {}",
                u.dim(),
                w.dim()
            )));
        }
        let c = u.dim() - w.dim();
        let wit = ShrunkWitness { u, w, c };
        debug_assert_eq!(verify_shrunk(space, &wit), Ok(true));
        Ok(wit)
    }
}

/// Recomputes `B(U)` and checks `B(U) <= W` and `dim W <= dim U - c`.
/// A claimed `c` of zero, or subspaces of the wrong ambient dimension, are
/// malformed input rather than a failed check.
pub fn verify_shrunk<F, S>(space: &S, w: &ShrunkWitness<F::El>) -> Result<bool>
where
    F: Field,
    S: SpaceLike<F>,
{
    if w.c == 0 {
        return Err(AlgebraError::InvalidWitness("a shrunk witness needs c >= 1".into()));
    }
    let n = space.size();
    if w.u.ambient() != n || w.w.ambient() != n {
        return Err(AlgebraError::DimensionMismatch(format!(
            "witness lives in F^{} / F^{}, space acts on F^{n}",
            w.u.ambient(),
            w.w.ambient()
        )));
    }
    let image = space.apply(&w.u)?;
    if !w.w.contains_space(space.field(), &image) {
        return Ok(false);
    }
    Ok(w.u.dim() >= w.c && w.w.dim() <= w.u.dim() - w.c)
}

/// Turns a shrunk subspace of a blow-up into one of the base space:
/// `U' = (I (x) M(d)) U` equals `U_0 (x) F^d` and its shrinkage is divisible
/// by `d`.
pub fn descend_witness<F: Field>(bu: &BlowUp<F>, u: &Subspace<F::El>) -> Result<ShrunkWitness<F::El>> {
    let image = bu.apply(u)?;
    if image.dim() >= u.dim() {
        return Err(AlgebraError::InvalidWitness(format!(
            "subspace of dimension {} is not shrunk by the blow-up (image dimension {})",
            u.dim(),
            image.dim()
        )));
    }
    let closed = bu.close(u);
    let u0 = bu.contract(u);
    if closed != bu.tensor_up(&u0) {
        return Err(AlgebraError::Internal(
            "closure under I (x) M(d) is not of the form U0 (x) F^d".into(),
        ));
    }
    let closed_image = bu.apply(&closed)?;
    let c = closed.dim() - closed_image.dim();
    let d = bu.degree();
    if c % d != 0 || c < u.dim() - image.dim() {
        return Err(AlgebraError::Internal(format!(
            "closed witness has shrinkage {c}, not a multiple of {d} at least the input's"
        )));
    }
    let w0 = bu.base().apply(&u0)?;
    debug_assert_eq!(u0.dim() - w0.dim(), c / d);
    Ok(ShrunkWitness {
        u: u0,
        w: w0,
        c: c / d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, Ring};
    use crate::linalg::Mat;
    use crate::mspace::MatrixSpace;

    fn f() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }

    fn e11(f: &PrimeField) -> MatrixSpace<PrimeField> {
        MatrixSpace::new(*f, 2, vec![Mat::unit(f, 2, 2, 0, 0)]).unwrap()
    }

    #[test]
    fn verify_examples() {
        let f = f();
        let s = e11(&f);
        let good = ShrunkWitness {
            u: Subspace::full(&f, 2),
            w: Subspace::span(&f, 2, &[vec![1, 0]]),
            c: 1,
        };
        assert_eq!(verify_shrunk(&s, &good), Ok(true));
        let inflated = ShrunkWitness { c: 2, ..good.clone() };
        assert_eq!(verify_shrunk(&s, &inflated), Ok(false));
        let zero = ShrunkWitness { c: 0, ..good.clone() };
        assert!(matches!(verify_shrunk(&s, &zero), Err(AlgebraError::InvalidWitness(_))));
        let wrong_w = ShrunkWitness {
            w: Subspace::span(&f, 2, &[vec![0, 1]]),
            ..good
        };
        assert_eq!(verify_shrunk(&s, &wrong_w), Ok(false));
    }

    #[test]
    fn skew_has_no_one_shrunk_subspace() {
        let f = f();
        let m = |i, j| {
            let mut a = Mat::unit(&f, 3, 3, i, j);
            a[(j, i)] = f.from_int(-1);
            a
        };
        let s = MatrixSpace::new(f, 3, vec![m(0, 1), m(0, 2), m(1, 2)]).unwrap();
        let e = |i: usize| {
            let mut v = vec![0u64; 3];
            v[i] = 1;
            v
        };
        for u in [
            Subspace::span(&f, 3, &[e(0)]),
            Subspace::span(&f, 3, &[e(0), e(1)]),
            Subspace::full(&f, 3),
        ] {
            let w = ShrunkWitness {
                w: Subspace::span(&f, 3, &u.basis()[..u.dim() - 1]),
                u,
                c: 1,
            };
            assert_eq!(verify_shrunk(&s, &w), Ok(false));
        }
    }

    #[test]
    fn descent() {
        let f = f();
        let s = e11(&f);
        let bu = BlowUp::new(s.clone(), 2).unwrap();
        let w = descend_witness(&bu, &Subspace::full(&f, 4)).unwrap();
        assert_eq!(w.u, Subspace::full(&f, 2));
        assert_eq!(w.w, Subspace::span(&f, 2, &[vec![1, 0]]));
        assert_eq!(w.c, 1);

        let bu1 = BlowUp::new(s.clone(), 1).unwrap();
        let u = Subspace::full(&f, 2);
        let w1 = descend_witness(&bu1, &u).unwrap();
        assert_eq!(w1, ShrunkWitness::from_subspace(&s, u).unwrap());

        // shrunk but not closed: slot 0 of block 0 plus all of block 1
        let u = Subspace::span(&f, 4, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        let w = descend_witness(&bu, &u).unwrap();
        assert_eq!(w.c, 1);
        assert!(descend_witness(&bu, &Subspace::span(&f, 4, &[vec![1, 0, 0, 0]])).is_err());
    }

    #[test]
    fn witness_lifts_to_blowup() {
        let f = f();
        let s = e11(&f);
        let w = ShrunkWitness::from_subspace(&s, Subspace::full(&f, 2)).unwrap();
        for d in 1..=3 {
            let bu = BlowUp::new(s.clone(), d).unwrap();
            let lifted = ShrunkWitness {
                u: bu.tensor_up(&w.u),
                w: bu.tensor_up(&w.w),
                c: w.c * d,
            };
            assert_eq!(verify_shrunk(&bu, &lifted), Ok(true));
        }
    }
}
