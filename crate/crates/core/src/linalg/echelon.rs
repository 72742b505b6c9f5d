use super::{Mat, Subspace};
use crate::error::{AlgebraError, Result};
use crate::exactfield::Field;

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref<F: Field>(field: &F, m: &Mat<F::El>) -> (Mat<F::El>, Vec<usize>) {
    let mut a = m.clone();
    let pivots = rref_in_place(field, &mut a);
    (a, pivots)
}

pub(crate) fn rref_in_place<F: Field>(field: &F, a: &mut Mat<F::El>) -> Vec<usize> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&a[(i, c)])) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = field.inv(&a[(r, c)]).expect("pivot is nonzero");
        for x in a.row_mut(r)[c..].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let prow: Vec<F::El> = a.row(r)[c..].to_vec();
        for i in 0..rows {
            if i == r || field.is_zero(&a[(i, c)]) {
                continue;
            }
            let f = field.neg(&a[(i, c)]);
            for (x, y) in a.row_mut(i)[c..].iter_mut().zip(&prow) {
                if !field.is_zero(y) {
                    field.mul_add_assign(x, &f, y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by forward elimination (no back substitution).
pub fn gauss_rank<F: Field>(field: &F, m: &Mat<F::El>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&a[(i, c)])) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = field.inv(&a[(r, c)]).expect("pivot is nonzero");
        let prow: Vec<F::El> = a.row(r)[c..].to_vec();
        for i in (r + 1)..rows {
            if field.is_zero(&a[(i, c)]) {
                continue;
            }
            let f = field.neg(&field.mul(&a[(i, c)], &inv));
            for (x, y) in a.row_mut(i)[c..].iter_mut().zip(&prow) {
                if !field.is_zero(y) {
                    field.mul_add_assign(x, &f, y);
                }
            }
        }
        r += 1;
    }
    r
}

/// Exact rank, dispatching to the field's preferred method.
pub fn rank<F: Field>(field: &F, m: &Mat<F::El>) -> usize {
    field.rank(m)
}

/// Null space basis read off the reduced echelon form: one vector per free
/// column, with a one in that column.
pub fn kernel_basis<F: Field>(field: &F, m: &Mat<F::El>) -> Vec<Vec<F::El>> {
    let (r, pivots) = rref(field, m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(&r[(i, f)]);
            }
            v
        })
        .collect()
}

pub fn kernel<F: Field>(field: &F, m: &Mat<F::El>) -> Subspace<F::El> {
    Subspace::span(field, m.cols(), &kernel_basis(field, m))
}

/// Column space.
pub fn image<F: Field>(field: &F, m: &Mat<F::El>) -> Subspace<F::El> {
    Subspace::span(field, m.rows(), &m.transpose().to_rows())
}

/// `{ v : A v in W }`, from the kernel of `[A | -W]` projected to the
/// `v` block.
pub fn preimage<F: Field>(field: &F, a: &Mat<F::El>, w: &Subspace<F::El>) -> Result<Subspace<F::El>> {
    if w.ambient() != a.rows() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "preimage of a subspace of F^{} under a map to F^{}",
            w.ambient(),
            a.rows()
        )));
    }
    let neg_w = Mat::from_columns(a.rows(), w.basis()).map(|x| field.neg(x));
    let system = a.hstack(&neg_w)?;
    let proj: Vec<Vec<F::El>> = kernel_basis(field, &system)
        .into_iter()
        .map(|v| v[..a.cols()].to_vec())
        .collect();
    Ok(Subspace::span(field, a.cols(), &proj))
}

/// A solution of `A x = b` with every free variable set to zero, or `None`
/// when the system is inconsistent.
pub fn solve<F: Field>(field: &F, a: &Mat<F::El>, b: &[F::El]) -> Result<Option<Vec<F::El>>> {
    if b.len() != a.rows() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    let bcol = Mat::from_columns(a.rows(), &[b.to_vec()]);
    let aug = a.hstack(&bcol)?;
    let (r, pivots) = rref(field, &aug);
    if pivots.last() == Some(&a.cols()) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); a.cols()];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[(i, a.cols())].clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, Rationals, Ring};

    #[test]
    fn rank_examples() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(rank(&f7, &Mat::identity(&f7, 4)), 4);
        assert_eq!(rank(&f7, &Mat::zeros(&f7, 3, 5)), 0);
        let q = Rationals;
        let m = Mat::from_rows(vec![
            vec![q.from_int(1), q.from_int(2)],
            vec![q.from_int(2), q.from_int(4)],
        ]);
        assert_eq!(rank(&q, &m), 1);
        assert_eq!(gauss_rank(&q, &m), 1);
    }

    #[test]
    fn preimage_examples() {
        let f = PrimeField::new(11).unwrap();
        let w = Subspace::span(&f, 2, &[vec![1, 0]]);
        let id = Mat::identity(&f, 2);
        assert_eq!(preimage(&f, &id, &w).unwrap(), w);
        let zero = Mat::zeros(&f, 2, 2);
        assert_eq!(preimage(&f, &zero, &w).unwrap(), Subspace::full(&f, 2));
        let a = Mat::from_rows(vec![vec![1, 0], vec![0, 0]]);
        assert_eq!(preimage(&f, &a, &w).unwrap(), Subspace::full(&f, 2));
        let bad = Subspace::zero(3);
        assert!(preimage(&f, &a, &bad).is_err());
    }

    #[test]
    fn solve_picks_zero_free_variables() {
        let f = PrimeField::new(13).unwrap();
        let a = Mat::from_rows(vec![vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(solve(&f, &a, &[3, 4]).unwrap(), Some(vec![3, 0, 4]));
        let a = Mat::from_rows(vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(solve(&f, &a, &[1, 2]).unwrap(), None);
    }
}
