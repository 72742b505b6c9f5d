use super::{rref_in_place, Mat};
use crate::exactfield::Field;

/// A subspace of `F^ambient`, kept as the nonzero rows of a reduced row
/// echelon form. The representation is canonical, so `==` is equality of
/// subspaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn to_columns(&self) -> Mat<E> {
        Mat::from_columns(self.ambient, &self.basis)
    }
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn full<F: Field<El = E>>(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(field, ambient).to_rows(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<F: Field<El = E>>(field: &F, ambient: usize, vectors: &[Vec<E>]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let mut m = Mat::from_rows(vectors.to_vec());
        assert_eq!(m.cols(), ambient, "vector length differs from ambient dimension");
        let pivots = rref_in_place(field, &mut m);
        let basis = m.to_rows().into_iter().take(pivots.len()).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    /// `v` minus its projection along the echelon basis; zero exactly when
    /// `v` lies in the subspace.
    pub fn reduce<F: Field<El = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if field.is_zero(&r[p]) {
                continue;
            }
            let c = field.neg(&r[p]);
            for (x, y) in r.iter_mut().zip(b) {
                if !field.is_zero(y) {
                    field.mul_add_assign(x, &c, y);
                }
            }
        }
        r
    }

    pub fn contains<F: Field<El = E>>(&self, field: &F, v: &[E]) -> bool {
        self.reduce(field, v).iter().all(|x| field.is_zero(x))
    }

    pub fn contains_space<F: Field<El = E>>(&self, field: &F, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(field, v))
    }

    pub fn join<F: Field<El = E>>(&self, field: &F, other: &Self) -> Self {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(field, self.ambient, &v)
    }

    /// Image under a linear map.
    pub fn map<F: Field<El = E>>(&self, field: &F, a: &Mat<E>) -> Self {
        let v: Vec<Vec<E>> = self.basis.iter().map(|u| a.mul_vec(field, u)).collect();
        Subspace::span(field, a.rows(), &v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::PrimeField;

    #[test]
    fn canonical_representation() {
        let f = PrimeField::new(5).unwrap();
        let a = Subspace::span(&f, 3, &[vec![1, 2, 0], vec![0, 1, 1]]);
        let b = Subspace::span(&f, 3, &[vec![1, 3, 1], vec![2, 4, 0], vec![1, 3, 1]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&f, &[1, 1, 4]));
        assert!(!a.contains(&f, &[0, 0, 1]));
        let j = a.join(&f, &Subspace::span(&f, 3, &[vec![0, 0, 1]]));
        assert_eq!(j, Subspace::full(&f, 3));
    }
}
