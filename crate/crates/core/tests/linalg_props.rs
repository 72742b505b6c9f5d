use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use ncrank_core::exactfield::{Field, PolyRing, PrimeField, Rationals, Ring};
use ncrank_core::linalg::{
    charpoly_division_free, gauss_rank, image, kernel, kernel_basis, preimage, solve, Mat, Subspace,
};

const P: u64 = 10007;

fn fp() -> PrimeField {
    PrimeField::new(P).unwrap()
}

/// Random matrix of rank at most `k`, as a sum of `k` outer products with
/// some zero entries.
fn low_rank(max: usize, q: u64) -> impl Strategy<Value = Mat<u64>> {
    (1..=max, 1..=max, 0..=max).prop_flat_map(move |(r, c, k)| {
        (
            prop::collection::vec(prop::collection::vec(0..q, r), k),
            prop::collection::vec(prop::collection::vec(0..q, c), k),
        )
            .prop_map(move |(us, vs)| {
                let f = PrimeField::new(q).unwrap();
                let mut m = Mat::zeros(&f, r, c);
                for (u, v) in us.iter().zip(&vs) {
                    for i in 0..r {
                        for j in 0..c {
                            m[(i, j)] = f.add(&m[(i, j)], &f.mul(&u[i], &v[j]));
                        }
                    }
                }
                m
            })
    })
}

fn rational_matrix(max: usize) -> impl Strategy<Value = Mat<BigRational>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec((-4i64..5, 1i64..4), r * c).prop_map(move |v| {
            let data = v
                .into_iter()
                .map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
                .collect();
            Mat::from_vec(r, c, data)
        })
    })
}

/// `det` by elimination, as an independent reference.
fn det<F: Field>(f: &F, m: &Mat<F::El>) -> F::El {
    let n = m.rows();
    let mut a = m.clone();
    let mut acc = f.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !f.is_zero(&a[(i, col)])) else {
            return f.zero();
        };
        if p != col {
            a.swap_rows(p, col);
            acc = f.neg(&acc);
        }
        let piv = a[(col, col)].clone();
        acc = f.mul(&acc, &piv);
        let inv = f.inv(&piv).unwrap();
        for i in col + 1..n {
            let factor = f.mul(&a[(i, col)], &inv);
            for j in col..n {
                let t = f.mul(&factor, &a[(col, j)]);
                a[(i, j)] = f.sub(&a[(i, j)], &t);
            }
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rank_plus_nullity(m in low_rank(6, P)) {
        let f = fp();
        let r = f.rank(&m);
        let ker = kernel_basis(&f, &m);
        prop_assert_eq!(r + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(&f, v).iter().all(|x| *x == 0));
        }
        prop_assert_eq!(image(&f, &m).dim(), r);
        prop_assert_eq!(f.rank(&m.transpose()), r);
    }

    #[test]
    fn rank_plus_nullity_f2(m in low_rank(6, 2)) {
        let f = PrimeField::new(2).unwrap();
        prop_assert_eq!(f.rank(&m) + kernel(&f, &m).dim(), m.cols());
    }

    #[test]
    fn rationals_bareiss_matches_gauss(m in rational_matrix(5)) {
        let q = Rationals;
        let r = q.rank(&m);
        prop_assert_eq!(r, gauss_rank(&q, &m));
        prop_assert_eq!(r + kernel_basis(&q, &m).len(), m.cols());
    }

    #[test]
    fn preimage_is_exact(m in low_rank(5, P), seeds in prop::collection::vec(prop::collection::vec(0..P, 5), 0..4)) {
        let f = fp();
        let ws: Vec<Vec<u64>> = seeds.iter().map(|s| s[..m.rows()].to_vec()).collect();
        let w = Subspace::span(&f, m.rows(), &ws);
        let pre = preimage(&f, &m, &w).unwrap();
        for v in pre.basis() {
            prop_assert!(w.contains(&f, &m.mul_vec(&f, v)));
        }
        let im = image(&f, &m);
        let meet = w.dim() + im.dim() - w.join(&f, &im).dim();
        prop_assert_eq!(pre.dim(), kernel(&f, &m).dim() + meet);
    }

    #[test]
    fn solve_agrees_with_image(m in low_rank(5, P), b in prop::collection::vec(0..P, 5)) {
        let f = fp();
        let b = &b[..m.rows()];
        match solve(&f, &m, b).unwrap() {
            Some(x) => prop_assert_eq!(m.mul_vec(&f, &x), b.to_vec()),
            None => prop_assert!(!image(&f, &m).contains(&f, b)),
        }
    }

    #[test]
    fn subspace_is_canonical(vs in prop::collection::vec(prop::collection::vec(0..P, 4), 1..5), c in prop::collection::vec(1..P, 5)) {
        let f = fp();
        let a = Subspace::span(&f, 4, &vs);
        // rescaled and mixed generators give the same subspace
        let mut ws: Vec<Vec<u64>> = vs.iter().zip(&c).map(|(v, s)| v.iter().map(|x| f.mul(x, s)).collect()).collect();
        if ws.len() > 1 {
            let extra: Vec<u64> = ws[0].iter().zip(&ws[1]).map(|(x, y)| f.add(x, y)).collect();
            ws.push(extra);
            ws.reverse();
        }
        prop_assert_eq!(Subspace::span(&f, 4, &ws), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn charpoly_matches_determinants(n in 1usize..7, data in prop::collection::vec(0..P, 36)) {
        let f = fp();
        let a = Mat::from_vec(n, n, data[..n * n].to_vec());
        let chi = charpoly_division_free(&f, &a);
        prop_assert_eq!(chi.degree(), Some(n));
        let pr = PolyRing::new(f);
        for lam in 0..=n as u64 {
            let shifted = Mat::identity(&f, n).scale(&f, &lam).sub(&f, &a);
            prop_assert_eq!(pr.eval(&chi, &lam), det(&f, &shifted));
        }
    }

    #[test]
    fn charpoly_over_rationals(m in rational_matrix(4)) {
        let q = Rationals;
        let n = m.rows().min(m.cols());
        let a = m.submatrix(&(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
        let chi = charpoly_division_free(&q, &a);
        let pr = PolyRing::new(q);
        for lam in 0..=n as i64 {
            let l = q.from_int(lam);
            let shifted = Mat::identity(&q, n).scale(&q, &l).sub(&q, &a);
            prop_assert_eq!(pr.eval(&chi, &l), det(&q, &shifted));
        }
    }
}
