use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ncrank_core::exactfield::{Field, PrimeField};
use ncrank_core::linalg::{Mat, Subspace};
use ncrank_core::mspace::{descend_witness, verify_shrunk, BlowUp, MatrixSpace, ShrunkWitness, SpaceLike};
use ncrank_core::oracle::{enumerate_shrunk, DEFAULT_LIMIT};
use ncrank_core::roundup::{round_up_rank, RoundUpConfig};
use ncrank_core::wong::second_wong;

/// `m` random `n x n` matrices over `F_q`; when `plant` is set they all map
/// the first `k` coordinates into the first `j`.
fn planted(q: u64) -> impl Strategy<Value = MatrixSpace<PrimeField>> {
    (1usize..=3, 1usize..=3).prop_flat_map(move |(n, m)| {
        (
            prop::collection::vec(prop::collection::vec(0..q, n * n), m),
            prop::option::of((1..=n, 0..n)),
        )
            .prop_map(move |(data, plant)| {
                let f = PrimeField::new(q).unwrap();
                let mats = data
                    .into_iter()
                    .map(|v| {
                        let mut a = Mat::from_vec(n, n, v);
                        if let Some((k, j)) = plant {
                            for i in j..n {
                                for c in 0..k {
                                    a[(i, c)] = 0;
                                }
                            }
                        }
                        a
                    })
                    .collect();
                MatrixSpace::new(f, n, mats).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn blowup_round_trip(space in planted(10007), d in 1usize..=3, seed in any::<u64>()) {
        let (space, _) = space.reduced();
        let bu = BlowUp::new(space, d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let blocks = bu.random_coeffs(1 << 32, &mut rng);
        let a = bu.element(&blocks).unwrap();
        prop_assert!(bu.contains(&a));
        prop_assert_eq!(bu.coordinates(&a), Some(blocks));
    }

    #[test]
    fn contraction_round_trip(n in 1usize..=3, d in 1usize..=3, vs in prop::collection::vec(prop::collection::vec(0u64..5, 9), 0..4)) {
        let f = PrimeField::new(5).unwrap();
        let space = MatrixSpace::new(f, n, vec![Mat::identity(&f, n)]).unwrap();
        let bu = BlowUp::new(space, d).unwrap();
        let us: Vec<Vec<u64>> = vs.iter().map(|v| v[..n * d].to_vec()).collect();
        let u = Subspace::span(&f, n * d, &us);
        let u0 = bu.contract(&u);
        prop_assert_eq!(bu.contract(&bu.tensor_up(&u0)), u0.clone());
        prop_assert_eq!(bu.close(&u), bu.tensor_up(&u0));
        prop_assert!(bu.close(&u).contains_space(&f, &u));
    }

    #[test]
    fn enumerated_witnesses_verify_and_lift(space in planted(3), d in 1usize..=2) {
        let s = enumerate_shrunk(&space, DEFAULT_LIMIT).unwrap();
        if let Some(w) = s.witness {
            prop_assert!(verify_shrunk(&space, &w).unwrap());
            let bu = BlowUp::new(space.clone(), d).unwrap();
            let lifted = ShrunkWitness { u: bu.tensor_up(&w.u), w: bu.tensor_up(&w.w), c: w.c * d };
            prop_assert!(verify_shrunk(&bu, &lifted).unwrap());
            let back = descend_witness(&bu, &lifted.u).unwrap();
            prop_assert!(back.c >= w.c);
        } else {
            prop_assert_eq!(s.c, 0);
        }
    }

    #[test]
    fn contained_wong_limits_give_shrunk_subspaces(space in planted(10007), coeffs in prop::collection::vec(0u64..10007, 3)) {
        let f = *space.field_ref();
        let a = space.combine(&coeffs[..space.len()]).unwrap();
        let res = second_wong(&f, &a, &space, None).unwrap();
        let cork = space.n() - f.rank(&a);
        if res.contained_in_image() && cork > 0 {
            let u = res.witness.unwrap();
            let w = ShrunkWitness::from_subspace(&space, u).unwrap();
            prop_assert_eq!(w.c, cork);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn round_up_reaches_next_multiple(space in planted(10007), d in 2usize..=3, seed in any::<u64>()) {
        let f = *space.field_ref();
        let (space, _) = space.reduced();
        prop_assume!(!space.is_empty());
        let bu = BlowUp::new(space, d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // sparse coefficients tend to give ranks between multiples
        let blocks: Vec<Mat<u64>> = bu
            .random_coeffs(1 << 32, &mut rng)
            .into_iter()
            .enumerate()
            .map(|(i, b)| Mat::from_fn(d, d, |x, y| if (x + 2 * y + i) % 3 == 0 { b[(x, y)] } else { 0 }))
            .collect();
        let a = bu.element(&blocks).unwrap();
        let rho = f.rank(&a);
        let out = round_up_rank(&bu, &a, &RoundUpConfig::default(), &mut rng).unwrap();
        let got = f.rank(&out);
        prop_assert_eq!(got % d, 0);
        prop_assert!(got >= rho.div_ceil(d) * d);
        prop_assert!(bu.coordinates(&out).is_some());
    }
}
