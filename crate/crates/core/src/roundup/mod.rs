//! Rounding blow-up ranks up to multiples of the degree.
//!
//! A matrix of rank `(r-1)d + k` in `B (x) M(d)` is rewritten over the
//! basis `B_i (x) Gamma_j` of a cyclic division algebra, its coefficients are
//! pushed into a finite sample set while keeping the rank above `(r-1)d`
//! (which forces rank `rd`), and the result is pushed back to base-field
//! coefficients in the standard basis.

use log::{debug, trace};
use rand::Rng;

use crate::cda::{cyclic_algebra_basis, kummer_extension, TensorFamily};
use crate::error::{AlgebraError, Result};
use crate::exactfield::{sample_set, BiPoly, Field, RankRing, UnityRing};
use crate::linalg::{function_field_rank_at_least, Mat, Specialization};
use crate::mspace::BlowUp;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundUpConfig {
    /// Size of the sample set `S`; `max(nd + 1, 64)` when unset.
    pub samples: Option<usize>,
    /// How each candidate rank is checked.
    pub mode: Specialization,
}

impl Default for RoundUpConfig {
    fn default() -> Self {
        RoundUpConfig {
            samples: None,
            mode: Specialization::Randomized {
                points: 3,
                sample_size: 1 << 32,
            },
        }
    }
}

impl RoundUpConfig {
    pub fn sample_count(&self, rows: usize) -> usize {
        self.samples.unwrap_or((rows + 1).max(64))
    }
}

/// Coefficients `c_ij` of a [`TensorFamily`] to be replaced, one at a time
/// in `(i, j)` order, by elements of `samples`.
#[derive(Debug, Clone)]
pub struct ReductionProblem<F: Field> {
    pub family: TensorFamily<F>,
    pub rank_floor: usize,
    pub samples: Vec<F::El>,
}

/// The base-field value of a constant coefficient.
fn base_constant<F: Field>(ring: &UnityRing<F>, p: &BiPoly<Vec<F::El>>) -> Option<F::El> {
    let f = ring.base_field();
    match p.num_terms() {
        0 => Some(f.zero()),
        1 => {
            let (&key, c) = p.terms().next()?;
            (key == (0, 0) && c[1..].iter().all(|x| f.is_zero(x))).then(|| c[0].clone())
        }
        _ => None,
    }
}

/// Replaces every coefficient that is not already a base-field constant by
/// the first sample keeping the rank at least `rank_floor`. Returns the
/// final coefficients, all in the base field.
pub fn data_reduce<F: Field, G: Rng>(
    mut problem: ReductionProblem<F>,
    mode: Specialization,
    rng: &mut G,
) -> Result<Vec<Vec<F::El>>> {
    let floor = problem.rank_floor;
    if problem.samples.len() < floor + 1 {
        return Err(AlgebraError::FieldTooSmall {
            required: floor as u64 + 1,
        });
    }
    let ring = problem.family.ring.clone();
    let poly = problem.family.poly.clone();
    let mut out: Vec<Vec<F::El>> = Vec::with_capacity(problem.family.coeffs.len());
    for i in 0..problem.family.coeffs.len() {
        let mut row = Vec::with_capacity(problem.family.coeffs[i].len());
        for j in 0..problem.family.coeffs[i].len() {
            if let Some(v) = base_constant(&ring, &problem.family.coeffs[i][j]) {
                row.push(v);
                continue;
            }
            let mut chosen = None;
            for s in &problem.samples {
                problem.family.coeffs[i][j] = poly.constant(ring.embed(s));
                if floor == 0 || function_field_rank_at_least(&ring, &problem.family, floor, mode, rng)? {
                    chosen = Some(s.clone());
                    break;
                }
            }
            match chosen {
                Some(s) => {
                    trace!("data_reduce: floor {floor}, coefficient ({i}, {j}) fixed");
                    row.push(s);
                }
                None => {
                    return Err(AlgebraError::FieldTooSmall {
                        required: problem.samples.len() as u64 + 1,
                    })
                }
            }
        }
        out.push(row);
    }
    Ok(out)
}

/// Raises a blow-up matrix of rank `(r-1)d + k`, `0 < k < d`, to one of rank
/// at least `rd` in the same blow-up. Ranks already divisible by `d` are
/// returned unchanged. The output rank is always divisible by `d`.
pub fn round_up_rank<F: Field, G: Rng>(
    bu: &BlowUp<F>,
    a: &Mat<F::El>,
    config: &RoundUpConfig,
    rng: &mut G,
) -> Result<Mat<F::El>> {
    let field = bu.base().field_ref();
    let d = bu.degree();
    let mut cur = a.clone();
    let mut rho = field.rank(&cur);
    while rho % d != 0 {
        let next = round_up_once(bu, &cur, rho, config, rng)?;
        let r2 = field.rank(&next);
        debug!("round_up_rank at d = {d}: rank {rho} -> {r2}");
        if r2 <= rho || r2 < (rho / d + 1) * d {
            return Err(AlgebraError::Internal(format!(
                "round-up at degree {d} produced rank {r2} from {rho}"
            )));
        }
        cur = next;
        rho = r2;
    }
    Ok(cur)
}

fn round_up_once<F: Field, G: Rng>(
    bu: &BlowUp<F>,
    a: &Mat<F::El>,
    rho: usize,
    config: &RoundUpConfig,
    rng: &mut G,
) -> Result<Mat<F::El>> {
    let field = bu.base().field_ref();
    let d = bu.degree();
    let r = rho / d + 1;
    let blocks = bu
        .coordinates(a)
        .ok_or_else(|| AlgebraError::InvalidInput("matrix is not in the blow-up".into()))?;
    let ring = UnityRing::new(field.clone(), d)?;
    let ext = kummer_extension(&ring);
    let basis = cyclic_algebra_basis(&ext);
    let samples = sample_set(field, config.sample_count(bu.n() * d), true)?;

    // coefficients over Gamma, scaled by d X Y^(d-1)
    let coeffs = blocks.iter().map(|b| basis.expand_scaled_field(b)).collect();
    let family = TensorFamily::new(&ring, &basis.poly, bu.base().basis(), basis.gamma.clone(), coeffs);
    debug!("round_up: d = {d}, rank {rho}, reducing over Gamma with floor {}", (r - 1) * d + 1);
    let s = data_reduce(
        ReductionProblem {
            family,
            rank_floor: (r - 1) * d + 1,
            samples: samples.clone(),
        },
        config.mode,
        rng,
    )?;

    // sum_j s_ij Gamma_j, then its entries as coefficients of E_ab
    let p = &basis.poly;
    let nus: Vec<Vec<BiPoly<Vec<F::El>>>> = s
        .iter()
        .map(|row| {
            let lifted: Vec<_> = row.iter().map(|x| p.constant(ring.embed(x))).collect();
            basis.combine(&lifted).entries().to_vec()
        })
        .collect();
    let units: Vec<Mat<BiPoly<Vec<F::El>>>> =
        (0..d * d).map(|ab| Mat::unit(p, d, d, ab / d, ab % d)).collect();
    let family = TensorFamily::new(&ring, p, bu.base().basis(), units, nus);
    debug!("round_up: d = {d}, reducing entries with floor {}", r * d);
    let t = data_reduce(
        ReductionProblem {
            family,
            rank_floor: r * d,
            samples,
        },
        config.mode,
        rng,
    )?;
    let out_blocks: Vec<Mat<F::El>> = t.into_iter().map(|row| Mat::from_vec(d, d, row)).collect();
    bu.element(&out_blocks)
}

/// Carries a matrix of rank `rd` at degree `d >= n` to one of rank at least
/// `r d'` at degree `d'`, one degree at a time.
pub fn lift_rank<F: Field, G: Rng>(
    bu: &BlowUp<F>,
    a: &Mat<F::El>,
    d_target: usize,
    config: &RoundUpConfig,
    rng: &mut G,
) -> Result<Mat<F::El>> {
    let field = bu.base().field_ref();
    let (n, d) = (bu.n(), bu.degree());
    if d < n {
        return Err(AlgebraError::InvalidInput(format!(
            "rank lifting needs degree at least n = {n}, got {d}"
        )));
    }
    if d_target <= d {
        return Err(AlgebraError::InvalidInput(format!(
            "target degree {d_target} must exceed {d}"
        )));
    }
    let rho = field.rank(a);
    if rho % d != 0 {
        return Err(AlgebraError::InvalidInput(format!(
            "rank {rho} is not a multiple of the degree {d}"
        )));
    }
    let r = rho / d;
    let mut blocks = bu
        .coordinates(a)
        .ok_or_else(|| AlgebraError::InvalidInput("matrix is not in the blow-up".into()))?;
    let mut cur = a.clone();
    for e in d..d_target {
        let next = BlowUp::new(bu.base().clone(), e + 1)?;
        let padded: Vec<Mat<F::El>> = blocks
            .iter()
            .map(|b| Mat::from_fn(e + 1, e + 1, |i, j| if i < e && j < e { b[(i, j)].clone() } else { field.zero() }))
            .collect();
        cur = next.element(&padded)?;
        if r > 0 {
            cur = round_up_rank(&next, &cur, config, rng)?;
        }
        let got = field.rank(&cur);
        if got < r * (e + 1) {
            return Err(AlgebraError::Internal(format!(
                "lifted rank {got} below {} at degree {}",
                r * (e + 1),
                e + 1
            )));
        }
        blocks = next.coordinates(&cur).expect("round-up output lies in the blow-up");
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{BiPolyRing, PrimeField, Rationals, Ring};
    use crate::mspace::MatrixSpace;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }

    fn skew3(f: &PrimeField) -> MatrixSpace<PrimeField> {
        let m = |i, j| {
            let mut a = Mat::unit(f, 3, 3, i, j);
            a[(j, i)] = f.from_int(-1);
            a
        };
        MatrixSpace::new(*f, 3, vec![m(0, 1), m(0, 2), m(1, 2)]).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let f = PrimeField::new(7).unwrap();
        let ring = UnityRing::new(f, 1).unwrap();
        let p = BiPolyRing::new(ring.clone());
        let inner = vec![
            Mat::unit(&p, 2, 2, 0, 0),
            Mat::unit(&p, 2, 2, 1, 1),
        ];
        let fam = TensorFamily::new(&ring, &p, &[Mat::identity(&f, 1)], inner, vec![vec![p.x(), p.one()]]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let prob = ReductionProblem {
            family: fam.clone(),
            rank_floor: 2,
            samples: vec![0, 1, 2],
        };
        assert_eq!(data_reduce(prob, Specialization::default(), &mut rng).unwrap(), vec![vec![1, 1]]);

        let prob = ReductionProblem {
            family: fam.clone(),
            rank_floor: 0,
            samples: vec![3, 1, 2],
        };
        assert_eq!(data_reduce(prob, Specialization::default(), &mut rng).unwrap(), vec![vec![3, 1]]);

        let mut constant = fam.clone();
        constant.coeffs = vec![vec![p.constant(ring.embed(&5)), p.one()]];
        let prob = ReductionProblem {
            family: constant,
            rank_floor: 2,
            samples: vec![0, 1, 2],
        };
        assert_eq!(data_reduce(prob, Specialization::default(), &mut rng).unwrap(), vec![vec![5, 1]]);

        let prob = ReductionProblem {
            family: fam,
            rank_floor: 2,
            samples: vec![0, 1],
        };
        assert!(matches!(
            data_reduce(prob, Specialization::default(), &mut rng),
            Err(AlgebraError::FieldTooSmall { .. })
        ));
    }

    #[test]
    fn identity_plus_e11_rounds_to_four() {
        let f = f();
        let s = MatrixSpace::new(f, 2, vec![Mat::identity(&f, 2), Mat::unit(&f, 2, 2, 0, 0)]).unwrap();
        let bu = BlowUp::new(s, 2).unwrap();
        let a = bu.element(&[Mat::unit(&f, 2, 2, 0, 0), Mat::unit(&f, 2, 2, 1, 1)]).unwrap();
        assert_eq!(f.rank(&a), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let out = round_up_rank(&bu, &a, &RoundUpConfig::default(), &mut rng).unwrap();
        assert_eq!(f.rank(&out), 4);
        assert!(bu.coordinates(&out).is_some());
    }

    #[test]
    fn divisible_rank_is_unchanged() {
        let f = f();
        let bu = BlowUp::new(skew3(&f), 2).unwrap();
        let a = bu
            .element(&[Mat::identity(&f, 2), Mat::zeros(&f, 2, 2), Mat::zeros(&f, 2, 2)])
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(round_up_rank(&bu, &a, &RoundUpConfig::default(), &mut rng).unwrap(), a);
    }

    #[test]
    fn skew_rank_five_rounds_to_six() {
        let f = f();
        let bu = BlowUp::new(skew3(&f), 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = loop {
            let blocks: Vec<Mat<u64>> = (0..3)
                .map(|_| Mat::from_fn(2, 2, |_, _| if rng.gen_bool(0.5) { rng.gen_range(1..10007) } else { 0 }))
                .collect();
            let a = bu.element(&blocks).unwrap();
            if f.rank(&a) == 5 {
                break a;
            }
        };
        let out = round_up_rank(&bu, &a, &RoundUpConfig::default(), &mut rng).unwrap();
        assert_eq!(f.rank(&out), 6);
        assert!(bu.coordinates(&out).is_some());
    }

    #[test]
    fn degree_three_over_rationals() {
        let q = Rationals;
        let one = q.one();
        let b1 = Mat::from_rows(vec![vec![one.clone(), q.zero()], vec![q.zero(), q.zero()]]);
        let b2 = Mat::from_rows(vec![vec![q.zero(), one.clone()], vec![q.zero(), q.zero()]]);
        let b3 = Mat::from_rows(vec![vec![q.zero(), q.zero()], vec![q.zero(), one.clone()]]);
        let bu = BlowUp::new(MatrixSpace::new(q, 2, vec![b1, b2, b3]).unwrap(), 3).unwrap();
        let e = |i, j| Mat::unit(&q, 3, 3, i, j);
        let a = bu.element(&[e(0, 0), e(1, 1), e(2, 2).add(&q, &e(0, 0))]).unwrap();
        let rho = q.rank(&a);
        assert_eq!(rho, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let out = round_up_rank(&bu, &a, &RoundUpConfig::default(), &mut rng).unwrap();
        assert_eq!(q.rank(&out), 6);
    }

    #[test]
    fn lifting() {
        let f = f();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let cfg = RoundUpConfig::default();

        let id = MatrixSpace::new(f, 2, vec![Mat::identity(&f, 2)]).unwrap();
        let bu = BlowUp::new(id, 2).unwrap();
        let out = lift_rank(&bu, &Mat::identity(&f, 4), 4, &cfg, &mut rng).unwrap();
        assert_eq!((out.rows(), f.rank(&out)), (8, 8));

        let zero = BlowUp::new(MatrixSpace::new(f, 2, vec![Mat::zeros(&f, 2, 2)]).unwrap(), 2).unwrap();
        let out = lift_rank(&zero, &Mat::zeros(&f, 4, 4), 3, &cfg, &mut rng).unwrap();
        assert_eq!((out.rows(), f.rank(&out)), (6, 0));

        let bu = BlowUp::new(skew3(&f), 3).unwrap();
        let (est, blocks) = bu.rank_estimate(8, 1 << 32, &mut rng);
        assert_eq!(est.rank, 9);
        let a = bu.element(&blocks).unwrap();
        let out = lift_rank(&bu, &a, 4, &cfg, &mut rng).unwrap();
        assert_eq!(f.rank(&out), 12);

        let small = BlowUp::new(skew3(&f), 2).unwrap();
        assert!(matches!(
            lift_rank(&small, &Mat::zeros(&f, 6, 6), 3, &cfg, &mut rng),
            Err(AlgebraError::InvalidInput(_))
        ));
    }
}
