use rand::Rng;

use super::Mat;
use crate::error::{AlgebraError, Result};
use crate::exactfield::{
    random_element, sample_set, BiPoly, BiPolyRing, BiRational, BiRationalRing, Field, RankRing,
    Ring,
};

/// A matrix with entries in `R[X, Y]`, presented by its specializations.
pub trait PolyMatrix<R: RankRing> {
    fn shape(&self) -> (usize, usize);

    /// Bound on the total degree of every entry.
    fn degree_bound(&self) -> usize;

    /// The matrix at `X = x0`, `Y = y0`.
    fn specialize(&self, x0: &R::El, y0: &R::El) -> Mat<R::El>;
}

/// Plain polynomial matrix.
#[derive(Debug, Clone)]
pub struct BiPolyMat<R: Ring> {
    pub ring: BiPolyRing<R>,
    pub entries: Mat<BiPoly<R::El>>,
}

impl<R: RankRing> PolyMatrix<R> for BiPolyMat<R> {
    fn shape(&self) -> (usize, usize) {
        (self.entries.rows(), self.entries.cols())
    }

    fn degree_bound(&self) -> usize {
        self.entries
            .entries()
            .iter()
            .filter_map(|p| p.total_degree())
            .max()
            .unwrap_or(0) as usize
    }

    fn specialize(&self, x0: &R::El, y0: &R::El) -> Mat<R::El> {
        self.entries.map(|p| self.ring.eval(p, x0, y0))
    }
}

/// Multiplies every row by the product of the distinct denominators in it.
/// The rank over `F(X, Y)` is unchanged.
pub fn clear_denominators<F: Field>(
    ring: &BiRationalRing<F>,
    m: &Mat<BiRational<F::El>>,
) -> BiPolyMat<F> {
    let pr = ring.poly_ring();
    let mut rows: Vec<Vec<BiPoly<F::El>>> = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let row = m.row(i);
        let mut dens: Vec<&BiPoly<F::El>> = Vec::new();
        for x in row {
            if !pr.is_zero(&x.num) && !dens.contains(&&x.den) {
                dens.push(&x.den);
            }
        }
        rows.push(
            row.iter()
                .map(|x| {
                    if pr.is_zero(&x.num) {
                        return pr.zero();
                    }
                    let mut acc = x.num.clone();
                    for &d in &dens {
                        if *d != x.den {
                            acc = pr.mul(&acc, d);
                        }
                    }
                    acc
                })
                .collect(),
        );
    }
    BiPolyMat {
        ring: pr.clone(),
        entries: Mat::from_fn(m.rows(), m.cols(), |i, j| rows[i][j].clone()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Specialization {
    /// Independent random points, each drawn from the first `sample_size`
    /// field elements.
    Randomized { points: usize, sample_size: u64 },
    /// The full grid `S x S` with `|S| = N D + 1`.
    Deterministic,
}

impl Default for Specialization {
    fn default() -> Self {
        Specialization::Randomized {
            points: 20,
            sample_size: 1 << 32,
        }
    }
}

/// Rank of a polynomial matrix over the function field `Frac(R)(X, Y)`,
/// as the maximum rank over specializations. For the unity ring this is the
/// maximum over components.
///
/// Deterministic mode is exact. Randomized mode returns a lower bound that
/// is exact unless every sampled point hits the zero set of a nonzero minor.
pub fn function_field_rank<R, P, G>(ring: &R, m: &P, mode: Specialization, rng: &mut G) -> Result<usize>
where
    R: RankRing,
    P: PolyMatrix<R>,
    G: Rng,
{
    specialized_max_rank(ring, m, mode, usize::MAX, rng)
}

/// Whether the function-field rank is at least `target`; stops as soon as a
/// witness point is found.
pub fn function_field_rank_at_least<R, P, G>(
    ring: &R,
    m: &P,
    target: usize,
    mode: Specialization,
    rng: &mut G,
) -> Result<bool>
where
    R: RankRing,
    P: PolyMatrix<R>,
    G: Rng,
{
    Ok(specialized_max_rank(ring, m, mode, target, rng)? >= target)
}

fn specialized_max_rank<R, P, G>(ring: &R, m: &P, mode: Specialization, stop: usize, rng: &mut G) -> Result<usize>
where
    R: RankRing,
    P: PolyMatrix<R>,
    G: Rng,
{
    let (rows, cols) = m.shape();
    let full = rows.min(cols);
    let stop = stop.min(full);
    if full == 0 {
        return Ok(0);
    }
    let base = ring.base();
    let mut best = 0;
    match mode {
        Specialization::Randomized {
            points,
            sample_size,
        } => {
            for _ in 0..points.max(1) {
                let x0 = ring.embed(&random_element(base, sample_size, rng));
                let y0 = ring.embed(&random_element(base, sample_size, rng));
                let r = ring.max_rank_probe(&m.specialize(&x0, &y0), sample_size, rng);
                best = best.max(r);
                if best >= stop {
                    break;
                }
            }
        }
        Specialization::Deterministic => {
            let s = full
                .checked_mul(m.degree_bound())
                .ok_or_else(|| AlgebraError::InstanceTooLarge("minor degree bound overflows".into()))?;
            let pts = sample_set(base, s + 1, false)?;
            'grid: for a in &pts {
                let x0 = ring.embed(a);
                for b in &pts {
                    let y0 = ring.embed(b);
                    best = best.max(ring.max_rank(&m.specialize(&x0, &y0)));
                    if best >= stop {
                        break 'grid;
                    }
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mat(ring: &BiPolyRing<Rationals>, v: Vec<Vec<BiPoly<num_rational::BigRational>>>) -> BiPolyMat<Rationals> {
        BiPolyMat {
            ring: ring.clone(),
            entries: Mat::from_rows(v),
        }
    }

    #[test]
    fn examples() {
        let pr = BiPolyRing::new(Rationals);
        let (x, y, one, zero) = (pr.x(), pr.y(), pr.one(), pr.zero());
        let y2 = pr.mul(&y, &y);
        let cases = vec![
            (mat(&pr, vec![vec![x.clone(), zero.clone()], vec![zero, y.clone()]]), 2),
            (mat(&pr, vec![vec![x.clone(), x], vec![one.clone(), one.clone()]]), 1),
            (mat(&pr, vec![vec![one, y.clone()], vec![y, y2]]), 1),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (m, expect) in cases {
            for mode in [Specialization::Deterministic, Specialization::default()] {
                assert_eq!(function_field_rank(&Rationals, &m, mode, &mut rng).unwrap(), expect);
            }
        }
    }

    #[test]
    fn grid_needs_enough_points() {
        let f = PrimeField::new(3).unwrap();
        let pr = BiPolyRing::new(f);
        let x3 = pr.monomial(1, 3, 0);
        let m = BiPolyMat {
            ring: pr,
            entries: Mat::from_rows(vec![vec![x3]]),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(
            function_field_rank(&f, &m, Specialization::Deterministic, &mut rng),
            Err(AlgebraError::FieldTooSmall { required: 4 })
        );
    }

    #[test]
    fn denominators_cleared_per_row() {
        let f = BiRationalRing::new(Rationals);
        let pr = f.poly_ring().clone();
        let x = f.from_poly(pr.x());
        let y = f.from_poly(pr.y());
        let inv_x = f.inv(&x).unwrap();
        let inv_y = f.inv(&y).unwrap();
        // [[1/X, 1/Y], [1, X/Y]]: rows proportional? det = X/(XY) - 1/Y = 0.
        let m = Mat::from_rows(vec![
            vec![inv_x, inv_y.clone()],
            vec![f.one(), f.mul(&x, &inv_y)],
        ]);
        let c = clear_denominators(&f, &m);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(
            function_field_rank(&Rationals, &c, Specialization::Deterministic, &mut rng).unwrap(),
            1
        );
    }
}
