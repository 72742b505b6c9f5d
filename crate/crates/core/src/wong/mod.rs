//! Second Wong sequences `W_0 = 0, W_i = B(A^-1(W_(i-1)))`.
//!
//! If the limit stays inside `im(A)`, then `A^-1(W*)` is a shrunk subspace
//! whose shrinkage equals the corank of `A`. Otherwise the first escaping
//! stage yields a chain of matrices and vectors used to raise the rank.

use log::debug;

use crate::error::{AlgebraError, Result};
use crate::exactfield::Field;
use crate::linalg::{image, preimage, solve, Mat, Subspace};
use crate::mspace::SpaceLike;

#[derive(Debug, Clone, PartialEq)]
pub enum WongVerdict {
    /// The sequence stabilized inside `im(A)`.
    Contained,
    /// Stage `index` is the first one not contained in `im(A)`.
    Escaped { index: usize },
    /// The step cap was reached first.
    Capped,
}

#[derive(Debug, Clone)]
pub struct WongResult<E> {
    /// `W_0, W_1, ...` up to the stopping stage.
    pub stages: Vec<Subspace<E>>,
    pub verdict: WongVerdict,
    /// `A^-1(W*)` when the limit is contained in `im(A)`.
    pub witness: Option<Subspace<E>>,
}

impl<E> WongResult<E> {
    pub fn contained_in_image(&self) -> bool {
        self.verdict == WongVerdict::Contained
    }

    pub fn first_escape(&self) -> Option<usize> {
        match self.verdict {
            WongVerdict::Escaped { index } => Some(index),
            _ => None,
        }
    }
}

/// Matrices `C_1..C_l` and vectors `v_1..v_l` with `v_1 in ker A`,
/// `A v_(j+1) = C_j v_j` and `C_l v_l` outside `im(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WongChain<E> {
    pub cs: Vec<Mat<E>>,
    pub vs: Vec<Vec<E>>,
    /// Positions of the `C_j` in the space's spanning set.
    pub indices: Vec<usize>,
}

pub fn second_wong<F, S>(field: &F, a: &Mat<F::El>, space: &S, step_cap: Option<usize>) -> Result<WongResult<F::El>>
where
    F: Field,
    S: SpaceLike<F>,
{
    let n = space.size();
    if a.rows() != n || a.cols() != n {
        return Err(AlgebraError::DimensionMismatch(format!(
            "pivot matrix is {}x{}, space has size {n}",
            a.rows(),
            a.cols()
        )));
    }
    if !space.contains(a) {
        return Err(AlgebraError::InvalidInput("pivot matrix is not in the space".into()));
    }
    let im = image(field, a);
    let mut stages = vec![Subspace::zero(n)];
    loop {
        let i = stages.len();
        if step_cap.is_some_and(|cap| i > cap) {
            return Ok(WongResult {
                stages,
                verdict: WongVerdict::Capped,
                witness: None,
            });
        }
        let prev = stages.last().expect("nonempty");
        let next = space.apply(&preimage(field, a, prev)?)?;
        debug!("wong stage {i}: dim {}", next.dim());
        if !im.contains_space(field, &next) {
            stages.push(next);
            return Ok(WongResult {
                stages,
                verdict: WongVerdict::Escaped { index: i },
                witness: None,
            });
        }
        if next == *prev {
            let witness = preimage(field, a, &next)?;
            return Ok(WongResult {
                stages,
                verdict: WongVerdict::Contained,
                witness: Some(witness),
            });
        }
        stages.push(next);
    }
}

/// `C_l A^-1 ... C_(j+1) A^-1 (X)` for the already chosen suffix.
fn push_through<F: Field>(
    field: &F,
    a: &Mat<F::El>,
    suffix: &[&Mat<F::El>],
    x: &Subspace<F::El>,
) -> Result<Subspace<F::El>> {
    let mut cur = x.clone();
    for c in suffix {
        cur = preimage(field, a, &cur)?.map(field, c);
    }
    Ok(cur)
}

/// Extracts the escape chain. Chooses `C_l` first and then `C_(l-1)`, ...,
/// each time taking the first spanning element that keeps the pushed image
/// outside `im(A)`; then picks `v_1` among the kernel basis vectors and the
/// later `v_j` as the solutions with free variables set to zero.
pub fn wong_chain<F, S>(field: &F, a: &Mat<F::El>, space: &S, result: &WongResult<F::El>) -> Result<WongChain<F::El>>
where
    F: Field,
    S: SpaceLike<F>,
{
    let Some(l) = result.first_escape() else {
        return Err(AlgebraError::InvalidInput("the Wong sequence did not escape im(A)".into()));
    };
    let im = image(field, a);
    let spanning = space.spanning();
    // chosen[k] is C_(l-k)
    let mut chosen: Vec<usize> = Vec::with_capacity(l);
    for j in (1..=l).rev() {
        let pre = preimage(field, a, &result.stages[j - 1])?;
        let suffix: Vec<&Mat<F::El>> = chosen.iter().rev().map(|&k| &spanning[k]).collect();
        let mut found = None;
        for (k, c) in spanning.iter().enumerate() {
            let img = push_through(field, a, &suffix, &pre.map(field, c))?;
            if !im.contains_space(field, &img) {
                found = Some(k);
                break;
            }
        }
        let k = found.ok_or_else(|| {
            AlgebraError::Internal(format!("no spanning element keeps stage {j} outside im(A)"))
        })?;
        chosen.push(k);
    }
    chosen.reverse();
    let cs: Vec<Mat<F::El>> = chosen.iter().map(|&k| spanning[k].clone()).collect();

    let kernel = preimage(field, a, &Subspace::zero(a.rows()))?;
    for v1 in kernel.basis() {
        let mut vs = vec![v1.clone()];
        for c in &cs[..l - 1] {
            let rhs = c.mul_vec(field, vs.last().expect("nonempty"));
            let next = solve(field, a, &rhs)?.ok_or_else(|| {
                AlgebraError::Internal("intermediate chain vector left im(A)".into())
            })?;
            vs.push(next);
        }
        let last = cs[l - 1].mul_vec(field, &vs[l - 1]);
        if !im.contains(field, &last) {
            let chain = WongChain {
                cs,
                vs,
                indices: chosen,
            };
            debug_assert!(check_chain(field, a, &chain));
            return Ok(chain);
        }
    }
    Err(AlgebraError::Internal("no kernel vector starts an escaping chain".into()))
}

/// Checks the three defining relations of a chain.
pub fn check_chain<F: Field>(field: &F, a: &Mat<F::El>, chain: &WongChain<F::El>) -> bool {
    let l = chain.cs.len();
    if l == 0 || chain.vs.len() != l {
        return false;
    }
    let zero = |v: &[F::El]| v.iter().all(|x| field.is_zero(x));
    if !zero(&a.mul_vec(field, &chain.vs[0])) || zero(&chain.vs[0]) {
        return false;
    }
    for j in 1..l {
        let lhs = a.mul_vec(field, &chain.vs[j]);
        let rhs = chain.cs[j - 1].mul_vec(field, &chain.vs[j - 1]);
        if lhs != rhs {
            return false;
        }
    }
    let last = chain.cs[l - 1].mul_vec(field, &chain.vs[l - 1]);
    !image(field, a).contains(field, &last)
}

/// The first of `C`, `A + s C` (`s` from `samples`) with rank above
/// `target`.
pub fn pencil_max_rank<F: Field>(
    field: &F,
    a: &Mat<F::El>,
    c: &Mat<F::El>,
    target: usize,
    samples: &[F::El],
) -> Result<Mat<F::El>> {
    if field.rank(c) > target {
        return Ok(c.clone());
    }
    for s in samples {
        let mut m = a.clone();
        m.add_scaled(field, s, c);
        if field.rank(&m) > target {
            return Ok(m);
        }
    }
    Err(AlgebraError::FieldTooSmall {
        required: (samples.len().max(a.rows()) + 1) as u64,
    })
}
