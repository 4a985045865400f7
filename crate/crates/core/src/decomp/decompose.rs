use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::iso::ReducedHom;
use super::{enumerate_nonzero, search_size, Budget, DecompError};
use crate::algebra::Algebra;
use crate::linalg::Matrix;
use crate::moduletheory::{min_generators, strip_free_summands, Module};

/// How a summand was certified indecomposable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndecomposableTier {
    /// One generator: `End(M)` is a quotient of `R`, hence local.
    Cyclic,
    /// A one-dimensional socle cannot be shared by two summands.
    SimpleSocle,
    /// `End(M)` modulo its nil ideal is one-dimensional.
    ReducedEndOne,
    /// Every class of `End(M)` modulo the nil ideal was checked to be
    /// invertible or nilpotent.
    Exhaustive { candidates: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub module: Module,
    pub tier: IndecomposableTier,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Non-free indecomposable summands.
    pub summands: Vec<Summand>,
    /// Number of copies of `R`.
    pub free_rank: usize,
    algebra: Arc<Algebra>,
}

impl Decomposition {
    /// All indecomposable summands including copies of `R`.
    pub fn modules(&self) -> Vec<Module> {
        let mut out: Vec<Module> = self.summands.iter().map(|s| s.module.clone()).collect();
        out.extend(std::iter::repeat_n(Module::free(&self.algebra, 1), self.free_rank));
        out
    }
}

enum Split {
    Indecomposable(IndecomposableTier),
    Parts(Module, Module),
}

fn fitting_split(m: &Module, f: &Matrix) -> Option<(Module, Module)> {
    let g = f.pow(m.dim() as u64);
    if g.is_zero() {
        return None;
    }
    let image = g.column_space();
    if image.cols() == m.dim() {
        return None;
    }
    Some((m.restrict(&g.kernel_basis()), m.restrict(&image)))
}

fn split_once<R: Rng + ?Sized>(m: &Module, budget: &Budget, rng: &mut R) -> Result<Split, DecompError> {
    if min_generators(m) == 1 {
        return Ok(Split::Indecomposable(IndecomposableTier::Cyclic));
    }
    if m.socle().cols() == 1 {
        return Ok(Split::Indecomposable(IndecomposableTier::SimpleSocle));
    }
    let p = m.p();
    if m.radical().cols() == 0 {
        // semisimple: any coordinate line is a summand
        let e0 = Matrix::identity(p, m.dim()).select_columns(&[0]);
        let rest = Matrix::identity(p, m.dim()).select_columns(&(1..m.dim()).collect::<Vec<_>>());
        return Ok(Split::Parts(m.restrict(&e0), m.restrict(&rest)));
    }
    let reduced = ReducedHom::new(m, m)?;
    let d = reduced.reduced_dim();
    if d <= 1 {
        return Ok(Split::Indecomposable(IndecomposableTier::ReducedEndOne));
    }
    let try_candidate = |coeffs: &[u32]| -> Option<(Module, Module)> {
        if reduced.top_is_invertible(coeffs) {
            return None;
        }
        let f = reduced.hom.map_matrix(&reduced.coordinates(coeffs));
        fitting_split(m, &f)
    };
    for _ in 0..budget.random_trials {
        let coeffs: Vec<u32> = (0..d).map(|_| rng.random_range(0..p)).collect();
        if let Some((a, b)) = try_candidate(&coeffs) {
            return Ok(Split::Parts(a, b));
        }
    }
    let size = search_size(p, d);
    if size > budget.enumeration_limit {
        return Err(DecompError::BudgetExceeded(format!(
            "cannot certify indecomposability: reduced endomorphism space has dimension {d} over F_{p}"
        )));
    }
    let mut found = None;
    enumerate_nonzero(p, d, |c| {
        found = try_candidate(c);
        found.is_some()
    });
    Ok(match found {
        Some((a, b)) => Split::Parts(a, b),
        None => Split::Indecomposable(IndecomposableTier::Exhaustive { candidates: size }),
    })
}

/// Split `M` into indecomposable summands, each with the tier that
/// certified it.
pub fn decompose<R: Rng + ?Sized>(m: &Module, budget: &Budget, rng: &mut R) -> Result<Decomposition, DecompError> {
    let (core, free_rank) = strip_free_summands(m);
    let mut summands = Vec::new();
    let mut stack = vec![core];
    while let Some(current) = stack.pop() {
        if current.is_zero() {
            continue;
        }
        match split_once(&current, budget, rng)? {
            Split::Indecomposable(tier) => summands.push(Summand { module: current, tier }),
            Split::Parts(a, b) => {
                stack.push(b);
                stack.push(a);
            }
        }
    }
    Ok(Decomposition { summands, free_rank, algebra: Arc::clone(m.algebra()) })
}
