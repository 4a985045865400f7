use super::{hom::HomSpace, min_generators, Module};
use crate::linalg::Matrix;

/// A split surjection `φ: M -> R`, as a `dim R x dim M` matrix, if any.
fn split_surjection(m: &Module) -> Option<Matrix> {
    if m.is_zero() {
        return None;
    }
    let algebra = m.algebra();
    // a free summand R carries soc(R) faithfully
    let socle = &algebra.profile().socle_basis;
    if socle.columns().all(|s| m.element_action(&s).is_zero()) {
        return None;
    }
    let lambda = Matrix::from_columns(m.p(), algebra.dim(), &[algebra.residue_functional().to_vec()]).transpose();
    let dual = HomSpace::new(m, &Module::free(algebra, 1)).expect("same algebra");
    dual.basis_maps().iter().find(|f| !(&lambda * f).is_zero()).cloned()
}

/// True when some `φ: M -> R` and `v ∈ M` make `φ(v)` a unit.
pub fn has_free_summand(m: &Module) -> bool {
    split_surjection(m).is_some()
}

/// Split off one copy of `R`: returns the complement `ker φ` of a free summand.
pub fn split_free_summand(m: &Module) -> Option<Module> {
    split_surjection(m).map(|phi| m.restrict(&phi.kernel_basis()))
}

/// `M ≅ N ⊕ R^r` with `N` free of free summands.
pub fn strip_free_summands(m: &Module) -> (Module, usize) {
    let n = m.algebra().dim();
    let nu = min_generators(m);
    if nu * n == m.dim() {
        return (Module::zero(m.algebra()), nu);
    }
    let mut current = m.clone();
    let mut r = 0;
    while let Some(next) = split_free_summand(&current) {
        current = next;
        r += 1;
    }
    (current, r)
}
