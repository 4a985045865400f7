//! Finite-dimensional modules over an [`Algebra`], stored as one action
//! matrix per algebra basis element, together with covers, envelopes,
//! syzygies, cosyzygies, Hom spaces and free-summand stripping.

mod cover;
mod hom;
pub mod sample;
mod summand;

use std::fmt;
use std::sync::Arc;

use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::linalg::{LinalgError, Matrix};

pub use cover::{
    cosyzygy, cover_from_images, free_cover, free_envelope, min_generators, syzygy,
};
pub use hom::{biduality_map, dual, hom_module, HomSpace};
pub use summand::{has_free_summand, split_free_summand, strip_free_summands};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("matrix does not commute with the module actions")]
    NotHomomorphism,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// How to build a module with [`construct_module`].
#[derive(Debug, Clone)]
pub enum ModuleSpec {
    Free(usize),
    /// `R / I` where `I` is the ideal generated by the given elements.
    Cyclic(Vec<Vec<u32>>),
    ResidueField,
    DirectSum(Vec<Module>),
    /// One action matrix per algebra basis element.
    Raw(Vec<Matrix>),
}

#[derive(Clone)]
pub struct Module {
    algebra: Arc<Algebra>,
    dim: usize,
    actions: Vec<Matrix>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.actions == other.actions && same_algebra(&self.algebra, &other.algebra)
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Module").field("dim", &self.dim).field("actions", &self.actions).finish()
    }
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn construct_module(algebra: &Arc<Algebra>, spec: ModuleSpec) -> Result<Module, ModuleError> {
    match spec {
        ModuleSpec::Free(n) => Ok(Module::free(algebra, n)),
        ModuleSpec::Cyclic(gens) => Module::cyclic(algebra, &gens),
        ModuleSpec::ResidueField => Ok(Module::residue_field(algebra)),
        ModuleSpec::DirectSum(parts) => {
            let mut acc = Module::zero(algebra);
            for m in &parts {
                acc = acc.direct_sum(m)?;
            }
            Ok(acc)
        }
        ModuleSpec::Raw(actions) => Module::from_actions(algebra, actions),
    }
}

impl Module {
    pub(crate) fn from_actions_unchecked(algebra: &Arc<Algebra>, dim: usize, actions: Vec<Matrix>) -> Module {
        debug_assert_eq!(actions.len(), algebra.dim());
        Module { algebra: Arc::clone(algebra), dim, actions }
    }

    /// Validate raw action matrices against the module axioms.
    pub fn from_actions(algebra: &Arc<Algebra>, actions: Vec<Matrix>) -> Result<Module, ModuleError> {
        let n = algebra.dim();
        let p = algebra.p();
        if actions.len() != n {
            return Err(ModuleError::InvalidAction(format!(
                "expected {n} action matrices, got {}",
                actions.len()
            )));
        }
        let dim = actions[0].rows();
        for (b, a) in actions.iter().enumerate() {
            if a.modulus() != p {
                return Err(LinalgError::ModulusMismatch { left: p, right: a.modulus() }.into());
            }
            if a.rows() != dim || a.cols() != dim {
                return Err(ModuleError::InvalidAction(format!(
                    "action {b} is {}x{}, expected {dim}x{dim}",
                    a.rows(),
                    a.cols()
                )));
            }
        }
        let m = Module { algebra: Arc::clone(algebra), dim, actions };
        if m.element_action(algebra.unit()) != Matrix::identity(p, dim) {
            return Err(ModuleError::InvalidAction("the unit does not act as the identity".into()));
        }
        for i in 0..n {
            for j in i..n {
                let lhs = &m.actions[i] * &m.actions[j];
                let rhs = m.element_action(algebra.structure_constants(i, j));
                if lhs != rhs {
                    return Err(ModuleError::InvalidAction(format!(
                        "action(e_{i}) action(e_{j}) differs from action(e_{i} e_{j})"
                    )));
                }
                if lhs != &m.actions[j] * &m.actions[i] {
                    return Err(ModuleError::InvalidAction(format!("actions of e_{i} and e_{j} do not commute")));
                }
            }
        }
        Ok(m)
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Module {
        let p = algebra.p();
        Module::from_actions_unchecked(algebra, 0, vec![Matrix::zeros(p, 0, 0); algebra.dim()])
    }

    /// `R^n`; the basis of the `j`-th copy occupies coordinates `j*dim R ..`.
    pub fn free(algebra: &Arc<Algebra>, n: usize) -> Module {
        let p = algebra.p();
        let actions = (0..algebra.dim())
            .map(|b| {
                let blocks: Vec<&Matrix> = (0..n).map(|_| algebra.regular_action(b)).collect();
                Matrix::block_diagonal(p, &blocks)
            })
            .collect();
        Module::from_actions_unchecked(algebra, n * algebra.dim(), actions)
    }

    pub fn residue_field(algebra: &Arc<Algebra>) -> Module {
        let p = algebra.p();
        let actions = (0..algebra.dim())
            .map(|b| {
                let mut m = Matrix::zeros(p, 1, 1);
                m.set(0, 0, algebra.residue(&algebra.basis_vector(b)));
                m
            })
            .collect();
        Module::from_actions_unchecked(algebra, 1, actions)
    }

    /// `R / (generators)`.
    pub fn cyclic(algebra: &Arc<Algebra>, generators: &[Vec<u32>]) -> Result<Module, ModuleError> {
        let n = algebra.dim();
        if let Some(g) = generators.iter().find(|g| g.len() != n) {
            return Err(ModuleError::DimensionMismatch(format!(
                "ideal generator has {} coordinates, expected {n}",
                g.len()
            )));
        }
        let reduced: Vec<Vec<u32>> =
            generators.iter().map(|g| g.iter().map(|&x| x % algebra.p()).collect()).collect();
        let free = Module::free(algebra, 1);
        let ideal = free.generated_submodule(&reduced);
        Ok(free.quotient(&ideal).0)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn p(&self) -> u32 {
        self.algebra.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn action(&self, b: usize) -> &Matrix {
        &self.actions[b]
    }

    /// Action of an arbitrary algebra element.
    pub fn element_action(&self, r: &[u32]) -> Matrix {
        let mut out = Matrix::zeros(self.p(), self.dim, self.dim);
        for (b, &c) in r.iter().enumerate() {
            out.add_scaled(&self.actions[b], c);
        }
        out
    }

    pub(crate) fn check_same_algebra(&self, other: &Module) -> Result<(), ModuleError> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(ModuleError::AlgebraMismatch)
        }
    }

    pub fn direct_sum(&self, other: &Module) -> Result<Module, ModuleError> {
        self.check_same_algebra(other)?;
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| Matrix::block_diagonal(self.p(), &[a, b]))
            .collect();
        Ok(Module::from_actions_unchecked(&self.algebra, self.dim + other.dim, actions))
    }

    /// `M^n`.
    pub fn power(&self, n: usize) -> Module {
        let actions = self
            .actions
            .iter()
            .map(|a| Matrix::block_diagonal(self.p(), &vec![a; n]))
            .collect();
        Module::from_actions_unchecked(&self.algebra, self.dim * n, actions)
    }

    /// Basis (as columns) of the submodule generated by the given vectors.
    pub fn generated_submodule(&self, vectors: &[Vec<u32>]) -> Matrix {
        let mut cols = Vec::with_capacity(vectors.len() * self.actions.len());
        for v in vectors {
            for a in &self.actions {
                cols.push(a.mul_vec(v));
            }
        }
        Matrix::from_columns(self.p(), self.dim, &cols).column_space()
    }

    /// The module carried by an invariant subspace with the given column basis.
    pub fn restrict(&self, basis: &Matrix) -> Module {
        let k = basis.cols();
        let left = basis.left_inverse().expect("submodule basis must be linearly independent");
        let actions = self.actions.iter().map(|a| &left * &(a * basis)).collect();
        Module::from_actions_unchecked(&self.algebra, k, actions)
    }

    /// `M / S` for an invariant subspace `S`, together with the projection
    /// matrix `M -> M/S`.
    pub fn quotient(&self, sub_basis: &Matrix) -> (Module, Matrix) {
        let p = self.p();
        let sub = sub_basis.column_space();
        let comp = sub.complement_units();
        let embed = Matrix::identity(p, self.dim).select_columns(&comp);
        let frame = sub.hstack(&embed);
        let inv = frame.inverse().unwrap().expect("complement completes a basis");
        let projection = inv.submatrix(sub.cols()..self.dim, 0..self.dim);
        let actions = self.actions.iter().map(|a| &projection * &(a * &embed)).collect();
        (Module::from_actions_unchecked(&self.algebra, comp.len(), actions), projection)
    }

    /// Basis of `mM`.
    pub fn radical(&self) -> Matrix {
        let p = self.p();
        let mut cols = Vec::new();
        for g in self.algebra.radical_generators() {
            cols.extend(self.element_action(g).columns());
        }
        Matrix::from_columns(p, self.dim, &cols).column_space()
    }

    /// Coordinates whose unit vectors lift a basis of `M/mM`.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.radical().complement_units()
    }

    /// Basis of `soc M = {v : m v = 0}`.
    pub fn socle(&self) -> Matrix {
        let stacked = Matrix::vstack_all(
            self.p(),
            self.dim,
            &self.algebra.radical_generators().iter().map(|g| self.element_action(g)).collect::<Vec<_>>(),
        );
        stacked.kernel_basis()
    }

    /// `dim m^i M` for `i = 0, 1, ...` until it reaches zero.
    pub fn radical_series_dims(&self) -> Vec<usize> {
        let p = self.p();
        let gens: Vec<Matrix> = self.algebra.radical_generators().iter().map(|g| self.element_action(g)).collect();
        let mut dims = vec![self.dim];
        let mut current = Matrix::identity(p, self.dim);
        while current.cols() > 0 {
            let mut cols = Vec::new();
            for g in &gens {
                cols.extend((g * &current).columns());
            }
            current = Matrix::from_columns(p, self.dim, &cols).column_space();
            dims.push(current.cols());
        }
        dims
    }

    /// True when `M` is isomorphic to `R^n` for some `n`.
    pub fn is_free(&self) -> bool {
        min_generators(self) * self.algebra.dim() == self.dim
    }

    /// Change of basis: the module with actions `P A P^-1`.
    pub fn conjugate(&self, change: &Matrix) -> Result<Module, ModuleError> {
        let inv = change
            .inverse()?
            .ok_or_else(|| ModuleError::DimensionMismatch("change of basis is singular".into()))?;
        if change.rows() != self.dim {
            return Err(ModuleError::DimensionMismatch("change of basis has the wrong size".into()));
        }
        let actions = self.actions.iter().map(|a| &(change * a) * &inv).collect();
        Ok(Module::from_actions_unchecked(&self.algebra, self.dim, actions))
    }
}

/// An `R`-linear map, stored as a `target.dim x source.dim` matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    matrix: Matrix,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({} -> {}, {:?})", self.source.dim, self.target.dim, self.matrix)
    }
}

impl Serialize for ModuleMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ModuleMap", 3)?;
        st.serialize_field("source_dim", &self.source.dim)?;
        st.serialize_field("target_dim", &self.target.dim)?;
        st.serialize_field("matrix", &self.matrix)?;
        st.end()
    }
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<ModuleMap, ModuleError> {
        source.check_same_algebra(&target)?;
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(ModuleError::DimensionMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim,
                source.dim
            )));
        }
        let map = ModuleMap { source, target, matrix };
        if !map.is_homomorphism() {
            return Err(ModuleError::NotHomomorphism);
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: Module, target: Module, matrix: Matrix) -> ModuleMap {
        ModuleMap { source, target, matrix }
    }

    pub fn identity(m: &Module) -> ModuleMap {
        ModuleMap::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.p(), m.dim))
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_homomorphism(&self) -> bool {
        self.source
            .actions
            .iter()
            .zip(&self.target.actions)
            .all(|(a, b)| (b * &self.matrix) == (&self.matrix * a))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        if other.target.dim != self.source.dim {
            return Err(ModuleError::DimensionMismatch("maps are not composable".into()));
        }
        Ok(ModuleMap::new_unchecked(other.source.clone(), self.target.clone(), &self.matrix * &other.matrix))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim == self.target.dim && self.is_injective()
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        if !self.is_isomorphism() {
            return None;
        }
        let inv = self.matrix.inverse().ok()??;
        Some(ModuleMap::new_unchecked(self.target.clone(), self.source.clone(), inv))
    }

    pub fn kernel(&self) -> Module {
        self.source.restrict(&self.matrix.kernel_basis())
    }

    pub fn image(&self) -> Module {
        self.target.restrict(&self.matrix.column_space())
    }

    pub fn cokernel(&self) -> Module {
        self.target.quotient(&self.matrix.column_space()).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quotient_from_polynomials;

    fn alg(p: u32, vars: &[&str], gens: &[&str]) -> Arc<Algebra> {
        Arc::new(quotient_from_polynomials(p, vars, gens).unwrap())
    }

    #[test]
    fn free_rank_one_over_dual_numbers() {
        let a = alg(2, &["x"], &["x^2"]);
        let r = construct_module(&a, ModuleSpec::Free(1)).unwrap();
        assert_eq!(r.dim(), 2);
        let x = r.element_action(&a.parse_element("x").unwrap());
        assert_eq!(x.rank(), 1);
        assert!(x.is_nilpotent());
    }

    #[test]
    fn residue_field_is_killed_by_radical() {
        let a = alg(3, &["x", "y"], &["x^2", "y^2"]);
        let k = construct_module(&a, ModuleSpec::ResidueField).unwrap();
        assert_eq!(k.dim(), 1);
        for g in a.radical_generators() {
            assert!(k.element_action(g).is_zero());
        }
    }

    #[test]
    fn cyclic_quotient_dimension() {
        let a = alg(5, &["x"], &["x^4"]);
        let x = a.parse_element("x").unwrap();
        let m = construct_module(&a, ModuleSpec::Cyclic(vec![x])).unwrap();
        assert_eq!(m.dim(), 1);
        let x2 = a.parse_element("x^2").unwrap();
        assert_eq!(Module::cyclic(&a, &[x2]).unwrap().dim(), 2);
    }

    #[test]
    fn raw_actions_are_validated() {
        let a = alg(2, &["x"], &["x^2"]);
        let p = 2;
        // x acting by the identity is not nilpotent
        let bad = vec![Matrix::identity(p, 2), Matrix::identity(p, 2)];
        assert!(matches!(Module::from_actions(&a, bad), Err(ModuleError::InvalidAction(_))));
        let good = Module::free(&a, 1).actions().to_vec();
        assert!(Module::from_actions(&a, good).is_ok());
        let wrong_unit = vec![Matrix::zeros(p, 2, 2), Matrix::zeros(p, 2, 2)];
        assert!(Module::from_actions(&a, wrong_unit).is_err());
    }

    #[test]
    fn direct_sum_is_block_diagonal() {
        let a = alg(2, &["x"], &["x^2"]);
        let k = Module::residue_field(&a);
        let r = Module::free(&a, 1);
        let s = construct_module(&a, ModuleSpec::DirectSum(vec![k.clone(), r.clone()])).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(s.action(1).submatrix(1..3, 1..3), *r.action(1));
        assert_eq!(k.direct_sum(&r).unwrap(), s);
    }

    #[test]
    fn maps_must_intertwine() {
        let a = alg(2, &["x"], &["x^2"]);
        let r = Module::free(&a, 1);
        let k = Module::residue_field(&a);
        let aug = Matrix::from_rows(2, &[vec![1, 0]]).unwrap();
        assert!(ModuleMap::new(r.clone(), k.clone(), aug).is_ok());
        let bad = Matrix::from_rows(2, &[vec![0, 1]]).unwrap();
        assert_eq!(ModuleMap::new(r, k, bad).unwrap_err(), ModuleError::NotHomomorphism);
    }

    #[test]
    fn socle_and_radical_series() {
        let a = alg(3, &["x", "y"], &["x^2", "y^2"]);
        let r = Module::free(&a, 1);
        assert_eq!(r.socle().cols(), 1);
        assert_eq!(r.radical_series_dims(), vec![4, 3, 1, 0]);
    }
}
