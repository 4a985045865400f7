//! Finitely generated modules over finite-dimensional commutative local
//! algebras over `F_p`: resolutions, syzygies and cosyzygies, direct-sum
//! decomposition, isomorphism testing, and the `Z[t, t^-1]`-module of
//! stable classes with its torsion certificates.

pub mod algebra;
pub mod decomp;
pub mod jmod;
pub mod laurent;
pub mod linalg;
pub mod moduletheory;
pub mod resolution;

pub use algebra::{build_algebra, quotient_from_polynomials, Algebra, AlgebraError, LocalProfile};
pub use decomp::{Budget, ClassRegistry, DecompError, IsoClassId, IsoVerdict};
pub use jmod::{JElement, JError, TorsionVerdict};
pub use laurent::LaurentPoly;
pub use linalg::{LinalgError, Matrix, Scalar};
pub use moduletheory::{Module, ModuleError, ModuleMap, ModuleSpec};
pub use resolution::{PeriodicityVerdict, Resolution};
