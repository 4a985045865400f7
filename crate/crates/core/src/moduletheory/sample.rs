//! Random modules and changes of basis, for tests and searches.

use std::sync::Arc;

use rand::Rng;

use super::Module;
use crate::algebra::Algebra;
use crate::linalg::Matrix;

pub fn random_vector<R: Rng + ?Sized>(p: u32, len: usize, rng: &mut R) -> Vec<u32> {
    (0..len).map(|_| rng.random_range(0..p)).collect()
}

/// A uniformly random element of the maximal ideal.
pub fn random_radical_element<R: Rng + ?Sized>(algebra: &Algebra, rng: &mut R) -> Vec<u32> {
    let basis = &algebra.profile().radical_basis;
    let coeffs = random_vector(algebra.p(), basis.cols(), rng);
    basis.mul_vec(&coeffs)
}

pub fn random_invertible<R: Rng + ?Sized>(p: u32, n: usize, rng: &mut R) -> Matrix {
    loop {
        let cols: Vec<Vec<u32>> = (0..n).map(|_| random_vector(p, n, rng)).collect();
        let m = Matrix::from_columns(p, n, &cols);
        if m.rank() == n {
            return m;
        }
    }
}

/// `R^rank / (relations)` for `relations` random vectors of `m R^rank`.
///
/// Relations lie in the radical, so the result needs exactly `rank`
/// generators.
pub fn random_module<R: Rng + ?Sized>(
    algebra: &Arc<Algebra>,
    rank: usize,
    relations: usize,
    rng: &mut R,
) -> Module {
    let free = Module::free(algebra, rank);
    let rad = free.radical();
    let rels: Vec<Vec<u32>> = (0..relations)
        .map(|_| rad.mul_vec(&random_vector(algebra.p(), rad.cols(), rng)))
        .collect();
    let sub = free.generated_submodule(&rels);
    free.quotient(&sub).0
}

/// `M` written in a random basis.
pub fn random_conjugate<R: Rng + ?Sized>(m: &Module, rng: &mut R) -> Module {
    let change = random_invertible(m.p(), m.dim(), rng);
    m.conjugate(&change).expect("change of basis is invertible")
}
