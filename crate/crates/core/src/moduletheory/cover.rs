use super::{hom::HomSpace, Module, ModuleMap};
use crate::linalg::Matrix;

/// `ν(M) = dim_k M/mM`.
pub fn min_generators(m: &Module) -> usize {
    m.dim() - m.radical().cols()
}

/// The map `R^k -> M` sending the `j`-th free generator to `images[j]`.
pub fn cover_from_images(m: &Module, images: &[Vec<u32>]) -> ModuleMap {
    let n = m.algebra().dim();
    let mut cols = Vec::with_capacity(images.len() * n);
    for v in images {
        for b in 0..n {
            cols.push(m.action(b).mul_vec(v));
        }
    }
    let free = Module::free(m.algebra(), images.len());
    let matrix = Matrix::from_columns(m.p(), m.dim(), &cols);
    ModuleMap::new_unchecked(free, m.clone(), matrix)
}

/// Minimal free cover `R^ν -> M`, sending free generators to the unit
/// vectors that lift a basis of `M/mM`.
pub fn free_cover(m: &Module) -> ModuleMap {
    let gens: Vec<Vec<u32>> = m
        .generator_indices()
        .into_iter()
        .map(|j| {
            let mut v = vec![0; m.dim()];
            v[j] = 1;
            v
        })
        .collect();
    cover_from_images(m, &gens)
}

/// `Ω^n M`, each step the kernel of the minimal free cover.
pub fn syzygy(m: &Module, n: usize) -> Module {
    let mut current = m.clone();
    for _ in 0..n {
        if current.is_zero() {
            break;
        }
        current = free_cover(&current).kernel();
    }
    current
}

/// `M -> R^μ`, `v -> (ψ_1(v), ..., ψ_μ(v))` for a minimal generating set
/// `ψ_j` of `M* = Hom(M, R)`.
pub fn free_envelope(m: &Module) -> ModuleMap {
    let algebra = m.algebra();
    let dual = HomSpace::new(m, &Module::free(algebra, 1)).expect("same algebra");
    let dual_module = dual.as_module();
    let gens = dual_module.generator_indices();
    let blocks: Vec<Matrix> = gens
        .iter()
        .map(|&j| {
            let mut coords = vec![0; dual.dim()];
            coords[j] = 1;
            dual.map_matrix(&coords)
        })
        .collect();
    let matrix = Matrix::vstack_all(m.p(), m.dim(), &blocks);
    ModuleMap::new_unchecked(m.clone(), Module::free(algebra, gens.len()), matrix)
}

/// `Ω^-n M`, each step the cokernel of the free envelope.
pub fn cosyzygy(m: &Module, n: usize) -> Module {
    let mut current = m.clone();
    for _ in 0..n {
        if current.is_zero() {
            break;
        }
        current = free_envelope(&current).cokernel();
    }
    current
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{quotient_from_polynomials, Algebra};

    fn alg(p: u32, vars: &[&str], gens: &[&str]) -> Arc<Algebra> {
        Arc::new(quotient_from_polynomials(p, vars, gens).unwrap())
    }

    fn radical_module(a: &Arc<Algebra>) -> Module {
        let r = Module::free(a, 1);
        r.restrict(&a.profile().radical_basis)
    }

    #[test]
    fn generator_counts() {
        let a = alg(3, &["x", "y"], &["x^2", "y^2"]);
        assert_eq!(min_generators(&Module::free(&a, 3)), 3);
        assert_eq!(min_generators(&Module::zero(&a)), 0);
        assert_eq!(min_generators(&radical_module(&a)), 2);
    }

    #[test]
    fn covers() {
        let a = alg(3, &["x", "y"], &["x^2", "y^2"]);
        let r2 = Module::free(&a, 2);
        let c = free_cover(&r2);
        assert!(c.is_isomorphism());
        let k = Module::residue_field(&a);
        let c = free_cover(&k);
        assert_eq!(c.source().dim(), 4);
        assert!(c.is_surjective());
        let m = radical_module(&a);
        let c = free_cover(&m);
        assert_eq!(c.source().dim(), 8);
        assert!(c.is_surjective());
        assert_eq!(c.kernel().dim(), 5);
        let z = free_cover(&Module::zero(&a));
        assert_eq!((z.source().dim(), z.target().dim()), (0, 0));
    }

    #[test]
    fn kernel_of_cover_is_in_radical() {
        let a = alg(3, &["x", "y"], &["x^2", "y^2"]);
        let m = radical_module(&a);
        let c = free_cover(&m);
        let ker = c.matrix().kernel_basis();
        let rad = c.source().radical();
        assert_eq!(rad.hstack(&ker).rank(), rad.cols());
    }

    #[test]
    fn syzygy_examples() {
        let a = alg(2, &["x", "y"], &["x^2", "x*y", "y^2"]);
        assert!(syzygy(&Module::free(&a, 2), 1).is_zero());
        let omega_k = syzygy(&Module::residue_field(&a), 1);
        assert_eq!(omega_k.dim(), 2);
        assert!(omega_k.radical().cols() == 0);

        let b = alg(5, &["x"], &["x^4"]);
        let x = b.parse_element("x").unwrap();
        let m = Module::cyclic(&b, &[x]).unwrap();
        let om = syzygy(&m, 1);
        assert_eq!(om.dim(), 3);
        assert_eq!(min_generators(&om), 1);
    }

    #[test]
    fn envelope_examples() {
        let a = alg(2, &["x"], &["x^2"]);
        let r = Module::free(&a, 1);
        assert!(free_envelope(&r).is_isomorphism());
        let k = Module::residue_field(&a);
        let e = free_envelope(&k);
        assert_eq!(e.target().dim(), 2);
        assert!(e.is_injective());
        // the image is the socle of R
        let img = e.matrix().column_space();
        assert_eq!(img.hstack(&r.socle()).rank(), 1);
        assert_eq!(cosyzygy(&k, 1).dim(), 1);
        assert!(cosyzygy(&r, 1).is_zero());

        let b = alg(5, &["x"], &["x^4"]);
        let m = Module::cyclic(&b, &[b.parse_element("x").unwrap()]).unwrap();
        let e = free_envelope(&m);
        assert_eq!(e.target().dim(), 4);
        assert!(e.is_injective());
        let x3 = b.parse_element("x^3").unwrap();
        assert_eq!(e.matrix().hstack(&Matrix::column_vector(5, &x3)).rank(), 1);
        assert_eq!(cosyzygy(&m, 1).dim(), 3);
        let z = free_envelope(&Module::zero(&b));
        assert_eq!((z.source().dim(), z.target().dim()), (0, 0));
    }
}
