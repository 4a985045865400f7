use std::sync::OnceLock;

use super::{cover::free_cover, Module, ModuleError, ModuleMap};
use crate::linalg::Matrix;

/// `Hom_R(M, N)`.
///
/// A map is determined by the images `n_j = f(g_j)` of the generators
/// `g_j` of `M`; these satisfy `sum_j r_j n_j = 0` for every relation
/// `(r_1, ..., r_ν)` among the generators. The solutions form a
/// submodule of `N^ν`, whose basis is stored as columns.
pub struct HomSpace {
    source: Module,
    target: Module,
    generators: Vec<usize>,
    // section of the free cover: cover * section = I
    section: Matrix,
    solutions: Matrix,
    maps: OnceLock<Vec<Matrix>>,
}

impl HomSpace {
    pub fn new(source: &Module, target: &Module) -> Result<HomSpace, ModuleError> {
        source.check_same_algebra(target)?;
        let p = source.p();
        let n = source.algebra().dim();
        let cover = free_cover(source);
        let generators = source.generator_indices();
        let nu = generators.len();
        let dn = target.dim();
        let section = cover
            .matrix()
            .solve_matrix(&Matrix::identity(p, source.dim()))?
            .expect("a free cover is surjective");

        // minimal generators of the relation module
        let syz_basis = cover.matrix().kernel_basis();
        let syz = cover.source().restrict(&syz_basis);
        let relations: Vec<Vec<u32>> =
            syz.generator_indices().into_iter().map(|i| syz_basis.column(i)).collect();

        let mut blocks = Vec::with_capacity(relations.len());
        for r in &relations {
            let parts: Vec<Matrix> = (0..nu).map(|j| target.element_action(&r[j * n..(j + 1) * n])).collect();
            blocks.push(Matrix::hstack_all(p, dn, &parts));
        }
        let system = Matrix::vstack_all(p, nu * dn, &blocks);
        let solutions = system.kernel_basis();
        Ok(HomSpace {
            source: source.clone(),
            target: target.clone(),
            generators,
            section,
            solutions,
            maps: OnceLock::new(),
        })
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.solutions.cols()
    }

    /// Matrix of the map whose generator images are the given vector of `N^ν`.
    fn map_from_images(&self, images: &[u32]) -> Matrix {
        let p = self.source.p();
        let n = self.source.algebra().dim();
        let dn = self.target.dim();
        let mut cols = Vec::with_capacity(self.generators.len() * n);
        for j in 0..self.generators.len() {
            let nj = &images[j * dn..(j + 1) * dn];
            for b in 0..n {
                cols.push(self.target.action(b).mul_vec(nj));
            }
        }
        let w = Matrix::from_columns(p, dn, &cols);
        &w * &self.section
    }

    /// Matrices of the basis maps.
    pub fn basis_maps(&self) -> &[Matrix] {
        self.maps.get_or_init(|| {
            self.solutions.columns().map(|s| self.map_from_images(&s)).collect()
        })
    }

    /// Matrix of `sum_i coords[i] f_i`.
    pub fn map_matrix(&self, coords: &[u32]) -> Matrix {
        let p = self.source.p();
        let mut out = Matrix::zeros(p, self.target.dim(), self.source.dim());
        for (f, &c) in self.basis_maps().iter().zip(coords) {
            if c != 0 {
                out.add_scaled(f, c);
            }
        }
        out
    }

    pub fn map(&self, coords: &[u32]) -> ModuleMap {
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), self.map_matrix(coords))
    }

    /// Coordinates of an `R`-linear map in the basis of this space.
    pub fn coordinates(&self, matrix: &Matrix) -> Option<Vec<u32>> {
        let mut images = Vec::with_capacity(self.generators.len() * self.target.dim());
        for &g in &self.generators {
            images.extend(matrix.column(g));
        }
        self.solutions.solve(&images).ok().flatten()
    }

    /// `Hom(M, N)` as an `R`-module, a submodule of `N^ν`.
    pub fn as_module(&self) -> Module {
        self.target.power(self.generators.len()).restrict(&self.solutions)
    }
}

/// `Hom(M, N)` as a module together with the maps its basis vectors stand for.
pub fn hom_module(m: &Module, n: &Module) -> Result<(Module, Vec<ModuleMap>), ModuleError> {
    let h = HomSpace::new(m, n)?;
    let maps = h
        .basis_maps()
        .iter()
        .map(|f| ModuleMap::new_unchecked(m.clone(), n.clone(), f.clone()))
        .collect();
    Ok((h.as_module(), maps))
}

/// `M* = Hom(M, R)`.
pub fn dual(m: &Module) -> Module {
    HomSpace::new(m, &Module::free(m.algebra(), 1)).expect("same algebra").as_module()
}

/// The evaluation map `M -> M**`.
pub fn biduality_map(m: &Module) -> ModuleMap {
    let r = Module::free(m.algebra(), 1);
    let d1 = HomSpace::new(m, &r).expect("same algebra");
    let m_star = d1.as_module();
    let d2 = HomSpace::new(&m_star, &r).expect("same algebra");
    let m_star_star = d2.as_module();
    let gen_maps: Vec<Matrix> = d2
        .generators
        .iter()
        .map(|&g| {
            let mut u = vec![0; d1.dim()];
            u[g] = 1;
            d1.map_matrix(&u)
        })
        .collect();
    let mut cols = Vec::with_capacity(m.dim());
    for i in 0..m.dim() {
        let images: Vec<u32> = gen_maps.iter().flat_map(|phi| phi.column(i)).collect();
        cols.push(d2.solutions.solve(&images).ok().flatten().expect("evaluation is R-linear"));
    }
    let matrix = Matrix::from_columns(m.p(), m_star_star.dim(), &cols);
    ModuleMap::new_unchecked(m.clone(), m_star_star, matrix)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{quotient_from_polynomials, Algebra};

    fn alg(p: u32, vars: &[&str], gens: &[&str]) -> Arc<Algebra> {
        Arc::new(quotient_from_polynomials(p, vars, gens).unwrap())
    }

    #[test]
    fn hom_from_free_is_target() {
        let a = alg(3, &["x", "y"], &["x^2", "y^2"]);
        let m = Module::cyclic(&a, &[a.parse_element("x").unwrap()]).unwrap();
        let (h, maps) = hom_module(&Module::free(&a, 1), &m).unwrap();
        assert_eq!(h.dim(), m.dim());
        assert!(maps.iter().all(ModuleMap::is_homomorphism));
    }

    #[test]
    fn hom_into_regular_module() {
        let a = alg(2, &["x", "y"], &["x^2", "x*y", "y^2"]);
        let (h, _) = hom_module(&Module::residue_field(&a), &Module::free(&a, 1)).unwrap();
        assert_eq!(h.dim(), 2);

        let b = alg(5, &["x"], &["x^4"]);
        let m = Module::cyclic(&b, &[b.parse_element("x").unwrap()]).unwrap();
        let (h, maps) = hom_module(&m, &Module::free(&b, 1)).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(maps[0].is_homomorphism());
    }

    #[test]
    fn coordinates_round_trip() {
        let a = alg(3, &["x", "y"], &["x^2", "y^2"]);
        let r = Module::free(&a, 1);
        let m = r.restrict(&a.profile().radical_basis);
        let h = HomSpace::new(&m, &m).unwrap();
        for (i, f) in h.basis_maps().iter().enumerate() {
            let mut e = vec![0; h.dim()];
            e[i] = 1;
            assert_eq!(h.coordinates(f), Some(e));
        }
        assert!(h.coordinates(&Matrix::identity(3, m.dim())).is_some());
    }

    #[test]
    fn biduality() {
        let a = alg(2, &["x"], &["x^2"]);
        assert!(biduality_map(&Module::free(&a, 1)).is_isomorphism());
        let k = Module::residue_field(&a);
        let b = biduality_map(&k);
        assert_eq!(b.target().dim(), 1);
        assert!(b.is_isomorphism() && b.is_homomorphism());

        let c = alg(2, &["x", "y"], &["x^2", "x*y", "y^2"]);
        let bk = biduality_map(&Module::residue_field(&c));
        assert!(bk.is_homomorphism());
        assert!(!bk.is_isomorphism());
    }
}
