use rand::Rng;
use serde::Serialize;

use super::fingerprint::cheap_invariants;
use super::{enumerate_nonzero, search_size, Budget};
use crate::linalg::Matrix;
use crate::moduletheory::{HomSpace, Module, ModuleError, ModuleMap};

/// Why two modules are not isomorphic. Every variant can be re-checked by
/// recomputing the named invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "invariant", rename_all = "snake_case")]
pub enum NonIsoCertificate {
    Dimension { left: usize, right: usize },
    MinGenerators { left: usize, right: usize },
    SocleDim { left: usize, right: usize },
    RadicalSeries { left: Vec<usize>, right: Vec<usize> },
    Betti { left: Vec<usize>, right: Vec<usize> },
    /// `dim Hom(M, N) != dim End(M)`.
    HomDimension { hom: usize, end: usize },
    /// Every class of `Hom(M, N)` modulo the nil ideal was checked.
    ExhaustiveSearch { candidates: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoVerdict {
    Iso(ModuleMap),
    NonIso(NonIsoCertificate),
    Unknown { random_trials: usize, reduced_dim: usize },
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso(_))
    }

    pub fn is_non_iso(&self) -> bool {
        matches!(self, IsoVerdict::NonIso(_))
    }
}

/// `Hom(M, N)` together with coordinate directions spanning a complement
/// of the nil ideal `I_top + I_soc`, and the top-degree part of each
/// direction.
pub(crate) struct ReducedHom {
    pub hom: HomSpace,
    pub directions: Vec<usize>,
    tops: Vec<Matrix>,
}

impl ReducedHom {
    pub fn new(m: &Module, n: &Module) -> Result<ReducedHom, ModuleError> {
        let hom = HomSpace::new(m, n)?;
        let p = m.p();
        let h = hom.dim();
        let (_, top_proj) = n.quotient(&n.radical());
        let gens = m.generator_indices();
        let embed = Matrix::identity(p, m.dim()).select_columns(&gens);
        let socle = m.socle();

        let mut top_cols = Vec::with_capacity(h);
        let mut soc_cols = Vec::with_capacity(h);
        let mut tops_all = Vec::with_capacity(h);
        for f in hom.basis_maps() {
            let top = &top_proj * &(f * &embed);
            top_cols.push(top.to_rows().concat());
            soc_cols.push((f * &socle).to_rows().concat());
            tops_all.push(top);
        }
        let top_rows = top_proj.rows() * gens.len();
        let soc_rows = n.dim() * socle.cols();
        let i_top = Matrix::from_columns(p, top_rows, &top_cols).kernel_basis();
        let i_soc = Matrix::from_columns(p, soc_rows, &soc_cols).kernel_basis();
        let nil = i_top.hstack(&i_soc);
        let directions = Matrix::extending_columns(&nil, &Matrix::identity(p, h));
        let tops = directions.iter().map(|&i| tops_all[i].clone()).collect();
        Ok(ReducedHom { hom, directions, tops })
    }

    pub fn reduced_dim(&self) -> usize {
        self.directions.len()
    }

    /// Full Hom coordinates of a combination of the directions.
    pub fn coordinates(&self, coeffs: &[u32]) -> Vec<u32> {
        let mut c = vec![0; self.hom.dim()];
        for (&d, &x) in self.directions.iter().zip(coeffs) {
            c[d] = x;
        }
        c
    }

    /// Whether the induced map `M/mM -> N/mN` is bijective.
    pub fn top_is_invertible(&self, coeffs: &[u32]) -> bool {
        let Some(first) = self.tops.first() else {
            return false;
        };
        if first.rows() != first.cols() {
            return false;
        }
        let mut t = Matrix::zeros(first.modulus(), first.rows(), first.cols());
        for (top, &c) in self.tops.iter().zip(coeffs) {
            if c != 0 {
                t.add_scaled(top, c);
            }
        }
        t.rank() == t.rows()
    }
}

pub fn is_isomorphic<R: Rng + ?Sized>(
    m: &Module,
    n: &Module,
    budget: &Budget,
    rng: &mut R,
) -> Result<IsoVerdict, ModuleError> {
    m.check_same_algebra(n)?;
    use NonIsoCertificate as C;
    if m.dim() != n.dim() {
        return Ok(IsoVerdict::NonIso(C::Dimension { left: m.dim(), right: n.dim() }));
    }
    if m == n {
        return Ok(IsoVerdict::Iso(ModuleMap::identity(m)));
    }
    let a = cheap_invariants(m, budget.fingerprint_depth);
    let b = cheap_invariants(n, budget.fingerprint_depth);
    if a.min_generators != b.min_generators {
        return Ok(IsoVerdict::NonIso(C::MinGenerators { left: a.min_generators, right: b.min_generators }));
    }
    if a.socle_dim != b.socle_dim {
        return Ok(IsoVerdict::NonIso(C::SocleDim { left: a.socle_dim, right: b.socle_dim }));
    }
    if a.radical_series != b.radical_series {
        return Ok(IsoVerdict::NonIso(C::RadicalSeries { left: a.radical_series, right: b.radical_series }));
    }
    if a.betti != b.betti {
        return Ok(IsoVerdict::NonIso(C::Betti { left: a.betti, right: b.betti }));
    }
    if m.is_zero() {
        return Ok(IsoVerdict::Iso(ModuleMap::identity(m)));
    }

    let reduced = ReducedHom::new(m, n)?;
    let end_dim = HomSpace::new(m, m)?.dim();
    if reduced.hom.dim() != end_dim {
        return Ok(IsoVerdict::NonIso(C::HomDimension { hom: reduced.hom.dim(), end: end_dim }));
    }
    let p = m.p();
    let d = reduced.reduced_dim();
    let witness = |coeffs: &[u32]| {
        let map = reduced.hom.map(&reduced.coordinates(coeffs));
        debug_assert!(map.is_isomorphism());
        IsoVerdict::Iso(map)
    };

    if d > 0 {
        for _ in 0..budget.random_trials {
            let coeffs: Vec<u32> = (0..d).map(|_| rng.random_range(0..p)).collect();
            if reduced.top_is_invertible(&coeffs) {
                return Ok(witness(&coeffs));
            }
        }
    }
    let size = search_size(p, d);
    if size > budget.enumeration_limit {
        return Ok(IsoVerdict::Unknown { random_trials: budget.random_trials, reduced_dim: d });
    }
    let mut found = None;
    enumerate_nonzero(p, d, |c| {
        if reduced.top_is_invertible(c) {
            found = Some(c.to_vec());
            true
        } else {
            false
        }
    });
    Ok(match found {
        Some(c) => witness(&c),
        None => IsoVerdict::NonIso(C::ExhaustiveSearch { candidates: size }),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::quotient_from_polynomials;
    use crate::moduletheory::{sample::random_conjugate, syzygy};

    #[test]
    fn examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let budget = Budget::default();
        let a = Arc::new(quotient_from_polynomials(2, &["x"], &["x^2"]).unwrap());
        let r = Module::free(&a, 1);
        let k = Module::residue_field(&a);
        assert!(is_isomorphic(&r, &r, &budget, &mut rng).unwrap().is_iso());
        assert_eq!(
            is_isomorphic(&k, &r, &budget, &mut rng).unwrap(),
            IsoVerdict::NonIso(NonIsoCertificate::Dimension { left: 1, right: 2 })
        );

        let b = Arc::new(quotient_from_polynomials(5, &["x"], &["x^4"]).unwrap());
        let m1 = Module::cyclic(&b, &[b.parse_element("x").unwrap()]).unwrap();
        let m3 = Module::cyclic(&b, &[b.parse_element("x^3").unwrap()]).unwrap();
        match is_isomorphic(&syzygy(&m1, 1), &m3, &budget, &mut rng).unwrap() {
            IsoVerdict::Iso(w) => assert!(w.is_isomorphism() && w.is_homomorphism()),
            v => panic!("expected an isomorphism, got {v:?}"),
        }
    }

    #[test]
    fn conjugates_are_isomorphic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = Arc::new(quotient_from_polynomials(3, &["x", "y"], &["x^2", "y^2"]).unwrap());
        let m = Module::free(&a, 1).restrict(&a.profile().radical_basis);
        let c = random_conjugate(&m, &mut rng);
        match is_isomorphic(&m, &c, &Budget::default(), &mut rng).unwrap() {
            IsoVerdict::Iso(w) => {
                assert!(w.is_isomorphism() && w.is_homomorphism());
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn same_cheap_invariants_still_separated() {
        // R/(x) and R/(y) agree on dimension, generators, socle and Betti numbers
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Arc::new(quotient_from_polynomials(3, &["x", "y"], &["x^2", "y^2"]).unwrap());
        let x = a.parse_element("x").unwrap();
        let y = a.parse_element("y").unwrap();
        let mx = Module::cyclic(&a, &[x]).unwrap();
        let my = Module::cyclic(&a, &[y]).unwrap();
        let v = is_isomorphic(&mx, &my, &Budget::default(), &mut rng).unwrap();
        assert!(v.is_non_iso(), "{v:?}");
    }
}
