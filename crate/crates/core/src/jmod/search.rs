use serde::Serialize;

use super::{annihilates, j_class, torsion_test, JError, TorsionVerdict};
use crate::decomp::{ClassRegistry, DecompError};
use crate::laurent::LaurentPoly;
use crate::moduletheory::sample::random_radical_element;
use crate::moduletheory::{Module, ModuleMap};
use crate::resolution::{detect_periodicity, PeriodicityVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleCheck {
    pub index: usize,
    pub class: String,
    /// Whether `(1 - t^2)` kills the class, checked as `(t^-2 - 1)`.
    pub annihilated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypersurfaceReport {
    pub is_hypersurface: bool,
    pub is_gorenstein: bool,
    pub samples: Vec<SampleCheck>,
    /// Gorenstein non-hypersurface algebras only: whether `[k]` was
    /// certified torsion within the budget.
    pub residue_torsion_certified: Option<bool>,
    /// Hypersurface: every sample annihilated. Gorenstein otherwise: `[k]`
    /// not certified torsion. Vacuous for other algebras.
    pub consistent: bool,
}

/// Check that `(1 - t^2)` kills the class of every sample over a
/// hypersurface, and that `[k]` is not found torsion over other
/// Gorenstein algebras.
pub fn hypersurface_check(
    samples: &[Module],
    budget: usize,
    reg: &mut ClassRegistry,
) -> Result<HypersurfaceReport, JError> {
    let profile = reg.algebra().profile().clone();
    let f = LaurentPoly::from_terms([(-2, 1), (0, -1)]);
    let mut checks = Vec::new();
    for (index, m) in samples.iter().enumerate() {
        let x = j_class(m, reg)?;
        let annihilated = annihilates(&f, &x, reg)?;
        checks.push(SampleCheck { index, class: x.to_string(), annihilated });
    }
    let mut residue_torsion_certified = None;
    let consistent = if profile.is_hypersurface {
        checks.iter().all(|c| c.annihilated)
    } else if profile.is_gorenstein {
        let k = j_class(&Module::residue_field(reg.algebra()), reg)?;
        let certified = matches!(torsion_test(&k, budget, reg)?, TorsionVerdict::Torsion { .. });
        residue_torsion_certified = Some(certified);
        !certified
    } else {
        true
    };
    Ok(HypersurfaceReport {
        is_hypersurface: profile.is_hypersurface,
        is_gorenstein: profile.is_gorenstein,
        samples: checks,
        residue_torsion_certified,
        consistent,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicModule {
    /// The generator `f` of the ideal, in basis coordinates.
    pub generator: Vec<u32>,
    pub generator_text: String,
    #[serde(skip)]
    pub module: Module,
    pub lead: usize,
    pub period: usize,
    pub witness: ModuleMap,
}

/// Look for `f` in the maximal ideal with `R/(f)` eventually periodic.
///
/// Candidates are the basis vectors of the maximal ideal in order, then
/// random elements of it, `generator_budget` in total.
pub fn find_periodic_module(
    reg: &mut ClassRegistry,
    generator_budget: usize,
    period_budget: usize,
) -> Result<Option<PeriodicModule>, JError> {
    let algebra = reg.algebra().clone();
    let radical = algebra.profile().radical_basis.columns().collect::<Vec<_>>();
    let mut tried: Vec<Vec<u32>> = Vec::new();
    let mut attempts = 0;
    while tried.len() < generator_budget && attempts < generator_budget * 4 {
        let f = if attempts < radical.len() {
            radical[attempts].clone()
        } else {
            random_radical_element(&algebra, reg.rng())
        };
        attempts += 1;
        if f.iter().all(|&c| c == 0) || tried.contains(&f) {
            continue;
        }
        tried.push(f.clone());
        let m = Module::cyclic(&algebra, std::slice::from_ref(&f)).map_err(DecompError::from)?;
        let budget = *reg.budget();
        let verdict = match detect_periodicity(&m, period_budget, &budget, reg.rng()) {
            Ok(v) => v,
            Err(DecompError::BudgetExceeded(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        if let PeriodicityVerdict::Periodic { lead, period, witness } = verdict {
            if witness.source().is_zero() {
                continue;
            }
            return Ok(Some(PeriodicModule {
                generator_text: algebra.format_element(&f),
                generator: f,
                module: m,
                lead,
                period,
                witness,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{quotient_from_polynomials, Algebra};
    use crate::decomp::Budget;

    fn reg(p: u32, vars: &[&str], gens: &[&str]) -> (Arc<Algebra>, ClassRegistry) {
        let a = Arc::new(quotient_from_polynomials(p, vars, gens).unwrap());
        let r = ClassRegistry::new(&a, Budget::default(), 0);
        (a, r)
    }

    #[test]
    fn hypersurface_samples() {
        let (a, mut r) = reg(5, &["x"], &["x^4"]);
        let samples: Vec<Module> = ["x", "x^2", "x^3"]
            .iter()
            .map(|g| Module::cyclic(&a, &[a.parse_element(g).unwrap()]).unwrap())
            .collect();
        let rep = hypersurface_check(&samples, 6, &mut r).unwrap();
        assert!(rep.is_hypersurface && rep.consistent);
        assert_eq!(rep.samples.len(), 3);
    }

    #[test]
    fn complete_intersection_residue_field() {
        let (a, mut r) = reg(3, &["x", "y"], &["x^2", "y^2"]);
        let rep = hypersurface_check(&[Module::residue_field(&a)], 4, &mut r).unwrap();
        assert!(!rep.samples[0].annihilated);
        assert_eq!(rep.residue_torsion_certified, Some(false));
        assert!(rep.consistent);
    }

    #[test]
    fn field_is_vacuous() {
        let (a, mut r) = reg(3, &["x"], &["x"]);
        let rep = hypersurface_check(&[Module::residue_field(&a)], 2, &mut r).unwrap();
        assert!(rep.consistent && rep.samples[0].annihilated);
    }

    #[test]
    fn periodic_search() {
        let (_, mut r) = reg(5, &["x"], &["x^4"]);
        let found = find_periodic_module(&mut r, 8, 6).unwrap().unwrap();
        assert!(found.period == 1 || found.period == 2);

        let (_, mut r) = reg(3, &["x", "y"], &["x^2", "y^2"]);
        let found = find_periodic_module(&mut r, 8, 6).unwrap().unwrap();
        assert_eq!(found.period, 1);

        let (_, mut r) = reg(2, &["x", "y"], &["x^2", "x*y", "y^2"]);
        assert!(find_periodic_module(&mut r, 8, 6).unwrap().is_none());
    }
}
