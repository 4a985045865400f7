//! Minimal free resolutions, Betti numbers and eventual periodicity.

use rand::Rng;
use serde::Serialize;

use crate::decomp::{is_isomorphic, Budget, DecompError, IsoVerdict};
use crate::laurent::LaurentPoly;
use crate::moduletheory::{free_cover, min_generators, Module, ModuleMap};

/// Syzygies larger than this stop a periodicity search.
pub const SYZYGY_DIM_LIMIT: usize = 256;

#[derive(Debug, Clone, Serialize)]
pub struct Resolution {
    #[serde(skip)]
    pub syzygies: Vec<Module>,
    pub betti: Vec<usize>,
    /// `dim Ω^i M`.
    pub dims: Vec<usize>,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.betti.len().saturating_sub(1)
    }
}

/// `Ω^0 M, ..., Ω^steps M`, stopping after the first syzygy that vanishes.
pub fn minimal_resolution(m: &Module, steps: usize) -> Resolution {
    let mut syzygies = vec![m.clone()];
    for _ in 0..steps {
        let last = syzygies.last().unwrap();
        if last.is_zero() {
            break;
        }
        let next = free_cover(last).kernel();
        if next.is_zero() {
            break;
        }
        syzygies.push(next);
    }
    let betti = syzygies.iter().map(min_generators).collect();
    let dims = syzygies.iter().map(Module::dim).collect();
    Resolution { syzygies, betti, dims }
}

/// `β_0, ..., β_t`.
pub fn betti_sequence(m: &Module, t: usize) -> Vec<usize> {
    let mut betti = minimal_resolution(m, t).betti;
    betti.resize(t + 1, 0);
    betti
}

/// `sum_{i <= t} β_i t^i`.
pub fn poincare_truncation(m: &Module, t: usize) -> LaurentPoly {
    let b: Vec<i64> = betti_sequence(m, t).into_iter().map(|x| x as i64).collect();
    LaurentPoly::from_coefficients(&b)
}

/// Whether some `Ω^i M` with `i <= budget` is free.
pub fn is_pd_finite(m: &Module, budget: usize) -> bool {
    let n = m.algebra().dim();
    let mut current = m.clone();
    for i in 0..=budget {
        if min_generators(&current) * n == current.dim() {
            return true;
        }
        if i < budget {
            current = free_cover(&current).kernel();
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PeriodicityVerdict {
    /// `Ω^lead M ≅ Ω^(lead+period) M`, witnessed by `witness`.
    Periodic { lead: usize, period: usize, witness: ModuleMap },
    ExceededBudget { betti: Vec<usize>, dims: Vec<usize> },
}

impl PeriodicityVerdict {
    pub fn is_periodic(&self) -> bool {
        matches!(self, PeriodicityVerdict::Periodic { .. })
    }
}

/// Walk `Ω^0 M, ..., Ω^steps M` and report the first repeat.
///
/// For `i >= 1` the syzygies have no free summands (they are killed by the
/// socle of `R`), so only `Ω^0 M` may carry free summands and the repeat is
/// between the syzygies themselves. Among repeats closing at the same index
/// the shortest period is reported.
pub fn detect_periodicity<R: Rng + ?Sized>(
    m: &Module,
    steps: usize,
    budget: &Budget,
    rng: &mut R,
) -> Result<PeriodicityVerdict, DecompError> {
    let mut chain: Vec<(Module, usize)> = Vec::new();
    let mut current = m.clone();
    for j in 0..=steps {
        let nu = min_generators(&current);
        for i in (0..j).rev() {
            let (prev, prev_nu) = &chain[i];
            if prev.dim() != current.dim() || *prev_nu != nu {
                continue;
            }
            match is_isomorphic(prev, &current, budget, rng)? {
                IsoVerdict::Iso(witness) => {
                    return Ok(PeriodicityVerdict::Periodic { lead: i, period: j - i, witness });
                }
                IsoVerdict::NonIso(_) => {}
                IsoVerdict::Unknown { reduced_dim, .. } => {
                    return Err(DecompError::BudgetExceeded(format!(
                        "cannot compare syzygies {i} and {j} (reduced Hom dimension {reduced_dim})"
                    )))
                }
            }
        }
        let next = free_cover(&current).kernel();
        chain.push((current, nu));
        if j == steps || next.dim() > SYZYGY_DIM_LIMIT {
            break;
        }
        current = next;
    }
    Ok(PeriodicityVerdict::ExceededBudget {
        betti: chain.iter().map(|(_, nu)| *nu).collect(),
        dims: chain.iter().map(|(m, _)| m.dim()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::{quotient_from_polynomials, Algebra};

    fn alg(p: u32, vars: &[&str], gens: &[&str]) -> Arc<Algebra> {
        Arc::new(quotient_from_polynomials(p, vars, gens).unwrap())
    }

    #[test]
    fn resolutions() {
        let ci = alg(3, &["x", "y"], &["x^2", "y^2"]);
        let r = minimal_resolution(&Module::free(&ci, 1), 5);
        assert_eq!(r.betti, vec![1]);
        let k = Module::residue_field(&ci);
        assert_eq!(minimal_resolution(&k, 5).betti, vec![1, 2, 3, 4, 5, 6]);

        let sq = alg(2, &["x", "y"], &["x^2", "x*y", "y^2"]);
        assert_eq!(minimal_resolution(&Module::residue_field(&sq), 4).betti, vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn poincare() {
        let d = alg(2, &["x"], &["x^2"]);
        assert_eq!(poincare_truncation(&Module::free(&d, 1), 3), LaurentPoly::one());
        let k = Module::residue_field(&d);
        assert_eq!(poincare_truncation(&k, 5), LaurentPoly::from_coefficients(&[1; 6]));
        let h = alg(5, &["x"], &["x^4"]);
        let m = Module::cyclic(&h, &[h.parse_element("x").unwrap()]).unwrap();
        assert_eq!(poincare_truncation(&m, 4), LaurentPoly::from_coefficients(&[1; 5]));
        assert_eq!(betti_sequence(&Module::free(&h, 2), 2), vec![2, 0, 0]);
    }

    #[test]
    fn pd_finite() {
        let d = alg(2, &["x"], &["x^2"]);
        assert!(is_pd_finite(&Module::free(&d, 3), 1));
        assert!(!is_pd_finite(&Module::residue_field(&d), 6));
        let f = alg(3, &["x"], &["x"]);
        assert!(is_pd_finite(&Module::residue_field(&f), 1));
    }

    #[test]
    fn periodicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let b = Budget::default();
        let h = alg(5, &["x"], &["x^4"]);
        let m1 = Module::cyclic(&h, &[h.parse_element("x").unwrap()]).unwrap();
        let m2 = Module::cyclic(&h, &[h.parse_element("x^2").unwrap()]).unwrap();
        match detect_periodicity(&m1, 6, &b, &mut rng).unwrap() {
            PeriodicityVerdict::Periodic { lead, period, witness } => {
                assert_eq!((lead, period), (0, 2));
                assert!(witness.is_isomorphism() && witness.is_homomorphism());
            }
            v => panic!("{v:?}"),
        }
        let v = detect_periodicity(&m2, 6, &b, &mut rng).unwrap();
        assert!(matches!(v, PeriodicityVerdict::Periodic { lead: 0, period: 1, .. }));

        let ci = alg(3, &["x", "y"], &["x^2", "y^2"]);
        match detect_periodicity(&Module::residue_field(&ci), 8, &b, &mut rng).unwrap() {
            PeriodicityVerdict::ExceededBudget { betti, .. } => {
                assert_eq!(betti, (1..=9).collect::<Vec<_>>());
            }
            v => panic!("{v:?}"),
        }
    }
}
