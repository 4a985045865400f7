use std::collections::BTreeMap;

use serde::Serialize;

use super::{j_apply, representative, shift_class, JElement, JError};
use crate::decomp::{ClassRegistry, IsoClassId};
use crate::laurent::LaurentPoly;
use crate::moduletheory::{free_cover, min_generators};
use crate::resolution::SYZYGY_DIM_LIMIT;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OrbitStatus {
    /// `cycle[i+1]` is the class of the cosyzygy of `cycle[i]`, cyclically.
    FiniteOrbit { cycle: Vec<IsoClassId> },
    ExceededBudget { visited: Vec<IsoClassId> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub id: IsoClassId,
    pub status: OrbitStatus,
}

impl Orbit {
    pub fn length(&self) -> Option<usize> {
        match &self.status {
            OrbitStatus::FiniteOrbit { cycle } => Some(cycle.len()),
            OrbitStatus::ExceededBudget { .. } => None,
        }
    }
}

/// Follow `[C] -> [Ω^-1 C]` from `id` for at most `budget` steps.
pub fn orbit(id: IsoClassId, budget: usize, reg: &mut ClassRegistry) -> Result<Orbit, JError> {
    representative(reg, id)?;
    let mut visited = vec![id];
    let mut current = id;
    for _ in 0..budget {
        let image = shift_class(reg, current, true)?;
        let next = image.as_single_class().ok_or(JError::NotSingleClass { id: current, image })?;
        if let Some(pos) = visited.iter().position(|&v| v == next) {
            let cycle = visited[pos..].to_vec();
            return Ok(Orbit { id, status: OrbitStatus::FiniteOrbit { cycle } });
        }
        visited.push(next);
        current = next;
    }
    Ok(Orbit { id, status: OrbitStatus::ExceededBudget { visited } })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TorsionVerdict {
    Torsion {
        annihilator: LaurentPoly,
        /// Classes whose span the annihilator kills.
        classes: Vec<IsoClassId>,
    },
    ExceededBudget {
        explored: usize,
        /// Betti numbers of each support class, as far as computed.
        betti_evidence: BTreeMap<IsoClassId, Vec<usize>>,
    },
}

impl TorsionVerdict {
    pub fn annihilator(&self) -> Option<&LaurentPoly> {
        match self {
            TorsionVerdict::Torsion { annihilator, .. } => Some(annihilator),
            TorsionVerdict::ExceededBudget { .. } => None,
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn betti_evidence(
    x: &JElement,
    steps: usize,
    reg: &ClassRegistry,
) -> Result<BTreeMap<IsoClassId, Vec<usize>>, JError> {
    let mut out = BTreeMap::new();
    for id in x.support() {
        let mut m = representative(reg, id)?;
        let mut betti = Vec::new();
        for i in 0..=steps {
            betti.push(min_generators(&m));
            if i == steps || m.dim() > SYZYGY_DIM_LIMIT {
                break;
            }
            m = free_cover(&m).kernel();
        }
        out.insert(id, betti);
    }
    Ok(out)
}

/// `det(I - tT)` via the Faddeev–LeVerrier recursion: the coefficient of
/// `t^k` is the coefficient `c_k` of `λ^(n-k)` in `det(λI - T)`.
fn det_one_minus_t(t: &[Vec<i64>]) -> Result<LaurentPoly, JError> {
    let n = t.len();
    let t: Vec<Vec<i128>> = t.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut c = vec![1i128];
    let mut mk = vec![vec![0i128; n]; n];
    let ovf = || JError::Overflow;
    for k in 1..=n {
        // M_k = T M_{k-1} + c_{k-1} I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: i128 = if i == j { c[k - 1] } else { 0 };
                for l in 0..n {
                    acc = acc.checked_add(t[i][l].checked_mul(mk[l][j]).ok_or_else(ovf)?).ok_or_else(ovf)?;
                }
                next[i][j] = acc;
            }
        }
        mk = next;
        let mut trace: i128 = 0;
        for i in 0..n {
            for l in 0..n {
                trace = trace.checked_add(t[i][l].checked_mul(mk[l][i]).ok_or_else(ovf)?).ok_or_else(ovf)?;
            }
        }
        c.push(-trace / k as i128);
    }
    let coeffs = c.into_iter().map(|x| i64::try_from(x).map_err(|_| JError::Overflow)).collect::<Result<Vec<_>, _>>()?;
    Ok(LaurentPoly::from_coefficients(&coeffs))
}

/// Search for a nonzero Laurent polynomial killing `x`.
///
/// Over Gorenstein algebras the orbits of the support classes under `t`
/// are followed; if all close up, `t^N - 1` with `N` the lcm of their
/// lengths is returned. Otherwise the classes reachable from the support
/// under `t^-1` are collected; if they close up within `budget` classes,
/// `t^-1 [C] = sum_D T[D][C] [D]` and `det(I - tT)` kills their span.
pub fn torsion_test(x: &JElement, budget: usize, reg: &mut ClassRegistry) -> Result<TorsionVerdict, JError> {
    if x.is_zero() {
        return Ok(TorsionVerdict::Torsion { annihilator: LaurentPoly::one(), classes: vec![] });
    }
    if reg.algebra().is_gorenstein() {
        let mut n = 1usize;
        let mut classes = Vec::new();
        for id in x.support() {
            let o = orbit(id, budget, reg)?;
            match o.status {
                OrbitStatus::FiniteOrbit { cycle } => {
                    n = n / gcd(n, cycle.len()) * cycle.len();
                    classes.extend(cycle);
                }
                OrbitStatus::ExceededBudget { visited } => {
                    return Ok(TorsionVerdict::ExceededBudget {
                        explored: visited.len(),
                        betti_evidence: betti_evidence(x, budget, reg)?,
                    })
                }
            }
        }
        classes.sort();
        classes.dedup();
        let annihilator = &LaurentPoly::t_pow(n as i32) - &LaurentPoly::one();
        return Ok(TorsionVerdict::Torsion { annihilator, classes });
    }

    let mut classes = x.support();
    let mut images = Vec::new();
    let mut i = 0;
    while i < classes.len() {
        let image = shift_class(reg, classes[i], false)?;
        for id in image.support() {
            if !classes.contains(&id) {
                classes.push(id);
            }
        }
        images.push(image);
        if classes.len() > budget {
            return Ok(TorsionVerdict::ExceededBudget {
                explored: classes.len(),
                betti_evidence: betti_evidence(x, budget, reg)?,
            });
        }
        i += 1;
    }
    let n = classes.len();
    let mut t = vec![vec![0i64; n]; n];
    for (c, image) in images.iter().enumerate() {
        for (d, id) in classes.iter().enumerate() {
            t[d][c] = image.coefficient(*id);
        }
    }
    let annihilator = det_one_minus_t(&t)?;
    classes.sort();
    Ok(TorsionVerdict::Torsion { annihilator, classes })
}

/// Re-check that `f x = 0`.
///
/// Away from Gorenstein algebras only `t^-1` is computable, so `f` is
/// shifted to non-positive exponents. There `t^-1` may identify distinct
/// classes, so `t^-s f x` is also tried for `s` up to the number of
/// registered classes; `t` is invertible, so any vanishing shift suffices.
pub fn annihilates(f: &LaurentPoly, x: &JElement, reg: &mut ClassRegistry) -> Result<bool, JError> {
    if reg.algebra().is_gorenstein() {
        return Ok(j_apply(f, x, reg)?.is_zero());
    }
    let top = f.max_exponent().unwrap_or(0).max(0);
    let mut y = j_apply(&f.shift(-top), x, reg)?;
    let down = LaurentPoly::t_pow(-1);
    let mut s = 0;
    while !y.is_zero() && s <= reg.len() {
        y = j_apply(&down, &y, reg)?;
        s += 1;
    }
    Ok(y.is_zero())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::quotient_from_polynomials;
    use crate::decomp::Budget;
    use crate::jmod::j_class;
    use crate::moduletheory::Module;

    #[test]
    fn determinant() {
        assert_eq!(det_one_minus_t(&[vec![2]]).unwrap(), LaurentPoly::from_coefficients(&[1, -2]));
        // permutation of two classes: det(I - tP) = 1 - t^2
        let p = det_one_minus_t(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(p, LaurentPoly::from_coefficients(&[1, 0, -1]));
        let q = det_one_minus_t(&[vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]]).unwrap();
        // det(I - tT) for this T: 1 - 3t + 3t^2 - 25t^3
        assert_eq!(q, LaurentPoly::from_coefficients(&[1, -3, 3, -25]));
        assert_eq!(det_one_minus_t(&[]).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn hypersurface_orbits() {
        let a = Arc::new(quotient_from_polynomials(5, &["x"], &["x^4"]).unwrap());
        let mut reg = ClassRegistry::new(&a, Budget::default(), 0);
        let m = Module::cyclic(&a, &[a.parse_element("x").unwrap()]).unwrap();
        let x = j_class(&m, &mut reg).unwrap();
        let o = orbit(x.as_single_class().unwrap(), 6, &mut reg).unwrap();
        assert_eq!(o.length(), Some(2));
        let v = torsion_test(&x, 6, &mut reg).unwrap();
        let ann = v.annihilator().unwrap().clone();
        assert_eq!(ann, LaurentPoly::from_terms([(2, 1), (0, -1)]));
        assert!(annihilates(&ann, &x, &mut reg).unwrap());
        assert_eq!(
            torsion_test(&JElement::zero(), 1, &mut reg).unwrap().annihilator(),
            Some(&LaurentPoly::one())
        );
    }

    #[test]
    fn recurrence_certificate() {
        let a = Arc::new(quotient_from_polynomials(2, &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap());
        let mut reg = ClassRegistry::new(&a, Budget::default(), 0);
        let k = j_class(&Module::residue_field(&a), &mut reg).unwrap();
        let v = torsion_test(&k, 4, &mut reg).unwrap();
        let ann = v.annihilator().unwrap().clone();
        assert_eq!(ann, LaurentPoly::from_coefficients(&[1, -2]));
        assert!(annihilates(&ann, &k, &mut reg).unwrap());
        assert!(!annihilates(&LaurentPoly::from_coefficients(&[1, -3]), &k, &mut reg).unwrap());
    }

    #[test]
    fn growing_orbit_exceeds_budget() {
        let a = Arc::new(quotient_from_polynomials(3, &["x", "y"], &["x^2", "y^2"]).unwrap());
        let mut reg = ClassRegistry::new(&a, Budget::default(), 0);
        let m = Module::free(&a, 1).restrict(&a.profile().radical_basis);
        let x = j_class(&m, &mut reg).unwrap();
        let o = orbit(x.as_single_class().unwrap(), 6, &mut reg).unwrap();
        assert!(matches!(o.status, OrbitStatus::ExceededBudget { .. }));
        let k = j_class(&Module::residue_field(&a), &mut reg).unwrap();
        match torsion_test(&k, 5, &mut reg).unwrap() {
            TorsionVerdict::ExceededBudget { betti_evidence, .. } => {
                let b = &betti_evidence[&k.as_single_class().unwrap()];
                assert_eq!(b, &vec![1, 2, 3, 4, 5, 6]);
            }
            v => panic!("{v:?}"),
        }
    }
}
