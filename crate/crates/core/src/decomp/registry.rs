use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::fingerprint::{fingerprint, Fingerprint};
use super::iso::{is_isomorphic, IsoVerdict};
use super::{decompose, Budget, DecompError, Decomposition};
use crate::algebra::Algebra;
use crate::moduletheory::{same_algebra, Module, ModuleError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct IsoClassId(pub usize);

impl fmt::Display for IsoClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone)]
pub struct ClassEntry {
    pub representative: Module,
    pub fingerprint: Fingerprint,
    pub is_free: bool,
}

/// Canonical ids for isomorphism classes of indecomposable modules over one
/// algebra. Owns the random generator used by every search it runs, so a
/// registry built from a seed replays identically.
pub struct ClassRegistry {
    algebra: Arc<Algebra>,
    budget: Budget,
    rng: ChaCha8Rng,
    entries: Vec<ClassEntry>,
    // action of t^-1 (false) and t (true) on registered classes
    pub(crate) shift_cache: BTreeMap<(IsoClassId, bool), BTreeMap<IsoClassId, i64>>,
}

impl ClassRegistry {
    pub fn new(algebra: &Arc<Algebra>, budget: Budget, seed: u64) -> ClassRegistry {
        ClassRegistry {
            algebra: Arc::clone(algebra),
            budget,
            rng: ChaCha8Rng::seed_from_u64(seed),
            entries: Vec::new(),
            shift_cache: BTreeMap::new(),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, id: IsoClassId) -> Option<&ClassEntry> {
        self.entries.get(id.0)
    }

    pub fn representative(&self, id: IsoClassId) -> Option<&Module> {
        self.entry(id).map(|e| &e.representative)
    }

    pub fn entries(&self) -> impl Iterator<Item = (IsoClassId, &ClassEntry)> {
        self.entries.iter().enumerate().map(|(i, e)| (IsoClassId(i), e))
    }

    fn check(&self, m: &Module) -> Result<(), DecompError> {
        if same_algebra(&self.algebra, m.algebra()) {
            Ok(())
        } else {
            Err(ModuleError::AlgebraMismatch.into())
        }
    }

    pub fn decompose(&mut self, m: &Module) -> Result<Decomposition, DecompError> {
        self.check(m)?;
        let budget = self.budget;
        decompose(m, &budget, &mut self.rng)
    }

    pub fn is_isomorphic(&mut self, m: &Module, n: &Module) -> Result<IsoVerdict, DecompError> {
        let budget = self.budget;
        Ok(is_isomorphic(m, n, &budget, &mut self.rng)?)
    }

    /// Id of the class of an indecomposable module, registering it if new.
    pub fn canonical_id(&mut self, m: &Module) -> Result<IsoClassId, DecompError> {
        self.check(m)?;
        let budget = self.budget;
        let fp = fingerprint(m, budget.fingerprint_depth);
        for (i, entry) in self.entries.iter().enumerate() {
            if entry.fingerprint != fp {
                continue;
            }
            match is_isomorphic(m, &entry.representative, &budget, &mut self.rng)? {
                IsoVerdict::Iso(_) => return Ok(IsoClassId(i)),
                IsoVerdict::NonIso(_) => {}
                IsoVerdict::Unknown { reduced_dim, .. } => {
                    return Err(DecompError::BudgetExceeded(format!(
                        "isomorphism with class #{i} undecided (reduced Hom dimension {reduced_dim})"
                    )))
                }
            }
        }
        let is_free = m.is_free();
        self.entries.push(ClassEntry { representative: m.clone(), fingerprint: fp, is_free });
        Ok(IsoClassId(self.entries.len() - 1))
    }
}

/// Free-function form of [`ClassRegistry::canonical_id`].
pub fn canonical_id(reg: &mut ClassRegistry, m: &Module) -> Result<IsoClassId, DecompError> {
    reg.canonical_id(m)
}
