//! Isomorphism testing, Krull–Remak–Schmidt decomposition and a registry
//! of isomorphism classes of indecomposable modules.
//!
//! Both isomorphism search and the indecomposability test work in
//! `Hom(M, N)` modulo the nil ideal `I = I_top + I_soc`, where `I_top`
//! holds the maps landing in `mN` and `I_soc` the maps killing `soc M`.
//! Whether a map is invertible (or nilpotent, for `M = N`) only depends on
//! its class modulo `I`, so it suffices to search `Hom(M, N)/I`, which is
//! usually tiny.

mod decompose;
mod fingerprint;
mod iso;
mod registry;

use serde::Serialize;
use thiserror::Error;

use crate::moduletheory::ModuleError;

pub use decompose::{decompose, Decomposition, IndecomposableTier, Summand};
pub use fingerprint::{fingerprint, Fingerprint};
pub use iso::{is_isomorphic, IsoVerdict, NonIsoCertificate};
pub use registry::{canonical_id, ClassEntry, ClassRegistry, IsoClassId};

/// Search limits for the randomized and exhaustive stages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Random candidates tried before exhaustive enumeration.
    pub random_trials: usize,
    /// Largest `p^d` for which the `d`-dimensional reduced Hom space is enumerated.
    pub enumeration_limit: u64,
    /// Number of Betti numbers beyond `β_0` recorded in fingerprints.
    pub fingerprint_depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { random_trials: 64, enumeration_limit: 4096, fingerprint_depth: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// `p^d`, saturating.
pub(crate) fn search_size(p: u32, d: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..d {
        acc = acc.saturating_mul(p as u64);
    }
    acc
}

/// Calls `f` on every nonzero vector of `F_p^d` in lexicographic order
/// until it returns `true`. Returns whether it stopped early.
pub(crate) fn enumerate_nonzero(p: u32, d: usize, mut f: impl FnMut(&[u32]) -> bool) -> bool {
    let mut v = vec![0u32; d];
    loop {
        let mut i = 0;
        while i < d {
            v[i] += 1;
            if v[i] < p {
                break;
            }
            v[i] = 0;
            i += 1;
        }
        if i == d {
            return false;
        }
        if f(&v) {
            return true;
        }
    }
}
