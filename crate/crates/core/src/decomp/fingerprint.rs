use serde::Serialize;

use crate::moduletheory::{free_cover, min_generators, HomSpace, Module};

/// Isomorphism invariants. Different fingerprints certify non-isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub min_generators: usize,
    pub socle_dim: usize,
    /// `dim m^i M` for `i = 0, 1, ...`.
    pub radical_series: Vec<usize>,
    pub endomorphism_dim: usize,
    /// `β_0, ..., β_depth`.
    pub betti: Vec<usize>,
}

/// Invariants that avoid Hom computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CheapInvariants {
    pub dim: usize,
    pub min_generators: usize,
    pub socle_dim: usize,
    pub radical_series: Vec<usize>,
    pub betti: Vec<usize>,
}

pub(crate) fn cheap_invariants(m: &Module, depth: usize) -> CheapInvariants {
    let mut betti = Vec::with_capacity(depth + 1);
    let mut current = m.clone();
    for i in 0..=depth {
        betti.push(min_generators(&current));
        if i < depth && !current.is_zero() {
            current = free_cover(&current).kernel();
        }
    }
    CheapInvariants {
        dim: m.dim(),
        min_generators: betti[0],
        socle_dim: m.socle().cols(),
        radical_series: m.radical_series_dims(),
        betti,
    }
}

pub fn fingerprint(m: &Module, depth: usize) -> Fingerprint {
    let c = cheap_invariants(m, depth);
    let endomorphism_dim = HomSpace::new(m, m).expect("same algebra").dim();
    Fingerprint {
        dim: c.dim,
        min_generators: c.min_generators,
        socle_dim: c.socle_dim,
        radical_series: c.radical_series,
        endomorphism_dim,
        betti: c.betti,
    }
}
