//! Elements of the Grothendieck module `J(R)` in normal form.
//!
//! An element is a finite integer combination of isomorphism classes of
//! non-free indecomposable modules. `t^-1` sends `[C]` to the class of
//! `Ω C` and `t` sends it to the class of `Ω^-1 C`; both are normalized
//! again into combinations of registered classes.
//!
//! `t^-1` is available over every algebra. `t` is only offered over
//! Gorenstein algebras, where `Ω^-1` inverts `Ω` on modules without free
//! summands; elsewhere callers use negative exponents only.

mod search;
mod torsion;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::decomp::{ClassRegistry, DecompError, IsoClassId};
use crate::laurent::LaurentPoly;
use crate::moduletheory::{cosyzygy, syzygy, Module};

pub use search::{find_periodic_module, hypersurface_check, HypersurfaceReport, PeriodicModule, SampleCheck};
pub use torsion::{
    annihilates, orbit, torsion_test, Orbit, OrbitStatus, TorsionVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JError {
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error("multiplication by positive powers of t needs a Gorenstein algebra")]
    PositiveShiftNeedsGorenstein,
    #[error("class {0} is not registered")]
    UnknownClass(IsoClassId),
    #[error("class {0} is free")]
    FreeClass(IsoClassId),
    #[error("cosyzygy of class {id} is {image}, not a single class")]
    NotSingleClass { id: IsoClassId, image: JElement },
    #[error("integer overflow while building the annihilator")]
    Overflow,
}

/// `sum_C a_C [C]` over non-free indecomposable classes.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct JElement {
    terms: BTreeMap<IsoClassId, i64>,
}

impl JElement {
    pub fn zero() -> JElement {
        JElement::default()
    }

    pub fn class(id: IsoClassId) -> JElement {
        let mut x = JElement::zero();
        x.add_term(id, 1);
        x
    }

    pub fn add_term(&mut self, id: IsoClassId, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(id).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&id);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, id: IsoClassId) -> i64 {
        self.terms.get(&id).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (IsoClassId, i64)> + '_ {
        self.terms.iter().map(|(&id, &c)| (id, c))
    }

    pub fn support(&self) -> Vec<IsoClassId> {
        self.terms.keys().copied().collect()
    }

    /// The single class `C` when the element is exactly `[C]`.
    pub fn as_single_class(&self) -> Option<IsoClassId> {
        match self.terms.iter().next() {
            Some((&id, &1)) if self.terms.len() == 1 => Some(id),
            _ => None,
        }
    }

    pub fn scaled(&self, c: i64) -> JElement {
        let mut out = JElement::zero();
        for (id, a) in self.terms() {
            out.add_term(id, a * c);
        }
        out
    }

    pub fn add_assign_scaled(&mut self, other: &JElement, c: i64) {
        for (id, a) in other.terms() {
            self.add_term(id, a * c);
        }
    }

    pub fn plus(&self, other: &JElement) -> JElement {
        let mut out = self.clone();
        out.add_assign_scaled(other, 1);
        out
    }

    pub fn minus(&self, other: &JElement) -> JElement {
        let mut out = self.clone();
        out.add_assign_scaled(other, -1);
        out
    }

    /// Serializable form with each class's radical series dimensions.
    pub fn describe(&self, reg: &ClassRegistry) -> JElementReport {
        let classes = self
            .terms()
            .map(|(id, coefficient)| ClassTerm {
                id,
                representative_dims: reg
                    .representative(id)
                    .map(Module::radical_series_dims)
                    .unwrap_or_default(),
                coefficient,
            })
            .collect();
        JElementReport { classes }
    }
}

impl fmt::Display for JElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (id, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            match (i, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "[{id}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassTerm {
    pub id: IsoClassId,
    pub representative_dims: Vec<usize>,
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JElementReport {
    pub classes: Vec<ClassTerm>,
}

/// `[M]`: strip free summands, decompose, and sum the class ids.
pub fn j_class(m: &Module, reg: &mut ClassRegistry) -> Result<JElement, JError> {
    let dec = reg.decompose(m)?;
    let mut out = JElement::zero();
    for s in &dec.summands {
        let id = reg.canonical_id(&s.module)?;
        if !reg.entry(id).is_some_and(|e| e.is_free) {
            out.add_term(id, 1);
        }
    }
    Ok(out)
}

fn representative(reg: &ClassRegistry, id: IsoClassId) -> Result<Module, JError> {
    let entry = reg.entry(id).ok_or(JError::UnknownClass(id))?;
    if entry.is_free {
        return Err(JError::FreeClass(id));
    }
    Ok(entry.representative.clone())
}

/// `t [C]` (`up`) or `t^-1 [C]`, cached in the registry.
pub(crate) fn shift_class(reg: &mut ClassRegistry, id: IsoClassId, up: bool) -> Result<JElement, JError> {
    if let Some(terms) = reg.shift_cache.get(&(id, up)) {
        return Ok(JElement { terms: terms.clone() });
    }
    let rep = representative(reg, id)?;
    let next = if up { cosyzygy(&rep, 1) } else { syzygy(&rep, 1) };
    let x = j_class(&next, reg)?;
    reg.shift_cache.insert((id, up), x.terms.clone());
    Ok(x)
}

fn shift_once(x: &JElement, up: bool, reg: &mut ClassRegistry) -> Result<JElement, JError> {
    let mut out = JElement::zero();
    for (id, c) in x.terms() {
        let image = shift_class(reg, id, up)?;
        out.add_assign_scaled(&image, c);
    }
    Ok(out)
}

/// `t^k x`.
pub fn j_shift(k: i32, x: &JElement, reg: &mut ClassRegistry) -> Result<JElement, JError> {
    if k > 0 && !reg.algebra().is_gorenstein() {
        return Err(JError::PositiveShiftNeedsGorenstein);
    }
    let mut cur = x.clone();
    for _ in 0..k.unsigned_abs() {
        cur = shift_once(&cur, k > 0, reg)?;
    }
    Ok(cur)
}

/// `f · x` for a Laurent polynomial `f`.
pub fn j_apply(f: &LaurentPoly, x: &JElement, reg: &mut ClassRegistry) -> Result<JElement, JError> {
    let mut out = JElement::zero();
    for (e, c) in f.terms() {
        let shifted = j_shift(e, x, reg)?;
        out.add_assign_scaled(&shifted, c);
    }
    Ok(out)
}

/// Equality of normal forms.
pub fn j_equal(x: &JElement, y: &JElement) -> bool {
    x == y
}
