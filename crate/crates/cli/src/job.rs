//! Job files: an algebra, named modules over it, and a seed.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Deserialize;
use syzygy_core::algebra::{build_algebra, quotient_from_polynomials, Algebra};
use syzygy_core::linalg::Matrix;
use syzygy_core::moduletheory::{construct_module, Module, ModuleSpec};

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub algebra: AlgebraDescriptor,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDescriptor>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraDescriptor {
    /// `F_p[variables] / (relations)`, localized at the origin.
    PolynomialQuotient { p: u32, variables: Vec<String>, relations: Vec<String> },
    /// `products[i][j]` holds the coordinates of `e_i e_j`.
    StructureConstants { p: u32, basis: Vec<String>, products: Vec<Vec<Vec<i64>>>, unit: Vec<i64> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleDescriptor {
    Free { rank: usize },
    /// `R / (relations)` with relations written as polynomials.
    Cyclic { relations: Vec<String> },
    ResidueField,
    DirectSum { summands: Vec<ModuleRef> },
    /// One action matrix (as rows) per basis element of the algebra.
    Raw { actions: Vec<Vec<Vec<i64>>> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ModuleRef {
    Name(String),
    Inline(Box<ModuleDescriptor>),
}

impl JobSpec {
    pub fn parse(text: &str) -> Result<JobSpec, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("job file: {e}")))
    }
}

impl AlgebraDescriptor {
    pub fn build(&self) -> Result<Arc<Algebra>, CliError> {
        let built = match self {
            AlgebraDescriptor::PolynomialQuotient { p, variables, relations } => {
                let vars: Vec<&str> = variables.iter().map(String::as_str).collect();
                let rels: Vec<&str> = relations.iter().map(String::as_str).collect();
                quotient_from_polynomials(*p, &vars, &rels)
            }
            AlgebraDescriptor::StructureConstants { p, basis, products, unit } => {
                build_algebra(*p, basis.clone(), products.clone(), unit.clone())
            }
        };
        built.map(Arc::new).map_err(|e| CliError::Input(format!("algebra: {e}")))
    }
}

/// Build every module of the job, resolving references between them.
pub fn build_modules(
    algebra: &Arc<Algebra>,
    descriptors: &BTreeMap<String, ModuleDescriptor>,
) -> Result<BTreeMap<String, Module>, CliError> {
    let mut built = BTreeMap::new();
    for name in descriptors.keys() {
        let mut active = BTreeSet::new();
        resolve(algebra, descriptors, name, &mut built, &mut active)?;
    }
    Ok(built)
}

fn resolve(
    algebra: &Arc<Algebra>,
    descriptors: &BTreeMap<String, ModuleDescriptor>,
    name: &str,
    built: &mut BTreeMap<String, Module>,
    active: &mut BTreeSet<String>,
) -> Result<Module, CliError> {
    if let Some(m) = built.get(name) {
        return Ok(m.clone());
    }
    let desc = descriptors.get(name).ok_or_else(|| CliError::Input(format!("unknown module `{name}`")))?;
    if !active.insert(name.to_string()) {
        return Err(CliError::Input(format!("modules.{name}: circular reference")));
    }
    let m = construct(algebra, descriptors, desc, built, active)
        .map_err(|e| CliError::Input(format!("modules.{name}: {}", e.message())))?;
    active.remove(name);
    built.insert(name.to_string(), m.clone());
    Ok(m)
}

fn construct(
    algebra: &Arc<Algebra>,
    descriptors: &BTreeMap<String, ModuleDescriptor>,
    desc: &ModuleDescriptor,
    built: &mut BTreeMap<String, Module>,
    active: &mut BTreeSet<String>,
) -> Result<Module, CliError> {
    let spec = match desc {
        ModuleDescriptor::Free { rank } => ModuleSpec::Free(*rank),
        ModuleDescriptor::ResidueField => ModuleSpec::ResidueField,
        ModuleDescriptor::Cyclic { relations } => {
            let gens = relations
                .iter()
                .map(|r| algebra.parse_element(r).map_err(|e| CliError::Input(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            ModuleSpec::Cyclic(gens)
        }
        ModuleDescriptor::DirectSum { summands } => {
            let mut parts = Vec::new();
            for s in summands {
                parts.push(match s {
                    ModuleRef::Name(n) => resolve(algebra, descriptors, n, built, active)?,
                    ModuleRef::Inline(d) => construct(algebra, descriptors, d, built, active)?,
                });
            }
            ModuleSpec::DirectSum(parts)
        }
        ModuleDescriptor::Raw { actions } => {
            let mats = actions
                .iter()
                .enumerate()
                .map(|(b, rows)| {
                    Matrix::from_rows(algebra.p(), rows).map_err(|e| CliError::Input(format!("actions[{b}]: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            ModuleSpec::Raw(mats)
        }
    };
    construct_module(algebra, spec).map_err(|e| CliError::Input(e.to_string()))
}
