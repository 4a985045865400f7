//! Command dispatch and report rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};
use syzygy_core::algebra::Algebra;
use syzygy_core::decomp::{Budget, ClassRegistry, DecompError, IsoVerdict};
use syzygy_core::jmod::{find_periodic_module, hypersurface_check, j_class, torsion_test, JError, TorsionVerdict};
use syzygy_core::linalg::Matrix;
use syzygy_core::moduletheory::{cosyzygy, min_generators, syzygy, Module};
use syzygy_core::resolution::{betti_sequence, detect_periodicity, minimal_resolution, poincare_truncation, PeriodicityVerdict};

use crate::job::{build_modules, JobSpec};
use crate::{CliError, Command, JclassCommand, ModuleCommand, RingCommand};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Success,
    Negative,
    BudgetExceeded,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Success => 0,
            Verdict::Negative => 2,
            Verdict::BudgetExceeded => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub verdict: Verdict,
    pub text: String,
    /// Single-line JSON with sorted keys.
    pub json: String,
}

struct Context {
    algebra: Arc<Algebra>,
    modules: BTreeMap<String, Module>,
    reg: ClassRegistry,
}

impl Context {
    fn module(&self, name: &str) -> Result<&Module, CliError> {
        self.modules.get(name).ok_or_else(|| CliError::Input(format!("unknown module `{name}`")))
    }
}

#[derive(Serialize)]
struct ModuleReport {
    dim: usize,
    min_generators: usize,
    socle_dim: usize,
    radical_series: Vec<usize>,
    /// One matrix per basis element of the algebra; usable as a raw descriptor.
    actions: Vec<Matrix>,
}

impl ModuleReport {
    fn of(m: &Module) -> ModuleReport {
        ModuleReport {
            dim: m.dim(),
            min_generators: min_generators(m),
            socle_dim: m.socle().cols(),
            radical_series: m.radical_series_dims(),
            actions: m.actions().to_vec(),
        }
    }

    fn text(&self) -> String {
        format!(
            "dim: {}\ngenerators: {}\nsocle_dim: {}\nradical series: {}\n",
            self.dim,
            self.min_generators,
            self.socle_dim,
            join(&self.radical_series)
        )
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Ring(RingCommand::Check) => "ring check",
        Command::Ring(RingCommand::HypersurfaceCheck { .. }) => "ring hypersurface-check",
        Command::Ring(RingCommand::FindPeriodic { .. }) => "ring find-periodic",
        Command::Module(ModuleCommand::Resolve { .. }) => "module resolve",
        Command::Module(ModuleCommand::Betti { .. }) => "module betti",
        Command::Module(ModuleCommand::Syzygy { .. }) => "module syzygy",
        Command::Module(ModuleCommand::Cosyzygy { .. }) => "module cosyzygy",
        Command::Module(ModuleCommand::Decompose { .. }) => "module decompose",
        Command::Module(ModuleCommand::Iso { .. }) => "module iso",
        Command::Module(ModuleCommand::Period { .. }) => "module period",
        Command::Jclass(JclassCommand::NormalForm { .. }) => "jclass normal-form",
        Command::Jclass(JclassCommand::Equal { .. }) => "jclass equal",
        Command::Jclass(JclassCommand::Torsion { .. }) => "jclass torsion",
    }
}

fn budget_outcome(reason: String) -> (Verdict, String, Value) {
    (Verdict::BudgetExceeded, format!("budget exceeded: {reason}\n"), json!({ "reason": reason }))
}

fn from_decomp(e: DecompError) -> Result<(Verdict, String, Value), CliError> {
    match e {
        DecompError::BudgetExceeded(reason) => Ok(budget_outcome(reason)),
        other => Err(CliError::Input(other.to_string())),
    }
}

fn from_j(e: JError) -> Result<(Verdict, String, Value), CliError> {
    match e {
        JError::Decomp(d) => from_decomp(d),
        JError::Overflow => Ok(budget_outcome(e.to_string())),
        other => Err(CliError::Input(other.to_string())),
    }
}

/// Run one command against a job.
pub fn execute(job: &JobSpec, cmd: &Command) -> Result<Outcome, CliError> {
    let algebra = job.algebra.build()?;
    let modules = build_modules(&algebra, &job.modules)?;
    let reg = ClassRegistry::new(&algebra, Budget::default(), job.seed);
    let mut ctx = Context { algebra, modules, reg };
    let (verdict, text, result) = match cmd {
        Command::Ring(c) => ring(&mut ctx, c)?,
        Command::Module(c) => module(&mut ctx, c)?,
        Command::Jclass(c) => jclass(&mut ctx, c)?,
    };
    let envelope = json!({
        "command": command_name(cmd),
        "seed": job.seed,
        "status": verdict,
        "result": result,
    });
    let json = serde_json::to_string(&envelope).expect("reports serialize");
    Ok(Outcome { verdict, text, json })
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn ring(ctx: &mut Context, cmd: &RingCommand) -> Result<(Verdict, String, Value), CliError> {
    match cmd {
        RingCommand::Check => {
            let a = &ctx.algebra;
            let prof = a.profile();
            let mut t = String::new();
            writeln!(t, "p: {}", a.p()).unwrap();
            writeln!(t, "dimension: {}", prof.dim).unwrap();
            writeln!(t, "basis: {}", a.basis_names().join(", ")).unwrap();
            writeln!(t, "embedding_dim: {}", prof.embedding_dim).unwrap();
            writeln!(t, "socle_dim: {}", prof.socle_dim).unwrap();
            writeln!(t, "loewy_length: {}", prof.loewy_length).unwrap();
            writeln!(t, "radical powers: {}", join(&prof.radical_power_dims)).unwrap();
            writeln!(t, "field: {}", prof.is_field).unwrap();
            writeln!(t, "Gorenstein: {}", prof.is_gorenstein).unwrap();
            writeln!(t, "hypersurface: {}", prof.is_hypersurface).unwrap();
            let result = json!({ "p": a.p(), "basis": a.basis_names(), "profile": value(prof) });
            Ok((Verdict::Success, t, result))
        }
        RingCommand::HypersurfaceCheck { samples, limits } => {
            let names: Vec<String> =
                if samples.is_empty() { ctx.modules.keys().cloned().collect() } else { samples.clone() };
            let mods = names.iter().map(|n| ctx.module(n).cloned()).collect::<Result<Vec<_>, _>>()?;
            let report = match hypersurface_check(&mods, limits.budget, &mut ctx.reg) {
                Ok(r) => r,
                Err(e) => return from_j(e),
            };
            let mut t = String::new();
            writeln!(t, "hypersurface: {}", report.is_hypersurface).unwrap();
            writeln!(t, "Gorenstein: {}", report.is_gorenstein).unwrap();
            for s in &report.samples {
                let mark = if s.annihilated { "killed" } else { "not killed" };
                writeln!(t, "{}: {} by 1 - t^2 ({})", names[s.index], mark, s.class).unwrap();
            }
            if let Some(c) = report.residue_torsion_certified {
                writeln!(t, "residue field torsion certified: {c}").unwrap();
            }
            writeln!(t, "consistent: {}", report.consistent).unwrap();
            let verdict = if report.consistent { Verdict::Success } else { Verdict::Negative };
            Ok((verdict, t, json!({ "samples": names, "report": value(&report) })))
        }
        RingCommand::FindPeriodic { generators, limits } => {
            if ctx.algebra.is_field() {
                return Err(CliError::Input("the algebra is a field; every module is free".into()));
            }
            match find_periodic_module(&mut ctx.reg, *generators, limits.budget) {
                Ok(Some(found)) => {
                    let t = format!(
                        "R/({}): Periodic(lead={}, period={})\n{}",
                        found.generator_text,
                        found.lead,
                        found.period,
                        ModuleReport::of(&found.module).text()
                    );
                    Ok((Verdict::Success, t, value(&found)))
                }
                Ok(None) => Ok(budget_outcome(format!(
                    "no periodic R/(f) among {generators} generators within {} syzygies",
                    limits.budget
                ))),
                Err(e) => from_j(e),
            }
        }
    }
}

fn module(ctx: &mut Context, cmd: &ModuleCommand) -> Result<(Verdict, String, Value), CliError> {
    match cmd {
        ModuleCommand::Resolve { name, limits } => {
            let res = minimal_resolution(ctx.module(name)?, limits.steps);
            let mut t = String::from("i\tbetti\tdim\n");
            for (i, (b, d)) in res.betti.iter().zip(&res.dims).enumerate() {
                writeln!(t, "{i}\t{b}\t{d}").unwrap();
            }
            Ok((Verdict::Success, t, value(&res)))
        }
        ModuleCommand::Betti { name, limits } => {
            let m = ctx.module(name)?;
            let betti = betti_sequence(m, limits.steps);
            let poincare = poincare_truncation(m, limits.steps);
            let t = format!("betti: {}\npoincare: {}\n", join(&betti), poincare);
            let result = json!({ "betti": betti, "poincare": value(&poincare), "poincare_text": poincare.to_string() });
            Ok((Verdict::Success, t, result))
        }
        ModuleCommand::Syzygy { name, n } => {
            let r = ModuleReport::of(&syzygy(ctx.module(name)?, *n));
            Ok((Verdict::Success, r.text(), value(&r)))
        }
        ModuleCommand::Cosyzygy { name, n } => {
            let r = ModuleReport::of(&cosyzygy(ctx.module(name)?, *n));
            Ok((Verdict::Success, r.text(), value(&r)))
        }
        ModuleCommand::Decompose { name } => {
            let m = ctx.module(name)?.clone();
            let dec = match ctx.reg.decompose(&m) {
                Ok(d) => d,
                Err(e) => return from_decomp(e),
            };
            let mut t = format!("free rank: {}\n", dec.free_rank);
            let mut summands = Vec::new();
            for s in &dec.summands {
                let id = match ctx.reg.canonical_id(&s.module) {
                    Ok(id) => id,
                    Err(e) => return from_decomp(e),
                };
                let r = ModuleReport::of(&s.module);
                writeln!(t, "{id}\tdim {}\tradical series {}\t{:?}", r.dim, join(&r.radical_series), s.tier).unwrap();
                summands.push(json!({ "class": id, "tier": value(&s.tier), "module": value(&r) }));
            }
            Ok((Verdict::Success, t, json!({ "free_rank": dec.free_rank, "summands": summands })))
        }
        ModuleCommand::Iso { a, b } => {
            let (ma, mb) = (ctx.module(a)?.clone(), ctx.module(b)?.clone());
            match ctx.reg.is_isomorphic(&ma, &mb) {
                Ok(IsoVerdict::Iso(w)) => {
                    let t = format!("isomorphic\nwitness: {:?}\n", w.matrix().to_rows());
                    Ok((Verdict::Success, t, json!({ "isomorphic": true, "witness": value(&w) })))
                }
                Ok(IsoVerdict::NonIso(cert)) => {
                    let t = format!("not isomorphic\ncertificate: {}\n", value(&cert));
                    Ok((Verdict::Negative, t, json!({ "isomorphic": false, "certificate": value(&cert) })))
                }
                Ok(IsoVerdict::Unknown { random_trials, reduced_dim }) => Ok(budget_outcome(format!(
                    "undecided after {random_trials} random trials (reduced Hom dimension {reduced_dim})"
                ))),
                Err(e) => from_decomp(e),
            }
        }
        ModuleCommand::Period { name, limits } => {
            let m = ctx.module(name)?.clone();
            let budget = *ctx.reg.budget();
            match detect_periodicity(&m, limits.budget, &budget, ctx.reg.rng()) {
                Ok(v @ PeriodicityVerdict::Periodic { lead, period, .. }) => {
                    Ok((Verdict::Success, format!("Periodic(lead={lead}, period={period})\n"), value(&v)))
                }
                Ok(v @ PeriodicityVerdict::ExceededBudget { .. }) => {
                    let PeriodicityVerdict::ExceededBudget { betti, dims } = &v else { unreachable!() };
                    let t = format!("ExceededBudget\nbetti: {}\ndims: {}\n", join(betti), join(dims));
                    Ok((Verdict::BudgetExceeded, t, value(&v)))
                }
                Err(e) => from_decomp(e),
            }
        }
    }
}

fn class_of(ctx: &mut Context, name: &str) -> Result<Result<syzygy_core::jmod::JElement, JError>, CliError> {
    let m = ctx.module(name)?.clone();
    Ok(j_class(&m, &mut ctx.reg))
}

fn jclass(ctx: &mut Context, cmd: &JclassCommand) -> Result<(Verdict, String, Value), CliError> {
    match cmd {
        JclassCommand::NormalForm { name } => {
            let x = match class_of(ctx, name)? {
                Ok(x) => x,
                Err(e) => return from_j(e),
            };
            let report = x.describe(&ctx.reg);
            let mut t = format!("{x}\n");
            for c in &report.classes {
                writeln!(t, "{}\tcoefficient {}\tradical series {}", c.id, c.coefficient, join(&c.representative_dims))
                    .unwrap();
            }
            Ok((Verdict::Success, t, json!({ "normal_form": x.to_string(), "element": value(&report) })))
        }
        JclassCommand::Equal { a, b } => {
            let xa = match class_of(ctx, a)? {
                Ok(x) => x,
                Err(e) => return from_j(e),
            };
            let xb = match class_of(ctx, b)? {
                Ok(x) => x,
                Err(e) => return from_j(e),
            };
            let equal = xa == xb;
            let result = json!({
                "equal": equal,
                "left": value(&xa.describe(&ctx.reg)),
                "right": value(&xb.describe(&ctx.reg)),
            });
            let t = format!("{a} = {xa}\n{b} = {xb}\n");
            if equal {
                Ok((Verdict::Success, format!("{t}equal\n"), result))
            } else if ctx.algebra.is_gorenstein() {
                Ok((Verdict::Negative, format!("{t}not equal\n"), result))
            } else {
                // normal forms need not be faithful away from Gorenstein algebras
                Ok((Verdict::BudgetExceeded, format!("{t}normal forms differ (not a certificate here)\n"), result))
            }
        }
        JclassCommand::Torsion { name, limits } => {
            let x = match class_of(ctx, name)? {
                Ok(x) => x,
                Err(e) => return from_j(e),
            };
            let v = match torsion_test(&x, limits.budget, &mut ctx.reg) {
                Ok(v) => v,
                Err(e) => return from_j(e),
            };
            match &v {
                TorsionVerdict::Torsion { annihilator, .. } => {
                    let t = format!("{x}\nTorsion\nannihilator: {annihilator}\n");
                    let result = json!({ "class": x.to_string(), "verdict": value(&v), "annihilator_text": annihilator.to_string() });
                    Ok((Verdict::Success, t, result))
                }
                TorsionVerdict::ExceededBudget { explored, betti_evidence } => {
                    let mut t = format!("{x}\nExceededBudget after {explored} classes\n");
                    for (id, b) in betti_evidence {
                        writeln!(t, "betti evidence {id}: {}", join(b)).unwrap();
                    }
                    Ok((Verdict::BudgetExceeded, t, json!({ "class": x.to_string(), "verdict": value(&v) })))
                }
            }
        }
    }
}
