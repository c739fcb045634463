use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use koszulres_core::corpus;
use koszulres_core::report::{
    HomologySection, InvariantSection, MasseySection, OracleSection, Report, ResolutionSection,
    RingSection,
};
use koszulres_core::resolution::MAX_F_DEGREE;
use koszulres_core::{
    oracle_betti, Analysis, Error, Fault, Field, FieldSpec, Fp, Rational, RingDefinition,
};
use serde_json::Value;

use crate::text;

/// Largest homological degree accepted by `oracle-betti`.
const MAX_ORACLE_DEGREE: usize = 8;

pub struct Options {
    pub json: bool,
    pub cutoff: Option<usize>,
    pub max_hdeg: usize,
    pub field: Option<String>,
    pub timing: bool,
    pub inject_fault: Option<String>,
}

#[derive(Clone, Copy, Debug)]
pub enum Task {
    RingCheck,
    Invariants,
    Resolution { verify: bool },
    Massey,
    Oracle { n: usize },
}

impl Task {
    fn name(self) -> &'static str {
        match self {
            Task::RingCheck => "ring-check",
            Task::Invariants => "invariants",
            Task::Resolution { .. } => "resolution",
            Task::Massey => "massey",
            Task::Oracle { .. } => "oracle-betti",
        }
    }
}

pub struct Output {
    pub text: String,
    pub verified: bool,
}

fn load(file: &Path) -> anyhow::Result<String> {
    let name = file.to_string_lossy();
    if let Some(entry) = name.strip_prefix("corpus:") {
        return corpus::entry(entry)
            .map(|e| e.source.to_string())
            .ok_or_else(|| anyhow!("no corpus ring named `{entry}`"));
    }
    std::fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))
}

pub fn run(file: &Path, opts: &Options, task: Task) -> anyhow::Result<Output> {
    if !(1..=MAX_F_DEGREE).contains(&opts.max_hdeg) {
        bail!("--max-hdeg must be between 1 and {MAX_F_DEGREE}");
    }
    if opts.inject_fault.is_some() && !matches!(task, Task::Resolution { .. }) {
        bail!("fault injection applies to the resolution command only");
    }
    let src = load(file)?;
    let def = RingDefinition::parse(&src).with_context(|| file.display().to_string())?;
    let field = match &opts.field {
        Some(f) => FieldSpec::parse(f)?,
        None => def.field,
    };
    match field {
        FieldSpec::Rationals => run_in::<Rational>(&def, field, &(), opts, task),
        FieldSpec::Prime(p) => run_in::<Fp>(&def, field, &p, opts, task),
    }
}

struct Clock {
    enabled: bool,
    stages: BTreeMap<String, u64>,
    last: Instant,
}

impl Clock {
    fn new(enabled: bool) -> Self {
        Clock {
            enabled,
            stages: BTreeMap::new(),
            last: Instant::now(),
        }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.stages
            .insert(stage.to_string(), (now - self.last).as_millis() as u64);
        self.last = now;
    }

    fn finish(self) -> Option<BTreeMap<String, u64>> {
        self.enabled.then_some(self.stages)
    }
}

fn run_in<F: Field>(
    def: &RingDefinition,
    field: FieldSpec,
    desc: &F::Desc,
    opts: &Options,
    task: Task,
) -> anyhow::Result<Output> {
    let mut clock = Clock::new(opts.timing);
    let ring = Arc::new(def.build::<F>(desc, opts.cutoff)?);
    clock.lap("ring");
    let mut report = Report::new(task.name(), RingSection::new(def, field, &ring));
    let mut verified = true;

    let analysis = match task {
        Task::RingCheck | Task::Oracle { .. } => None,
        _ => {
            let a = Analysis::run(ring.clone(), def.depth).map_err(cutoff_guidance)?;
            clock.lap("homology");
            if !a.algebra.warnings.is_empty() {
                let detail = a.algebra.warnings.join("; ");
                bail!(
                    "cutoff {} is insufficient: {detail}. Rerun with a larger --cutoff or a larger `cutoff:` in the ring file",
                    ring.cutoff()
                );
            }
            report.ring = report.ring.with_codepth(&a);
            verified &= a.algebra.checks.all();
            Some(a)
        }
    };
    if !ring.is_artinian() {
        report.warnings.push(format!(
            "ring is not artinian; computations are truncated at internal degree {}",
            ring.cutoff()
        ));
    }

    match task {
        Task::RingCheck => {}
        Task::Invariants => {
            let a = analysis.as_ref().expect("analysis");
            let inv = InvariantSection::new(a);
            verified &= inv.checks.values().all(|&ok| ok) && inv.codepth3_division != Some(false);
            report.homology = Some(HomologySection::new(&a.algebra));
            report.invariants = Some(inv);
        }
        Task::Massey => {
            let a = analysis.as_ref().expect("analysis");
            report.massey = Some(MasseySection::new(&a.algebra));
        }
        Task::Resolution { verify } => {
            let a = analysis.as_ref().expect("analysis");
            let mut f = a.resolution();
            clock.lap("resolution");
            let fault = match &opts.inject_fault {
                Some(spec) => {
                    let fault: Fault = spec.parse()?;
                    f.inject(&fault)?;
                    Some(fault.to_string())
                }
                None => None,
            };
            let verify = verify || fault.is_some();
            let verification = if verify {
                let v = f.verify()?;
                clock.lap("verify");
                verified &= v.ok();
                Some(v)
            } else {
                None
            };
            let mut section = ResolutionSection::new(&f, verification.as_ref(), fault);
            let formula_ok = f
                .ranks()
                .iter()
                .zip(a.invariants.betti)
                .all(|(&r, b)| r as i64 == b);
            section.matches_formula = Some(formula_ok);
            verified &= formula_ok;
            if verify {
                let o = oracle_betti(&ring, MAX_F_DEGREE)?;
                clock.lap("oracle");
                let mut os = OracleSection::new(&o);
                let agrees = o.agrees_with(&f.graded_ranks());
                os.matches_resolution = Some(agrees);
                verified &= agrees;
                if !o.truncated {
                    let ok = o
                        .totals()
                        .iter()
                        .zip(a.invariants.betti)
                        .all(|(&r, b)| r as i64 == b);
                    os.matches_formula = Some(ok);
                    verified &= ok;
                }
                report.oracle = Some(os);
            }
            report.resolution = Some(section);
        }
        Task::Oracle { n } => {
            if !(1..=MAX_ORACLE_DEGREE).contains(&n) {
                bail!("N must be between 1 and {MAX_ORACLE_DEGREE}");
            }
            let o = oracle_betti(&ring, n)?;
            clock.lap("oracle");
            report.oracle = Some(OracleSection::new(&o));
        }
    }
    report.timing_ms = clock.finish();

    let mut value = serde_json::to_value(&report)?;
    let limit = match task {
        Task::Oracle { n } => n,
        _ => opts.max_hdeg,
    };
    truncate(&mut value, limit);
    let text = if opts.json {
        let mut s = serde_json::to_string_pretty(&value)?;
        s.push('\n');
        s
    } else {
        text::flatten(&value)
    };
    Ok(Output { text, verified })
}

fn cutoff_guidance(e: Error) -> anyhow::Error {
    match e {
        Error::DegreeOverflow { .. } => {
            anyhow!(e).context("cutoff is insufficient; rerun with a larger --cutoff or a larger `cutoff:` in the ring file")
        }
        other => other.into(),
    }
}

/// Cuts every per-homological-degree sequence after degree `max_hdeg`.
fn truncate(report: &mut Value, max_hdeg: usize) {
    let keep = max_hdeg + 1;
    let cut = |v: Option<&mut Value>, len: usize| {
        if let Some(Value::Array(items)) = v {
            items.truncate(len);
        }
    };
    if let Some(inv) = report.get_mut("invariants") {
        for key in ["betti", "golod_bound", "defect", "denominator", "gamma"] {
            cut(inv.pointer_mut(&format!("/{key}/value")), keep);
        }
        cut(inv.pointer_mut("/deviations/value"), max_hdeg);
        cut(inv.pointer_mut("/deviations_from_betti/value"), max_hdeg);
    }
    if let Some(res) = report.get_mut("resolution") {
        cut(res.pointer_mut("/ranks/value"), keep);
        cut(res.get_mut("graded"), keep);
        cut(res.get_mut("modules"), keep);
        cut(res.get_mut("blocks"), max_hdeg);
    }
    if let Some(o) = report.get_mut("oracle") {
        cut(o.pointer_mut("/betti/value"), keep);
        cut(o.get_mut("graded"), keep);
        cut(o.get_mut("searched_up_to"), keep);
    }
}
