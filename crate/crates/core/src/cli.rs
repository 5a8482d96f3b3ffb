//! The `pcat` command-line driver, as a library so it can be tested without
//! spawning processes.
//!
//! Exit codes: 0 success, 1 a law or property fails, 2 bad usage, unreadable
//! file or parse error. Output depends only on the inputs and the flags.

use std::fmt::Write;
use std::fs;
use std::path::PathBuf;

use serde_json::{json, Value};

use crate::action::{check_category_axioms, check_groupoid_axioms, check_triple_axioms, to_triple};
use crate::action::{is_injective, GLOBAL, PARTIAL};
use crate::dsl::{self, parse, parse_with_category, Scenario};
use crate::globalize::{
    build_globalization, equiv_closure, mediating, mediators_brute_force, Globalization,
    GlobalizationDisplay, GlobalizeError, MediateError, MAX_ENUMERATION_SIZE,
};
use crate::oracle::{self, ClosureFn};
use crate::report::{AxiomReport, Verdict};
use crate::topo::{summarize, FiniteTopology, TopoError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_MAX_SIZE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Globalize,
    Mediate,
    Topo,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    pub target: Option<PathBuf>,
    pub format: Format,
    /// Largest carrier for the universality sweep, in `1..=8`.
    pub max_size: usize,
    pub seed: u64,
    /// Random cases for the oracle suite.
    pub cases: usize,
    /// `globalize` prints `Y` as a scenario file instead of a report.
    pub scenario: bool,
}

impl RunConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            input: input.into(),
            target: None,
            format: Format::Text,
            max_size: DEFAULT_MAX_SIZE,
            seed: oracle::DEFAULT_SEED,
            cases: oracle::DEFAULT_CASES,
            scenario: false,
        }
    }
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn verdict(passed: bool, stdout: String) -> Self {
        Outcome {
            code: if passed { EXIT_OK } else { EXIT_FAIL },
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(stdout: String, stderr: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_FAIL,
            stdout,
            stderr: stderr.into(),
        }
    }

    fn usage(stderr: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: stderr.into(),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| Outcome::usage(format!("{}: {e}\n", path.display())))
}

/// Reads the files named in `cfg` and runs the command.
pub fn run(cfg: &RunConfig) -> Outcome {
    let input = match read(&cfg.input) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let target = match cfg.target.as_ref().map(read).transpose() {
        Ok(t) => t,
        Err(o) => return o,
    };
    run_source(cfg, &input, target.as_deref())
}

/// Runs the command on in-memory sources; `cfg.input` and `cfg.target` only
/// label diagnostics.
pub fn run_source(cfg: &RunConfig, input: &str, target: Option<&str>) -> Outcome {
    run_source_with(cfg, input, target, &equiv_closure)
}

/// As [`run_source`], with the closure routine swapped out for `oracle`.
pub fn run_source_with(
    cfg: &RunConfig,
    input: &str,
    target: Option<&str>,
    closure: ClosureFn,
) -> Outcome {
    if !(1..=MAX_ENUMERATION_SIZE).contains(&cfg.max_size) {
        return Outcome::usage(format!(
            "--max-size must be between 1 and {MAX_ENUMERATION_SIZE}\n"
        ));
    }
    if cfg.target.is_some() != target.is_some() {
        return Outcome::usage("target source missing\n");
    }
    if cfg.command == Command::Mediate && target.is_none() {
        return Outcome::usage("mediate needs --target FILE\n");
    }
    let scenario = match parse(input) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(format!("{}:{e}\n", cfg.input.display())),
    };
    match cfg.command {
        Command::Validate => cmd_validate(cfg, &scenario),
        Command::Globalize => with_valid(&scenario, || cmd_globalize(cfg, &scenario)),
        Command::Mediate => with_valid(&scenario, || {
            cmd_mediate(cfg, &scenario, target.expect("checked above"))
        }),
        Command::Topo => with_valid(&scenario, || cmd_topo(cfg, &scenario)),
        Command::Oracle => with_valid(&scenario, || cmd_oracle(cfg, &scenario, closure)),
    }
}

fn category_label(s: &Scenario) -> &str {
    s.category_name.as_deref().unwrap_or("C")
}

fn action_label(s: &Scenario) -> &str {
    s.action_name.as_deref().unwrap_or("X")
}

fn with_valid(s: &Scenario, f: impl FnOnce() -> Outcome) -> Outcome {
    let report = s.category.validate();
    if report.is_valid() {
        return f();
    }
    let mut err = format!("{} is not a category:\n", category_label(s));
    for v in &report.violations {
        writeln!(err, "  {}: {v}", v.code()).unwrap();
    }
    Outcome::fail(String::new(), err)
}

fn json_out(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn write_report(out: &mut String, title: &str, report: &AxiomReport) {
    writeln!(out, "{title}").unwrap();
    write!(out, "{report}").unwrap();
}

fn cmd_validate(cfg: &RunConfig, s: &Scenario) -> Outcome {
    let (cat, act) = (&s.category, &s.action);
    let validation = cat.validate();
    let mut out = String::new();
    writeln!(
        out,
        "category {}: {} objects, {} morphisms",
        category_label(s),
        cat.objects().len(),
        cat.len()
    )
    .unwrap();
    if !validation.is_valid() {
        if cfg.format == Format::Json {
            let v = json!({ "category": dsl::validation_json(&validation), "pass": false });
            return Outcome::verdict(false, json_out(&v));
        }
        for v in &validation.violations {
            writeln!(out, "  {}: {v}", v.code()).unwrap();
        }
        writeln!(out, "result: FAIL, not a category").unwrap();
        return Outcome::verdict(false, out);
    }
    writeln!(out, "  valid").unwrap();
    let axioms = check_category_axioms(cat, act).expect("parsed action fits its category");
    let witness = cat.groupoid_witness();
    let groupoid = witness
        .as_ref()
        .map(|w| check_groupoid_axioms(cat, w, act).expect("parsed action fits"));
    let triple = check_triple_axioms(cat, &to_triple(act), witness.as_ref());
    let partial = axioms.all_hold(PARTIAL);
    let global = axioms.all_hold(GLOBAL);

    if cfg.format == Format::Json {
        let mut v = json!({
            "category": dsl::validation_json(&validation),
            "axioms": dsl::axioms_json(&axioms),
            "subset_form": dsl::axioms_json(&triple),
            "partial": partial,
            "global": global,
            "pass": partial,
        });
        if let Some(g) = &groupoid {
            v["groupoid"] = dsl::axioms_json(g);
        }
        return Outcome::verdict(partial, json_out(&v));
    }

    writeln!(
        out,
        "action {}: {} points, {} defined entries",
        action_label(s),
        act.len(),
        act.defined_count()
    )
    .unwrap();
    write_report(&mut out, "category axioms:", &axioms);
    if let Some(g) = &groupoid {
        write_report(&mut out, "groupoid axioms:", g);
    }
    write_report(&mut out, "subset form:", &triple);
    if partial && !global {
        writeln!(
            out,
            "note: C4 is informational; a partial action needs C1-C3"
        )
        .unwrap();
    }
    let result = match (partial, global) {
        (true, true) => "global action",
        (true, false) => "partial action",
        _ => "FAIL, not a partial action",
    };
    writeln!(out, "result: {result}").unwrap();
    Outcome::verdict(partial, out)
}

fn globalize(s: &Scenario) -> Result<Globalization, Outcome> {
    build_globalization(&s.category, &s.action).map_err(|e| match e {
        GlobalizeError::NotPartialAction(r) => Outcome::fail(
            String::new(),
            format!("{} is not a partial action:\n{r}", action_label(s)),
        ),
        other => Outcome::fail(String::new(), format!("{other}\n")),
    })
}

fn cmd_globalize(cfg: &RunConfig, s: &Scenario) -> Outcome {
    let (cat, act) = (&s.category, &s.action);
    let glob = match globalize(s) {
        Ok(g) => g,
        Err(o) => return o,
    };
    if cfg.scenario {
        let y = dsl::globalization_scenario(category_label(s), cat, act, &glob);
        return Outcome::ok(dsl::to_text(&y));
    }
    let axioms = check_category_axioms(cat, glob.action()).expect("Y fits its category");
    if cfg.format == Format::Json {
        return Outcome::ok(json_out(&dsl::globalization_json(cat, act, &glob, &axioms)));
    }
    let mut out = String::new();
    writeln!(
        out,
        "universal globalization of {} over {}",
        action_label(s),
        category_label(s)
    )
    .unwrap();
    write!(
        out,
        "{}",
        GlobalizationDisplay {
            cat,
            act,
            glob: &glob
        }
    )
    .unwrap();
    write_report(&mut out, "axioms on Y:", &axioms);
    Outcome::ok(out)
}

fn cmd_mediate(cfg: &RunConfig, s: &Scenario, target_src: &str) -> Outcome {
    let (cat, act) = (&s.category, &s.action);
    let label = cfg
        .target
        .as_ref()
        .map(|p| p.display().to_string())
        .unwrap_or_else(|| "target".into());
    let target = match parse_with_category(target_src, cat) {
        Ok(t) => t,
        Err(e) => return Outcome::usage(format!("{label}:{e}\n")),
    };
    if target.category != *cat {
        return Outcome::fail(
            String::new(),
            format!("{label}: category differs from the input's\n"),
        );
    }
    let j = match target.resolve_map(act) {
        Ok(j) => j,
        Err(e) => return Outcome::usage(format!("{label}:{e}\n")),
    };
    let glob = match globalize(s) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let z = &target.action;
    let m = match mediating(cat, act, &glob, z, &j) {
        Ok(m) => m,
        Err(MediateError::NotGFunction(v)) => {
            return Outcome::fail(String::new(), format!("j is not a G-function: {v}\n"))
        }
        Err(MediateError::TargetNotGlobal(r)) => {
            return Outcome::fail(
                String::new(),
                format!("{label}: target action is not global:\n{r}"),
            )
        }
        Err(e) => return Outcome::fail(String::new(), format!("{label}: {e}\n")),
    };
    let all = mediators_brute_force(&glob, z, &j);
    let unique = all == [m.k.clone()];
    let j_injective = is_injective(&j);
    let passed = m.factors && m.equivariant.passed() && unique;
    if cfg.format == Format::Json {
        let mut v = dsl::mediator_json(cat, act, &glob, z, &m);
        v["unique"] = json!(unique);
        v["j_injective"] = json!(j_injective);
        return Outcome::verdict(passed, json_out(&v));
    }
    let y = glob.action();
    let mut out = String::new();
    writeln!(
        out,
        "k : Y -> {}",
        target.action_name.as_deref().unwrap_or("Z")
    )
    .unwrap();
    for p in y.points() {
        writeln!(out, "  {} -> {}", y.point_name(p), z.point_name(m.k[p.0])).unwrap();
    }
    let yes = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "k.i = j: {}", yes(m.factors)).unwrap();
    writeln!(out, "G-function: {}", m.equivariant).unwrap();
    writeln!(out, "unique: {} (search finds {})", yes(unique), all.len()).unwrap();
    writeln!(out, "j injective: {}", yes(j_injective)).unwrap();
    writeln!(out, "k injective: {}", yes(m.injective)).unwrap();
    Outcome::verdict(passed, out)
}

fn topology_or_fail(
    t: Result<FiniteTopology, TopoError>,
    what: &str,
) -> Result<FiniteTopology, Outcome> {
    t.map_err(|e| Outcome::fail(String::new(), format!("topology {what}: {e}\n")))
}

fn cmd_topo(cfg: &RunConfig, s: &Scenario) -> Outcome {
    let (cat, act) = (&s.category, &s.action);
    let top_mor = match topology_or_fail(s.mor_topology(), "mor") {
        Ok(t) => t,
        Err(o) => return o,
    };
    let top_x = match topology_or_fail(s.space_topology(), "space") {
        Ok(t) => t,
        Err(o) => return o,
    };
    let glob = match globalize(s) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let summary = match summarize(cat, act, &top_mor, &top_x, &glob) {
        Ok(v) => v,
        Err(e) => return Outcome::fail(String::new(), format!("{e}\n")),
    };
    let passed = summary.passed();
    if cfg.format == Format::Json {
        let mut v = dsl::topo_json(&summary);
        v["defaults"] = json!({
            "mor": s.top_mor.is_none(),
            "space": s.top_space.is_none(),
        });
        return Outcome::verdict(passed, json_out(&v));
    }
    let mut out = String::new();
    let origin = |given: bool| {
        if given {
            "given"
        } else {
            "discrete, by default"
        }
    };
    writeln!(
        out,
        "topology on mor({}): {}",
        category_label(s),
        origin(s.top_mor.is_some())
    )
    .unwrap();
    writeln!(
        out,
        "topology on {}: {}",
        action_label(s),
        origin(s.top_space.is_some())
    )
    .unwrap();
    let line = |out: &mut String, name: &str, v: &Verdict| {
        writeln!(out, "  {name:<24} {v}").unwrap();
    };
    line(
        &mut out,
        "topological category",
        &summary.topological_category,
    );
    line(&mut out, "CA1", &summary.continuity.ca1);
    line(&mut out, "CA2", &summary.continuity.ca2);
    line(&mut out, "star open", &summary.star_open);
    line(&mut out, "graph open", &summary.graph_open);
    match &summary.y {
        None => writeln!(out, "Y: not topologized, the action is not continuous").unwrap(),
        Some(y) => {
            if y.topology.is_discrete() {
                writeln!(out, "Y topology: discrete").unwrap();
            } else {
                writeln!(out, "Y minimal neighbourhoods:").unwrap();
                for (p, label) in y.topology.labels().iter().enumerate() {
                    let u = y.topology.set_names(y.topology.neighbourhood(p));
                    writeln!(out, "  {label}: {{{}}}", u.join(",")).unwrap();
                }
            }
            line(&mut out, "i continuous", &y.report.i_continuous);
            line(
                &mut out,
                "action on Y continuous",
                &y.report.action_continuous,
            );
            line(&mut out, "i open", &y.embedding_open);
            line(&mut out, "CA1 on Y (informational)", &y.report.ca1_on_y);
            if !(summary.star_open.passed() && summary.graph_open.passed()) {
                writeln!(
                    out,
                    "note: i open is only required when star open and graph open hold"
                )
                .unwrap();
            }
        }
    }
    writeln!(out, "result: {}", if passed { "pass" } else { "FAIL" }).unwrap();
    Outcome::verdict(passed, out)
}

fn cmd_oracle(cfg: &RunConfig, s: &Scenario, closure: ClosureFn) -> Outcome {
    let report = match oracle::run_oracle(
        &s.category,
        &s.action,
        cfg.max_size,
        cfg.seed,
        cfg.cases,
        closure,
    ) {
        Ok(r) => r,
        Err(GlobalizeError::NotPartialAction(r)) => {
            return Outcome::fail(
                String::new(),
                format!("{} is not a partial action:\n{r}", action_label(s)),
            )
        }
        Err(e) => return Outcome::fail(String::new(), format!("{e}\n")),
    };
    let passed = report.passed();
    if cfg.format == Format::Json {
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "verdict": dsl::verdict_json(&c.verdict),
                    "detail": c.detail,
                })
            })
            .collect();
        return Outcome::verdict(
            passed,
            json_out(&json!({ "checks": checks, "pass": passed })),
        );
    }
    let mut out = String::new();
    for c in &report.checks {
        let status = if c.verdict.passed() { "pass" } else { "FAIL" };
        let row = format!("{:<26} {status}  {}", c.name, c.detail);
        writeln!(out, "{}", row.trim_end()).unwrap();
        for w in c.verdict.witnesses.iter().take(5) {
            writeln!(out, "    {w}").unwrap();
        }
        if c.verdict.witnesses.len() > 5 {
            writeln!(out, "    ... {} more", c.verdict.witnesses.len() - 5).unwrap();
        }
    }
    writeln!(out, "result: {}", if passed { "pass" } else { "FAIL" }).unwrap();
    Outcome::verdict(passed, out)
}
