//! Subcommand implementations. Each takes the input file text and a run
//! configuration and returns the text to print, so runs can be compared
//! byte for byte.

use std::fmt::{self, Write as _};

use serde_json::{json, Value};

use tensec_core::analysis::{self, CheckOptions, CheckReport, Draw, VerifyReport};
use tensec_core::conditions::{
    framed_cycle_condition, framed_cycle_condition_holds, generate_system, sexpr, Names, ProjectionOrder,
};
use tensec_core::cycles::{choose_aux_line, cycle_equilibrium_basis, is_trivial, monodromy};
use tensec_core::fixtures::{self, Family};
use tensec_core::framework::Stress;
use tensec_core::graph::Graph;
use tensec_core::numeric::{format_scalar, parse_scalar};
use tensec_core::projective::{AffineChart, ProjLine};
use tensec_core::quantization::{default_trees, CycleMode};
use tensec_core::Error;

use crate::format::{self, coords_json, scalar_json};
use crate::render::render_svg;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub mode: CycleMode,
    pub order: ProjectionOrder,
    pub format: OutputFormat,
    pub chart: AffineChart,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            samples: 200,
            mode: CycleMode::All,
            order: ProjectionOrder::Leading,
            format: OutputFormat::Text,
            chart: AffineChart::standard(),
        }
    }
}

/// A failed run with its process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GeneralPosition { .. } | Error::PointAtInfinity { .. } => EXIT_PRECONDITION,
            Error::InvariantViolation(_) => 1,
            _ => EXIT_INPUT,
        };
        CliError { code, message: e.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub type CliResult = Result<String, CliError>;

/// Parses `"a,b,c"` as the coefficients of the chart's line at infinity.
pub fn parse_chart(text: &str) -> Result<AffineChart, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::input(format!("chart needs three coefficients, got {text:?}")));
    }
    let c = [parse_scalar(parts[0])?, parse_scalar(parts[1])?, parse_scalar(parts[2])?];
    Ok(AffineChart::new(ProjLine::new(&c)?))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn edge_name(g: &Graph, k: usize) -> String {
    let (a, b) = g.edges()[k];
    format!("{}-{}", g.id(a), g.id(b))
}

fn stress_text(g: &Graph, w: &Stress) -> String {
    w.weights
        .iter()
        .enumerate()
        .map(|(k, x)| format!("{}={}", edge_name(g, k), format_scalar(x)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn stress_json(g: &Graph, w: &Stress) -> Value {
    Value::Array(
        w.weights
            .iter()
            .enumerate()
            .map(|(k, x)| {
                let (a, b) = g.edges()[k];
                json!({"edge": [g.id(a), g.id(b)], "weight": scalar_json(x)})
            })
            .collect(),
    )
}

fn opt_text(v: Option<bool>, yes: &str, no: &str) -> String {
    match v {
        Some(true) => yes.into(),
        Some(false) => no.into(),
        None => "n/a".into(),
    }
}

/// Decision run on a framework (optionally with trees and free lines).
pub fn cmd_check(input: &str, cfg: &RunConfig) -> CliResult {
    let file = format::parse_file(input)?;
    let fw = file.framework()?;
    let g = fw.graph();
    let opts = CheckOptions {
        chart: cfg.chart.clone(),
        mode: cfg.mode,
        order: cfg.order,
        trees: file.trees(g)?,
        witness: file.witness(g)?,
        seed: cfg.seed,
    };
    let r = analysis::check(&fw, &opts)?;
    Ok(match cfg.format {
        OutputFormat::Text => check_text(g, &r),
        OutputFormat::Json => pretty(&check_json(g, &r)),
    })
}

fn check_text(g: &Graph, r: &CheckReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "framework: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    let _ = writeln!(s, "general position: yes");
    let _ = writeln!(s, "self-stress dimension: {}", r.stress_basis.len());
    for (i, w) in r.stress_basis.iter().enumerate() {
        let _ = writeln!(s, "  w{}: {}", i + 1, stress_text(g, w));
    }
    match &r.non_parallelizable {
        Some(w) => {
            let _ = writeln!(s, "non-parallelizable stress: {}", stress_text(g, w));
        }
        None => {
            let _ = writeln!(s, "non-parallelizable stress: none");
        }
    }
    let _ = writeln!(s, "quantization: {}", opt_text(r.consistent, "consistent", "inconsistent"));
    let _ = writeln!(s, "round trip: {}", opt_text(r.round_trip, "reproduces the stress", "failed"));
    let _ = writeln!(s, "free lines: {}", r.system.xi.dimension());
    let _ = writeln!(s, "conditions: {} ({} failing)", r.system.conditions.len(), r.failed_conditions.len());
    for &i in &r.failed_conditions {
        let _ = writeln!(s, "  fails on cycle {}", g.cycle_ids(&r.system.conditions[i].cycle).join(" "));
    }
    let _ = writeln!(s, "condition verdict: {}", r.condition_verdict);
    let _ = writeln!(s, "sources agree: {}", yes_no(r.sources_agree()));
    let _ = writeln!(s, "tensegrity: {}", if r.tensegrity() { "YES" } else { "NO" });
    s
}

fn check_json(g: &Graph, r: &CheckReport) -> Value {
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "general_position": true,
        "stress_dimension": r.stress_basis.len(),
        "stress_basis": r.stress_basis.iter().map(|w| stress_json(g, w)).collect::<Vec<_>>(),
        "non_parallelizable_stress": r.non_parallelizable.as_ref().map(|w| stress_json(g, w)),
        "quantization_consistent": r.consistent,
        "round_trip": r.round_trip,
        "xi_dimension": r.system.xi.dimension(),
        "conditions": r.system.conditions.len(),
        "failed_cycles": r.failed_conditions.iter().map(|&i| g.cycle_ids(&r.system.conditions[i].cycle)).collect::<Vec<_>>(),
        "condition_verdict": r.condition_verdict.to_string(),
        "sources_agree": r.sources_agree(),
        "tensegrity": r.tensegrity(),
    })
}

/// Compiles a graph (or the graph of a framework) into its condition system.
pub fn cmd_conditions(input: &str, cfg: &RunConfig) -> CliResult {
    let file = format::parse_file(input)?;
    let g = file.graph()?;
    g.check_condition_ready()?;
    let trees = match file.trees(&g)? {
        Some(t) => t,
        None => default_trees(&g)?,
    };
    let sys = generate_system(&g, &trees, cfg.mode, cfg.order)?;
    Ok(match cfg.format {
        OutputFormat::Json => pretty(&format::system_json(&sys, &g)),
        OutputFormat::Text => {
            let mut s = String::new();
            let slots: Vec<String> = sys.xi.slots.iter().map(|x| format!("{}:{}", g.id(x.vertex), x.slot)).collect();
            let _ = writeln!(s, "; free lines: {} [{}]", slots.len(), slots.join(" "));
            let _ = writeln!(s, "; conditions: {}", sys.conditions.len());
            for c in &sys.conditions {
                let _ = writeln!(s, "; cycle {}", g.cycle_ids(&c.cycle).join(" "));
                let _ = writeln!(s, "{}", format::condition_sexpr(&sys, &g, c.root));
            }
            s
        }
    })
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Desargues => "desargues",
        Family::Pascal => "pascal",
        Family::Wheel5 => "wheel5",
    }
}

/// Compares condition verdicts with the oracle on seeded placements.
pub fn cmd_verify(input: &str, cfg: &RunConfig) -> CliResult {
    let file = format::parse_file(input)?;
    let g = file.graph()?;
    g.check_condition_ready()?;
    let rep = analysis::verify(&g, cfg.samples, cfg.mode, cfg.seed)?;
    let family = fixtures::recognize(&g).map(|(f, _)| family_name(f));
    Ok(match cfg.format {
        OutputFormat::Text => verify_text(&g, family, &rep),
        OutputFormat::Json => pretty(&verify_json(&g, family, &rep)),
    })
}

fn draw_name(d: Draw) -> &'static str {
    match d {
        Draw::Generic => "generic",
        Draw::OnVariety => "on-variety",
    }
}

fn verify_text(g: &Graph, family: Option<&str>, rep: &VerifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "graph: {} vertices, {} edges ({})",
        g.vertex_count(),
        g.edge_count(),
        family.unwrap_or("no bundled family")
    );
    let _ = writeln!(s, "samples: {} ({} on-variety)", rep.samples, rep.on_variety);
    let _ = writeln!(s, "oracle: {} positive, {} negative", rep.oracle_positive, rep.oracle_negative);
    let _ = writeln!(s, "compared: {}", rep.compared);
    let _ = writeln!(s, "mismatches: {}", rep.mismatches.len());
    for m in &rep.mismatches {
        let _ = writeln!(
            s,
            "  sample {} seed {} {}: oracle {} conditions {}",
            m.index,
            m.seed,
            draw_name(m.draw),
            yes_no(m.oracle),
            yes_no(m.conditions)
        );
    }
    let _ = writeln!(s, "pairing identity failures: {}", rep.pairing_failures.len());
    for m in &rep.pairing_failures {
        let _ = writeln!(s, "  sample {} seed {}", m.index, m.seed);
    }
    s
}

fn verify_json(g: &Graph, family: Option<&str>, rep: &VerifyReport) -> Value {
    let entry = |m: &analysis::Mismatch| {
        json!({"sample": m.index, "seed": m.seed, "draw": draw_name(m.draw), "oracle": m.oracle, "conditions": m.conditions})
    };
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "family": family,
        "samples": rep.samples,
        "on_variety": rep.on_variety,
        "oracle_positive": rep.oracle_positive,
        "oracle_negative": rep.oracle_negative,
        "compared": rep.compared,
        "mismatches": rep.mismatches.iter().map(entry).collect::<Vec<_>>(),
        "pairing_failures": rep.pairing_failures.iter().map(entry).collect::<Vec<_>>(),
    })
}

/// SVG of a framework; free lines of a quantization file are drawn dashed.
pub fn cmd_render(input: &str, cfg: &RunConfig) -> CliResult {
    let file = format::parse_file(input)?;
    let fw = file.framework()?;
    let framings: Vec<(usize, ProjLine)> = file
        .witness(fw.graph())?
        .unwrap_or_default()
        .into_iter()
        .map(|(slot, l)| (slot.vertex, l))
        .collect();
    Ok(render_svg(&fw, &cfg.chart, &framings)?)
}

/// Monodromy of a framed cycle, its equilibrium loads and its cycle condition.
pub fn cmd_monodromy(input: &str, cfg: &RunConfig) -> CliResult {
    let c = format::parse_framed_cycle(input)?;
    let k = c.len();
    if !c.is_in_general_position() {
        return Err(CliError { code: EXIT_PRECONDITION, message: "framed cycle is not in general position".into() });
    }
    let aux = choose_aux_line(&c, cfg.seed);
    let m = monodromy(&c, 0, &aux)?;
    let trivial = is_trivial(&m)?;
    let loads = cycle_equilibrium_basis(&c).len();
    let (ar, root) = framed_cycle_condition(k, cfg.order)?;
    let point = |i: usize| format!("p{}", i + 1);
    let var = |i: usize, _: usize| format!("l{}", i + 1);
    let text = sexpr(&ar, root, &Names { point: &point, var: Some(&var) });
    let holds = framed_cycle_condition_holds(&c, cfg.order, cfg.seed)?;
    let matrix: Vec<Vec<String>> = m.matrix.iter().map(|row| row.iter().map(format_scalar).collect()).collect();
    Ok(match cfg.format {
        OutputFormat::Json => pretty(&json!({
            "length": k,
            "aux_line": coords_json(aux.ints()),
            "monodromy": matrix,
            "trivial": trivial,
            "equilibrium_loads": loads,
            "condition": text,
            "condition_holds": holds,
        })),
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "cycle length: {k}");
            let _ = writeln!(s, "aux line: {aux}");
            let _ = writeln!(s, "monodromy: [[{}], [{}]]", matrix[0].join(", "), matrix[1].join(", "));
            let _ = writeln!(s, "trivial: {}", yes_no(trivial));
            let _ = writeln!(s, "equilibrium loads: {loads}");
            let _ = writeln!(s, "condition: {text}");
            let _ = writeln!(s, "condition holds: {}", yes_no(holds));
            s
        }
    })
}
