//! Command implementations. Each command returns its machine output
//! (stdout), human summary (stderr), and exit code as data, so the binary
//! and the tests share one code path.
//!
//! Exit-code contract: 0 success, 1 domain violation, 2 parse error,
//! 3 no path, 4 parameter or precision error, 5 resource guard.

use std::fmt::Write as _;
use std::fs;
use std::path::Path as FsPath;
use std::time::Instant;

use reliable_path::approx::{approx_solve_basic, approx_solve_pruned, ApproxVariant};
use reliable_path::bounds::lower_bound_dp;
use reliable_path::error::Error;
use reliable_path::exact_dp::{dp_solve, quantize_exact};
use reliable_path::model::{Network, Path};
use reliable_path::oracle::brute_force_best;
use reliable_path::rounding::{decompose_flow, relaxed_objective, sample_path, validate_flow};
use reliable_path::reductions::{network_from_templates, templates_from_3sat};

use crate::document::{
    parse_cnf, parse_flow, parse_network, parse_templates, serialize_artifact, serialize_network,
    ArtifactDocument,
};
use crate::generate::{random_network, RandomNetParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NO_PATH: i32 = 3;
pub const EXIT_PARAM: i32 = 4;
pub const EXIT_RESOURCE: i32 = 5;

/// What a command produced: machine-readable records for stdout, the human
/// summary for stderr, and the process exit code.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok() -> Self {
        Outcome::default()
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
            code,
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::OffGrid { .. } | Error::BadParameter(_) | Error::WidthMismatch { .. } => EXIT_PARAM,
        Error::ResourceLimit(_) => EXIT_RESOURCE,
        Error::NoPath => EXIT_NO_PATH,
        _ => EXIT_DOMAIN,
    }
}

fn read(path: &FsPath) -> Result<String, Outcome> {
    fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))
}

fn load_network(path: &FsPath) -> Result<Network, Outcome> {
    let text = read(path)?;
    parse_network(&text).map_err(|e| Outcome::fail(EXIT_PARSE, e.to_string()))
}

fn load_valid_network(path: &FsPath) -> Result<Network, Outcome> {
    let net = load_network(path)?;
    let report = net.validate();
    if !report.is_valid() {
        let mut out = Outcome::ok();
        out.code = EXIT_DOMAIN;
        for v in &report.violations {
            let _ = writeln!(out.stdout, "violation {v}");
        }
        let _ = writeln!(out.stderr, "error: network is invalid");
        return Err(out);
    }
    Ok(net)
}

fn path_field(path: Option<&Path>) -> String {
    match path {
        Some(p) if !p.is_empty() => p.to_string(),
        _ => "none".to_string(),
    }
}

/// `validate`: parse and check a network document; exit 0 iff valid.
pub fn cmd_validate(network_path: &FsPath) -> Outcome {
    let net = match load_network(network_path) {
        Ok(net) => net,
        Err(out) => return out,
    };
    let report = net.validate();
    let mut out = Outcome::ok();
    let _ = writeln!(out.stdout, "report violations={}", report.violations.len());
    for v in &report.violations {
        let _ = writeln!(out.stdout, "violation {v}");
    }
    if report.is_valid() {
        let _ = writeln!(
            out.stderr,
            "{} is valid: {} vertices, {} edges, {} states",
            network_path.display(),
            net.vertices.len(),
            net.edges.len(),
            net.state_count
        );
        out.code = EXIT_OK;
    } else {
        let _ = writeln!(
            out.stderr,
            "{} is invalid ({} violations)",
            network_path.display(),
            report.violations.len()
        );
        out.code = EXIT_DOMAIN;
    }
    out
}

/// `solve`: run one solver on a network document.
pub fn cmd_solve(
    network_path: &FsPath,
    method: &str,
    epsilon: Option<f64>,
    unit: Option<f64>,
) -> Outcome {
    let net = match load_valid_network(network_path) {
        Ok(net) => net,
        Err(out) => return out,
    };
    let mut out = Outcome::ok();
    let record = match solve_record(&net, method, epsilon, unit) {
        Ok(record) => record,
        Err(out) => return out,
    };
    let _ = writeln!(out.stdout, "{}", record.line);
    let _ = writeln!(out.stderr, "{}", record.summary);
    out.code = record.code;
    out
}

struct SolveRecord {
    line: String,
    summary: String,
    code: i32,
    reliability: f64,
}

fn solve_record(
    net: &Network,
    method: &str,
    epsilon: Option<f64>,
    unit: Option<f64>,
) -> Result<SolveRecord, Outcome> {
    let require_epsilon = || {
        epsilon.ok_or_else(|| {
            Outcome::fail(EXIT_PARAM, format!("method {method} requires --epsilon"))
        })
    };
    let map_err = |e: Error| Outcome::fail(exit_code_for(&e), e.to_string());

    let (line, path, reliability) = match method {
        "brute" => {
            let result = brute_force_best(net).map_err(map_err)?;
            (
                format!(
                    "result method=brute path={} reliability={}",
                    path_field(result.path.as_ref()),
                    result.reliability
                ),
                result.path,
                result.reliability,
            )
        }
        "lower-bound" => {
            let result = lower_bound_dp(net).map_err(map_err)?;
            let reliability = match &result.path {
                Some(p) => net.path_reliability(p).map_err(map_err)?,
                None => 0.0,
            };
            (
                format!(
                    "result method=lower-bound path={} reliability={} g={} f={}",
                    path_field(result.path.as_ref()),
                    reliability,
                    result.g,
                    result.f
                ),
                result.path,
                reliability,
            )
        }
        "dp" => {
            let unit = unit.ok_or_else(|| {
                Outcome::fail(EXIT_PARAM, "method dp requires --unit".to_string())
            })?;
            let icnet = quantize_exact(net, unit).map_err(map_err)?;
            let result = dp_solve(&icnet).map_err(map_err)?;
            (
                format!(
                    "result method=dp path={} reliability={} unit={}",
                    path_field(result.path.as_ref()),
                    result.reliability,
                    unit
                ),
                result.path,
                result.reliability,
            )
        }
        "approx-basic" | "approx-pruned" => {
            let epsilon = require_epsilon()?;
            let result = if method == "approx-basic" {
                approx_solve_basic(net, epsilon).map_err(map_err)?
            } else {
                approx_solve_pruned(net, epsilon).map_err(map_err)?
            };
            let variant = match result.variant {
                ApproxVariant::Basic => "basic",
                ApproxVariant::Pruned => "pruned",
            };
            (
                format!(
                    "result method={method} path={} reliability={} epsilon={} \
                     coarsened={} variant={variant} prunings-evaluated={} prunings-skipped={}",
                    path_field(result.path.as_ref()),
                    result.true_reliability,
                    result.epsilon,
                    result.coarsened_value,
                    result.prunings_evaluated,
                    result.prunings_skipped
                ),
                result.path,
                result.true_reliability,
            )
        }
        other => {
            return Err(Outcome::fail(
                EXIT_PARAM,
                format!(
                    "unknown method `{other}`; expected one of brute, lower-bound, dp, \
                     approx-basic, approx-pruned"
                ),
            ))
        }
    };

    Ok(match path {
        Some(p) => SolveRecord {
            line,
            summary: format!("{method}: path {p} has reliability {reliability}"),
            code: EXIT_OK,
            reliability,
        },
        None => SolveRecord {
            line,
            summary: format!("{method}: no source-to-sink path"),
            code: EXIT_NO_PATH,
            reliability,
        },
    })
}

fn write_or_print(
    out: &mut Outcome,
    target: Option<&FsPath>,
    content: &str,
    what: &str,
) -> Result<(), Outcome> {
    match target {
        Some(path) => {
            fs::write(path, content).map_err(|e| {
                Outcome::fail(EXIT_PARAM, format!("cannot write {}: {e}", path.display()))
            })?;
            let _ = writeln!(out.stderr, "wrote {what} to {}", path.display());
        }
        None => out.stdout.push_str(content),
    }
    Ok(())
}

/// `generate random`: seeded layered instance.
pub fn cmd_generate_random(params: &RandomNetParams, output: Option<&FsPath>) -> Outcome {
    let net = match random_network(params) {
        Ok(net) => net,
        Err(message) => return Outcome::fail(EXIT_PARAM, message),
    };
    let mut out = Outcome::ok();
    let text = serialize_network(&net);
    if let Err(fail) = write_or_print(&mut out, output, &text, "network") {
        return fail;
    }
    out
}

/// `generate from-cnf`: 3-CNF -> templates -> network, plus the
/// bit-position/edge mapping side-file.
pub fn cmd_generate_from_cnf(
    cnf_path: &FsPath,
    output: Option<&FsPath>,
    artifact_path: Option<&FsPath>,
) -> Outcome {
    let text = match read(cnf_path) {
        Ok(text) => text,
        Err(out) => return out,
    };
    let cnf = match parse_cnf(&text) {
        Ok(cnf) => cnf,
        Err(e) => return Outcome::fail(EXIT_PARSE, e.to_string()),
    };
    let templates = templates_from_3sat(&cnf);
    emit_reduction(&templates, output, artifact_path)
}

/// `generate from-templates`: template list -> network, plus the mapping
/// side-file.
pub fn cmd_generate_from_templates(
    templates_path: &FsPath,
    output: Option<&FsPath>,
    artifact_path: Option<&FsPath>,
) -> Outcome {
    let text = match read(templates_path) {
        Ok(text) => text,
        Err(out) => return out,
    };
    let templates = match parse_templates(&text) {
        Ok(ts) => ts,
        Err(e) => return Outcome::fail(EXIT_PARSE, e.to_string()),
    };
    emit_reduction(&templates, output, artifact_path)
}

fn emit_reduction(
    templates: &reliable_path::reductions::TemplateSet,
    output: Option<&FsPath>,
    artifact_path: Option<&FsPath>,
) -> Outcome {
    let artifact = match network_from_templates(templates) {
        Ok(art) => art,
        Err(e) => return Outcome::fail(exit_code_for(&e), e.to_string()),
    };
    let mut out = Outcome::ok();
    let net_text = serialize_network(&artifact.network);
    if let Err(fail) = write_or_print(&mut out, output, &net_text, "network") {
        return fail;
    }

    let doc = ArtifactDocument::from_artifact(templates, &artifact);
    let art_text = serialize_artifact(&doc);
    let derived;
    let art_target: Option<&FsPath> = match (artifact_path, output) {
        (Some(path), _) => Some(path),
        (None, Some(out_path)) => {
            derived = out_path.with_extension("artifact.json");
            Some(&derived)
        }
        (None, None) => None,
    };
    match art_target {
        Some(path) => {
            if let Err(fail) = write_or_print(&mut out, Some(path), &art_text, "artifact mapping") {
                return fail;
            }
        }
        None => {
            let _ = writeln!(
                out.stderr,
                "note: no --output or --artifact given; bit-to-edge mapping not written"
            );
        }
    }
    out
}

/// `round`: validate a flow, decompose it, compare both objectives, and
/// sample paths.
pub fn cmd_round(network_path: &FsPath, flow_path: &FsPath, seed: u64, samples: usize) -> Outcome {
    let net = match load_valid_network(network_path) {
        Ok(net) => net,
        Err(out) => return out,
    };
    let flow_text = match read(flow_path) {
        Ok(text) => text,
        Err(out) => return out,
    };
    let (_, flow) = match parse_flow(&flow_text) {
        Ok(parsed) => parsed,
        Err(e) => return Outcome::fail(EXIT_PARSE, e.to_string()),
    };

    let mut out = Outcome::ok();
    let report = validate_flow(&net, &flow);
    let _ = writeln!(
        out.stdout,
        "flow-check status={} violations={}",
        if report.is_feasible() {
            "feasible"
        } else {
            "infeasible"
        },
        report.violations.len()
    );
    if !report.is_feasible() {
        for v in &report.violations {
            let _ = writeln!(out.stdout, "violation {v}");
        }
        let _ = writeln!(out.stderr, "error: flow is infeasible for this network");
        out.code = EXIT_DOMAIN;
        return out;
    }

    let map_err = |e: Error| Outcome::fail(exit_code_for(&e), e.to_string());
    let dist = match decompose_flow(&net, &flow).map_err(map_err) {
        Ok(dist) => dist,
        Err(fail) => return fail,
    };
    let _ = writeln!(out.stdout, "decomposition paths={}", dist.entries().len());
    let mut expected = 0.0;
    for (i, (path, weight)) in dist.entries().iter().enumerate() {
        let reliability = net.path_reliability(path).expect("decomposed paths are valid");
        expected += weight * reliability;
        let _ = writeln!(
            out.stdout,
            "path index={i} weight={weight} edges={path} reliability={reliability}"
        );
    }
    let relaxed = relaxed_objective(&net, &flow).expect("flow already validated");
    let jensen = expected >= relaxed - 1e-9;
    let _ = writeln!(
        out.stdout,
        "objective relaxed={relaxed} expected={expected} jensen={}",
        if jensen { "pass" } else { "fail" }
    );
    for i in 0..samples {
        let draw_seed = seed.wrapping_add(i as u64);
        let path = sample_path(&dist, draw_seed).expect("distribution is nonempty");
        let reliability = net.path_reliability(&path).expect("sampled path is valid");
        let _ = writeln!(
            out.stdout,
            "sample index={i} seed={draw_seed} edges={path} reliability={reliability}"
        );
    }
    let _ = writeln!(
        out.stderr,
        "decomposed into {} paths; expected sampled reliability {expected} vs relaxed {relaxed}",
        dist.entries().len()
    );
    out
}

/// Parameters of the `bench` command.
#[derive(Debug, Clone)]
pub struct BenchParams {
    pub sizes: Vec<usize>,
    pub methods: Vec<String>,
    pub repetitions: usize,
    pub seed: u64,
    pub states: usize,
    pub layer_width: usize,
    pub density: f64,
    pub rel_min: f64,
    pub rel_max: f64,
    pub epsilon: f64,
    pub unit: Option<f64>,
}

/// `bench`: a deterministic instance stream per seed; one row per
/// (instance, method) with wall time, reliability, and the ratio to the
/// brute-force optimum when that is feasible. Guard trips are recorded in
/// place of numbers.
pub fn cmd_bench(params: &BenchParams) -> Outcome {
    let mut out = Outcome::ok();
    if params.sizes.is_empty() || params.methods.is_empty() || params.repetitions == 0 {
        return Outcome::fail(EXIT_PARAM, "need at least one size, method, and repetition");
    }
    let _ = writeln!(out.stdout, "n\trep\tmethod\ttime_ms\treliability\tratio");
    for &n in &params.sizes {
        for rep in 0..params.repetitions {
            let instance_seed = params
                .seed
                .wrapping_add((n as u64) << 20)
                .wrapping_add(rep as u64);
            let net = match random_network(&RandomNetParams {
                vertices: n,
                layer_width: params.layer_width,
                density: params.density,
                states: params.states,
                rel_min: params.rel_min,
                rel_max: params.rel_max,
                seed: instance_seed,
            }) {
                Ok(net) => net,
                Err(message) => return Outcome::fail(EXIT_PARAM, message),
            };
            let brute = brute_force_best(&net).ok().map(|r| r.reliability);
            for method in &params.methods {
                let started = Instant::now();
                let solved = solve_record(
                    &net,
                    method,
                    Some(params.epsilon),
                    params.unit,
                );
                let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
                let (reliability, ratio) = match &solved {
                    Ok(record) if record.code == EXIT_OK => {
                        let ratio = match brute {
                            Some(opt) if opt > 0.0 => format!("{}", record.reliability / opt),
                            _ => "-".to_string(),
                        };
                        (format!("{}", record.reliability), ratio)
                    }
                    Ok(_) => ("none".to_string(), "-".to_string()),
                    Err(fail) if fail.code == EXIT_RESOURCE => {
                        ("guard".to_string(), "guard".to_string())
                    }
                    Err(fail) => return fail.clone(),
                };
                let _ = writeln!(
                    out.stdout,
                    "{n}\t{rep}\t{method}\t{elapsed_ms:.3}\t{reliability}\t{ratio}"
                );
            }
        }
    }
    let rows = params.sizes.len() * params.repetitions * params.methods.len();
    let _ = writeln!(out.stderr, "benchmarked {rows} cells");
    out
}

/// `export-dot`: a graph description with edges labeled by their
/// reliability vectors and the source/sink visually marked.
pub fn cmd_export_dot(network_path: &FsPath) -> Outcome {
    let net = match load_network(network_path) {
        Ok(net) => net,
        Err(out) => return out,
    };
    let mut out = Outcome::ok();
    let _ = writeln!(out.stdout, "digraph network {{");
    let _ = writeln!(out.stdout, "  rankdir=LR;");
    for v in &net.vertices {
        let attrs = if *v == net.source {
            format!(" [shape=doublecircle,label=\"{v} (source)\"]")
        } else if *v == net.sink {
            format!(" [shape=doublecircle,label=\"{v} (sink)\"]")
        } else {
            String::new()
        };
        let _ = writeln!(out.stdout, "  \"{v}\"{attrs};");
    }
    for e in &net.edges {
        let rel = e
            .reliability
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(
            out.stdout,
            "  \"{}\" -> \"{}\" [label=\"{} [{rel}]\"];",
            e.from, e.to, e.id
        );
    }
    let _ = writeln!(out.stdout, "}}");
    let _ = writeln!(
        out.stderr,
        "exported {} vertices and {} edges",
        net.vertices.len(),
        net.edges.len()
    );
    out
}
