//! The `twhad` command line. Every subcommand reads instance files, writes
//! certificate files into `--out`, re-validates them, and prints a result.
//! Exit codes: 0 success, 1 property failure, 2 input error, 3 resource cap.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::rational::Ratio;
use serde_json::{json, Value};

use crate::circle::{circle_ordered_graph, crossing_graph, perturbed_separator_or_clique, perturbed_x_size, Route};
use crate::decomposition::{is_alpha_balanced, td_validate, Separation};
use crate::dichotomy::{grid_dichotomy, DichotomyInput};
use crate::error::{Error, Limits, Result};
use crate::format::*;
use crate::geometry::{outer_string_graph, random_string_diagram};
use crate::graph::{make_grid, make_path_power, make_strong_grid, subdivide_uniform, Graph};
use crate::harness::gen::{instance_rng, random_graph, random_symmetric_rank};
use crate::harness::{verify_bound, Family};
use crate::minors::{hadwiger_with_model, validate_model, MinorModel, ModelKind};
use crate::ordered::{xfree_separator_or_clique, SeparatorOrClique};
use crate::perturbation::{apply_perturbation, perturbation_model_from_matrix};
use crate::treewidth::treewidth_with_decomposition;
use crate::vertex_minor::{
    eliminate_crossings_vm, maxdeg3_vm_from_3subdivision, minor_to_vm_sequence, SubdivisionCertificate, VmCertificate,
};

#[derive(Debug, Parser)]
#[command(name = "twhad", version, about = "Treewidth, Hadwiger number and induced-minor certificates")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Largest instance size for generated families.
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    /// Print the result as one JSON object.
    #[arg(long, global = true)]
    pub json: bool,
    /// Directory for certificate and report files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Exact treewidth with a tree-decomposition.
    Tw { graph: PathBuf },
    /// Exact Hadwiger number with a clique-minor model.
    Had { graph: PathBuf },
    /// Induced grid minor or clique minor in a jump-augmented grid.
    Dichotomy {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
    /// Balanced separation or clique minor for an ordered or perturbed circle instance.
    Separator {
        instance: PathBuf,
        #[arg(long, value_enum)]
        mode: SeparatorMode,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// The set X; defaults to the first |X| vertices (xfree) or chords (perturbed).
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<usize>>,
        /// Perturbation matrix for the perturbed mode; zero if absent.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Vertex-minor sequences from minors, 3-subdivisions or drawings.
    Vm {
        #[arg(value_enum)]
        mode: VmMode,
        /// Host graph, or the marked drawing for `crossings`.
        input: PathBuf,
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Apply a symmetric GF(2) perturbation to a graph.
    Perturb {
        graph: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Check a bound on a random family with exact oracles.
    VerifyBound {
        #[arg(long, value_enum)]
        family: Family,
    },
    /// Check a certificate file independently.
    Validate {
        #[command(subcommand)]
        what: Validate,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    Grid { m: usize, n: usize },
    StrongGrid { m: usize, n: usize },
    PathPower { n: usize, t: usize },
    RandomGraph { n: usize, p: f64 },
    ChordDiagram { n: usize },
    OuterString { n: usize, segs: usize },
    Perturbation { n: usize, r: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeparatorMode {
    Xfree,
    Perturbed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VmMode {
    /// Minor model in G to a sequence on the 1-subdivision of G.
    Minor,
    /// Induced model of the 3-subdivision of a subcubic H.
    Maxdeg3,
    /// Crossing elimination in a marked drawing.
    Crossings,
}

#[derive(Debug, Subcommand)]
pub enum Validate {
    Td {
        graph: PathBuf,
        td: PathBuf,
    },
    Model {
        graph: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        induced: bool,
    },
    Separation {
        graph: PathBuf,
        sep: PathBuf,
        /// Check balance with respect to this set.
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<usize>>,
        /// Balance ratio `p/q`.
        #[arg(long, default_value = "3/4")]
        alpha: String,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Replay a step file; `map` holds `image ...` (isomorphism) or `branch ...` (subdivision).
    Vm {
        host: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        steps: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidArgument(_) | Error::Io(_) | Error::NotXFree(..) => 2,
        Error::ResourceLimit { .. } => 3,
        _ => 1,
    }
}

pub fn error_json(e: &Error) -> Value {
    let mut v = json!({ "error": e.kind(), "message": e.to_string() });
    if let Error::Parse { line, .. } = e {
        v["line"] = json!(line);
    }
    v
}

/// Outcome of a successful command: the printed result and whether the
/// checked property held.
pub struct Outcome {
    pub result: Value,
    pub ok: bool,
}

impl Outcome {
    fn ok(result: Value) -> Outcome {
        Outcome { result, ok: true }
    }
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
}

fn read_graph_file(p: &Path) -> Result<Graph> {
    parse_graph(&read(p)?)
}

struct Out<'a>(Option<&'a Path>);

impl Out<'_> {
    fn write(&self, name: &str, contents: &str) -> Result<Option<String>> {
        let Some(dir) = self.0 else { return Ok(None) };
        fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        let path = dir.join(name);
        fs::write(&path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Ok(Some(path.display().to_string()))
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    let out = Out(c.out.as_deref());
    let limits = Limits::default();
    match &cli.command {
        Command::Gen { kind } => gen(kind, c.seed, &out),
        Command::Tw { graph } => {
            let g = read_graph_file(graph)?;
            let (w, td) = treewidth_with_decomposition(&g, &limits)?;
            let text = write_td(&td, g.n());
            // re-read what was written
            let (back, _) = parse_td(&text)?;
            td_validate(&g, &back)?;
            let file = out.write("td.txt", &text)?;
            Ok(Outcome::ok(json!({ "treewidth": w, "bags": td.bags.len(), "file": file })))
        }
        Command::Had { graph } => {
            let g = read_graph_file(graph)?;
            let (h, m) = hadwiger_with_model(&g, &limits)?;
            let files = write_model_files(&out, &g, &m, ModelKind::Minor)?;
            Ok(Outcome::ok(json!({ "hadwiger": h, "files": files })))
        }
        Command::Dichotomy { graph, k, t } => {
            let input = DichotomyInput::new(read_graph_file(graph)?, *k, *t)?;
            let r = grid_dichotomy(&input)?;
            let kind = r.kind();
            let files = write_model_files(&out, &input.host, r.model(), kind)?;
            let branch = match kind {
                ModelKind::Induced => "induced-grid",
                ModelKind::Minor => "clique-minor",
            };
            Ok(Outcome::ok(json!({ "branch": branch, "pattern_n": r.model().pattern.n(), "files": files })))
        }
        Command::Separator { instance, mode, t, x, matrix } => separator(instance, *mode, *t, x.as_deref(), matrix.as_deref(), &out, &limits),
        Command::Vm { mode, input, pattern, model } => vm(*mode, input, pattern.as_deref(), model.as_deref(), &out),
        Command::Perturb { graph, matrix } => {
            let g = read_graph_file(graph)?;
            let p = parse_matrix(&read(matrix)?)?;
            let m = perturbation_model_from_matrix(&p)?;
            let g2 = apply_perturbation(&g, &m)?;
            let file = out.write("graph.txt", &write_graph(&g2))?;
            Ok(Outcome::ok(json!({ "n": g2.n(), "m": g2.m(), "k": m.k, "rank": p.rank(), "file": file })))
        }
        Command::VerifyBound { family } => {
            let trials = c.trials.unwrap_or(100);
            let max_n = c.max_n.unwrap_or(family.default_max_n());
            let rep = verify_bound(*family, trials, c.seed, max_n, &limits)?;
            let mut jsonl = Vec::new();
            rep.write_jsonl(&mut jsonl, true)?;
            let mut csv = Vec::new();
            rep.write_summary_csv(&mut csv)?;
            let files = [
                out.write("report.jsonl", &String::from_utf8_lossy(&jsonl))?,
                out.write("summary.csv", &String::from_utf8_lossy(&csv))?,
            ];
            let s = &rep.summary;
            Ok(Outcome {
                ok: rep.all_pass(),
                result: json!({
                    "family": family.name(), "trials": s.trials, "failures": s.failures,
                    "skipped": s.skipped, "max_ratio": s.max_ratio, "files": files,
                }),
            })
        }
        Command::Validate { what } => validate(what),
    }
}

fn write_model_files(out: &Out, g: &Graph, m: &MinorModel, kind: ModelKind) -> Result<Value> {
    let text = write_model(m);
    validate_model(g, &parse_model(&text, m.pattern.clone())?, kind)?;
    Ok(json!([out.write("pattern.txt", &write_graph(&m.pattern))?, out.write("model.txt", &text)?]))
}

fn gen(kind: &GenKind, seed: u64, out: &Out) -> Result<Outcome> {
    let mut rng = instance_rng(seed, 0);
    let (name, text) = match *kind {
        GenKind::Grid { m, n } => ("grid", write_graph(&make_grid(m, n)?.0)),
        GenKind::StrongGrid { m, n } => ("strong-grid", write_graph(&make_strong_grid(m, n)?.0)),
        GenKind::PathPower { n, t } => ("path-power", write_graph(&make_path_power(n, t)?)),
        GenKind::RandomGraph { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid(format!("p = {p} is not a probability")));
            }
            ("random-graph", write_graph(&random_graph(n, p, &mut rng)))
        }
        GenKind::ChordDiagram { n } => {
            ("chord-diagram", write_chord_diagram(&crate::circle::ChordDiagram::random(n, &mut rng)))
        }
        GenKind::OuterString { n, segs } => {
            if segs == 0 {
                return Err(Error::invalid("strings need at least one segment"));
            }
            ("outer-string", write_string_diagram(&random_string_diagram(n, segs, &mut rng)))
        }
        GenKind::Perturbation { n, r } => ("perturbation", write_matrix(&random_symmetric_rank(n, r, &mut rng)?)),
    };
    let file = out.write(&format!("{name}.txt"), &text)?;
    Ok(Outcome::ok(json!({ "kind": name, "file": file, "instance": if file.is_none() { Some(text) } else { None } })))
}

fn default_x(x: Option<&[usize]>, order: &[usize], want: usize) -> Result<Vec<usize>> {
    match x {
        Some(x) => Ok(x.to_vec()),
        None if order.len() >= want => Ok(order[..want].to_vec()),
        None => Err(Error::invalid(format!("instance has {} vertices, X needs {want}", order.len()))),
    }
}

fn separator(
    instance: &Path,
    mode: SeparatorMode,
    t: usize,
    x: Option<&[usize]>,
    matrix: Option<&Path>,
    out: &Out,
    limits: &Limits,
) -> Result<Outcome> {
    let text = read(instance)?;
    let (g, outcome, x, alpha, max_order, route) = match mode {
        SeparatorMode::Xfree => {
            // accept either an ordered graph or a string diagram
            let og = match first_keyword(&text) {
                Some("string") => outer_string_graph(&parse_string_diagram(&text)?),
                _ => parse_ordered(&text)?,
            };
            let x = default_x(x, og.order(), 12 * t)?;
            let r = xfree_separator_or_clique(&og, &x, t)?;
            (og.graph, r, x, Ratio::new(3, 4), 3 * t, None)
        }
        SeparatorMode::Perturbed => {
            let cd = parse_chord_diagram(&text)?;
            let p = match matrix {
                Some(p) => parse_matrix(&read(p)?)?,
                None => crate::perturbation::Gf2Matrix::zeros(cd.n()),
            };
            let m = perturbation_model_from_matrix(&p)?;
            let k = m.k;
            let order = circle_ordered_graph(&cd).order().to_vec();
            let x = default_x(x, &order, perturbed_x_size(k, t))?;
            let r = perturbed_separator_or_clique(&cd, &m, &x, t, limits)?;
            debug_assert_eq!(r.graph, apply_perturbation(&crossing_graph(&cd), &m)?);
            let route = match r.route {
                Route::Constructive => "constructive",
                Route::Fallback => "fallback",
            };
            (r.graph, r.outcome, x, Ratio::new(4 * k as u64 - 1, 4 * k as u64), k * (4 * k + 9) * t, Some(route))
        }
    };
    match outcome {
        SeparatorOrClique::Separation(s) => {
            let text = write_separation(&s);
            let back = parse_separation(&text)?;
            check_separation(&g, &back, Some(&x), alpha, Some(max_order))?;
            let file = out.write("separation.txt", &text)?;
            Ok(Outcome::ok(json!({
                "outcome": "separation", "order": s.order(), "separator": s.separator(), "route": route, "file": file,
            })))
        }
        SeparatorOrClique::Clique(m) => {
            let files = write_model_files(out, &g, &m, ModelKind::Minor)?;
            Ok(Outcome::ok(json!({ "outcome": "clique", "size": m.pattern.n(), "route": route, "files": files })))
        }
    }
}

fn check_separation(g: &Graph, s: &Separation, x: Option<&[usize]>, alpha: Ratio<u64>, max_order: Option<usize>) -> Result<()> {
    s.validate(g)?;
    if let Some(x) = x {
        if !is_alpha_balanced(g, s, x, alpha)? {
            return Err(Error::Separation(format!("not {alpha}-balanced for X")));
        }
    }
    if let Some(mo) = max_order {
        if s.order() >= mo {
            return Err(Error::Separation(format!("order {} is not below {mo}", s.order())));
        }
    }
    Ok(())
}

fn need<'a>(p: Option<&'a Path>, what: &str) -> Result<&'a Path> {
    p.ok_or_else(|| Error::invalid(format!("--{what} is required for this mode")))
}

fn vm(mode: VmMode, input: &Path, pattern: Option<&Path>, model: Option<&Path>, out: &Out) -> Result<Outcome> {
    let (host, target, steps, map) = match mode {
        VmMode::Minor => {
            let g = read_graph_file(input)?;
            let h = read_graph_file(need(pattern, "pattern")?)?;
            let m = parse_model(&read(need(model, "model")?)?, h.clone())?;
            let gstar = subdivide_uniform(&g, 2)?;
            let cert = minor_to_vm_sequence(&gstar, &h, &m)?;
            cert.verify(&gstar.graph, &h)?;
            (gstar.graph, h, cert.steps, format!("image {}\n", join(&cert.image)))
        }
        VmMode::Maxdeg3 => {
            let g = read_graph_file(input)?;
            let h = read_graph_file(need(pattern, "pattern")?)?;
            let s3 = subdivide_uniform(&h, 4)?.graph;
            let m = parse_model(&read(need(model, "model")?)?, s3)?;
            let cert = maxdeg3_vm_from_3subdivision(&g, &h, &m)?;
            cert.verify(&g, &h)?;
            (g, h, cert.steps, format!("branch {}\n", join(&cert.branch)))
        }
        VmMode::Crossings => {
            let d = parse_drawing(&read(input)?)?;
            let ce = eliminate_crossings_vm(&d)?;
            let h = d.underlying_graph()?;
            SubdivisionCertificate { steps: ce.steps.clone(), branch: ce.branch.clone() }.verify(&ce.d3, &h)?;
            (ce.d3, h, ce.steps, format!("branch {}\n", join(&ce.branch)))
        }
    };
    let files = [
        out.write("host.txt", &write_graph(&host))?,
        out.write("target.txt", &write_graph(&target))?,
        out.write("steps.txt", &write_vm_steps(&steps))?,
        out.write("map.txt", &map)?,
    ];
    let lcs = steps.iter().filter(|s| matches!(s, crate::vertex_minor::VmStep::LocalComplement(_))).count();
    Ok(Outcome::ok(json!({
        "host_n": host.n(), "target_n": target.n(), "steps": steps.len(), "local_complements": lcs, "files": files,
    })))
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_map(s: &str) -> Result<(String, Vec<usize>)> {
    let line = s
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Error::parse(1, "empty map file"))?;
    let mut toks = line.split_whitespace();
    let kw = toks.next().unwrap().to_string();
    let vs = toks
        .map(|t| t.parse().map_err(|_| Error::parse(1, format!("bad number {t:?}"))))
        .collect::<Result<_>>()?;
    Ok((kw, vs))
}

fn validate(what: &Validate) -> Result<Outcome> {
    match what {
        Validate::Td { graph, td } => {
            let g = read_graph_file(graph)?;
            let (td, n) = parse_td(&read(td)?)?;
            if n != g.n() {
                return Err(Error::invalid(format!("decomposition is for {n} vertices, graph has {}", g.n())));
            }
            let w = td_validate(&g, &td)?;
            Ok(Outcome::ok(json!({ "valid": true, "width": w })))
        }
        Validate::Model { graph, pattern, model, induced } => {
            let g = read_graph_file(graph)?;
            let m = parse_model(&read(model)?, read_graph_file(pattern)?)?;
            let kind = if *induced { ModelKind::Induced } else { ModelKind::Minor };
            validate_model(&g, &m, kind)?;
            Ok(Outcome::ok(json!({ "valid": true, "kind": format!("{kind:?}").to_lowercase() })))
        }
        Validate::Separation { graph, sep, x, alpha, max_order } => {
            let g = read_graph_file(graph)?;
            let s = parse_separation(&read(sep)?)?;
            let alpha: Ratio<u64> = alpha.parse().map_err(|_| Error::invalid(format!("bad ratio {alpha:?}")))?;
            check_separation(&g, &s, x.as_deref(), alpha, *max_order)?;
            Ok(Outcome::ok(json!({ "valid": true, "order": s.order() })))
        }
        Validate::Vm { host, target, steps, map } => {
            let host = read_graph_file(host)?;
            let target = read_graph_file(target)?;
            let steps = parse_vm_steps(&read(steps)?)?;
            match parse_map(&read(map)?)? {
                (kw, image) if kw == "image" => VmCertificate { steps, image }.verify(&host, &target)?,
                (kw, branch) if kw == "branch" => SubdivisionCertificate { steps, branch }.verify(&host, &target)?,
                (kw, _) => return Err(Error::parse(1, format!("map must start with image or branch, found {kw:?}"))),
            }
            Ok(Outcome::ok(json!({ "valid": true })))
        }
    }
}

/// Parse arguments, run, print, and return the process exit code.
// without --out there are no files to report
fn drop_unwritten(v: &mut Value) {
    if let Some(obj) = v.as_object_mut() {
        obj.retain(|k, v| match k.as_str() {
            "file" => !v.is_null(),
            "files" => v.as_array().is_some_and(|a| a.iter().any(|f| !f.is_null())),
            _ => true,
        });
    }
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(mut o) => {
            drop_unwritten(&mut o.result);
            if cli.common.json {
                println!("{}", o.result);
            } else {
                print_plain(&o.result);
            }
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            exit_code(&e)
        }
    }
}

fn print_plain(v: &Value) {
    if let Some(Value::String(inst)) = v.get("instance") {
        print!("{inst}");
        return;
    }
    if let Value::Object(map) = v {
        for (k, v) in map {
            match v {
                Value::Null => {}
                Value::String(s) => println!("{k}: {s}"),
                other => println!("{k}: {other}"),
            }
        }
    }
}
