//! `addlab`: batch driver for the additive labeling workbench.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use addlab::constructions::{
    build_amplifier_gadget, build_clause_gadget, build_forcing_gadget, build_index_gadget, build_inapprox_reduction,
    build_listcoloring_reduction, build_sat_reduction, build_variable_gadget, build_vertex_gadget, certify_gadget,
    clique_eta_one, counterexample_graph, to_dot, GadgetInstance,
};
use addlab::oracles::sweeps::{
    bounds_sweep, gadget_suite, inapprox_sweep, listcolor_sweep, odd_cycle_sweep, oracle_sweep, sat_sweep,
};
use addlab::oracles::{check_equivalence_listcolor, check_equivalence_sat, check_threshold_inapprox, EquivalenceVerdict};
use addlab::{
    bounds_report, decide_list_additive, exists_binary, is_additive, min_ptds, refute_lists, solve_eta, solve_eta1,
    solve_sigma, verify_additive_in, verify_from_lists, verify_ptds, Cnf3Formula, Graph, LabelMode, Labeling,
    ListAssignment, Literal, Refutation, SearchBudget, SolveReport, Status,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const FAILURE: u8 = 2;

#[derive(Parser)]
#[command(name = "addlab", version, about = "Additive labeling solvers, constructions and checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Emit one JSON object per line.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for randomized sweeps (required by them).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one parameter on a DIMACS graph.
    Solve {
        problem: Problem,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lists: Option<PathBuf>,
    },
    /// Check a labeling file against a graph.
    Verify {
        what: VerifyKind,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
        #[arg(long)]
        lists: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Any)]
        mode: Mode,
    },
    /// Build a named family, gadget or reduction.
    #[command(visible_alias = "reduce")]
    Construct(ConstructArgs),
    /// Decide whether a list assignment admits an additive labeling.
    RefuteLists {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lists: PathBuf,
    },
    /// Bound report for one graph, or a seeded sweep of random graphs.
    Bounds {
        #[arg(long, required_unless_present = "sweep")]
        graph: Option<PathBuf>,
        /// Number of random graphs to sweep.
        #[arg(long)]
        sweep: Option<usize>,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Run an equivalence or certification suite.
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Eta,
    Eta1,
    Binary,
    Sigma,
    Ptds,
    Listdecide,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Labeling,
    Lists,
    Ptds,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Any,
    Positive,
    Binary,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Counterexample,
    CliqueExample,
    Gadget,
    Sat,
    Inapprox,
    Listcolor,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetName {
    Clause,
    Variable,
    Amplifier,
    Forcing,
    Index,
    Vertex,
}

#[derive(Args)]
struct ConstructArgs {
    what: ConstructKind,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    lists: Option<PathBuf>,
    #[arg(long)]
    cnf: Option<PathBuf>,
    #[arg(long, value_enum)]
    kind: Option<GadgetName>,
    /// List of the vertex gadget, comma separated.
    #[arg(long, value_delimiter = ',')]
    list: Vec<u64>,
    /// Scale of the vertex gadget.
    #[arg(long)]
    s: Option<u64>,
    /// Clause literals as signed 1-based variables, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    literals: Vec<i64>,
    /// Verify the construction's certificates (families and gadgets).
    #[arg(long)]
    verify: bool,
    /// Run the equivalence harness on the source instance (reductions).
    #[arg(long)]
    check: bool,
    /// Write the graph in DIMACS format here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Provenance sidecar for reductions.
    #[arg(long)]
    provenance: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Sat,
    Listcolor,
    Inapprox,
    Gadgets,
    Cycles,
    Counterexample,
    Bounds,
    Oracles,
    All,
}

#[derive(Args)]
struct CheckArgs {
    what: CheckKind,
    #[arg(long)]
    cnf: Option<PathBuf>,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    lists: Option<PathBuf>,
    #[arg(long)]
    d: Option<usize>,
    /// Largest k for the counterexample check.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Random instances added to the sat (default 50) or listcolor (default 25) families.
    #[arg(long)]
    random: Option<usize>,
    /// Random graphs for the bounds and oracles sweeps.
    #[arg(long, default_value_t = 200)]
    count: usize,
    /// Largest graph order for sweeps (default 7 for bounds, 6 for oracles).
    #[arg(long)]
    max_n: Option<usize>,
}

struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

type Res<T> = Result<T, Fail>;

/// Records plus a summary line; `code` is the exit status this part implies.
struct Section {
    records: Vec<(Value, bool)>,
    summary: Value,
    code: u8,
}

struct Ctx {
    json: bool,
    jobs: usize,
    seed: Option<u64>,
    budget: SearchBudget,
}

impl Ctx {
    fn emit(&self, v: &Value) {
        if self.json {
            println!("{v}");
        } else {
            println!("{}", text_line(v));
        }
    }

    fn emit_section(&self, s: &Section) {
        for (r, ok) in &s.records {
            if self.json || !ok {
                self.emit(r);
            }
        }
        self.emit(&s.summary);
    }

    fn seed(&self) -> Res<u64> {
        self.seed.ok_or_else(|| Fail("--seed is required for randomized sweeps".into()))
    }
}

fn text_line(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| match x {
                Value::String(s) if !s.contains('\n') => format!("{k}={s}"),
                Value::String(s) => format!("{k}=\n{s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> addlab::Result<T>) -> Res<T> {
    parse(&read(path)?).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Res<Graph> {
    load(path, Graph::from_dimacs)
}

fn load_lists(path: &Path, g: &Graph) -> Res<ListAssignment> {
    let lists = load(path, ListAssignment::from_text)?;
    lists.validate_total(g).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
    Ok(lists)
}

fn need<'a, T>(x: &'a Option<T>, flag: &str) -> Res<&'a T> {
    x.as_ref().ok_or_else(|| Fail(format!("{flag} is required here")))
}

fn write(path: &Path, contents: &str) -> Res<()> {
    fs::write(path, contents).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn ms(d: Duration) -> u64 {
    d.as_millis() as u64
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Found => OK,
        Status::Infeasible => NEGATIVE,
        Status::BudgetExceeded => FAILURE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut budget = SearchBudget::default();
    if let Some(n) = cli.global.budget_nodes {
        budget.max_nodes = n;
    }
    if let Some(t) = cli.global.budget_ms {
        budget.max_time = Duration::from_millis(t);
    }
    let ctx = Ctx { json: cli.global.json, jobs: cli.global.jobs.max(1), seed: cli.global.seed, budget };
    if let Err(e) = ctx.budget.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(FAILURE);
    }
    match run(&ctx, cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(FAILURE)
        }
    }
}

fn run(ctx: &Ctx, cmd: Cmd) -> Res<u8> {
    match cmd {
        Cmd::Solve { problem, graph, lists } => solve(ctx, problem, &graph, lists.as_deref()),
        Cmd::Verify { what, graph, labeling, lists, mode } => verify(ctx, what, &graph, &labeling, lists.as_deref(), mode),
        Cmd::Construct(a) => construct(ctx, &a),
        Cmd::RefuteLists { graph, lists } => {
            let g = load_graph(&graph)?;
            let l = load_lists(&lists, &g)?;
            let r = refute_lists(&g, &l, &ctx.budget)?;
            ctx.emit(&r.to_json());
            Ok(match r {
                Refutation::Refuted { .. } => NEGATIVE,
                Refutation::Defeated(_) => OK,
                Refutation::Inconclusive { .. } => FAILURE,
            })
        }
        Cmd::Bounds { graph, sweep, max_n } => match (graph, sweep) {
            (_, Some(count)) => {
                let s = bounds_section(ctx, count, max_n)?;
                ctx.emit_section(&s);
                Ok(s.code)
            }
            (Some(path), None) => {
                let g = load_graph(&path)?;
                let r = bounds_report(&g, &ctx.budget)?;
                let mut v = r.to_json();
                v["violations"] = json!(r.violations());
                ctx.emit(&v);
                Ok(if r.violations().is_empty() { OK } else { NEGATIVE })
            }
            (None, None) => Err(Fail("--graph or --sweep is required".into())),
        },
        Cmd::Check(a) => check(ctx, &a),
    }
}

fn solve(ctx: &Ctx, problem: Problem, graph: &Path, lists: Option<&Path>) -> Res<u8> {
    let g = load_graph(graph)?;
    let b = &ctx.budget;
    let r: SolveReport = match problem {
        Problem::Eta => solve_eta(&g, b)?,
        Problem::Eta1 => solve_eta1(&g, b)?,
        Problem::Binary => exists_binary(&g, b)?,
        Problem::Sigma => solve_sigma(&g, b)?,
        Problem::Ptds => min_ptds(&g, b)?,
        Problem::Listdecide => {
            let l = load_lists(lists.ok_or_else(|| Fail("--lists is required for listdecide".into()))?, &g)?;
            decide_list_additive(&g, &l, b)?
        }
    };
    ctx.emit(&r.to_json(g.n()));
    Ok(status_code(r.status))
}

fn verify(ctx: &Ctx, what: VerifyKind, graph: &Path, labeling: &Path, lists: Option<&Path>, mode: Mode) -> Res<u8> {
    let g = load_graph(graph)?;
    let l = load(labeling, Labeling::from_text)?;
    let out = match what {
        VerifyKind::Labeling | VerifyKind::Lists => {
            let mode = match mode {
                Mode::Any => LabelMode::Any,
                Mode::Positive => LabelMode::Positive,
                Mode::Binary => LabelMode::Binary,
            };
            let violations = verify_additive_in(&g, &l, mode)?;
            let mut v = json!({
                "additive": violations.is_empty(),
                "violations": violations.iter().map(|x| json!({
                    "edge": [x.edge.0 + 1, x.edge.1 + 1], "sum": x.sum_u,
                })).collect::<Vec<_>>(),
            });
            let mut ok = violations.is_empty();
            if matches!(what, VerifyKind::Lists) {
                let ls = load_lists(lists.ok_or_else(|| Fail("--lists is required for verify lists".into()))?, &g)?;
                let within = verify_from_lists(&l, &ls);
                v["from_lists"] = json!(within);
                ok &= within;
            }
            v["valid"] = json!(ok);
            v
        }
        VerifyKind::Ptds => {
            l.check_mode(LabelMode::Binary)?;
            let dense = l.dense(&g)?;
            let set: Vec<usize> = (0..g.n()).filter(|&v| dense[v] == 1).collect();
            json!({ "size": set.len(), "valid": verify_ptds(&g, &set) })
        }
    };
    ctx.emit(&out);
    Ok(if out["valid"] == json!(true) { OK } else { NEGATIVE })
}

/// Writes or prints the graph and its optional sidecars.
fn output_graph(ctx: &Ctx, a: &ConstructArgs, g: &Graph, provenance: Option<Value>, mut summary: Value) -> Res<()> {
    if let Some(p) = &a.dot {
        write(p, &to_dot(g))?;
    }
    match (&a.provenance, provenance) {
        (Some(p), Some(v)) => write(p, &format!("{v}\n"))?,
        (Some(_), None) => return Err(Fail("--provenance applies to reductions only".into())),
        _ => {}
    }
    match &a.out {
        Some(p) => {
            write(p, &g.to_dimacs())?;
            summary["graph_file"] = json!(p.display().to_string());
            ctx.emit(&summary);
        }
        None if ctx.json => ctx.emit(&summary),
        None => {
            print!("{}", g.to_dimacs());
            eprintln!("{}", text_line(&summary));
        }
    }
    Ok(())
}

fn graph_summary(what: &str, g: &Graph) -> Value {
    json!({ "construction": what, "n": g.n(), "edges": g.edge_count() })
}

fn parse_literals(raw: &[i64]) -> Res<Vec<Literal>> {
    if raw.is_empty() || raw.len() > 3 {
        return Err(Fail("--literals takes one to three signed variables".into()));
    }
    raw.iter()
        .map(|&x| match x {
            0 => Err(Fail("literal 0 is not a variable".into())),
            x if x > 0 => Ok(Literal::pos(x as usize - 1)),
            x => Ok(Literal::neg((-x) as usize - 1)),
        })
        .collect()
}

fn build_gadget(a: &ConstructArgs) -> Res<GadgetInstance> {
    let kind = a.kind.ok_or_else(|| Fail("--kind is required for gadgets".into()))?;
    Ok(match kind {
        GadgetName::Clause => build_clause_gadget(&parse_literals(&a.literals)?)?,
        GadgetName::Variable => build_variable_gadget()?,
        GadgetName::Amplifier => build_amplifier_gadget(*need(&a.d, "--d")?)?,
        GadgetName::Forcing => build_forcing_gadget()?,
        GadgetName::Index => build_index_gadget(*need(&a.k, "--k")?)?,
        GadgetName::Vertex => {
            if a.list.is_empty() {
                return Err(Fail("--list is required for the vertex gadget".into()));
            }
            build_vertex_gadget(&a.list, *need(&a.s, "--s")?)?
        }
    })
}

fn construct(ctx: &Ctx, a: &ConstructArgs) -> Res<u8> {
    let mut code = OK;
    match a.what {
        ConstructKind::Counterexample => {
            let k = *need(&a.k, "--k")?;
            if k == 0 {
                return Err(Fail("--k must be positive".into()));
            }
            let c = counterexample_graph(k);
            let mut summary = graph_summary("counterexample", &c.graph);
            summary["k"] = json!(k);
            if a.verify {
                let (v, ok) = verify_counterexample(k, &ctx.budget)?;
                summary["verification"] = v;
                code = if ok { OK } else { NEGATIVE };
            }
            output_graph(ctx, a, &c.graph, None, summary)?;
        }
        ConstructKind::CliqueExample => {
            let n = *need(&a.k, "--k")?;
            if n == 0 {
                return Err(Fail("--k must be positive".into()));
            }
            let g = clique_eta_one(n);
            let mut summary = graph_summary("clique-example", &g);
            if a.verify {
                let r = solve_eta(&g, &ctx.budget)?;
                let ok = r.value == Some(1) && addlab::max_clique(&g).0 == n;
                summary["verification"] = json!({ "omega": n, "eta": r.to_json(g.n()), "passed": ok });
                code = if ok { OK } else { NEGATIVE };
            }
            output_graph(ctx, a, &g, None, summary)?;
        }
        ConstructKind::Gadget => {
            let inst = build_gadget(a)?;
            let mut summary = graph_summary("gadget", &inst.graph);
            summary["gadget"] = json!(inst.kind.to_string());
            summary["ports"] = json!(inst.ports.iter().map(|(p, v)| (p.clone(), v + 1)).collect::<Vec<_>>());
            summary["certified_at_build"] = json!(inst.certified);
            if a.verify {
                let r = certify_gadget(&inst)?;
                code = if r.passed() { OK } else { NEGATIVE };
                summary["certification"] = r.to_json();
            }
            output_graph(ctx, a, &inst.graph, None, summary)?;
        }
        ConstructKind::Sat => {
            let phi = load(need(&a.cnf, "--cnf")?, Cnf3Formula::from_dimacs)?;
            let red = build_sat_reduction(&phi)?;
            let mut summary = graph_summary("sat", &red.graph);
            summary["triangle_free"] = json!(addlab::is_triangle_free(&red.graph));
            if a.check {
                let v = check_equivalence_sat(&phi, &ctx.budget)?;
                code = verdict_code(&v);
                summary["verdict"] = v.to_json();
            }
            output_graph(ctx, a, &red.graph, Some(red.provenance_json()), summary)?;
        }
        ConstructKind::Inapprox => {
            let g = load_graph(need(&a.graph, "--graph")?)?;
            let d = *need(&a.d, "--d")?;
            let red = build_inapprox_reduction(&g, d)?;
            let mut summary = graph_summary("inapprox", &red.graph);
            summary["d"] = json!(d);
            if a.check {
                let v = check_threshold_inapprox(&g, d, &ctx.budget)?;
                code = verdict_code(&v);
                summary["verdict"] = v.to_json();
            }
            output_graph(ctx, a, &red.graph, Some(red.provenance_json()), summary)?;
        }
        ConstructKind::Listcolor => {
            let g = load_graph(need(&a.graph, "--graph")?)?;
            let lists = load_lists(need(&a.lists, "--lists")?, &g)?;
            let red = build_listcoloring_reduction(&g, &lists)?;
            let mut summary = graph_summary("listcolor", &red.graph);
            if a.check {
                let v = check_equivalence_listcolor(&g, &lists, &ctx.budget)?;
                code = verdict_code(&v);
                summary["verdict"] = v.to_json();
            }
            output_graph(ctx, a, &red.graph, Some(red.provenance_json()), summary)?;
        }
    }
    Ok(code)
}

fn verdict_code(v: &EquivalenceVerdict) -> u8 {
    if v.inconclusive() {
        FAILURE
    } else if v.passed() {
        OK
    } else {
        NEGATIVE
    }
}

/// η(G_k) = k from the shipped labeling plus an exhaustive lower bound, and
/// the adversarial lists of size 2k-1 refuted.
fn verify_counterexample(k: usize, budget: &SearchBudget) -> Res<(Value, bool)> {
    let c = counterexample_graph(k);
    let g = &c.graph;
    let certificate_ok = is_additive(g, &c.labeling) && c.labeling.max_label() == Some(k as u64);
    let eta = solve_eta(g, budget)?;
    let lists_ok = c.lists.max_list_size() == 2 * k - 1 && c.lists.iter().all(|(_, l)| l.len() == 2 * k - 1);
    let refutation = refute_lists(g, &c.lists, budget)?;
    let ok = certificate_ok && eta.value == Some(k as u64) && lists_ok && refutation.is_refuted();
    Ok((
        json!({
            "k": k,
            "certificate_additive": certificate_ok,
            "eta": eta.to_json(g.n()),
            "list_size": 2 * k - 1,
            "refutation": refutation.to_json(),
            "eta_l_at_least": if refutation.is_refuted() { Some(2 * k) } else { None },
            "passed": ok,
        }),
        ok,
    ))
}

fn finish(check: &str, criterion: Option<u8>, records: Vec<(Value, bool)>, inconclusive: usize, start: Instant) -> Section {
    let failed = records.iter().filter(|(_, ok)| !ok).count();
    let code = if inconclusive > 0 {
        FAILURE
    } else if failed > 0 {
        NEGATIVE
    } else {
        OK
    };
    let mut summary = json!({
        "check": check,
        "instances": records.len(),
        "failed": failed,
        "inconclusive": inconclusive,
        "passed": failed == 0,
        "elapsed_ms": ms(start.elapsed()),
    });
    if let Some(c) = criterion {
        summary["criterion"] = json!(c);
    }
    Section { records, summary, code }
}

fn verdict_section(check: &str, criterion: Option<u8>, verdicts: Vec<EquivalenceVerdict>, start: Instant) -> Section {
    let inconclusive = verdicts.iter().filter(|v| v.inconclusive()).count();
    let records = verdicts.iter().map(|v| (v.to_json(), v.passed())).collect();
    finish(check, criterion, records, inconclusive, start)
}

fn counterexample_section(ctx: &Ctx, max_k: usize) -> Res<Section> {
    let start = Instant::now();
    let mut records = Vec::new();
    for k in 1..=max_k {
        records.push(verify_counterexample(k, &ctx.budget)?);
    }
    Ok(finish("counterexample", Some(1), records, 0, start))
}

fn cycles_section(ctx: &Ctx) -> Res<Section> {
    let start = Instant::now();
    let records = odd_cycle_sweep(&ctx.budget)?
        .into_iter()
        .map(|(n, status, ok)| (json!({ "cycle": n, "binary": status, "passed": ok }), ok))
        .collect();
    Ok(finish("cycles", Some(2), records, 0, start))
}

fn gadgets_section() -> Res<Section> {
    let start = Instant::now();
    let reports = gadget_suite()?;
    let last = reports.len() - 1;
    let records = reports
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.to_json();
            if i == last {
                // The negative control passes when it is caught.
                let caught = r.complete && !r.countermodels.is_empty();
                v["negative_control"] = json!(true);
                v["caught"] = json!(caught);
                (v, caught)
            } else {
                (v, r.passed())
            }
        })
        .collect();
    Ok(finish("gadgets", Some(3), records, 0, start))
}

fn sat_section(ctx: &Ctx, a: &CheckArgs) -> Res<Section> {
    let start = Instant::now();
    let verdicts = match &a.cnf {
        Some(p) => vec![check_equivalence_sat(&load(p, Cnf3Formula::from_dimacs)?, &ctx.budget)?],
        None => sat_sweep(ctx.seed()?, a.random.unwrap_or(50), ctx.jobs, &ctx.budget)?,
    };
    Ok(verdict_section("sat", a.cnf.is_none().then_some(4), verdicts, start))
}

fn listcolor_section(ctx: &Ctx, a: &CheckArgs) -> Res<Section> {
    let start = Instant::now();
    let single = a.graph.is_some() || a.lists.is_some();
    let verdicts = if single {
        let g = load_graph(need(&a.graph, "--graph")?)?;
        let l = load_lists(need(&a.lists, "--lists")?, &g)?;
        vec![check_equivalence_listcolor(&g, &l, &ctx.budget)?]
    } else {
        listcolor_sweep(ctx.seed()?, a.random.unwrap_or(25), ctx.jobs, &ctx.budget)?
    };
    Ok(verdict_section("listcolor", (!single).then_some(5), verdicts, start))
}

fn inapprox_section(ctx: &Ctx, a: &CheckArgs) -> Res<Section> {
    let start = Instant::now();
    let verdicts = match &a.graph {
        Some(p) => vec![check_threshold_inapprox(&load_graph(p)?, *need(&a.d, "--d")?, &ctx.budget)?],
        None => inapprox_sweep(&ctx.budget)?,
    };
    Ok(verdict_section("inapprox", a.graph.is_none().then_some(6), verdicts, start))
}

fn bounds_section(ctx: &Ctx, count: usize, max_n: usize) -> Res<Section> {
    let start = Instant::now();
    let mut inconclusive = 0;
    let records = bounds_sweep(ctx.seed()?, count, max_n, ctx.jobs, &ctx.budget)?
        .into_iter()
        .map(|(g, r)| {
            let violations = r.violations();
            inconclusive += usize::from(r.eta.is_none() || r.sigma.is_none() || r.eta1_status == Status::BudgetExceeded);
            let mut v = r.to_json();
            v["edge_list"] = json!(g.edges());
            v["violations"] = json!(violations);
            (v, violations.is_empty())
        })
        .collect();
    Ok(finish("bounds", Some(7), records, inconclusive, start))
}

fn oracles_section(ctx: &Ctx, count: usize, max_n: usize) -> Res<Section> {
    let start = Instant::now();
    let records = oracle_sweep(ctx.seed()?, count, max_n, ctx.jobs, &ctx.budget)?
        .into_iter()
        .map(|c| (c.to_json(), c.agrees()))
        .collect();
    Ok(finish("oracles", Some(8), records, 0, start))
}

fn check(ctx: &Ctx, a: &CheckArgs) -> Res<u8> {
    let sections: Vec<Section> = match a.what {
        CheckKind::Sat => vec![sat_section(ctx, a)?],
        CheckKind::Listcolor => vec![listcolor_section(ctx, a)?],
        CheckKind::Inapprox => vec![inapprox_section(ctx, a)?],
        CheckKind::Gadgets => vec![gadgets_section()?],
        CheckKind::Cycles => vec![cycles_section(ctx)?],
        CheckKind::Counterexample => vec![counterexample_section(ctx, a.k)?],
        CheckKind::Bounds => vec![bounds_section(ctx, a.count, a.max_n.unwrap_or(7))?],
        CheckKind::Oracles => vec![oracles_section(ctx, a.count, a.max_n.unwrap_or(6))?],
        CheckKind::All => {
            let plain = CheckArgs { cnf: None, graph: None, lists: None, d: None, random: None, max_n: None, ..*a };
            ctx.seed()?;
            let mut out = Vec::new();
            for part in [
                CheckKind::Counterexample,
                CheckKind::Cycles,
                CheckKind::Gadgets,
                CheckKind::Sat,
                CheckKind::Listcolor,
                CheckKind::Inapprox,
                CheckKind::Bounds,
                CheckKind::Oracles,
            ] {
                let s = match part {
                    CheckKind::Counterexample => counterexample_section(ctx, a.k)?,
                    CheckKind::Cycles => cycles_section(ctx)?,
                    CheckKind::Gadgets => gadgets_section()?,
                    CheckKind::Sat => sat_section(ctx, &plain)?,
                    CheckKind::Listcolor => listcolor_section(ctx, &plain)?,
                    CheckKind::Inapprox => inapprox_section(ctx, &plain)?,
                    CheckKind::Bounds => bounds_section(ctx, a.count, 7)?,
                    _ => oracles_section(ctx, a.count, 6)?,
                };
                ctx.emit_section(&s);
                out.push(s);
            }
            return Ok(out.iter().map(|s| s.code).max().unwrap_or(OK));
        }
    };
    for s in &sections {
        ctx.emit_section(s);
    }
    Ok(sections.iter().map(|s| s.code).max().unwrap_or(OK))
}
