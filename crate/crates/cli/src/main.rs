use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use cyclecvx::corpus::{check_corpus, generate_corpus, CorpusKind, CorpusSpec, Expected, Status};
use cyclecvx::formulas::{exchange_formula, product_exchange, FormulaResult, ProductExchange};
use cyclecvx::gadget::{build_reduction, verify_reduction, CnfFormula, Verdict, VerifyOptions};
use cyclecvx::graph::generate::Family;
use cyclecvx::graph::io::{parse_edge_list, write_edge_list};
use cyclecvx::independence::{exchange_number_exact_capped, SearchBudget, DEFAULT_EXACT_CAP};
use cyclecvx::{
    hull, interval, is_c_independent, is_convex, is_e_independent, is_hull_set,
    redundant_vertices, Error, ExchangeResult, Graph, ProductKind, VertexSet,
};

const CAP_ENV: &str = "CYCLECVX_EXACT_CAP";

/// Cycle convexity toolkit: hulls, exchange independence and exchange numbers.
#[derive(Parser)]
#[command(name = "cyclecvx", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hull of a vertex set, round by round.
    Hull(SetArgs),
    /// One interval step.
    Interval(SetArgs),
    /// Convexity, hull-set and redundancy checks for a vertex set.
    ConvexCheck(SetArgs),
    /// Carathéodory and exchange independence of a vertex set.
    EIndependent(SetArgs),
    /// Exchange number.
    Exchange(ExchangeArgs),
    /// Product of two graphs.
    Product(ProductArgs),
    /// Emit a named graph family as an edge list.
    Generate {
        /// Family, e.g. `cycle:7`, `chain:K3,fan5@1-4,K4`.
        family: String,
    },
    /// Build the 3-SAT reduction graph from a DIMACS file.
    ReduceSat(ReduceArgs),
    /// Compare formulas with the exact solver over a generated corpus.
    Verify(VerifyArgs),
    /// Time hulls and the exact solver on a few families.
    Bench(BenchArgs),
}

/// A graph given as an edge-list file or, if no such file exists, a family
/// description.
#[derive(Args)]
struct SetArgs {
    graph: String,
    /// Comma-separated vertex ids; empty for the empty set.
    #[arg(long, default_value = "")]
    set: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Formula,
    Auto,
}

#[derive(Args)]
struct ExchangeArgs {
    graph: String,
    #[arg(long, conflicts_with_all = ["formula", "auto"])]
    exact: bool,
    #[arg(long, conflicts_with = "auto")]
    formula: bool,
    #[arg(long)]
    auto: bool,
    /// Largest order handed to the exact solver.
    #[arg(long, env = CAP_ENV, default_value_t = DEFAULT_EXACT_CAP)]
    cap: usize,
}

impl ExchangeArgs {
    fn mode(&self) -> Mode {
        match (self.exact, self.formula) {
            (true, _) => Mode::Exact,
            (_, true) => Mode::Formula,
            _ => Mode::Auto,
        }
    }
}

#[derive(Args)]
struct ProductArgs {
    left: String,
    right: String,
    #[arg(long, default_value = "cartesian")]
    kind: String,
    /// Report the product formula instead of the product graph.
    #[arg(long)]
    exchange: bool,
}

#[derive(Args)]
struct ReduceArgs {
    /// DIMACS CNF file.
    cnf: PathBuf,
    /// Check the reduction against a truth-table SAT result.
    #[arg(long)]
    verify: bool,
    /// Time limit in seconds for the exhaustive search.
    #[arg(long, default_value_t = 900)]
    budget_secs: u64,
    /// Also search when the formula is satisfiable.
    #[arg(long)]
    search_satisfiable: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    corpus: String,
    #[arg(long, default_value_t = 3)]
    max_blocks: usize,
    #[arg(long, default_value_t = 10)]
    max_order: usize,
    #[arg(long, default_value_t = 3)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = CAP_ENV, default_value_t = DEFAULT_EXACT_CAP)]
    cap: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// Families to time; defaults to a small fixed list.
    families: Vec<String>,
    #[arg(long, default_value_t = 5)]
    repeat: u32,
}

/// A failure with its exit status.
enum Failure {
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let prefix = match e {
            Error::Parse { .. } => "parse error",
            Error::Disconnected => "disconnected input",
            Error::CapExceeded { .. } => "too large",
            Error::Formula(_) => "bad formula",
            _ => "invalid input",
        };
        Failure::Domain(format!("{prefix}: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Hull(a) => cmd_hull(a, json),
        Command::Interval(a) => cmd_interval(a, json),
        Command::ConvexCheck(a) => cmd_convex_check(a, json),
        Command::EIndependent(a) => cmd_e_independent(a, json),
        Command::Exchange(a) => cmd_exchange(a, json),
        Command::Product(a) => cmd_product(a, json),
        Command::Generate { family } => {
            let g = family_graph(family)?;
            print!("{}", write_edge_list(&g));
            Ok(())
        }
        Command::ReduceSat(a) => cmd_reduce(a, json),
        Command::Verify(a) => cmd_verify(a, json),
        Command::Bench(a) => cmd_bench(a, json),
    }
}

fn family_graph(spec: &str) -> Result<Graph, Failure> {
    Ok(spec.parse::<Family>()?.build()?)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(arg: &str) -> Result<Graph, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        Ok(parse_edge_list(&read_file(path)?)?)
    } else {
        family_graph(arg).map_err(|Failure::Domain(msg)| {
            Failure::Domain(format!("{arg} is neither a readable file nor a family ({msg})"))
        })
    }
}

fn load_set(g: &Graph, list: &str) -> Result<VertexSet, Failure> {
    let mut s = VertexSet::empty(g.order());
    for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok
            .parse()
            .map_err(|_| Failure::Domain(format!("invalid input: bad vertex id `{tok}`")))?;
        g.check_vertex(v)?;
        s.insert(v);
    }
    Ok(s)
}

fn braces(s: &VertexSet) -> String {
    let ids: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", ids.join(","))
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable output"));
}

fn cmd_hull(a: &SetArgs, json: bool) -> Outcome {
    let g = load_graph(&a.graph)?;
    let s = load_set(&g, &a.set)?;
    let t = hull(&g, &s)?;
    if json {
        #[derive(Serialize)]
        struct Round {
            round: usize,
            added: VertexSet,
        }
        for k in 0..t.rounds.len() {
            print_json(&Round { round: k, added: t.added(k) });
        }
        print_json(&json!({ "final": t.final_set, "rounds": t.round_count() }));
    } else {
        for k in 1..t.rounds.len() {
            println!("round {k}: +{}", braces(&t.added(k)));
        }
        println!("final {} after {} round(s)", braces(&t.final_set), t.round_count());
    }
    Ok(())
}

fn cmd_interval(a: &SetArgs, json: bool) -> Outcome {
    let g = load_graph(&a.graph)?;
    let s = load_set(&g, &a.set)?;
    let i = interval(&g, &s)?;
    if json {
        print_json(&json!({ "interval": i }));
    } else {
        println!("{}", braces(&i));
    }
    Ok(())
}

fn cmd_convex_check(a: &SetArgs, json: bool) -> Outcome {
    let g = load_graph(&a.graph)?;
    let s = load_set(&g, &a.set)?;
    let convex = is_convex(&g, &s)?;
    let hull_set = is_hull_set(&g, &s)?;
    let redundant = redundant_vertices(&g, &s)?;
    if json {
        print_json(&json!({ "convex": convex, "hull_set": hull_set, "redundant": redundant }));
    } else {
        println!("convex: {convex}");
        println!("hull set: {hull_set}");
        println!("redundant: {}", braces(&redundant));
    }
    Ok(())
}

fn cmd_e_independent(a: &SetArgs, json: bool) -> Outcome {
    let g = load_graph(&a.graph)?;
    let s = load_set(&g, &a.set)?;
    let e = is_e_independent(&g, &s)?;
    let c = is_c_independent(&g, &s)?;
    if json {
        print_json(&json!({
            "e_independent": e.is_some(),
            "certificate": e,
            "c_independent": c.is_some(),
            "c_witness": c,
        }));
        return Ok(());
    }
    match e {
        Some(cert) => {
            println!("E-independent");
            if let (Some(p), Some(x)) = (cert.pivot, cert.anti_pivot) {
                println!("pivot: {p}\nanti-pivot: {x}");
            }
        }
        None => println!("E-dependent"),
    }
    match c {
        Some(w) => println!("C-independent (witness {w})"),
        None => println!("C-dependent"),
    }
    Ok(())
}

#[derive(Serialize)]
struct ExchangeReport {
    value: usize,
    method: String,
    /// `false` when `value` is only a lower bound.
    exact: bool,
    certificate: Option<cyclecvx::ExchangeCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<FormulaResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

impl ExchangeReport {
    fn from_exact(r: ExchangeResult) -> Self {
        Self {
            value: r.value,
            method: r.method.to_string(),
            exact: true,
            certificate: Some(r.certificate),
            formula: None,
            note: None,
        }
    }

    fn from_formula(r: FormulaResult) -> Self {
        Self {
            value: r.value,
            method: r.tag.to_string(),
            exact: true,
            certificate: r.certificate.clone(),
            formula: Some(r),
            note: None,
        }
    }
}

fn cmd_exchange(a: &ExchangeArgs, json: bool) -> Outcome {
    let g = load_graph(&a.graph)?;
    let report = match a.mode() {
        Mode::Exact => ExchangeReport::from_exact(exchange_number_exact_capped(&g, a.cap)?),
        Mode::Formula => match exchange_formula(&g)? {
            Some(r) => ExchangeReport::from_formula(r),
            None => {
                return Err(Failure::Domain(
                    "not applicable: no closed formula covers this graph".into(),
                ))
            }
        },
        Mode::Auto => match exchange_formula(&g)? {
            Some(r) => ExchangeReport::from_formula(r),
            None if g.order() <= a.cap => {
                ExchangeReport::from_exact(exchange_number_exact_capped(&g, a.cap)?)
            }
            None => ExchangeReport {
                value: 2.min(g.order()),
                method: "pair-bound".into(),
                exact: false,
                certificate: None,
                formula: None,
                note: Some(format!(
                    "no formula applies and {} vertices exceed the exact cap {}; value is a lower bound",
                    g.order(),
                    a.cap
                )),
            },
        },
    };
    if json {
        print_json(&report);
        return Ok(());
    }
    let qualifier = if report.exact { "" } else { " (lower bound)" };
    println!("value: {}{qualifier}", report.value);
    println!("method: {}", report.method);
    if let Some(c) = &report.certificate {
        println!("set: {}", braces(&c.set));
        if let (Some(p), Some(x)) = (c.pivot, c.anti_pivot) {
            println!("pivot: {p}\nanti-pivot: {x}");
        }
    }
    if let Some(f) = &report.formula {
        if let Some(chain) = &f.chain {
            let blocks: Vec<String> = chain.blocks_in_order.iter().map(braces).collect();
            println!("chain: {}", blocks.join(" "));
            println!("longest non-K2 run: {}", chain.longest_non_k2_chain_length);
        }
        for b in &f.blocks {
            if let Some(w) = b.edge_vertex {
                println!("edge-vertex in {}: edge {}-{}, vertex {}", braces(&b.block), w.u, w.v, w.x);
            }
            if let Some(w) = b.vertex_separation {
                println!(
                    "vertex-separation in {}: x={}, y={}, cut {}",
                    braces(&b.block),
                    w.x,
                    w.y,
                    w.c
                );
            }
        }
    }
    if let Some(note) = &report.note {
        println!("note: {note}");
    }
    Ok(())
}

fn cmd_product(a: &ProductArgs, json: bool) -> Outcome {
    let g = load_graph(&a.left)?;
    let h = load_graph(&a.right)?;
    let kind: ProductKind = a.kind.parse()?;
    if a.exchange {
        let r = product_exchange(&g, &h, kind)?;
        if json {
            print_json(&r);
        } else {
            match r {
                ProductExchange::Exact { value, tag } => println!("value: {value}\nmethod: {tag}"),
                ProductExchange::LowerBound { value, tag } => {
                    println!("value: >= {value}\nmethod: {tag}")
                }
                ProductExchange::NotApplicable { reason } => println!("not applicable: {reason}"),
            }
        }
        return Ok(());
    }
    let p = g.product(&h, kind)?;
    if json {
        let coords: Vec<(usize, usize)> = (0..p.graph.order()).map(|v| p.coords(v)).collect();
        let edges: Vec<(usize, usize)> = p.graph.edges().collect();
        print_json(&json!({ "n": p.graph.order(), "edges": edges, "coords": coords }));
    } else {
        print!("{}", write_edge_list(&p.graph));
    }
    Ok(())
}

fn cmd_reduce(a: &ReduceArgs, json: bool) -> Outcome {
    let phi = CnfFormula::parse_dimacs(&read_file(&a.cnf)?)?;
    if !a.verify {
        let red = build_reduction(&phi)?;
        if json {
            let labels: Vec<String> = red.labels.iter().map(|r| r.to_string()).collect();
            print_json(&json!({
                "edge_list": write_edge_list(&red.graph),
                "k": red.k,
                "labels": labels,
                "role_sets": red.role_sets,
                "pair_reading": red.pair_reading,
            }));
        } else {
            print!("{}", write_edge_list(&red.graph));
            eprintln!("k = {}, pair reading: {}", red.k, red.pair_reading);
        }
        return Ok(());
    }
    let opts = VerifyOptions {
        budget: SearchBudget {
            max_rounds: u64::MAX,
            max_time: Some(Duration::from_secs(a.budget_secs)),
        },
        search_satisfiable: a.search_satisfiable,
    };
    let v = verify_reduction(&phi, opts)?;
    if json {
        print_json(&v);
    } else {
        println!("verdict: {:?}", v.verdict);
        println!("satisfiable: {}", v.satisfiable);
        println!("vertices: {}, k: {}, K5-free: {}", v.order, v.k, v.k5_free);
        if let Some(f) = &v.forward {
            println!(
                "forward witness {}: independent {}, z pivot {}",
                braces(&f.witness),
                f.certificate.is_some(),
                f.z_is_pivot
            );
        }
        if let Some(s) = &v.search {
            println!("search: {}", serde_json::to_string(s).expect("serializable"));
        }
    }
    match v.verdict {
        Verdict::Consistent => Ok(()),
        Verdict::Inconsistent => Err(Failure::Domain("reduction check inconsistent".into())),
        Verdict::Timeout => Err(Failure::Domain("search budget exhausted; no verdict".into())),
    }
}

fn cmd_verify(a: &VerifyArgs, json: bool) -> Outcome {
    let kind: CorpusKind = a.corpus.parse()?;
    let spec = CorpusSpec {
        kind,
        max_order: a.max_order,
        max_blocks: a.max_blocks,
        samples: a.samples,
        seed: a.seed,
    };
    let items = generate_corpus(&spec)?;
    let rows = check_corpus(&items, a.cap)?;
    let failures = rows.iter().filter(|r| r.status == Status::Fail).count();
    if json {
        print_json(&json!({ "rows": rows, "failures": failures }));
    } else {
        println!("{:<44} {:>3} {:>10} {:>6}  status", "instance", "n", "formula", "exact");
        for r in &rows {
            let expected = match &r.expected {
                Expected::Exact { value, .. } => value.to_string(),
                Expected::AtLeast { value, .. } => format!(">={value}"),
                Expected::NotApplicable => "-".into(),
            };
            let exact = r.exact.map_or("-".into(), |e| e.to_string());
            println!("{:<44} {:>3} {:>10} {:>6}  {}", r.label, r.order, expected, exact, r.status);
        }
        println!("{} instances, {failures} failures", rows.len());
    }
    if failures > 0 {
        return Err(Failure::Domain(format!("{failures} formula/solver mismatches")));
    }
    Ok(())
}

fn cmd_bench(a: &BenchArgs, json: bool) -> Outcome {
    let defaults = ["cycle:12", "chain:K3,K4,fan5@1-4", "cycle-pendant:10", "complete:8"];
    let names: Vec<String> = if a.families.is_empty() {
        defaults.iter().map(|s| s.to_string()).collect()
    } else {
        a.families.clone()
    };
    let mut rows = Vec::new();
    for name in &names {
        let g = load_graph(name)?;
        let reps = a.repeat.max(1);
        let pair = VertexSet::from_ids(g.order(), 0..g.order().min(2));
        let t = Instant::now();
        for _ in 0..reps {
            hull(&g, &pair)?;
        }
        let hull_us = t.elapsed().as_secs_f64() * 1e6 / f64::from(reps);
        let t = Instant::now();
        let mut value = 0;
        for _ in 0..reps {
            value = exchange_number_exact_capped(&g, usize::MAX)?.value;
        }
        let exact_ms = t.elapsed().as_secs_f64() * 1e3 / f64::from(reps);
        rows.push(json!({
            "family": name, "n": g.order(), "value": value,
            "hull_us": hull_us, "exact_ms": exact_ms,
        }));
        if !json {
            println!("{name:<28} n={:<3} e={value:<3} hull {hull_us:>9.2} us  exact {exact_ms:>10.3} ms", g.order());
        }
    }
    if json {
        print_json(&rows);
    }
    Ok(())
}
