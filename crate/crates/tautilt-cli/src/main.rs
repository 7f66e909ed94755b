mod verify;

use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tautilt::algebra::{Algebra, AnySpec};
use tautilt::cluster::{build_category, export_dot, export_json};
use tautilt::error::Error;
use tautilt::fixtures;
use tautilt::homology::{g_vector, pd_capped, DEFAULT_PD_CAP};
use tautilt::rep::{set_default_seed, Representation};
use tautilt::sequences::{enumerate_tau_exceptional, object_name, sequence_rows, sequence_table};
use tautilt::tau::{bongartz, co_bongartz, enumeration_route, indec_tau_rigid, SignedObject, TauCatalog};
use tautilt::wide::{gamma_report, jasso_reduction, WideEngine};

#[derive(Parser)]
#[command(name = "tautilt", version, about = "Exact τ-tilting computations")]
struct Cli {
    /// Algebra JSON file path or built-in fixture name.
    #[arg(long, global = true, default_value = "a2")]
    algebra: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Seed for the randomized isomorphism tests.
    #[arg(long, global = true, default_value_t = 0x7a75)]
    seed: u64,
    /// Projective dimensions at or above this are reported as "≥ cap".
    #[arg(long, global = true, default_value_t = DEFAULT_PD_CAP)]
    pd_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build the algebra and report its invariants.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Indecomposable τ-rigid modules.
    Tau {
        #[command(subcommand)]
        action: ListAction,
    },
    /// Support τ-tilting objects.
    Stt {
        #[command(subcommand)]
        action: ListAction,
    },
    /// Bongartz and co-Bongartz completions of the indecomposable τ-rigid modules.
    Bongartz {
        /// Restrict to one module by name, e.g. `S1`.
        #[arg(long)]
        module: Option<String>,
    },
    /// The τ-perpendicular category J(U), its algebra and simples.
    Perp {
        /// Comma-separated summands of U by name, e.g. `P1,P2[1]`; empty for U = 0.
        #[arg(long, default_value = "")]
        object: String,
    },
    /// Signed or unsigned τ-exceptional sequences.
    Seq {
        #[command(subcommand)]
        action: SeqAction,
    },
    /// The τ-cluster morphism category.
    Cluster {
        #[command(subcommand)]
        action: ClusterAction,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        action: VerifyAction,
    },
}

#[derive(Subcommand)]
enum AlgebraAction {
    Check,
}

#[derive(Subcommand)]
enum ListAction {
    List,
}

#[derive(Subcommand)]
enum SeqAction {
    List {
        #[arg(long)]
        signed: bool,
        /// Defaults to the number of vertices.
        #[arg(long)]
        length: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ClusterAction {
    Build {
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand)]
enum VerifyAction {
    /// The worked example over k[x,y]/(x², y², xy − yx) ⊗ k(1 → 2).
    PaperExample,
    /// Induction bijections for a tensor algebra R ⊗ kQ.
    Bijections,
}

/// Rendered output plus whether every check passed.
pub struct Report {
    pub table: String,
    pub json: Value,
    pub dot: Option<String>,
    pub pass: bool,
}

impl Report {
    fn ok(table: String, json: Value) -> Self {
        Report { table, json, dot: None, pass: true }
    }
}

fn input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::RouteUnavailable(_)
            | Error::TauTiltingInfinite(_)
            | Error::NotHereditary(_)
            | Error::Provenance(_)
            | Error::InvalidQuiver(_)
            | Error::RelationNotParallel(_)
            | Error::NotAdmissibleRelation(_)
            | Error::NotAdmissibleAtBound { .. }
            | Error::OrientedCycle
    )
}

pub fn load_algebra(source: &str) -> tautilt::error::Result<Arc<Algebra>> {
    let alg = if Path::new(source).is_file() {
        let text = std::fs::read_to_string(source).map_err(|e| Error::Parse(format!("{source}: {e}")))?;
        AnySpec::parse(&text)?.build()?
    } else {
        fixtures::by_name(source)?
    };
    Ok(Arc::new(alg))
}

fn dims(m: &Representation) -> String {
    format!("({})", m.dims().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
}

fn algebra_check(alg: &Arc<Algebra>, pd_cap: usize) -> tautilt::error::Result<Report> {
    alg.check_structure()?;
    let n = alg.n_vertices();
    let pds: Vec<String> = (0..n).map(|i| pd_capped(&Representation::simple(alg, i), pd_cap).map(|p| p.to_string())).collect::<Result<_, _>>()?;
    let route = enumeration_route(alg).map(|r| format!("{r:?}")).unwrap_or_else(|e| e.to_string());
    let mut table = String::new();
    table.push_str(&format!("vertices      {n}\narrows        {}\nrelations     {}\ndimension     {}\n", alg.n_arrows(), alg.relations().len(), alg.dim()));
    table.push_str(&format!("hereditary    {}\nlocal         {}\ncommutative   {}\n", alg.is_path_algebra(), alg.is_local(), alg.is_commutative()));
    table.push_str(&format!("tensor        {}\nroute         {route}\npd simples    {}\n", alg.provenance().is_some(), pds.join(" ")));
    let json = json!({
        "vertices": n, "arrows": alg.n_arrows(), "relations": alg.relations().len(), "dimension": alg.dim(),
        "hereditary": alg.is_path_algebra(), "local": alg.is_local(), "commutative": alg.is_commutative(),
        "tensor": alg.provenance().is_some(), "route": route, "pd_simples": pds,
    });
    Ok(Report::ok(table, json))
}

fn tau_list(alg: &Arc<Algebra>) -> tautilt::error::Result<Report> {
    let mods = indec_tau_rigid(alg)?;
    let mut table = String::new();
    let mut rows = Vec::new();
    for (i, m) in mods.iter().enumerate() {
        let name = object_name(alg, &SignedObject::module(m.clone()));
        let g = g_vector(m)?;
        table.push_str(&format!("{i:>3}  {name:<8} {:<12} g = {g:?}\n", dims(m)));
        rows.push(json!({"index": i, "name": name, "dims": m.dims(), "g_vector": g}));
    }
    Ok(Report::ok(table, Value::Array(rows)))
}

fn stt_list(alg: &Arc<Algebra>) -> tautilt::error::Result<Report> {
    let cat = TauCatalog::for_algebra(alg)?;
    let n = alg.n_vertices();
    let mut table = String::new();
    let mut rows = Vec::new();
    for c in cat.cliques(n).into_iter().filter(|c| c.len() == n) {
        let names: Vec<String> = c.iter().map(|&i| object_name(alg, &cat.objects[i])).collect();
        table.push_str(&format!("{}\n", names.join(" ⊕ ")));
        rows.push(json!({"summands": names}));
    }
    table.push_str(&format!("total {}\n", rows.len()));
    Ok(Report::ok(table, Value::Array(rows)))
}

fn bongartz_report(alg: &Arc<Algebra>, only: Option<&str>) -> tautilt::error::Result<Report> {
    let mods = indec_tau_rigid(alg)?;
    let name = |m: &Representation| object_name(alg, &SignedObject::module(m.clone()));
    let mut table = String::new();
    let mut rows = Vec::new();
    let mut found = false;
    for m in &mods {
        let mn = name(m);
        if only.is_some_and(|o| o != mn) {
            continue;
        }
        found = true;
        let b: Vec<String> = bongartz(m)?.iter().map(name).collect();
        let c = co_bongartz(m)?;
        let mut co: Vec<String> = c.m.iter().map(name).collect();
        co.extend(c.p.iter().map(|v| format!("P{}[1]", v + 1)));
        table.push_str(&format!("{mn:<8} Bongartz {}   co-Bongartz {}\n", b.join(" ⊕ "), co.join(" ⊕ ")));
        rows.push(json!({"module": mn, "bongartz": b, "co_bongartz": co}));
    }
    if !found {
        return Err(Error::Parse(format!("no indecomposable τ-rigid module named {:?}", only.unwrap_or(""))));
    }
    Ok(Report::ok(table, Value::Array(rows)))
}

fn perp_report(alg: &Arc<Algebra>, object: &str, pd_cap: usize) -> tautilt::error::Result<Report> {
    let cat = TauCatalog::for_algebra(alg)?;
    let names: Vec<String> = cat.objects.iter().map(|o| object_name(alg, o)).collect();
    let mut idx = Vec::new();
    for part in object.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i = names
            .iter()
            .position(|n| n == part)
            .ok_or_else(|| Error::Parse(format!("unknown object {part:?}; known: {}", names.join(", "))))?;
        idx.push(i);
    }
    let u = cat.to_object(&idx);
    let w = jasso_reduction(alg, &u)?;
    let rep = gamma_report(&w)?;
    let simples = w.simples()?;
    let pds: Vec<String> = simples.iter().map(|s| w.pd(s, pd_cap).map(|p| p.to_string())).collect::<Result<_, _>>()?;
    let simple_names: Vec<String> = simples.iter().map(|s| object_name(alg, &SignedObject::module(s.clone()))).collect();
    let label = if idx.is_empty() { "0".to_string() } else { idx.iter().map(|&i| names[i].clone()).collect::<Vec<_>>().join(" ⊕ ") };
    let table = format!(
        "U             {label}\nΓ dimension   {}\nΓ vertices    {}\nlocal         {}\ncommutative   {}\nsimples       {}\npd in J       {}\n",
        rep.dim,
        rep.vertices,
        rep.local,
        rep.commutative,
        simple_names.join(" "),
        pds.join(" ")
    );
    let json = json!({"u": label, "gamma": rep, "simples": simple_names, "pd_in_j": pds});
    Ok(Report::ok(table, json))
}

fn seq_list(alg: &Arc<Algebra>, signed: bool, length: Option<usize>) -> tautilt::error::Result<Report> {
    let mut e = WideEngine::new(alg)?;
    let t = length.unwrap_or(alg.n_vertices());
    let seqs = enumerate_tau_exceptional(&mut e, t, signed)?;
    let table = format!("{}total {}\n", sequence_table(alg, &seqs), seqs.len());
    let json = serde_json::to_value(sequence_rows(alg, &seqs)).expect("rows serialize");
    Ok(Report::ok(table, json))
}

fn cluster_report(alg: &Arc<Algebra>) -> tautilt::error::Result<Report> {
    let mut e = WideEngine::new(alg)?;
    let cat = build_category(&mut e)?;
    cat.check_laws()?;
    let mut table = String::new();
    let order = cat.node_order();
    table.push_str(&format!("objects {}   morphisms {}\n", cat.objects.len(), cat.morphisms.len()));
    for &a in &order {
        for &b in &order {
            let h = cat.hom(a, b);
            if !h.is_empty() && a != b {
                let labels: Vec<&str> = h.iter().map(|&m| cat.morphisms[m].label.as_str()).collect();
                table.push_str(&format!("{} -> {}: {} [{}]\n", cat.objects[a].label, cat.objects[b].label, h.len(), labels.join(", ")));
            }
        }
    }
    let json: Value = serde_json::from_str(&export_json(&cat)).expect("export is valid JSON");
    Ok(Report { table, json, dot: Some(export_dot(&cat)), pass: true })
}

fn run(cli: &Cli) -> tautilt::error::Result<Report> {
    set_default_seed(cli.seed);
    if let Command::Verify { action: VerifyAction::PaperExample } = cli.command {
        return verify::worked_example(cli.pd_cap);
    }
    let alg = load_algebra(&cli.algebra)?;
    match &cli.command {
        Command::Algebra { action: AlgebraAction::Check } => algebra_check(&alg, cli.pd_cap),
        Command::Tau { action: ListAction::List } => tau_list(&alg),
        Command::Stt { action: ListAction::List } => stt_list(&alg),
        Command::Bongartz { module } => bongartz_report(&alg, module.as_deref()),
        Command::Perp { object } => perp_report(&alg, object, cli.pd_cap),
        Command::Seq { action: SeqAction::List { signed, length } } => seq_list(&alg, *signed, *length),
        Command::Cluster { action: ClusterAction::Build { .. } } => cluster_report(&alg),
        Command::Verify { action: VerifyAction::Bijections } => verify::bijections(&alg),
        Command::Verify { action: VerifyAction::PaperExample } => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let want_dot = cli.format == Format::Dot || matches!(cli.command, Command::Cluster { action: ClusterAction::Build { dot: true } });
    match run(&cli) {
        Ok(report) => {
            if want_dot {
                match &report.dot {
                    Some(d) => print!("{d}"),
                    None => {
                        eprintln!("error: DOT output is only available for `cluster build`");
                        return ExitCode::from(2);
                    }
                }
            } else if cli.format == Format::Json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("report serializes"));
            } else {
                print!("{}", report.table);
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = if input_error(&e) { 2 } else { 1 };
            eprintln!("error: {e}");
            if cli.format == Format::Json {
                println!("{}", json!({"error": e.to_string(), "exit": code}));
            }
            ExitCode::from(code)
        }
    }
}
