use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use icebrick::algebra::Algebra;
use icebrick::bricks::{format_bricks, BrickTable};
use icebrick::census::{Census, KnitOptions};
use icebrick::golden::{self, CaseReport, Status};
use icebrick::grid::Grid;
use icebrick::opext::{transfer_for, ExtensionOptions, GrowthKind, GrowthReport, OnePointExtension};
use icebrick::rep::{ModuleLiteral, Representation};
use icebrick::subcat::{format_add, member_names, Closures, IdSet, Sampling};
use icebrick::wtau::{format_sum, nakayama_gate, wtau_table, RowReport};

/// `println!` that exits quietly when the reader hangs up.
macro_rules! out {
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}

fn emit(args: std::fmt::Arguments) {
    if let Err(e) = writeln!(io::stdout().lock(), "{args}") {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: stdout: {e}");
            std::process::exit(3);
        }
        std::process::exit(0);
    }
}

#[derive(Parser)]
#[command(name = "icebrick", version, about = "ICE-closed subcategories and epibricks of small quiver algebras")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Md, global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Coefficient radius for sampling Hom and Ext spaces.
    #[arg(long, default_value_t = 1, global = true)]
    grid: i64,
    /// Run the wide τ-tilting pipeline outside the Nakayama setting.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Indecomposable modules of an algebra.
    Census(AlgebraArg),
    /// ICE-closed subcategories.
    Ice {
        #[command(subcommand)]
        action: ListAction,
    },
    /// Epibricks.
    Ebrick {
        #[command(subcommand)]
        action: ListAction,
    },
    /// Monobricks.
    Mbrick {
        #[command(subcommand)]
        action: ListAction,
    },
    /// One-point extensions.
    Opext {
        #[command(subcommand)]
        action: OpextAction,
    },
    /// Wide τ-tilting modules over a one-point extension.
    Wtau {
        #[command(subcommand)]
        action: WtauAction,
    },
    /// Compare against the published lists (`all` runs every case).
    Verify { case: String },
}

#[derive(Args)]
struct AlgebraArg {
    /// Algebra spec (JSON).
    #[arg(long)]
    algebra: PathBuf,
}

#[derive(Args)]
struct ExtensionArgs {
    #[command(flatten)]
    algebra: AlgebraArg,
    /// Module literal (JSON).
    #[arg(long)]
    module: PathBuf,
    /// Label of the new vertex.
    #[arg(long)]
    vertex: Option<String>,
}

#[derive(Subcommand)]
enum ListAction {
    List(AlgebraArg),
}

#[derive(Subcommand)]
enum OpextAction {
    /// Print the extension algebra.
    Build(ExtensionArgs),
    /// Check the theorem constructions and the growth bound.
    Verify(ExtensionArgs),
}

#[derive(Subcommand)]
enum WtauAction {
    Table(ExtensionArgs),
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Input(icebrick::Error),
    #[error("{0}")]
    Compute(icebrick::Error),
    #[error("{0}")]
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Io { .. } => 3,
            Failure::Input(_) => 4,
            Failure::Compute(_) => 5,
        }
    }
}

impl From<icebrick::Error> for Failure {
    fn from(e: icebrick::Error) -> Self {
        use icebrick::Error as E;
        match e {
            E::UnknownVertex(_)
            | E::UnknownArrow(_)
            | E::DuplicateLabel(_)
            | E::NonParallelRelation { .. }
            | E::NonHomogeneousRelation(_)
            | E::NotAdmissible(_)
            | E::NotFiniteDimensional(_)
            | E::Parse(_)
            | E::InvalidModule(_) => Failure::Input(e),
            _ => Failure::Compute(e),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|source| Failure::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_algebra(arg: &AlgebraArg) -> Result<Arc<Algebra>, Failure> {
    Ok(Algebra::from_json(&read(&arg.algebra)?)?)
}

fn load_module(args: &ExtensionArgs) -> Result<Representation, Failure> {
    let alg = load_algebra(&args.algebra)?;
    let lit = ModuleLiteral::from_json(&read(&args.module)?)?;
    Ok(Representation::from_literal(&alg, &lit)?)
}

fn print_json(value: &impl Serialize) {
    out!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

struct Ctx {
    format: Format,
    sampling: Sampling,
    force: bool,
}

impl Ctx {
    fn census(&self, alg: &Arc<Algebra>) -> Result<Arc<Census>, Failure> {
        let opts = KnitOptions {
            grid: self.sampling.grid,
            ..KnitOptions::default()
        };
        Ok(Arc::new(Census::build(alg, opts)?))
    }

    fn options(&self, args: &ExtensionArgs) -> ExtensionOptions {
        ExtensionOptions {
            vertex_label: args.vertex.clone(),
            ..ExtensionOptions::default()
        }
    }
}

#[derive(Serialize)]
struct SetEntry {
    ids: IdSet,
    names: Vec<String>,
    label: String,
}

fn set_entries(census: &Census, sets: &[IdSet], label: impl Fn(IdSet) -> String) -> Vec<SetEntry> {
    sets.iter()
        .map(|&s| SetEntry {
            ids: s,
            names: member_names(census, s),
            label: label(s),
        })
        .collect()
}

fn emit_sets(ctx: &Ctx, kind: &str, census: &Census, sets: &[IdSet], label: impl Fn(IdSet) -> String) {
    match ctx.format {
        Format::Md => {
            for s in sets {
                out!("{}", label(*s));
            }
        }
        Format::Json => print_json(&json!({
            "kind": kind,
            "count": sets.len(),
            "sets": set_entries(census, sets, label),
        })),
    }
}

fn census_cmd(ctx: &Ctx, arg: &AlgebraArg) -> Outcome {
    let census = ctx.census(&load_algebra(arg)?)?;
    let entries = census.entries()?;
    match ctx.format {
        Format::Md => {
            out!("| id | name | dims | brick |");
            out!("|---:|---|---|:---:|");
            for e in &entries {
                let dims = e.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
                out!("| {} | {} | ({dims}) | {} |", e.id, e.name, if e.brick { "yes" } else { "no" });
            }
        }
        Format::Json => print_json(&json!({
            "vertices": census.algebra().vertices(),
            "count": entries.len(),
            "modules": entries,
        })),
    }
    Ok(())
}

fn ice_cmd(ctx: &Ctx, arg: &AlgebraArg) -> Outcome {
    let census = ctx.census(&load_algebra(arg)?)?;
    let closures = Closures::new(census.clone(), ctx.sampling)?;
    let sets = closures.enumerate_ice();
    emit_sets(ctx, "ice", &census, &sets, |s| format_add(&census, s));
    Ok(())
}

fn brick_cmd(ctx: &Ctx, arg: &AlgebraArg, epi: bool) -> Outcome {
    let census = ctx.census(&load_algebra(arg)?)?;
    let table = BrickTable::new(census.clone(), ctx.sampling.grid)?;
    let (kind, sets) = if epi {
        ("ebrick", table.enumerate_ebricks()?)
    } else {
        ("mbrick", table.enumerate_mbricks()?)
    };
    emit_sets(ctx, kind, &census, &sets, |s| format_bricks(&census, s));
    Ok(())
}

fn opext_build(ctx: &Ctx, args: &ExtensionArgs) -> Outcome {
    let m = load_module(args)?;
    let ope = OnePointExtension::new(&m, &ctx.options(args))?;
    let spec = ope.result().to_spec();
    match ctx.format {
        Format::Md => {
            out!("new vertex: {}", ope.omega_label());
            for a in ope.new_arrows() {
                out!("new arrow: {}: {} -> {}", a.name, ope.omega_label(), a.target);
            }
            out!("dim B = {}", ope.result().dimension());
            out!("");
            out!("```json\n{}\n```", spec.to_json());
        }
        Format::Json => print_json(&json!({
            "omega": ope.omega_label(),
            "new_arrows": ope.new_arrows(),
            "dimension": ope.result().dimension(),
            "algebra": spec,
        })),
    }
    Ok(())
}

fn growth_ok(g: &GrowthReport) -> bool {
    g.images_distinct && g.images_valid && g.bound_holds
}

fn opext_verify(ctx: &Ctx, args: &ExtensionArgs) -> Outcome {
    let m = load_module(args)?;
    let t = transfer_for(&m, &ctx.options(args), ctx.sampling)?;
    let reports = [t.growth_report(GrowthKind::Ice)?, t.growth_report(GrowthKind::Ebrick)?];
    match ctx.format {
        Format::Md => {
            out!("| kind | n (A) | m (B) | images | distinct | valid | m ≥ 2n |");
            out!("|---|---:|---:|---:|:---:|:---:|:---:|");
            let yn = |b: bool| if b { "yes" } else { "no" };
            for g in &reports {
                let kind = match g.kind {
                    GrowthKind::Ice => "ice",
                    GrowthKind::Ebrick => "ebrick",
                };
                out!(
                    "| {kind} | {} | {} | {} | {} | {} | {} |",
                    g.n,
                    g.m,
                    g.images,
                    yn(g.images_distinct),
                    yn(g.images_valid),
                    yn(g.bound_holds)
                );
            }
        }
        Format::Json => print_json(&reports),
    }
    if reports.iter().all(growth_ok) {
        Ok(())
    } else {
        Err(Failure::Mismatch("growth check failed".into()))
    }
}

#[derive(Serialize)]
struct TableReport {
    a: RowReport,
    route1: RowReport,
    route2: RowReport,
    routes_agree: bool,
}

fn wtau_cmd(ctx: &Ctx, args: &ExtensionArgs) -> Outcome {
    let m = load_module(args)?;
    nakayama_gate(m.algebra(), ctx.force)?;
    let t = transfer_for(&m, &ctx.options(args), ctx.sampling)?;
    let table = wtau_table(&t, ctx.force)?;
    for w in &table.warnings {
        eprintln!("warning: {w}");
    }
    let (ca, cb) = (t.census_a(), t.census_b());
    match ctx.format {
        Format::Md => {
            out!("| w τ-tilt A | ice A | ebrick A | ice B | w τ-tilt B (route 1) | ebrick B | w τ-tilt B (route 2) |");
            out!("|---|---|---|---|---|---|---|");
            for l in &table.lines {
                out!(
                    "| {} | {} | {} | {} | {} | {} | {} |",
                    format_sum(ca, l.a.module),
                    format_add(ca, l.a.ice),
                    format_bricks(ca, l.a.ebrick),
                    format_add(cb, l.route1.ice),
                    format_sum(cb, l.route1.module),
                    format_bricks(cb, l.route2.ebrick),
                    format_sum(cb, l.route2.module),
                );
            }
        }
        Format::Json => {
            let rows: Vec<TableReport> = table
                .lines
                .iter()
                .map(|l| TableReport {
                    a: RowReport::new(ca, &l.a),
                    route1: RowReport::new(cb, &l.route1),
                    route2: RowReport::new(cb, &l.route2),
                    routes_agree: l.routes_agree(),
                })
                .collect();
            print_json(&json!({ "warnings": table.warnings, "rows": rows }));
        }
    }
    Ok(())
}

fn print_case(r: &CaseReport) {
    let tag = |s: Status| match s {
        Status::Pass => "PASS",
        Status::Warn => "WARN",
        Status::Fail => "FAIL",
    };
    out!("{}: {}", r.case, tag(r.status));
    for c in &r.checks {
        if c.detail.is_empty() {
            out!("- {} {}", tag(c.status), c.name);
        } else {
            out!("- {} {}: {}", tag(c.status), c.name, c.detail);
        }
        for m in &c.missing {
            out!("  - listed, not computed: {m}");
        }
        for u in &c.unexpected {
            out!("  + computed, not listed: {u}");
        }
    }
}

fn verify_cmd(ctx: &Ctx, case: &str) -> Outcome {
    let cases: Vec<&str> = if case == "all" {
        golden::CASES.to_vec()
    } else {
        vec![case]
    };
    let mut reports = Vec::new();
    for c in cases {
        reports.push(golden::verify(c, ctx.sampling)?);
    }
    match ctx.format {
        Format::Md => {
            for r in &reports {
                print_case(r);
            }
        }
        Format::Json if reports.len() == 1 => print_json(&reports[0]),
        Format::Json => print_json(&reports),
    }
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| r.status == Status::Fail)
        .map(|r| r.case.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("mismatch in {}", failed.join(", "))))
    }
}

fn run(cli: Cli) -> Outcome {
    if cli.grid < 1 {
        return Err(Failure::Input(icebrick::Error::Parse("--grid must be at least 1".into())));
    }
    let ctx = Ctx {
        format: cli.format,
        sampling: Sampling {
            grid: Grid::new(cli.grid),
            ..Sampling::default()
        },
        force: cli.force,
    };
    match &cli.command {
        Command::Census(a) => census_cmd(&ctx, a),
        Command::Ice { action: ListAction::List(a) } => ice_cmd(&ctx, a),
        Command::Ebrick { action: ListAction::List(a) } => brick_cmd(&ctx, a, true),
        Command::Mbrick { action: ListAction::List(a) } => brick_cmd(&ctx, a, false),
        Command::Opext { action: OpextAction::Build(a) } => opext_build(&ctx, a),
        Command::Opext { action: OpextAction::Verify(a) } => opext_verify(&ctx, a),
        Command::Wtau { action: WtauAction::Table(a) } => wtau_cmd(&ctx, a),
        Command::Verify { case } => verify_cmd(&ctx, case),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
