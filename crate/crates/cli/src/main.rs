//! `smlg-lab` command-line front end.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use smlg_lab::edit::substring_edit_distance;
use smlg_lab::format::{
    check_tokens, parse_graph, parse_ov, parse_pattern, parse_sets, serialize_graph, serialize_ov,
    serialize_pattern, serialize_sets,
};
use smlg_lab::harness::bench::BenchOptions;
use smlg_lab::harness::{
    bench_matcher, default_grid, format_plan, random_ov_instance, random_set_family,
    run_split_grid, run_verify_reduction, trial_rng, write_bench_csv, write_grid_csv, BenchSize,
    GridPoint, GridRow, InstanceShape, VerifyConfig, GENERATOR_NAME,
};
use smlg_lab::ov::{split_plan, verify_plan};
use smlg_lab::reduction::{assemble_graph, build_pattern, build_sic_graph, sic_query, Variant};
use smlg_lab::{find_match_path, Matcher};

#[derive(Parser)]
#[command(
    name = "smlg-lab",
    version,
    about = "String matching in labeled graphs and OV reductions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Acyclic,
    Cyclic,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Acyclic => Variant::Acyclic,
            VariantArg::Cyclic => Variant::Cyclic,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random OV instance.
    GenOv(GenOvArgs),
    /// Generate a random set family.
    GenSets(GenSetsArgs),
    /// Build reduction artifacts.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Decide whether a pattern occurs on some path of a graph.
    Match(MatchArgs),
    /// Cross-check the OV reduction against both oracles on random instances.
    Verify(VerifyArgs),
    /// Compute and check splitting parameters for one cost triple.
    SplitPlan(SplitPlanArgs),
    /// Run split plans over the default grid.
    SplitGrid(SplitGridArgs),
    /// Time the online matcher on reduction instances.
    Bench(BenchArgs),
    /// Substring edit distance between a text and a pattern.
    Subed(SubedArgs),
    /// Answer a set-intersection query through the matcher.
    SicQuery(SicQueryArgs),
}

#[derive(Args)]
struct GenOvArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    d: usize,
    /// Probability of a 1 bit.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Force one random pair to be orthogonal.
    #[arg(long)]
    planted: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output if absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenSetsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    universe: usize,
    /// Probability that an element belongs to a set.
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// OV instance to a graph built from X and a pattern built from Y.
    OvToSmlg {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "cyclic")]
        variant: VariantArg,
        #[arg(long)]
        graph_out: PathBuf,
        #[arg(long)]
        pattern_out: PathBuf,
    },
    /// Set family to the set-intersection DAG.
    Sic {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long)]
        graph_out: PathBuf,
    },
}

#[derive(Args)]
struct MatchArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    pattern: PathBuf,
    /// Also print a witnessing path.
    #[arg(long)]
    witness: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    #[arg(long, default_value_t = 8)]
    max_m: usize,
    #[arg(long, default_value_t = 6)]
    max_d: usize,
    #[arg(long, default_value_t = 1)]
    min_m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "cyclic")]
    variant: VariantArg,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Where failing instances are written.
    #[arg(long, default_value = ".")]
    failures_dir: PathBuf,
}

#[derive(Args)]
struct SplitPlanArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    delta: f64,
    #[arg(long, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct SplitGridArgs {
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Sizes as `N,M,d`; repeatable.
    #[arg(long = "size", required = true)]
    sizes: Vec<BenchSize>,
    #[arg(long, default_value_t = 5)]
    repetitions: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "cyclic")]
    variant: VariantArg,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SubedArgs {
    /// File holding the text.
    #[arg(long)]
    text: PathBuf,
    /// File holding the pattern.
    #[arg(long)]
    pattern: PathBuf,
}

#[derive(Args)]
struct SicQueryArgs {
    #[arg(long)]
    sets: PathBuf,
    /// 1-based index of the first set.
    #[arg(long)]
    i: usize,
    /// 1-based index of the second set.
    #[arg(long)]
    j: usize,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write(path, text),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn csv_string(fill: impl FnOnce(&mut Vec<u8>) -> smlg_lab::Result<()>) -> Result<String> {
    let mut buf = Vec::new();
    fill(&mut buf)?;
    Ok(String::from_utf8(buf)?)
}

/// File contents without one trailing line break.
fn text_arg(path: &Path) -> Result<Vec<char>> {
    let text = read(path)?;
    let text = text.strip_suffix('\n').unwrap_or(&text);
    let text = text.strip_suffix('\r').unwrap_or(text);
    Ok(text.chars().collect())
}

fn gen_ov(a: GenOvArgs) -> Result<ExitCode> {
    if !(0.0..=1.0).contains(&a.p) {
        bail!("--p must lie in [0, 1]");
    }
    let mut rng = trial_rng(a.seed, 0);
    let shape = InstanceShape {
        n: a.n,
        m: a.m,
        dim: a.d,
        p: a.p,
        planted: a.planted,
    };
    emit(
        a.out.as_deref(),
        &serialize_ov(&random_ov_instance(&mut rng, shape)),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn gen_sets(a: GenSetsArgs) -> Result<ExitCode> {
    if !(0.0..=1.0).contains(&a.p) {
        bail!("--p must lie in [0, 1]");
    }
    let mut rng = trial_rng(a.seed, 0);
    let family = random_set_family(&mut rng, a.n, a.universe, a.p);
    emit(a.out.as_deref(), &serialize_sets(&family))?;
    Ok(ExitCode::SUCCESS)
}

fn reduce(cmd: ReduceCommand) -> Result<ExitCode> {
    match cmd {
        ReduceCommand::OvToSmlg {
            input,
            variant,
            graph_out,
            pattern_out,
        } => {
            let inst = parse_ov(&read(&input)?)?;
            let red = assemble_graph(inst.x(), inst.dim(), variant.into())?;
            let pattern = build_pattern(inst.y(), inst.dim())?;
            write(&graph_out, &serialize_graph(&red.graph))?;
            write(&pattern_out, &serialize_pattern(&pattern))?;
            println!(
                "nodes={} edges={} pattern={}",
                red.graph.node_count(),
                red.graph.edge_count(),
                pattern.len()
            );
        }
        ReduceCommand::Sic { input, graph_out } => {
            let family = parse_sets(&read(&input)?)?;
            let sic = build_sic_graph(&family)?;
            write(&graph_out, &serialize_graph(&sic.graph))?;
            println!(
                "nodes={} edges={}",
                sic.graph.node_count(),
                sic.graph.edge_count()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn match_cmd(a: MatchArgs) -> Result<ExitCode> {
    let graph = parse_graph(&read(&a.graph)?)?;
    let pattern = parse_pattern(&read(&a.pattern)?)?;
    check_tokens(&pattern)?;
    if a.witness {
        match find_match_path(&graph, &pattern)? {
            Some(w) => {
                let ids: Vec<String> = w.path.iter().map(|v| v.to_string()).collect();
                println!("true");
                println!("path {}", ids.join(" "));
            }
            None => println!("false"),
        }
    } else {
        println!("{}", Matcher::new(&graph)?.is_match(&pattern)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(a: VerifyArgs) -> Result<ExitCode> {
    if a.min_m == 0 || a.min_m > a.max_m {
        bail!("need 1 <= --min-m <= --max-m");
    }
    let mut cfg = VerifyConfig::new(
        a.trials,
        a.max_n,
        a.max_m,
        a.max_d,
        a.seed,
        a.variant.into(),
    );
    cfg.m = a.min_m..=a.max_m;
    cfg.p = a.p;
    let report = run_verify_reduction(&cfg);
    match a.format {
        Format::Text => print!("{}", report.summary()),
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(io::stdout());
            for r in &report.records {
                wtr.serialize(r)?;
            }
            wtr.flush()?;
        }
    }
    if report.failures.is_empty() {
        return Ok(ExitCode::SUCCESS);
    }
    fs::create_dir_all(&a.failures_dir)?;
    for f in &report.failures {
        let path = a
            .failures_dir
            .join(format!("failure-seed{}-trial{}.ov", a.seed, f.trial));
        write(&path, &f.instance)?;
        eprintln!(
            "trial {}: {} (instance written to {})",
            f.trial,
            f.reason,
            path.display()
        );
    }
    Ok(ExitCode::FAILURE)
}

fn split_plan_cmd(a: SplitPlanArgs) -> Result<ExitCode> {
    let plan = split_plan(a.alpha, a.delta, a.beta, a.n)?;
    let report = verify_plan(&plan, a.n, a.alpha, a.delta, a.beta, a.tol)?;
    let point = GridPoint {
        alpha: a.alpha,
        delta: a.delta,
        beta: a.beta,
        n: a.n,
    };
    let row = GridRow::from_plan(point, &plan, &report);
    let csv = csv_string(|buf| write_grid_csv(std::slice::from_ref(&row), buf))?;
    match a.format {
        Format::Text => {
            print!("{}", format_plan(&plan, &report));
            print!("{csv}");
        }
        Format::Csv => print!("{csv}"),
    }
    Ok(if row.certified() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn split_grid(a: SplitGridArgs) -> Result<ExitCode> {
    let rows = run_split_grid(&default_grid(), a.tol);
    let valid = rows.iter().filter(|r| !r.is_violation()).count();
    let certified = rows.iter().filter(|r| r.certified()).count();
    let text = match a.format {
        Format::Csv => csv_string(|buf| write_grid_csv(&rows, buf))?,
        Format::Text => format!(
            "rows={}\nhypothesis_violations={}\nvalid={valid}\ncertified={certified}\n",
            rows.len(),
            rows.len() - valid
        ),
    };
    emit(a.out.as_deref(), &text)?;
    Ok(if certified == valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn bench(a: BenchArgs) -> Result<ExitCode> {
    let opts = BenchOptions::new(a.repetitions, a.seed, a.variant.into());
    let records = bench_matcher(&a.sizes, &opts)?;
    let csv = csv_string(|buf| write_bench_csv(&records, buf))?;
    emit(a.out.as_deref(), &csv)?;
    eprintln!("generator={GENERATOR_NAME} seed={}", a.seed);
    Ok(ExitCode::SUCCESS)
}

fn subed(a: SubedArgs) -> Result<ExitCode> {
    let text = text_arg(&a.text)?;
    let pattern = text_arg(&a.pattern)?;
    println!("{}", substring_edit_distance(&text, &pattern));
    Ok(ExitCode::SUCCESS)
}

fn sic_query_cmd(a: SicQueryArgs) -> Result<ExitCode> {
    let family = parse_sets(&read(&a.sets)?)?;
    let sic = build_sic_graph(&family)?;
    println!("{}", sic_query(&sic, a.i, a.j)?);
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::GenOv(a) => gen_ov(a),
        Command::GenSets(a) => gen_sets(a),
        Command::Reduce(cmd) => reduce(cmd),
        Command::Match(a) => match_cmd(a),
        Command::Verify(a) => verify(a),
        Command::SplitPlan(a) => split_plan_cmd(a),
        Command::SplitGrid(a) => split_grid(a),
        Command::Bench(a) => bench(a),
        Command::Subed(a) => subed(a),
        Command::SicQuery(a) => sic_query_cmd(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
