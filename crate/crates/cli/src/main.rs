mod args;
mod output;

use std::fs;
use std::process::ExitCode;

use clap::Parser;
use lapsim_core::analysis::{analyze, paper_regression, PropertyReport, RegressionOptions};
use lapsim_core::graph::{parse_edge_list, Family, Graph, DEFAULT_SEED};
use lapsim_core::par::Execution;
use lapsim_core::{Config, Error};
use rayon::prelude::*;

use args::{Cli, Command, Format, InputArgs, RunArgs};

/// A failed run and its exit code.
struct Failure {
    code: u8,
    msg: String,
}

const INPUT_ERROR: u8 = 2;
const INCONSISTENCY: u8 = 3;

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Self { code: INPUT_ERROR, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconsistency(_) | Error::Singular => INCONSISTENCY,
            _ => INPUT_ERROR,
        };
        Self { code, msg: e.to_string() }
    }
}

fn config(run: &RunArgs) -> Config {
    let mut cfg = Config::default();
    if let Some(c) = run.fpp_cap {
        cfg.fpp_cap = c;
    }
    if let Some(c) = run.idp_cap {
        cfg.idp_cap = c;
    }
    if let Some(c) = run.box_cap {
        cfg.box_cap = c;
    }
    if run.jobs == Some(1) {
        cfg.execution = Execution::Sequential;
    }
    cfg
}

fn family_graph(kind: Family, n: usize, seed: Option<u64>) -> Result<(Graph, String), Error> {
    let g = Graph::family(kind, n, seed)?;
    let id = match kind {
        Family::RandomTree => format!("{kind}-{n}-s{}", seed.unwrap_or(DEFAULT_SEED)),
        _ => format!("{kind}-{n}"),
    };
    Ok((g, id))
}

/// Applies the composable operations in the order whisker, bridge, attach.
fn apply_operations(input: &InputArgs, mut g: Graph, mut id: String) -> Result<(Graph, String), Error> {
    if input.whisker {
        g = g.whisker();
        id.push_str("+whisker");
    }
    if let Some((kind, n)) = input.bridge_with {
        let (other, other_id) = family_graph(kind, n, input.seed)?;
        let (i, j) = input.bridge_at;
        g = g.bridge(&other, i, j)?;
        id.push_str(&format!("+bridge:{other_id}@{i}:{j}"));
    }
    if let Some((v, k)) = input.attach_path {
        g = g.attach_path(v, k)?;
        id.push_str(&format!("+path:{v}:{k}"));
    }
    Ok((g, id))
}

fn input_graph(input: &InputArgs) -> Result<(Graph, String), Failure> {
    let (g, id) = match (&input.input, input.family) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
            let id = path.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned());
            (parse_edge_list(&text)?, id)
        }
        (None, Some(kind)) => {
            let n = input.n.ok_or_else(|| Failure::input("--family needs --n"))?;
            family_graph(kind, n, input.seed)?
        }
        _ => return Err(Failure::input("give exactly one of --input FILE or --family KIND --n N")),
    };
    Ok(apply_operations(input, g, id)?)
}

fn report(cli: &Cli, cfg: &Config) -> Result<ExitCode, Failure> {
    let (g, id) = input_graph(&cli.input)?;
    let r = analyze(&g, cli.run.strategy, cfg)?.with_id(id.clone());
    match cli.run.format.unwrap_or(Format::Text) {
        Format::Text => print!("{}", output::text_report(&r)),
        Format::Json => println!("{}", serde_json::to_string(&r).expect("reports serialize")),
        Format::Csv => print!("{}", output::csv_table(&[(id, Ok(r))])),
    }
    Ok(ExitCode::SUCCESS)
}

fn batch(cli: &Cli, cfg: &Config, sizes: &[usize], samples: u64) -> Result<ExitCode, Failure> {
    if cli.input.input.is_some() {
        return Err(Failure::input("batch works on --family, not --input"));
    }
    let kind = cli.input.family.ok_or_else(|| Failure::input("batch needs --family"))?;
    let base_seed = cli.input.seed.unwrap_or(DEFAULT_SEED);
    let per_size = if kind == Family::RandomTree { samples } else { 1 };
    let jobs: Vec<(usize, Option<u64>)> = sizes
        .iter()
        .flat_map(|&n| {
            (0..per_size).map(move |k| (n, (kind == Family::RandomTree).then(|| base_seed.wrapping_add(k))))
        })
        .collect();

    let rows: Vec<(String, Result<PropertyReport, Error>)> = jobs
        .par_iter()
        .map(|&(n, seed)| {
            let fallback_id = format!("{kind}-{n}");
            let built = family_graph(kind, n, seed).and_then(|(g, id)| apply_operations(&cli.input, g, id));
            match built {
                Ok((g, id)) => {
                    let r = analyze(&g, cli.run.strategy, cfg).map(|r| r.with_id(id.clone()));
                    (id, r)
                }
                Err(e) => (fallback_id, Err(e)),
            }
        })
        .collect();

    match cli.run.format.unwrap_or(Format::Csv) {
        Format::Csv => print!("{}", output::csv_table(&rows)),
        Format::Text => {
            for (id, row) in &rows {
                println!("{}", output::text_row(id, row));
            }
        }
        Format::Json => {
            let values: Vec<serde_json::Value> = rows
                .iter()
                .map(|(id, row)| match row {
                    Ok(r) => serde_json::to_value(r).expect("reports serialize"),
                    Err(e) => serde_json::json!({ "id": id, "error": e.to_string() }),
                })
                .collect();
            println!("{}", serde_json::to_string(&values).expect("values serialize"));
        }
    }
    let inconsistent = rows.iter().any(|(_, r)| matches!(r, Err(Error::Inconsistency(_))));
    Ok(if inconsistent { ExitCode::from(INCONSISTENCY) } else { ExitCode::SUCCESS })
}

fn verify_paper(cli: &Cli, cfg: &Config, opts: RegressionOptions) -> Result<ExitCode, Failure> {
    let report = paper_regression(&opts, cfg);
    match cli.run.format.unwrap_or(Format::Text) {
        Format::Json => println!("{}", serde_json::to_string(&report).expect("reports serialize")),
        _ => println!("{report}"),
    }
    Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let mut cfg = config(&cli.run);
    match &cli.command {
        Command::Report => report(cli, &cfg),
        Command::Batch { ns, samples } => batch(cli, &cfg, &ns.0, *samples),
        Command::VerifyPaper { only, no_fast_paths, inject_fault } => {
            cfg.fast_paths = !no_fast_paths;
            let opts = RegressionOptions {
                only: *only,
                seed: cli.input.seed.unwrap_or(DEFAULT_SEED),
                fault: *inject_fault,
            };
            verify_paper(cli, &cfg, opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match cli.run.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new().num_threads(j as usize).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return ExitCode::from(INPUT_ERROR);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
