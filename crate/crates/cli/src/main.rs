use std::path::PathBuf;
use std::process::ExitCode;

use artinlab::harness::report::InstanceReport;
use artinlab::harness::{
    run_analyze, run_corpus, run_koszul, run_search, run_tor, GeneratorParams, RunError, RunOptions, RunReport,
};
use clap::{Args, Parser, Subcommand};

/// Koszul homology, complete intersection defects and Tor for Artinian local
/// algebras over prime fields.
#[derive(Parser)]
#[command(name = "artinlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every section the instance file supports.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Koszul homology and the ν(H_1) bounds; requires `koszul:`.
    Koszul {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Tor_1 of two ideals; requires `gens2:`.
    Tor {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Seeded random instances.
    Search {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Largest number of variables m.
        #[arg(long, default_value_t = 3)]
        vars: usize,
        /// Largest degree bound D.
        #[arg(long, default_value_t = 5)]
        maxdeg: u32,
        /// Largest number of Koszul elements n.
        #[arg(long, default_value_t = 3)]
        maxn: usize,
        #[arg(long, default_value_t = 101)]
        field: u64,
        #[command(flatten)]
        common: Common,
    },
    /// The built-in corpus.
    Corpus {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Write the JSON report here.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write one CSV row per instance here.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_name = "K")]
    jobs: usize,
    /// Largest degree bound tried when `bound:` is absent.
    #[arg(long, default_value_t = 12)]
    bound_max: u32,
    /// Random changes of basis per instance (default 100, or 10 for search).
    #[arg(long)]
    remark8_trials: Option<usize>,
    /// Add wall-clock time per instance to the report.
    #[arg(long)]
    timing: bool,
    /// Corrupt the top Koszul differential (for testing the checks).
    #[arg(long, hide = true)]
    inject_fault: bool,
}

impl Common {
    fn options(&self, base: RunOptions) -> RunOptions {
        RunOptions {
            jobs: self.jobs,
            bound_max: self.bound_max,
            remark8_trials: self.remark8_trials.unwrap_or(base.remark8_trials),
            timing: self.timing,
            inject_fault: self.inject_fault,
            ..base
        }
    }
}

fn path_str(p: &std::path::Path) -> String {
    p.to_string_lossy().into_owned()
}

fn summarize(r: &InstanceReport) {
    let source = match (&r.instance.seed, &r.instance.path) {
        (Some(seed), _) => format!("seed {seed}"),
        (_, Some(path)) => path.clone(),
        _ => format!("#{}", r.index),
    };
    let a = &r.algebra;
    let mut line = format!(
        "{source}: p={} D={} length={} embdim={} cid={}",
        r.instance.p, r.instance.bound, a.length, a.embdim, a.cid_pres
    );
    if let (Some(k), Some(t)) = (&r.koszul, &r.theorem) {
        line += &format!(
            " | n={} H={:?} nu={:?} chi={} bound={} slack={}",
            k.n, k.h_dims, k.h_nus, k.euler, t.bound, t.slack
        );
    }
    if let Some(t) = &r.tor {
        line += &format!(
            " | tor len={}/{} nu={}/{} c9_slack={}",
            t.len_ideal, t.len_diag, t.nu_ideal, t.nu_diag, t.c9_slack
        );
    }
    println!("{line}");
}

fn emit(report: &RunReport, common: &Common) -> Result<(), String> {
    if report.instances.len() <= 50 {
        report.instances.iter().for_each(summarize);
    }
    let s = &report.summary;
    println!(
        "{} instances, {} violations, {} conjecture findings, {} tight",
        s.instances, s.violations, s.findings, s.tight
    );
    for (kind, list) in [("VIOLATION", &report.violations), ("FINDING", &report.findings)] {
        for f in list {
            eprintln!("{kind} [{}] instance {}: {}\n{}", f.check, f.index, f.detail, f.instance);
        }
    }
    if let Some(path) = &common.json {
        std::fs::write(path, report.to_json()).map_err(|e| format!("{}: {e}", path_str(path)))?;
    }
    if let Some(path) = &common.csv {
        let csv = report.to_csv().map_err(|e| e.to_string())?;
        std::fs::write(path, csv).map_err(|e| format!("{}: {e}", path_str(path)))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, common): (Result<RunReport, RunError>, &Common) = match &cli.command {
        Command::Analyze { file, common } => (run_analyze(&path_str(file), &common.options(RunOptions::default())), common),
        Command::Koszul { file, common } => (run_koszul(&path_str(file), &common.options(RunOptions::default())), common),
        Command::Tor { file, common } => (run_tor(&path_str(file), &common.options(RunOptions::default())), common),
        Command::Search {
            seed,
            count,
            vars,
            maxdeg,
            maxn,
            field,
            common,
        } => {
            let params = GeneratorParams::search(*field, *vars, *maxdeg, *maxn);
            (run_search(*seed, *count, params, &common.options(RunOptions::search())), common)
        }
        Command::Corpus { common } => (run_corpus(&common.options(RunOptions::default())), common),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&report, common) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code() as u8)
}
