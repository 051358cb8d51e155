use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use satforge::commands::{self, parse_seconds, parse_variant, BenchArgs, ReportFormat};
use satforge::generators::GeneratorSpec;
use satforge::slots::SlotName;

#[derive(Parser)]
#[command(name = "satforge", version, about = "Evolve the heuristics of a CDCL SAT solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one DIMACS file with the built-in engine (exit 10/20/0).
    Solve {
        file: PathBuf,
        #[arg(long, value_parser = parse_seconds)]
        timeout: Option<f64>,
        /// Rebind a slot to a catalog variant, e.g. reduce_condition=dynamic_threshold.
        #[arg(long = "variant", value_parser = parse_variant)]
        variants: Vec<(SlotName, String)>,
    },
    /// Run a solver over a directory of .cnf files and record PAR-2.
    Bench {
        dir: PathBuf,
        #[arg(long, value_parser = parse_seconds, default_value = "10")]
        timeout: f64,
        #[arg(long, short = 'j', default_value_t = 1)]
        parallelism: usize,
        #[arg(long, short = 'o', default_value = "bench-out")]
        output: PathBuf,
        /// Executable speaking the solver protocol: `<bin> <file.cnf> --timeout <T>`.
        #[arg(long)]
        solver: Option<PathBuf>,
        #[arg(long = "variant", value_parser = parse_variant)]
        variants: Vec<(SlotName, String)>,
        #[arg(long, default_value = "workspace")]
        workspace: PathBuf,
        /// Label for reports; defaults to the solver file name.
        #[arg(long)]
        name: Option<String>,
        /// Dataset label for reports; defaults to the directory name.
        #[arg(long)]
        dataset: Option<String>,
    },
    /// Run a search campaign from a TOML config.
    Campaign { config: PathBuf },
    /// Generate benchmark instances.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(long, short = 'o', global = true, default_value = "instances")]
        out: PathBuf,
    },
    /// Convergence CSVs from campaign logs, comparison tables from bench summaries.
    Report {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, short = 'o', default_value = "report")]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        format: ReportFormat,
    },
    /// Delete cached candidate builds.
    GcWorkspace {
        #[arg(default_value = "workspace")]
        workspace: PathBuf,
        /// Fingerprint to keep.
        #[arg(long)]
        keep: Vec<String>,
        /// Campaign output directory whose best candidate is kept.
        #[arg(long)]
        campaign: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    RandomKsat {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Pigeonhole {
        #[arg(long, value_delimiter = ',', required = true)]
        holes: Vec<usize>,
    },
    Langford {
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
    },
}

impl Family {
    fn specs(&self) -> Vec<GeneratorSpec> {
        match self {
            Family::RandomKsat { n, m, k, count, seed } => (0..*count)
                .map(|j| GeneratorSpec::RandomKsat {
                    n: *n,
                    m: *m,
                    k: *k,
                    seed: seed + j,
                })
                .collect(),
            Family::Pigeonhole { holes } => holes
                .iter()
                .map(|&holes| GeneratorSpec::Pigeonhole { holes })
                .collect(),
            Family::Langford { k } => k.iter().map(|&k| GeneratorSpec::Langford { k }).collect(),
        }
    }
}

fn run(command: Command) -> anyhow::Result<i32> {
    match command {
        Command::Solve {
            file,
            timeout,
            variants,
        } => {
            return Ok(commands::cmd_solve(
                &file,
                timeout,
                &variants,
                &mut std::io::stdout().lock(),
            ));
        }
        Command::Bench {
            dir,
            timeout,
            parallelism,
            output,
            solver,
            variants,
            workspace,
            name,
            dataset,
        } => {
            let (summary, _) = commands::cmd_bench(&BenchArgs {
                dir,
                timeout,
                parallelism,
                output: output.clone(),
                solver,
                variants,
                workspace,
                solver_name: name,
                dataset,
            })?;
            println!(
                "{} on {}: par2 {:.3} solved {}/{}{}",
                summary.solver,
                summary.dataset,
                summary.summary.par2,
                summary.summary.solved,
                summary.summary.instances,
                if summary.summary.valid { "" } else { " (INVALID: wrong answer)" }
            );
            println!("wrote {}", output.display());
        }
        Command::Campaign { config } => {
            let state = commands::cmd_campaign(&config)?;
            println!(
                "best par2 {:.3} (baseline {:.3}) after {} iterations",
                state.best_fitness(),
                state.baseline.par2,
                state.iteration
            );
        }
        Command::Gen { family, out } => {
            let files = commands::cmd_gen(&out, &family.specs())?;
            println!("wrote {} instance(s) to {}", files.len(), out.display());
        }
        Command::Report { inputs, out, format } => {
            let files = commands::cmd_report(&inputs, &out, format)?;
            for f in files.files {
                println!("{}", f.display());
            }
        }
        Command::GcWorkspace {
            workspace,
            keep,
            campaign,
        } => {
            let n = commands::cmd_gc_workspace(&workspace, &keep, &campaign)?;
            println!("removed {n} build(s)");
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // clap would exit 2 on usage errors
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::EXIT_ERROR as u8)
        }
    }
}
