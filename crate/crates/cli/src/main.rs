use clap::{Args, Parser, Subcommand};
use dickson_milnor::identities::Status;
use dickson_milnor::koszul::KoszulInstance;
use dickson_milnor_cli::{
    cmd_extract, cmd_gen, cmd_st, cmd_verify, default_grid, dickson_entry, dump_triplets,
    koszul_custom, koszul_report, koszul_tuan, CliError, CliResult, Format, KoszulEntry, Outcome,
    Report, RunConfig, EXIT_FALSIFIED,
};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact checks of Dickson invariants under Milnor primitive derivations.
#[derive(Parser)]
#[command(name = "dmcheck", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the output to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print L_n, L_{n,s}, Q_{n,s} and Q0 with their degrees.
    Gen {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Apply St^{Δ_i} to an expression in Q0..Q{n-1}.
    St {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        i: u32,
        expr: String,
        #[command(flatten)]
        output: Output,
    },
    /// Extract A_s, B and their p-th roots.
    Extract {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        i: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Run every identity check over a grid of cells.
    Verify {
        /// Primes (comma separated); with -n and -i forms a product grid.
        #[arg(short, value_delimiter = ',')]
        p: Vec<u32>,
        #[arg(short, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(short, value_delimiter = ',')]
        i: Vec<u32>,
        /// Largest m for St^m(Q_s); defaults to p + 1.
        #[arg(short = 'm', long = "max-m")]
        max_m: Option<u32>,
        /// Degree bound for the Koszul tables.
        #[arg(short = 'D', long = "max-degree")]
        max_degree: Option<u64>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Koszul homology tables.
    Koszul {
        #[command(subcommand)]
        which: KoszulCommand,
    },
}

#[derive(Args)]
struct KoszulCommon {
    #[arg(short = 'D', long = "max-degree")]
    max_degree: Option<u64>,
    /// Write differential matrices as sparse triplets into DIR.
    #[arg(long, value_name = "DIR")]
    dump: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum KoszulCommand {
    /// F_p[y_1..y_n, V] with coefficients y_s^{p^j}.
    Tuan {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        j: u32,
        #[command(flatten)]
        common: KoszulCommon,
    },
    /// The p-th roots P_s of the extracted coefficients.
    Dickson {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        i: u32,
        #[command(flatten)]
        common: KoszulCommon,
    },
    /// Coefficients read from a file, one polynomial per line.
    Custom {
        #[arg(short, default_value = "2")]
        p: u32,
        #[arg(long)]
        file: PathBuf,
        /// Variable degrees (comma separated); all 1 by default.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<u64>>,
        #[command(flatten)]
        common: KoszulCommon,
    },
}

fn emit(output: &Output, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    }
}

fn report_code(report: &Report) -> u8 {
    if report.status == Status::Fail {
        EXIT_FALSIFIED
    } else {
        0
    }
}

fn run_simple(result: CliResult<Outcome>, output: &Output) -> CliResult<u8> {
    let outcome = result?;
    emit(output, &outcome.output)?;
    Ok(outcome.code)
}

fn run_koszul(which: KoszulCommand) -> CliResult<u8> {
    let (entry, inst, common): (KoszulEntry, Option<KoszulInstance>, KoszulCommon) = match which {
        KoszulCommand::Tuan { p, n, j, common } => {
            let (e, inst) = koszul_tuan(p, n, j, common.max_degree)?;
            (e, Some(inst), common)
        }
        KoszulCommand::Dickson { p, n, i, common } => {
            (dickson_entry(p, n, i, common.max_degree)?, None, common)
        }
        KoszulCommand::Custom {
            p,
            file,
            degrees,
            common,
        } => {
            let text = std::fs::read_to_string(&file)?;
            let (e, inst) = koszul_custom(p, &text, degrees, common.max_degree)?;
            (e, Some(inst), common)
        }
    };
    if let Some(dir) = &common.dump {
        match &inst {
            Some(inst) => {
                dump_triplets(inst, entry.homology.max_degree, dir)?;
            }
            None => {
                return Err(CliError::Usage(
                    "--dump applies to tuan and custom instances".into(),
                ));
            }
        }
    }
    let config = RunConfig {
        grid: Vec::new(),
        max_m: None,
        seeds: Vec::new(),
        koszul_d: Some(entry.homology.max_degree),
        output: common.output.out.as_ref().map(|p| p.display().to_string()),
        format: common.output.format,
    };
    let report = koszul_report(config, vec![entry]);
    emit(&common.output, &render(&report, common.output.format))?;
    Ok(report_code(&report))
}

fn product_grid(ps: Vec<u32>, ns: Vec<usize>, is: Vec<u32>) -> Vec<(u32, usize, u32)> {
    if ps.is_empty() && ns.is_empty() && is.is_empty() {
        return default_grid();
    }
    let ps = if ps.is_empty() { vec![2, 3, 5] } else { ps };
    let ns = if ns.is_empty() { vec![1, 2] } else { ns };
    let is = if is.is_empty() { vec![1, 2] } else { is };
    let mut grid = Vec::new();
    for &p in &ps {
        for &n in &ns {
            for &i in &is {
                grid.push((p, n, i));
            }
        }
    }
    grid
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Gen { p, n, output } => run_simple(cmd_gen(p, n, output.format), &output),
        Command::St {
            p,
            n,
            i,
            expr,
            output,
        } => run_simple(cmd_st(p, n, i, &expr, output.format), &output),
        Command::Extract { p, n, i, output } => {
            run_simple(cmd_extract(p, n, i, output.format), &output)
        }
        Command::Verify {
            p,
            n,
            i,
            max_m,
            max_degree,
            seeds,
            output,
        } => {
            let config = RunConfig {
                grid: product_grid(p, n, i),
                max_m,
                seeds,
                koszul_d: max_degree,
                output: output.out.as_ref().map(|p| p.display().to_string()),
                format: output.format,
            };
            let report = cmd_verify(config)?;
            emit(&output, &render(&report, output.format))?;
            Ok(report_code(&report))
        }
        Command::Koszul { which } => run_koszul(which),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
