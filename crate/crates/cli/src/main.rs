mod commands;
mod output;

use clap::{Parser, Subcommand};
use commands::{CftArgs, CftOverrides, CftPreset, RelativeArgs};
use modmono::{ChainModel, CrossingQuantity, Error, Family, PresetState};
use output::Format;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "modmono", version, about = "Modular-Hamiltonian monotones, majorization and free-fermion block statistics")]
struct Cli {
    /// Output format. Tabular commands default to csv, reports to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to a file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// RNG seed for sampling commands.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy, capacity, cumulants and shifted moments of a spectrum.
    Monotones {
        spectrum: PathBuf,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        /// Roots for the extremal polynomials, shared across degrees.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        roots: Vec<f64>,
    },
    /// Compare two spectra: majorization, monotone gaps and cone order.
    Majorize {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long, default_value_t = 4)]
        extremal_nmax: usize,
    },
    /// Relative monotones of a commuting pair and an optional transition.
    Relative {
        rho: PathBuf,
        sigma: PathBuf,
        #[arg(long)]
        rho_after: Option<PathBuf>,
        #[arg(long)]
        sigma_after: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        /// Shift argument; defaults to the smallest reference eigenvalue.
        #[arg(long)]
        x: Option<f64>,
    },
    /// Clausius-type inequality against a Gibbs state.
    Clausius {
        /// JSON file with {"energies": [...], "beta": ...}.
        #[arg(long)]
        thermal: PathBuf,
        spectrum: PathBuf,
    },
    /// Erasure qubit ladder.
    Erasure {
        spectrum: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
    },
    /// Block statistics for free-fermion chains.
    Chain {
        #[arg(long, default_value = "xx")]
        model: ChainModel,
        #[arg(long, default_value_t = 200)]
        sites: usize,
        /// Explicit block lengths; overrides the range flags.
        #[arg(long, value_delimiter = ',')]
        ell: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        ell_min: usize,
        #[arg(long, default_value_t = 100)]
        ell_max: usize,
        #[arg(long, default_value_t = 1)]
        ell_step: usize,
        #[arg(long, default_value = "gs")]
        state: PresetState,
    },
    /// Closed-form excited-state curves, or a crossing search with --scan.
    Cft {
        #[arg(long, default_value = "SminusC")]
        quantity: CrossingQuantity,
        #[arg(long, value_enum)]
        preset: Option<CftPreset>,
        #[command(flatten)]
        params: ParamFlags,
        /// Label for the model column.
        #[arg(long)]
        model: Option<String>,
        #[arg(long, default_value_t = 0.01)]
        x_min: f64,
        #[arg(long, default_value_t = 0.99)]
        x_max: f64,
        #[arg(long, default_value_t = 99)]
        points: usize,
        #[arg(long)]
        scan: bool,
    },
    /// Crossing search for every quantity.
    Scan {
        #[arg(long, value_enum, default_value = "ising-psi")]
        preset: CftPreset,
        #[command(flatten)]
        params: ParamFlags,
        /// Block lengths for the M2 crossing.
        #[arg(long = "m2-ell", value_delimiter = ',', default_values_t = [100.0, 200.0])]
        m2_ell: Vec<f64>,
    },
    /// Incomparability census over random spectrum pairs.
    Census {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value = "m-sequence")]
        family: Family,
        #[arg(long)]
        allow_expensive: bool,
    },
    /// Universal constants of the excited-state formulas.
    Constants {
        #[arg(long, default_value_t = 20.0)]
        w_max: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(clap::Args)]
struct ParamFlags {
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    c1prime: Option<f64>,
    #[arg(long)]
    d2lncn: Option<f64>,
    #[arg(long, default_value_t = 100.0)]
    ell: f64,
    /// System length; omit for an infinite system.
    #[arg(long = "L")]
    big_l: Option<f64>,
}

impl From<ParamFlags> for CftOverrides {
    fn from(p: ParamFlags) -> Self {
        CftOverrides { gamma: p.gamma, c: p.c, c1prime: p.c1prime, d2lncn: p.d2lncn, ell: p.ell, big_l: p.big_l }
    }
}

fn run(cli: Cli) -> modmono::Result<()> {
    let out = cli.output.as_deref();
    let table = cli.format.unwrap_or(Format::Csv);
    if matches!(cli.format, Some(Format::Csv)) && !matches!(cli.command, Command::Chain { .. } | Command::Cft { scan: false, .. }) {
        return Err(Error::InvalidInput("csv output is only available for chain and cft curves".into()));
    }
    match cli.command {
        Command::Monotones { spectrum, nmax, roots } => commands::monotones(&spectrum, nmax, &roots, out),
        Command::Majorize { a, b, nmax, extremal_nmax } => commands::majorize(&a, &b, nmax, extremal_nmax, out),
        Command::Relative { rho, sigma, rho_after, sigma_after, nmax, x } => commands::relative(
            RelativeArgs {
                rho: &rho,
                sigma: &sigma,
                rho_after: rho_after.as_deref(),
                sigma_after: sigma_after.as_deref(),
                nmax,
                x,
            },
            out,
        ),
        Command::Clausius { thermal, spectrum } => commands::clausius(&thermal, &spectrum, out),
        Command::Erasure { spectrum, max_order } => commands::erasure(&spectrum, max_order, out),
        Command::Chain { model, sites, ell, ell_min, ell_max, ell_step, state } => {
            let ells = commands::ell_list(&ell, ell_min, ell_max, ell_step)?;
            commands::chain(model, sites, &ells, state, table, out)
        }
        Command::Cft { quantity, preset, params, model, x_min, x_max, points, scan } => commands::cft(
            CftArgs { quantity, preset, model, overrides: params.into(), x_min, x_max, points, scan },
            table,
            out,
        ),
        Command::Scan { preset, params, m2_ell } => commands::scan(Some(preset), &params.into(), &m2_ell, out),
        Command::Census { dim, samples, nmax, family, allow_expensive } => {
            commands::census(dim, samples, cli.seed, nmax, family, allow_expensive, out)
        }
        Command::Constants { w_max, tol } => commands::constants(w_max, tol, out),
    }
}

fn report_error(kind: &str, message: &str) {
    let v = serde_json::json!({ "error": kind, "message": message });
    eprintln!("{v}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            report_error("Usage", e.to_string().trim());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            report_error(e.kind(), &e.to_string());
            ExitCode::from(if e.is_numeric() { 3 } else { 2 })
        }
    }
}
