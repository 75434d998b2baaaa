//! Command-line front end for convergence studies.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 blow-up (the
//! reference run diverged or every τ diverged).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use gboussinesq::error::Error;
use gboussinesq::study::{load_config, run_study, StudyConfig};

#[derive(Parser, Debug)]
#[command(
    name = "gboussinesq",
    about = "Convergence studies for time integrators of a dispersive wave equation",
    long_about = "Runs one time integrator over a list of step sizes, measures errors \
                  against an analytic or fine-step reference, fits the convergence slope, \
                  and writes <out>.csv plus a <out>.json sidecar. Flags override values \
                  from --config; unset fields get experiment-dependent defaults."
)]
struct Cli {
    /// JSON configuration: a bare config object or a previous run's sidecar
    #[arg(long)]
    config: Option<PathBuf>,
    /// Integrator: lri1, lri2, gautschi or deuflhard
    #[arg(long)]
    scheme: Option<String>,
    /// Initial data family: solitary or rough
    #[arg(long)]
    experiment: Option<String>,
    /// Number of spatial grid points (even)
    #[arg(long = "M")]
    m: Option<usize>,
    /// Domain half-length
    #[arg(long = "L")]
    l: Option<f64>,
    /// Final time
    #[arg(long = "T")]
    t: Option<f64>,
    /// Shift constant of the first-order reformulation
    #[arg(long)]
    c: Option<f64>,
    /// Time step; repeat the flag for a τ-list (strictly decreasing)
    #[arg(long = "tau")]
    tau: Vec<f64>,
    /// Solitary wave steepness in (0, 1]
    #[arg(long)]
    lambda: Option<f64>,
    /// Solitary wave initial center
    #[arg(long)]
    x0: Option<f64>,
    /// Decay exponent of the rough initial data
    #[arg(long)]
    theta: Option<f64>,
    /// Seed for the rough initial data
    #[arg(long)]
    seed: Option<u64>,
    /// Sobolev index of the error norm for z (zt is measured two indices lower)
    #[arg(long = "r")]
    error_norm_r: Option<f64>,
    /// Zero the upper third of the spectrum in products (true/false)
    #[arg(long)]
    dealias: Option<bool>,
    /// Error reference: analytic, fine-lri2 or fine-deuflhard
    #[arg(long)]
    reference: Option<String>,
    /// Draw a rough initial velocity as well (true/false)
    #[arg(long)]
    rough_zt: Option<bool>,
    /// Output stem; writes <out>.csv and <out>.json
    #[arg(long = "out")]
    output_path: Option<PathBuf>,
}

fn flag_config(cli: &Cli) -> Result<StudyConfig, Error> {
    Ok(StudyConfig {
        scheme: cli.scheme.as_deref().map(str::parse).transpose()?,
        experiment: cli.experiment.as_deref().map(str::parse).transpose()?,
        m: cli.m,
        l: cli.l,
        t: cli.t,
        c: cli.c,
        tau_list: if cli.tau.is_empty() { None } else { Some(cli.tau.clone()) },
        lambda: cli.lambda,
        x0: cli.x0,
        theta: cli.theta,
        seed: cli.seed,
        error_norm_r: cli.error_norm_r,
        dealias: cli.dealias,
        reference: cli.reference.as_deref().map(str::parse).transpose()?,
        rough_zt: cli.rough_zt,
        output_path: cli.output_path.clone(),
    })
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let base = match &cli.config {
        Some(path) => load_config(path)?,
        None => StudyConfig::default(),
    };
    let cfg = base.merged_with(&flag_config(cli)?);
    let out = run_study(&cfg)?;

    println!(
        "scheme={} experiment={} M={} T={} reference={}",
        out.config.scheme, out.config.experiment, out.config.m, out.config.t, out.config.reference
    );
    for row in &out.record.rows {
        let status = if row.diverged { " (diverged)" } else { "" };
        println!("tau={:<12} error_z={:.6e}{status}", row.tau, row.error_z);
    }
    println!("fitted slope: {} (R^2 = {})", out.record.fitted_slope, out.record.r_squared);
    println!("wrote {} and {}", out.csv_path.display(), out.json_path.display());

    if out.all_diverged() {
        eprintln!("error: every step size diverged");
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
            let _ = err.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(err @ Error::BlowUp { .. }) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
