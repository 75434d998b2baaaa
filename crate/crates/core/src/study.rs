//! Study configuration, dispatch, and machine-readable outputs.
//!
//! A study is: build initial data, build the reference, run one scheme over
//! a τ-list, fit the convergence slope, and write
//!
//!   * `<out>.csv` — `tau,error_z,error_zt,combined` rows plus a trailing
//!     `# slope=<fitted>` comment (diverged rows print NaN);
//!   * `<out>.json` — the fully resolved configuration, the slope, and the
//!     per-row record.
//!
//! Unset fields resolve to experiment-dependent defaults; outputs are
//! byte-deterministic for a fixed configuration, and the JSON sidecar can be
//! fed back in as a configuration file to reproduce the run.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::experiments::{
    convergence_study, rough_initial, rough_initial_with_zt, solitary_wave, ConvergenceRecord,
    Reference, Scheme,
};
use crate::spectral::Grid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    Solitary,
    Rough,
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentKind::Solitary => "solitary",
            ExperimentKind::Rough => "rough",
        })
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "solitary" => Ok(ExperimentKind::Solitary),
            "rough" => Ok(ExperimentKind::Rough),
            other => Err(Error::invalid(
                "experiment",
                format!("unknown experiment {other:?}; expected solitary or rough"),
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceKind {
    Analytic,
    FineLri2,
    FineDeuflhard,
}

impl fmt::Display for ReferenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReferenceKind::Analytic => "analytic",
            ReferenceKind::FineLri2 => "fine-lri2",
            ReferenceKind::FineDeuflhard => "fine-deuflhard",
        })
    }
}

impl FromStr for ReferenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "analytic" => Ok(ReferenceKind::Analytic),
            "fine-lri2" => Ok(ReferenceKind::FineLri2),
            "fine-deuflhard" => Ok(ReferenceKind::FineDeuflhard),
            other => Err(Error::invalid(
                "reference",
                format!("unknown reference {other:?}; expected analytic, fine-lri2 or fine-deuflhard"),
            )),
        }
    }
}

/// Partial study configuration: unset fields get experiment-dependent
/// defaults at `resolve` time.  Field names match the CLI flags.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyConfig {
    #[serde(default)]
    pub scheme: Option<Scheme>,
    #[serde(default)]
    pub experiment: Option<ExperimentKind>,
    #[serde(default, rename = "M")]
    pub m: Option<usize>,
    #[serde(default, rename = "L")]
    pub l: Option<f64>,
    #[serde(default, rename = "T")]
    pub t: Option<f64>,
    #[serde(default)]
    pub c: Option<f64>,
    #[serde(default)]
    pub tau_list: Option<Vec<f64>>,
    #[serde(default)]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub x0: Option<f64>,
    #[serde(default)]
    pub theta: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub error_norm_r: Option<f64>,
    #[serde(default)]
    pub dealias: Option<bool>,
    #[serde(default)]
    pub reference: Option<ReferenceKind>,
    #[serde(default)]
    pub rough_zt: Option<bool>,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
}

impl StudyConfig {
    /// Overlay: fields set in `over` win over `self` (CLI flags over file).
    pub fn merged_with(&self, over: &StudyConfig) -> StudyConfig {
        StudyConfig {
            scheme: over.scheme.or(self.scheme),
            experiment: over.experiment.or(self.experiment),
            m: over.m.or(self.m),
            l: over.l.or(self.l),
            t: over.t.or(self.t),
            c: over.c.or(self.c),
            tau_list: over.tau_list.clone().or_else(|| self.tau_list.clone()),
            lambda: over.lambda.or(self.lambda),
            x0: over.x0.or(self.x0),
            theta: over.theta.or(self.theta),
            seed: over.seed.or(self.seed),
            error_norm_r: over.error_norm_r.or(self.error_norm_r),
            dealias: over.dealias.or(self.dealias),
            reference: over.reference.or(self.reference),
            rough_zt: over.rough_zt.or(self.rough_zt),
            output_path: over.output_path.clone().or_else(|| self.output_path.clone()),
        }
    }

    pub fn resolve(&self) -> Result<ResolvedConfig, Error> {
        let scheme = self.scheme.ok_or_else(|| Error::invalid("scheme", "required"))?;
        let experiment = self
            .experiment
            .ok_or_else(|| Error::invalid("experiment", "required"))?;
        let (l_default, c_default, ref_default) = match experiment {
            ExperimentKind::Solitary => (40.0, 1.0, ReferenceKind::Analytic),
            ExperimentKind::Rough => (std::f64::consts::PI, 0.01, ReferenceKind::FineLri2),
        };
        Ok(ResolvedConfig {
            scheme,
            experiment,
            m: self.m.unwrap_or(512),
            l: self.l.unwrap_or(l_default),
            t: self.t.unwrap_or(2.0),
            c: self.c.unwrap_or(c_default),
            tau_list: self
                .tau_list
                .clone()
                .unwrap_or_else(|| (0..7).map(|j| 0.1 / f64::from(1u32 << j)).collect()),
            lambda: self.lambda.unwrap_or(0.5),
            x0: self.x0.unwrap_or(0.0),
            theta: self.theta.unwrap_or(2.0),
            seed: self.seed.unwrap_or(2026),
            error_norm_r: self.error_norm_r.unwrap_or(1.0),
            dealias: self.dealias.unwrap_or(false),
            reference: self.reference.unwrap_or(ref_default),
            rough_zt: self.rough_zt.unwrap_or(false),
            output_path: self
                .output_path
                .clone()
                .unwrap_or_else(|| PathBuf::from(format!("study_{scheme}_{experiment}"))),
        })
    }
}

/// Fully determined study; serialized into the JSON sidecar.  Its JSON form
/// is also a valid [`StudyConfig`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolvedConfig {
    pub scheme: Scheme,
    pub experiment: ExperimentKind,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub c: f64,
    pub tau_list: Vec<f64>,
    pub lambda: f64,
    pub x0: f64,
    pub theta: f64,
    pub seed: u64,
    pub error_norm_r: f64,
    pub dealias: bool,
    pub reference: ReferenceKind,
    pub rough_zt: bool,
    pub output_path: PathBuf,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    config: &'a ResolvedConfig,
    slope: f64,
    record: &'a ConvergenceRecord,
}

pub struct StudyOutput {
    pub config: ResolvedConfig,
    pub record: ConvergenceRecord,
    pub csv_path: PathBuf,
    pub json_path: PathBuf,
}

impl StudyOutput {
    /// True when no τ produced a usable error (reference failures surface as
    /// hard errors instead).
    pub fn all_diverged(&self) -> bool {
        self.record.rows.iter().all(|row| row.diverged)
    }
}

/// Load a configuration from JSON: either a bare [`StudyConfig`] object or a
/// previous run's sidecar (its `config` key is used).
pub fn load_config(path: &std::path::Path) -> Result<StudyConfig, Error> {
    let text = fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let obj = match value.get("config") {
        Some(inner) => inner.clone(),
        None => value,
    };
    Ok(serde_json::from_value(obj)?)
}

pub fn format_csv(record: &ConvergenceRecord) -> String {
    let mut csv = String::from("tau,error_z,error_zt,combined\n");
    for row in &record.rows {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            row.tau, row.error_z, row.error_zt, row.combined
        ));
    }
    csv.push_str(&format!("# slope={}\n", record.fitted_slope));
    csv
}

pub fn run_study(cfg: &StudyConfig) -> Result<StudyOutput, Error> {
    let rc = cfg.resolve()?;
    let grid = Grid::new(rc.m, rc.l)?;

    let initial = match rc.experiment {
        ExperimentKind::Solitary => solitary_wave(&grid, 0.0, rc.lambda, rc.x0, 1.0)?,
        ExperimentKind::Rough => {
            if rc.rough_zt {
                rough_initial_with_zt(&grid, rc.theta, rc.seed)?
            } else {
                rough_initial(&grid, rc.theta, rc.seed)?
            }
        }
    }
    .with_c(rc.c)?;

    let reference = match rc.reference {
        ReferenceKind::Analytic => match rc.experiment {
            ExperimentKind::Solitary => Reference::Analytic(
                solitary_wave(&grid, rc.t, rc.lambda, rc.x0, 1.0)?.with_c(rc.c)?,
            ),
            ExperimentKind::Rough => {
                return Err(Error::invalid(
                    "reference",
                    "rough data has no closed-form solution; use fine-lri2 or fine-deuflhard",
                ))
            }
        },
        ReferenceKind::FineLri2 => Reference::Fine(Scheme::Lri2),
        ReferenceKind::FineDeuflhard => Reference::Fine(Scheme::Deuflhard),
    };

    let record = convergence_study(
        rc.scheme,
        &initial,
        rc.t,
        &rc.tau_list,
        rc.error_norm_r,
        rc.dealias,
        &reference,
    )?;

    let csv_path = rc.output_path.with_extension("csv");
    let json_path = rc.output_path.with_extension("json");
    if let Some(parent) = csv_path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(&csv_path, format_csv(&record))?;
    let sidecar = Sidecar { config: &rc, slope: record.fitted_slope, record: &record };
    let mut json = serde_json::to_string_pretty(&sidecar)?;
    json.push('\n');
    fs::write(&json_path, json)?;

    Ok(StudyOutput { config: rc, record, csv_path, json_path })
}
