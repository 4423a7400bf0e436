use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use lrk_core::scaling::{linspace, Measure, DEFAULT_L_RANGE};
use lrk_core::ModelParams;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "lrk", version, about = "Long-range Kitaev chain quench simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads (falls back to LRK_WORKERS, then the CPU count).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// CSV output path; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Also write a JSON summary to this path.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ground-state entanglement entropy and its chord-length fit.
    Ground(GroundArgs),
    /// Stationary-state measures over a list of postquench chemical potentials.
    QuenchSweep(SweepArgs),
    /// Effective central charge over the postquench (mu, delta) plane.
    PhasePlot(PhaseArgs),
    /// Compare against exact diagonalization of short chains.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Args)]
pub struct GroundArgs {
    #[arg(long, default_value_t = 512)]
    pub n: usize,
    #[arg(long, default_value_t = 30.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub delta: f64,
    /// Comma-separated block sizes.
    #[arg(long)]
    pub l_range: Option<String>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mu_i: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub delta_i: f64,
    /// Comma-separated postquench chemical potentials.
    #[arg(long, default_value = "0.8,0.9,1.0,1.1,1.2", allow_hyphen_values = true)]
    pub mu_f: String,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub delta_f: f64,
    /// Block size; three blocks must fit in the chain.
    #[arg(long, default_value_t = 50)]
    pub l: usize,
}

#[derive(Debug, Args)]
pub struct PhaseArgs {
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mu_i: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub delta_i: f64,
    /// `lo:hi:steps`
    #[arg(long, default_value = "0:2:21", allow_hyphen_values = true)]
    pub mu_grid: String,
    /// `lo:hi:steps`
    #[arg(long, default_value = "-2:2:21", allow_hyphen_values = true)]
    pub delta_grid: String,
    /// mi or negativity
    #[arg(long, default_value = "mi")]
    pub measure: String,
    #[arg(long)]
    pub l_range: Option<String>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Largest chain; every even size from 4 up to it is checked.
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Random quenches for the Gaussian-state and negativity checks.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Build subsystem matrices with a conjugated lower-left pairing block.
    #[arg(long, hide = true)]
    pub corrupt_sign: bool,
}

/// Fully validated configuration, echoed into every output file.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum RunConfig {
    Ground {
        n: usize,
        alpha: f64,
        mu: f64,
        delta: f64,
        l_range: Vec<usize>,
    },
    QuenchSweep {
        n: usize,
        alpha: f64,
        mu_i: f64,
        delta_i: f64,
        mu_f: Vec<f64>,
        delta_f: f64,
        l: usize,
    },
    PhasePlot {
        n: usize,
        alpha: f64,
        mu_i: f64,
        delta_i: f64,
        mu_f: Vec<f64>,
        delta_f: Vec<f64>,
        measure: Measure,
        l_range: Vec<usize>,
    },
    OracleCheck {
        sizes: Vec<usize>,
        samples: usize,
        seed: u64,
        corrupt_sign: bool,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct Resolved {
    #[serde(flatten)]
    pub run: RunConfig,
    pub workers: usize,
}

fn parse_list<T: std::str::FromStr>(name: &str, raw: &str, errors: &mut Vec<String>) -> Vec<T> {
    let mut out = Vec::new();
    for item in raw.split(',').map(str::trim) {
        match item.parse() {
            Ok(v) => out.push(v),
            Err(_) => errors.push(format!("--{name}: cannot parse {item:?}")),
        }
    }
    if out.is_empty() {
        errors.push(format!("--{name}: empty list"));
    }
    out
}

/// `lo:hi:steps` into an inclusive evenly spaced grid.
pub fn parse_grid(name: &str, raw: &str, errors: &mut Vec<String>) -> Vec<f64> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 3 {
        errors.push(format!("--{name}: expected lo:hi:steps, got {raw:?}"));
        return Vec::new();
    }
    let lo = parts[0].trim().parse::<f64>();
    let hi = parts[1].trim().parse::<f64>();
    let steps = parts[2].trim().parse::<usize>();
    match (lo, hi, steps) {
        (Ok(lo), Ok(hi), Ok(steps)) if steps >= 1 && lo.is_finite() && hi.is_finite() => {
            if steps > 1 && hi <= lo {
                errors.push(format!("--{name}: upper bound must exceed lower bound"));
            }
            linspace(lo, hi, steps)
        }
        _ => {
            errors.push(format!("--{name}: expected lo:hi:steps with steps >= 1, got {raw:?}"));
            Vec::new()
        }
    }
}

fn l_range(raw: &Option<String>, errors: &mut Vec<String>) -> Vec<usize> {
    let ls = match raw {
        Some(raw) => parse_list("l-range", raw, errors),
        None => DEFAULT_L_RANGE.to_vec(),
    };
    if ls.contains(&0) {
        errors.push("--l-range: block sizes must be positive".into());
    }
    if ls.windows(2).any(|w| w[1] <= w[0]) {
        errors.push("--l-range: block sizes must be strictly increasing".into());
    }
    if ls.len() < lrk_core::scaling::MIN_FIT_POINTS {
        errors.push(format!(
            "--l-range: a fit needs at least {} block sizes",
            lrk_core::scaling::MIN_FIT_POINTS
        ));
    }
    ls
}

fn check_params(label: &str, n: usize, mu: f64, delta: f64, alpha: f64, errors: &mut Vec<String>) {
    if let Err(e) = ModelParams::new(n, mu, delta, alpha) {
        errors.push(format!("{label}: {e}"));
    }
}

fn check_fits(ls: &[usize], blocks: usize, n: usize, errors: &mut Vec<String>) {
    if let Some(&max) = ls.iter().max() {
        if blocks * max > n {
            errors.push(format!(
                "{blocks} blocks of L = {max} do not fit in N = {n} sites"
            ));
        }
    }
}

/// Worker count from the flag, then `LRK_WORKERS`, then the CPU count.
pub fn resolve_workers(flag: Option<usize>, env: Option<String>, errors: &mut Vec<String>) -> usize {
    let requested = match (flag, env) {
        (Some(w), _) => Some(w),
        (None, Some(raw)) => match raw.trim().parse::<usize>() {
            Ok(w) => Some(w),
            Err(_) => {
                errors.push(format!("LRK_WORKERS: cannot parse {raw:?}"));
                None
            }
        },
        (None, None) => None,
    };
    match requested {
        Some(0) => {
            errors.push("worker count must be positive".into());
            1
        }
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    }
}

impl Cli {
    /// Validates everything up front and reports all problems together.
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let mut errors = Vec::new();
        let workers = resolve_workers(self.workers, std::env::var("LRK_WORKERS").ok(), &mut errors);
        let run = match &self.command {
            Command::Ground(a) => {
                check_params("model", a.n, a.mu, a.delta, a.alpha, &mut errors);
                let ls = l_range(&a.l_range, &mut errors);
                if let Some(&max) = ls.iter().max() {
                    if max >= a.n {
                        errors.push(format!("block size {max} must be below N = {}", a.n));
                    }
                }
                RunConfig::Ground {
                    n: a.n,
                    alpha: a.alpha,
                    mu: a.mu,
                    delta: a.delta,
                    l_range: ls,
                }
            }
            Command::QuenchSweep(a) => {
                check_params("initial state", a.n, a.mu_i, a.delta_i, a.alpha, &mut errors);
                let mu_f: Vec<f64> = parse_list("mu-f", &a.mu_f, &mut errors);
                for &m in &mu_f {
                    check_params(&format!("postquench mu_f = {m}"), a.n, m, a.delta_f, a.alpha, &mut errors);
                }
                if a.l == 0 {
                    errors.push("--l must be positive".into());
                }
                check_fits(&[a.l], 3, a.n, &mut errors);
                RunConfig::QuenchSweep {
                    n: a.n,
                    alpha: a.alpha,
                    mu_i: a.mu_i,
                    delta_i: a.delta_i,
                    mu_f,
                    delta_f: a.delta_f,
                    l: a.l,
                }
            }
            Command::PhasePlot(a) => {
                check_params("initial state", a.n, a.mu_i, a.delta_i, a.alpha, &mut errors);
                let mu_f = parse_grid("mu-grid", &a.mu_grid, &mut errors);
                let delta_f = parse_grid("delta-grid", &a.delta_grid, &mut errors);
                let measure = match a.measure.as_str() {
                    "mi" => Measure::MutualInfo,
                    "negativity" => Measure::Negativity,
                    "tmi" => {
                        errors.push("--measure tmi has no scaling fit; use quench-sweep for TMI".into());
                        Measure::MutualInfo
                    }
                    other => {
                        errors.push(format!("--measure: unknown measure {other:?}"));
                        Measure::MutualInfo
                    }
                };
                let ls = l_range(&a.l_range, &mut errors);
                check_fits(&ls, 2, a.n, &mut errors);
                RunConfig::PhasePlot {
                    n: a.n,
                    alpha: a.alpha,
                    mu_i: a.mu_i,
                    delta_i: a.delta_i,
                    mu_f,
                    delta_f,
                    measure,
                    l_range: ls,
                }
            }
            Command::OracleCheck(a) => {
                if a.n < 4 || a.n % 2 != 0 || a.n > lrk_core::oracle::MAX_SITES {
                    errors.push(format!(
                        "--n: oracle chains must be even with 4 <= N <= {}, got {}",
                        lrk_core::oracle::MAX_SITES,
                        a.n
                    ));
                }
                RunConfig::OracleCheck {
                    sizes: (4..=a.n.min(lrk_core::oracle::MAX_SITES)).step_by(2).collect(),
                    samples: a.samples,
                    seed: a.seed,
                    corrupt_sign: a.corrupt_sign,
                }
            }
        };
        if errors.is_empty() {
            Ok(Resolved { run, workers })
        } else {
            Err(CliError::Config(errors))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(args: &[&str]) -> Result<Resolved, CliError> {
        let mut full = vec!["lrk"];
        full.extend_from_slice(args);
        Cli::try_parse_from(full).unwrap().resolve()
    }

    #[test]
    fn grid_parsing() {
        let mut errors = Vec::new();
        assert_eq!(parse_grid("g", "-2:2:5", &mut errors), vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert!(errors.is_empty());
        parse_grid("g", "1:2", &mut errors);
        parse_grid("g", "1:x:3", &mut errors);
        parse_grid("g", "2:1:3", &mut errors);
        assert_eq!(errors.len(), 3);
    }

    #[test]
    fn errors_are_aggregated() {
        let err = resolve(&[
            "phase-plot",
            "--n",
            "7",
            "--mu-grid",
            "0:1",
            "--measure",
            "tmi",
            "--l-range",
            "8,4",
        ])
        .unwrap_err();
        let CliError::Config(errors) = err else { panic!() };
        assert!(errors.len() >= 4, "{errors:?}");
    }

    #[test]
    fn defaults_resolve() {
        for cmd in ["ground", "quench-sweep", "phase-plot", "oracle-check"] {
            assert!(resolve(&[cmd]).is_ok(), "{cmd}");
        }
    }

    #[test]
    fn negative_values_parse() {
        let r = resolve(&["quench-sweep", "--delta-i", "-1.5", "--mu-f", "-0.5,0.5"]).unwrap();
        let RunConfig::QuenchSweep { delta_i, mu_f, .. } = r.run else { panic!() };
        assert_eq!(delta_i, -1.5);
        assert_eq!(mu_f, vec![-0.5, 0.5]);
    }

    #[test]
    fn oracle_size_guard() {
        assert!(resolve(&["oracle-check", "--n", "12"]).is_err());
        let r = resolve(&["oracle-check", "--n", "10"]).unwrap();
        let RunConfig::OracleCheck { sizes, .. } = r.run else { panic!() };
        assert_eq!(sizes, vec![4, 6, 8, 10]);
    }

    #[test]
    fn workers_fallback() {
        let mut errors = Vec::new();
        assert_eq!(resolve_workers(Some(3), Some("5".into()), &mut errors), 3);
        assert_eq!(resolve_workers(None, Some("5".into()), &mut errors), 5);
        assert!(resolve_workers(None, None, &mut errors) >= 1);
        assert!(errors.is_empty());
        resolve_workers(None, Some("many".into()), &mut errors);
        resolve_workers(Some(0), None, &mut errors);
        assert_eq!(errors.len(), 2);
    }

    #[test]
    fn sweep_blocks_must_fit() {
        assert!(resolve(&["quench-sweep", "--n", "100", "--l", "40"]).is_err());
        assert!(resolve(&["quench-sweep", "--n", "120", "--l", "40"]).is_ok());
    }
}
