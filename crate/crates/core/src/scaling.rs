//! Effective central charges from logarithmic scaling, and phase scans over
//! the post-quench `(mu, delta)` plane.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlators::{
    build_correlation_matrix, block, ground_correlators, QuenchModes, QuenchProtocol,
};
use crate::entanglement::{logneg_upper_bound, mutual_information, von_neumann_entropy};
use crate::error::{LrkError, Result};
use crate::model::{ModelParams, PairingProfile};

/// Block sizes used for stationary and ground-state fits.
pub const DEFAULT_L_RANGE: [usize; 7] = [8, 12, 16, 24, 32, 48, 64];

/// Fits with `R^2` below this are flagged as low confidence.
pub const LOW_CONFIDENCE_R2: f64 = 0.9;

pub const MIN_FIT_POINTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Ordinary least squares `y = slope x + intercept`.
///
/// `R^2` is clamped to `[0, 1]`. Data with no spread in `y` fits perfectly.
pub fn ols(xs: &[f64], ys: &[f64]) -> LineFit {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    let mut ss = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let r = y - (slope * x + intercept);
        ss_res += r * r;
        ss_tot += (y - my) * (y - my);
        ss += y * y;
    }
    // spread at roundoff level counts as none
    let r_squared = if ss_tot <= 1e-28 * ss.max(1.0) {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    LineFit {
        slope,
        intercept,
        r_squared,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Entropy,
    MutualInfo,
    Negativity,
}

impl Measure {
    pub fn divisor(self) -> f64 {
        match self {
            Measure::Entropy | Measure::MutualInfo => 3.0,
            Measure::Negativity => 4.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Measure::Entropy => "entropy",
            Measure::MutualInfo => "mi",
            Measure::Negativity => "negativity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Abscissa {
    LnL,
    /// `ln[(N/pi) sin(pi L / N)]` for a periodic chain of `N` sites.
    Chord { n: usize },
}

impl Abscissa {
    pub fn at(self, l: usize) -> f64 {
        match self {
            Abscissa::LnL => (l as f64).ln(),
            Abscissa::Chord { n } => {
                let n = n as f64;
                (n / PI * (PI * l as f64 / n).sin()).ln()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub c_eff: f64,
    pub divisor: f64,
}

impl ScalingFit {
    pub fn low_confidence(&self) -> bool {
        self.r_squared < LOW_CONFIDENCE_R2
    }
}

pub fn fit_log_scaling(points: &[(usize, f64)], measure: Measure, abscissa: Abscissa) -> Result<ScalingFit> {
    if points.len() < MIN_FIT_POINTS {
        return Err(LrkError::TooFewPoints {
            needed: MIN_FIT_POINTS,
            got: points.len(),
        });
    }
    if points.windows(2).any(|w| w[1].0 <= w[0].0) || points[0].0 == 0 {
        return Err(LrkError::InvalidParams(
            "block sizes must be positive, distinct and increasing".into(),
        ));
    }
    if let Abscissa::Chord { n } = abscissa {
        if points.last().unwrap().0 >= n {
            return Err(LrkError::InvalidParams(format!(
                "chord abscissa needs L < N = {n}"
            )));
        }
    }
    let xs: Vec<f64> = points.iter().map(|&(l, _)| abscissa.at(l)).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, y)| y).collect();
    let line = ols(&xs, &ys);
    let divisor = measure.divisor();
    Ok(ScalingFit {
        slope: line.slope,
        intercept: line.intercept,
        r_squared: line.r_squared,
        c_eff: line.slope * divisor,
        divisor,
    })
}

fn check_l_range(ls: &[usize], n: usize, blocks: usize) -> Result<usize> {
    let max = ls.iter().copied().max().ok_or_else(|| {
        LrkError::InvalidParams("empty L range".into())
    })?;
    if blocks * max > n {
        return Err(LrkError::InvalidParams(format!(
            "{blocks} blocks of L = {max} exceed N = {n}"
        )));
    }
    Ok(max)
}

/// Entanglement entropy of a block of `l` sites at each `l`.
pub fn ground_entropies(p: &ModelParams, ls: &[usize]) -> Result<Vec<(usize, f64)>> {
    let max = check_l_range(ls, p.n() - 1, 1)?;
    let table = ground_correlators(p, max.max(1))?;
    ls.iter()
        .map(|&l| {
            let w = build_correlation_matrix(&table, &block(0, l))?;
            Ok((l, von_neumann_entropy(&w)?))
        })
        .collect()
}

/// Ground-state entropy fit against the chord length.
pub fn ground_state_fit(p: &ModelParams, ls: &[usize]) -> Result<ScalingFit> {
    let points = ground_entropies(p, ls)?;
    fit_log_scaling(&points, Measure::Entropy, Abscissa::Chord { n: p.n() })
}

fn stationary_points_with(modes: &QuenchModes, measure: Measure, ls: &[usize]) -> Result<Vec<(usize, f64)>> {
    let n = modes.pre().n();
    let max = check_l_range(ls, n, 2)?;
    let table = modes.stationary((2 * max - 1).min(n - 1))?;
    ls.iter()
        .map(|&l| {
            let v = match measure {
                Measure::MutualInfo => mutual_information(&table, l)?,
                Measure::Negativity => logneg_upper_bound(&table, l)?,
                Measure::Entropy => {
                    von_neumann_entropy(&build_correlation_matrix(&table, &block(0, l))?)?
                }
            };
            Ok((l, v))
        })
        .collect()
}

/// Measure evaluated on the stationary state at each block size.
pub fn stationary_points(q: &QuenchProtocol, measure: Measure, ls: &[usize]) -> Result<Vec<(usize, f64)>> {
    stationary_points_with(&QuenchModes::new(q)?, measure, ls)
}

/// Stationary-state fit of `measure` against `ln L`.
pub fn stationary_c_eff(q: &QuenchProtocol, measure: Measure, ls: &[usize]) -> Result<ScalingFit> {
    let points = stationary_points(q, measure, ls)?;
    fit_log_scaling(&points, measure, Abscissa::LnL)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseCell {
    pub mu_f: f64,
    pub delta_f: f64,
    pub fit: std::result::Result<ScalingFit, LrkError>,
}

/// One fit per `(mu_f, delta_f)` cell, ordered by `mu_f` then `delta_f`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    pub initial: ModelParams,
    pub mu_f: Vec<f64>,
    pub delta_f: Vec<f64>,
    pub measure: Measure,
    pub ls: Vec<usize>,
    pub cells: Vec<PhaseCell>,
}

impl PhaseGrid {
    pub fn alpha(&self) -> f64 {
        self.initial.alpha()
    }

    pub fn n(&self) -> usize {
        self.initial.n()
    }

    pub fn cell(&self, i_mu: usize, i_delta: usize) -> &PhaseCell {
        &self.cells[i_mu * self.delta_f.len() + i_delta]
    }
}

/// Evenly spaced grid of `steps` points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => vec![],
        1 => vec![lo],
        _ => (0..steps)
            .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
            .collect(),
    }
}

/// Scans the post-quench plane at the initial state's `alpha`.
///
/// Cells run in parallel on the current rayon pool; errors stay in their cell.
pub fn phase_scan(
    initial: &ModelParams,
    mu_f: &[f64],
    delta_f: &[f64],
    measure: Measure,
    ls: &[usize],
) -> Result<PhaseGrid> {
    if mu_f.is_empty() || delta_f.is_empty() {
        return Err(LrkError::InvalidParams("phase scan grids must be nonempty".into()));
    }
    if measure == Measure::Entropy {
        return Err(LrkError::InvalidParams(
            "phase scans support mutual information and negativity".into(),
        ));
    }
    check_l_range(ls, initial.n(), 2)?;
    let profile = PairingProfile::for_params(initial)?;
    let coords: Vec<(f64, f64)> = mu_f
        .iter()
        .flat_map(|&m| delta_f.iter().map(move |&d| (m, d)))
        .collect();
    let cells = coords
        .par_iter()
        .map(|&(m, d)| {
            let fit = initial
                .with_mu_delta(m, d)
                .and_then(|post| QuenchProtocol::new(*initial, post))
                .and_then(|q| QuenchModes::with_profile(&q, &profile))
                .and_then(|modes| stationary_points_with(&modes, measure, ls))
                .and_then(|points| fit_log_scaling(&points, measure, Abscissa::LnL));
            PhaseCell {
                mu_f: m,
                delta_f: d,
                fit,
            }
        })
        .collect();
    Ok(PhaseGrid {
        initial: *initial,
        mu_f: mu_f.to_vec(),
        delta_f: delta_f.to_vec(),
        measure,
        ls: ls.to_vec(),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(slope: f64, offset: f64) -> Vec<(usize, f64)> {
        DEFAULT_L_RANGE
            .iter()
            .map(|&l| (l, slope * (l as f64).ln() + offset))
            .collect()
    }

    #[test]
    fn exact_on_synthetic_data() {
        let fit = fit_log_scaling(&synthetic(1.0 / 3.0, 0.2), Measure::MutualInfo, Abscissa::LnL).unwrap();
        assert!((fit.c_eff - 1.0).abs() < 1e-12);
        assert!((fit.intercept - 0.2).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(fit.c_eff, fit.slope * fit.divisor);
    }

    #[test]
    fn divisor_ratio() {
        let points = synthetic(0.17, -0.4);
        let mi = fit_log_scaling(&points, Measure::MutualInfo, Abscissa::LnL).unwrap();
        let neg = fit_log_scaling(&points, Measure::Negativity, Abscissa::LnL).unwrap();
        let s = fit_log_scaling(&points, Measure::Entropy, Abscissa::LnL).unwrap();
        assert!((neg.c_eff / mi.c_eff - 4.0 / 3.0).abs() < 1e-12);
        assert_eq!(s.divisor, 3.0);
    }

    #[test]
    fn flat_data_fits_with_zero_slope() {
        let points = synthetic(0.0, 0.7);
        let fit = fit_log_scaling(&points, Measure::MutualInfo, Abscissa::LnL).unwrap();
        assert!(fit.slope.abs() < 1e-15);
        assert_eq!(fit.r_squared, 1.0);
    }

    #[test]
    fn noisy_data_is_low_confidence() {
        let points: Vec<(usize, f64)> = DEFAULT_L_RANGE
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, if i % 2 == 0 { 1.0 } else { -1.0 }))
            .collect();
        let fit = fit_log_scaling(&points, Measure::MutualInfo, Abscissa::LnL).unwrap();
        assert!(fit.low_confidence());
        assert!((0.0..=1.0).contains(&fit.r_squared));
    }

    #[test]
    fn rejects_bad_point_sets() {
        let points = synthetic(1.0, 0.0);
        assert!(matches!(
            fit_log_scaling(&points[..3], Measure::MutualInfo, Abscissa::LnL),
            Err(LrkError::TooFewPoints { needed: 4, got: 3 })
        ));
        let mut unsorted = points.clone();
        unsorted.swap(1, 2);
        assert!(fit_log_scaling(&unsorted, Measure::MutualInfo, Abscissa::LnL).is_err());
        assert!(fit_log_scaling(&points, Measure::Entropy, Abscissa::Chord { n: 64 }).is_err());
    }

    #[test]
    fn chord_reduces_to_log_for_small_l() {
        let a = Abscissa::Chord { n: 1_000_000 };
        assert!((a.at(10) - 10f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn gapped_ground_state_has_no_log_growth() {
        let p = ModelParams::new(256, 2.0, 0.0, 30.0).unwrap();
        let fit = ground_state_fit(&p, &[8, 12, 16, 24, 32]).unwrap();
        assert!(fit.c_eff.abs() < 1e-8);
    }

    #[test]
    fn linspace_endpoints() {
        let g = linspace(-2.0, 2.0, 21);
        assert_eq!(g.len(), 21);
        assert_eq!(g[0], -2.0);
        assert_eq!(g[20], 2.0);
        assert!((g[10]).abs() < 1e-15);
        assert_eq!(linspace(1.0, 5.0, 1), vec![1.0]);
    }

    #[test]
    fn phase_scan_is_deterministic_and_ordered() {
        let initial = ModelParams::new(200, 1.0, -1.0, 2.0).unwrap();
        let mu = [0.5, 1.0];
        let delta = [-1.0, 0.0, 1.0];
        let ls = [4, 6, 8, 12];
        let a = phase_scan(&initial, &mu, &delta, Measure::MutualInfo, &ls).unwrap();
        let b = phase_scan(&initial, &mu, &delta, Measure::MutualInfo, &ls).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.cells.len(), 6);
        assert_eq!(a.cell(1, 2).mu_f, 1.0);
        assert_eq!(a.cell(1, 2).delta_f, 1.0);
        let direct = stationary_c_eff(
            &QuenchProtocol::new(initial, initial.with_mu_delta(1.0, 1.0).unwrap()).unwrap(),
            Measure::MutualInfo,
            &ls,
        )
        .unwrap();
        assert_eq!(a.cell(1, 2).fit.as_ref().unwrap(), &direct);
    }

    #[test]
    fn phase_scan_records_cell_errors() {
        // with no pairing, mu = 0 puts a zero mode at k = pi/2 when N = 2 mod 4
        let initial = ModelParams::new(10, 1.0, -1.0, 2.0).unwrap();
        let grid = phase_scan(&initial, &[0.0, 1.0], &[0.0], Measure::MutualInfo, &[1, 2, 3, 4, 5]).unwrap();
        assert!(matches!(grid.cell(0, 0).fit, Err(LrkError::DegenerateMode { .. })));
        assert!(grid.cell(1, 0).fit.is_ok());
    }

    #[test]
    fn phase_scan_rejects_empty_grid() {
        let initial = ModelParams::new(40, 1.0, -1.0, 2.0).unwrap();
        assert!(phase_scan(&initial, &[], &[1.0], Measure::MutualInfo, &[1, 2, 3, 4]).is_err());
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn synthetic_fits_are_exact(slope in -2.0f64..2.0, offset in -5.0f64..5.0, n in 200usize..5000) {
            let points: Vec<(usize, f64)> = DEFAULT_L_RANGE
                .iter()
                .map(|&l| (l, slope * Abscissa::Chord { n }.at(l) + offset))
                .collect();
            let fit = fit_log_scaling(&points, Measure::Negativity, Abscissa::Chord { n }).unwrap();
            prop_assert!((fit.slope - slope).abs() < 1e-12);
            prop_assert!((fit.intercept - offset).abs() < 1e-11);
            prop_assert_eq!(fit.c_eff, fit.slope * 4.0);
            prop_assert!((0.0..=1.0).contains(&fit.r_squared));
        }
    }
}
