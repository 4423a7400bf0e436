//! Long-range Kitaev chain in momentum space.
//!
//! The chain has `N` sites, nearest-neighbour hopping with `2t = 1`, chemical
//! potential `mu` and a p-wave pairing of strength `delta` decaying as
//! `l^-alpha`. With antiperiodic boundary conditions each momentum pair
//! `(k, 2pi - k)` decouples into a 2x2 Bogoliubov-de Gennes block.
//!
//! Conventions: `f_j = N^{-1/2} sum_k e^{ikj} f_k` and the Nambu spinor
//! `Psi_k = (f_k, f_{-k}^dag)`. In this basis the Hamiltonian reads
//! `H = 1/2 sum_k Psi_k^dag M(k) Psi_k` with
//!
//! ```text
//! M(k) = [ -(mu + cos k)      -i delta g(k) ]
//!        [  i delta g(k)       (mu + cos k) ]
//! ```
//!
//! which is the form the exact Fock-space construction in [`crate::oracle`]
//! reproduces. `M(k) = lambda(k) n(k).sigma` with the unit vector
//! `n(k) = (0, sin 2theta, -cos 2theta)`, where `theta` is the Bogoliubov
//! angle `tan 2theta = delta g / (mu + cos k)`.

use std::f64::consts::PI;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::correlators::QuenchProtocol;
use crate::error::{LrkError, Result};

/// Smallest chain accepted by the momentum-space code.
pub const MIN_SITES: usize = 4;

/// Below this magnitude both entries of a momentum block count as zero.
pub const DEGENERACY_EPS: f64 = 1e-14;

/// One Hamiltonian instance. Energies are in units of `2t = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    n: usize,
    mu: f64,
    delta: f64,
    alpha: f64,
}

impl ModelParams {
    pub fn new(n: usize, mu: f64, delta: f64, alpha: f64) -> Result<Self> {
        let mut problems = Vec::new();
        if n < MIN_SITES {
            problems.push(format!("N = {n} is below the minimum of {MIN_SITES}"));
        }
        if n % 2 != 0 {
            problems.push(format!("N = {n} must be even"));
        }
        if !mu.is_finite() {
            problems.push(format!("mu = {mu} is not finite"));
        }
        if !delta.is_finite() {
            problems.push(format!("delta = {delta} is not finite"));
        }
        if !(alpha.is_finite() && alpha >= 0.0) {
            problems.push(format!("alpha = {alpha} must be finite and >= 0"));
        }
        if problems.is_empty() {
            Ok(Self { n, mu, delta, alpha })
        } else {
            Err(LrkError::InvalidParams(problems.join("; ")))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Same chain and pairing range with new `(mu, delta)`.
    pub fn with_mu_delta(&self, mu: f64, delta: f64) -> Result<Self> {
        Self::new(self.n, mu, delta, self.alpha)
    }
}

/// The antiperiodic momenta `k_n = 2pi (n + 1/2) / N`, in increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    values: Vec<f64>,
}

impl MomentumGrid {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of a grid momentum closest to the soft mode `k = pi`
    /// (the one just below `pi`; its mirror partner is equally close).
    pub fn nearest_to_pi(&self) -> usize {
        self.values.len() / 2 - 1
    }
}

pub fn momentum_grid(n: usize) -> Result<MomentumGrid> {
    if n < MIN_SITES || n % 2 != 0 {
        return Err(LrkError::InvalidParams(format!(
            "momentum grid needs an even N >= {MIN_SITES}, got {n}"
        )));
    }
    let values = (0..n)
        .map(|i| 2.0 * PI * (i as f64 + 0.5) / n as f64)
        .collect();
    Ok(MomentumGrid { values })
}

/// Finite pairing sum `g_alpha(k) = sum_{l=1}^{N-1} sin(k l) / l^alpha`.
pub fn g_alpha(k: f64, alpha: f64, n: usize) -> f64 {
    (1..n)
        .map(|l| {
            let l = l as f64;
            (k * l).sin() * l.powf(-alpha)
        })
        .sum()
}

/// `g_alpha` tabulated on the momentum grid of an `N`-site chain.
///
/// Only the lower half of the grid is summed; the upper half is filled by
/// `g(2pi - k) = -g(k)`, so the antisymmetry holds bit-for-bit.
#[derive(Debug, Clone)]
pub struct PairingProfile {
    n: usize,
    alpha: f64,
    grid: MomentumGrid,
    values: Vec<f64>,
}

impl PairingProfile {
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        let grid = momentum_grid(n)?;
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(LrkError::InvalidParams(format!(
                "alpha = {alpha} must be finite and >= 0"
            )));
        }
        let weights: Vec<f64> = (1..n).map(|l| (l as f64).powf(-alpha)).collect();
        let half = n / 2;
        let mut values = vec![0.0; n];
        for i in 0..half {
            let k = grid.values[i];
            let g: f64 = weights
                .iter()
                .enumerate()
                .map(|(j, w)| (k * (j + 1) as f64).sin() * w)
                .sum();
            values[i] = g;
            values[n - 1 - i] = -g;
        }
        Ok(Self {
            n,
            alpha,
            grid,
            values,
        })
    }

    pub fn for_params(p: &ModelParams) -> Result<Self> {
        Self::new(p.n, p.alpha)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn grid(&self) -> &MomentumGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn matches(&self, p: &ModelParams) -> bool {
        self.n == p.n && self.alpha == p.alpha
    }
}

/// Quasiparticle energy `lambda(k) = sqrt((mu + cos k)^2 + (delta g(k))^2)`.
pub fn dispersion(k: f64, p: &ModelParams) -> f64 {
    let eps = p.mu + k.cos();
    let pairing = p.delta * g_alpha(k, p.alpha, p.n);
    eps.hypot(pairing)
}

fn angle_from_parts(k: f64, eps: f64, pairing: f64) -> Result<f64> {
    if eps.abs() < DEGENERACY_EPS && pairing.abs() < DEGENERACY_EPS {
        return Err(LrkError::DegenerateMode { k, eps, pairing });
    }
    Ok(0.5 * pairing.atan2(eps))
}

/// Bogoliubov angle `theta_k = atan2(delta g(k), mu + cos k) / 2`.
pub fn bogoliubov_angle(k: f64, p: &ModelParams) -> Result<f64> {
    let eps = p.mu + k.cos();
    let pairing = p.delta * g_alpha(k, p.alpha, p.n);
    angle_from_parts(k, eps, pairing)
}

/// The 2x2 Bogoliubov-de Gennes kernel `M(k)` in the basis `(f_k, f_{-k}^dag)`.
pub fn bdg_kernel(k: f64, p: &ModelParams) -> Matrix2<Complex64> {
    let eps = p.mu + k.cos();
    let pairing = p.delta * g_alpha(k, p.alpha, p.n);
    Matrix2::new(
        Complex64::new(-eps, 0.0),
        Complex64::new(0.0, -pairing),
        Complex64::new(0.0, pairing),
        Complex64::new(eps, 0.0),
    )
}

/// `U(theta) = [[cos, -i sin], [-i sin, cos]]`, mapping `(eta_k, eta_{-k}^dag)`
/// to `(f_k, f_{-k}^dag)`.
///
/// With the angle of [`bogoliubov_angle`], `U^dag M U = diag(-lambda, lambda)`;
/// the shifted angle `theta + pi/2` gives `diag(lambda, -lambda)`. Both label
/// the same pair of quasiparticles, swapped as `eta_k <-> eta_{-k}^dag`.
pub fn bogoliubov_rotation(theta: f64) -> Matrix2<Complex64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(
        Complex64::new(c, 0.0),
        Complex64::new(0.0, -s),
        Complex64::new(0.0, -s),
        Complex64::new(c, 0.0),
    )
}

/// Per-mode data of one Hamiltonian on the lower half of the momentum grid,
/// `k in (0, pi)`. The partner `2pi - k` is implied by symmetry: `eps` and
/// `lambda` are even, `pairing` and the angle are odd.
#[derive(Debug, Clone)]
pub struct ModeTable {
    n: usize,
    k: Vec<f64>,
    eps: Vec<f64>,
    pairing: Vec<f64>,
    lambda: Vec<f64>,
}

impl ModeTable {
    pub fn new(p: &ModelParams) -> Result<Self> {
        let profile = PairingProfile::for_params(p)?;
        Self::with_profile(p, &profile)
    }

    pub fn with_profile(p: &ModelParams, profile: &PairingProfile) -> Result<Self> {
        if !profile.matches(p) {
            return Err(LrkError::InvalidParams(format!(
                "pairing profile (N = {}, alpha = {}) does not match parameters (N = {}, alpha = {})",
                profile.n, profile.alpha, p.n, p.alpha
            )));
        }
        let half = p.n / 2;
        let k: Vec<f64> = profile.grid.values[..half].to_vec();
        let eps: Vec<f64> = k.iter().map(|k| p.mu + k.cos()).collect();
        let pairing: Vec<f64> = profile.values[..half]
            .iter()
            .map(|g| p.delta * g)
            .collect();
        let lambda = eps
            .iter()
            .zip(&pairing)
            .map(|(e, d)| e.hypot(*d))
            .collect();
        Ok(Self {
            n: p.n,
            k,
            eps,
            pairing,
            lambda,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of tabulated modes, `N / 2`.
    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    pub fn momenta(&self) -> &[f64] {
        &self.k
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn eps(&self) -> &[f64] {
        &self.eps
    }

    pub fn pairing(&self) -> &[f64] {
        &self.pairing
    }

    pub fn angle(&self, i: usize) -> Result<f64> {
        angle_from_parts(self.k[i], self.eps[i], self.pairing[i])
    }

    /// Unit vector `n(k) = (0, sin 2theta, -cos 2theta)` of the kernel.
    pub fn axis(&self, i: usize) -> Result<[f64; 3]> {
        let two_theta = 2.0 * self.angle(i)?;
        let (s, c) = two_theta.sin_cos();
        Ok([0.0, s, -c])
    }

    /// Ground-state energy `-1/2 sum_k lambda(k)` over the full grid.
    pub fn ground_energy(&self) -> f64 {
        // each tabulated mode stands for itself and its mirror partner
        -self.lambda.iter().sum::<f64>()
    }
}

/// Occupation `<eta_k^dag eta_k>` of post-quench quasiparticles in the
/// stationary state, from the closed form in `(mu, delta, g, lambda)`.
pub fn occupation_probability(k: f64, q: &QuenchProtocol) -> Result<f64> {
    let (pre, post) = (q.pre(), q.post());
    // validates both blocks
    bogoliubov_angle(k, pre)?;
    bogoliubov_angle(k, post)?;
    let g_pre = g_alpha(k, pre.alpha, pre.n);
    let g_post = if post.alpha == pre.alpha {
        g_pre
    } else {
        g_alpha(k, post.alpha, post.n)
    };
    let eps_i = pre.mu + k.cos();
    let eps_f = post.mu + k.cos();
    let lam_i = eps_i.hypot(pre.delta * g_pre);
    let lam_f = eps_f.hypot(post.delta * g_post);
    let overlap = (eps_f * eps_i + post.delta * pre.delta * g_pre * g_post) / (lam_f * lam_i);
    Ok((0.5 * (1.0 - overlap)).clamp(0.0, 1.0))
}

/// Same quantity as [`occupation_probability`], via `(1 - cos 2 dtheta) / 2`.
pub fn occupation_from_angles(k: f64, q: &QuenchProtocol) -> Result<f64> {
    let d = bogoliubov_angle(k, q.post())? - bogoliubov_angle(k, q.pre())?;
    Ok(0.5 * (1.0 - (2.0 * d).cos()))
}

/// Soft-mode occupation at the grid momentum closest to `pi`.
pub fn soft_mode_occupation(q: &QuenchProtocol) -> Result<f64> {
    let grid = momentum_grid(q.pre().n)?;
    occupation_probability(grid.values()[grid.nearest_to_pi()], q)
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn occupation_closed_form_matches_angles(
            half in 2usize..40,
            mu_i in -2.0f64..2.0, delta_i in -2.0f64..2.0,
            mu_f in -2.0f64..2.0, delta_f in -2.0f64..2.0,
            alpha in 0.0f64..3.0, idx in 0usize..1000,
        ) {
            let n = 2 * half;
            let pre = ModelParams::new(n, mu_i, delta_i, alpha).unwrap();
            let post = ModelParams::new(n, mu_f, delta_f, alpha).unwrap();
            let q = QuenchProtocol::new(pre, post).unwrap();
            let k = momentum_grid(n).unwrap().values()[idx % n];
            let (Ok(a), Ok(b)) = (occupation_probability(k, &q), occupation_from_angles(k, &q)) else {
                return Ok(());
            };
            prop_assert!((a - b).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&a));
            prop_assert!(dispersion(k, &post) >= 0.0);
        }
    }
}
