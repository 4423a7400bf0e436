//! Two-point correlators of ground, time-evolved and stationary states, and
//! subsystem correlation matrices.
//!
//! Every state handled here is Gaussian and translation invariant, so it is
//! fixed by the per-mode Nambu correlation `G_k = <Psi_k Psi_k^dag> =
//! (1 + v_k . sigma) / 2`, where `v_k` is a Bloch vector:
//!
//! * ground state: `v_k = n_k`, the kernel axis;
//! * after a quench at time `t`: the pre-quench axis precessing about the
//!   post-quench axis at angular frequency `2 lambda_f`;
//! * stationary state: the time average, `cos(2 dtheta_k) n_k^f`.
//!
//! Real-space tables follow from `<f_k^dag f_k> = (1 - v_z) / 2` and
//! `<f_k f_{-k}> = (v_x - i v_y) / 2`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LrkError, Result};
use crate::model::{ModeTable, ModelParams, PairingProfile};

/// A sudden quench `pre -> post` on a common chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuenchProtocol {
    pre: ModelParams,
    post: ModelParams,
}

impl QuenchProtocol {
    /// Quench of `(mu, delta)` at fixed `N` and `alpha`.
    pub fn new(pre: ModelParams, post: ModelParams) -> Result<Self> {
        if pre.alpha() != post.alpha() {
            return Err(LrkError::InvalidParams(format!(
                "pre-quench alpha {} differs from post-quench alpha {}",
                pre.alpha(),
                post.alpha()
            )));
        }
        Self::with_alpha_override(pre, post)
    }

    /// Like [`QuenchProtocol::new`] but allows `alpha` to change as well.
    pub fn with_alpha_override(pre: ModelParams, post: ModelParams) -> Result<Self> {
        if pre.n() != post.n() {
            return Err(LrkError::InvalidParams(format!(
                "pre-quench N = {} differs from post-quench N = {}",
                pre.n(),
                post.n()
            )));
        }
        Ok(Self { pre, post })
    }

    pub fn pre(&self) -> &ModelParams {
        &self.pre
    }

    pub fn post(&self) -> &ModelParams {
        &self.post
    }

    pub fn n(&self) -> usize {
        self.pre.n()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CorrelatorSource {
    Ground,
    Stationary,
    Time(f64),
}

/// `C(l) = <f_j^dag f_{j+l}>` and `F(l) = <f_j f_{j+l}>` for `l = 0..=l_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatorTable {
    n: usize,
    hopping: Vec<Complex64>,
    pairing: Vec<Complex64>,
    source: CorrelatorSource,
}

impl CorrelatorTable {
    /// Table from explicit values. `hopping[0]` must be real and `pairing[0]`
    /// zero.
    pub fn from_parts(
        n: usize,
        hopping: Vec<Complex64>,
        pairing: Vec<Complex64>,
        source: CorrelatorSource,
    ) -> Result<Self> {
        if hopping.is_empty() || hopping.len() != pairing.len() {
            return Err(LrkError::InvalidParams(
                "hopping and pairing tables must be non-empty and equally long".into(),
            ));
        }
        if hopping.len() > n {
            return Err(LrkError::InvalidParams(format!(
                "table length {} exceeds chain length {n}",
                hopping.len()
            )));
        }
        if hopping[0].im.abs() > 1e-12 || pairing[0].norm() > 1e-12 {
            return Err(LrkError::InvalidParams(
                "C(0) must be real and F(0) must vanish".into(),
            ));
        }
        Ok(Self {
            n,
            hopping,
            pairing,
            source,
        })
    }

    /// The fermion vacuum: all correlators zero.
    pub fn vacuum(n: usize, l_max: usize) -> Result<Self> {
        let zeros = vec![Complex64::new(0.0, 0.0); l_max + 1];
        Self::from_parts(n, zeros.clone(), zeros, CorrelatorSource::Ground)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l_max(&self) -> usize {
        self.hopping.len() - 1
    }

    pub fn source(&self) -> CorrelatorSource {
        self.source
    }

    pub fn hopping(&self) -> &[Complex64] {
        &self.hopping
    }

    pub fn pairing(&self) -> &[Complex64] {
        &self.pairing
    }

    /// `C(d)` for either sign of `d`, using `C(-l) = conj C(l)`.
    pub fn hopping_at(&self, d: isize) -> Complex64 {
        let v = self.hopping[d.unsigned_abs()];
        if d < 0 {
            v.conj()
        } else {
            v
        }
    }

    /// `F(d)` for either sign of `d`, using `F(-l) = -F(l)`.
    pub fn pairing_at(&self, d: isize) -> Complex64 {
        let v = self.pairing[d.unsigned_abs()];
        if d < 0 {
            -v
        } else {
            v
        }
    }
}

fn check_l_max(n: usize, l_max: usize) -> Result<()> {
    if l_max >= n {
        return Err(LrkError::InvalidParams(format!(
            "l_max = {l_max} must be below N = {n}"
        )));
    }
    Ok(())
}

/// Fourier sums over the lower half of the grid; the mirror mode `-k`
/// contributes through the parity of each Bloch component.
fn table_from_bloch(
    n: usize,
    momenta: &[f64],
    bloch: &[[f64; 3]],
    l_max: usize,
    source: CorrelatorSource,
) -> CorrelatorTable {
    let norm = 1.0 / n as f64;
    let mut hopping = Vec::with_capacity(l_max + 1);
    let mut pairing = Vec::with_capacity(l_max + 1);
    for l in 0..=l_max {
        let mut c = 0.0;
        let mut f = Complex64::new(0.0, 0.0);
        for (k, v) in momenta.iter().zip(bloch) {
            let (s, co) = (k * l as f64).sin_cos();
            // (1 - v_z)/2 is even in k: e^{ikl} + e^{-ikl} = 2 cos(kl)
            c += co * (1.0 - v[2]);
            // (v_x - i v_y)/2 is odd in k: e^{-ikl} - e^{ikl} = -2i sin(kl)
            f += Complex64::new(-v[1], -v[0]) * s;
        }
        hopping.push(Complex64::new(c * norm, 0.0));
        pairing.push(if l == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            f * norm
        });
    }
    CorrelatorTable {
        n,
        hopping,
        pairing,
        source,
    }
}

/// Mode data for both sides of a quench.
#[derive(Debug, Clone)]
pub struct QuenchModes {
    pre: ModeTable,
    post: ModeTable,
}

impl QuenchModes {
    pub fn new(q: &QuenchProtocol) -> Result<Self> {
        if q.post().alpha() == q.pre().alpha() {
            let profile = PairingProfile::for_params(q.pre())?;
            Self::with_profile(q, &profile)
        } else {
            Ok(Self {
                pre: ModeTable::new(q.pre())?,
                post: ModeTable::new(q.post())?,
            })
        }
    }

    /// Reuses a tabulated `g_alpha`; requires equal `alpha` on both sides.
    pub fn with_profile(q: &QuenchProtocol, profile: &PairingProfile) -> Result<Self> {
        Ok(Self {
            pre: ModeTable::with_profile(q.pre(), profile)?,
            post: ModeTable::with_profile(q.post(), profile)?,
        })
    }

    pub fn pre(&self) -> &ModeTable {
        &self.pre
    }

    pub fn post(&self) -> &ModeTable {
        &self.post
    }

    fn stationary_bloch(&self) -> Result<Vec<[f64; 3]>> {
        (0..self.post.len())
            .map(|i| {
                let ni = self.pre.axis(i)?;
                let nf = self.post.axis(i)?;
                let overlap = dot(&ni, &nf);
                Ok(nf.map(|x| x * overlap))
            })
            .collect()
    }

    fn time_bloch(&self, t: f64) -> Result<Vec<[f64; 3]>> {
        (0..self.post.len())
            .map(|i| {
                let ni = self.pre.axis(i)?;
                let nf = self.post.axis(i)?;
                let phi = 2.0 * self.post.lambda()[i] * t;
                let (s, c) = phi.sin_cos();
                let overlap = dot(&ni, &nf);
                let cross = cross(&nf, &ni);
                let mut v = [0.0; 3];
                for a in 0..3 {
                    v[a] = ni[a] * c + cross[a] * s + nf[a] * overlap * (1.0 - c);
                }
                Ok(v)
            })
            .collect()
    }

    pub fn stationary(&self, l_max: usize) -> Result<CorrelatorTable> {
        let n = self.post.n();
        check_l_max(n, l_max)?;
        let bloch = self.stationary_bloch()?;
        Ok(table_from_bloch(
            n,
            self.post.momenta(),
            &bloch,
            l_max,
            CorrelatorSource::Stationary,
        ))
    }

    pub fn at_time(&self, t: f64, l_max: usize) -> Result<CorrelatorTable> {
        let n = self.post.n();
        check_l_max(n, l_max)?;
        if !(t.is_finite() && t >= 0.0) {
            return Err(LrkError::InvalidParams(format!("time {t} must be finite and >= 0")));
        }
        let bloch = self.time_bloch(t)?;
        Ok(table_from_bloch(
            n,
            self.post.momenta(),
            &bloch,
            l_max,
            CorrelatorSource::Time(t),
        ))
    }
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn ground_correlators(p: &ModelParams, l_max: usize) -> Result<CorrelatorTable> {
    check_l_max(p.n(), l_max)?;
    let modes = ModeTable::new(p)?;
    let bloch = (0..modes.len())
        .map(|i| modes.axis(i))
        .collect::<Result<Vec<_>>>()?;
    Ok(table_from_bloch(
        p.n(),
        modes.momenta(),
        &bloch,
        l_max,
        CorrelatorSource::Ground,
    ))
}

pub fn time_correlators(q: &QuenchProtocol, t: f64, l_max: usize) -> Result<CorrelatorTable> {
    QuenchModes::new(q)?.at_time(t, l_max)
}

pub fn stationary_correlators(q: &QuenchProtocol, l_max: usize) -> Result<CorrelatorTable> {
    QuenchModes::new(q)?.stationary(l_max)
}

/// Tolerance on `W - W^dag` accepted by [`CorrelationMatrix::from_matrix`].
pub const HERMITICITY_TOL: f64 = 1e-12;

/// `W = <Psi Psi^dag>` for `Psi = (f_1..f_m, f_1^dag..f_m^dag)` over the sites
/// of a subsystem, i.e. the blocks `[[1 - C^T, F], [F^dag, C]]` with
/// `C_nm = <f_n^dag f_m>` and `F_nm = <f_n f_m>`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    w: DMatrix<Complex64>,
    sites: Vec<usize>,
}

impl CorrelationMatrix {
    /// Wraps an explicit matrix after checking shape and Hermiticity.
    pub fn from_matrix(w: DMatrix<Complex64>, sites: Vec<usize>) -> Result<Self> {
        if w.nrows() != 2 * sites.len() || w.ncols() != w.nrows() {
            return Err(LrkError::InvalidParams(format!(
                "correlation matrix is {}x{}, expected {n}x{n}",
                w.nrows(),
                w.ncols(),
                n = 2 * sites.len()
            )));
        }
        let defect = hermiticity_defect(&w);
        if defect > HERMITICITY_TOL {
            return Err(LrkError::NotHermitian { defect });
        }
        Ok(Self { w, sites })
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.w
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    /// Number of fermionic sites `m`.
    pub fn modes(&self) -> usize {
        self.sites.len()
    }

    /// The `C` block, `C_nm = <f_n^dag f_m>`.
    pub fn hopping_block(&self) -> DMatrix<Complex64> {
        let m = self.modes();
        self.w.view((m, m), (m, m)).into_owned()
    }

    /// The `F` block, `F_nm = <f_n f_m>`.
    pub fn pairing_block(&self) -> DMatrix<Complex64> {
        let m = self.modes();
        self.w.view((0, m), (m, m)).into_owned()
    }

    /// Correlation matrix of the sites at the given positions of this one.
    pub fn restrict(&self, positions: &[usize]) -> Self {
        let m = self.modes();
        let r = positions.len();
        let idx: Vec<usize> = positions
            .iter()
            .copied()
            .chain(positions.iter().map(|p| p + m))
            .collect();
        let w = DMatrix::from_fn(2 * r, 2 * r, |a, b| self.w[(idx[a], idx[b])]);
        Self {
            w,
            sites: positions.iter().map(|&p| self.sites[p]).collect(),
        }
    }

    /// True when every entry is real.
    pub fn is_real(&self) -> bool {
        self.w.iter().all(|z| z.im == 0.0)
    }
}

pub fn hermiticity_defect(w: &DMatrix<Complex64>) -> f64 {
    let mut defect: f64 = 0.0;
    for a in 0..w.nrows() {
        for b in a..w.ncols() {
            defect = defect.max((w[(a, b)] - w[(b, a)].conj()).norm());
        }
    }
    defect
}

pub fn build_correlation_matrix(
    table: &CorrelatorTable,
    sites: &[usize],
) -> Result<CorrelationMatrix> {
    if sites.is_empty() {
        return Err(LrkError::InvalidParams("empty site list".into()));
    }
    if let Some(&s) = sites.iter().find(|&&s| s >= table.n) {
        return Err(LrkError::InvalidParams(format!(
            "site {s} outside a chain of {} sites",
            table.n
        )));
    }
    let lo = *sites.iter().min().unwrap();
    let hi = *sites.iter().max().unwrap();
    if hi - lo > table.l_max() {
        return Err(LrkError::SiteRange {
            needed: hi - lo,
            available: table.l_max(),
        });
    }
    let mut sorted = sites.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != sites.len() {
        return Err(LrkError::InvalidParams("repeated site in site list".into()));
    }

    let m = sites.len();
    let one = Complex64::new(1.0, 0.0);
    let mut w = DMatrix::zeros(2 * m, 2 * m);
    for (a, &sa) in sites.iter().enumerate() {
        for (b, &sb) in sites.iter().enumerate() {
            let d = sb as isize - sa as isize;
            let delta = if a == b { one } else { Complex64::new(0.0, 0.0) };
            // <f_a f_b^dag> = delta - C(s_a - s_b)
            w[(a, b)] = delta - table.hopping_at(-d);
            // <f_a f_b> = F(s_b - s_a)
            w[(a, m + b)] = table.pairing_at(d);
            // <f_a^dag f_b^dag> = conj <f_b f_a> = conj F(s_a - s_b)
            w[(m + a, b)] = table.pairing_at(-d).conj();
            // <f_a^dag f_b> = C(s_b - s_a)
            w[(m + a, m + b)] = table.hopping_at(d);
        }
    }
    Ok(CorrelationMatrix {
        w,
        sites: sites.to_vec(),
    })
}

/// Sites `offset .. offset + len`.
pub fn block(offset: usize, len: usize) -> Vec<usize> {
    (offset..offset + len).collect()
}
