//! Brute-force Fock-space reference for short chains.
//!
//! Basis states are bit strings with bit `j` the occupation of site `j`, and
//! `|n> = (f_0^dag)^n_0 (f_1^dag)^n_1 ... |0>`, so `f_j` carries the string
//! `(-1)^(n_0 + ... + n_{j-1})`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::correlators::{
    block, build_correlation_matrix, ground_correlators, hermiticity_defect, stationary_correlators,
    time_correlators, CorrelationMatrix, CorrelatorTable, QuenchProtocol, HERMITICITY_TOL,
};
use crate::entanglement::{mutual_information, negativity_bound, to_majorana, von_neumann_entropy};
use crate::error::{LrkError, Result};
use crate::model::{ModeTable, ModelParams};

pub const MAX_SITES: usize = 10;
pub const MAX_BLOCK: usize = 6;

/// Ground states closer than this to the first excitation are rejected.
const GAP_TOL: f64 = 1e-9;

/// `f_j |s>` as `(sign, s')`, or `None` when site `j` is empty.
pub fn annihilate(s: usize, j: usize) -> Option<(f64, usize)> {
    if s >> j & 1 == 0 {
        return None;
    }
    Some((string_sign(s, j), s ^ (1 << j)))
}

/// `f_j^dag |s>` as `(sign, s')`, or `None` when site `j` is occupied.
pub fn create(s: usize, j: usize) -> Option<(f64, usize)> {
    if s >> j & 1 == 1 {
        return None;
    }
    Some((string_sign(s, j), s | (1 << j)))
}

fn string_sign(s: usize, j: usize) -> f64 {
    if (s & ((1 << j) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Create(usize),
    Annihilate(usize),
}

/// Applies a product of ladder operators, rightmost first.
fn apply(ops: &[Op], s: usize) -> Option<(f64, usize)> {
    let mut sign = 1.0;
    let mut state = s;
    for op in ops.iter().rev() {
        let (sg, next) = match *op {
            Op::Create(j) => create(state, j)?,
            Op::Annihilate(j) => annihilate(state, j)?,
        };
        sign *= sg;
        state = next;
    }
    Some((sign, state))
}

fn check_sites(n: usize) -> Result<()> {
    if n > MAX_SITES {
        return Err(LrkError::InvalidParams(format!(
            "oracle supports at most {MAX_SITES} sites, got {n}"
        )));
    }
    Ok(())
}

/// Real-space Hamiltonian on the full `2^N` Fock space.
#[derive(Debug, Clone)]
pub struct FockHamiltonian {
    n: usize,
    matrix: DMatrix<f64>,
}

impl FockHamiltonian {
    /// Every term of the chain, with sites past `N` wrapped back and the
    /// antiperiodic sign attached.
    pub fn new(p: &ModelParams) -> Result<Self> {
        let n = p.n();
        check_sites(n)?;
        let dim = 1usize << n;
        let mut matrix = DMatrix::zeros(dim, dim);
        let mut add = |coeff: f64, ops: &[Op]| {
            for s in 0..dim {
                if let Some((sign, t)) = apply(ops, s) {
                    matrix[(t, s)] += coeff * sign;
                }
            }
        };
        let wrap = |site: usize| if site >= n { (site - n, -1.0) } else { (site, 1.0) };
        let hop = 0.5;
        for j in 0..n {
            let (next, sign) = wrap(j + 1);
            add(-hop * sign, &[Op::Create(j), Op::Annihilate(next)]);
            add(-hop * sign, &[Op::Create(next), Op::Annihilate(j)]);
            add(-p.mu(), &[Op::Create(j), Op::Annihilate(j)]);
            for l in 1..n {
                let (other, sign) = wrap(j + l);
                let c = 0.5 * p.delta() * sign / (l as f64).powf(p.alpha());
                add(c, &[Op::Create(other), Op::Create(j)]);
                add(-c, &[Op::Annihilate(other), Op::Annihilate(j)]);
            }
        }
        for s in 0..dim {
            matrix[(s, s)] += 0.5 * p.mu() * n as f64;
        }
        Ok(Self { n, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Largest `|H - H^T|` entry.
    pub fn symmetry_defect(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).amax()
    }

    /// Largest matrix element between states of different fermion parity.
    pub fn parity_violation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (idx, v) in self.matrix.iter().enumerate() {
            let (r, c) = (idx % self.matrix.nrows(), idx / self.matrix.nrows());
            if (r.count_ones() + c.count_ones()) % 2 == 1 {
                worst = worst.max(v.abs());
            }
        }
        worst
    }

    pub fn spectrum(&self) -> FockSpectrum {
        let eig = SymmetricEigen::new(self.matrix.clone());
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
        let energies = DVector::from_iterator(order.len(), order.iter().map(|&i| eig.eigenvalues[i]));
        let vectors = DMatrix::from_fn(order.len(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
        FockSpectrum {
            n: self.n,
            energies,
            vectors,
        }
    }
}

/// Eigenpairs of a [`FockHamiltonian`] in ascending order.
#[derive(Debug, Clone)]
pub struct FockSpectrum {
    n: usize,
    energies: DVector<f64>,
    vectors: DMatrix<f64>,
}

impl FockSpectrum {
    pub fn energies(&self) -> &DVector<f64> {
        &self.energies
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    pub fn ground_state(&self) -> Result<DVector<Complex64>> {
        let gap = self.energies[1] - self.energies[0];
        if gap < GAP_TOL {
            return Err(LrkError::Oracle(format!("degenerate ground state, gap {gap:e}")));
        }
        Ok(self.vectors.column(0).map(|x| Complex64::new(x, 0.0)))
    }

    /// `exp(-iHt) psi`.
    pub fn evolve(&self, psi: &DVector<Complex64>, t: f64) -> DVector<Complex64> {
        let v = self.vectors.map(|x| Complex64::new(x, 0.0));
        let mut coeffs = v.transpose() * psi;
        for (c, e) in coeffs.iter_mut().zip(self.energies.iter()) {
            *c *= Complex64::from_polar(1.0, -e * t);
        }
        v * coeffs
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

pub fn exact_ground_state(p: &ModelParams) -> Result<(f64, DVector<Complex64>)> {
    let spectrum = FockHamiltonian::new(p)?.spectrum();
    Ok((spectrum.ground_energy(), spectrum.ground_state()?))
}

/// Prequench ground state evolved for time `t` with the postquench Hamiltonian.
pub fn exact_quench_state(q: &QuenchProtocol, t: f64) -> Result<DVector<Complex64>> {
    let (_, psi0) = exact_ground_state(q.pre())?;
    let post = FockHamiltonian::new(q.post())?.spectrum();
    Ok(post.evolve(&psi0, t))
}

fn expectation(psi: &DVector<Complex64>, ops: &[Op]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (s, amp) in psi.iter().enumerate() {
        if amp.norm_sqr() == 0.0 {
            continue;
        }
        if let Some((sign, t)) = apply(ops, s) {
            acc += psi[t].conj() * amp * sign;
        }
    }
    acc
}

/// `C(l) = <f_0^dag f_l>` and `F(l) = <f_0 f_l>` for `l = 0..=l_max`.
pub fn exact_correlators(psi: &DVector<Complex64>, n: usize, l_max: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let hopping = (0..=l_max)
        .map(|l| expectation(psi, &[Op::Create(0), Op::Annihilate(l)]))
        .collect();
    let pairing = (0..=l_max)
        .map(|l| {
            if l == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                expectation(psi, &[Op::Annihilate(0), Op::Annihilate(l)])
            }
        })
        .collect();
    debug_assert!(l_max < n);
    (hopping, pairing)
}

/// Largest deviation between exact correlators and a table, over all
/// separations and starting sites.
pub fn correlator_deviation(psi: &DVector<Complex64>, n: usize, table: &CorrelatorTable) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..n {
        for l in 0..=table.l_max() {
            if j + l >= n {
                break;
            }
            let c = expectation(psi, &[Op::Create(j), Op::Annihilate(j + l)]);
            worst = worst.max((c - table.hopping()[l]).norm());
            if l > 0 {
                let f = expectation(psi, &[Op::Annihilate(j), Op::Annihilate(j + l)]);
                worst = worst.max((f - table.pairing()[l]).norm());
            }
        }
    }
    worst
}

/// Reduced density matrix of the contiguous block `sites`, with bit `i` of
/// the row index the occupation of `sites[i]`.
pub fn exact_rdm(psi: &DVector<Complex64>, n: usize, sites: &[usize]) -> Result<DMatrix<Complex64>> {
    let m = sites.len();
    if m == 0 || m > MAX_BLOCK.max(n) {
        return Err(LrkError::InvalidParams(format!("block of {m} sites not supported")));
    }
    if sites.windows(2).any(|w| w[1] != w[0] + 1) || sites[m - 1] >= n {
        return Err(LrkError::InvalidParams(format!(
            "exact RDM needs a contiguous block inside the chain, got {sites:?}"
        )));
    }
    if psi.len() != 1 << n {
        return Err(LrkError::InvalidParams("state dimension does not match chain".into()));
    }
    let a = sites[0];
    let mask = (1usize << m) - 1;
    let low = (1usize << a) - 1;
    let mut amplitudes = DMatrix::zeros(1 << m, 1 << (n - m));
    for (s, amp) in psi.iter().enumerate() {
        let inner = (s >> a) & mask;
        let env = (s & low) | ((s >> (a + m)) << a);
        amplitudes[(inner, env)] = *amp;
    }
    Ok(&amplitudes * amplitudes.adjoint())
}

fn hermitian_eigenvalues(rho: &DMatrix<Complex64>) -> DVector<f64> {
    let h = (rho + rho.adjoint()) * Complex64::new(0.5, 0.0);
    h.symmetric_eigenvalues()
}

/// `-Tr rho ln rho`.
pub fn density_entropy(rho: &DMatrix<Complex64>) -> f64 {
    hermitian_eigenvalues(rho)
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum()
}

/// Ladder operators on `m` modes as dense matrices.
fn ladder_matrices(m: usize) -> Vec<DMatrix<Complex64>> {
    let dim = 1 << m;
    (0..m)
        .map(|j| {
            let mut f = DMatrix::zeros(dim, dim);
            for s in 0..dim {
                if let Some((sign, t)) = annihilate(s, j) {
                    f[(t, s)] = Complex64::new(sign, 0.0);
                }
            }
            f
        })
        .collect()
}

/// Explicit density matrix of a fermionic Gaussian state.
#[derive(Debug, Clone)]
pub struct GaussianStateExplicit {
    modes: usize,
    rho: DMatrix<Complex64>,
}

impl GaussianStateExplicit {
    pub fn rho(&self) -> &DMatrix<Complex64> {
        &self.rho
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Correlation matrix of this state in the same block layout as
    /// [`CorrelationMatrix`].
    pub fn correlation_matrix(&self) -> DMatrix<Complex64> {
        density_correlation_matrix(&self.rho, self.modes)
    }
}

/// `W` measured on an explicit density matrix of `m` modes.
pub fn density_correlation_matrix(rho: &DMatrix<Complex64>, m: usize) -> DMatrix<Complex64> {
    let f = ladder_matrices(m);
    let fd: Vec<_> = f.iter().map(|x| x.adjoint()).collect();
    let ev = |op: DMatrix<Complex64>| (rho * op).trace();
    DMatrix::from_fn(2 * m, 2 * m, |r, c| {
        let left = if r < m { &f[r] } else { &fd[r - m] };
        let right = if c < m { &fd[c] } else { &f[c - m] };
        ev(left * right)
    })
}

/// Builds `rho = 2^-m prod_j (1 - i nu_j b_j b'_j)` from the canonical form of
/// the Majorana covariance, where `b = x.c`, `b' = y.c` and `gamma x = nu y`.
pub fn gaussian_state_from_covariance(w: &CorrelationMatrix) -> Result<GaussianStateExplicit> {
    let m = w.modes();
    if m > MAX_BLOCK {
        return Err(LrkError::InvalidParams(format!(
            "explicit Gaussian states support at most {MAX_BLOCK} modes"
        )));
    }
    let gamma = to_majorana(w);
    let i = Complex64::new(0.0, 1.0);
    let ig = gamma.matrix().map(|x| i * x);
    let eig = ig.symmetric_eigen();
    let mut order: Vec<usize> = (0..2 * m).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());

    let f = ladder_matrices(m);
    let majoranas: Vec<DMatrix<Complex64>> = f
        .iter()
        .flat_map(|fj| {
            let fd = fj.adjoint();
            [fj + &fd, (fj - &fd) * (-i)]
        })
        .collect();
    let dim = 1 << m;
    let id = DMatrix::<Complex64>::identity(dim, dim);
    let mut rho = id.clone() * Complex64::new(1.0 / dim as f64, 0.0);
    for &k in order.iter().take(m) {
        let nu = eig.eigenvalues[k];
        if nu > 1.0 + 1e-8 {
            return Err(LrkError::NonPhysicalSpectrum { value: nu });
        }
        let v = eig.eigenvectors.column(k);
        let sqrt2 = std::f64::consts::SQRT_2;
        let mut b = DMatrix::zeros(dim, dim);
        let mut bp = DMatrix::zeros(dim, dim);
        for (a, c) in majoranas.iter().enumerate() {
            b += c * Complex64::new(sqrt2 * v[a].re, 0.0);
            bp += c * Complex64::new(sqrt2 * v[a].im, 0.0);
        }
        rho = rho * (&id - b * bp * (i * nu.min(1.0)));
    }
    Ok(GaussianStateExplicit { modes: m, rho })
}

/// Bit layout helper for a bipartition of `m1 + m2` modes with the first
/// `m1` bits belonging to `A1`.
fn split(idx: usize, m1: usize) -> (usize, usize) {
    (idx & ((1 << m1) - 1), idx >> m1)
}

fn trace_norm(x: &DMatrix<Complex64>) -> f64 {
    hermitian_eigenvalues(x).iter().map(|e| e.abs()).sum()
}

/// `ln ||rho^T2||` with the plain partial transpose of the last modes in the
/// occupation basis.
pub fn exact_log_negativity(rho: &DMatrix<Complex64>, m1: usize) -> f64 {
    let dim = rho.nrows();
    let pt = DMatrix::from_fn(dim, dim, |r, c| {
        let (r1, r2) = split(r, m1);
        let (c1, c2) = split(c, m1);
        rho[(r1 | (c2 << m1), c1 | (r2 << m1))]
    });
    trace_norm(&pt).ln()
}

/// `ln ||rho^R2||` with the fermionic partial transpose, which attaches the
/// phase `i^[(t2 + t2') mod 2] (-1)^((t1 + t1')(t2 + t2'))` where `t` counts
/// particles of a part in the ket and `t'` in the bra.
pub fn fermionic_log_negativity(rho: &DMatrix<Complex64>, m1: usize) -> f64 {
    let dim = rho.nrows();
    let count = |x: usize| x.count_ones() as usize;
    let pt = DMatrix::from_fn(dim, dim, |r, c| {
        let (r1, r2) = split(r, m1);
        let (c1, c2) = split(c, m1);
        // source element |r1, c2><c1, r2|
        let (t1, t2) = (count(r1), count(c2));
        let (b1, b2) = (count(c1), count(r2));
        let sum2 = t2 + b2;
        let mut phase = if sum2 % 2 == 1 {
            Complex64::new(0.0, 1.0)
        } else {
            Complex64::new(1.0, 0.0)
        };
        if ((t1 + b1) * sum2) % 2 == 1 {
            phase = -phase;
        }
        rho[(r1 | (c2 << m1), c1 | (r2 << m1))] * phase
    });
    // rho^R2 is not Hermitian in general; use singular values
    pt.singular_values().sum().ln()
}

/// `W` laid out as `[[1 - C, F], [conj F, C]]` with an elementwise conjugate
/// in the lower-left block, skipping all checks. This is not Hermitian when
/// the pairing is nonzero and serves as a negative control.
pub fn conjugate_block_matrix(table: &CorrelatorTable, sites: &[usize]) -> DMatrix<Complex64> {
    let m = sites.len();
    let mut w = DMatrix::zeros(2 * m, 2 * m);
    for (a, &sa) in sites.iter().enumerate() {
        for (b, &sb) in sites.iter().enumerate() {
            let d = sb as isize - sa as isize;
            let delta = if a == b { 1.0 } else { 0.0 };
            w[(a, b)] = Complex64::new(delta, 0.0) - table.hopping_at(-d);
            w[(a, m + b)] = table.pairing_at(d);
            w[(m + a, b)] = table.pairing_at(d).conj();
            w[(m + a, m + b)] = table.hopping_at(d);
        }
    }
    w
}

/// One row of the oracle suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCheck {
    pub name: String,
    pub samples: usize,
    /// Largest deviation, or for one-sided checks the largest violation.
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: Option<String>,
}

impl OracleCheck {
    fn from_deviations(name: &str, tolerance: f64, deviations: Result<Vec<f64>>) -> Self {
        match deviations {
            Ok(d) => {
                let max = d.iter().copied().fold(0.0, f64::max);
                let finite = d.iter().all(|x| x.is_finite());
                Self {
                    name: name.into(),
                    samples: d.len(),
                    max_deviation: max,
                    tolerance,
                    passed: finite && max <= tolerance,
                    detail: None,
                }
            }
            Err(e) => Self {
                name: name.into(),
                samples: 0,
                max_deviation: f64::INFINITY,
                tolerance,
                passed: false,
                detail: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub sizes: Vec<usize>,
    pub alphas: Vec<f64>,
    pub mus: Vec<f64>,
    pub deltas: Vec<f64>,
    /// Random quenches for the negativity bound and Gaussian-state checks.
    pub random_quenches: usize,
    pub seed: u64,
    /// Build subsystem matrices with the conjugate-block layout instead.
    pub corrupt_sign: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            sizes: vec![4, 6, 8],
            alphas: vec![0.0, 1.0, 2.0, 30.0],
            mus: vec![0.5, 1.0, 1.5],
            deltas: vec![-1.0, 1.0],
            random_quenches: 64,
            seed: 7,
            corrupt_sign: false,
        }
    }
}

/// Ground-state energy, entropy and mutual information of one instance
/// against the exact solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundComparison {
    pub energy: f64,
    pub correlators: f64,
    pub entropy: f64,
    pub mutual_info: f64,
}

pub fn compare_ground_state(p: &ModelParams) -> Result<GroundComparison> {
    let n = p.n();
    let (e_exact, psi) = exact_ground_state(p)?;
    let e_mom = ModeTable::new(p)?.ground_energy();
    let table = ground_correlators(p, n - 1)?;
    let correlators = correlator_deviation(&psi, n, &table);

    let mut entropy: f64 = 0.0;
    for m in 1..=(n / 2).min(4) {
        let sites = block(0, m);
        let s_exact = density_entropy(&exact_rdm(&psi, n, &sites)?);
        let s_w = von_neumann_entropy(&build_correlation_matrix(&table, &sites)?)?;
        entropy = entropy.max((s_exact - s_w).abs());
    }

    let mut mutual_info: f64 = 0.0;
    for l in 1..=(n / 2).min(2) {
        let s = |sites: Vec<usize>| -> Result<f64> { Ok(density_entropy(&exact_rdm(&psi, n, &sites)?)) };
        let exact = s(block(0, l))? + s(block(l, l))? - s(block(0, 2 * l))?;
        mutual_info = mutual_info.max((exact - mutual_information(&table, l)?).abs());
    }
    Ok(GroundComparison {
        energy: (e_exact - e_mom).abs(),
        correlators,
        entropy,
        mutual_info,
    })
}

/// Stationary state of a random quench on `N = 8`, restricted to four sites.
fn random_stationary_block(rng: &mut ChaCha8Rng, corrupt: bool) -> Result<(CorrelationMatrix, QuenchProtocol)> {
    let n = 8;
    let alpha = rng.gen_range(0.0..3.0);
    let pre = ModelParams::new(n, rng.gen_range(0.0..2.0), rng.gen_range(-2.0..2.0), alpha)?;
    let post = ModelParams::new(n, rng.gen_range(0.0..2.0), rng.gen_range(-2.0..2.0), alpha)?;
    let q = QuenchProtocol::new(pre, post)?;
    let table = stationary_correlators(&q, 3)?;
    let sites = block(0, 4);
    let w = if corrupt {
        CorrelationMatrix::from_matrix(conjugate_block_matrix(&table, &sites), sites)?
    } else {
        build_correlation_matrix(&table, &sites)?
    };
    Ok((w, q))
}

/// Runs every oracle comparison and returns one row per invariant.
pub fn run_suite(config: &SuiteConfig) -> Vec<OracleCheck> {
    let mut instances = Vec::new();
    for &n in &config.sizes {
        for &alpha in &config.alphas {
            for &mu in &config.mus {
                for &delta in &config.deltas {
                    instances.push((n, mu, delta, alpha));
                }
            }
        }
    }
    let ground: Result<Vec<GroundComparison>> = instances
        .iter()
        .map(|&(n, mu, delta, alpha)| {
            check_sites(n)?;
            compare_ground_state(&ModelParams::new(n, mu, delta, alpha)?)
        })
        .collect();
    let pick = |f: fn(&GroundComparison) -> f64| ground.clone().map(|g| g.iter().map(f).collect());

    let mut checks = vec![
        OracleCheck::from_deviations("ground_energy", 1e-8, pick(|g| g.energy)),
        OracleCheck::from_deviations("ground_correlators", 1e-8, pick(|g| g.correlators)),
        OracleCheck::from_deviations("entropy", 1e-8, pick(|g| g.entropy)),
        OracleCheck::from_deviations("mutual_information", 1e-8, pick(|g| g.mutual_info)),
    ];

    let time = (|| -> Result<Vec<f64>> {
        let q = QuenchProtocol::new(
            ModelParams::new(8, 1.0, -1.0, 1.0)?,
            ModelParams::new(8, 0.4, 1.3, 1.0)?,
        )?;
        [0.0, 0.5, 1.3, 4.0]
            .iter()
            .map(|&t| {
                let psi = exact_quench_state(&q, t)?;
                Ok(correlator_deviation(&psi, 8, &time_correlators(&q, t, 7)?))
            })
            .collect()
    })();
    checks.push(OracleCheck::from_deviations("time_correlators", 1e-8, time));

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut hermiticity = Vec::new();
    let mut samples = Vec::new();
    let mut failure = None;
    for _ in 0..config.random_quenches {
        match bound_sample(&mut rng, config.corrupt_sign) {
            Ok(s) => {
                hermiticity.push(s.hermiticity);
                samples.push(s);
            }
            Err(e) => {
                if let LrkError::NotHermitian { defect } = e {
                    hermiticity.push(defect);
                }
                failure.get_or_insert(e);
            }
        }
    }
    let collected = |f: fn(&BoundSample) -> f64| match &failure {
        Some(e) => Err(e.clone()),
        None => Ok(samples.iter().map(f).collect()),
    };
    checks.push(OracleCheck::from_deviations("hermiticity", HERMITICITY_TOL, Ok(hermiticity)));
    checks.push(OracleCheck::from_deviations("gaussian_state", 1e-8, collected(|s| s.reproduction)));
    checks.push(OracleCheck::from_deviations(
        "negativity_bound",
        1e-8,
        collected(|s| (s.exact - s.upper).max(0.0)),
    ));
    checks.push(OracleCheck::from_deviations(
        "fermionic_transpose",
        1e-8,
        collected(|s| (s.fermionic - s.log_norm).abs()),
    ));
    checks
}

/// Negativities of one random stationary four-site state split 2|2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSample {
    pub hermiticity: f64,
    /// Largest deviation of the explicit state's correlations from `W`.
    pub reproduction: f64,
    pub upper: f64,
    pub log_norm: f64,
    /// Plain partial transpose.
    pub exact: f64,
    /// Fermionic partial transpose.
    pub fermionic: f64,
}

fn bound_sample(rng: &mut ChaCha8Rng, corrupt: bool) -> Result<BoundSample> {
    let (w, _) = random_stationary_block(rng, corrupt)?;
    let state = gaussian_state_from_covariance(&w)?;
    let xi = negativity_bound(&w, 2)?;
    Ok(BoundSample {
        hermiticity: hermiticity_defect(w.matrix()),
        reproduction: (state.correlation_matrix() - w.matrix()).camax(),
        upper: xi.upper,
        log_norm: xi.log_norm,
        exact: exact_log_negativity(state.rho(), 2),
        fermionic: fermionic_log_negativity(state.rho(), 2),
    })
}

/// `count` random quenches drawn from `seed`.
pub fn bound_samples(seed: u64, count: usize) -> Result<Vec<BoundSample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| bound_sample(&mut rng, false)).collect()
}
