//! Entropies, mutual information and the Gaussian log-negativity bound.
//!
//! All measures are evaluated from subsystem correlation matrices. Blocks are
//! adjacent intervals of `L` sites: `A1 = [o, o+L)`, `A2 = [o+L, o+2L)` and,
//! for the tripartite information, `A3 = [o+2L, o+3L)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::correlators::{build_correlation_matrix, CorrelationMatrix, CorrelatorTable};
use crate::error::{LrkError, Result};

/// Eigenvalues further than this outside `[0, 1]` are rejected.
pub const SPECTRUM_TOL: f64 = 1e-8;

/// Largest accepted condition number of `1 - G1 G2` in the negativity bound.
pub const MAX_CONDITION: f64 = 1e12;

/// Largest accepted anti-Hermitian part of `i Gamma_x`.
pub const GAMMA_X_HERMITICITY_TOL: f64 = 1e-8;

/// Largest accepted imaginary part of the bound.
pub const IMAG_TOL: f64 = 1e-6;

fn x_ln_x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Eigenvalues are clamped into `[0, 1]`; the endpoints contribute their limit.
fn half_binary_entropy(w: f64) -> f64 {
    let w = w.clamp(0.0, 1.0);
    -0.5 * (x_ln_x(w) + x_ln_x(1.0 - w))
}

/// Spectrum of `W`, in ascending order.
pub fn correlation_spectrum(w: &CorrelationMatrix) -> DVector<f64> {
    let mut values = if w.is_real() {
        w.matrix().map(|z| z.re).symmetric_eigenvalues()
    } else {
        w.matrix().clone().symmetric_eigenvalues()
    };
    values
        .as_mut_slice()
        .sort_by(|a, b| a.partial_cmp(b).unwrap());
    values
}

/// `S = -1/2 Tr[(1 - W) ln(1 - W) + W ln W]`, in nats.
pub fn von_neumann_entropy(w: &CorrelationMatrix) -> Result<f64> {
    let spectrum = correlation_spectrum(w);
    let mut s = 0.0;
    for &v in spectrum.iter() {
        if !(-SPECTRUM_TOL..=1.0 + SPECTRUM_TOL).contains(&v) {
            return Err(LrkError::NonPhysicalSpectrum { value: v });
        }
        s += half_binary_entropy(v);
    }
    Ok(s.max(0.0))
}

/// Real antisymmetric covariance `gamma_ab = (i/2) <[c_a, c_b]>` of the
/// Majorana operators `c_2j = f_j + f_j^dag`, `c_2j+1 = -i (f_j - f_j^dag)`,
/// ordered site by site.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaCovariance {
    gamma: DMatrix<f64>,
}

impl MajoranaCovariance {
    pub fn new(gamma: DMatrix<f64>) -> Result<Self> {
        if gamma.nrows() != gamma.ncols() || gamma.nrows() % 2 != 0 {
            return Err(LrkError::InvalidParams(format!(
                "Majorana covariance must be square of even size, got {}x{}",
                gamma.nrows(),
                gamma.ncols()
            )));
        }
        let defect = (&gamma + gamma.transpose()).amax();
        if defect > 1e-12 {
            return Err(LrkError::InvalidParams(format!(
                "Majorana covariance not antisymmetric (defect {defect:e})"
            )));
        }
        Ok(Self { gamma })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.gamma
    }

    pub fn modes(&self) -> usize {
        self.gamma.nrows() / 2
    }
}

/// `Omega` with `c = Omega Psi`, where `Psi = (f_1..f_m, f_1^dag..f_m^dag)`.
fn dirac_to_majorana(m: usize) -> DMatrix<Complex64> {
    let mut omega = DMatrix::zeros(2 * m, 2 * m);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    for j in 0..m {
        omega[(2 * j, j)] = one;
        omega[(2 * j, m + j)] = one;
        omega[(2 * j + 1, j)] = -i;
        omega[(2 * j + 1, m + j)] = i;
    }
    omega
}

pub fn to_majorana(w: &CorrelationMatrix) -> MajoranaCovariance {
    let m = w.modes();
    let omega = dirac_to_majorana(m);
    let shifted = w.matrix() * Complex64::new(2.0, 0.0)
        - DMatrix::<Complex64>::identity(2 * m, 2 * m);
    let g = &omega * shifted * omega.adjoint() * Complex64::new(0.0, 0.5);
    let gamma = g.map(|z| z.re);
    // exact antisymmetry; the symmetric part is pure roundoff
    let gamma = (&gamma - gamma.transpose()) * 0.5;
    MajoranaCovariance { gamma }
}

pub fn from_majorana(gamma: &MajoranaCovariance, sites: Vec<usize>) -> Result<CorrelationMatrix> {
    let m = gamma.modes();
    let omega = dirac_to_majorana(m);
    let g = gamma.matrix().map(|x| Complex64::new(x, 0.0));
    let shifted = omega.adjoint() * g * &omega * Complex64::new(0.0, -0.5);
    let w = (shifted + DMatrix::<Complex64>::identity(2 * m, 2 * m)) * Complex64::new(0.5, 0.0);
    CorrelationMatrix::from_matrix(w, sites)
}

/// Entropy from the singular values of the Majorana covariance, which are the
/// canonical values `nu_j`, each appearing twice.
pub fn entropy_from_majorana(gamma: &MajoranaCovariance) -> f64 {
    let singular = gamma.matrix().clone().singular_values();
    singular
        .iter()
        .map(|&s| half_binary_entropy(0.5 * (1.0 + s.min(1.0))))
        .sum::<f64>()
        .max(0.0)
}

/// Adjacent equal blocks of `l` sites starting at `offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Geometry {
    pub l: usize,
    pub offset: usize,
}

impl Geometry {
    pub fn new(l: usize) -> Self {
        Self { l, offset: 0 }
    }

    /// Sites of block `index` (0-based).
    pub fn block(&self, index: usize) -> Vec<usize> {
        let start = self.offset + index * self.l;
        (start..start + self.l).collect()
    }

    fn check(&self, table: &CorrelatorTable, blocks: usize) -> Result<()> {
        if self.l == 0 {
            return Err(LrkError::InvalidParams("block size must be positive".into()));
        }
        if self.offset + blocks * self.l > table.n() {
            return Err(LrkError::InvalidParams(format!(
                "{blocks} blocks of {} sites at offset {} do not fit in {} sites",
                self.l,
                self.offset,
                table.n()
            )));
        }
        Ok(())
    }
}

fn union(blocks: &[&[usize]]) -> Vec<usize> {
    blocks.iter().flat_map(|b| b.iter().copied()).collect()
}

fn positions(len: usize, start: usize) -> Vec<usize> {
    (start..start + len).collect()
}

/// `I(A:B) = S(A) + S(B) - S(A u B)` for arbitrary disjoint site sets.
pub fn mutual_information_of_sets(table: &CorrelatorTable, a: &[usize], b: &[usize]) -> Result<f64> {
    let w = build_correlation_matrix(table, &union(&[a, b]))?;
    let s_a = von_neumann_entropy(&w.restrict(&positions(a.len(), 0)))?;
    let s_b = von_neumann_entropy(&w.restrict(&positions(b.len(), a.len())))?;
    let s_ab = von_neumann_entropy(&w)?;
    Ok(s_a + s_b - s_ab)
}

/// Mutual information of two adjacent blocks of `l` sites at the chain start.
pub fn mutual_information(table: &CorrelatorTable, l: usize) -> Result<f64> {
    let geometry = Geometry::new(l);
    geometry.check(table, 2)?;
    mutual_information_of_sets(table, &geometry.block(0), &geometry.block(1))
}

/// `I(A:B:C) = I(A:B) + I(A:C) - I(A:B u C)`.
pub fn tripartite_of_sets(
    table: &CorrelatorTable,
    a: &[usize],
    b: &[usize],
    c: &[usize],
) -> Result<f64> {
    let w = build_correlation_matrix(table, &union(&[a, b, c]))?;
    let (na, nb, nc) = (a.len(), b.len(), c.len());
    let entropy = |pos: Vec<usize>| von_neumann_entropy(&w.restrict(&pos));
    let s_a = entropy(positions(na, 0))?;
    let s_b = entropy(positions(nb, na))?;
    let s_c = entropy(positions(nc, na + nb))?;
    let s_ab = entropy(positions(na + nb, 0))?;
    let s_ac = entropy(positions(na, 0).into_iter().chain(positions(nc, na + nb)).collect())?;
    let s_bc = entropy(positions(nb + nc, na))?;
    let s_abc = von_neumann_entropy(&w)?;
    let i_ab = s_a + s_b - s_ab;
    let i_ac = s_a + s_c - s_ac;
    let i_a_bc = s_a + s_bc - s_abc;
    Ok(i_ab + i_ac - i_a_bc)
}

/// Tripartite information of three adjacent blocks of `l` sites.
pub fn tripartite_mutual_information(table: &CorrelatorTable, l: usize) -> Result<f64> {
    let geometry = Geometry::new(l);
    geometry.check(table, 3)?;
    tripartite_of_sets(
        table,
        &geometry.block(0),
        &geometry.block(1),
        &geometry.block(2),
    )
}

/// Gaussian upper bound on the log-negativity between the first `first_sites`
/// sites of a correlation matrix and the rest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NegativityBound {
    /// `ln ||O_+||`, the log trace norm of the Gaussian operator entering the
    /// partial transpose.
    pub log_norm: f64,
    /// `xi^u = ln ||O_+|| + ln sqrt 2`.
    pub upper: f64,
}

/// Sum of `ln` of the LU pivots and the accumulated phase of `det(t)`.
fn log_det(t: DMatrix<Complex64>) -> (f64, f64) {
    let lu = t.lu();
    let mut log_abs = 0.0;
    let mut phase = Complex64::new(lu.p().determinant::<f64>(), 0.0);
    for z in lu.u().diagonal().iter() {
        let r = z.norm();
        log_abs += r.ln();
        phase *= z / r;
    }
    (log_abs, phase.arg())
}

pub fn negativity_bound(w: &CorrelationMatrix, first_sites: usize) -> Result<NegativityBound> {
    let m = w.modes();
    if first_sites == 0 || first_sites >= m {
        return Err(LrkError::InvalidParams(format!(
            "split {first_sites} must leave both parts of {m} sites non-empty"
        )));
    }
    let gamma = to_majorana(w);
    let dim = 2 * m;
    let split = 2 * first_sites;
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let phase = |a: usize| if a < split { one } else { i };

    // G1 = M~ gamma M~ with M~ = diag(1, i); G2 = M~ M gamma M M~ = conj(G1)
    let g1 = DMatrix::from_fn(dim, dim, |a, b| {
        phase(a) * phase(b) * gamma.matrix()[(a, b)]
    });
    let g2 = g1.map(|z| z.conj());
    let id = DMatrix::<Complex64>::identity(dim, dim);

    let t = &id - &g1 * &g2;
    let singular = t.clone().singular_values();
    let condition = singular.max() / singular.min();
    if !(condition <= MAX_CONDITION) {
        return Err(LrkError::SingularMatrix { condition });
    }
    let lu = t.clone().lu();
    let right = &id + &g1 * i;
    let solved = lu
        .solve(&right)
        .ok_or(LrkError::SingularMatrix { condition })?;
    let inner = (&id + &g2 * i) * solved;
    let gamma_x = (&id - inner) * i;

    // i Gamma_x is the Hermitian covariance of the normalized product O_+ O_-
    let h = &gamma_x * i;
    let defect = crate::correlators::hermiticity_defect(&h);
    if defect > GAMMA_X_HERMITICITY_TOL {
        return Err(LrkError::NotHermitian { defect });
    }
    let h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let log_det_sqrt_sum: f64 = h
        .symmetric_eigenvalues()
        .iter()
        .map(|&e| {
            let e = e.clamp(-1.0, 1.0);
            ((0.5 * (1.0 + e)).sqrt() + (0.5 * (1.0 - e)).sqrt()).ln()
        })
        .sum();

    // Tr(O_+ O_-) = det((1 - G1 G2)/2)^(1/2) and Tr sqrt(rho_x) = det(...)^(1/2)
    let (log_abs_t, arg_t) = log_det(t);
    let log_det_half_t = log_abs_t - dim as f64 * std::f64::consts::LN_2;
    let imag = arg_t / 4.0;
    if imag.abs() > IMAG_TOL {
        return Err(LrkError::NonReal { imag });
    }
    let log_norm = 0.5 * log_det_sqrt_sum + 0.25 * log_det_half_t;
    Ok(NegativityBound {
        log_norm,
        upper: log_norm + 0.5 * std::f64::consts::LN_2,
    })
}

/// `xi^u` between two adjacent blocks of `l` sites at the chain start.
pub fn logneg_upper_bound(table: &CorrelatorTable, l: usize) -> Result<f64> {
    let geometry = Geometry::new(l);
    geometry.check(table, 2)?;
    let w = build_correlation_matrix(table, &union(&[&geometry.block(0), &geometry.block(1)]))?;
    Ok(negativity_bound(&w, l)?.upper)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub geometry: Geometry,
    pub s_a1: f64,
    pub s_a2: f64,
    pub s_union: f64,
    pub mutual_info: f64,
    pub tmi: Option<f64>,
    pub logneg_upper: Option<f64>,
}

/// All bipartite measures for one geometry, optionally with the tripartite
/// information and the negativity bound.
pub fn entanglement_report(
    table: &CorrelatorTable,
    geometry: Geometry,
    with_tmi: bool,
    with_logneg: bool,
) -> Result<EntanglementReport> {
    geometry.check(table, if with_tmi { 3 } else { 2 })?;
    let (a1, a2) = (geometry.block(0), geometry.block(1));
    let l = geometry.l;
    let w = build_correlation_matrix(table, &union(&[&a1, &a2]))?;
    let s_a1 = von_neumann_entropy(&w.restrict(&positions(l, 0)))?;
    let s_a2 = von_neumann_entropy(&w.restrict(&positions(l, l)))?;
    let s_union = von_neumann_entropy(&w)?;
    let logneg_upper = if with_logneg {
        Some(negativity_bound(&w, l)?.upper)
    } else {
        None
    };
    let tmi = if with_tmi {
        Some(tripartite_of_sets(table, &a1, &a2, &geometry.block(2))?)
    } else {
        None
    };
    Ok(EntanglementReport {
        geometry,
        s_a1,
        s_a2,
        s_union,
        mutual_info: s_a1 + s_a2 - s_union,
        tmi,
        logneg_upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlators::{
        block, ground_correlators, stationary_correlators, time_correlators, QuenchProtocol,
    };
    use crate::model::ModelParams;

    fn params(n: usize, mu: f64, delta: f64, alpha: f64) -> ModelParams {
        ModelParams::new(n, mu, delta, alpha).unwrap()
    }

    fn quench(n: usize, mu_i: f64, mu_f: f64, alpha: f64) -> QuenchProtocol {
        QuenchProtocol::new(params(n, mu_i, -1.0, alpha), params(n, mu_f, 1.0, alpha)).unwrap()
    }

    #[test]
    fn pure_product_has_zero_entropy() {
        let table = CorrelatorTable::vacuum(20, 8).unwrap();
        let w = build_correlation_matrix(&table, &block(0, 6)).unwrap();
        assert!(von_neumann_entropy(&w).unwrap() < 1e-10);
        assert_eq!(mutual_information(&table, 4).unwrap(), 0.0);
        assert_eq!(tripartite_mutual_information(&table, 3).unwrap(), 0.0);
    }

    #[test]
    fn maximally_mixed_entropy() {
        let l = 5;
        let w = DMatrix::identity(2 * l, 2 * l) * Complex64::new(0.5, 0.0);
        let w = CorrelationMatrix::from_matrix(w, block(0, l)).unwrap();
        let s = von_neumann_entropy(&w).unwrap();
        assert!((s - l as f64 * std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn unphysical_spectrum_rejected() {
        let mut w = DMatrix::identity(2, 2) * Complex64::new(0.5, 0.0);
        w[(0, 0)] = Complex64::new(1.2, 0.0);
        let w = CorrelationMatrix::from_matrix(w, vec![0]).unwrap();
        assert!(matches!(
            von_neumann_entropy(&w),
            Err(LrkError::NonPhysicalSpectrum { .. })
        ));
    }

    #[test]
    fn vacuum_majorana_form() {
        let table = CorrelatorTable::vacuum(10, 3).unwrap();
        let w = build_correlation_matrix(&table, &block(0, 3)).unwrap();
        let gamma = to_majorana(&w);
        for a in 0..6 {
            for b in 0..6 {
                let expected = match (a % 2, b) {
                    (0, b) if b == a + 1 => -1.0,
                    (1, b) if b + 1 == a => 1.0,
                    _ => 0.0,
                };
                assert_eq!(gamma.matrix()[(a, b)], expected, "({a}, {b})");
            }
        }
    }

    #[test]
    fn majorana_round_trip_and_purity() {
        let q = quench(40, 1.0, 0.4, 1.0);
        let table = time_correlators(&q, 2.7, 10).unwrap();
        let w = build_correlation_matrix(&table, &block(3, 6)).unwrap();
        let gamma = to_majorana(&w);
        let back = from_majorana(&gamma, w.sites().to_vec()).unwrap();
        assert!((back.matrix() - w.matrix()).camax() < 1e-12);

        // whole chain of a ground state: pure
        let p = params(12, 0.6, 1.0, 2.0);
        let table = ground_correlators(&p, 11).unwrap();
        let w = build_correlation_matrix(&table, &block(0, 12)).unwrap();
        let gamma = to_majorana(&w);
        let gg = gamma.matrix() * gamma.matrix().transpose();
        assert!((gg - DMatrix::identity(24, 24)).amax() < 1e-10);
    }

    #[test]
    fn entropy_paths_agree() {
        let q = quench(200, 1.5, 0.9, 0.0);
        for table in [
            stationary_correlators(&q, 40).unwrap(),
            time_correlators(&q, 4.1, 40).unwrap(),
            ground_correlators(q.pre(), 40).unwrap(),
        ] {
            for sites in [block(0, 10), block(5, 30)] {
                let w = build_correlation_matrix(&table, &sites).unwrap();
                let a = von_neumann_entropy(&w).unwrap();
                let b = entropy_from_majorana(&to_majorana(&w));
                assert!((a - b).abs() < 1e-10, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn tmi_symmetric_under_permutations() {
        let q = quench(120, 1.0, 1.4, 1.0);
        let table = time_correlators(&q, 1.9, 30).unwrap();
        let blocks = [block(0, 5), block(5, 5), block(10, 5)];
        let reference = tripartite_of_sets(&table, &blocks[0], &blocks[1], &blocks[2]).unwrap();
        for [a, b, c] in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let v = tripartite_of_sets(&table, &blocks[a], &blocks[b], &blocks[c]).unwrap();
            assert!((v - reference).abs() < 1e-10);
        }
    }

    #[test]
    fn mutual_information_nonnegative() {
        for (mu_i, mu_f, alpha) in [(1.0, 1.0, 0.0), (1.5, 1.0, 2.0), (1.0, 0.3, 1.0)] {
            let q = quench(300, mu_i, mu_f, alpha);
            let table = stationary_correlators(&q, 60).unwrap();
            for l in [1, 5, 20, 30] {
                assert!(mutual_information(&table, l).unwrap() > -1e-10);
            }
        }
    }

    #[test]
    fn bound_on_product_state() {
        let table = CorrelatorTable::vacuum(20, 8).unwrap();
        let xi = logneg_upper_bound(&table, 3).unwrap();
        assert!(xi >= 0.0);
        assert!((xi - 0.5 * std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn report_matches_individual_measures() {
        let q = quench(400, 1.0, 1.0, 2.0);
        let table = stationary_correlators(&q, 40).unwrap();
        let report = entanglement_report(&table, Geometry::new(10), true, true).unwrap();
        assert!((report.mutual_info - mutual_information(&table, 10).unwrap()).abs() < 1e-12);
        assert!(
            (report.tmi.unwrap() - tripartite_mutual_information(&table, 10).unwrap()).abs()
                < 1e-12
        );
        assert!(
            (report.logneg_upper.unwrap() - logneg_upper_bound(&table, 10).unwrap()).abs() < 1e-12
        );
        assert!((report.s_a1 - report.s_a2).abs() < 1e-10);
    }

    #[test]
    fn geometry_must_fit() {
        let table = CorrelatorTable::vacuum(10, 9).unwrap();
        assert!(mutual_information(&table, 6).is_err());
        assert!(tripartite_mutual_information(&table, 4).is_err());
        assert!(mutual_information(&table, 0).is_err());
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use crate::correlators::{block, time_correlators, QuenchProtocol};
    use crate::model::ModelParams;
    use proptest::prelude::*;

    fn state() -> impl Strategy<Value = CorrelatorTable> {
        (
            4usize..30,
            0.0f64..3.0,
            (-2.0f64..2.0, -2.0f64..2.0),
            (-2.0f64..2.0, -2.0f64..2.0),
            0.0f64..20.0,
        )
            .prop_filter_map("degenerate mode", |(half, alpha, (mi, di), (mf, df), t)| {
                let n = 2 * half;
                let pre = ModelParams::new(n, mi, di, alpha).ok()?;
                let post = ModelParams::new(n, mf, df, alpha).ok()?;
                let q = QuenchProtocol::new(pre, post).ok()?;
                time_correlators(&q, t, n - 1).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn majorana_round_trip(table in state(), offset in 0usize..4, len in 1usize..6) {
            let len = len.min(table.n() - offset);
            let w = build_correlation_matrix(&table, &block(offset, len)).unwrap();
            let gamma = to_majorana(&w);
            let back = from_majorana(&gamma, w.sites().to_vec()).unwrap();
            prop_assert!((back.matrix() - w.matrix()).camax() < 1e-12);
            let a = von_neumann_entropy(&w).unwrap();
            prop_assert!((a - entropy_from_majorana(&gamma)).abs() < 1e-10);
        }

        #[test]
        fn mutual_information_nonnegative(table in state(), l in 1usize..5) {
            let l = l.min(table.n() / 2);
            prop_assert!(mutual_information(&table, l).unwrap() >= -1e-10);
        }

        #[test]
        fn tmi_permutation_symmetric(table in state(), l in 1usize..4) {
            let l = l.min(table.n() / 3);
            let b = [block(0, l), block(l, l), block(2 * l, l)];
            let reference = tripartite_of_sets(&table, &b[0], &b[1], &b[2]).unwrap();
            for [x, y, z] in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                let v = tripartite_of_sets(&table, &b[x], &b[y], &b[z]).unwrap();
                prop_assert!((v - reference).abs() < 1e-10);
            }
        }

        #[test]
        fn pure_state_complement(
            half in 2usize..7, mu in -2.0f64..2.0, delta in -2.0f64..2.0,
            alpha in 0.0f64..3.0, cut in 1usize..12,
        ) {
            let n = 2 * half;
            let cut = 1 + cut % (n - 1);
            let p = ModelParams::new(n, mu, delta, alpha).unwrap();
            if let Ok(table) = crate::correlators::ground_correlators(&p, n - 1) {
                let a = von_neumann_entropy(&build_correlation_matrix(&table, &block(0, cut)).unwrap()).unwrap();
                let b = von_neumann_entropy(&build_correlation_matrix(&table, &block(cut, n - cut)).unwrap()).unwrap();
                prop_assert!((a - b).abs() < 1e-8);
            }
        }
    }
}
