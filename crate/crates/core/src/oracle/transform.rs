use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::montecarlo::mc_mean;
use super::torus::torus_eta_initial;
use super::{OracleResult, Uncertainty};
use crate::error::{Error, Result};
use crate::groupops::{
    chi_l, cos_kernel, haar_sample, kp_decompose, pi_action, random_l_element, section_smallest,
    theta, CMatrix, GroupElement, PhaseSign,
};
use crate::rootdata::CaseParams;

const SECTION_TRIALS: usize = 16;
const SECTION_TOL: f64 = 1e-9;

// Auxiliary draws use streams far away from the Monte-Carlo batches.
const SECTION_STREAM: u64 = u64::MAX;
const POINT_STREAM: u64 = u64::MAX - 1;

fn aux_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Largest |f(km) − χ(m)⁻¹ f(k)| over random k ∈ K, m ∈ L, relative to max |f(k)|.
pub fn check_section<F>(case: &CaseParams, f: &F, trials: usize, seed: u64) -> Result<f64>
where
    F: Fn(&CMatrix) -> Complex64,
{
    let mut rng = aux_rng(seed, SECTION_STREAM);
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for _ in 0..trials {
        let k = haar_sample(case, &mut rng);
        let m = random_l_element(case, &mut rng);
        let fk = f(&k.mat);
        let lhs = f(&(&k.mat * &m.mat));
        worst = worst.max((lhs - fk / chi_l(case, &m.mat)?).norm());
        scale = scale.max(fk.norm());
    }
    let deviation = worst / scale.max(f64::MIN_POSITIVE);
    if deviation > SECTION_TOL {
        return Err(Error::NotASection { deviation });
    }
    Ok(deviation)
}

fn check_domain(case: &CaseParams, lambda: f64) -> Result<()> {
    let base = case.rho() - case.k as f64;
    if lambda < base {
        return Err(Error::DomainError(format!("lambda = {lambda} below rho - k = {base}")));
    }
    Ok(())
}

/// Haar Monte-Carlo estimate of ∫_K Cos-kernel(k, h) f(h) dh.
pub fn mc_transform_at<F>(
    case: &CaseParams,
    lambda: f64,
    f: F,
    k: &CMatrix,
    n_samples: u64,
    seed: u64,
    sign: PhaseSign,
) -> Result<OracleResult>
where
    F: Fn(&CMatrix) -> Complex64 + Sync,
{
    check_domain(case, lambda)?;
    check_section(case, &f, SECTION_TRIALS, seed)?;
    let lam = Complex64::new(lambda, 0.0);
    let stats = mc_mean(n_samples, seed, |rng| {
        let h = haar_sample(case, rng);
        Ok(cos_kernel(case, k, &h.mat, lam, sign)? * f(&h.mat))
    })?;
    Ok(OracleResult {
        estimate: stats.mean,
        uncertainty: Uncertainty::StdError(stats.std_error()),
        n_samples,
        seed,
        rejected: stats.rejected,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivariancePoint {
    /// Monte-Carlo value of the transform of π_λ(g)f at k.
    pub lhs: Complex64,
    /// η_{μ⁰}(λ) · (π_{−λ}(θg) f)(k).
    pub rhs: Complex64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivarianceReport {
    pub points: Vec<EquivariancePoint>,
    /// Root mean square of |lhs − rhs| over the test points.
    pub residual: f64,
    /// Root mean square of the Monte-Carlo standard errors.
    pub sigma: f64,
    /// residual divided by the mean |rhs|.
    pub relative_residual: f64,
}

impl EquivarianceReport {
    pub fn passes(&self) -> bool {
        self.residual < 3.0 * self.sigma
    }
}

/// Intertwining test for the transform with f = section_smallest, whose
/// eigenvalue η_{μ⁰}(λ) is taken from the torus oracle.
pub fn equivariance_check(
    case: &CaseParams,
    lambda: f64,
    g: &GroupElement,
    n_points: usize,
    n_samples: u64,
    seed: u64,
) -> Result<EquivarianceReport> {
    check_domain(case, lambda)?;
    let eta = torus_eta_initial(case, lambda, 64)?.estimate;
    let lam = Complex64::new(lambda, 0.0);
    let f = |m: &CMatrix| section_smallest(case, m);
    let ginv = g.inverse()?;
    let theta_g = theta(g)?;
    let mut rng = aux_rng(seed, POINT_STREAM);
    let mut points = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let k = haar_sample(case, &mut rng);
        let point_seed = seed.wrapping_add((i as u64 + 1) << 32);
        let stats = mc_mean(n_samples, point_seed, |rng| {
            let h = haar_sample(case, rng);
            let kernel = cos_kernel(case, &k.mat, &h.mat, lam, PhaseSign::Plus)?;
            let dec = kp_decompose(case, &(&ginv.mat * &h.mat))?;
            let moved = ((-lam - case.rho()) * dec.log_a).exp() * f(&dec.kappa.mat) / dec.chi_phase;
            Ok(kernel * moved)
        })?;
        let rhs = eta * pi_action(case, -lam, &theta_g, f, &k.mat)?;
        points.push(EquivariancePoint { lhs: stats.mean, rhs, sigma: stats.std_error() });
    }
    let count = points.len().max(1) as f64;
    let residual = (points.iter().map(|p| (p.lhs - p.rhs).norm_sqr()).sum::<f64>() / count).sqrt();
    let sigma = (points.iter().map(|p| p.sigma * p.sigma).sum::<f64>() / count).sqrt();
    let scale = points.iter().map(|p| p.rhs.norm()).sum::<f64>() / count;
    Ok(EquivarianceReport { points, residual, sigma, relative_residual: residual / scale })
}
