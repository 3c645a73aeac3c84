use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::montecarlo::mc_mean;
use super::torus::gauss_legendre_unit;
use super::{OracleResult, Uncertainty};
use crate::error::{Error, Result};
use crate::groupops::PhaseSign;
use crate::rootdata::{CaseParams, Field};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectiveMethod {
    MonteCarlo { samples: u64, seed: u64 },
    /// Gauss–Legendre with `nodes` and 2·`nodes` points on each radial axis.
    Quadrature { nodes: usize },
}

const INVARIANCE_TRIALS: usize = 8;
const INVARIANCE_TOL: f64 = 1e-10;

/// Pointwise integrand on C^{q+1} for the section F_{a,b}(v) = conj(v_1)^a v_2^b
/// and base point u₀ = (e_1 + e_2)/√2.
struct Integrand {
    a: i32,
    b: i32,
    phase_power: i32,
    exponent: f64,
}

impl Integrand {
    /// Kernel times section, written in ⟨u₀, v⟩ = α and ⟨u₀^⊥, v⟩ = β.
    fn eval(&self, alpha: Complex64, beta: Complex64) -> Result<Complex64> {
        let modulus = alpha.norm();
        if modulus == 0.0 {
            return if self.exponent > 0.0 { Ok(Complex64::new(0.0, 0.0)) } else { Err(Error::KernelSingular) };
        }
        let kernel = modulus.powf(self.exponent) * (alpha / modulus).powi(self.phase_power);
        let v1 = (alpha + beta) * FRAC_1_SQRT_2;
        let v2 = (alpha - beta) * FRAC_1_SQRT_2;
        Ok(kernel * v1.conj().powi(self.a) * v2.powi(self.b))
    }

    fn eval_vector(&self, v: &[Complex64]) -> Result<Complex64> {
        let alpha = (v[0] + v[1]) * FRAC_1_SQRT_2;
        let beta = (v[0] - v[1]) * FRAC_1_SQRT_2;
        self.eval(alpha, beta)
    }

    fn section_at_base(&self) -> f64 {
        FRAC_1_SQRT_2.powi(self.a + self.b)
    }
}

fn sphere_point<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    v
}

/// Eigenvalue of the transform on F_{a,b} over CP^q (the case (C, 1, q) with
/// l = a − b), estimated as (T F)(u₀)/F(u₀).
pub fn projective_eigen_oracle(
    case: &CaseParams,
    a: u32,
    b: u32,
    lambda: f64,
    method: ProjectiveMethod,
    sign: PhaseSign,
) -> Result<OracleResult> {
    if case.field != Field::C || case.p != 1 {
        return Err(Error::InvalidArgument(format!("projective oracle needs (C, 1, q), got {case}")));
    }
    if a as i64 - b as i64 != case.l || case.l < 0 {
        return Err(Error::InvalidArgument(format!("need a - b = l >= 0, got a = {a}, b = {b}, l = {}", case.l)));
    }
    let base = case.rho() - case.k as f64;
    if lambda < base {
        return Err(Error::DomainError(format!("lambda = {lambda} below rho - k = {base}")));
    }
    let integrand = Integrand {
        a: a as i32,
        b: b as i32,
        phase_power: (sign.as_i64() * case.l) as i32,
        exponent: lambda - case.rho(),
    };
    let dim = case.dim();
    let seed = match method {
        ProjectiveMethod::MonteCarlo { seed, .. } => seed,
        ProjectiveMethod::Quadrature { .. } => 0,
    };
    check_invariance(&integrand, dim, seed)?;
    let f0 = integrand.section_at_base();
    match method {
        ProjectiveMethod::MonteCarlo { samples, seed } => {
            let stats = mc_mean(samples, seed, |rng| integrand.eval_vector(&sphere_point(dim, rng)))?;
            Ok(OracleResult {
                estimate: stats.mean / f0,
                uncertainty: Uncertainty::StdError(stats.std_error() / f0),
                n_samples: samples,
                seed,
                rejected: stats.rejected,
            })
        }
        ProjectiveMethod::Quadrature { nodes } => {
            if nodes == 0 {
                return Err(Error::InvalidArgument("quadrature needs at least one node".into()));
            }
            let (coarse, _) = quadrature(&integrand, case.q, nodes)?;
            let (fine, evaluations) = quadrature(&integrand, case.q, 2 * nodes)?;
            let bound = (fine - coarse).norm().max(4.0 * f64::EPSILON * fine.norm()) / f0;
            Ok(OracleResult {
                estimate: fine / f0,
                uncertainty: Uncertainty::Bound(bound),
                n_samples: evaluations,
                seed: 0,
                rejected: 0,
            })
        }
    }
}

/// The integrand must be unchanged under v → v e^{iθ} for the transform to
/// live on projective space.
fn check_invariance(integrand: &Integrand, dim: usize, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    for _ in 0..INVARIANCE_TRIALS {
        let v = sphere_point(dim, &mut rng);
        let rotation = Complex64::from_polar(1.0, rng.random::<f64>() * TAU);
        let w: Vec<Complex64> = v.iter().map(|z| z * rotation).collect();
        let (x, y) = match (integrand.eval_vector(&v), integrand.eval_vector(&w)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => continue,
        };
        let residual = (x - y).norm() / x.norm().max(f64::MIN_POSITIVE);
        if residual > INVARIANCE_TOL {
            return Err(Error::ConventionMismatch { residual });
        }
    }
    Ok(())
}

/// Integral over the sphere S^{2q+1} of the integrand (normalized measure).
///
/// (|α|², |β|²) is Dirichlet(1, 1, q − 1) distributed and the phases of α, β
/// are uniform and independent. The phase averages are trapezoid sums, exact
/// for the trigonometric polynomials that occur; the radial part uses
/// |α| = y and |β|² = (1 − y²)s with Gauss–Legendre in (y, s).
fn quadrature(integrand: &Integrand, q: usize, nodes: usize) -> Result<(Complex64, u64)> {
    let phases = (integrand.a + integrand.b + integrand.phase_power.abs() + 2) as usize;
    let rotations: Vec<Complex64> =
        (0..phases).map(|i| Complex64::from_polar(1.0, TAU * i as f64 / phases as f64)).collect();
    let rule = gauss_legendre_unit(nodes);
    let s_rule: Vec<(f64, f64)> = if q >= 2 { rule.clone() } else { vec![(1.0, 1.0)] };
    let qf = q as f64;
    let mut total = Complex64::new(0.0, 0.0);
    let mut evaluations = 0u64;
    for &(y, wy) in &rule {
        let rest = 1.0 - y * y;
        for &(s, ws) in &s_rule {
            let radial = if q >= 2 {
                qf * (qf - 1.0) * rest.powi(q as i32 - 1) * (1.0 - s).powi(q as i32 - 2)
            } else {
                1.0
            };
            let weight = wy * ws * 2.0 * y * radial;
            let r_beta = (rest * s).sqrt();
            let mut phase_sum = Complex64::new(0.0, 0.0);
            for ra in &rotations {
                for rb in &rotations {
                    phase_sum += integrand.eval(ra * y, rb * r_beta)?;
                    evaluations += 1;
                }
            }
            total += weight * phase_sum / (phases * phases) as f64;
        }
    }
    Ok((total, evaluations))
}
