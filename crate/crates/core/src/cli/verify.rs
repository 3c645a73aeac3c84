use clap::ValueEnum;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::config::CommonArgs;
use crate::error::{Error, Result};
use crate::groupops::{near_identity, random_l_element, section_smallest, torus_point, CMatrix, PhaseSign};
use crate::oracle::{
    equivariance_check, mc_transform_at, projective_eigen_oracle, torus_eta_initial, ProjectiveMethod,
};
use crate::rootdata::{make_case, CaseParams, Field};
use crate::specialfn::{gamma, siegel_log_gamma};
use crate::spectrum::{eta_closed, eta_initial, eta_recursive_along, sg_ratio, step_ratio};
use crate::weights::{enumerate, is_member, mu0, PathOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Gamma,
    Recursion,
    Torus,
    Transform,
    Sphere,
    Equivariance,
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Gamma => "gamma",
            Suite::Recursion => "recursion",
            Suite::Torus => "torus",
            Suite::Transform => "transform",
            Suite::Sphere => "sphere",
            Suite::Equivariance => "equivariance",
            Suite::All => "all",
        }
    }

    fn needs_seed(self) -> bool {
        matches!(self, Suite::Transform | Suite::Sphere | Suite::Equivariance | Suite::All)
    }
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub case: String,
    pub check: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(suite: Suite, case: &str, check: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check {
            suite: suite.as_str(),
            case: case.to_string(),
            check: check.into(),
            measured,
            tolerance,
            passed: measured < tolerance,
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{:<13}{:<14}{:<38}measured {:.6e}  tol {:.1e}  {}",
            self.suite,
            self.case,
            self.check,
            self.measured,
            self.tolerance,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

/// Real and complex spectral parameters away from the half-integer pole lattice.
pub const CHECK_LAMBDAS: [(f64, f64); 10] = [
    (0.37, 0.0),
    (1.91, 0.0),
    (3.23, 0.0),
    (5.77, 0.0),
    (8.41, 0.0),
    (-1.63, 0.0),
    (2.2, 0.7),
    (4.1, -1.3),
    (-1.7, 0.4),
    (6.3, 2.9),
];

const DEFAULT_TRANSFORM_SAMPLES: u64 = 200_000;
const DEFAULT_SPHERE_SAMPLES: u64 = 1_000_000;
const DEFAULT_EQUIVARIANCE_SAMPLES: u64 = 100_000;

pub fn run_suite(suite: Suite, args: &CommonArgs) -> Result<Vec<Check>> {
    let projective;
    let args = if suite == Suite::Sphere {
        projective = args.with_projective_defaults();
        &projective
    } else {
        args
    };
    let seed = if suite.needs_seed() { Some(args.require_seed()?) } else { None };
    let cases = args.cases()?;
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Gamma {
        checks.extend(gamma_checks());
    }
    if all || suite == Suite::Recursion {
        for case in &cases {
            checks.extend(recursion_checks(case, args.max_degree)?);
        }
    }
    if all || suite == Suite::Torus {
        for case in &cases {
            checks.extend(torus_checks(case)?);
        }
    }
    let seed = seed.unwrap_or_default();
    if all || suite == Suite::Transform {
        let samples = args.samples.unwrap_or(DEFAULT_TRANSFORM_SAMPLES);
        for case in &cases {
            checks.extend(transform_checks(case, samples, seed)?);
        }
    }
    if all || suite == Suite::Sphere {
        let sphere_cases: Vec<CaseParams> = match args.case()? {
            Some(case) if case.field == Field::C && case.p == 1 => vec![case],
            Some(case) => {
                return Err(Error::InvalidArgument(format!("sphere suite needs a (C, 1, q) case, got {case}")))
            }
            None => cases.iter().copied().filter(|c| c.field == Field::C && c.p == 1).collect(),
        };
        let samples = args.samples.unwrap_or(DEFAULT_SPHERE_SAMPLES);
        for case in &sphere_cases {
            checks.extend(sphere_checks(case, samples, seed)?);
        }
    }
    if all || suite == Suite::Equivariance {
        let eq_cases = match args.case()? {
            Some(case) => vec![case],
            None => vec![
                make_case(Field::R, 2, 3, 0, false)?,
                make_case(Field::C, 1, 2, 1, false)?,
            ],
        };
        let samples = args.samples.unwrap_or(DEFAULT_EQUIVARIANCE_SAMPLES);
        for case in &eq_cases {
            checks.extend(equivariance_checks(case, samples, seed)?);
        }
    }
    Ok(checks)
}

fn relative(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

pub fn gamma_checks() -> Vec<Check> {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let re = |x: f64| Complex64::new(x, 0.0);
    let mut checks = vec![
        Check::new(Suite::Gamma, "-", "gamma(1/2) = sqrt(pi)", relative(gamma(re(0.5)), re(sqrt_pi)), 1e-13),
        Check::new(Suite::Gamma, "-", "gamma(3) = 2", relative(gamma(re(3.0)), re(2.0)), 1e-13),
        Check::new(
            Suite::Gamma,
            "-",
            "siegel gamma_{2,1}(3)",
            relative(siegel_log_gamma(2, 1, re(3.0)).value.exp(), re(1.5 * sqrt_pi)),
            1e-13,
        ),
    ];
    let points = [
        Complex64::new(0.3, 0.2),
        Complex64::new(1.7, -2.1),
        Complex64::new(4.25, 0.5),
        Complex64::new(-2.6, 1.1),
        Complex64::new(-0.4, 0.0),
    ];
    let functional = points
        .iter()
        .map(|&z| relative(gamma(z + 1.0), z * gamma(z)))
        .fold(0.0, f64::max);
    checks.push(Check::new(Suite::Gamma, "-", "gamma(z+1) = z gamma(z)", functional, 1e-13));
    let pi = std::f64::consts::PI;
    let reflection = points
        .iter()
        .map(|&z| relative(gamma(z) * gamma(1.0 - z), pi / (z * pi).sin()))
        .fold(0.0, f64::max);
    checks.push(Check::new(Suite::Gamma, "-", "reflection formula", reflection, 1e-13));
    checks
}

pub fn recursion_checks(case: &CaseParams, max_degree: i64) -> Result<Vec<Check>> {
    let label = case.to_string();
    let weights = enumerate(case, max_degree);
    let lambdas: Vec<Complex64> = CHECK_LAMBDAS.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
    let (mut closed_vs_rec, mut paths, mut casimir) = (0.0f64, 0.0f64, 0.0f64);
    for mu in &weights {
        for &lam in &lambdas {
            let closed = eta_closed(case, &mu.0, lam)?;
            let rec = eta_recursive_along(case, &mu.0, lam, PathOrder::LeftToRight)?.value;
            let greedy = eta_recursive_along(case, &mu.0, lam, PathOrder::GreedyRightmost)?.value;
            if closed.is_pole() || rec.is_pole() {
                continue;
            }
            closed_vs_rec = closed_vs_rec.max(relative(rec.eta, closed.eta));
            paths = paths.max(relative(greedy.eta, rec.eta));
            for j in 0..case.p {
                let nu = mu.shifted(j, 1);
                if !is_member(case, &nu.0)? {
                    continue;
                }
                let step = step_ratio(case, &mu.0, j + 1, lam)?;
                let sg = sg_ratio(case, &mu.0, &nu.0, lam)?;
                casimir = casimir.max((sg.eta - step.eta).norm() / step.eta.norm().max(1.0));
            }
        }
    }
    Ok(vec![
        Check::new(Suite::Recursion, &label, format!("closed vs recursive ({} weights)", weights.len()), closed_vs_rec, 1e-9),
        Check::new(Suite::Recursion, &label, "path independence", paths, 1e-10),
        Check::new(Suite::Recursion, &label, "casimir ratio vs step ratio", casimir, 1e-12),
    ])
}

pub fn torus_checks(case: &CaseParams) -> Result<Vec<Check>> {
    let base = case.rho() - case.k as f64;
    let mut worst = 0.0f64;
    for i in 0..=5 {
        let lambda = base + i as f64;
        let oracle = torus_eta_initial(case, lambda, 64)?;
        let exact = eta_initial(case, Complex64::new(lambda, 0.0));
        worst = worst.max(relative(oracle.estimate, exact.eta));
    }
    Ok(vec![Check::new(Suite::Torus, &case.to_string(), "torus ratio vs eta_initial", worst, 1e-6)])
}

/// Evaluation points with f(k) ≠ 0: a torus point and an L-translate of another.
fn transform_points(case: &CaseParams, seed: u64) -> Result<Vec<CMatrix>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t1: Vec<f64> = (0..case.p).map(|j| 0.35 + 0.25 * j as f64).collect();
    let t2: Vec<f64> = (0..case.p).map(|j| 0.9 - 0.3 * j as f64).collect();
    let a = random_l_element(case, &mut rng).mat;
    let b = random_l_element(case, &mut rng).mat;
    Ok(vec![torus_point(case, &t1)?.mat, a * torus_point(case, &t2)?.mat * b])
}

pub fn transform_checks(case: &CaseParams, samples: u64, seed: u64) -> Result<Vec<Check>> {
    let label = case.to_string();
    let lambda = 4f64.max(case.rho() - case.k as f64);
    let exact = eta_closed(case, &mu0(case).0, Complex64::new(lambda, 0.0))?.eta;
    let f = |m: &CMatrix| section_smallest(case, m);
    let mut checks = Vec::new();
    for (i, k) in transform_points(case, seed)?.iter().enumerate() {
        let r = mc_transform_at(case, lambda, f, k, samples, seed.wrapping_add(i as u64), PhaseSign::Plus)?;
        let fk = f(k);
        let sigmas = (r.estimate / fk - exact).norm() / (r.uncertainty.value() / fk.norm());
        checks.push(Check::new(
            Suite::Transform,
            &label,
            format!("point {} eigenvalue sigmas lambda={lambda}", i + 1),
            sigmas,
            3.0,
        ));
    }
    Ok(checks)
}

pub fn sphere_checks(case: &CaseParams, samples: u64, seed: u64) -> Result<Vec<Check>> {
    let label = case.to_string();
    let l = case.l as u32;
    let base = case.rho() - case.k as f64;
    let mut checks = Vec::new();
    for b in 0..3u32 {
        let a = b + l;
        let mu = [(a + b) as i64];
        for step in [0.0, 2.0, 4.0] {
            let lambda = base + step;
            let exact = eta_closed(case, &mu, Complex64::new(lambda, 0.0))?.eta;
            let quad = projective_eigen_oracle(case, a, b, lambda, ProjectiveMethod::Quadrature { nodes: 32 }, PhaseSign::Plus)?;
            checks.push(Check::new(
                Suite::Sphere,
                &label,
                format!("quadrature error mu={} lambda={lambda}", mu[0]),
                // some targets vanish exactly, so small values are compared absolutely
                (quad.estimate - exact).norm() / exact.norm().max(1e-3),
                1e-9,
            ));
            let mc_seed = seed.wrapping_add(((b as u64) << 8) | step as u64);
            let method = ProjectiveMethod::MonteCarlo { samples, seed: mc_seed };
            let mc = projective_eigen_oracle(case, a, b, lambda, method, PhaseSign::Plus)?;
            checks.push(Check::new(
                Suite::Sphere,
                &label,
                format!("mc sigmas mu={} lambda={lambda}", mu[0]),
                mc.deviation(exact),
                3.0,
            ));
        }
    }
    Ok(checks)
}

pub fn equivariance_checks(case: &CaseParams, samples: u64, seed: u64) -> Result<Vec<Check>> {
    let label = case.to_string();
    let lambda = 4f64.max(case.rho() - case.k as f64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for i in 0..5 {
        let g = near_identity(case, 0.3, &mut rng);
        let report = equivariance_check(case, lambda, &g, 5, samples, seed.wrapping_add(1000 * (i + 1)))?;
        checks.push(Check::new(
            Suite::Equivariance,
            &label,
            format!("g{} residual/sigma (rel {:.2e})", i + 1, report.relative_residual),
            report.residual / report.sigma,
            3.0,
        ));
    }
    Ok(checks)
}

pub fn render_report(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        out.push_str(&c.line());
        out.push('\n');
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    out.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
    out
}
