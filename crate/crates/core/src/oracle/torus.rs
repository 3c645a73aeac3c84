use std::f64::consts::FRAC_PI_2;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;

use super::{OracleResult, Uncertainty};
use crate::error::{Error, Result};
use crate::rootdata::{root_datum, CaseParams};

/// Largest number of nodes per axis accepted by the torus oracle.
pub const MAX_NODES_PER_AXIS: usize = 400;

/// Gauss–Legendre nodes and weights on [0, 1].
pub fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(n).expect("at least one node");
    GaussLegendre::new(n)
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
        .collect()
}

/// ∫ ∏|cos t_j|^e δ(t) dt over the Weyl chamber π/2 ≥ t_1 ≥ … ≥ t_p ≥ 0.
///
/// The chamber is parametrized by t_1 = (π/2)s_1, t_j = t_{j−1}s_j on the unit
/// cube, with an n-point Gauss–Legendre rule per axis. The integrand is
/// analytic there whenever e is a nonnegative integer.
pub fn torus_integral(case: &CaseParams, exponent: f64, n: usize) -> f64 {
    let p = case.p;
    let rule = gauss_legendre_unit(n);
    let roots: Vec<(Vec<f64>, i32)> = root_datum(case)
        .roots
        .into_iter()
        .filter(|(r, _)| r.multiplicity > 0)
        .map(|(r, _)| (r.coeffs.iter().map(|&c| c as f64).collect(), r.multiplicity as i32))
        .collect();
    let mut index = vec![0usize; p];
    let mut t = vec![0.0; p];
    let mut total = 0.0;
    loop {
        let mut weight = 1.0;
        let mut jacobian = FRAC_PI_2;
        let mut upper = FRAC_PI_2;
        for j in 0..p {
            let (s, w) = rule[index[j]];
            weight *= w;
            t[j] = upper * s;
            if j + 1 < p {
                jacobian *= t[j];
            }
            upper = t[j];
        }
        let mut value: f64 = t.iter().map(|s| s.cos().abs().powf(exponent)).product();
        for (coeffs, m) in &roots {
            let arg: f64 = coeffs.iter().zip(&t).map(|(c, s)| c * s).sum();
            value *= (2.0 * arg.sin()).abs().powi(*m);
        }
        total += weight * jacobian * value;

        let mut axis = 0;
        loop {
            if axis == p {
                return total;
            }
            index[axis] += 1;
            if index[axis] < n {
                break;
            }
            index[axis] = 0;
            axis += 1;
        }
    }
}

/// η_{μ⁰}(λ) as the torus ratio I(λ)/I(ρ−k), estimated with n and 2n nodes per axis.
pub fn torus_eta_initial(case: &CaseParams, lambda: f64, n_points: usize) -> Result<OracleResult> {
    let base = case.rho() - case.k as f64;
    if lambda < base {
        return Err(Error::DomainError(format!("lambda = {lambda} below rho - k = {base}")));
    }
    if n_points == 0 || 2 * n_points > MAX_NODES_PER_AXIS {
        return Err(Error::InvalidArgument(format!(
            "torus oracle needs 1 <= 2 * n_points <= {MAX_NODES_PER_AXIS}, got n_points = {n_points}"
        )));
    }
    let exponent = lambda - base;
    let ratio = |n| torus_integral(case, exponent, n) / torus_integral(case, 0.0, n);
    let coarse = ratio(n_points);
    let fine = ratio(2 * n_points);
    let bound = (fine - coarse).abs().max(4.0 * f64::EPSILON * fine.abs());
    Ok(OracleResult {
        estimate: Complex64::new(fine, 0.0),
        uncertainty: Uncertainty::Bound(bound),
        n_samples: (2 * n_points as u64).pow(case.p as u32),
        seed: 0,
        rejected: 0,
    })
}
