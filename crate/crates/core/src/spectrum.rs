//! The K-spectrum η_μ(λ) of the Cos^λ transform.
//!
//! Three routes are exposed and cross-checked by the test suite:
//!
//! * the closed Siegel-Gamma form ([`eta_closed`]),
//! * the base value [`eta_initial`] propagated by [`step_ratio`] along a
//!   lattice path ([`eta_recursive`]),
//! * the Casimir ratio [`sg_ratio`] built from ω.
//!
//! λ is always the complex scalar spectral parameter. Where Gamma poles in
//! numerator and denominator coincide, the value is the limit in λ, computed
//! from symmetric perturbations and flagged [`Status::Removable`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rootdata::{omega, CaseParams};
use crate::specialfn::{
    is_gamma_pole, richardson_symmetric, siegel_factor_args, siegel_log_gamma_vec, Status,
    POLE_TOL, REMOVABLE_EPS,
};
use crate::weights::{is_member, lattice_path, mu0, s_set, PathOrder, Weight};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralValue {
    pub eta: Complex64,
    pub status: Status,
}

impl SpectralValue {
    pub fn finite(eta: Complex64) -> Self {
        SpectralValue { eta, status: Status::Finite }
    }

    pub fn pole() -> Self {
        SpectralValue { eta: Complex64::new(f64::INFINITY, 0.0), status: Status::Pole }
    }

    pub fn is_pole(&self) -> bool {
        self.status == Status::Pole
    }
}

/// Regular part of a product of meromorphic factors at one λ, plus the
/// number of vanishing and singular factors there.
#[derive(Debug, Clone, Copy)]
struct Local {
    value: Complex64,
    zeros: usize,
    poles: usize,
}

impl Local {
    fn regular(value: Complex64) -> Self {
        Local { value, zeros: 0, poles: 0 }
    }

    fn times(self, other: Local) -> Local {
        Local {
            value: self.value * other.value,
            zeros: self.zeros + other.zeros,
            poles: self.poles + other.poles,
        }
    }
}

/// Turn a local evaluation into a value, taking the λ-limit when zeros and poles balance.
fn resolve<F: Fn(Complex64) -> Local>(eval: F, lambda: Complex64) -> SpectralValue {
    let here = eval(lambda);
    if here.zeros == 0 && here.poles == 0 {
        return SpectralValue::finite(here.value);
    }
    if here.poles > here.zeros {
        return SpectralValue::pole();
    }
    if here.zeros > here.poles {
        return SpectralValue::finite(Complex64::new(0.0, 0.0));
    }
    let eta = richardson_symmetric(|eps| eval(lambda + eps).value, REMOVABLE_EPS);
    SpectralValue { eta, status: Status::Removable }
}

/// Γ_{p,d} ratio with per-factor pole counting. Numerator poles count as
/// poles of the product, denominator poles as zeros.
fn gamma_ratio(d: i64, num: &[Vec<Complex64>], den: &[Vec<Complex64>]) -> Local {
    let poles_in = |args: &[Vec<Complex64>]| {
        args.iter()
            .map(|v| siegel_factor_args(d, v).filter(|&a| is_gamma_pole(a)).count())
            .sum::<usize>()
    };
    let poles = poles_in(num);
    let zeros = poles_in(den);
    if poles > 0 || zeros > 0 {
        return Local { value: Complex64::new(f64::NAN, f64::NAN), zeros, poles };
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for v in num {
        acc += siegel_log_gamma_vec(d, v).value;
    }
    for v in den {
        acc -= siegel_log_gamma_vec(d, v).value;
    }
    Local::regular(acc.exp())
}

fn scalar(p: usize, z: Complex64) -> Vec<Complex64> {
    vec![z; p]
}

/// Γ_{p,d}(d(n+1)/2) / Γ_{p,d}(dp/2).
pub fn normalizing_constant(case: &CaseParams) -> f64 {
    let p = case.p;
    let d = case.d;
    let top = Complex64::new(case.rho(), 0.0);
    let bottom = Complex64::new(0.5 * (d * p as i64) as f64, 0.0);
    let num = siegel_log_gamma_vec(d, &scalar(p, top)).value;
    let den = siegel_log_gamma_vec(d, &scalar(p, bottom)).value;
    (num - den).exp().re
}

fn initial_local(case: &CaseParams, constant: f64, lambda: Complex64) -> Local {
    let (p, d) = (case.p, case.d);
    let rho = case.rho();
    let k = case.k as f64;
    let num = scalar(p, 0.5 * (lambda - rho + k + (d * p as i64) as f64));
    let den = scalar(p, 0.5 * (lambda + rho + k));
    let mut local = gamma_ratio(d, &[num], &[den]);
    local.value *= constant;
    local
}

/// η_{μ⁰}(λ): the base eigenvalue.
pub fn eta_initial(case: &CaseParams, lambda: Complex64) -> SpectralValue {
    let constant = normalizing_constant(case);
    resolve(|lam| initial_local(case, constant, lam), lambda)
}

/// The μ-independent factor G(λ) of the spectrum.
///
/// The sign (−1)^{−pk/2} is not applied here: it is carried by c(μ) =
/// (−1)^{(|μ|−pk)/2} so that only integer exponents occur. With this
/// convention η_μ(λ) = c(μ) · G(λ) · Γ_{p,d}(½(−λ+ρ+μ)) / Γ_{p,d}(½(λ+ρ+μ)).
pub fn big_g(case: &CaseParams, lambda: Complex64) -> SpectralValue {
    let constant = normalizing_constant(case);
    let (p, d) = (case.p, case.d);
    let rho = case.rho();
    let k = case.k as f64;
    resolve(
        |lam| {
            let num = scalar(p, 0.5 * (lam - rho + k + (d * p as i64) as f64));
            let den = scalar(p, 0.5 * (-lam + rho + k));
            let mut local = gamma_ratio(d, &[num], &[den]);
            local.value *= constant;
            local
        },
        lambda,
    )
}

/// c(μ) = (−1)^{(|μ| − pk)/2}.
pub fn sign_c(case: &CaseParams, mu: &Weight) -> f64 {
    let exponent = (mu.total() - case.p as i64 * case.k) / 2;
    if exponent.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_member(case: &CaseParams, mu: &[i64]) -> Result<()> {
    if is_member(case, mu)? {
        Ok(())
    } else {
        Err(Error::NotInLattice(mu.to_vec()))
    }
}

/// Closed form of η_μ(λ) as a product of Siegel Gamma ratios.
pub fn eta_closed(case: &CaseParams, mu: &[i64], lambda: Complex64) -> Result<SpectralValue> {
    check_member(case, mu)?;
    let weight = Weight(mu.to_vec());
    let constant = normalizing_constant(case) * sign_c(case, &weight);
    let (p, d) = (case.p, case.d);
    let rho = case.rho();
    let k = case.k as f64;
    Ok(resolve(
        |lam| {
            let num = [
                scalar(p, 0.5 * (lam - rho + k + (d * p as i64) as f64)),
                mu.iter().map(|&m| 0.5 * (-lam + rho + m as f64)).collect(),
            ];
            let den = [
                scalar(p, 0.5 * (-lam + rho + k)),
                mu.iter().map(|&m| 0.5 * (lam + rho + m as f64)).collect(),
            ];
            let mut local = gamma_ratio(d, &num, &den);
            local.value *= constant;
            local
        },
        lambda,
    ))
}

/// Shift μ_j + ρ − d(j − 1) appearing in the step ratio (j one-based).
fn step_shift(case: &CaseParams, mu: &[i64], j: usize) -> f64 {
    mu[j - 1] as f64 + case.rho() - (case.d * (j as i64 - 1)) as f64
}

fn step_local(case: &CaseParams, mu: &[i64], j: usize, lambda: Complex64) -> Local {
    let s = step_shift(case, mu, j);
    let num = lambda - s;
    let den = lambda + s;
    let zero = num.norm() <= POLE_TOL;
    let pole = den.norm() <= POLE_TOL;
    if zero || pole {
        return Local {
            value: Complex64::new(f64::NAN, f64::NAN),
            zeros: zero as usize,
            poles: pole as usize,
        };
    }
    Local::regular(num / den)
}

/// η_{μ+2ε_j}(λ) / η_μ(λ) = (λ − μ_j − ρ + d(j−1)) / (λ + μ_j + ρ − d(j−1)), j one-based.
pub fn step_ratio(case: &CaseParams, mu: &[i64], j: usize, lambda: Complex64) -> Result<SpectralValue> {
    check_member(case, mu)?;
    if j == 0 || j > case.p {
        return Err(Error::IndexOutOfRange { j, p: case.p });
    }
    let local = step_local(case, mu, j, lambda);
    Ok(if local.poles > 0 {
        SpectralValue::pole()
    } else if local.zeros > 0 {
        SpectralValue::finite(Complex64::new(0.0, 0.0))
    } else {
        SpectralValue::finite(local.value)
    })
}

/// Recursive evaluation together with the lattice path used (zero-based indices).
#[derive(Debug, Clone, PartialEq)]
pub struct RecursiveEta {
    pub value: SpectralValue,
    pub path: Vec<usize>,
}

/// η_μ(λ) from η_{μ⁰}(λ) and step ratios along the left-to-right path.
pub fn eta_recursive(case: &CaseParams, mu: &[i64], lambda: Complex64) -> Result<RecursiveEta> {
    eta_recursive_along(case, mu, lambda, PathOrder::LeftToRight)
}

pub fn eta_recursive_along(
    case: &CaseParams,
    mu: &[i64],
    lambda: Complex64,
    order: PathOrder,
) -> Result<RecursiveEta> {
    let path = lattice_path(case, mu, order)?;
    let constant = normalizing_constant(case);
    let start = mu0(case);
    let eval = |lam: Complex64| {
        let mut local = initial_local(case, constant, lam);
        let mut current = start.clone();
        for &j in &path {
            local = local.times(step_local(case, &current.0, j + 1, lam));
            current = current.shifted(j, 1);
        }
        local
    };
    Ok(RecursiveEta { value: resolve(eval, lambda), path })
}

/// Casimir ratio (2λ − ω(ν) + ω(μ)) / (2λ + ω(ν) − ω(μ)) for ν ∈ S(μ).
pub fn sg_ratio(case: &CaseParams, mu: &[i64], nu: &[i64], lambda: Complex64) -> Result<SpectralValue> {
    let neighbours = s_set(case, mu)?;
    if !neighbours.iter().any(|w| w.0 == nu) {
        return Err(Error::NotNeighbors(mu.to_vec(), nu.to_vec()));
    }
    let delta = (omega(case, nu)? - omega(case, mu)?).to_f64();
    let num = 2.0 * lambda - delta;
    let den = 2.0 * lambda + delta;
    Ok(if den.norm() <= POLE_TOL {
        if num.norm() <= POLE_TOL {
            // only at ν = μ, λ = 0
            SpectralValue { eta: Complex64::new(1.0, 0.0), status: Status::Removable }
        } else {
            SpectralValue::pole()
        }
    } else {
        SpectralValue::finite(num / den)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{make_case, Field};

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn r23() -> CaseParams {
        make_case(Field::R, 2, 3, 0, false).unwrap()
    }

    fn c12() -> CaseParams {
        make_case(Field::C, 1, 2, 1, false).unwrap()
    }

    /// η_{(1)}(λ) = 8/(λ(λ+2)) for (C,1,2,l=1), obtained by cancelling Γ(λ/2 + 2) = (λ/2+1)(λ/2)Γ(λ/2).
    fn c12_base(lambda: f64) -> f64 {
        8.0 / (lambda * (lambda + 2.0))
    }

    fn close(a: Complex64, b: f64, tol: f64) -> bool {
        (a - re(b)).norm() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn initial_examples() {
        assert!(close(eta_initial(&r23(), re(1.5)).eta, 1.0, 1e-13));
        // 0.75 · Γ(2)Γ(1.5) / (Γ(3.5)Γ(3)) = 0.75 · (√π/2) / ((15√π/8)·2) = 0.1
        assert!(close(eta_initial(&r23(), re(3.5)).eta, 0.1, 1e-13));
        assert!(close(eta_initial(&c12(), re(2.0)).eta, 1.0, 1e-13));
        for lam in [0.7, 3.3, 9.1] {
            assert!(close(eta_initial(&c12(), re(lam)).eta, c12_base(lam), 1e-12));
        }
    }

    #[test]
    fn closed_examples() {
        let v = eta_closed(&c12(), &[1], re(4.0)).unwrap();
        assert!(close(v.eta, 1.0 / 3.0, 1e-13));
        let v = eta_closed(&c12(), &[3], re(6.0)).unwrap();
        assert!(close(v.eta, 1.0 / 30.0, 1e-12));
        // η_{(1,1)}(4.5) = 0.05, times step ratio (4.5−1−2.5)/(4.5+1+2.5) = 1/8.
        let v = eta_closed(&r23(), &[3, 1], re(4.5)).unwrap();
        assert_eq!(v.status, Status::Removable);
        assert!(close(v.eta, 0.00625, 1e-9), "{v:?}");
        let base = eta_initial(&r23(), re(4.5));
        assert!(close(base.eta, 0.05, 1e-13));
        assert!(matches!(eta_closed(&r23(), &[2, 0], re(1.0)), Err(Error::NotInLattice(_))));
    }

    #[test]
    fn big_g_examples() {
        let g = big_g(&c12(), re(2.0));
        // η_{(1)}(2) = G(2) · Γ(1)/Γ(3)
        assert!(close(g.eta, 2.0, 1e-13));
        let g = big_g(&r23(), re(1.5));
        assert_eq!(g.status, Status::Finite);
        assert!(g.eta.norm().is_finite());
    }

    #[test]
    fn step_examples() {
        let c = r23();
        let s = step_ratio(&c, &[1, 1], 1, re(3.5)).unwrap();
        assert_eq!(s.eta, re(0.0));
        let s = step_ratio(&c, &[1, 1], 2, re(3.5)).unwrap();
        assert!(close(s.eta, 1.0 / 6.0, 1e-15));
        let far = step_ratio(&c, &[3, 1], 1, re(1e12)).unwrap();
        assert!(close(far.eta, 1.0, 1e-10));
        // denominator zero at λ = −(μ_1 + ρ)
        assert!(step_ratio(&c, &[1, 1], 1, re(-3.5)).unwrap().is_pole());
        assert!(matches!(step_ratio(&c, &[1, 1], 3, re(1.0)), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn recursive_examples() {
        let r = eta_recursive(&r23(), &[3, 1], re(4.5)).unwrap();
        assert_eq!(r.path, vec![0]);
        assert!(close(r.value.eta, 0.00625, 1e-13));
        let lam = Complex64::new(2.2, -0.7);
        let base = eta_recursive(&c12(), &[1], lam).unwrap();
        assert!(base.path.is_empty());
        assert_eq!(base.value, eta_initial(&c12(), lam));
        let c22 = make_case(Field::C, 2, 2, 1, false).unwrap();
        for lam in [0.37, 2.71, 5.13, -1.29] {
            let a = eta_recursive(&c22, &[3, 3], re(lam)).unwrap().value.eta;
            let b = eta_closed(&c22, &[3, 3], re(lam)).unwrap().eta;
            assert!((a - b).norm() <= 1e-9 * b.norm(), "λ={lam}: {a} vs {b}");
        }
    }

    #[test]
    fn sg_examples() {
        let c = r23();
        let v = sg_ratio(&c, &[1, 1], &[3, 1], re(3.5)).unwrap();
        assert_eq!(v.eta, re(0.0));
        let same = sg_ratio(&c, &[3, 1], &[3, 1], Complex64::new(1.1, 0.3)).unwrap();
        assert_eq!(same.eta, re(1.0));
        assert!(matches!(
            sg_ratio(&c, &[1, 1], &[5, 1], re(1.0)),
            Err(Error::NotNeighbors(_, _))
        ));
    }

    #[test]
    fn pole_of_initial_value() {
        // Γ(½(λ − ρ + k + dp)) has a pole at ½(λ − 3 + 1 + 2) = 0, i.e. λ = 0, for (C,1,2,l=1)
        assert!(eta_initial(&c12(), re(0.0)).is_pole());
        assert!(eta_closed(&c12(), &[1], re(0.0)).unwrap().is_pole());
        assert!(eta_recursive(&c12(), &[5], re(0.0)).unwrap().value.is_pole());
    }
}
