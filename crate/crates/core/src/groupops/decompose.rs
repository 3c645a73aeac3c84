use num_complex::Complex64;

use super::{leading_det, CMatrix, GroupElement, Membership};
use crate::error::{Error, Result};
use crate::rootdata::CaseParams;

/// g = κ · (M A N) in the positive-diagonal gauge.
#[derive(Debug, Clone, PartialEq)]
pub struct KPDecomposition {
    pub kappa: GroupElement,
    /// ln |det X_b| for the leading p×p block X_b of κ⁻¹g.
    pub log_a: f64,
    pub chi_phase: Complex64,
}

const CONDITION_LIMIT: f64 = 1e12;

/// Cartan involution g ↦ (g^*)⁻¹.
pub fn theta(g: &GroupElement) -> Result<GroupElement> {
    let mat = match g.tag {
        Membership::InK => g.mat.clone(),
        Membership::InG => g
            .mat
            .adjoint()
            .try_inverse()
            .ok_or_else(|| Error::InvalidArgument("singular group element".into()))?,
    };
    Ok(GroupElement { mat, tag: g.tag })
}

/// QR factorization g = κ R with R upper triangular and positive diagonal.
pub fn kp_decompose(case: &CaseParams, g: &CMatrix) -> Result<KPDecomposition> {
    let n = case.dim();
    if g.nrows() != n || g.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: g.nrows() });
    }
    let qr = g.clone().qr();
    let mut q = qr.q();
    let r = qr.r();
    let mut log_a = 0.0;
    let (mut smallest, mut largest) = (f64::INFINITY, 0.0f64);
    for j in 0..n {
        let rjj = r[(j, j)];
        let norm = rjj.norm();
        smallest = smallest.min(norm);
        largest = largest.max(norm);
        if norm > 0.0 {
            let phase = rjj / norm;
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
        if j < case.p {
            log_a += norm.ln();
        }
    }
    let condition = largest / smallest;
    if !condition.is_finite() || condition > CONDITION_LIMIT {
        return Err(Error::SingularBlock { condition });
    }
    Ok(KPDecomposition {
        kappa: GroupElement { mat: q, tag: Membership::InK },
        log_a,
        chi_phase: Complex64::new(1.0, 0.0),
    })
}

/// ln |det| of the leading p×p block of g (the A-part in the opposite
/// Bruhat cell); for g = k⁻¹h this is ln |Cos(k, h)|.
pub fn log_alpha(case: &CaseParams, g: &CMatrix) -> f64 {
    leading_det(g, case.p).norm().ln()
}

/// (π_λ(g) f)(k) = χ(m(g⁻¹k))⁻¹ · a(g⁻¹k)^{−λ−ρ} · f(κ(g⁻¹k)).
pub fn pi_action<F>(
    case: &CaseParams,
    lambda: Complex64,
    g: &GroupElement,
    f: F,
    k: &CMatrix,
) -> Result<Complex64>
where
    F: Fn(&CMatrix) -> Complex64,
{
    let ginv = g.inverse()?;
    let dec = kp_decompose(case, &(&ginv.mat * k))?;
    let power = ((-lambda - case.rho()) * dec.log_a).exp();
    Ok(power * f(&dec.kappa.mat) / dec.chi_phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupops::{haar_sample, near_identity, random_l_element, section_smallest, torus_point};
    use crate::rootdata::{make_case, Field};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cases() -> Vec<CaseParams> {
        vec![
            make_case(Field::R, 2, 3, 0, false).unwrap(),
            make_case(Field::C, 1, 2, 1, false).unwrap(),
            make_case(Field::C, 2, 3, -2, false).unwrap(),
        ]
    }

    #[test]
    fn theta_properties() {
        let case = make_case(Field::C, 2, 2, 1, false).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = near_identity(&case, 0.4, &mut rng);
            let back = theta(&theta(&g).unwrap()).unwrap();
            assert!((back.mat - &g.mat).camax() < 1e-12);
            let k = haar_sample(&case, &mut rng).as_g();
            assert!((theta(&k).unwrap().mat - &k.mat).camax() < 1e-12);
        }
        let r = make_case(Field::R, 2, 3, 0, false).unwrap();
        let mut d = CMatrix::identity(5, 5);
        d[(0, 0)] = Complex64::new(2.0, 0.0);
        d[(1, 1)] = Complex64::new(0.5, 0.0);
        let g = GroupElement::in_g(&r, d).unwrap();
        let t = theta(&g).unwrap();
        assert!((t.mat[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((t.mat[(1, 1)].re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn reconstruction_and_k_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for case in cases() {
            let n = case.dim();
            for _ in 0..10 {
                let g = near_identity(&case, 0.5, &mut rng);
                let dec = kp_decompose(&case, &g.mat).unwrap();
                assert!(GroupElement::in_k(&case, dec.kappa.mat.clone()).is_ok());
                let r = dec.kappa.mat.adjoint() * &g.mat;
                for i in 0..n {
                    assert!(r[(i, i)].im.abs() < 1e-12 && r[(i, i)].re > 0.0);
                    for j in 0..i {
                        assert!(r[(i, j)].norm() < 1e-12);
                    }
                }
                let x = leading_det(&r, case.p);
                assert!((x.norm().ln() - dec.log_a).abs() < 1e-12);
                assert!(x.im.abs() < 1e-12 && x.re > 0.0);

                let k = haar_sample(&case, &mut rng);
                let dk = kp_decompose(&case, &k.mat).unwrap();
                assert!(dk.log_a.abs() < 1e-12);
                assert!((dk.kappa.mat - &k.mat).camax() < 1e-12);
            }
        }
    }

    #[test]
    fn singular_input_is_rejected() {
        let case = make_case(Field::R, 2, 3, 0, false).unwrap();
        let mut g = CMatrix::identity(5, 5);
        g[(4, 4)] = Complex64::new(0.0, 0.0);
        assert!(matches!(kp_decompose(&case, &g), Err(Error::SingularBlock { .. })));
    }

    #[test]
    fn log_alpha_on_torus_and_gauge() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for case in cases() {
            let t: Vec<f64> = (0..case.p).map(|j| 0.3 + 0.4 * j as f64).collect();
            let x = torus_point(&case, &t).unwrap();
            let expected: f64 = t.iter().map(|s| s.cos().abs().ln()).sum();
            assert!((log_alpha(&case, &x.mat) - expected).abs() < 1e-13);
            for _ in 0..10 {
                let k = haar_sample(&case, &mut rng);
                let h1 = random_l_element(&case, &mut rng);
                let h2 = random_l_element(&case, &mut rng);
                let moved = &h1.mat * &k.mat * &h2.mat;
                assert!((log_alpha(&case, &moved) - log_alpha(&case, &k.mat)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn pi_action_examples_and_group_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for case in cases() {
            let f = |m: &CMatrix| section_smallest(&case, m);
            let lambda = Complex64::new(0.7, 0.4);
            for _ in 0..10 {
                let k = haar_sample(&case, &mut rng);
                let e = GroupElement::identity(&case).as_g();
                let v = pi_action(&case, lambda, &e, f, &k.mat).unwrap();
                assert!((v - f(&k.mat)).norm() < 1e-12);

                let u = haar_sample(&case, &mut rng);
                let v = pi_action(&case, lambda, &u.as_g(), f, &k.mat).unwrap();
                assert!((v - f(&(u.mat.adjoint() * &k.mat))).norm() < 1e-12);

                let g1 = near_identity(&case, 0.4, &mut rng);
                let g2 = near_identity(&case, 0.4, &mut rng);
                let inner = |m: &CMatrix| pi_action(&case, lambda, &g2, f, m).unwrap();
                let lhs = pi_action(&case, lambda, &g1, inner, &k.mat).unwrap();
                let rhs = pi_action(&case, lambda, &g1.mul(&g2), f, &k.mat).unwrap();
                assert!((lhs - rhs).norm() < 1e-9 * rhs.norm().max(1.0), "{lhs} {rhs}");
            }
        }
    }

    #[test]
    fn change_of_variables_invariance() {
        // E_h[f(κ(g⁻¹h)) a(g⁻¹h)^{−2ρ}] = E_h[f(h)] for f(h) = Σ_{j<p} |h_{0j}|², mean p/(n+1)
        let case = make_case(Field::C, 2, 3, 1, false).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let g = near_identity(&case, 0.5, &mut rng);
        let ginv = g.inverse().unwrap();
        let f = |m: &CMatrix| (0..case.p).map(|j| m[(0, j)].norm_sqr()).sum::<f64>();
        let samples = 200_000;
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for _ in 0..samples {
            let h = haar_sample(&case, &mut rng);
            let dec = kp_decompose(&case, &(&ginv.mat * &h.mat)).unwrap();
            let v = f(&dec.kappa.mat) * (-2.0 * case.rho() * dec.log_a).exp();
            sum += v;
            sum_sq += v * v;
        }
        let nf = samples as f64;
        let mean = sum / nf;
        let sigma = ((sum_sq / nf - mean * mean) / nf).sqrt();
        let expected = case.p as f64 / case.dim() as f64;
        assert!((mean - expected).abs() < 3.0 * sigma, "{mean} vs {expected} ± {sigma}");
    }
}
