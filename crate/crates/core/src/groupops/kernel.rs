use num_complex::Complex64;

use super::{leading_det, relative_leading_det, CMatrix, GroupElement, Membership};
use crate::error::{Error, Result};
use crate::rootdata::{root_datum, CaseParams, Field};

/// Sign of the character exponent in the kernel phase (det X/|det X|)^{±j}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseSign {
    #[default]
    Plus,
    Minus,
}

impl PhaseSign {
    pub fn as_i64(self) -> i64 {
        match self {
            PhaseSign::Plus => 1,
            PhaseSign::Minus => -1,
        }
    }
}

const L_TOL: f64 = 1e-10;

/// |det X|^{λ−ρ} (det X/|det X|)^{±j} for X the leading p×p block of k⁻¹h.
pub fn cos_kernel(
    case: &CaseParams,
    k: &CMatrix,
    h: &CMatrix,
    lambda: Complex64,
    sign: PhaseSign,
) -> Result<Complex64> {
    let det = relative_leading_det(k, h, case.p);
    let modulus = det.norm();
    let exponent = lambda - case.rho();
    if modulus == 0.0 {
        return if exponent.re > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::KernelSingular)
        };
    }
    let phase = (det / modulus).powi((sign.as_i64() * case.character_exponent()) as i32);
    Ok((exponent * modulus.ln()).exp() * phase)
}

/// The character of L on diag(A, B): det A (real case) or (det A)^l.
pub fn chi_l(case: &CaseParams, m: &CMatrix) -> Result<Complex64> {
    let (p, n) = (case.p, case.dim());
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: m.nrows() });
    }
    let upper = m.view((0, p), (p, n - p)).camax();
    let lower = m.view((p, 0), (n - p, p)).camax();
    let deviation = upper.max(lower);
    if deviation > L_TOL {
        return Err(Error::NotInL { deviation });
    }
    let det_a = leading_det(m, p);
    Ok(det_a.powi(case.character_exponent() as i32))
}

/// Section of the smallest K-type: f(k·m) = χ(m)⁻¹ f(k) for m ∈ L.
pub fn section_smallest(case: &CaseParams, k: &CMatrix) -> Complex64 {
    let det = leading_det(k, case.p);
    match case.field {
        Field::R => det,
        Field::C if case.l >= 0 => det.conj().powi(case.l as i32),
        Field::C => det.powi((-case.l) as i32),
    }
}

/// The torus element built from rotations in the planes (e_j, e_{n+1−p+j}).
pub fn torus_point(case: &CaseParams, t: &[f64]) -> Result<GroupElement> {
    if t.len() != case.p {
        return Err(Error::DimensionMismatch { expected: case.p, got: t.len() });
    }
    let n = case.dim();
    let mut m = CMatrix::identity(n, n);
    for (i, &s) in t.iter().enumerate() {
        let j = n - case.p + i;
        let (sin, cos) = s.sin_cos();
        m[(i, i)] = cos.into();
        m[(j, j)] = cos.into();
        m[(i, j)] = (-sin).into();
        m[(j, i)] = sin.into();
    }
    Ok(GroupElement { mat: m, tag: Membership::InK })
}

/// KAK density ∏_{α>0} |2 sin α(t)|^{m_α}.
pub fn delta_density(case: &CaseParams, t: &[f64]) -> Result<f64> {
    if t.len() != case.p {
        return Err(Error::DimensionMismatch { expected: case.p, got: t.len() });
    }
    let datum = root_datum(case);
    let mut density = 1.0;
    for (root, _) in &datum.roots {
        if root.multiplicity == 0 {
            continue;
        }
        let arg: f64 = root.coeffs.iter().zip(t).map(|(&c, &s)| c as f64 * s).sum();
        density *= (2.0 * arg.sin()).abs().powi(root.multiplicity as i32);
    }
    Ok(density)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupops::{haar_sample, random_l_element};
    use crate::rootdata::make_case;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};


    fn cases() -> Vec<CaseParams> {
        vec![
            make_case(Field::R, 2, 3, 0, false).unwrap(),
            make_case(Field::R, 2, 5, 0, false).unwrap(),
            make_case(Field::C, 1, 2, 1, false).unwrap(),
            make_case(Field::C, 1, 3, 2, false).unwrap(),
            make_case(Field::C, 2, 2, 1, false).unwrap(),
            make_case(Field::C, 2, 3, -3, false).unwrap(),
        ]
    }

    #[test]
    fn torus_points() {
        for case in cases() {
            let zero = torus_point(&case, &vec![0.0; case.p]).unwrap();
            assert_eq!(zero.mat, CMatrix::identity(case.dim(), case.dim()));
            let t: Vec<f64> = (0..case.p).map(|j| 0.4 + 1.1 * j as f64).collect();
            let x = torus_point(&case, &t).unwrap();
            assert!(GroupElement::in_k(&case, x.mat.clone()).is_ok());
            let f = section_smallest(&case, &x.mat);
            let prod: f64 = t.iter().map(|s| s.cos()).product();
            let expected = match case.field {
                Field::R => prod,
                Field::C => prod.powi(case.l.abs() as i32),
            };
            assert!((f - Complex64::from(expected)).norm() < 1e-14);
        }
        let r = make_case(Field::R, 2, 3, 0, false).unwrap();
        let x = torus_point(&r, &[PI, 0.0]).unwrap();
        assert!((section_smallest(&r, &x.mat) + 1.0).norm() < 1e-15);
        assert!(torus_point(&r, &[0.1]).is_err());
    }

    #[test]
    fn delta_examples() {
        let r = make_case(Field::R, 2, 3, 0, false).unwrap();
        let v = delta_density(&r, &[FRAC_PI_2, FRAC_PI_4]).unwrap();
        assert!((v - 4.0 * 2f64.sqrt()).abs() < 1e-13);
        for case in cases() {
            let mut t: Vec<f64> = (0..case.p).map(|j| 0.3 + 0.5 * j as f64).collect();
            let base = delta_density(&case, &t).unwrap();
            t[0] = -t[0];
            assert!((delta_density(&case, &t).unwrap() - base).abs() < 1e-12 * base);
            t.reverse();
            assert!((delta_density(&case, &t).unwrap() - base).abs() < 1e-12 * base);
            t[0] = 0.0;
            assert_eq!(delta_density(&case, &t).unwrap(), 0.0);
        }
    }

    #[test]
    fn character_examples() {
        let r = make_case(Field::R, 2, 3, 0, false).unwrap();
        assert_eq!(chi_l(&r, &CMatrix::identity(5, 5)).unwrap(), Complex64::new(1.0, 0.0));
        let mut m = CMatrix::identity(5, 5);
        m[(0, 0)] = (-1.0).into();
        m[(4, 4)] = (-1.0).into();
        assert!((chi_l(&r, &m).unwrap() + 1.0).norm() < 1e-15);

        let c = make_case(Field::C, 1, 2, 2, false).unwrap();
        let a = Complex64::from_polar(1.0, PI / 3.0);
        let mut m = CMatrix::identity(3, 3);
        m[(0, 0)] = a;
        m[(2, 2)] = a.conj();
        let v = chi_l(&c, &m).unwrap();
        assert!((v - Complex64::from_polar(1.0, 2.0 * PI / 3.0)).norm() < 1e-15);

        let rot = torus_point(&c, &[0.2]).unwrap();
        assert!(matches!(chi_l(&c, &rot.mat), Err(Error::NotInL { .. })));
    }

    #[test]
    fn section_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for case in cases() {
            for _ in 0..100 {
                let k = haar_sample(&case, &mut rng);
                let m = random_l_element(&case, &mut rng);
                let lhs = section_smallest(&case, &(&k.mat * &m.mat));
                let rhs = section_smallest(&case, &k.mat) / chi_l(&case, &m.mat).unwrap();
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for case in cases() {
            let k = haar_sample(&case, &mut rng);
            for lam in [Complex64::new(0.3, 1.0), Complex64::new(7.0, 0.0)] {
                let v = cos_kernel(&case, &k.mat, &k.mat, lam, PhaseSign::Plus).unwrap();
                assert!((v - 1.0).norm() < 1e-12);
            }
            let t: Vec<f64> = (0..case.p).map(|j| 0.5 + 1.3 * j as f64).collect();
            let x = torus_point(&case, &t).unwrap();
            let e = CMatrix::identity(case.dim(), case.dim());
            let lam = Complex64::new(2.5, 0.5);
            let prod: f64 = t.iter().map(|s| s.cos()).product();
            let j = case.character_exponent();
            for sign in [PhaseSign::Plus, PhaseSign::Minus] {
                let v = cos_kernel(&case, &x.mat, &e, lam, sign).unwrap();
                let expected = ((lam - case.rho()) * prod.abs().ln()).exp()
                    * prod.signum().powi((sign.as_i64() * j) as i32);
                assert!((v - expected).norm() < 1e-12 * expected.norm());
            }
        }
    }

    #[test]
    fn real_kernel_sign_and_symmetry() {
        let case = make_case(Field::R, 2, 3, 0, false).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let lam = Complex64::new(3.7, 0.0);
        for _ in 0..50 {
            let k = haar_sample(&case, &mut rng).mat;
            let h = haar_sample(&case, &mut rng).mat;
            let a = cos_kernel(&case, &k, &h, lam, PhaseSign::Plus).unwrap();
            let b = cos_kernel(&case, &h, &k, lam, PhaseSign::Plus).unwrap();
            assert!(a.im.abs() < 1e-14);
            let det = relative_leading_det(&k, &h, 2).re;
            assert_eq!(a.re.signum(), det.signum());
            assert!((a.norm() - b.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_block() {
        let case = make_case(Field::C, 1, 2, 1, false).unwrap();
        // rotation by π/2 in the (e_1, e_3) plane, entered exactly
        let mut x = CMatrix::zeros(3, 3);
        x[(0, 2)] = (-1.0).into();
        x[(1, 1)] = 1.0.into();
        x[(2, 0)] = 1.0.into();
        let x = GroupElement::in_k(&case, x).unwrap();
        let e = CMatrix::identity(3, 3);
        let v = cos_kernel(&case, &x.mat, &e, Complex64::new(3.5, 0.0), PhaseSign::Plus).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
        assert!(matches!(
            cos_kernel(&case, &x.mat, &e, Complex64::new(2.0, 0.0), PhaseSign::Plus),
            Err(Error::KernelSingular)
        ));
    }

    #[test]
    fn integrand_is_l_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let lam = Complex64::new(4.2, -0.3);
        for case in cases() {
            for _ in 0..20 {
                let k = haar_sample(&case, &mut rng).mat;
                let h = haar_sample(&case, &mut rng).mat;
                let m = random_l_element(&case, &mut rng).mat;
                let hm = &h * &m;
                let a = cos_kernel(&case, &k, &h, lam, PhaseSign::Plus).unwrap() * section_smallest(&case, &h);
                let b = cos_kernel(&case, &k, &hm, lam, PhaseSign::Plus).unwrap() * section_smallest(&case, &hm);
                assert!((a - b).norm() < 1e-12 * a.norm().max(1.0));
            }
        }
    }
}
