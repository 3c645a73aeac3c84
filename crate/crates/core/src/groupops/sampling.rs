use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{CMatrix, GroupElement, Membership};
use crate::rootdata::{CaseParams, Field};

fn gaussian_matrix<R: Rng + ?Sized>(n: usize, field: Field, rng: &mut R) -> CMatrix {
    DMatrix::from_fn(n, n, |_, _| match field {
        Field::R => Complex64::new(rng.sample(StandardNormal), 0.0),
        Field::C => {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        }
    })
}

/// Haar-distributed element of O(n) or U(n): QR of a Gaussian matrix with
/// the triangular factor gauged to a positive diagonal.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, field: Field, rng: &mut R) -> CMatrix {
    let qr = gaussian_matrix(n, field, rng).qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let rjj = r[(j, j)];
        let norm = rjj.norm();
        if norm > 0.0 {
            let phase = rjj / norm;
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Haar-distributed element of K = SO(n+1) or SU(n+1).
pub fn haar_sample<R: Rng + ?Sized>(case: &CaseParams, rng: &mut R) -> GroupElement {
    let n = case.dim();
    let mut q = haar_unitary(n, case.field, rng);
    let det = q.determinant();
    match case.field {
        Field::R => {
            if det.re < 0.0 {
                q.column_mut(n - 1).neg_mut();
            }
            q.iter_mut().for_each(|z| z.im = 0.0);
        }
        Field::C => {
            let root = Complex64::from_polar(1.0, -det.arg() / n as f64);
            q *= root;
        }
    }
    GroupElement { mat: q, tag: Membership::InK }
}

/// Random element diag(A, B) of L = S(O(p)×O(q)) or S(U(p)×U(q)).
pub fn random_l_element<R: Rng + ?Sized>(case: &CaseParams, rng: &mut R) -> GroupElement {
    let (p, q) = (case.p, case.q);
    let a = haar_unitary(p, case.field, rng);
    let mut b = haar_unitary(q, case.field, rng);
    let total = a.determinant() * b.determinant();
    // make det A · det B = 1 by adjusting the last column of B
    let fix = total.conj() / total.norm_sqr();
    for i in 0..q {
        b[(i, q - 1)] *= fix;
    }
    let n = p + q;
    let mut m = CMatrix::zeros(n, n);
    m.view_mut((0, 0), (p, p)).copy_from(&a);
    m.view_mut((p, p), (q, q)).copy_from(&b);
    if case.field == Field::R {
        m.iter_mut().for_each(|z| z.im = 0.0);
    }
    GroupElement { mat: m, tag: Membership::InK }
}

/// Random g = c·(I + scale·X) ∈ G with X Gaussian and c fixing det g = 1.
pub fn near_identity<R: Rng + ?Sized>(case: &CaseParams, scale: f64, rng: &mut R) -> GroupElement {
    let n = case.dim();
    let x = gaussian_matrix(n, case.field, rng);
    let mut g = CMatrix::identity(n, n) + x * Complex64::new(scale / (n as f64).sqrt(), 0.0);
    let det = g.determinant();
    let root = match case.field {
        // det is close to 1 and positive for small scale
        Field::R => Complex64::new(det.re.abs().powf(-1.0 / n as f64), 0.0),
        Field::C => det.powf(-1.0 / n as f64),
    };
    g *= root;
    if case.field == Field::R {
        if det.re < 0.0 {
            g.row_mut(0).neg_mut();
        }
        g.iter_mut().for_each(|z| z.im = 0.0);
    }
    GroupElement { mat: g, tag: Membership::InG }
}
