//! Matrix realizations on G = SL(n+1, K) and K = SO(n+1) / SU(n+1).
//!
//! Every matrix is stored over ℂ; real cases simply carry zero imaginary
//! parts. The block structure is always (p | q) with the distinguished
//! subspace spanned by the first p basis vectors.

mod decompose;
mod kernel;
mod sampling;

pub use decompose::{kp_decompose, log_alpha, pi_action, theta, KPDecomposition};
pub use kernel::{chi_l, cos_kernel, delta_density, section_smallest, torus_point, PhaseSign};
pub use sampling::{haar_sample, haar_unitary, near_identity, random_l_element};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rootdata::{CaseParams, Field};

pub type CMatrix = DMatrix<Complex64>;

/// Which group a [`GroupElement`] is asserted to lie in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    InK,
    InG,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub mat: CMatrix,
    pub tag: Membership,
}

pub const K_TOL: f64 = 1e-12;
pub const G_TOL: f64 = 1e-10;

impl GroupElement {
    /// Wrap a matrix as an element of K, checking orthogonality/unitarity and det = 1.
    pub fn in_k(case: &CaseParams, mat: CMatrix) -> Result<Self> {
        check_shape(case, &mat)?;
        let n = mat.nrows();
        let gram = mat.adjoint() * &mat;
        let dev = (gram - CMatrix::identity(n, n)).camax();
        let det = mat.determinant();
        if dev > K_TOL * n as f64 || (det - 1.0).norm() > K_TOL * n as f64 {
            return Err(Error::InvalidArgument(format!(
                "matrix is not in K (unitarity defect {dev:e}, det {det})"
            )));
        }
        if case.field == Field::R && mat.iter().any(|z| z.im.abs() > K_TOL) {
            return Err(Error::InvalidArgument("real case requires a real matrix".into()));
        }
        Ok(GroupElement { mat, tag: Membership::InK })
    }

    /// Wrap a matrix as an element of G, checking det = 1.
    pub fn in_g(case: &CaseParams, mat: CMatrix) -> Result<Self> {
        check_shape(case, &mat)?;
        let det = mat.determinant();
        if (det - 1.0).norm() > G_TOL {
            return Err(Error::InvalidArgument(format!("det g = {det}, expected 1")));
        }
        Ok(GroupElement { mat, tag: Membership::InG })
    }

    pub fn identity(case: &CaseParams) -> Self {
        let n = case.dim();
        GroupElement { mat: CMatrix::identity(n, n), tag: Membership::InK }
    }

    /// Inverse; for K this is the adjoint.
    pub fn inverse(&self) -> Result<GroupElement> {
        let mat = match self.tag {
            Membership::InK => self.mat.adjoint(),
            Membership::InG => self
                .mat
                .clone()
                .try_inverse()
                .ok_or_else(|| Error::InvalidArgument("singular group element".into()))?,
        };
        Ok(GroupElement { mat, tag: self.tag })
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        let tag = if self.tag == Membership::InK && other.tag == Membership::InK {
            Membership::InK
        } else {
            Membership::InG
        };
        GroupElement { mat: &self.mat * &other.mat, tag }
    }

    /// Regard as an element of G.
    pub fn as_g(&self) -> GroupElement {
        GroupElement { mat: self.mat.clone(), tag: Membership::InG }
    }
}

fn check_shape(case: &CaseParams, mat: &CMatrix) -> Result<()> {
    let n = case.dim();
    if mat.nrows() != n || mat.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: mat.nrows() });
    }
    Ok(())
}

/// Determinant of the leading p×p block of `mat`.
pub fn leading_det(mat: &CMatrix, p: usize) -> Complex64 {
    match p {
        1 => mat[(0, 0)],
        2 => mat[(0, 0)] * mat[(1, 1)] - mat[(0, 1)] * mat[(1, 0)],
        _ => mat.view((0, 0), (p, p)).clone_owned().determinant(),
    }
}

/// Determinant of the leading p×p block of a⁻¹b for unitary `a`, i.e. of A_p^* B_p
/// where A_p, B_p are the first p columns.
pub fn relative_leading_det(a: &CMatrix, b: &CMatrix, p: usize) -> Complex64 {
    let ap = a.columns(0, p);
    let bp = b.columns(0, p);
    let x = ap.adjoint() * bp;
    leading_det(&x, p)
}
