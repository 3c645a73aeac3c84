//! Case parameters for the Hermitian Grassmannians and their restricted
//! root system of type BC_p.
//!
//! All half-integral quantities (ρ, ρ_k, ω) are kept exact as [`Half`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ground field of the Grassmannian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    R,
    C,
}

impl Field {
    /// Real dimension of the field.
    pub fn dim(self) -> i64 {
        match self {
            Field::R => 1,
            Field::C => 2,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::R => "R",
            Field::C => "C",
        })
    }
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" => Ok(Field::R),
            "C" | "c" => Ok(Field::C),
            other => Err(Error::InvalidArgument(format!("unknown field {other:?}"))),
        }
    }
}

/// An exact element of ½ℤ, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Half(pub i64);

impl Half {
    pub fn from_int(v: i64) -> Self {
        Half(2 * v)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl Mul<i64> for Half {
    type Output = Half;
    fn mul(self, rhs: i64) -> Half {
        Half(self.0 * rhs)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// One Grassmannian line-bundle case with its derived scalars.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseParams {
    pub field: Field,
    pub p: usize,
    pub q: usize,
    /// Bundle parameter. Ignored for [`Field::R`], where the character is `det A`.
    pub l: i64,
    pub d: i64,
    pub n: i64,
    /// Twice ρ = d(n+1)/2, i.e. d(n+1).
    rho_twice: i64,
    pub k: i64,
}

impl CaseParams {
    pub fn rho(&self) -> f64 {
        self.rho_twice as f64 / 2.0
    }

    pub fn rho_half(&self) -> Half {
        Half(self.rho_twice)
    }

    /// Exponent j of the character on M, `(det X / |det X|)^j`.
    pub fn character_exponent(&self) -> i64 {
        match self.field {
            Field::R => 1,
            Field::C => self.l,
        }
    }

    /// Matrix size n + 1 = p + q.
    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    pub fn is_trivial_character(&self) -> bool {
        self.field == Field::C && self.l == 0
    }
}

impl fmt::Display for CaseParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            Field::R => write!(f, "(R,{},{})", self.p, self.q),
            Field::C => write!(f, "(C,{},{},l={})", self.p, self.q, self.l),
        }
    }
}

/// Validate a case against the Hermitian Grassmannian classification.
///
/// For the complex field `l = 0` is only accepted when `allow_trivial` is
/// set; it reproduces the scalar (trivial bundle) theory.
pub fn make_case(field: Field, p: usize, q: usize, l: i64, allow_trivial: bool) -> Result<CaseParams> {
    match field {
        Field::R => {
            if p != 2 {
                return Err(Error::ConstraintViolation(format!(
                    "field R requires p = 2 (got p = {p})"
                )));
            }
            if q < 3 {
                return Err(Error::ConstraintViolation(format!(
                    "field R requires q >= 3 (got q = {q})"
                )));
            }
        }
        Field::C => {
            if p < 1 || p > q {
                return Err(Error::ConstraintViolation(format!(
                    "field C requires 1 <= p <= q (got p = {p}, q = {q})"
                )));
            }
            if l == 0 && !allow_trivial {
                return Err(Error::TrivialCharacter);
            }
        }
    }
    let d = field.dim();
    let n = (p + q) as i64 - 1;
    let k = match field {
        Field::R => 1,
        Field::C => l.abs(),
    };
    Ok(CaseParams {
        field,
        p,
        q,
        l,
        d,
        n,
        rho_twice: d * (n + 1),
        k,
    })
}

/// A positive restricted root: coefficient vector in the ε-basis and multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub multiplicity: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootLength {
    Short,
    Medium,
    Long,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootDatum {
    pub roots: Vec<(Root, RootLength)>,
    pub rho_k: Vec<Half>,
    pub rho_s: Vec<Half>,
    pub rho_k_shifted: Vec<Half>,
}

impl RootDatum {
    /// Multiplicities (short, medium, long).
    pub fn multiplicities(&self) -> (i64, i64, i64) {
        let find = |len: RootLength| {
            self.roots
                .iter()
                .find(|(_, l)| *l == len)
                .map(|(r, _)| r.multiplicity)
                .unwrap_or(0)
        };
        (find(RootLength::Short), find(RootLength::Medium), find(RootLength::Long))
    }
}

/// Positive system {ε_i}, {ε_i ± ε_j, i < j}, {2ε_i} with multiplicities
/// d(q − p), d and d − 1, and the ρ-vectors derived from it.
pub fn root_datum(case: &CaseParams) -> RootDatum {
    let p = case.p;
    let d = case.d;
    let m_short = d * (case.q as i64 - p as i64);
    let m_medium = d;
    let m_long = d - 1;

    let unit = |i: usize, scale: i64| {
        let mut v = vec![0; p];
        v[i] = scale;
        v
    };

    let mut roots = Vec::new();
    for i in 0..p {
        roots.push((Root { coeffs: unit(i, 1), multiplicity: m_short }, RootLength::Short));
    }
    for i in 0..p {
        for j in (i + 1)..p {
            for sign in [-1, 1] {
                let mut v = vec![0; p];
                v[i] = 1;
                v[j] = sign;
                roots.push((Root { coeffs: v, multiplicity: m_medium }, RootLength::Medium));
            }
        }
    }
    for i in 0..p {
        roots.push((Root { coeffs: unit(i, 2), multiplicity: m_long }, RootLength::Long));
    }

    // ρ_k = ½ Σ m_α α, so 2ρ_k = Σ m_α α is integral.
    let mut two_rho = vec![0i64; p];
    for (root, _) in &roots {
        for (acc, c) in two_rho.iter_mut().zip(&root.coeffs) {
            *acc += root.multiplicity * c;
        }
    }
    let rho_k: Vec<Half> = two_rho.into_iter().map(Half).collect();
    let rho_s = vec![Half(1); p];
    let rho_k_shifted = rho_k.iter().map(|&r| r + Half::from_int(case.k)).collect();

    RootDatum { roots, rho_k, rho_s, rho_k_shifted }
}

/// ω(μ) = ⟨μ + 2ρ_k, μ⟩ with ⟨ε_i, ε_j⟩ = δ_ij / 2.
pub fn omega(case: &CaseParams, mu: &[i64]) -> Result<Half> {
    if mu.len() != case.p {
        return Err(Error::DimensionMismatch { expected: case.p, got: mu.len() });
    }
    let datum = root_datum(case);
    // ½ Σ μ_j (μ_j + 2ρ_k,j), and 2ρ_k,j = rho_k[j].twice().
    let twice: i64 = mu
        .iter()
        .zip(&datum.rho_k)
        .map(|(&m, r)| m * (m + r.twice()))
        .sum();
    Ok(Half(twice))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r23() -> CaseParams {
        make_case(Field::R, 2, 3, 0, false).unwrap()
    }

    #[test]
    fn real_case_derived_scalars() {
        let c = r23();
        assert_eq!((c.d, c.n, c.k), (1, 4, 1));
        assert_eq!(c.rho(), 2.5);
    }

    #[test]
    fn complex_case_derived_scalars() {
        let c = make_case(Field::C, 1, 2, 1, false).unwrap();
        assert_eq!((c.d, c.n, c.k), (2, 2, 1));
        assert_eq!(c.rho(), 3.0);
        let c = make_case(Field::C, 2, 3, -3, false).unwrap();
        assert_eq!(c.k, 3);
    }

    #[test]
    fn constraint_violations() {
        assert!(matches!(
            make_case(Field::R, 3, 4, 0, false),
            Err(Error::ConstraintViolation(msg)) if msg.contains("p = 2")
        ));
        assert!(matches!(
            make_case(Field::R, 2, 2, 0, false),
            Err(Error::ConstraintViolation(msg)) if msg.contains("q >= 3")
        ));
        assert!(matches!(make_case(Field::C, 3, 2, 1, false), Err(Error::ConstraintViolation(_))));
        assert!(matches!(make_case(Field::C, 0, 2, 1, false), Err(Error::ConstraintViolation(_))));
        assert_eq!(make_case(Field::C, 1, 2, 0, false), Err(Error::TrivialCharacter));
        let trivial = make_case(Field::C, 1, 2, 0, true).unwrap();
        assert_eq!(trivial.k, 0);
    }

    #[test]
    fn rho_k_for_real_grassmannian() {
        let datum = root_datum(&r23());
        // 2ρ_k = (q, q − 2)
        assert_eq!(datum.rho_k, vec![Half(3), Half(1)]);
        assert_eq!(datum.rho_s, vec![Half(1), Half(1)]);
        assert_eq!(datum.rho_k_shifted, vec![Half(5), Half(3)]);
    }

    #[test]
    fn complex_rank_one_roots() {
        let c = make_case(Field::C, 1, 2, 1, false).unwrap();
        let datum = root_datum(&c);
        let roots: Vec<(Vec<i64>, i64)> =
            datum.roots.iter().map(|(r, _)| (r.coeffs.clone(), r.multiplicity)).collect();
        assert_eq!(roots, vec![(vec![1], 2), (vec![2], 1)]);
    }

    #[test]
    fn equal_rank_has_no_short_multiplicity() {
        let c = make_case(Field::C, 2, 2, 1, false).unwrap();
        assert_eq!(root_datum(&c).multiplicities(), (0, 2, 1));
    }

    #[test]
    fn omega_values() {
        let c = r23();
        assert_eq!(omega(&c, &[1, 1]).unwrap(), Half::from_int(3));
        assert_eq!(omega(&c, &[3, 1]).unwrap(), Half::from_int(10));
        assert_eq!(omega(&c, &[0, 0]).unwrap(), Half(0));
        assert!(matches!(omega(&c, &[1]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn half_display() {
        assert_eq!(Half(5).to_string(), "5/2");
        assert_eq!(Half(4).to_string(), "2");
    }
}
