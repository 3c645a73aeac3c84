//! The χ-spherical highest-weight lattice Λ_χ^+ and its neighbour sets.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootdata::{CaseParams, Field};

/// Coordinates of a weight in the ε-basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// |μ| = Σ μ_j.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn norm_sq(&self) -> i64 {
        self.0.iter().map(|m| m * m).sum()
    }

    /// μ + s·2ε_j with `j` zero-based.
    pub fn shifted(&self, j: usize, s: i64) -> Weight {
        let mut v = self.0.clone();
        v[j] += 2 * s;
        Weight(v)
    }

    /// Dash-joined coordinates, as used in tabular output.
    pub fn label(&self) -> String {
        self.0.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("-")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

fn is_nonneg_even(x: i64) -> bool {
    x >= 0 && x % 2 == 0
}

/// Membership in Λ_χ^+.
///
/// Field R: μ_1 ≥ … ≥ μ_p ≥ 0 with every μ_j odd.
/// Field C: μ_i − μ_j ∈ 2ℤ^+ for i < j and μ_p ∈ |l| + 2ℤ^+ (ℤ^+ contains 0).
pub fn is_member(case: &CaseParams, mu: &[i64]) -> Result<bool> {
    if mu.len() != case.p {
        return Err(Error::DimensionMismatch { expected: case.p, got: mu.len() });
    }
    let ordered = mu.windows(2).all(|w| w[0] >= w[1]);
    let ok = match case.field {
        Field::R => ordered && mu.iter().all(|&m| m >= 0 && m.rem_euclid(2) == 1),
        Field::C => {
            let diffs = mu.windows(2).all(|w| is_nonneg_even(w[0] - w[1]));
            let last = mu[case.p - 1];
            diffs && is_nonneg_even(last - case.l.abs())
        }
    };
    Ok(ok)
}

/// μ⁰ = k(1, …, 1).
pub fn mu0(case: &CaseParams) -> Weight {
    Weight(vec![case.k; case.p])
}

/// Canonical order: total degree, then lexicographic on coordinates.
pub fn canonical_cmp(a: &Weight, b: &Weight) -> std::cmp::Ordering {
    a.total().cmp(&b.total()).then_with(|| a.0.cmp(&b.0))
}

/// All μ ∈ Λ_χ^+ with |μ| ≤ `max_total_degree`, in canonical order.
pub fn enumerate(case: &CaseParams, max_total_degree: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    if max_total_degree < 0 {
        return out;
    }
    let parity = match case.field {
        Field::R => 1,
        Field::C => case.l.abs().rem_euclid(2),
    };
    let floor = match case.field {
        Field::R => 1,
        Field::C => case.l.abs(),
    };
    // Nonincreasing tuples with fixed parity, last entry ≥ floor.
    fn extend(
        prefix: &mut Vec<i64>,
        p: usize,
        upper: i64,
        budget: i64,
        parity: i64,
        floor: i64,
        out: &mut Vec<Weight>,
    ) {
        let remaining = p - prefix.len();
        if remaining == 0 {
            out.push(Weight(prefix.clone()));
            return;
        }
        // every later coordinate is at least `floor`
        let reserve = floor * (remaining as i64 - 1);
        let mut v = floor;
        while v <= upper && v + reserve <= budget {
            if v.rem_euclid(2) == parity {
                prefix.push(v);
                extend(prefix, p, v, budget - v, parity, floor, out);
                prefix.pop();
            }
            v += 1;
        }
    }
    let mut prefix = Vec::with_capacity(case.p);
    extend(&mut prefix, case.p, max_total_degree, max_total_degree, parity, floor, &mut out);
    out.sort_by(canonical_cmp);
    out
}

/// S(μ) = ({μ ± 2ε_j} ∪ {μ}) ∩ Λ_χ^+, in canonical order.
pub fn s_set(case: &CaseParams, mu: &[i64]) -> Result<Vec<Weight>> {
    if !is_member(case, mu)? {
        return Err(Error::NotInLattice(mu.to_vec()));
    }
    let base = Weight(mu.to_vec());
    let mut out = vec![base.clone()];
    for j in 0..case.p {
        for s in [-1, 1] {
            let nu = base.shifted(j, s);
            if is_member(case, &nu.0)? {
                out.push(nu);
            }
        }
    }
    out.sort_by(canonical_cmp);
    Ok(out)
}

/// Order in which the canonical path raises coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathOrder {
    /// Raise μ_1 to its target first, then μ_2, and so on.
    LeftToRight,
    /// At each step raise the largest index whose +2ε_j step stays in the lattice.
    GreedyRightmost,
}

/// A sequence of zero-based indices j such that μ⁰ + 2ε_{j_1} + … reaches `mu`,
/// with every intermediate weight in Λ_χ^+.
pub fn lattice_path(case: &CaseParams, mu: &[i64], order: PathOrder) -> Result<Vec<usize>> {
    if !is_member(case, mu)? {
        return Err(Error::NotInLattice(mu.to_vec()));
    }
    let start = mu0(case);
    let mut steps_left: Vec<i64> = Vec::with_capacity(case.p);
    for (&target, &s) in mu.iter().zip(&start.0) {
        let diff = target - s;
        if diff < 0 || diff % 2 != 0 {
            return Err(Error::NoPath(mu.to_vec()));
        }
        steps_left.push(diff / 2);
    }
    let mut path = Vec::new();
    match order {
        PathOrder::LeftToRight => {
            for (j, &n) in steps_left.iter().enumerate() {
                path.extend(std::iter::repeat_n(j, n as usize));
            }
        }
        PathOrder::GreedyRightmost => {
            let mut current = start;
            loop {
                let next = (0..case.p).rev().find(|&j| {
                    steps_left[j] > 0
                        && is_member(case, &current.shifted(j, 1).0).unwrap_or(false)
                });
                match next {
                    Some(j) => {
                        current = current.shifted(j, 1);
                        steps_left[j] -= 1;
                        path.push(j);
                    }
                    None if steps_left.iter().all(|&n| n == 0) => break,
                    None => return Err(Error::NoPath(mu.to_vec())),
                }
            }
        }
    }
    Ok(path)
}
