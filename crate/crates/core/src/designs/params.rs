//! Parameter arithmetic and 2-design verification.

use serde::{Deserialize, Serialize};

use super::{DesignError, IncidenceStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DesignParams {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub lambda: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParamViolation {
    /// `v > k >= 2` and `lambda >= 1` fail.
    OutOfRange,
    /// `r(k-1) = lambda(v-1)` has no integral solution (or fails).
    ReplicationIdentity,
    /// `bk = vr` has no integral solution (or fails).
    BlockCountIdentity,
    /// Fisher's inequality `b >= v`.
    Fisher,
    /// `lambda v < r^2`.
    LambdaBound,
}

impl DesignParams {
    /// `2 < k < v - 1`.
    pub fn is_nontrivial(&self) -> bool {
        2 < self.k && self.k + 1 < self.v
    }

    pub fn is_symmetric(&self) -> bool {
        self.b == self.v
    }

    /// Identities that fail; the inequalities are only checked for
    /// nontrivial parameters.
    pub fn violations(&self) -> Vec<ParamViolation> {
        let mut out = Vec::new();
        let DesignParams { v, b, r, k, lambda } = *self;
        if r * (k - 1) != lambda * (v - 1) {
            out.push(ParamViolation::ReplicationIdentity);
        }
        if b * k != v * r {
            out.push(ParamViolation::BlockCountIdentity);
        }
        if self.is_nontrivial() {
            if b < v {
                out.push(ParamViolation::Fisher);
            }
            if lambda * v >= r * r {
                out.push(ParamViolation::LambdaBound);
            }
        }
        out
    }
}

impl std::fmt::Display for DesignParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "2-({},{},{})", self.v, self.k, self.lambda)
    }
}

/// Checks that every block has the same size and every pair of points lies
/// in the same number of blocks.
pub fn verify_2design(d: &IncidenceStructure) -> Result<DesignParams, DesignError> {
    let v = d.v();
    if v < 2 || d.b() == 0 {
        return Err(DesignError::Degenerate);
    }
    let k = d.block(0).len();
    if let Some(i) = d.blocks().iter().position(|b| b.len() != k) {
        return Err(DesignError::UnequalBlockSizes {
            index: i,
            expected: k,
            found: d.block(i).len(),
        });
    }
    let mut count = vec![0usize; v * v];
    for b in d.blocks() {
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[i + 1..] {
                count[x * v + y] += 1;
            }
        }
    }
    let lambda = count[1];
    for x in 0..v {
        for y in x + 1..v {
            if count[x * v + y] != lambda {
                return Err(DesignError::NonConstantPairCount {
                    pair: (x, y),
                    expected: lambda,
                    found: count[x * v + y],
                });
            }
        }
    }
    if lambda == 0 {
        return Err(DesignError::ZeroLambda);
    }
    let r = d.blocks_through(0).len();
    Ok(DesignParams {
        v: v as u64,
        b: d.b() as u64,
        r: r as u64,
        k: k as u64,
        lambda: lambda as u64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub r: Option<u64>,
    pub b: Option<u64>,
    pub violations: Vec<ParamViolation>,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn params(&self, v: u64, k: u64, lambda: u64) -> Option<DesignParams> {
        match (self.r, self.b) {
            (Some(r), Some(b)) if self.is_admissible() => Some(DesignParams { v, b, r, k, lambda }),
            _ => None,
        }
    }
}

/// Derives `r` and `b` from `(v, k, lambda)` and lists the necessary
/// conditions that fail.
pub fn check_admissible(v: u64, k: u64, lambda: u64) -> Admissibility {
    if !(v > k && k >= 2 && lambda >= 1) {
        return Admissibility {
            r: None,
            b: None,
            violations: vec![ParamViolation::OutOfRange],
        };
    }
    let mut violations = Vec::new();
    let num = lambda * (v - 1);
    let r = (num % (k - 1) == 0).then(|| num / (k - 1));
    if r.is_none() {
        violations.push(ParamViolation::ReplicationIdentity);
    }
    let b = r.and_then(|r| (v * r % k == 0).then(|| v * r / k));
    if b.is_none() {
        violations.push(ParamViolation::BlockCountIdentity);
    }
    if let (Some(r), Some(b)) = (r, b) {
        let p = DesignParams { v, b, r, k, lambda };
        violations.extend(p.violations());
    }
    Admissibility { r, b, violations }
}
