//! Normal-bundle cohomology of the RL-variety attached to a level GT ring.
//!
//! When the canonical module is generated by a nonempty `C_{d,1}`, project
//! the degree-`d` Veronese embedding of `ℙⁿ` using every degree-`d` monomial
//! except those of `C_{d,1}`. With `η = |C_{d,1}|` and
//! `N = C(n+d, d) − η − 1`, the image sits in `ℙᴺ` and its normal bundle has
//! the presentation
//!
//! ```text
//! 0 → O(1)^{n+1} → O(d)^{N+1} → N_X → 0
//! ```
//!
//! on `ℙⁿ`. The dimensions `h^i(N_X(−k))` follow in closed form, with one
//! extra input at the twists `k = d+n+1` and `k = d+n+2`.
//!
//! Throughout, `k` is the twist in `N_X(−k)`. Only the table renderer speaks
//! in column coordinates `j`, where cell `(i, j)` holds `h^i(N_X(j − i))`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::canonical::{classify_module, compute_canonical};
use crate::error::{Error, Result};
use crate::lattice::{binom, monomials_of_degree, ExponentVector, GroupSpec};

/// The data of an RL-variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RlSpec {
    pub spec: GroupSpec,
    /// `η_d = |C_{d,1}|`.
    pub eta: usize,
    /// `N_d = C(n+d, d) − η_d − 1`.
    #[serde(rename = "N", with = "crate::serde_bigint")]
    pub big_n: BigInt,
    /// The `N_d + 1` parameterizing monomials, lex-sorted.
    pub complement: Vec<ExponentVector>,
}

impl RlSpec {
    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn d(&self) -> u32 {
        self.spec.d()
    }
}

/// Builds the RL data; fails with [`Error::NotLevelGt`] unless the canonical
/// module is generated by a nonempty `C_{d,1}`.
pub fn build_rl(spec: &GroupSpec) -> Result<RlSpec> {
    let cm = compute_canonical(spec);
    if !classify_module(&cm).is_level_gt {
        return Err(Error::NotLevelGt(spec.to_string()));
    }
    let n = spec.n();
    let d = spec.d();
    let complement: Vec<ExponentVector> = monomials_of_degree(spec.num_vars(), d)
        .into_iter()
        .filter(|m| cm.c1.binary_search(m).is_err())
        .collect();
    for i in 0..=n {
        for j in 0..=n {
            if i == j {
                continue;
            }
            let mut e = vec![0; n + 1];
            e[i] = d - 1;
            e[j] = 1;
            if complement.binary_search(&ExponentVector::new(e)).is_err() {
                return Err(Error::EmbeddingCondition { i, j });
            }
        }
    }
    let big_n = binom((n as u32 + d) as i64, d as i64) - BigInt::from(cm.eta_d) - 1;
    debug_assert_eq!(BigInt::from(complement.len()), &big_n + 1);
    Ok(RlSpec {
        spec: spec.clone(),
        eta: cm.eta_d,
        big_n,
        complement,
    })
}

/// Which closed-form case governs `h^i(N_X(−k))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `0 < i < n − 1`.
    Middle,
    /// `i = 0`, `k ≤ 1`.
    SectionsLow,
    /// `i = 0`, `1 < k ≤ d`.
    SectionsMid,
    /// `i = 0`, `k > d`.
    SectionsZero,
    /// `i = n − 1`, `n + 2 ≤ k ≤ d + n`.
    SubTopGeneric,
    /// `i = n − 1`, `k = d + n + 1`.
    SubTopFirst,
    /// `i = n − 1`, `k = d + n + 2`.
    SubTopSecond,
    /// `i = n − 1`, `k ≤ n + 1` or `k ≥ d + n + 3`.
    SubTopZero,
    /// `i = n`, `k ≥ d + n + 3`.
    TopNonzero,
    /// `i = n`, `k < d + n + 3`.
    TopZero,
}

/// Every branch whose condition holds at `(i, k)`. Exactly one should.
pub fn matching_branches(n: usize, d: u32, i: usize, k: i64) -> Vec<Branch> {
    let (n_, d_) = (n as i64, d as i64);
    let candidates = [
        (Branch::Middle, 0 < i && i + 1 < n),
        (Branch::SectionsLow, i == 0 && k <= 1),
        (Branch::SectionsMid, i == 0 && 1 < k && k <= d_),
        (Branch::SectionsZero, i == 0 && k > d_),
        (
            Branch::SubTopGeneric,
            i + 1 == n && n_ + 2 <= k && k < d_ + n_ + 1,
        ),
        (Branch::SubTopFirst, i + 1 == n && k == d_ + n_ + 1),
        (Branch::SubTopSecond, i + 1 == n && k == d_ + n_ + 2),
        (
            Branch::SubTopZero,
            i + 1 == n && (k <= n_ + 1 || k >= d_ + n_ + 3),
        ),
        (Branch::TopNonzero, i == n && k >= d_ + n_ + 3),
        (Branch::TopZero, i == n && k < d_ + n_ + 3),
    ];
    candidates
        .into_iter()
        .filter(|(_, ok)| *ok)
        .map(|(b, _)| b)
        .collect()
}

/// `n(d−1)/d · C(n+d−1, n)`, which is always an integer.
pub fn correction_term(n: usize, d: u32) -> Result<BigInt> {
    let (n, d) = (n as i64, d as i64);
    let q = BigRational::new(BigInt::from(n * (d - 1)), BigInt::from(d))
        * BigRational::from_integer(binom(n + d - 1, n));
    if !q.is_integer() {
        return Err(Error::IntegralityViolation(q.to_string()));
    }
    Ok(q.to_integer())
}

/// `h^i(N_X(−k))`.
pub fn h(rl: &RlSpec, i: usize, k: i64) -> Result<BigInt> {
    let n = rl.n();
    if i > n {
        return Err(Error::InvalidArgument(format!(
            "cohomology index {i} exceeds dimension {n}"
        )));
    }
    let d = rl.d() as i64;
    let n_ = n as i64;
    let np1 = BigInt::from(n + 1);
    let big_n1 = &rl.big_n + 1;
    let eta = BigInt::from(rl.eta);
    let branches = matching_branches(n, rl.d(), i, k);
    let [branch] = branches[..] else {
        unreachable!("branches {branches:?} at i={i}, k={k}");
    };
    Ok(match branch {
        Branch::Middle | Branch::SectionsZero | Branch::SubTopZero | Branch::TopZero => {
            BigInt::zero()
        }
        Branch::SectionsLow => &big_n1 * binom(n_ + d - k, n_) - &np1 * binom(n_ + 1 - k, n_),
        Branch::SectionsMid => &big_n1 * binom(n_ + d - k, n_),
        Branch::SubTopGeneric => &np1 * binom(k - 2, n_),
        Branch::SubTopFirst => eta + correction_term(n, rl.d())?,
        Branch::SubTopSecond => &np1 * eta,
        Branch::TopNonzero => &big_n1 * binom(k - d - 1, n_) - &np1 * binom(k - 2, n_),
    })
}

/// Cohomology grid in column coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub eta: usize,
    #[serde(rename = "N", with = "crate::serde_bigint")]
    pub big_n: BigInt,
    pub columns: Vec<i64>,
    /// Row `i` lists `h^i(N_X(j − i))` for each column `j`.
    pub rows: BTreeMap<usize, Row>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Row(#[serde(with = "crate::serde_bigint::vec")] pub Vec<BigInt>);

impl CohomologyTable {
    pub fn entry(&self, i: usize, j: i64) -> Option<&BigInt> {
        let col = self.columns.iter().position(|&c| c == j)?;
        self.rows.get(&i).map(|r| &r.0[col])
    }

    /// Plain-text grid: highest row first, zeros as `.`, columns right-aligned
    /// to their widest cell and separated by one space.
    pub fn render(&self) -> String {
        let labels: Vec<String> = self.rows.keys().rev().map(|i| format!("{i}:")).collect();
        let label_w = labels.iter().map(String::len).max().unwrap_or(0);
        let cells: Vec<Vec<String>> = self
            .rows
            .values()
            .rev()
            .map(|r| {
                r.0.iter()
                    .map(|v| {
                        if v.is_zero() {
                            ".".to_string()
                        } else {
                            v.to_string()
                        }
                    })
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(c, j)| {
                cells
                    .iter()
                    .map(|r| r[c].len())
                    .chain(std::iter::once(j.to_string().len()))
                    .max()
                    .unwrap()
            })
            .collect();

        let mut out = String::new();
        let mut line = " ".repeat(label_w);
        for (j, w) in self.columns.iter().zip(&widths) {
            write!(line, " {j:>w$}").unwrap();
        }
        out.push_str(&line);
        out.push('\n');
        for (label, row) in labels.iter().zip(&cells) {
            let mut line = format!("{label:>label_w$}");
            for (cell, w) in row.iter().zip(&widths) {
                write!(line, " {cell:>w$}").unwrap();
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// `i,k,value` per cell, rows in increasing `i` then column order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,k,value\n");
        for (i, row) in &self.rows {
            for (j, v) in self.columns.iter().zip(&row.0) {
                writeln!(out, "{i},{},{v}", *i as i64 - j).unwrap();
            }
        }
        out
    }
}

/// The grid over columns `j_min..=j_max`.
pub fn table(rl: &RlSpec, j_min: i64, j_max: i64) -> Result<CohomologyTable> {
    if j_min > j_max {
        return Err(Error::InvalidArgument(format!(
            "empty column range {j_min}..={j_max}"
        )));
    }
    let columns: Vec<i64> = (j_min..=j_max).collect();
    let mut rows = BTreeMap::new();
    for i in 0..=rl.n() {
        let row = columns
            .iter()
            .map(|&j| h(rl, i, i as i64 - j))
            .collect::<Result<Vec<_>>>()?;
        rows.insert(i, Row(row));
    }
    Ok(CohomologyTable {
        eta: rl.eta,
        big_n: rl.big_n.clone(),
        columns,
        rows,
    })
}

/// Default column window `[−(d+n+4), 0]`.
pub fn default_columns(rl: &RlSpec) -> (i64, i64) {
    (-((rl.d() as i64) + rl.n() as i64 + 4), 0)
}

/// `χ(O_ℙⁿ(m))`.
pub fn chi_line_bundle(n: usize, m: i64) -> BigInt {
    let n_ = n as i64;
    if m >= -n_ {
        binom(m + n_, n_)
    } else {
        let v = binom(-m - 1, n_);
        if n.is_multiple_of(2) {
            v
        } else {
            -v
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerViolation {
    pub k: i64,
    #[serde(with = "crate::serde_bigint")]
    pub alternating_sum: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub expected: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub k_min: i64,
    pub k_max: i64,
    pub violations: Vec<EulerViolation>,
}

impl EulerReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares `Σ (−1)^i h^i(N_X(−k))` with the Euler characteristic of the
/// presentation, `(N+1)·χ(O(d−k)) − (n+1)·χ(O(1−k))`.
pub fn euler_check(rl: &RlSpec, k_min: i64, k_max: i64) -> Result<EulerReport> {
    let n = rl.n();
    let d = rl.d() as i64;
    let mut violations = Vec::new();
    for k in k_min..=k_max {
        let mut sum = BigInt::zero();
        for i in 0..=n {
            let v = h(rl, i, k)?;
            if v.is_negative() {
                return Err(Error::InvalidArgument(format!("negative h^{i} at k={k}")));
            }
            if i % 2 == 0 {
                sum += v;
            } else {
                sum -= v;
            }
        }
        let expected = (&rl.big_n + BigInt::one()) * chi_line_bundle(n, d - k)
            - BigInt::from(n + 1) * chi_line_bundle(n, 1 - k);
        if sum != expected {
            violations.push(EulerViolation {
                k,
                alternating_sum: sum,
                expected,
            });
        }
    }
    Ok(EulerReport {
        k_min,
        k_max,
        violations,
    })
}
