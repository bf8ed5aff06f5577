//! Group specifications, exponent vectors and exact binomial arithmetic.
//!
//! Everything else in the crate speaks in terms of [`GroupSpec`] and
//! [`ExponentVector`]. A spec `(d; α₀,…,αₙ)` stands for the cyclic group
//! generated by `diag(e^α₀, …, e^αₙ)` with `e` a primitive `d`-th root of
//! unity; a monomial `x₀^a₀⋯xₙ^aₙ` is invariant under it exactly when
//! `Σ αᵢ·aᵢ ≡ 0 (mod d)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated cyclic diagonal group `(d; α₀,…,αₙ)`.
///
/// Residues are reduced modulo `d` and sorted ascending. The constructor
/// enforces `2 ≤ n < d`, `gcd(d, α₀, …, αₙ) = 1` and that not every residue
/// is equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct GroupSpec {
    d: u32,
    alphas: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawSpec {
    d: i64,
    alphas: Vec<i64>,
}

impl TryFrom<RawSpec> for GroupSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        normalize_spec(raw.d, &raw.alphas)
    }
}

impl From<GroupSpec> for RawSpec {
    fn from(spec: GroupSpec) -> Self {
        RawSpec {
            d: spec.d as i64,
            alphas: spec.alphas.iter().map(|&a| a as i64).collect(),
        }
    }
}

/// Reduces, sorts and validates a raw `(d; α…)` tuple.
pub fn normalize_spec(raw_d: i64, raw_alphas: &[i64]) -> Result<GroupSpec> {
    if raw_d < 2 {
        return Err(Error::InvalidOrder(raw_d));
    }
    if raw_alphas.is_empty() {
        return Err(Error::EmptyWeights);
    }
    if raw_d > u32::MAX as i64 {
        return Err(Error::InvalidOrder(raw_d));
    }
    let d = raw_d as u32;
    let mut alphas: Vec<u32> = raw_alphas
        .iter()
        .map(|&a| a.rem_euclid(raw_d) as u32)
        .collect();
    alphas.sort_unstable();

    let n = alphas.len() - 1;
    if n < 2 || (d as usize) <= n {
        return Err(Error::DimensionTooSmall { n, d });
    }
    let g = alphas.iter().fold(d, |g, &a| g.gcd(&a));
    if g != 1 {
        return Err(Error::GcdViolation { gcd: g });
    }
    if alphas.first() == alphas.last() {
        return Err(Error::DegenerateSpec);
    }
    Ok(GroupSpec { d, alphas })
}

impl GroupSpec {
    /// Convenience wrapper around [`normalize_spec`] for in-range inputs.
    pub fn new(d: u32, alphas: &[u32]) -> Result<Self> {
        let raw: Vec<i64> = alphas.iter().map(|&a| a as i64).collect();
        normalize_spec(d as i64, &raw)
    }

    /// Projective dimension `n`; there are `n + 1` variables.
    pub fn n(&self) -> usize {
        self.alphas.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.alphas.len()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn alphas(&self) -> &[u32] {
        &self.alphas
    }

    /// `Σ αᵢ·aᵢ mod d`.
    pub fn weight(&self, m: &ExponentVector) -> u32 {
        let d = self.d as u64;
        let w = self
            .alphas
            .iter()
            .zip(m.exps())
            .fold(0u64, |acc, (&a, &e)| (acc + (a as u64) * (e as u64)) % d);
        w as u32
    }

    pub fn is_invariant(&self, m: &ExponentVector) -> bool {
        m.len() == self.num_vars() && self.weight(m) == 0
    }

    /// Number of distinct residues among the weights.
    pub fn num_distinct_alphas(&self) -> usize {
        let mut v = self.alphas.clone();
        v.dedup();
        v.len()
    }

    /// The spec obtained by adding `c` to every weight.
    pub fn shifted(&self, c: i64) -> Result<Self> {
        let raw: Vec<i64> = self.alphas.iter().map(|&a| a as i64 + c).collect();
        normalize_spec(self.d as i64, &raw)
    }

    /// The spec obtained by multiplying every weight by `u`.
    pub fn scaled(&self, u: i64) -> Result<Self> {
        let raw: Vec<i64> = self.alphas.iter().map(|&a| a as i64 * u).collect();
        normalize_spec(self.d as i64, &raw)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.d)?;
        for (i, a) in self.alphas.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Exponents `(a₀,…,aₙ)` of the monomial `x₀^a₀⋯xₙ^aₙ`.
///
/// The derived [`Ord`] is the monomial lex order used for every listing in
/// the crate: `x₀⁵` comes before `x₀²x₁²x₂`, and `x₁⁵` before `x₂⁵`. In
/// other words, larger leading exponents come first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        ExponentVector(exps)
    }

    pub fn zero(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    /// `x_var^power` in `len` variables.
    pub fn pure_power(len: usize, var: usize, power: u32) -> Self {
        let mut v = vec![0; len];
        v[var] = power;
        ExponentVector(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All exponents strictly positive.
    pub fn has_full_support(&self) -> bool {
        self.0.iter().all(|&e| e > 0)
    }

    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_assign(&mut self, other: &ExponentVector) {
        debug_assert_eq!(self.len(), other.len());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &ExponentVector) -> Option<ExponentVector> {
        if !other.divides(self) {
            return None;
        }
        Some(ExponentVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Text form `x0^3*x1*x2*x3`; the empty monomial prints as `1`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{i}")
                } else {
                    format!("x{i}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Inverse of [`to_text`](Self::to_text) over `num_vars` variables.
    /// Repeated factors accumulate, so `x0*x0` reads as `x0^2`.
    pub fn parse(text: &str, num_vars: usize) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse monomial {text:?}"));
        let mut exps = vec![0u32; num_vars];
        let text = text.trim();
        if text == "1" {
            return Ok(ExponentVector(exps));
        }
        for factor in text.split('*') {
            let factor = factor.trim().strip_prefix('x').ok_or_else(bad)?;
            let (var, pow) = match factor.split_once('^') {
                Some((v, p)) => (v, p.parse::<u32>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            let var: usize = var.parse().map_err(|_| bad())?;
            if var >= num_vars {
                return Err(bad());
            }
            exps[var] += pow;
        }
        Ok(ExponentVector(exps))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        // Larger leading exponent first.
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Lex comparison of two monomials; `Less` means `u` is listed first.
pub fn lex_compare(u: &ExponentVector, v: &ExponentVector) -> Result<Ordering> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(u.cmp(v))
}

/// Every monomial of degree `degree` in `num_vars` variables, in lex order.
pub fn monomials_of_degree(num_vars: usize, degree: u32) -> Vec<ExponentVector> {
    fn go(i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if i + 1 == cur.len() {
            cur[i] = rem;
            out.push(ExponentVector(cur.clone()));
            return;
        }
        for a in (0..=rem).rev() {
            cur[i] = a;
            go(i + 1, rem - a, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if num_vars == 0 {
        return out;
    }
    go(0, degree, &mut vec![0; num_vars], &mut out);
    out
}

/// `C(a, b)`, with the convention that it vanishes unless `0 ≤ b ≤ a`.
pub fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 || a < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= BigInt::from(a - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// `C(a, b)` as a `u128`, saturating on overflow. Used for resource caps.
pub(crate) fn binom_u128(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b as u128 {
        acc = match acc.checked_mul(a as u128 - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}
