//! Monomial invariants of a cyclic diagonal group.
//!
//! The invariants of degree `t·d` are the lattice points `a ∈ ℤ₊ⁿ⁺¹` with
//! `Σ aᵢ = t·d` and `Σ αᵢ·aᵢ ≡ 0 (mod d)`. For `t = 1` they form the set
//! `M_d` of `μ_d` generators; every invariant of degree `t·d` factors as a
//! product of `t` members of `M_d`, which [`factor_invariant`] makes
//! constructive through the zero-sum subsequence solver [`egz_subsequence`].

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{binom, ExponentVector, GroupSpec};
use crate::wlp::{check_wlp_failure, WlpReport};

/// The lex-sorted invariants of degree `t·d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantBasis {
    pub spec: GroupSpec,
    pub t: u32,
    pub monomials: Vec<ExponentVector>,
}

impl InvariantBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Position of `m` in the lex listing.
    pub fn position(&self, m: &ExponentVector) -> Option<usize> {
        self.monomials.binary_search(m).ok()
    }

    pub fn contains(&self, m: &ExponentVector) -> bool {
        self.position(m).is_some()
    }
}

/// Enumerates the invariants of degree `t·d` in lex order.
pub fn enumerate_invariants(spec: &GroupSpec, t: u32) -> Result<InvariantBasis> {
    if t == 0 {
        return Err(Error::ZeroBlockDegree);
    }
    let monomials = enumerate_weighted(spec, t * spec.d(), None);
    Ok(InvariantBasis {
        spec: spec.clone(),
        t,
        monomials,
    })
}

/// `μ_d`, the number of invariants of degree `d`.
pub fn mu(spec: &GroupSpec) -> usize {
    enumerate_weighted(spec, spec.d(), None).len()
}

/// All exponent vectors of total degree `degree` with weight `≡ 0 (mod d)`,
/// optionally with every exponent at most `cap`, in lex order.
///
/// A table of reachable residues for each variable suffix and remaining
/// degree prunes every branch that cannot close the congruence, so the cost
/// is proportional to the output plus the table.
pub(crate) fn enumerate_weighted(
    spec: &GroupSpec,
    degree: u32,
    cap: Option<u32>,
) -> Vec<ExponentVector> {
    let table = ReachTable::new(spec, degree, cap);
    let mut out = Vec::new();
    let mut current = vec![0u32; spec.num_vars()];
    table.walk(0, degree, 0, &mut current, &mut out);
    out
}

struct ReachTable<'a> {
    alphas: &'a [u32],
    d: usize,
    degree: usize,
    cap: u32,
    // reach[(i * (degree + 1) + s) * d + r]: variables i.. can sum to s with
    // weight ≡ r.
    reach: Vec<bool>,
}

impl<'a> ReachTable<'a> {
    fn new(spec: &'a GroupSpec, degree: u32, cap: Option<u32>) -> Self {
        let alphas = spec.alphas();
        let d = spec.d() as usize;
        let degree_us = degree as usize;
        let cap = cap.unwrap_or(degree);
        let nv = alphas.len();
        let mut reach = vec![false; nv * (degree_us + 1) * d];
        let idx = |i: usize, s: usize, r: usize| (i * (degree_us + 1) + s) * d + r;

        let last = nv - 1;
        for s in 0..=degree_us.min(cap as usize) {
            let r = (alphas[last] as usize * s) % d;
            reach[idx(last, s, r)] = true;
        }
        for i in (0..last).rev() {
            let a_i = alphas[i] as usize;
            for s in 0..=degree_us {
                for a in 0..=s.min(cap as usize) {
                    let shift = (a_i * a) % d;
                    let rest = s - a;
                    for r in 0..d {
                        if reach[idx(i + 1, rest, r)] {
                            reach[idx(i, s, (r + shift) % d)] = true;
                        }
                    }
                }
            }
        }
        ReachTable {
            alphas,
            d,
            degree: degree_us,
            cap,
            reach,
        }
    }

    fn can_reach(&self, i: usize, s: usize, r: usize) -> bool {
        self.reach[(i * (self.degree + 1) + s) * self.d + r]
    }

    fn walk(
        &self,
        i: usize,
        remaining: u32,
        partial: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<ExponentVector>,
    ) {
        let need = (self.d - partial) % self.d;
        if !self.can_reach(i, remaining as usize, need) {
            return;
        }
        if i + 1 == self.alphas.len() {
            current[i] = remaining;
            out.push(ExponentVector::new(current.clone()));
            current[i] = 0;
            return;
        }
        for a in (0..=remaining.min(self.cap)).rev() {
            current[i] = a;
            let p = (partial + self.alphas[i] as usize * a as usize) % self.d;
            self.walk(i + 1, remaining - a, p, current, out);
        }
        current[i] = 0;
    }
}

/// Togliatti-bound classification of `I_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtClassification {
    pub mu_d: usize,
    /// `C(d+n−1, n−1)`.
    #[serde(with = "crate::serde_bigint")]
    pub togliatti_bound: BigInt,
    pub is_gt_system: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wlp_report: Option<WlpReport>,
}

/// Compares `μ_d` against `C(d+n−1, n−1)`.
pub fn classify_gt(spec: &GroupSpec) -> GtClassification {
    let mu_d = mu(spec);
    let n = spec.n() as i64;
    let d = spec.d() as i64;
    let bound = binom(d + n - 1, n - 1);
    GtClassification {
        mu_d,
        is_gt_system: BigInt::from(mu_d) <= bound,
        togliatti_bound: bound,
        wlp_report: None,
    }
}

/// [`classify_gt`] plus a sampled weak-Lefschetz report when the bound holds.
pub fn classify_gt_with_wlp(spec: &GroupSpec, num_samples: usize, seed: u64) -> GtClassification {
    let mut c = classify_gt(spec);
    if c.is_gt_system {
        c.wlp_report = Some(check_wlp_failure(spec, num_samples, seed));
    }
    c
}

/// Finds `d` positions of `residues` whose values sum to a multiple of `d`.
///
/// Any `2d − 1` residues contain such a subsequence. The solver runs a
/// suffix dynamic program over (count, residue) states and then walks it
/// greedily from the front, so the returned positions are the
/// lexicographically least valid choice.
pub fn egz_subsequence(residues: &[u64], d: usize) -> Result<Vec<usize>> {
    if d == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let len = residues.len();
    let not_found = Error::ZeroSumNotFound { d, len };
    if len < d {
        return Err(not_found);
    }
    let vals: Vec<usize> = residues.iter().map(|&r| (r % d as u64) as usize).collect();
    // can[i][c * d + r]: some c positions among i.. sum to r mod d.
    let width = (d + 1) * d;
    let mut can = vec![vec![false; width]; len + 1];
    can[len][0] = true;
    for i in (0..len).rev() {
        let (head, tail) = can.split_at_mut(i + 1);
        let (cur, next) = (&mut head[i], &tail[0]);
        cur.copy_from_slice(next);
        let v = vals[i];
        for c in 1..=d {
            for r in 0..d {
                if next[(c - 1) * d + r] {
                    cur[c * d + (r + v) % d] = true;
                }
            }
        }
    }
    if !can[0][d * d] {
        return Err(not_found);
    }
    let mut picked = Vec::with_capacity(d);
    let (mut c, mut r) = (d, 0usize);
    for i in 0..len {
        if c == 0 {
            break;
        }
        let r_after = (r + d - vals[i]) % d;
        if can[i + 1][(c - 1) * d + r_after] {
            picked.push(i);
            c -= 1;
            r = r_after;
        }
    }
    debug_assert_eq!(c, 0);
    Ok(picked)
}

/// Splits an invariant of degree `t·d` into `t` members of `M_d`.
///
/// The monomial is unrolled into its multiset of weights (αᵢ repeated aᵢ
/// times); zero-sum blocks of size `d` are peeled off one at a time. The
/// factors are returned in lex order.
pub fn factor_invariant(
    spec: &GroupSpec,
    m: &ExponentVector,
    t: u32,
) -> Result<Vec<ExponentVector>> {
    let d = spec.d();
    if t == 0 {
        return Err(Error::ZeroBlockDegree);
    }
    if m.len() != spec.num_vars() || m.degree() != t * d || !spec.is_invariant(m) {
        return Err(Error::NotInvariant {
            monomial: m.to_text(),
            expected_degree: t * d,
        });
    }
    let mut remaining = m.clone();
    let mut factors = Vec::with_capacity(t as usize);
    for _ in 1..t {
        // Expand into (variable, weight) pairs.
        let vars: Vec<usize> = remaining
            .exps()
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect();
        let weights: Vec<u64> = vars.iter().map(|&i| spec.alphas()[i] as u64).collect();
        let picked = egz_subsequence(&weights, d as usize)?;
        let mut f = vec![0u32; spec.num_vars()];
        for p in picked {
            f[vars[p]] += 1;
        }
        let f = ExponentVector::new(f);
        remaining = remaining
            .checked_div(&f)
            .expect("picked block divides the remainder");
        factors.push(f);
    }
    factors.push(remaining);
    factors.sort();
    Ok(factors)
}
