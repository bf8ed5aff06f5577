//! The canonical module `relint(I_d)` and the level / Gorenstein /
//! regularity classification it controls.
//!
//! `relint(I_d)` is the ideal of the invariant ring spanned by the
//! full-support invariants. Its minimal generators live in degrees `d` and
//! `2d` only: `C_{d,1}` (full-support members of `M_d`) together with the
//! members of `C_{d,2}` that no element of `C_{d,1}` divides. Divisibility
//! is enough here because the quotient of two invariants is again invariant.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::invariants::{enumerate_invariants, InvariantBasis};
use crate::lattice::{ExponentVector, GroupSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalModule {
    pub spec: GroupSpec,
    /// `C_{d,1}`, lex-sorted.
    pub c1: Vec<ExponentVector>,
    /// `C_{d,2}`, lex-sorted.
    pub c2: Vec<ExponentVector>,
    /// `C_{d,1}` followed by the degree-`2d` generators, each block lex-sorted.
    pub minimal_gens: Vec<ExponentVector>,
    pub eta_d: usize,
}

impl CanonicalModule {
    /// The degree-`2d` part of the minimal generators.
    pub fn c2_minimal(&self) -> &[ExponentVector] {
        &self.minimal_gens[self.c1.len()..]
    }
}

fn full_support(basis: InvariantBasis) -> Vec<ExponentVector> {
    basis
        .monomials
        .into_iter()
        .filter(ExponentVector::has_full_support)
        .collect()
}

pub fn compute_canonical(spec: &GroupSpec) -> CanonicalModule {
    let c1 = full_support(enumerate_invariants(spec, 1).expect("t = 1"));
    let c2 = full_support(enumerate_invariants(spec, 2).expect("t = 2"));
    let mut minimal_gens = c1.clone();
    minimal_gens.extend(
        c2.iter()
            .filter(|m| !c1.iter().any(|g| g.divides(m)))
            .cloned(),
    );
    CanonicalModule {
        spec: spec.clone(),
        eta_d: c1.len(),
        c1,
        c2,
        minimal_gens,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingClassification {
    pub is_level: bool,
    pub is_gorenstein: bool,
    /// Castelnuovo–Mumford regularity, `n` or `n + 1`.
    pub regularity: usize,
    /// Canonical module generated by a nonempty `C_{d,1}`.
    pub is_level_gt: bool,
}

pub fn classify_ring(spec: &GroupSpec) -> RingClassification {
    classify_module(&compute_canonical(spec))
}

pub fn classify_module(cm: &CanonicalModule) -> RingClassification {
    let only_degree_d = cm.minimal_gens.len() == cm.c1.len();
    let is_level = if cm.c1.is_empty() {
        // then every generator sits in degree 2d
        true
    } else {
        only_degree_d
    };
    let n = cm.spec.n();
    RingClassification {
        is_level,
        is_gorenstein: is_level && cm.minimal_gens.len() == 1,
        regularity: if cm.c1.is_empty() { n } else { n + 1 },
        is_level_gt: !cm.c1.is_empty() && only_degree_d,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationViolation {
    pub k: u32,
    pub monomial: ExponentVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationReport {
    pub k_max: u32,
    /// `|C_{d,k}|` for `k = 3..=k_max`.
    pub checked: Vec<(u32, usize)>,
    pub violations: Vec<GenerationViolation>,
}

impl GenerationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For `3 ≤ k ≤ k_max`, checks that each `m ∈ C_{d,k}` is `q·m'` with
/// `q ∈ M_d` and `m' ∈ C_{d,k−1}`.
pub fn verify_generation_bound(spec: &GroupSpec, k_max: u32) -> Result<GenerationReport> {
    if k_max < 3 {
        return Err(crate::Error::InvalidArgument(format!(
            "k_max must be >= 3, got {k_max}"
        )));
    }
    let m_d = enumerate_invariants(spec, 1)?;
    let mut checked = Vec::new();
    let mut violations = Vec::new();
    for k in 3..=k_max {
        let c_k = full_support(enumerate_invariants(spec, k)?);
        checked.push((k, c_k.len()));
        violations.extend(
            undivided(&m_d, c_k)
                .into_iter()
                .map(|monomial| GenerationViolation { k, monomial }),
        );
    }
    Ok(GenerationReport {
        k_max,
        checked,
        violations,
    })
}

/// Members of `c_k` with no factor `q ∈ M_d` leaving a full-support quotient.
fn undivided(m_d: &InvariantBasis, c_k: Vec<ExponentVector>) -> Vec<ExponentVector> {
    c_k.into_iter()
        .filter(|m| {
            !m_d.monomials.iter().any(|q| {
                m.checked_div(q)
                    .is_some_and(|rest| rest.has_full_support())
            })
        })
        .collect()
}

/// A nonempty `C_{d,1}` forces at least three distinct weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeDistinctRecord {
    pub c1_nonempty: bool,
    pub num_distinct_alphas: usize,
    pub implication_holds: bool,
}

pub fn check_three_distinct(spec: &GroupSpec) -> ThreeDistinctRecord {
    let c1_nonempty = enumerate_invariants(spec, 1)
        .expect("t = 1")
        .monomials
        .iter()
        .any(ExponentVector::has_full_support);
    let num_distinct_alphas = spec.num_distinct_alphas();
    ThreeDistinctRecord {
        c1_nonempty,
        num_distinct_alphas,
        implication_holds: !c1_nonempty || num_distinct_alphas >= 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(d: u32, a: &[u32]) -> GroupSpec {
        GroupSpec::new(d, a).unwrap()
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn canonical_6_0123() {
        let cm = compute_canonical(&spec(6, &[0, 1, 2, 3]));
        assert_eq!(cm.c1, vec![ev(&[3, 1, 1, 1]), ev(&[1, 1, 1, 3])]);
        assert_eq!(cm.c2.len(), 29);
        assert_eq!(cm.minimal_gens.len(), 6);
        assert!(cm.minimal_gens.contains(&ev(&[2, 4, 4, 2])));
        assert_eq!(cm.eta_d, 2);
        // every degree-2d minimal generator avoids C1 multiples
        for m in cm.c2_minimal() {
            assert!(!cm.c1.iter().any(|g| g.divides(m)));
        }
    }

    #[test]
    fn canonical_4_0123_has_no_degree_d_part() {
        let cm = compute_canonical(&spec(4, &[0, 1, 2, 3]));
        assert!(cm.c1.is_empty());
        assert_eq!(cm.minimal_gens, cm.c2);
        assert_eq!(cm.c2.len(), 9);
    }

    #[test]
    fn gorenstein_principal() {
        let cm = compute_canonical(&spec(5, &[0, 1, 2, 3, 4]));
        assert_eq!(cm.minimal_gens, vec![ev(&[1, 1, 1, 1, 1])]);
    }

    #[test]
    fn classification_examples() {
        let c = classify_ring(&spec(6, &[0, 1, 2, 3]));
        assert!(!c.is_level && !c.is_level_gt);
        assert_eq!(c.regularity, 4);

        let c = classify_ring(&spec(4, &[0, 1, 2, 3]));
        assert!(c.is_level && !c.is_level_gt && !c.is_gorenstein);
        assert_eq!(c.regularity, 3);

        let c = classify_ring(&spec(4, &[0, 1, 1, 2]));
        assert!(c.is_level && c.is_level_gt && c.is_gorenstein);
        assert_eq!(c.regularity, 4);
    }

    #[test]
    fn generation_bound() {
        let r = verify_generation_bound(&spec(6, &[0, 1, 2, 3]), 3).unwrap();
        assert!(r.passed());
        assert!(r.checked[0].1 > 0);
        assert!(verify_generation_bound(&spec(5, &[0, 1, 3]), 4)
            .unwrap()
            .passed());
        assert!(verify_generation_bound(&spec(5, &[0, 1, 3]), 2).is_err());
    }

    #[test]
    fn generation_bound_vacuous() {
        let m_d = enumerate_invariants(&spec(5, &[0, 0, 1]), 1).unwrap();
        assert!(undivided(&m_d, Vec::new()).is_empty());
        // a monomial of the wrong shape is reported
        assert_eq!(undivided(&m_d, vec![ev(&[1, 1, 1])]), vec![ev(&[1, 1, 1])]);
    }

    #[test]
    fn three_distinct() {
        let r = check_three_distinct(&spec(4, &[0, 1, 1, 2]));
        assert!(r.c1_nonempty && r.num_distinct_alphas == 3 && r.implication_holds);
        let r = check_three_distinct(&spec(4, &[0, 0, 1, 1]));
        assert!(!r.c1_nonempty && r.num_distinct_alphas == 2 && r.implication_holds);
        let r = check_three_distinct(&spec(6, &[0, 1, 2, 3]));
        assert!(r.c1_nonempty && r.num_distinct_alphas == 4);
    }
}
