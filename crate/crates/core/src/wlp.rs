//! Failure of the weak Lefschetz property in degree `d − 1`.
//!
//! `I_d` is generated in degree `d`, so `(R/I_d)_{d−1}` is spanned by every
//! monomial of degree `d − 1` and `(R/I_d)_d` by the degree-`d` monomials
//! outside `M_d`. For a linear form `L = Σ cᵢxᵢ` we build the matrix of
//! `×L` between these monomial bases and compute its exact rank. When
//! `μ_d ≤ C(d+n−1, n−1)` the domain is the smaller side, so a rank below
//! the domain dimension witnesses a non-injective map.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::invariants::enumerate_invariants;
use crate::lattice::{monomials_of_degree, GroupSpec};
use crate::linalg::exact_rank;

pub const DEFAULT_WLP_SEED: u64 = 0x5eed_2023;

/// Coefficients of sampled linear forms are drawn from `1..=COEFF_MAX`.
pub const COEFF_MAX: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlpSample {
    /// `None` for the structured form `x₀ + … + xₙ`.
    pub seed: Option<u64>,
    pub coefficients: Vec<u64>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlpReport {
    /// `C(n+d−1, n)`.
    pub domain_dim: usize,
    /// `C(n+d, n) − μ_d`.
    pub codomain_dim: usize,
    pub sampled_ranks: Vec<WlpSample>,
    pub deficiency_witnessed: bool,
}

/// Matrix of `×L` with rows indexed by the degree-`d` monomials outside
/// `M_d` and columns by all degree-`d − 1` monomials, both in lex order.
pub fn multiplication_matrix(spec: &GroupSpec, coefficients: &[u64]) -> Vec<Vec<BigInt>> {
    assert_eq!(coefficients.len(), spec.num_vars());
    let nv = spec.num_vars();
    let d = spec.d();
    let m_d = enumerate_invariants(spec, 1).expect("t = 1");
    let domain = monomials_of_degree(nv, d - 1);
    let codomain: Vec<_> = monomials_of_degree(nv, d)
        .into_iter()
        .filter(|m| !m_d.contains(m))
        .collect();

    let mut rows = vec![vec![BigInt::from(0); domain.len()]; codomain.len()];
    for (col, u) in domain.iter().enumerate() {
        for (var, &c) in coefficients.iter().enumerate() {
            let image = u.mul(&crate::lattice::ExponentVector::pure_power(nv, var, 1));
            // images landing in M_d vanish in the quotient
            if let Ok(row) = codomain.binary_search(&image) {
                rows[row][col] += BigInt::from(c);
            }
        }
    }
    rows
}

/// Samples linear forms and reports the exact rank of `×L` for each.
///
/// The structured form `x₀ + … + xₙ` is always the first sample; it is
/// followed by `num_samples` forms whose coefficients come from a ChaCha
/// stream seeded with `seed + i`.
pub fn check_wlp_failure(spec: &GroupSpec, num_samples: usize, seed: u64) -> WlpReport {
    let nv = spec.num_vars();
    let mut forms: Vec<(Option<u64>, Vec<u64>)> = vec![(None, vec![1; nv])];
    for i in 0..num_samples as u64 {
        let s = seed.wrapping_add(i);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let coeffs = (0..nv).map(|_| rng.gen_range(1..=COEFF_MAX)).collect();
        forms.push((Some(s), coeffs));
    }
    let sampled_ranks: Vec<WlpSample> = forms
        .into_par_iter()
        .map(|(seed, coefficients)| {
            let rank = exact_rank(&multiplication_matrix(spec, &coefficients));
            WlpSample {
                seed,
                coefficients,
                rank,
            }
        })
        .collect();

    let n = spec.n() as u64;
    let d = spec.d() as u64;
    let domain_dim = crate::lattice::binom_u128(n + d - 1, n) as usize;
    let mu = enumerate_invariants(spec, 1).expect("t = 1").len();
    let codomain_dim = crate::lattice::binom_u128(n + d, n) as usize - mu;
    let deficiency_witnessed = sampled_ranks.iter().any(|s| s.rank < domain_dim);
    WlpReport {
        domain_dim,
        codomain_dim,
        sampled_ranks,
        deficiency_witnessed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_deficiency() {
        let spec = GroupSpec::new(5, &[0, 1, 3]).unwrap();
        let r = check_wlp_failure(&spec, 3, DEFAULT_WLP_SEED);
        assert_eq!((r.domain_dim, r.codomain_dim), (15, 16));
        assert_eq!(r.sampled_ranks.len(), 4);
        assert_eq!(r.sampled_ranks[0].seed, None);
        assert!(r.sampled_ranks.iter().all(|s| s.rank <= r.domain_dim));
        assert!(r.deficiency_witnessed);

        let spec = GroupSpec::new(4, &[0, 1, 2, 3]).unwrap();
        let r = check_wlp_failure(&spec, 3, DEFAULT_WLP_SEED);
        assert!(r.deficiency_witnessed);
    }

    #[test]
    fn sampling_is_reproducible() {
        let spec = GroupSpec::new(5, &[0, 1, 2]).unwrap();
        assert_eq!(
            check_wlp_failure(&spec, 2, 7),
            check_wlp_failure(&spec, 2, 7)
        );
    }

    #[test]
    fn matrix_shape() {
        let spec = GroupSpec::new(5, &[0, 1, 3]).unwrap();
        let m = multiplication_matrix(&spec, &[1, 1, 1]);
        assert_eq!(m.len(), 16);
        assert!(m.iter().all(|r| r.len() == 15));
    }
}
