//! Secondary invariants and the Hilbert series of the invariant ring.
//!
//! Over the parameters `x₀^d, …, xₙ^d` the ring is free, with a basis of
//! secondary invariants: the invariants of degree `t·d` whose exponents are
//! all below `d`. Writing `e_t` for how many sit in degree block `t`, the
//! Hilbert series is `(1 + e₁z + ⋯ + eₙzⁿ) / (1 − z)ⁿ⁺¹` and `Σ e_t = d^{n−1}`.
//! Blocks past `n` are empty since `(n+1)·d` exceeds `(n+1)(d−1)`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::invariants::enumerate_weighted;
use crate::lattice::{binom, ExponentVector, GroupSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub n: usize,
    /// `(e₀, …, eₙ)` with `e₀ = 1`.
    pub e: Vec<u64>,
    /// Same as `e`: the numerator coefficients in increasing powers of `z`.
    pub numerator: Vec<u64>,
    /// `Σ eⱼ`, which equals `d^{n−1}`.
    pub degree: u64,
    /// Secondary invariants by block `t = 1..=n` (the constant `1` is block 0).
    pub secondary_invariants: Vec<Vec<ExponentVector>>,
}

impl HilbertData {
    /// `HS(z) = (1 + 6z + 9z^2)/(1-z)^4`.
    pub fn to_text(&self) -> String {
        let mut num = String::new();
        for (j, &c) in self.numerator.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !num.is_empty() {
                num.push_str(" + ");
            }
            match j {
                0 => write!(num, "{c}").unwrap(),
                1 => write!(num, "{c}z").unwrap(),
                _ => write!(num, "{c}z^{j}").unwrap(),
            }
        }
        format!("HS(z) = ({num})/(1-z)^{}", self.n + 1)
    }

    /// Coefficient of `z^t` in the expanded series: `Σⱼ eⱼ·C(t−j+n, n)`.
    pub fn hilbert_function(&self, t: i64) -> BigInt {
        let n = self.n as i64;
        self.e
            .iter()
            .enumerate()
            .filter(|(j, _)| t >= *j as i64)
            .fold(BigInt::zero(), |acc, (j, &ej)| {
                acc + BigInt::from(ej) * binom(t - j as i64 + n, n)
            })
    }
}

pub fn compute_hilbert(spec: &GroupSpec) -> HilbertData {
    let n = spec.n();
    let d = spec.d();
    let secondary_invariants: Vec<Vec<ExponentVector>> = (1..=n as u32)
        .map(|t| enumerate_weighted(spec, t * d, Some(d - 1)))
        .collect();
    debug_assert!(enumerate_weighted(spec, (n as u32 + 1) * d, Some(d - 1)).is_empty());

    let mut e = vec![1u64];
    e.extend(secondary_invariants.iter().map(|b| b.len() as u64));
    let degree: u64 = e.iter().sum();
    assert_eq!(
        BigInt::from(degree),
        BigInt::from(d).pow(n as u32 - 1),
        "secondary invariant count must be d^(n-1) for {spec}"
    );
    HilbertData {
        n,
        numerator: e.clone(),
        e,
        degree,
        secondary_invariants,
    }
}

/// Number of invariants of degree `t·d`, read off the Hilbert series.
pub fn hilbert_function(spec: &GroupSpec, t: u32) -> BigInt {
    compute_hilbert(spec).hilbert_function(t as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{enumerate_invariants, mu};

    fn spec(d: u32, a: &[u32]) -> GroupSpec {
        GroupSpec::new(d, a).unwrap()
    }

    #[test]
    fn numerators() {
        let h = compute_hilbert(&spec(4, &[0, 1, 2, 3]));
        assert_eq!(h.numerator, vec![1, 6, 9, 0]);
        assert_eq!(h.to_text(), "HS(z) = (1 + 6z + 9z^2)/(1-z)^4");

        let h = compute_hilbert(&spec(6, &[0, 1, 2, 3]));
        assert_eq!(h.numerator, vec![1, 12, 21, 2]);
        assert_eq!(h.degree, 36);

        let h = compute_hilbert(&spec(5, &[0, 1, 3]));
        assert_eq!(h.degree, 5);
    }

    #[test]
    fn function_values() {
        let s = spec(6, &[0, 1, 2, 3]);
        assert_eq!(hilbert_function(&s, 0), BigInt::from(1));
        assert_eq!(hilbert_function(&s, 1), BigInt::from(16));
        assert_eq!(hilbert_function(&s, 2), BigInt::from(79));
        assert_eq!(hilbert_function(&spec(5, &[0, 1, 3]), 0), BigInt::from(1));
    }

    #[test]
    fn series_matches_enumeration() {
        for (d, a) in [
            (5, vec![0, 1, 3]),
            (4, vec![0, 1, 1, 2]),
            (5, vec![0, 1, 2, 3, 4]),
        ] {
            let s = spec(d, &a);
            let h = compute_hilbert(&s);
            assert_eq!(h.e[1] as usize, mu(&s) - s.num_vars());
            for t in 1..=4 {
                let direct = enumerate_invariants(&s, t).unwrap().len();
                assert_eq!(
                    h.hilbert_function(t as i64),
                    BigInt::from(direct),
                    "{s} t={t}"
                );
            }
        }
    }
}
