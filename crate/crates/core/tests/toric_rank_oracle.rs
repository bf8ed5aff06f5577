//! Generator counts and degree certification compared against plain linear
//! algebra on the graded pieces of the toric ideal.
//!
//! In degree `k` the ideal is spanned by differences of multisets with the
//! same image, so `dim I_k = #multisets − #images`. A minimal generating set
//! needs `dim I_k − dim(S_1·I_{k−1})` new elements in degree `k`; that rank
//! is computed with exact elimination.

use std::collections::{BTreeMap, HashMap};

use gtvar::invariants::enumerate_invariants;
use gtvar::linalg::exact_rank_i64;
use gtvar::toric::{certify_degree_bound, minimal_generator_count, ToricOptions};
use gtvar::{ExponentVector, GroupSpec};

fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in multisets(m, k - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for i in lo..m {
            let mut v = rest.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

struct Graded {
    gens: Vec<ExponentVector>,
}

impl Graded {
    fn new(d: u32, a: &[u32]) -> Self {
        let s = GroupSpec::new(d, a).unwrap();
        Graded {
            gens: enumerate_invariants(&s, 1).unwrap().monomials,
        }
    }

    fn image(&self, ms: &[usize]) -> ExponentVector {
        let mut acc = ExponentVector::zero(self.gens[0].len());
        for &i in ms {
            acc.mul_assign(&self.gens[i]);
        }
        acc
    }

    /// A basis of `I_k`: each multiset minus the first multiset with its image.
    fn ideal_basis(&self, k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut first: BTreeMap<ExponentVector, Vec<usize>> = BTreeMap::new();
        let mut out = Vec::new();
        for ms in multisets(self.gens.len(), k) {
            let img = self.image(&ms);
            match first.get(&img) {
                Some(base) => out.push((base.clone(), ms)),
                None => {
                    first.insert(img, ms);
                }
            }
        }
        out
    }

    /// Rank of `S_1 · I_{k−1}` inside the degree-`k` multiset space.
    fn lifted_rank(&self, k: usize) -> usize {
        let index: HashMap<Vec<usize>, usize> = multisets(self.gens.len(), k)
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let with = |ms: &[usize], j: usize| {
            let mut v = ms.to_vec();
            v.push(j);
            v.sort_unstable();
            index[&v]
        };
        let mut rows = Vec::new();
        for (a, b) in self.ideal_basis(k - 1) {
            for j in 0..self.gens.len() {
                let mut row = vec![0i64; index.len()];
                row[with(&a, j)] += 1;
                row[with(&b, j)] -= 1;
                rows.push(row);
            }
        }
        exact_rank_i64(&rows)
    }

    fn new_generators(&self, k: usize) -> usize {
        self.ideal_basis(k).len() - self.lifted_rank(k)
    }
}

const SPECS: [(u32, &[u32]); 5] = [
    (5, &[0, 1, 3]),
    (4, &[0, 1, 3]),
    (5, &[0, 1, 2]),
    (7, &[0, 1, 3]),
    (4, &[0, 1, 2, 3]),
];

#[test]
fn quadric_count_is_dimension_of_degree_two() {
    let opts = ToricOptions::default();
    for (d, a) in SPECS {
        let g = Graded::new(d, a);
        let s = GroupSpec::new(d, a).unwrap();
        assert_eq!(
            minimal_generator_count(&s, 2, &opts).unwrap() as usize,
            g.ideal_basis(2).len(),
            "{s}"
        );
    }
}

#[test]
fn cubic_count_matches_rank_deficit() {
    let opts = ToricOptions::default();
    for (d, a) in SPECS {
        let g = Graded::new(d, a);
        let s = GroupSpec::new(d, a).unwrap();
        assert_eq!(
            minimal_generator_count(&s, 3, &opts).unwrap() as usize,
            g.new_generators(3),
            "{s}"
        );
    }
}

#[test]
fn certified_degrees_need_no_new_generators() {
    for (d, a) in SPECS {
        let s = GroupSpec::new(d, a).unwrap();
        let cert = certify_degree_bound(&s, 4, &ToricOptions::default()).unwrap();
        assert!(cert.certified, "{s}");
        if s.n() == 2 {
            assert_eq!(Graded::new(d, a).new_generators(4), 0, "{s}");
        }
    }
}
