//! Binomial generators of the toric ideal `I(X_d)` through fiber graphs.
//!
//! Number the generators `m₁,…,m_μ` of `M_d` in lex order and send
//! `wᵢ ↦ mᵢ`. A degree-`k` monomial in the `w` variables is a size-`k`
//! multiset of indices; two multisets with the same image form a suitable
//! binomial. Grouping multisets by image gives the *fibers*. Inside a fiber,
//! two members are joined when they share an index: the difference is then
//! a multiple of a lower-degree binomial. The number of connected components
//! of that graph decides how many new generators degree `k` contributes:
//!
//! * degree 2: fibers have no edges, so a fiber with `s` members contributes
//!   `s − 1` quadrics;
//! * degree 3: a fiber with `c` components contributes `c − 1` cubics;
//! * degree `k ≥ 4`: every fiber is connected, so nothing new appears.
//!
//! Internally indices are 0-based; serialized binomials use 1-based indices
//! so that `w₁` is the first generator.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{enumerate_invariants, InvariantBasis};
use crate::lattice::{binom_u128, ExponentVector, GroupSpec};

/// Limits for fiber enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricOptions {
    /// Upper bound on the number of index multisets `C(μ+k−1, k)`.
    pub max_multisets: u128,
}

impl Default for ToricOptions {
    fn default() -> Self {
        ToricOptions {
            max_multisets: 100_000_000,
        }
    }
}

/// A sorted multiset of 0-based generator indices.
pub type Multiset = Vec<u32>;

/// `w^plus − w^minus` with equal images and `plus` lex-before `minus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "BinomialWire", try_from = "BinomialWire")]
pub struct SuitableBinomial {
    plus: Multiset,
    minus: Multiset,
}

#[derive(Serialize, Deserialize)]
struct BinomialWire {
    plus: Vec<u32>,
    minus: Vec<u32>,
}

impl From<SuitableBinomial> for BinomialWire {
    fn from(b: SuitableBinomial) -> Self {
        BinomialWire {
            plus: b.plus.iter().map(|i| i + 1).collect(),
            minus: b.minus.iter().map(|i| i + 1).collect(),
        }
    }
}

impl TryFrom<BinomialWire> for SuitableBinomial {
    type Error = Error;

    fn try_from(w: BinomialWire) -> Result<Self> {
        if w.plus.iter().chain(&w.minus).any(|&i| i == 0) {
            return Err(Error::InvalidArgument("indices are 1-based".into()));
        }
        let plus = w.plus.iter().map(|i| i - 1).collect();
        let minus = w.minus.iter().map(|i| i - 1).collect();
        SuitableBinomial::from_sides(plus, minus)
    }
}

impl SuitableBinomial {
    /// Builds a binomial from two index multisets, sorting each side and
    /// orienting the pair. Image equality is not checked here; see
    /// [`SuitableBinomial::checked`].
    pub fn from_sides(mut a: Multiset, mut b: Multiset) -> Result<Self> {
        a.sort_unstable();
        b.sort_unstable();
        if a.len() != b.len() || a.is_empty() || a == b {
            return Err(Error::NotSuitable);
        }
        if b < a {
            std::mem::swap(&mut a, &mut b);
        }
        Ok(SuitableBinomial { plus: a, minus: b })
    }

    /// Like [`SuitableBinomial::from_sides`], but also checks that both
    /// sides have the same image in `R`.
    pub fn checked(generators: &InvariantBasis, a: Multiset, b: Multiset) -> Result<Self> {
        let b = Self::from_sides(a, b)?;
        let img_plus = image(generators, &b.plus)?;
        let img_minus = image(generators, &b.minus)?;
        if img_plus != img_minus {
            return Err(Error::NotSuitable);
        }
        Ok(b)
    }

    pub fn plus(&self) -> &[u32] {
        &self.plus
    }

    pub fn minus(&self) -> &[u32] {
        &self.minus
    }

    pub fn degree(&self) -> usize {
        self.plus.len()
    }

    /// The two sides share a generator.
    pub fn is_trivial(&self) -> bool {
        shares_index(&self.plus, &self.minus)
    }

    /// `w1*w15 - w4^2` style text, 1-based.
    pub fn to_text(&self) -> String {
        fn side(s: &[u32]) -> String {
            let mut parts = Vec::new();
            let mut i = 0;
            while i < s.len() {
                let j = s[i..].iter().take_while(|&&x| x == s[i]).count();
                if j == 1 {
                    parts.push(format!("w{}", s[i] + 1));
                } else {
                    parts.push(format!("w{}^{}", s[i] + 1, j));
                }
                i += j;
            }
            parts.join("*")
        }
        format!("{} - {}", side(&self.plus), side(&self.minus))
    }
}

fn image(generators: &InvariantBasis, s: &[u32]) -> Result<ExponentVector> {
    let nv = generators.spec.num_vars();
    let mut acc = ExponentVector::zero(nv);
    for &i in s {
        let m = generators.monomials.get(i as usize).ok_or_else(|| {
            Error::InvalidArgument(format!("generator index {} out of range", i + 1))
        })?;
        acc.mul_assign(m);
    }
    Ok(acc)
}

/// Two sorted multisets intersect.
fn shares_index(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// All size-`k` index multisets sharing one image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fiber {
    pub key: ExponentVector,
    /// Lex-sorted, pairwise distinct.
    pub members: Vec<Multiset>,
}

impl Fiber {
    /// Components of the shared-index graph, computed with union-find over
    /// indices. Each component is a sorted list of member positions and the
    /// components are ordered by their first member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.members.len());
        let mut first_with: HashMap<u32, usize> = HashMap::new();
        for (pos, m) in self.members.iter().enumerate() {
            for &idx in m {
                match first_with.get(&idx) {
                    Some(&other) => uf.union(other, pos),
                    None => {
                        first_with.insert(idx, pos);
                    }
                }
            }
        }
        uf.groups()
    }

    pub fn num_components(&self) -> usize {
        let mut uf = UnionFind::new(self.members.len());
        let mut first_with: HashMap<u32, usize> = HashMap::new();
        for (pos, m) in self.members.iter().enumerate() {
            for &idx in m {
                if let Some(&other) = first_with.get(&idx) {
                    uf.union(other, pos);
                } else {
                    first_with.insert(idx, pos);
                }
            }
        }
        uf.count()
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() <= 1
    }
}

/// A fiber with its explicit trivial-move adjacency.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberGraph {
    pub fiber: Fiber,
    /// Pairs `(u, v)` with `u < v` whose members share an index.
    pub adjacency: Vec<(usize, usize)>,
    pub components: Vec<Vec<usize>>,
}

impl FiberGraph {
    /// Builds the graph by pairwise comparison and takes components by BFS.
    pub fn new(fiber: Fiber) -> Self {
        let s = fiber.members.len();
        let mut adjacency = Vec::new();
        let mut nbrs = vec![Vec::new(); s];
        for u in 0..s {
            for v in u + 1..s {
                if shares_index(&fiber.members[u], &fiber.members[v]) {
                    adjacency.push((u, v));
                    nbrs[u].push(v);
                    nbrs[v].push(u);
                }
            }
        }
        let mut seen = vec![false; s];
        let mut components = Vec::new();
        for start in 0..s {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &nbrs[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        FiberGraph {
            fiber,
            adjacency,
            components,
        }
    }

    /// Shortest chain of trivial moves from member `from` to member `to`.
    pub fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let s = self.fiber.members.len();
        let mut nbrs = vec![Vec::new(); s];
        for &(u, v) in &self.adjacency {
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
        let mut parent = vec![usize::MAX; s];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &v in &nbrs[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        None
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so that groups are keyed by their first member
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&x| self.find(x) == x)
            .count()
    }

    fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for x in 0..self.parent.len() {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        let mut groups: Vec<Vec<usize>> = by_root.into_values().collect();
        groups.sort_unstable_by_key(|g| g[0]);
        groups
    }
}

fn check_cap(mu: usize, k: usize, opts: &ToricOptions) -> Result<()> {
    let required = binom_u128(mu as u64 + k as u64 - 1, k as u64);
    if required > opts.max_multisets {
        return Err(Error::ResourceBound {
            required,
            cap: opts.max_multisets,
        });
    }
    Ok(())
}

/// Groups every size-`k` multiset of generator indices by its image.
///
/// Fibers come back in lex order of their keys. The total member count is
/// `C(μ_d + k − 1, k)`.
pub fn enumerate_fibers(spec: &GroupSpec, k: usize, opts: &ToricOptions) -> Result<Vec<Fiber>> {
    let gens = enumerate_invariants(spec, 1)?;
    fibers_of(&gens, k, opts)
}

pub(crate) fn fibers_of(
    gens: &InvariantBasis,
    k: usize,
    opts: &ToricOptions,
) -> Result<Vec<Fiber>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "fiber degree must be >= 2, got {k}"
        )));
    }
    let mu = gens.len();
    check_cap(mu, k, opts)?;
    let nv = gens.spec.num_vars();

    // Split on the first index; each chunk lists its multisets in lex order,
    // so concatenating chunks in index order keeps members sorted.
    let chunks: Vec<Vec<(ExponentVector, Multiset)>> = (0..mu)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut cur = vec![first as u32];
            let prod = gens.monomials[first].clone();
            extend_multisets(gens, k, first, &mut cur, prod, &mut out);
            out
        })
        .collect();

    let mut map: HashMap<ExponentVector, Vec<Multiset>> = HashMap::new();
    for (key, member) in chunks.into_iter().flatten() {
        map.entry(key).or_default().push(member);
    }
    let mut fibers: Vec<Fiber> = map
        .into_iter()
        .map(|(key, members)| Fiber { key, members })
        .collect();
    fibers.sort_unstable_by(|a, b| a.key.cmp(&b.key));
    debug_assert!(fibers.iter().all(|f| f.key.len() == nv));
    Ok(fibers)
}

fn extend_multisets(
    gens: &InvariantBasis,
    k: usize,
    min_index: usize,
    cur: &mut Multiset,
    prod: ExponentVector,
    out: &mut Vec<(ExponentVector, Multiset)>,
) {
    if cur.len() == k {
        out.push((prod, cur.clone()));
        return;
    }
    for i in min_index..gens.len() {
        cur.push(i as u32);
        extend_multisets(gens, k, i, cur, prod.mul(&gens.monomials[i]), out);
        cur.pop();
    }
}

/// The single fiber over `key`, found by divisibility search.
fn fiber_over(gens: &InvariantBasis, key: &ExponentVector, k: usize) -> Fiber {
    fn go(
        gens: &InvariantBasis,
        rem: &ExponentVector,
        k: usize,
        min_index: usize,
        cur: &mut Multiset,
        out: &mut Vec<Multiset>,
    ) {
        if cur.len() == k {
            if rem.degree() == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in min_index..gens.len() {
            if let Some(q) = rem.checked_div(&gens.monomials[i]) {
                cur.push(i as u32);
                go(gens, &q, k, i, cur, out);
                cur.pop();
            }
        }
    }
    let mut members = Vec::new();
    go(gens, key, k, 0, &mut Vec::new(), &mut members);
    Fiber {
        key: key.clone(),
        members,
    }
}

/// Whether the two sides of `b` are joined by a chain of trivial moves.
///
/// For degree `k ≥ 3` this decides whether `b` lies in the ideal generated
/// by the binomials of degree `k − 1`.
pub fn has_sequence(spec: &GroupSpec, b: &SuitableBinomial) -> Result<bool> {
    let gens = enumerate_invariants(spec, 1)?;
    let b = SuitableBinomial::checked(&gens, b.plus.clone(), b.minus.clone())?;
    let key = image(&gens, &b.plus)?;
    let fiber = fiber_over(&gens, &key, b.degree());
    let comps = fiber.components();
    let pos = |s: &Multiset| {
        fiber
            .members
            .binary_search(s)
            .expect("side lies in its fiber")
    };
    let (p, m) = (pos(&b.plus), pos(&b.minus));
    Ok(comps.iter().any(|c| c.contains(&p) && c.contains(&m)))
}

/// The fiber graph through a given image, for inspection.
pub fn fiber_graph(spec: &GroupSpec, key: &ExponentVector, k: usize) -> Result<FiberGraph> {
    let gens = enumerate_invariants(spec, 1)?;
    Ok(FiberGraph::new(fiber_over(&gens, key, k)))
}

/// Number of minimal generators of `I(X_d)` in degree 2 or 3.
pub fn minimal_generator_count(spec: &GroupSpec, k: usize, opts: &ToricOptions) -> Result<u64> {
    let fibers = enumerate_fibers(spec, k, opts)?;
    count_from_fibers(&fibers, k)
}

fn count_from_fibers(fibers: &[Fiber], k: usize) -> Result<u64> {
    match k {
        2 => Ok(fibers.iter().map(|f| f.members.len() as u64 - 1).sum()),
        3 => Ok(fibers
            .par_iter()
            .map(|f| f.num_components() as u64 - 1)
            .sum()),
        _ => Err(Error::InvalidArgument(format!(
            "generator counts are defined for degrees 2 and 3, got {k}"
        ))),
    }
}

/// Outcome of checking every fiber of one degree for connectivity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub k: usize,
    pub num_fibers: usize,
    pub num_multisets: u64,
    /// Keys of fibers whose graph is disconnected.
    pub disconnected: Vec<ExponentVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBoundCertificate {
    pub k_max: usize,
    pub degrees: Vec<DegreeCheck>,
    pub certified: bool,
}

/// Checks that every fiber graph in degrees `4..=k_max` is connected, i.e.
/// that no generator of degree 4 or more is needed.
pub fn certify_degree_bound(
    spec: &GroupSpec,
    k_max: usize,
    opts: &ToricOptions,
) -> Result<DegreeBoundCertificate> {
    if k_max < 4 {
        return Err(Error::InvalidArgument(format!(
            "k_max must be >= 4, got {k_max}"
        )));
    }
    let gens = enumerate_invariants(spec, 1)?;
    // Fail fast before any enumeration.
    check_cap(gens.len(), k_max, opts)?;
    let mut degrees = Vec::new();
    for k in 4..=k_max {
        let fibers = fibers_of(&gens, k, opts)?;
        let disconnected: Vec<ExponentVector> = fibers
            .par_iter()
            .filter(|f| !f.is_connected())
            .map(|f| f.key.clone())
            .collect();
        degrees.push(DegreeCheck {
            k,
            num_fibers: fibers.len(),
            num_multisets: fibers.iter().map(|f| f.members.len() as u64).sum(),
            disconnected,
        });
    }
    let certified = degrees.iter().all(|d| d.disconnected.is_empty());
    Ok(DegreeBoundCertificate {
        k_max,
        degrees,
        certified,
    })
}

/// A minimal binomial generating set in degrees 2 and 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricGenerators {
    pub quadrics: Vec<SuitableBinomial>,
    pub cubics: Vec<SuitableBinomial>,
}

/// Quadrics pair every member of a degree-2 fiber with the fiber's lex-least
/// member; cubics pair the lex-least member of each extra component of a
/// degree-3 fiber graph with that of the first component.
pub fn generators(spec: &GroupSpec, opts: &ToricOptions) -> Result<ToricGenerators> {
    let gens = enumerate_invariants(spec, 1)?;
    check_cap(gens.len(), 3, opts)?;
    let quadrics = fibers_of(&gens, 2, opts)?
        .into_iter()
        .flat_map(|f| {
            let base = f.members[0].clone();
            f.members
                .into_iter()
                .skip(1)
                .map(move |m| SuitableBinomial {
                    plus: base.clone(),
                    minus: m,
                })
        })
        .collect();
    let cubics = fibers_of(&gens, 3, opts)?
        .par_iter()
        .map(|f| {
            let comps = f.components();
            comps
                .iter()
                .skip(1)
                .map(|c| SuitableBinomial {
                    plus: f.members[comps[0][0]].clone(),
                    minus: f.members[c[0]].clone(),
                })
                .collect::<Vec<_>>()
        })
        .flatten()
        .collect();
    Ok(ToricGenerators { quadrics, cubics })
}
