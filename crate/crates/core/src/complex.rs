//! Simplicial complexes, flag complexes, nerves, `A(K)`, simplicial maps and
//! contiguity.
//!
//! A complex is stored by its maximal simplices (facets), either explicitly
//! or implicitly as the flag complex of a graph. Facets are never truncated:
//! `dim_cap` only limits face enumeration for chain complexes, so membership
//! and contiguity tests stay exact.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;

use crate::bits::BitSet;
use crate::clique;
use crate::dist::ExtDist;
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::metric::{Cover, FiniteMetricSpace};
use crate::verdict::Verdict;

pub const DEFAULT_DIM_CAP: usize = 3;

#[derive(Clone, Debug)]
enum Kind {
    Flag { adj: Vec<BitSet> },
    Explicit { facet_bits: Vec<BitSet>, incidence: Vec<Vec<usize>> },
}

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    dim_cap: usize,
    kind: Kind,
    facets: OnceLock<Vec<Vec<usize>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.facets() == other.facets()
    }
}

/// Keeps only inclusion-maximal sets; output sorted lexicographically, each
/// set sorted.
fn antichain(n: usize, sets: impl IntoIterator<Item = Vec<usize>>) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = sets
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    all.dedup();
    let mut kept: Vec<Vec<usize>> = Vec::new();
    let mut kept_bits: Vec<BitSet> = Vec::new();
    let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); n];
    for s in all {
        let mut bits = BitSet::new(n);
        for &v in &s {
            bits.insert(v);
        }
        let covered = match s.iter().min_by_key(|&&v| incidence[v].len()) {
            Some(&v) => incidence[v].iter().any(|&k| bits.is_subset(&kept_bits[k])),
            None => !kept.is_empty(),
        };
        if !covered {
            for &v in &s {
                incidence[v].push(kept.len());
            }
            kept.push(s);
            kept_bits.push(bits);
        }
    }
    kept.sort();
    kept
}

impl SimplicialComplex {
    /// A complex from arbitrary generating simplices; non-maximal ones are
    /// dropped. Every vertex not mentioned becomes an isolated vertex.
    pub fn from_facets(vertices: Vec<String>, facets: Vec<Vec<usize>>, dim_cap: usize) -> Result<Self> {
        let n = vertices.len();
        if let Some(&bad) = facets.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::OutOfRange { index: bad, len: n });
        }
        let mut present = vec![false; n];
        for &v in facets.iter().flatten() {
            present[v] = true;
        }
        let singles = (0..n).filter(|&v| !present[v]).map(|v| vec![v]);
        let kept = antichain(n, facets.into_iter().filter(|f| !f.is_empty()).chain(singles));
        Ok(Self::explicit(vertices, kept, dim_cap))
    }

    fn explicit(vertices: Vec<String>, facets: Vec<Vec<usize>>, dim_cap: usize) -> Self {
        let n = vertices.len();
        let mut facet_bits = Vec::with_capacity(facets.len());
        let mut incidence = vec![Vec::new(); n];
        for (k, f) in facets.iter().enumerate() {
            let mut b = BitSet::new(n);
            for &v in f {
                b.insert(v);
                incidence[v].push(k);
            }
            facet_bits.push(b);
        }
        let cell = OnceLock::new();
        let _ = cell.set(facets);
        SimplicialComplex { vertices, dim_cap, kind: Kind::Explicit { facet_bits, incidence }, facets: cell }
    }

    /// The full simplex on `n` vertices named `0..n`.
    pub fn simplex(n: usize, dim_cap: usize) -> Self {
        Self::from_facets(numbered(n), vec![(0..n).collect()], dim_cap).expect("valid")
    }

    /// The boundary of the simplex on `n` vertices (all proper faces).
    pub fn hollow_simplex(n: usize, dim_cap: usize) -> Self {
        let facets = (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect()).collect();
        Self::from_facets(numbered(n), facets, dim_cap).expect("valid")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn with_dim_cap(mut self, dim_cap: usize) -> Self {
        self.dim_cap = dim_cap;
        self
    }

    pub fn is_flag_generated(&self) -> bool {
        matches!(self.kind, Kind::Flag { .. })
    }

    /// Maximal simplices, uncapped, sorted.
    pub fn facets(&self) -> &[Vec<usize>] {
        self.facets.get_or_init(|| match &self.kind {
            Kind::Flag { adj } => clique::maximal_cliques(adj, None).expect("unbounded search"),
            Kind::Explicit { .. } => unreachable!("explicit facets are set at construction"),
        })
    }

    /// Facets, or a budget error if enumerating flag cliques takes too long.
    pub fn try_facets(&self, budget: Option<usize>) -> Result<&[Vec<usize>]> {
        if let Some(f) = self.facets.get() {
            return Ok(f);
        }
        if let Kind::Flag { adj } = &self.kind {
            let f = clique::maximal_cliques(adj, budget)?;
            let _ = self.facets.set(f);
        }
        Ok(self.facets())
    }

    /// True dimension (−1 for the empty complex).
    pub fn dim(&self) -> isize {
        self.facets().iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    /// Maximal simplices of the `dim_cap`-skeleton: small facets as they are
    /// and every `(dim_cap + 1)`-subset of larger facets.
    pub fn capped_maximal_simplices(&self) -> Vec<Vec<usize>> {
        let cap = self.dim_cap + 1;
        let mut out = BTreeSet::new();
        for f in self.facets() {
            if f.len() <= cap {
                out.insert(f.clone());
            } else {
                for_each_subset(f, cap, &mut |s| {
                    out.insert(s.to_vec());
                });
            }
        }
        out.into_iter().collect()
    }

    pub fn is_simplex(&self, set: &[usize]) -> bool {
        if set.iter().any(|&v| v >= self.len()) {
            return false;
        }
        match &self.kind {
            Kind::Flag { adj } => set
                .iter()
                .enumerate()
                .all(|(k, &a)| set[k + 1..].iter().all(|&b| a == b || adj[a].contains(b))),
            Kind::Explicit { facet_bits, incidence } => {
                let Some(&first) = set.iter().min_by_key(|&&v| incidence[v].len()) else {
                    return true;
                };
                incidence[first].iter().any(|&k| set.iter().all(|&v| facet_bits[k].contains(v)))
            }
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.is_simplex(&[a, b])
    }

    /// Closed neighbourhood `N[v]` in the 1-skeleton, sorted.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        match &self.kind {
            Kind::Flag { adj } => {
                let mut out: Vec<usize> = adj[v].iter().collect();
                out.push(v);
                out.sort_unstable();
                out
            }
            Kind::Explicit { facet_bits, incidence } => {
                let mut acc = BitSet::new(self.len());
                acc.insert(v);
                for &k in &incidence[v] {
                    for w in facet_bits[k].iter() {
                        acc.insert(w);
                    }
                }
                acc.iter().collect()
            }
        }
    }

    pub fn one_skeleton(&self) -> Graph {
        let mut edges = Vec::new();
        for v in 0..self.len() {
            for w in self.closed_neighborhood(v) {
                if w > v {
                    edges.push((v, w));
                }
            }
        }
        Graph::new(self.vertices.clone(), edges).expect("valid edges")
    }

    /// All simplices of dimension `0..=max_dim`, each list in lexicographic
    /// order.
    pub fn simplices_up_to(&self, max_dim: usize) -> Vec<Vec<Vec<usize>>> {
        match &self.kind {
            Kind::Flag { adj } => {
                let mut out = vec![Vec::new(); max_dim + 1];
                let mut stack = Vec::new();
                for v in 0..self.len() {
                    let mut higher = adj[v].clone();
                    for u in 0..=v {
                        higher.remove(u);
                    }
                    stack.push(v);
                    extend_cliques(adj, &mut stack, &higher, max_dim, &mut out);
                    stack.pop();
                }
                for level in &mut out {
                    level.sort();
                }
                out
            }
            Kind::Explicit { .. } => {
                let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); max_dim + 1];
                for f in self.facets() {
                    for (k, level) in sets.iter_mut().enumerate() {
                        if k < f.len() {
                            for_each_subset(f, k + 1, &mut |s| {
                                level.insert(s.to_vec());
                            });
                        }
                    }
                }
                sets.into_iter().map(|s| s.into_iter().collect()).collect()
            }
        }
    }

    /// Number of simplices of each dimension up to `max_dim`.
    pub fn f_vector(&self, max_dim: usize) -> Vec<usize> {
        self.simplices_up_to(max_dim).iter().map(Vec::len).collect()
    }

    pub fn names(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    /// DOT rendering of the 1-skeleton.
    pub fn to_dot(&self, name: &str) -> String {
        self.one_skeleton().to_dot(name)
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn extend_cliques(
    adj: &[BitSet],
    stack: &mut Vec<usize>,
    candidates: &BitSet,
    max_dim: usize,
    out: &mut [Vec<Vec<usize>>],
) {
    out[stack.len() - 1].push(stack.clone());
    if stack.len() > max_dim {
        return;
    }
    for w in candidates.iter() {
        let mut next = candidates.intersection(&adj[w]);
        for u in candidates.iter().take_while(|&u| u <= w) {
            next.remove(u);
        }
        stack.push(w);
        extend_cliques(adj, stack, &next, max_dim, out);
        stack.pop();
    }
}

/// Calls `f` on every `k`-subset of the sorted slice `set`, in lexicographic
/// order.
pub(crate) fn for_each_subset(set: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(set: &[usize], k: usize, start: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if buf.len() == k {
            f(buf);
            return;
        }
        let need = k - buf.len();
        if set.len() < start + need {
            return;
        }
        for i in start..=set.len() - need {
            buf.push(set[i]);
            go(set, k, i + 1, buf, f);
            buf.pop();
        }
    }
    if k <= set.len() {
        go(set, k, 0, &mut Vec::with_capacity(k), f);
    }
}

/// The flag complex of `g`: every clique is a simplex.
pub fn flag_complex(g: &Graph, dim_cap: usize) -> Result<SimplicialComplex> {
    if dim_cap < 1 {
        return Err(Error::Precondition("dim_cap must be at least 1".into()));
    }
    Ok(SimplicialComplex {
        vertices: g.vertices().to_vec(),
        dim_cap,
        kind: Kind::Flag { adj: g.adjacency_bits() },
        facets: OnceLock::new(),
    })
}

pub fn rips_complex(space: &FiniteMetricSpace, t: ExtDist, dim_cap: usize) -> Result<SimplicialComplex> {
    flag_complex(&graph::rips_graph_t(space, t)?, dim_cap)
}

pub fn rips_complex_cover(space: &FiniteMetricSpace, cover: &Cover, dim_cap: usize) -> Result<SimplicialComplex> {
    flag_complex(&graph::rips_graph_cover(space, cover)?, dim_cap)
}

/// `A(K)`: every vertex set inside some closed neighbourhood `N[v]` of the
/// 1-skeleton.
pub fn augment_complex(k: &SimplicialComplex) -> SimplicialComplex {
    let facets = antichain(k.len(), (0..k.len()).map(|v| k.closed_neighborhood(v)));
    SimplicialComplex::explicit(k.vertices.clone(), facets, k.dim_cap)
}

/// Flag complex of the 1-skeleton.
pub fn reflag(k: &SimplicialComplex) -> SimplicialComplex {
    flag_complex(&k.one_skeleton(), k.dim_cap.max(1)).expect("cap at least one")
}

/// Nerve of a cover: vertices are members, simplices are sets of members
/// with a common point.
pub fn nerve(space: &FiniteMetricSpace, cover: &Cover, dim_cap: usize) -> Result<SimplicialComplex> {
    if cover.n_points() != space.len() {
        return Err(Error::CoverMismatch { cover: cover.n_points(), space: space.len() });
    }
    let facets = antichain(cover.len(), (0..space.len()).map(|x| cover.members_containing(x)));
    Ok(SimplicialComplex::explicit(cover.names().to_vec(), facets, dim_cap))
}

/// A total vertex map between complexes.
#[derive(Clone, Debug)]
pub struct SimplicialMap<'a> {
    pub source: &'a SimplicialComplex,
    pub target: &'a SimplicialComplex,
    assignment: Vec<usize>,
}

impl<'a> SimplicialMap<'a> {
    pub fn new(source: &'a SimplicialComplex, target: &'a SimplicialComplex, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::PartialMap { expected: source.len(), got: assignment.len() });
        }
        if let Some(&bad) = assignment.iter().find(|&&v| v >= target.len()) {
            return Err(Error::OutOfRange { index: bad, len: target.len() });
        }
        Ok(SimplicialMap { source, target, assignment })
    }

    pub fn identity(k: &'a SimplicialComplex) -> Self {
        SimplicialMap { source: k, target: k, assignment: (0..k.len()).collect() }
    }

    /// Identity on vertex indices between complexes on the same vertex list.
    pub fn inclusion(source: &'a SimplicialComplex, target: &'a SimplicialComplex) -> Result<Self> {
        if source.vertices != target.vertices {
            return Err(Error::MismatchedMaps);
        }
        Ok(SimplicialMap { source, target, assignment: (0..source.len()).collect() })
    }

    pub fn constant(source: &'a SimplicialComplex, target: &'a SimplicialComplex, v: usize) -> Result<Self> {
        Self::new(source, target, vec![v; source.len()])
    }

    pub fn apply(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn image(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&v| self.assignment[v]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `other ∘ self`.
    pub fn then<'b>(&self, other: &SimplicialMap<'b>) -> Result<SimplicialMap<'b>>
    where
        'a: 'b,
    {
        if !same_complex(self.target, other.source) {
            return Err(Error::MismatchedMaps);
        }
        Ok(SimplicialMap {
            source: self.source,
            target: other.target,
            assignment: self.assignment.iter().map(|&v| other.apply(v)).collect(),
        })
    }
}

fn same_complex(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    std::ptr::eq(a, b) || a == b
}

/// Whether every facet of the source maps onto a simplex. Fails with the
/// first facet (by vertex names) whose image is not one.
pub fn is_simplicial(f: &SimplicialMap<'_>) -> Verdict<Vec<String>> {
    first_non_simplicial(f.source, f.target, f.assignment())
        .map(|facet| f.source.names(&facet))
        .into()
}

pub(crate) fn first_non_simplicial(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    map: &[usize],
) -> Option<Vec<usize>> {
    source
        .facets()
        .iter()
        .find(|facet| {
            let mut img: Vec<usize> = facet.iter().map(|&v| map[v]).collect();
            img.sort_unstable();
            img.dedup();
            !target.is_simplex(&img)
        })
        .cloned()
}

/// Whether `f(Δ) ∪ g(Δ)` spans a simplex for every facet `Δ` of the source.
pub fn are_contiguous(f: &SimplicialMap<'_>, g: &SimplicialMap<'_>) -> Result<Verdict<Vec<String>>> {
    if !same_complex(f.source, g.source) || !same_complex(f.target, g.target) {
        return Err(Error::MismatchedMaps);
    }
    Ok(first_non_contiguous(f.source, f.target, f.assignment(), g.assignment())
        .map(|facet| f.source.names(&facet))
        .into())
}

pub(crate) fn first_non_contiguous(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    f: &[usize],
    g: &[usize],
) -> Option<Vec<usize>> {
    source
        .facets()
        .iter()
        .find(|facet| {
            let mut img: Vec<usize> = facet.iter().flat_map(|&v| [f[v], g[v]]).collect();
            img.sort_unstable();
            img.dedup();
            !target.is_simplex(&img)
        })
        .cloned()
}

/// Outcome of checking `f ≃ h ∘ g` up to contiguity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorizationReport {
    pub contiguous: Verdict<Vec<String>>,
    pub g_simplicial: Verdict<Vec<String>>,
    pub h_simplicial: Verdict<Vec<String>>,
    pub mid_dim: isize,
}

impl FactorizationReport {
    pub fn passes(&self) -> bool {
        self.contiguous.holds() && self.g_simplicial.holds() && self.h_simplicial.holds()
    }
}

pub fn verify_contiguous_factorization(
    f: &SimplicialMap<'_>,
    g: &SimplicialMap<'_>,
    h: &SimplicialMap<'_>,
) -> Result<FactorizationReport> {
    if !same_complex(g.source, f.source) || !same_complex(h.target, f.target) {
        return Err(Error::MismatchedMaps);
    }
    let hg = g.then(h)?;
    Ok(FactorizationReport {
        contiguous: are_contiguous(f, &hg)?,
        g_simplicial: is_simplicial(g),
        h_simplicial: is_simplicial(h),
        mid_dim: g.target.dim(),
    })
}

/// Largest diameter of the image of a facet under a vertex map into a metric
/// space, and whether it is within `bound`.
pub fn bounded_simplices_check(
    k: &SimplicialComplex,
    map: &[usize],
    space: &FiniteMetricSpace,
    bound: ExtDist,
) -> Result<(bool, ExtDist)> {
    if map.len() != k.len() {
        return Err(Error::PartialMap { expected: k.len(), got: map.len() });
    }
    if let Some(&bad) = map.iter().find(|&&x| x >= space.len()) {
        return Err(Error::OutOfRange { index: bad, len: space.len() });
    }
    let worst = k
        .facets()
        .iter()
        .map(|f| {
            let img: Vec<usize> = f.iter().map(|&v| map[v]).collect();
            space.diameter_of(&img)
        })
        .max()
        .unwrap_or(ExtDist::ZERO);
    Ok((worst.le_tol(bound, space.tolerance()), worst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Norm;

    fn square() -> FiniteMetricSpace {
        FiniteMetricSpace::from_points(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]],
            Norm::Euclidean,
        )
        .unwrap()
    }

    #[test]
    fn flag_examples() {
        let tri = flag_complex(&Graph::complete(3), 2).unwrap();
        assert_eq!(tri.facets(), &[vec![0, 1, 2]]);
        assert_eq!(tri.f_vector(2), vec![3, 3, 1]);
        let c4 = flag_complex(&Graph::cycle(4), 2).unwrap();
        assert_eq!(c4.f_vector(2), vec![4, 4, 0]);
        let k5 = flag_complex(&Graph::complete(5), 2).unwrap();
        assert_eq!(k5.capped_maximal_simplices().len(), 10);
        assert_eq!(k5.dim(), 4);
        assert_eq!(k5.f_vector(2), vec![5, 10, 10]);
    }

    #[test]
    fn rips_square() {
        let m = square();
        let k = rips_complex(&m, ExtDist::finite(1.0), 3).unwrap();
        assert_eq!(k.f_vector(3), vec![4, 4, 0, 0]);
        let k = rips_complex(&m, ExtDist::finite(1.5), 3).unwrap();
        assert_eq!(k.facets(), &[vec![0, 1, 2, 3]]);
        let k = rips_complex(&m, ExtDist::finite(0.5), 3).unwrap();
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn augmentation_examples() {
        let path = flag_complex(&Graph::path(3), 3).unwrap();
        assert_eq!(augment_complex(&path).facets(), &[vec![0, 1, 2]]);
        let s = SimplicialComplex::simplex(4, 3);
        assert_eq!(augment_complex(&s), s);
        let c4 = flag_complex(&Graph::cycle(4), 3).unwrap();
        let a = augment_complex(&c4);
        assert_eq!(a.facets(), &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        assert!(a.has_edge(0, 2));
        assert!(!a.is_simplex(&[0, 1, 2, 3]));
        assert_eq!(reflag(&a).dim(), 3);
    }

    #[test]
    fn nerve_examples() {
        let m = FiniteMetricSpace::integer_interval(0, 5);
        let c = Cover::new(
            6,
            vec![("U1".into(), vec![0, 1, 2]), ("U2".into(), vec![1, 2, 3, 4]), ("U3".into(), vec![3, 4, 5])],
        )
        .unwrap();
        let n = nerve(&m, &c, 3).unwrap();
        assert_eq!(n.facets(), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(nerve(&m, &Cover::singletons(&m), 3).unwrap().dim(), 0);
        let shared = Cover::new(6, vec![("a".into(), vec![0, 1]), ("b".into(), vec![0, 2, 3]), ("c".into(), vec![0, 4, 5])]).unwrap();
        assert_eq!(nerve(&m, &shared, 3).unwrap().facets(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn simplicial_and_contiguity() {
        let c4 = flag_complex(&Graph::cycle(4), 3).unwrap();
        assert!(is_simplicial(&SimplicialMap::identity(&c4)).holds());
        assert!(is_simplicial(&SimplicialMap::constant(&c4, &c4, 2).unwrap()).holds());
        let swap = SimplicialMap::new(&c4, &c4, vec![2, 1, 0, 3]).unwrap();
        assert!(is_simplicial(&swap).holds());
        let bad = SimplicialMap::new(&c4, &c4, vec![0, 1, 3, 2]).unwrap();
        assert!(!is_simplicial(&bad).holds());

        let id = SimplicialMap::identity(&c4);
        let rot = SimplicialMap::new(&c4, &c4, vec![1, 2, 3, 0]).unwrap();
        assert!(are_contiguous(&id, &id).unwrap().holds());
        assert!(!are_contiguous(&id, &rot).unwrap().holds());
        let a = SimplicialMap::constant(&c4, &c4, 0).unwrap();
        let b = SimplicialMap::constant(&c4, &c4, 1).unwrap();
        let c = SimplicialMap::constant(&c4, &c4, 2).unwrap();
        assert!(are_contiguous(&a, &b).unwrap().holds());
        assert!(!are_contiguous(&a, &c).unwrap().holds());
    }

    #[test]
    fn factorization_examples() {
        let m = square();
        let k1 = rips_complex(&m, ExtDist::finite(1.0), 3).unwrap();
        let k3 = rips_complex(&m, ExtDist::finite(3.0), 3).unwrap();
        let f = SimplicialMap::inclusion(&k1, &k3).unwrap();
        let point = SimplicialComplex::simplex(1, 3);
        let g = SimplicialMap::constant(&k1, &point, 0).unwrap();
        let h = SimplicialMap::constant(&point, &k3, 0).unwrap();
        let r = verify_contiguous_factorization(&f, &g, &h).unwrap();
        assert!(r.passes());
        assert_eq!(r.mid_dim, 0);

        let id = SimplicialMap::identity(&k1);
        let r = verify_contiguous_factorization(&id, &id, &id).unwrap();
        assert!(r.passes());
        assert_eq!(r.mid_dim, 1);

        let path = flag_complex(&Graph::path(3), 3).unwrap();
        let g = SimplicialMap::new(&k1, &path, vec![0, 1, 2, 1]).unwrap();
        let h = SimplicialMap::new(&path, &k1, vec![0, 1, 2]).unwrap();
        let r = verify_contiguous_factorization(&id, &g, &h).unwrap();
        assert!(!r.contiguous.holds());
    }

    #[test]
    fn bounded_simplices() {
        let m = FiniteMetricSpace::integer_interval(0, 5);
        let k = rips_complex(&m, ExtDist::finite(1.0), 1).unwrap();
        let id: Vec<usize> = (0..6).collect();
        assert_eq!(bounded_simplices_check(&k, &id, &m, ExtDist::finite(1.0)).unwrap(), (true, ExtDist::finite(1.0)));
        assert_eq!(bounded_simplices_check(&k, &[3; 6], &m, ExtDist::ZERO).unwrap(), (true, ExtDist::ZERO));
        let whole = SimplicialComplex::simplex(6, 3);
        assert_eq!(bounded_simplices_check(&whole, &id, &m, ExtDist::finite(2.0)).unwrap(), (false, ExtDist::finite(5.0)));
    }

    #[test]
    fn subsets_enumeration() {
        let mut seen = Vec::new();
        for_each_subset(&[1, 4, 6, 9], 2, &mut |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![1, 4]);
        let mut none = 0;
        for_each_subset(&[1], 3, &mut |_| none += 1);
        assert_eq!(none, 0);
    }
}
