//! Reduced simplicial homology over prime fields and induced maps.
//!
//! Chain groups are augmented by `C_{-1} = F` so every rank computed here is
//! a rank of reduced homology. Boundary matrices are sparse and reduced
//! column by column.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::graph;
use crate::metric::FiniteMetricSpace;
use crate::tower::Tower;
use crate::dist::ExtDist;

/// Sparse vector over GF(p): `(row, value)` pairs sorted by row, values
/// nonzero and reduced.
pub type SparseVec = Vec<(usize, u32)>;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r, mut base, mut e) = (1u64, u64::from(a), p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % u64::from(p);
        }
        base = base * base % u64::from(p);
        e >>= 1;
    }
    r as u32
}

/// `a + c·b` over GF(p).
fn axpy(a: &SparseVec, c: u32, b: &SparseVec, p: u32) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let p64 = u64::from(p);
    let scaled = |v: u32| (u64::from(c) * u64::from(v) % p64) as u32;
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, scaled(b[j].1)));
            j += 1;
        } else {
            let v = (a[i].1 + scaled(b[j].1)) % p;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental column reduction with pivot at the largest row. Keeps the
/// reduced columns so later columns can be reduced against them.
#[derive(Clone, Debug, Default)]
struct Basis {
    pivots: HashMap<usize, SparseVec>,
}

impl Basis {
    /// Reduces `v` against the basis (and optionally an overlay); returns
    /// the remainder.
    fn reduce(&self, mut v: SparseVec, overlay: Option<&Basis>, p: u32, mut track: Option<(&mut SparseVec, &HashMap<usize, SparseVec>)>) -> SparseVec {
        while let Some(&(low, val)) = v.last() {
            let col = self.pivots.get(&low).or_else(|| overlay.and_then(|o| o.pivots.get(&low)));
            let Some(col) = col else { break };
            let lead = col.last().expect("pivot column is nonzero").1;
            let c = p - (u64::from(val) * u64::from(inv_mod(lead, p)) % u64::from(p)) as u32;
            v = axpy(&v, c % p, col, p);
            if let Some((combo, history)) = track.as_mut() {
                **combo = axpy(combo, c % p, &history[&low], p);
            }
        }
        v
    }
}

/// Augmented chain complex of a simplicial complex over GF(p).
#[derive(Clone, Debug)]
pub struct FieldChainComplex {
    pub prime: u32,
    /// `simplices[d]` lists the d-simplices in lexicographic order.
    pub simplices: Vec<Vec<Vec<usize>>>,
    /// `true` when `dim_cap` removed simplices needed for the top degree.
    pub top_truncated: bool,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl FieldChainComplex {
    /// Highest dimension whose simplices are enumerated.
    pub fn top(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.index.get(simplex.len().wrapping_sub(1)).and_then(|m| m.get(simplex).copied())
    }

    /// Column `j` of `∂_d`; for `d = 0` this is the augmentation.
    pub fn boundary_column(&self, d: usize, j: usize) -> SparseVec {
        let s = &self.simplices[d][j];
        if d == 0 {
            return vec![(0, 1)];
        }
        let mut col: SparseVec = (0..s.len())
            .map(|i| {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
                let row = self.index[d - 1][&face];
                let sign = if i % 2 == 0 { 1 } else { self.prime - 1 };
                (row, sign % self.prime)
            })
            .collect();
        col.sort_unstable();
        col
    }

    /// Number of rows of `∂_d`.
    pub fn rows(&self, d: usize) -> usize {
        if d == 0 {
            1
        } else {
            self.simplices[d - 1].len()
        }
    }

    /// All columns of `∂_d`.
    pub fn boundary(&self, d: usize) -> Vec<SparseVec> {
        (0..self.simplices.get(d).map_or(0, Vec::len)).map(|j| self.boundary_column(d, j)).collect()
    }

    /// Rank of `∂_d` plus a basis of its kernel (as chains in `C_d`).
    fn reduce_boundary(&self, d: usize) -> (usize, Basis, Vec<SparseVec>) {
        let p = self.prime;
        let mut basis = Basis::default();
        let mut history: HashMap<usize, SparseVec> = HashMap::new();
        let mut kernel = Vec::new();
        for (j, col) in self.boundary(d).into_iter().enumerate() {
            let mut combo: SparseVec = vec![(j, 1)];
            let r = basis.reduce(col, None, p, Some((&mut combo, &history)));
            match r.last() {
                None => kernel.push(combo),
                Some(&(low, _)) => {
                    history.insert(low, combo);
                    basis.pivots.insert(low, r);
                }
            }
        }
        (basis.pivots.len(), basis, kernel)
    }

    /// Reduced basis of the image of `∂_{d}`.
    fn image_basis(&self, d: usize) -> Basis {
        let p = self.prime;
        let mut basis = Basis::default();
        for col in self.boundary(d) {
            let r = basis.reduce(col, None, p, None);
            if let Some(&(low, _)) = r.last() {
                basis.pivots.insert(low, r);
            }
        }
        basis
    }

    /// Verifies `∂_{d} ∘ ∂_{d+1} = 0` for every pair of enumerated degrees.
    pub fn boundary_squared_vanishes(&self) -> bool {
        (1..=self.top()).all(|d| {
            (0..self.simplices[d].len()).all(|j| {
                let mut acc: SparseVec = Vec::new();
                for (row, v) in self.boundary_column(d, j) {
                    acc = axpy(&acc, v, &self.boundary_column(d - 1, row), self.prime);
                }
                acc.is_empty()
            })
        })
    }
}

/// Builds the augmented chain complex through degree `min(p_max + 1,
/// dim_cap)`.
pub fn chain_complex(k: &SimplicialComplex, p_max: usize, prime: u32) -> Result<FieldChainComplex> {
    if !is_prime(prime) {
        return Err(Error::NotPrime(prime));
    }
    if p_max > k.dim_cap() {
        return Err(Error::Precondition(format!("p_max {p_max} exceeds dim_cap {}", k.dim_cap())));
    }
    let top = (p_max + 1).min(k.dim_cap());
    let simplices = k.simplices_up_to(top);
    let index = simplices
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();
    let top_truncated = top < p_max + 1 && k.dim() > top as isize;
    Ok(FieldChainComplex { prime, simplices, top_truncated, index })
}

/// Homology bookkeeping for one complex: kernels and boundary images.
struct Prepared {
    chain: FieldChainComplex,
    /// `cycles[p]`: basis of reduced `Z_p`.
    cycles: Vec<Vec<SparseVec>>,
    /// `images[p]`: reduced basis of `B_p = im ∂_{p+1}`.
    images: Vec<Basis>,
    betti: Vec<usize>,
}

fn prepare(k: &SimplicialComplex, p_max: usize, prime: u32) -> Result<Prepared> {
    let chain = chain_complex(k, p_max, prime)?;
    let mut cycles = Vec::new();
    let mut images = Vec::new();
    let mut betti = Vec::new();
    for p in 0..=p_max {
        let z = if p <= chain.top() { chain.reduce_boundary(p).2 } else { Vec::new() };
        let b = if p < chain.top() { chain.image_basis(p + 1) } else { Basis::default() };
        betti.push(z.len() - b.pivots.len());
        cycles.push(z);
        images.push(b);
    }
    Ok(Prepared { chain, cycles, images, betti })
}

/// Push a chain of `source` forward along a vertex map.
fn push_chain(chain: &SparseVec, d: usize, src: &FieldChainComplex, dst: &FieldChainComplex, map: &[usize]) -> Result<SparseVec> {
    let p = src.prime;
    let mut out: HashMap<usize, u32> = HashMap::new();
    for &(j, v) in chain {
        let s = &src.simplices[d][j];
        let img: Vec<usize> = s.iter().map(|&x| map[x]).collect();
        let mut sorted = img.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let inversions = (0..img.len())
            .flat_map(|a| (a + 1..img.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| img[a] > img[b])
            .count();
        let row = dst.index_of(&sorted).ok_or_else(|| Error::NotSimplicial { simplex: s.iter().map(|x| x.to_string()).collect() })?;
        let coeff = if inversions % 2 == 0 { v } else { (p - v) % p };
        let e = out.entry(row).or_insert(0);
        *e = (*e + coeff) % p;
    }
    let mut v: SparseVec = out.into_iter().filter(|&(_, c)| c != 0).collect();
    v.sort_unstable();
    Ok(v)
}

fn induced_ranks(src: &Prepared, dst: &Prepared, map: &[usize], p_max: usize) -> Result<Vec<usize>> {
    let prime = src.chain.prime;
    (0..=p_max)
        .map(|p| {
            let mut extra = Basis::default();
            for z in &src.cycles[p] {
                let img = push_chain(z, p, &src.chain, &dst.chain, map)?;
                let r = dst.images[p].reduce(img, Some(&extra), prime, None);
                if let Some(&(low, _)) = r.last() {
                    extra.pivots.insert(low, r);
                }
            }
            Ok(extra.pivots.len())
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiNumbers {
    pub reduced: Vec<usize>,
    pub unreduced: Vec<usize>,
    /// Degree `p_max` lacks simplices above `dim_cap`; its number is an
    /// upper bound.
    pub top_truncated: bool,
}

pub fn betti(k: &SimplicialComplex, p_max: usize, prime: u32) -> Result<BettiNumbers> {
    let prep = prepare(k, p_max, prime)?;
    let mut unreduced = prep.betti.clone();
    if !k.is_empty() {
        unreduced[0] += 1;
    }
    Ok(BettiNumbers { reduced: prep.betti, unreduced, top_truncated: prep.chain.top_truncated })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedMapReport {
    pub prime: u32,
    pub ranks: Vec<usize>,
    pub betti_source: Vec<usize>,
    pub betti_target: Vec<usize>,
    pub trivial: Vec<bool>,
}

/// Ranks of `H̃_p(f)` for `0 ≤ p ≤ p_max`.
pub fn induced_map(f: &SimplicialMap<'_>, p_max: usize, prime: u32) -> Result<InducedMapReport> {
    if let crate::Verdict::Fails(simplex) = crate::complex::is_simplicial(f) {
        return Err(Error::NotSimplicial { simplex });
    }
    let src = prepare(f.source, p_max, prime)?;
    let dst = prepare(f.target, p_max, prime)?;
    let ranks = induced_ranks(&src, &dst, f.assignment(), p_max)?;
    Ok(InducedMapReport {
        prime,
        trivial: ranks.iter().map(|&r| r == 0).collect(),
        ranks,
        betti_source: src.betti,
        betti_target: dst.betti,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileLevel {
    pub level: usize,
    pub label: String,
    /// Least `m ≥ k` with `H̃_p(i_{k,m}) = 0` for all `p ≤ n`. `m = k`
    /// means the level itself has vanishing reduced homology.
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConnectivityProfile {
    pub notion: &'static str,
    pub n: usize,
    pub prime: u32,
    pub dim_cap: usize,
    pub labels: Vec<String>,
    /// `ranks[k][m - k][p]` is the rank of `H̃_p(i_{k,m})`.
    pub ranks: Vec<Vec<Vec<usize>>>,
    pub betti: Vec<Vec<usize>>,
    pub levels: Vec<ProfileLevel>,
    pub top_truncated: bool,
    pub notes: Vec<String>,
}

impl ConnectivityProfile {
    pub fn passes(&self) -> bool {
        self.levels.iter().all(|l| l.witness.is_some())
    }

    pub fn rank(&self, k: usize, m: usize, p: usize) -> usize {
        self.ranks[k][m - k][p]
    }
}

/// Ranks of reduced homology maps along all stored bond pairs of a complex
/// tower, and per-level witnesses of triviality through degree `n`.
pub fn connectivity_profile(tower: &Tower<SimplicialComplex>, n: usize, prime: u32) -> Result<ConnectivityProfile> {
    let prepared: Vec<Prepared> = tower
        .levels()
        .par_iter()
        .map(|k| prepare(k, n, prime))
        .collect::<Result<_>>()?;
    let len = tower.len();
    let ranks: Vec<Vec<Vec<usize>>> = (0..len)
        .into_par_iter()
        .map(|k| {
            (k..len)
                .map(|m| induced_ranks(&prepared[k], &prepared[m], &tower.bond(k, m), n))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let levels = (0..len)
        .map(|k| ProfileLevel {
            level: k,
            label: tower.labels()[k].clone(),
            witness: (k..len).find(|&m| ranks[k][m - k].iter().all(|&r| r == 0)),
        })
        .collect();
    let mut notes = vec![
        "homology connectedness: triviality of reduced homology maps over a prime field; homotopy groups are not examined".to_string(),
    ];
    if tower.space().is_some_and(FiniteMetricSpace::has_infinite_distances) {
        notes.push(
            "the space has infinite distances: reduced H0 maps never vanish across components; the finite-distance formulation asks instead for injective H0 maps".to_string(),
        );
    }
    let top_truncated = prepared.iter().any(|p| p.chain.top_truncated);
    if top_truncated {
        notes.push(format!("degree {n} is computed without simplices above dim_cap; ranks there are upper bounds"));
    }
    Ok(ConnectivityProfile {
        notion: "coarse homology connectedness",
        n,
        prime,
        dim_cap: tower.levels().iter().map(SimplicialComplex::dim_cap).min().unwrap_or(0),
        labels: tower.labels().to_vec(),
        ranks,
        betti: prepared.into_iter().map(|p| p.betti).collect(),
        levels,
        top_truncated,
        notes,
    })
}

/// Whether the Rips graph at `t` is connected.
pub fn is_t_chain_connected(space: &FiniteMetricSpace, t: ExtDist) -> bool {
    let n = space.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut comps = n;
    for a in 0..n {
        for b in a + 1..n {
            if space.within(a, b, t) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    comps -= 1;
                }
            }
        }
    }
    comps <= 1
}

/// Unreduced `b_0` of the Rips complex at `t`, for cross-checks.
pub fn rips_components(space: &FiniteMetricSpace, t: ExtDist) -> Result<usize> {
    Ok(graph::rips_graph_t(space, t)?.components().len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{flag_complex, rips_complex};
    use crate::graph::Graph;

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::hollow_simplex(3, 1)
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(101));
        assert!(!is_prime(1) && !is_prime(9));
        assert!(matches!(chain_complex(&hollow_triangle(), 1, 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn chain_examples() {
        let c = chain_complex(&hollow_triangle(), 1, 2).unwrap();
        assert_eq!(c.simplices[1].len(), 3);
        assert_eq!(c.reduce_boundary(1).0, 2);
        assert!(c.boundary_squared_vanishes());
        let point = SimplicialComplex::simplex(1, 3);
        let c = chain_complex(&point, 0, 2).unwrap();
        assert!(c.simplices[1].is_empty());
        let filled = SimplicialComplex::simplex(3, 3);
        let c = chain_complex(&filled, 1, 3).unwrap();
        assert_eq!(c.reduce_boundary(2).0, 1);
        assert!(c.boundary_squared_vanishes());
    }

    #[test]
    fn betti_examples() {
        for p in [2, 3] {
            let b = betti(&hollow_triangle().with_dim_cap(2), 1, p).unwrap();
            assert_eq!(b.unreduced, vec![1, 1]);
            let b = betti(&flag_complex(&Graph::numbered(4, [(0, 1), (2, 3)]).unwrap(), 2).unwrap(), 1, p).unwrap();
            assert_eq!(b.unreduced, vec![2, 0]);
            let b = betti(&SimplicialComplex::hollow_simplex(4, 3), 2, p).unwrap();
            assert_eq!(b.unreduced, vec![1, 0, 1]);
            assert_eq!(b.reduced, vec![0, 0, 1]);
        }
    }

    #[test]
    fn induced_examples() {
        let h = hollow_triangle().with_dim_cap(2);
        let r = induced_map(&SimplicialMap::identity(&h), 1, 2).unwrap();
        assert_eq!(r.ranks, vec![0, 1]);
        let filled = SimplicialComplex::simplex(3, 2);
        let h = SimplicialComplex::from_facets(filled.vertices().to_vec(), vec![vec![0, 1], vec![1, 2], vec![0, 2]], 2).unwrap();
        let r = induced_map(&SimplicialMap::inclusion(&h, &filled).unwrap(), 1, 3).unwrap();
        assert_eq!(r.ranks, vec![0, 0]);
        assert!(r.trivial.iter().all(|&t| t));

        let sq = FiniteMetricSpace::from_points(
            (0..4).map(|i| i.to_string()).collect(),
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]],
            crate::metric::Norm::Euclidean,
        )
        .unwrap();
        let a = rips_complex(&sq, ExtDist::finite(1.0), 3).unwrap();
        let b = rips_complex(&sq, ExtDist::finite(1.5), 3).unwrap();
        let r = induced_map(&SimplicialMap::inclusion(&a, &b).unwrap(), 1, 2).unwrap();
        assert_eq!(r.betti_source, vec![0, 1]);
        assert_eq!(r.ranks, vec![0, 0]);
    }

    #[test]
    fn odd_prime_orientation() {
        // A reflection of the hollow triangle reverses orientation; rank is
        // still one in every field.
        let h = hollow_triangle().with_dim_cap(2);
        let flip = SimplicialMap::new(&h, &h, vec![1, 0, 2]).unwrap();
        assert_eq!(induced_map(&flip, 1, 3).unwrap().ranks, vec![0, 1]);
    }

    #[test]
    fn chain_connectivity() {
        let m = FiniteMetricSpace::integer_interval(0, 10);
        assert!(is_t_chain_connected(&m, ExtDist::finite(1.0)));
        let far = FiniteMetricSpace::from_points(vec!["0".into(), "10".into()], vec![vec![0.0], vec![10.0]], crate::metric::Norm::Manhattan).unwrap();
        assert!(!is_t_chain_connected(&far, ExtDist::finite(5.0)));
        assert!(is_t_chain_connected(&far, far.diameter()));
    }
}
