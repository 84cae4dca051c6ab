//! Finite towers of graphs or complexes linked by bonding maps.
//!
//! Conditions of the form "for some later level m" are answered with the
//! least stored witness, or reported as unwitnessed within the truncation.

use serde::Serialize;

use crate::cayley::{self, GroupOracle};
use crate::complex::{self, SimplicialComplex};
use crate::dist::ExtDist;
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::metric::{self, Cover, FiniteMetricSpace};
use crate::verdict::Verdict;

/// Operations a tower level must support.
pub trait TowerLevel {
    const KIND: &'static str;

    fn vertex_names(&self) -> &[String];

    /// First cell whose image under `map` is not a cell of `target`.
    fn map_failure(&self, target: &Self, map: &[usize]) -> Option<Vec<usize>>;

    /// Same check with the source replaced by its augmentation.
    fn augmented_failure(&self, target: &Self, map: &[usize]) -> Option<Vec<usize>>;

    /// Whether two maps from `source` into `self` are equivalent: finite
    /// ls-distance in the graph metric, or contiguity. The distance is
    /// reported for graphs.
    fn equivalence(&self, source: &Self, f: &[usize], g: &[usize]) -> (bool, Option<ExtDist>);

    /// Largest diameter of the image of a cell under `map`.
    fn image_diameter(&self, map: &[usize], space: &FiniteMetricSpace) -> ExtDist;

    fn len(&self) -> usize {
        self.vertex_names().len()
    }
}

impl TowerLevel for Graph {
    const KIND: &'static str = "graph";

    fn vertex_names(&self) -> &[String] {
        self.vertices()
    }

    fn map_failure(&self, target: &Self, map: &[usize]) -> Option<Vec<usize>> {
        graph::first_long_edge(map, self, target).map(|(a, b)| vec![a, b])
    }

    fn augmented_failure(&self, target: &Self, map: &[usize]) -> Option<Vec<usize>> {
        graph::augment(self).map_failure(target, map)
    }

    fn equivalence(&self, _source: &Self, f: &[usize], g: &[usize]) -> (bool, Option<ExtDist>) {
        let mut worst = ExtDist::ZERO;
        let mut cache: std::collections::HashMap<usize, Vec<Option<u32>>> = Default::default();
        for (&a, &b) in f.iter().zip(g) {
            let row = cache.entry(a).or_insert_with(|| self.bfs(a));
            let d = row[b].map_or(ExtDist::INF, ExtDist::from);
            worst = worst.max(d);
        }
        (worst.is_finite(), Some(worst))
    }

    fn image_diameter(&self, map: &[usize], space: &FiniteMetricSpace) -> ExtDist {
        self.edges()
            .iter()
            .map(|&(a, b)| space.d(map[a], map[b]))
            .max()
            .unwrap_or(ExtDist::ZERO)
    }
}

impl TowerLevel for SimplicialComplex {
    const KIND: &'static str = "complex";

    fn vertex_names(&self) -> &[String] {
        self.vertices()
    }

    fn map_failure(&self, target: &Self, map: &[usize]) -> Option<Vec<usize>> {
        complex::first_non_simplicial(self, target, map)
    }

    fn augmented_failure(&self, target: &Self, map: &[usize]) -> Option<Vec<usize>> {
        complex::first_non_simplicial(&complex::augment_complex(self), target, map)
    }

    fn equivalence(&self, source: &Self, f: &[usize], g: &[usize]) -> (bool, Option<ExtDist>) {
        (complex::first_non_contiguous(source, self, f, g).is_none(), None)
    }

    fn image_diameter(&self, map: &[usize], space: &FiniteMetricSpace) -> ExtDist {
        self.facets()
            .iter()
            .map(|f| space.diameter_of(&f.iter().map(|&v| map[v]).collect::<Vec<_>>()))
            .max()
            .unwrap_or(ExtDist::ZERO)
    }
}

/// A finite direct sequence `L_0 → L_1 → … → L_N`.
#[derive(Clone, Debug)]
pub struct Tower<L> {
    levels: Vec<L>,
    labels: Vec<String>,
    bonds: Vec<Vec<usize>>,
    space: Option<FiniteMetricSpace>,
    projections: Option<Vec<Vec<usize>>>,
}

impl<L: TowerLevel> Tower<L> {
    /// `bonds[n]` maps the vertices of level `n` to those of level `n + 1`.
    pub fn new(levels: Vec<L>, labels: Vec<String>, bonds: Vec<Vec<usize>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Precondition("a tower needs at least one level".into()));
        }
        if labels.len() != levels.len() || bonds.len() + 1 != levels.len() {
            return Err(Error::Precondition(format!(
                "{} levels need {} labels and {} bonds, got {} and {}",
                levels.len(),
                levels.len(),
                levels.len() - 1,
                labels.len(),
                bonds.len()
            )));
        }
        for (n, b) in bonds.iter().enumerate() {
            check_map(b, levels[n].len(), levels[n + 1].len())?;
        }
        Ok(Tower { levels, labels, bonds, space: None, projections: None })
    }

    /// Attaches projections `p_n` from every level into `space`.
    pub fn with_projections(mut self, space: FiniteMetricSpace, projections: Vec<Vec<usize>>) -> Result<Self> {
        if projections.len() != self.levels.len() {
            return Err(Error::Precondition("one projection per level is required".into()));
        }
        for (n, p) in projections.iter().enumerate() {
            check_map(p, self.levels[n].len(), space.len())?;
        }
        self.space = Some(space);
        self.projections = Some(projections);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[L] {
        &self.levels
    }

    pub fn level(&self, n: usize) -> &L {
        &self.levels[n]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn space(&self) -> Option<&FiniteMetricSpace> {
        self.space.as_ref()
    }

    pub fn projection(&self, n: usize) -> Option<&[usize]> {
        self.projections.as_ref().map(|p| p[n].as_slice())
    }

    pub fn consecutive_bonds(&self) -> &[Vec<usize>] {
        &self.bonds
    }

    /// Replaces one consecutive bond without any checks.
    pub fn set_bond_unchecked(&mut self, n: usize, bond: Vec<usize>) {
        self.bonds[n] = bond;
    }

    /// `i_{n,m}` for `n ≤ m`, composed from consecutive bonds.
    pub fn bond(&self, n: usize, m: usize) -> Vec<usize> {
        assert!(n <= m && m < self.len(), "bond({n}, {m}) out of order");
        let mut map: Vec<usize> = (0..self.levels[n].len()).collect();
        for b in &self.bonds[n..m] {
            for v in &mut map {
                *v = b[*v];
            }
        }
        map
    }

    /// Checks `i_{n,k} = i_{m,k} ∘ i_{n,m}` on every stored triple.
    pub fn composition_holds(&self) -> bool {
        let n_levels = self.len();
        (0..n_levels).all(|n| {
            (n..n_levels).all(|m| {
                let nm = self.bond(n, m);
                (m..n_levels).all(|k| {
                    let mk = self.bond(m, k);
                    let nk = self.bond(n, k);
                    nm.iter().map(|&v| mk[v]).eq(nk.iter().copied())
                })
            })
        })
    }

    fn names(&self, n: usize, cell: &[usize]) -> Vec<String> {
        let names = self.levels[n].vertex_names();
        cell.iter().map(|&v| names[v].clone()).collect()
    }

    /// Tower axioms: bonds are morphisms, compositions agree, and each level
    /// has a least later level receiving its augmentation.
    pub fn verify(&self) -> TowerReport {
        let bonds = (0..self.len() - 1)
            .map(|n| {
                self.levels[n]
                    .map_failure(&self.levels[n + 1], &self.bonds[n])
                    .map(|c| self.names(n, &c))
                    .into()
            })
            .collect();
        let levels = (0..self.len())
            .map(|n| {
                let mut attempts = Vec::new();
                let mut witness = None;
                for m in n + 1..self.len() {
                    match self.levels[n].augmented_failure(&self.levels[m], &self.bond(n, m)) {
                        None => {
                            witness = Some(m);
                            break;
                        }
                        Some(cell) => attempts.push(FailedAttempt { level: m, cell: self.names(n, &cell) }),
                    }
                }
                LevelWitness { level: n, label: self.labels[n].clone(), witness, failed: attempts }
            })
            .collect();
        TowerReport { kind: L::KIND, bonds, composition: self.composition_holds(), levels }
    }

    /// Per level, `ls(p_n, p_{n+1} ∘ i_{n,n+1})` and the largest image
    /// diameter of a cell under `p_n`.
    pub fn verify_projections(&self) -> Result<ProjectionReport> {
        let (Some(space), Some(proj)) = (&self.space, &self.projections) else {
            return Err(Error::Precondition("tower has no projections".into()));
        };
        let levels = (0..self.len())
            .map(|n| {
                let ls = (n + 1 < self.len()).then(|| {
                    let b = &self.bonds[n];
                    (0..self.levels[n].len())
                        .map(|v| space.d(proj[n][v], proj[n + 1][b[v]]))
                        .max()
                        .unwrap_or(ExtDist::ZERO)
                });
                ProjectionLevel {
                    level: n,
                    ls_to_next: ls,
                    max_cell_diameter: self.levels[n].image_diameter(&proj[n], space),
                }
            })
            .collect();
        Ok(ProjectionReport { levels })
    }
}

fn check_map(map: &[usize], from: usize, to: usize) -> Result<()> {
    if map.len() != from {
        return Err(Error::PartialMap { expected: from, got: map.len() });
    }
    if let Some(&bad) = map.iter().find(|&&v| v >= to) {
        return Err(Error::OutOfRange { index: bad, len: to });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FailedAttempt {
    pub level: usize,
    pub cell: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelWitness {
    pub level: usize,
    pub label: String,
    /// Least later level `m` with `A(L_n) → L_m` a morphism.
    pub witness: Option<usize>,
    pub failed: Vec<FailedAttempt>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TowerReport {
    pub kind: &'static str,
    pub bonds: Vec<Verdict<Vec<String>>>,
    pub composition: bool,
    pub levels: Vec<LevelWitness>,
}

impl TowerReport {
    /// Bonds valid, compositions agree, and every level but the last is
    /// witnessed. The last level is unwitnessed within any truncation.
    pub fn passes(&self) -> bool {
        self.bonds.iter().all(Verdict::holds)
            && self.composition
            && self.levels.iter().rev().skip(1).all(|l| l.witness.is_some())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectionLevel {
    pub level: usize,
    pub ls_to_next: Option<ExtDist>,
    pub max_cell_diameter: ExtDist,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectionReport {
    pub levels: Vec<ProjectionLevel>,
}

impl ProjectionReport {
    pub fn passes(&self) -> bool {
        self.levels
            .iter()
            .all(|l| l.max_cell_diameter.is_finite() && l.ls_to_next.is_none_or(|d| d.is_finite()))
    }
}

/// Tower axioms for a tower of graphs.
pub fn verify_coarse_graph(tower: &Tower<Graph>) -> TowerReport {
    tower.verify()
}

/// Tower axioms for a tower of complexes.
pub fn verify_coarse_complex(tower: &Tower<SimplicialComplex>) -> TowerReport {
    tower.verify()
}

fn check_scales(scales: &[ExtDist]) -> Result<()> {
    if scales.is_empty() {
        return Err(Error::Precondition("at least one scale is required".into()));
    }
    if scales.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NonAscendingScales);
    }
    if scales.iter().any(|s| s.is_inf()) {
        return Err(Error::InfiniteScale);
    }
    Ok(())
}

fn identity_bonds(n_levels: usize, n: usize) -> Vec<Vec<usize>> {
    vec![(0..n).collect(); n_levels.saturating_sub(1)]
}

fn scale_labels(scales: &[ExtDist]) -> Vec<String> {
    scales.iter().map(|s| s.to_string()).collect()
}

/// Rips complexes at ascending scales with identity bonds and identity
/// projections.
pub fn rips_tower(space: &FiniteMetricSpace, scales: &[ExtDist], dim_cap: usize) -> Result<Tower<SimplicialComplex>> {
    check_scales(scales)?;
    let levels = scales
        .iter()
        .map(|&t| complex::rips_complex(space, t, dim_cap))
        .collect::<Result<Vec<_>>>()?;
    let n = space.len();
    Tower::new(levels, scale_labels(scales), identity_bonds(scales.len(), n))?
        .with_projections(space.clone(), vec![(0..n).collect(); scales.len()])
}

/// Rips graphs at ascending scales with identity bonds and projections.
pub fn rips_graph_tower(space: &FiniteMetricSpace, scales: &[ExtDist]) -> Result<Tower<Graph>> {
    check_scales(scales)?;
    let levels = scales
        .iter()
        .map(|&t| graph::rips_graph_t(space, t))
        .collect::<Result<Vec<_>>>()?;
    let n = space.len();
    Tower::new(levels, scale_labels(scales), identity_bonds(scales.len(), n))?
        .with_projections(space.clone(), vec![(0..n).collect(); scales.len()])
}

/// Nerves of covers, each star-refining the next. A member `U` is sent to
/// the first member of the next cover containing `st(U)`; it projects to its
/// least point.
pub fn cech_tower(space: &FiniteMetricSpace, covers: &[Cover], dim_cap: usize) -> Result<Tower<SimplicialComplex>> {
    if covers.is_empty() {
        return Err(Error::Precondition("at least one cover is required".into()));
    }
    let mut bonds = Vec::new();
    for (n, pair) in covers.windows(2).enumerate() {
        let (fine, coarse) = (&pair[0], &pair[1]);
        if let Verdict::Fails(w) = metric::is_star_refinement(fine, coarse)? {
            return Err(Error::NotStarRefinement { level: n, next: n + 1, member: w.member });
        }
        let bond = (0..fine.len())
            .map(|u| {
                let st = metric::star(fine.member(u), fine);
                coarse.first_member_containing(&st).expect("checked star refinement")
            })
            .collect();
        bonds.push(bond);
    }
    let levels = covers
        .iter()
        .map(|c| complex::nerve(space, c, dim_cap))
        .collect::<Result<Vec<_>>>()?;
    let labels = (0..covers.len()).map(|n| format!("cover {n}")).collect();
    let projections = covers.iter().map(|c| c.members().iter().map(|m| m[0]).collect()).collect();
    Tower::new(levels, labels, bonds)?.with_projections(space.clone(), projections)
}

/// Cayley graphs of nested generating sets on one fixed word ball, with
/// identity bonds.
pub fn cayley_tower<O: GroupOracle>(oracle: &O, generator_sets: &[Vec<O::Element>], radius: u32) -> Result<Tower<Graph>> {
    if generator_sets.is_empty() {
        return Err(Error::Precondition("at least one generating set is required".into()));
    }
    let mut levels = Vec::new();
    let mut space = None;
    for gens in generator_sets {
        let ball = cayley::cayley_graph(oracle, gens, radius)?;
        space.get_or_insert(ball.metric);
        levels.push(ball.graph);
    }
    let space = space.expect("nonempty");
    let n = space.len();
    let labels = (1..=generator_sets.len()).map(|k| format!("S_{k}")).collect();
    Tower::new(levels, labels, identity_bonds(generator_sets.len(), n))?
        .with_projections(space, vec![(0..n).collect(); generator_sets.len()])
}

/// A level-monotone family of morphisms `f_k: L_k → W_{n(k)}`.
#[derive(Clone, Debug)]
pub struct PreMorphism<'a, L> {
    pub source: &'a Tower<L>,
    pub target: &'a Tower<L>,
    level_map: Vec<usize>,
    maps: Vec<Vec<usize>>,
}

impl<'a, L: TowerLevel> PreMorphism<'a, L> {
    pub fn new(source: &'a Tower<L>, target: &'a Tower<L>, level_map: Vec<usize>, maps: Vec<Vec<usize>>) -> Result<Self> {
        if level_map.len() != source.len() || maps.len() != source.len() {
            return Err(Error::Precondition("one target level and one map per source level".into()));
        }
        if level_map.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition("level assignment must be strictly increasing".into()));
        }
        for (k, (&n, f)) in level_map.iter().zip(&maps).enumerate() {
            if n >= target.len() {
                return Err(Error::OutOfRange { index: n, len: target.len() });
            }
            check_map(f, source.levels[k].len(), target.levels[n].len())?;
        }
        Ok(PreMorphism { source, target, level_map, maps })
    }

    /// Identity maps on a tower, level to level.
    pub fn identity(tower: &'a Tower<L>) -> Self {
        let maps = tower.levels.iter().map(|l| (0..l.len()).collect()).collect();
        PreMorphism { source: tower, target: tower, level_map: (0..tower.len()).collect(), maps }
    }

    pub fn level_map(&self) -> &[usize] {
        &self.level_map
    }

    pub fn map(&self, k: usize) -> &[usize] {
        &self.maps[k]
    }

    /// `j_{n(k), m} ∘ f_k`.
    fn pushed(&self, k: usize, m: usize) -> Vec<usize> {
        let j = self.target.bond(self.level_map[k], m);
        self.maps[k].iter().map(|&v| j[v]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceWitness {
    pub level: usize,
    pub witness: Option<usize>,
    pub distance: Option<ExtDist>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PreMorphismReport {
    pub maps: Vec<Verdict<Vec<String>>>,
    pub levels: Vec<EquivalenceWitness>,
}

impl PreMorphismReport {
    pub fn passes(&self) -> bool {
        self.maps.iter().all(Verdict::holds) && self.levels.iter().all(|l| l.witness.is_some())
    }
}

fn least_equivalence<L: TowerLevel>(
    target: &Tower<L>,
    source_level: &L,
    from: usize,
    f: impl Fn(usize) -> Vec<usize>,
    g: impl Fn(usize) -> Vec<usize>,
) -> (Option<usize>, Option<ExtDist>) {
    for m in from..target.len() {
        let (ok, d) = target.levels[m].equivalence(source_level, &f(m), &g(m));
        if ok {
            return (Some(m), d);
        }
    }
    (None, None)
}

/// For each level `k` but the last, the least `m` where
/// `j∘f_k` and `j∘f_{k+1}∘i_{k,k+1}` become equivalent.
pub fn premorphism_check<L: TowerLevel>(f: &PreMorphism<'_, L>) -> PreMorphismReport {
    let maps = (0..f.source.len())
        .map(|k| {
            let target = &f.target.levels[f.level_map[k]];
            f.source.levels[k]
                .map_failure(target, &f.maps[k])
                .map(|c| f.source.names(k, &c))
                .into()
        })
        .collect();
    let levels = (0..f.source.len().saturating_sub(1))
        .map(|k| {
            let bond = &f.source.bonds[k];
            let (witness, distance) = least_equivalence(
                f.target,
                &f.source.levels[k],
                f.level_map[k + 1],
                |m| f.pushed(k, m),
                |m| {
                    let next = f.pushed(k + 1, m);
                    bond.iter().map(|&v| next[v]).collect()
                },
            );
            EquivalenceWitness { level: k, witness, distance }
        })
        .collect();
    PreMorphismReport { maps, levels }
}

/// For each level `k`, the least `m` where `j∘f_k` and `j∘g_k` become
/// equivalent.
pub fn premorphisms_equivalent<L: TowerLevel>(f: &PreMorphism<'_, L>, g: &PreMorphism<'_, L>) -> Result<Vec<EquivalenceWitness>> {
    if !std::ptr::eq(f.source, g.source) || !std::ptr::eq(f.target, g.target) {
        return Err(Error::MismatchedMaps);
    }
    Ok((0..f.source.len())
        .map(|k| {
            let from = f.level_map[k].max(g.level_map[k]);
            let (witness, distance) =
                least_equivalence(f.target, &f.source.levels[k], from, |m| f.pushed(k, m), |m| g.pushed(k, m));
            EquivalenceWitness { level: k, witness, distance }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::IntegerLattice;

    fn scales(v: &[f64]) -> Vec<ExtDist> {
        v.iter().map(|&x| ExtDist::finite(x)).collect()
    }

    fn intervals(space: &FiniteMetricSpace, parts: &[(i64, i64)]) -> Cover {
        Cover::new(
            space.len(),
            parts
                .iter()
                .map(|&(a, b)| (format!("[{a},{b}]"), (a..=b).map(|k| space.index_of(&k.to_string()).unwrap()).collect()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rips_graph_tower_doubling() {
        let m = FiniteMetricSpace::integer_interval(0, 30);
        let t = rips_graph_tower(&m, &scales(&[1.0, 2.0, 4.0, 8.0])).unwrap();
        let r = t.verify();
        assert!(r.passes());
        assert_eq!(r.levels.iter().map(|l| l.witness).collect::<Vec<_>>(), vec![Some(1), Some(2), Some(3), None]);
    }

    #[test]
    fn one_level_tower_is_unwitnessed() {
        let m = FiniteMetricSpace::integer_interval(0, 5);
        let t = rips_tower(&m, &scales(&[1.0]), 3).unwrap();
        let r = t.verify();
        assert_eq!(r.levels[0].witness, None);
        assert!(r.passes());
    }

    #[test]
    fn corrupted_bond_is_named() {
        let m = FiniteMetricSpace::integer_interval(0, 10);
        let mut t = rips_graph_tower(&m, &scales(&[1.0, 2.0])).unwrap();
        let mut bad: Vec<usize> = (0..11).collect();
        bad[5] = 10;
        t.set_bond_unchecked(0, bad);
        let r = t.verify();
        assert!(!r.passes());
        assert_eq!(r.bonds[0], Verdict::Fails(vec!["4".into(), "5".into()]));
    }

    #[test]
    fn non_ascending_scales_rejected() {
        let m = FiniteMetricSpace::integer_interval(0, 5);
        assert!(matches!(rips_tower(&m, &scales(&[2.0, 1.0]), 3), Err(Error::NonAscendingScales)));
    }

    #[test]
    fn cech_tower_on_interval() {
        let m = FiniteMetricSpace::integer_interval(0, 20);
        let c1 = intervals(&m, &(0..20).map(|k| (k, k + 1)).collect::<Vec<_>>());
        let c2 = intervals(&m, &(0..4).map(|j| (4 * j, 4 * j + 8)).collect::<Vec<_>>());
        let c3 = Cover::whole(&m);
        let t = cech_tower(&m, &[c1.clone(), c2.clone(), c3], 3).unwrap();
        let r = t.verify();
        assert!(r.passes(), "{r:?}");
        assert_eq!(r.levels[0].witness, Some(1));
        assert_eq!(r.levels[1].witness, Some(2));
        let p = t.verify_projections().unwrap();
        assert!(p.passes());
        assert!(p.levels[0].ls_to_next.unwrap() <= metric::mesh(&m, &c2).unwrap());
        assert!(matches!(cech_tower(&m, &[c2, c1], 3), Err(Error::NotStarRefinement { .. })));
    }

    #[test]
    fn projections_into_far_translate() {
        let m = FiniteMetricSpace::integer_interval(0, 5);
        let t = rips_tower(&m, &scales(&[1.0, 2.0]), 3).unwrap();
        assert!(t.verify_projections().unwrap().levels.iter().all(|l| l.ls_to_next.is_none_or(|d| d == ExtDist::ZERO)));
        let two = crate::graph::graph_metric(&Graph::numbered(12, (0..5).map(|i| (i, i + 1)).chain((6..11).map(|i| (i, i + 1)))).unwrap());
        let far = Tower::new(t.levels().to_vec(), t.labels().to_vec(), t.consecutive_bonds().to_vec())
            .unwrap()
            .with_projections(two, vec![(0..6).collect(), (6..12).collect()])
            .unwrap();
        assert!(!far.verify_projections().unwrap().passes());
    }

    #[test]
    fn premorphisms() {
        let m = FiniteMetricSpace::integer_interval(0, 16);
        let fine = rips_graph_tower(&m, &scales(&[1.0, 2.0, 4.0, 8.0])).unwrap();
        let id = PreMorphism::identity(&fine);
        let r = premorphism_check(&id);
        assert!(r.passes());
        assert_eq!(r.levels[0].distance, Some(ExtDist::ZERO));
        let eq = premorphisms_equivalent(&id, &id).unwrap();
        assert!(eq.iter().all(|w| w.witness == Some(w.level) && w.distance == Some(ExtDist::ZERO)));

        let coarse = rips_graph_tower(&m, &scales(&[2.0, 8.0])).unwrap();
        let inc = PreMorphism::new(&coarse, &fine, vec![1, 3], vec![(0..17).collect(), (0..17).collect()]).unwrap();
        assert!(premorphism_check(&inc).passes());

        let shifted = PreMorphism::new(&fine, &fine, vec![0, 1, 2, 3], (0..4).map(|_| (0..17).collect()).collect()).unwrap();
        assert!(premorphisms_equivalent(&id, &shifted).unwrap().iter().all(|w| w.witness.is_some()));

        let split = Graph::numbered(17, (0..7).map(|i| (i, i + 1)).chain((9..16).map(|i| (i, i + 1)))).unwrap();
        let split_tower = Tower::new(vec![split.clone(), split], vec!["a".into(), "b".into()], vec![(0..17).collect()]).unwrap();
        let src = Tower::new(vec![Graph::numbered(1, []).unwrap(), Graph::numbered(1, []).unwrap()], vec!["a".into(), "b".into()], vec![vec![0]]).unwrap();
        let ends = PreMorphism::new(&src, &split_tower, vec![0, 1], vec![vec![0], vec![16]]).unwrap();
        let r = premorphism_check(&ends);
        assert_eq!(r.levels[0].witness, None);
    }

    #[test]
    fn cayley_tower_levels() {
        let z = IntegerLattice { dim: 1 };
        let sets: Vec<Vec<Vec<i64>>> = (1..=3).map(|n| cayley::ball_generators(&z, n)).collect();
        let t = cayley_tower(&z, &sets, 8).unwrap();
        let r = t.verify();
        assert!(r.bonds.iter().all(Verdict::holds));
        assert_eq!(r.levels[0].witness, Some(1));
    }
}
