//! Asymptotic dimension at finite scales: cover multiplicity, the two
//! translations between covers and contiguous factorizations, a bounded
//! factorization search over towers, and the coarse-tree probe.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{self, FactorizationReport, SimplicialComplex, SimplicialMap};
use crate::dist::ExtDist;
use crate::error::{Error, Result};
use crate::homology::{self, ConnectivityProfile};
use crate::metric::{self, Cover, FiniteMetricSpace};
use crate::tower::{self, Tower};

/// Largest number of members containing a single point.
pub fn multiplicity(space: &FiniteMetricSpace, cover: &Cover) -> Result<usize> {
    if cover.n_points() != space.len() {
        return Err(Error::CoverMismatch { cover: cover.n_points(), space: space.len() });
    }
    let mut count = vec![0usize; space.len()];
    for m in cover.members() {
        for &x in m {
            count[x] += 1;
        }
    }
    Ok(count.into_iter().max().unwrap_or(0))
}

/// `f ≃ h ∘ g` with `g: K → mid` and `h: mid → L`, where `K` and `L` are
/// levels `source_level` and `target_level` of some tower (or Rips
/// complexes at scales `t` and `s`).
#[derive(Clone, Debug, Serialize)]
pub struct FactorizationWitness {
    pub source_level: usize,
    pub target_level: usize,
    pub t: ExtDist,
    pub s: ExtDist,
    pub strategy: String,
    #[serde(skip)]
    pub mid: SimplicialComplex,
    pub mid_dim: isize,
    #[serde(skip)]
    pub g: Vec<usize>,
    #[serde(skip)]
    pub h: Vec<usize>,
    pub report: FactorizationReport,
}

impl FactorizationWitness {
    pub fn verified(&self) -> bool {
        self.report.passes()
    }

    /// Re-runs the contiguity check against explicit source and target
    /// complexes and the map `f` between them.
    pub fn reverify(&self, source: &SimplicialComplex, target: &SimplicialComplex, f: &[usize]) -> Result<FactorizationReport> {
        let f = SimplicialMap::new(source, target, f.to_vec())?;
        let g = SimplicialMap::new(source, &self.mid, self.g.clone())?;
        let h = SimplicialMap::new(&self.mid, target, self.h.clone())?;
        complex::verify_contiguous_factorization(&f, &g, &h)
    }
}

/// A cover with its multiplicity, mesh and Lebesgue number.
#[derive(Clone, Debug, Serialize)]
pub struct CoverWitness {
    pub cover: Cover,
    pub multiplicity: usize,
    pub mesh: ExtDist,
    pub lebesgue: ExtDist,
    /// `multiplicity ≤ dim(mid) + 1`.
    pub bound_holds: bool,
    /// Whether `g` is simplicial on the nerve of the `t`-ball cover, which is
    /// what the multiplicity bound relies on.
    pub g_simplicial_on_ball_nerve: bool,
}

/// The point of `set` minimizing the largest distance to `reach`, ties to
/// the lower index.
fn center(space: &FiniteMetricSpace, candidates: &[usize], reach: &[usize]) -> usize {
    *candidates
        .iter()
        .min_by(|&&a, &&b| {
            let ra = reach.iter().map(|&y| space.d(a, y)).max().unwrap_or(ExtDist::ZERO);
            let rb = reach.iter().map(|&y| space.d(b, y)).max().unwrap_or(ExtDist::ZERO);
            ra.cmp(&rb).then(a.cmp(&b))
        })
        .expect("nonempty candidates")
}

/// Factorization of `Rips_t → Rips_s` through the nerve of `cover`, with
/// `s = 2·mesh + t`. Requires the ball Lebesgue number to be at least `t`.
pub fn cover_to_factorization(space: &FiniteMetricSpace, cover: &Cover, t: ExtDist, dim_cap: usize) -> Result<FactorizationWitness> {
    let leb = metric::lebesgue_ball(space, cover)?;
    if !t.le_tol(leb, space.tolerance()) {
        return Err(Error::Precondition(format!("ball Lebesgue number {leb} is below t = {t}")));
    }
    let mesh = metric::mesh(space, cover)?;
    if mesh.is_inf() {
        return Err(Error::Precondition("cover is not uniformly bounded".into()));
    }
    let s = ExtDist::finite(2.0 * mesh.value() + t.value());
    let k = complex::rips_complex(space, t, dim_cap)?;
    let l = complex::rips_complex(space, s, dim_cap)?;
    let mid = complex::nerve(space, cover, dim_cap)?;
    let g: Vec<usize> = (0..space.len())
        .map(|x| cover.first_member_containing(&space.ball(x, t)).expect("Lebesgue precondition"))
        .collect();
    let h: Vec<usize> = cover.members().iter().map(|m| center(space, m, m)).collect();
    let f = SimplicialMap::inclusion(&k, &l)?;
    let gm = SimplicialMap::new(&k, &mid, g.clone())?;
    let hm = SimplicialMap::new(&mid, &l, h.clone())?;
    let report = complex::verify_contiguous_factorization(&f, &gm, &hm)?;
    Ok(FactorizationWitness {
        source_level: 0,
        target_level: 1,
        t,
        s,
        strategy: "nerve of cover".into(),
        mid_dim: mid.dim(),
        mid,
        g,
        h,
        report,
    })
}

/// The cover `W_l = ⋃ {B(x, t) : g(x) = l}` over labels with nonempty
/// preimage.
pub fn factorization_to_cover(space: &FiniteMetricSpace, t: ExtDist, witness: &FactorizationWitness) -> Result<CoverWitness> {
    if !witness.verified() {
        return Err(Error::Precondition("factorization witness is not verified".into()));
    }
    if witness.t != t {
        return Err(Error::Precondition(format!("witness is at scale {}, not {t}", witness.t)));
    }
    if witness.g.len() != space.len() {
        return Err(Error::PartialMap { expected: space.len(), got: witness.g.len() });
    }
    let mut members: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); witness.mid.len()];
    for x in 0..space.len() {
        members[witness.g[x]].extend(space.ball(x, t));
    }
    let named = members
        .into_iter()
        .enumerate()
        .filter(|(_, m)| !m.is_empty())
        .map(|(l, m)| (witness.mid.vertex(l).to_string(), m.into_iter().collect()))
        .collect();
    let cover = Cover::new(space.len(), named)?;
    let multiplicity = multiplicity(space, &cover)?;
    let ball_nerve = complex::nerve(space, &Cover::closed_balls(space, t), 1)?;
    let g_on_nerve = complex::first_non_simplicial(&ball_nerve, &witness.mid, &witness.g).is_none();
    Ok(CoverWitness {
        multiplicity,
        mesh: metric::mesh(space, &cover)?,
        lebesgue: metric::lebesgue_ball(space, &cover)?,
        bound_holds: multiplicity as isize <= witness.mid_dim + 1,
        g_simplicial_on_ball_nerve: g_on_nerve,
        cover,
    })
}

/// Staggered brick cover of a planar point set: rows of height `h`, bricks
/// of width `w`, odd rows shifted by `w / 2`, each brick thickened by
/// `thickening` in the space's metric. Points need two coordinates.
pub fn staggered_brick_cover(space: &FiniteMetricSpace, w: f64, h: f64, thickening: ExtDist) -> Result<Cover> {
    let coords = space
        .coordinates()
        .filter(|c| c.iter().all(|p| p.len() == 2))
        .ok_or_else(|| Error::Precondition("brick covers need planar coordinates".into()))?;
    let labels = brick_labels(coords, w, h, true);
    thicken(space, &labels, thickening, "brick")
}

/// Consecutive intervals of width `w` on a line, thickened by `thickening`.
pub fn interval_cover(space: &FiniteMetricSpace, w: f64, thickening: ExtDist) -> Result<Cover> {
    let coords = space
        .coordinates()
        .filter(|c| c.iter().all(|p| p.len() == 1))
        .ok_or_else(|| Error::Precondition("interval covers need one coordinate".into()))?;
    let labels = block_labels(coords, w, 0.0);
    thicken(space, &labels, thickening, "interval")
}

fn thicken(space: &FiniteMetricSpace, labels: &[usize], r: ExtDist, prefix: &str) -> Result<Cover> {
    let n_labels = labels.iter().max().map_or(0, |m| m + 1);
    let mut members: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n_labels];
    for x in 0..space.len() {
        for y in space.ball(x, r) {
            members[labels[y]].insert(x);
        }
    }
    Cover::new(
        space.len(),
        members
            .into_iter()
            .enumerate()
            .filter(|(_, m)| !m.is_empty())
            .map(|(l, m)| (format!("{prefix}{l}"), m.into_iter().collect()))
            .collect(),
    )
}

/// Relabels by order of first appearance.
fn canonical(labels: Vec<usize>) -> (Vec<usize>, usize) {
    let mut map = HashMap::new();
    let out = labels
        .into_iter()
        .map(|l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect();
    (out, map.len())
}

fn block_labels(coords: &[Vec<f64>], w: f64, offset: f64) -> Vec<usize> {
    let lo = coords.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
    canonical(coords.iter().map(|p| ((p[0] - lo + offset) / w + 1e-9).floor() as usize).collect()).0
}

fn brick_labels(coords: &[Vec<f64>], w: f64, h: f64, staggered: bool) -> Vec<usize> {
    let xlo = coords.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
    let ylo = coords.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min);
    let raw = coords
        .iter()
        .map(|p| {
            let row = ((p[1] - ylo) / h + 1e-9).floor() as usize;
            let shift = if staggered && row % 2 == 1 { w / 2.0 } else { 0.0 };
            let col = ((p[0] - xlo + shift) / w + 1e-9).floor() as usize;
            row * 1_000_000 + col
        })
        .collect();
    canonical(raw).0
}

/// A vertex partition of a level, as produced by one search strategy.
#[derive(Clone, Debug)]
struct Labeling {
    strategy: String,
    labels: Vec<usize>,
    n_labels: usize,
}

/// Largest number of distinct labels on a facet.
fn label_spread(k: &SimplicialComplex, labels: &[usize]) -> usize {
    k.facets()
        .iter()
        .map(|f| {
            let mut ls: Vec<usize> = f.iter().map(|&v| labels[v]).collect();
            ls.sort_unstable();
            ls.dedup();
            ls.len()
        })
        .max()
        .unwrap_or(0)
}

/// Distances between vertices of a level: through the projection when the
/// tower has one, else hop distance in the 1-skeleton.
struct LevelGeometry {
    n: usize,
    dist: Vec<f64>,
    coords: Option<Vec<Vec<f64>>>,
}

impl LevelGeometry {
    fn new(tower: &Tower<SimplicialComplex>, k: usize) -> Self {
        let level = tower.level(k);
        let n = level.len();
        let mut dist = vec![0.0; n * n];
        match (tower.space(), tower.projection(k)) {
            (Some(space), Some(p)) => {
                for a in 0..n {
                    for b in 0..n {
                        dist[a * n + b] = space.d(p[a], p[b]).value();
                    }
                }
                let coords = space.coordinates().map(|c| p.iter().map(|&x| c[x].clone()).collect());
                LevelGeometry { n, dist, coords }
            }
            _ => {
                let g = level.one_skeleton();
                for a in 0..n {
                    for (b, d) in g.bfs(a).into_iter().enumerate() {
                        dist[a * n + b] = d.map_or(f64::INFINITY, f64::from);
                    }
                }
                LevelGeometry { n, dist, coords: None }
            }
        }
    }

    fn d(&self, a: usize, b: usize) -> f64 {
        self.dist[a * self.n + b]
    }

    fn center(&self, candidates: &[usize], reach: &[usize]) -> usize {
        let radius = |a: usize| reach.iter().map(|&y| self.d(a, y)).fold(0.0, f64::max);
        *candidates
            .iter()
            .min_by(|&&a, &&b| radius(a).total_cmp(&radius(b)).then(a.cmp(&b)))
            .expect("nonempty")
    }
}

/// Widths to sweep: multiples of half the level's largest edge length and
/// small integers.
fn sweep_widths(geom: &LevelGeometry, k: &SimplicialComplex) -> Vec<f64> {
    let t = k
        .one_skeleton()
        .edges()
        .iter()
        .map(|&(a, b)| geom.d(a, b))
        .filter(|d| d.is_finite())
        .fold(0.0, f64::max);
    let mut out: Vec<f64> = (1..=16).map(|j| t * j as f64 / 2.0).chain((1..=16).map(f64::from)).filter(|w| *w > 0.0).collect();
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    out
}

fn candidate_labelings(k: &SimplicialComplex, geom: &LevelGeometry, n: usize, budget: usize) -> Vec<Labeling> {
    let mut out = Vec::new();
    let push = |strategy: String, labels: Vec<usize>, out: &mut Vec<Labeling>| {
        let (labels, n_labels) = canonical(labels);
        if label_spread(k, &labels) <= n + 1 {
            out.push(Labeling { strategy, labels, n_labels });
        }
    };
    if k.dim() <= n as isize {
        push("identity".into(), (0..k.len()).collect(), &mut out);
    }
    let widths = sweep_widths(geom, k);
    if let Some(coords) = &geom.coords {
        let dims = coords.first().map_or(0, Vec::len);
        if dims == 1 {
            for &w in &widths {
                for j in 0..2 {
                    push(format!("blocks w={w} offset={}", w * j as f64 / 2.0), block_labels(coords, w, w * j as f64 / 2.0), &mut out);
                }
            }
        }
        if dims == 2 {
            for &w in &widths {
                for &h in &widths {
                    push(format!("staggered bricks {w}x{h}"), brick_labels(coords, w, h, true), &mut out);
                }
            }
        }
    }
    let skeleton = k.one_skeleton();
    let distinct_bases: BTreeSet<usize> = [geom.center(&(0..k.len()).collect::<Vec<_>>(), &(0..k.len()).collect::<Vec<_>>()), 0]
        .into_iter()
        .filter(|&b| b < k.len())
        .collect();
    for &base in &distinct_bases {
        for &w in &widths {
            let band: Vec<usize> = (0..k.len()).map(|x| (geom.d(base, x) / w + 1e-9).floor() as usize).collect();
            // Components of each band in the 1-skeleton.
            let mut label = vec![usize::MAX; k.len()];
            let mut next = 0;
            for s in 0..k.len() {
                if label[s] != usize::MAX {
                    continue;
                }
                let mut stack = vec![s];
                label[s] = next;
                while let Some(u) = stack.pop() {
                    for &v in skeleton.neighbors(u) {
                        if label[v] == usize::MAX && band[v] == band[u] {
                            label[v] = next;
                            stack.push(v);
                        }
                    }
                }
                next += 1;
            }
            push(format!("bands from {} w={w}", k.vertex(base)), label, &mut out);
        }
    }
    for &rho in &widths {
        let start = *distinct_bases.iter().next().unwrap_or(&0);
        let mut centers = vec![start];
        let mut near: Vec<f64> = (0..k.len()).map(|x| geom.d(start, x)).collect();
        while let Some((far, &dist)) = near.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0))) {
            if dist <= rho || !dist.is_finite() && centers.len() > k.len() {
                break;
            }
            centers.push(far);
            for (x, slot) in near.iter_mut().enumerate() {
                *slot = slot.min(geom.d(far, x));
            }
        }
        let labels = (0..k.len())
            .map(|x| {
                centers
                    .iter()
                    .enumerate()
                    .min_by(|a, b| geom.d(*a.1, x).total_cmp(&geom.d(*b.1, x)).then(a.0.cmp(&b.0)))
                    .map(|(i, _)| i)
                    .expect("a center")
            })
            .collect();
        push(format!("voronoi rho={rho}"), labels, &mut out);
    }
    if k.len() <= 12 && k.facets().len() <= budget {
        exhaustive_labelings(k, n, budget, &mut out);
    }
    out
}

const MAX_EXHAUSTIVE: usize = 2_000;

/// Restricted-growth enumeration of partitions whose facet spread is at
/// most `n + 1`, visiting at most `budget` search nodes.
fn exhaustive_labelings(k: &SimplicialComplex, n: usize, budget: usize, out: &mut Vec<Labeling>) {
    struct Search<'a> {
        facets: &'a [Vec<usize>],
        by_last: Vec<Vec<usize>>,
        spread: usize,
        nodes: usize,
        budget: usize,
        labels: Vec<usize>,
        found: Vec<Labeling>,
    }

    impl Search<'_> {
        fn go(&mut self, v: usize, used: usize) {
            if self.nodes >= self.budget || self.found.len() >= MAX_EXHAUSTIVE {
                return;
            }
            self.nodes += 1;
            if v == self.labels.len() {
                self.found.push(Labeling { strategy: "exhaustive".into(), labels: self.labels.clone(), n_labels: used });
                return;
            }
            for l in 0..=used {
                self.labels[v] = l;
                let ok = self.by_last[v].iter().all(|&i| {
                    let mut ls: Vec<usize> = self.facets[i].iter().map(|&u| self.labels[u]).collect();
                    ls.sort_unstable();
                    ls.dedup();
                    ls.len() <= self.spread
                });
                if ok {
                    self.go(v + 1, used.max(l + 1));
                }
            }
        }
    }

    let facets = k.facets();
    let mut by_last = vec![Vec::new(); k.len()];
    for (i, f) in facets.iter().enumerate() {
        by_last[*f.iter().max().expect("nonempty facet")].push(i);
    }
    let mut search =
        Search { facets, by_last, spread: n + 1, nodes: 0, budget, labels: vec![0; k.len()], found: Vec::new() };
    search.go(0, 0);
    out.extend(search.found);
}

fn image_complex(k: &SimplicialComplex, labels: &[usize], n_labels: usize) -> SimplicialComplex {
    let facets = k.facets().iter().map(|f| f.iter().map(|&v| labels[v]).collect()).collect();
    let names = (0..n_labels).map(|l| format!("c{l}")).collect();
    SimplicialComplex::from_facets(names, facets, k.dim_cap()).expect("labels in range")
}

/// Tries to factor `i_{k,m}` through a complex of dimension at most `n`,
/// for the least stored `m > k`.
pub fn search_factorization(tower: &Tower<SimplicialComplex>, n: usize, k: usize, budget: usize) -> Result<Option<FactorizationWitness>> {
    if k >= tower.len() {
        return Err(Error::OutOfRange { index: k, len: tower.len() });
    }
    if k + 1 == tower.len() {
        return Ok(None);
    }
    let level = tower.level(k);
    let geom = LevelGeometry::new(tower, k);
    let labelings = candidate_labelings(level, &geom, n, budget);
    // Facets touching each label, for choosing representatives.
    struct Prepared {
        labeling: Labeling,
        mid: SimplicialComplex,
        reps: Vec<usize>,
    }
    let prepared: Vec<Prepared> = labelings
        .into_par_iter()
        .flat_map_iter(|labeling| {
            let mid = image_complex(level, &labeling.labels, labeling.n_labels);
            let mut members: Vec<Vec<usize>> = vec![Vec::new(); labeling.n_labels];
            let mut reach: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); labeling.n_labels];
            for v in 0..level.len() {
                members[labeling.labels[v]].push(v);
            }
            for f in level.facets() {
                for &v in f {
                    reach[labeling.labels[v]].extend(f.iter().copied());
                }
            }
            // Representatives: a centre of the class itself, or of everything
            // sharing a facet with it.
            let reach: Vec<Vec<usize>> = reach.into_iter().map(|r| r.into_iter().collect()).collect();
            let own: Vec<usize> = (0..labeling.n_labels).map(|l| geom.center(&members[l], &reach[l])).collect();
            let wide: Vec<usize> = (0..labeling.n_labels).map(|l| geom.center(&reach[l], &reach[l])).collect();
            let mut variants = vec![Prepared { labeling: labeling.clone(), mid: mid.clone(), reps: own.clone() }];
            if wide != own {
                variants.push(Prepared { labeling, mid, reps: wide });
            }
            variants
        })
        .collect();
    let t = scale_of(tower, k);
    for m in k + 1..tower.len() {
        let target = tower.level(m);
        let bond = tower.bond(k, m);
        let found = prepared.par_iter().find_first(|p| {
            let h: Vec<usize> = p.reps.iter().map(|&r| bond[r]).collect();
            complex::first_non_simplicial(&p.mid, target, &h).is_none()
                && complex::first_non_contiguous(level, target, &bond, &p.labeling.labels.iter().map(|&l| h[l]).collect::<Vec<_>>()).is_none()
        });
        if let Some(p) = found {
            let h: Vec<usize> = p.reps.iter().map(|&r| bond[r]).collect();
            let f = SimplicialMap::new(level, target, bond.clone())?;
            let g = SimplicialMap::new(level, &p.mid, p.labeling.labels.clone())?;
            let hm = SimplicialMap::new(&p.mid, target, h.clone())?;
            let report = complex::verify_contiguous_factorization(&f, &g, &hm)?;
            debug_assert!(report.passes());
            return Ok(Some(FactorizationWitness {
                source_level: k,
                target_level: m,
                t,
                s: scale_of(tower, m),
                strategy: p.labeling.strategy.clone(),
                mid_dim: p.mid.dim(),
                mid: p.mid.clone(),
                g: p.labeling.labels.clone(),
                h,
                report,
            }));
        }
    }
    Ok(None)
}

fn scale_of(tower: &Tower<SimplicialComplex>, k: usize) -> ExtDist {
    tower.labels()[k].parse().unwrap_or(ExtDist::ZERO)
}

#[derive(Clone, Debug, Serialize)]
pub struct AsdimEntry {
    pub n: usize,
    pub level: usize,
    pub witness: Option<FactorizationWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsdimReport {
    pub labels: Vec<String>,
    pub n_max: usize,
    /// `table[n][k]`.
    pub table: Vec<Vec<AsdimEntry>>,
    /// Least `n` with every level but the last witnessed; `None` means
    /// unknown within the truncation.
    pub headline: Option<usize>,
    pub note: String,
}

/// Factorization search for `n = 0..=n_max` at every level.
pub fn asdim_report(tower: &Tower<SimplicialComplex>, n_max: usize, budget: usize) -> Result<AsdimReport> {
    let mut table: Vec<Vec<AsdimEntry>> = Vec::new();
    for n in 0..=n_max {
        let row = (0..tower.len())
            .map(|k| {
                // A witness through a lower-dimensional complex also counts.
                if let Some(prev) = table.last().and_then(|r| r[k].witness.clone()) {
                    return Ok(AsdimEntry { n, level: k, witness: Some(prev) });
                }
                Ok(AsdimEntry { n, level: k, witness: search_factorization(tower, n, k, budget)? })
            })
            .collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    let headline = if tower.len() < 2 {
        None
    } else {
        table.iter().position(|row| row[..row.len() - 1].iter().all(|e| e.witness.is_some()))
    };
    Ok(AsdimReport {
        labels: tower.labels().to_vec(),
        n_max,
        table,
        headline,
        note: "asdim bounds are relative to the stored truncation and search budget; the last level is never witnessed".into(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeProbeReport {
    pub label: &'static str,
    pub pass: bool,
    pub asdim_headline: Option<usize>,
    pub asdim: AsdimReport,
    pub connectivity: ConnectivityProfile,
    pub blocking: Vec<String>,
}

/// Combined probe: asdim at most one within the truncation and every level
/// homologically 1-connected within the truncation.
pub fn coarse_tree_probe(space: &FiniteMetricSpace, scales: &[ExtDist], dim_cap: usize, budget: usize) -> Result<TreeProbeReport> {
    let tower = tower::rips_tower(space, scales, dim_cap)?;
    let asdim = asdim_report(&tower, 1, budget)?;
    let connectivity = homology::connectivity_profile(&tower, 1, 2)?;
    let mut blocking = Vec::new();
    match asdim.headline {
        None => blocking.push("asdim ≤ 1 is not witnessed within the truncation".to_string()),
        Some(h) if h > 1 => blocking.push(format!("asdim headline is {h}")),
        Some(_) => {}
    }
    for l in connectivity.levels.iter().filter(|l| l.witness.is_none()) {
        let ranks = &connectivity.ranks[l.level];
        let last = ranks.last().expect("m = k is always present");
        blocking.push(format!(
            "level {} (scale {}): reduced homology ranks {:?} into the last level; not killed within the truncation",
            l.level, l.label, last
        ));
    }
    Ok(TreeProbeReport {
        label: "desk-scale probe, not a proof",
        pass: blocking.is_empty(),
        asdim_headline: asdim.headline,
        asdim,
        connectivity,
        blocking,
    })
}
