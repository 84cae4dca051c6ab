//! Finite metric spaces with possibly infinite distances, and covers.

use std::collections::HashMap;

use serde::Serialize;

use crate::bits::BitSet;
use crate::clique;
use crate::dist::{le, ExtDist, DEFAULT_TOLERANCE};
use crate::error::{Error, MetricViolation, Result};
use crate::verdict::Verdict;

/// Norms for point clouds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Norm {
    Euclidean,
    Chebyshev,
    Manhattan,
}

impl Norm {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        match self {
            Norm::Euclidean => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            Norm::Chebyshev => diffs.fold(0.0, f64::max),
            Norm::Manhattan => diffs.sum(),
        }
    }
}

/// A finite set of named points with a (validated) extended metric.
#[derive(Clone, Debug)]
pub struct FiniteMetricSpace {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    dist: Vec<f64>,
    tol: f64,
    coords: Option<Vec<Vec<f64>>>,
}

impl PartialEq for FiniteMetricSpace {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.dist == other.dist
    }
}

/// Checks the shape of a distance table, then the metric axioms.
///
/// A malformed table is an `Err`; an axiom failure is a `Verdict::Fails`
/// naming the first violated axiom in scan order.
pub fn validate_table(
    ids: &[String],
    rows: &[Vec<ExtDist>],
    tol: f64,
) -> Result<Verdict<MetricViolation>> {
    let n = ids.len();
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare { row, len: r.len(), expected: n });
        }
    }
    if rows.len() != n {
        return Err(Error::NotSquare { row: rows.len(), len: 0, expected: n });
    }
    let d = |i: usize, j: usize| rows[i][j].value();
    for i in 0..n {
        if d(i, i).abs() > tol {
            return Ok(Verdict::Fails(MetricViolation::NonZeroSelfDistance {
                point: ids[i].clone(),
                value: d(i, i),
            }));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if d(i, j) < 0.0 {
                return Ok(Verdict::Fails(MetricViolation::Negative {
                    a: ids[i].clone(),
                    b: ids[j].clone(),
                    value: d(i, j),
                }));
            }
            if d(i, j) <= tol {
                return Ok(Verdict::Fails(MetricViolation::ZeroBetweenDistinct {
                    a: ids[i].clone(),
                    b: ids[j].clone(),
                }));
            }
            let (ab, ba) = (d(i, j), d(j, i));
            let same = (ab.is_infinite() && ba.is_infinite()) || (ab - ba).abs() <= tol;
            if !same {
                return Ok(Verdict::Fails(MetricViolation::Asymmetric {
                    a: ids[i].clone(),
                    b: ids[j].clone(),
                    ab,
                    ba,
                }));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = d(a, b);
            if ab.is_infinite() {
                continue;
            }
            for c in 0..n {
                if !le(d(a, c), ab + d(b, c), tol) {
                    return Ok(Verdict::Fails(MetricViolation::Triangle {
                        a: ids[a].clone(),
                        b: ids[b].clone(),
                        c: ids[c].clone(),
                    }));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

impl FiniteMetricSpace {
    /// Builds a space from a full distance table, validating every axiom.
    pub fn from_table(ids: Vec<String>, rows: Vec<Vec<ExtDist>>) -> Result<Self> {
        if let Verdict::Fails(v) = validate_table(&ids, &rows, DEFAULT_TOLERANCE)? {
            return Err(Error::Metric(v));
        }
        let dist = rows.iter().flatten().map(|d| d.value()).collect();
        Self::from_parts(ids, dist)
    }

    /// Builds a space from a distance function without checking the axioms.
    /// Used for metrics that hold by construction (graph and norm metrics).
    pub(crate) fn from_fn(ids: Vec<String>, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let n = ids.len();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                dist[i * n + j] = v;
                dist[j * n + i] = v;
            }
        }
        Self::from_parts(ids, dist)
    }

    fn from_parts(ids: Vec<String>, dist: Vec<f64>) -> Result<Self> {
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        Ok(FiniteMetricSpace { ids, index, dist, tol: DEFAULT_TOLERANCE, coords: None })
    }

    /// Points of a cloud under a norm. Coordinates are kept for
    /// lattice-style cover constructions.
    pub fn from_points(ids: Vec<String>, coords: Vec<Vec<f64>>, norm: Norm) -> Result<Self> {
        if ids.len() != coords.len() {
            return Err(Error::Precondition(format!(
                "{} ids for {} coordinate rows",
                ids.len(),
                coords.len()
            )));
        }
        let mut space = Self::from_fn(ids, |i, j| norm.distance(&coords[i], &coords[j]))?;
        if let Verdict::Fails(v) = space.check_separation() {
            return Err(Error::Metric(v));
        }
        space.coords = Some(coords);
        Ok(space)
    }

    /// The integers `lo..=hi` with `|a − b|`.
    pub fn integer_interval(lo: i64, hi: i64) -> Self {
        let points: Vec<i64> = (lo..=hi).collect();
        let ids = points.iter().map(|p| p.to_string()).collect();
        let coords = points.iter().map(|&p| vec![p as f64]).collect();
        Self::from_points(ids, coords, Norm::Manhattan).expect("distinct integers")
    }

    /// The `width × height` grid with the L¹ (graph) metric. Ids are `x:y`.
    pub fn integer_grid(width: usize, height: usize) -> Self {
        let mut ids = Vec::new();
        let mut coords = Vec::new();
        for y in 0..height {
            for x in 0..width {
                ids.push(format!("{x}:{y}"));
                coords.push(vec![x as f64, y as f64]);
            }
        }
        Self::from_points(ids, coords, Norm::Manhattan).expect("distinct grid points")
    }

    /// `n` evenly spaced points on the unit circle, chordal metric.
    pub fn circle(n: usize) -> Self {
        let ids = (0..n).map(|i| format!("p{i}")).collect();
        let coords = (0..n)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / n as f64;
                vec![a.cos(), a.sin()]
            })
            .collect();
        Self::from_points(ids, coords, Norm::Euclidean).expect("distinct circle points")
    }

    fn check_separation(&self) -> Verdict<MetricViolation> {
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.raw(i, j) <= self.tol {
                    return Verdict::Fails(MetricViolation::ZeroBetweenDistinct {
                        a: self.ids[i].clone(),
                        b: self.ids[j].clone(),
                    });
                }
            }
        }
        Verdict::Holds
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownPoint(id.to_string()))
    }

    pub fn coordinates(&self) -> Option<&[Vec<f64>]> {
        self.coords.as_deref()
    }

    pub fn d(&self, i: usize, j: usize) -> ExtDist {
        ExtDist::new(self.raw(i, j)).expect("valid distance")
    }

    pub(crate) fn raw(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.len() + j]
    }

    /// `d(i, j) ≤ r` up to the space's tolerance.
    pub fn within(&self, i: usize, j: usize, r: ExtDist) -> bool {
        le(self.raw(i, j), r.value(), self.tol)
    }

    pub fn has_infinite_distances(&self) -> bool {
        self.dist.iter().any(|d| d.is_infinite())
    }

    /// Closed ball `{y : d(x, y) ≤ r}` in index order.
    pub fn ball(&self, x: usize, r: ExtDist) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.within(x, y, r)).collect()
    }

    pub fn ball_by_id(&self, x: &str, r: ExtDist) -> Result<Vec<usize>> {
        Ok(self.ball(self.index_of(x)?, r))
    }

    /// Diameter of a subset; zero for sets with at most one point.
    pub fn diameter_of(&self, set: &[usize]) -> ExtDist {
        let mut m = 0.0f64;
        for (k, &a) in set.iter().enumerate() {
            for &b in &set[k + 1..] {
                m = m.max(self.raw(a, b));
            }
        }
        ExtDist::new(m).expect("non-negative")
    }

    pub fn diameter(&self) -> ExtDist {
        ExtDist::new(self.dist.iter().copied().fold(0.0, f64::max)).expect("non-negative")
    }

    /// Largest finite distance realized by a pair (zero for one point).
    pub fn max_finite_distance(&self) -> ExtDist {
        let m = self.dist.iter().copied().filter(|d| d.is_finite()).fold(0.0, f64::max);
        ExtDist::finite(m)
    }

    /// Sorted distinct realized distances, zero included, merged within
    /// tolerance; `INF` is last when some pair is infinitely far apart.
    pub fn realized_distances(&self) -> Vec<ExtDist> {
        let mut vals: Vec<f64> = self.dist.iter().copied().filter(|d| d.is_finite()).collect();
        vals.push(0.0);
        vals.sort_by(f64::total_cmp);
        let mut out: Vec<ExtDist> = Vec::new();
        for v in vals {
            match out.last() {
                Some(last) if v - last.value() <= self.tol => {}
                _ => out.push(ExtDist::finite(v)),
            }
        }
        if self.has_infinite_distances() {
            out.push(ExtDist::INF);
        }
        out
    }

    /// Adjacency of the relation `0 < d ≤ r`.
    pub(crate) fn adjacency_at(&self, r: ExtDist) -> Vec<BitSet> {
        let n = self.len();
        let mut adj = vec![BitSet::new(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if self.within(i, j, r) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        adj
    }
}

/// A cover of the points `0..n` by named nonempty members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cover {
    names: Vec<String>,
    members: Vec<Vec<usize>>,
    #[serde(skip)]
    n_points: usize,
}

impl Cover {
    /// Validates nonemptiness, range, distinct names and that the union is
    /// everything. Members are stored sorted and deduplicated.
    pub fn new(n_points: usize, members: Vec<(String, Vec<usize>)>) -> Result<Self> {
        let mut names = Vec::with_capacity(members.len());
        let mut sets = Vec::with_capacity(members.len());
        let mut seen = vec![false; n_points];
        let mut name_set = std::collections::HashSet::new();
        for (name, mut set) in members {
            if !name_set.insert(name.clone()) {
                return Err(Error::InvalidCover(format!("duplicate member name `{name}`")));
            }
            if set.is_empty() {
                return Err(Error::InvalidCover(format!("member `{name}` is empty")));
            }
            set.sort_unstable();
            set.dedup();
            for &x in &set {
                if x >= n_points {
                    return Err(Error::OutOfRange { index: x, len: n_points });
                }
                seen[x] = true;
            }
            names.push(name);
            sets.push(set);
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidCover(format!("point #{x} lies in no member")));
        }
        Ok(Cover { names, members: sets, n_points })
    }

    /// Members given by point ids.
    pub fn from_ids(space: &FiniteMetricSpace, members: Vec<(String, Vec<String>)>) -> Result<Self> {
        let mut out = Vec::with_capacity(members.len());
        for (name, ids) in members {
            let set = ids.iter().map(|id| space.index_of(id)).collect::<Result<Vec<_>>>()?;
            out.push((name, set));
        }
        Cover::new(space.len(), out)
    }

    /// The closed `r`-ball cover, one member per point, named by the point.
    pub fn closed_balls(space: &FiniteMetricSpace, r: ExtDist) -> Self {
        let members = (0..space.len()).map(|x| (space.id(x).to_string(), space.ball(x, r))).collect();
        Cover::new(space.len(), members).expect("balls cover")
    }

    pub fn whole(space: &FiniteMetricSpace) -> Self {
        Cover::new(space.len(), vec![("X".into(), (0..space.len()).collect())]).expect("nonempty space")
    }

    pub fn singletons(space: &FiniteMetricSpace) -> Self {
        let members = (0..space.len()).map(|x| (space.id(x).to_string(), vec![x])).collect();
        Cover::new(space.len(), members).expect("singletons cover")
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, u: usize) -> &str {
        &self.names[u]
    }

    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn member(&self, u: usize) -> &[usize] {
        &self.members[u]
    }

    pub fn contains(&self, u: usize, x: usize) -> bool {
        self.members[u].binary_search(&x).is_ok()
    }

    /// Whether `set` (sorted or not) lies inside member `u`.
    pub fn member_contains_all(&self, u: usize, set: &[usize]) -> bool {
        set.iter().all(|&x| self.contains(u, x))
    }

    /// First member containing all of `set`, in canonical order.
    pub fn first_member_containing(&self, set: &[usize]) -> Option<usize> {
        (0..self.len()).find(|&u| self.member_contains_all(u, set))
    }

    pub fn members_containing(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.contains(u, x)).collect()
    }

    fn check_space(&self, space: &FiniteMetricSpace) -> Result<()> {
        if self.n_points != space.len() {
            return Err(Error::CoverMismatch { cover: self.n_points, space: space.len() });
        }
        Ok(())
    }
}

/// A total function between the points of two spaces.
#[derive(Clone, Debug)]
pub struct PointMap<'a> {
    pub source: &'a FiniteMetricSpace,
    pub target: &'a FiniteMetricSpace,
    assignment: Vec<usize>,
}

impl<'a> PointMap<'a> {
    pub fn new(
        source: &'a FiniteMetricSpace,
        target: &'a FiniteMetricSpace,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::PartialMap { expected: source.len(), got: assignment.len() });
        }
        if let Some(&bad) = assignment.iter().find(|&&y| y >= target.len()) {
            return Err(Error::OutOfRange { index: bad, len: target.len() });
        }
        Ok(PointMap { source, target, assignment })
    }

    pub fn from_fn(
        source: &'a FiniteMetricSpace,
        target: &'a FiniteMetricSpace,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        Self::new(source, target, (0..source.len()).map(f).collect())
    }

    pub fn identity(space: &'a FiniteMetricSpace) -> Self {
        PointMap { source: space, target: space, assignment: (0..space.len()).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// `other ∘ self`.
    pub fn then<'b>(&self, other: &PointMap<'b>) -> Result<PointMap<'b>>
    where
        'a: 'b,
    {
        if !std::ptr::eq(self.target, other.source) && self.target != other.source {
            return Err(Error::MismatchedMaps);
        }
        Ok(PointMap {
            source: self.source,
            target: other.target,
            assignment: self.assignment.iter().map(|&y| other.apply(y)).collect(),
        })
    }
}

/// Sampled `t ↦ s(t)` relation of a map.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistortionProfile {
    pub samples: Vec<(ExtDist, ExtDist)>,
}

impl DistortionProfile {
    pub fn is_finite(&self) -> bool {
        self.samples.iter().all(|(_, s)| s.is_finite())
    }

    /// Value at a sampled scale, if present.
    pub fn at(&self, t: ExtDist) -> Option<ExtDist> {
        self.samples.iter().find(|(ti, _)| *ti == t).map(|(_, s)| *s)
    }
}

/// Diameter-based Lebesgue number, or a lower bound when the clique budget
/// ran out.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LebesgueExact {
    Exact { value: ExtDist },
    Unknown { lower_bound: ExtDist },
}

impl LebesgueExact {
    pub fn value(self) -> Option<ExtDist> {
        match self {
            LebesgueExact::Exact { value } => Some(value),
            LebesgueExact::Unknown { .. } => None,
        }
    }

    pub fn lower_bound(self) -> ExtDist {
        match self {
            LebesgueExact::Exact { value } => value,
            LebesgueExact::Unknown { lower_bound } => lower_bound,
        }
    }
}

/// Largest member diameter.
pub fn mesh(space: &FiniteMetricSpace, cover: &Cover) -> Result<ExtDist> {
    cover.check_space(space)?;
    Ok(cover
        .members()
        .iter()
        .map(|m| space.diameter_of(m))
        .max()
        .unwrap_or(ExtDist::ZERO))
}

/// Largest realized `r` such that every closed `r`-ball lies in a member.
pub fn lebesgue_ball(space: &FiniteMetricSpace, cover: &Cover) -> Result<ExtDist> {
    cover.check_space(space)?;
    let radii = space.realized_distances();
    let top = *radii.last().expect("zero is always realized");
    let mut best = top;
    for x in 0..space.len() {
        let mut rx = ExtDist::ZERO;
        for u in cover.members_containing(x) {
            let outside = (0..space.len())
                .filter(|&y| !cover.contains(u, y))
                .map(|y| space.raw(x, y))
                .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |a| a.min(d))));
            let ru = match outside {
                None => top,
                Some(m) => radii
                    .iter()
                    .rev()
                    .find(|r| r.is_finite() && r.value() + space.tol < m)
                    .copied()
                    .unwrap_or(ExtDist::ZERO),
            };
            rx = rx.max(ru);
        }
        if rx < best {
            best = rx;
        }
    }
    Ok(best)
}

/// Largest realized `r` such that every subset of diameter at most `r` lies
/// in a member, checked on maximal cliques of the Rips graph at `r`.
///
/// `budget` bounds the total number of clique-search steps.
pub fn lebesgue_exact(
    space: &FiniteMetricSpace,
    cover: &Cover,
    budget: Option<usize>,
) -> Result<LebesgueExact> {
    let floor = lebesgue_ball(space, cover)?;
    let radii = space.realized_distances();
    let mut remaining = budget;
    let mut good = |r: ExtDist| -> Result<bool> {
        let adj = space.adjacency_at(r);
        let mut calls = 0usize;
        let outcome = clique::for_each_maximal_clique(&adj, remaining, |c| {
            calls += 1;
            if cover.first_member_containing(c).is_some() {
                std::ops::ControlFlow::Continue(())
            } else {
                std::ops::ControlFlow::Break(())
            }
        });
        if let Some(b) = remaining.as_mut() {
            *b = b.saturating_sub(calls.max(1));
        }
        Ok(outcome?.is_continue())
    };
    // Monotone predicate: binary search for the last good radius. Radii at or
    // below the ball number are good, since a set of diameter r lies in the
    // r-ball around any of its points.
    let mut lo = radii.iter().rposition(|r| *r <= floor).unwrap_or(0);
    let mut hi = radii.len();
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        match good(radii[mid]) {
            Ok(true) => lo = mid,
            Ok(false) => hi = mid,
            Err(Error::BudgetExceeded(_)) => {
                return Ok(LebesgueExact::Unknown { lower_bound: radii[lo] });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(LebesgueExact::Exact { value: radii[lo] })
}

/// Whether every finite distance is realized by a chain with gaps at most
/// `t`. Fails with the first pair (in index order) that is not.
pub fn is_t_geodesic(space: &FiniteMetricSpace, t: ExtDist) -> Verdict<(String, String)> {
    let n = space.len();
    for src in 0..n {
        let mut best = vec![f64::INFINITY; n];
        let mut done = vec![false; n];
        best[src] = 0.0;
        for _ in 0..n {
            let Some(u) = (0..n)
                .filter(|&v| !done[v] && best[v].is_finite())
                .min_by(|&a, &b| best[a].total_cmp(&best[b]))
            else {
                break;
            };
            done[u] = true;
            for v in 0..n {
                if !done[v] && u != v && space.within(u, v, t) && space.raw(u, v).is_finite() {
                    let cand = best[u] + space.raw(u, v);
                    if cand < best[v] {
                        best[v] = cand;
                    }
                }
            }
        }
        for (dst, reached) in best.iter().enumerate().skip(src + 1) {
            let d = space.raw(src, dst);
            if d.is_finite() && !(reached.is_finite() && (reached - d).abs() <= space.tol * (1.0 + d)) {
                return Verdict::Fails((space.id(src).to_string(), space.id(dst).to_string()));
            }
        }
    }
    Verdict::Holds
}

/// For each `t`, the largest target distance over source pairs at distance
/// at most `t`.
pub fn distortion_profile(map: &PointMap<'_>, ts: &[ExtDist]) -> Result<DistortionProfile> {
    if ts.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::NonAscendingScales);
    }
    let n = map.source.len();
    let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((map.source.raw(i, j), map.target.raw(map.apply(i), map.apply(j))));
        }
    }
    let tol = map.source.tol;
    let samples = ts
        .iter()
        .map(|&t| {
            let s = pairs
                .iter()
                .filter(|(ds, _)| le(*ds, t.value(), tol))
                .map(|(_, dt)| *dt)
                .fold(0.0, f64::max);
            (t, ExtDist::new(s).expect("non-negative"))
        })
        .collect();
    Ok(DistortionProfile { samples })
}

/// `sup_x d(f(x), g(x))`.
pub fn ls_distance(f: &PointMap<'_>, g: &PointMap<'_>) -> Result<ExtDist> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::MismatchedMaps);
    }
    Ok((0..f.source.len())
        .map(|x| f.target.d(f.apply(x), g.apply(x)))
        .max()
        .unwrap_or(ExtDist::ZERO))
}

/// `A` together with every member meeting it.
pub fn star(set: &[usize], cover: &Cover) -> Vec<usize> {
    let mut out: Vec<usize> = set.to_vec();
    for m in cover.members() {
        if m.iter().any(|x| set.contains(x)) {
            out.extend_from_slice(m);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Failure of a star refinement: the star of `member` lies in no member of
/// the coarser cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarFailure {
    pub member: String,
    pub star: Vec<usize>,
}

/// Whether the star of every member of `fine` lies in a member of `coarse`.
pub fn is_star_refinement(fine: &Cover, coarse: &Cover) -> Result<Verdict<StarFailure>> {
    if fine.n_points() != coarse.n_points() {
        return Err(Error::CoverMismatch { cover: fine.n_points(), space: coarse.n_points() });
    }
    for (u, m) in fine.members().iter().enumerate() {
        let st = star(m, fine);
        if coarse.first_member_containing(&st).is_none() {
            return Ok(Verdict::Fails(StarFailure { member: fine.name(u).to_string(), star: st }));
        }
    }
    Ok(Verdict::Holds)
}
