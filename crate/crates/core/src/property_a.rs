//! Property A certificates: ξ-assignments with exact rational weights, their
//! verification, and the translation to maps into ℓ¹ realizations of Rips
//! complexes and back.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::dist::ExtDist;
use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::tower::{self, Tower};

/// A finitely supported probability vector over point (or vertex) indices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseProbVector {
    weights: BTreeMap<usize, BigRational>,
}

impl SparseProbVector {
    /// Drops zero weights; rejects negative ones.
    pub fn new(weights: impl IntoIterator<Item = (usize, BigRational)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (i, w) in weights {
            if w.is_negative() {
                return Err(Error::Precondition(format!("negative weight {w} at #{i}")));
            }
            if !w.is_zero() {
                *out.entry(i).or_insert_with(BigRational::zero) += w;
            }
        }
        Ok(SparseProbVector { weights: out })
    }

    pub fn point_mass(i: usize) -> Self {
        SparseProbVector { weights: BTreeMap::from([(i, BigRational::one())]) }
    }

    /// Uniform weights on `support`.
    pub fn uniform(support: &[usize]) -> Self {
        let w = BigRational::new(BigInt::one(), BigInt::from(support.len()));
        SparseProbVector { weights: support.iter().map(|&i| (i, w.clone())).collect() }
    }

    pub fn weights(&self) -> &BTreeMap<usize, BigRational> {
        &self.weights
    }

    pub fn support(&self) -> Vec<usize> {
        self.weights.keys().copied().collect()
    }

    pub fn total(&self) -> BigRational {
        self.weights.values().sum()
    }

    pub fn weight(&self, i: usize) -> BigRational {
        self.weights.get(&i).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// `Σ |a_i − b_i|`, exact.
pub fn l1_distance(a: &SparseProbVector, b: &SparseProbVector) -> BigRational {
    let mut total = BigRational::zero();
    for (i, w) in &a.weights {
        total += (w - b.weight(*i)).abs();
    }
    for (i, w) in &b.weights {
        if !a.weights.contains_key(i) {
            total += w.clone();
        }
    }
    total
}

/// One probability vector per point of a space.
#[derive(Clone, Debug)]
pub struct XiAssignment<'a> {
    pub space: &'a FiniteMetricSpace,
    xi: Vec<SparseProbVector>,
}

impl<'a> XiAssignment<'a> {
    pub fn new(space: &'a FiniteMetricSpace, xi: Vec<SparseProbVector>) -> Result<Self> {
        if xi.len() != space.len() {
            return Err(Error::PartialMap { expected: space.len(), got: xi.len() });
        }
        for v in &xi {
            if let Some(&bad) = v.weights.keys().find(|&&i| i >= space.len()) {
                return Err(Error::OutOfRange { index: bad, len: space.len() });
            }
        }
        Ok(XiAssignment { space, xi })
    }

    pub fn xi(&self, x: usize) -> &SparseProbVector {
        &self.xi[x]
    }

    pub fn vectors(&self) -> &[SparseProbVector] {
        &self.xi
    }
}

/// An exact rational with a decimal rendering for reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Exact {
    pub exact: String,
    pub approx: f64,
}

impl From<&BigRational> for Exact {
    fn from(r: &BigRational) -> Self {
        Exact { exact: r.to_string(), approx: r.to_f64().unwrap_or(f64::NAN) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XiReport {
    pub pass: bool,
    /// Every ξ_x sums to one.
    pub norms_ok: bool,
    pub norm_violation: Option<String>,
    /// Every ξ_x is supported in `B(x, S)`.
    pub supports_ok: bool,
    pub support_violation: Option<String>,
    pub max_support_radius: ExtDist,
    /// `‖ξ_x − ξ_y‖ ≤ ε` whenever `d(x, y) ≤ R`.
    pub closeness_ok: bool,
    pub worst_pair: Option<(String, String)>,
    pub worst_value: Exact,
    pub slack: Exact,
}

/// Checks the three clauses of a Property A certificate at `(R, ε, S)`.
/// Strict inequalities are checked as `≤`; the report carries the achieved
/// value and slack.
pub fn verify_xi(a: &XiAssignment<'_>, r: ExtDist, eps: &BigRational, s: ExtDist) -> XiReport {
    let space = a.space;
    let n = space.len();
    let norm_violation = (0..n).find(|&x| !a.xi[x].total().is_one()).map(|x| space.id(x).to_string());
    let radius = |x: usize| {
        a.xi[x].weights.keys().map(|&y| space.d(x, y)).max().unwrap_or(ExtDist::ZERO)
    };
    let max_support_radius = (0..n).map(radius).max().unwrap_or(ExtDist::ZERO);
    let support_violation = (0..n)
        .find(|&x| a.xi[x].weights.keys().any(|&y| !space.within(x, y, s)))
        .map(|x| space.id(x).to_string());
    let worst = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut best: Option<(BigRational, usize, usize)> = None;
            for y in x + 1..n {
                if space.within(x, y, r) {
                    let v = l1_distance(&a.xi[x], &a.xi[y]);
                    if best.as_ref().is_none_or(|(b, _, _)| v > *b) {
                        best = Some((v, x, y));
                    }
                }
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .fold(None, |acc: Option<(BigRational, usize, usize)>, cand| match acc {
            Some(a) if a.0 >= cand.0 => Some(a),
            _ => Some(cand),
        });
    let (worst_value, worst_pair) = match worst {
        Some((v, x, y)) => (v, Some((space.id(x).to_string(), space.id(y).to_string()))),
        None => (BigRational::zero(), None),
    };
    let closeness_ok = worst_value <= *eps;
    XiReport {
        pass: norm_violation.is_none() && support_violation.is_none() && closeness_ok,
        norms_ok: norm_violation.is_none(),
        norm_violation,
        supports_ok: support_violation.is_none(),
        support_violation,
        max_support_radius,
        closeness_ok,
        worst_pair,
        slack: Exact::from(&(eps - &worst_value)),
        worst_value: Exact::from(&worst_value),
    }
}

/// `ξ_x` uniform on the closed ball `B(x, S)`.
pub fn uniform_ball_xi(space: &FiniteMetricSpace, s: ExtDist) -> XiAssignment<'_> {
    let xi = (0..space.len()).map(|x| SparseProbVector::uniform(&space.ball(x, s))).collect();
    XiAssignment { space, xi }
}

/// Per point, drops the lightest weights while their total stays below
/// `ε/2` and moves that mass onto the heaviest remaining weight (lower index
/// on ties). Each vector moves by less than `ε` in ℓ¹.
pub fn truncate_xi<'a>(a: &XiAssignment<'a>, eps: &BigRational) -> XiAssignment<'a> {
    let half = eps / BigRational::from_integer(BigInt::from(2));
    let xi = a
        .xi
        .iter()
        .map(|v| {
            let mut order: Vec<(&usize, &BigRational)> = v.weights.iter().collect();
            order.sort_by(|p, q| p.1.cmp(q.1).then(q.0.cmp(p.0)));
            let mut dropped = BigRational::zero();
            let mut cut = 0;
            while cut + 1 < order.len() && &dropped + order[cut].1 < half {
                dropped += order[cut].1;
                cut += 1;
            }
            let mut kept: BTreeMap<usize, BigRational> =
                order[cut..].iter().map(|(i, w)| (**i, (*w).clone())).collect();
            if !dropped.is_zero() {
                let heaviest = *kept
                    .iter()
                    .max_by(|p, q| p.1.cmp(q.1).then(q.0.cmp(p.0)))
                    .map(|(i, _)| i)
                    .expect("at least one weight kept");
                *kept.get_mut(&heaviest).expect("present") += dropped;
            }
            SparseProbVector { weights: kept }
        })
        .collect();
    XiAssignment { space: a.space, xi }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexPropertyAReport {
    pub pass: bool,
    pub source_level: usize,
    pub target_level: usize,
    /// Each value's support spans a simplex of the target level.
    pub supports_are_simplices: bool,
    pub support_violation: Option<String>,
    /// For each facet `Δ`, `i(Δ)` together with all supports over `Δ` spans
    /// one simplex of the target.
    pub contiguous: bool,
    pub contiguity_violation: Option<Vec<String>>,
    /// Largest ℓ¹ diameter of a facet image (attained at vertices).
    pub max_diameter: Exact,
    pub diameter_ok: bool,
    pub worst_facet: Option<Vec<String>>,
    pub note: &'static str,
}

/// Checks a candidate map `f: |K_k| → |K_n|_m`, given by its values on
/// the vertices of `K_k` and extended barycentrically: supports are
/// simplices, `f` is contiguous to `i_{k,n}`, and images of simplices have
/// ℓ¹ diameter at most `ε`.
pub fn verify_property_a_complex(
    tower: &Tower<SimplicialComplex>,
    k: usize,
    n: usize,
    eps: &BigRational,
    f: &[SparseProbVector],
) -> Result<ComplexPropertyAReport> {
    if k >= n || n >= tower.len() {
        return Err(Error::Precondition(format!("levels {k} → {n} are not an increasing stored pair")));
    }
    let source = tower.level(k);
    let target = tower.level(n);
    if f.len() != source.len() {
        return Err(Error::PartialMap { expected: source.len(), got: f.len() });
    }
    if let Some(&bad) = f.iter().flat_map(|v| v.weights.keys()).find(|&&i| i >= target.len()) {
        return Err(Error::OutOfRange { index: bad, len: target.len() });
    }
    let support_violation = (0..source.len())
        .find(|&v| !f[v].total().is_one() || !target.is_simplex(&f[v].support()))
        .map(|v| source.vertex(v).to_string());
    let bond = tower.bond(k, n);
    let contiguity_violation = source
        .facets()
        .par_iter()
        .find_first(|facet| {
            let mut all: Vec<usize> = facet.iter().map(|&v| bond[v]).collect();
            for &v in facet.iter() {
                all.extend(f[v].weights.keys());
            }
            all.sort_unstable();
            all.dedup();
            !target.is_simplex(&all)
        })
        .map(|facet| source.names(facet));
    let per_facet: Vec<(BigRational, usize)> = source
        .facets()
        .par_iter()
        .enumerate()
        .map(|(i, facet)| {
            let mut best = BigRational::zero();
            for (a_idx, &a) in facet.iter().enumerate() {
                for &b in &facet[a_idx + 1..] {
                    let d = l1_distance(&f[a], &f[b]);
                    if d > best {
                        best = d;
                    }
                }
            }
            (best, i)
        })
        .collect();
    let (max_diameter, worst) = per_facet
        .into_iter()
        .fold((BigRational::zero(), None), |(b, w), (d, i)| if d > b { (d, Some(i)) } else { (b, w) });
    let diameter_ok = max_diameter <= *eps;
    Ok(ComplexPropertyAReport {
        pass: support_violation.is_none() && contiguity_violation.is_none() && diameter_ok,
        source_level: k,
        target_level: n,
        supports_are_simplices: support_violation.is_none(),
        support_violation,
        contiguous: contiguity_violation.is_none(),
        contiguity_violation,
        max_diameter: Exact::from(&max_diameter),
        diameter_ok,
        worst_facet: worst.map(|i| source.names(&source.facets()[i])),
        note: "maps are vertex values extended barycentrically; the ℓ¹ diameter of a linear image is attained at vertices",
    })
}

/// The vertex-level map `x ↦ ξ_x` from `Rips_R` into the ℓ¹ realization of
/// `Rips_{2S+R}`, with its verification.
#[derive(Clone, Debug)]
pub struct RealizationMap {
    pub tower: Tower<SimplicialComplex>,
    pub values: Vec<SparseProbVector>,
    pub report: ComplexPropertyAReport,
}

pub fn xi_to_realization_map(
    a: &XiAssignment<'_>,
    r: ExtDist,
    eps: &BigRational,
    s: ExtDist,
    dim_cap: usize,
) -> Result<RealizationMap> {
    let pre = verify_xi(a, r, eps, s);
    if !pre.pass {
        return Err(Error::Precondition(format!(
            "certificate fails at R = {r}, S = {s}: worst value {} against ε = {eps}",
            pre.worst_value.exact
        )));
    }
    let top = ExtDist::finite(2.0 * s.value() + r.value());
    let tower = tower::rips_tower(a.space, &[r, top], dim_cap)?;
    let values = a.xi.clone();
    let report = verify_property_a_complex(&tower, 0, 1, eps, &values)?;
    Ok(RealizationMap { tower, values, report })
}

/// Reads a certificate off vertex values of a map `|Rips_R| → |Rips_S|`
/// and re-derives the certificate clauses.
#[derive(Clone, Debug)]
pub struct PulledBack<'a> {
    pub xi: XiAssignment<'a>,
    /// `{x} ∪ supp f(x)` spans a simplex of `Rips_S` for every `x`.
    pub anchored: bool,
    pub anchor_violation: Option<String>,
    pub report: XiReport,
}

pub fn realization_map_to_xi<'a>(
    space: &'a FiniteMetricSpace,
    values: &[SparseProbVector],
    r: ExtDist,
    eps: &BigRational,
    s: ExtDist,
) -> Result<PulledBack<'a>> {
    let xi = XiAssignment::new(space, values.to_vec())?;
    let anchor_violation = (0..space.len())
        .find(|&x| {
            let mut cell = values[x].support();
            cell.push(x);
            cell.iter().any(|&a| cell.iter().any(|&b| !space.within(a, b, s)))
        })
        .map(|x| space.id(x).to_string());
    let report = verify_xi(&xi, r, eps, s);
    Ok(PulledBack { xi, anchored: anchor_violation.is_none(), anchor_violation, report })
}

/// Parses `a/b`, an integer, or a finite decimal into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse { line: 0, message: format!("not a rational number: `{t}`") };
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    Ok(BigRational::new(digits, num::pow(BigInt::from(10), frac.len())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn l1_examples() {
        let a = SparseProbVector::point_mass(0);
        let b = SparseProbVector::point_mass(1);
        assert_eq!(l1_distance(&a, &a), q(0, 1));
        assert_eq!(l1_distance(&a, &b), q(2, 1));
        let mid = SparseProbVector::uniform(&[0, 1]);
        assert_eq!(l1_distance(&a, &mid), q(1, 1));
    }

    #[test]
    fn point_masses() {
        let m = FiniteMetricSpace::integer_interval(0, 5);
        let xi = uniform_ball_xi(&m, ExtDist::ZERO);
        let r = verify_xi(&xi, ExtDist::finite(1.0), &q(1, 2), ExtDist::finite(1.0));
        assert!(r.norms_ok && r.supports_ok && !r.closeness_ok);
        assert!(verify_xi(&xi, ExtDist::finite(1.0), &q(2, 1), ExtDist::finite(1.0)).pass);
        assert!(verify_xi(&xi, ExtDist::finite(0.5), &q(1, 100), ExtDist::finite(1.0)).pass);
    }

    #[test]
    fn declared_support_too_small() {
        let m = FiniteMetricSpace::integer_interval(0, 10);
        let xi = uniform_ball_xi(&m, ExtDist::finite(3.0));
        assert!(verify_xi(&xi, ExtDist::finite(1.0), &q(1, 1), ExtDist::finite(3.0)).supports_ok);
        let r = verify_xi(&xi, ExtDist::finite(1.0), &q(1, 1), ExtDist::finite(2.0));
        assert_eq!(r.support_violation.as_deref(), Some("0"));
        assert_eq!(r.max_support_radius, ExtDist::finite(3.0));
    }

    #[test]
    fn truncation() {
        let m = FiniteMetricSpace::integer_interval(0, 99);
        let xi = uniform_ball_xi(&m, ExtDist::finite(100.0));
        let t = truncate_xi(&xi, &q(1, 2));
        assert_eq!(t.xi(0).support().len(), 76);
        assert!(t.xi(0).total().is_one());
        assert!(l1_distance(t.xi(0), xi.xi(0)) < q(1, 2));
        let pm = uniform_ball_xi(&m, ExtDist::ZERO);
        assert_eq!(truncate_xi(&pm, &q(1, 2)).vectors(), pm.vectors());
    }

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("4/41").unwrap(), q(4, 41));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn point_mass_bridge_is_identity() {
        let m = FiniteMetricSpace::integer_interval(0, 6);
        let xi = uniform_ball_xi(&m, ExtDist::ZERO);
        let map = xi_to_realization_map(&xi, ExtDist::finite(0.5), &q(1, 10), ExtDist::finite(1.0), 3).unwrap();
        assert!(map.report.pass);
        assert_eq!(map.report.max_diameter.exact, "0");
        let back = realization_map_to_xi(&m, &map.values, ExtDist::finite(0.5), &q(1, 10), ExtDist::finite(1.0)).unwrap();
        assert_eq!(back.xi.vectors(), xi.vectors());
        assert!(back.report.pass);
    }

    #[test]
    fn far_flung_image_fails_support() {
        let m = FiniteMetricSpace::integer_interval(0, 10);
        let mut values: Vec<SparseProbVector> = (0..11).map(SparseProbVector::point_mass).collect();
        values[3] = SparseProbVector::point_mass(10);
        let back = realization_map_to_xi(&m, &values, ExtDist::finite(1.0), &q(3, 1), ExtDist::finite(2.0)).unwrap();
        assert_eq!(back.anchor_violation.as_deref(), Some("3"));
        assert_eq!(back.report.support_violation.as_deref(), Some("3"));
    }
}
