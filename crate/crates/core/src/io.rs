//! Text formats: CSV distance tables and point clouds, edge lists, cover and
//! certificate JSON on the way in; JSON reports, DOT and SVG on the way out.
//! Output ordering is fixed by the inputs, so equal inputs give equal bytes.

use std::collections::HashMap;
use std::fmt::Write as _;

use num::{BigInt, BigRational, ToPrimitive};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::asdim::FactorizationWitness;
use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::dist::ExtDist;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homology::ConnectivityProfile;
use crate::metric::{Cover, FiniteMetricSpace, Norm};
use crate::property_a::{SparseProbVector, XiAssignment};
use crate::tower::{Tower, TowerLevel};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn csv_records(text: &str) -> Result<Vec<(usize, Vec<String>)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let fields: Vec<String> = record.iter().map(str::to_string).collect();
        if fields.iter().all(String::is_empty) {
            continue;
        }
        out.push((line, fields));
    }
    Ok(out)
}

/// A distance matrix. The first record holds the point ids; a leading empty
/// header cell means every row starts with its own id, which must match.
/// Entries are numbers or `inf`.
pub fn parse_distance_csv(text: &str) -> Result<FiniteMetricSpace> {
    let records = csv_records(text)?;
    let Some(((_, header), rows)) = records.split_first() else {
        return Err(Error::NoPoints);
    };
    let labelled = header.first().is_some_and(String::is_empty);
    let ids: Vec<String> = if labelled { header[1..].to_vec() } else { header.clone() };
    if ids.is_empty() {
        return Err(Error::NoPoints);
    }
    let mut table = Vec::with_capacity(rows.len());
    for (i, (line, fields)) in rows.iter().enumerate() {
        let values = if labelled {
            let expected = ids.get(i).map(String::as_str).unwrap_or("");
            if fields[0] != expected {
                return Err(parse_err(*line, format!("row label `{}` does not match column id `{expected}`", fields[0])));
            }
            &fields[1..]
        } else {
            &fields[..]
        };
        let row = values
            .iter()
            .map(|v| v.parse::<ExtDist>().map_err(|_| parse_err(*line, format!("not a distance: `{v}`"))))
            .collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    if table.len() != ids.len() {
        let line = rows.last().map_or(1, |r| r.0);
        return Err(parse_err(line, format!("{} ids but {} rows", ids.len(), table.len())));
    }
    FiniteMetricSpace::from_table(ids, table).map_err(|e| match e {
        Error::NotSquare { row, len, expected } => {
            parse_err(rows[row].0, format!("row has {len} entries, expected {expected}"))
        }
        other => other,
    })
}

/// A point cloud, one `id, x1, x2, …` record per point. A first record
/// whose coordinates are not numbers is taken as a header.
pub fn parse_points_csv(text: &str, norm: Norm) -> Result<FiniteMetricSpace> {
    let records = csv_records(text)?;
    let mut ids = Vec::new();
    let mut coords: Vec<Vec<f64>> = Vec::new();
    for (i, (line, fields)) in records.iter().enumerate() {
        if fields.len() < 2 {
            return Err(parse_err(*line, "expected an id and at least one coordinate"));
        }
        let parsed: std::result::Result<Vec<f64>, _> = fields[1..].iter().map(|v| v.parse::<f64>()).collect();
        match parsed {
            Ok(c) => {
                if let Some(bad) = c.iter().find(|v| !v.is_finite()) {
                    return Err(parse_err(*line, format!("coordinate {bad} is not finite")));
                }
                if let Some(first) = coords.first() {
                    if first.len() != c.len() {
                        return Err(parse_err(*line, format!("expected {} coordinates, got {}", first.len(), c.len())));
                    }
                }
                ids.push(fields[0].clone());
                coords.push(c);
            }
            Err(_) if i == 0 => {}
            Err(_) => return Err(parse_err(*line, "coordinates must be numbers")),
        }
    }
    if ids.is_empty() {
        return Err(Error::NoPoints);
    }
    FiniteMetricSpace::from_points(ids, coords, norm)
}

/// `u v` per line after an optional `#vertices: a b c` header; other `#`
/// lines are comments. Without a header, vertices are numbered in order of
/// first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut vertices: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut declared = false;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix("#vertices:") {
            if declared || !edges.is_empty() {
                return Err(parse_err(line, "the vertex header must come first and only once"));
            }
            declared = true;
            for v in rest.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
                if index.insert(v.to_string(), vertices.len()).is_some() {
                    return Err(parse_err(line, format!("duplicate vertex `{v}`")));
                }
                vertices.push(v.to_string());
            }
            continue;
        }
        if l.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = l.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
        if parts.len() != 2 {
            return Err(parse_err(line, format!("expected `u v`, got `{l}`")));
        }
        let mut ends = [0; 2];
        for (slot, name) in ends.iter_mut().zip(&parts) {
            *slot = match index.get(*name) {
                Some(&v) => v,
                None if !declared => {
                    index.insert(name.to_string(), vertices.len());
                    vertices.push(name.to_string());
                    vertices.len() - 1
                }
                None => return Err(parse_err(line, format!("vertex `{name}` is not declared"))),
            };
        }
        if ends[0] == ends[1] {
            return Err(parse_err(line, format!("loop at `{}`", parts[0])));
        }
        edges.push((ends[0], ends[1]));
    }
    if vertices.is_empty() {
        return Err(Error::NoPoints);
    }
    Graph::new(vertices, edges)
}

#[derive(Deserialize)]
struct MemberJson {
    name: String,
    members: Vec<String>,
}

fn cover_from(space: &FiniteMetricSpace, members: Vec<MemberJson>) -> Result<Cover> {
    Cover::from_ids(space, members.into_iter().map(|m| (m.name, m.members)).collect())
}

/// A cover as `[{name, members: [ids]}]`.
pub fn parse_cover_json(text: &str, space: &FiniteMetricSpace) -> Result<Cover> {
    cover_from(space, serde_json::from_str(text)?)
}

/// A ladder of covers: either a list of covers or a single cover.
pub fn parse_cover_ladder_json(text: &str, space: &FiniteMetricSpace) -> Result<Vec<Cover>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Ladder {
        Many(Vec<Vec<MemberJson>>),
        One(Vec<MemberJson>),
    }
    match serde_json::from_str(text)? {
        Ladder::Many(covers) => covers.into_iter().map(|c| cover_from(space, c)).collect(),
        Ladder::One(c) => Ok(vec![cover_from(space, c)?]),
    }
}

pub fn cover_json(cover: &Cover, space: &FiniteMetricSpace) -> Value {
    Value::Array(
        (0..cover.len())
            .map(|u| {
                json!({
                    "name": cover.name(u),
                    "members": cover.member(u).iter().map(|&x| space.id(x)).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn ratio_json(r: &BigRational) -> Result<(u64, u64)> {
    match (r.numer().to_u64(), r.denom().to_u64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::Precondition(format!("weight {r} does not fit in 64-bit numerator and denominator"))),
    }
}

/// `{point: [{support_point, weight_numerator, weight_denominator}]}`.
pub fn xi_json(a: &XiAssignment<'_>) -> Result<Value> {
    let mut out = Map::new();
    for (x, v) in a.vectors().iter().enumerate() {
        let entries = v
            .weights()
            .iter()
            .map(|(&y, w)| {
                let (n, d) = ratio_json(w)?;
                Ok(json!({ "support_point": a.space.id(y), "weight_numerator": n, "weight_denominator": d }))
            })
            .collect::<Result<Vec<_>>>()?;
        out.insert(a.space.id(x).to_string(), Value::Array(entries));
    }
    Ok(Value::Object(out))
}

pub fn parse_xi_json<'a>(text: &str, space: &'a FiniteMetricSpace) -> Result<XiAssignment<'a>> {
    #[derive(Deserialize)]
    struct Entry {
        support_point: String,
        weight_numerator: u64,
        weight_denominator: u64,
    }
    let raw: HashMap<String, Vec<Entry>> = serde_json::from_str(text)?;
    let mut xi = vec![None; space.len()];
    for (point, entries) in raw {
        let x = space.index_of(&point)?;
        let weights = entries
            .into_iter()
            .map(|e| {
                if e.weight_denominator == 0 {
                    return Err(Error::Precondition(format!("zero denominator in ξ of `{point}`")));
                }
                let w = BigRational::new(BigInt::from(e.weight_numerator), BigInt::from(e.weight_denominator));
                Ok((space.index_of(&e.support_point)?, w))
            })
            .collect::<Result<Vec<_>>>()?;
        xi[x] = Some(SparseProbVector::new(weights)?);
    }
    let got = xi.iter().filter(|v| v.is_some()).count();
    if got != space.len() {
        return Err(Error::PartialMap { expected: space.len(), got });
    }
    XiAssignment::new(space, xi.into_iter().map(|v| v.expect("checked")).collect())
}

/// Serializes a tower level.
pub trait LevelJson {
    fn to_json(&self) -> Value;
}

impl LevelJson for SimplicialComplex {
    /// `{vertices, maximal_simplices, dim_cap}`. The maximal simplices are
    /// the true facets; `dim_cap` records the enumeration ceiling.
    fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices(),
            "maximal_simplices": self.facets().iter().map(|f| self.names(f)).collect::<Vec<_>>(),
            "dim_cap": self.dim_cap(),
        })
    }
}

impl LevelJson for Graph {
    fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices(),
            "edges": self.edges().iter().map(|&(a, b)| [self.vertex(a), self.vertex(b)]).collect::<Vec<_>>(),
        })
    }
}

pub fn complex_json(k: &SimplicialComplex) -> Value {
    k.to_json()
}

/// Reads `{vertices, maximal_simplices, dim_cap}`.
pub fn parse_complex_json(value: &Value) -> Result<SimplicialComplex> {
    #[derive(Deserialize)]
    struct Raw {
        vertices: Vec<String>,
        maximal_simplices: Vec<Vec<String>>,
        dim_cap: usize,
    }
    let raw: Raw = serde_json::from_value(value.clone())?;
    let index: HashMap<&str, usize> = raw.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let facets = raw
        .maximal_simplices
        .iter()
        .map(|f| {
            f.iter()
                .map(|v| index.get(v.as_str()).copied().ok_or_else(|| Error::UnknownPoint(v.clone())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::from_facets(raw.vertices.clone(), facets, raw.dim_cap)
}

fn named_map(source: &[String], target: &[String], map: &[usize]) -> Value {
    Value::Object(map.iter().enumerate().map(|(v, &w)| (source[v].clone(), Value::String(target[w].clone()))).collect())
}

fn read_named_map(value: &Value, source: &[String], target: &[String]) -> Result<Vec<usize>> {
    let obj = value.as_object().ok_or_else(|| Error::Precondition("a map must be a JSON object".into()))?;
    let index: HashMap<&str, usize> = target.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    source
        .iter()
        .map(|v| {
            let w = obj.get(v).and_then(Value::as_str).ok_or_else(|| Error::UnknownPoint(v.clone()))?;
            index.get(w).copied().ok_or_else(|| Error::UnknownPoint(w.to_string()))
        })
        .collect()
}

/// Levels, labels, consecutive bonds by vertex name, and projections when
/// present.
pub fn tower_json<L: TowerLevel + LevelJson>(tower: &Tower<L>) -> Value {
    let bonds: Vec<Value> = tower
        .consecutive_bonds()
        .iter()
        .enumerate()
        .map(|(n, b)| {
            json!({
                "from": n,
                "to": n + 1,
                "map": named_map(tower.level(n).vertex_names(), tower.level(n + 1).vertex_names(), b),
            })
        })
        .collect();
    let projections = tower.space().map(|space| {
        (0..tower.len())
            .map(|n| named_map(tower.level(n).vertex_names(), space.ids(), tower.projection(n).expect("present with space")))
            .collect::<Vec<_>>()
    });
    json!({
        "kind": L::KIND,
        "labels": tower.labels(),
        "levels": (0..tower.len()).map(|n| tower.level(n).to_json()).collect::<Vec<_>>(),
        "bonds": bonds,
        "projections": projections,
    })
}

/// A factorization witness with its middle complex and both maps, by
/// vertex name, so it can be re-verified without the search.
pub fn witness_json(w: &FactorizationWitness, source: &SimplicialComplex, target: &SimplicialComplex) -> Value {
    json!({
        "source_level": w.source_level,
        "target_level": w.target_level,
        "t": w.t,
        "s": w.s,
        "strategy": w.strategy,
        "mid_dim": w.mid_dim,
        "mid": w.mid.to_json(),
        "g": named_map(source.vertices(), w.mid.vertices(), &w.g),
        "h": named_map(w.mid.vertices(), target.vertices(), &w.h),
        "report": w.report,
    })
}

/// Loads a witness against the two complexes it claims to connect and
/// re-runs the contiguity check against `f`; the stored report is replaced
/// by the fresh one.
pub fn load_witness(
    value: &Value,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    f: &[usize],
) -> Result<FactorizationWitness> {
    let field = |k: &str| value.get(k).ok_or_else(|| Error::Precondition(format!("witness lacks `{k}`")));
    let mid = parse_complex_json(field("mid")?)?;
    let g = read_named_map(field("g")?, source.vertices(), mid.vertices())?;
    let h = read_named_map(field("h")?, mid.vertices(), target.vertices())?;
    let report = crate::complex::verify_contiguous_factorization(
        &SimplicialMap::new(source, target, f.to_vec())?,
        &SimplicialMap::new(source, &mid, g.clone())?,
        &SimplicialMap::new(&mid, target, h.clone())?,
    )?;
    Ok(FactorizationWitness {
        source_level: serde_json::from_value(field("source_level")?.clone())?,
        target_level: serde_json::from_value(field("target_level")?.clone())?,
        t: serde_json::from_value(field("t")?.clone())?,
        s: serde_json::from_value(field("s")?.clone())?,
        strategy: serde_json::from_value(field("strategy")?.clone())?,
        mid_dim: mid.dim(),
        mid,
        g,
        h,
        report,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Scale-pair heatmap: row `k`, column `m ≥ k`, one stripe per degree `p`,
/// green where the induced map on `H̃_p` vanishes and red where it does not.
pub fn profile_heatmap_svg(profile: &ConnectivityProfile) -> String {
    const CELL: usize = 48;
    const MARGIN: usize = 64;
    let n_levels = profile.labels.len();
    let stripes = profile.n + 1;
    let size = MARGIN + CELL * n_levels + 8;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect width="{size}" height="{size}" fill="white"/>"#);
    for (i, label) in profile.labels.iter().enumerate() {
        let c = MARGIN + i * CELL + CELL / 2;
        let _ = writeln!(svg, r#"<text x="{c}" y="{}" text-anchor="middle">{}</text>"#, MARGIN - 8, escape(label));
        let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, MARGIN - 8, c + 4, escape(label));
    }
    for k in 0..n_levels {
        for m in 0..n_levels {
            let (x, y) = (MARGIN + m * CELL, MARGIN + k * CELL);
            if m < k {
                let _ = writeln!(svg, r##"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="#e0e0e0" stroke="white"/>"##);
                continue;
            }
            for p in 0..stripes {
                let rank = profile.rank(k, m, p);
                let fill = if rank == 0 { "#2e7d32" } else { "#c62828" };
                let w = CELL / stripes;
                let _ = writeln!(
                    svg,
                    r#"<rect x="{}" y="{y}" width="{w}" height="{CELL}" fill="{fill}"><title>H{p}: {} to {}, rank {rank}</title></rect>"#,
                    x + p * w,
                    escape(&profile.labels[k]),
                    escape(&profile.labels[m]),
                );
            }
            let _ = writeln!(svg, r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="none" stroke="white"/>"#);
        }
    }
    svg.push_str("</svg>\n");
    svg
}
