use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, ensure, Context, Result};
use coarse_core::asdim::{self, AsdimReport};
use coarse_core::cayley::{self, FreeGroup, GroupOracle, IntegerLattice};
use coarse_core::io::{self as cio, LevelJson};
use coarse_core::property_a::{self, parse_rational, XiAssignment};
use coarse_core::tower::{self, Tower};
use coarse_core::{homology, ExtDist, SimplicialComplex};
use num::BigRational;
use serde_json::{json, Value};

use crate::config::RunConfig;

/// Report files of one run, plus a sidecar log line.
pub struct Output {
    dir: PathBuf,
    written: Vec<String>,
}

impl Output {
    pub fn new(dir: PathBuf) -> Result<Self> {
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Output { dir, written: Vec::new() })
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.written.push(name.to_string());
        Ok(())
    }

    fn json(&mut self, name: &str, value: &Value) -> Result<()> {
        self.write(name, &cio::to_json_string(value)?)
    }

    /// Appends `<unix seconds> <command>: <files>` to `run.log`.
    pub fn finish(self, command: &str) -> Result<Vec<String>> {
        let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let path = self.dir.join("run.log");
        let mut log = fs::OpenOptions::new().create(true).append(true).open(&path)?;
        writeln!(log, "{stamp} {command}: {}", self.written.join(", "))?;
        for name in &self.written {
            println!("{}", self.dir.join(name).display());
        }
        Ok(self.written)
    }
}

fn require_scales(cfg: &RunConfig) -> Result<&[ExtDist]> {
    ensure!(!cfg.scales.is_empty(), "--scales is required");
    Ok(&cfg.scales)
}

pub fn cmd_rips(cfg: &RunConfig, out: &mut Output) -> Result<()> {
    let space = cfg.load_space()?;
    let scales = require_scales(cfg)?;
    let tower = tower::rips_tower(&space, scales, cfg.dim_cap).context("building the Rips tower")?;
    let mut levels = Vec::new();
    for (i, &t) in scales.iter().enumerate() {
        let graph = coarse_core::graph::rips_graph_t(&space, t)?;
        let complex = tower.level(i);
        levels.push(json!({
            "scale": t,
            "graph": graph.to_json(),
            "complex": complex.to_json(),
            "f_vector": complex.f_vector(cfg.dim_cap),
        }));
        out.write(&format!("rips_{i}.dot"), &graph.to_dot(&format!("rips_{t}")))?;
    }
    let report = tower::verify_coarse_complex(&tower);
    out.json(
        "rips.json",
        &json!({
            "command": "rips",
            "points": space.len(),
            "dim_cap": cfg.dim_cap,
            "levels": levels,
            "tower_report": report,
            "passes": report.passes(),
        }),
    )
}

pub fn cmd_cech(cfg: &RunConfig, out: &mut Output) -> Result<()> {
    let space = cfg.load_space()?;
    let path = cfg.covers.as_ref().context("--covers is required")?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let covers = cio::parse_cover_ladder_json(&text, &space).with_context(|| format!("parsing {}", path.display()))?;
    let tower = tower::cech_tower(&space, &covers, cfg.dim_cap).context("building the Cech tower")?;
    let report = tower::verify_coarse_complex(&tower);
    let projections = tower.verify_projections()?;
    for i in 0..tower.len() {
        out.write(&format!("cech_{i}.dot"), &tower.level(i).to_dot(&format!("nerve_{i}")))?;
    }
    out.json(
        "cech.json",
        &json!({
            "command": "cech",
            "tower": cio::tower_json(&tower),
            "tower_report": report,
            "projection_report": projections,
            "passes": report.passes() && projections.passes(),
        }),
    )
}

pub fn cmd_profile(cfg: &RunConfig, out: &mut Output) -> Result<()> {
    let space = cfg.load_space()?;
    let tower = tower::rips_tower(&space, require_scales(cfg)?, cfg.dim_cap)?;
    let profile = homology::connectivity_profile(&tower, cfg.p_max, cfg.prime).context("computing the profile")?;
    out.json("profile.json", &json!({ "command": "profile", "passes": profile.passes(), "profile": profile }))?;
    out.write("profile.svg", &cio::profile_heatmap_svg(&profile))
}

/// The asdim table with every witness serialized in full and reloaded
/// through an independent contiguity check before it is written.
fn asdim_json(report: &AsdimReport, tower: &Tower<SimplicialComplex>) -> Result<Value> {
    let mut table = Vec::new();
    for row in &report.table {
        let mut cells = Vec::new();
        for entry in row {
            let witness = match &entry.witness {
                Some(w) => {
                    let (k, m) = (w.source_level, w.target_level);
                    let value = cio::witness_json(w, tower.level(k), tower.level(m));
                    let again = cio::load_witness(&value, tower.level(k), tower.level(m), &tower.bond(k, m))?;
                    ensure!(again.verified(), "witness at level {k} into {m} failed re-verification");
                    value
                }
                None => Value::Null,
            };
            cells.push(json!({ "n": entry.n, "level": entry.level, "witness": witness }));
        }
        table.push(Value::Array(cells));
    }
    Ok(json!({
        "labels": report.labels,
        "n_max": report.n_max,
        "headline": report.headline,
        "note": report.note,
        "table": table,
    }))
}

pub fn cmd_asdim(cfg: &RunConfig, n_max: usize, out: &mut Output) -> Result<()> {
    let space = cfg.load_space()?;
    let tower = tower::rips_tower(&space, require_scales(cfg)?, cfg.dim_cap)?;
    let report = asdim::asdim_report(&tower, n_max, cfg.budget).context("searching for factorizations")?;
    println!("asdim headline: {}", report.headline.map_or("unknown".to_string(), |h| h.to_string()));
    out.json("asdim.json", &json!({ "command": "asdim", "asdim": asdim_json(&report, &tower)? }))
}

pub fn cmd_tree_probe(cfg: &RunConfig, out: &mut Output) -> Result<()> {
    let space = cfg.load_space()?;
    let scales = require_scales(cfg)?;
    let report = asdim::coarse_tree_probe(&space, scales, cfg.dim_cap, cfg.budget).context("running the probe")?;
    let tower = tower::rips_tower(&space, scales, cfg.dim_cap)?;
    println!("tree probe: {}", if report.pass { "PASS" } else { "FAIL" });
    out.json(
        "tree_probe.json",
        &json!({
            "command": "tree-probe",
            "label": report.label,
            "verdict": if report.pass { "PASS" } else { "FAIL" },
            "asdim_headline": report.asdim_headline,
            "blocking": report.blocking,
            "asdim": asdim_json(&report.asdim, &tower)?,
            "connectivity": report.connectivity,
        }),
    )
}

pub struct PropaParams {
    pub xi: Option<PathBuf>,
    pub r: ExtDist,
    pub eps: String,
    pub s: ExtDist,
}

fn load_xi<'a>(path: &Option<PathBuf>, space: &'a coarse_core::FiniteMetricSpace) -> Result<XiAssignment<'a>> {
    let path = path.as_ref().context("--xi is required")?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    cio::parse_xi_json(&text, space).with_context(|| format!("parsing {}", path.display()))
}

fn eps_of(p: &PropaParams) -> Result<BigRational> {
    parse_rational(&p.eps).context("parsing --eps")
}

pub fn cmd_propa_verify(cfg: &RunConfig, p: &PropaParams, out: &mut Output) -> Result<()> {
    let space = cfg.load_space()?;
    let xi = load_xi(&p.xi, &space)?;
    let report = property_a::verify_xi(&xi, p.r, &eps_of(p)?, p.s);
    println!("worst pair value: {}", report.worst_value.exact);
    out.json(
        "propa_verify.json",
        &json!({ "command": "propa verify", "R": p.r, "eps": p.eps, "S": p.s, "report": report }),
    )
}

pub fn cmd_propa_build_uniform(cfg: &RunConfig, s: ExtDist, truncate: Option<&str>, out: &mut Output) -> Result<()> {
    let space = cfg.load_space()?;
    let mut xi = property_a::uniform_ball_xi(&space, s);
    if let Some(eps) = truncate {
        xi = property_a::truncate_xi(&xi, &parse_rational(eps).context("parsing --truncate")?);
    }
    let value = cio::xi_json(&xi)?;
    let again = cio::parse_xi_json(&value.to_string(), &space)?;
    ensure!(again.vectors() == xi.vectors(), "certificate did not survive serialization");
    out.json("xi.json", &value)
}

pub fn cmd_propa_bridge(cfg: &RunConfig, p: &PropaParams, out: &mut Output) -> Result<()> {
    let space = cfg.load_space()?;
    let xi = load_xi(&p.xi, &space)?;
    let eps = eps_of(p)?;
    let certificate = property_a::verify_xi(&xi, p.r, &eps, p.s);
    let bridge = if certificate.pass {
        let map = property_a::xi_to_realization_map(&xi, p.r, &eps, p.s, cfg.dim_cap)?;
        let back = property_a::realization_map_to_xi(&space, &map.values, p.r, &eps, p.s)?;
        let values = cio::xi_json(&XiAssignment::new(&space, map.values.clone())?)?;
        json!({
            "scales": map.tower.labels(),
            "values": values,
            "complex_report": map.report,
            "pulled_back": {
                "report": back.report,
                "identical": back.xi.vectors() == xi.vectors(),
                "anchored_at_S": back.anchored,
            },
        })
    } else {
        Value::Null
    };
    out.json(
        "propa_bridge.json",
        &json!({
            "command": "propa bridge",
            "R": p.r,
            "eps": p.eps,
            "S": p.s,
            "certificate": certificate,
            "bridge": bridge,
        }),
    )
}

pub struct CayleyParams {
    pub group: String,
    pub rank: usize,
    pub radius: u32,
    pub levels: Vec<u32>,
}

fn cayley_report<O: GroupOracle>(oracle: &O, p: &CayleyParams) -> Result<Value> {
    let sets: Vec<Vec<O::Element>> = p.levels.iter().map(|&k| cayley::ball_generators(oracle, k)).collect();
    let tower = tower::cayley_tower(oracle, &sets, p.radius)?;
    let report = tower::verify_coarse_graph(&tower);
    Ok(json!({
        "command": "cayley",
        "group": p.group,
        "rank": p.rank,
        "radius": p.radius,
        "generator_balls": p.levels,
        "truncation": "every level lives on the same word ball of the super-generators; bonds are identities",
        "tower": cio::tower_json(&tower),
        "tower_report": report,
        "passes": report.passes(),
    }))
}

pub fn cmd_cayley(p: &CayleyParams, out: &mut Output) -> Result<()> {
    if p.levels.is_empty() || p.levels.windows(2).any(|w| w[0] >= w[1]) || p.levels[0] == 0 {
        bail!("--levels must be strictly ascending positive integers");
    }
    let value = match p.group.as_str() {
        "lattice" => cayley_report(&IntegerLattice { dim: p.rank }, p)?,
        "free" => cayley_report(&FreeGroup { rank: p.rank }, p)?,
        other => bail!("unknown group `{other}`; expected lattice or free"),
    };
    out.json("cayley.json", &value)
}
