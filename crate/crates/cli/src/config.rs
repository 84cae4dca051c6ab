use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use coarse_core::metric::Norm;
use coarse_core::{io, ExtDist, FiniteMetricSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    CsvMatrix,
    CsvPoints,
    Edgelist,
    CoverJson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Euclidean,
    Chebyshev,
    Manhattan,
}

impl From<MetricArg> for Norm {
    fn from(m: MetricArg) -> Norm {
        match m {
            MetricArg::Euclidean => Norm::Euclidean,
            MetricArg::Chebyshev => Norm::Chebyshev,
            MetricArg::Manhattan => Norm::Manhattan,
        }
    }
}

/// Flags shared by every subcommand.
#[derive(Args, Clone, Debug)]
pub struct CommonArgs {
    /// Input file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    /// Norm for point clouds.
    #[arg(long, value_enum, default_value = "euclidean")]
    pub metric: MetricArg,
    /// Tie tolerance for distance comparisons.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Dimension ceiling for clique enumeration.
    #[arg(long, default_value_t = 3)]
    pub dim_cap: usize,
    /// Work budget for searches.
    #[arg(long, default_value_t = 200_000)]
    pub budget: usize,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

/// Validated run parameters.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: Option<(PathBuf, InputFormat)>,
    pub norm: Norm,
    pub tolerance: f64,
    pub scales: Vec<ExtDist>,
    pub covers: Option<PathBuf>,
    pub dim_cap: usize,
    pub prime: u32,
    pub p_max: usize,
    pub budget: usize,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn new(common: &CommonArgs) -> Result<Self> {
        if common.budget == 0 {
            bail!("--budget must be positive");
        }
        if !(common.tolerance >= 0.0 && common.tolerance.is_finite()) {
            bail!("--tolerance must be a finite nonnegative number");
        }
        let input = match &common.input {
            Some(path) => Some((path.clone(), common.format.map_or_else(|| infer_format(path), Ok)?)),
            None => None,
        };
        Ok(RunConfig {
            input,
            norm: common.metric.into(),
            tolerance: common.tolerance,
            scales: Vec::new(),
            covers: None,
            dim_cap: common.dim_cap,
            prime: 2,
            p_max: 1,
            budget: common.budget,
            out: common.out.clone(),
        })
    }

    pub fn with_scales(mut self, text: &str) -> Result<Self> {
        self.scales = parse_scales(text)?;
        Ok(self)
    }

    pub fn with_homology(mut self, prime: u32, p_max: usize) -> Result<Self> {
        if self.dim_cap < p_max {
            bail!("--dim-cap {} is below --pmax {p_max}", self.dim_cap);
        }
        self.prime = prime;
        self.p_max = p_max;
        Ok(self)
    }

    pub fn load_space(&self) -> Result<FiniteMetricSpace> {
        let Some((path, format)) = &self.input else {
            bail!("--input is required");
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let space = match format {
            InputFormat::CsvMatrix => io::parse_distance_csv(&text),
            InputFormat::CsvPoints => io::parse_points_csv(&text, self.norm),
            InputFormat::Edgelist => io::parse_edge_list(&text).map(|g| coarse_core::graph::graph_metric(&g)),
            InputFormat::CoverJson => bail!("cover JSON describes covers, not points; pass it with --covers"),
        }
        .with_context(|| format!("parsing {}", path.display()))?;
        Ok(space.with_tolerance(self.tolerance))
    }
}

fn infer_format(path: &Path) -> Result<InputFormat> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => Ok(InputFormat::CsvMatrix),
        Some("edges" | "txt") => Ok(InputFormat::Edgelist),
        Some("json") => Ok(InputFormat::CoverJson),
        _ => bail!("cannot infer the format of {}; pass --format", path.display()),
    }
}

/// Comma-separated, strictly ascending scales.
pub fn parse_scales(text: &str) -> Result<Vec<ExtDist>> {
    let scales = text
        .split(',')
        .map(|s| s.trim().parse::<ExtDist>().map_err(|_| anyhow::anyhow!("not a scale: `{}`", s.trim())))
        .collect::<Result<Vec<_>>>()?;
    if scales.is_empty() {
        bail!("the scale ladder is empty");
    }
    if scales.windows(2).any(|w| w[0] >= w[1]) {
        bail!("the scale ladder must be strictly ascending, got {text}");
    }
    Ok(scales)
}
