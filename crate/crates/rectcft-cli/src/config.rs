//! Run configuration: a JSON document, overridden field by field by
//! command-line flags.

use std::path::Path;

use clap::{Args, ValueEnum};
use rectcft::observables::Wiring;
use rectcft_sim::Model;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{config, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Quantity {
    Blocks,
    Weights,
    Densities,
    Rho,
    RhoInfinity,
    Crossing,
    PAx,
    PCr,
    PCl,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Blocks => "blocks",
            Quantity::Weights => "weights",
            Quantity::Densities => "densities",
            Quantity::Rho => "rho",
            Quantity::RhoInfinity => "rho_infinity",
            Quantity::Crossing => "crossing",
            Quantity::PAx => "p_ax",
            Quantity::PCr => "p_cr",
            Quantity::PCl => "p_cl",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Quantity::value_variants().iter().copied().find(|q| q.name() == s)
    }

    /// Percolation-only quantities.
    pub fn percolation_only(self) -> bool {
        matches!(self, Quantity::PAx | Quantity::PCr | Quantity::PCl)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum ModelName {
    Percolation,
    PottsFk,
    PottsSpin,
    PercCrossingDensity,
}

impl From<ModelName> for Model {
    fn from(m: ModelName) -> Model {
        match m {
            ModelName::Percolation => Model::Percolation,
            ModelName::PottsFk => Model::PottsFk,
            ModelName::PottsSpin => Model::PottsSpin,
            ModelName::PercCrossingDensity => Model::PercCrossingDensity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum WiringName {
    Independent,
    Mutual,
}

impl From<WiringName> for Wiring {
    fn from(w: WiringName) -> Wiring {
        match w {
            WiringName::Independent => Wiring::Independent,
            WiringName::Mutual => Wiring::Mutual,
        }
    }
}

pub fn wiring_name(w: Wiring) -> &'static str {
    match w {
        Wiring::Independent => "independent",
        Wiring::Mutual => "mutual",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Normalize {
    None,
    Center,
}

/// A positive real written as a decimal or as a ratio "p/q".
pub fn parse_real(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
            let b: f64 = b.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            a / b
        }
        None => s.parse().map_err(|_| format!("not a number: {s:?}"))?,
    };
    if !v.is_finite() {
        return Err(format!("not finite: {s:?}"));
    }
    Ok(v)
}

fn real_or_ratio<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<f64>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Text(String),
    }
    match Option::<Raw>::deserialize(d)? {
        None => Ok(None),
        Some(Raw::Num(v)) => Ok(Some(v)),
        Some(Raw::Text(s)) => parse_real(&s).map(Some).map_err(serde::de::Error::custom),
    }
}

/// "WxH" in sites or cells.
pub fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(|| format!("grid {s:?} is not of the form WxH"))?;
    let w: usize = w.trim().parse().map_err(|_| format!("bad width in grid {s:?}"))?;
    let h: usize = h.trim().parse().map_err(|_| format!("bad height in grid {s:?}"))?;
    if w == 0 || h == 0 {
        return Err(format!("grid {s:?} is empty"));
    }
    Ok((w, h))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantity: Option<Quantity>,
    #[serde(default, deserialize_with = "real_or_ratio", skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, deserialize_with = "real_or_ratio", skip_serializing_if = "Option::is_none")]
    pub aspect: Option<f64>,
    /// "WxH"
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    /// Number of x points for y-independent quantities.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nx: Option<usize>,
    /// Lattice height when the width follows from the aspect ratio.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wiring: Option<WiringName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalize: Option<Normalize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Evaluate theory at the sites of this model's lattice.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub registration: Option<ModelName>,
    /// x-window, in units of R, over which compare takes the rho maximum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[f64; 2]>,
    /// x positions at which compare reports the P_Ax relative error.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probes: Option<Vec<f64>>,
}

/// Flags shared by the subcommands; each one overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// JSON config file
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,
    #[arg(long, value_enum)]
    pub model: Option<ModelName>,
    #[arg(long, value_enum)]
    pub quantity: Option<Quantity>,
    /// SLE parameter, decimal or ratio such as 16/3
    #[arg(long, value_parser = parse_real)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long, value_parser = parse_real)]
    pub aspect: Option<f64>,
    /// WxH
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long)]
    pub height: Option<usize>,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub wiring: Option<WiringName>,
    #[arg(long = "out")]
    pub output: Option<String>,
    #[arg(long, value_enum)]
    pub normalize: Option<Normalize>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, value_enum)]
    pub registration: Option<ModelName>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Config file (if any) with the flags applied on top.
    pub fn resolve(args: &ConfigArgs) -> Result<Self> {
        let mut c = match &args.config {
            Some(p) => Self::from_file(p)?,
            None => RunConfig::default(),
        };
        macro_rules! over {
            ($($f:ident),*) => { $( if args.$f.is_some() { c.$f = args.$f.clone(); } )* };
        }
        over!(model, quantity, kappa, q, aspect, grid, nx, height, samples, seed, wiring, output, normalize, workers,
            tolerance, registration);
        c.validate()?;
        Ok(c)
    }

    /// Checks that do not depend on the subcommand.
    pub fn validate(&self) -> Result<()> {
        if let Some(k) = self.kappa {
            if !(k > 0.0) {
                return config(format!("kappa must be positive, got {k}"));
            }
        }
        if let Some(r) = self.aspect {
            let (lo, hi) = rectcft::geometry::ASPECT_RANGE;
            if !(lo..=hi).contains(&r) {
                return config(format!("aspect {r} outside [{lo}, {hi}]"));
            }
        }
        if let Some(g) = &self.grid {
            parse_grid(g).map_err(CliError::Config)?;
        }
        for (v, name) in [(self.nx, "nx"), (self.height, "height"), (self.workers, "workers")] {
            if v == Some(0) {
                return config(format!("{name} must be positive"));
            }
        }
        if self.samples == Some(0) {
            return config("samples must be positive");
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0) {
                return config(format!("tolerance must be positive, got {t}"));
            }
        }
        if let Some([a, b]) = self.window {
            if !(0.0 <= a && a < b && b <= 1.0) {
                return config(format!("window [{a}, {b}] must satisfy 0 <= lo < hi <= 1"));
            }
        }
        Ok(())
    }

    pub fn grid_dims(&self) -> Result<Option<(usize, usize)>> {
        self.grid.as_deref().map(parse_grid).transpose().map_err(CliError::Config)
    }

    /// The config as one line of JSON, for metadata echoes.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}
