//! Monte Carlo runs and their per-site frequency tables.

use std::f64::consts::PI;
use std::time::Instant;

use rectcft::observables::Wiring;
use rectcft_sim::{run, Finalized, LatticeSpec, Model};
use serde::{Deserialize, Serialize};

use crate::config::{wiring_name, RunConfig};
use crate::error::{config, Result};
use crate::predict::lattice_spec;
use crate::table::Table;

pub const DEFAULT_SAMPLES: u64 = 10_000;
pub const DEFAULT_HEIGHT: usize = 64;

/// kappa of the clusters a model measures: FK clusters of the q-state
/// Potts model sit on the dense branch with n = sqrt(q), spin clusters on
/// the dual dilute branch 16/kappa.
pub fn model_kappa(model: Model, q: u32) -> f64 {
    let dense = |q: u32| 4.0 * PI / (PI - ((q as f64).sqrt() / 2.0).acos());
    match model {
        Model::Percolation | Model::PercCrossingDensity => 6.0,
        Model::PottsFk => dense(q),
        Model::PottsSpin => 16.0 / dense(q),
    }
}

pub fn model_wiring(model: Model) -> Option<Wiring> {
    match model {
        Model::Percolation | Model::PottsFk => Some(Wiring::Independent),
        Model::PottsSpin => Some(Wiring::Mutual),
        Model::PercCrossingDensity => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub model: String,
    pub q: u32,
    pub kappa: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wiring: Option<String>,
    pub width: usize,
    pub height: usize,
    pub aspect: f64,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub crossing_freq: f64,
    pub crossing_stderr: f64,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone)]
pub struct SimOutput {
    pub spec: LatticeSpec,
    pub model: Model,
    pub result: Finalized,
    pub table: Table,
    pub summary: Summary,
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// The lattice a simulate config describes.
pub fn sim_spec(cfg: &RunConfig) -> Result<(Model, LatticeSpec)> {
    let Some(model) = cfg.model.map(Model::from) else { return config("simulate needs model") };
    let q = match (model, cfg.q) {
        (Model::Percolation | Model::PercCrossingDensity, Some(q)) if q != 1 => {
            return config(format!("{} runs at q = 1, got q = {q}", model.name()));
        }
        (Model::Percolation | Model::PercCrossingDensity, _) => 1,
        (_, q) => q.unwrap_or(2),
    };
    let seed = cfg.seed.unwrap_or(0);
    let samples = cfg.samples.unwrap_or(DEFAULT_SAMPLES);
    let spec = match cfg.grid_dims()? {
        Some((w, h)) => lattice_spec(model, q, w, h, seed, samples),
        None => LatticeSpec::critical(
            model,
            q,
            cfg.aspect.unwrap_or(1.0),
            cfg.height.unwrap_or(DEFAULT_HEIGHT),
            seed,
            samples,
        )?,
    };
    spec.validate_for(model)?;
    Ok((model, spec))
}

pub fn simulate(cfg: &RunConfig) -> Result<SimOutput> {
    let (model, spec) = sim_spec(cfg)?;
    let workers = cfg.workers.unwrap_or_else(default_workers);
    let start = Instant::now();
    let acc = run(model, &spec, workers)?;
    let wall = start.elapsed().as_secs_f64();
    let result = acc.finalize()?;
    let kappa = model_kappa(model, spec.q);
    let wiring = model_wiring(model);

    let mut t = match model {
        Model::PercCrossingDensity => Table::new(&["x", "y", "wetted", "wetted_normalized"]),
        _ => Table::new(&["x", "y", "p_left", "p_right", "p_both"]),
    };
    t.set_meta("kind", "simulation");
    t.set_meta("model", model.name());
    t.set_meta("q", spec.q);
    t.set_meta("kappa", kappa);
    if let Some(w) = wiring {
        t.set_meta("wiring", wiring_name(w));
    }
    t.set_meta("width", spec.width);
    t.set_meta("height", spec.height);
    t.set_meta("aspect", spec.aspect());
    t.set_meta("samples", result.n_samples);
    t.set_meta("seed", spec.seed);
    t.set_meta("workers", workers);
    t.set_meta("crossing_freq", result.crossing_freq);
    t.set_meta("crossing_stderr", result.crossing_stderr);
    t.set_meta("config", cfg.echo());

    let normalized = result.wetted_normalized();
    for j in 0..spec.height {
        for i in 0..spec.width {
            let (x, y) = spec.cell_center(i, j);
            let s = spec.index(i, j);
            match (&result.wetted, model) {
                (Some(w), Model::PercCrossingDensity) => {
                    t.push(vec![x, y, w[s], normalized.as_ref().map_or(f64::NAN, |n| n[s])])
                }
                _ => t.push(vec![x, y, result.p_left[s], result.p_right[s], result.p_both[s]]),
            }
        }
    }

    let summary = Summary {
        model: model.name().into(),
        q: spec.q,
        kappa,
        wiring: wiring.map(|w| wiring_name(w).into()),
        width: spec.width,
        height: spec.height,
        aspect: spec.aspect(),
        samples: result.n_samples,
        seed: spec.seed,
        workers,
        crossing_freq: result.crossing_freq,
        crossing_stderr: result.crossing_stderr,
        wall_time_s: wall,
    };
    Ok(SimOutput { spec, model, result, table: t, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_of_models() {
        let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
        assert!(close(model_kappa(Model::PottsFk, 2), 16.0 / 3.0));
        assert!(close(model_kappa(Model::PottsFk, 3), 24.0 / 5.0));
        assert!(close(model_kappa(Model::PottsSpin, 2), 3.0));
        assert!(close(model_kappa(Model::PottsSpin, 3), 10.0 / 3.0));
        assert!(close(model_kappa(Model::PottsFk, 4), 4.0));
        assert_eq!(model_kappa(Model::Percolation, 1), 6.0);
    }
}
