//! Theory tables on a grid of bulk points.

use rectcft::blocks::{self, block_vector_frac, weight_set, POLE_BAND};
use rectcft::geometry::{bulk_point, model_params, BulkPoint, ModelParams, RectGeometry};
use rectcft::observables::{
    crossing_cluster_density, crossing_probability, density_triple, one_side_wired_density, rho,
    rho_infinity_report, Side, Wiring,
};
use rectcft_sim::{center_value, LatticeSpec, Model};

use crate::config::{wiring_name, Normalize, Quantity, RunConfig};
use crate::error::{config, CliError, Result};
use crate::table::Table;

pub const DEFAULT_NX: usize = 64;

/// Evaluation points: a tensor grid of x columns and y rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub aspect: f64,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// The lattice whose sites the grid reproduces, if registered.
    pub lattice: Option<LatticeSpec>,
}

impl Grid {
    /// Cell centers of a W x H partition of [0, R] x [0, 1].
    pub fn cells(aspect: f64, width: usize, height: usize) -> Self {
        Grid {
            aspect,
            xs: (0..width).map(|i| (i as f64 + 0.5) * aspect / width as f64).collect(),
            ys: (0..height).map(|j| (j as f64 + 0.5) / height as f64).collect(),
            lattice: None,
        }
    }

    /// The continuum positions of a lattice's sites.
    pub fn lattice(spec: &LatticeSpec) -> Self {
        Grid {
            aspect: spec.aspect(),
            xs: (0..spec.width).map(|i| spec.cell_center(i, 0).0).collect(),
            ys: (0..spec.height).map(|j| spec.cell_center(0, j).1).collect(),
            lattice: Some(spec.clone()),
        }
    }

    pub fn interior_x(&self, x: f64) -> bool {
        x > 1e-12 && x < self.aspect - 1e-12
    }

    pub fn interior_y(y: f64) -> bool {
        y > 1e-12 && y < 1.0 - 1e-12
    }

    pub fn is_interior(&self) -> bool {
        self.xs.iter().all(|&x| self.interior_x(x)) && self.ys.iter().all(|&y| Self::interior_y(y))
    }
}

/// A lattice of the given model with explicit dimensions.
pub fn lattice_spec(model: Model, q: u32, width: usize, height: usize, seed: u64, samples: u64) -> LatticeSpec {
    let q = match model {
        Model::Percolation | Model::PercCrossingDensity => 1,
        _ => q,
    };
    LatticeSpec { q, width, height, boundary: model.boundary(), p_bond: rectcft_sim::critical_p_bond(q), seed, samples }
}

pub fn build_grid(cfg: &RunConfig, two_d: bool) -> Result<Grid> {
    let dims = cfg.grid_dims()?;
    if let Some(reg) = cfg.registration {
        let model = Model::from(reg);
        let spec = match (dims, cfg.aspect, cfg.height) {
            (Some((w, h)), _, _) => lattice_spec(model, cfg.q.unwrap_or(2), w, h, 0, 1),
            (None, Some(r), Some(h)) => LatticeSpec::critical(model, cfg.q.unwrap_or(2), r, h, 0, 1)?,
            _ => return config("registration needs grid, or aspect and height"),
        };
        return Ok(Grid::lattice(&spec));
    }
    let r = cfg.aspect.unwrap_or(1.0);
    match dims {
        Some((w, h)) => Ok(Grid::cells(r, w, h)),
        None if two_d => config("this quantity needs a grid (WxH)"),
        None => {
            let mut g = Grid::cells(r, cfg.nx.unwrap_or(DEFAULT_NX), 1);
            g.ys = vec![0.5];
            Ok(g)
        }
    }
}

fn numerical(e: rectcft::Error, p: Option<&BulkPoint>, geom: &RectGeometry, kappa: f64) -> CliError {
    CliError::Numerical { source: e, xi: p.map_or(f64::NAN, |p| p.xi), m: geom.m, kappa }
}

fn kappa_of(cfg: &RunConfig, q: Quantity) -> Result<f64> {
    match (cfg.kappa, q.percolation_only()) {
        (Some(k), true) if (k - 6.0).abs() > 1e-12 => config(format!("{} is defined for kappa = 6 only", q.name())),
        (None, true) => Ok(6.0),
        (Some(k), _) => Ok(k),
        (None, false) => config(format!("{} needs kappa", q.name())),
    }
}

/// The theory table for the configured quantity.
pub fn predict(cfg: &RunConfig) -> Result<Table> {
    let Some(q) = cfg.quantity else { return config("predict needs quantity") };
    let kappa = kappa_of(cfg, q)?;
    let mp = model_params(kappa)?;
    let wiring: Wiring = cfg.wiring.map(Into::into).unwrap_or(Wiring::Independent);
    let normalize = cfg.normalize.unwrap_or(Normalize::None);
    if normalize == Normalize::Center && !q.percolation_only() {
        return config("center normalization applies to p_ax, p_cr and p_cl");
    }

    let mut t = match q {
        Quantity::RhoInfinity => {
            let r = rho_infinity_report(&mp)?;
            let mut t = Table::new(&["kappa", "rho_infinity", "caption_reading", "ope_coefficient"]);
            t.push(vec![kappa, r.displayed, r.caption_reading, r.ope_coefficient]);
            t
        }
        Quantity::Crossing => {
            let geom = RectGeometry::from_aspect(cfg.aspect.unwrap_or(1.0))?;
            let (h, v) = blocks::crossing_weights(&geom, &mp).map_err(|e| numerical(e, None, &geom, kappa))?;
            let p = crossing_probability(&geom, &mp, wiring).map_err(|e| numerical(e, None, &geom, kappa))?;
            let mut t = Table::new(&["aspect", "m", "p_h", "pi_h", "pi_v"]);
            t.push(vec![geom.r, geom.m, p, h, v]);
            t.set_meta("wiring", wiring_name(wiring));
            t.set_meta("aspect", geom.r);
            t
        }
        Quantity::Rho | Quantity::Blocks => {
            let grid = build_grid(cfg, false)?;
            let t = profile(q, &grid, &mp)?;
            grid_meta(t, &grid)
        }
        _ => {
            let grid = build_grid(cfg, true)?;
            let mut t = field(q, &grid, &mp, wiring)?;
            if normalize == Normalize::Center {
                if !grid.is_interior() {
                    return config("center normalization needs a grid without boundary sites");
                }
                let vi = t.columns.len() - 1;
                let vals: Vec<f64> = t.rows.iter().map(|r| r[vi]).collect();
                let c = center_value(&vals, grid.xs.len(), grid.ys.len());
                t.rows.iter_mut().for_each(|r| r[vi] /= c);
            }
            if matches!(q, Quantity::Densities) {
                t.set_meta("wiring", wiring_name(wiring));
            }
            grid_meta(t, &grid)
        }
    };
    let mut meta = vec![
        ("kind".to_string(), "theory".to_string()),
        ("quantity".to_string(), q.name().to_string()),
        ("kappa".to_string(), kappa.to_string()),
    ];
    if q.percolation_only() {
        meta.push(("normalize".into(), if normalize == Normalize::Center { "center" } else { "none" }.into()));
    }
    meta.append(&mut t.meta);
    meta.push(("config".into(), cfg.echo()));
    t.meta = meta;
    Ok(t)
}

fn grid_meta(mut t: Table, grid: &Grid) -> Table {
    t.set_meta("aspect", grid.aspect);
    t.set_meta("width", grid.xs.len());
    t.set_meta("height", grid.ys.len());
    if let Some(l) = &grid.lattice {
        t.set_meta("registration", format!("{:?}", l.boundary));
    }
    t
}

/// y-independent quantities, one row per interior x.
fn profile(q: Quantity, grid: &Grid, mp: &ModelParams) -> Result<Table> {
    let geom = RectGeometry::from_aspect(grid.aspect)?;
    let k = mp.kappa;
    let near_pole = blocks::nearest_pole(k).filter(|p| (k - p).abs() < POLE_BAND);
    let mut t = match q {
        Quantity::Rho => Table::new(&["x", "xi", "rho"]),
        _ => Table::new(&["x", "xi", "g_i", "g_ii", "g_iii", "g_iv", "g_v", "g_vi"]),
    };
    if q == Quantity::Blocks && near_pole.is_some_and(|p| (p - 8.0 / 3.0).abs() < 1e-9) {
        t.set_meta("normalization", "tilde");
    }
    t.set_meta("m", geom.m);
    for &x in grid.xs.iter().filter(|&&x| grid.interior_x(x)) {
        let p = bulk_point(x, 0.5, &geom)?;
        let err = |e| numerical(e, Some(&p), &geom, k);
        match q {
            Quantity::Rho => t.push(vec![x, p.xi, rho(x, &geom, mp).map_err(err)?]),
            _ => {
                let b = match near_pole {
                    Some(pole) => blocks::limit_block_vector(p.xi_frac(), geom.m_frac(), pole),
                    None => block_vector_frac(p.xi_frac(), geom.m_frac(), mp),
                }
                .map_err(err)?;
                t.push(vec![x, p.xi, b.gi, b.gii, b.giii, b.giv, b.gv, b.gvi]);
            }
        }
    }
    Ok(t)
}

/// Quantities that depend on both coordinates, one row per interior
/// grid point in row-major (y outer) order.
fn field(q: Quantity, grid: &Grid, mp: &ModelParams, wiring: Wiring) -> Result<Table> {
    let geom = RectGeometry::from_aspect(grid.aspect)?;
    let k = mp.kappa;
    let mut t = match q {
        Quantity::Weights => {
            Table::new(&["x", "y", "xi", "psi", "prefactor", "pi_a", "pi_br", "pi_bl", "pi_h", "pi_v"])
        }
        Quantity::Densities => Table::new(&["x", "y", "xi", "psi", "p_left", "p_right", "p_both"]),
        _ => Table::new(&["x", "y", "xi", "psi", q.name()]),
    };
    t.set_meta("m", geom.m);
    for &y in grid.ys.iter().filter(|&&y| Grid::interior_y(y)) {
        for &x in grid.xs.iter().filter(|&&x| grid.interior_x(x)) {
            let p = bulk_point(x, y, &geom)?;
            let err = |e| numerical(e, Some(&p), &geom, k);
            let mut row = vec![x, y, p.xi, p.psi];
            match q {
                Quantity::Weights => {
                    let w = weight_set(&p, &geom, mp).map_err(err)?;
                    row.extend([w.prefactor, w.pi_a, w.pi_br, w.pi_bl, w.pi_h, w.pi_v]);
                }
                Quantity::Densities => {
                    let d = density_triple(&p, &geom, mp, wiring).map_err(err)?;
                    row.extend([d.p_left, d.p_right, d.p_both]);
                }
                Quantity::PAx => row.push(crossing_cluster_density(&p, &geom).map_err(err)?),
                Quantity::PCr => row.push(one_side_wired_density(&p, &geom, Side::Right).map_err(err)?),
                Quantity::PCl => row.push(one_side_wired_density(&p, &geom, Side::Left).map_err(err)?),
                _ => unreachable!("not a field quantity"),
            }
            t.push(row);
        }
    }
    Ok(t)
}
