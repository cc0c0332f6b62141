//! Theory table against a simulation table (or another theory table).

use std::collections::HashMap;

use rectcft::geometry::model_params;
use rectcft::observables::{rho_from_measured, DensityTriple, Wiring};
use serde::Serialize;

use crate::config::{Quantity, RunConfig};
use crate::error::{config, CliError, Result};
use crate::table::Table;

pub const RHO_TOLERANCE: f64 = 0.02;
pub const RHO_WINDOW: [f64; 2] = [0.3, 0.7];
pub const P_AX_TOLERANCE: f64 = 0.03;
pub const P_AX_PROBES: [f64; 3] = [0.25, 0.5, 0.75];
pub const FIELD_TOLERANCE: f64 = 1e-12;

/// Coordinates agreeing to 1e-9 are the same point.
fn key(v: f64) -> i64 {
    (v * 1e9).round() as i64
}

#[derive(Debug, Clone, Serialize)]
pub struct RhoColumnReport {
    pub x: f64,
    pub theory: f64,
    pub mean: f64,
    pub sd: f64,
    pub rows: usize,
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RhoReport {
    pub kappa: f64,
    pub aspect: f64,
    pub window: [f64; 2],
    pub tolerance: f64,
    pub columns: Vec<RhoColumnReport>,
    pub max_deviation: f64,
    pub max_deviation_at: f64,
    pub max_sd: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PaxReport {
    pub aspect: f64,
    pub tolerance: f64,
    /// (x, y-averaged relative error)
    pub columns: Vec<[f64; 2]>,
    /// (y, x-averaged relative error)
    pub rows: Vec<[f64; 2]>,
    /// (x, relative error interpolated between the neighboring columns)
    pub probes: Vec<[f64; 2]>,
    pub max_probe_error: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldColumnReport {
    pub column: String,
    pub max_abs: f64,
    pub max_rel: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldReport {
    pub quantity: String,
    pub tolerance: f64,
    pub columns: Vec<FieldColumnReport>,
    pub max_abs: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Report {
    Rho(RhoReport),
    PAx(PaxReport),
    Field(FieldReport),
}

impl Report {
    pub fn pass(&self) -> bool {
        match self {
            Report::Rho(r) => r.pass,
            Report::PAx(r) => r.pass,
            Report::Field(r) => r.pass,
        }
    }
}

fn col(t: &Table, name: &str, which: &str) -> Result<usize> {
    t.column(name).ok_or_else(|| CliError::GridMismatch(format!("{which} table has no column {name:?}")))
}

fn meta_f64(t: &Table, key: &str, which: &str) -> Result<f64> {
    t.meta_f64(key).ok_or_else(|| CliError::Config(format!("{which} table lacks metadata {key:?}")))
}

fn check_same(a: f64, b: f64, what: &str) -> Result<()> {
    if (a - b).abs() > 1e-9 * a.abs().max(1.0) {
        return Err(CliError::GridMismatch(format!("{what} differs: {a} vs {b}")));
    }
    Ok(())
}

pub fn compare(theory: &Table, other: &Table, cfg: &RunConfig) -> Result<Report> {
    if theory.meta("kind") != Some("theory") {
        return config("the first table must be a theory table");
    }
    let quantity = theory.meta("quantity").and_then(Quantity::from_name);
    match quantity {
        Some(Quantity::Rho) => compare_rho(theory, other, cfg).map(Report::Rho),
        Some(Quantity::PAx) => compare_p_ax(theory, other, cfg).map(Report::PAx),
        Some(q) => compare_fields(q, theory, other, cfg).map(Report::Field),
        None => config("theory table names no known quantity"),
    }
}

fn mean_sd(v: &[f64]) -> (f64, f64) {
    if v.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let k = v.len() as f64;
    let mean = v.iter().sum::<f64>() / k;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0).max(1.0);
    (mean, var.sqrt())
}

/// rho values of the other table, grouped by x.
fn rho_samples(other: &Table, kappa: f64) -> Result<HashMap<i64, Vec<f64>>> {
    let xi = col(other, "x", "second")?;
    let mut groups: HashMap<i64, Vec<f64>> = HashMap::new();
    if let Some(ri) = other.column("rho") {
        for r in &other.rows {
            groups.entry(key(r[xi])).or_default().push(r[ri]);
        }
        return Ok(groups);
    }
    let k_other = meta_f64(other, "kappa", "simulation")?;
    check_same(kappa, k_other, "kappa")?;
    let pc = meta_f64(other, "crossing_freq", "simulation")?;
    let wiring = match other.meta("wiring") {
        Some("independent") => Wiring::Independent,
        Some("mutual") => Wiring::Mutual,
        _ => return config("simulation table has no wiring; rho needs a wired-side run"),
    };
    let mp = model_params(kappa)?;
    let (l, r_, b) = (col(other, "p_left", "simulation")?, col(other, "p_right", "simulation")?, col(other, "p_both", "simulation")?);
    for r in &other.rows {
        let d = DensityTriple { p_left: r[l], p_right: r[r_], p_both: r[b], wiring };
        let e = groups.entry(key(r[xi])).or_default();
        if let Ok(v) = rho_from_measured(&d, pc, &mp) {
            e.push(v);
        }
    }
    Ok(groups)
}

fn compare_rho(theory: &Table, other: &Table, cfg: &RunConfig) -> Result<RhoReport> {
    let kappa = meta_f64(theory, "kappa", "theory")?;
    let aspect = meta_f64(theory, "aspect", "theory")?;
    if let Some(a) = other.meta_f64("aspect") {
        check_same(aspect, a, "aspect")?;
    }
    let window = cfg.window.unwrap_or(RHO_WINDOW);
    let tolerance = cfg.tolerance.unwrap_or(RHO_TOLERANCE);
    let groups = rho_samples(other, kappa)?;
    let (xc, rc) = (col(theory, "x", "theory")?, col(theory, "rho", "theory")?);
    let mut columns = Vec::with_capacity(theory.rows.len());
    for r in &theory.rows {
        let (x, th) = (r[xc], r[rc]);
        let g = groups.get(&key(x)).ok_or_else(|| CliError::GridMismatch(format!("no column at x = {x}")))?;
        let (mean, sd) = mean_sd(g);
        columns.push(RhoColumnReport { x, theory: th, mean, sd, rows: g.len(), deviation: (mean - th).abs() });
    }
    let inside: Vec<&RhoColumnReport> =
        columns.iter().filter(|c| (window[0]..=window[1]).contains(&(c.x / aspect))).collect();
    let (mut max_dev, mut at, mut max_sd) = (0.0f64, f64::NAN, 0.0f64);
    for c in &inside {
        // NaN marks a column without usable rows, and fails the comparison
        if !(c.deviation <= max_dev) {
            max_dev = if c.deviation.is_nan() { f64::INFINITY } else { c.deviation };
            at = c.x;
        }
        if c.sd > max_sd {
            max_sd = c.sd;
        }
    }
    let pass = !inside.is_empty() && max_dev <= tolerance;
    Ok(RhoReport {
        kappa,
        aspect,
        window,
        tolerance,
        columns,
        max_deviation: max_dev,
        max_deviation_at: at,
        max_sd,
        pass,
    })
}

/// Groups (coordinate, value) pairs by coordinate, keeping first-seen order.
fn group_mean(pairs: impl Iterator<Item = (f64, f64)>) -> Vec<[f64; 2]> {
    let mut order: Vec<(f64, f64, usize)> = Vec::new();
    let mut idx: HashMap<i64, usize> = HashMap::new();
    for (c, v) in pairs {
        let i = *idx.entry(key(c)).or_insert_with(|| {
            order.push((c, 0.0, 0));
            order.len() - 1
        });
        order[i].1 += v;
        order[i].2 += 1;
    }
    order.into_iter().map(|(c, s, n)| [c, s / n as f64]).collect()
}

/// Linear interpolation in a table sorted by its first entry, clamped at the ends.
fn interpolate(table: &[[f64; 2]], x: f64) -> f64 {
    match table.iter().position(|p| p[0] >= x) {
        None => table.last().map_or(f64::NAN, |p| p[1]),
        Some(0) => table[0][1],
        Some(i) => {
            let ([x0, y0], [x1, y1]) = (table[i - 1], table[i]);
            y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        }
    }
}

fn compare_p_ax(theory: &Table, other: &Table, cfg: &RunConfig) -> Result<PaxReport> {
    if theory.meta("normalize") != Some("center") {
        return config("compare P_Ax against a center-normalized theory table");
    }
    let aspect = meta_f64(theory, "aspect", "theory")?;
    if let Some(a) = other.meta_f64("aspect") {
        check_same(aspect, a, "aspect")?;
    }
    let ov = match (other.column("wetted_normalized"), other.column("p_ax")) {
        (Some(i), _) => i,
        (None, Some(i)) if other.meta("normalize") == Some("center") => i,
        _ => return config("second table has no center-normalized P_Ax field"),
    };
    let (ox, oy) = (col(other, "x", "second")?, col(other, "y", "second")?);
    let lookup: HashMap<(i64, i64), f64> = other.rows.iter().map(|r| ((key(r[ox]), key(r[oy])), r[ov])).collect();
    let (tx, ty, tv) = (col(theory, "x", "theory")?, col(theory, "y", "theory")?, col(theory, "p_ax", "theory")?);
    let mut errs = Vec::with_capacity(theory.rows.len());
    for r in &theory.rows {
        let (x, y) = (r[tx], r[ty]);
        let o = lookup
            .get(&(key(x), key(y)))
            .ok_or_else(|| CliError::GridMismatch(format!("no site at ({x}, {y})")))?;
        errs.push((x, y, (o - r[tv]).abs() / r[tv].abs()));
    }
    let mut columns = group_mean(errs.iter().map(|e| (e.0, e.2)));
    columns.sort_by(|a, b| a[0].total_cmp(&b[0]));
    let mut rows = group_mean(errs.iter().map(|e| (e.1, e.2)));
    rows.sort_by(|a, b| a[0].total_cmp(&b[0]));
    let fractions = cfg.probes.clone().unwrap_or_else(|| P_AX_PROBES.to_vec());
    let probes: Vec<[f64; 2]> = fractions.iter().map(|f| [f * aspect, interpolate(&columns, f * aspect)]).collect();
    let max_probe = probes.iter().fold(0.0f64, |m, p| if p[1] <= m { m } else { p[1] });
    let tolerance = cfg.tolerance.unwrap_or(P_AX_TOLERANCE);
    Ok(PaxReport {
        aspect,
        tolerance,
        columns,
        rows,
        probes,
        max_probe_error: max_probe,
        pass: max_probe <= tolerance,
    })
}

const COORDS: [&str; 4] = ["x", "y", "xi", "psi"];

fn compare_fields(q: Quantity, theory: &Table, other: &Table, cfg: &RunConfig) -> Result<FieldReport> {
    let coords: Vec<&str> = ["x", "y"].into_iter().filter(|c| theory.column(c).is_some()).collect();
    let tkeys: Vec<usize> = coords.iter().map(|c| col(theory, c, "theory")).collect::<Result<_>>()?;
    let okeys: Vec<usize> = coords.iter().map(|c| col(other, c, "second")).collect::<Result<_>>()?;
    let values: Vec<(usize, usize, String)> = theory
        .columns
        .iter()
        .enumerate()
        .filter(|(_, c)| !COORDS.contains(&c.as_str()))
        .filter_map(|(i, c)| other.column(c).map(|j| (i, j, c.clone())))
        .collect();
    if values.is_empty() {
        return Err(CliError::GridMismatch("no value columns in common".into()));
    }
    let row_key = |r: &[f64], ks: &[usize]| ks.iter().map(|&k| key(r[k])).collect::<Vec<_>>();
    let lookup: HashMap<Vec<i64>, &Vec<f64>> = if coords.is_empty() {
        if other.rows.len() != theory.rows.len() {
            return Err(CliError::GridMismatch("row counts differ".into()));
        }
        other.rows.iter().enumerate().map(|(i, r)| (vec![i as i64], r)).collect()
    } else {
        other.rows.iter().map(|r| (row_key(r, &okeys), r)).collect()
    };
    let mut cols: Vec<FieldColumnReport> =
        values.iter().map(|v| FieldColumnReport { column: v.2.clone(), max_abs: 0.0, max_rel: 0.0 }).collect();
    for (n, r) in theory.rows.iter().enumerate() {
        let k = if coords.is_empty() { vec![n as i64] } else { row_key(r, &tkeys) };
        let o = lookup.get(&k).ok_or_else(|| CliError::GridMismatch(format!("no matching row for theory row {n}")))?;
        for (c, (i, j, _)) in cols.iter_mut().zip(&values) {
            let d = (r[*i] - o[*j]).abs();
            c.max_abs = c.max_abs.max(d);
            c.max_rel = c.max_rel.max(d / r[*i].abs().max(f64::MIN_POSITIVE));
        }
    }
    let max_abs = cols.iter().fold(0.0f64, |m, c| m.max(c.max_abs));
    let tolerance = cfg.tolerance.unwrap_or(FIELD_TOLERANCE);
    Ok(FieldReport { quantity: q.name().into(), tolerance, columns: cols, max_abs, pass: max_abs <= tolerance })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_between_columns() {
        let t = [[0.0, 1.0], [1.0, 3.0], [2.0, 5.0]];
        assert_eq!(interpolate(&t, 0.5), 2.0);
        assert_eq!(interpolate(&t, 1.0), 3.0);
        assert_eq!(interpolate(&t, -1.0), 1.0);
        assert_eq!(interpolate(&t, 9.0), 5.0);
    }
}
