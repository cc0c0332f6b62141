use rectcft::geometry::ModelParams;
use rectcft::observables::{rho_from_measured, DensityTriple, Wiring};

use crate::lattice::LatticeSpec;
use crate::{Result, SimError};

/// Per-site connection counters, summed over samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleAccumulator {
    pub width: usize,
    pub height: usize,
    pub n_samples: u64,
    pub conn_left: Vec<u64>,
    pub conn_right: Vec<u64>,
    pub conn_both: Vec<u64>,
    pub crossing_count: u64,
    /// Counts of membership in a horizontally crossing cluster (free boundaries).
    pub wetted_count: Option<Vec<u64>>,
}

impl SampleAccumulator {
    pub fn new(width: usize, height: usize, wetted: bool) -> Self {
        let n = width * height;
        SampleAccumulator {
            width,
            height,
            n_samples: 0,
            conn_left: vec![0; n],
            conn_right: vec![0; n],
            conn_both: vec![0; n],
            crossing_count: 0,
            wetted_count: wetted.then(|| vec![0; n]),
        }
    }

    /// One sample's connectivity, given each site's cluster root and the
    /// roots of the left and right columns.
    pub fn record_connectivity(&mut self, roots: &[u32], left: u32, right: u32) {
        debug_assert_eq!(roots.len(), self.conn_left.len());
        self.n_samples += 1;
        if left == right {
            self.crossing_count += 1;
        }
        for (s, &r) in roots.iter().enumerate() {
            let l = (r == left) as u64;
            let rr = (r == right) as u64;
            self.conn_left[s] += l;
            self.conn_right[s] += rr;
            self.conn_both[s] += l & rr;
        }
    }

    /// One free-boundary sample: `wet[s]` marks sites on a crossing cluster.
    pub fn record_wetted(&mut self, wet: &[bool], crossed: bool) {
        self.n_samples += 1;
        self.crossing_count += crossed as u64;
        let w = self.wetted_count.as_mut().expect("accumulator without wetted counters");
        for (c, &b) in w.iter_mut().zip(wet) {
            *c += b as u64;
        }
    }

    pub fn merge(&mut self, other: &SampleAccumulator) -> Result<()> {
        if (self.width, self.height) != (other.width, other.height)
            || self.wetted_count.is_some() != other.wetted_count.is_some()
        {
            return Err(SimError::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.width, self.height, other.width, other.height
            )));
        }
        self.n_samples += other.n_samples;
        self.crossing_count += other.crossing_count;
        add(&mut self.conn_left, &other.conn_left);
        add(&mut self.conn_right, &other.conn_right);
        add(&mut self.conn_both, &other.conn_both);
        if let (Some(a), Some(b)) = (self.wetted_count.as_mut(), other.wetted_count.as_ref()) {
            add(a, b);
        }
        Ok(())
    }

    pub fn finalize(&self) -> Result<Finalized> {
        if self.n_samples == 0 {
            return Err(SimError::EmptyAccumulator);
        }
        let n = self.n_samples as f64;
        let freq = |v: &[u64]| v.iter().map(|&c| c as f64 / n).collect::<Vec<_>>();
        let pc = self.crossing_count as f64 / n;
        Ok(Finalized {
            width: self.width,
            height: self.height,
            n_samples: self.n_samples,
            p_left: freq(&self.conn_left),
            p_right: freq(&self.conn_right),
            p_both: freq(&self.conn_both),
            crossing_freq: pc,
            crossing_stderr: binomial_stderr(pc, n),
            wetted: self.wetted_count.as_deref().map(freq),
        })
    }
}

fn add(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

pub fn binomial_stderr(p: f64, n: f64) -> f64 {
    (p * (1.0 - p) / n).sqrt()
}

/// Standard error of the mean of a correlated 0/1 series from `batches`
/// consecutive batch means. None if the series is shorter than 2 batches.
pub fn batch_means_stderr(series: &[bool], batches: usize) -> Option<f64> {
    let len = series.len() / batches.max(1);
    if batches < 2 || len == 0 {
        return None;
    }
    let means: Vec<f64> =
        series.chunks_exact(len).take(batches).map(|c| c.iter().filter(|&&b| b).count() as f64 / len as f64).collect();
    let k = means.len() as f64;
    let m = means.iter().sum::<f64>() / k;
    let var = means.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (k - 1.0);
    Some((var / k).sqrt())
}

/// Frequencies derived from an accumulator.
#[derive(Debug, Clone, PartialEq)]
pub struct Finalized {
    pub width: usize,
    pub height: usize,
    pub n_samples: u64,
    pub p_left: Vec<f64>,
    pub p_right: Vec<f64>,
    pub p_both: Vec<f64>,
    pub crossing_freq: f64,
    pub crossing_stderr: f64,
    pub wetted: Option<Vec<f64>>,
}

/// y-average of the site-wise rho estimate in one lattice column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoColumn {
    pub i: usize,
    pub x: f64,
    pub mean: f64,
    /// Standard deviation across y.
    pub sd: f64,
    /// Rows that entered the average.
    pub rows: usize,
}

impl Finalized {
    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.width + i
    }

    pub fn stderr(&self, p: f64) -> f64 {
        binomial_stderr(p, self.n_samples as f64)
    }

    pub fn triple(&self, s: usize, wiring: Wiring) -> DensityTriple {
        DensityTriple { p_left: self.p_left[s], p_right: self.p_right[s], p_both: self.p_both[s], wiring }
    }

    /// Site-wise rho estimate; None where a frequency vanishes.
    pub fn rho_at(&self, s: usize, wiring: Wiring, mp: &ModelParams) -> Option<f64> {
        rho_from_measured(&self.triple(s, wiring), self.crossing_freq, mp).ok()
    }

    /// rho averaged over y in each interior column, with its spread across y.
    pub fn rho_profile(&self, spec: &LatticeSpec, wiring: Wiring, mp: &ModelParams) -> Vec<RhoColumn> {
        (1..self.width.saturating_sub(1))
            .filter_map(|i| {
                let vals: Vec<f64> =
                    (0..self.height).filter_map(|j| self.rho_at(self.index(i, j), wiring, mp)).collect();
                if vals.is_empty() {
                    return None;
                }
                let k = vals.len() as f64;
                let mean = vals.iter().sum::<f64>() / k;
                let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0).max(1.0);
                Some(RhoColumn { i, x: spec.cell_center(i, 0).0, mean, sd: var.sqrt(), rows: vals.len() })
            })
            .collect()
    }

    /// The wetted field divided by its value at the center.
    pub fn wetted_normalized(&self) -> Option<Vec<f64>> {
        let w = self.wetted.as_ref()?;
        let c = center_value(w, self.width, self.height);
        (c > 0.0).then(|| w.iter().map(|v| v / c).collect())
    }
}

/// Field value at the rectangle's center: the mean of the (up to four)
/// sites nearest to it.
pub fn center_value(field: &[f64], width: usize, height: usize) -> f64 {
    let span = |n: usize| if n % 2 == 0 { vec![n / 2 - 1, n / 2] } else { vec![n / 2] };
    let (is, js) = (span(width), span(height));
    let mut sum = 0.0;
    for &j in &js {
        for &i in &is {
            sum += field[j * width + i];
        }
    }
    sum / (is.len() * js.len()) as f64
}
