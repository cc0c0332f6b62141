use rand::RngCore;

use crate::{Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Every bond sampled, no wired sides.
    FreeAll,
    /// Left and right columns each wired, separately.
    WiredLrIndependent,
    /// Left and right columns fixed to spin A, top and bottom rows not A.
    WiredLrMutualSpin,
}

/// The four experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Percolation,
    PottsFk,
    PottsSpin,
    PercCrossingDensity,
}

impl Model {
    pub fn boundary(self) -> Boundary {
        match self {
            Model::Percolation | Model::PottsFk => Boundary::WiredLrIndependent,
            Model::PottsSpin => Boundary::WiredLrMutualSpin,
            Model::PercCrossingDensity => Boundary::FreeAll,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Percolation => "percolation",
            Model::PottsFk => "potts_fk",
            Model::PottsSpin => "potts_spin",
            Model::PercCrossingDensity => "perc_crossing_density",
        }
    }
}

/// Extra extent (in lattice spacings) contributed by the x and y sides:
/// 1 for free sides, 0 where the boundary column/row is part of the lattice.
fn boundary_padding(b: Boundary) -> (f64, f64) {
    match b {
        Boundary::FreeAll => (1.0, 1.0),
        Boundary::WiredLrIndependent => (0.0, 1.0),
        Boundary::WiredLrMutualSpin => (0.0, 0.0),
    }
}

/// Critical FK bond probability sqrt(q) / (1 + sqrt(q)); 1/2 for percolation.
pub fn critical_p_bond(q: u32) -> f64 {
    let s = (q as f64).sqrt();
    s / (1.0 + s)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    pub q: u32,
    /// Sites along x.
    pub width: usize,
    /// Sites along y.
    pub height: usize,
    pub boundary: Boundary,
    pub p_bond: f64,
    pub seed: u64,
    pub samples: u64,
}

impl LatticeSpec {
    /// Critical lattice of the given height whose continuum aspect ratio
    /// (see [`LatticeSpec::aspect`]) is as close to R as the height allows.
    pub fn critical(model: Model, q: u32, aspect: f64, height: usize, seed: u64, samples: u64) -> Result<Self> {
        if !(aspect > 0.0) || !aspect.is_finite() {
            return Err(SimError::InvalidSpec(format!("aspect ratio {aspect}")));
        }
        let q = match model {
            Model::Percolation | Model::PercCrossingDensity => 1,
            _ => q,
        };
        let boundary = model.boundary();
        let (x_pad, y_pad) = boundary_padding(boundary);
        let y_span = height as f64 - 1.0 + y_pad;
        let width = ((aspect * y_span).round() + 1.0 - x_pad).max(1.0) as usize;
        let s = LatticeSpec { q, width, height, boundary, p_bond: critical_p_bond(q), seed, samples };
        s.validate_for(model)?;
        Ok(s)
    }

    pub fn sites(&self) -> usize {
        self.width * self.height
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.width + i
    }

    /// Lattice extents in lattice spacings: a wired or constrained side is
    /// the row/column itself, a free side lies half a spacing outside the
    /// last row/column.
    fn spans(&self) -> (f64, f64) {
        let (xp, yp) = boundary_padding(self.boundary);
        (self.width as f64 - 1.0 + xp, self.height as f64 - 1.0 + yp)
    }

    /// Continuum aspect ratio R of the lattice.
    pub fn aspect(&self) -> f64 {
        let (sx, sy) = self.spans();
        sx / sy
    }

    /// Continuum position of site (i, j) in [0, R] x [0, 1].
    pub fn cell_center(&self, i: usize, j: usize) -> (f64, f64) {
        let (xp, yp) = boundary_padding(self.boundary);
        let (_, sy) = self.spans();
        ((i as f64 + 0.5 * xp) / sy, (j as f64 + 0.5 * yp) / sy)
    }

    /// Longer side in sites, the unit of the equilibration length.
    pub fn long_side(&self) -> usize {
        self.width.max(self.height)
    }

    pub fn validate_for(&self, model: Model) -> Result<()> {
        let bad = |m: String| Err(SimError::InvalidSpec(m));
        if self.boundary != model.boundary() {
            return bad(format!("{} needs boundary {:?}, got {:?}", model.name(), model.boundary(), self.boundary));
        }
        match model {
            Model::Percolation | Model::PercCrossingDensity if self.q != 1 => {
                return bad(format!("{} needs q = 1, got {}", model.name(), self.q));
            }
            Model::PottsFk | Model::PottsSpin if !(2..=4).contains(&self.q) => {
                return bad(format!("{} needs q in 2..=4, got {}", model.name(), self.q));
            }
            _ => {}
        }
        let min_w = if model.boundary() == Boundary::FreeAll { 1 } else { 2 };
        let min_h = if model == Model::PottsSpin { 3 } else { 1 };
        if self.width < min_w || self.height < min_h {
            return bad(format!("lattice {}x{} too small", self.width, self.height));
        }
        if self.sites() > u32::MAX as usize {
            return bad("too many sites".into());
        }
        if !(0.0..=1.0).contains(&self.p_bond) {
            return bad(format!("p_bond = {}", self.p_bond));
        }
        if self.samples == 0 {
            return bad("samples must be positive".into());
        }
        Ok(())
    }
}

/// Bernoulli(p) bond draws. p = 1/2 consumes one random bit per bond;
/// other p compare a 32-bit draw against round(p 2^32).
#[derive(Debug, Clone, Copy)]
pub struct BondSampler {
    threshold: u64,
    bits: u64,
    left: u32,
}

const HALF: u64 = 1 << 31;

impl BondSampler {
    pub fn new(p: f64) -> Self {
        BondSampler { threshold: (p.clamp(0.0, 1.0) * 4294967296.0).round() as u64, bits: 0, left: 0 }
    }

    #[inline]
    pub fn open<R: RngCore>(&mut self, rng: &mut R) -> bool {
        match self.threshold {
            0 => false,
            4294967296 => true,
            HALF => {
                if self.left == 0 {
                    self.bits = rng.next_u64();
                    self.left = 64;
                }
                let b = self.bits & 1 == 1;
                self.bits >>= 1;
                self.left -= 1;
                b
            }
            t => (rng.next_u32() as u64) < t,
        }
    }
}
