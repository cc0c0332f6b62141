use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::accum::SampleAccumulator;
use crate::lattice::{LatticeSpec, Model};
use crate::percolation::{free_bc_crossing_sample, percolation_sample, PercolationWorkspace};
use crate::potts::PottsState;
use crate::Result;

/// Sweeps discarded per site of the longer side before measuring.
pub const EQUILIBRATION_PER_LENGTH: usize = 10;
/// Sweeps between measurements in the Swendsen-Wang runs.
pub const SWEEPS_PER_SAMPLE: usize = 2;

/// The random stream of worker `w`: ChaCha8 keyed by the seed, on stream w.
pub fn worker_rng(seed: u64, worker: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker);
    rng
}

/// Samples handled by worker w when `total` are split over `workers`.
pub fn worker_share(total: u64, workers: usize, w: usize) -> u64 {
    let k = workers as u64;
    total / k + ((w as u64) < total % k) as u64
}

/// Runs `samples` measurements of `model` on one stream.
pub fn run_worker(model: Model, spec: &LatticeSpec, worker: u64, samples: u64) -> SampleAccumulator {
    run_worker_observed(model, spec, worker, samples, |_| {})
}

/// [`run_worker`], calling `observe` with each sample's crossing flag in
/// order (for error estimates on correlated Markov-chain samples).
pub fn run_worker_observed<F: FnMut(bool)>(
    model: Model,
    spec: &LatticeSpec,
    worker: u64,
    samples: u64,
    mut observe: F,
) -> SampleAccumulator {
    let mut rng = worker_rng(spec.seed, worker);
    let mut acc = SampleAccumulator::new(spec.width, spec.height, model == Model::PercCrossingDensity);
    let mut seen = 0;
    match model {
        Model::Percolation | Model::PercCrossingDensity => {
            let mut ws = PercolationWorkspace::new(spec);
            for _ in 0..samples {
                if model == Model::Percolation {
                    percolation_sample(spec, &mut ws, &mut rng, &mut acc);
                } else {
                    free_bc_crossing_sample(spec, &mut ws, &mut rng, &mut acc);
                }
                observe(last_crossed(&acc, &mut seen));
            }
        }
        Model::PottsFk => {
            let mut st = PottsState::new(spec);
            for _ in 0..EQUILIBRATION_PER_LENGTH * spec.long_side() {
                st.sw_update_fk(spec, &mut rng, None);
            }
            for _ in 0..samples {
                for _ in 1..SWEEPS_PER_SAMPLE {
                    st.sw_update_fk(spec, &mut rng, None);
                }
                st.sw_update_fk(spec, &mut rng, Some(&mut acc));
                observe(last_crossed(&acc, &mut seen));
            }
        }
        Model::PottsSpin => {
            let mut st = PottsState::new(spec);
            for _ in 0..EQUILIBRATION_PER_LENGTH * spec.long_side() {
                st.spin_cluster_update(spec, &mut rng);
            }
            for _ in 0..samples {
                for _ in 0..SWEEPS_PER_SAMPLE {
                    st.spin_cluster_update(spec, &mut rng);
                }
                st.measure_spin_clusters(spec, &mut acc);
                observe(last_crossed(&acc, &mut seen));
            }
        }
    }
    acc
}

/// Whether the sample just recorded crossed, given the previous crossing count.
fn last_crossed(acc: &SampleAccumulator, seen: &mut u64) -> bool {
    let crossed = acc.crossing_count > *seen;
    *seen = acc.crossing_count;
    crossed
}

/// Splits the samples over `workers` independent streams, runs them on
/// scoped threads and merges the accumulators in worker order. The result
/// depends only on (spec, workers).
pub fn run(model: Model, spec: &LatticeSpec, workers: usize) -> Result<SampleAccumulator> {
    spec.validate_for(model)?;
    let workers = workers.max(1);
    let parts: Vec<SampleAccumulator> = if workers == 1 {
        vec![run_worker(model, spec, 0, spec.samples)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let n = worker_share(spec.samples, workers, w);
                    scope.spawn(move || run_worker(model, spec, w as u64, n))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    let mut it = parts.into_iter();
    let mut acc = it.next().expect("at least one worker");
    for p in it {
        acc.merge(&p)?;
    }
    Ok(acc)
}
