use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Instance, Time};
use crate::error::GenerateError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkflowParams {
    pub jobs: usize,
    pub machines: usize,
    pub duration_lo: Time,
    pub duration_hi: Time,
}

impl WorkflowParams {
    /// Durations default to the uniform range `[1, 99]`.
    pub fn new(jobs: usize, machines: usize) -> WorkflowParams {
        WorkflowParams {
            jobs,
            machines,
            duration_lo: 1,
            duration_hi: 99,
        }
    }

    pub fn with_durations(mut self, lo: Time, hi: Time) -> WorkflowParams {
        self.duration_lo = lo;
        self.duration_hi = hi;
        self
    }
}

/// Random work-flow instance: every job visits machines `0..m/2` in a uniformly
/// random order, then machines `m/2..m` in a uniformly random order. Durations
/// are i.i.d. uniform on `[lo, hi]`.
///
/// The generator is ChaCha8 seeded with `seed`. Per job it shuffles the first
/// half, shuffles the second half, then draws the `m` durations in routing order.
pub fn generate_workflow(params: &WorkflowParams, seed: u64) -> Result<Instance, GenerateError> {
    check(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = format!("wf_{}x{}_{seed}", params.jobs, params.machines);
    Ok(build(params, &mut rng, name))
}

/// `count` instances drawn one after another from a single ChaCha8 stream
/// seeded with `seed`, named `wf_{n}x{m}_{seed}_{i}`.
pub fn generate_batch(params: &WorkflowParams, seed: u64, count: usize) -> Result<Vec<Instance>, GenerateError> {
    check(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|i| {
            let name = format!("wf_{}x{}_{seed}_{i}", params.jobs, params.machines);
            build(params, &mut rng, name)
        })
        .collect())
}

fn check(params: &WorkflowParams) -> Result<(), GenerateError> {
    let &WorkflowParams {
        jobs,
        machines,
        duration_lo: lo,
        duration_hi: hi,
    } = params;
    if jobs == 0 || machines == 0 {
        return Err(GenerateError::EmptyDimension);
    }
    if machines % 2 != 0 {
        return Err(GenerateError::OddMachineCount(machines));
    }
    if lo < 1 || lo > hi {
        return Err(GenerateError::InvalidDurationBounds { lo, hi });
    }
    Ok(())
}

fn build(params: &WorkflowParams, rng: &mut ChaCha8Rng, name: String) -> Instance {
    let half = params.machines / 2;
    let routings: Vec<Vec<(usize, Time)>> = (0..params.jobs)
        .map(|_| {
            let mut front: Vec<usize> = (0..half).collect();
            let mut back: Vec<usize> = (half..params.machines).collect();
            front.shuffle(rng);
            back.shuffle(rng);
            front
                .into_iter()
                .chain(back)
                .map(|machine| (machine, rng.random_range(params.duration_lo..=params.duration_hi)))
                .collect()
        })
        .collect();
    Instance::new(name, &routings).expect("generated routings are valid")
}
