//! Seeded random trials, mapped in parallel (rayon, feature `parallel`) or
//! sequentially; output order never depends on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::equations::{random_params, Family, ParamSet};
use crate::error::{Error, Result};

/// Draws allowed per trial before giving up.
pub const RESAMPLE_BUDGET: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

/// Order-preserving map; falls back to sequential without `parallel`.
pub fn map_with<T: Sync, R: Send>(exec: Exec, items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    map_with(Exec::Parallel, items, f)
}

/// Independent stream per (seed, key, trial): the key's FNV-1a hash mixed
/// into the seed, the trial number as the ChaCha stream id.
pub fn trial_rng(seed: u64, key: &str, trial: u64) -> ChaCha8Rng {
    let h = key.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ h);
    rng.set_stream(trial);
    rng
}

/// Draws parameters until `accept` succeeds, at most [`RESAMPLE_BUDGET`]
/// times; returns the accepted set with its result.
pub fn sample_until<R>(
    family: Family,
    rng: &mut ChaCha8Rng,
    accept: impl Fn(&ParamSet) -> Result<R>,
) -> Result<(ParamSet, R)> {
    let mut last = None;
    for _ in 0..RESAMPLE_BUDGET {
        let p = random_params(family, rng);
        match accept(&p) {
            Ok(r) => return Ok((p, r)),
            Err(e) => last = Some(e),
        }
    }
    Err(Error::SamplingExhausted(
        last.map_or_else(String::new, |e| e.to_string()),
    ))
}

/// Runs `trials` seeded trials of `f` for one key.
pub fn run_trials<R: Send>(
    exec: Exec,
    seed: u64,
    key: &str,
    trials: usize,
    f: impl Fn(&mut ChaCha8Rng) -> R + Sync + Send,
) -> Vec<R> {
    let idx: Vec<u64> = (0..trials as u64).collect();
    map_with(exec, &idx, |&t| f(&mut trial_rng(seed, key, t)))
}
