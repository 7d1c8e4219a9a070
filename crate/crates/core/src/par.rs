//! Deterministic seed-partitioned trial execution.
//!
//! Every randomised experiment maps trial index i to its own ChaCha stream,
//! so results depend only on (seed, trial range) and never on how trials are
//! distributed over worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// RNG for one trial. Stream 0 is reserved for key generation.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(trial.wrapping_add(1));
    rng
}

/// Runs `count` trials starting at `start`, split over `workers` threads.
/// Each worker folds into its own accumulator; accumulators are merged in
/// worker order.  With commutative merges the result is invariant to the
/// worker count.
pub fn parallel_trials<A, F>(
    seed: u64,
    start: u64,
    count: u64,
    workers: usize,
    make_acc: impl Fn() -> A + Sync,
    step: F,
) -> Vec<A>
where
    A: Send,
    F: Fn(u64, &mut ChaCha12Rng, &mut A) + Sync,
{
    let workers = workers.max(1).min(count.max(1) as usize);
    if workers == 1 {
        let mut acc = make_acc();
        for i in start..start + count {
            let mut rng = trial_rng(seed, i);
            step(i, &mut rng, &mut acc);
        }
        return vec![acc];
    }
    let chunk = count.div_ceil(workers as u64);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..workers as u64 {
            let lo = start + w * chunk;
            let hi = (lo + chunk).min(start + count);
            if lo >= hi {
                break;
            }
            let step = &step;
            let make_acc = &make_acc;
            handles.push(scope.spawn(move || {
                let mut acc = make_acc();
                for i in lo..hi {
                    let mut rng = trial_rng(seed, i);
                    step(i, &mut rng, &mut acc);
                }
                acc
            }));
        }
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    })
}
