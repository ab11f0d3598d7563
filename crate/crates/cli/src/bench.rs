//! Randomized baseline: how many uniform draws it takes to hit a nonresidue.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use qnrforge_core::arith::is_prime;
use qnrforge_core::symbols::euler_criterion;
use qnrforge_core::{qnr_with, FieldDescriptor, Method, SymbolValue};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub bits: u32,
    pub count: u64,
    pub seed: u64,
    pub generator: String,
    pub distinct_primes: u64,
    pub total_trials: u64,
    pub mean_trials: f64,
    /// Wall time in seconds per method over the sampled primes. Not part of
    /// the serialized report, which is meant to be reproducible.
    #[serde(skip)]
    pub timings: BTreeMap<String, f64>,
}

fn sample_prime(rng: &mut ChaCha8Rng, bits: u32) -> u64 {
    let lo = 1u64 << (bits - 1);
    let hi = (1u64 << bits) - 1;
    loop {
        let candidate = rng.gen_range(lo..=hi) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

/// Samples `count` primes of `bits` bits from a ChaCha8 stream seeded with
/// `seed`; for each, draws uniform elements of `[1, p)` until one is a
/// nonresidue. Also times the deterministic methods on the same primes.
pub fn bench_randomized(bits: u32, count: u64, seed: u64) -> BenchReport {
    assert!((3..=63).contains(&bits), "bits must lie in [3, 63]");
    assert!(count >= 1, "count must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes: Vec<u64> = (0..count).map(|_| sample_prime(&mut rng, bits)).collect();

    let start = Instant::now();
    let mut total_trials = 0u64;
    for &p in &primes {
        loop {
            total_trials += 1;
            let a = rng.gen_range(1..p);
            if euler_criterion(a, p) == Ok(SymbolValue::MinusOne) {
                break;
            }
        }
    }
    let mut timings = BTreeMap::new();
    timings.insert("random".to_string(), start.elapsed().as_secs_f64());

    let mut distinct = primes.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let methods = [
        ("auto", None),
        ("special", Some(Method::Special)),
        ("general", Some(Method::General)),
        ("least", Some(Method::Least)),
    ];
    for (name, method) in methods {
        let start = Instant::now();
        for &p in &primes {
            let _ = qnr_with(&FieldDescriptor::prime(p).unwrap(), method);
        }
        timings.insert(name.to_string(), start.elapsed().as_secs_f64());
    }

    BenchReport {
        bits,
        count,
        seed,
        generator: "ChaCha8Rng::seed_from_u64".into(),
        distinct_primes: distinct.len() as u64,
        total_trials,
        mean_trials: total_trials as f64 / count as f64,
        timings,
    }
}
