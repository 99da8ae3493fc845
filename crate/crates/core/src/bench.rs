//! Timing harness for the TSSP table.
//!
//! Two series:
//!
//! * **scaling**: fixed `n`, positive coefficients whose magnitudes sum to
//!   `S`, for growing `S`. Wall time should stay inside a quadratic envelope
//!   in `S`.
//! * **blow-up**: fixed `n`, uniformly random `b`-bit coefficients for
//!   doubling `b`. The number of distinct partial sums, and so the work, grows
//!   with the magnitude of the numbers rather than with their bit length.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::tssp::{build_dp_limited, twisted_sum, Assignment, TsspInstance};

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub n: usize,
    pub s: u64,
    /// `(n + 1)(2S + 1)`, the size of a dense table.
    pub cells: u128,
    pub states: usize,
    pub time: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlowupRow {
    pub n: usize,
    pub bits: u32,
    pub s: BigInt,
    pub states: usize,
    pub time: Duration,
}

/// `n` positive coefficients summing to exactly `s` (a random composition),
/// with the target set to the twisted sum of a random assignment.
pub fn unary_instance(n: usize, s: u64, seed: u64) -> TsspInstance {
    assert!(n >= 1 && s >= n as u64, "need at least one unit per coefficient");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cuts: Vec<u64> = (0..n - 1).map(|_| rng.gen_range(1..s)).collect();
    cuts.sort_unstable();
    cuts.dedup();
    while cuts.len() < n - 1 {
        let c = rng.gen_range(1..s);
        if let Err(pos) = cuts.binary_search(&c) {
            cuts.insert(pos, c);
        }
    }
    let mut ks = Vec::with_capacity(n);
    let mut prev = 0;
    for c in cuts.into_iter().chain([s]) {
        ks.push(BigInt::from(c - prev));
        prev = c;
    }
    let x = Assignment::new((0..n).map(|_| rng.gen()).collect());
    let target = twisted_sum(&ks, &x).expect("lengths agree");
    TsspInstance::new(ks, target).expect("n >= 1")
}

/// `n` coefficients uniform in `[2^{b-1}, 2^b)`, target `0`.
pub fn adversarial_instance(n: usize, bits: u32, seed: u64) -> TsspInstance {
    assert!((1..=64).contains(&bits));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = 1u128 << (bits - 1);
    let hi = 1u128 << bits;
    let ks = (0..n).map(|_| BigInt::from(rng.gen_range(lo..hi))).collect();
    TsspInstance::new(ks, BigInt::from(0)).expect("n >= 1")
}

fn timed_build(inst: &TsspInstance, reps: usize, max_cells: u128) -> Result<(usize, Duration)> {
    let mut times = Vec::with_capacity(reps);
    let mut states = 0;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        let table = build_dp_limited(inst, max_cells)?;
        times.push(start.elapsed());
        states = table.states();
    }
    times.sort_unstable();
    Ok((states, times[times.len() / 2]))
}

/// Median of `reps` table builds per size.
pub fn scaling_series(n: usize, sizes: &[u64], seed: u64, reps: usize, max_cells: u128) -> Result<Vec<ScalingRow>> {
    sizes
        .iter()
        .map(|&s| {
            let inst = unary_instance(n, s, seed);
            let (states, time) = timed_build(&inst, reps, max_cells)?;
            Ok(ScalingRow {
                n,
                s,
                cells: (n as u128 + 1) * (2 * s as u128 + 1),
                states,
                time,
            })
        })
        .collect()
}

pub fn blowup_series(n: usize, bit_lengths: &[u32], seed: u64, reps: usize, max_cells: u128) -> Result<Vec<BlowupRow>> {
    bit_lengths
        .iter()
        .map(|&bits| {
            let inst = adversarial_instance(n, bits, seed);
            let (states, time) = timed_build(&inst, reps, max_cells)?;
            Ok(BlowupRow { n, bits, s: inst.magnitude_bound(), states, time })
        })
        .collect()
}

/// Checks `t2 / t1 <= tolerance * (S2 / S1)^2` for each consecutive pair.
/// Timings below `floor` are raised to it so that clock resolution cannot
/// produce huge ratios.
pub fn quadratic_envelope(rows: &[ScalingRow], tolerance: f64, floor: Duration) -> Vec<(f64, f64, bool)> {
    rows.windows(2)
        .map(|w| {
            let t1 = w[0].time.max(floor).as_secs_f64();
            let t2 = w[1].time.max(floor).as_secs_f64();
            let growth = (w[1].s as f64 / w[0].s as f64).powi(2);
            let ratio = t2 / t1;
            (ratio, tolerance * growth, ratio <= tolerance * growth)
        })
        .collect()
}

/// Does every doubling of the bit length at least double the touched states?
pub fn states_double(rows: &[BlowupRow]) -> Vec<(u32, u32, f64, bool)> {
    rows.windows(2)
        .map(|w| {
            let factor = w[1].states as f64 / w[0].states as f64;
            (w[0].bits, w[1].bits, factor, w[1].bits == 2 * w[0].bits && factor >= 2.0)
        })
        .collect()
}

pub fn format_scaling(rows: &[ScalingRow]) -> String {
    let mut out = String::from("n    S          dense cells    states     time (ms)\n");
    for r in rows {
        writeln!(
            out,
            "{:<4} {:<10} {:<14} {:<10} {:.3}",
            r.n,
            r.s,
            r.cells,
            r.states,
            r.time.as_secs_f64() * 1e3
        )
        .unwrap();
    }
    out
}

pub fn format_blowup(rows: &[BlowupRow]) -> String {
    let mut out = String::from("n    bits  S                      states     time (ms)\n");
    for r in rows {
        writeln!(
            out,
            "{:<4} {:<5} {:<22} {:<10} {:.3}",
            r.n,
            r.bits,
            r.s.to_string(),
            r.states,
            r.time.as_secs_f64() * 1e3
        )
        .unwrap();
    }
    out
}
