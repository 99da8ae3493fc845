//! Table work grows with the magnitude of the target, not with its bit length.
//!
//! `cargo run --release --example pseudo_polynomial_bench`

use std::time::Duration;

use polyconj::bench::{blowup_series, format_blowup, format_scaling, quadratic_envelope, scaling_series, states_double};
use polyconj::tssp::DEFAULT_MAX_CELLS;
use polyconj::Result;

fn main() -> Result<()> {
    let scaling = scaling_series(10, &[1_000, 10_000, 100_000, 1_000_000], 1, 5, DEFAULT_MAX_CELLS)?;
    print!("{}", format_scaling(&scaling));
    for (ratio, limit, pass) in quadratic_envelope(&scaling, 4.0, Duration::from_micros(20)) {
        println!("time ratio {ratio:.2} (limit {limit:.0}) {}", if pass { "ok" } else { "over" });
    }

    let blowup = blowup_series(16, &[2, 4, 8, 16], 1, 3, DEFAULT_MAX_CELLS)?;
    print!("{}", format_blowup(&blowup));
    for (b1, b2, factor, _) in states_double(&blowup) {
        println!("{b1} -> {b2} bits: states x{factor:.1}");
    }
    Ok(())
}
