//! Recovering a subset from a yes/no oracle, here the conjugacy decider.
//!
//! `cargo run --example decision_to_search`

use polyconj::conjugacy::decide_conjugate;
use polyconj::reductions::{ssp_search_via_decision, ReductionChain, SspInstance};
use polyconj::Result;

fn main() -> Result<()> {
    let inst = SspInstance::from_i64s(&[4, 9, -2, 7, 5], 14)?;
    let oracle = |i: &SspInstance| {
        let c = ReductionChain::new(i).conjugacy;
        decide_conjugate(&c.ctx, &c.u, &c.v)
    };
    let out = ssp_search_via_decision(oracle, &inst)?;
    println!("subset {} after {} oracle calls", out.subset, out.oracle_calls);
    assert!(inst.is_solved_by(&out.subset));

    let none = SspInstance::from_i64s(&[4, 6], 5)?;
    match ssp_search_via_decision(oracle, &none) {
        Ok(out) => println!("unexpected subset {}", out.subset),
        Err(e) => println!("{{4, 6}} with target 5: {e}"),
    }
    Ok(())
}
