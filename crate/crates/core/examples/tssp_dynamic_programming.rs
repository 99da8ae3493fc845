//! Solving twisted subset sum with the sparse reachability table.
//!
//! `cargo run --example tssp_dynamic_programming`

use polyconj::tssp::{build_dp, solve_tssp_brute, solve_tssp_dp, twisted_sum, TsspInstance};
use polyconj::Result;

fn main() -> Result<()> {
    let inst = TsspInstance::from_i64s(&[3, 5, 7, 2], 5)?;
    let table = build_dp(&inst)?;
    for i in 1..=table.n() {
        let row: Vec<String> = table
            .row(i)
            .iter()
            .map(|(s, m)| format!("{s}{}{}", if m.has(false) { "e" } else { "" }, if m.has(true) { "o" } else { "" }))
            .collect();
        println!("row {i}: {}", row.join(" "));
    }
    println!("{} states, {} parity marks", table.states(), table.marks());

    let x = solve_tssp_dp(&inst)?.expect("solvable");
    println!("dp witness {x}: twisted sum {}", twisted_sum(inst.coefficients(), &x)?);
    println!("brute witness {:?}", solve_tssp_brute(&inst)?.map(|x| x.to_string()));

    let none = TsspInstance::from_i64s(&[3, 5], 4)?;
    println!("{:?} with target 4: {:?}", [3, 5], solve_tssp_dp(&none)?);
    Ok(())
}
