//! Deciding conjugacy, producing certificates, and rejecting forgeries.
//!
//! `cargo run --example conjugacy_certificates`

use polyconj::conjugacy::{certificate_length_bound, verify_certificate, Certificate, ConjugacySolver};
use polyconj::{GroupContext, GroupElement, Result};

fn main() -> Result<()> {
    let ctx = GroupContext::new(2)?;
    let solver = ConjugacySolver::new();
    let pairs = [
        ([0, 0, 3, 0, 5], [2, 0, 3, 0, 5]),
        ([0, 2, 0, 3, 0], [9, 2, 0, 3, 0]),
        ([0, 0, 3, 0, 5], [1, 0, 3, 0, 5]),
        ([0, 0, 3, 0, 5], [0, 0, 4, 0, 5]),
    ];
    for (u, v) in pairs {
        let (u, v) = (GroupElement::from_i64s(&u), GroupElement::from_i64s(&v));
        let (answer, route) = solver.decide_with_route(&ctx, &u, &v)?;
        println!("{u} ~ {v}: {answer} via {route:?}");
        if let Some(cert) = solver.search(&ctx, &u, &v)? {
            let bound = certificate_length_bound(&ctx, &u, &v, 8);
            println!("  certificate {cert}, {} bits (bound {bound})", cert.bit_length());
        }
    }

    let u = GroupElement::from_i64s(&[0, 0, 3, 0, 5]);
    let v = GroupElement::from_i64s(&[2, 0, 3, 0, 5]);
    let forged = Certificate::new(GroupElement::from_i64s(&[5, 0, 0, 0, 0]));
    println!("forged {forged} verifies: {}", verify_certificate(&ctx, &u, &v, &forged)?);

    let tight = ConjugacySolver::with_max_states(2);
    println!("with a 2-state cap: {:?}", tight.decide(&ctx, &u, &v).map_err(|e| e.to_string()));
    Ok(())
}
