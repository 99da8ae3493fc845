//! Normal-form arithmetic in `G_n`, checked against word collection.
//!
//! `cargo run --example group_arithmetic`

use num_bigint::BigInt;
use polyconj::word::{collect, element_to_word, Letter, Word};
use polyconj::{GroupContext, GroupElement, Result};

fn main() -> Result<()> {
    let g1 = GroupContext::new(1)?;
    let a = GroupElement::from_i64s(&[2, 1, -3]);
    let b = GroupElement::from_i64s(&[-1, 1, 4]);

    let ab = g1.multiply(&a, &b)?;
    println!("a = {a}, b = {b}");
    println!("a b        = {ab}");
    println!("a^-1       = {}", g1.inverse(&a)?);
    println!("b a b^-1   = {}", g1.conjugate(&b, &a)?);

    // The same product, by rewriting the concatenated letters.
    let word = element_to_word(&g1, &a)?.concat(&element_to_word(&g1, &b)?);
    println!("collect({word}) = {}", collect(&g1, &word)?);

    // Conjugating by one syllable only ever moves the g_1 exponent.
    let g3 = GroupContext::new(3)?;
    let u = GroupElement::from_i64s(&[0, 2, 5, 0, -1, 3, 7]);
    for i in 1..=g3.hirsch() {
        let image = g3.conjugate_by_syllable(i, &BigInt::from(3), &u)?;
        println!("g_{i}^3 u g_{i}^-3 = {image}");
    }

    let w = Word::new(vec![Letter::pos(3), Letter::pos(2), Letter::neg(1)]);
    println!("collect({w}) in G_1 = {}", collect(&g1, &w)?);
    Ok(())
}
