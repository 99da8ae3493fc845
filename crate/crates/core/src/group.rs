//! Exact arithmetic in `G_n` on exponent vectors.
//!
//! `G_n` is the poly-Z group with polycyclic generators `g_1, ..., g_{2n+1}`.
//! Every even-indexed generator inverts `g_1`, each `g_{2i+1}` sends `g_{2i}`
//! to `g_1 g_{2i}`, and every other pair of generators commutes. An element is
//! stored as its normal form `g_1^{k_1} ... g_{2n+1}^{k_{2n+1}}`, i.e. its
//! exponent vector.
//!
//! Nothing here rewrites words. Products are formed by inserting the second
//! operand one syllable at a time using the two collection identities
//!
//! ```text
//! g_j^a g_1^b     = g_1^{b (-1)^a} g_j^a            (j even)
//! g_{j+1}^a g_j^b = g_1^{a (b mod 2)} g_j^b g_{j+1}^a (j even)
//! ```
//!
//! and conjugation by a single syllable has a closed form in each of the three
//! cases (`g_1`, even index, odd index above one). All costs are polynomial in
//! `n` and the bit length of the exponents.
//!
//! For `n >= 2` the defining relations do not determine a group: the closed
//! forms and left-to-right insertion remain well defined, but associativity and
//! the identity `conjugate(w, u) = w u w^-1` only hold for `n = 1`. See the
//! crate README for a worked counterexample.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

/// The parameter `n` fixing `G_n`, whose Hirsch length is `2n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupContext {
    n: usize,
}

/// An element of `G_n` in normal form.
///
/// Equality is equality of exponent vectors; normal forms are unique.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    exponents: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(exponents: Vec<BigInt>) -> Self {
        Self { exponents }
    }

    pub fn from_i64s(exponents: &[i64]) -> Self {
        Self::new(exponents.iter().copied().map(BigInt::from).collect())
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn into_exponents(self) -> Vec<BigInt> {
        self.exponents
    }

    /// Exponent of `g_index` (1-based).
    pub fn exponent(&self, index: usize) -> &BigInt {
        &self.exponents[index - 1]
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    /// Size of the exponent vector in bits: for each entry, the number of
    /// binary digits of its absolute value (zero counts as one digit) plus a
    /// sign bit.
    pub fn bit_length(&self) -> u64 {
        self.exponents.iter().map(integer_bit_size).sum()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, k) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "]")
    }
}

/// Binary digits of `|k|` (at least one) plus a sign bit.
pub fn integer_bit_size(k: &BigInt) -> u64 {
    k.magnitude().bits().max(1) + 1
}

impl GroupContext {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter(format!(
                "G_n needs n >= 1, got {n}"
            )));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of polycyclic generators, `2n + 1`.
    pub fn hirsch(&self) -> usize {
        2 * self.n + 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(vec![BigInt::zero(); self.hirsch()])
    }

    /// Builds an element, checking the dimension.
    pub fn element(&self, exponents: Vec<BigInt>) -> Result<GroupElement> {
        let e = GroupElement::new(exponents);
        self.check(&e)?;
        Ok(e)
    }

    /// The single-syllable element `g_index^k`.
    pub fn syllable(&self, index: usize, k: BigInt) -> Result<GroupElement> {
        self.check_index(index)?;
        let mut e = self.identity();
        e.exponents[index - 1] = k;
        Ok(e)
    }

    pub fn check(&self, a: &GroupElement) -> Result<()> {
        if a.len() != self.hirsch() {
            return Err(Error::InvalidElement(format!(
                "expected {} exponents for G_{}, got {}",
                self.hirsch(),
                self.n,
                a.len()
            )));
        }
        Ok(())
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < 1 || index > self.hirsch() {
            return Err(Error::InvalidParameter(format!(
                "generator index {index} outside 1..={}",
                self.hirsch()
            )));
        }
        Ok(())
    }

    /// Normal form of `a * g_index^k`.
    pub fn multiply_syllable(&self, a: &GroupElement, index: usize, k: &BigInt) -> Result<GroupElement> {
        self.check(a)?;
        self.check_index(index)?;
        let mut out = a.clone();
        self.push_syllable(&mut out.exponents, index, k);
        Ok(out)
    }

    /// Right-multiplies the normal form `e` by `g_index^k` in place.
    fn push_syllable(&self, e: &mut [BigInt], index: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        if index == 1 {
            // g_1^k travels left over every even syllable of e.
            if even_exponent_parity(e, self.hirsch()) {
                e[0] -= k;
            } else {
                e[0] += k;
            }
        } else if index.is_multiple_of(2) {
            // Passing g_{index+1}^{e_{index+1}} spawns g_1^{e_{index+1} (k mod 2)},
            // which then crosses g_2 .. g_index of e.
            if k.is_odd() && index < self.hirsch() {
                let spawned = &e[index];
                if even_exponent_parity(e, index) {
                    e[0] = &e[0] - spawned;
                } else {
                    e[0] = &e[0] + spawned;
                }
            }
            e[index - 1] += k;
        } else {
            // Odd generators above g_1 commute with every generator to their right.
            e[index - 1] += k;
        }
    }

    /// Normal form of the product `a * b`.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = a.clone();
        for (i, k) in b.exponents.iter().enumerate() {
            self.push_syllable(&mut out.exponents, i + 1, k);
        }
        Ok(out)
    }

    /// Inverse, collected from the reversed word `g_{2n+1}^{-k_{2n+1}} ... g_1^{-k_1}`.
    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let mut out = self.identity();
        for (i, k) in a.exponents.iter().enumerate().rev() {
            self.push_syllable(&mut out.exponents, i + 1, &-k);
        }
        Ok(out)
    }

    /// Normal form of `g_index^k * u * g_index^-k`, from the closed forms.
    ///
    /// Only the `g_1` exponent can change.
    pub fn conjugate_by_syllable(&self, index: usize, k: &BigInt, u: &GroupElement) -> Result<GroupElement> {
        self.check(u)?;
        self.check_index(index)?;
        let mut out = u.clone();
        self.conjugate_syllable_in_place(&mut out.exponents, index, k);
        Ok(out)
    }

    fn conjugate_syllable_in_place(&self, e: &mut [BigInt], index: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        if index == 1 {
            // e_1 + k - k (-1)^{e_2 + e_4 + ... + e_2n}
            if even_exponent_parity(e, self.hirsch()) {
                e[0] += k * 2;
            }
        } else if index.is_multiple_of(2) {
            // e_1 (-1)^k + e_{j+1} (k mod 2) (-1)^{e_2 + ... + e_j + k}
            if k.is_odd() {
                let prefix_odd = even_exponent_parity(e, index);
                let shift = &e[index];
                let first = -&e[0];
                e[0] = if prefix_odd { first + shift } else { first - shift };
            }
        } else if e[index - 2].is_odd() {
            // e_1 + k (e_{l-1} mod 2) (-1)^{e_2 + ... + e_{l-3}}
            if even_exponent_parity(e, index - 3) {
                e[0] -= k;
            } else {
                e[0] += k;
            }
        }
    }

    /// Normal form of `w * u * w^-1`, conjugating by the syllables of `w`
    /// innermost first (`g_{2n+1}` down to `g_1`).
    pub fn conjugate(&self, w: &GroupElement, u: &GroupElement) -> Result<GroupElement> {
        self.check(w)?;
        self.check(u)?;
        let mut out = u.clone();
        for (i, k) in w.exponents.iter().enumerate().rev() {
            self.conjugate_syllable_in_place(&mut out.exponents, i + 1, k);
        }
        Ok(out)
    }

    pub fn bit_length(&self, a: &GroupElement) -> Result<u64> {
        self.check(a)?;
        Ok(a.bit_length())
    }
}

/// Parity of `e_2 + e_4 + ... + e_m` (even indices up to `upto`, 1-based).
/// Returns `true` when the sum is odd.
pub(crate) fn even_exponent_parity(e: &[BigInt], upto: usize) -> bool {
    let upto = upto.min(e.len());
    (2..=upto)
        .step_by(2)
        .filter(|&j| e[j - 1].is_odd())
        .count()
        % 2
        == 1
}
