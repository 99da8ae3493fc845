//! Naive collection of generator words by adjacent rewriting.
//!
//! This is the slow referee for [`crate::group`]: words are expanded letter by
//! letter and sorted with local rules only. A pair of adjacent letters is
//! *reducible* when the left index is larger than the right one, or when the
//! two letters cancel. Reducible pairs are rewritten as follows, where `j` is
//! even and `s, t` are signs:
//!
//! ```text
//! g_j^s g_1^t         -> g_1^-t g_j^s
//! g_{j+1}^s g_j^t     -> g_1^s g_j^t g_{j+1}^s
//! g_i^s g_i^-s        -> (empty)
//! any other i > k     -> g_k^t g_i^s
//! ```
//!
//! The spawned `g_1` carries the sign of the odd letter regardless of `t`.
//! Each swap removes one index inversion from the non-`g_1` letters, so
//! rewriting terminates.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{GroupContext, GroupElement};

/// Default cap on the number of letters [`element_to_word`] will produce.
pub const DEFAULT_EXPANSION_LIMIT: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn negate(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// A syllable of exponent `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(index: usize, sign: Sign) -> Self {
        Self { index, sign }
    }

    pub fn pos(index: usize) -> Self {
        Self::new(index, Sign::Pos)
    }

    pub fn neg(index: usize) -> Self {
        Self::new(index, Sign::Neg)
    }

    pub fn inverse(self) -> Self {
        Self::new(self.index, self.sign.negate())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "g{}", self.index),
            Sign::Neg => write!(f, "g{}^-1", self.index),
        }
    }
}

/// An unreduced word in the generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// The formal inverse: reversed, every letter inverted.
    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Which reducible pair to rewrite next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    LeftmostFirst,
    RightmostFirst,
}

fn check_letters(ctx: &GroupContext, w: &Word) -> Result<()> {
    match w.letters.iter().find(|l| l.index < 1 || l.index > ctx.hirsch()) {
        Some(l) => Err(Error::InvalidParameter(format!(
            "letter {l} outside g_1..g_{}",
            ctx.hirsch()
        ))),
        None => Ok(()),
    }
}

fn reducible(a: Letter, b: Letter) -> bool {
    a.index > b.index || (a.index == b.index && a.sign != b.sign)
}

/// Replacement for the reducible pair `(a, b)`.
fn rewrite(a: Letter, b: Letter) -> Vec<Letter> {
    if a.index == b.index {
        Vec::new()
    } else if b.index == 1 && a.index.is_multiple_of(2) {
        vec![Letter::new(1, b.sign.negate()), a]
    } else if a.index % 2 == 1 && a.index > 1 && b.index == a.index - 1 {
        vec![Letter::new(1, a.sign), b, a]
    } else {
        vec![b, a]
    }
}

/// Collects `w` to its normal form using leftmost-first rewriting.
pub fn collect(ctx: &GroupContext, w: &Word) -> Result<GroupElement> {
    collect_with(ctx, w, Strategy::LeftmostFirst)
}

/// Collects `w` with the given rewriting strategy.
///
/// For `n = 1` both strategies agree on every word. For `n >= 2` the rule set
/// is not confluent and the strategies can disagree.
pub fn collect_with(ctx: &GroupContext, w: &Word, strategy: Strategy) -> Result<GroupElement> {
    check_letters(ctx, w)?;
    let mut letters = w.letters.clone();
    match strategy {
        Strategy::LeftmostFirst => {
            // Everything left of `pos` is irreducible, so after a rewrite at
            // `pos` the next leftmost redex starts no earlier than `pos - 1`.
            let mut pos = 0;
            while pos + 1 < letters.len() {
                if reducible(letters[pos], letters[pos + 1]) {
                    let rep = rewrite(letters[pos], letters[pos + 1]);
                    letters.splice(pos..pos + 2, rep);
                    pos = pos.saturating_sub(1);
                } else {
                    pos += 1;
                }
            }
        }
        Strategy::RightmostFirst => {
            while let Some(pos) = (0..letters.len().saturating_sub(1))
                .rev()
                .find(|&p| reducible(letters[p], letters[p + 1]))
            {
                let rep = rewrite(letters[pos], letters[pos + 1]);
                letters.splice(pos..pos + 2, rep);
            }
        }
    }
    let mut exps = vec![BigInt::zero(); ctx.hirsch()];
    for l in &letters {
        exps[l.index - 1] += l.sign.as_i64();
    }
    ctx.element(exps)
}

/// Expands every syllable `g_i^{k_i}` into `|k_i|` letters, capped at
/// [`DEFAULT_EXPANSION_LIMIT`] letters in total.
pub fn element_to_word(ctx: &GroupContext, a: &GroupElement) -> Result<Word> {
    element_to_word_limited(ctx, a, DEFAULT_EXPANSION_LIMIT)
}

pub fn element_to_word_limited(ctx: &GroupContext, a: &GroupElement, limit: usize) -> Result<Word> {
    ctx.check(a)?;
    let total: BigInt = a.exponents().iter().map(|k| k.abs()).sum();
    let total = match total.to_usize() {
        Some(t) if t <= limit => t,
        _ => {
            return Err(Error::OracleTooLarge(format!(
                "element {a} expands to {total} letters, limit is {limit}"
            )))
        }
    };
    let mut letters = Vec::with_capacity(total);
    for (i, k) in a.exponents().iter().enumerate() {
        let sign = if k.is_negative() { Sign::Neg } else { Sign::Pos };
        // Bounded by `total` above.
        let count = k.abs().to_usize().unwrap_or(0);
        letters.extend(std::iter::repeat_n(Letter::new(i + 1, sign), count));
    }
    Ok(Word::new(letters))
}
