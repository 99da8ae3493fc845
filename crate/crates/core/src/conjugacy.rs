//! Deciding and witnessing conjugacy in `G_n`.
//!
//! Two elements can only be conjugate when they agree on every coordinate past
//! the first. If some even-indexed coordinate of `u` is odd, a single odd
//! syllable `g_l^k` moves the `g_1` exponent anywhere, so the answer is yes.
//! Otherwise every conjugator may be taken to be `g_2^{b_1} g_4^{b_2} ...
//! g_{2n}^{b_n}` with bits `b_i`, and conjugating by `g_j` (innermost first)
//! sends the `g_1` exponent `s` to `-(s + e_{j+1})`. The set of attainable
//! values is computed stage by stage with back-pointers, exactly like the TSSP
//! table.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{even_exponent_parity, GroupContext, GroupElement};

pub const DEFAULT_MAX_STATES: usize = 10_000_000;

/// A claimed conjugator `w` with `w u w^{-1} = v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub w: GroupElement,
}

impl Certificate {
    pub fn new(w: GroupElement) -> Self {
        Self { w }
    }

    pub fn bit_length(&self) -> u64 {
        self.w.bit_length()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.w.fmt(f)
    }
}

/// `(value, predecessor, bit)`, sorted by value.
type Stage<T> = Vec<(T, T, bool)>;

/// Stages stored as `i64` whenever the magnitude bound allows it.
#[derive(Debug, Clone)]
enum Stages {
    Small(Vec<Stage<i64>>),
    Big(Vec<Stage<BigInt>>),
}

/// Each stage keeps `s` (bit 0) and adds `-(s + shift)` (bit 1). Negation
/// reverses order, so both halves are already sorted and a merge suffices;
/// on a collision the bit-0 entry wins.
fn build_stages<T: Ord + Clone>(
    start: T,
    shifts: &[T],
    flip: impl Fn(&T, &T) -> T,
    max_states: usize,
) -> Result<Vec<Stage<T>>> {
    let mut stages: Vec<Stage<T>> = Vec::with_capacity(shifts.len());
    let mut total = 0usize;
    for shift in shifts {
        let prev: Vec<T> = match stages.last() {
            Some(stage) => stage.iter().map(|(v, _, _)| v.clone()).collect(),
            None => vec![start.clone()],
        };
        let mut stay = prev.iter().map(|s| (s.clone(), s.clone(), false)).peekable();
        let mut moved = prev.iter().rev().map(|s| (flip(s, shift), s.clone(), true)).peekable();
        let mut next = Vec::with_capacity(2 * prev.len());
        loop {
            let order = match (stay.peek(), moved.peek()) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            if order == Ordering::Equal {
                moved.next();
            }
            next.extend(if order == Ordering::Greater { moved.next() } else { stay.next() });
        }
        total += next.len();
        if total > max_states {
            return Err(Error::StateLimitExceeded { limit: max_states });
        }
        stages.push(next);
    }
    Ok(stages)
}

fn trace_stages<T: Ord + Clone>(stages: &[Stage<T>], indices: &[usize], start: &T, value: T) -> Option<Vec<bool>> {
    let mut bits = vec![false; indices.len()];
    let mut s = value;
    for (stage, &j) in stages.iter().zip(indices).rev() {
        let pos = stage.binary_search_by(|(v, _, _)| v.cmp(&s)).ok()?;
        bits[j / 2 - 1] = stage[pos].2;
        s = stage[pos].1.clone();
    }
    (s == *start).then_some(bits)
}

/// One stage per even generator, from `g_{2n}` down to `g_2`.
#[derive(Debug, Clone)]
pub struct ReachableSet {
    start: BigInt,
    indices: Vec<usize>,
    stages: Stages,
}

impl ReachableSet {
    pub fn start(&self) -> &BigInt {
        &self.start
    }

    /// Generator indices in processing order: `2n, 2n - 2, ..., 2`.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Values attainable after conjugating by `g_j^{b}` for every stage up to
    /// and including `index`, in increasing order.
    pub fn stage(&self, index: usize) -> Box<dyn Iterator<Item = BigInt> + '_> {
        match self.indices.iter().position(|&j| j == index) {
            Some(p) => self.values(p),
            None => Box::new(std::iter::empty()),
        }
    }

    pub fn final_values(&self) -> Box<dyn Iterator<Item = BigInt> + '_> {
        match self.indices.len() {
            0 => Box::new(std::iter::empty()),
            len => self.values(len - 1),
        }
    }

    fn values(&self, p: usize) -> Box<dyn Iterator<Item = BigInt> + '_> {
        match &self.stages {
            Stages::Small(s) => Box::new(s[p].iter().map(|(v, _, _)| BigInt::from(*v))),
            Stages::Big(s) => Box::new(s[p].iter().map(|(v, _, _)| v.clone())),
        }
    }

    pub fn contains(&self, value: &BigInt) -> bool {
        match &self.stages {
            Stages::Small(s) => i64::try_from(value)
                .is_ok_and(|x| s.last().is_some_and(|st| st.binary_search_by(|(v, _, _)| v.cmp(&x)).is_ok())),
            Stages::Big(s) => s.last().is_some_and(|st| st.binary_search_by(|(v, _, _)| v.cmp(value)).is_ok()),
        }
    }

    /// Total number of stored values across all stages.
    pub fn states(&self) -> usize {
        match &self.stages {
            Stages::Small(s) => s.iter().map(Vec::len).sum(),
            Stages::Big(s) => s.iter().map(Vec::len).sum(),
        }
    }

    /// Bits `b_1..b_n` (for `g_2, g_4, ..., g_{2n}`) that lead to `value`.
    pub fn trace(&self, value: &BigInt) -> Option<Vec<bool>> {
        match &self.stages {
            Stages::Small(s) => {
                let start = i64::try_from(&self.start).ok()?;
                trace_stages(s, &self.indices, &start, i64::try_from(value).ok()?)
            }
            Stages::Big(s) => trace_stages(s, &self.indices, &self.start, value.clone()),
        }
    }
}

/// Conjugacy solver with a configurable cap on the reachable-set size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjugacySolver {
    max_states: usize,
}

impl Default for ConjugacySolver {
    fn default() -> Self {
        Self { max_states: DEFAULT_MAX_STATES }
    }
}

/// How [`ConjugacySolver::decide`] reached its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    TailMismatch,
    Equal,
    FastPath { l: usize },
    Reachable { states: usize },
}

impl ConjugacySolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_max_states(max_states: usize) -> Self {
        Self { max_states }
    }

    pub fn max_states(&self) -> usize {
        self.max_states
    }

    pub fn reachable_g1_values(&self, ctx: &GroupContext, u: &GroupElement) -> Result<ReachableSet> {
        ctx.check(u)?;
        let e = u.exponents();
        if let Some(j) = (2..=2 * ctx.n()).step_by(2).find(|&j| e[j - 1].is_odd()) {
            return Err(Error::NotAllEven { index: j });
        }
        let start = e[0].clone();
        let indices: Vec<usize> = (2..=2 * ctx.n()).rev().step_by(2).collect();
        let shifts: Vec<&BigInt> = indices.iter().map(|&j| &e[j]).collect();
        let small: Option<Vec<i64>> = shifts.iter().map(|s| i64::try_from(*s).ok()).collect();
        let stages = match small {
            Some(shifts) if i64::try_from(reachable_magnitude_bound(u)).is_ok() => Stages::Small(build_stages(
                i64::try_from(&start).expect("bounded by the magnitude bound"),
                &shifts,
                |s, k| -(s + k),
                self.max_states,
            )?),
            _ => {
                let shifts: Vec<BigInt> = shifts.into_iter().cloned().collect();
                Stages::Big(build_stages(start.clone(), &shifts, |s, k| -(s + k), self.max_states)?)
            }
        };
        Ok(ReachableSet { start, indices, stages })
    }

    /// Decides conjugacy and reports which route produced the answer.
    pub fn decide_with_route(&self, ctx: &GroupContext, u: &GroupElement, v: &GroupElement) -> Result<(bool, Route)> {
        check_pair(ctx, u, v)?;
        if u.exponents()[1..] != v.exponents()[1..] {
            return Ok((false, Route::TailMismatch));
        }
        if u == v {
            return Ok((true, Route::Equal));
        }
        if let Some(l) = fast_path_index(ctx, u) {
            return Ok((true, Route::FastPath { l }));
        }
        let set = self.reachable_g1_values(ctx, u)?;
        let states = set.states();
        Ok((set.contains(v.exponent(1)), Route::Reachable { states }))
    }

    pub fn decide(&self, ctx: &GroupContext, u: &GroupElement, v: &GroupElement) -> Result<bool> {
        self.decide_with_route(ctx, u, v).map(|(answer, _)| answer)
    }

    /// Returns a verified certificate, or `None` when `u` and `v` are not
    /// conjugate.
    pub fn search(&self, ctx: &GroupContext, u: &GroupElement, v: &GroupElement) -> Result<Option<Certificate>> {
        check_pair(ctx, u, v)?;
        if u.exponents()[1..] != v.exponents()[1..] {
            return Ok(None);
        }
        let w = if u == v {
            ctx.identity()
        } else if let Some(w) = fast_path_conjugator(ctx, u, v)? {
            w
        } else {
            let set = self.reachable_g1_values(ctx, u)?;
            let Some(bits) = set.trace(v.exponent(1)) else {
                return Ok(None);
            };
            let mut w = ctx.identity().into_exponents();
            for (i, b) in bits.into_iter().enumerate() {
                if b {
                    w[2 * i + 1] = BigInt::from(1);
                }
            }
            GroupElement::new(w)
        };
        let cert = Certificate::new(w);
        if !verify_certificate(ctx, u, v, &cert)? {
            return Err(Error::Unsound(format!(
                "conjugator {cert} does not map {u} to {v}"
            )));
        }
        Ok(Some(cert))
    }
}

fn check_pair(ctx: &GroupContext, u: &GroupElement, v: &GroupElement) -> Result<()> {
    ctx.check(u)?;
    ctx.check(v)
}

/// Smallest odd `l >= 3` with `e_{l-1}` odd.
pub fn fast_path_index(ctx: &GroupContext, u: &GroupElement) -> Option<usize> {
    (3..=2 * ctx.n() + 1)
        .step_by(2)
        .find(|&l| u.exponent(l - 1).is_odd())
}

/// `g_l^{(f_1 - e_1)(-1)^{e_2 + e_4 + ... + e_{l-3}}}` for the smallest
/// admissible `l`, or `None` when no even coordinate of `u` is odd.
pub fn fast_path_conjugator(ctx: &GroupContext, u: &GroupElement, v: &GroupElement) -> Result<Option<GroupElement>> {
    check_pair(ctx, u, v)?;
    let Some(l) = fast_path_index(ctx, u) else {
        return Ok(None);
    };
    let mut k = v.exponent(1) - u.exponent(1);
    if even_exponent_parity(u.exponents(), l - 3) {
        k = -k;
    }
    ctx.syllable(l, k).map(Some)
}

/// `conjugate(cert.w, u) == v`.
pub fn verify_certificate(ctx: &GroupContext, u: &GroupElement, v: &GroupElement, cert: &Certificate) -> Result<bool> {
    check_pair(ctx, u, v)?;
    ctx.check(&cert.w)?;
    Ok(ctx.conjugate(&cert.w, u)? == *v)
}

pub fn decide_conjugate(ctx: &GroupContext, u: &GroupElement, v: &GroupElement) -> Result<bool> {
    ConjugacySolver::new().decide(ctx, u, v)
}

pub fn search_conjugator(ctx: &GroupContext, u: &GroupElement, v: &GroupElement) -> Result<Option<Certificate>> {
    ConjugacySolver::new().search(ctx, u, v)
}

pub fn reachable_g1_values(ctx: &GroupContext, u: &GroupElement) -> Result<ReachableSet> {
    ConjugacySolver::new().reachable_g1_values(ctx, u)
}

/// `|e_1| + |e_3| + ... + |e_{2n+1}|`, a bound on every attainable `g_1`
/// exponent in the all-even case.
pub fn reachable_magnitude_bound(u: &GroupElement) -> BigInt {
    u.exponents().iter().step_by(2).map(|e| e.abs()).sum()
}

/// Upper bound on the certificate bit length:
/// `log2(|f_1| + |e_1| + |e_3| + ... + |e_{2n+1}| + 1) + c n`.
pub fn certificate_length_bound(ctx: &GroupContext, u: &GroupElement, v: &GroupElement, c: u64) -> f64 {
    let sum: BigInt = reachable_magnitude_bound(u) + v.exponent(1).abs() + 1;
    let log = if sum.is_zero() { 0.0 } else { sum.bits() as f64 };
    log + (c * ctx.n() as u64) as f64
}
