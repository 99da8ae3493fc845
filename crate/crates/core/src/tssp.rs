//! The twisted subset sum problem.
//!
//! Given `k_1, ..., k_n` and `M`, find bits `x_i` with
//! `sum_i k_i x_i (-1)^{x_1 + ... + x_{i-1}} = M`: every selected term is
//! negated when an odd number of earlier terms were selected.
//!
//! [`build_dp`] fills the row-by-row reachability table. A row maps each
//! attainable partial sum to the parities it can be reached with, since the
//! parity decides the sign of the next selected term. Rows are sparse maps, so
//! memory follows the reachable states rather than the `2S + 1` columns of a
//! dense table.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::group::integer_bit_size;

pub const DEFAULT_BRUTE_LIMIT: usize = 25;
pub const DEFAULT_MAX_CELLS: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TsspInstance {
    coefficients: Vec<BigInt>,
    target: BigInt,
}

impl TsspInstance {
    pub fn new(coefficients: Vec<BigInt>, target: BigInt) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidParameter(
                "a TSSP instance needs at least one coefficient".into(),
            ));
        }
        Ok(Self { coefficients, target })
    }

    pub fn from_i64s(coefficients: &[i64], target: i64) -> Result<Self> {
        Self::new(coefficients.iter().copied().map(BigInt::from).collect(), target.into())
    }

    pub fn n(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn target(&self) -> &BigInt {
        &self.target
    }

    /// `S = |k_1| + ... + |k_n|`, the largest magnitude a twisted sum can reach.
    pub fn magnitude_bound(&self) -> BigInt {
        self.coefficients.iter().map(|k| k.abs()).sum()
    }

    pub fn bit_size(&self) -> u64 {
        self.coefficients.iter().chain([&self.target]).map(integer_bit_size).sum()
    }

    pub fn is_solved_by(&self, x: &Assignment) -> bool {
        matches!(twisted_sum(&self.coefficients, x), Ok(s) if s == self.target)
    }
}

/// A 0/1 assignment to the variables of a subset-sum style instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![false; n])
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Self::new(bits.iter().map(|&b| b % 2 == 1).collect())
    }

    /// Canonicalizes arbitrary integers to their residues mod 2.
    pub fn from_integers(values: &[BigInt]) -> Self {
        Self::new(values.iter().map(|v| v.is_odd()).collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn to_u8s(&self) -> Vec<u8> {
        self.bits.iter().map(|&b| b as u8).collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.bits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", *b as u8)?;
        }
        write!(f, ")")
    }
}

/// `sum_i k_i x_i (-1)^{x_1 + ... + x_{i-1}}`.
pub fn twisted_sum(coefficients: &[BigInt], x: &Assignment) -> Result<BigInt> {
    if coefficients.len() != x.len() {
        return Err(Error::InvalidParameter(format!(
            "{} coefficients but {} bits",
            coefficients.len(),
            x.len()
        )));
    }
    let mut sum = BigInt::zero();
    let mut odd = false;
    for (k, &b) in coefficients.iter().zip(&x.bits) {
        if b {
            if odd {
                sum -= k;
            } else {
                sum += k;
            }
            odd = !odd;
        }
    }
    Ok(sum)
}

/// Exhaustive search over all `2^n` assignments; returns the lexicographically
/// smallest solution.
pub fn solve_tssp_brute(inst: &TsspInstance) -> Result<Option<Assignment>> {
    solve_tssp_brute_limited(inst, DEFAULT_BRUTE_LIMIT)
}

pub fn solve_tssp_brute_limited(inst: &TsspInstance, max_n: usize) -> Result<Option<Assignment>> {
    if inst.n() > max_n {
        return Err(Error::OracleTooLarge(format!(
            "brute force over 2^{} assignments exceeds the limit of n = {max_n}",
            inst.n()
        )));
    }
    let mut bits = Vec::with_capacity(inst.n());
    let found = brute_dfs(inst, &mut bits, &BigInt::zero(), false);
    Ok(found.then(|| Assignment::new(bits)))
}

fn brute_dfs(inst: &TsspInstance, bits: &mut Vec<bool>, sum: &BigInt, odd: bool) -> bool {
    let i = bits.len();
    if i == inst.n() {
        return *sum == inst.target;
    }
    bits.push(false);
    if brute_dfs(inst, bits, sum, odd) {
        return true;
    }
    bits.pop();
    let k = &inst.coefficients[i];
    let next = if odd { sum - k } else { sum + k };
    bits.push(true);
    if brute_dfs(inst, bits, &next, !odd) {
        return true;
    }
    bits.pop();
    false
}

/// Parities with which a partial sum is attainable.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Marks(u8);

impl Marks {
    pub const EVEN: Marks = Marks(1);
    pub const ODD: Marks = Marks(2);
    pub const BOTH: Marks = Marks(3);

    pub fn has(self, odd: bool) -> bool {
        self.0 & Self::of(odd).0 != 0
    }

    pub fn of(odd: bool) -> Marks {
        if odd {
            Self::ODD
        } else {
            Self::EVEN
        }
    }

    pub fn insert(&mut self, odd: bool) {
        self.0 |= Self::of(odd).0;
    }

    pub fn count(self) -> usize {
        self.0.count_ones() as usize
    }
}

/// Reachability table: `row(i)` maps each partial twisted sum of the first `i`
/// coefficients to the parities of `x_1 + ... + x_i` that reach it.
#[derive(Debug, Clone)]
pub struct DpTable {
    coefficients: Vec<BigInt>,
    rows: Vec<BTreeMap<BigInt, Marks>>,
}

impl DpTable {
    pub fn n(&self) -> usize {
        self.coefficients.len()
    }

    /// Row `i`, for `1 <= i <= n`.
    pub fn row(&self, i: usize) -> &BTreeMap<BigInt, Marks> {
        &self.rows[i - 1]
    }

    /// Number of (row, sum) entries stored.
    pub fn states(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn marks(&self) -> usize {
        self.rows.iter().flat_map(|r| r.values()).map(|m| m.count()).sum()
    }

    pub fn is_reachable(&self, target: &BigInt) -> bool {
        self.rows.last().is_some_and(|r| r.contains_key(target))
    }

    fn marks_at(&self, row: usize, s: &BigInt) -> Marks {
        if row == 0 {
            return if s.is_zero() { Marks::EVEN } else { Marks::default() };
        }
        self.rows[row - 1].get(s).copied().unwrap_or_default()
    }

    /// Walks back from `target` in the last row, preferring `x_i = 0` at every
    /// step.
    pub fn reconstruct(&self, target: &BigInt) -> Option<Assignment> {
        let last = self.rows.last()?.get(target)?;
        let mut odd = !last.has(false);
        let mut s = target.clone();
        let mut bits = vec![false; self.n()];
        for i in (1..=self.n()).rev() {
            let k = &self.coefficients[i - 1];
            if self.marks_at(i - 1, &s).has(odd) {
                continue;
            }
            // x_i = 1 flipped the parity and added k_i with the previous sign.
            let prev = if odd { &s - k } else { &s + k };
            debug_assert!(self.marks_at(i - 1, &prev).has(!odd));
            bits[i - 1] = true;
            s = prev;
            odd = !odd;
        }
        Some(Assignment::new(bits))
    }
}

pub fn build_dp(inst: &TsspInstance) -> Result<DpTable> {
    build_dp_limited(inst, DEFAULT_MAX_CELLS)
}

/// Fills the table, refusing when the nominal dense size `(n + 1)(2S + 1)`
/// exceeds `max_cells`.
pub fn build_dp_limited(inst: &TsspInstance, max_cells: u128) -> Result<DpTable> {
    let s = inst.magnitude_bound();
    let cells: BigInt = BigInt::from(inst.n() + 1) * (s * 2 + 1);
    let cells_u128 = u128::try_from(&cells).unwrap_or(u128::MAX);
    if cells_u128 > max_cells {
        return Err(Error::TableTooLarge { cells: cells_u128, limit: max_cells });
    }

    // Row 0 holds only the empty assignment: sum 0 with even parity.
    let base = BTreeMap::from([(BigInt::zero(), Marks::EVEN)]);
    let mut rows: Vec<BTreeMap<BigInt, Marks>> = Vec::with_capacity(inst.n());
    for k in &inst.coefficients {
        let prev = rows.last().unwrap_or(&base);
        let mut next = prev.clone();
        for (sum, marks) in prev {
            if marks.has(false) {
                next.entry(sum + k).or_default().insert(true);
            }
            if marks.has(true) {
                next.entry(sum - k).or_default().insert(false);
            }
        }
        rows.push(next);
    }
    Ok(DpTable { coefficients: inst.coefficients.clone(), rows })
}

pub fn solve_tssp_dp(inst: &TsspInstance) -> Result<Option<Assignment>> {
    solve_tssp_dp_limited(inst, DEFAULT_MAX_CELLS)
}

pub fn solve_tssp_dp_limited(inst: &TsspInstance, max_cells: u128) -> Result<Option<Assignment>> {
    let table = build_dp_limited(inst, max_cells)?;
    let Some(x) = table.reconstruct(inst.target()) else {
        return Ok(None);
    };
    if !inst.is_solved_by(&x) {
        return Err(Error::Unsound(format!(
            "DP witness {x} does not reach {}",
            inst.target()
        )));
    }
    Ok(Some(x))
}
