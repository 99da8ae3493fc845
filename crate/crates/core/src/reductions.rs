//! The reduction chain `SSP -> SSP' -> TSSP -> conjugacy in G_n`.
//!
//! Every forward map has a pullback that carries a witness for the image back
//! to a witness for the source. Pullbacks re-check the witness against the
//! source equation and fail with [`Error::ReductionSoundness`] instead of
//! returning something unverified.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{integer_bit_size, GroupContext, GroupElement};
use crate::tssp::{twisted_sum, Assignment, TsspInstance};

pub const DEFAULT_SSP_BRUTE_LIMIT: usize = 25;
pub const DEFAULT_SSPPRIME_BRUTE_LIMIT: usize = 16;

/// Subset sum: `sum_i k_i x_i = M` with `x_i` in `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SspInstance {
    coefficients: Vec<BigInt>,
    target: BigInt,
}

/// The signed variant: `sum_i k_i x_i = M` with `x_i` in `{-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SspPrimeInstance {
    coefficients: Vec<BigInt>,
    target: BigInt,
}

macro_rules! linear_instance {
    ($ty:ident, $name:literal) => {
        impl $ty {
            pub fn new(coefficients: Vec<BigInt>, target: BigInt) -> Result<Self> {
                if coefficients.is_empty() {
                    return Err(Error::InvalidParameter(format!(
                        "an {} instance needs at least one coefficient",
                        $name
                    )));
                }
                Ok(Self { coefficients, target })
            }

            pub fn from_i64s(coefficients: &[i64], target: i64) -> Result<Self> {
                Self::new(
                    coefficients.iter().copied().map(BigInt::from).collect(),
                    target.into(),
                )
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

            pub fn bit_size(&self) -> u64 {
                self.coefficients
                    .iter()
                    .chain([&self.target])
                    .map(integer_bit_size)
                    .sum()
            }
        }
    };
}

linear_instance!(SspInstance, "SSP");
linear_instance!(SspPrimeInstance, "SSP'");

impl SspInstance {
    pub fn is_solved_by(&self, x: &Assignment) -> bool {
        x.len() == self.n()
            && self
                .coefficients
                .iter()
                .zip(x.bits())
                .filter(|(_, &b)| b)
                .map(|(k, _)| k)
                .sum::<BigInt>()
                == self.target
    }
}

impl SspPrimeInstance {
    pub fn is_solved_by(&self, x: &SspPrimeSolution) -> bool {
        x.len() == self.n()
            && self
                .coefficients
                .iter()
                .zip(x.values())
                .map(|(k, &v)| k * v)
                .sum::<BigInt>()
                == self.target
    }
}

/// Values in `{-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SspPrimeSolution {
    values: Vec<i8>,
}

impl SspPrimeSolution {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !(-1..=1).contains(*v)) {
            return Err(Error::InvalidParameter(format!(
                "SSP' values must lie in {{-1, 0, 1}}, got {v}"
            )));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Is `u` conjugate to `v` in `G_n`?
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConjugacyInstance {
    pub ctx: GroupContext,
    pub u: GroupElement,
    pub v: GroupElement,
}

impl ConjugacyInstance {
    pub fn new(ctx: GroupContext, u: GroupElement, v: GroupElement) -> Result<Self> {
        ctx.check(&u)?;
        ctx.check(&v)?;
        Ok(Self { ctx, u, v })
    }

    pub fn bit_size(&self) -> u64 {
        self.u.bit_length() + self.v.bit_length()
    }
}

// Exhaustive enumeration shared by both brute solvers. Runs on i128 when every
// partial sum provably fits, otherwise on BigInt.

fn fits_i128(coefficients: &[BigInt], target: &BigInt) -> Option<(Vec<i128>, i128)> {
    let bound = BigInt::one() << 120;
    let total: BigInt = coefficients.iter().map(|k| k.abs()).sum();
    if total >= bound || target.abs() >= bound {
        return None;
    }
    let ks = coefficients.iter().map(|k| k.to_i128()).collect::<Option<Vec<_>>>()?;
    Some((ks, target.to_i128()?))
}

fn enumerate<T>(coefficients: &[T], target: &T, domain: &[i8], values: &mut Vec<i8>, sum: T) -> bool
where
    T: Clone + PartialEq + Add<Output = T> + Sub<Output = T>,
{
    let i = values.len();
    if i == coefficients.len() {
        return sum == *target;
    }
    for &d in domain {
        let next = match d {
            0 => sum.clone(),
            1 => sum.clone() + coefficients[i].clone(),
            _ => sum.clone() - coefficients[i].clone(),
        };
        values.push(d);
        if enumerate(coefficients, target, domain, values, next) {
            return true;
        }
        values.pop();
    }
    false
}

fn brute(coefficients: &[BigInt], target: &BigInt, domain: &[i8]) -> Option<Vec<i8>> {
    let mut values = Vec::with_capacity(coefficients.len());
    let found = match fits_i128(coefficients, target) {
        Some((ks, m)) => enumerate(&ks, &m, domain, &mut values, 0i128),
        None => enumerate(coefficients, target, domain, &mut values, BigInt::zero()),
    };
    found.then_some(values)
}

/// Exhaustive search; returns the lexicographically smallest subset.
pub fn solve_ssp_brute(inst: &SspInstance) -> Result<Option<Assignment>> {
    solve_ssp_brute_limited(inst, DEFAULT_SSP_BRUTE_LIMIT)
}

pub fn solve_ssp_brute_limited(inst: &SspInstance, max_n: usize) -> Result<Option<Assignment>> {
    if inst.n() > max_n {
        return Err(Error::OracleTooLarge(format!(
            "SSP brute force with n = {} exceeds the limit {max_n}",
            inst.n()
        )));
    }
    Ok(brute(&inst.coefficients, &inst.target, &[0, 1])
        .map(|v| Assignment::new(v.into_iter().map(|b| b == 1).collect())))
}

/// Exhaustive search over `3^n` value vectors in lexicographic order of
/// `(-1, 0, 1)`.
pub fn solve_sspprime_brute(inst: &SspPrimeInstance) -> Result<Option<SspPrimeSolution>> {
    solve_sspprime_brute_limited(inst, DEFAULT_SSPPRIME_BRUTE_LIMIT)
}

pub fn solve_sspprime_brute_limited(
    inst: &SspPrimeInstance,
    max_n: usize,
) -> Result<Option<SspPrimeSolution>> {
    if inst.n() > max_n {
        return Err(Error::OracleTooLarge(format!(
            "SSP' brute force with n = {} exceeds the limit {max_n}",
            inst.n()
        )));
    }
    Ok(brute(&inst.coefficients, &inst.target, &[-1, 0, 1]).map(|values| SspPrimeSolution { values }))
}

/// Folds the constraints `x_i + y_i = 1` into the sum, one at a time from
/// `i = 1` to `i = n`: the current equation `E = R` becomes
/// `x_i + y_i + 4E = 4R + 1`.
///
/// The result has variables `x_1..x_n, y_1..y_n` with coefficients
/// `4^{n-i} + 4^n k_i` and `4^{n-i}`, and target `4^n M + (4^n - 1) / 3`.
/// Because `1 - x_i - y_i` lies in `[-1, 3]`, each step keeps the solution set.
pub fn ssp_to_sspprime(inst: &SspInstance) -> SspPrimeInstance {
    let n = inst.n();
    let mut xs = inst.coefficients.clone();
    let mut ys = vec![BigInt::zero(); n];
    let mut rhs = inst.target.clone();
    for i in 0..n {
        for c in xs.iter_mut().chain(ys.iter_mut()) {
            *c *= 4;
        }
        rhs = rhs * 4 + 1;
        xs[i] += 1;
        ys[i] += 1;
    }
    xs.extend(ys);
    SspPrimeInstance { coefficients: xs, target: rhs }
}

/// Keeps the `x` half of a solution to [`ssp_to_sspprime`]`(source)`.
pub fn pullback_sspprime_to_ssp(source: &SspInstance, sol: &SspPrimeSolution) -> Result<Assignment> {
    let n = source.n();
    if sol.len() != 2 * n {
        return Err(Error::ReductionSoundness(format!(
            "expected {} SSP' values, got {}",
            2 * n,
            sol.len()
        )));
    }
    let mut bits = Vec::with_capacity(n);
    for (i, &v) in sol.values[..n].iter().enumerate() {
        match v {
            0 => bits.push(false),
            1 => bits.push(true),
            _ => {
                return Err(Error::ReductionSoundness(format!(
                    "x_{} = {v} is not a 0/1 value",
                    i + 1
                )))
            }
        }
    }
    let x = Assignment::new(bits);
    if !source.is_solved_by(&x) {
        return Err(Error::ReductionSoundness(format!(
            "pulled-back subset {x} does not sum to {}",
            source.target
        )));
    }
    Ok(x)
}

/// `SSP'({k_1..k_n}, M)` becomes `TSSP({0, k_1, 0, k_2, ..., 0, k_n}, M)`:
/// the zero coefficient in front of each `k_i` supplies a free sign flip.
pub fn sspprime_to_tssp(inst: &SspPrimeInstance) -> TsspInstance {
    let coefficients = inst
        .coefficients
        .iter()
        .flat_map(|k| [BigInt::zero(), k.clone()])
        .collect();
    TsspInstance::new(coefficients, inst.target.clone()).expect("n >= 1 is preserved")
}

/// Forward solution map for [`sspprime_to_tssp`]: `y_{2i} = |x_i|`, and the
/// sign bit `y_{2i-1}` is set exactly when the parity so far would otherwise
/// give `k_i` the wrong sign.
pub fn sspprime_solution_to_tssp(sol: &SspPrimeSolution) -> Assignment {
    let mut bits = Vec::with_capacity(2 * sol.len());
    let mut odd = false;
    for &x in &sol.values {
        let flip = (x == -1 && !odd) || (x == 1 && odd);
        bits.push(flip);
        bits.push(x != 0);
        odd ^= flip ^ (x != 0);
    }
    Assignment::new(bits)
}

/// Reads `x_i = y_{2i} (-1)^{y_1 + ... + y_{2i-1}}`.
pub fn pullback_tssp_to_sspprime(source: &SspPrimeInstance, y: &Assignment) -> Result<SspPrimeSolution> {
    if y.len() != 2 * source.n() {
        return Err(Error::ReductionSoundness(format!(
            "expected {} TSSP bits, got {}",
            2 * source.n(),
            y.len()
        )));
    }
    let mut values = Vec::with_capacity(source.n());
    let mut odd = false;
    for pair in y.bits().chunks(2) {
        odd ^= pair[0];
        values.push(match (pair[1], odd) {
            (false, _) => 0,
            (true, false) => 1,
            (true, true) => -1,
        });
        odd ^= pair[1];
    }
    let sol = SspPrimeSolution { values };
    if !source.is_solved_by(&sol) {
        return Err(Error::ReductionSoundness(format!(
            "pulled-back SSP' values {:?} do not reach {}",
            sol.values, source.target
        )));
    }
    Ok(sol)
}

/// `u = g_3^{k_1} g_5^{k_2} ... g_{2n+1}^{k_n}` and `v = g_1^{-M} u`.
pub fn tssp_to_conjugacy(inst: &TsspInstance) -> ConjugacyInstance {
    let ctx = GroupContext::new(inst.n()).expect("n >= 1 is preserved");
    let mut u = vec![BigInt::zero(); ctx.hirsch()];
    for (i, k) in inst.coefficients().iter().enumerate() {
        u[2 * i + 2] = k.clone();
    }
    let mut v = u.clone();
    v[0] = -inst.target();
    ConjugacyInstance {
        ctx,
        u: GroupElement::new(u),
        v: GroupElement::new(v),
    }
}

/// `g_2^{x_1} g_4^{x_2} ... g_{2n}^{x_n}`.
pub fn assignment_to_conjugator(ctx: &GroupContext, x: &Assignment) -> Result<GroupElement> {
    if x.len() != ctx.n() {
        return Err(Error::InvalidParameter(format!(
            "assignment has {} bits, G_{} needs {}",
            x.len(),
            ctx.n(),
            ctx.n()
        )));
    }
    let mut w = ctx.identity().into_exponents();
    for (i, &b) in x.bits().iter().enumerate() {
        if b {
            w[2 * i + 1] = BigInt::one();
        }
    }
    ctx.element(w)
}

/// Drops the odd-indexed syllables of `w` and reduces the rest mod 2.
pub fn conjugator_to_assignment(ctx: &GroupContext, w: &GroupElement) -> Result<Assignment> {
    ctx.check(w)?;
    Ok(Assignment::new(
        (1..=ctx.n()).map(|i| w.exponent(2 * i).is_odd()).collect(),
    ))
}

/// Conjugator for [`tssp_to_conjugacy`]`(source)` back to a TSSP witness.
pub fn pullback_conjugacy_to_tssp(source: &TsspInstance, w: &GroupElement) -> Result<Assignment> {
    let ctx = GroupContext::new(source.n())?;
    let x = conjugator_to_assignment(&ctx, w)?;
    if !source.is_solved_by(&x) {
        return Err(Error::ReductionSoundness(format!(
            "assignment {x} read off the conjugator has twisted sum {}, not {}",
            twisted_sum(source.coefficients(), &x)?,
            source.target()
        )));
    }
    Ok(x)
}

/// All intermediate instances of `SSP -> SSP' -> TSSP -> conjugacy`.
#[derive(Debug, Clone)]
pub struct ReductionChain {
    pub ssp: SspInstance,
    pub sspprime: SspPrimeInstance,
    pub tssp: TsspInstance,
    pub conjugacy: ConjugacyInstance,
}

impl ReductionChain {
    pub fn new(ssp: &SspInstance) -> Self {
        let sspprime = ssp_to_sspprime(ssp);
        let tssp = sspprime_to_tssp(&sspprime);
        let conjugacy = tssp_to_conjugacy(&tssp);
        Self { ssp: ssp.clone(), sspprime, tssp, conjugacy }
    }

    pub fn pullback_tssp(&self, y: &Assignment) -> Result<Assignment> {
        let sol = pullback_tssp_to_sspprime(&self.sspprime, y)?;
        pullback_sspprime_to_ssp(&self.ssp, &sol)
    }

    pub fn pullback_conjugator(&self, w: &GroupElement) -> Result<Assignment> {
        let y = pullback_conjugacy_to_tssp(&self.tssp, w)?;
        self.pullback_tssp(&y)
    }
}

/// Result of [`ssp_search_via_decision`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub subset: Assignment,
    pub oracle_calls: usize,
}

/// Finds a subset of a solvable instance using only yes/no answers: for
/// `i = n` down to `2`, ask whether the remaining target is reachable without
/// `k_i`; if not, `k_i` must be used. At most `n - 1` oracle calls.
pub fn ssp_search_via_decision<F>(mut decide: F, inst: &SspInstance) -> Result<SearchOutcome>
where
    F: FnMut(&SspInstance) -> Result<bool>,
{
    let n = inst.n();
    let mut bits = vec![false; n];
    let mut target = inst.target.clone();
    let mut oracle_calls = 0;
    for i in (1..n).rev() {
        let without = SspInstance::new(inst.coefficients[..i].to_vec(), target.clone())?;
        oracle_calls += 1;
        if !decide(&without)? {
            bits[i] = true;
            target -= &inst.coefficients[i];
        }
    }
    // One coefficient left: either take it or the remainder must be zero.
    if target.is_zero() {
        bits[0] = false;
    } else if target == inst.coefficients[0] {
        bits[0] = true;
    }
    let subset = Assignment::new(bits);
    if !inst.is_solved_by(&subset) {
        return Err(Error::InvalidPromise(format!(
            "instance with target {} has no solution",
            inst.target
        )));
    }
    Ok(SearchOutcome { subset, oracle_calls })
}

/// `4^n`, as used by the SSP' construction.
pub fn four_pow(n: usize) -> BigInt {
    Pow::pow(BigInt::from(4), n)
}
