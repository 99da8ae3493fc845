//! Independent reference implementations used by the integration suites.
//!
//! Everything here works on plain `i128` vectors and is written directly from
//! the defining formulas, without calling into the solvers it is used to check.

#![allow(dead_code)]

use num_bigint::BigInt;
use polyconj::tssp::Assignment;
use polyconj::word::{Letter, Sign, Word};
use polyconj::{GroupContext, GroupElement};
use rand::Rng;

pub fn to_i128s(a: &GroupElement) -> Vec<i128> {
    a.exponents().iter().map(|e| i128::try_from(e).expect("small exponent")).collect()
}

pub fn from_i128s(v: &[i128]) -> GroupElement {
    GroupElement::new(v.iter().map(|&e| BigInt::from(e)).collect())
}

fn sign(odd: bool) -> i128 {
    if odd {
        -1
    } else {
        1
    }
}

fn parity(e: &[i128], from: usize, to: usize) -> bool {
    // Sum of e_j for even j in [from, to], 1-based, mod 2.
    (from..=to).filter(|j| j % 2 == 0).map(|j| e[j - 1]).sum::<i128>().rem_euclid(2) == 1
}

/// First coordinate of `g_i^k u g_i^{-k}`, straight from the closed forms.
pub fn ref_conjugate_syllable(i: usize, k: i128, e: &[i128]) -> i128 {
    let h = e.len();
    let odd_k = k.rem_euclid(2) == 1;
    if i == 1 {
        let s = sign(parity(e, 2, h));
        e[0] + k - k * s
    } else if i.is_multiple_of(2) {
        let p = parity(e, 2, i) ^ odd_k;
        e[0] * sign(odd_k) + e[i] * (odd_k as i128) * sign(p)
    } else {
        let lower = e[i - 2].rem_euclid(2);
        let p = if i >= 5 { parity(e, 2, i - 3) } else { false };
        e[0] + k * lower * sign(p)
    }
}

/// `w u w^{-1}`, applying the syllables of `w` innermost (highest index) first.
pub fn ref_conjugate(w: &[i128], u: &[i128]) -> Vec<i128> {
    let mut e = u.to_vec();
    for i in (1..=w.len()).rev() {
        if w[i - 1] != 0 {
            e[0] = ref_conjugate_syllable(i, w[i - 1], &e);
        }
    }
    e
}

/// `sum_i k_i x_i (-1)^{x_1 + ... + x_{i-1}}`, over `i128`.
pub fn ref_twisted_sum(k: &[i128], x: &[bool]) -> i128 {
    let mut sum = 0;
    let mut odd = false;
    for (&k, &b) in k.iter().zip(x) {
        if b {
            sum += sign(odd) * k;
            odd = !odd;
        }
    }
    sum
}

/// Every 0/1 vector of length `n`, in lexicographic order.
pub fn all_bits(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << n).map(move |m| (0..n).map(|i| m >> (n - 1 - i) & 1 == 1).collect())
}

/// Every `{-1, 0, 1}` vector of length `n`.
pub fn all_trits(n: usize) -> Vec<Vec<i8>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                [-1i8, 0, 1].into_iter().map(move |t| {
                    let mut q = p.clone();
                    q.push(t);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn ref_tssp_solvable(k: &[i128], m: i128) -> bool {
    all_bits(k.len()).any(|x| ref_twisted_sum(k, &x) == m)
}

pub fn ref_ssp_solvable(k: &[i128], m: i128) -> bool {
    all_bits(k.len()).any(|x| k.iter().zip(&x).filter(|(_, &b)| b).map(|(k, _)| k).sum::<i128>() == m)
}

pub fn ref_sspprime_solvable(k: &[i128], m: i128) -> bool {
    all_trits(k.len())
        .iter()
        .any(|t| k.iter().zip(t).map(|(&k, &t)| k * t as i128).sum::<i128>() == m)
}

/// Enumerates the conjugator families that suffice for `G_n`:
///
/// * `g_1^{x_1} g_2^{b_1} g_4^{b_2} ... g_{2n}^{b_n}` with bits `b_i` and
///   `|x_1| <= |f_1| + |e_1| + |e_3| + ... + |e_{2n+1}|`;
/// * single odd syllables `g_l^k`, `l >= 3`, `|k| <= |f_1 - e_1|`.
///
/// Returns a conjugator found this way, checked with [`ref_conjugate`].
pub fn brute_conjugator(u: &[i128], v: &[i128]) -> Option<Vec<i128>> {
    let h = u.len();
    let n = (h - 1) / 2;
    if u[1..] != v[1..] {
        return None;
    }
    let y: i128 = u.iter().step_by(2).map(|e| e.abs()).sum();
    let x1_bound = v[0].abs() + y;
    for bits in all_bits(n) {
        for x1 in -x1_bound..=x1_bound {
            let mut w = vec![0; h];
            w[0] = x1;
            for (i, &b) in bits.iter().enumerate() {
                w[2 * i + 1] = b as i128;
            }
            if ref_conjugate(&w, u) == v {
                return Some(w);
            }
        }
    }
    let diff = (v[0] - u[0]).abs();
    for l in (3..=h).step_by(2) {
        for k in -diff..=diff {
            let mut w = vec![0; h];
            w[l - 1] = k;
            if ref_conjugate(&w, u) == v {
                return Some(w);
            }
        }
    }
    None
}

pub fn random_vec(rng: &mut impl Rng, len: usize, bound: i128) -> Vec<i128> {
    (0..len).map(|_| rng.gen_range(-bound..=bound)).collect()
}

pub fn random_word(rng: &mut impl Rng, hirsch: usize, len: usize) -> Word {
    Word::new(
        (0..len)
            .map(|_| {
                let sign = if rng.gen() { Sign::Pos } else { Sign::Neg };
                Letter::new(rng.gen_range(1..=hirsch), sign)
            })
            .collect(),
    )
}

/// Every word of exactly `len` letters over `g_1^{±1} .. g_h^{±1}`.
pub fn all_words(hirsch: usize, len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (1..=hirsch)
        .flat_map(|i| [Letter::pos(i), Letter::neg(i)])
        .collect();
    let mut out = vec![Word::new(vec![])];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut v = w.letters.clone();
                    v.push(l);
                    Word::new(v)
                })
            })
            .collect();
    }
    out
}

/// Folds the letters of `w` into the identity with `multiply_syllable`.
pub fn fold_multiply(ctx: &GroupContext, w: &Word) -> GroupElement {
    let mut acc = ctx.identity();
    for l in &w.letters {
        let k = match l.sign {
            Sign::Pos => BigInt::from(1),
            Sign::Neg => BigInt::from(-1),
        };
        acc = ctx.multiply_syllable(&acc, l.index, &k).unwrap();
    }
    acc
}

pub fn assignment(bits: &[bool]) -> Assignment {
    Assignment::new(bits.to_vec())
}

/// Exhaustive TSSP solvability by meet in the middle: every prefix assignment
/// of the first half is paired with every suffix assignment of the second,
/// whose contribution flips sign when the prefix parity is odd.
pub fn mitm_tssp_solvable(k: &[i128], m: i128) -> bool {
    use std::collections::HashSet;
    let (left, right) = k.split_at(k.len() / 2);
    let suffixes: HashSet<i128> = all_bits(right.len()).map(|x| ref_twisted_sum(right, &x)).collect();
    all_bits(left.len()).any(|x| {
        let odd = x.iter().filter(|&&b| b).count() % 2 == 1;
        let rest = m - ref_twisted_sum(left, &x);
        suffixes.contains(&if odd { -rest } else { rest })
    })
}

/// Exhaustive SSP' solvability by meet in the middle over `{-1, 0, 1}^n`.
pub fn mitm_sspprime_solvable(k: &[i128], m: i128) -> bool {
    use std::collections::HashSet;
    let (left, right) = k.split_at(k.len() / 2);
    let dot = |k: &[i128], t: &[i8]| k.iter().zip(t).map(|(&k, &t)| k * t as i128).sum::<i128>();
    let suffixes: HashSet<i128> = all_trits(right.len()).iter().map(|t| dot(right, t)).collect();
    all_trits(left.len()).iter().any(|t| suffixes.contains(&(m - dot(left, t))))
}
