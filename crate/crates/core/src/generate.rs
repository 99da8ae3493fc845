//! Seeded random instances.
//!
//! The generator is ChaCha8 seeded with `seed` via `seed_from_u64`, so a spec
//! always produces the same file. Draws happen in this order:
//!
//! * `ssp`, `sspp`, `tssp`: `n` coefficients uniform in `[-B, B]`. With the
//!   solvable bias, a uniform assignment (bits, or values in `{-1, 0, 1}` for
//!   `sspp`) follows and the target is its image. Otherwise the target is
//!   uniform in `[-S, S]` with `S = |k_1| + ... + |k_n|`.
//! * `conj`: `u` with `2n + 1` exponents uniform in `[-B, B]`. With the bias,
//!   a conjugator `w` is drawn the same way and `v = w u w^{-1}`. Otherwise `v`
//!   copies the tail of `u` and takes a first exponent uniform in `[-B, B]`.
//! * `cert`: `w` with `2n + 1` exponents uniform in `[-B, B]`.
//! * `sol`: `n` uniform bits.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conjugacy::Certificate;
use crate::error::{Error, Result};
use crate::format::{InstanceFile, Witness};
use crate::group::{GroupContext, GroupElement};
use crate::reductions::{ConjugacyInstance, SspInstance, SspPrimeInstance};
use crate::tssp::{twisted_sum, Assignment, TsspInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Ssp,
    SspPrime,
    Tssp,
    Conj,
    Cert,
    Sol,
}

impl Kind {
    pub const ALL: [Kind; 6] = [Kind::Ssp, Kind::SspPrime, Kind::Tssp, Kind::Conj, Kind::Cert, Kind::Sol];

    pub fn tag(self) -> &'static str {
        match self {
            Kind::Ssp => "ssp",
            Kind::SspPrime => "sspp",
            Kind::Tssp => "tssp",
            Kind::Conj => "conj",
            Kind::Cert => "cert",
            Kind::Sol => "sol",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown kind `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub kind: Kind,
    pub n: usize,
    pub bound: u64,
    pub seed: u64,
    pub solvable: bool,
}

impl GenSpec {
    pub fn new(kind: Kind, n: usize, bound: u64, seed: u64, solvable: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if bound == 0 {
            return Err(Error::InvalidParameter("the coefficient bound must be positive".into()));
        }
        Ok(Self { kind, n, bound, seed, solvable })
    }
}

fn uniform(rng: &mut ChaCha8Rng, bound: &BigInt) -> BigInt {
    let b = i128::try_from(bound).expect("bound fits in i128");
    BigInt::from(rng.gen_range(-b..=b))
}

fn vector(rng: &mut ChaCha8Rng, len: usize, bound: u64) -> Vec<BigInt> {
    let b = BigInt::from(bound);
    (0..len).map(|_| uniform(rng, &b)).collect()
}

fn bits(rng: &mut ChaCha8Rng, n: usize) -> Assignment {
    Assignment::new((0..n).map(|_| rng.gen()).collect())
}

pub fn generate(spec: &GenSpec) -> InstanceFile {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let linear = |rng: &mut ChaCha8Rng, values: &[i8]| -> (Vec<BigInt>, BigInt) {
        let ks = vector(rng, n, spec.bound);
        let target = if spec.solvable {
            ks.iter().map(|k| k * values[rng.gen_range(0..values.len())]).sum()
        } else {
            let s: BigInt = ks.iter().map(|k| k.abs()).sum();
            uniform(rng, &s)
        };
        (ks, target)
    };
    match spec.kind {
        Kind::Ssp => {
            let (ks, m) = linear(&mut rng, &[0, 1]);
            InstanceFile::Ssp(SspInstance::new(ks, m).expect("n >= 1"))
        }
        Kind::SspPrime => {
            let (ks, m) = linear(&mut rng, &[-1, 0, 1]);
            InstanceFile::SspPrime(SspPrimeInstance::new(ks, m).expect("n >= 1"))
        }
        Kind::Tssp => {
            let ks = vector(&mut rng, n, spec.bound);
            let target = if spec.solvable {
                let x = bits(&mut rng, n);
                twisted_sum(&ks, &x).expect("lengths agree")
            } else {
                let s: BigInt = ks.iter().map(|k| k.abs()).sum();
                uniform(&mut rng, &s)
            };
            InstanceFile::Tssp(TsspInstance::new(ks, target).expect("n >= 1"))
        }
        Kind::Conj => {
            let ctx = GroupContext::new(n).expect("n >= 1");
            let u = GroupElement::new(vector(&mut rng, ctx.hirsch(), spec.bound));
            let v = if spec.solvable {
                let w = GroupElement::new(vector(&mut rng, ctx.hirsch(), spec.bound));
                ctx.conjugate(&w, &u).expect("dimensions agree")
            } else {
                let mut v = u.exponents().to_vec();
                v[0] = uniform(&mut rng, &BigInt::from(spec.bound));
                GroupElement::new(v)
            };
            InstanceFile::Conj(ConjugacyInstance::new(ctx, u, v).expect("dimensions agree"))
        }
        Kind::Cert => {
            let ctx = GroupContext::new(n).expect("n >= 1");
            let w = GroupElement::new(vector(&mut rng, ctx.hirsch(), spec.bound));
            InstanceFile::Cert { ctx, cert: Certificate::new(w) }
        }
        Kind::Sol => InstanceFile::Sol(Witness::from_assignment(&bits(&mut rng, n))),
    }
}
