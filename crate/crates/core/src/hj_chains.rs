//! Hirzebruch–Jung data for the cyclic quotient singularities `u^n = x·y^r`
//! of the branched cover: negative continued fractions, resolution chains,
//! discrepancies and their self-intersection `Δ_q²`, the singularity census,
//! and the choice of an admissible prime degree `n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::{
    int, is_prime, pow_int, rat, serde_bigint, serde_rational, serde_rational_vec,
    signature_of_symmetric_matrix, Rational, SymmetricMatrix,
};
use crate::net_geometry::MultiplicityProfile;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HjError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("n = {n} is not 1 mod r = {r} (or n <= r)")]
    CongruenceViolation { n: u64, r: u64 },
    #[error("{num}/{den} must satisfy num > den >= 1")]
    ImproperFraction { num: u64, den: u64 },
    #[error("{num} and {den} are not coprime")]
    NotCoprime { num: u64, den: u64 },
    #[error("n = {n} is not admissible: needs n prime and n = 1 mod {r}")]
    Inadmissible { n: u64, r: u32 },
    #[error("no admissible prime in [{min}, {cap}]")]
    CapExceeded { min: u64, cap: u64 },
    #[error("internal check failed: {0}")]
    Internal(String),
}

/// `b₁ − 1/(b₂ − 1/(…))` with every `bᵢ >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcfExpansion {
    pub coefficients: Vec<u64>,
}

impl NcfExpansion {
    pub fn evaluate(&self) -> Rational {
        let mut coeffs = self.coefficients.iter().rev();
        let last = coeffs.next().expect("expansions are nonempty");
        coeffs.fold(int(*last as i64), |acc, &b| int(b as i64) - acc.recip())
    }
}

/// Negative continued fraction of `num/den`: take `b = ⌈num/den⌉` and
/// continue with `den / (b·den − num)` until the remainder vanishes.
pub fn ncf(num: u64, den: u64) -> Result<NcfExpansion, HjError> {
    if den == 0 || num <= den {
        return Err(HjError::ImproperFraction { num, den });
    }
    if num.gcd(&den) != 1 {
        return Err(HjError::NotCoprime { num, den });
    }
    let (mut a, mut b) = (num as u128, den as u128);
    let mut coefficients = Vec::new();
    while b != 0 {
        let c = a.div_ceil(b);
        coefficients.push(c as u64);
        (a, b) = (b, c * b - a);
    }
    Ok(NcfExpansion { coefficients })
}

/// Resolution chain `G₁ … G_t` of `u^n = x·y^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HjChain {
    pub n: u64,
    pub r: u64,
    pub length: usize,
    pub self_intersections: Vec<i64>,
    #[serde(with = "serde_rational_vec")]
    pub alphas: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub delta_q_sq: Rational,
}

fn check_congruence(n: u64, r: u64) -> Result<(), HjError> {
    if r == 0 {
        return Err(HjError::ZeroMultiplicity);
    }
    if !is_prime(n) {
        return Err(HjError::NotPrime(n));
    }
    if n <= r || (n - 1) % r != 0 {
        return Err(HjError::CongruenceViolation { n, r });
    }
    Ok(())
}

/// The chain for `n ≡ 1 (mod r)`: `t = (n−1)/r` curves with self-intersections
/// `−2, …, −2, −(r+1)` (checked against `ncf(n/(n−r))`) and discrepancies
/// `αᵢ = i(1−r)/n`. For `r = 1` all `αᵢ` vanish.
pub fn hj_chain(n: u64, r: u64) -> Result<HjChain, HjError> {
    check_congruence(n, r)?;
    let length = ((n - 1) / r) as usize;
    let mut predicted = vec![2u64; length - 1];
    predicted.push(r + 1);
    let expansion = ncf(n, n - r)?;
    if expansion.coefficients != predicted {
        return Err(HjError::Internal(format!(
            "ncf({n}/{}) = {:?}, expected {predicted:?}",
            n - r,
            expansion.coefficients
        )));
    }
    let self_intersections = predicted.iter().map(|&b| -(b as i64)).collect();
    let alphas = (1..=length as i64)
        .map(|i| rat(i * (1 - r as i64), n as i64))
        .collect::<Vec<_>>();
    let mut chain = HjChain {
        n,
        r,
        length,
        self_intersections,
        alphas,
        delta_q_sq: Rational::zero(),
    };
    chain.delta_q_sq = delta_by_telescoping(&chain);
    Ok(chain)
}

/// `−2α₁(α₁−α₂) − … − 2α_{t−1}(α_{t−1}−α_t) − (r+1)α_t²`.
fn delta_by_telescoping(chain: &HjChain) -> Rational {
    let a = &chain.alphas;
    let t = a.len();
    let body: Rational = (0..t - 1).map(|i| int(-2) * &a[i] * (&a[i] - &a[i + 1])).sum();
    body - int(chain.r as i64 + 1) * &a[t - 1] * &a[t - 1]
}

/// Tridiagonal intersection matrix of the chain.
pub fn chain_matrix(chain: &HjChain) -> SymmetricMatrix {
    SymmetricMatrix::from_fn(chain.length, |i, j| match j - i {
        0 => int(chain.self_intersections[i]),
        1 => Rational::one(),
        _ => Rational::zero(),
    })
}

pub fn chain_signature(chain: &HjChain) -> i64 {
    signature_of_symmetric_matrix(&chain_matrix(chain)).signature()
}

/// `M·α` where `M` is the chain matrix; for the discrepancies this is
/// `(0, …, 0, r − 1)`.
pub fn discrepancy_residual(chain: &HjChain) -> Vec<Rational> {
    chain_matrix(chain).apply(&chain.alphas)
}

pub fn discrepancy_system_holds(chain: &HjChain) -> bool {
    let mut expected = vec![Rational::zero(); chain.length];
    if chain.r > 1 {
        expected[chain.length - 1] = int(chain.r as i64 - 1);
    }
    discrepancy_residual(chain) == expected
}

/// `Δ_q²`, from the telescoped sum and from the quadratic form `αᵀMα`; the
/// two must agree.
pub fn delta_q_squared(n: u64, r: u64) -> Result<Rational, HjError> {
    let chain = hj_chain(n, r)?;
    let quadratic = chain_matrix(&chain).quadratic_form(&chain.alphas);
    if quadratic != chain.delta_q_sq {
        return Err(HjError::Internal(format!(
            "Δ_q² routes disagree for ({n}, {r}): {} vs {quadratic}",
            chain.delta_q_sq
        )));
    }
    Ok(quadratic)
}

pub fn is_admissible(profile: &MultiplicityProfile, n: u64) -> Result<(), HjError> {
    if !is_prime(n) {
        return Err(HjError::NotPrime(n));
    }
    match profile.multiple().find(|&(r, _)| (n - 1) % r as u64 != 0) {
        Some((r, _)) => Err(HjError::Inadmissible { n, r }),
        None => Ok(()),
    }
}

pub const ADMISSIBLE_PRIME_CAP: u64 = 1_000_000;

/// Smallest prime `n >= min` with `n ≡ 1 (mod r)` for every multiplicity
/// `r >= 3` in the profile.
pub fn admissible_prime(profile: &MultiplicityProfile, min: u64) -> Result<u64, HjError> {
    let min = min.max(2);
    let modulus = profile.multiple().fold(1u64, |acc, (r, _)| acc.lcm(&(r as u64)));
    (min..=ADMISSIBLE_PRIME_CAP)
        .find(|&n| (n - 1) % modulus == 0 && is_prime(n))
        .ok_or(HjError::CapExceeded { min, cap: ADMISSIBLE_PRIME_CAP })
}

/// Hirzebruch–Jung points of the normalized cover for a given `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: u64,
    /// `r -> n^{m−2}·r·t_r` points of type `u^n = x·y^r`, for `r >= 3`.
    pub by_multiplicity: BTreeMap<u32, String>,
    /// `n^{m−2}·t₂` points of type `u^n = x·y`.
    #[serde(with = "serde_bigint")]
    pub doubles: BigInt,
    #[serde(with = "serde_bigint")]
    pub total: BigInt,
    /// `n^{m−2}(f₁ − t₂)`.
    #[serde(with = "serde_bigint")]
    pub expected_total: BigInt,
}

pub fn singularity_census(profile: &MultiplicityProfile, n: u64) -> Result<Census, HjError> {
    is_admissible(profile, n)?;
    let scale = pow_int(n, profile.m - 2);
    let counts: BTreeMap<u32, BigInt> = profile
        .multiple()
        .map(|(r, t)| (r, &scale * BigInt::from(r as u64 * t)))
        .collect();
    let doubles = &scale * BigInt::from(profile.t(2));
    let total = counts.values().sum::<BigInt>() + &doubles;
    let expected_total = &scale * BigInt::from(profile.f1() - profile.t2());
    if total != expected_total {
        return Err(HjError::Internal(format!(
            "census total {total} differs from n^(m-2)(f1 - t2) = {expected_total}"
        )));
    }
    Ok(Census {
        n,
        by_multiplicity: counts.into_iter().map(|(r, c)| (r, c.to_string())).collect(),
        doubles,
        total,
        expected_total,
    })
}
