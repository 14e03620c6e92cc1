//! The two signature computations for the cyclic cover `Y` of the blown-up
//! plane: the Chern-number route (leading coefficients of `e(Y)` and `K_Y²`,
//! plus `K_Y²` exactly at a given prime), and the fibration route through
//! the signature of the complement of the fibers and the singularity
//! defects. [`consistency_report`] puts the two side by side.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::divisor_lattice::{
    chern_numbers, euler_chars, intersect, require_consistent, strict_transform, LatticeError,
};
use crate::exact_arith::{int, pow_int, rat, serde_rational, Rational, SymmetricMatrix};
use crate::hj_chains::{delta_q_squared, is_admissible, HjError};
use crate::net_geometry::MultiplicityProfile;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Chain(#[from] HjError),
}

/// Coefficient of `n^{m−1}` in `e(Y)`: `3 + d² − 2md + f₁`.
pub fn euler_leading(profile: &MultiplicityProfile) -> Result<i64, SignatureError> {
    let inv = euler_chars(profile)?;
    let (m, d) = (profile.m as i64, profile.d as i64);
    let value = 3 + d * d - 2 * m * d + profile.f1();
    assert_eq!(value, inv.e_shat_minus_what + profile.f0(), "e(Ŝ − Ŵ) + f₀");
    Ok(value)
}

/// Coefficient of `n^{m−1}` in `K_Y²`: `md² − 5md − d² + 9 + 3f₁ − 4f₀`.
pub fn ky2_leading(profile: &MultiplicityProfile) -> Result<i64, SignatureError> {
    require_consistent(profile)?;
    let (m, d) = (profile.m as i64, profile.d as i64);
    Ok(m * d * d - 5 * m * d - d * d + 9 + 3 * profile.f1() - 4 * profile.f0())
}

/// `((m−3)d² − md + 3 + f₁ − 4f₀)/3`, checked against `(K² − 2e)/3`.
pub fn sigma_thm4(profile: &MultiplicityProfile) -> Result<Rational, SignatureError> {
    let (m, d) = (profile.m as i64, profile.d as i64);
    let value = rat((m - 3) * d * d - m * d + 3 + profile.f1() - 4 * profile.f0(), 3);
    let via_chern = rat(ky2_leading(profile)? - 2 * euler_leading(profile)?, 3);
    assert_eq!(value, via_chern, "signature coefficient identity");
    Ok(value)
}

/// Signature of the intersection matrix of the `d` strict transforms of one
/// class of lines, each through its own `d` base points.
pub fn lemma6_signature(d: u32) -> i64 {
    assert!(d >= 2, "need at least two lines");
    let du = d as usize;
    let lines: Vec<_> = (0..du)
        .map(|j| {
            let points: Vec<usize> = (1..=du).map(|k| j * du + k).collect();
            strict_transform(d, &points).expect("indices within d²")
        })
        .collect();
    let matrix = SymmetricMatrix::from_fn(du, |i, j| {
        int(intersect(&lines[i], &lines[j]).expect("same blow-up"))
    });
    let sigma = matrix.inertia().signature();
    assert_eq!(sigma, 1 - d as i64, "fiber-line signature");
    sigma
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThatSignature {
    pub sigma: i64,
    /// `−σ`
    pub a: i64,
}

/// Signature of the plane blown up with `m` fibers removed:
/// `σ(S) − m(1 − d)`, checked against `(1 − d)(1 − m + d)`.
pub fn sigma_that(m: u32, d: u32) -> ThatSignature {
    let (c1_sq, c2) = chern_numbers(d);
    let sigma_s = (c1_sq - 2 * c2) / 3;
    let sigma = sigma_s - m as i64 * lemma6_signature(d);
    let (m, d) = (m as i64, d as i64);
    assert_eq!(sigma, (1 - d) * (1 - m + d), "factored form");
    ThatSignature { sigma, a: -sigma }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm9Value {
    #[serde(with = "serde_rational")]
    pub value: Rational,
    pub a: i64,
    /// `d > m − 1`; outside it the value is still reported.
    pub applicable: bool,
}

/// `−a − (2/3)f₀`.
pub fn sigma_thm9(profile: &MultiplicityProfile) -> Result<Thm9Value, SignatureError> {
    require_consistent(profile)?;
    let that = sigma_that(profile.m, profile.d);
    let applicable = profile.d + 1 > profile.m;
    if applicable {
        assert!(that.sigma <= -1, "complement signature must be negative for d > m − 1");
    }
    let value = int(-that.a) - rat(2 * profile.f0(), 3);
    Ok(Thm9Value { value, a: that.a, applicable })
}

/// `n^{m−2}·Σ_{r≥3} r·t_r·Δ_q²(n, r)`; double points contribute nothing.
pub fn delta_squared_total(profile: &MultiplicityProfile, n: u64) -> Result<Rational, SignatureError> {
    is_admissible(profile, n)?;
    let mut sum = int(0);
    for (r, t) in profile.multiple() {
        sum += int((r as u64 * t) as i64) * delta_q_squared(n, r as u64)?;
    }
    Ok(sum * Rational::from(pow_int(n, profile.m - 2)))
}

/// `K_Y²` at the prime `n`, exactly.
pub fn ky2_exact(profile: &MultiplicityProfile, n: u64) -> Result<Rational, SignatureError> {
    require_consistent(profile)?;
    is_admissible(profile, n)?;
    let (m, d) = (int(profile.m as i64), int(profile.d as i64));
    let q = rat(n as i64 - 1, n as i64);
    let one = int(1);
    let first = -int(3) + &m * &d * &q;
    let second = &one - &m * &q;
    let mut bracket = &first * &first - &second * &second * &d * &d;
    for (r, t) in profile.multiple() {
        let local = &one + &q * int(1 - r as i64);
        bracket -= int(t as i64) * &local * &local;
    }
    let scale = Rational::from(pow_int(n, profile.m - 1));
    Ok(bracket * scale + delta_squared_total(profile, n)?)
}

/// The comparison of both signature formulas for one profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub profile: MultiplicityProfile,
    pub e_leading: i64,
    pub ky2_leading: i64,
    #[serde(with = "serde_rational")]
    pub thm4_coeff: Rational,
    #[serde(rename = "sigma_That")]
    pub sigma_that: i64,
    pub a: i64,
    #[serde(with = "serde_rational")]
    pub thm9_value: Rational,
    pub thm9_applicable: bool,
    pub genus: i64,
    /// Observational only; a mismatch is data, not an error.
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn consistency_report(profile: &MultiplicityProfile) -> Result<SignatureReport, SignatureError> {
    let e_leading = euler_leading(profile)?;
    let ky2 = ky2_leading(profile)?;
    let thm4_coeff = sigma_thm4(profile)?;
    let thm9 = sigma_thm9(profile)?;
    let d = profile.d as i64;
    Ok(SignatureReport {
        profile: profile.clone(),
        e_leading,
        ky2_leading: ky2,
        matches: thm4_coeff == thm9.value,
        thm4_coeff,
        sigma_that: -thm9.a,
        a: thm9.a,
        thm9_value: thm9.value,
        thm9_applicable: thm9.applicable,
        genus: (d - 1) * (d - 2) / 2,
    })
}

/// `n^{m−1}`, handy for normalizing [`ky2_exact`].
pub fn leading_scale(profile: &MultiplicityProfile, n: u64) -> BigInt {
    pow_int(n, profile.m - 1)
}
