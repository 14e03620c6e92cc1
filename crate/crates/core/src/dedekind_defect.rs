//! Dedekind sums, their reciprocity law, the cotangent-square sum, and the
//! signature defect of the `u^n = x·y^r` singularities with the resulting
//! per-singularity contribution to the signature of the cover.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::{int, is_prime, rat, serde_rational, Rational};
use crate::hj_chains::{chain_signature, hj_chain, HjError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DefectError {
    #[error("{h} and {k} are not coprime")]
    NotCoprime { h: i64, k: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("n = {n} is not 1 mod r = {r}")]
    CongruenceViolation { n: u64, r: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("defect routes disagree for (n, r) = ({n}, {r}): 4n·s(r,n) = {dedekind}, closed form = {closed}")]
    PathDisagreement { n: u64, r: u64, dedekind: String, closed: String },
    #[error(transparent)]
    Chain(#[from] HjError),
}

/// `s(h, k) = Σ_{i=1}^{k−1} ((i/k))((hi/k))` with the sawtooth `((x))`.
pub fn dedekind_sum(h: i64, k: u64) -> Result<Rational, DefectError> {
    if k == 0 {
        return Err(DefectError::InvalidArgument("k must be positive".into()));
    }
    if h.unsigned_abs().gcd(&k) != 1 {
        return Err(DefectError::NotCoprime { h, k });
    }
    // ((i/k)) = (2i − k)/2k and ((hi/k)) = (2(hi mod k) − k)/2k, neither is an integer
    let k = k as i128;
    let h = h as i128;
    let total: i128 = (1..k)
        .map(|i| (2 * i - k) * (2 * (h * i).rem_euclid(k) - k))
        .sum();
    Ok(Rational::new(BigInt::from(total), BigInt::from(4 * k * k)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocityReport {
    pub h: u64,
    pub k: u64,
    /// `s(h,k) + s(k,h)`
    #[serde(with = "serde_rational")]
    pub lhs: Rational,
    /// `−1/4 + (h/k + k/h + 1/(hk))/12`
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
    pub pass: bool,
}

pub fn reciprocity_check(h: u64, k: u64) -> Result<ReciprocityReport, DefectError> {
    if h == 0 || k == 0 {
        return Err(DefectError::InvalidArgument("h and k must be positive".into()));
    }
    let lhs = dedekind_sum(h as i64, k)? + dedekind_sum(k as i64, h)?;
    let (hh, kk) = (h as i64, k as i64);
    let rhs = rat(-1, 4) + (rat(hh, kk) + rat(kk, hh) + rat(1, hh * kk)) / int(12);
    Ok(ReciprocityReport { h, k, pass: lhs == rhs, lhs, rhs })
}

pub const COT_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CotSumReport {
    pub r: u64,
    /// `(r−1)(r−2)/3`
    #[serde(with = "serde_rational")]
    pub closed_form: Rational,
    /// `4r·s(1,r)`
    #[serde(with = "serde_rational")]
    pub dedekind_route: Rational,
    pub float_sum: f64,
    pub float_error: f64,
    pub exact_pass: bool,
    pub float_pass: bool,
}

impl CotSumReport {
    pub fn pass(&self) -> bool {
        self.exact_pass && self.float_pass
    }
}

/// `Σ_{j=1}^{r−1} cot²(πj/r) = (r−1)(r−2)/3`, exactly through `4r·s(1,r)`
/// and numerically in `f64`.
pub fn cot_sum_identity(r: u64) -> Result<CotSumReport, DefectError> {
    if r == 0 {
        return Err(DefectError::InvalidArgument("r must be positive".into()));
    }
    let ri = r as i64;
    let closed_form = rat((ri - 1) * (ri - 2), 3);
    let s1 = dedekind_sum(1, r)?;
    let dedekind_route = int(4 * ri) * &s1;
    let exact_pass = dedekind_route == closed_form && s1 == rat((ri - 1) * (ri - 2), 12 * ri);
    let float_sum: f64 = (1..r)
        .map(|j| {
            let c = 1.0 / (std::f64::consts::PI * j as f64 / r as f64).tan();
            c * c
        })
        .sum();
    let float_error = (float_sum - (ri - 1) as f64 * (ri - 2) as f64 / 3.0).abs();
    Ok(CotSumReport {
        r,
        closed_form,
        dedekind_route,
        float_sum,
        float_error,
        exact_pass,
        float_pass: float_error <= COT_SUM_TOLERANCE,
    })
}

/// Defect and signature contribution of one `u^n = x·y^r` singularity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectRecord {
    pub n: u64,
    pub r: u64,
    /// `s(r, n)`
    #[serde(with = "serde_rational")]
    pub dedekind: Rational,
    /// `def(n; 1, n−r)`
    #[serde(with = "serde_rational")]
    pub defect: Rational,
    /// chain signature `−(n−1)/r` plus `defect/n`
    #[serde(with = "serde_rational")]
    pub contribution: Rational,
    /// `−2n/(3r)`
    #[serde(with = "serde_rational")]
    pub asymptote: Rational,
}

/// `(n² − n((r−1)(r−2) + 3r) + r² + 1) / 3r`, valid for `n ≡ 1 (mod r)`.
pub fn defect_closed_form(n: u64, r: u64) -> Rational {
    let (n, r) = (BigInt::from(n), BigInt::from(r));
    let one = BigInt::from(1);
    let numerator = &n * &n - &n * ((&r - &one) * (&r - 2) + 3 * &r) + &r * &r + &one;
    Rational::new(numerator, 3 * r)
}

/// Defect as `4n·s(r,n)` cross-checked against [`defect_closed_form`].
pub fn signature_defect(n: u64, r: u64) -> Result<DefectRecord, DefectError> {
    if !is_prime(n) {
        return Err(DefectError::NotPrime(n));
    }
    if r == 0 || (r >= 2 && (n <= r || (n - 1) % r != 0)) {
        return Err(DefectError::CongruenceViolation { n, r });
    }
    let dedekind = dedekind_sum(r as i64, n)?;
    let defect = int(4 * n as i64) * &dedekind;
    let closed = defect_closed_form(n, r);
    if defect != closed {
        return Err(DefectError::PathDisagreement {
            n,
            r,
            dedekind: defect.to_string(),
            closed: closed.to_string(),
        });
    }
    let chain = chain_signature(&hj_chain(n, r)?);
    let contribution = int(chain) + &defect / int(n as i64);
    Ok(DefectRecord {
        n,
        r,
        dedekind,
        defect,
        contribution,
        asymptote: rat(-2 * n as i64, 3 * r as i64),
    })
}
