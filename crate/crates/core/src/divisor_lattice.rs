//! Intersection numbers on the plane blown up at the `d²` base points (and
//! optionally at the multiple points), the canonical class, Chern numbers,
//! and the Euler characteristics that depend only on the multiplicity profile.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::net_geometry::{profile_identities, MultiplicityProfile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("divisor classes live on different blow-ups ({0:?} vs {1:?})")]
    BasisMismatch(Basis, Basis),
    #[error("profile fails its counting identities: {0}")]
    InconsistentProfile(String),
    #[error("index {index} outside 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// Number of exceptional curves `E_i` over the base points and `F_p` over
/// multiple points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Basis {
    pub exceptional: usize,
    pub multiple: usize,
}

impl Basis {
    /// The surface `S`: the plane blown up at `d²` points.
    pub fn plane_blown_up(d: u32) -> Basis {
        Basis { exceptional: (d * d) as usize, multiple: 0 }
    }

    /// `Ŝ`: additionally blown up at the `f₀ − t₂` multiple points.
    pub fn with_multiple_points(profile: &MultiplicityProfile) -> Basis {
        Basis {
            exceptional: (profile.d * profile.d) as usize,
            multiple: (profile.f0() - profile.t2()) as usize,
        }
    }
}

/// Integer combination of the pullback of a line `L`, the `E_i` and the
/// `F_p`, stored sparsely; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    basis: Basis,
    coeff_l: i64,
    coeff_e: BTreeMap<usize, i64>,
    coeff_f: BTreeMap<usize, i64>,
}

impl DivisorClass {
    pub fn zero(basis: Basis) -> Self {
        DivisorClass { basis, coeff_l: 0, coeff_e: BTreeMap::new(), coeff_f: BTreeMap::new() }
    }

    pub fn line(basis: Basis) -> Self {
        DivisorClass { coeff_l: 1, ..Self::zero(basis) }
    }

    pub fn exceptional(basis: Basis, i: usize) -> Result<Self, LatticeError> {
        if i == 0 || i > basis.exceptional {
            return Err(LatticeError::IndexOutOfRange { index: i, len: basis.exceptional });
        }
        let mut c = Self::zero(basis);
        c.coeff_e.insert(i, 1);
        Ok(c)
    }

    pub fn multiple_point(basis: Basis, p: usize) -> Result<Self, LatticeError> {
        if p == 0 || p > basis.multiple {
            return Err(LatticeError::IndexOutOfRange { index: p, len: basis.multiple });
        }
        let mut c = Self::zero(basis);
        c.coeff_f.insert(p, 1);
        Ok(c)
    }

    /// `Σ E_i` over all base points.
    pub fn all_exceptional(basis: Basis) -> Self {
        let mut c = Self::zero(basis);
        c.coeff_e = (1..=basis.exceptional).map(|i| (i, 1)).collect();
        c
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeff_l(&self) -> i64 {
        self.coeff_l
    }

    pub fn coeff_e(&self, i: usize) -> i64 {
        self.coeff_e.get(&i).copied().unwrap_or(0)
    }

    pub fn coeff_f(&self, p: usize) -> i64 {
        self.coeff_f.get(&p).copied().unwrap_or(0)
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        assert_eq!(self.basis, other.basis, "divisor classes on different blow-ups");
        let merge = |a: &BTreeMap<usize, i64>, b: &BTreeMap<usize, i64>| {
            let mut out = a.clone();
            for (&k, &v) in b {
                *out.entry(k).or_insert(0) += sign * v;
            }
            out.retain(|_, v| *v != 0);
            out
        };
        DivisorClass {
            basis: self.basis,
            coeff_l: self.coeff_l + sign * other.coeff_l,
            coeff_e: merge(&self.coeff_e, &other.coeff_e),
            coeff_f: merge(&self.coeff_f, &other.coeff_f),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        let scale = |m: &BTreeMap<usize, i64>| {
            m.iter().filter(|_| k != 0).map(|(&i, &v)| (i, k * v)).collect()
        };
        DivisorClass {
            basis: self.basis,
            coeff_l: k * self.coeff_l,
            coeff_e: scale(&self.coeff_e),
            coeff_f: scale(&self.coeff_f),
        }
    }

    pub fn self_intersection(&self) -> i64 {
        intersect(self, self).expect("same basis")
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.combine(rhs, 1)
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.combine(rhs, -1)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scale(-1)
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}

/// The intersection pairing: `L² = 1`, `E_i² = F_p² = −1`, all other basis
/// products zero.
pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> Result<i64, LatticeError> {
    if a.basis != b.basis {
        return Err(LatticeError::BasisMismatch(a.basis, b.basis));
    }
    let diag = |x: &BTreeMap<usize, i64>, y: &BTreeMap<usize, i64>| -> i64 {
        x.iter().map(|(k, v)| v * y.get(k).copied().unwrap_or(0)).sum()
    };
    Ok(a.coeff_l * b.coeff_l - diag(&a.coeff_e, &b.coeff_e) - diag(&a.coeff_f, &b.coeff_f))
}

/// `K_S = −3L + Σ E_i`.
pub fn canonical_class(d: u32) -> DivisorClass {
    let basis = Basis::plane_blown_up(d);
    &(-3 * &DivisorClass::line(basis)) + &DivisorClass::all_exceptional(basis)
}

/// Total transform of a pencil member, `dL − Σ E_i`.
pub fn fiber_class(d: u32) -> DivisorClass {
    let basis = Basis::plane_blown_up(d);
    &(d as i64 * &DivisorClass::line(basis)) - &DivisorClass::all_exceptional(basis)
}

/// Strict transform `L − E_{k₁} − … − E_{k_d}` of a line through the listed
/// base points.
pub fn strict_transform(d: u32, points: &[usize]) -> Result<DivisorClass, LatticeError> {
    let basis = Basis::plane_blown_up(d);
    points.iter().try_fold(DivisorClass::line(basis), |acc, &i| {
        Ok(&acc - &DivisorClass::exceptional(basis, i)?)
    })
}

/// `(c₁², c₂)` of `S`: `K_S²` from the lattice, and `3 + d²` from one
/// Euler-characteristic step per blow-up.
pub fn chern_numbers(d: u32) -> (i64, i64) {
    let c1_sq = canonical_class(d).self_intersection();
    let c2 = 3 + (d as i64).pow(2);
    (c1_sq, c2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub c1_sq: i64,
    pub c2: i64,
    pub e_s: i64,
    pub e_shat: i64,
    pub e_w: i64,
    pub e_what: i64,
    pub e_shat_minus_what: i64,
    pub sigma_s: i64,
}

pub(crate) fn require_consistent(profile: &MultiplicityProfile) -> Result<(), LatticeError> {
    let report = profile_identities(profile);
    if report.pass {
        Ok(())
    } else {
        Err(LatticeError::InconsistentProfile(format!(
            "pairs {} vs {}, squares {} vs {}",
            report.pairs_lhs, report.pairs_rhs, report.squares_lhs, report.squares_rhs
        )))
    }
}

/// `e(Ŝ − Ŵ)` in closed form, `3 + d² − 2md + f₁ − f₀`.
pub fn e_shat_minus_what_closed(profile: &MultiplicityProfile) -> i64 {
    let (m, d) = (profile.m as i64, profile.d as i64);
    3 + d * d - 2 * m * d + profile.f1() - profile.f0()
}

pub fn euler_chars(profile: &MultiplicityProfile) -> Result<SurfaceInvariants, LatticeError> {
    require_consistent(profile)?;
    let (m, d) = (profile.m as i64, profile.d as i64);
    let (f0, f1, t2) = (profile.f0(), profile.f1(), profile.t2());
    let (c1_sq, c2) = chern_numbers(profile.d);
    let e_s = c2;
    let e_shat = e_s + f0 - t2;
    // each class contributes d spheres; an r-fold point glues r of them into one
    let e_w = 2 * m * d - f1 + f0;
    let e_what = e_w + f0 - t2;
    Ok(SurfaceInvariants {
        c1_sq,
        c2,
        e_s,
        e_shat,
        e_w,
        e_what,
        e_shat_minus_what: e_shat - e_what,
        sigma_s: 1 - d * d,
    })
}
