use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::NetError;

/// Counts `t_r` of points on exactly `r >= 2` lines of a single class, after
/// the base points have been blown up.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawProfile")]
pub struct MultiplicityProfile {
    pub m: u32,
    pub d: u32,
    pub t: BTreeMap<u32, u64>,
}

#[derive(Deserialize)]
struct RawProfile {
    m: u32,
    d: u32,
    t: BTreeMap<u32, u64>,
}

impl TryFrom<RawProfile> for MultiplicityProfile {
    type Error = NetError;
    fn try_from(raw: RawProfile) -> Result<Self, NetError> {
        MultiplicityProfile::new(raw.m, raw.d, raw.t)
    }
}

impl MultiplicityProfile {
    /// Structural checks only (`m, d >= 3`, `2 <= r <= d`); consistency is
    /// [`profile_identities`]. Zero counts are dropped.
    pub fn new(m: u32, d: u32, t: BTreeMap<u32, u64>) -> Result<Self, NetError> {
        if m < 3 {
            return Err(NetError::TooFewClasses(m as usize));
        }
        if d < 3 {
            return Err(NetError::DegreeTooSmall(d as usize));
        }
        if let Some(&r) = t.keys().find(|&&r| r < 2 || r > d) {
            return Err(NetError::InvalidProfile(format!(
                "multiplicity {r} outside 2..={d}"
            )));
        }
        let t = t.into_iter().filter(|&(_, c)| c > 0).collect();
        Ok(MultiplicityProfile { m, d, t })
    }

    pub fn from_pairs(m: u32, d: u32, pairs: &[(u32, u64)]) -> Result<Self, NetError> {
        Self::new(m, d, pairs.iter().copied().collect())
    }

    pub fn t(&self, r: u32) -> u64 {
        self.t.get(&r).copied().unwrap_or(0)
    }

    pub fn t2(&self) -> i64 {
        self.t(2) as i64
    }

    pub fn f0(&self) -> i64 {
        self.t.values().map(|&c| c as i64).sum()
    }

    pub fn f1(&self) -> i64 {
        self.t.iter().map(|(&r, &c)| r as i64 * c as i64).sum()
    }

    /// `(r, t_r)` for the genuinely multiple points, `r >= 3`.
    pub fn multiple(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.t.range(3..).map(|(&r, &c)| (r, c))
    }

    pub fn is_double_points_only(&self) -> bool {
        self.multiple().next().is_none()
    }
}

/// Both sides of the pair-count identity `m·C(d,2) = Σ t_r·C(r,2)` and of
/// `Σ r²·t_r = m·d(d-1) + f₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub pairs_lhs: i64,
    pub pairs_rhs: i64,
    pub squares_lhs: i64,
    pub squares_rhs: i64,
    pub pass: bool,
}

pub fn profile_identities(profile: &MultiplicityProfile) -> IdentityReport {
    let (m, d) = (profile.m as i64, profile.d as i64);
    let pairs_lhs = m * d * (d - 1) / 2;
    let pairs_rhs = profile
        .t
        .iter()
        .map(|(&r, &c)| c as i64 * (r as i64 * (r as i64 - 1) / 2))
        .sum();
    let squares_lhs = profile.t.iter().map(|(&r, &c)| (r as i64).pow(2) * c as i64).sum();
    let squares_rhs = m * d * (d - 1) + profile.f1();
    IdentityReport {
        pairs_lhs,
        pairs_rhs,
        squares_lhs,
        squares_rhs,
        pass: pairs_lhs == pairs_rhs && squares_lhs == squares_rhs,
    }
}
