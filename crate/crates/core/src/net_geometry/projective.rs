use std::fmt;

use crate::exact_arith::{Field, FieldElement};

use super::NetError;

/// Scales a nonzero triple so its first nonzero entry is 1.
fn normalize(coords: [FieldElement; 3]) -> Result<[FieldElement; 3], NetError> {
    let field = coords[0].field().clone();
    if coords.iter().any(|c| c.field() != &field) {
        return Err(NetError::FieldMismatch);
    }
    let lead = coords.iter().find(|c| !c.is_zero()).ok_or(NetError::ZeroTriple)?;
    let inv = lead.inv().expect("lead is nonzero");
    Ok(coords.map(|c| &c * &inv))
}

fn cross(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> FieldElement {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn fmt_triple(t: &[FieldElement; 3], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "[{} : {} : {}]", t[0], t[1], t[2])
}

/// Point of the projective plane, normalized so equality is coordinate-wise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

impl ProjPoint {
    pub fn new(coords: [FieldElement; 3]) -> Result<Self, NetError> {
        Ok(ProjPoint { coords: normalize(coords)? })
    }

    pub fn from_i64(field: &Field, c: [i64; 3]) -> Result<Self, NetError> {
        Self::new(c.map(|v| field.from_i64(v)))
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.coords, f)
    }
}

/// Line `a·x + b·y + c·z = 0`, normalized like [`ProjPoint`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine {
    coeffs: [FieldElement; 3],
}

impl ProjLine {
    pub fn new(coeffs: [FieldElement; 3]) -> Result<Self, NetError> {
        Ok(ProjLine { coeffs: normalize(coeffs)? })
    }

    pub fn from_i64(field: &Field, c: [i64; 3]) -> Result<Self, NetError> {
        Self::new(c.map(|v| field.from_i64(v)))
    }

    pub fn coeffs(&self) -> &[FieldElement; 3] {
        &self.coeffs
    }

    pub fn field(&self) -> &Field {
        self.coeffs[0].field()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        dot(&self.coeffs, &p.coords).is_zero()
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.coeffs, f)
    }
}

/// Common point of two distinct lines (cross product of the coefficients).
pub fn line_intersection(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint, NetError> {
    if l1.field() != l2.field() {
        return Err(NetError::FieldMismatch);
    }
    let c = cross(&l1.coeffs, &l2.coeffs);
    if c.iter().all(FieldElement::is_zero) {
        return Err(NetError::IdenticalLines);
    }
    ProjPoint::new(c)
}
