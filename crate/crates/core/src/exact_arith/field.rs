//! Exact fields: the rationals, prime fields, and cyclotomic fields `Q(ζ_k)`
//! stored as coefficient vectors modulo `Φ_k`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{cyclotomic_polynomial, rpoly_divmod, rpoly_inverse_mod, rpoly_mul};
use super::rational::{format_rational, Rational};
use super::ArithError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDescriptor {
    Rational,
    Prime { p: u64 },
    Cyclotomic { k: u32 },
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "Q"),
            FieldDescriptor::Prime { p } => write!(f, "F_{p}"),
            FieldDescriptor::Cyclotomic { k } => write!(f, "Q(zeta_{k})"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut q = 3u64;
    while q.saturating_mul(q) <= n {
        if n % q == 0 {
            return false;
        }
        q += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q.saturating_mul(q) <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// A concrete field instance. Cloning is cheap; the cyclotomic modulus is shared.
#[derive(Clone, Debug)]
pub struct Field {
    descriptor: FieldDescriptor,
    modulus: Option<Arc<Vec<Rational>>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor == other.descriptor
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.descriptor.hash(state);
    }
}

impl Field {
    pub fn new(descriptor: FieldDescriptor) -> Result<Field, ArithError> {
        let modulus = match descriptor {
            FieldDescriptor::Rational => None,
            FieldDescriptor::Prime { p } => {
                if !is_prime(p) {
                    return Err(ArithError::NotPrime(p));
                }
                None
            }
            FieldDescriptor::Cyclotomic { k } => {
                if k == 0 {
                    return Err(ArithError::InvalidConductor(k));
                }
                Some(Arc::new(cyclotomic_polynomial(k).to_rational()))
            }
        };
        Ok(Field { descriptor, modulus })
    }

    pub fn rational() -> Field {
        Field { descriptor: FieldDescriptor::Rational, modulus: None }
    }

    pub fn prime(p: u64) -> Result<Field, ArithError> {
        Field::new(FieldDescriptor::Prime { p })
    }

    pub fn cyclotomic(k: u32) -> Result<Field, ArithError> {
        Field::new(FieldDescriptor::Cyclotomic { k })
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.descriptor
    }

    /// Dimension over the prime subfield.
    pub fn degree(&self) -> usize {
        match &self.modulus {
            Some(m) => m.len() - 1,
            None => 1,
        }
    }

    /// 0 for characteristic-zero fields.
    pub fn characteristic(&self) -> u64 {
        match self.descriptor {
            FieldDescriptor::Prime { p } => p,
            _ => 0,
        }
    }

    fn make(&self, value: Value) -> FieldElement {
        FieldElement { field: self.clone(), value }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_rational(&Rational::zero())
            .expect("zero exists in every field")
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        self.from_rational(&Rational::from_integer(BigInt::from(v)))
            .expect("integers embed in every field")
    }

    /// Fails only in a prime field whose characteristic divides the denominator.
    pub fn from_rational(&self, q: &Rational) -> Result<FieldElement, ArithError> {
        Ok(match self.descriptor {
            FieldDescriptor::Rational => self.make(Value::Rational(q.clone())),
            FieldDescriptor::Prime { p } => {
                let pb = BigInt::from(p);
                let num = q.numer().mod_floor(&pb).to_u64().expect("residue fits");
                let den = q.denom().mod_floor(&pb).to_u64().expect("residue fits");
                if den == 0 {
                    return Err(ArithError::NotInvertible(format_rational(q), p));
                }
                self.make(Value::Residue(mul_mod(num, pow_mod(den, p - 2, p), p)))
            }
            FieldDescriptor::Cyclotomic { .. } => self.from_coefficients(vec![q.clone()]),
        })
    }

    /// Residue class of an integer in a prime field.
    pub fn from_residue(&self, r: i64) -> Result<FieldElement, ArithError> {
        match self.descriptor {
            FieldDescriptor::Prime { p } => {
                Ok(self.make(Value::Residue(r.rem_euclid(p as i64) as u64)))
            }
            _ => Err(ArithError::WrongRepresentation(self.descriptor, "residue")),
        }
    }

    /// Element of `Q(ζ_k)` from a coefficient vector in powers of ζ; any
    /// length is accepted and reduced modulo `Φ_k`.
    pub fn from_coefficients(&self, coeffs: Vec<Rational>) -> FieldElement {
        let modulus = self
            .modulus
            .as_ref()
            .expect("coefficient vectors belong to cyclotomic fields");
        let (_, rem) = rpoly_divmod(&coeffs, modulus);
        self.make(Value::Cyclotomic(pad(rem, modulus.len() - 1)))
    }

    /// The class of `x` in `Q[x]/Φ_k`.
    pub fn generator(&self) -> Result<FieldElement, ArithError> {
        match self.descriptor {
            FieldDescriptor::Cyclotomic { .. } => {
                Ok(self.from_coefficients(vec![Rational::zero(), Rational::one()]))
            }
            _ => Err(ArithError::WrongRepresentation(self.descriptor, "generator")),
        }
    }

    /// An element of multiplicative order exactly `k`.
    ///
    /// In a prime field the smallest residue of order `k` is returned; in
    /// `Q(ζ_k')` with `k | k'` it is `ζ_k'^(k'/k)`.
    pub fn primitive_root_of_unity(&self, k: u32) -> Result<FieldElement, ArithError> {
        let unsupported = |reason: String| ArithError::UnsupportedField {
            field: self.descriptor,
            k,
            reason,
        };
        if k == 0 {
            return Err(unsupported("order must be positive".into()));
        }
        match self.descriptor {
            FieldDescriptor::Rational => match k {
                1 => Ok(self.one()),
                2 => Ok(self.from_i64(-1)),
                _ => Err(unsupported("Q contains only the roots of unity +1 and -1".into())),
            },
            FieldDescriptor::Prime { p } => {
                if (p - 1) % k as u64 != 0 {
                    return Err(unsupported(format!("{p} is not 1 mod {k}")));
                }
                let factors = prime_factors(p - 1);
                let generator = (1..p)
                    .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
                    .expect("multiplicative group of a prime field is cyclic");
                let base = pow_mod(generator, (p - 1) / k as u64, p);
                let smallest = (1..=k as u64)
                    .filter(|&j| j.gcd(&(k as u64)) == 1)
                    .map(|j| pow_mod(base, j, p))
                    .min()
                    .expect("j = 1 is always coprime");
                Ok(self.make(Value::Residue(smallest)))
            }
            FieldDescriptor::Cyclotomic { k: conductor } => {
                if conductor % k != 0 {
                    return Err(unsupported(format!("{k} does not divide the conductor {conductor}")));
                }
                Ok(self.generator()?.pow((conductor / k) as u64))
            }
        }
    }
}

fn pad(mut v: Vec<Rational>, len: usize) -> Vec<Rational> {
    v.resize(len, Rational::zero());
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Value {
    Rational(Rational),
    Residue(u64),
    /// Exactly `deg Φ_k` coefficients.
    Cyclotomic(Vec<Rational>),
}

/// An exact element of a [`Field`]. Arithmetic between elements of different
/// fields panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: Value,
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order, used only for deterministic sorting.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.value.cmp(&other.value)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_zero(),
            Value::Residue(r) => *r == 0,
            Value::Cyclotomic(c) => c.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.value {
            Value::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.value {
            Value::Residue(r) => Some(*r),
            _ => None,
        }
    }

    pub fn coefficients(&self) -> Option<&[Rational]> {
        match &self.value {
            Value::Cyclotomic(c) => Some(c),
            _ => None,
        }
    }

    fn check_same(&self, other: &FieldElement) {
        assert_eq!(
            self.field.descriptor, other.field.descriptor,
            "arithmetic across different fields"
        );
    }

    /// `None` for zero.
    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        let value = match &self.value {
            Value::Rational(q) => Value::Rational(q.recip()),
            Value::Residue(r) => {
                let p = self.field.characteristic();
                Value::Residue(pow_mod(*r, p - 2, p))
            }
            Value::Cyclotomic(c) => {
                let modulus = self.field.modulus.as_ref().expect("cyclotomic modulus");
                let inv = rpoly_inverse_mod(c, modulus)?;
                Value::Cyclotomic(pad(inv, modulus.len() - 1))
            }
        };
        Some(self.field.make(value))
    }

    /// `None` when dividing by zero.
    pub fn checked_div(&self, other: &FieldElement) -> Option<FieldElement> {
        other.inv().map(|inv| self * &inv)
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    fn add_ref(&self, other: &FieldElement) -> FieldElement {
        self.check_same(other);
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.field.characteristic();
                Value::Residue(((*a as u128 + *b as u128) % p as u128) as u64)
            }
            (Value::Cyclotomic(a), Value::Cyclotomic(b)) => {
                Value::Cyclotomic(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => unreachable!("representation matches descriptor"),
        };
        self.field.make(value)
    }

    fn neg_ref(&self) -> FieldElement {
        let value = match &self.value {
            Value::Rational(a) => Value::Rational(-a),
            Value::Residue(a) => {
                let p = self.field.characteristic();
                Value::Residue((p - a) % p)
            }
            Value::Cyclotomic(a) => Value::Cyclotomic(a.iter().map(|x| -x).collect()),
        };
        self.field.make(value)
    }

    fn mul_ref(&self, other: &FieldElement) -> FieldElement {
        self.check_same(other);
        match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => self.field.make(Value::Rational(a * b)),
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.field.characteristic();
                self.field.make(Value::Residue(mul_mod(*a, *b, p)))
            }
            (Value::Cyclotomic(a), Value::Cyclotomic(b)) => {
                self.field.from_coefficients(rpoly_mul(a, b))
            }
            _ => unreachable!("representation matches descriptor"),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rational(q) => write!(f, "{q}"),
            Value::Residue(r) => write!(f, "{r}"),
            Value::Cyclotomic(c) => {
                let parts: Vec<String> = c.iter().map(|q| q.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl<'a> $trait<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.$inner(rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$inner(&rhs)
            }
        }
        impl<'a> $trait<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$inner(rhs)
            }
        }
    };
}

impl FieldElement {
    fn sub_ref(&self, other: &FieldElement) -> FieldElement {
        self.add_ref(&other.neg_ref())
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

/// Free-function form of [`Field::primitive_root_of_unity`].
pub fn primitive_root_of_unity(field: &Field, k: u32) -> Result<FieldElement, ArithError> {
    field.primitive_root_of_unity(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational::rat;
    use proptest::prelude::*;

    fn has_exact_order(z: &FieldElement, k: u32) -> bool {
        z.pow(k as u64).is_one() && (1..k).all(|j| !z.pow(j as u64).is_one())
    }

    #[test]
    fn root_of_unity_examples() {
        let c3 = Field::cyclotomic(3).unwrap();
        assert_eq!(c3.primitive_root_of_unity(3).unwrap(), c3.generator().unwrap());

        let f7 = Field::prime(7).unwrap();
        // exhaustive: 2^3 = 8 = 1 mod 7, and 2, 4 are not 1
        let brute = (2..7u64).find(|&z| pow_mod(z, 3, 7) == 1).unwrap();
        assert_eq!(brute, 2);
        assert_eq!(f7.primitive_root_of_unity(3).unwrap().residue(), Some(2));

        assert!(matches!(
            f7.primitive_root_of_unity(4),
            Err(ArithError::UnsupportedField { .. })
        ));
        assert_eq!(Field::prime(13).unwrap().primitive_root_of_unity(3).unwrap().residue(), Some(3));
        assert!(Field::rational().primitive_root_of_unity(3).is_err());
        assert_eq!(Field::rational().primitive_root_of_unity(2).unwrap(), Field::rational().from_i64(-1));
    }

    #[test]
    fn roots_have_exact_order() {
        for k in 1..=12u32 {
            let c = Field::cyclotomic(k).unwrap();
            assert!(has_exact_order(&c.primitive_root_of_unity(k).unwrap(), k), "k={k}");
            let c2 = Field::cyclotomic(2 * k).unwrap();
            assert!(has_exact_order(&c2.primitive_root_of_unity(k).unwrap(), k));
        }
        for p in [7u64, 13, 31, 61, 103, 997] {
            let f = Field::prime(p).unwrap();
            for k in 1..=((p - 1).min(30) as u32) {
                if (p - 1) % k as u64 == 0 {
                    let z = f.primitive_root_of_unity(k).unwrap();
                    assert!(has_exact_order(&z, k), "p={p} k={k}");
                    let brute = (1..p)
                        .find(|&x| {
                            let e = f.from_residue(x as i64).unwrap();
                            has_exact_order(&e, k)
                        })
                        .unwrap();
                    assert_eq!(z.residue(), Some(brute), "smallest root p={p} k={k}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(matches!(Field::prime(9), Err(ArithError::NotPrime(9))));
        assert!(Field::cyclotomic(0).is_err());
        let f5 = Field::prime(5).unwrap();
        assert!(f5.from_rational(&rat(1, 5)).is_err());
        assert_eq!(f5.from_rational(&rat(1, 2)).unwrap().residue(), Some(3));
    }

    #[test]
    fn cyclotomic_inverse_and_reduction() {
        let c3 = Field::cyclotomic(3).unwrap();
        let w = c3.generator().unwrap();
        // 1 + w + w^2 = 0
        assert!((&c3.one() + &w + w.pow(2)).is_zero());
        let a = &c3.from_i64(2) + &w;
        assert!((&a * &a.inv().unwrap()).is_one());
        assert!(c3.zero().inv().is_none());
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixing_fields_panics() {
        let _ = Field::rational().one() + Field::prime(7).unwrap().one();
    }

    fn descriptors() -> Vec<Field> {
        vec![
            Field::rational(),
            Field::prime(101).unwrap(),
            Field::prime(7).unwrap(),
            Field::cyclotomic(3).unwrap(),
            Field::cyclotomic(5).unwrap(),
            Field::cyclotomic(12).unwrap(),
        ]
    }

    fn element(field: &Field, seed: &[i64]) -> FieldElement {
        match field.descriptor() {
            FieldDescriptor::Rational => field.from_rational(&rat(seed[0], seed[1].abs() + 1)).unwrap(),
            FieldDescriptor::Prime { .. } => field.from_residue(seed[0]).unwrap(),
            FieldDescriptor::Cyclotomic { .. } => field.from_coefficients(
                seed.chunks(2).map(|c| rat(c[0], c[1].abs() + 1)).collect(),
            ),
        }
    }

    proptest! {
        #[test]
        fn field_axioms(
            which in 0usize..6,
            a in prop::collection::vec(-20i64..20, 8),
            b in prop::collection::vec(-20i64..20, 8),
            c in prop::collection::vec(-20i64..20, 8),
        ) {
            let field = &descriptors()[which];
            let (a, b, c) = (element(field, &a), element(field, &b), element(field, &c));
            prop_assert_eq!((&a + &b) + c.clone(), &a + &(&b + &c));
            prop_assert_eq!((&a * &b) * c.clone(), &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
                prop_assert_eq!((&b * &a).checked_div(&a).unwrap(), b.clone());
            }
        }
    }
}
