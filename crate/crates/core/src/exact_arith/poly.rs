//! Dense univariate polynomials: integer polynomials for cyclotomic moduli and
//! the handful of rational-coefficient routines the cyclotomic field needs.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Integer polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x^k - 1`.
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[k] = BigInt::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact quotient by a monic divisor; `None` when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        assert!(divisor.is_monic(), "div_exact needs a monic divisor");
        let dd = divisor.degree()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if rem.iter().all(Zero::is_zero) {
                Some(IntPoly::new(Vec::new()))
            } else {
                None
            };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let lead = rem[shift + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &lead * c;
            }
            quot[shift] = lead;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPoly::new(quot))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = !mag.is_one() || deg == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match deg {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{deg}")?,
            }
        }
        Ok(())
    }
}

fn divisors(k: u32) -> Vec<u32> {
    (1..=k).filter(|d| k % d == 0).collect()
}

/// The k-th cyclotomic polynomial, obtained by dividing `x^k - 1` by
/// `Φ_d` for every proper divisor `d` of `k`.
///
/// Panics when `k == 0`.
pub fn cyclotomic_polynomial(k: u32) -> IntPoly {
    assert!(k >= 1, "cyclotomic polynomial needs k >= 1");
    let mut table: BTreeMap<u32, IntPoly> = BTreeMap::new();
    for d in divisors(k) {
        let mut q = IntPoly::x_pow_minus_one(d as usize);
        for e in divisors(d).into_iter().filter(|&e| e < d) {
            q = q
                .div_exact(&table[&e])
                .expect("cyclotomic factor divides x^d - 1");
        }
        table.insert(d, q);
    }
    table.remove(&k).expect("k divides itself")
}

// ---- rational polynomial helpers (ascending coefficients) ----

pub(crate) fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn rpoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn rpoly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `divisor` must be nonzero.
pub(crate) fn rpoly_divmod(a: &[Rational], divisor: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut d = divisor.to_vec();
    trim(&mut d);
    let dd = d.len().checked_sub(1).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let lead_inv = d[dd].recip();
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for shift in (0..quot.len()).rev() {
        let c = &rem[shift + dd] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, dc) in d.iter().enumerate() {
            rem[shift + j] -= &c * dc;
        }
        quot[shift] = c;
    }
    trim(&mut quot);
    trim(&mut rem);
    (quot, rem)
}

/// Inverse of `a` modulo `modulus` when they are coprime.
pub(crate) fn rpoly_inverse_mod(a: &[Rational], modulus: &[Rational]) -> Option<Vec<Rational>> {
    let mut r0 = modulus.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = rpoly_divmod(&r0, &r1);
        let s2 = rpoly_sub(&s0, &rpoly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd; a unit exactly when it is a nonzero constant.
    if r0.len() != 1 {
        return None;
    }
    let scale = r0[0].recip();
    let (_, inv) = rpoly_divmod(&s0.iter().map(|c| c * &scale).collect::<Vec<_>>(), modulus);
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler_phi(k: u32) -> usize {
        (1..=k).filter(|&j| num_integer::gcd(j, k) == 1).count()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(3).to_string(), "x^2 + x + 1");
        assert_eq!(cyclotomic_polynomial(1).to_string(), "x - 1");
    }

    #[test]
    fn degree_is_totient_and_product_is_x_pow_minus_one() {
        for k in 1..=30u32 {
            let phi = cyclotomic_polynomial(k);
            assert_eq!(phi.degree(), Some(euler_phi(k)), "k={k}");
            let product = divisors(k)
                .into_iter()
                .fold(IntPoly::one(), |acc, d| acc.mul(&cyclotomic_polynomial(d)));
            assert_eq!(product, IntPoly::x_pow_minus_one(k as usize), "k={k}");
        }
    }

    #[test]
    fn phi_105_has_a_coefficient_of_minus_two() {
        let phi = cyclotomic_polynomial(105);
        assert!(phi.coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn inverse_mod_x2_plus_x_plus_1() {
        let m = cyclotomic_polynomial(3).to_rational();
        // x * x^2 = 1, and x^2 = -x - 1
        let x = vec![Rational::zero(), Rational::one()];
        let inv = rpoly_inverse_mod(&x, &m).unwrap();
        let (_, prod) = rpoly_divmod(&rpoly_mul(&x, &inv), &m);
        assert_eq!(prod, vec![Rational::one()]);
        assert!(rpoly_inverse_mod(&m, &m).is_none());
    }
}
