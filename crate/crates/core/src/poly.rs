//! Univariate polynomials with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Little-endian coefficients; the stored leading coefficient is nonzero
/// (the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
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

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `X + c`
    pub fn linear(c: BigInt) -> Self {
        Self::new(vec![c, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = IntPoly::one();
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `b^2 - 4ac` for a quadratic, `None` otherwise.
    pub fn discriminant(&self) -> Option<BigInt> {
        if self.degree() != Some(2) {
            return None;
        }
        let (c, b, a) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
        Some(b * b - BigInt::from(4) * a * c)
    }

    /// A quadratic with rational roots has a perfect-square discriminant.
    pub fn quadratic_is_irreducible(&self) -> Option<bool> {
        let d = self.discriminant()?;
        if d.is_negative() {
            return Some(true);
        }
        let r = d.sqrt();
        Some(&r * &r != d)
    }
}

/// Product of `factor^multiplicity` over the list; the empty product is 1.
pub fn expand(factors: &[(IntPoly, u32)]) -> IntPoly {
    factors.iter().fold(IntPoly::one(), |acc, (f, k)| &acc * &f.pow(*k))
}

impl Ord for IntPoly {
    /// By degree, then lexicographically by the little-endian coefficient
    /// list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
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
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            if i == 0 || !a.is_one() {
                write!(f, "{a}")?;
            }
            write!(f, "{mono}")?;
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_basics() {
        let x1 = IntPoly::from_i64s(&[1, 1]);
        assert_eq!(expand(&[(x1.clone(), 2)]), IntPoly::from_i64s(&[1, 2, 1]));
        assert_eq!(expand(&[]), IntPoly::one());
        let p = expand(&[(x1, 3), (IntPoly::from_i64s(&[-3, 1]), 1)]);
        assert_eq!(p.degree(), Some(4));
        assert!(p.is_monic());
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64s(&[-5, 0, 1]).to_string(), "X^2 - 5");
        assert_eq!(IntPoly::from_i64s(&[15, 1]).to_string(), "X + 15");
        assert_eq!(IntPoly::from_i64s(&[0, -2, 3]).to_string(), "3X^2 - 2X");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn discriminants() {
        // (X + 39)^2 + 1728
        let q = &IntPoly::from_i64s(&[39, 1]).pow(2) + &IntPoly::from_i64s(&[1728]);
        assert_eq!(q.quadratic_is_irreducible(), Some(true));
        let split = IntPoly::from_i64s(&[-4, 0, 1]);
        assert_eq!(split.quadratic_is_irreducible(), Some(false));
        assert_eq!(IntPoly::from_i64s(&[-5, 0, 1]).quadratic_is_irreducible(), Some(true));
        assert_eq!(IntPoly::from_i64s(&[1, 1]).discriminant(), None);
    }

    #[test]
    fn ordering_and_json() {
        let mut v = vec![IntPoly::from_i64s(&[1, 0, 1]), IntPoly::from_i64s(&[3, 1]), IntPoly::from_i64s(&[-2, 1])];
        v.sort();
        assert_eq!(v[0], IntPoly::from_i64s(&[-2, 1]));
        let s = serde_json::to_string(&v[1]).unwrap();
        assert_eq!(s, r#"["3","1"]"#);
        assert_eq!(serde_json::from_str::<IntPoly>(&s).unwrap(), v[1]);
    }
}
