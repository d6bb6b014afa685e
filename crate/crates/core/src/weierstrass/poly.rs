//! Dense univariate polynomials over `Q`, ascending coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use algebraics::polynomial::Polynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn rational_text(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// Parses coefficients written as `"a"` or `"a/b"`.
    pub fn from_strs<S: AsRef<str>>(coeffs: &[S]) -> Result<Self> {
        Ok(Self::new(
            coeffs
                .iter()
                .map(|s| parse_rational(s.as_ref()))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, x) in d.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &c * x;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Largest `k` with `f^k | self`; `None` for the zero polynomial.
    pub fn valuation(&self, f: &Self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut x = self.clone();
        loop {
            let (q, r) = x.div_rem(f);
            if !r.is_zero() {
                return Some(k);
            }
            x = q;
            k += 1;
        }
    }

    /// `s^w · self(1/s)`, for `w ≥ deg`.
    pub fn chart_at_infinity(&self, w: usize) -> Self {
        let mut c = vec![BigRational::zero(); w + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[w - i] = x.clone();
        }
        Self::new(c)
    }

    /// Integer polynomial with the same roots, primitive up to sign.
    fn to_integer(&self) -> Polynomial<BigInt> {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        Polynomial::from(ints)
    }

    /// Monic irreducible factors over `Q` with multiplicities, by increasing
    /// degree and then coefficients.
    pub fn factor(&self) -> Vec<(RationalPoly, u32)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let factors = self.to_integer().factor();
        let mut out: Vec<(RationalPoly, u32)> = factors
            .polynomial_factors
            .into_iter()
            .map(|f| {
                let c: Vec<BigRational> = f.polynomial.iter().map(BigRational::from_integer).collect();
                (RationalPoly::new(c).monic(), f.power as u32)
            })
            .collect();
        out.sort_by(|a, b| {
            (a.0.degree(), a.0.coeffs.iter().map(rational_text).collect::<Vec<_>>())
                .cmp(&(b.0.degree(), b.0.coeffs.iter().map(rational_text).collect::<Vec<_>>()))
        });
        out
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, o: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = BigRational::zero();
        RationalPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + o.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, o: &RationalPoly) -> RationalPoly {
        self + &(-o)
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, o: &RationalPoly) -> RationalPoly {
        if self.is_zero() || o.is_zero() {
            return RationalPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        RationalPoly::new(c)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = a.is_one() && i > 0;
            if !unit {
                write!(f, "{}", rational_text(&a))?;
            }
            match i {
                0 => {}
                1 if unit => write!(f, "t")?,
                1 => write!(f, "*t")?,
                _ if unit => write!(f, "t^{i}")?,
                _ => write!(f, "*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for RationalPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(rational_text).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        RationalPoly::from_strs(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RationalPoly {
        RationalPoly::from_ints(c)
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        let (q, r) = p(&[-1, 0, 1]).div_rem(&a);
        assert_eq!((q, r), (b.clone(), RationalPoly::zero()));
        assert_eq!(p(&[0, 0, 1, 1]).gcd(&p(&[0, 1, 1])), p(&[0, 1, 1]));
        assert_eq!(p(&[0, 0, 0, 5]).valuation(&RationalPoly::t()), Some(3));
        assert_eq!(p(&[1, 2]).chart_at_infinity(4), p(&[0, 0, 0, 2, 1]));
        assert_eq!(p(&[27, 0, 0, 4]).to_string(), "4*t^3 + 27");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
    }

    #[test]
    fn parse_and_serde() {
        let x = RationalPoly::from_strs(&["1/3", "-2", "4/2"]).unwrap();
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"["1/3","-2","2"]"#);
        assert!(RationalPoly::from_strs(&["1/0"]).is_err());
        assert!(RationalPoly::from_strs(&["x"]).is_err());
        assert_eq!(RationalPoly::from_strs(&["0", "0"]).unwrap(), RationalPoly::zero());
    }

    #[test]
    fn factorization() {
        // (t - 1)^2 (t^2 + 1) (2t + 3)
        let f = &(&p(&[-1, 1]).pow(2) * &p(&[1, 0, 1])) * &p(&[3, 2]);
        let fs = f.factor();
        assert_eq!(fs.len(), 3);
        let mut prod = RationalPoly::one();
        for (g, k) in &fs {
            prod = &prod * &g.pow(*k);
        }
        assert_eq!(prod.monic(), f.monic());
        assert!(fs.contains(&(p(&[-1, 1]), 2)));
        assert!(p(&[5]).factor().is_empty());
    }
}
