//! Integer Laurent polynomials in one variable `t`.
//!
//! A polynomial is stored as a lowest exponent plus a dense coefficient
//! vector. Both ends of the vector are nonzero, and the zero polynomial is the
//! empty vector with offset 0, so structural equality is polynomial equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        Self::from_big(exp, vec![c])
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0)
    }

    /// `coeffs[k]` is the coefficient of `t^(low + k)`.
    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        Self::from_big(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_big(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// `high - low`, or `-1` for zero.
    pub fn span(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let k = exp - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_big(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// The polynomial with `t` replaced by `t^-1`.
    pub fn reflect(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly {
            low: -self.high(),
            coeffs,
        }
    }

    /// Bit length of the largest coefficient, a rough size measure for pivoting.
    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn eval_int(&self, x: i64) -> BigInt {
        assert!(x != 0 || self.low >= 0, "negative power of zero");
        if x == 1 {
            return self.coeffs.iter().sum();
        }
        if x == -1 {
            let mut s = BigInt::zero();
            for (k, c) in self.coeffs.iter().enumerate() {
                if (self.low + k as i64).is_even() {
                    s += c;
                } else {
                    s -= c;
                }
            }
            return s;
        }
        assert!(self.low >= 0, "eval_int only supports negative exponents at +-1");
        let xb = BigInt::from(x);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &xb + c;
        }
        acc * xb.pow(self.low as u32)
    }

    /// Evaluate at a complex point `(re, im)`.
    pub fn eval_complex(&self, re: f64, im: f64) -> (f64, f64) {
        let z = nalgebra::Complex::new(re, im);
        let mut acc = nalgebra::Complex::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + nalgebra::Complex::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        }
        let acc = acc * z.powi(self.low as i32);
        (acc.re, acc.im)
    }

    /// Exact division in the Laurent ring, or `None` when the quotient does not exist.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dl = d.coeffs.len();
        let qlen = rem.len() - dl + 1;
        let lead = d.coeffs.last().unwrap();
        let mut q = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dl - 1];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &qk * dc;
            }
            q[k] = qk;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_big(self.low - d.low, q))
    }

    /// True when the coefficient sequence reads the same reversed, up to a global sign.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        let same = (0..n).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k]);
        let anti = (0..n).all(|k| self.coeffs[k] == -&self.coeffs[n - 1 - k]);
        same || anti
    }

    /// Shift to lowest exponent 0 and make the constant term positive.
    pub fn normalize_unit(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let p = self.shift(-self.low);
        if p.coeffs[0].is_negative() {
            -p
        } else {
            p
        }
    }

    /// Equality up to multiplication by a unit `+-t^k`.
    pub fn associate(&self, other: &LaurentPoly) -> bool {
        self.normalize_unit() == other.normalize_unit()
    }

    /// Coefficients as `i64`, when they all fit.
    pub fn to_i64_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    /// Compact text: `offset:c0 c1 ... ck`.
    pub fn to_compact(&self) -> String {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("{}:{}", self.low, cs.join(" "))
    }

    pub fn parse_compact(s: &str) -> Result<Self> {
        let (off, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing ':' in polynomial '{s}'")))?;
        let low: i64 = off
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad offset '{off}'")))?;
        let coeffs = rest
            .split_whitespace()
            .map(|c| {
                c.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient '{c}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_big(low, coeffs))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let e = self.low + k as i64;
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{mag}t")?,
                _ if unit => write!(f, "t^{e}")?,
                _ => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + k] += c;
        }
        LaurentPoly::from_big(low, coeffs)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_big(self.low + rhs.low, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Serialized as `{"offset": k, "coefficients": [...]}`; coefficients that do
/// not fit in an `i64` are written as decimal strings.
#[derive(Serialize, Deserialize)]
struct PolyRepr {
    offset: i64,
    coefficients: Vec<serde_json::Value>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coefficients = self
            .coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(c.to_string()),
            })
            .collect();
        PolyRepr {
            offset: self.low,
            coefficients,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PolyRepr::deserialize(d)?;
        let coeffs = r
            .coefficients
            .into_iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom("non-integer coefficient")),
                serde_json::Value::String(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| D::Error::custom("bad coefficient string")),
                _ => Err(D::Error::custom("coefficient must be a number or string")),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(LaurentPoly::from_big(r.offset, coeffs))
    }
}
