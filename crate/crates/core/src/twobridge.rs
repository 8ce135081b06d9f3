//! Continued fractions, two-bridge fractions and Alexander polynomials of two-bridge knots.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::braid::{FamilyOptions, FamilySpec, Variant};
use crate::cover::fibred_alexander;
use crate::error::{Error, Result};
use crate::invariants::AlexanderPolynomial;
use crate::poly::LaurentPoly;

/// `[a_1, .., a_k]` meaning `a_1 + 1/(a_2 + 1/(.. + 1/a_k))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct ContinuedFraction(Vec<i64>);

impl ContinuedFraction {
    pub fn new(terms: Vec<i64>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::ContinuedFraction("no terms".into()));
        }
        if terms.contains(&0) {
            return Err(Error::ContinuedFraction(format!("zero term in {terms:?}")));
        }
        Ok(ContinuedFraction(terms))
    }

    /// `[2, 2, .., 2]` with `2g` terms.
    pub fn twos(genus: u32) -> Self {
        ContinuedFraction(vec![2; 2 * genus as usize])
    }

    /// `[2g - 1, 1, 2]`.
    pub fn intro_family(genus: u32) -> Result<Self> {
        Self::new(vec![2 * genus as i64 - 1, 1, 2])
    }

    pub fn terms(&self) -> &[i64] {
        &self.0
    }

    /// Positive continued fraction of `p/q` by the Euclidean algorithm.
    pub fn of_fraction(p: i64, q: i64) -> Result<Self> {
        if p <= 0 || q <= 0 {
            return Err(Error::ContinuedFraction(format!("{p}/{q} is not positive")));
        }
        let (mut a, mut b) = (p, q);
        let mut out = Vec::new();
        while b != 0 {
            out.push(a / b);
            (a, b) = (b, a % b);
        }
        Self::new(out)
    }
}

impl TryFrom<Vec<i64>> for ContinuedFraction {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ContinuedFraction> for Vec<i64> {
    fn from(c: ContinuedFraction) -> Self {
        c.0
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let terms = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad term '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(terms)
    }
}

/// A reduced fraction `p/q` with `p > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoBridgeFraction {
    pub p: i64,
    pub q: i64,
}

impl TwoBridgeFraction {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p <= 0 || q == 0 || p.gcd(&q) != 1 {
            return Err(Error::ContinuedFraction(format!(
                "{p}/{q} is not a reduced positive fraction"
            )));
        }
        Ok(TwoBridgeFraction { p, q })
    }

    pub fn is_knot(&self) -> bool {
        self.p % 2 == 1
    }

    /// Representative with `0 < q < p` and `q` odd, describing the same knot
    /// up to mirror image.
    pub fn odd_normalized(&self) -> Result<Self> {
        if !self.is_knot() {
            return Err(Error::NotTwoBridgeKnot { p: self.p, q: self.q });
        }
        let mut q = self.q.rem_euclid(self.p);
        if q % 2 == 0 {
            q = self.p - q;
        }
        Ok(TwoBridgeFraction { p: self.p, q })
    }
}

impl fmt::Display for TwoBridgeFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

pub fn cf_to_fraction(cf: &ContinuedFraction) -> Result<TwoBridgeFraction> {
    let overflow = || Error::Overflow("continued fraction");
    let terms = cf.terms();
    let (mut num, mut den) = (*terms.last().expect("nonempty"), 1i64);
    for &a in terms.iter().rev().skip(1) {
        if num == 0 {
            return Err(Error::ContinuedFraction(format!(
                "division by zero evaluating {cf}"
            )));
        }
        let next = a
            .checked_mul(num)
            .and_then(|x| x.checked_add(den))
            .ok_or_else(overflow)?;
        (num, den) = (next, num);
    }
    if num == 0 {
        return Err(Error::ContinuedFraction(format!("{cf} evaluates to zero")));
    }
    let g = num.gcd(&den);
    let (mut p, mut q) = (num / g, den / g);
    if p < 0 {
        (p, q) = (-p, -q);
    }
    TwoBridgeFraction::new(p, q)
}

/// `sum_k (-1)^k t^(e_k)` with `e_k` the partial sums of `(-1)^floor(iq/p)`.
pub fn twobridge_alexander(f: TwoBridgeFraction) -> Result<AlexanderPolynomial> {
    let f = f.odd_normalized()?;
    let (p, q) = (f.p, f.q);
    let mut e = 0i64;
    let mut exps = vec![0i64];
    for i in 1..p {
        let floor = i.checked_mul(q).ok_or(Error::Overflow("two-bridge exponent"))? / p;
        e += if floor % 2 == 0 { 1 } else { -1 };
        exps.push(e);
    }
    let low = *exps.iter().min().expect("nonempty");
    let high = *exps.iter().max().expect("nonempty");
    let mut coeffs = vec![0i64; (high - low + 1) as usize];
    for (k, x) in exps.iter().enumerate() {
        coeffs[(x - low) as usize] += if k % 2 == 0 { 1 } else { -1 };
    }
    Ok(AlexanderPolynomial::new(&LaurentPoly::from_coeffs(low, &coeffs)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct W0Crosscheck {
    pub genus: u32,
    pub fraction: TwoBridgeFraction,
    pub twobridge: AlexanderPolynomial,
    pub fibred: AlexanderPolynomial,
    pub agree: bool,
}

/// Compare the two-bridge polynomial of `[2] * 2g` with the monodromy polynomial of `w_0`.
pub fn crosscheck_w0(genus: u32) -> Result<W0Crosscheck> {
    let fraction = cf_to_fraction(&ContinuedFraction::twos(genus))?;
    let twobridge = twobridge_alexander(fraction)?;
    let fibred = fibred_alexander(
        FamilySpec::new(genus, 0, Variant::Original),
        &FamilyOptions::default(),
    )?;
    let agree = twobridge == fibred;
    Ok(W0Crosscheck {
        genus,
        fraction,
        twobridge,
        fibred,
        agree,
    })
}
