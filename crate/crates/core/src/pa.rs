//! Pseudo-Anosov certification for words in two multitwists.
//!
//! For multicurves `A` and `B` that fill, the twists `T_A` and `T_B` map to
//! `[[1, -s], [0, 1]]` and `[[1, 0], [s, 1]]` with `s^2 = mu`, the top
//! eigenvalue of `N N^T`. A word is pseudo-Anosov exactly when its image is
//! hyperbolic. Matrix entries are kept as integer polynomials in `s` and only
//! evaluated at the end, over a rational enclosure of `mu`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::qpoly::{sign_variations, QPoly};

/// How close to the parabolic boundary `|tr| = 2` a verdict may come.
pub const CLASSIFY_MARGIN: f64 = 1e-9;

/// Target width of the enclosure of `mu`.
const MU_WIDTH_BITS: u32 = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceKind {
    pub genus: u32,
    pub punctured: bool,
}

impl SurfaceKind {
    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctured as i64
    }
}

/// Two multicurves with their geometric intersection matrix (rows `A`, columns `B`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulticurvePair {
    pub intersections: Vec<Vec<u64>>,
    pub surface: Option<SurfaceKind>,
}

impl MulticurvePair {
    pub fn new(intersections: Vec<Vec<u64>>) -> Result<Self> {
        let cols = intersections.first().map_or(0, Vec::len);
        if intersections.is_empty() || cols == 0 || intersections.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension(
                "intersection matrix must be a nonempty rectangle".into(),
            ));
        }
        Ok(MulticurvePair {
            intersections,
            surface: None,
        })
    }

    pub fn a_count(&self) -> usize {
        self.intersections.len()
    }

    pub fn b_count(&self) -> usize {
        self.intersections[0].len()
    }

    /// Total number of intersection points.
    pub fn vertices(&self) -> u64 {
        self.intersections.iter().flatten().sum()
    }

    /// Is the union of all curves connected?
    pub fn is_connected(&self) -> bool {
        let (a, b) = (self.a_count(), self.b_count());
        let mut seen = vec![false; a + b];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            let next: Vec<usize> = if v < a {
                (0..b)
                    .filter(|&j| self.intersections[v][j] > 0)
                    .map(|j| a + j)
                    .collect()
            } else {
                (0..a).filter(|&i| self.intersections[i][v - a] > 0).collect()
            };
            for u in next {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `chi(surface) - chi(union of curves)`; the union is a 4-valent graph with `E = 2V`.
    pub fn complement_euler(&self) -> Result<i64> {
        let s = self
            .surface
            .ok_or_else(|| Error::InvalidBase("no ambient surface recorded".into()))?;
        let v = i64::try_from(self.vertices()).map_err(|_| Error::Overflow("vertex count"))?;
        Ok(s.euler() - (v - 2 * v))
    }

    fn gram(&self) -> IntMatrix {
        let a = self.a_count();
        let mut m = IntMatrix::zeros(a);
        for i in 0..a {
            for j in 0..a {
                let d: u64 = (0..self.b_count())
                    .map(|k| self.intersections[i][k] * self.intersections[j][k])
                    .sum();
                m.set(i, j, BigInt::from(d));
            }
        }
        m
    }
}

/// The chain `a_1, .., a_(2g)` split into even-index curves (`A`) and odd-index curves (`B`).
pub fn chain_pair(genus: u32, punctured: bool) -> Result<MulticurvePair> {
    if genus == 0 {
        return Err(Error::InvalidFamily("genus must be at least 1".into()));
    }
    let g = genus as usize;
    // A[r] is curve 2r + 2, B[c] is curve 2c + 1; they meet iff the indices differ by one.
    let n = (0..g)
        .map(|r| {
            (0..g)
                .map(|c| u64::from((2 * r + 2).abs_diff(2 * c + 1) == 1))
                .collect()
        })
        .collect();
    let mut p = MulticurvePair::new(n)?;
    p.surface = Some(SurfaceKind { genus, punctured });
    Ok(p)
}

pub fn complement_euler(genus: u32, punctured: bool) -> Result<i64> {
    chain_pair(genus, punctured)?.complement_euler()
}

/// A rational enclosure `lo < mu <= hi` of the top eigenvalue of `N N^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuEnclosure {
    pub lo: BigRational,
    pub hi: BigRational,
    /// Characteristic polynomial of `N N^T`.
    pub charpoly: QPoly,
}

impl MuEnclosure {
    pub fn width(&self) -> f64 {
        (&self.hi - &self.lo).to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn value(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

pub fn mu(pair: &MulticurvePair) -> Result<MuEnclosure> {
    if pair.vertices() == 0 {
        return Err(Error::Empty("intersection matrix is zero".into()));
    }
    let p = QPoly::from_laurent(&pair.gram().charpoly());
    let chain = p.sturm_chain();
    let roots_in = |a: &BigRational, b: &BigRational| {
        sign_variations(&chain, a) as i64 - sign_variations(&chain, b) as i64
    };
    // Cauchy bound on the roots.
    let lead = p.leading().expect("nonzero").abs();
    let bound = p
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |m, x| m.max(x))
        + BigRational::one();
    let mut lo = BigRational::zero();
    let mut hi = bound;
    let target = BigRational::new(BigInt::one(), BigInt::one() << MU_WIDTH_BITS);
    let two = BigRational::from_integer(2.into());
    // Invariant: the largest root lies in (lo, hi].
    while &hi - &lo > target {
        let mid = (&lo + &hi) / &two;
        if roots_in(&mid, &hi) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(MuEnclosure { lo, hi, charpoly: p })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Twist {
    A,
    B,
}

/// A word in `T_A^(+-1)` and `T_B^(+-1)`, written as e.g. `A B^-1 A^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistWord2(pub Vec<(Twist, i32)>);

impl TwistWord2 {
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 0)
    }

    pub fn inverse(&self) -> Self {
        TwistWord2(self.0.iter().rev().map(|&(t, e)| (t, -e)).collect())
    }

    pub fn then(&self, o: &Self) -> Self {
        TwistWord2(self.0.iter().chain(&o.0).copied().collect())
    }
}

impl FromStr for TwistWord2 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => {
                    let e: i32 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in '{tok}'")))?;
                    (b, e)
                }
                None => (tok, 1),
            };
            let t = match base {
                "A" | "TA" | "T_A" => Twist::A,
                "B" | "TB" | "T_B" => Twist::B,
                _ => return Err(Error::Parse(format!("unknown twist '{tok}'"))),
            };
            out.push((t, exp));
        }
        Ok(TwistWord2(out))
    }
}

impl fmt::Display for TwistWord2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(t, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            let name = match t {
                Twist::A => "A",
                Twist::B => "B",
            };
            if e == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Integer polynomial in `s`, `coeffs[k]` multiplying `s^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SPoly(pub Vec<i64>);

impl SPoly {
    fn trim(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn add(&self, o: &Self) -> Result<Self> {
        let n = self.0.len().max(o.0.len());
        let c = (0..n)
            .map(|k| {
                let a = self.0.get(k).copied().unwrap_or(0);
                let b = o.0.get(k).copied().unwrap_or(0);
                a.checked_add(b).ok_or(Error::Overflow("trace polynomial"))
            })
            .collect::<Result<_>>()?;
        Ok(SPoly(c).trim())
    }

    fn mul(&self, o: &Self) -> Result<Self> {
        if self.0.is_empty() || o.0.is_empty() {
            return Ok(SPoly(vec![]));
        }
        let mut c = vec![0i64; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                let p = a.checked_mul(*b).ok_or(Error::Overflow("trace polynomial"))?;
                c[i + j] = c[i + j]
                    .checked_add(p)
                    .ok_or(Error::Overflow("trace polynomial"))?;
            }
        }
        Ok(SPoly(c).trim())
    }

    pub fn is_constant(&self) -> Option<i64> {
        match self.0.len() {
            0 => Some(0),
            1 => Some(self.0[0]),
            _ => None,
        }
    }

    /// Only even powers of `s` occur, so the value is a polynomial in `mu`.
    pub fn is_even(&self) -> bool {
        self.0.iter().skip(1).step_by(2).all(|&c| c == 0)
    }
}

/// 2x2 matrix over integer polynomials in `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix([SPoly; 4]);

impl RepMatrix {
    fn identity() -> Self {
        RepMatrix([SPoly(vec![1]), SPoly(vec![]), SPoly(vec![]), SPoly(vec![1])])
    }

    fn twist(t: Twist, sign: i64) -> Self {
        let one = SPoly(vec![1]);
        let zero = SPoly(vec![]);
        match t {
            Twist::A => RepMatrix([one.clone(), SPoly(vec![0, -sign]), zero, one]),
            Twist::B => RepMatrix([one.clone(), zero, SPoly(vec![0, sign]), one]),
        }
    }

    fn mul(&self, o: &Self) -> Result<Self> {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        Ok(RepMatrix([
            a.mul(e)?.add(&b.mul(g)?)?,
            a.mul(f)?.add(&b.mul(h)?)?,
            c.mul(e)?.add(&d.mul(g)?)?,
            c.mul(f)?.add(&d.mul(h)?)?,
        ]))
    }

    pub fn image(word: &TwistWord2) -> Result<Self> {
        let mut m = Self::identity();
        for &(t, e) in &word.0 {
            let step = Self::twist(t, e.signum() as i64);
            for _ in 0..e.unsigned_abs() {
                m = m.mul(&step)?;
            }
        }
        Ok(m)
    }

    pub fn trace(&self) -> Result<SPoly> {
        self.0[0].add(&self.0[3])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    PseudoAnosov { dilatation: f64 },
    Parabolic,
    Elliptic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// Trace as a polynomial in `s`.
    pub trace_poly: SPoly,
    /// Rational enclosure of the trace, as floats rounded outward.
    pub trace_lo: f64,
    pub trace_hi: f64,
    pub mu: f64,
}

#[derive(Clone, Debug)]
struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    fn add(&self, o: &Self) -> Self {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().expect("four").clone();
        let hi = c.iter().max().expect("four").clone();
        Interval { lo, hi }
    }

    /// Horner evaluation of an integer polynomial over this interval.
    fn eval(&self, coeffs: &[i64]) -> Self {
        let mut acc = Interval::point(BigRational::zero());
        for &c in coeffs.iter().rev() {
            acc = acc
                .mul(self)
                .add(&Interval::point(BigRational::from_integer(c.into())));
        }
        acc
    }
}

/// Rational enclosure of `sqrt(x)` for an enclosure of `x >= 0`.
fn sqrt_enclosure(x: &Interval) -> Interval {
    let two = BigRational::from_integer(2.into());
    let target = BigRational::new(BigInt::one(), BigInt::one() << MU_WIDTH_BITS);
    let root = |v: &BigRational, upper: bool| {
        let mut lo = BigRational::zero();
        let mut hi = v.clone().max(BigRational::one());
        while &hi - &lo > target {
            let mid = (&lo + &hi) / &two;
            if &mid * &mid <= *v {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if upper {
            hi
        } else {
            lo
        }
    };
    Interval {
        lo: root(&x.lo, false),
        hi: root(&x.hi, true),
    }
}

pub fn classify(word: &TwistWord2, pair: &MulticurvePair) -> Result<Classification> {
    if word.is_empty() {
        return Err(Error::Empty("twist word".into()));
    }
    let enc = mu(pair)?;
    let trace_poly = RepMatrix::image(word)?.trace()?;
    let mu_f = enc.value();
    let mu_iv = Interval {
        lo: enc.lo,
        hi: enc.hi,
    };
    let tr = if trace_poly.is_even() {
        let in_mu: Vec<i64> = trace_poly.0.iter().step_by(2).copied().collect();
        mu_iv.eval(&in_mu)
    } else {
        sqrt_enclosure(&mu_iv).eval(&trace_poly.0)
    };
    let lo = tr.lo.to_f64().unwrap_or(f64::NEG_INFINITY);
    let hi = tr.hi.to_f64().unwrap_or(f64::INFINITY);
    let two = BigRational::from_integer(2.into());
    let margin = BigRational::from_float(CLASSIFY_MARGIN).expect("finite");
    let verdict = if matches!(trace_poly.is_constant(), Some(2 | -2)) {
        Verdict::Parabolic
    } else if tr.lo > &two + &margin || tr.hi < -(&two + &margin) {
        let t = ((lo + hi) / 2.0).abs();
        Verdict::PseudoAnosov {
            dilatation: (t + (t * t - 4.0).sqrt()) / 2.0,
        }
    } else if tr.lo > -(&two - &margin) && tr.hi < &two - &margin {
        Verdict::Elliptic
    } else {
        return Err(Error::Indeterminate);
    };
    Ok(Classification {
        verdict,
        trace_poly,
        trace_lo: lo,
        trace_hi: hi,
        mu: mu_f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tw(s: &str) -> TwistWord2 {
        s.parse().unwrap()
    }

    #[test]
    fn chain_matrices() {
        assert_eq!(chain_pair(1, true).unwrap().intersections, vec![vec![1]]);
        assert_eq!(
            chain_pair(2, true).unwrap().intersections,
            vec![vec![1, 1], vec![0, 1]]
        );
        for g in 1..12 {
            let p = chain_pair(g, false).unwrap();
            assert!(p.is_connected());
            assert_eq!(p.vertices(), 2 * g as u64 - 1);
        }
        assert!(!MulticurvePair::new(vec![vec![1, 0], vec![0, 1]])
            .unwrap()
            .is_connected());
        assert!(chain_pair(0, true).is_err());
    }

    #[test]
    fn complement_values() {
        assert_eq!(complement_euler(2, true).unwrap(), 0);
        assert_eq!(complement_euler(2, false).unwrap(), 1);
        assert_eq!(complement_euler(5, false).unwrap(), 1);
    }

    #[test]
    fn mu_values() {
        let one = mu(&MulticurvePair::new(vec![vec![1]]).unwrap()).unwrap();
        assert!(one.lo < BigRational::one() && BigRational::one() <= one.hi);
        let c = |x: f64| 4.0 * x.cos().powi(2);
        let m2 = mu(&chain_pair(2, true).unwrap()).unwrap();
        assert!((m2.value() - c(std::f64::consts::PI / 5.0)).abs() < 1e-12);
        assert!(m2.width() <= 1e-12);
        let m3 = mu(&chain_pair(3, true).unwrap()).unwrap();
        assert!((m3.value() - c(std::f64::consts::PI / 7.0)).abs() < 1e-12);
        assert!(mu(&MulticurvePair::new(vec![vec![0]]).unwrap()).is_err());
    }

    #[test]
    fn twist_word_parsing() {
        let w = tw("A B^-1 A^3");
        assert_eq!(w.0, vec![(Twist::A, 1), (Twist::B, -1), (Twist::A, 3)]);
        assert_eq!(w.to_string(), "A B^-1 A^3");
        assert!("C".parse::<TwistWord2>().is_err());
        assert!("A^x".parse::<TwistWord2>().is_err());
    }

    #[test]
    fn classification_examples() {
        let p = chain_pair(2, true).unwrap();
        assert_eq!(classify(&tw("A"), &p).unwrap().verdict, Verdict::Parabolic);
        assert_eq!(classify(&tw("B^-4"), &p).unwrap().verdict, Verdict::Parabolic);
        let c = classify(&tw("A B^-1"), &p).unwrap();
        assert_eq!(c.trace_poly, SPoly(vec![2, 0, 1]));
        let Verdict::PseudoAnosov { dilatation } = c.verdict else {
            panic!()
        };
        assert!((dilatation - 4.390_256).abs() < 1e-5);
        let c = classify(&tw("A B"), &p).unwrap();
        assert_eq!(c.verdict, Verdict::Elliptic);
        assert!((c.trace_lo + 0.618_034).abs() < 1e-6);
        assert!(classify(&TwistWord2(vec![]), &p).is_err());
    }

    #[test]
    fn near_boundary_is_indeterminate() {
        // mu = 4 makes A B exactly parabolic without a constant trace.
        let p = MulticurvePair::new(vec![vec![2]]).unwrap();
        assert!(matches!(classify(&tw("A B"), &p), Err(Error::Indeterminate)));
    }
}
