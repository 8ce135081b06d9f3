//! Reduced Burau matrices, Alexander polynomials, brick Seifert matrices,
//! signatures and determinants.
//!
//! Burau convention: right multiplication by `s_i` acts on columns `i-1, i, i+1`
//! (1-based, out-of-range columns ignored) as
//! `c[i-1] += t c[i]`, `c[i+1] += c[i]`, `c[i] = -t c[i]`, so `s_1` in `B_2` is `(-t)`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, LaurentMatrix};
use crate::poly::LaurentPoly;

/// Distance from zero an eigenvalue must keep for a floating signature.
pub const SIGNATURE_MARGIN: f64 = 1e-9;

pub fn reduced_burau(w: &BraidWord) -> LaurentMatrix {
    let d = w.strands().saturating_sub(1);
    let mut m = LaurentMatrix::identity(d);
    let t = LaurentPoly::t();
    let tinv = LaurentPoly::monomial(BigInt::from(1), -1);
    for l in w.letters() {
        let c = l.index() - 1;
        let (left, right, mid) = if l.is_positive() {
            (&t, LaurentPoly::one(), -&t)
        } else {
            (&LaurentPoly::one(), tinv.clone(), -&tinv)
        };
        for r in 0..d {
            let x = m.get(r, c).clone();
            if x.is_zero() {
                continue;
            }
            if c > 0 {
                let v = m.get(r, c - 1) + &(left * &x);
                m.set(r, c - 1, v);
            }
            if c + 1 < d {
                let v = m.get(r, c + 1) + &(&right * &x);
                m.set(r, c + 1, v);
            }
            m.set(r, c, &mid * &x);
        }
    }
    m
}

/// An Alexander polynomial, normalized to lowest exponent 0 and a positive constant term.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlexanderPolynomial(LaurentPoly);

impl AlexanderPolynomial {
    pub fn new(p: &LaurentPoly) -> Self {
        AlexanderPolynomial(p.normalize_unit())
    }

    pub fn one() -> Self {
        AlexanderPolynomial(LaurentPoly::one())
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_one()
    }

    pub fn degree(&self) -> i64 {
        self.0.span()
    }

    /// `|Delta(-1)|`.
    pub fn determinant(&self) -> BigInt {
        self.0.eval_int(-1).abs()
    }

    pub fn at_one(&self) -> BigInt {
        self.0.eval_int(1)
    }
}

impl fmt::Display for AlexanderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for AlexanderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alexander({})", self.0)
    }
}

/// `det(B - I) / (1 + t + .. + t^(n-1))` for the reduced Burau matrix `B`.
pub fn alexander_from_burau(w: &BraidWord) -> Result<AlexanderPolynomial> {
    let c = w.closure_components();
    if c != 1 {
        return Err(Error::NotAKnot(c));
    }
    let n = w.strands();
    let det = reduced_burau(w).sub_identity().det();
    let divisor = LaurentPoly::from_coeffs(0, &vec![1; n]);
    let q = det.div_exact(&divisor).ok_or(Error::InexactDivision)?;
    if q.is_zero() {
        return Err(Error::InexactDivision);
    }
    Ok(AlexanderPolynomial::new(&q))
}

pub fn determinant_of_word(w: &BraidWord) -> Result<BigInt> {
    Ok(alexander_from_burau(w)?.determinant())
}

/// A Seifert matrix `S`: the linking form on first homology of a Seifert surface.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SeifertMatrix(IntMatrix);

impl SeifertMatrix {
    pub fn new(m: IntMatrix) -> Self {
        SeifertMatrix(m)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Ok(SeifertMatrix(IntMatrix::from_rows(rows)?))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `det(S - S^T)`, which is 1 for a connected surface with one boundary component.
    pub fn intersection_det(&self) -> BigInt {
        self.0.sub(&self.0.transpose()).det()
    }

    pub fn alexander(&self) -> AlexanderPolynomial {
        alexander_from_seifert(self)
    }

    pub fn determinant(&self) -> BigInt {
        self.0.add(&self.0.transpose()).det().abs()
    }
}

impl fmt::Debug for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seifert{:?}", self.0)
    }
}

/// Seifert matrix of the Bennequin surface: one disk per strand and one band
/// per letter, with a homology generator for each pair of consecutive letters
/// of the same index.
pub fn brick_seifert(w: &BraidWord) -> Result<SeifertMatrix> {
    let c = w.closure_components();
    if c != 1 {
        return Err(Error::NotAKnot(c));
    }
    let n = w.strands();
    let letters = w.letters();
    // bricks[col] = (first position, second position, brick id)
    let mut bricks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n.saturating_sub(1)];
    let mut count = 0;
    for (col, list) in bricks.iter_mut().enumerate() {
        let pos: Vec<usize> = (0..letters.len())
            .filter(|&k| letters[k].index() == col + 1)
            .collect();
        if pos.is_empty() {
            return Err(Error::DisconnectedSurface(col + 1));
        }
        for p in pos.windows(2) {
            list.push((p[0], p[1], count));
            count += 1;
        }
    }
    let mut s = IntMatrix::zeros(count);
    let sign = |k: usize| letters[k].is_positive();
    for (col, list) in bricks.iter().enumerate() {
        for (k, &(p, q, id)) in list.iter().enumerate() {
            let v = match (sign(p), sign(q)) {
                (true, true) => -1,
                (false, false) => 1,
                _ => 0,
            };
            s.set(id, id, BigInt::from(v));
            if let Some(&(_, _, next)) = list.get(k + 1) {
                if sign(q) {
                    s.set(next, id, BigInt::from(1));
                } else {
                    s.set(id, next, BigInt::from(-1));
                }
            }
            if let Some(above) = bricks.get(col + 1) {
                for &(r, t, other) in above {
                    if p < r && r < q && q < t {
                        s.set(id, other, BigInt::from(-1));
                    } else if r < p && p < t && t < q {
                        s.set(id, other, BigInt::from(1));
                    }
                }
            }
        }
    }
    Ok(SeifertMatrix(s))
}

/// Normalized `det(S - t S^T)`.
pub fn alexander_from_seifert(s: &SeifertMatrix) -> AlexanderPolynomial {
    let m = &s.0;
    let d = m
        .pencil(&LaurentPoly::one(), &m.transpose(), &-LaurentPoly::t())
        .det();
    AlexanderPolynomial::new(&d)
}

/// A point on the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CirclePoint {
    MinusOne,
    /// `exp(i * angle)`, angle in radians.
    Angle(f64),
}

impl CirclePoint {
    fn angle(self) -> f64 {
        match self {
            CirclePoint::MinusOne => PI,
            CirclePoint::Angle(a) => a,
        }
    }
}

/// Signature of `(1 - w) S + (1 - conj w) S^T`.
pub fn signature_function(s: &SeifertMatrix, omega: CirclePoint) -> Result<i64> {
    let n = s.dim();
    if n == 0 {
        return Ok(0);
    }
    if omega == CirclePoint::MinusOne {
        return exact_signature(&s.0.add(&s.0.transpose()));
    }
    let (c, si) = (omega.angle().cos(), omega.angle().sin());
    // The form is A + iB with A = (1 - c)(S + S^T), B = s (S^T - S); embed it as [[A, -B], [B, A]].
    let mut big = DMatrix::<f64>::zeros(2 * n, 2 * n);
    let f = |x: &BigInt| num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN);
    for i in 0..n {
        for j in 0..n {
            let sij = f(s.0.get(i, j));
            let sji = f(s.0.get(j, i));
            let a = (1.0 - c) * (sij + sji);
            let b = si * (sji - sij);
            big[(i, j)] = a;
            big[(i + n, j + n)] = a;
            big[(i, j + n)] = -b;
            big[(i + n, j)] = b;
        }
    }
    let eig = nalgebra::SymmetricEigen::new(big).eigenvalues;
    let scale = eig.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    if eig.iter().any(|x| x.abs() < SIGNATURE_MARGIN * scale) {
        return Err(Error::JumpPoint(format!("angle {}", omega.angle())));
    }
    // Every eigenvalue of the complex form appears twice.
    let pos = eig.iter().filter(|x| **x > 0.0).count() as i64;
    Ok(pos - n as i64)
}

/// Signature of a symmetric integer matrix from its characteristic polynomial,
/// which is real-rooted, so Descartes' rule counts roots exactly.
fn exact_signature(m: &IntMatrix) -> Result<i64> {
    let p = m.charpoly();
    if p.low() > 0 {
        return Err(Error::JumpPoint("omega = -1 (singular form)".into()));
    }
    let coeffs = p.coeffs();
    let variations = |flip: bool| {
        let mut last = 0i32;
        let mut v = 0i64;
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut s = if c.is_positive() { 1 } else { -1 };
            if flip && k % 2 == 1 {
                s = -s;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    };
    Ok(variations(false) - variations(true))
}
