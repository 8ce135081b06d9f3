//! Dense square matrices over the integers and over integer Laurent polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("matrix rows must form a square".into()));
        }
        Ok(IntMatrix {
            n,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * &o.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        let lm = self.to_laurent();
        let d = lm.det();
        d.coeff(0)
    }

    /// Matrix `self - t * other`, or generally `a*self + b*other` over Laurent polynomials.
    pub fn pencil(&self, a: &LaurentPoly, other: &IntMatrix, b: &LaurentPoly) -> LaurentMatrix {
        let n = self.n;
        let mut m = LaurentMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let x = &a.scale(self.get(i, j)) + &b.scale(other.get(i, j));
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn to_laurent(&self) -> LaurentMatrix {
        LaurentMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .map(|c| LaurentPoly::monomial(c.clone(), 0))
                .collect(),
        }
    }

    /// Characteristic polynomial `det(tI - M)`.
    pub fn charpoly(&self) -> LaurentPoly {
        let id = IntMatrix::identity(self.n);
        id.pencil(&LaurentPoly::t(), self, &LaurentPoly::constant(-1))
            .det()
    }

    /// Solve `self * X = rhs` over the rationals.
    pub fn solve_rational(&self, rhs: &IntMatrix) -> Result<Vec<Vec<BigRational>>> {
        let n = self.n;
        let q = |x: &BigInt| BigRational::from_integer(x.clone());
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| q(self.get(i, j))).collect())
            .collect();
        let mut b: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| q(rhs.get(i, j))).collect())
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::Singular("no pivot in rational solve".into()))?;
            a.swap(col, piv);
            b.swap(col, piv);
            let p = a[col][col].clone();
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &p;
                for c in col..n {
                    let v = &f * &a[col][c];
                    a[r][c] -= v;
                }
                for c in 0..n {
                    let v = &f * &b[col][c];
                    b[r][c] -= v;
                }
            }
        }
        for (r, row) in b.iter_mut().enumerate() {
            for x in row.iter_mut() {
                *x = &*x / &a[r][r];
            }
        }
        Ok(b)
    }

    pub fn rows_i64(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Serialized as nested row arrays (row-major), with oversized entries as strings.
impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Value>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| match self.get(i, j).to_i64() {
                        Some(v) => serde_json::Value::from(v),
                        None => serde_json::Value::from(self.get(i, j).to_string()),
                    })
                    .collect()
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(D::Error::custom("matrix is not square"));
            }
            for v in r {
                let x = match v {
                    serde_json::Value::Number(k) => k.as_i64().map(BigInt::from),
                    serde_json::Value::String(s) => s.parse::<BigInt>().ok(),
                    _ => None,
                };
                data.push(x.ok_or_else(|| D::Error::custom("bad matrix entry"))?);
            }
        }
        Ok(IntMatrix { n, data })
    }
}

/// Square matrix of integer Laurent polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    n: usize,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(n: usize) -> Self {
        LaurentMatrix {
            n,
            data: vec![LaurentPoly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = LaurentPoly::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly {
        &mut self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = LaurentPoly::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn sub_identity(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            let v = m.get(i, i) - &LaurentPoly::one();
            m.set(i, i, v);
        }
        m
    }

    /// Determinant by fraction-free (Bareiss) elimination with full pivoting.
    ///
    /// Pivots are chosen by smallest coefficient size and then smallest span,
    /// which keeps intermediate minors small when most of the matrix is small.
    pub fn det(&self) -> LaurentPoly {
        let n = self.n;
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut a = self.data.clone();
        let mut sign_neg = false;
        let mut prev = LaurentPoly::one();
        let idx = |i: usize, j: usize| i * n + j;
        for k in 0..n {
            let mut best: Option<(u64, i64, usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    let e = &a[idx(i, j)];
                    if e.is_zero() {
                        continue;
                    }
                    let key = (e.max_bits(), e.span());
                    if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                        best = Some((key.0, key.1, i, j));
                    }
                }
            }
            let Some((_, _, pi, pj)) = best else {
                return LaurentPoly::zero();
            };
            if pi != k {
                for j in 0..n {
                    a.swap(idx(pi, j), idx(k, j));
                }
                sign_neg = !sign_neg;
            }
            if pj != k {
                for i in 0..n {
                    a.swap(idx(i, pj), idx(i, k));
                }
                sign_neg = !sign_neg;
            }
            let pivot = a[idx(k, k)].clone();
            for i in k + 1..n {
                let aik = a[idx(i, k)].clone();
                for j in k + 1..n {
                    let num = &(&pivot * &a[idx(i, j)]) - &(&aik * &a[idx(k, j)]);
                    a[idx(i, j)] = num
                        .div_exact(&prev)
                        .expect("Bareiss division is exact over an integral domain");
                }
                a[idx(i, k)] = LaurentPoly::zero();
            }
            prev = pivot;
        }
        let d = a[idx(n - 1, n - 1)].clone();
        if sign_neg {
            -d
        } else {
            d
        }
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LaurentMatrix {}x{}", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
