//! Homological action of braids lifted to the double branched cover of the disk.
//!
//! On `2g + 1` strands the cover is a genus-`g` surface with one boundary
//! component. The curve over the arc between points `i` and `i + 1` is `a_i`,
//! and consecutive curves meet once: `<a_i, a_(i+1)> = 1`. A half twist `s_i`
//! lifts to the Dehn twist about `a_i`, acting on homology by the transvection
//! `x -> x + <x, a_i> a_i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::braid::{build_family, BraidWord, FamilyOptions, FamilySpec};
use crate::error::{Error, Result};
use crate::invariants::{AlexanderPolynomial, SeifertMatrix};
use crate::linalg::IntMatrix;
use crate::qpoly::QPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainSurface {
    pub genus: u32,
}

impl ChainSurface {
    pub fn new(genus: u32) -> Self {
        ChainSurface { genus }
    }

    /// Rank of first homology, `2g`.
    pub fn rank(&self) -> usize {
        2 * self.genus as usize
    }

    pub fn strands(&self) -> usize {
        self.rank() + 1
    }

    /// Intersection form on the chain basis.
    pub fn form(&self) -> IntMatrix {
        let n = self.rank();
        let mut j = IntMatrix::zeros(n);
        for i in 0..n.saturating_sub(1) {
            j.set(i, i + 1, BigInt::one());
            j.set(i + 1, i, -BigInt::one());
        }
        j
    }

    /// `<x, y> = x^T J y`.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        (0..x.len().saturating_sub(1))
            .map(|i| x[i] * y[i + 1] - x[i + 1] * y[i])
            .sum()
    }
}

/// Integer matrix preserving the chain form: `M^T J M = J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymplecticMatrix(IntMatrix);

impl SymplecticMatrix {
    pub fn new(m: IntMatrix, surface: &ChainSurface) -> Result<Self> {
        if m.dim() != surface.rank() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix on rank {}",
                m.dim(),
                m.dim(),
                surface.rank()
            )));
        }
        let j = surface.form();
        if m.transpose().mul(&j).mul(&m) != j {
            return Err(Error::InvalidWord(
                "matrix does not preserve the intersection form".into(),
            ));
        }
        Ok(SymplecticMatrix(m))
    }

    pub fn identity(surface: &ChainSurface) -> Self {
        SymplecticMatrix(IntMatrix::identity(surface.rank()))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn mul(&self, o: &Self) -> Self {
        SymplecticMatrix(self.0.mul(&o.0))
    }

    pub fn trace(&self) -> BigInt {
        self.0.trace()
    }

    pub fn max_abs(&self) -> BigInt {
        self.0.max_abs()
    }

    /// `det(tI - M)`, normalized.
    pub fn alexander(&self) -> AlexanderPolynomial {
        AlexanderPolynomial::new(&self.0.charpoly())
    }
}

/// The product of transvections, one per letter, in word order.
pub fn lift_homological(w: &BraidWord, surface: &ChainSurface) -> Result<SymplecticMatrix> {
    if w.strands() != surface.strands() {
        return Err(Error::StrandMismatch {
            left: w.strands(),
            right: surface.strands(),
        });
    }
    let n = surface.rank();
    let mut m = IntMatrix::identity(n);
    for l in w.letters() {
        // Right multiplication by I + a (J a)^T: column i-1 gains column i, column i+1 loses it.
        let c = l.index() - 1;
        let sign = l.sign();
        for r in 0..n {
            let x = m.get(r, c).clone();
            if x.is_zero() {
                continue;
            }
            if c > 0 {
                let v = m.get(r, c - 1) + &x * sign;
                m.set(r, c - 1, v);
            }
            if c + 1 < n {
                let v = m.get(r, c + 1) - &x * sign;
                m.set(r, c + 1, v);
            }
        }
    }
    let out = SymplecticMatrix(m);
    debug_assert!(SymplecticMatrix::new(out.0.clone(), surface).is_ok());
    Ok(out)
}

/// Characteristic polynomial of the lifted `beta_n`; for a fibred knot this is its Alexander polynomial.
pub fn fibred_alexander(spec: FamilySpec, opts: &FamilyOptions) -> Result<AlexanderPolynomial> {
    Ok(family_monodromy(spec, opts)?.alexander())
}

pub fn family_monodromy(spec: FamilySpec, opts: &FamilyOptions) -> Result<SymplecticMatrix> {
    let fam = build_family(spec, opts)?;
    lift_homological(&fam.beta, &ChainSurface::new(spec.genus))
}

/// Euler characteristic bookkeeping for a double cover branched at `k` points
/// over a connected surface with one boundary circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchedCoverData {
    pub base_euler: i64,
    pub branch_points: i64,
    pub cover_euler: i64,
    pub boundary_components: i64,
    /// 1, or 2 for the trivial cover when `k = 0`.
    pub components: i64,
    /// Genus of each component.
    pub genus: i64,
}

pub fn branched_cover_euler(base_euler: i64, k: i64) -> Result<BranchedCoverData> {
    if k < 0 {
        return Err(Error::NegativeBranchCount(k));
    }
    if base_euler > 1 {
        return Err(Error::InvalidBase(format!(
            "Euler characteristic {base_euler} with one boundary circle"
        )));
    }
    let cover_euler = base_euler
        .checked_mul(2)
        .and_then(|c| c.checked_sub(k))
        .ok_or(Error::Overflow("cover Euler characteristic"))?;
    // The boundary circle's monodromy is the product of k transpositions.
    let boundary_components = if k % 2 == 1 { 1 } else { 2 };
    let components = if k == 0 { 2 } else { 1 };
    let twice_genus = 2 - cover_euler / components - boundary_components / components;
    Ok(BranchedCoverData {
        base_euler,
        branch_points: k,
        cover_euler,
        boundary_components,
        components,
        genus: twice_genus / 2,
    })
}

/// Sign making the trefoil monodromy give the same signature as the brick
/// matrix of `s_1^3`.
const SEIFERT_SIGN: i64 = -1;

/// The Seifert matrix `S = -J (I - M)^-1`. It satisfies `S - S^T = -J` and `S^T = S M`.
pub fn seifert_from_monodromy(m: &SymplecticMatrix, surface: &ChainSurface) -> Result<SeifertMatrix> {
    let n = m.dim();
    if n != surface.rank() {
        return Err(Error::Dimension(format!(
            "monodromy of size {n} on rank {}",
            surface.rank()
        )));
    }
    let id = IntMatrix::identity(n);
    let x = id.sub(&m.0).solve_rational(&id)?;
    let j = surface.form();
    let mut s = IntMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            let mut acc = BigRational::zero();
            for k in 0..n {
                if !j.get(r, k).is_zero() {
                    acc += BigRational::from_integer(j.get(r, k).clone()) * &x[k][c];
                }
            }
            if !acc.is_integer() {
                return Err(Error::NonIntegral(format!("entry ({r}, {c}) = {acc}")));
            }
            s.set(r, c, acc.to_integer() * SEIFERT_SIGN);
        }
    }
    Ok(SeifertMatrix::new(s))
}

/// Invariant factors of `tI - M` over `Q[t]`, monic, units dropped.
pub fn alexander_module_invariants(m: &SymplecticMatrix) -> Vec<QPoly> {
    let n = m.dim();
    let mut a: Vec<Vec<QPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = BigRational::from_integer(-m.0.get(i, j).clone());
                    if i == j {
                        QPoly::new(vec![c, BigRational::one()])
                    } else {
                        QPoly::new(vec![c])
                    }
                })
                .collect()
        })
        .collect();
    smith_diagonal(&mut a)
        .into_iter()
        .filter(|p| !p.is_unit())
        .collect()
}

/// Diagonalize by unimodular row and column operations; returns the monic diagonal.
fn smith_diagonal(a: &mut [Vec<QPoly>]) -> Vec<QPoly> {
    let n = a.len();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            let pivot = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].degree());
            let Some((pi, pj)) = pivot else {
                diag.extend((k..n).map(|_| QPoly::zero()));
                return diag;
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let p = a[k][k].clone();
            let mut clean = true;
            for i in k + 1..n {
                let (q, r) = a[i][k].div_rem(&p);
                for j in k..n {
                    let v = a[i][j].sub(&q.mul(&a[k][j]));
                    a[i][j] = v;
                }
                clean &= r.is_zero();
            }
            for j in k + 1..n {
                let (q, r) = a[k][j].div_rem(&p);
                for row in a.iter_mut().skip(k) {
                    let v = row[j].sub(&q.mul(&row[k]));
                    row[j] = v;
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide everything that is left.
            let bad = (k + 1..n).find(|&i| (k + 1..n).any(|j| !a[i][j].div_rem(&p).1.is_zero()));
            match bad {
                Some(i) => {
                    for j in k..n {
                        let v = a[k][j].add(&a[i][j]);
                        a[k][j] = v;
                    }
                }
                None => {
                    diag.push(p.monic());
                    break;
                }
            }
        }
    }
    diag
}
