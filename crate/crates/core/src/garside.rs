//! Left-greedy Garside normal form in the braid group, band generators, and
//! the periodic-factor identity.
//!
//! A simple element (positive permutation braid) is stored as the position
//! array its canonical word produces: entry `p` is the strand found at
//! position `p` after the braid, starting from `[0, 1, .., n-1]`. With that
//! encoding the product `A B` has array `A[B[p]]`, the starting set of `A` is
//! `{i : value i-1 sits right of value i}` and the finishing set is the
//! descent set `{i : A[i-1] > A[i]}`.

use serde::{Deserialize, Serialize};

use crate::braid::{build_family, BraidWord, FamilyOptions, FamilySpec, Letter, Variant};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleElement {
    positions: Vec<usize>,
}

impl SimpleElement {
    pub fn identity(n: usize) -> Self {
        SimpleElement {
            positions: (0..n).collect(),
        }
    }

    pub fn delta(n: usize) -> Self {
        SimpleElement {
            positions: (0..n).rev().collect(),
        }
    }

    fn generator(n: usize, i: usize) -> Self {
        let mut s = Self::identity(n);
        s.positions.swap(i - 1, i);
        s
    }

    pub fn strands(&self) -> usize {
        self.positions.len()
    }

    pub fn is_identity(&self) -> bool {
        self.positions.iter().enumerate().all(|(k, &v)| k == v)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.positions.len();
        self.positions.iter().enumerate().all(|(k, &v)| v == n - 1 - k)
    }

    /// Number of crossings (inversions).
    pub fn length(&self) -> usize {
        let p = &self.positions;
        (0..p.len())
            .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
            .sum()
    }

    fn where_is(&self) -> Vec<usize> {
        let mut inv = vec![0; self.positions.len()];
        for (pos, &v) in self.positions.iter().enumerate() {
            inv[v] = pos;
        }
        inv
    }

    /// Generators `i` with `A = s_i A'` as positive braids.
    pub fn starting_set(&self) -> Vec<usize> {
        let at = self.where_is();
        (1..self.strands()).filter(|&i| at[i - 1] > at[i]).collect()
    }

    /// Generators `i` with `A = A' s_i` as positive braids.
    pub fn finishing_set(&self) -> Vec<usize> {
        let p = &self.positions;
        (1..self.strands()).filter(|&i| p[i - 1] > p[i]).collect()
    }

    fn right_mul_generator(&mut self, i: usize) {
        self.positions.swap(i - 1, i);
    }

    fn left_div_generator(&mut self, i: usize) {
        for v in self.positions.iter_mut() {
            if *v == i - 1 {
                *v = i;
            } else if *v == i {
                *v = i - 1;
            }
        }
    }

    /// Conjugation by the half twist: `s_i -> s_(n-i)`.
    fn flip(&self) -> Self {
        let n = self.strands();
        SimpleElement {
            positions: self.positions.iter().rev().map(|&v| n - 1 - v).collect(),
        }
    }

    /// A positive word realizing this element.
    pub fn to_letters(&self) -> Vec<Letter> {
        let mut a = self.clone();
        let mut out = Vec::with_capacity(a.length());
        while let Some(&i) = a.starting_set().first() {
            out.push(Letter::pos(i));
            a.left_div_generator(i);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalForm {
    pub strands: usize,
    /// Power of the half twist.
    pub infimum: i64,
    pub factors: Vec<SimpleElement>,
}

impl NormalForm {
    pub fn to_word(&self) -> BraidWord {
        let n = self.strands;
        let delta = SimpleElement::delta(n).to_letters();
        let mut letters = Vec::new();
        if self.infimum >= 0 {
            for _ in 0..self.infimum {
                letters.extend(&delta);
            }
        } else {
            let inv: Vec<Letter> = delta.iter().rev().map(|l| l.inverse()).collect();
            for _ in 0..-self.infimum {
                letters.extend(&inv);
            }
        }
        for f in &self.factors {
            letters.extend(f.to_letters());
        }
        BraidWord::new(n, letters).expect("letters are in range")
    }

    pub fn is_left_weighted(&self) -> bool {
        self.factors.iter().all(|f| !f.is_identity() && !f.is_delta())
            && self.factors.windows(2).all(|w| left_weighted(&w[0], &w[1]))
    }
}

fn left_weighted(a: &SimpleElement, b: &SimpleElement) -> bool {
    let fin = a.finishing_set();
    b.starting_set().iter().all(|i| fin.contains(i))
}

/// Make the pair `(a, b)` left-weighted in place; returns whether anything moved.
fn make_left_weighted(a: &mut SimpleElement, b: &mut SimpleElement) -> bool {
    let mut changed = false;
    loop {
        let fin = a.finishing_set();
        let Some(i) = b.starting_set().into_iter().find(|i| !fin.contains(i)) else {
            return changed;
        };
        a.right_mul_generator(i);
        b.left_div_generator(i);
        changed = true;
    }
}

pub fn normal_form(w: &BraidWord) -> NormalForm {
    let n = w.strands();
    let mut infimum: i64 = 0;
    let mut factors: Vec<SimpleElement> = Vec::new();
    let delta = SimpleElement::delta(n);
    for &l in w.letters() {
        let s = if l.is_positive() {
            SimpleElement::generator(n, l.index())
        } else {
            // s_i^-1 = D^-1 (D s_i^-1), and P D^-1 = D^-1 flip(P).
            infimum -= 1;
            for f in factors.iter_mut() {
                *f = f.flip();
            }
            let mut d = delta.clone();
            d.right_mul_generator(l.index());
            d
        };
        push_factor(&mut factors, s);
        while factors.first().is_some_and(|f| f.is_delta()) {
            factors.remove(0);
            infimum += 1;
        }
        while factors.last().is_some_and(|f| f.is_identity()) {
            factors.pop();
        }
    }
    NormalForm {
        strands: n,
        infimum,
        factors,
    }
}

fn push_factor(factors: &mut Vec<SimpleElement>, s: SimpleElement) {
    factors.push(s);
    let mut k = factors.len() - 1;
    while k > 0 {
        let (left, right) = factors.split_at_mut(k);
        if !make_left_weighted(&mut left[k - 1], &mut right[0]) {
            break;
        }
        k -= 1;
    }
    factors.retain(|f| !f.is_identity());
}

pub fn words_equal(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    if u.strands() != v.strands() {
        return Err(Error::StrandMismatch {
            left: u.strands(),
            right: v.strands(),
        });
    }
    Ok(normal_form(u) == normal_form(v))
}

/// The full twist `D^2`, which generates the center.
pub fn full_twist(n: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::InvalidWord("full twist needs at least two strands".into()));
    }
    let d = SimpleElement::delta(n).to_letters();
    let mut letters = d.clone();
    letters.extend(d);
    BraidWord::new(n, letters)
}

/// Is `(Pi s1)^(2g+1)` equal to the full twist on `2g + 1` strands?
pub fn periodic_identity_check(genus: u32) -> Result<bool> {
    let fam = build_family(
        FamilySpec::new(genus, 0, Variant::Enhanced),
        &FamilyOptions {
            enhanced_phi: crate::braid::EnhancedPhiRule::EmbedGenus2,
        },
    )?;
    let n = fam.pi.strands();
    let pi_s1 = fam.pi.compose(&BraidWord::from_ints(n, &[1])?)?;
    words_equal(&pi_s1.pow(n), &full_twist(n)?)
}

/// Band generator `a_(i,j)`, a positive half twist between strands `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BandGenerator {
    pub i: usize,
    pub j: usize,
}

impl BandGenerator {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i < 1 || i >= j {
            return Err(Error::InvalidWord(format!(
                "band generator needs 1 <= i < j, got ({i}, {j})"
            )));
        }
        Ok(BandGenerator { i, j })
    }
}

/// `(s_(j-1) .. s_(i+1)) s_i (s_(j-1) .. s_(i+1))^-1`.
pub fn expand_band(b: BandGenerator, n: usize) -> Result<BraidWord> {
    if b.j > n {
        return Err(Error::IndexOutOfRange {
            index: b.j,
            strands: n,
        });
    }
    let conj: Vec<Letter> = (b.i + 1..b.j).rev().map(Letter::pos).collect();
    let mut letters = conj.clone();
    letters.push(Letter::pos(b.i));
    letters.extend(conj.iter().rev().map(|l| l.inverse()));
    BraidWord::new(n, letters)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandWitness(pub Vec<BandGenerator>);

impl BandWitness {
    pub fn expand(&self, n: usize) -> Result<BraidWord> {
        let mut letters = Vec::new();
        for &b in &self.0 {
            letters.extend_from_slice(expand_band(b, n)?.letters());
        }
        BraidWord::new(n, letters)
    }
}

/// Is `w` equal to the product of the witness's band generators?
pub fn verify_band_witness(witness: &BandWitness, w: &BraidWord) -> Result<bool> {
    let product = witness.expand(w.strands()).map_err(|e| match e {
        Error::IndexOutOfRange { index, .. } => Error::StrandMismatch {
            left: index,
            right: w.strands(),
        },
        other => other,
    })?;
    words_equal(&product, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, ints: &[i32]) -> BraidWord {
        BraidWord::from_ints(n, ints).unwrap()
    }

    #[test]
    fn simple_element_sets() {
        let s = SimpleElement::generator(3, 1);
        assert_eq!(s.starting_set(), vec![1]);
        assert_eq!(s.finishing_set(), vec![1]);
        let mut ab = s.clone();
        ab.right_mul_generator(2); // s1 s2
        assert_eq!(ab.starting_set(), vec![1]);
        assert_eq!(ab.finishing_set(), vec![2]);
        assert_eq!(SimpleElement::delta(4).length(), 6);
        assert_eq!(SimpleElement::delta(4).starting_set(), vec![1, 2, 3]);
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(
            normal_form(&BraidWord::identity(3)),
            NormalForm {
                strands: 3,
                infimum: 0,
                factors: vec![]
            }
        );
        let nf = normal_form(&w(3, &[1, 2, 1]));
        assert_eq!((nf.infimum, nf.factors.len()), (1, 0));
        let nf = normal_form(&w(3, &[1, -2]));
        assert_eq!(nf.infimum, -1);
        assert_eq!(nf.factors.len(), 2);
        assert!(nf.is_left_weighted());
        // D^-1 s2 (s2 s1)
        assert_eq!(nf.factors[0].to_letters(), vec![Letter::pos(2)]);
        assert_eq!(nf.factors[1].to_letters(), vec![Letter::pos(2), Letter::pos(1)]);
    }

    #[test]
    fn normal_form_word_is_a_fixed_point() {
        let x = w(4, &[1, -3, 2, 2, -1, 3, -2, 1, 1]);
        let nf = normal_form(&x);
        assert_eq!(normal_form(&nf.to_word()), nf);
    }

    #[test]
    fn defining_relations() {
        for n in 3..7 {
            for i in 1..n - 1 {
                let i = i as i32;
                assert!(words_equal(&w(n, &[i, i + 1, i]), &w(n, &[i + 1, i, i + 1])).unwrap());
            }
        }
        assert!(words_equal(&w(4, &[1, 3]), &w(4, &[3, 1])).unwrap());
        assert!(!words_equal(&w(3, &[1, 2]), &w(3, &[2, 1])).unwrap());
        assert!(words_equal(&w(3, &[1, -1, 2, -2]), &BraidWord::identity(3)).unwrap());
        assert!(words_equal(&w(3, &[1]), &w(4, &[1])).is_err());
    }

    #[test]
    fn full_twist_words() {
        assert_eq!(full_twist(2).unwrap(), w(2, &[1, 1]));
        assert!(words_equal(&full_twist(3).unwrap(), &w(3, &[1, 2, 1, 1, 2, 1])).unwrap());
        assert!(full_twist(1).is_err());
    }

    #[test]
    fn periodic_identity_small_cases() {
        assert!(words_equal(&w(2, &[1, 1]), &full_twist(2).unwrap()).unwrap());
        assert!(words_equal(&w(3, &[2, 1]).pow(3), &full_twist(3).unwrap()).unwrap());
        assert!(periodic_identity_check(1).unwrap());
        assert!(periodic_identity_check(2).unwrap());
        assert!(!words_equal(&w(5, &[4, 3, 2, 1]).pow(4), &full_twist(5).unwrap()).unwrap());
    }

    #[test]
    fn band_expansion() {
        assert_eq!(
            expand_band(BandGenerator::new(2, 3).unwrap(), 4).unwrap(),
            w(4, &[2])
        );
        assert_eq!(
            expand_band(BandGenerator::new(1, 3).unwrap(), 3).unwrap(),
            w(3, &[2, 1, -2])
        );
        assert_eq!(
            expand_band(BandGenerator::new(2, 4).unwrap(), 5).unwrap(),
            w(5, &[3, 2, -3])
        );
        assert!(expand_band(BandGenerator::new(1, 4).unwrap(), 3).is_err());
        assert!(BandGenerator::new(3, 3).is_err());
        for (i, j) in [(1, 2), (1, 5), (2, 6), (4, 7)] {
            let b = expand_band(BandGenerator::new(i, j).unwrap(), 7).unwrap();
            assert_eq!(b.len(), 2 * (j - i) - 1);
        }
    }

    #[test]
    fn band_witnesses() {
        let a12 = BandGenerator::new(1, 2).unwrap();
        assert!(verify_band_witness(&BandWitness(vec![a12; 5]), &w(2, &[1; 5])).unwrap());
        assert!(!verify_band_witness(&BandWitness(vec![a12]), &w(2, &[-1])).unwrap());
        let a13 = BandGenerator::new(1, 3).unwrap();
        assert!(verify_band_witness(&BandWitness(vec![a13]), &w(2, &[1])).is_err());
    }
}
