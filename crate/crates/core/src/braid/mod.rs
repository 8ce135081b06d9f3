//! Braid words in the half-twist generators, their permutations and closures.
//!
//! A letter is a signed nonzero integer: `i` is the positive half-twist
//! between strands `i` and `i + 1`, `-i` its inverse. The text format is a
//! strand-count header followed by whitespace-separated letters:
//!
//! ```text
//! strands 5
//! 4 -3 2 -1
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

mod family;
mod markov;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use family::{build_family, EnhancedPhiRule, Family, FamilyOptions, FamilySpec, Variant};
pub use markov::{destabilize_greedy, DestabOutcome, MarkovMove, UnknotCertificate};

/// A generator or inverse generator, stored as a signed index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub struct Letter(i32);

impl Letter {
    pub fn new(index: usize, positive: bool) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        let i = index as i32;
        Letter(if positive { i } else { -i })
    }

    pub fn pos(index: usize) -> Self {
        Self::new(index, true)
    }

    pub fn neg(index: usize) -> Self {
        Self::new(index, false)
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn sign(self) -> i64 {
        self.0.signum() as i64
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    pub fn raw(self) -> i32 {
        self.0
    }

    fn shifted(self, by: i32) -> Self {
        Letter(self.0.signum() * (self.0.abs() + by))
    }
}

impl TryFrom<i32> for Letter {
    type Error = Error;
    fn try_from(v: i32) -> Result<Self> {
        if v == 0 {
            Err(Error::InvalidWord("letter 0 is not a generator".into()))
        } else {
            Ok(Letter(v))
        }
    }
}

impl From<Letter> for i32 {
    fn from(l: Letter) -> i32 {
        l.0
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "s{}", self.index())
        } else {
            write!(f, "s{}^-1", self.index())
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidWord("a braid needs at least one strand".into()));
        }
        if let Some(l) = letters.iter().find(|l| l.index() >= strands) {
            return Err(Error::IndexOutOfRange {
                index: l.index(),
                strands,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    /// Build from signed integers, e.g. `&[4, -3, 2, -1]`.
    pub fn from_ints(strands: usize, ints: &[i32]) -> Result<Self> {
        let letters = ints
            .iter()
            .map(|&v| Letter::try_from(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands: strands.max(1),
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_ints(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.raw()).collect()
    }

    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> BraidWord {
        let mut letters = Vec::with_capacity(self.letters.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Mirror image: every crossing sign flipped.
    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|l| l.inverse()).collect(),
        }
    }

    /// Cancel adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    /// Number of letters with the given generator index.
    pub fn occurrences(&self, index: usize) -> usize {
        self.letters.iter().filter(|l| l.index() == index).count()
    }

    pub fn underlying_permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for l in &self.letters {
            p.images.swap(l.index() - 1, l.index());
        }
        // `images` was built as the position array; invert to strand -> position.
        p.inverse()
    }

    pub fn closure_components(&self) -> usize {
        self.underlying_permutation().cycle_count()
    }

    pub fn is_knot(&self) -> bool {
        self.closure_components() == 1
    }

    /// Re-embed on more strands, shifting every index by `offset`.
    pub fn embed(&self, strands: usize, offset: usize) -> Result<BraidWord> {
        let letters = self.letters.iter().map(|l| l.shifted(offset as i32)).collect();
        BraidWord::new(strands, letters)
    }

    pub(crate) fn from_parts_unchecked(strands: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| l.index() < strands));
        BraidWord { strands, letters }
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}{:?}", self.strands, self.letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "strands {}", self.strands)?;
        let body: Vec<String> = self.letters.iter().map(|l| l.raw().to_string()).collect();
        write!(f, "{}", body.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = s
            .lines()
            .map(|line| line.split('#').next().unwrap_or(""))
            .flat_map(|line| line.split_whitespace());
        match tokens.next() {
            Some("strands") => {}
            other => {
                return Err(Error::Parse(format!(
                    "expected 'strands' header, found {:?}",
                    other.unwrap_or("end of input")
                )))
            }
        }
        let strands: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("missing strand count".into()))?;
        let ints = tokens
            .map(|t| {
                t.parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad letter '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::from_ints(strands, &ints)
    }
}

/// A permutation of `{0, .., n-1}` (displayed 1-based).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidWord(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    /// Cycle lengths, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_type().len()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<usize> = self.images.iter().map(|i| i + 1).collect();
        write!(f, "Perm{one_based:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, ints: &[i32]) -> BraidWord {
        BraidWord::from_ints(n, ints).unwrap()
    }

    #[test]
    fn compose_and_inverse() {
        let phi = w(5, &[2, -3]);
        assert_eq!(phi.inverse(), w(5, &[3, -2]));
        assert_eq!(BraidWord::identity(5).compose(&phi).unwrap(), phi);
        assert_eq!(w(2, &[1]).compose(&w(2, &[-1])).unwrap().len(), 2);
        assert!(matches!(
            w(3, &[1]).compose(&w(4, &[1])),
            Err(Error::StrandMismatch { left: 3, right: 4 })
        ));
        assert!(BraidWord::identity(3).inverse().is_empty());
    }

    #[test]
    fn free_reduction_examples() {
        assert!(w(5, &[2, -3, 3, -2]).free_reduce().is_empty());
        let phi = w(5, &[2, -3]);
        assert!(phi
            .pow(3)
            .compose(&phi.inverse().pow(3))
            .unwrap()
            .free_reduce()
            .is_empty());
        assert_eq!(w(3, &[1, 2, -2, 2]).free_reduce(), w(3, &[1, 2]));
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(matches!(
            BraidWord::from_ints(3, &[3]),
            Err(Error::IndexOutOfRange { index: 3, strands: 3 })
        ));
        assert!(BraidWord::from_ints(3, &[0]).is_err());
        assert!(BraidWord::new(0, vec![]).is_err());
    }

    #[test]
    fn permutations_and_components() {
        assert_eq!(
            BraidWord::identity(4).underlying_permutation(),
            Permutation::identity(4)
        );
        assert_eq!(w(2, &[1]).underlying_permutation().images(), &[1, 0]);
        assert_eq!(BraidWord::identity(3).closure_components(), 3);
        assert_eq!(w(2, &[1]).closure_components(), 1);
        assert_eq!(w(2, &[1, 1]).closure_components(), 2);
        // sigma_1 sigma_2 sends strand 1 to position 3.
        assert_eq!(w(3, &[1, 2]).underlying_permutation().image(0), 2);
    }

    #[test]
    fn text_format_round_trip() {
        let x = w(5, &[4, -3, 2, -1]);
        let s = x.to_string();
        assert_eq!(s, "strands 5\n4 -3 2 -1");
        assert_eq!(s.parse::<BraidWord>().unwrap(), x);
        let y: BraidWord = "# trefoil\nstrands 2 # header\n1 1\n1".parse().unwrap();
        assert_eq!(y, w(2, &[1, 1, 1]));
        assert!("1 2 3".parse::<BraidWord>().is_err());
        assert!("strands 2\n1 x".parse::<BraidWord>().is_err());
    }

    #[test]
    fn exponent_sum_counts_signs() {
        assert_eq!(BraidWord::identity(3).exponent_sum(), 0);
        assert_eq!(w(5, &[4, -3, 2, -1]).exponent_sum(), 0);
        assert_eq!(w(5, &[4, 3, 2, 1]).exponent_sum(), 4);
    }
}
