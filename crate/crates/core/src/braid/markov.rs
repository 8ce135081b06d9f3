//! Greedy Markov simplification: a sound but incomplete unknot certifier.

use serde::{Deserialize, Serialize};

use super::BraidWord;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum MarkovMove {
    /// Cancel adjacent inverse pairs.
    FreeReduce,
    /// Remove the unique letter of index 1 at `position`, delete strand 1
    /// and shift the remaining indices down.
    BottomDestabilize { position: usize },
    /// Remove the unique letter of index `n - 1` at `position` and drop the last strand.
    TopDestabilize { position: usize },
    /// Conjugate by the last letter: move it to the front.
    Rotate,
}

impl MarkovMove {
    /// Apply to `w`, checking that the move is legal there.
    pub fn apply(self, w: &BraidWord) -> Result<BraidWord> {
        match self {
            MarkovMove::FreeReduce => Ok(w.free_reduce()),
            MarkovMove::Rotate => {
                let mut letters = w.letters().to_vec();
                if let Some(last) = letters.pop() {
                    letters.insert(0, last);
                }
                Ok(BraidWord::from_parts_unchecked(w.strands(), letters))
            }
            MarkovMove::BottomDestabilize { position } => {
                check_unique(w, 1, position)?;
                let letters = w
                    .letters()
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != position)
                    .map(|(_, l)| l.shifted(-1))
                    .collect();
                Ok(BraidWord::from_parts_unchecked(w.strands() - 1, letters))
            }
            MarkovMove::TopDestabilize { position } => {
                check_unique(w, w.strands().saturating_sub(1), position)?;
                let mut letters = w.letters().to_vec();
                letters.remove(position);
                Ok(BraidWord::from_parts_unchecked(w.strands() - 1, letters))
            }
        }
    }
}

fn check_unique(w: &BraidWord, index: usize, position: usize) -> Result<()> {
    let ok = index >= 1
        && w.letters().get(position).map(|l| l.index()) == Some(index)
        && w.occurrences(index) == 1;
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidWord(format!(
            "no unique generator {index} at position {position} of {w:?}"
        )))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknotCertificate {
    pub start: BraidWord,
    pub moves: Vec<MarkovMove>,
}

impl UnknotCertificate {
    /// Re-apply every move from the start word. Succeeds only if each move is
    /// legal, the closure stays a knot throughout, and the end result is the
    /// trivial braid on one strand.
    pub fn replay(&self) -> Result<BraidWord> {
        let mut cur = self.start.clone();
        for m in &self.moves {
            cur = m.apply(&cur)?;
            let c = cur.closure_components();
            if c != 1 {
                return Err(Error::NotAKnot(c));
            }
        }
        if cur.strands() != 1 || !cur.is_empty() {
            return Err(Error::InvalidWord(format!(
                "replay ended at {cur:?}, not the trivial braid"
            )));
        }
        Ok(cur)
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DestabOutcome {
    Unknot(UnknotCertificate),
    /// No move applies; `stuck` is where the search stopped.
    Inconclusive {
        stuck: BraidWord,
        moves: Vec<MarkovMove>,
    },
}

impl DestabOutcome {
    pub fn is_unknot(&self) -> bool {
        matches!(self, DestabOutcome::Unknot(_))
    }
}

/// Simplify by free reduction, bottom destabilization, top destabilization
/// and cyclic rotation, in that priority order.
pub fn destabilize_greedy(w: &BraidWord) -> Result<DestabOutcome> {
    let c = w.closure_components();
    if c != 1 {
        return Err(Error::NotAKnot(c));
    }
    let mut cur = w.clone();
    let mut moves = Vec::new();
    loop {
        let next = if !cur.is_freely_reduced() {
            MarkovMove::FreeReduce
        } else if cur.strands() == 1 {
            break;
        } else if let Some(p) = unique_position(&cur, 1) {
            MarkovMove::BottomDestabilize { position: p }
        } else if let Some(p) = unique_position(&cur, cur.strands() - 1) {
            MarkovMove::TopDestabilize { position: p }
        } else if cyclically_reducible(&cur) {
            // In a freely reduced word only the wrap-around pair can cancel,
            // so one rotation is all the rotation budget ever needs.
            MarkovMove::Rotate
        } else {
            return Ok(DestabOutcome::Inconclusive { stuck: cur, moves });
        };
        cur = next.apply(&cur)?;
        moves.push(next);
    }
    debug_assert!(cur.is_empty());
    Ok(DestabOutcome::Unknot(UnknotCertificate {
        start: w.clone(),
        moves,
    }))
}

fn unique_position(w: &BraidWord, index: usize) -> Option<usize> {
    let mut found = None;
    for (k, l) in w.letters().iter().enumerate() {
        if l.index() == index {
            if found.is_some() {
                return None;
            }
            found = Some(k);
        }
    }
    found
}

fn cyclically_reducible(w: &BraidWord) -> bool {
    let l = w.letters();
    l.len() >= 2 && l[0] == l[l.len() - 1].inverse()
}
