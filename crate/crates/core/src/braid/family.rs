use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{BraidWord, Letter};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Alternating-sign `Pi`, `Phi = s2 s3^-1`, inverse half-twist on strand 1.
    Original,
    /// Positive `Pi`, a null-homologous `Phi`, positive half-twist on strand 1.
    Enhanced,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Original, Variant::Enhanced];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Original => "original",
            Variant::Enhanced => "enhanced",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "original" | "o" => Ok(Variant::Original),
            "enhanced" | "e" => Ok(Variant::Enhanced),
            other => Err(Error::Parse(format!("unknown variant '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilySpec {
    pub genus: u32,
    pub power: u32,
    pub variant: Variant,
}

impl FamilySpec {
    pub fn new(genus: u32, power: u32, variant: Variant) -> Self {
        FamilySpec {
            genus,
            power,
            variant,
        }
    }

    pub fn strands(&self) -> usize {
        2 * self.genus as usize + 1
    }
}

/// Where the enhanced `Phi` comes from when the genus is not 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnhancedPhiRule {
    /// Only the genus-2 word is available; other genera are an error.
    #[default]
    Genus2Only,
    /// The genus-2 word acting on strands 2..5, for every genus >= 2.
    /// Genus 1 gets the empty word (there is no room for it on 3 strands).
    EmbedGenus2,
    /// Caller-supplied words, keyed by genus; genus 2 falls back to the built-in word.
    Words(BTreeMap<u32, BraidWord>),
}

impl FromStr for EnhancedPhiRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "genus2-only" => Ok(EnhancedPhiRule::Genus2Only),
            "embed-genus2" => Ok(EnhancedPhiRule::EmbedGenus2),
            other => Err(Error::Parse(format!("unknown enhanced-phi rule '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyOptions {
    pub enhanced_phi: EnhancedPhiRule,
}

impl FamilyOptions {
    pub fn with_rule(rule: EnhancedPhiRule) -> Self {
        FamilyOptions { enhanced_phi: rule }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub spec: FamilySpec,
    pub pi: BraidWord,
    pub phi: BraidWord,
    pub beta: BraidWord,
}

/// The genus-2 enhanced `Phi`:
/// `(s3 s4^2 (s2 s3)^6 s4^-2 s3^-1)(s3^-1 s4^-2 (s2 s3)^6 s4^2 s3)`.
/// Each factor is a conjugate of the squared full twist on three strands.
fn enhanced_phi_genus2() -> BraidWord {
    let twist: Vec<i32> = [2, 3].repeat(6);
    let mut ints = vec![3, 4, 4];
    ints.extend(&twist);
    ints.extend([-4, -4, -3, -3, -4, -4]);
    ints.extend(&twist);
    ints.extend([4, 4, 3]);
    BraidWord::from_ints(5, &ints).expect("valid genus-2 word")
}

fn pi_word(genus: u32, variant: Variant) -> Vec<Letter> {
    (2..=2 * genus as usize)
        .rev()
        .map(|i| match variant {
            Variant::Original => Letter::new(i, i % 2 == 0),
            Variant::Enhanced => Letter::pos(i),
        })
        .collect()
}

fn phi_word(spec: &FamilySpec, opts: &FamilyOptions) -> Result<BraidWord> {
    let n = spec.strands();
    match spec.variant {
        // s2 s3^-1 needs four strands; for genus 1 the twisting factor is trivial.
        Variant::Original if spec.genus == 1 => Ok(BraidWord::identity(n)),
        Variant::Original => BraidWord::from_ints(n, &[2, -3]),
        Variant::Enhanced => {
            if spec.genus == 2 {
                if let EnhancedPhiRule::Words(m) = &opts.enhanced_phi {
                    if let Some(w) = m.get(&2) {
                        return check_phi(w.clone(), n);
                    }
                }
                return Ok(enhanced_phi_genus2());
            }
            match &opts.enhanced_phi {
                EnhancedPhiRule::Genus2Only => Err(Error::EnhancedGenusUnsupported(spec.genus)),
                EnhancedPhiRule::EmbedGenus2 if spec.genus == 1 => Ok(BraidWord::identity(n)),
                EnhancedPhiRule::EmbedGenus2 => enhanced_phi_genus2().embed(n, 0),
                EnhancedPhiRule::Words(m) => m
                    .get(&spec.genus)
                    .cloned()
                    .ok_or(Error::EnhancedGenusUnsupported(spec.genus))
                    .and_then(|w| check_phi(w, n)),
            }
        }
    }
}

fn check_phi(w: BraidWord, strands: usize) -> Result<BraidWord> {
    if w.strands() != strands {
        return Err(Error::StrandMismatch {
            left: w.strands(),
            right: strands,
        });
    }
    if w.occurrences(1) > 0 {
        return Err(Error::InvalidFamily(
            "Phi must act on the last 2g strands only".into(),
        ));
    }
    Ok(w)
}

/// Build `Pi`, `Phi` and `beta_n = Pi Phi^n s1^(-+1) Phi^-n` on `2g + 1` strands.
pub fn build_family(spec: FamilySpec, opts: &FamilyOptions) -> Result<Family> {
    if spec.genus == 0 {
        return Err(Error::InvalidFamily("genus must be at least 1".into()));
    }
    let n = spec.strands();
    let pi = BraidWord::new(n, pi_word(spec.genus, spec.variant))?;
    let phi = phi_word(&spec, opts)?;
    let middle = match spec.variant {
        Variant::Original => Letter::neg(1),
        Variant::Enhanced => Letter::pos(1),
    };
    let k = spec.power as usize;
    let mut letters = pi.letters().to_vec();
    letters.extend(phi.pow(k).letters());
    letters.push(middle);
    letters.extend(phi.inverse().pow(k).letters());
    let beta = BraidWord::new(n, letters)?;
    Ok(Family { spec, pi, phi, beta })
}
