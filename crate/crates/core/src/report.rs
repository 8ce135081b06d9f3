//! Named verifications, per-family records, parameter sweeps and report output.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{
    build_family, destabilize_greedy, BraidWord, DestabOutcome, EnhancedPhiRule, Family, FamilyOptions,
    FamilySpec, Variant,
};
use crate::cover::{
    alexander_module_invariants, branched_cover_euler, lift_homological, seifert_from_monodromy,
    ChainSurface, SymplecticMatrix,
};
use crate::error::{Error, Result};
use crate::garside::{periodic_identity_check, verify_band_witness, words_equal, BandGenerator, BandWitness};
use crate::invariants::{alexander_from_burau, AlexanderPolynomial};
use crate::pa::{chain_pair, classify, complement_euler, TwistWord2, Verdict};
use crate::poly::LaurentPoly;
use crate::qpoly::QPoly;
use crate::ribbon::search_chain_embedding;
use crate::twobridge::crosscheck_w0;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Version of the JSON report layout in `docs/report.schema.json`.
pub const SCHEMA_VERSION: u32 = 1;

/// Largest genus for which the one-face rotation search is run.
const RIBBON_SEARCH_MAX_GENUS: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Unknot,
    AlexanderTrivial,
    FibreGenus,
    Pa,
    Filling,
    PeriodicIdentity,
    BandWitness,
    HomologyInvariance,
    AlexanderModule,
    TwobridgeCrosscheck,
    GrowthProxy,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Unknot,
        Check::AlexanderTrivial,
        Check::FibreGenus,
        Check::Pa,
        Check::Filling,
        Check::PeriodicIdentity,
        Check::BandWitness,
        Check::HomologyInvariance,
        Check::AlexanderModule,
        Check::TwobridgeCrosscheck,
        Check::GrowthProxy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Unknot => "unknot",
            Check::AlexanderTrivial => "alexander-trivial",
            Check::FibreGenus => "fibre-genus",
            Check::Pa => "pa",
            Check::Filling => "filling",
            Check::PeriodicIdentity => "periodic-identity",
            Check::BandWitness => "band-witness",
            Check::HomologyInvariance => "homology-invariance",
            Check::AlexanderModule => "alexander-module",
            Check::TwobridgeCrosscheck => "twobridge-crosscheck",
            Check::GrowthProxy => "growth-proxy",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::UnknownCheck(s.trim().to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    /// The certifier gave up.
    Inconclusive,
    Refuted,
    Error,
    /// The check has no meaning for this variant or parameter.
    NotApplicable,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Inconclusive | Status::NotApplicable => 2,
            Status::Refuted | Status::Error => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Inconclusive => "inconclusive",
            Status::Refuted => "refuted",
            Status::Error => "error",
            Status::NotApplicable => "not-applicable",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Verified
        } else {
            Status::Refuted
        }
    }
}

/// Worst exit code over a set of statuses: any failure gives 1, else any inconclusive gives 2.
/// Not-applicable entries are skipped.
pub fn combined_exit_code<I: IntoIterator<Item = Status>>(statuses: I) -> i32 {
    let mut code = 0;
    for s in statuses.into_iter().filter(|s| *s != Status::NotApplicable) {
        match s.exit_code() {
            1 => return 1,
            2 => code = 2,
            _ => {}
        }
    }
    code
}

/// The conventions every invariant value depends on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub burau: String,
    pub brick: String,
    pub transvection: String,
    pub seifert_from_monodromy: String,
    pub continued_fraction: String,
    pub alexander_normalization: String,
    pub enhanced_phi: String,
}

impl Conventions {
    pub fn new(rule: &EnhancedPhiRule) -> Self {
        Conventions {
            burau: "reduced, right action, s1 -> (-t)".into(),
            brick: "positive brick diagonal -1, sigma_1^3 signature -2".into(),
            transvection: "s_i -> x + <x,a_i> a_i, <a_i,a_(i+1)> = 1".into(),
            seifert_from_monodromy: "S = -J (I - M)^-1".into(),
            continued_fraction: "all-plus, leftmost outermost".into(),
            alexander_normalization: "lowest exponent 0, positive constant term".into(),
            enhanced_phi: match rule {
                EnhancedPhiRule::Genus2Only => "genus2-only".into(),
                EnhancedPhiRule::EmbedGenus2 => "embed-genus2".into(),
                EnhancedPhiRule::Words(m) => {
                    let keys: Vec<String> = m.keys().map(u32::to_string).collect();
                    format!("words[{}]", keys.join(","))
                }
            },
        }
    }

    /// Short stable identifier of the convention set.
    pub fn fingerprint(&self) -> String {
        format!(
            "burau:right/-t;brick:pos=-1;transvection:+;seifert:-J(I-M)^-1;cf:plus-left;alex:low0+;phi:{}",
            self.enhanced_phi
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub status: Status,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaSummary {
    pub word: String,
    pub verdict: String,
    pub dilatation: Option<f64>,
    pub mu: f64,
    pub trace: f64,
}

/// Everything computed for one `(genus, power, variant)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RecordData {
    pub unknot_certificate_length: Option<usize>,
    /// Alexander polynomial of the braid closure, from the Burau matrix.
    pub alexander_closure: Option<AlexanderPolynomial>,
    /// Characteristic polynomial of the lifted monodromy.
    pub alexander_fibre: Option<AlexanderPolynomial>,
    /// The same, through the Seifert matrix recovered from the monodromy.
    pub alexander_fibre_seifert: Option<AlexanderPolynomial>,
    pub determinant: Option<String>,
    pub fibre_genus: Option<i64>,
    pub pa: Option<PaSummary>,
    pub ribbon_rotation: Option<Vec<bool>>,
    pub module_factors: Option<Vec<LaurentPoly>>,
    pub twobridge_fraction: Option<String>,
    pub twobridge_agree: Option<bool>,
    pub monodromy_max_entry: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub version: String,
    pub fingerprint: String,
    pub genus: u32,
    pub power: u32,
    pub variant: Variant,
    pub braid: String,
    pub word_length: usize,
    pub checks: Vec<CheckOutcome>,
    pub data: RecordData,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<f64>,
}

impl Record {
    pub fn exit_code(&self) -> i32 {
        combined_exit_code(self.checks.iter().map(|c| c.status))
    }

    pub fn status(&self, check: Check) -> Option<Status> {
        self.checks.iter().find(|c| c.check == check).map(|c| c.status)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub version: String,
    pub conventions: Conventions,
    pub fingerprint: String,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(rule: &EnhancedPhiRule, mut records: Vec<Record>) -> Self {
        records.sort_by_key(|r| (r.genus, r.power, r.variant));
        let conventions = Conventions::new(rule);
        Report {
            schema_version: SCHEMA_VERSION,
            version: VERSION.to_string(),
            fingerprint: conventions.fingerprint(),
            conventions,
            records,
        }
    }

    pub fn exit_code(&self) -> i32 {
        combined_exit_code(
            self.records
                .iter()
                .flat_map(|r| r.checks.iter().map(|c| c.status)),
        )
    }
}

/// Everything one family record needs, computed lazily and shared across checks.
struct Context<'a> {
    spec: FamilySpec,
    opts: &'a FamilyOptions,
    family: Family,
    surface: ChainSurface,
    monodromy: Option<SymplecticMatrix>,
    data: RecordData,
}

impl<'a> Context<'a> {
    fn new(spec: FamilySpec, opts: &'a FamilyOptions) -> Result<Self> {
        let family = build_family(spec, opts)?;
        Ok(Context {
            spec,
            opts,
            family,
            surface: ChainSurface::new(spec.genus),
            monodromy: None,
            data: RecordData::default(),
        })
    }

    fn monodromy(&mut self) -> Result<SymplecticMatrix> {
        if self.monodromy.is_none() {
            self.monodromy = Some(lift_homological(&self.family.beta, &self.surface)?);
        }
        Ok(self.monodromy.clone().expect("just set"))
    }

    fn monodromy_at(&self, power: u32) -> Result<SymplecticMatrix> {
        let f = build_family(
            FamilySpec::new(self.spec.genus, power, self.spec.variant),
            self.opts,
        )?;
        lift_homological(&f.beta, &self.surface)
    }

    fn fibre_invariants(&mut self) -> Result<()> {
        if self.data.alexander_fibre.is_some() {
            return Ok(());
        }
        let m = self.monodromy()?;
        let a = m.alexander();
        self.data.determinant = Some(a.determinant().to_string());
        self.data.alexander_fibre = Some(a);
        self.data.alexander_fibre_seifert = Some(seifert_from_monodromy(&m, &self.surface)?.alexander());
        Ok(())
    }

    fn run(&mut self, check: Check) -> Result<(Status, String)> {
        let g = self.spec.genus;
        let original = self.spec.variant == Variant::Original;
        match check {
            Check::Unknot => Ok(unknot_status(&self.family.beta, &mut self.data)),
            Check::AlexanderTrivial => {
                let a = alexander_from_burau(&self.family.beta)?;
                let ok = a.is_trivial();
                let msg = format!("closure polynomial {a}");
                self.data.alexander_closure = Some(a);
                Ok((Status::from_bool(ok), msg))
            }
            Check::FibreGenus => {
                let d = branched_cover_euler(1, 2 * g as i64 + 1)?;
                let three = branched_cover_euler(1, 3)?;
                self.data.fibre_genus = Some(d.genus);
                let ok = d.genus == g as i64
                    && d.boundary_components == 1
                    && three.genus == 1
                    && three.boundary_components == 1;
                Ok((
                    Status::from_bool(ok),
                    format!(
                        "chi {} boundary {} genus {}",
                        d.cover_euler, d.boundary_components, d.genus
                    ),
                ))
            }
            Check::Pa => {
                if !original {
                    return Ok((
                        Status::NotApplicable,
                        "enhanced monodromy is not a two-multitwist word".into(),
                    ));
                }
                let word: TwistWord2 = "A B^-1".parse()?;
                let c = classify(&word, &chain_pair(g, true)?)?;
                let (verdict, dil, ok) = match c.verdict {
                    Verdict::PseudoAnosov { dilatation } => ("pseudo-anosov", Some(dilatation), true),
                    Verdict::Parabolic => ("parabolic", None, false),
                    Verdict::Elliptic => ("elliptic", None, false),
                };
                self.data.pa = Some(PaSummary {
                    word: word.to_string(),
                    verdict: verdict.into(),
                    dilatation: dil,
                    mu: c.mu,
                    trace: (c.trace_lo + c.trace_hi) / 2.0,
                });
                Ok((
                    Status::from_bool(ok),
                    format!("{verdict}, trace {:.12}", (c.trace_lo + c.trace_hi) / 2.0),
                ))
            }
            Check::Filling => {
                let pair = chain_pair(g, true)?;
                let punct = complement_euler(g, true)?;
                let closed = complement_euler(g, false)?;
                let mut ok = pair.is_connected() && punct == 0 && closed == 1;
                let mut msg = format!(
                    "connected {}, complement chi {punct} / {closed}",
                    pair.is_connected()
                );
                if g <= RIBBON_SEARCH_MAX_GENUS {
                    let rot = search_chain_embedding(g, 1)?;
                    ok &= rot.is_some();
                    msg.push_str(&format!(
                        ", one-face rotation {}",
                        if rot.is_some() { "found" } else { "missing" }
                    ));
                    self.data.ribbon_rotation = rot;
                }
                Ok((Status::from_bool(ok), msg))
            }
            Check::PeriodicIdentity => {
                let ok = periodic_identity_check(g)?;
                Ok((
                    Status::from_bool(ok),
                    format!("(Pi s1)^{} vs full twist", 2 * g + 1),
                ))
            }
            Check::BandWitness => {
                if original {
                    return Ok((
                        Status::NotApplicable,
                        "band witnesses apply to the enhanced family".into(),
                    ));
                }
                let n = self.spec.strands();
                // (Pi s1) s1 as a_(2g,2g+1) .. a_(1,2) a_(1,2).
                let mut gens: Vec<BandGenerator> = (1..n)
                    .rev()
                    .map(|i| BandGenerator::new(i, i + 1))
                    .collect::<Result<_>>()?;
                gens.push(BandGenerator::new(1, 2)?);
                let target = self.family.pi.compose(&BraidWord::from_ints(n, &[1, 1])?)?;
                let witness_ok = verify_band_witness(&BandWitness(gens), &target)?;
                // beta_n = (Pi s1)(s1^-1 Phi^n s1 Phi^-n)
                let k = self.spec.power as usize;
                let phi_n = self.family.phi.pow(k);
                let s1 = BraidWord::from_ints(n, &[1])?;
                let rhs = self
                    .family
                    .pi
                    .compose(&s1)?
                    .compose(&s1.inverse())?
                    .compose(&phi_n)?
                    .compose(&s1)?
                    .compose(&phi_n.inverse())?;
                let factor_ok = words_equal(&self.family.beta, &rhs)?;
                Ok((
                    Status::from_bool(witness_ok && factor_ok),
                    format!("witness {witness_ok}, factorization {factor_ok}"),
                ))
            }
            Check::HomologyInvariance => {
                self.fibre_invariants()?;
                if original {
                    return Ok((
                        Status::NotApplicable,
                        "invariance concerns the enhanced family".into(),
                    ));
                }
                let phi = lift_homological(&self.family.phi, &self.surface)?;
                let m = self.monodromy()?;
                let base = self.monodromy_at(0)?;
                let ok = phi.matrix().is_identity() && m == base;
                Ok((
                    Status::from_bool(ok),
                    format!(
                        "Phi lifts to identity {}, matches n = 0 {}",
                        phi.matrix().is_identity(),
                        m == base
                    ),
                ))
            }
            Check::AlexanderModule => {
                self.fibre_invariants()?;
                let m = self.monodromy()?;
                let factors = alexander_module_invariants(&m);
                let product = factors.iter().fold(QPoly::one(), |acc, f| acc.mul(f));
                let charpoly = QPoly::from_laurent(&m.matrix().charpoly());
                let mut ok = product == charpoly.monic();
                if !original {
                    ok &= factors == alexander_module_invariants(&self.monodromy_at(0)?);
                }
                let msg = format!("{} invariant factor(s)", factors.len());
                self.data.module_factors = Some(factors.iter().map(QPoly::to_primitive_laurent).collect());
                Ok((Status::from_bool(ok), msg))
            }
            Check::TwobridgeCrosscheck => {
                if !original {
                    return Ok((
                        Status::NotApplicable,
                        "the two-bridge identification concerns the original w_0".into(),
                    ));
                }
                let c = crosscheck_w0(g)?;
                self.data.twobridge_fraction = Some(c.fraction.to_string());
                self.data.twobridge_agree = Some(c.agree);
                let det_ok = c.twobridge.determinant() == c.fibred.determinant();
                Ok((
                    Status::from_bool(c.agree && det_ok),
                    format!("[2]x{} = {}, polynomial {}", 2 * g, c.fraction, c.twobridge),
                ))
            }
            Check::GrowthProxy => {
                let m = self.monodromy()?;
                self.data.monodromy_max_entry = Some(m.max_abs().to_string());
                if !original || self.spec.power < 2 || g < 2 {
                    return Ok((
                        Status::NotApplicable,
                        "growth is compared for the original family from g = 2, n = 2".into(),
                    ));
                }
                let prev = self.monodromy_at(self.spec.power - 1)?.max_abs();
                let ok = m.max_abs() > prev;
                Ok((
                    Status::from_bool(ok),
                    format!("max entry {} vs {} at n - 1", m.max_abs(), prev),
                ))
            }
        }
    }
}

fn unknot_status(w: &BraidWord, data: &mut RecordData) -> (Status, String) {
    match destabilize_greedy(w) {
        Ok(DestabOutcome::Unknot(cert)) => match cert.replay() {
            Ok(_) => {
                data.unknot_certificate_length = Some(cert.len());
                (
                    Status::Verified,
                    format!("certificate of {} moves replayed", cert.len()),
                )
            }
            Err(e) => (Status::Error, format!("certificate failed replay: {e}")),
        },
        Ok(DestabOutcome::Inconclusive { stuck, .. }) => (
            Status::Inconclusive,
            format!("stuck at {} letters on {} strands", stuck.len(), stuck.strands()),
        ),
        Err(e) => (Status::Error, e.to_string()),
    }
}

/// Run the selected checks on one family member. Failures become records, never panics.
pub fn run_family(spec: FamilySpec, opts: &FamilyOptions, checks: &[Check], timing: bool) -> Record {
    let start = Instant::now();
    let mut record = Record {
        version: VERSION.to_string(),
        fingerprint: Conventions::new(&opts.enhanced_phi).fingerprint(),
        genus: spec.genus,
        power: spec.power,
        variant: spec.variant,
        braid: String::new(),
        word_length: 0,
        checks: Vec::new(),
        data: RecordData::default(),
        timing_ms: None,
    };
    match Context::new(spec, opts) {
        Ok(mut ctx) => {
            record.braid = word_text(&ctx.family.beta);
            record.word_length = ctx.family.beta.len();
            for &c in checks {
                let (status, message) = ctx.run(c).unwrap_or_else(|e| (Status::Error, e.to_string()));
                record.checks.push(CheckOutcome {
                    check: c,
                    status,
                    message,
                });
            }
            record.data = ctx.data;
        }
        Err(e) => {
            for &c in checks {
                record.checks.push(CheckOutcome {
                    check: c,
                    status: Status::Error,
                    message: e.to_string(),
                });
            }
        }
    }
    if timing {
        record.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    record
}

/// Record for a check run on a bare braid word rather than a family member.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordRecord {
    pub version: String,
    pub fingerprint: String,
    pub strands: usize,
    pub braid: String,
    pub word_length: usize,
    pub checks: Vec<CheckOutcome>,
    pub data: RecordData,
}

impl WordRecord {
    pub fn exit_code(&self) -> i32 {
        combined_exit_code(self.checks.iter().map(|c| c.status))
    }
}

/// Only `unknot` and `alexander-trivial` make sense for an arbitrary word.
pub fn run_word(check: Check, w: &BraidWord) -> Result<WordRecord> {
    let mut data = RecordData::default();
    let (status, message) = match check {
        Check::Unknot => unknot_status(w, &mut data),
        Check::AlexanderTrivial => match alexander_from_burau(w) {
            Ok(a) => {
                let out = (
                    Status::from_bool(a.is_trivial()),
                    format!("closure polynomial {a}"),
                );
                data.alexander_closure = Some(a);
                out
            }
            Err(e) => (Status::Error, e.to_string()),
        },
        other => {
            return Err(Error::Config(format!(
                "check '{other}' needs a family, not a word"
            )))
        }
    };
    Ok(WordRecord {
        version: VERSION.to_string(),
        fingerprint: Conventions::new(&EnhancedPhiRule::default()).fingerprint(),
        strands: w.strands(),
        braid: word_text(w),
        word_length: w.len(),
        checks: vec![CheckOutcome {
            check,
            status,
            message,
        }],
        data,
    })
}

fn word_text(w: &BraidWord) -> String {
    let ints: Vec<String> = w.to_ints().iter().map(i32::to_string).collect();
    ints.join(" ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            other => Err(Error::Parse(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub genus: RangeInclusive<u32>,
    pub power: RangeInclusive<u32>,
    pub variants: Vec<Variant>,
    pub checks: Vec<Check>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub parallelism: usize,
    pub enhanced_phi: EnhancedPhiRule,
    pub timing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            genus: 2..=2,
            power: 0..=0,
            variants: Variant::ALL.to_vec(),
            checks: Check::ALL.to_vec(),
            output: None,
            format: Format::Json,
            parallelism: 1,
            enhanced_phi: EnhancedPhiRule::Genus2Only,
            timing: false,
        }
    }
}

fn parse_range(key: &str, v: &str) -> Result<RangeInclusive<u32>> {
    let bad = || Error::Config(format!("{key}: expected 'lo..hi' or a single value, got '{v}'"));
    let (lo, hi) = match v.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let x = v.trim().parse().map_err(|_| bad())?;
            (x, x)
        }
    };
    if lo > hi {
        return Err(Error::Config(format!("{key}: empty range {lo}..{hi}")));
    }
    Ok(lo..=hi)
}

fn parse_list<T: FromStr<Err = Error>>(v: &str) -> Result<Vec<T>> {
    v.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

impl FromStr for SweepConfig {
    type Err = Error;
    /// Line-oriented `key = value`; `#` starts a comment.
    fn from_str(s: &str) -> Result<Self> {
        let mut cfg = SweepConfig::default();
        let mut seen = BTreeMap::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if seen.insert(k.to_string(), ()).is_some() {
                return Err(Error::Config(format!("line {}: duplicate key '{k}'", lineno + 1)));
            }
            match k {
                "genus" => cfg.genus = parse_range(k, v)?,
                "power" => cfg.power = parse_range(k, v)?,
                "variants" => {
                    cfg.variants = if v == "all" {
                        Variant::ALL.to_vec()
                    } else {
                        parse_list(v)?
                    };
                }
                "checks" => {
                    cfg.checks = if v == "all" {
                        Check::ALL.to_vec()
                    } else {
                        parse_list(v)?
                    };
                }
                "output" => cfg.output = Some(PathBuf::from(v)),
                "format" => cfg.format = v.parse()?,
                "parallelism" => {
                    cfg.parallelism = v
                        .parse()
                        .map_err(|_| Error::Config(format!("parallelism: bad value '{v}'")))?;
                }
                "enhanced-phi" => cfg.enhanced_phi = v.parse()?,
                "timing" => {
                    cfg.timing = v
                        .parse()
                        .map_err(|_| Error::Config(format!("timing: expected true or false, got '{v}'")))?;
                }
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key '{other}'",
                        lineno + 1
                    )))
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

impl SweepConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        fs::read_to_string(path)?.parse()
    }

    pub fn validate(&self) -> Result<()> {
        if self.genus.is_empty() || *self.genus.start() == 0 {
            return Err(Error::Config(
                "genus range must be nonempty and start at 1 or more".into(),
            ));
        }
        if self.power.is_empty() {
            return Err(Error::Config("power range must be nonempty".into()));
        }
        if self.variants.is_empty() {
            return Err(Error::Config("no variants selected".into()));
        }
        if self.checks.is_empty() {
            return Err(Error::Config("no checks selected".into()));
        }
        if self.parallelism == 0 {
            return Err(Error::Config("parallelism must be at least 1".into()));
        }
        Ok(())
    }

    pub fn specs(&self) -> Vec<FamilySpec> {
        let mut out = Vec::new();
        for g in self.genus.clone() {
            for n in self.power.clone() {
                for &v in &self.variants {
                    out.push(FamilySpec::new(g, n, v));
                }
            }
        }
        out
    }
}

pub fn sweep(cfg: &SweepConfig) -> Result<Report> {
    cfg.validate()?;
    let opts = FamilyOptions::with_rule(cfg.enhanced_phi.clone());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let specs = cfg.specs();
    let records: Vec<Record> = pool.install(|| {
        specs
            .par_iter()
            .map(|&s| run_family(s, &opts, &cfg.checks, cfg.timing))
            .collect()
    });
    Ok(Report::new(&cfg.enhanced_phi, records))
}

/// Render a report; JSON is lossless, CSV flattens polynomials to compact coefficient strings.
pub fn emit(report: &Report, format: &Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| Error::Parse(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => emit_csv(report),
        Format::Table => Ok(emit_table(report)),
    }
}

pub const CSV_FIXED_COLUMNS: [&str; 16] = [
    "genus",
    "power",
    "variant",
    "word_length",
    "unknot_certificate_length",
    "alexander_closure",
    "alexander_fibre",
    "alexander_fibre_seifert",
    "determinant",
    "fibre_genus",
    "pa_verdict",
    "dilatation",
    "twobridge_fraction",
    "twobridge_agree",
    "monodromy_max_entry",
    "version",
];

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

fn opt_poly(x: &Option<AlexanderPolynomial>) -> String {
    x.as_ref().map(|a| a.poly().to_compact()).unwrap_or_default()
}

fn emit_csv(report: &Report) -> Result<String> {
    let mut checks: Vec<Check> = report
        .records
        .iter()
        .flat_map(|r| r.checks.iter().map(|c| c.check))
        .collect();
    checks.sort();
    checks.dedup();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = CSV_FIXED_COLUMNS.iter().map(|s| s.to_string()).collect();
    header.extend(checks.iter().map(|c| format!("check:{c}")));
    header.push("fingerprint".into());
    w.write_record(&header).map_err(csv_err)?;
    for r in &report.records {
        let d = &r.data;
        let mut row = vec![
            r.genus.to_string(),
            r.power.to_string(),
            r.variant.to_string(),
            r.word_length.to_string(),
            opt(&d.unknot_certificate_length),
            opt_poly(&d.alexander_closure),
            opt_poly(&d.alexander_fibre),
            opt_poly(&d.alexander_fibre_seifert),
            opt(&d.determinant),
            opt(&d.fibre_genus),
            d.pa.as_ref().map(|p| p.verdict.clone()).unwrap_or_default(),
            d.pa.as_ref()
                .and_then(|p| p.dilatation)
                .map(|x| format!("{x:.12}"))
                .unwrap_or_default(),
            opt(&d.twobridge_fraction),
            opt(&d.twobridge_agree),
            opt(&d.monodromy_max_entry),
            report.version.clone(),
        ];
        for c in &checks {
            row.push(r.status(*c).map(|s| s.name().to_string()).unwrap_or_default());
        }
        row.push(report.fingerprint.clone());
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

fn emit_table(report: &Report) -> String {
    let header = [
        "g",
        "n",
        "variant",
        "len",
        "closure",
        "fibre polynomial",
        "det",
        "dilatation",
        "status",
    ];
    let rows: Vec<Vec<String>> = report
        .records
        .iter()
        .map(|r| {
            let d = &r.data;
            let verified = r.checks.iter().filter(|c| c.status == Status::Verified).count();
            vec![
                r.genus.to_string(),
                r.power.to_string(),
                r.variant.to_string(),
                r.word_length.to_string(),
                d.alexander_closure
                    .as_ref()
                    .map(|a| a.to_string())
                    .unwrap_or_else(|| "-".into()),
                d.alexander_fibre
                    .as_ref()
                    .map(|a| a.to_string())
                    .unwrap_or_else(|| "-".into()),
                d.determinant.clone().unwrap_or_else(|| "-".into()),
                d.pa.as_ref()
                    .and_then(|p| p.dilatation)
                    .map(|x| format!("{x:.6}"))
                    .unwrap_or_else(|| "-".into()),
                format!("{verified}/{} verified", r.checks.len()),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (k, cell) in row.iter().enumerate() {
            widths[k] = widths[k].max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let pad = widths[k] - c.chars().count();
                // Numbers right-aligned, text left-aligned.
                if matches!(k, 0 | 1 | 3 | 6 | 7) {
                    format!("{}{c}", " ".repeat(pad))
                } else {
                    format!("{c}{}", " ".repeat(pad))
                }
            })
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = format!("# fibknot {} ({})\n", report.version, report.fingerprint);
    out.push_str(&line(header.iter().map(|s| s.to_string()).collect()));
    out.push('\n');
    out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect()));
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

/// Read polynomials back out of the CSV form.
pub fn parse_csv_polynomials(csv_text: &str, column: &str) -> Result<Vec<Option<LaurentPoly>>> {
    let mut rdr = csv::Reader::from_reader(csv_text.as_bytes());
    let idx = rdr
        .headers()
        .map_err(csv_err)?
        .iter()
        .position(|h| h == column)
        .ok_or_else(|| Error::Parse(format!("no column '{column}'")))?;
    rdr.records()
        .map(|rec| {
            let rec = rec.map_err(csv_err)?;
            let cell = rec.get(idx).unwrap_or("");
            if cell.is_empty() {
                Ok(None)
            } else {
                LaurentPoly::parse_compact(cell).map(Some)
            }
        })
        .collect()
}
