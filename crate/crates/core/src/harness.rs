//! Seeded verification campaigns.
//!
//! A campaign draws `trials` instances from one family, runs the matching
//! packer (or the oracle alone where no constructive packer exists), checks
//! the output, and cross-checks small instances against the oracle. Trial
//! `i` uses seed `seed + i`, trials run in parallel, and records are merged
//! in trial order, so the same configuration always yields the same report.
//!
//! Instances are uniformly random orientations conditioned on the degree
//! bound by rejection, except for the bipartite family, where the bound is
//! usually out of reach by rejection and the first draw is repaired with
//! [`raise_min_out_degree`](crate::generators::raise_min_out_degree)
//! instead.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycle::CyclePacking;
use crate::generators::{
    gen_bt, gen_complete_split_with_min_outdegree, gen_extended_tournament, gen_random_multipartite,
    gen_random_tournament, gen_with_min_outdegree, raise_min_out_degree, GenError, GenSpec,
};
use crate::multipartite::MultipartiteTournament;
use crate::oracle::{exists_k_disjoint, verify_packing, OracleBudget, OracleError};
use crate::packing::{
    diversify_3partite, find_triangle, pack_3partite, pack_bipartite_4cycles, pack_extended,
    pack_multipartite_3k2, pack_triangle_free, PackingError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("no part sizes given")]
    NoSizes,
    #[error("size range {0} is empty or contains 0")]
    BadRange(SizeRange),
    #[error("k range {0}-{1} is empty or contains 0")]
    BadK(usize, usize),
    #[error("family {family} needs {expected} sizes, got {found}")]
    Arity {
        family: Family,
        expected: &'static str,
        found: usize,
    },
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

/// Instance family of a campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "3partite")]
    ThreePartite,
    #[serde(rename = "multipartite")]
    Multipartite,
    #[serde(rename = "bipartite")]
    Bipartite,
    /// Complete split orientations; sizes are `clique,independent`.
    #[serde(rename = "split")]
    Split,
    #[serde(rename = "4partite")]
    FourPartite,
    /// `BT(n_1, ..., n_2k)`; sizes are the group sizes.
    #[serde(rename = "bt")]
    Bt,
    /// Blow-ups of random tournaments; sizes are the blob sizes.
    #[serde(rename = "extended")]
    Extended,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::ThreePartite,
        Family::Multipartite,
        Family::Bipartite,
        Family::Split,
        Family::FourPartite,
        Family::Bt,
        Family::Extended,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ThreePartite => "3partite",
            Family::Multipartite => "multipartite",
            Family::Bipartite => "bipartite",
            Family::Split => "split",
            Family::FourPartite => "4partite",
            Family::Bt => "bt",
            Family::Extended => "extended",
        }
    }

    fn check_arity(self, found: usize) -> Result<(), ConfigError> {
        let (ok, expected) = match self {
            Family::ThreePartite => (found == 3, "3"),
            Family::Bipartite | Family::Split => (found == 2, "2"),
            Family::FourPartite => (found == 4, "4"),
            Family::Multipartite => (found >= 2, "at least 2"),
            Family::Bt => (found >= 4 && found.is_multiple_of(2), "an even number >= 4 of"),
            Family::Extended => (found >= 3, "at least 3"),
        };
        if ok {
            Ok(())
        } else {
            Err(ConfigError::Arity { family: self, expected, found })
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| ConfigError::Parse { what: "family", input: s.into() })
    }
}

/// Which minimum out-degree a trial is conditioned on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeltaRule {
    #[serde(rename = "2k-1")]
    TwoKMinusOne,
    #[serde(rename = "3k-2")]
    ThreeKMinusTwo,
}

impl DeltaRule {
    pub fn bound(self, k: usize) -> usize {
        match self {
            DeltaRule::TwoKMinusOne => (2 * k).saturating_sub(1),
            DeltaRule::ThreeKMinusTwo => (3 * k).saturating_sub(2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DeltaRule::TwoKMinusOne => "2k-1",
            DeltaRule::ThreeKMinusTwo => "3k-2",
        }
    }
}

impl fmt::Display for DeltaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DeltaRule {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "2k-1" => Ok(DeltaRule::TwoKMinusOne),
            "3k-2" => Ok(DeltaRule::ThreeKMinusTwo),
            _ => Err(ConfigError::Parse { what: "delta rule", input: s.into() }),
        }
    }
}

/// Inclusive range of one part size; `5` or `3-6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeRange {
    pub lo: usize,
    pub hi: usize,
}

impl SizeRange {
    pub fn fixed(size: usize) -> Self {
        Self { lo: size, hi: size }
    }
}

impl fmt::Display for SizeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}-{}", self.lo, self.hi)
        }
    }
}

impl FromStr for SizeRange {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ConfigError::Parse { what: "size range", input: s.into() };
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        match s.split_once('-') {
            Some((lo, hi)) => Ok(Self { lo: num(lo)?, hi: num(hi)? }),
            None => num(s).map(Self::fixed),
        }
    }
}

/// Parse a comma-separated list of sizes or size ranges.
pub fn parse_sizes(s: &str) -> Result<Vec<SizeRange>, ConfigError> {
    s.split(',').map(str::parse).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub family: Family,
    pub sizes: Vec<SizeRange>,
    pub k_min: usize,
    pub k_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub delta_rule: DeltaRule,
    /// Oracle cross-checks run on instances with at most this many vertices.
    pub oracle_cross_check_max_n: usize,
    /// Rejection cap per trial.
    pub max_attempts: u32,
    /// Record wall-clock time per trial. Off by default so that reports
    /// are reproducible byte for byte.
    pub record_elapsed: bool,
}

impl CampaignConfig {
    pub fn new(family: Family, sizes: Vec<SizeRange>, k: usize, trials: usize, seed: u64) -> Self {
        Self {
            family,
            sizes,
            k_min: k,
            k_max: k,
            trials,
            seed,
            delta_rule: DeltaRule::TwoKMinusOne,
            oracle_cross_check_max_n: 14,
            max_attempts: GenSpec::DEFAULT_MAX_ATTEMPTS,
            record_elapsed: false,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        if self.sizes.is_empty() {
            return Err(ConfigError::NoSizes);
        }
        if let Some(r) = self.sizes.iter().find(|r| r.lo == 0 || r.lo > r.hi) {
            return Err(ConfigError::BadRange(*r));
        }
        if self.k_min == 0 || self.k_min > self.k_max {
            return Err(ConfigError::BadK(self.k_min, self.k_max));
        }
        self.family.check_arity(self.sizes.len())
    }
}

/// Whether a trial's success rests on a proved construction or only on
/// exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backing {
    TheoremBacked,
    SearchVerified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Packed,
    Diverse,
    CounterexampleCandidate,
    HypothesisUnmet,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleVerdict {
    PackingExists,
    NoPacking,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    pub sizes: Vec<usize>,
    pub k: usize,
    pub delta_plus: Option<usize>,
    pub algorithm: String,
    pub backing: Backing,
    pub outcome: Outcome,
    pub lengths: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleVerdict>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub message: Option<String>,
    /// The instance, for counterexample candidates.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mtg: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    pub packed: usize,
    pub diverse: usize,
    pub counterexample_candidates: usize,
    pub hypothesis_unmet: usize,
    pub errors: usize,
    pub oracle_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

impl CampaignReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &TrialRecord> {
        self.records
            .iter()
            .filter(|r| r.outcome == Outcome::CounterexampleCandidate)
    }

    /// One line per trial, then a summary block.
    pub fn to_text(&self) -> String {
        let c = &self.config;
        let sizes: Vec<String> = c.sizes.iter().map(ToString::to_string).collect();
        let mut out = format!(
            "campaign family={} sizes={} k={}-{} trials={} seed={} delta={}\n",
            c.family,
            sizes.join(","),
            c.k_min,
            c.k_max,
            c.trials,
            c.seed,
            c.delta_rule
        );
        for r in &self.records {
            out.push_str(&record_line(r));
            out.push('\n');
        }
        let s = &self.summary;
        out.push_str(&format!(
            "summary trials={} packed={} diverse={} counterexample-candidates={} hypothesis-unmet={} errors={} oracle-checked={}\n",
            s.trials, s.packed, s.diverse, s.counterexample_candidates, s.hypothesis_unmet, s.errors, s.oracle_checked
        ));
        for r in self.counterexamples() {
            out.push_str(&format!("counterexample trial={}\n", r.index));
            out.push_str(r.mtg.as_deref().unwrap_or_default());
        }
        out
    }

    /// One JSON object per trial, then the configuration and summary.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        let tail = serde_json::json!({ "config": self.config, "summary": self.summary });
        out.push_str(&tail.to_string());
        out.push('\n');
        out
    }
}

fn record_line(r: &TrialRecord) -> String {
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let mut line = format!(
        "trial {} seed={} sizes={} k={} delta+={} algorithm={} {} outcome={} lengths={}",
        r.index,
        r.seed,
        join(&r.sizes),
        r.k,
        r.delta_plus.map_or("-".into(), |d| d.to_string()),
        r.algorithm,
        enum_name(&r.backing),
        enum_name(&r.outcome),
        if r.lengths.is_empty() { "-".into() } else { join(&r.lengths) },
    );
    if let Some(v) = r.oracle {
        line.push_str(&format!(" oracle={}", enum_name(&v)));
    }
    if let Some(ms) = r.elapsed_ms {
        line.push_str(&format!(" elapsed-ms={ms}"));
    }
    if let Some(m) = &r.message {
        line.push_str(&format!(" message={m:?}"));
    }
    line
}

fn enum_name<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

/// Run every trial of `config`.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport, ConfigError> {
    config.validate()?;
    let records: Vec<TrialRecord> = (0..config.trials)
        .into_par_iter()
        .map(|i| run_trial(config, i))
        .collect();
    let mut summary = Summary { trials: records.len(), ..Summary::default() };
    for r in &records {
        match r.outcome {
            Outcome::Packed => summary.packed += 1,
            Outcome::Diverse => summary.diverse += 1,
            Outcome::CounterexampleCandidate => summary.counterexample_candidates += 1,
            Outcome::HypothesisUnmet => summary.hypothesis_unmet += 1,
            Outcome::Error => summary.errors += 1,
        }
        if r.oracle.is_some() {
            summary.oracle_checked += 1;
        }
    }
    Ok(CampaignReport { config: config.clone(), records, summary })
}

/// Re-run the oracle on a counterexample candidate's embedded instance.
/// True when it again finds no `k`-packing with the unconditional cap.
pub fn reverify_candidate(record: &TrialRecord) -> Result<bool, String> {
    let text = record.mtg.as_deref().ok_or("record has no embedded instance")?;
    let inst = crate::mtg::parse(text).map_err(|e| e.to_string())?;
    let d = inst.digraph();
    let found = exists_k_disjoint(d, record.k, &OracleBudget::unconditional(d)).map_err(|e| e.to_string())?;
    Ok(found.is_none())
}

enum Plan {
    Packer(&'static str, fn(&MultipartiteTournament, usize) -> Result<CyclePacking, PackingError>),
    OracleOnly,
}

fn plan(family: Family, rule: DeltaRule) -> Plan {
    match (family, rule) {
        (Family::ThreePartite, _) => Plan::Packer("pack_3partite", pack_3partite),
        (Family::Bipartite, _) => Plan::Packer("pack_bipartite_4cycles", pack_bipartite_4cycles),
        (Family::Bt, _) => Plan::Packer("pack_triangle_free", pack_triangle_free),
        (Family::Extended, _) => Plan::Packer("pack_extended", pack_extended),
        (_, DeltaRule::ThreeKMinusTwo) => Plan::Packer("pack_multipartite_3k2", pack_multipartite_3k2),
        (Family::Multipartite | Family::FourPartite | Family::Split, DeltaRule::TwoKMinusOne) => Plan::OracleOnly,
    }
}

fn run_trial(config: &CampaignConfig, index: usize) -> TrialRecord {
    let start = Instant::now();
    let seed = config.seed.wrapping_add(index as u64);
    let mut params = ChaCha8Rng::seed_from_u64(seed);
    params.set_stream(1);
    let sizes: Vec<usize> = config
        .sizes
        .iter()
        .map(|r| params.random_range(r.lo..=r.hi))
        .collect();
    let k = params.random_range(config.k_min..=config.k_max);
    let bound = config.delta_rule.bound(k);
    let plan = plan(config.family, config.delta_rule);
    let (algorithm, backing) = match &plan {
        Plan::Packer(name, _) => (name.to_string(), Backing::TheoremBacked),
        Plan::OracleOnly => ("oracle".to_string(), Backing::SearchVerified),
    };
    let mut record = TrialRecord {
        index,
        seed,
        sizes: sizes.clone(),
        k,
        delta_plus: None,
        algorithm,
        backing,
        outcome: Outcome::Error,
        lengths: Vec::new(),
        oracle: None,
        message: None,
        mtg: None,
        elapsed_ms: None,
    };
    match generate(config, &sizes, seed, bound) {
        Ok(d) => evaluate(config, &plan, &d, bound, &mut record),
        Err(GenError::ExhaustedAttempts { .. } | GenError::Infeasible { .. }) => {
            record.outcome = Outcome::HypothesisUnmet;
            record.message = Some(format!("no instance with minimum out-degree {bound}"));
        }
        Err(e) => record.message = Some(e.to_string()),
    }
    if config.record_elapsed {
        record.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    record
}

fn generate(config: &CampaignConfig, sizes: &[usize], seed: u64, bound: usize) -> Result<MultipartiteTournament, GenError> {
    let spec = GenSpec::new(sizes.to_vec(), seed)
        .with_min_out_degree(bound)
        .with_max_attempts(config.max_attempts);
    match config.family {
        Family::ThreePartite | Family::Multipartite | Family::FourPartite => gen_with_min_outdegree(&spec),
        Family::Bipartite => raise_min_out_degree(&gen_random_multipartite(&spec)?, bound),
        Family::Split => gen_complete_split_with_min_outdegree(sizes[0], sizes[1], seed, bound, config.max_attempts),
        Family::Bt => gen_bt(sizes),
        Family::Extended => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..config.max_attempts {
                let t = gen_random_tournament(sizes.len(), rng.next_u64())?;
                let d = gen_extended_tournament(&t, sizes)?;
                if d.min_out_degree().unwrap_or(0) >= bound {
                    return Ok(d);
                }
            }
            Err(GenError::ExhaustedAttempts { delta_min: bound, attempts: config.max_attempts })
        }
    }
}

fn evaluate(config: &CampaignConfig, plan: &Plan, d: &MultipartiteTournament, bound: usize, record: &mut TrialRecord) {
    let k = record.k;
    let delta = d.min_out_degree().unwrap_or(0);
    record.delta_plus = Some(delta);
    if delta < bound {
        record.outcome = Outcome::HypothesisUnmet;
        return;
    }
    let n = d.vertex_count();
    let oracle_only = matches!(plan, Plan::OracleOnly);
    let oracle = if oracle_only || n <= config.oracle_cross_check_max_n {
        let verdict = match exists_k_disjoint(d, k, &OracleBudget::unconditional(d)) {
            Ok(Some(p)) => Ok((OracleVerdict::PackingExists, Some(p))),
            Ok(None) => Ok((OracleVerdict::NoPacking, None)),
            Err(OracleError::BudgetExceeded(_)) => Ok((OracleVerdict::BudgetExceeded, None)),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(v) => Some(v),
            Err(e) => {
                record.message = Some(format!("oracle: {e}"));
                return;
            }
        }
    } else {
        None
    };
    record.oracle = oracle.as_ref().map(|(v, _)| *v);
    if matches!(record.oracle, Some(OracleVerdict::NoPacking)) {
        record.outcome = Outcome::CounterexampleCandidate;
        record.mtg = Some(crate::mtg::serialize(d));
        log::error!("trial {} has no {k}-packing; instance follows\n{}", record.index, crate::mtg::serialize(d));
        return;
    }
    let packing = match plan {
        Plan::OracleOnly => match oracle {
            Some((OracleVerdict::PackingExists, Some(p))) => p,
            _ => {
                record.message = Some("oracle budget exceeded".into());
                return;
            }
        },
        Plan::Packer(_, pack) => match pack(d, k) {
            Ok(p) => p,
            Err(e) => {
                record.message = Some(e.to_string());
                return;
            }
        },
    };
    if let Err(v) = verify_packing(d, packing.cycles()) {
        record.message = Some(format!("invalid packing: {v}"));
        return;
    }
    record.lengths = packing.lengths();
    record.outcome = Outcome::Packed;
    if config.family == Family::ThreePartite && k >= 2 && find_triangle(d, &[]).is_some() {
        record.algorithm.push_str("+diversify_3partite");
        match diversify_3partite(d, k) {
            Ok(p) => {
                record.lengths = p.packing().lengths();
                record.outcome = Outcome::Diverse;
            }
            Err(e) => {
                record.outcome = Outcome::Error;
                record.message = Some(format!("diversify: {e}"));
            }
        }
    }
}
