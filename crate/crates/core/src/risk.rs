//! Seven-factor PII risk model and the bounded PII risk index.
//!
//! Each attribute carries seven factor scores `a_j` and seven weights `w_j`
//! (identifiability, sensitivity, usability, linkability, permanency,
//! exposability, compliancy). For an exposed set of `l` attributes the
//! pre-activation accumulator is
//!
//! ```text
//! r = lambda * k * l + sum_i agg_j(w_ij * a_ij)        (k = 7)
//! ```
//!
//! where `agg` is a product across factors (`product`) or an inner product
//! (`dot`), and the index itself is `R = tanh(r)`, bounded in `[0, 1)`. The
//! additive `lambda*k*l` term keeps the index growing with every extra
//! exposed attribute even when individual factor terms are small.
//!
//! A config may also carry per-attribute index overrides (`table_pri_override`)
//! for attribute sets whose factor weights are not recoverable; overrides take
//! precedence in [`score_attributes`] / [`pri_for_sample`].

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;
use std::path::Path;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::datagen::QaPair;
use crate::seed;

/// Number of risk factor dimensions (`k` in the index formula).
pub const FACTOR_COUNT: usize = 7;

/// Absolute tolerance for the per-attribute weight normalization check.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// The seven risk factor dimensions, in canonical column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RiskFactor {
    Identifiability,
    Sensitivity,
    Usability,
    Linkability,
    Permanency,
    Exposability,
    Compliancy,
}

impl RiskFactor {
    pub const ALL: [RiskFactor; FACTOR_COUNT] = [
        RiskFactor::Identifiability,
        RiskFactor::Sensitivity,
        RiskFactor::Usability,
        RiskFactor::Linkability,
        RiskFactor::Permanency,
        RiskFactor::Exposability,
        RiskFactor::Compliancy,
    ];
}

/// Broad PII category an attribute belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PiiCategory {
    Basic,
    Contact,
    Identifiers,
    Financial,
    Biometric,
    Medical,
    EmploymentRelated,
    EducationRelated,
    DigitalFootprints,
    Location,
    Legal,
    Miscellaneous,
}

/// How per-attribute factor terms are aggregated across the seven factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Aggregation {
    /// `prod_j w_ij * a_ij`, as the index formula is usually written.
    #[default]
    Product,
    /// `sum_j w_ij * a_ij`, the inner-product reading.
    Dot,
}

/// One attribute's factor scores and weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiskProfile {
    /// Attribute identifier, filled from the config map key on load.
    #[serde(skip)]
    pub attribute_id: String,
    pub category: PiiCategory,
    /// Factor scores `a_j`, each in `[0, 1]`, in [`RiskFactor::ALL`] order.
    pub scores: Vec<f64>,
    /// Factor weights `w_j`, each in `[0, 1]`, summing to 1.
    pub weights: Vec<f64>,
}

/// Full risk model configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiskConfig {
    /// Additive exposure-count coefficient; must be positive.
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    #[serde(default)]
    pub aggregation: Aggregation,
    pub profiles: BTreeMap<String, RiskProfile>,
    /// Named attribute combinations: combination id -> constituent ids.
    #[serde(default)]
    pub combined: BTreeMap<String, BTreeSet<String>>,
    /// Authoritative index values for attribute sets whose factor weights
    /// are not published; each value must lie in `(0, 1)`.
    #[serde(default)]
    pub table_pri_override: BTreeMap<String, f64>,
}

fn default_lambda() -> f64 {
    0.025
}

/// A computed risk index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriScore {
    /// Pre-activation accumulator, `>= 0`.
    pub r: f64,
    /// `tanh(r)`, in `[0, 1)`.
    pub value: f64,
    /// Number of distinct exposed attributes.
    pub l: usize,
}

impl PriScore {
    /// The zero score used for samples with no PII exposure.
    pub const EMPTY: PriScore = PriScore { r: 0.0, value: 0.0, l: 0 };

    fn from_r(r: f64, l: usize) -> PriScore {
        PriScore { r, value: r.tanh(), l }
    }

    fn from_override(value: f64, l: usize) -> PriScore {
        PriScore { r: value.atanh(), value, l }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RiskError {
    #[error("failed to read risk config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("failed to parse risk config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("lambda must be positive, got {0}")]
    Lambda(f64),
    #[error("profile {attribute_id}: expected {FACTOR_COUNT} {field}, got {len}")]
    Shape {
        attribute_id: String,
        field: &'static str,
        len: usize,
    },
    #[error("profile {attribute_id}: {field}[{index}] = {value} outside [0, 1]")]
    Range {
        attribute_id: String,
        field: &'static str,
        index: usize,
        value: f64,
    },
    #[error("profile {attribute_id}: weights sum to {sum}, expected 1 within {WEIGHT_SUM_TOLERANCE}")]
    WeightSum { attribute_id: String, sum: f64 },
    #[error("override {attribute_id}: value {value} outside (0, 1)")]
    OverrideRange { attribute_id: String, value: f64 },
    #[error("combined id {0} collides with a profile id")]
    CombinedCollision(String),
    #[error("unknown attribute id {0}")]
    UnknownAttribute(String),
    #[error("subset size {l} exceeds profile pool size {pool}")]
    SubsetTooLarge { l: usize, pool: usize },
    #[error("simulation needs at least one draw")]
    NoDraws,
}

static BUNDLED: LazyLock<RiskConfig> = LazyLock::new(|| {
    RiskConfig::from_json_str(include_str!("../data/risk_table.json"))
        .expect("bundled risk table must validate")
});

impl RiskConfig {
    /// The bundled 17-attribute reference table (10 single attributes with
    /// factor scores, 7 combinations with index overrides).
    pub fn bundled() -> &'static RiskConfig {
        &BUNDLED
    }

    pub fn from_json_str(json: &str) -> Result<RiskConfig, RiskError> {
        let mut cfg: RiskConfig = serde_json::from_str(json)?;
        for (id, profile) in cfg.profiles.iter_mut() {
            profile.attribute_id = id.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), RiskError> {
        if !(self.lambda > 0.0) {
            return Err(RiskError::Lambda(self.lambda));
        }
        for (id, profile) in &self.profiles {
            for (field, values) in [("scores", &profile.scores), ("weights", &profile.weights)] {
                if values.len() != FACTOR_COUNT {
                    return Err(RiskError::Shape {
                        attribute_id: id.clone(),
                        field,
                        len: values.len(),
                    });
                }
                for (index, &value) in values.iter().enumerate() {
                    if !(0.0..=1.0).contains(&value) || !value.is_finite() {
                        return Err(RiskError::Range {
                            attribute_id: id.clone(),
                            field,
                            index,
                            value,
                        });
                    }
                }
            }
            let sum: f64 = profile.weights.iter().sum();
            if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
                return Err(RiskError::WeightSum {
                    attribute_id: id.clone(),
                    sum,
                });
            }
        }
        for id in self.combined.keys() {
            if self.profiles.contains_key(id) {
                return Err(RiskError::CombinedCollision(id.clone()));
            }
        }
        for (id, &value) in &self.table_pri_override {
            if !(value > 0.0 && value < 1.0) {
                return Err(RiskError::OverrideRange {
                    attribute_id: id.clone(),
                    value,
                });
            }
        }
        Ok(())
    }

    /// Sorted profile ids; the pool the distribution simulation draws from.
    pub fn profile_pool(&self) -> Vec<&str> {
        self.profiles.keys().map(String::as_str).collect()
    }

    /// Expand combined ids into their constituents; plain ids pass through.
    /// Returns the deduplicated attribute set.
    pub fn expand(&self, ids: &[impl AsRef<str>]) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for id in ids {
            let id = id.as_ref();
            match self.combined.get(id) {
                Some(members) => out.extend(members.iter().cloned()),
                None => {
                    out.insert(id.to_string());
                }
            }
        }
        out
    }

    /// Look up an override for an attribute set: either the set is a single
    /// attribute with its own override row, or it equals the member set of a
    /// named combination that has one.
    fn override_for(&self, set: &BTreeSet<String>) -> Option<(&str, f64)> {
        if set.len() == 1 {
            let id = set.iter().next().unwrap();
            if let Some(&v) = self.table_pri_override.get(id) {
                return Some((id.as_str(), v));
            }
        }
        for (cid, members) in &self.combined {
            if members == set {
                if let Some(&v) = self.table_pri_override.get(cid) {
                    return Some((cid.as_str(), v));
                }
            }
        }
        None
    }
}

/// Load and validate a risk config from a JSON file.
pub fn load_risk_config(path: impl AsRef<Path>) -> Result<RiskConfig, RiskError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| RiskError::Io {
        path: path.display().to_string(),
        source,
    })?;
    RiskConfig::from_json_str(&text)
}

/// Compute the risk index for a set of exposed profile attributes from their
/// factor scores. Duplicate ids are counted once; the empty set scores zero.
pub fn compute_pri(
    exposed: &[impl AsRef<str>],
    config: &RiskConfig,
) -> Result<PriScore, RiskError> {
    let distinct: BTreeSet<&str> = exposed.iter().map(AsRef::as_ref).collect();
    let l = distinct.len();
    if l == 0 {
        return Ok(PriScore::EMPTY);
    }
    let mut r = config.lambda * FACTOR_COUNT as f64 * l as f64;
    for id in distinct {
        let profile = config
            .profiles
            .get(id)
            .ok_or_else(|| RiskError::UnknownAttribute(id.to_string()))?;
        r += aggregate(profile, config.aggregation);
    }
    Ok(PriScore::from_r(r, l))
}

fn aggregate(profile: &RiskProfile, aggregation: Aggregation) -> f64 {
    let terms = profile.weights.iter().zip(&profile.scores).map(|(w, a)| w * a);
    match aggregation {
        Aggregation::Product => terms.product(),
        Aggregation::Dot => terms.sum(),
    }
}

/// Score an attribute set with override precedence: a matching table override
/// (single attribute or named combination) wins; otherwise the index is
/// recomputed from factor scores via [`compute_pri`]. Combined ids in the
/// input are expanded first.
pub fn score_attributes(
    exposed: &[impl AsRef<str>],
    config: &RiskConfig,
) -> Result<PriScore, RiskError> {
    let set = config.expand(exposed);
    if set.is_empty() {
        return Ok(PriScore::EMPTY);
    }
    if let Some((_, value)) = config.override_for(&set) {
        return Ok(PriScore::from_override(value, set.len()));
    }
    let ids: Vec<&String> = set.iter().collect();
    compute_pri(&ids, config)
}

/// Risk index for one QA sample, from its ground-truth attribute annotation.
pub fn pri_for_sample(sample: &QaPair, config: &RiskConfig) -> Result<PriScore, RiskError> {
    score_attributes(&sample.attributes, config)
}

/// Summary statistics of the simulated index distribution for one subset size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriStats {
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

/// Distribution of the risk index across random exposure subsets, per size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionSummary {
    pub per_l: BTreeMap<usize, PriStats>,
    pub n_sims: usize,
    pub seed: u64,
}

impl DistributionSummary {
    /// CSV with header `l,mean,std,min,q1,median,q3,max`, one row per size.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("l,mean,std,min,q1,median,q3,max\n");
        for (l, s) in &self.per_l {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                l, s.mean, s.std_dev, s.min, s.q1, s.median, s.q3, s.max
            ));
        }
        out
    }
}

/// Draw `n_sims` uniform random subsets of each size in `l_range` from the
/// config's profile pool, score each subset, and summarize. Each draw derives
/// its randomness from `(seed, l, sim_index)`, so results are identical no
/// matter how the work is scheduled.
pub fn simulate_pri_distribution(
    config: &RiskConfig,
    l_range: RangeInclusive<usize>,
    n_sims: usize,
    seed: u64,
) -> Result<DistributionSummary, RiskError> {
    if n_sims == 0 {
        return Err(RiskError::NoDraws);
    }
    let pool = config.profile_pool();
    let mut per_l = BTreeMap::new();
    for l in l_range {
        if l > pool.len() {
            return Err(RiskError::SubsetTooLarge { l, pool: pool.len() });
        }
        if l == 0 {
            continue;
        }
        let mut values = Vec::with_capacity(n_sims);
        for sim in 0..n_sims {
            let mut rng = seed::rng(seed, &format!("pri-sim/l{l}/i{sim}"));
            let subset = sample_subset(&pool, l, &mut rng);
            values.push(compute_pri(&subset, config)?.value);
        }
        per_l.insert(l, summarize(&mut values));
    }
    Ok(DistributionSummary { per_l, n_sims, seed })
}

/// Partial Fisher-Yates draw of `l` distinct items.
fn sample_subset<'a>(
    pool: &[&'a str],
    l: usize,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Vec<&'a str> {
    use rand::Rng;
    let mut indices: Vec<usize> = (0..pool.len()).collect();
    for i in 0..l {
        let j = rng.random_range(i..indices.len());
        indices.swap(i, j);
    }
    indices[..l].iter().map(|&i| pool[i]).collect()
}

fn summarize(values: &mut [f64]) -> PriStats {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    PriStats {
        mean,
        std_dev: var.sqrt(),
        min: values[0],
        q1: quantile(values, 0.25),
        median: quantile(values, 0.5),
        q3: quantile(values, 0.75),
        max: values[values.len() - 1],
    }
}

/// Linear-interpolation quantile over an ascending slice.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let idx = p * (sorted.len() - 1) as f64;
    let lo = idx.floor() as usize;
    let hi = idx.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (idx - lo as f64) * (sorted[hi] - sorted[lo])
    }
}
