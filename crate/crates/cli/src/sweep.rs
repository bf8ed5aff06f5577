//! Batch evaluation over a family of specs with registered property checks.
//!
//! A [`SweepConfig`] expands to a spec list in a fixed order. Each spec gets a
//! [`ResultRecord`]; the records are computed in parallel and reported in
//! config order, so the output only depends on the config.
//!
//! Config schema (JSON):
//!
//! ```json
//! {
//!   "n_range": [2, 4],
//!   "n_step": 1,
//!   "d_range": [3, 8],
//!   "alpha_mode": "exhaustive",
//!   "checks": ["three-distinct", "regularity"],
//!   "output_path": "sweep.json",
//!   "format": "json",
//!   "toric": true,
//!   "max_multisets": 2000000,
//!   "record_timing": false
//! }
//! ```
//!
//! `alpha_mode` is one of `"exhaustive"`, `"consecutive"`, `"one_two"` or
//! `{"sampled": {"count": 20, "seed": 7}}`. Only `n_range`, `d_range` and
//! `alpha_mode` are required.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::time::Instant;

use gtvar::canonical::{classify_module, compute_canonical, verify_generation_bound};
use gtvar::hilbert::compute_hilbert;
use gtvar::invariants::classify_gt;
use gtvar::toric::{minimal_generator_count, ToricOptions};
use gtvar::{binom, GroupSpec};
use num_bigint::BigInt;
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::Cache;
use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaMode {
    /// Every nondecreasing `(0, α₁, …, αₙ)` with `αᵢ < d`.
    Exhaustive,
    /// `count` random nondecreasing `(0, α₁, …, αₙ)` per `(n, d)`.
    Sampled { count: usize, seed: u64 },
    /// `(0, 1, …, n)` for each `d` divisible by `n + 1`.
    Consecutive,
    /// `(0, 1, …, 1, 2)` for each `d` divisible by `n + 1`.
    OneTwo,
}

fn one() -> usize {
    1
}

fn yes() -> bool {
    true
}

fn default_cap() -> u128 {
    2_000_000
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub n_range: [usize; 2],
    #[serde(default = "one")]
    pub n_step: usize,
    pub d_range: [u32; 2],
    pub alpha_mode: AlphaMode,
    #[serde(default)]
    pub checks: BTreeSet<String>,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub format: SweepFormat,
    /// Compute quadric and cubic counts.
    #[serde(default = "yes")]
    pub toric: bool,
    /// Multiset cap for the toric counts; larger specs are recorded as skipped.
    #[serde(default = "default_cap")]
    pub max_multisets: u128,
    #[serde(default)]
    pub record_timing: bool,
}

pub const CHECKS: [&str; 8] = [
    "three-distinct",
    "hilbert-degree",
    "hilbert-e1",
    "regularity",
    "gorenstein-family",
    "level-family",
    "level-gt-family",
    "generation-bound",
];

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SweepConfig =
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.n_range[0] > self.n_range[1] || self.d_range[0] > self.d_range[1] {
            return bad("ranges must be nonempty".into());
        }
        if self.n_step == 0 {
            return bad("n_step must be at least 1".into());
        }
        if let AlphaMode::Sampled { count: 0, .. } = self.alpha_mode {
            return bad("sampled count must be at least 1".into());
        }
        if let Some(c) = self.checks.iter().find(|c| !CHECKS.contains(&c.as_str())) {
            return bad(format!("unknown check {c:?}; known: {}", CHECKS.join(", ")));
        }
        Ok(())
    }

    /// The specs in sweep order: by `n`, then `d`, then weights.
    pub fn specs(&self) -> Vec<GroupSpec> {
        let mut out = Vec::new();
        for n in (self.n_range[0]..=self.n_range[1]).step_by(self.n_step) {
            for d in self.d_range[0]..=self.d_range[1] {
                if (d as usize) <= n {
                    continue;
                }
                let family = |a: Vec<u32>| {
                    if (d as usize).is_multiple_of(n + 1) {
                        GroupSpec::new(d, &a).ok()
                    } else {
                        None
                    }
                };
                match &self.alpha_mode {
                    AlphaMode::Exhaustive => exhaustive(n, d, &mut out),
                    AlphaMode::Sampled { count, seed } => sampled(n, d, *count, *seed, &mut out),
                    AlphaMode::Consecutive => out.extend(family((0..=n as u32).collect())),
                    AlphaMode::OneTwo => out.extend(family(one_two_weights(n))),
                }
            }
        }
        out
    }
}

fn one_two_weights(n: usize) -> Vec<u32> {
    let mut a = vec![0];
    a.extend(std::iter::repeat_n(1, n - 1));
    a.push(2);
    a
}

fn exhaustive(n: usize, d: u32, out: &mut Vec<GroupSpec>) {
    fn rec(d: u32, left: usize, lo: u32, cur: &mut Vec<u32>, out: &mut Vec<GroupSpec>) {
        if left == 0 {
            out.extend(GroupSpec::new(d, cur).ok());
            return;
        }
        for a in lo..d {
            cur.push(a);
            rec(d, left - 1, a, cur, out);
            cur.pop();
        }
    }
    rec(d, n, 0, &mut vec![0], out);
}

fn sampled(n: usize, d: u32, count: usize, seed: u64, out: &mut Vec<GroupSpec>) {
    let stream = seed ^ ((n as u64) << 32) ^ d as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    let mut seen = BTreeSet::new();
    for _ in 0..count * 50 {
        if seen.len() == count {
            break;
        }
        let mut a: Vec<u32> = (0..n).map(|_| rng.gen_range(0..d)).collect();
        a.push(0);
        if let Ok(s) = GroupSpec::new(d, &a) {
            if seen.insert(s.alphas().to_vec()) {
                out.push(s);
            }
        }
    }
}

/// A computed value, or the reason it was not computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Field<T> {
    Value(T),
    Skipped { skipped: String },
}

impl<T> Field<T> {
    pub fn skipped(reason: impl Into<String>) -> Self {
        Field::Skipped {
            skipped: reason.into(),
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Field::Value(v) => Some(v),
            Field::Skipped { .. } => None,
        }
    }
}

impl<T: ToString> Field<T> {
    fn csv(&self) -> String {
        match self {
            Field::Value(v) => v.to_string(),
            Field::Skipped { skipped } => format!("skipped: {skipped}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub spec: GroupSpec,
    pub mu: usize,
    pub is_gt: bool,
    pub quadric_count: Field<u64>,
    pub cubic_count: Field<u64>,
    pub eta: usize,
    pub is_level: bool,
    pub is_gorenstein: bool,
    pub is_level_gt: bool,
    pub regularity: usize,
    pub hilbert_numerator: Vec<u64>,
    pub generation_bound: Field<bool>,
    pub timing_ms: Field<u64>,
}

fn toric_count(spec: &GroupSpec, k: usize, cfg: &SweepConfig) -> Field<u64> {
    if !cfg.toric {
        return Field::skipped("toric counts disabled");
    }
    let opts = ToricOptions {
        max_multisets: cfg.max_multisets,
    };
    match minimal_generator_count(spec, k, &opts) {
        Ok(c) => Field::Value(c),
        Err(e) => Field::skipped(format!("{}: {e}", e.kind())),
    }
}

pub fn compute_record(spec: &GroupSpec, cfg: &SweepConfig) -> ResultRecord {
    let start = Instant::now();
    let gt = classify_gt(spec);
    let cm = compute_canonical(spec);
    let cls = classify_module(&cm);
    let hilbert = compute_hilbert(spec);
    let generation_bound = if cfg.checks.contains("generation-bound") {
        match verify_generation_bound(spec, 3) {
            Ok(r) => Field::Value(r.passed()),
            Err(e) => Field::skipped(e.to_string()),
        }
    } else {
        Field::skipped("not requested")
    };
    let mut rec = ResultRecord {
        spec: spec.clone(),
        mu: gt.mu_d,
        is_gt: gt.is_gt_system,
        quadric_count: toric_count(spec, 2, cfg),
        cubic_count: toric_count(spec, 3, cfg),
        eta: cm.eta_d,
        is_level: cls.is_level,
        is_gorenstein: cls.is_gorenstein,
        is_level_gt: cls.is_level_gt,
        regularity: cls.regularity,
        hilbert_numerator: hilbert.numerator,
        generation_bound,
        timing_ms: Field::skipped("timing disabled"),
    };
    if cfg.record_timing {
        rec.timing_ms = Field::Value(start.elapsed().as_millis() as u64);
    }
    rec
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

/// Evaluates one registered check on a record.
pub fn run_check(name: &str, r: &ResultRecord) -> Outcome {
    let n = r.spec.n();
    let d = r.spec.d();
    let consecutive = r.spec.alphas().iter().copied().eq(0..=n as u32);
    let one_two = r.spec.alphas() == one_two_weights(n).as_slice();
    match name {
        "three-distinct" => verdict(r.eta == 0 || r.spec.num_distinct_alphas() >= 3),
        "hilbert-degree" => {
            let sum: u64 = r.hilbert_numerator.iter().sum();
            verdict(BigInt::from(sum) == BigInt::from(d).pow(n as u32 - 1))
        }
        "hilbert-e1" => verdict(r.hilbert_numerator[1] as usize + n + 1 == r.mu),
        "regularity" => {
            let top = r.regularity == n + 1;
            verdict(top == (r.eta > 0) && top == (r.hilbert_numerator[n] > 0))
        }
        "gorenstein-family" if consecutive && d as usize == n + 1 => verdict(r.is_gorenstein),
        "level-family" if consecutive && n.is_multiple_of(2) && (d as usize).is_multiple_of(n + 1) => {
            verdict(r.is_level)
        }
        "level-gt-family" if one_two && n % 2 == 1 && n >= 3 && (d as usize).is_multiple_of(n + 1) => {
            let (d, n) = (d as i64, n as i64);
            let closed = (0..=d / 2).fold(BigInt::from(2), |acc, g| {
                acc + binom(d - 2 * g + n - 2, n - 2)
            });
            verdict(r.is_level_gt && BigInt::from(r.mu) == closed)
        }
        "generation-bound" => match r.generation_bound {
            Field::Value(ok) => verdict(ok),
            Field::Skipped { .. } => Outcome::NotApplicable,
        },
        _ => Outcome::NotApplicable,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub gt: usize,
    pub level: usize,
    pub gorenstein: usize,
    pub level_gt: usize,
    pub toric_skipped: usize,
    pub checks: BTreeMap<String, CheckTally>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckFailure {
    pub spec: GroupSpec,
    pub check: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub summary: Summary,
    pub failures: Vec<CheckFailure>,
    pub records: Vec<ResultRecord>,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "d",
            "alphas",
            "mu",
            "is_gt",
            "quadric_count",
            "cubic_count",
            "eta",
            "is_level",
            "is_gorenstein",
            "is_level_gt",
            "regularity",
            "hilbert_numerator",
            "generation_bound",
            "timing_ms",
        ])
        .expect("in-memory write");
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        for r in &self.records {
            let alphas: Vec<u64> = r.spec.alphas().iter().map(|&a| a as u64).collect();
            w.write_record([
                r.spec.d().to_string(),
                join(&alphas),
                r.mu.to_string(),
                r.is_gt.to_string(),
                r.quadric_count.csv(),
                r.cubic_count.csv(),
                r.eta.to_string(),
                r.is_level.to_string(),
                r.is_gorenstein.to_string(),
                r.is_level_gt.to_string(),
                r.regularity.to_string(),
                join(&r.hilbert_numerator),
                r.generation_bound.csv(),
                r.timing_ms.csv(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn render(&self, format: SweepFormat) -> String {
        match format {
            SweepFormat::Json => self.to_json(),
            SweepFormat::Csv => self.to_csv(),
        }
    }

    pub fn summary_text(&self) -> String {
        let s = &self.summary;
        let mut out = format!(
            "{} specs: {} GT, {} level, {} Gorenstein, {} level-GT, {} toric skipped\n",
            s.total, s.gt, s.level, s.gorenstein, s.level_gt, s.toric_skipped
        );
        for (name, t) in &s.checks {
            out.push_str(&format!(
                "  {name}: {} passed, {} failed, {} not applicable\n",
                t.passed, t.failed, t.not_applicable
            ));
        }
        out
    }
}

fn cache_params(cfg: &SweepConfig) -> String {
    format!(
        "toric={} cap={} generation={}",
        cfg.toric,
        cfg.max_multisets,
        cfg.checks.contains("generation-bound")
    )
}

fn record_with_cache(
    spec: &GroupSpec,
    cfg: &SweepConfig,
    cache: Option<&Cache>,
) -> Result<ResultRecord> {
    let cache = match cache {
        Some(c) if !cfg.record_timing => c,
        _ => return Ok(compute_record(spec, cfg)),
    };
    let key = Cache::key("sweep-record", spec, &cache_params(cfg));
    if let Some(hit) = cache.get(&key) {
        if let Ok(r) = serde_json::from_str(&hit) {
            return Ok(r);
        }
    }
    let rec = compute_record(spec, cfg);
    cache.put(&key, &serde_json::to_string(&rec).expect("serializable"))?;
    Ok(rec)
}

pub fn run_sweep(cfg: &SweepConfig, cache: Option<&Cache>) -> Result<SweepReport> {
    cfg.validate()?;
    let records = cfg
        .specs()
        .par_iter()
        .map(|s| record_with_cache(s, cfg, cache))
        .collect::<Result<Vec<_>>>()?;

    let mut summary = Summary {
        total: records.len(),
        ..Summary::default()
    };
    let mut failures = Vec::new();
    for r in &records {
        summary.gt += r.is_gt as usize;
        summary.level += r.is_level as usize;
        summary.gorenstein += r.is_gorenstein as usize;
        summary.level_gt += r.is_level_gt as usize;
        summary.toric_skipped += r.quadric_count.value().is_none() as usize;
        for name in &cfg.checks {
            let tally = summary.checks.entry(name.clone()).or_default();
            match run_check(name, r) {
                Outcome::Pass => tally.passed += 1,
                Outcome::NotApplicable => tally.not_applicable += 1,
                Outcome::Fail => {
                    tally.failed += 1;
                    failures.push(CheckFailure {
                        spec: r.spec.clone(),
                        check: name.clone(),
                    });
                }
            }
        }
    }
    Ok(SweepReport {
        summary,
        failures,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(json: &str) -> SweepConfig {
        SweepConfig::from_json(json).unwrap()
    }

    #[test]
    fn config_defaults_and_validation() {
        let c = cfg(r#"{"n_range":[2,3],"d_range":[3,5],"alpha_mode":"exhaustive"}"#);
        assert!(c.toric && !c.record_timing && c.n_step == 1);
        assert_eq!(c.format, SweepFormat::Json);
        for bad in [
            r#"{"n_range":[3,2],"d_range":[3,5],"alpha_mode":"exhaustive"}"#,
            r#"{"n_range":[2,2],"d_range":[3,5],"alpha_mode":{"sampled":{"count":0,"seed":1}}}"#,
            r#"{"n_range":[2,2],"d_range":[3,5],"alpha_mode":"exhaustive","checks":["nope"]}"#,
            r#"{"n_range":[2,2],"d_range":[3,5],"alpha_mode":"exhaustive","extra":1}"#,
        ] {
            assert!(
                matches!(SweepConfig::from_json(bad), Err(CliError::Config(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn spec_expansion() {
        let c = cfg(r#"{"n_range":[2,4],"n_step":2,"d_range":[1,15],"alpha_mode":"consecutive"}"#);
        let names: Vec<String> = c.specs().iter().map(|s| s.to_string()).collect();
        assert_eq!(
            names,
            [
                "(3;0,1,2)",
                "(6;0,1,2)",
                "(9;0,1,2)",
                "(12;0,1,2)",
                "(15;0,1,2)",
                "(5;0,1,2,3,4)",
                "(10;0,1,2,3,4)",
                "(15;0,1,2,3,4)"
            ]
        );
        let c = cfg(r#"{"n_range":[2,2],"d_range":[5,5],"alpha_mode":"exhaustive"}"#);
        // (5;0,a,b) with 0 <= a <= b < 5, excluding (5;0,0,0)
        assert_eq!(c.specs().len(), 14);
        let c = cfg(
            r#"{"n_range":[3,3],"d_range":[7,7],"alpha_mode":{"sampled":{"count":5,"seed":9}}}"#,
        );
        let a = c.specs();
        assert_eq!(a.len(), 5);
        assert_eq!(a, c.specs());
    }

    #[test]
    fn family_checks_pass() {
        let c = cfg(
            r#"{"n_range":[3,5],"n_step":2,"d_range":[4,12],"alpha_mode":"one_two",
                "checks":["level-gt-family","three-distinct","regularity"],"toric":false}"#,
        );
        let r = run_sweep(&c, None).unwrap();
        assert_eq!(r.summary.total, 5);
        assert!(r.failures.is_empty());
        assert_eq!(r.summary.checks["level-gt-family"].passed, 5);
    }

    #[test]
    fn failing_check_is_reported() {
        let c = cfg(r#"{"n_range":[2,2],"d_range":[5,5],"alpha_mode":"exhaustive","toric":false}"#);
        let mut r = compute_record(&GroupSpec::new(5, &[0, 1, 3]).unwrap(), &c);
        assert_eq!(run_check("hilbert-e1", &r), Outcome::Pass);
        r.mu += 1;
        assert_eq!(run_check("hilbert-e1", &r), Outcome::Fail);
        assert_eq!(run_check("gorenstein-family", &r), Outcome::NotApplicable);
    }

    #[test]
    fn resource_bound_is_recorded() {
        let c = cfg(
            r#"{"n_range":[3,3],"d_range":[6,6],"alpha_mode":"consecutive","max_multisets":10}"#,
        );
        let r = compute_record(&GroupSpec::new(6, &[0, 1, 2, 3]).unwrap(), &c);
        match &r.quadric_count {
            Field::Skipped { skipped } => assert!(skipped.starts_with("ResourceBound")),
            other => panic!("{other:?}"),
        }
    }
}
