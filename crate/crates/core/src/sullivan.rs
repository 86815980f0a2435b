//! Empirical check that the alpha invariant of spin complete intersections in
//! dimensions `1 (mod 4)` depends only on dimension, total degree and
//! Pontryagin classes.
//!
//! Two complete intersections with equal invariant profile differ in alpha by
//! `q / 2^rho (mod 2)` where `q = d_tot (sigma_{n+1}(d) - sigma_{n+1}(d'))`
//! (after padding to equal length) and `rho = 2 + nu_2((n+1)!)`. The scanner
//! enumerates a box of multi-degrees, groups them by profile, and checks both
//! that alpha is constant on each group and that every pair agrees with this
//! prediction.

use std::collections::BTreeMap;
use std::io;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alpha::{alpha, AlphaError};
use crate::numtheory::{nu2_factorial, nu_p, Z2};
use crate::topology::{CompleteIntersection, InvariantProfile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SullivanError {
    #[error("dimension {0} is not 1 mod 4")]
    Dimension(u32),
    #[error("dimensions differ ({0} vs {1})")]
    DimensionMismatch(u32, u32),
    #[error("{0} is not spin")]
    NotSpin(String),
    #[error("profiles differ: {0} vs {1}")]
    ProfileMismatch(String, String),
    #[error("nu_2(q) = {nu} < rho = {rho} for {a} vs {b}; q/2^rho would not be an integer")]
    Inconsistent { a: String, b: String, nu: u64, rho: u64 },
}

/// `rho = 2 + nu_2((n+1)!)`.
pub fn rho(n: u32) -> u64 {
    2 + nu2_factorial(n as u64 + 1).value()
}

fn check_hypotheses(x: &CompleteIntersection, y: &CompleteIntersection) -> Result<(), SullivanError> {
    if x.n() != y.n() {
        return Err(SullivanError::DimensionMismatch(x.n(), y.n()));
    }
    if x.n() % 4 != 1 {
        return Err(SullivanError::Dimension(x.n()));
    }
    for z in [x, y] {
        if !z.is_spin().is_spin() {
            return Err(SullivanError::NotSpin(z.to_string()));
        }
    }
    let (px, py) = (x.invariant_profile(), y.invariant_profile());
    if px != py {
        return Err(SullivanError::ProfileMismatch(px.key(), py.key()));
    }
    Ok(())
}

/// `q = d_tot ((sigma_{n+1}(d) - k) - (sigma_{n+1}(d') - k'))`, which equals
/// `d_tot (sigma_{n+1}(d) - sigma_{n+1}(d'))` once both are padded to equal length.
pub fn difference_quantity(x: &CompleteIntersection, y: &CompleteIntersection) -> Result<BigInt, SullivanError> {
    check_hypotheses(x, y)?;
    let e = x.n() + 1;
    let sx = x.power_sum(e) - BigInt::from(x.k());
    let sy = y.power_sum(e) - BigInt::from(y.k());
    Ok(x.total_degree() * (sx - sy))
}

/// `q / 2^rho (mod 2)`, rejecting `nu_2(q) < rho`.
fn predict(x: &CompleteIntersection, y: &CompleteIntersection, q: &BigInt) -> Result<Z2, SullivanError> {
    if q.is_zero() {
        return Ok(Z2::ZERO);
    }
    let r = rho(x.n());
    let nu = nu_p(2, q).expect("q is nonzero").value();
    if nu < r {
        return Err(SullivanError::Inconsistent { a: x.to_string(), b: y.to_string(), nu, rho: r });
    }
    Ok(Z2::from(nu == r))
}

/// Predicted `alpha(X) - alpha(X')` for a profile-matched spin pair.
pub fn predicted_alpha_difference(x: &CompleteIntersection, y: &CompleteIntersection) -> Result<Z2, SullivanError> {
    let q = difference_quantity(x, y)?;
    predict(x, y, &q)
}

/// True when `q = 0` or `2^(rho+1)` divides `q`, which forces equal alpha.
pub fn divisibility_guarantee(x: &CompleteIntersection, y: &CompleteIntersection) -> Result<bool, SullivanError> {
    let q = difference_quantity(x, y)?;
    Ok(predict(x, y, &q)?.is_zero())
}

/// Threshold logic on a raw `q`, independent of any pair.
pub fn guarantee_from_quantity(n: u32, q: &BigInt) -> Option<bool> {
    if q.is_zero() {
        return Some(true);
    }
    let nu = nu_p(2, q).ok()?.value();
    let r = rho(n);
    (nu >= r).then_some(nu > r)
}

// ---------------------------------------------------------------------------
// Scanner

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupingKey {
    /// Full invariant profile: total degree and normalized even power sums.
    Profile,
    /// Total degree only; matches the profile exactly when `n = 1`.
    TotalDegree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub n: u32,
    pub max_k: usize,
    pub max_degree: u64,
    pub workers: usize,
    pub key: GroupingKey,
}

impl ScanConfig {
    pub fn new(n: u32, max_k: usize, max_degree: u64, workers: usize) -> Self {
        ScanConfig { n, max_k, max_degree, workers, key: GroupingKey::Profile }
    }
}

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("invalid scan parameters: {0}")]
    Config(String),
    #[error(transparent)]
    Alpha(#[from] AlphaError),
    #[error(transparent)]
    Hypothesis(#[from] SullivanError),
    #[error("writing report: {0}")]
    Io(#[from] io::Error),
    #[error("serializing report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("writing CSV summary: {0}")]
    Csv(#[from] csv::Error),
}

impl ScanError {
    /// Backend disagreements and hypothesis inconsistencies indicate a bug, not bad input.
    pub fn is_internal(&self) -> bool {
        match self {
            ScanError::Alpha(e) => e.is_internal(),
            ScanError::Hypothesis(SullivanError::Inconsistent { .. }) => true,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupMember {
    pub degrees: Vec<u64>,
    pub alpha: Z2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileGroup {
    pub key: String,
    pub d_tot: String,
    pub members: Vec<GroupMember>,
    pub constant_alpha: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    /// `q` in decimal.
    pub q: String,
    /// `nu_2(q)`, absent when `q = 0`.
    pub nu2_q: Option<u64>,
    pub predicted_difference: Z2,
    pub observed_difference: Z2,
    pub guaranteed_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    NonConstantAlpha { key: String },
    PredictorMismatch { a: Vec<u64>, b: Vec<u64>, predicted: Z2, observed: Z2 },
    GuaranteeBroken { a: Vec<u64>, b: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanTiming {
    pub workers: usize,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: u32,
    pub max_k: usize,
    pub max_degree: u64,
    pub key: GroupingKey,
    pub rho: u64,
    pub multidegrees: usize,
    pub groups: Vec<ProfileGroup>,
    pub pair_checks: Vec<PairCheck>,
    pub violations: Vec<Violation>,
    pub timing: ScanTiming,
}

impl ScanReport {
    /// Equality ignoring timing and worker count.
    pub fn same_results(&self, other: &ScanReport) -> bool {
        let strip = |r: &ScanReport| ScanReport { timing: ScanTiming { workers: 0, elapsed_ms: 0 }, ..r.clone() };
        strip(self) == strip(other)
    }

    pub fn nontrivial_groups(&self) -> usize {
        self.groups.iter().filter(|g| g.members.len() > 1).count()
    }

    pub fn to_json(&self) -> Result<String, serde_json::Error> {
        serde_json::to_string_pretty(self)
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// One CSV row per group.
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["key", "d_tot", "size", "members", "alpha", "constant_alpha"])?;
        for g in &self.groups {
            let members: Vec<String> = g
                .members
                .iter()
                .map(|m| m.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            let alpha = if g.constant_alpha {
                g.members.first().map(|m| m.alpha.to_string()).unwrap_or_default()
            } else {
                "mixed".to_string()
            };
            w.write_record([
                g.key.clone(),
                g.d_tot.clone(),
                g.members.len().to_string(),
                members.join(";"),
                alpha,
                g.constant_alpha.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

type ShardResult = Result<Vec<Entry>, AlphaError>;

struct Entry {
    ci: CompleteIntersection,
    profile: InvariantProfile,
    alpha: Z2,
}

/// Shard 0 holds the empty multi-degree; shard `i >= 1` holds every sorted
/// multi-degree whose smallest entry is `i + 1`.
fn shard_multidegrees(shard: usize, max_k: usize, max_degree: u64) -> Vec<Vec<u64>> {
    if shard == 0 {
        return vec![Vec::new()];
    }
    let first = shard as u64 + 1;
    let mut out = Vec::new();
    let mut stack = vec![vec![first]];
    while let Some(d) = stack.pop() {
        if d.len() < max_k {
            let last = *d.last().expect("nonempty");
            for next in (last..=max_degree).rev() {
                let mut e = d.clone();
                e.push(next);
                stack.push(e);
            }
        }
        out.push(d);
    }
    out.sort();
    out
}

fn scan_shard(config: &ScanConfig, shard: usize) -> Result<Vec<Entry>, AlphaError> {
    let mut entries = Vec::new();
    for d in shard_multidegrees(shard, config.max_k, config.max_degree) {
        if d.iter().filter(|&&x| x % 2 == 0).count() % 2 == 1 {
            continue;
        }
        let ci = CompleteIntersection::from_degrees(config.n, &d).expect("degrees >= 2 and n >= 1");
        let value = alpha(config.n as i64, &d)?.value;
        entries.push(Entry { profile: ci.invariant_profile(), ci, alpha: value });
    }
    Ok(entries)
}

/// Exhaustive scan over sorted multi-degrees with `k <= max_k` and
/// `2 <= d_i <= max_degree` satisfying the spin parity.
///
/// Work is sharded by smallest degree; shards run independently on
/// `workers` threads and are merged in shard order, so the report does not
/// depend on the worker count. A backend disagreement or a pair with
/// `nu_2(q) < rho` aborts the scan with an error.
pub fn scan(config: &ScanConfig) -> Result<ScanReport, ScanError> {
    if config.n % 4 != 1 {
        return Err(ScanError::Config(format!("n = {} is not 1 mod 4", config.n)));
    }
    if config.max_k == 0 || config.max_degree == 0 {
        return Err(ScanError::Config("max_k and max_degree must be at least 1".into()));
    }
    if config.workers == 0 {
        return Err(ScanError::Config("worker count must be at least 1".into()));
    }
    let started = Instant::now();
    let shard_count = config.max_degree.max(1) as usize;
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<ShardResult>>> = Mutex::new((0..shard_count).map(|_| None).collect());

    std::thread::scope(|s| {
        for _ in 0..config.workers.min(shard_count) {
            s.spawn(|| loop {
                let shard = next.fetch_add(1, Ordering::Relaxed);
                if shard >= shard_count {
                    break;
                }
                let partial = scan_shard(config, shard);
                results.lock().expect("no worker panics while holding the lock")[shard] = Some(partial);
            });
        }
    });

    let mut entries = Vec::new();
    for slot in results.into_inner().expect("workers joined") {
        entries.extend(slot.expect("every shard was claimed")?);
    }
    let multidegrees = entries.len();

    let mut grouped: BTreeMap<String, Vec<Entry>> = BTreeMap::new();
    for e in entries {
        let key = match config.key {
            GroupingKey::Profile => e.profile.key(),
            GroupingKey::TotalDegree => format!("d_tot={}", e.profile.d_tot),
        };
        grouped.entry(key).or_default().push(e);
    }

    let mut groups = Vec::with_capacity(grouped.len());
    let mut pair_checks = Vec::new();
    let mut violations = Vec::new();
    for (key, mut members) in grouped {
        members.sort_by(|a, b| a.ci.degrees().cmp(b.ci.degrees()));
        let constant_alpha = members.windows(2).all(|w| w[0].alpha == w[1].alpha);
        if !constant_alpha {
            violations.push(Violation::NonConstantAlpha { key: key.clone() });
        }
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                if a.profile != b.profile {
                    continue;
                }
                let q = difference_quantity(&a.ci, &b.ci)?;
                let predicted = predict(&a.ci, &b.ci, &q)?;
                let observed = a.alpha + b.alpha;
                let guaranteed = predicted.is_zero();
                if predicted != observed {
                    violations.push(Violation::PredictorMismatch {
                        a: a.ci.degrees().to_vec(),
                        b: b.ci.degrees().to_vec(),
                        predicted,
                        observed,
                    });
                }
                if guaranteed && observed.is_one() {
                    violations
                        .push(Violation::GuaranteeBroken { a: a.ci.degrees().to_vec(), b: b.ci.degrees().to_vec() });
                }
                pair_checks.push(PairCheck {
                    a: a.ci.degrees().to_vec(),
                    b: b.ci.degrees().to_vec(),
                    nu2_q: nu_p(2, &q).ok().map(|v| v.value()),
                    q: q.to_string(),
                    predicted_difference: predicted,
                    observed_difference: observed,
                    guaranteed_equal: guaranteed,
                });
            }
        }
        groups.push(ProfileGroup {
            key,
            d_tot: members[0].profile.d_tot.to_string(),
            members: members.iter().map(|e| GroupMember { degrees: e.ci.degrees().to_vec(), alpha: e.alpha }).collect(),
            constant_alpha,
        });
    }

    Ok(ScanReport {
        n: config.n,
        max_k: config.max_k,
        max_degree: config.max_degree,
        key: config.key,
        rho: rho(config.n),
        multidegrees,
        groups,
        pair_checks,
        violations,
        timing: ScanTiming { workers: config.workers, elapsed_ms: started.elapsed().as_millis() as u64 },
    })
}
