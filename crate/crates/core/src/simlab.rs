//! The threshold experiment: many random pairs per size, t-tested, counted,
//! and the barely-significant pair picked out for display.
//!
//! Trials keep only `(t, p)`. The selected pair is rebuilt afterwards from its
//! derived streams, which reproduces the consumed samples exactly.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain, Error};
use crate::randkit::{Group, Seed, Stream, StreamKey};
use crate::specfun::Probability;
use crate::ttest::{t_test_from_stats, GroupStats, Moments, SampleGroup, TestKind};

/// Default group sizes: 2x2 up to 512x512.
pub const DEFAULT_SIZES: [usize; 9] = [4, 16, 64, 256, 1024, 4096, 16_384, 65_536, 262_144];
pub const DEFAULT_TRIALS: u32 = 1000;
pub const DEFAULT_ALPHA: f64 = 0.05;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub sizes: Vec<usize>,
    pub trials_per_size: u32,
    pub alpha: Probability,
    pub master_seed: Seed,
    pub gen_mean: f64,
    pub gen_sd: f64,
    pub test_kind: TestKind,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            sizes: DEFAULT_SIZES.to_vec(),
            trials_per_size: DEFAULT_TRIALS,
            alpha: Probability::new(DEFAULT_ALPHA).expect("valid default alpha"),
            master_seed: Seed(DEFAULT_SEED),
            gen_mean: 0.0,
            gen_sd: 1.0,
            test_kind: TestKind::Pooled,
        }
    }
}

/// Integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: usize) -> Option<usize> {
    let r = libm::sqrt(n as f64) as usize;
    (r.saturating_sub(1)..=r + 1).find(|&s| s.checked_mul(s) == Some(n))
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<(), StudyError> {
        let invalid = |why| Err(StudyError::InvalidConfig(why));
        if self.sizes.is_empty() {
            return invalid("no group sizes configured");
        }
        if self.sizes.len() > usize::from(u8::MAX) + 1 {
            return invalid("at most 256 group sizes are supported");
        }
        if self.sizes.iter().any(|&s| s < 4 || exact_sqrt(s).is_none()) {
            return invalid("every group size must be a perfect square of at least 4");
        }
        if self.trials_per_size == 0 {
            return invalid("trials per size must be positive");
        }
        let a = self.alpha.value();
        if !(a > 0.0 && a < 1.0) {
            return invalid("alpha must lie strictly between 0 and 1");
        }
        if !self.gen_mean.is_finite() {
            return invalid("generator mean must be finite");
        }
        if !(self.gen_sd > 0.0 && self.gen_sd.is_finite()) {
            return invalid("generator standard deviation must be positive");
        }
        Ok(())
    }

    fn size(&self, size_index: usize) -> Result<usize, Error> {
        self.sizes
            .get(size_index)
            .copied()
            .ok_or(domain("size index", size_index as f64))
    }

    fn check_trial(&self, trial_index: u32) -> Result<(), Error> {
        if trial_index >= self.trials_per_size {
            return Err(domain("trial index", f64::from(trial_index)));
        }
        if !(self.gen_sd > 0.0 && self.gen_sd.is_finite()) {
            return Err(domain("standard deviation", self.gen_sd));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StudyError {
    InvalidConfig(&'static str),
    Trial {
        size: usize,
        trial_index: u32,
        source: Error,
    },
}

impl fmt::Display for StudyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StudyError::InvalidConfig(why) => write!(f, "invalid configuration: {why}"),
            StudyError::Trial {
                size,
                trial_index,
                source,
            } => write!(f, "size {size}, trial {trial_index}: {source}"),
        }
    }
}

impl core::error::Error for StudyError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            StudyError::Trial { source, .. } => Some(source),
            StudyError::InvalidConfig(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub trial_index: u32,
    pub p: Probability,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizeSummary {
    pub size: usize,
    pub width: usize,
    pub height: usize,
    pub n_trials: u32,
    pub n_significant: u32,
    pub expected_significant: f64,
    pub selected_trial: Option<u32>,
    pub selected_p: Option<Probability>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub config: SimulationConfig,
    pub summaries: Vec<SizeSummary>,
    pub version: &'static str,
}

/// Feeds `n` deviates of one group's stream into `sink`, in stream order.
fn draw_group(config: &SimulationConfig, key: StreamKey, n: usize, mut sink: impl FnMut(f64)) {
    let mut stream = Stream::for_key(config.master_seed, key);
    let (mean, sd) = (config.gen_mean, config.gen_sd);
    for _ in 0..n {
        sink(mean + sd * stream.next_standard_normal());
    }
}

fn keys(size_index: usize, trial_index: u32) -> [StreamKey; 2] {
    // validate() caps the size list at 256 entries.
    let s = size_index as u8;
    [
        StreamKey::new(s, trial_index, Group::Left),
        StreamKey::new(s, trial_index, Group::Right),
    ]
}

fn group_stats(config: &SimulationConfig, key: StreamKey, n: usize) -> Result<GroupStats, Error> {
    let mut moments = Moments::new();
    draw_group(config, key, n, |x| moments.push(x));
    moments.stats()
}

/// One random pair, tested; the samples themselves are discarded.
pub fn run_trial(config: &SimulationConfig, size_index: usize, trial_index: u32) -> Result<TrialRecord, Error> {
    let n = config.size(size_index)?;
    config.check_trial(trial_index)?;
    let [left, right] = keys(size_index, trial_index);
    let a = group_stats(config, left, n)?;
    let b = group_stats(config, right, n)?;
    let outcome = t_test_from_stats(config.test_kind, &a, &b, config.alpha)?;
    Ok(TrialRecord {
        trial_index,
        p: outcome.p,
        t: outcome.t,
    })
}

/// Rebuilds the exact samples [`run_trial`] consumed for the same indices.
pub fn regenerate_pair(
    config: &SimulationConfig,
    size_index: usize,
    trial_index: u32,
) -> Result<(SampleGroup, SampleGroup), Error> {
    let n = config.size(size_index)?;
    config.check_trial(trial_index)?;
    let [left, right] = keys(size_index, trial_index);
    let collect = |key| {
        let mut values = Vec::with_capacity(n);
        draw_group(config, key, n, |x| values.push(x));
        SampleGroup::new(values)
    };
    Ok((collect(left)?, collect(right)?))
}

/// Number of records with `p < alpha`.
pub fn count_significant(records: &[TrialRecord], alpha: Probability) -> u32 {
    records.iter().filter(|r| r.p < alpha).count() as u32
}

/// Trial with the largest p-value still strictly below `alpha`; ties go to
/// the lowest trial index.
pub fn select_threshold_pair(records: &[TrialRecord], alpha: Probability) -> Option<u32> {
    records
        .iter()
        .filter(|r| r.p < alpha)
        .max_by(|x, y| {
            x.p.value()
                .total_cmp(&y.p.value())
                .then(y.trial_index.cmp(&x.trial_index))
        })
        .map(|r| r.trial_index)
}

/// Reduces one size's records to its report row.
pub fn summarize_size(config: &SimulationConfig, size_index: usize, records: &[TrialRecord]) -> SizeSummary {
    let size = config.sizes[size_index];
    let side = exact_sqrt(size).unwrap_or(0);
    let alpha = config.alpha;
    let selected_trial = select_threshold_pair(records, alpha);
    let selected_p = selected_trial.and_then(|i| records.iter().find(|r| r.trial_index == i).map(|r| r.p));
    SizeSummary {
        size,
        width: side,
        height: side,
        n_trials: records.len() as u32,
        n_significant: count_significant(records, alpha),
        expected_significant: alpha.value() * records.len() as f64,
        selected_trial,
        selected_p,
    }
}

/// All trials of one size, sequentially.
pub fn run_size(config: &SimulationConfig, size_index: usize) -> Result<Vec<TrialRecord>, StudyError> {
    (0..config.trials_per_size)
        .map(|trial| {
            run_trial(config, size_index, trial).map_err(|source| StudyError::Trial {
                size: config.sizes[size_index],
                trial_index: trial,
                source,
            })
        })
        .collect()
}

/// Assembles a report from per-size record lists in configured size order.
pub fn assemble_report(config: &SimulationConfig, per_size: &[Vec<TrialRecord>]) -> RunReport {
    let summaries = per_size
        .iter()
        .enumerate()
        .map(|(i, records)| summarize_size(config, i, records))
        .collect();
    RunReport {
        config: config.clone(),
        summaries,
        version: env!("CARGO_PKG_VERSION"),
    }
}

/// The full experiment on the calling thread.
pub fn run_study(config: &SimulationConfig) -> Result<RunReport, StudyError> {
    config.validate()?;
    let per_size = (0..config.sizes.len())
        .map(|i| run_size(config, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(assemble_report(config, &per_size))
}

/// Kolmogorov-Smirnov distance between the empirical distribution of
/// `values` and Uniform(0, 1). Sorts `values` in place.
pub fn ks_distance_uniform(values: &mut [f64]) -> f64 {
    values.sort_unstable_by(f64::total_cmp);
    let n = values.len() as f64;
    values.iter().enumerate().fold(0.0, |d, (i, &v)| {
        let above = (i + 1) as f64 / n - v;
        let below = v - i as f64 / n;
        d.max(above).max(below)
    })
}
