//! Multi-threaded study runner.
//!
//! Trials are independent and each owns its random streams, so the work is
//! spread over a rayon pool and gathered back in index order. The report is
//! identical to [`sigsim_core::run_study`] for any thread count.

use rayon::prelude::*;
use sigsim_core::simlab::{assemble_report, run_trial};
use sigsim_core::{RunReport, SimulationConfig, StudyError, TrialRecord};

/// Runs the study on `threads` workers (`None` lets rayon decide).
pub fn run_study_parallel(config: &SimulationConfig, threads: Option<usize>) -> Result<RunReport, StudyError> {
    config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n.max(1));
    }
    match builder.build() {
        Ok(pool) => pool.install(|| run_on_current_pool(config)),
        // Pool creation only fails on resource exhaustion; run inline instead.
        Err(_) => sigsim_core::run_study(config),
    }
}

fn run_on_current_pool(config: &SimulationConfig) -> Result<RunReport, StudyError> {
    let trials = config.trials_per_size;
    let jobs: Vec<(usize, u32)> = (0..config.sizes.len())
        .flat_map(|s| (0..trials).map(move |t| (s, t)))
        .collect();
    // Largest groups first keeps the tail of the schedule short.
    let outcomes: Vec<Result<TrialRecord, StudyError>> = jobs
        .par_iter()
        .rev()
        .map(|&(s, t)| {
            run_trial(config, s, t).map_err(|source| StudyError::Trial {
                size: config.sizes[s],
                trial_index: t,
                source,
            })
        })
        .collect();

    // Back to (size, trial) order; report the first failure in that order.
    let mut per_size: Vec<Vec<TrialRecord>> = vec![Vec::with_capacity(trials as usize); config.sizes.len()];
    for (&(s, _), outcome) in jobs.iter().zip(outcomes.into_iter().rev()) {
        per_size[s].push(outcome?);
    }
    Ok(assemble_report(config, &per_size))
}
