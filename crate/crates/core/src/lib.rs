//! Core of the significance-threshold Monte Carlo lab.
//!
//! Generates pairs of Gaussian sample groups from reproducible streams,
//! compares them with two-sample t-tests, and finds the pair whose p-value
//! sits just under the significance level. Sample groups render to grayscale
//! rasters so the (tiny) separation can be inspected by eye.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line, and parallel execution live in the `sigsim` crate.
#![no_std]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod error;
pub mod imaging;
pub mod randkit;
pub mod simlab;
pub mod specfun;
pub mod ttest;

pub use error::{Error, Result};
pub use imaging::{compose_pair, render_group, GrayImage, RenderScale};
pub use randkit::{derive_stream, Group, Seed, Stream, StreamKey};
pub use simlab::{run_study, RunReport, SimulationConfig, SizeSummary, StudyError, TrialRecord};
pub use specfun::{DegreesOfFreedom, Probability};
pub use ttest::{critical_separation, SampleGroup, TTestOutcome, TestKind};
