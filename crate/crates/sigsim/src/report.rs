//! Table-style reports of a study run.
//!
//! `report.csv` carries full-precision values (Rust's shortest round-trip
//! formatting); `report.md` shows p-values to four decimals.

use std::fmt::Write;

use sigsim_core::{RunReport, SizeSummary, TestKind};

pub const CSV_HEADER: &str = "size,width,height,trials,alpha,n_significant,selected_trial,selected_p";

/// One table row as it appears in the reports.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub size: usize,
    pub width: usize,
    pub height: usize,
    pub n_trials: u32,
    pub alpha: f64,
    pub n_significant: u32,
    pub selected_trial: Option<u32>,
    pub selected_p: Option<f64>,
}

impl ReportRow {
    pub fn from_summary(summary: &SizeSummary, alpha: f64) -> Self {
        ReportRow {
            size: summary.size,
            width: summary.width,
            height: summary.height,
            n_trials: summary.n_trials,
            alpha,
            n_significant: summary.n_significant,
            selected_trial: summary.selected_trial,
            selected_p: summary.selected_p.map(|p| p.value()),
        }
    }

    /// e.g. `512x512=262144`
    pub fn label(&self) -> String {
        format!("{}x{}={}", self.width, self.height, self.size)
    }
}

pub fn rows(report: &RunReport) -> Vec<ReportRow> {
    let alpha = report.config.alpha.value();
    report
        .summaries
        .iter()
        .map(|s| ReportRow::from_summary(s, alpha))
        .collect()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn to_csv(report: &RunReport) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows(report) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.size,
            r.width,
            r.height,
            r.n_trials,
            r.alpha,
            r.n_significant,
            opt(r.selected_trial),
            opt(r.selected_p),
        );
    }
    out
}

fn test_name(kind: TestKind) -> &'static str {
    match kind {
        TestKind::Pooled => "pooled",
        TestKind::Welch => "welch",
    }
}

/// Truncates (not rounds) a probability to four decimals, so a selected
/// p-value of 0.04996 prints as 0.0499 rather than 0.0500.
pub fn four_decimals(p: f64) -> String {
    let mut s = format!("{p:.12}");
    s.truncate(s.find('.').map_or(s.len(), |dot| dot + 5));
    s
}

pub fn to_markdown(report: &RunReport) -> String {
    let c = &report.config;
    let alpha = c.alpha.value();
    let mut out = String::new();
    let _ = writeln!(out, "# Near-threshold pairs\n");
    let _ = writeln!(
        out,
        "seed {}, {} trials per size, alpha {}, {} t-test, samples N({}, {}^2), sigsim {}\n",
        c.master_seed.0,
        c.trials_per_size,
        alpha,
        test_name(c.test_kind),
        c.gen_mean,
        c.gen_sd,
        report.version,
    );
    let _ = writeln!(
        out,
        "| Random Distribution Size | P-value of Pair Presented | Number of Random Cases with p < {alpha} | Selected Trial |"
    );
    out.push_str("|---|---|---|---|\n");
    for r in rows(report) {
        let p = r.selected_p.map_or_else(|| "—".to_string(), four_decimals);
        let trial = r.selected_trial.map_or_else(|| "—".to_string(), |t| t.to_string());
        let _ = writeln!(
            out,
            "| {} | {} | {}/{} | {} |",
            r.label(),
            p,
            r.n_significant,
            r.n_trials,
            trial
        );
    }
    out
}
