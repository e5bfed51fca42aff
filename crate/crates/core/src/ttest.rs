//! Two-sample t-tests and the quantities derived from them.

use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::specfun::{student_t_quantile, two_sided_p, DegreesOfFreedom, Probability};

/// Running mean and sum of squared deviations (Welford's update).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Moments {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        // The reciprocal does not depend on the running mean, keeping the
        // division off the loop-carried chain.
        let inv_n = 1.0 / self.n as f64;
        let delta = x - self.mean;
        self.mean += delta * inv_n;
        self.m2 += delta * (x - self.mean);
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance, `None` below two observations.
    pub fn variance(&self) -> Option<f64> {
        (self.n >= 2).then(|| self.m2 / (self.n - 1) as f64)
    }

    /// Freezes the accumulator into the statistics a t-test needs.
    pub fn stats(&self) -> Result<GroupStats> {
        match self.variance() {
            Some(variance) => Ok(GroupStats {
                n: self.n,
                mean: self.mean,
                variance,
            }),
            None => Err(Error::InsufficientData { len: self.n }),
        }
    }
}

impl FromIterator<f64> for Moments {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut m = Moments::new();
        for x in iter {
            m.push(x);
        }
        m
    }
}

/// Sufficient statistics of one group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupStats {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
}

/// A validated group of at least two finite measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGroup {
    values: Vec<f64>,
}

impl SampleGroup {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InsufficientData { len: values.len() });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(SampleGroup { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Mean and unbiased variance in one stable pass.
    pub fn summarize(&self) -> GroupStats {
        let stats = self.values.iter().copied().collect::<Moments>().stats();
        // n >= 2 is a construction invariant.
        stats.expect("sample group holds at least two values")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TestKind {
    /// Equal-variance Student test.
    #[default]
    Pooled,
    /// Unequal-variance test with Welch-Satterthwaite degrees of freedom.
    Welch,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTestOutcome {
    pub t: f64,
    pub df: DegreesOfFreedom,
    pub p: Probability,
    /// `mean(a) - mean(b)`.
    pub mean_diff: f64,
    /// Pooled standard deviation; for Welch, the root mean of the two variances.
    pub pooled_sd: f64,
    pub cohen_d: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub alpha: Probability,
    /// Set when the standard error is zero (both groups constant).
    pub degenerate: bool,
}

impl TTestOutcome {
    /// Significance is strict: `p < alpha`.
    pub fn is_significant(&self) -> bool {
        self.p < self.alpha
    }
}

pub fn pooled_t_test(a: &SampleGroup, b: &SampleGroup, alpha: Probability) -> Result<TTestOutcome> {
    t_test_from_stats(TestKind::Pooled, &a.summarize(), &b.summarize(), alpha)
}

pub fn welch_t_test(a: &SampleGroup, b: &SampleGroup, alpha: Probability) -> Result<TTestOutcome> {
    t_test_from_stats(TestKind::Welch, &a.summarize(), &b.summarize(), alpha)
}

pub fn t_test(kind: TestKind, a: &SampleGroup, b: &SampleGroup, alpha: Probability) -> Result<TTestOutcome> {
    t_test_from_stats(kind, &a.summarize(), &b.summarize(), alpha)
}

fn check_alpha(alpha: Probability) -> Result<()> {
    let a = alpha.value();
    if a > 0.0 && a < 1.0 {
        Ok(())
    } else {
        Err(domain("alpha", a))
    }
}

/// The t-test on precomputed group statistics.
pub fn t_test_from_stats(
    kind: TestKind,
    a: &GroupStats,
    b: &GroupStats,
    alpha: Probability,
) -> Result<TTestOutcome> {
    check_alpha(alpha)?;
    for g in [a, b] {
        if g.n < 2 {
            return Err(Error::InsufficientData { len: g.n });
        }
    }
    let (n1, n2) = (a.n as f64, b.n as f64);
    let mean_diff = a.mean - b.mean;
    let pooled_df = n1 + n2 - 2.0;

    let (se, df, spread) = match kind {
        TestKind::Pooled => {
            let pooled_var = ((n1 - 1.0) * a.variance + (n2 - 1.0) * b.variance) / pooled_df;
            let sd = libm::sqrt(pooled_var);
            (sd * libm::sqrt(1.0 / n1 + 1.0 / n2), pooled_df, sd)
        }
        TestKind::Welch => {
            let va = a.variance / n1;
            let vb = b.variance / n2;
            let se2 = va + vb;
            let denom = va * va / (n1 - 1.0) + vb * vb / (n2 - 1.0);
            let df = if denom > 0.0 { se2 * se2 / denom } else { pooled_df };
            let sd = libm::sqrt(0.5 * (a.variance + b.variance));
            (libm::sqrt(se2), df, sd)
        }
    };
    let df = DegreesOfFreedom::new(df)?;

    if se == 0.0 {
        let (t, p, d) = if mean_diff == 0.0 {
            (0.0, Probability::ONE, 0.0)
        } else {
            let inf = f64::INFINITY.copysign(mean_diff);
            (inf, Probability::ZERO, inf)
        };
        return Ok(TTestOutcome {
            t,
            df,
            p,
            mean_diff,
            pooled_sd: spread,
            cohen_d: d,
            ci_low: mean_diff,
            ci_high: mean_diff,
            alpha,
            degenerate: true,
        });
    }

    let t = mean_diff / se;
    let p = two_sided_p(t, df)?;
    let half_width = student_t_quantile(1.0 - 0.5 * alpha.value(), df)? * se;
    Ok(TTestOutcome {
        t,
        df,
        p,
        mean_diff,
        pooled_sd: spread,
        cohen_d: mean_diff / spread,
        ci_low: mean_diff - half_width,
        ci_high: mean_diff + half_width,
        alpha,
        degenerate: false,
    })
}

/// Mean separation at which a pooled test on two groups of `n_per_group`
/// draws with common standard deviation `sd` sits exactly on the
/// significance boundary: `t_{1-alpha/2, 2n-2} * sd * sqrt(2/n)`.
pub fn critical_separation(n_per_group: usize, sd: f64, alpha: f64) -> Result<f64> {
    if n_per_group < 2 {
        return Err(Error::InsufficientData { len: n_per_group });
    }
    if !(sd > 0.0) || !sd.is_finite() {
        return Err(domain("standard deviation", sd));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(domain("alpha", alpha));
    }
    let n = n_per_group as f64;
    let df = DegreesOfFreedom::new(2.0 * n - 2.0)?;
    let q = student_t_quantile(1.0 - 0.5 * alpha, df)?;
    Ok(q * sd * libm::sqrt(2.0 / n))
}
