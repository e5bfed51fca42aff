//! Special functions behind Student-t p-values.
//!
//! Everything here is a pure function of its arguments. Transcendentals come
//! from `libm`, so results are bit-identical on every platform.

use core::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// ln(sqrt(2 pi))
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

const CF_TOLERANCE: f64 = 1e-15;
const CF_MAX_ITER: usize = 300;
const TINY: f64 = 1e-300;

const QUANTILE_TOLERANCE: f64 = 1e-12;
const QUANTILE_MAX_ITER: usize = 200;

/// A probability in `[0, 1]`. Never NaN.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(domain("probability", value))
        }
    }

    /// Clamps into `[0, 1]`; used for results that may drift by an ulp.
    pub(crate) fn saturating(value: f64) -> Self {
        debug_assert!(!value.is_nan());
        Probability(value.clamp(0.0, 1.0))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

/// Degrees of freedom of a t distribution. Real-valued so the Welch
/// approximation can share the same code path.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DegreesOfFreedom(f64);

impl DegreesOfFreedom {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value.is_finite() {
            Ok(DegreesOfFreedom(value))
        } else {
            Err(domain("degrees of freedom", value))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Tail of the Stirling series, `ln_gamma(x) - [(x - 1/2) ln x - x + ln sqrt(2 pi)]`.
/// Accurate to machine precision for `x >= 10`.
fn stirling_correction(x: f64) -> f64 {
    // Bernoulli-number coefficients B_{2k} / (2k (2k - 1)).
    const COEFFS: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut sum = 0.0;
    for c in COEFFS.iter().rev() {
        sum = sum * inv2 + c;
    }
    sum * inv
}

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_infinite() {
        return Err(domain("ln_gamma argument", x));
    }
    Ok(ln_gamma_unchecked(x))
}

fn ln_gamma_unchecked(x: f64) -> f64 {
    if x >= 10.0 {
        return (x - 0.5) * libm::log(x) - x + LN_SQRT_2PI + stirling_correction(x);
    }
    // Shift up into the asymptotic range: Gamma(x) = Gamma(x + k) / (x (x+1) ... (x+k-1)).
    let mut shifted = x;
    let mut product = 1.0;
    while shifted < 10.0 {
        product *= shifted;
        shifted += 1.0;
    }
    ln_gamma_unchecked(shifted) - libm::log(product)
}

/// ln B(a, b), arranged to avoid cancellation when one argument is large.
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || a.is_infinite() {
        return Err(domain("ln_beta a", a));
    }
    if !(b > 0.0) || b.is_infinite() {
        return Err(domain("ln_beta b", b));
    }
    Ok(ln_beta_unchecked(a, b))
}

fn ln_beta_unchecked(a: f64, b: f64) -> f64 {
    let (p, q) = if a < b { (a, b) } else { (b, a) };
    let sum = p + q;
    if p >= 10.0 {
        let corr = stirling_correction(p) + stirling_correction(q) - stirling_correction(sum);
        -0.5 * libm::log(q) + LN_SQRT_2PI + corr + (p - 0.5) * libm::log(p / sum)
            + q * libm::log1p(-p / sum)
    } else if q >= 10.0 {
        let corr = stirling_correction(q) - stirling_correction(sum);
        ln_gamma_unchecked(p) + corr + p - p * libm::log(sum)
            + (q - 0.5) * libm::log1p(-p / sum)
    } else {
        ln_gamma_unchecked(p) + ln_gamma_unchecked(q) - ln_gamma_unchecked(sum)
    }
}

/// Regularized incomplete beta function `I_x(a, b)`.
pub fn reg_inc_beta(x: f64, a: f64, b: f64) -> Result<Probability> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain("incomplete beta x", x));
    }
    if !(a > 0.0) || a.is_infinite() {
        return Err(domain("incomplete beta a", a));
    }
    if !(b > 0.0) || b.is_infinite() {
        return Err(domain("incomplete beta b", b));
    }
    inc_beta_complementary(x, 1.0 - x, a, b)
}

/// `I_x(a, b)` where the caller supplies `y = 1 - x` computed without
/// cancellation. Arguments must already be in domain.
fn inc_beta_complementary(x: f64, y: f64, a: f64, b: f64) -> Result<Probability> {
    if x <= 0.0 {
        return Ok(Probability::ZERO);
    }
    if y <= 0.0 {
        return Ok(Probability::ONE);
    }
    if x > (a + 1.0) / (a + b + 2.0) {
        let upper = inc_beta_lower(y, x, b, a)?;
        Ok(Probability::saturating(1.0 - upper))
    } else {
        inc_beta_lower(x, y, a, b).map(Probability::saturating)
    }
}

/// Direct continued-fraction evaluation, valid when `x < (a+1)/(a+b+2)`.
fn inc_beta_lower(x: f64, y: f64, a: f64, b: f64) -> Result<f64> {
    let ln_x = if x > 0.5 { libm::log1p(-y) } else { libm::log(x) };
    let ln_y = if y > 0.5 { libm::log1p(-x) } else { libm::log(y) };
    let ln_front = a * ln_x + b * ln_y - ln_beta_unchecked(a, b);
    let cf = beta_continued_fraction(x, a, b)?;
    Ok(libm::exp(ln_front) * cf / a)
}

/// Modified Lentz evaluation of the incomplete-beta continued fraction.
fn beta_continued_fraction(x: f64, a: f64, b: f64) -> Result<f64> {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;

    let nonzero = |v: f64| if v.abs() < TINY { TINY } else { v };

    let mut c = 1.0;
    let mut d = 1.0 / nonzero(1.0 - qab * x / qap);
    let mut h = d;

    for m in 1..=CF_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;

        let even = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 / nonzero(1.0 + even * d);
        c = nonzero(1.0 + even / c);
        h *= d * c;

        let odd = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 / nonzero(1.0 + odd * d);
        c = nonzero(1.0 + odd / c);
        let delta = d * c;
        h *= delta;

        if (delta - 1.0).abs() < CF_TOLERANCE {
            return Ok(h);
        }
    }
    Err(Error::NoConvergence {
        what: "incomplete beta continued fraction",
        iterations: CF_MAX_ITER,
    })
}

/// P(T > |t|) for T ~ t(df), i.e. half the two-sided p-value.
fn upper_tail(t: f64, df: f64) -> Result<f64> {
    let t2 = t * t;
    if t2.is_infinite() {
        return Ok(0.0);
    }
    let denom = df + t2;
    let p = inc_beta_complementary(df / denom, t2 / denom, 0.5 * df, 0.5)?;
    Ok(0.5 * p.value())
}

/// Student t cumulative distribution function.
pub fn student_t_cdf(t: f64, df: DegreesOfFreedom) -> Result<Probability> {
    if t.is_nan() {
        return Err(domain("t statistic", t));
    }
    if t == 0.0 {
        return Ok(Probability(0.5));
    }
    let tail = upper_tail(t, df.0)?;
    Ok(Probability::saturating(if t > 0.0 { 1.0 - tail } else { tail }))
}

/// Two-sided p-value `2 (1 - F(|t|))`.
pub fn two_sided_p(t: f64, df: DegreesOfFreedom) -> Result<Probability> {
    if t.is_nan() {
        return Err(domain("t statistic", t));
    }
    if t == 0.0 {
        return Ok(Probability::ONE);
    }
    upper_tail(t, df.0).map(|tail| Probability::saturating(2.0 * tail))
}

/// Student t probability density.
pub fn student_t_pdf(t: f64, df: DegreesOfFreedom) -> f64 {
    let nu = df.0;
    let ln_norm = -ln_beta_unchecked(0.5 * nu, 0.5) - 0.5 * libm::log(nu);
    libm::exp(ln_norm - 0.5 * (nu + 1.0) * libm::log1p(t * t / nu))
}

/// Inverse of [`student_t_cdf`] for `p` strictly inside `(0, 1)`.
pub fn student_t_quantile(p: f64, df: DegreesOfFreedom) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(domain("quantile probability", p));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    // Solve in the lower tail, where the target carries full relative precision.
    if p > 0.5 {
        upper_tail_inverse(1.0 - p, df.0)
    } else {
        upper_tail_inverse(p, df.0).map(|s| -s)
    }
}

/// Finds `s > 0` with `P(T > s) = target`, `0 < target < 1/2`.
fn upper_tail_inverse(target: f64, df: f64) -> Result<f64> {
    let dof = DegreesOfFreedom(df);
    let residual = |s: f64| upper_tail(s, df).map(|u| u - target);

    let mut s = initial_guess(target, df).max(f64::MIN_POSITIVE);
    // Bracket: residual(lo) > 0 >= residual(hi).
    let mut lo = 0.0;
    let mut hi = s;
    while residual(hi)? > 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi.is_infinite() {
            return Err(Error::NoConvergence {
                what: "t quantile bracket",
                iterations: QUANTILE_MAX_ITER,
            });
        }
    }

    for _ in 0..QUANTILE_MAX_ITER {
        let r = residual(s)?;
        if r == 0.0 {
            return Ok(s);
        }
        if r > 0.0 {
            lo = lo.max(s);
        } else {
            hi = hi.min(s);
        }
        let density = student_t_pdf(s, dof);
        let newton = s + r / density;
        let next = if density > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - s).abs() <= QUANTILE_TOLERANCE * s.max(1.0) || hi - lo <= QUANTILE_TOLERANCE * hi {
            return Ok(next);
        }
        s = next;
    }
    Err(Error::NoConvergence {
        what: "t quantile",
        iterations: QUANTILE_MAX_ITER,
    })
}

/// Cornish-Fisher expansion of the t quantile around the normal quantile.
/// Returns a positive starting point for the upper-tail root.
fn initial_guess(target: f64, df: f64) -> f64 {
    if df == 1.0 {
        return libm::tan(PI * (0.5 - target));
    }
    let z = -normal_quantile(target);
    let z3 = z * z * z;
    let z5 = z3 * z * z;
    let guess = z + (z3 + z) / (4.0 * df) + (5.0 * z5 + 16.0 * z3 + 3.0 * z) / (96.0 * df * df);
    if guess.is_finite() && guess > 0.0 {
        guess
    } else {
        z.max(1.0)
    }
}

/// Acklam's rational approximation to the standard normal quantile
/// (relative error about 1e-9; only used to seed iterations).
pub(crate) fn normal_quantile(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.024_25;

    let tail = |q: f64| {
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    if p < P_LOW {
        tail(libm::sqrt(-2.0 * libm::log(p)))
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -tail(libm::sqrt(-2.0 * libm::log1p(-p)))
    }
}
