//! Test-only oracles, independent of the library's special-function code.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Gamma((nu + 1) / 2) / Gamma(nu / 2) for integer nu by exact recurrence
/// from Gamma(1/2) = sqrt(pi) and Gamma(1) = 1.
pub fn gamma_ratio(nu: u32) -> f64 {
    assert!(nu >= 1);
    let (mut k, mut r) = if nu % 2 == 1 {
        (1u32, 1.0 / PI.sqrt())
    } else {
        (2u32, PI.sqrt() / 2.0)
    };
    while k < nu {
        r *= (k as f64 + 1.0) / k as f64;
        k += 2;
    }
    r
}

pub fn t_density(t: f64, nu: u32) -> f64 {
    let v = nu as f64;
    gamma_ratio(nu) / (v * PI).sqrt() * (1.0 + t * t / v).powf(-(v + 1.0) / 2.0)
}

fn t_density_normalized(t: f64, v: f64, norm: f64) -> f64 {
    norm * (1.0 + t * t / v).powf(-(v + 1.0) / 2.0)
}

// Gauss-Kronrod 7/15 nodes and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss-Kronrod quadrature to an absolute tolerance.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn recurse(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (value, err) = gk15(f, a, b);
        if err <= tol || depth > 40 {
            return value;
        }
        let m = 0.5 * (a + b);
        recurse(f, a, m, 0.5 * tol, depth + 1) + recurse(f, m, b, 0.5 * tol, depth + 1)
    }
    recurse(f, a, b, tol, 0)
}

/// Student t CDF by quadrature of the density: F(t) = 1/2 + int_0^t f.
pub fn t_cdf_oracle(t: f64, nu: u32) -> f64 {
    let v = nu as f64;
    let norm = gamma_ratio(nu) / (v * PI).sqrt();
    let f = move |x: f64| t_density_normalized(x, v, norm);
    0.5 + integrate(&f, 0.0, t, 1e-12)
}

/// Quantile oracle by plain bisection on a CDF.
pub fn bisect_quantile(cdf: &dyn Fn(f64) -> f64, p: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
