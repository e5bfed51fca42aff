mod common;

use common::{bisect_quantile, t_cdf_oracle};
use proptest::prelude::*;
use sigsim_core::specfun::{
    reg_inc_beta, student_t_cdf, student_t_quantile, two_sided_p, DegreesOfFreedom,
};

fn df(v: f64) -> DegreesOfFreedom {
    DegreesOfFreedom::new(v).unwrap()
}

// Frozen from the quadrature and bisection oracles in `common`.
const CDF_T1224_DF4: f64 = 0.856_067_932_570_417;
const P_T1224_DF4: f64 = 0.287_864_134_859_166;
const Q975_DF6: f64 = 2.446_911_851_144_966;

#[test]
fn frozen_reference_values() {
    let t = 1.224_744_871;
    assert!((student_t_cdf(t, df(4.0)).unwrap().value() - CDF_T1224_DF4).abs() < 1e-10);
    assert!((two_sided_p(-t, df(4.0)).unwrap().value() - P_T1224_DF4).abs() < 1e-10);
    assert!((student_t_quantile(0.975, df(6.0)).unwrap() - Q975_DF6).abs() < 1e-9);
}

#[test]
fn cdf_matches_quadrature_oracle() {
    for &nu in &[1u32, 2, 4, 30, 1000] {
        for i in 0..=160 {
            let t = -8.0 + i as f64 * 0.1;
            let got = student_t_cdf(t, df(nu as f64)).unwrap().value();
            let want = t_cdf_oracle(t, nu);
            assert!((got - want).abs() < 1e-10, "t={t} df={nu}: {got} vs {want}");
        }
    }
}

#[test]
fn quantile_matches_bisection_oracle() {
    for &nu in &[1u32, 4, 30] {
        for &p in &[0.6, 0.9, 0.975, 0.995] {
            let want = bisect_quantile(&|t| t_cdf_oracle(t, nu), p, 0.0, 100.0);
            let got = student_t_quantile(p, df(nu as f64)).unwrap();
            assert!((got - want).abs() < 1e-8, "p={p} df={nu}");
        }
    }
}

#[test]
fn quantile_round_trip_grid() {
    let ps = [1e-6, 1e-5, 1e-3, 0.01, 0.025, 0.05, 0.2, 0.5, 0.8, 0.95, 0.975, 0.999, 1.0 - 1e-6];
    for &nu in &[1.0, 2.0, 4.0, 30.0, 1000.0, 262_142.0] {
        for &p in &ps {
            let q = student_t_quantile(p, df(nu)).unwrap();
            let back = student_t_cdf(q, df(nu)).unwrap().value();
            assert!((back - p).abs() < 1e-10, "p={p} df={nu}: {back}");
        }
    }
}

proptest! {
    #[test]
    fn round_trip_random(p in 1e-6f64..(1.0 - 1e-6), nu in 0.5f64..1e6) {
        let q = student_t_quantile(p, df(nu)).unwrap();
        let back = student_t_cdf(q, df(nu)).unwrap().value();
        prop_assert!((back - p).abs() < 1e-10);
    }

    #[test]
    fn cdf_monotone_in_t(t in -50.0f64..50.0, dt in 0.0f64..5.0, nu in 0.5f64..1e5) {
        let lo = student_t_cdf(t, df(nu)).unwrap().value();
        let hi = student_t_cdf(t + dt, df(nu)).unwrap().value();
        prop_assert!(lo <= hi);
        let sym = lo + student_t_cdf(-t, df(nu)).unwrap().value();
        prop_assert!((sym - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_sided_p_nonincreasing_in_abs_t(t in 0.0f64..50.0, dt in 0.0f64..5.0, nu in 0.5f64..1e5) {
        let near = two_sided_p(t, df(nu)).unwrap().value();
        let far = two_sided_p(-(t + dt), df(nu)).unwrap().value();
        prop_assert!(far <= near);
        prop_assert!((0.0..=1.0).contains(&near));
    }

    #[test]
    fn inc_beta_reflection(x in 0.0f64..=1.0, a in 0.1f64..500.0, b in 0.1f64..500.0) {
        let lhs = reg_inc_beta(x, a, b).unwrap().value();
        let rhs = 1.0 - reg_inc_beta(1.0 - x, b, a).unwrap().value();
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }
}

#[test]
fn pooled_example_p_matches_oracle() {
    use sigsim_core::specfun::Probability;
    use sigsim_core::ttest::{pooled_t_test, SampleGroup};
    let a = SampleGroup::new(vec![1.0, 2.0, 3.0]).unwrap();
    let b = SampleGroup::new(vec![2.0, 3.0, 4.0]).unwrap();
    let out = pooled_t_test(&a, &b, Probability::new(0.05).unwrap()).unwrap();
    let want = 2.0 * t_cdf_oracle(out.t, 4);
    assert!((out.p.value() - want).abs() < 1e-10);
}
