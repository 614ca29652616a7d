mod common;

use common::oracle::{gl_composite, integrate, oracle_pdf, oracle_pdf_err, oracle_pdf_scaled};
use strictstable::fracstable::frac_pdf_instrumented;
use strictstable::special::gamma;
use strictstable::{
    cdf, density_at_zero, frac_pdf, integral_pdf, log_likelihood, pdf, pdf_series, theta_max,
    threshold_x_pdf, EvalOptions, FracParams, Method, MethodChoice, StableParams,
};

fn thetas(alpha: f64) -> [f64; 4] {
    let m = theta_max(alpha);
    [-m, 0.0, 0.5 * m, m]
}

#[test]
fn evaluator_meets_epsilon_against_oracle() {
    let xs = [-3.0, -0.7, -0.05, 0.02, 0.3, 1.5, 8.0];
    for alpha in [0.5, 0.8, 1.3, 1.9] {
        for theta in thetas(alpha) {
            let params = StableParams::standard(alpha, theta).unwrap();
            let opts = EvalOptions::default();
            let eps = opts.epsilon_for(alpha);
            for &x in &xs {
                let r = pdf(x, &params, &opts).unwrap();
                let (o, oe) = oracle_pdf_err(x, alpha, theta, 1e-12);
                assert!(r.warnings.is_empty(), "{alpha} {theta} {x}: {:?}", r.warnings);
                assert!(r.error_estimate <= eps);
                assert!(
                    (r.value - o).abs() <= eps + oe,
                    "alpha {alpha} theta {theta} x {x}: {} vs {o} ({:?})",
                    r.value,
                    r.method
                );
            }
        }
    }
}

#[test]
fn value_at_zero_against_oracle() {
    for &(alpha, theta) in &[(1.2, 0.5), (0.6, -0.8), (1.7, 0.1)] {
        let d = density_at_zero(alpha, theta).unwrap();
        assert!(
            (d - oracle_pdf(0.0, alpha, theta, 1e-13)).abs() < 1e-11,
            "{alpha} {theta}"
        );
    }
    assert!((density_at_zero(1.2, 0.5).unwrap() - 0.211_721_954_269_334).abs() < 1e-14);
}

#[test]
fn scaled_law_against_oracle() {
    for &(alpha, theta, lambda) in &[(0.7, 0.3, 2.5), (1.4, -0.2, 0.3), (1.0, 0.4, 4.0)] {
        let params = StableParams::new(alpha, theta, lambda).unwrap();
        let opts = EvalOptions::default().with_epsilon(1e-10);
        for x in [-2.0, 0.1, 1.0, 6.0] {
            let r = pdf(x, &params, &opts).unwrap();
            let o = oracle_pdf_scaled(x, alpha, theta, lambda, 1e-12);
            assert!(
                (r.value - o).abs() < 2e-10,
                "{alpha} {lambda} {x}: {} vs {o}",
                r.value
            );
        }
    }
}

#[test]
fn cdf_increments_match_integrated_density() {
    for &(alpha, theta) in &[(0.7, 0.6), (1.3, -0.4), (1.8, 0.1)] {
        let params = StableParams::standard(alpha, theta).unwrap();
        let opts = EvalOptions::default().with_epsilon(1e-11);
        let f = |x: f64| pdf(x, &params, &opts).unwrap().value;
        for &(a, b) in &[(-2.0, -0.5), (-0.5, 0.3), (0.3, 4.0)] {
            let (mass, _) = integrate(&f, a, b, 1e-12);
            let inc = cdf(b, &params, &opts).unwrap().value - cdf(a, &params, &opts).unwrap().value;
            assert!((mass - inc).abs() < 1e-9, "{alpha} [{a}, {b}]: {mass} vs {inc}");
        }
    }
}

#[test]
fn forced_routes_agree_where_both_apply() {
    let opts = EvalOptions::default().with_epsilon(1e-10);
    for &(alpha, theta) in &[(0.9, 0.3), (1.2, 0.5), (1.6, -0.2)] {
        let params = StableParams::standard(alpha, theta).unwrap();
        let x = 0.5 * threshold_x_pdf(alpha, 1e-10, 100);
        let s = pdf(x, &params, &opts.with_method(MethodChoice::Series)).unwrap();
        let q = pdf(x, &params, &opts.with_method(MethodChoice::Integral)).unwrap();
        assert_eq!((s.method, q.method), (Method::Series, Method::Integral));
        assert!(s.warnings.is_empty() && q.warnings.is_empty());
        assert!(
            (s.value - q.value).abs() < 2e-10,
            "{alpha}: {} vs {}",
            s.value,
            q.value
        );
    }
}

#[test]
fn continuity_across_the_route_switch() {
    let params = StableParams::standard(1.3, 0.2).unwrap();
    let opts = EvalOptions::default();
    let xs: Vec<f64> = (0..400).map(|i| 0.5 + 0.01 * i as f64).collect();
    let rs: Vec<_> = xs.iter().map(|&x| pdf(x, &params, &opts).unwrap()).collect();
    let switch = rs
        .windows(2)
        .position(|w| w[0].method != w[1].method)
        .expect("route switch");
    let (a, b) = (&rs[switch], &rs[switch + 1]);
    let q = integral_pdf(xs[switch], 1.3, 0.2, 1e-13).unwrap().value();
    assert!((a.value - q).abs() <= 1e-10, "{} vs {q}", a.value);
    let s = pdf_series(xs[switch + 1], 1.3, 0.2, 500).unwrap();
    assert!((b.value - s.value).abs() <= s.error_bound + 1e-10);
}

#[test]
fn fractional_value_at_zero_matches_moment_formula() {
    // q(0) = g(0) E[Y^(beta/alpha)], E[Y^s] = Γ(1 - s/beta) / Γ(1 - s)
    for &(alpha, beta, theta) in &[(1.5, 0.6, 0.2), (1.8, 0.3, 0.0), (1.2, 0.8, -0.5)] {
        let fp = FracParams::new(alpha, beta, theta, 1.0).unwrap();
        let s = beta / alpha;
        let expected = density_at_zero(alpha, theta).unwrap() * gamma(1.0 - 1.0 / alpha) / gamma(1.0 - s);
        let r = frac_pdf(0.0, &fp, 1e-8).unwrap();
        assert!(
            (r.value - expected).abs() < 1e-6,
            "{alpha} {beta}: {} vs {expected}",
            r.value
        );
    }
}

#[test]
fn fractional_inner_series_is_used_near_zero() {
    let fp = FracParams::new(1.5, 0.6, 0.2, 1.0).unwrap();
    let (r, stats) = frac_pdf_instrumented(1e-3, &fp, 1e-7).unwrap();
    assert!(r.value > 0.0);
    assert!(stats.count(Method::Series) > 0, "{stats:?}");
    assert!(stats.count(Method::Integral) > 0);
    assert!(stats.one_sided_integral + stats.one_sided_series > 0);
}

#[test]
fn fractional_symmetry_and_mass() {
    let fp = FracParams::new(1.6, 0.7, 0.0, 1.0).unwrap();
    for x in [0.2, 1.0, 4.0] {
        let a = frac_pdf(x, &fp, 1e-8).unwrap().value;
        let b = frac_pdf(-x, &fp, 1e-8).unwrap().value;
        assert_eq!(a, b);
    }
    let f = |x: f64| frac_pdf(x, &fp, 1e-7).unwrap().value;
    let mass = 2.0 * gl_composite(&f, &[0.0, 1.0, 3.0, 8.0, 30.0]);
    // mass beyond |x| = 30 is about 2 P(|X| > 30) with tails of order x^(-1.6)
    assert!((mass - 1.0).abs() < 1e-2 && mass < 1.0, "{mass}");
}

#[test]
fn fractional_reduces_to_mixture_of_scaled_laws() {
    // q(x) = E[Y^(beta/alpha) g(x Y^(beta/alpha))], here checked with the
    // closed-form one-sided density of index 1/2
    let (alpha, beta, theta) = (1.4, 0.5, 0.3);
    let fp = FracParams::new(alpha, beta, theta, 1.0).unwrap();
    let x = 0.8;
    let levy = |y: f64| (-0.25 / y).exp() / (2.0 * std::f64::consts::PI.sqrt() * y.powf(1.5));
    let s = beta / alpha;
    let params = StableParams::standard(alpha, theta).unwrap();
    let opts = EvalOptions::default().with_epsilon(1e-12);
    let f = |v: f64| {
        let y = v.exp();
        let ys = y.powf(s);
        y * levy(y) * ys * pdf(x * ys, &params, &opts).unwrap().value
    };
    let (expected, _) = integrate(&f, -6.0, 80.0, 1e-10);
    let r = frac_pdf(x, &fp, 1e-8).unwrap();
    assert!((r.value - expected).abs() < 1e-7, "{} vs {expected}", r.value);
}

#[test]
fn log_likelihood_is_sum_of_logs() {
    let fp = FracParams::new(1.7, 0.4, 0.1, 1.0).unwrap();
    let data = [-1.2, 0.3, 2.5];
    let ll = log_likelihood(&data, &fp, 1e-8).unwrap();
    let direct: f64 = data
        .iter()
        .map(|&x| frac_pdf(x, &fp, 1e-8).unwrap().value.ln())
        .sum();
    assert_eq!(ll, direct);
}
