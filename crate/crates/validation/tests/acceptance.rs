//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use common::oracle::{integrate, oracle_pdf};
use strictstable::closed::{cdf_alpha1, density_alpha1};
use strictstable::series::{cdf_remainder_bound, zolotarev_bound};
use strictstable::special::gamma;
use strictstable::{
    cdf, cdf_series, choose_terms_certified, frac_pdf, frac_pdf_grid, integral_cdf, integral_pdf, pdf,
    pdf_remainder_bound, pdf_series, theta_max, threshold_x_cdf, threshold_x_pdf, EvalOptions, FracParams,
    Method, MethodChoice, StableParams, TermChoice, Warning,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn within(elapsed: Duration, limit: f64) -> bool {
    elapsed.as_secs_f64() < limit
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let n = 300;
    let xs = linspace(-0.95, 0.95, 50);
    let mut max_pdf = 0.0f64;
    let mut max_cdf = 0.0f64;
    let mut max_inner = 0.0f64;
    let mut remainder_bound_ok = true;
    let mut certified_ok = true;
    for theta in [-0.9, 0.0, 0.5] {
        for &x in &xs {
            let sp = pdf_series(x, 1.0, theta, n).unwrap();
            let sc = cdf_series(x, 1.0, theta, n).unwrap();
            let ep = (sp.value - density_alpha1(x, theta).unwrap()).abs();
            let ec = (sc.value - cdf_alpha1(x, theta).unwrap()).abs();
            max_pdf = max_pdf.max(ep);
            max_cdf = max_cdf.max(ec);
            if x.abs() <= 0.9 {
                max_inner = max_inner.max(ep).max(ec);
            }
            remainder_bound_ok &= ep <= sp.remainder_bound.max(1e-12) && ec <= sc.remainder_bound.max(1e-12);
            certified_ok &= ep <= sp.error_bound.max(1e-12) && ec <= sc.error_bound.max(1e-12);
        }
    }
    let el = t.elapsed();
    outcome(
        max_pdf <= 1e-12 && max_cdf <= 1e-12 && within(el, 1.0),
        format!(
            "max|pdf_series - closed| = {max_pdf:.2e}, max|cdf_series - closed| = {max_cdf:.2e} (limit 1e-12); \
             |x|<=0.9 subset max = {max_inner:.2e}; error <= max(remainder bound, 1e-12) everywhere: {remainder_bound_ok}; \
             error <= max(certified bound, 1e-12) everywhere: {certified_ok}; {el:.2?}"
        ),
    )
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let eps = 1e-3;
    let mut cells = Vec::new();
    let mut skipped = 0;
    for alpha in [0.6, 0.9, 1.2, 1.7] {
        for theta in [0.0, 0.5] {
            if theta > theta_max(alpha) {
                skipped += 1;
                continue;
            }
            for n in [3usize, 10, 30, 100] {
                cells.push((alpha, theta, n));
            }
        }
    }
    // per cell: (points, within remainder bound, worst margin, within certified bound)
    let results: Vec<(usize, usize, f64, usize)> = cells
        .par_iter()
        .map(|&(alpha, theta, n)| {
            let (mut total, mut ok, mut worst, mut certified) = (0, 0, f64::NEG_INFINITY, 0);
            let xp = threshold_x_pdf(alpha, eps, n);
            let xc = threshold_x_cdf(alpha, eps, n);
            for k in 1..=20 {
                let x = xp * k as f64 / 20.0;
                let s = pdf_series(x, alpha, theta, n).unwrap();
                let q = integral_pdf(x, alpha, theta, 1e-12).unwrap().value();
                let pairs = [(s, q), {
                    let x = xc * k as f64 / 20.0;
                    let s = cdf_series(x, alpha, theta, n).unwrap();
                    (s, integral_cdf(x, alpha, theta, 1e-12).unwrap().value())
                }];
                for (s, q) in pairs {
                    let d = (s.value - q).abs();
                    let excess = d - (s.remainder_bound + 1e-11);
                    worst = worst.max(excess);
                    total += 1;
                    ok += usize::from(excess <= 0.0);
                    certified += usize::from(d <= s.error_bound + 1e-11);
                }
            }
            (total, ok, worst, certified)
        })
        .collect();
    let total: usize = results.iter().map(|r| r.0).sum();
    let ok: usize = results.iter().map(|r| r.1).sum();
    let worst = results.iter().map(|r| r.2).fold(f64::NEG_INFINITY, f64::max);
    let certified: usize = results.iter().map(|r| r.3).sum();
    let el = t.elapsed();
    outcome(
        ok == total && within(el, 30.0),
        format!(
            "{ok}/{total} pdf+cdf points satisfy |series - integral| <= bound + 1e-11 \
             (worst excess {worst:.2e}); {certified}/{total} within the certified error bound; \
             {skipped} (alpha, theta) pair skipped as inadmissible; {el:.2?}"
        ),
    )
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let alpha = rng.gen_range(0.3..=2.0);
        let eps = 10f64.powf(rng.gen_range(-15.0..=-1.0));
        let n = rng.gen_range(1..=300usize);
        let rp = pdf_remainder_bound(threshold_x_pdf(alpha, eps, n), alpha, n) / eps - 1.0;
        let rc = cdf_remainder_bound(threshold_x_cdf(alpha, eps, n), alpha, n) / eps - 1.0;
        worst = worst.max(rp.abs()).max(rc.abs());
    }
    let el = t.elapsed();
    outcome(
        worst <= 1e-12 && within(el, 0.1),
        format!(
            "1000 draws alpha in [0.3, 2], eps in [1e-15, 1e-1], N in [1, 300]: \
             max relative deviation {worst:.2e} (limit 1e-12, pdf and cdf); {el:.2?}"
        ),
    )
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let eps = 1e-5;
    let x07: Vec<f64> = [3usize, 10, 30, 100, 300]
        .iter()
        .map(|&n| threshold_x_pdf(0.7, eps, n))
        .collect();
    let low_ok = x07[0] < x07[1] && x07[1] < x07[2] && x07[3] > x07[4];
    let x12: Vec<f64> = [3usize, 10, 30, 100, 300]
        .iter()
        .map(|&n| threshold_x_pdf(1.2, eps, n))
        .collect();
    let high_ok = x12.windows(2).all(|w| w[0] < w[1]);
    let limit = threshold_x_cdf(1.0, eps, 300);
    let formula = (PI * eps * 301.0).powf(1.0 / 301.0);
    let limit_ok = (limit - 1.0).abs() < 0.02 && (limit - formula).abs() < 1e-14;
    let el = t.elapsed();
    outcome(
        low_ok && high_ok && limit_ok && within(el, 0.1),
        format!(
            "alpha=0.7 x_eps = {x07:.4?}; alpha=1.2 x_eps = {x12:.4?}; \
             alpha=1 cdf x_eps(N=300) = {limit:.6}; {el:.2?}"
        ),
    )
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let mut cases = Vec::new();
    for x in [0.5, 1.0, 2.0, 5.0] {
        for alpha in [0.6, 1.3, 1.8] {
            for theta in [0.0, 0.5 * theta_max(alpha)] {
                cases.push((x, alpha, theta));
            }
        }
    }
    let rows: Vec<(f64, usize)> = cases
        .par_iter()
        .map(|&(x, alpha, theta)| {
            let o = oracle_pdf(x, alpha, theta, 1e-12);
            let q = integral_pdf(x, alpha, theta, 1e-12).unwrap().value();
            let mut worst = (o - q).abs();
            let mut certified = 0;
            if let TermChoice::Achieved(n) = choose_terms_certified(x, alpha, theta, 1e-8, 500) {
                let s = pdf_series(x, alpha, theta, n).unwrap();
                if s.rounding_error <= 1e-8 {
                    certified = 1;
                    worst = worst.max((s.value - o).abs()).max((s.value - q).abs());
                }
            }
            (worst, certified)
        })
        .collect();
    let worst = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let certified: usize = rows.iter().map(|r| r.1).sum();
    let el = t.elapsed();
    outcome(
        worst <= 1e-7 && within(el, 10.0),
        format!(
            "{} points, series certified at {certified}: max pairwise difference {worst:.2e} (limit 1e-7); {el:.2?}",
            cases.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let opts = EvalOptions::default();
    let gauss = StableParams::standard(2.0, 0.0).unwrap();
    let levy = StableParams::standard(0.5, 1.0).unwrap();
    let target = (-0.25f64).exp() / (2.0 * PI.sqrt());
    let d1 = (pdf(1.0, &gauss, &opts).unwrap().value - target).abs();
    let li = pdf(1.0, &levy, &opts.with_method(MethodChoice::Integral)).unwrap();
    let d2 = (li.value - target).abs();
    let g3 = cdf(1.0, &gauss, &opts).unwrap().value;
    let d3 = (g3 - 0.760_249_9).abs();
    let d3_exact = (g3 - 0.5 * libm::erfc(-0.5)).abs();
    let d4 = (cdf(1.0, &levy, &opts).unwrap().value - libm::erfc(0.5)).abs();
    let el = t.elapsed();
    outcome(
        d1 <= 1e-10 && d2 <= 1e-8 && li.method == Method::Integral && d3 <= 1e-8 && d4 <= 1e-8,
        format!(
            "|pdf(1;2,0) - e^(-1/4)/(2 sqrt pi)| = {d1:.1e}; integral-route |pdf(1;1/2,1) - ...| = {d2:.1e}; \
             |cdf(1;2,0) - 0.7602499| = {d3:.1e} (value {g3:.12}, vs exact Phi(1/sqrt 2) {d3_exact:.1e}); |cdf(1;1/2,1) - erfc(1/2)| = {d4:.1e}; {el:.2?}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let params = StableParams::standard(0.9, 0.9).unwrap();
    let opts = EvalOptions::default().with_epsilon(1e-5);
    let h = pdf(1e-8, &params, &opts).unwrap();
    let series_ok = h.method == Method::Series && h.error_estimate <= 1e-5;
    let q = pdf(1e-8, &params, &opts.with_method(MethodChoice::Integral)).unwrap();
    let deviation = (q.value - h.value).abs();
    let integral_fails = q.warnings.contains(&Warning::NotConverged) || deviation > q.error_estimate;
    let el = t.elapsed();
    outcome(
        series_ok && integral_fails,
        format!(
            "hybrid: method {} with bound {:.1e}; forced integral: warnings {:?}, |integral - series| = {deviation:.2e} \
             vs claimed {:.2e}; {el:.2?}",
            h.method, h.error_estimate, q.warnings, q.error_estimate
        ),
    )
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(8);
    let mut violations = 0;
    let mut min_gap = f64::INFINITY;
    for _ in 0..500 {
        let alpha = rng.gen_range(0.3..1.0);
        let beta = rng.gen_range(0.01..=theta_max(alpha));
        let n = rng.gen_range(1..=50usize);
        let x = rng.gen_range(0.01..=1.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let ours = pdf_remainder_bound(x, alpha, n);
        let z = zolotarev_bound(x, alpha, beta, n);
        let gap = (z - ours) / z;
        min_gap = min_gap.min(gap);
        if !(ours <= z) || gap <= 1e-12 {
            violations += 1;
        }
    }
    let mut equal_worst = 0.0f64;
    for _ in 0..100 {
        let alpha = rng.gen_range(0.3..1.0);
        let n = rng.gen_range(1..=50usize);
        let x = rng.gen_range(0.01..=1.0);
        let ours = pdf_remainder_bound(x, alpha, n);
        let z = zolotarev_bound(x, alpha, 0.0, n);
        equal_worst = equal_worst.max(((z - ours) / z).abs());
    }
    let el = t.elapsed();
    outcome(
        violations == 0 && equal_worst <= 1e-12,
        format!(
            "500 draws with 0 < beta: {violations} violations, smallest relative gap {min_gap:.2e}; \
             100 draws with beta = 0: max relative difference {equal_worst:.1e}; {el:.2?}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    let fp = FracParams::new(2.0, 0.5, 0.0, 1.0).unwrap();
    let expected = 0.5 / gamma(0.75);
    let q0 = frac_pdf(0.0, &fp, 1e-7).unwrap().value;

    // E[Y^(1/4)] under the one-sided law with beta = 1/2, from its closed-form
    // density, in the variable v = ln y
    let levy = |y: f64| (-0.25 / y).exp() / (2.0 * PI.sqrt() * y.powf(1.5));
    let f = |v: f64| {
        let y = v.exp();
        y * y.powf(0.25) * levy(y)
    };
    let (moment, _) = integrate(&f, -8.0, 140.0, 1e-14);
    let moment_exact = PI.sqrt() / gamma(0.75);
    let from_moment = moment / (2.0 * PI.sqrt());

    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let edges = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 50.0];
    let (gx, gw) = gauss_legendre_16();
    for w in edges.windows(2) {
        for sign in [-1.0, 1.0] {
            let (c, h) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
            for (x, wt) in gx.iter().zip(&gw) {
                nodes.push(sign * (c + h * x));
                weights.push(h * wt);
            }
        }
    }
    let values = frac_pdf_grid(&nodes, &fp, 1e-8);
    let mass: f64 = values
        .iter()
        .zip(&weights)
        .map(|(v, w)| v.as_ref().unwrap().value * w)
        .sum();
    let el = t.elapsed();
    let d0 = (q0 - expected).abs();
    let dm = (moment - moment_exact).abs();
    let dq = (from_moment - expected).abs();
    outcome(
        d0 <= 1e-5 && dm <= 1e-10 && dq <= 1e-10 && (mass - 1.0).abs() <= 1e-3 && within(el, 60.0),
        format!(
            "|q(0) - 1/(2 Gamma(3/4))| = {d0:.1e}; independent E[Y^(1/4)] = {moment:.12} (|diff| {dm:.1e}), \
             g(0) E[Y^(1/4)] off by {dq:.1e}; mass on [-50, 50] = {mass:.6}; {el:.2?}"
        ),
    )
}

/// 16-point Gauss-Legendre rule on [-1, 1].
fn gauss_legendre_16() -> (Vec<f64>, Vec<f64>) {
    let half = [
        (0.095_012_509_837_637_44, 0.189_450_610_455_068_5),
        (0.281_603_550_779_258_9, 0.182_603_415_044_923_6),
        (0.458_016_777_657_227_4, 0.169_156_519_395_002_5),
        (0.617_876_244_402_643_7, 0.149_595_988_816_576_7),
        (0.755_404_408_355_003, 0.124_628_971_255_533_9),
        (0.865_631_202_387_831_7, 0.095_158_511_682_492_78),
        (0.944_575_023_073_232_6, 0.062_253_523_938_647_89),
        (0.989_400_934_991_649_9, 0.027_152_459_411_754_09),
    ];
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for (x, w) in half {
        xs.extend([-x, x]);
        ws.extend([w, w]);
    }
    (xs, ws)
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("alpha = 1 series vs closed forms", criterion_1),
        ("remainder-bound soundness", criterion_2),
        ("threshold contract", criterion_3),
        ("threshold regimes", criterion_4),
        ("cross-representation agreement", criterion_5),
        ("closed-form anchors", criterion_6),
        ("small-x rescue", criterion_7),
        ("bound vs classical bound", criterion_8),
        ("fractionally stable density", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!("criterion {:>2} {tag} {name}: {}", i + 1, o.detail);
    }
    println!(
        "criterion 10 SKIP data fitting: reference data set not available; covered by criterion 9 and the fractionally stable tests"
    );
    println!(
        "acceptance: {} passed, {failed} failed, 1 skipped",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
