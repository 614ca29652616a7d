//! Data behind the reference plots, one CSV per panel.

use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use strictstable::closed::{cdf_alpha1, density_alpha1};
use strictstable::integral::{integral_cdf, integral_pdf, locate_peak, pdf_integrand};
use strictstable::series::{
    cdf_remainder_bound, cdf_series, pdf_remainder_bound, pdf_series, threshold_x_cdf, threshold_x_pdf,
};
use strictstable::{pdf, EvalOptions, StableParams};

use crate::output::{csv_err, fmt17};
use crate::CliError;

const NS: [usize; 5] = [3, 10, 30, 100, 300];
const QUAD_TOL: f64 = 1e-13;

#[derive(Clone, Copy)]
enum Kind {
    Pdf,
    Cdf,
}

fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn write_csv(path: &Path, header: &[String], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn exact(kind: Kind, x: f64, alpha: f64, theta: f64) -> Result<f64, CliError> {
    Ok(match (kind, alpha == 1.0) {
        (Kind::Pdf, true) => density_alpha1(x, theta)?,
        (Kind::Cdf, true) => cdf_alpha1(x, theta)?,
        (Kind::Pdf, false) => integral_pdf(x, alpha, theta, QUAD_TOL)?.value(),
        (Kind::Cdf, false) => integral_cdf(x, alpha, theta, QUAD_TOL)?.value(),
    })
}

/// Exact curve, partial sums, absolute errors and remainder bounds for each `N`.
fn series_panel(
    dir: &Path,
    name: &str,
    kind: Kind,
    alpha: f64,
    theta: f64,
    eps: f64,
    x_max: f64,
) -> Result<(), CliError> {
    let xs = log_grid(1e-3, x_max, 200);
    let mut header = vec!["x".to_string(), "exact".to_string()];
    for n in NS {
        header.push(format!("series_N{n}"));
        header.push(format!("abs_error_N{n}"));
        header.push(format!("bound_N{n}"));
    }
    let rows: Result<Vec<Vec<String>>, CliError> = xs
        .par_iter()
        .map(|&x| {
            let e = exact(kind, x, alpha, theta)?;
            let mut row = vec![fmt17(x), fmt17(e)];
            for n in NS {
                let (s, b) = match kind {
                    Kind::Pdf => (
                        pdf_series(x, alpha, theta, n)?.value,
                        pdf_remainder_bound(x, alpha, n),
                    ),
                    Kind::Cdf => (
                        cdf_series(x, alpha, theta, n)?.value,
                        cdf_remainder_bound(x, alpha, n),
                    ),
                };
                row.extend([fmt17(s), fmt17((s - e).abs()), fmt17(b)]);
            }
            Ok(row)
        })
        .collect();
    write_csv(&dir.join(format!("{name}.csv")), &header, &rows?)?;

    let thresholds: Vec<Vec<String>> = NS
        .iter()
        .map(|&n| {
            let t = match kind {
                Kind::Pdf => threshold_x_pdf(alpha, eps, n),
                Kind::Cdf => threshold_x_cdf(alpha, eps, n),
            };
            vec![n.to_string(), fmt17(t), fmt17(eps)]
        })
        .collect();
    write_csv(
        &dir.join(format!("{name}_thresholds.csv")),
        &["N".into(), "x_eps".into(), "eps".into()],
        &thresholds,
    )
}

/// Integrand of the density representation against `phi` for several `x`.
fn integrand_panel(dir: &Path) -> Result<(), CliError> {
    let (alpha, theta) = (1.1, 0.0);
    let xs = [0.5, 0.1, 0.01];
    let mut phis: Vec<f64> = (1..400).map(|i| FRAC_PI_2 * i as f64 / 400.0).collect();
    for &x in &xs {
        if let Some(p0) = locate_peak(x, alpha, theta) {
            phis.push(p0);
            for k in 0..=40 {
                let d = 10f64.powf(-10.0 + 0.25 * k as f64);
                phis.extend([p0 - d, p0 + d].into_iter().filter(|&p| p > 0.0 && p < FRAC_PI_2));
            }
        }
    }
    phis.sort_by(f64::total_cmp);
    phis.dedup();
    let mut header = vec!["phi".to_string()];
    header.extend(xs.iter().map(|x| format!("integrand_x{x}")));
    let rows: Vec<Vec<String>> = phis
        .iter()
        .map(|&phi| {
            let mut row = vec![fmt17(phi)];
            row.extend(xs.iter().map(|&x| fmt17(pdf_integrand(phi, x, alpha, theta))));
            row
        })
        .collect();
    write_csv(&dir.join("fig6_integrand.csv"), &header, &rows)
}

/// Forced quadrature against the 10-term series and the hybrid evaluator at small `x`.
fn small_x_panel(dir: &Path, name: &str, alphas: &[f64], theta: f64) -> Result<(), CliError> {
    let (eps, n) = (1e-5, 10);
    let xs = log_grid(1e-14, 10.0, 150);
    let mut header = vec!["x".to_string()];
    for a in alphas {
        for col in [
            "integral",
            "integral_error",
            "integral_converged",
            "series_N10",
            "hybrid",
            "hybrid_method",
        ] {
            header.push(format!("{col}_alpha{a}"));
        }
    }
    let rows: Result<Vec<Vec<String>>, CliError> = xs
        .par_iter()
        .map(|&x| {
            let mut row = vec![fmt17(x)];
            for &alpha in alphas {
                let q = integral_pdf(x, alpha, theta, 1e-12)?;
                let s = pdf_series(x, alpha, theta, n)?;
                let params = StableParams::standard(alpha, theta)?;
                let h = pdf(x, &params, &EvalOptions::default().with_epsilon(eps))?;
                row.extend([
                    fmt17(q.value()),
                    fmt17(q.quad.abs_error_estimate),
                    q.quad.converged.to_string(),
                    fmt17(s.value),
                    fmt17(h.value),
                    h.method.to_string(),
                ]);
            }
            Ok(row)
        })
        .collect();
    write_csv(&dir.join(format!("{name}.csv")), &header, &rows?)?;
    let thresholds: Vec<Vec<String>> = alphas
        .iter()
        .map(|&a| {
            vec![
                fmt17(a),
                n.to_string(),
                fmt17(threshold_x_pdf(a, eps, n)),
                fmt17(eps),
            ]
        })
        .collect();
    write_csv(
        &dir.join(format!("{name}_thresholds.csv")),
        &["alpha".into(), "N".into(), "x_eps".into(), "eps".into()],
        &thresholds,
    )
}

pub fn write_all(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    let eps = 1e-5;
    series_panel(dir, "fig1_pdf_alpha0.7", Kind::Pdf, 0.7, 0.0, eps, 5.0)?;
    series_panel(dir, "fig2_pdf_alpha1.2", Kind::Pdf, 1.2, 0.0, eps, 5.0)?;
    series_panel(dir, "fig3_pdf_alpha1", Kind::Pdf, 1.0, 0.0, eps, 1.5)?;
    series_panel(dir, "fig4_cdf_alpha0.6", Kind::Cdf, 0.6, 0.5, eps, 5.0)?;
    series_panel(dir, "fig5_cdf_alpha1.2", Kind::Cdf, 1.2, 0.5, eps, 5.0)?;
    series_panel(dir, "fig5_cdf_alpha1", Kind::Cdf, 1.0, 0.5, eps, 1.5)?;
    integrand_panel(dir)?;
    small_x_panel(dir, "fig7_small_x", &[0.3, 0.6, 0.9], 0.9)?;
    small_x_panel(dir, "fig8_small_x", &[1.1, 1.4, 1.7], 0.1)?;
    Ok(())
}
