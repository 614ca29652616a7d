//! Globally adaptive Gauss–Kronrod (10/21-point) quadrature.
//!
//! The rule is open, so the integrand is never evaluated at an interval
//! endpoint. The panel with the largest error estimate is always bisected
//! next.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

pub const DEFAULT_MAX_SUBDIVISIONS: usize = 2000;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub subdivisions: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    aux: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 21-point Kronrod panel with the embedded 10-point Gauss estimate.
/// The second component of `f` is integrated alongside with the Kronrod
/// weights (absolute values) and does not drive refinement.
fn gk21<F: Fn(f64) -> (f64, f64)>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let (fc, ac) = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut aux = WGK[10] * ac.abs();
    let mut gauss = 0.0;
    let mut abs_sum = kronrod.abs();
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(10).enumerate() {
        let dx = half * x;
        let (f1, a1) = f(center - dx);
        let (f2, a2) = f(center + dx);
        kronrod += w * (f1 + f2);
        aux += w * (a1.abs() + a2.abs());
        abs_sum += w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let mut error = ((kronrod - gauss) * half).abs();
    let floor = 50.0 * f64::EPSILON * abs_sum * half.abs();
    if floor > error {
        error = floor;
    }
    if !value.is_finite() || !error.is_finite() {
        error = f64::INFINITY;
    }
    Panel {
        a,
        b,
        value,
        error,
        aux: aux * half.abs(),
    }
}

/// Integrates `f` over `(a, b)` to absolute tolerance `tol`.
pub fn adaptive_quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> QuadResult {
    adaptive_quad_points(f, &[a, b], tol, DEFAULT_MAX_SUBDIVISIONS)
}

/// Integrates `f` over `(points[0], points[last])`, starting from the
/// partition given by the sorted `points`.
pub fn adaptive_quad_points<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    tol: f64,
    max_subdivisions: usize,
) -> QuadResult {
    adaptive_quad_aux(|x| (f(x), 0.0), points, tol, max_subdivisions).0
}

/// Like [`adaptive_quad_points`] for an integrand returning `(value, aux)`;
/// also returns the integral of `|aux|` over the final partition.
pub fn adaptive_quad_aux<F: Fn(f64) -> (f64, f64)>(
    f: F,
    points: &[f64],
    tol: f64,
    max_subdivisions: usize,
) -> (QuadResult, f64) {
    assert!(points.len() >= 2, "need at least one interval");
    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        if w[1] > w[0] {
            heap.push(gk21(&f, w[0], w[1]));
        }
    }
    let mut subdivisions = 0;
    loop {
        let (value, error, aux) = totals(&heap);
        if error <= tol {
            return (
                QuadResult {
                    value,
                    abs_error_estimate: error,
                    subdivisions,
                    converged: true,
                },
                aux,
            );
        }
        let worst = match heap.peek() {
            Some(p) => *p,
            None => {
                return (
                    QuadResult {
                        value: 0.0,
                        abs_error_estimate: 0.0,
                        subdivisions,
                        converged: true,
                    },
                    0.0,
                )
            }
        };
        let mid = 0.5 * (worst.a + worst.b);
        let unsplittable = !(mid > worst.a && mid < worst.b)
            || (worst.b - worst.a) <= 4.0 * f64::EPSILON * worst.a.abs().max(worst.b.abs());
        if subdivisions >= max_subdivisions || unsplittable {
            return (
                QuadResult {
                    value,
                    abs_error_estimate: error,
                    subdivisions,
                    converged: false,
                },
                aux,
            );
        }
        heap.pop();
        heap.push(gk21(&f, worst.a, mid));
        heap.push(gk21(&f, mid, worst.b));
        subdivisions += 1;
    }
}

fn totals(heap: &BinaryHeap<Panel>) -> (f64, f64, f64) {
    let mut value = 0.0;
    let mut error = 0.0;
    let mut aux = 0.0;
    for p in heap.iter() {
        value += p.value;
        error += p.error;
        aux += p.aux;
    }
    (value, error, aux)
}
