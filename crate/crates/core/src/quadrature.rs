//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Intervals live in a max-heap keyed on their error estimate; the worst one
//! is bisected until the summed error meets the tolerance or the subdivision
//! budget runs out. Caller-supplied breakpoints seed the initial partition so
//! narrow peaks are never straddled by a single coarse panel. A `+∞` upper
//! limit is handled by the map x = a + t/(1 − t).

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)] // published table, kept verbatim
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)] // published table, kept verbatim
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)] // published table, kept verbatim
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Integration settings.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 0.0,
            max_subdivisions: 4000,
        }
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
    pub subdivisions: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
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

fn kronrod(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kron += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kron * half;
    let error = ((kron - gauss) * half).abs();
    (value, error)
}

/// Integrates `f` over `[a, b]` (with `b` possibly `+∞`), splitting first at
/// every breakpoint that lies strictly inside the range.
pub fn integrate<F>(f: F, a: f64, b: f64, breakpoints: &[f64], opts: QuadratureOptions) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    integrate_dyn(&f, a, b, breakpoints, opts)
}

fn integrate_dyn(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    opts: QuadratureOptions,
) -> Result<Estimate> {
    if !(a <= b) || a.is_nan() {
        return Err(Error::Domain {
            what: "integration limits must satisfy a <= b",
            value: a,
        });
    }
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            abs_error: 0.0,
            subdivisions: 0,
            evaluations: 0,
        });
    }
    if b.is_infinite() {
        // Split at the largest finite breakpoint; map the tail onto [0, 1).
        let split = breakpoints
            .iter()
            .copied()
            .filter(|&x| x > a && x.is_finite())
            .fold(a, f64::max);
        let scale = (split - a).max(1.0);
        let head = if split > a {
            integrate_dyn(f, a, split, breakpoints, opts)?
        } else {
            Estimate {
                value: 0.0,
                abs_error: 0.0,
                subdivisions: 0,
                evaluations: 0,
            }
        };
        let mapped = |t: f64| {
            if t >= 1.0 {
                return 0.0;
            }
            let s = 1.0 - t;
            let v = f(split + scale * t / s);
            if v == 0.0 {
                0.0
            } else {
                v * scale / (s * s)
            }
        };
        let tail_opts = QuadratureOptions {
            abs_tol: opts.abs_tol.max(opts.rel_tol * head.value.abs()),
            ..opts
        };
        let tail = integrate_dyn(&mapped, 0.0, 1.0, &[], tail_opts)?;
        return Ok(Estimate {
            value: head.value + tail.value,
            abs_error: head.abs_error + tail.abs_error,
            subdivisions: head.subdivisions + tail.subdivisions,
            evaluations: head.evaluations + tail.evaluations,
        });
    }

    let mut cuts: Vec<f64> = breakpoints.iter().copied().filter(|&x| x > a && x < b).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut heap = BinaryHeap::new();
    let mut left = a;
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut evaluations = 0;
    for right in cuts.into_iter().chain(core::iter::once(b)) {
        let (value, error) = kronrod(f, left, right);
        evaluations += 15;
        total += value;
        total_err += error;
        heap.push(Panel {
            a: left,
            b: right,
            value,
            error,
        });
        left = right;
    }

    let mut subdivisions = 0;
    while total_err > opts.abs_tol.max(opts.rel_tol * total.abs()) {
        if subdivisions >= opts.max_subdivisions {
            return Err(Error::Integration {
                estimate: total,
                error: total_err,
                subdivisions,
            });
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        if worst.error == 0.0 {
            heap.push(worst);
            break;
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel no longer divisible in floating point; keep it as is.
            heap.push(Panel { error: 0.0, ..worst });
            total_err -= worst.error;
            continue;
        }
        let (v1, e1) = kronrod(f, worst.a, mid);
        let (v2, e2) = kronrod(f, mid, worst.b);
        evaluations += 30;
        subdivisions += 1;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
    }

    // Re-sum to shed the drift of the running updates.
    let (value, abs_error) = heap.iter().fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
    if !value.is_finite() {
        return Err(Error::NonIntegrable {
            reason: "integrand produced a non-finite value",
        });
    }
    Ok(Estimate {
        value,
        abs_error,
        subdivisions,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn polynomial_exact() {
        let est = integrate(|x| x * x * x - 2.0 * x, 0.0, 3.0, &[], QuadratureOptions::default()).unwrap();
        assert!((est.value - (81.0 / 4.0 - 9.0)).abs() < 1e-12);
    }

    #[test]
    fn narrow_lorentzian_with_breakpoints() {
        let w = 1e-6;
        let f = |x: f64| w / PI / ((x - 0.3) * (x - 0.3) + w * w);
        let bp = [0.3 - 50.0 * w, 0.3 - w, 0.3, 0.3 + w, 0.3 + 50.0 * w];
        let est = integrate(f, 0.0, 1.0, &bp, QuadratureOptions::default()).unwrap();
        let exact = (libm::atan(0.7 / w) + libm::atan(0.3 / w)) / PI;
        assert!((est.value - exact).abs() < 1e-9, "{}", est.value);
    }

    #[test]
    fn semi_infinite_range() {
        let est = integrate(
            |x| 1.0 / (1.0 + x * x),
            0.0,
            f64::INFINITY,
            &[1.0],
            QuadratureOptions::default(),
        )
        .unwrap();
        assert!((est.value - PI / 2.0).abs() < 1e-10);
        let est = integrate(|x| libm::exp(-x), 2.0, f64::INFINITY, &[], QuadratureOptions::default()).unwrap();
        assert!((est.value - libm::exp(-2.0)).abs() < 1e-12);
    }

    #[test]
    fn subdivision_cap_reports_error() {
        let opts = QuadratureOptions {
            rel_tol: 1e-14,
            abs_tol: 0.0,
            max_subdivisions: 3,
        };
        let err = integrate(|x: f64| libm::sin(1.0 / x), 1e-6, 1.0, &[], opts).unwrap_err();
        assert!(matches!(err, Error::Integration { subdivisions: 3, .. }));
    }

    #[test]
    fn empty_and_reversed_ranges() {
        assert_eq!(integrate(|x| x, 1.0, 1.0, &[], Default::default()).unwrap().value, 0.0);
        assert!(integrate(|x| x, 2.0, 1.0, &[], Default::default()).is_err());
    }
}
