//! Adaptive Gauss–Kronrod quadrature.
//!
//! A 7/15-point Gauss–Kronrod rule is applied per panel; the panel with the
//! largest error estimate is bisected until the combined estimate meets the
//! requested tolerance or the subdivision budget is exhausted.

use crate::error::{Error, Result};

/// Tolerance and budget contract for all numerical integration and
/// root-finding in this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol > 0.0) {
            return Err(Error::Domain {
                name: "abs_tol",
                value: abs_tol,
                domain: "(0, inf)",
            });
        }
        if !(rel_tol > 0.0) {
            return Err(Error::Domain {
                name: "rel_tol",
                value: rel_tol,
                domain: "(0, inf)",
            });
        }
        if max_subdivisions < 1 {
            return Err(Error::Domain {
                name: "max_subdivisions",
                value: max_subdivisions as f64,
                domain: "[1, inf)",
            });
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        })
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

/// Integral estimate together with its error bound.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: f64,
    pub error_bound: f64,
}

// 15-point Kronrod abscissae (positive half, descending).
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

// Kronrod weights matching XGK.
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Embedded 7-point Gauss weights (odd Kronrod indices).
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss–Kronrod pass over [a, b]. Endpoints are never evaluated.
fn kronrod_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Estimate {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut res_abs = kronrod.abs();

    let mut fv = [0.0f64; 15];
    fv[7] = fc;

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let value = kronrod * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();

    // QUADPACK-style error rescaling.
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }

    Estimate {
        value,
        error_bound: err,
    }
}

struct Panel {
    a: f64,
    b: f64,
    est: Estimate,
}

/// Adaptively integrate `f` over [a, b].
///
/// Returns [`Error::BudgetExhausted`] carrying the best estimate when the
/// subdivision budget runs out before the tolerance is met.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error_bound: 0.0,
        });
    }

    let mut panels = vec![Panel {
        a,
        b,
        est: kronrod_panel(&f, a, b),
    }];

    for _ in 0..spec.max_subdivisions {
        let total: f64 = panels.iter().map(|p| p.est.value).sum();
        let err: f64 = panels.iter().map(|p| p.est.error_bound).sum();
        if err <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
            return Ok(Estimate {
                value: total,
                error_bound: err,
            });
        }

        // Split the worst panel.
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|(_, p), (_, q)| {
                p.est
                    .error_bound
                    .partial_cmp(&q.est.error_bound)
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("panel list is never empty");
        let Panel { a, b, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // Interval no longer splittable in f64; accept what we have.
            panels.push(Panel {
                a,
                b,
                est: kronrod_panel(&f, a, b),
            });
            break;
        }
        panels.push(Panel {
            a,
            b: mid,
            est: kronrod_panel(&f, a, mid),
        });
        panels.push(Panel {
            a: mid,
            b,
            est: kronrod_panel(&f, mid, b),
        });
    }

    let total: f64 = panels.iter().map(|p| p.est.value).sum();
    let err: f64 = panels.iter().map(|p| p.est.error_bound).sum();
    if err <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
        Ok(Estimate {
            value: total,
            error_bound: err,
        })
    } else {
        Err(Error::BudgetExhausted {
            value: total,
            error_bound: err,
        })
    }
}

/// Integrate a piecewise-smooth function by splitting at the given interior
/// break points first, so no Kronrod node straddles a kink.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let mut edges = vec![a];
    for &x in breaks {
        if x > a && x < b {
            edges.push(x);
        }
    }
    edges.push(b);

    let mut value = 0.0;
    let mut error_bound = 0.0;
    for pair in edges.windows(2) {
        let est = integrate(&f, pair[0], pair[1], spec)?;
        value += est.value;
        error_bound += est.error_bound;
    }
    Ok(Estimate { value, error_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let spec = QuadratureSpec::default();
        let est = integrate(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, &spec).unwrap();
        // antiderivative x^4/4 - x^2 + x -> 4 - 4 + 2 = 2
        assert!((est.value - 2.0).abs() < 1e-13);
    }

    #[test]
    fn sin_over_period() {
        let spec = QuadratureSpec::default();
        let est = integrate(f64::sin, 0.0, std::f64::consts::PI, &spec).unwrap();
        assert!((est.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_carries_estimate() {
        let tight = QuadratureSpec::new(1e-300, 1e-300, 4).unwrap();
        match integrate(|x| (1.0 / (x + 1e-3)).sin(), 0.0, 1.0, &tight) {
            Err(Error::BudgetExhausted { value, error_bound }) => {
                assert!(value.is_finite());
                assert!(error_bound > 0.0);
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn invalid_spec_rejected() {
        assert!(QuadratureSpec::new(0.0, 1e-12, 100).is_err());
        assert!(QuadratureSpec::new(1e-12, -1.0, 100).is_err());
        assert!(QuadratureSpec::new(1e-12, 1e-12, 0).is_err());
    }

    #[test]
    fn breaks_split_kinks() {
        let spec = QuadratureSpec::default();
        let est = integrate_with_breaks(|x: f64| x.abs(), -1.0, 1.0, &[0.0], &spec).unwrap();
        assert!((est.value - 1.0).abs() < 1e-13);
    }
}
