//! The probability law of the random perimeter U_κ: closed-form expectation
//! (piecewise and unified), the large-κ series approximation, higher moments
//! by two independent quadrature routes, the distribution function via
//! monotone inversion of h, and the analytic density.

use std::f64::consts::{PI, TAU};

use crate::elliptic;
use crate::error::{Error, Result};
use crate::motion::{self, MotionConfig};
use crate::quadrature::{self, QuadratureSpec};
use crate::rootfind;

/// κ is treated as exactly 1 inside this band; the expectation there is the
/// stored limit constant 64r/9.
const UNIT_KAPPA_BAND: f64 = 1e-12;

/// Evaluable probability law of the random perimeter U_κ. The support is
/// [2πr, r·h(κ)] for κ > 0 and the point mass at 2πr for κ = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerimeterLaw {
    cfg: MotionConfig,
}

impl PerimeterLaw {
    pub fn new(cfg: MotionConfig) -> Self {
        Self { cfg }
    }

    pub fn cfg(&self) -> &MotionConfig {
        &self.cfg
    }

    /// Support [2πr, r·h(κ)] of the law.
    pub fn support(&self) -> (f64, f64) {
        let r = self.cfg.r();
        (TAU * r, r * motion::h(self.cfg.kappa()))
    }

    /// E[U_κ] by the piecewise closed forms:
    /// 2πr at κ = 0, (8r/9κ²)[(7κ²+1)E(κ) + (3κ⁴-2κ²-1)K(κ)] for κ < 1,
    /// 64r/9 at κ = 1, (8r/9κ)[(7κ²+1)E(1/κ) - 4(κ²-1)K(1/κ)] for κ > 1.
    /// The κ = 0 and κ = 1 values are stored limit constants.
    pub fn expectation(&self) -> f64 {
        let r = self.cfg.r();
        let kappa = self.cfg.kappa();
        if kappa == 0.0 {
            return TAU * r;
        }
        if (kappa - 1.0).abs() <= UNIT_KAPPA_BAND {
            return 64.0 * r / 9.0;
        }
        let k2 = kappa * kappa;
        if kappa < 1.0 {
            let (big_k, big_e) = ke(kappa);
            8.0 * r / (9.0 * k2)
                * ((7.0 * k2 + 1.0) * big_e + (3.0 * k2 * k2 - 2.0 * k2 - 1.0) * big_k)
        } else {
            let (big_k, big_e) = ke(1.0 / kappa);
            8.0 * r / (9.0 * kappa)
                * ((7.0 * k2 + 1.0) * big_e - 4.0 * (k2 - 1.0) * big_k)
        }
    }

    /// E[U_κ] by the single unified formula
    /// (4(κ+1)r/9κ²)[(7κ²+1)E(2√κ/(κ+1)) - (κ-1)²K(2√κ/(κ+1))],
    /// with the indeterminate points κ = 0 and κ = 1 served by the stored
    /// limit constants 2πr and 64r/9.
    pub fn expectation_unified(&self) -> f64 {
        let r = self.cfg.r();
        let kappa = self.cfg.kappa();
        if kappa == 0.0 {
            return TAU * r;
        }
        if (kappa - 1.0).abs() <= UNIT_KAPPA_BAND {
            return 64.0 * r / 9.0;
        }
        // Complement of 2 sqrt(kappa)/(kappa+1) is |kappa-1|/(kappa+1), exact.
        let kp = (kappa - 1.0).abs() / (kappa + 1.0);
        let (big_k, big_e) =
            elliptic::complete_ke_from_complement(kp).expect("kp in (0, 1) for kappa != 1");
        let k2 = kappa * kappa;
        4.0 * (kappa + 1.0) * r / (9.0 * k2)
            * ((7.0 * k2 + 1.0) * big_e - (kappa - 1.0).powi(2) * big_k)
    }

    /// The series approximation s(κ) = πr(4κ/3 + 1/κ - 1/16κ³) of E[U_κ]
    /// about κ = ∞.
    pub fn series_approx(&self) -> Result<f64> {
        let kappa = self.cfg.kappa();
        if !(kappa > 0.0) {
            return Err(Error::Domain {
                name: "kappa",
                value: kappa,
                domain: "(0, inf)",
            });
        }
        Ok(PI * self.cfg.r()
            * (4.0 * kappa / 3.0 + 1.0 / kappa - 1.0 / (16.0 * kappa.powi(3))))
    }

    /// E[U_κ^k] in units r^k by adaptive quadrature of the radial integral
    /// (2^{2k+1}/κ²) ∫₀^κ w (w+1)^k E^k(2√w/(w+1)) dw, whose integrand is
    /// 2 w h(w)^k.
    pub fn moment_quadrature(&self, k: u32, spec: &QuadratureSpec) -> Result<f64> {
        let kappa = self.check_moment_args(k)?;
        let est = quadrature::integrate_with_breaks(
            |w| 2.0 * w * motion::h(w).powi(k as i32),
            0.0,
            kappa,
            &[1.0],
            spec,
        )?;
        Ok(self.cfg.r().powi(k as i32) / (kappa * kappa) * est.value)
    }

    /// E[U_κ^k] via the integrated-by-parts distribution route
    /// r^k [h^k(κ) - (k/κ²) ∫_{2π}^{h(κ)} x^{k-1} w̃²(x) dx].
    ///
    /// The integral is evaluated in the w variable by the substitution
    /// x = h(w), which removes the square-root behaviour of the inversion
    /// at the lower limit; see [`Self::moment_via_cdf_direct`] for the
    /// direct x-space evaluation kept as a cross-check.
    pub fn moment_via_cdf(&self, k: u32, spec: &QuadratureSpec) -> Result<f64> {
        let kappa = self.check_moment_args(k)?;
        let est = quadrature::integrate_with_breaks(
            |w| motion::h(w).powi(k as i32 - 1) * w * w * motion::h_prime_lim(w),
            0.0,
            kappa,
            &[1.0],
            spec,
        )?;
        let h_kappa = motion::h(kappa);
        Ok(self.cfg.r().powi(k as i32)
            * (h_kappa.powi(k as i32) - k as f64 / (kappa * kappa) * est.value))
    }

    /// Direct x-space evaluation of the distribution-route moment, with
    /// w̃(x) from [`invert_h`] at every node. The inversion has infinite
    /// dw/dx at x = 2π, so this converges more slowly than
    /// [`Self::moment_via_cdf`]; it exists as an independent cross-check.
    pub fn moment_via_cdf_direct(&self, k: u32, spec: &QuadratureSpec) -> Result<f64> {
        let kappa = self.check_moment_args(k)?;
        let h_kappa = motion::h(kappa);
        let est = quadrature::integrate(
            |x| {
                let w = invert_h(x, kappa).expect("x inside [2pi, h(kappa)]");
                x.powi(k as i32 - 1) * w * w
            },
            TAU,
            h_kappa,
            spec,
        )?;
        Ok(self.cfg.r().powi(k as i32)
            * (h_kappa.powi(k as i32) - k as f64 / (kappa * kappa) * est.value))
    }

    fn check_moment_args(&self, k: u32) -> Result<f64> {
        if k < 1 {
            return Err(Error::Domain {
                name: "k",
                value: k as f64,
                domain: "[1, inf)",
            });
        }
        let kappa = self.cfg.kappa();
        if kappa == 0.0 {
            return Err(Error::Domain {
                name: "kappa",
                value: kappa,
                domain: "(0, inf)",
            });
        }
        Ok(kappa)
    }

    /// Distribution function G_κ(u) = w²(u)/κ² on the support, where w(u)
    /// solves r·h(w) = u. The κ = 0 law is the unit step at 2πr.
    pub fn cdf(&self, u: f64) -> f64 {
        let r = self.cfg.r();
        let kappa = self.cfg.kappa();
        if kappa == 0.0 {
            return if u >= TAU * r { 1.0 } else { 0.0 };
        }
        let (lo, hi) = self.support();
        if u < lo {
            0.0
        } else if u >= hi {
            1.0
        } else {
            let w = invert_h(u / r, kappa).expect("u/r inside [2pi, h(kappa)]");
            (w / kappa) * (w / kappa)
        }
    }

    /// Analytic density g_κ(u) = 2w / (κ² r h'(w)) on the open support.
    /// Endpoint inputs are errors: the left endpoint is a 0/0 limit (see
    /// [`Self::pdf_at_min_limit`]) and the density is zero beyond the right.
    pub fn pdf(&self, u: f64) -> Result<f64> {
        let r = self.cfg.r();
        let kappa = self.cfg.kappa();
        if kappa == 0.0 {
            return Err(Error::NoDensity {
                value: u,
                reason: "kappa = 0 law is a point mass at 2 pi r",
            });
        }
        let (lo, hi) = self.support();
        if !(u > lo && u < hi) {
            return Err(Error::NoDensity {
                value: u,
                reason: "density defined on the open support only",
            });
        }
        let w = invert_h(u / r, kappa)?;
        Ok(2.0 * w / (kappa * kappa * r * motion::h_prime_lim(w)))
    }

    /// One-sided limit of the density at the left endpoint u = 2πr,
    /// obtained by Richardson extrapolation of g at w = 1e-6 and 2e-6.
    pub fn pdf_at_min_limit(&self) -> Result<f64> {
        let r = self.cfg.r();
        let kappa = self.cfg.kappa();
        if kappa == 0.0 {
            return Err(Error::NoDensity {
                value: TAU * r,
                reason: "kappa = 0 law is a point mass at 2 pi r",
            });
        }
        let g = |w: f64| 2.0 * w / (kappa * kappa * r * motion::h_prime_lim(w));
        Ok(2.0 * g(1e-6) - g(2e-6))
    }
}

fn ke(k: f64) -> (f64, f64) {
    // k in (0, 1): both integrals exist.
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    elliptic::complete_ke_from_complement(kp).expect("kp in (0, 1)")
}

/// Solve h(w) = x for w in [0, w_max]. Unique by strict monotonicity of h.
///
/// Bracketed bisection to 1e-8 followed by Newton polishing with h'
/// (bisection alone when the iterate lands where h' is unavailable).
pub fn invert_h(x: f64, w_max: f64) -> Result<f64> {
    let hi = motion::h(w_max);
    // Tolerate endpoint roundoff without admitting genuinely external x.
    let slack = 1e-9 * hi.max(TAU);
    if !(x >= TAU - slack && x <= hi + slack) || x.is_nan() {
        return Err(Error::OutOfRange {
            value: x,
            lo: TAU,
            hi,
        });
    }
    if x <= TAU {
        return Ok(0.0);
    }
    if x >= hi {
        return Ok(w_max);
    }
    let f = |w: f64| motion::h(w) - x;
    let coarse = rootfind::bisect(f, 0.0, w_max, 1e-8)?;
    let w = rootfind::newton_polish(
        f,
        |w| {
            let d = motion::h_prime_lim(w);
            (d > 0.0).then_some(d)
        },
        coarse,
        0.0,
        w_max,
        1e-14,
    );
    Ok(w)
}

/// One row of the reference moment table: E[U_κ^k]/r^k for κ ∈ {2, 3},
/// k = 1..10, to 20 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceMoment {
    pub kappa: f64,
    pub k: u32,
    pub value: f64,
    pub value_string: &'static str,
}

/// The machine-readable golden fixture behind the moment acceptance suite.
pub fn reference_moments() -> Vec<ReferenceMoment> {
    const RAW: &str = include_str!("../data/perimeter_moments.csv");
    RAW.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let mut cols = line.split(',');
            let kappa = cols.next().expect("kappa column").parse().expect("kappa");
            let k = cols.next().expect("k column").parse().expect("k");
            let value_string = cols.next().expect("value column").trim();
            ReferenceMoment {
                kappa,
                k,
                value: value_string.parse().expect("value"),
                value_string,
            }
        })
        .collect()
}
