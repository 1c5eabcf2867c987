//! Deterministic kinematics of the elliptic (Cardan) motion: a circle of
//! radius r rolls inside a fixed circle of radius 2r, and every point of the
//! moving plane traces an ellipse centred at the origin.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::elliptic;
use crate::error::{Error, Result};

/// Fixed-plane scale of the motion: rolling-circle radius r and disk ratio
/// κ = R/r of the random-point disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionConfig {
    r: f64,
    kappa: f64,
}

impl MotionConfig {
    pub fn new(r: f64, kappa: f64) -> Result<Self> {
        if !(r > 0.0) || r.is_nan() {
            return Err(Error::Domain {
                name: "r",
                value: r,
                domain: "(0, inf)",
            });
        }
        if !(kappa >= 0.0) || kappa.is_nan() {
            return Err(Error::Domain {
                name: "kappa",
                value: kappa,
                domain: "[0, inf)",
            });
        }
        Ok(Self { r, kappa })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Radius R = κr of the disk the random point is drawn from.
    pub fn disk_radius(&self) -> f64 {
        self.kappa * self.r
    }
}

/// A point of the moving plane, stored in polar coordinates relative to the
/// moving-frame origin. Angles are radians, normalized to [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MovingPoint {
    rho: f64,
    alpha: f64,
}

impl MovingPoint {
    pub fn from_polar(rho: f64, alpha: f64) -> Result<Self> {
        if !(rho >= 0.0) || rho.is_nan() {
            return Err(Error::Domain {
                name: "rho",
                value: rho,
                domain: "[0, inf)",
            });
        }
        Ok(Self {
            rho,
            alpha: normalize_angle(alpha),
        })
    }

    pub fn from_cartesian(xi: f64, eta: f64) -> Self {
        Self {
            rho: xi.hypot(eta),
            alpha: normalize_angle(eta.atan2(xi)),
        }
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn xi(&self) -> f64 {
        self.rho * self.alpha.cos()
    }

    pub fn eta(&self) -> f64 {
        self.rho * self.alpha.sin()
    }
}

fn normalize_angle(a: f64) -> f64 {
    let mut a = a.rem_euclid(TAU);
    if a >= TAU {
        a -= TAU;
    }
    a
}

/// Semi-axes and orientation of a generated ellipse. The centre is always
/// the fixed-frame origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseGeometry {
    pub semi_major: f64,
    pub semi_minor: f64,
    /// Angle between the x-axis and the major axis, radians in [0, 2π).
    pub orientation: f64,
}

impl EllipseGeometry {
    /// Residual of the rotated-ellipse implicit equation at (x, y);
    /// zero for points on the ellipse. Degenerate ellipses (semi_minor = 0)
    /// use the limiting segment form.
    pub fn implicit_residual(&self, x: f64, y: f64) -> f64 {
        let c = self.orientation.cos();
        let s = self.orientation.sin();
        let u = c * x + s * y;
        let v = -s * x + c * y;
        if self.semi_minor == 0.0 {
            // Degenerate double segment along the major axis.
            v * v + (u.abs() - u.abs().min(self.semi_major)).powi(2)
        } else {
            let a2 = self.semi_major * self.semi_major;
            let b2 = self.semi_minor * self.semi_minor;
            // Scale by b^2 so the residual carries area units.
            b2 * (u * u / a2 + v * v / b2 - 1.0)
        }
    }
}

/// A circle given by centre and radius, used for the centrodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: (f64, f64),
    pub radius: f64,
}

/// A point of the parametric trace of a generated ellipse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub phi: f64,
    pub x: f64,
    pub y: f64,
}

/// The ellipse generated by the moving-plane point `p`: semi-axes
/// (r + ρ, |r - ρ|), major axis at angle α/2. Degenerate cases (ρ = r,
/// collapsing to a double segment of length 4r) are legal values.
pub fn ellipse_of_point(cfg: &MotionConfig, p: &MovingPoint) -> EllipseGeometry {
    EllipseGeometry {
        semi_major: cfg.r + p.rho,
        semi_minor: (cfg.r - p.rho).abs(),
        orientation: normalize_angle(p.alpha / 2.0),
    }
}

/// Parametric trace: x = r cos φ + ρ cos(φ - α), y = r sin φ - ρ sin(φ - α).
pub fn trace(cfg: &MotionConfig, p: &MovingPoint, phi: f64) -> TracePoint {
    TracePoint {
        phi: normalize_angle(phi),
        x: cfg.r * phi.cos() + p.rho * (phi - p.alpha).cos(),
        y: cfg.r * phi.sin() - p.rho * (phi - p.alpha).sin(),
    }
}

/// The fixed centrode (centre O, radius 2r) and moving centrode
/// (instantaneously at centre Ω = (r, 0) for φ = 0, radius r).
pub fn centrodes(cfg: &MotionConfig) -> (Circle, Circle) {
    (
        Circle {
            center: (0.0, 0.0),
            radius: 2.0 * cfg.r,
        },
        Circle {
            center: (cfg.r, 0.0),
            radius: cfg.r,
        },
    )
}

/// Area enclosed by the ellipse of a point at distance ρ from Ω:
/// π|r² - ρ²|, continuous and zero at ρ = r.
pub fn area_of_point(cfg: &MotionConfig, rho: f64) -> f64 {
    debug_assert!(rho >= 0.0);
    PI * (cfg.r * cfg.r - rho * rho).abs()
}

/// Normalized perimeter h(w) = 4(w + 1) E(2√w / (w + 1)); the perimeter of
/// the ellipse of a point at distance wr from Ω is r·h(w). Strictly
/// increasing, h(0) = 2π, h(1) = 8.
pub fn h(w: f64) -> f64 {
    debug_assert!(w >= 0.0);
    // k' = |w - 1|/(w + 1) is exact; going through the complement keeps
    // full precision where k = 2 sqrt(w)/(w + 1) rounds to 1.
    let kp = (w - 1.0).abs() / (w + 1.0);
    let e = if kp == 0.0 {
        1.0
    } else if kp == 1.0 {
        FRAC_PI_2
    } else {
        elliptic::complete_ke_from_complement(kp)
            .expect("kp in (0, 1) by construction")
            .1
    };
    4.0 * (w + 1.0) * e
}

/// Perimeter u(ρ) = r·h(ρ/r) of the ellipse generated at distance ρ.
pub fn perimeter_of_point(cfg: &MotionConfig, rho: f64) -> f64 {
    cfg.r * h(rho / cfg.r)
}

/// dh/dw via the chain rule on k(w) = 2√w/(w + 1):
/// h'(w) = 4E(k) + 4(w + 1)·(E - K)/k · dk/dw.
///
/// Errors at w = 0 (dk/dw blows up; the one-sided limit of h' is 0) and at
/// w = 1 (K diverges; the one-sided limits are both 4). Callers that need
/// those points must use the limits explicitly; see [`h_prime_lim`].
pub fn h_prime(w: f64) -> Result<f64> {
    if !(w > 0.0) || w.is_nan() {
        return Err(Error::Domain {
            name: "w",
            value: w,
            domain: "(0, inf) \\ {1}",
        });
    }
    if w == 1.0 {
        return Err(Error::Domain {
            name: "w",
            value: w,
            domain: "(0, inf) \\ {1}",
        });
    }
    Ok(h_prime_lim(w))
}

/// Like [`h_prime`] but with the finite limits filled in at w = 0 and w = 1
/// (0 and 4 respectively). Used internally by quadrature and the perimeter
/// density, where the integrand must be total.
pub fn h_prime_lim(w: f64) -> f64 {
    debug_assert!(w >= 0.0);
    if w == 0.0 {
        return 0.0;
    }
    if w == 1.0 {
        // lim_{w->1} h'(w) = 4: the log divergence of K is killed by the
        // (1 - w) factor of dk/dw.
        return 4.0;
    }
    let kp = (w - 1.0).abs() / (w + 1.0);
    let (big_k, big_e) =
        elliptic::complete_ke_from_complement(kp).expect("kp in (0, 1) by construction");
    let k = 2.0 * w.sqrt() / (w + 1.0);
    let dk_dw = (1.0 - w) / (w.sqrt() * (w + 1.0) * (w + 1.0));
    4.0 * big_e + 4.0 * (w + 1.0) * ((big_e - big_k) / k) * dk_dw
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn cfg(r: f64, kappa: f64) -> MotionConfig {
        MotionConfig::new(r, kappa).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(MotionConfig::new(0.0, 1.0).is_err());
        assert!(MotionConfig::new(-1.0, 1.0).is_err());
        assert!(MotionConfig::new(1.0, -0.5).is_err());
        assert!(MotionConfig::new(1.0, 0.0).is_ok());
    }

    #[test]
    fn polar_cartesian_consistency() {
        let p = MovingPoint::from_polar(1.5, 2.0).unwrap();
        let q = MovingPoint::from_cartesian(p.xi(), p.eta());
        assert!((p.rho() - q.rho()).abs() < 1e-12);
        assert!((p.alpha() - q.alpha()).abs() < 1e-12);
    }

    #[test]
    fn ellipse_special_cases() {
        let c = cfg(1.0, 1.0);
        // rho = 0: circle of radius r.
        let circle = ellipse_of_point(&c, &MovingPoint::from_polar(0.0, 0.3).unwrap());
        assert_eq!(circle.semi_major, 1.0);
        assert_eq!(circle.semi_minor, 1.0);
        // rho = r: double segment, total length 4r.
        let seg = ellipse_of_point(&c, &MovingPoint::from_polar(1.0, 0.0).unwrap());
        assert_eq!(seg.semi_major, 2.0);
        assert_eq!(seg.semi_minor, 0.0);
    }

    #[test]
    fn ellipse_direct_formula() {
        let c = cfg(1.0, 3.0);
        let e = ellipse_of_point(&c, &MovingPoint::from_polar(2.0, PI).unwrap());
        assert_eq!(e.semi_major, 3.0);
        assert_eq!(e.semi_minor, 1.0);
        assert!((e.orientation - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn trace_matches_cartesian_form() {
        let c = cfg(1.0, 2.0);
        let p = MovingPoint::from_polar(1.3, 0.8).unwrap();
        let (xi, eta) = (p.xi(), p.eta());
        for i in 0..17 {
            let phi = i as f64 * TAU / 17.0;
            let t = trace(&c, &p, phi);
            let x2 = c.r() * phi.cos() + xi * phi.cos() + eta * phi.sin();
            let y2 = c.r() * phi.sin() + eta * phi.cos() - xi * phi.sin();
            assert!((t.x - x2).abs() < 1e-12);
            assert!((t.y - y2).abs() < 1e-12);
        }
    }

    #[test]
    fn trace_lies_on_ellipse() {
        let c = cfg(1.0, 2.0);
        let p = MovingPoint::from_polar(1.7, 2.4).unwrap();
        let e = ellipse_of_point(&c, &p);
        for i in 0..23 {
            let phi = i as f64 * TAU / 23.0;
            let t = trace(&c, &p, phi);
            assert!(
                e.implicit_residual(t.x, t.y).abs() < 1e-10,
                "phi = {phi}: residual {}",
                e.implicit_residual(t.x, t.y)
            );
        }
    }

    #[test]
    fn trace_at_origin_point() {
        let c = cfg(2.0, 1.0);
        let p = MovingPoint::from_polar(0.0, 0.0).unwrap();
        let t = trace(&c, &p, 0.0);
        assert_eq!((t.x, t.y), (2.0, 0.0));
    }

    #[test]
    fn centrode_radii() {
        let (fixed, moving) = centrodes(&cfg(1.0, 1.0));
        assert_eq!(fixed.radius, 2.0);
        assert_eq!(moving.radius, 1.0);
        let (fixed, moving) = centrodes(&cfg(2.0, 1.0));
        assert_eq!(fixed.radius, 4.0);
        assert_eq!(moving.radius, 2.0);
        assert_eq!(fixed.radius / moving.radius, 2.0);
    }

    #[test]
    fn area_formula() {
        let c = cfg(1.0, 2.0);
        assert!((area_of_point(&c, 0.0) - PI).abs() < 1e-15);
        assert_eq!(area_of_point(&c, 1.0), 0.0);
        assert!((area_of_point(&c, 2.0) - 3.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn h_anchor_values() {
        assert!((h(0.0) - TAU).abs() < 1e-15);
        assert!((h(1.0) - 8.0).abs() < 1e-15);
    }

    #[test]
    fn h_strictly_increasing() {
        let mut prev = h(0.0);
        for i in 1..=400 {
            let w = i as f64 * 0.25;
            let next = h(w);
            assert!(next > prev, "h not increasing at w = {w}");
            prev = next;
        }
    }

    #[test]
    fn scaling_laws() {
        let unit = cfg(1.0, 1.0);
        let scaled = cfg(3.0, 1.0);
        let rho = 0.7;
        assert!(
            (area_of_point(&scaled, 3.0 * rho) - 9.0 * area_of_point(&unit, rho)).abs() < 1e-12
        );
        assert!(
            (perimeter_of_point(&scaled, 3.0 * rho) - 3.0 * perimeter_of_point(&unit, rho)).abs()
                < 1e-12
        );
    }

    #[test]
    fn perimeter_at_centre_is_circle() {
        let c = cfg(2.5, 1.0);
        assert!((perimeter_of_point(&c, 0.0) - TAU * 2.5).abs() < 1e-12);
    }

    #[test]
    fn h_prime_domain() {
        assert!(h_prime(0.0).is_err());
        assert!(h_prime(1.0).is_err());
        assert!(h_prime(-0.5).is_err());
        assert!(h_prime(0.5).is_ok());
    }

    #[test]
    fn h_prime_matches_finite_differences() {
        for &w in &[0.3f64, 0.5, 0.9, 1.1, 2.0, 5.0] {
            let step = 1e-6 * w.max(1.0);
            let fd = (h(w + step) - h(w - step)) / (2.0 * step);
            let an = h_prime(w).unwrap();
            assert!(
                (an - fd).abs() <= 1e-6 * fd.abs(),
                "w = {w}: analytic {an}, fd {fd}"
            );
        }
    }

    #[test]
    fn h_prime_limits() {
        // Numeric approach to 0 at w -> 0+.
        let fd = (h(2e-7) - h(1e-7)) / 1e-7;
        assert!(fd.abs() < 2e-3);
        assert_eq!(h_prime_lim(0.0), 0.0);
        // One-sided values straddle the limit 4 at w = 1.
        assert!((h_prime_lim(1.0 - 1e-9) - 4.0).abs() < 1e-7);
        assert!((h_prime_lim(1.0 + 1e-9) - 4.0).abs() < 1e-7);
    }

    #[test]
    fn congruence_in_alpha() {
        let c = cfg(1.0, 2.0);
        let a = ellipse_of_point(&c, &MovingPoint::from_polar(0.6, 0.1).unwrap());
        let b = ellipse_of_point(&c, &MovingPoint::from_polar(0.6, 4.9).unwrap());
        assert_eq!(a.semi_major, b.semi_major);
        assert_eq!(a.semi_minor, b.semi_minor);
    }
}
