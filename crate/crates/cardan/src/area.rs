//! The probability law of the random area A_κ: closed-form moments,
//! variance and its extrema, the three-regime distribution function and
//! density, and the two independent numerical re-derivations of the moments
//! (radial quadrature and density route) used as internal cross-checks.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::motion::{self, MotionConfig};
use crate::quadrature::{self, QuadratureSpec};
use crate::rootfind;

/// Which piecewise branch of the distribution applies.
///
/// The boundary ratios κ = 1 and κ = √2 belong to both adjacent regimes and
/// evaluate identically under either; [`AreaLaw::with_regime`] accepts both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AreaRegime {
    /// κ = 0: all mass at πr².
    PointMass,
    /// 0 < κ ≤ 1.
    SubUnit,
    /// 1 ≤ κ ≤ √2.
    Mid,
    /// κ ≥ √2.
    High,
}

/// Evaluable probability law of the random area A_κ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaLaw {
    cfg: MotionConfig,
    regime: AreaRegime,
}

impl AreaLaw {
    pub fn new(cfg: MotionConfig) -> Self {
        let kappa = cfg.kappa();
        let regime = if kappa == 0.0 {
            AreaRegime::PointMass
        } else if kappa <= 1.0 {
            AreaRegime::SubUnit
        } else if kappa <= std::f64::consts::SQRT_2 {
            AreaRegime::Mid
        } else {
            AreaRegime::High
        };
        Self { cfg, regime }
    }

    /// Force a specific regime; only regimes consistent with κ are accepted
    /// (the boundary values κ = 1 and κ = √2 may carry either neighbour).
    pub fn with_regime(cfg: MotionConfig, regime: AreaRegime) -> Result<Self> {
        let kappa = cfg.kappa();
        let ok = match regime {
            AreaRegime::PointMass => kappa == 0.0,
            AreaRegime::SubUnit => kappa > 0.0 && kappa <= 1.0,
            AreaRegime::Mid => (1.0..=std::f64::consts::SQRT_2).contains(&kappa),
            AreaRegime::High => kappa >= std::f64::consts::SQRT_2,
        };
        if !ok {
            return Err(Error::Domain {
                name: "kappa",
                value: kappa,
                domain: "regime-consistent range",
            });
        }
        Ok(Self { cfg, regime })
    }

    pub fn cfg(&self) -> &MotionConfig {
        &self.cfg
    }

    pub fn regime(&self) -> AreaRegime {
        self.regime
    }

    /// The k-th moment E[A_κ^k] in units r^{2k}:
    /// π^k r^{2k} at κ = 0, and (π^k r^{2k}/(k+1)) · [1 ∓ (1 ∓ κ²)^{k+1}]/κ²
    /// on the two sides of κ = 1.
    pub fn moment(&self, k: u32) -> Result<f64> {
        if k < 1 {
            return Err(Error::Domain {
                name: "k",
                value: k as f64,
                domain: "[1, inf)",
            });
        }
        let kappa = self.cfg.kappa();
        let r2k = self.cfg.r().powi(2 * k as i32);
        let scale = PI.powi(k as i32) * r2k;
        if kappa == 0.0 {
            return Ok(scale);
        }
        let t = kappa * kappa;
        let value = if kappa <= 1.0 {
            // [1 - (1 - t)^{k+1}]/t expanded binomially: exact polynomial in
            // t, no cancellation as kappa -> 0.
            scale / (k + 1) as f64 * one_minus_pow_over_t(t, k + 1)
        } else {
            scale / (k + 1) as f64 * (1.0 + (t - 1.0).powi(k as i32 + 1)) / t
        };
        Ok(value)
    }

    /// Variance of A_κ in units r⁴: π²r⁴κ⁴/12 for κ ≤ 1 and
    /// π²r⁴[-1 - 1/κ⁴ + 2/κ² + κ⁴/12] for κ > 1; continuous at κ = 1.
    pub fn variance(&self) -> f64 {
        let kappa = self.cfg.kappa();
        let r4 = self.cfg.r().powi(4);
        let pi2 = PI * PI;
        if kappa <= 1.0 {
            pi2 * r4 * kappa.powi(4) / 12.0
        } else {
            let k2 = kappa * kappa;
            let k4 = k2 * k2;
            pi2 * r4 * (-1.0 - 1.0 / k4 + 2.0 / k2 + k4 / 12.0)
        }
    }

    /// Distribution function F_κ(x) = P[A_κ ≤ x]. Pieces are left-closed,
    /// right-open exactly as the regime formulas are stated; the κ = 0 law
    /// is the unit step at πr².
    pub fn cdf(&self, x: f64) -> f64 {
        let r = self.cfg.r();
        let kappa = self.cfg.kappa();
        let pir2 = PI * r * r;
        let k2 = kappa * kappa;
        match self.regime {
            AreaRegime::PointMass => {
                if x >= pir2 {
                    1.0
                } else {
                    0.0
                }
            }
            AreaRegime::SubUnit => {
                if x < pir2 * (1.0 - k2) {
                    0.0
                } else if x < pir2 {
                    1.0 - (1.0 - x / pir2) / k2
                } else {
                    1.0
                }
            }
            AreaRegime::Mid => {
                if x < 0.0 {
                    0.0
                } else if x < pir2 * (k2 - 1.0) {
                    2.0 * x / (pir2 * k2)
                } else if x < pir2 {
                    1.0 - (1.0 - x / pir2) / k2
                } else {
                    1.0
                }
            }
            AreaRegime::High => {
                if x < 0.0 {
                    0.0
                } else if x < pir2 {
                    2.0 * x / (pir2 * k2)
                } else if x < pir2 * (k2 - 1.0) {
                    (1.0 + x / pir2) / k2
                } else {
                    1.0
                }
            }
        }
    }

    /// Piecewise-constant density f_κ(x); errors for the κ = 0 point mass.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        let r = self.cfg.r();
        let kappa = self.cfg.kappa();
        let pir2 = PI * r * r;
        let k2 = kappa * kappa;
        let level = 1.0 / (pir2 * k2);
        Ok(match self.regime {
            AreaRegime::PointMass => {
                return Err(Error::NoDensity {
                    value: x,
                    reason: "kappa = 0 law is a point mass at pi r^2",
                })
            }
            AreaRegime::SubUnit => {
                if x >= pir2 * (1.0 - k2) && x < pir2 {
                    level
                } else {
                    0.0
                }
            }
            AreaRegime::Mid => {
                if x >= 0.0 && x < pir2 * (k2 - 1.0) {
                    2.0 * level
                } else if x >= pir2 * (k2 - 1.0) && x <= pir2 {
                    level
                } else {
                    0.0
                }
            }
            AreaRegime::High => {
                if x >= 0.0 && x < pir2 {
                    2.0 * level
                } else if x >= pir2 && x <= pir2 * (k2 - 1.0) {
                    level
                } else {
                    0.0
                }
            }
        })
    }

    /// Support [lo, hi] of the law, the interval where the CDF rises.
    pub fn support(&self) -> (f64, f64) {
        let r = self.cfg.r();
        let kappa = self.cfg.kappa();
        let pir2 = PI * r * r;
        let k2 = kappa * kappa;
        match self.regime {
            AreaRegime::PointMass => (pir2, pir2),
            AreaRegime::SubUnit => (pir2 * (1.0 - k2), pir2),
            AreaRegime::Mid => (0.0, pir2),
            AreaRegime::High => (0.0, pir2 * (k2 - 1.0)),
        }
    }

    /// Knots of the piecewise density, interior to the support.
    fn density_knots(&self) -> Vec<f64> {
        let r = self.cfg.r();
        let kappa = self.cfg.kappa();
        let pir2 = PI * r * r;
        let k2 = kappa * kappa;
        match self.regime {
            AreaRegime::PointMass | AreaRegime::SubUnit => vec![],
            AreaRegime::Mid => vec![pir2 * (k2 - 1.0)],
            AreaRegime::High => vec![pir2],
        }
    }

    /// Moments by numerical integration of x^k against the density.
    pub fn moment_via_density(&self, k: u32, spec: &QuadratureSpec) -> Result<f64> {
        if k < 1 {
            return Err(Error::Domain {
                name: "k",
                value: k as f64,
                domain: "[1, inf)",
            });
        }
        if self.regime == AreaRegime::PointMass {
            return Err(Error::NoDensity {
                value: 0.0,
                reason: "kappa = 0 law has no density",
            });
        }
        let (lo, hi) = self.support();
        let knots = self.density_knots();
        let est = quadrature::integrate_with_breaks(
            |x| x.powi(k as i32) * self.pdf(x).unwrap_or(0.0),
            lo,
            hi,
            &knots,
            spec,
        )?;
        Ok(est.value)
    }

    /// Moments by radial quadrature: (2/κ²) ∫₀^κ Ã(w)^k w dw with
    /// Ã(w) = πr²|1 - w²|.
    pub fn moment_via_radial_quadrature(&self, k: u32, spec: &QuadratureSpec) -> Result<f64> {
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
        let cfg = self.cfg;
        let est = quadrature::integrate_with_breaks(
            |w| motion::area_of_point(&cfg, cfg.r() * w).powi(k as i32) * w,
            0.0,
            kappa,
            &[1.0],
            spec,
        )?;
        Ok(2.0 / (kappa * kappa) * est.value)
    }
}

/// [1 - (1 - t)^{k1}]/t as the exact binomial polynomial
/// Σ_{j=1}^{k1} C(k1, j)(-1)^{j+1} t^{j-1}, evaluated by Horner.
fn one_minus_pow_over_t(t: f64, k1: u32) -> f64 {
    // Coefficients c_j = (-1)^{j+1} C(k1, j), j = 1..k1.
    let mut acc = 0.0;
    let mut binom = 1.0f64; // C(k1, j) built downward from j = k1.
    for j in (1..=k1).rev() {
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        acc = acc * t + sign * binom;
        binom = binom * j as f64 / (k1 - j + 1) as f64;
    }
    acc
}

/// Location ∜2 and value (√2 - 1)π of the global minimum of E[A_κ], in
/// units r².
pub fn expectation_minimum() -> (f64, f64) {
    (2.0f64.powf(0.25), (std::f64::consts::SQRT_2 - 1.0) * PI)
}

/// The local extrema (κ₁, Var/r⁴) and (κ₂, Var/r⁴) of the variance on
/// κ > 1, recovered by root-finding on the derivative of the κ > 1 branch:
/// d Var/dκ = π²[4/κ⁵ - 4/κ³ + κ³/3].
pub fn variance_extrema() -> ((f64, f64), (f64, f64)) {
    let dvar = |kappa: f64| {
        4.0 / kappa.powi(5) - 4.0 / kappa.powi(3) + kappa.powi(3) / 3.0
    };
    let k1 = rootfind::bisect(dvar, 1.001, 1.2, 1e-13).expect("sign change in [1.001, 1.2]");
    let k2 = rootfind::bisect(dvar, 1.2, 1.5, 1e-13).expect("sign change in [1.2, 1.5]");
    let var_at = |kappa: f64| {
        AreaLaw::new(MotionConfig::new(1.0, kappa).unwrap()).variance()
    };
    ((k1, var_at(k1)), (k2, var_at(k2)))
}
