//! Complete elliptic integrals of the first and second kind, their
//! derivatives, Landen transformations, and the closed-form antiderivatives
//! used by the perimeter expectation.
//!
//! All arguments are the *modulus* k, never the parameter m = k²; ecosystems
//! differ on this, so mind the convention when cross-checking against other
//! libraries (scipy, for instance, takes m).
//!
//! K and E are computed by arithmetic–geometric mean iteration, which
//! reaches machine precision in a handful of iterations with no quadrature
//! dependency.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

fn check_modulus(k: f64, domain: &'static str, hi_ok: bool) -> Result<()> {
    let in_range = k >= 0.0 && if hi_ok { k <= 1.0 } else { k < 1.0 };
    if !in_range || k.is_nan() {
        return Err(Error::Domain {
            name: "k",
            value: k,
            domain,
        });
    }
    Ok(())
}

/// AGM iteration producing (K, E) from the modulus and its complement.
///
/// Taking the complement as a separate argument lets callers near k = 1
/// supply an exactly-computed k' and keep full precision where
/// sqrt(1 - k^2) would cancel.
fn agm_ke(k: f64, kp: f64) -> (f64, f64) {
    debug_assert!(kp > 0.0);
    let mut a = 1.0f64;
    let mut b = kp;
    let mut c = k;
    let mut sum = 0.5 * c * c;
    let mut weight = 1.0f64;

    for _ in 0..64 {
        c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
        sum += weight * c * c;
        weight *= 2.0;
        if c.abs() <= f64::EPSILON * a {
            break;
        }
    }

    let big_k = FRAC_PI_2 / a;
    let big_e = big_k * (1.0 - sum);
    (big_k, big_e)
}

fn complement(k: f64) -> f64 {
    ((1.0 - k) * (1.0 + k)).sqrt()
}

/// Complete elliptic integral of the first kind K(k).
///
/// K(1) is infinite and reported as [`Error::DivergentK`]; callers needing
/// the k -> 1 limit must use their own limit constants.
pub fn complete_k(k: f64) -> Result<f64> {
    check_modulus(k, "[0, 1)", true)?;
    if k == 1.0 {
        return Err(Error::DivergentK);
    }
    if k == 0.0 {
        return Ok(FRAC_PI_2);
    }
    Ok(agm_ke(k, complement(k)).0)
}

/// Complete elliptic integral of the second kind E(k). E(1) = 1.
pub fn complete_e(k: f64) -> Result<f64> {
    check_modulus(k, "[0, 1]", true)?;
    if k == 0.0 {
        return Ok(FRAC_PI_2);
    }
    if k == 1.0 {
        return Ok(1.0);
    }
    Ok(agm_ke(k, complement(k)).1)
}

/// (K, E) from the complementary modulus k' = sqrt(1 - k²).
///
/// For k' near 0 (k near 1) this is far more accurate than going through
/// k itself, since k' can often be formed exactly by the caller while
/// 1 - k² cancels.
pub fn complete_ke_from_complement(kp: f64) -> Result<(f64, f64)> {
    if !(kp > 0.0 && kp <= 1.0) || kp.is_nan() {
        return Err(Error::Domain {
            name: "kp",
            value: kp,
            domain: "(0, 1]",
        });
    }
    let k = ((1.0 - kp) * (1.0 + kp)).sqrt();
    if k == 0.0 {
        return Ok((FRAC_PI_2, FRAC_PI_2));
    }
    Ok(agm_ke(k, kp))
}

/// dE/dk = (E - K)/k. At k = 0 the analytic limit 0 is returned.
pub fn deriv_e(k: f64) -> Result<f64> {
    check_modulus(k, "[0, 1)", false)?;
    if k == 0.0 {
        return Ok(0.0);
    }
    let (big_k, big_e) = agm_ke(k, complement(k));
    Ok((big_e - big_k) / k)
}

/// dK/dk = [E - (1 - k²)K] / (k (1 - k²)). Defined on 0 < k < 1 only.
pub fn deriv_k(k: f64) -> Result<f64> {
    if !(k > 0.0 && k < 1.0) || k.is_nan() {
        return Err(Error::Domain {
            name: "k",
            value: k,
            domain: "(0, 1)",
        });
    }
    let kp2 = (1.0 - k) * (1.0 + k);
    let (big_k, big_e) = agm_ke(k, kp2.sqrt());
    Ok((big_e - kp2 * big_k) / (k * kp2))
}

/// E(2√k/(1+k)) computed via the descending-Landen right-hand side
/// [2E(k) - (1 - k²)K(k)] / (1 + k).
pub fn landen_e(k: f64) -> Result<f64> {
    check_modulus(k, "[0, 1)", false)?;
    if k == 0.0 {
        return Ok(FRAC_PI_2);
    }
    let kp2 = (1.0 - k) * (1.0 + k);
    let (big_k, big_e) = agm_ke(k, kp2.sqrt());
    Ok((2.0 * big_e - kp2 * big_k) / (1.0 + k))
}

/// K(2√k/(1+k)) computed via the Landen identity (1 + k)K(k).
pub fn landen_k(k: f64) -> Result<f64> {
    check_modulus(k, "[0, 1)", false)?;
    Ok((1.0 + k) * complete_k(k)?)
}

/// The closed-form antiderivatives behind the perimeter expectation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntiderivativeKind {
    /// ∫ E(k)·k dk = [(1 + k²)E - (1 - k²)K] / 3
    EK,
    /// ∫ K(k)·k dk = E - (1 - k²)K
    KK,
    /// ∫ K(k)·k³ dk = [(4 + k²)E - (1 - k²)(4 + 3k²)K] / 9
    KK3,
    /// ∫ E(k)/k⁴ dk = [2(k² - 2)E + (1 - k²)K] / (9k³)
    EOverK4,
    /// ∫ K(k)/k² dk = -E(k)/k
    KOverK2,
}

/// Evaluate the chosen antiderivative at k; definite integrals are
/// differences of two calls.
pub fn antiderivative(kind: AntiderivativeKind, k: f64) -> Result<f64> {
    if !(k > 0.0 && k < 1.0) || k.is_nan() {
        return Err(Error::Domain {
            name: "k",
            value: k,
            domain: "(0, 1)",
        });
    }
    let kp2 = (1.0 - k) * (1.0 + k);
    let (big_k, big_e) = agm_ke(k, kp2.sqrt());
    let k2 = k * k;
    Ok(match kind {
        AntiderivativeKind::EK => ((1.0 + k2) * big_e - kp2 * big_k) / 3.0,
        AntiderivativeKind::KK => big_e - kp2 * big_k,
        AntiderivativeKind::KK3 => ((4.0 + k2) * big_e - kp2 * (4.0 + 3.0 * k2) * big_k) / 9.0,
        AntiderivativeKind::EOverK4 => {
            (2.0 * (k2 - 2.0) * big_e + kp2 * big_k) / (9.0 * k2 * k)
        }
        AntiderivativeKind::KOverK2 => -big_e / k,
    })
}

/// Closed form for ∫_{1/κ}^{1} K(v)/v⁴ dv, κ > 1:
/// (1/9)[-5 + κ(κ² + 4)E(1/κ) + 2κ(κ² - 1)K(1/κ)].
pub fn integral_k_over_v4(kappa: f64) -> Result<f64> {
    if !(kappa > 1.0) || kappa.is_nan() {
        return Err(Error::Domain {
            name: "kappa",
            value: kappa,
            domain: "(1, inf)",
        });
    }
    let inv = 1.0 / kappa;
    let (big_k, big_e) = agm_ke(inv, complement(inv));
    let k2 = kappa * kappa;
    Ok((-5.0 + kappa * (k2 + 4.0) * big_e + 2.0 * kappa * (k2 - 1.0) * big_k) / 9.0)
}
