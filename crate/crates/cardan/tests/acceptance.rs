//! Acceptance gate. Each criterion prints a single PASS/FAIL line; a FAIL
//! line is followed by the panicking assertion that names the offending
//! case. Run with `--nocapture` to see the lines for passing criteria.

use std::f64::consts::{PI, SQRT_2, TAU};
use std::time::Instant;

use cardan::monte_carlo::{self, Quantity};
use cardan::perimeter::{invert_h, reference_moments};
use cardan::quadrature::{self, QuadratureSpec};
use cardan::{area, elliptic, motion, AreaLaw, MotionConfig, PerimeterLaw};

fn verdict(label: &str, ok: bool) {
    println!("{}: {}", if ok { "PASS" } else { "FAIL" }, label);
    assert!(ok, "{label}");
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

fn cfg(kappa: f64) -> MotionConfig {
    MotionConfig::new(1.0, kappa).unwrap()
}

#[test]
fn criterion_1_table_reproduction_both_routes() {
    let spec = QuadratureSpec::default();
    let start = Instant::now();
    let mut worst = 0.0f64;
    for m in reference_moments() {
        let law = PerimeterLaw::new(cfg(m.kappa));
        let a = law.moment_quadrature(m.k, &spec).unwrap();
        let b = law.moment_via_cdf(m.k, &spec).unwrap();
        worst = worst.max(rel_err(a, m.value)).max(rel_err(b, m.value));
        assert!(
            rel_err(a, m.value) <= 1e-9 && rel_err(b, m.value) <= 1e-9,
            "kappa = {}, k = {}: routes {a}, {b} vs table {}",
            m.kappa,
            m.k,
            m.value
        );
    }
    let elapsed = start.elapsed();
    verdict(
        &format!(
            "criterion 1: 20 table moments via both routes, max rel err {worst:.2e}, {:.1}s",
            elapsed.as_secs_f64()
        ),
        worst <= 1e-9 && elapsed.as_secs() <= 60,
    );
}

#[test]
fn criterion_2_expectation_limits_and_unified_form() {
    let at_zero = PerimeterLaw::new(cfg(0.0)).expectation();
    let at_one = PerimeterLaw::new(cfg(1.0)).expectation();
    let limits_exact = at_zero == TAU && at_one == 64.0 / 9.0;

    let mut worst = 0.0f64;
    for i in 0..50 {
        // 25 points in (0,1), 25 in (1,5); none at the seam.
        let kappa = if i < 25 {
            0.02 + 0.96 * i as f64 / 24.0
        } else {
            1.1 + 3.8 * (i - 25) as f64 / 24.0
        };
        let law = PerimeterLaw::new(cfg(kappa));
        worst = worst.max(rel_err(law.expectation(), law.expectation_unified()));
    }
    verdict(
        &format!(
            "criterion 2: E[U_0]=2\u{3c0}r and E[U_1]=64r/9 exact; piecewise vs unified max rel err {worst:.2e}"
        ),
        limits_exact && worst <= 1e-12,
    );
}

#[test]
fn criterion_3_area_moment_three_way_agreement() {
    let spec = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for &kappa in &[0.25f64, 0.5, 1.0, 1.1, SQRT_2, 2.0, 5.0] {
        let law = AreaLaw::new(cfg(kappa));
        for k in 1..=6 {
            let closed = law.moment(k).unwrap();
            let radial = law.moment_via_radial_quadrature(k, &spec).unwrap();
            let density = law.moment_via_density(k, &spec).unwrap();
            let err = rel_err(radial, closed).max(rel_err(density, closed));
            worst = worst.max(err);
            assert!(
                err <= 1e-9,
                "kappa = {kappa}, k = {k}: closed {closed}, radial {radial}, density {density}"
            );
        }
    }
    verdict(
        &format!("criterion 3: area moments agree three ways, max rel err {worst:.2e}"),
        worst <= 1e-9,
    );
}

#[test]
fn criterion_4_variance_and_expectation_constants() {
    let ((k1, v1), (k2, v2)) = area::variance_extrema();
    let (kappa_min, value_min) = area::expectation_minimum();
    let ok = (k1 - 1.06840).abs() < 5e-6
        && (k2 - 1.30621).abs() < 5e-6
        && (v1 - 0.920036).abs() <= 0.920036 * 5e-7
        && (v2 - 0.703487).abs() <= 0.703487 * 5e-7
        && (kappa_min - 1.18921).abs() < 5e-6
        && (value_min - 1.30129).abs() < 5e-6;
    verdict(
        &format!(
            "criterion 4: variance extrema ({k1:.5}, {v1:.6}), ({k2:.5}, {v2:.6}); expectation minimum ({kappa_min:.5}, {value_min:.5})"
        ),
        ok,
    );
}

#[test]
fn criterion_5_series_error_table() {
    let targets = [(1.0, -2.29222e-2), (2.0, -5.44238e-4), (10.0, -1.64009e-7)];
    let mut worst = 0.0f64;
    for (kappa, want) in targets {
        let law = PerimeterLaw::new(cfg(kappa));
        let diff = law.expectation() - law.series_approx().unwrap();
        worst = worst.max(rel_err(diff, want));
        assert!(
            rel_err(diff, want) <= 5e-6,
            "kappa = {kappa}: difference {diff:e}, want {want:e}"
        );
    }
    verdict(
        &format!("criterion 5: series error table matches, max rel err {worst:.2e}"),
        worst <= 5e-6,
    );
}

#[test]
fn criterion_6_distribution_sanity() {
    let spec = QuadratureSpec::default();
    let mut ok = true;

    for &kappa in &[0.5f64, 1.0, 1.2, SQRT_2, 2.0, 5.0] {
        // Area CDF: monotone, bounded, continuous across regime knots.
        let alaw = AreaLaw::new(cfg(kappa));
        let (lo, hi) = alaw.support();
        let mut prev = -0.1;
        for i in 0..=400 {
            let x = lo - 0.5 + (hi - lo + 1.0) * i as f64 / 400.0;
            let f = alaw.cdf(x);
            ok &= (0.0..=1.0).contains(&f) && f >= prev;
            prev = f;
        }
        let k2 = kappa * kappa;
        let knots: Vec<f64> = if kappa <= 1.0 {
            vec![PI * (1.0 - k2), PI]
        } else if kappa <= SQRT_2 {
            vec![PI * (k2 - 1.0), PI]
        } else {
            vec![PI, PI * (k2 - 1.0)]
        };
        for knot in knots {
            let below = alaw.cdf(knot - 1e-9);
            let at = alaw.cdf(knot);
            // The density is bounded by 2/(pi kappa^2 min(1, kappa^2)), so a
            // 1e-9 step can move a continuous CDF by at most ~3e-9 here.
            ok &= (at - below).abs() <= 3.0 * 1e-9 / (PI * k2.min(1.0)) + 1e-12;
        }

        // Perimeter CDF monotone and bounded; endpoints exact.
        let plaw = PerimeterLaw::new(cfg(kappa));
        let (ulo, uhi) = plaw.support();
        let mut prev = -0.1;
        for i in 0..=400 {
            let u = ulo - 0.5 + (uhi - ulo + 1.0) * i as f64 / 400.0;
            let g = plaw.cdf(u);
            ok &= (0.0..=1.0).contains(&g) && g >= prev;
            prev = g;
        }
        ok &= plaw.cdf(ulo) == 0.0 && plaw.cdf(uhi) == 1.0;

        // Densities integrate to one.
        if kappa > 1e-12 {
            let mass = quadrature::integrate(
                |w| 2.0 * w / k2,
                0.0,
                kappa,
                &spec,
            )
            .unwrap()
            .value;
            ok &= (mass - 1.0).abs() <= 1e-12;
            // u-space perimeter density, avoiding the endpoint limits.
            let eps = (uhi - ulo) * 1e-7;
            let mass_u = quadrature::integrate_with_breaks(
                |u| plaw.pdf(u).unwrap(),
                ulo + eps,
                uhi - eps,
                &[motion::h(1.0_f64.min(kappa - 1e-9).max(1e-9))],
                &spec,
            )
            .unwrap()
            .value;
            ok &= (mass_u - 1.0).abs() <= 1e-3; // trimmed endpoints; exact mass checked in w-space
            let area_mass = quadrature::integrate_with_breaks(
                |x| AreaLaw::new(cfg(kappa)).pdf(x).unwrap_or(0.0),
                lo,
                hi,
                &[PI, PI * (k2 - 1.0).abs()],
                &spec,
            )
            .unwrap()
            .value;
            ok &= (area_mass - 1.0).abs() <= 1e-8;
        }
    }

    // invert_h roundtrips.
    let mut worst_rt = 0.0f64;
    for i in 0..=100 {
        let w = 0.02 + 4.98 * i as f64 / 100.0;
        let back = invert_h(motion::h(w), 5.0).unwrap();
        worst_rt = worst_rt.max((back - w).abs());
    }
    ok &= worst_rt <= 1e-11;

    verdict(
        &format!(
            "criterion 6: CDFs monotone/bounded/continuous, densities normalized, invert_h roundtrip max {worst_rt:.2e}"
        ),
        ok,
    );
}

#[test]
fn criterion_7_monte_carlo_oracle() {
    let spec = QuadratureSpec::default();
    let mut ok = true;
    let mut worst_z = 0.0f64;
    for &kappa in &[0.5f64, 1.0, 2.0, 3.0] {
        let c = cfg(kappa);
        let batch = monte_carlo::sample(&c, 1_000_000, 20_240_817).unwrap();
        let alaw = AreaLaw::new(c.clone());
        let plaw = PerimeterLaw::new(c.clone());
        for k in 1..=3u32 {
            let (amean, ase) = monte_carlo::empirical_moment(&batch, Quantity::Area, k).unwrap();
            let atarget = alaw.moment(k).unwrap();
            let az = (amean - atarget).abs() / ase;
            let (pmean, pse) =
                monte_carlo::empirical_moment(&batch, Quantity::Perimeter, k).unwrap();
            let ptarget = if k == 1 {
                plaw.expectation()
            } else {
                plaw.moment_quadrature(k, &spec).unwrap()
            };
            let pz = (pmean - ptarget).abs() / pse;
            worst_z = worst_z.max(az).max(pz);
            ok &= az <= 4.0 && pz <= 4.0;
            assert!(
                az <= 4.0 && pz <= 4.0,
                "kappa = {kappa}, k = {k}: area z = {az:.2}, perimeter z = {pz:.2}"
            );
        }
    }

    let n_ks = 100_000usize;
    let ks_bound = 1.95 / (n_ks as f64).sqrt();
    let mut worst_ks = 0.0f64;
    for &kappa in &[0.5f64, 1.0, 2.0, 3.0] {
        let c = cfg(kappa);
        let batch = monte_carlo::sample(&c, n_ks, 31).unwrap();
        let alaw = AreaLaw::new(c.clone());
        let plaw = PerimeterLaw::new(c.clone());
        let ks_a = monte_carlo::empirical_cdf(&batch, Quantity::Area)
            .unwrap()
            .ks_statistic(|x| alaw.cdf(x));
        let ks_p = monte_carlo::empirical_cdf(&batch, Quantity::Perimeter)
            .unwrap()
            .ks_statistic(|u| plaw.cdf(u));
        worst_ks = worst_ks.max(ks_a).max(ks_p);
        ok &= ks_a <= ks_bound && ks_p <= ks_bound;
        assert!(
            ks_a <= ks_bound && ks_p <= ks_bound,
            "kappa = {kappa}: KS area {ks_a:.4}, perimeter {ks_p:.4}, bound {ks_bound:.4}"
        );
    }

    verdict(
        &format!(
            "criterion 7: Monte Carlo moments worst |z| = {worst_z:.2} (band 4), worst KS = {worst_ks:.4} (bound {ks_bound:.4})"
        ),
        ok,
    );
}

#[test]
fn criterion_8_elliptic_substrate() {
    let spec = QuadratureSpec::default();
    let quad_e = |k: f64| {
        quadrature::integrate(
            |t| {
                let s = t.sin();
                (1.0 - k * k * s * s).sqrt()
            },
            0.0,
            PI / 2.0,
            &spec,
        )
        .unwrap()
        .value
    };
    let quad_k = |k: f64| {
        quadrature::integrate(
            |t| {
                let s = t.sin();
                1.0 / (1.0 - k * k * s * s).sqrt()
            },
            0.0,
            PI / 2.0,
            &spec,
        )
        .unwrap()
        .value
    };

    let mut worst_def = 0.0f64;
    let mut worst_landen = 0.0f64;
    let mut worst_deriv = 0.0f64;
    for i in 1..=99 {
        let k = i as f64 / 100.0;
        worst_def = worst_def
            .max(rel_err(elliptic::complete_e(k).unwrap(), quad_e(k)))
            .max(rel_err(elliptic::complete_k(k).unwrap(), quad_k(k)));
        let k1 = 2.0 * k.sqrt() / (1.0 + k);
        worst_landen = worst_landen
            .max(rel_err(elliptic::landen_e(k).unwrap(), quad_e(k1)))
            .max(rel_err(elliptic::landen_k(k).unwrap(), quad_k(k1)));
        let step = 1e-6;
        let fd_e = (elliptic::complete_e(k + step).unwrap()
            - elliptic::complete_e(k - step).unwrap())
            / (2.0 * step);
        let fd_k = (elliptic::complete_k(k + step).unwrap()
            - elliptic::complete_k(k - step).unwrap())
            / (2.0 * step);
        if fd_e.abs() > 1e-4 {
            worst_deriv = worst_deriv.max(rel_err(elliptic::deriv_e(k).unwrap(), fd_e));
        }
        worst_deriv = worst_deriv.max(rel_err(elliptic::deriv_k(k).unwrap(), fd_k));
    }

    let mut worst_int = 0.0f64;
    for &kappa in &[1.5f64, 2.0, 3.0] {
        let closed = elliptic::integral_k_over_v4(kappa).unwrap();
        let quad = quadrature::integrate(
            |v| elliptic::complete_k(v).unwrap() / v.powi(4),
            1.0 / kappa,
            1.0,
            &spec,
        )
        .unwrap()
        .value;
        worst_int = worst_int.max(rel_err(closed, quad));
    }

    verdict(
        &format!(
            "criterion 8: K/E vs defining integrals {worst_def:.2e}, Landen {worst_landen:.2e}, \u{222b}K/v\u{2074} {worst_int:.2e}, derivatives {worst_deriv:.2e}"
        ),
        worst_def <= 1e-12 && worst_landen <= 1e-10 && worst_int <= 1e-10 && worst_deriv <= 1e-6,
    );
}
