//! Stochastic oracle: sample generating points uniformly over the disk of
//! radius R = κr, compute the areas and perimeters of their ellipses, and
//! estimate moments and empirical distribution functions for cross-checking
//! the closed forms.
//!
//! Sampling is driven by ChaCha8, a seedable counter-based generator, so a
//! given (config, n, seed) triple always reproduces the same batch.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::motion::{self, MotionConfig, MovingPoint};

/// Which random variable of the ellipse to summarize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Area,
    Perimeter,
}

/// A reproducible batch of sampled generating points with their ellipse
/// areas and perimeters.
#[derive(Debug, Clone)]
pub struct SampleBatch {
    pub seed: u64,
    pub points: Vec<MovingPoint>,
    pub areas: Vec<f64>,
    pub perimeters: Vec<f64>,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn values(&self, quantity: Quantity) -> &[f64] {
        match quantity {
            Quantity::Area => &self.areas,
            Quantity::Perimeter => &self.perimeters,
        }
    }
}

/// Draw `n` points area-uniformly from the disk of radius R = κr:
/// ρ = R√u₁, α = 2πu₂. The κ = 0 disk degenerates to the single point Ω.
pub fn sample(cfg: &MotionConfig, n: usize, seed: u64) -> Result<SampleBatch> {
    if n < 1 {
        return Err(Error::Domain {
            name: "n",
            value: n as f64,
            domain: "[1, inf)",
        });
    }
    let radius = cfg.disk_radius();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(n);
    let mut areas = Vec::with_capacity(n);
    let mut perimeters = Vec::with_capacity(n);
    for _ in 0..n {
        let u1: f64 = rng.gen();
        let u2: f64 = rng.gen();
        let rho = radius * u1.sqrt();
        let alpha = std::f64::consts::TAU * u2;
        let p = MovingPoint::from_polar(rho, alpha).expect("rho >= 0");
        points.push(p);
        areas.push(motion::area_of_point(cfg, rho));
        perimeters.push(motion::perimeter_of_point(cfg, rho));
    }
    Ok(SampleBatch {
        seed,
        points,
        areas,
        perimeters,
    })
}

/// Sample mean of the k-th power of the chosen quantity together with its
/// standard error.
pub fn empirical_moment(batch: &SampleBatch, quantity: Quantity, k: u32) -> Result<(f64, f64)> {
    if batch.is_empty() {
        return Err(Error::Domain {
            name: "n",
            value: 0.0,
            domain: "[1, inf)",
        });
    }
    let n = batch.len() as f64;
    let powers: Vec<f64> = batch
        .values(quantity)
        .iter()
        .map(|&v| v.powi(k as i32))
        .collect();
    let mean = powers.iter().sum::<f64>() / n;
    // Centered second pass; immune to the cancellation of sum_sq - n mean^2.
    let ss: f64 = powers.iter().map(|p| (p - mean) * (p - mean)).sum();
    let se = if batch.len() > 1 {
        (ss / (n - 1.0)).sqrt() / n.sqrt()
    } else {
        0.0
    };
    Ok((mean, se))
}

/// Right-continuous empirical distribution function of a sample.
#[derive(Debug, Clone)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn eval(&self, x: f64) -> f64 {
        // Count of samples <= x.
        let count = self.sorted.partition_point(|&v| v <= x);
        count as f64 / self.sorted.len() as f64
    }

    /// Kolmogorov–Smirnov sup-distance against an analytic CDF.
    pub fn ks_statistic<F: Fn(f64) -> f64>(&self, cdf: F) -> f64 {
        let n = self.sorted.len() as f64;
        let mut sup: f64 = 0.0;
        for (i, &x) in self.sorted.iter().enumerate() {
            let f = cdf(x);
            let above = (i + 1) as f64 / n - f;
            let below = f - i as f64 / n;
            sup = sup.max(above).max(below);
        }
        sup
    }
}

/// Empirical CDF of the chosen quantity over the batch.
pub fn empirical_cdf(batch: &SampleBatch, quantity: Quantity) -> Result<EmpiricalCdf> {
    if batch.is_empty() {
        return Err(Error::Domain {
            name: "n",
            value: 0.0,
            domain: "[1, inf)",
        });
    }
    let mut sorted = batch.values(quantity).to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite sample values"));
    Ok(EmpiricalCdf { sorted })
}
