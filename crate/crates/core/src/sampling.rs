//! Seeded sampling of tangent vectors and `(r, s)` grids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::calculus::TangentSample;

/// Deterministic sampler: `x` uniform in a ball, `y` uniform on the unit sphere.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn unit_vector(&mut self, n: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..n).map(|_| self.rng.sample(StandardNormal)).collect();
            let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
            if norm > 1e-8 {
                return v.into_iter().map(|a| a / norm).collect();
            }
        }
    }

    pub fn point_in_ball(&mut self, n: usize, radius: f64) -> Vec<f64> {
        let dir = self.unit_vector(n);
        let u: f64 = self.rng.random();
        let rho = radius * u.powf(1.0 / n as f64);
        dir.into_iter().map(|a| a * rho).collect()
    }

    /// Point with `r_min ≤ |x| ≤ r_max`, radius uniform in that interval.
    pub fn point_in_shell(&mut self, n: usize, r_min: f64, r_max: f64) -> Vec<f64> {
        let dir = self.unit_vector(n);
        let u: f64 = self.rng.random();
        let rho = r_min + (r_max - r_min) * u;
        dir.into_iter().map(|a| a * rho).collect()
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u: f64 = self.rng.random();
        lo + (hi - lo) * u
    }

    pub fn tangent(&mut self, n: usize, radius: f64) -> TangentSample {
        let x = self.point_in_ball(n, radius);
        let y = self.unit_vector(n);
        TangentSample::new(x, y).expect("sampled tangent vectors are valid")
    }

    pub fn tangents(&mut self, n: usize, radius: f64, count: usize) -> Vec<TangentSample> {
        (0..count).map(|_| self.tangent(n, radius)).collect()
    }

    pub fn shell_tangents(
        &mut self,
        n: usize,
        r_min: f64,
        r_max: f64,
        count: usize,
    ) -> Vec<TangentSample> {
        (0..count)
            .map(|_| {
                let x = self.point_in_shell(n, r_min, r_max);
                let y = self.unit_vector(n);
                TangentSample::new(x, y).expect("sampled tangent vectors are valid")
            })
            .collect()
    }
}

/// Tangent samples with seed, dimension, radius and count.
pub fn tangent_samples(seed: u64, n: usize, radius: f64, count: usize) -> Vec<TangentSample> {
    Sampler::new(seed).tangents(n, radius, count)
}

/// Default `(r, s)` grid: `r ∈ [0.05, 0.6]`, `s ∈ [−0.95 r, 0.95 r]`, 20×20.
pub fn rs_grid(points: usize, r_min: f64, r_max: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(points * points);
    for i in 0..points {
        let r = if points == 1 {
            r_min
        } else {
            r_min + (r_max - r_min) * i as f64 / (points - 1) as f64
        };
        for j in 0..points {
            let t = if points == 1 {
                0.0
            } else {
                -1.0 + 2.0 * j as f64 / (points - 1) as f64
            };
            out.push((r, 0.95 * r * t));
        }
    }
    out
}

pub fn default_rs_grid() -> Vec<(f64, f64)> {
    rs_grid(20, 0.05, 0.6)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_sampling_is_reproducible() {
        let a = tangent_samples(7, 3, 0.6, 5);
        let b = tangent_samples(7, 3, 0.6, 5);
        assert_eq!(a, b);
        for s in &a {
            let r: f64 = s.x().iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!(r <= 0.6);
            let u: f64 = s.y().iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!((u - 1.0).abs() < 1e-12);
        }
        assert_ne!(a, tangent_samples(8, 3, 0.6, 5));
    }

    #[test]
    fn grid_stays_inside_cone() {
        let g = default_rs_grid();
        assert_eq!(g.len(), 400);
        for (r, s) in g {
            assert!((0.05..=0.6).contains(&r));
            assert!(s.abs() <= 0.95 * r + 1e-15);
        }
    }
}
