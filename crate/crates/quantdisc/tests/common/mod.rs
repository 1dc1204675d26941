//! Shared oracle helpers for the integration tests. Everything here is
//! independent of the library's own evaluation paths: quadrature instead of
//! the erf-based CDF, raw sampling instead of the dataset generator's
//! internals.

// Each integration test compiles this module separately and uses a subset.
#![allow(dead_code)]

use quantdisc::rng::unit_rng;
use quantdisc::ClassPairModel;
use rand_distr::{Distribution, StandardNormal};

/// Composite Simpson quadrature of `f` over [a, b] with 2n panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let m = 2 * n;
    let h = (b - a) / m as f64;
    let mut sum = f(a) + f(b);
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

pub fn normal_density(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Quadrature oracle for the standard normal CDF.
pub fn phi_oracle(x: f64) -> f64 {
    0.5 + simpson(normal_density, 0.0, x, 200_000)
}

/// Draws `n` samples per class from the model, on two seeded substreams.
pub fn sample_two_class(model: &ClassPairModel, n: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let draw = |stream: u64, center: f64| -> Vec<f64> {
        let mut rng = unit_rng(seed, stream);
        (0..n)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                center + model.sigma() * z
            })
            .collect()
    };
    (draw(0, model.mu()), draw(1, -model.mu()))
}
