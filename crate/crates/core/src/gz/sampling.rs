//! Seeded random arrays and test functions for the operator-identity checks.
//!
//! Every sample draws from its own ChaCha stream (`seed`, stream = sample
//! index), so results do not depend on evaluation order or thread count.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::array::{position, position_count, TriangularArray};
use crate::error::{Error, Result};

/// Resampling budget for rejected draws.
pub const MAX_ATTEMPTS: usize = 1000;

/// Minimal distance of a same-row difference from `ħℤ` (in units of ħ).
pub const MIN_SEPARATION: f64 = 0.08;

pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn uniform_complex(rng: &mut ChaCha8Rng, half_width: f64) -> Complex64 {
    Complex64::new(
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
    )
}

/// Distance of `z` from the lattice `ħℤ`, in units of ħ.
pub fn lattice_distance(z: Complex64, hbar: f64) -> f64 {
    let u = z / hbar;
    Complex64::new(u.re - u.re.round(), u.im).norm()
}

/// True when every pair in every row is at least `MIN_SEPARATION·ħ` from
/// `ħℤ`, so no coefficient denominator can vanish under integer shifts.
pub fn rows_separated(g: &TriangularArray, hbar: f64) -> bool {
    (1..=g.size()).all(|n| {
        (1..=n).all(|i| {
            (i + 1..=n).all(|j| lattice_distance(g.get(n, i) - g.get(n, j), hbar) >= MIN_SEPARATION)
        })
    })
}

/// Array with entries uniform in `[-1,1] + i[-1,1]`, rows separated.
pub fn random_array(rng: &mut ChaCha8Rng, big_n: usize, hbar: f64) -> Result<TriangularArray> {
    for _ in 0..MAX_ATTEMPTS {
        let mut g = TriangularArray::zeros(big_n);
        for n in 1..=big_n {
            for i in 1..=n {
                g.set(n, i, uniform_complex(rng, 1.0));
            }
        }
        if rows_separated(&g, hbar) {
            return Ok(g);
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

/// Shared-ownership test function of an array.
pub type TestFn = Arc<dyn Fn(&TriangularArray) -> Complex64 + Send + Sync>;

/// `e^{Σ a_{n,i} γ_{n,i}} · Π_k 1/(γ_{p_k} + b_k)` with `|a| ≤ 1/2` and
/// `|Im b| ∈ [1.5, 2.5]`; since shifts are real and `|Im γ| ≤ 1`, no
/// reciprocal factor can vanish.
pub fn random_test_function(rng: &mut ChaCha8Rng, big_n: usize) -> TestFn {
    let a: Vec<Complex64> = (0..position_count(big_n))
        .map(|_| uniform_complex(rng, 0.5))
        .collect();
    let poles: Vec<(usize, Complex64)> = (0..3)
        .map(|_| {
            let n = rng.gen_range(1..=big_n);
            let i = rng.gen_range(1..=n);
            let im = rng.gen_range(1.5..2.5) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
            (position(n, i), Complex64::new(rng.gen_range(-2.0..2.0), im))
        })
        .collect();
    Arc::new(move |g: &TriangularArray| {
        let e = g.entries();
        let lin: Complex64 = a.iter().zip(e).map(|(a, x)| a * x).sum();
        poles.iter().fold(lin.exp(), |acc, &(p, b)| acc / (e[p] + b))
    })
}
