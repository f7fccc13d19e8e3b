//! Left Whittaker vector
//! `ψ_L(γ) = e^{iπγ₁₁} Π_{i≤m−1, j≤m} 1/Γ₁(γ_{m−1,i} − γ_{m,j} + ħ/2 | ħ)`
//! and the check that the `c_{m−1}`-twisted lowering operators act on it by
//! scalars of modulus `1/ħ`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::array::TriangularArray;
use super::generators::{twist, twisted_label, Permutation};
use super::measure::GzMeasure;
use super::sampling::{random_array, stream};
use super::{nan_max, CheckReport, SuiteReport, IDENTITY_TOL};
use crate::error::{Error, Result};
use crate::special::{recip_gamma1, Hbar};

/// Options shared by the Whittaker-vector verifiers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WhittakerOptions {
    pub hbar: f64,
    /// Test hook: added to the argument of the `(1,1)` gamma factor of `ψ_L`.
    pub perturbation: f64,
    pub tol: f64,
}

impl Default for WhittakerOptions {
    fn default() -> Self {
        WhittakerOptions {
            hbar: 1.0,
            perturbation: 0.0,
            tol: IDENTITY_TOL,
        }
    }
}

/// `ψ_L` with an optional shift of the first gamma argument (zero for the
/// genuine vector).
pub fn psi_l(m: usize, g: &TriangularArray, hbar: Hbar, perturbation: f64) -> Complex64 {
    let h = hbar.get();
    let mut v = (Complex64::i() * std::f64::consts::PI * g.get(1, 1)).exp();
    for i in 1..m {
        for j in 1..=m {
            let mut z = g.get(m - 1, i) - g.get(m, j) + h / 2.0;
            if i == 1 && j == 1 {
                z += perturbation;
            }
            v *= recip_gamma1(z, hbar);
        }
    }
    v
}

fn check_shape(m: usize, big_n: usize, samples: usize) -> Result<()> {
    if m < 2 || m >= big_n {
        return Err(Error::InvalidInput(format!(
            "need 2 <= m < N, got m = {m}, N = {big_n}"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidInput("samples must be >= 1".into()));
    }
    Ok(())
}

/// For each `k = 1..N−1`, the ratio `(E^{c_{m−1}}_{k+1,k})†ψ_L / (ħ⁻¹ψ_L)` at
/// `samples` random arrays. A check passes when the ratio has modulus one
/// and is the same constant at every sample; the constant is recorded.
pub fn verify_left_whittaker(
    m: usize,
    big_n: usize,
    samples: usize,
    seed: u64,
    opts: WhittakerOptions,
) -> Result<SuiteReport> {
    check_shape(m, big_n, samples)?;
    let hbar = Hbar::new(opts.hbar)?;
    let h = hbar.get();
    let w = Permutation::coxeter(m - 1, big_n)?;
    let mu = GzMeasure::new(big_n, h);
    let arrays: Vec<TriangularArray> = (0..samples as u64)
        .map(|s| random_array(&mut stream(seed, s), big_n, h))
        .collect::<Result<_>>()?;
    let psi = |g: &TriangularArray| psi_l(m, g, hbar, opts.perturbation);

    let mut checks = Vec::new();
    for k in 1..big_n {
        let op = mu.adjoint(&twist(k + 1, k, &w, h)?);
        let ratios: Vec<Complex64> = arrays
            .par_iter()
            .map(|g| op.apply(&psi, g) * h / psi(g))
            .collect();
        let r0 = ratios[0];
        let dev = ratios
            .iter()
            .map(|r| nan_max((r.norm() - 1.0).abs(), (r - r0).norm()))
            .fold(0.0, nan_max);
        let (a, b) = twisted_label(k + 1, k, &w);
        let note = if k == 1 {
            "stated form: -(E^c_21)^+ psi_L = psi_L/hbar, i.e. ratio -1".to_string()
        } else if k == m {
            "stated form: (E^c_{m+1,m})^+ psi_L = psi_L/hbar, i.e. ratio +1".to_string()
        } else {
            "trivial action on psi_L".to_string()
        };
        checks.push(
            CheckReport::asserted(format!("E^c_({},{}) = E_({a},{b}) adjoint", k + 1, k), dev, samples, opts.tol)
                .with_value(r0)
                .with_note(note),
        );
    }
    Ok(SuiteReport::new(
        format!("left_whittaker(m={m},N={big_n})"),
        seed,
        opts.tol,
        checks,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::recip_gamma;

    #[test]
    fn psi_l_examples() {
        let h = Hbar::new(1.0).unwrap();
        let c = |x: f64| Complex64::new(x, 0.0);
        let g = TriangularArray::from_rows(&[vec![c(0.0)], vec![c(0.3), c(-0.4)]]).unwrap();
        let want = recip_gamma(c(0.2)) * recip_gamma(c(0.9));
        assert!((psi_l(2, &g, h, 0.0) - want).norm() < 1e-14);
        let g = TriangularArray::from_rows(&[vec![c(0.2)], vec![c(0.7), c(-0.4)]]).unwrap();
        assert_eq!(psi_l(2, &g, h, 0.0), c(0.0));
    }

    #[test]
    fn rejects_bad_shape() {
        assert!(verify_left_whittaker(1, 3, 4, 0, WhittakerOptions::default()).is_err());
        assert!(verify_left_whittaker(3, 3, 4, 0, WhittakerOptions::default()).is_err());
        assert!(verify_left_whittaker(2, 3, 0, 0, WhittakerOptions::default()).is_err());
    }
}
