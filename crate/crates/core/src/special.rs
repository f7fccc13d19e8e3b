//! Complex gamma machinery.
//!
//! `ln_gamma` uses the Stirling series on `|z| >= 15`, upward recurrence to
//! reach that region, and reflection for `Re z < 1/2`. The rescaled gamma
//! `Γ₁(z|ħ) = ħ^{z/ħ} Γ(z/ħ)` and its reciprocal are built on top.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logcomplex::LogComplex;

/// Distance (in units of the argument) below which a point counts as a pole.
pub const POLE_TOL: f64 = 1e-12;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const STIRLING_MIN_ABS: f64 = 15.0;

/// `B_{2k} / (2k (2k-1))` for k = 1..10.
const STIRLING_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// The deformation parameter `ħ`, restricted to finite positive reals.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Hbar(f64);

impl Hbar {
    pub fn new(hbar: f64) -> Result<Self> {
        if hbar.is_finite() && hbar > 0.0 {
            Ok(Hbar(hbar))
        } else {
            Err(Error::InvalidHbar(hbar))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Hbar {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Hbar::new(v)
    }
}

impl From<Hbar> for f64 {
    fn from(h: Hbar) -> f64 {
        h.0
    }
}

/// True when `s` lies within [`POLE_TOL`] of `{0, -1, -2, ...}`.
pub fn is_nonpositive_integer(s: Complex64) -> bool {
    let n = s.re.round();
    n <= 0.0 && (s - Complex64::new(n, 0.0)).norm() < POLE_TOL
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING_COEFFS {
        let term = p * c;
        series += term;
        if term.norm() < 1e-18 * series.norm() {
            break;
        }
        p *= inv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series
}

/// `ln sin(pi z)`, stable for large `|Im z|` and near the real zeros.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let w = z - n;
    let parity = if (n as i64).rem_euclid(2) == 1 {
        Complex64::new(0.0, PI)
    } else {
        Complex64::new(0.0, 0.0)
    };
    let i = Complex64::i();
    let core = if w.im.abs() < 20.0 {
        (w * PI).sin().ln()
    } else if w.im > 0.0 {
        // sin(pi w) = e^{-i pi w} (e^{2 i pi w} - 1) / (2i)
        -i * PI * w + ((2.0 * i * PI * w).exp() - 1.0).ln() - (2.0 * i).ln()
    } else {
        // sin(pi w) = e^{i pi w} (1 - e^{-2 i pi w}) / (2i)
        i * PI * w + (1.0 - (-2.0 * i * PI * w).exp()).ln() - (2.0 * i).ln()
    };
    core + parity
}

/// A complex logarithm of `Γ(z)`; the imaginary part is correct modulo `2π`.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite gamma argument {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { arg: z });
    }
    if z.re < 0.5 {
        let reflected = ln_gamma(Complex64::new(1.0, 0.0) - z)?;
        return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - reflected);
    }
    if z.norm() >= STIRLING_MIN_ABS {
        return Ok(stirling(z));
    }
    let shift = (STIRLING_MIN_ABS - z.re).ceil().max(0.0) as usize;
    let mut prod = Complex64::new(1.0, 0.0);
    for k in 0..shift {
        prod *= z + k as f64;
    }
    Ok(stirling(z + shift as f64) - prod.ln())
}

/// Principal-branch `ln Γ(z)` as a [`LogComplex`].
pub fn log_gamma(z: Complex64) -> Result<LogComplex> {
    ln_gamma(z).map(LogComplex::from_ln)
}

/// `ln Γ₁(z|ħ) = (z/ħ) ln ħ + ln Γ(z/ħ)` (some branch).
pub fn ln_gamma1(z: Complex64, hbar: Hbar) -> Result<Complex64> {
    let h = hbar.get();
    let s = z / h;
    match ln_gamma(s) {
        Ok(l) => Ok(s * h.ln() + l),
        Err(Error::Pole { .. }) => Err(Error::Pole { arg: z }),
        Err(e) => Err(e),
    }
}

/// `Γ₁(z|ħ) = ħ^{z/ħ} Γ(z/ħ)`.
pub fn gamma1(z: Complex64, hbar: Hbar) -> Result<LogComplex> {
    ln_gamma1(z, hbar).map(LogComplex::from_ln)
}

/// `1/Γ₁(z|ħ)` in log form; exactly zero on `z ∈ -ħ·ℕ₀`.
pub fn ln_recip_gamma1(z: Complex64, hbar: Hbar) -> LogComplex {
    if is_nonpositive_integer(z / hbar.get()) {
        return LogComplex::ZERO;
    }
    match ln_gamma1(z, hbar) {
        Ok(l) => LogComplex::from_ln(-l),
        Err(_) => LogComplex::ZERO,
    }
}

/// `1/Γ₁(z|ħ)`, an entire function of `z`.
pub fn recip_gamma1(z: Complex64, hbar: Hbar) -> Complex64 {
    ln_recip_gamma1(z, hbar).to_complex()
}

/// Plain `1/Γ(s)`.
pub fn recip_gamma(s: Complex64) -> Complex64 {
    if is_nonpositive_integer(s) {
        return Complex64::new(0.0, 0.0);
    }
    match ln_gamma(s) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}
