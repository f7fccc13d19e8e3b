//! Complex numbers stored as `(ln|z|, arg z)`.
//!
//! Whittaker values at the scales we care about range over `e^{±100}` and
//! beyond, so every evaluator works with [`LogComplex`] and only converts to
//! an ordinary [`Complex64`] at the very end. Zero is represented by
//! `log_mag = -inf`.

use std::f64::consts::PI;
use std::ops::{Div, Mul, Neg};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const TAU: f64 = 2.0 * PI;

/// Wrap an angle into `(-pi, pi]`.
pub fn wrap_phase(phase: f64) -> f64 {
    if !phase.is_finite() {
        return phase;
    }
    let r = phase.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogComplex {
    /// Natural log of the magnitude; `-inf` for zero.
    pub log_mag: f64,
    /// Argument in `(-pi, pi]`.
    pub phase: f64,
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex {
        log_mag: f64::NEG_INFINITY,
        phase: 0.0,
    };
    pub const ONE: LogComplex = LogComplex {
        log_mag: 0.0,
        phase: 0.0,
    };

    pub fn new(log_mag: f64, phase: f64) -> Self {
        if log_mag == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        LogComplex {
            log_mag,
            phase: wrap_phase(phase),
        }
    }

    /// `e^w` for a complex exponent `w`.
    pub fn exp(w: Complex64) -> Self {
        Self::new(w.re, w.im)
    }

    /// A complex logarithm `ln z` (any branch) read back as a value.
    pub fn from_ln(ln: Complex64) -> Self {
        Self::exp(ln)
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        // hypot avoids overflow for components near f64::MAX
        LogComplex {
            log_mag: z.re.hypot(z.im).ln(),
            phase: z.im.atan2(z.re),
        }
        .normalized()
    }

    fn normalized(self) -> Self {
        Self::new(self.log_mag, self.phase)
    }

    pub fn to_complex(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.log_mag.exp(), self.phase)
    }

    pub fn is_zero(self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    pub fn is_finite(self) -> bool {
        self.log_mag.is_finite() && self.phase.is_finite()
    }

    /// Principal logarithm `ln|z| + i arg z`.
    pub fn ln(self) -> Complex64 {
        Complex64::new(self.log_mag, self.phase)
    }

    pub fn abs(self) -> f64 {
        self.log_mag.exp()
    }

    pub fn recip(self) -> Self {
        Self::new(-self.log_mag, -self.phase)
    }

    pub fn conj(self) -> Self {
        Self::new(self.log_mag, -self.phase)
    }

    pub fn powi(self, k: i32) -> Self {
        if self.is_zero() {
            return if k == 0 { Self::ONE } else { Self::ZERO };
        }
        Self::new(self.log_mag * k as f64, self.phase * k as f64)
    }

    pub fn scale_real(self, c: f64) -> Self {
        self * LogComplex::from_real(c)
    }

    /// Sum two values without leaving log space.
    pub fn add(self, other: Self) -> Self {
        let mut acc = LogAccumulator::new();
        acc.push(self);
        acc.push(other);
        acc.total()
    }

    /// `|self / other - 1|`, robust to huge magnitudes.
    pub fn rel_diff(self, other: Self) -> f64 {
        if other.is_zero() {
            return if self.is_zero() { 0.0 } else { f64::INFINITY };
        }
        ((self / other).to_complex() - Complex64::new(1.0, 0.0)).norm()
    }

    /// Real part of the linear value (may overflow to +-inf).
    pub fn re(self) -> f64 {
        self.to_complex().re
    }
}

impl Mul for LogComplex {
    type Output = LogComplex;
    fn mul(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() || rhs.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.log_mag + rhs.log_mag, self.phase + rhs.phase)
    }
}

impl Div for LogComplex {
    type Output = LogComplex;
    fn div(self, rhs: LogComplex) -> LogComplex {
        self * rhs.recip()
    }
}

impl Neg for LogComplex {
    type Output = LogComplex;
    fn neg(self) -> LogComplex {
        if self.is_zero() {
            return self;
        }
        LogComplex::new(self.log_mag, self.phase + PI)
    }
}

impl std::iter::Product for LogComplex {
    fn product<I: Iterator<Item = LogComplex>>(iter: I) -> Self {
        iter.fold(LogComplex::ONE, |a, b| a * b)
    }
}

impl std::iter::Sum for LogComplex {
    fn sum<I: Iterator<Item = LogComplex>>(iter: I) -> Self {
        let mut acc = LogAccumulator::new();
        for v in iter {
            acc.push(v);
        }
        acc.total()
    }
}

/// Neumaier-compensated pair of running sums.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn scale(&mut self, s: f64) {
        self.sum *= s;
        self.comp *= s;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Streaming sum of [`LogComplex`] terms.
///
/// Terms are accumulated in linear space relative to a running scale equal to
/// the largest `log_mag` seen so far; when a larger term arrives the partial
/// sums are rescaled. The result depends only on the order of `push` calls.
#[derive(Debug, Clone, Copy)]
pub struct LogAccumulator {
    scale: f64,
    re: Compensated,
    im: Compensated,
    max_log_mag: f64,
}

impl Default for LogAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

impl LogAccumulator {
    pub fn new() -> Self {
        LogAccumulator {
            scale: f64::NEG_INFINITY,
            re: Compensated::default(),
            im: Compensated::default(),
            max_log_mag: f64::NEG_INFINITY,
        }
    }

    pub fn push(&mut self, v: LogComplex) {
        self.push_weighted(v, 1.0);
    }

    /// Add `weight * v` for a real, non-negative weight.
    pub fn push_weighted(&mut self, v: LogComplex, weight: f64) {
        if v.is_zero() || weight == 0.0 {
            return;
        }
        if v.log_mag > self.scale {
            if self.scale.is_finite() {
                let s = (self.scale - v.log_mag).exp();
                self.re.scale(s);
                self.im.scale(s);
            }
            self.scale = v.log_mag;
        }
        self.max_log_mag = self.max_log_mag.max(v.log_mag);
        let mag = (v.log_mag - self.scale).exp() * weight;
        let (s, c) = v.phase.sin_cos();
        self.re.add(mag * c);
        self.im.add(mag * s);
    }

    /// Merge another accumulator (as if its terms had been pushed here).
    pub fn merge(&mut self, other: &LogAccumulator) {
        let t = other.total();
        if !t.is_zero() {
            self.push(t);
        }
        self.max_log_mag = self.max_log_mag.max(other.max_log_mag);
    }

    /// Largest `log_mag` among pushed terms; `-inf` if none.
    pub fn max_log_mag(&self) -> f64 {
        self.max_log_mag
    }

    pub fn total(&self) -> LogComplex {
        if !self.scale.is_finite() {
            return LogComplex::ZERO;
        }
        let z = Complex64::new(self.re.value(), self.im.value());
        let lc = LogComplex::from_complex(z);
        if lc.is_zero() {
            return lc;
        }
        LogComplex::new(lc.log_mag + self.scale, lc.phase)
    }
}
