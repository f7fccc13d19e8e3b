//! The pairing measure `μ(γ) = Π_{n=2}^{N−1} Π_{i≠j} 1/Γ((γ_{ni} − γ_{nj})/ħ)`
//! and adjoints with respect to it.

use std::sync::Arc;

use num_complex::Complex64;

use super::array::{position, TriangularArray};
use super::operator::{DifferenceOperator, Term};
use crate::special::recip_gamma;

/// `μ` for arrays of size `N` at a fixed `ħ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GzMeasure {
    pub big_n: usize,
    pub hbar: f64,
}

/// `Γ(u)/Γ(u + k)` as a finite product.
pub fn gamma_ratio(u: Complex64, k: i32) -> Complex64 {
    let mut r = Complex64::new(1.0, 0.0);
    if k >= 0 {
        for s in 0..k {
            r /= u + s as f64;
        }
    } else {
        for s in 1..=(-k) {
            r *= u - s as f64;
        }
    }
    r
}

impl GzMeasure {
    pub fn new(big_n: usize, hbar: f64) -> Self {
        GzMeasure { big_n, hbar }
    }

    /// Direct evaluation through `1/Γ`; exactly zero where some row
    /// difference lies in `ħ·ℤ_{≤0}`.
    pub fn eval(&self, g: &TriangularArray) -> Complex64 {
        let mut v = Complex64::new(1.0, 0.0);
        for n in 2..self.big_n {
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    v *= recip_gamma((g.get(n, i) - g.get(n, j)) / self.hbar);
                }
            }
        }
        v
    }

    /// `μ(γ + ħ·t)/μ(γ)` in closed form: a product of `Γ(u)/Γ(u + t_i − t_j)`.
    pub fn shift_ratio(&self, g: &TriangularArray, t: &[i32]) -> Complex64 {
        let mut r = Complex64::new(1.0, 0.0);
        for n in 2..self.big_n {
            for i in 1..=n {
                let ti = t[position(n, i)];
                for j in (1..=n).filter(|&j| j != i) {
                    let k = ti - t[position(n, j)];
                    if k != 0 {
                        r *= gamma_ratio((g.get(n, i) - g.get(n, j)) / self.hbar, k);
                    }
                }
            }
        }
        r
    }

    /// Transpose under `⟨φ, ψ⟩ = Σ_γ μ(γ) φ(γ) ψ(γ)`: the term
    /// `c(γ) e^{ħ s·∂}` becomes `c(γ − ħs)·μ(γ − ħs)/μ(γ)·e^{−ħ s·∂}`.
    pub fn adjoint(&self, a: &DifferenceOperator) -> DifferenceOperator {
        let me = *self;
        let hbar = a.hbar();
        let terms = a
            .terms()
            .iter()
            .map(|t| {
                let back: Vec<i32> = t.shift.iter().map(|s| -s).collect();
                let c = t.coeff.clone();
                let b = back.clone();
                let coeff = Arc::new(move |g: &TriangularArray| {
                    if b.iter().all(|&s| s == 0) {
                        return c(g);
                    }
                    c(&g.shifted(&b, hbar)) * me.shift_ratio(g, &b)
                });
                Term { coeff, shift: back }
            })
            .collect();
        DifferenceOperator::from_terms(a.size(), hbar, terms)
    }
}
