//! Partial-fraction identities over distinct points `γ_1, …, γ_n`:
//!
//! * `Σ_i γ_i^p / Π_{k≠i}(γ_i − γ_k) = δ_{p,n−1}` for `p < n`, and
//!   `= h_{p−n+1}(γ)` (complete homogeneous symmetric polynomial) for `p ≥ n`;
//! * `Σ_i Π_{k≠i}(c − γ_k)/(γ_i − γ_k) = 1` for any `c`.
//!
//! The degree `p − n + 1` is what the brute-force expansion in
//! [`complete_homogeneous`] confirms; it is the generating-function
//! coefficient of `t^{p−n+1}` in `Π_i 1/(1 − γ_i t)`.
//!
//! Both sums cancel down to `O(1)` from terms as large as the Lebesgue
//! constant of the points, so they are accumulated in double-double
//! arithmetic; plain `f64` loses ~1e-11 on unlucky 8-point configurations.

use num_complex::Complex64;
use twofloat::TwoFloat;

use crate::error::{Error, Result};

fn check_distinct(g: &[Complex64]) -> Result<()> {
    for i in 0..g.len() {
        for k in i + 1..g.len() {
            if (g[i] - g[k]).norm() <= 1e-12 * (1.0 + g[i].norm()) {
                return Err(Error::Coincident(i + 1, k + 1));
            }
        }
    }
    Ok(())
}

/// `1/x` by one Newton step from the `f64` reciprocal. (`TwoFloat`'s own
/// division forms `1 − x·(1/x)` without a fused multiply-add and is only
/// accurate to `f64` precision.)
fn recip(x: TwoFloat) -> TwoFloat {
    let y = TwoFloat::from(1.0 / x.hi());
    let e = TwoFloat::from(1.0) - x * y;
    y + y * e
}

/// Complex double-double.
#[derive(Clone, Copy)]
struct Dd {
    re: TwoFloat,
    im: TwoFloat,
}

impl Dd {
    const ONE: Dd = Dd {
        re: TwoFloat::from_f64(1.0),
        im: TwoFloat::from_f64(0.0),
    };

    fn from(z: Complex64) -> Self {
        Dd {
            re: z.re.into(),
            im: z.im.into(),
        }
    }

    /// `a − b`, exact.
    fn diff(a: Complex64, b: Complex64) -> Self {
        Dd {
            re: TwoFloat::new_add(a.re, -b.re),
            im: TwoFloat::new_add(a.im, -b.im),
        }
    }

    fn add(self, o: Dd) -> Dd {
        Dd {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }

    fn mul(self, o: Dd) -> Dd {
        Dd {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }

    fn div(self, o: Dd) -> Dd {
        let inv = recip(o.re * o.re + o.im * o.im);
        Dd {
            re: (self.re * o.re + self.im * o.im) * inv,
            im: (self.im * o.re - self.re * o.im) * inv,
        }
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.hi() + self.re.lo(), self.im.hi() + self.im.lo())
    }
}

/// `Σ_i γ_i^p / Π_{k≠i}(γ_i − γ_k)`.
pub fn combin1(g: &[Complex64], p: u32) -> Result<Complex64> {
    check_distinct(g)?;
    let mut total = Dd::from(Complex64::new(0.0, 0.0));
    for i in 0..g.len() {
        let gi = Dd::from(g[i]);
        let num = (0..p).fold(Dd::ONE, |acc, _| acc.mul(gi));
        let den = (0..g.len()).filter(|&k| k != i).fold(Dd::ONE, |acc, k| acc.mul(Dd::diff(g[i], g[k])));
        total = total.add(num.div(den));
    }
    Ok(total.to_complex())
}

/// `Σ_i Π_{k≠i}(c − γ_k)/(γ_i − γ_k)`.
pub fn combin2(g: &[Complex64], c: Complex64) -> Result<Complex64> {
    check_distinct(g)?;
    let mut total = Dd::from(Complex64::new(0.0, 0.0));
    for i in 0..g.len() {
        let (mut num, mut den) = (Dd::ONE, Dd::ONE);
        for k in (0..g.len()).filter(|&k| k != i) {
            num = num.mul(Dd::diff(c, g[k]));
            den = den.mul(Dd::diff(g[i], g[k]));
        }
        total = total.add(num.div(den));
    }
    Ok(total.to_complex())
}

/// `h_d(γ) = Σ_{k_1+…+k_n = d} γ_1^{k_1}⋯γ_n^{k_n}`, by direct expansion.
pub fn complete_homogeneous(g: &[Complex64], d: u32) -> Complex64 {
    match g.split_first() {
        None => {
            if d == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }
        Some((first, rest)) => (0..=d)
            .map(|k| first.powu(k) * complete_homogeneous(rest, d - k))
            .sum(),
    }
}

/// Expected value of [`combin1`].
pub fn combin1_expected(g: &[Complex64], p: u32) -> Complex64 {
    let n = g.len() as u32;
    if p + 1 < n {
        Complex64::new(0.0, 0.0)
    } else {
        complete_homogeneous(g, p + 1 - n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn examples() {
        let g = [c(1.0, 0.0), c(2.0, 0.0)];
        assert!((combin1(&g, 1).unwrap() - 1.0).norm() < 1e-15);
        assert!(combin1(&g, 0).unwrap().norm() < 1e-15);
        assert!((combin2(&g, c(3.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        assert!((combin2(&[c(0.4, 0.1)], c(3.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        assert!(matches!(combin1(&[c(1.0, 0.0), c(1.0, 0.0)], 1), Err(Error::Coincident(1, 2))));
    }

    #[test]
    fn double_double_reciprocal() {
        for v in [3.0, 0.1, 7.0e-5, -12.5] {
            let x = TwoFloat::new_add(v, v * 1e-18);
            let r = x * recip(x) - TwoFloat::from(1.0);
            assert!(r.hi().abs() < 1e-30, "{v}: {:e}", r.hi());
        }
    }

    #[test]
    fn degree_above_range_is_complete_homogeneous() {
        let g = [c(0.3, 0.2), c(-0.7, 0.5), c(1.1, -0.4)];
        let h1: Complex64 = g.iter().sum();
        assert!((combin1(&g, 3).unwrap() - h1).norm() < 1e-12);
        for p in 0..8 {
            assert!((combin1(&g, p).unwrap() - combin1_expected(&g, p)).norm() < 1e-11);
        }
        assert!((complete_homogeneous(&g, 2) - (g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[0] * g[1] + g[0] * g[2] + g[1] * g[2])).norm() < 1e-14);
    }
}
