//! Support of the right Whittaker vector and the pointwise identities used
//! on it.
//!
//! `ψ_R` carries `δ(γ₁₁)` and, for every row `n ∈ [2, N−1]` with `n ≠ m`,
//! `δ(Σ_j γ_{n,j} − Σ_i γ_{n−1,i}) Π_{k<n} δ(γ_{n−1,k} − γ_{n,k} + ħ/2)`.
//! Its smooth density is
//! `G₁·G₂·Π_{n≠m} Π_{i≠j} Γ₁(γ_{ni} − γ_{nj})` with
//! `G₁ = Π_{a≤m, b≤N} Γ₁(γ_{N−1,a} − γ_{N,b} + ħ/2)` and
//! `G₂ = Π_{a≤m−1, b≤m} Γ₁(γ_{m−1,a} − γ_{m,b} + ħ/2)`.
//! The delta factors are solved for all coordinates except
//! `γ_{N−1,1}, …, γ_{N−1,m}`.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::array::TriangularArray;
use super::sampling::{lattice_distance, stream, uniform_complex, MAX_ATTEMPTS, MIN_SEPARATION};
use super::whittaker::WhittakerOptions;
use super::{nan_max, CheckReport, SuiteReport};
use crate::error::{Error, Result};
use crate::logcomplex::LogComplex;
use crate::mb::integrand;
use crate::special::{ln_gamma1, ln_recip_gamma1, Hbar};
use crate::spectral::SpectralData;

/// `Σ coeff·γ_{n,i} + constant = 0`, positions 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineRelation {
    pub terms: Vec<((usize, usize), f64)>,
    pub constant: Complex64,
}

impl AffineRelation {
    fn residual(&self, g: &TriangularArray) -> Complex64 {
        self.terms
            .iter()
            .map(|&((n, i), c)| c * g.get(n, i))
            .sum::<Complex64>()
            + self.constant
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupportConstraints {
    pub m: usize,
    pub big_n: usize,
    pub hbar: f64,
    pub relations: Vec<AffineRelation>,
    /// Coordinates left free (rows `1..N−1`; row `N` is always given).
    pub free: Vec<(usize, usize)>,
}

impl SupportConstraints {
    /// The delta content of `ψ_R` for `Gr(m, N)`, `2 ≤ m < N` (for `m = 1`
    /// the same delta list over-determines row 2).
    pub fn right_whittaker(m: usize, big_n: usize, hbar: f64) -> Result<Self> {
        if m < 2 || m >= big_n {
            return Err(Error::InvalidInput(format!(
                "need 2 <= m < N, got m = {m}, N = {big_n}"
            )));
        }
        Hbar::new(hbar)?;
        let mut relations = vec![AffineRelation {
            terms: vec![((1, 1), 1.0)],
            constant: Complex64::new(0.0, 0.0),
        }];
        for n in (2..big_n).filter(|&n| n != m) {
            let mut sum: Vec<_> = (1..=n).map(|j| ((n, j), 1.0)).collect();
            sum.extend((1..n).map(|i| ((n - 1, i), -1.0)));
            relations.push(AffineRelation {
                terms: sum,
                constant: Complex64::new(0.0, 0.0),
            });
            for k in 1..n {
                relations.push(AffineRelation {
                    terms: vec![((n - 1, k), 1.0), ((n, k), -1.0)],
                    constant: Complex64::new(hbar / 2.0, 0.0),
                });
            }
        }
        Ok(SupportConstraints {
            m,
            big_n,
            hbar,
            relations,
            free: (1..=m).map(|i| (big_n - 1, i)).collect(),
        })
    }

    /// Fill rows `1..N−1` from the free values and the spectrum by
    /// propagating relations with a single unknown.
    pub fn solve(&self, free_values: &[Complex64], lambda: &[Complex64]) -> Result<TriangularArray> {
        if free_values.len() != self.free.len() || lambda.len() != self.big_n {
            return Err(Error::InvalidInput(format!(
                "expected {} free values and {} spectral values",
                self.free.len(),
                self.big_n
            )));
        }
        let mut g = TriangularArray::zeros(self.big_n);
        let mut known = TriangularArray::zeros(self.big_n);
        let one = Complex64::new(1.0, 0.0);
        for (j, &l) in lambda.iter().enumerate() {
            g.set(self.big_n, j + 1, l);
            known.set(self.big_n, j + 1, one);
        }
        for (&(n, i), &v) in self.free.iter().zip(free_values) {
            g.set(n, i, v);
            known.set(n, i, one);
        }
        let is_known = |k: &TriangularArray, (n, i): (usize, usize)| k.get(n, i) == one;
        let mut pending: Vec<&AffineRelation> = self.relations.iter().collect();
        loop {
            let before = pending.len();
            let mut still = Vec::new();
            for r in pending {
                let unknown: Vec<_> = r.terms.iter().filter(|(p, _)| !is_known(&known, *p)).collect();
                match unknown.as_slice() {
                    [] => {
                        let res = r.residual(&g);
                        if res.norm() > 1e-10 * (1.0 + self.hbar) {
                            return Err(Error::Inconsistent(format!(
                                "relation {:?} has residual {res}",
                                r.terms
                            )));
                        }
                    }
                    [&((n, i), c)] => {
                        g.set(n, i, Complex64::new(0.0, 0.0));
                        let rest = r.residual(&g);
                        g.set(n, i, -rest / c);
                        known.set(n, i, one);
                    }
                    _ => still.push(r),
                }
            }
            pending = still;
            if pending.is_empty() {
                break;
            }
            if pending.len() == before {
                return Err(Error::Inconsistent(format!(
                    "{} relations left underdetermined",
                    pending.len()
                )));
            }
        }
        for n in 1..self.big_n {
            for i in 1..=n {
                if !is_known(&known, (n, i)) {
                    return Err(Error::Inconsistent(format!("gamma_({n},{i}) is not fixed")));
                }
            }
        }
        Ok(g)
    }
}

/// `ln G₁`, `Γ₁(γ_{N−1,a} − γ_{N,b} + ħ/2)` over `a ≤ m`.
fn ln_g1(m: usize, g: &TriangularArray, hbar: Hbar) -> Result<Complex64> {
    let big_n = g.size();
    let h = hbar.get();
    let mut s = Complex64::new(0.0, 0.0);
    for a in 1..=m {
        for b in 1..=big_n {
            s += ln_gamma1(g.get(big_n - 1, a) - g.get(big_n, b) + h / 2.0, hbar)?;
        }
    }
    Ok(s)
}

/// `ln G₂`, `Γ₁(γ_{m−1,a} − γ_{m,b} + ħ/2)`.
fn ln_g2(m: usize, g: &TriangularArray, hbar: Hbar) -> Result<Complex64> {
    let h = hbar.get();
    let mut s = Complex64::new(0.0, 0.0);
    for a in 1..m {
        for b in 1..=m {
            s += ln_gamma1(g.get(m - 1, a) - g.get(m, b) + h / 2.0, hbar)?;
        }
    }
    Ok(s)
}

/// Smooth `G₁·G₂` part of `ψ_R` (the row products for `n ≠ m` are cancelled
/// against the measure in the pairing and left out).
pub fn right_density(m: usize, g: &TriangularArray, hbar: Hbar) -> Result<LogComplex> {
    Ok(LogComplex::from_ln(ln_g1(m, g, hbar)? + ln_g2(m, g, hbar)?))
}

/// Pairing integrand `ψ_L · e^{−x H} ψ_R · μ` after the deltas are
/// integrated out, as a function of the free coordinates `γ_{N−1,1..m}`:
/// `e^{−x m(N−m)/2} e^{−(x/ħ)Σ_k γ_{m,k}} G₁ Π_{i≠j≤m} 1/Γ₁(γ_{m,i} − γ_{m,j})`.
pub fn reduced_pairing_integrand(
    s: &SpectralData,
    free_values: &[Complex64],
) -> Result<LogComplex> {
    let (m, big_n, h) = (s.m, s.n, s.h());
    let c = SupportConstraints::right_whittaker(m, big_n, h)?;
    let lambda: Vec<Complex64> = s.lambda.iter().map(|&l| Complex64::new(l, 0.0)).collect();
    let g = c.solve(free_values, &lambda)?;
    let prefactor = -s.x * (m * (big_n - m)) as f64 / 2.0;
    let row_m: Complex64 = (1..=m).map(|k| g.get(m, k)).sum();
    let mut v = LogComplex::from_ln(Complex64::new(prefactor, 0.0) - row_m * (s.x / h) + ln_g1(m, &g, s.hbar)?);
    for i in 1..=m {
        for j in (1..=m).filter(|&j| j != i) {
            v = v * ln_recip_gamma1(g.get(m, i) - g.get(m, j), s.hbar);
        }
    }
    Ok(v)
}

/// One support sample: spectrum real in `[-1,1]`, free values complex, and
/// every gamma argument away from the pole lattice.
fn sample_support(
    c: &SupportConstraints,
    seed: u64,
    index: u64,
) -> Result<(TriangularArray, Vec<Complex64>)> {
    let mut rng = stream(seed, index);
    let (m, big_n, h) = (c.m, c.big_n, c.hbar);
    for _ in 0..MAX_ATTEMPTS {
        let lambda: Vec<Complex64> = (0..big_n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
            .collect();
        let free: Vec<Complex64> = (0..m).map(|_| uniform_complex(&mut rng, 1.0)).collect();
        let g = c.solve(&free, &lambda)?;
        let mut args = Vec::new();
        for a in 1..=m {
            for b in 1..=big_n {
                args.push(g.get(big_n - 1, a) - g.get(big_n, b) + h / 2.0);
            }
        }
        for a in 1..m {
            for b in 1..=m {
                args.push(g.get(m - 1, a) - g.get(m, b) + h / 2.0);
            }
        }
        // rows n ≠ m pick up real constants on the support; their gamma
        // products cancel against the measure and are never evaluated
        for i in 1..=m {
            for j in (1..=m).filter(|&j| j != i) {
                args.push(g.get(m, i) - g.get(m, j));
            }
        }
        if args.iter().all(|&z| lattice_distance(z, h) >= MIN_SEPARATION) {
            return Ok((g, lambda));
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

#[derive(Default, Clone, Copy)]
struct SampleDeviations {
    shift1: f64,
    shift2: f64,
    shift2_minus_half: f64,
    shift3: f64,
    shift3_minus_half: f64,
    delta_measure: f64,
    eigen: Complex64,
    eigen_plus: Complex64,
}

fn sample_deviations(m: usize, g: &TriangularArray, hbar: Hbar) -> Result<SampleDeviations> {
    let big_n = g.size();
    let h = hbar.get();
    let mut d = SampleDeviations::default();
    let shifted = |pos: &[(usize, usize)]| {
        let mut s = g.clone();
        for &(n, i) in pos {
            s.set(n, i, g.get(n, i) - h);
        }
        s
    };
    let rel = |got: Complex64, want: Complex64| (got - want).norm() / want.norm();

    let l1 = ln_g1(m, g, hbar)?;
    for i in 1..=m {
        let q = (ln_g1(m, &shifted(&[(big_n - 1, i)]), hbar)? - l1).exp();
        let factor: Complex64 = (1..=big_n)
            .map(|j| g.get(big_n - 1, i) - g.get(big_n, j) - h / 2.0)
            .product();
        d.shift1 = nan_max(d.shift1, rel(q * factor, Complex64::new(1.0, 0.0)));
    }

    if m >= 2 {
        let l2 = ln_g2(m, g, hbar)?;
        for i in 1..=m {
            let q = (ln_g2(m, &shifted(&[(m, i)]), hbar)? - l2).exp();
            let factor = |sign: f64| -> Complex64 {
                (1..m)
                    .map(|r| g.get(m - 1, r) - g.get(m, i) + sign * h / 2.0)
                    .product()
            };
            d.shift2 = nan_max(d.shift2, rel(q, factor(1.0)));
            d.shift2_minus_half = nan_max(d.shift2_minus_half, rel(q, factor(-1.0)));
            for j in 1..m {
                let q = (ln_g2(m, &shifted(&[(m - 1, j), (m, i)]), hbar)? - l2).exp();
                let factor = |sign: f64| -> Complex64 {
                    let num: Complex64 = (1..m)
                        .filter(|&r| r != j)
                        .map(|r| g.get(m - 1, r) - g.get(m, i) + sign * h / 2.0)
                        .product();
                    let den: Complex64 = (1..=m)
                        .filter(|&p| p != i)
                        .map(|p| g.get(m - 1, j) - g.get(m, p) - h / 2.0)
                        .product();
                    num / den
                };
                d.shift3 = nan_max(d.shift3, rel(q, factor(1.0)));
                d.shift3_minus_half = nan_max(d.shift3_minus_half, rel(q, factor(-1.0)));
            }
        }
    }

    for n in m + 1..big_n {
        for i in 1..=m {
            let lhs: Complex64 = (1..=n)
                .filter(|&j| j != i)
                .map(|j| g.get(n - 1, i) - g.get(n, j) - h / 2.0)
                .product();
            let rhs: Complex64 = (1..=n)
                .filter(|&k| k != i)
                .map(|k| g.get(n, i) - g.get(n, k) - h)
                .product();
            d.delta_measure = nan_max(d.delta_measure, rel(lhs, rhs));
        }
    }

    // ħ × eigenvalue of E_{m,N} on ψ_R: −Σ_i Π_r(γ_{m−1,r} − γ_{m,i} ∓ ħ/2) / Π_{k≠i}(γ_{m,i} − γ_{m,k})
    let eigen = |sign: f64| -> Complex64 {
        -(1..=m)
            .map(|i| {
                let num: Complex64 = (1..m)
                    .map(|r| g.get(m - 1, r) - g.get(m, i) + sign * h / 2.0)
                    .product();
                let den: Complex64 = (1..=m).filter(|&k| k != i).map(|k| g.get(m, i) - g.get(m, k)).product();
                num / den
            })
            .sum::<Complex64>()
    };
    d.eigen = eigen(-1.0);
    d.eigen_plus = eigen(1.0);
    Ok(d)
}

/// Pointwise identities on the support of `ψ_R`:
/// (a) gamma-shift recurrences for `G₁`, `G₂`; (b) the measure congruence
/// `Π_{j≠i}(γ_{n−1,i} − γ_{n,j} − ħ/2) = Π_{k≠i}(γ_{n,i} − γ_{n,k} − ħ)` for
/// `n ∈ [m+1, N−1]`, `i ≤ m`; (c) the constant `ħ·E_{m,N}ψ_R/ψ_R`, asserted
/// to have modulus one and recorded with its sign; plus the reduced pairing
/// integrand against the Mellin-Barnes integrand.
pub fn verify_right_support_relations(
    m: usize,
    big_n: usize,
    samples: usize,
    seed: u64,
    opts: WhittakerOptions,
) -> Result<SuiteReport> {
    if m < 2 || m >= big_n {
        return Err(Error::InvalidInput(format!(
            "need 2 <= m < N, got m = {m}, N = {big_n}"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidInput("samples must be >= 1".into()));
    }
    let hbar = Hbar::new(opts.hbar)?;
    let c = SupportConstraints::right_whittaker(m, big_n, hbar.get())?;
    let per_sample: Vec<(SampleDeviations, f64)> = (0..samples as u64)
        .into_par_iter()
        .map(|k| {
            let (g, lambda) = sample_support(&c, seed, k)?;
            let d = sample_deviations(m, &g, hbar)?;
            // reduction: free coordinates vs the shifted MB integration variable
            let x = -4.0 + 5.0 * (k as f64 + 0.5) / samples as f64;
            let s = SpectralData::new(m, big_n, lambda.iter().map(|l| l.re).collect(), hbar.get(), x)?;
            let free: Vec<Complex64> = (1..=m).map(|i| g.get(big_n - 1, i)).collect();
            let shifted: Vec<Complex64> = free.iter().map(|z| z + hbar.get() / 2.0).collect();
            let red = reduced_pairing_integrand(&s, &free)?;
            let mb = integrand(&shifted, &s)?;
            Ok((d, red.rel_diff(mb)))
        })
        .collect::<Result<_>>()?;

    let fold = |f: &dyn Fn(&SampleDeviations) -> f64| per_sample.iter().map(|(d, _)| f(d)).fold(0.0, nan_max);
    let e0 = per_sample[0].0.eigen;
    let eigen_dev = per_sample
        .iter()
        .map(|(d, _)| nan_max((d.eigen.norm() - 1.0).abs(), (d.eigen - e0).norm()))
        .fold(0.0, nan_max);
    let eigen_plus_dev = per_sample
        .iter()
        .map(|(d, _)| (d.eigen_plus - e0).norm())
        .fold(0.0, nan_max);
    let reduction = per_sample.iter().map(|(_, r)| *r).fold(0.0, nan_max);
    let tol = opts.tol;

    let checks = vec![
        CheckReport::asserted("shift_gamma_1", fold(&|d| d.shift1), samples, tol),
        CheckReport::asserted("shift_gamma_2", fold(&|d| d.shift2), samples, tol)
            .with_note("factor prod_r (gamma_{m-1,r} - gamma_{m,i} + hbar/2)"),
        CheckReport::recorded_only("shift_gamma_2_minus_half", fold(&|d| d.shift2_minus_half), samples)
            .with_note("same with -hbar/2 in the factor; not an identity"),
        CheckReport::asserted("shift_gamma_3", fold(&|d| d.shift3), samples, tol)
            .with_note("numerator factors with +hbar/2"),
        CheckReport::recorded_only("shift_gamma_3_minus_half", fold(&|d| d.shift3_minus_half), samples)
            .with_note("same with -hbar/2 in the numerator; not an identity"),
        CheckReport::asserted("delta_measure", fold(&|d| d.delta_measure), samples, tol),
        CheckReport::asserted("eigenvalue_E_mN", eigen_dev, samples, tol)
            .with_value(e0)
            .with_note(format!(
                "hbar * eigenvalue; expected (-1)^m = {}",
                if m % 2 == 0 { "+1" } else { "-1" }
            )),
        CheckReport::recorded_only("eigenvalue_E_mN_plus_half", eigen_plus_dev, samples)
            .with_note("deviation of the +hbar/2 variant from the recorded constant"),
        CheckReport::asserted("pairing_reduction", reduction, samples, tol)
            .with_note("delta-reduced pairing integrand vs MB integrand at gamma_{N-1} + hbar/2"),
    ];
    Ok(SuiteReport::new(
        format!("right_support(m={m},N={big_n})"),
        seed,
        tol,
        checks,
    ))
}
