//! Direct contour quadrature of the Mellin-Barnes representation
//!
//! ```text
//! Ψ(x) = (2πi)^{-m} ∫_{(ε+iℝ)^m} e^{-(x/ħ)Σγ_i}
//!          Π_{i,j} Γ₁(γ_i - λ_j|ħ) / Π_{i≠k} Γ₁(γ_i - γ_k|ħ)  dγ
//! ```
//!
//! with a uniform trapezoid rule on `[ε - iT, ε + iT]` in every variable.
//! On the tensor grid all variables share the same real part, so the
//! reciprocal-gamma measure only depends on index differences; both the
//! one-variable factors and the pair factors are tabulated once and each node
//! costs a handful of additions.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logcomplex::{Compensated, LogComplex};
use crate::special::{ln_gamma1, ln_recip_gamma1};
use crate::spectral::SpectralData;

/// Largest number of integration variables handled by the tensor grid.
pub const MAX_QUADRATURE_DIM: usize = 3;

/// Lower bound on `nodes_per_dim`.
pub const MIN_NODES: usize = 16;

/// Relative error of a single tabulated integrand value (log-gamma accuracy).
pub const NODE_ROUNDING: f64 = 1e-14;

const GROWTH: f64 = 1.25;
const LN_2PI: f64 = 1.837_877_066_409_345_5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourConfig {
    /// Real part of every integration line; must exceed `max λ_j`.
    pub epsilon: f64,
    /// Truncation half-extent `T` of each line.
    pub half_extent: f64,
    pub nodes_per_dim: usize,
    /// Relative tolerance for the boundary-magnitude convergence check.
    pub tol: f64,
}

impl ContourConfig {
    pub fn step(&self) -> f64 {
        2.0 * self.half_extent / (self.nodes_per_dim as f64 - 1.0)
    }

    pub fn validate(&self, s: &SpectralData) -> Result<()> {
        let h = s.h();
        if !(self.epsilon > s.max_lambda()) {
            return Err(Error::InvalidInput(format!(
                "contour offset {} must exceed max lambda {}",
                self.epsilon,
                s.max_lambda()
            )));
        }
        if !(self.half_extent > 0.0 && self.half_extent.is_finite()) {
            return Err(Error::InvalidInput("half extent must be positive".into()));
        }
        if self.nodes_per_dim < MIN_NODES {
            return Err(Error::InvalidInput(format!(
                "nodes_per_dim must be at least {MIN_NODES}"
            )));
        }
        if self.step() > h / 4.0 * (1.0 + 1e-12) {
            return Err(Error::InvalidInput(format!(
                "trapezoid step {} exceeds hbar/4 = {}",
                self.step(),
                h / 4.0
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidInput("tol must be positive".into()));
        }
        Ok(())
    }
}

/// Result of [`eval_mb`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MbEstimate {
    pub value: LogComplex,
    /// `|T - T_inner| / |value|`, where `T_inner` drops the outer shell
    /// `T/1.25 < |y_i| ≤ T`; an upper estimate of the truncation error.
    pub rel_truncation: f64,
    /// Discretization error predicted from the nested grid of step `2h`: the
    /// trapezoid error decays like `e^{-a/h}`, so halving the step squares the
    /// relative error, `d_h ≈ d_{2h}²` with `d_{2h} = |T_h - T_{2h}|/|T_h|`
    /// (`d_{2h}` itself once it exceeds 1). `None` when the node count is even
    /// and no nested grid exists.
    pub rel_discretization: Option<f64>,
    /// `NODE_ROUNDING · Σ|f| / |Σf|`: rounding amplified by cancellation.
    pub rel_rounding: f64,
    /// `ln` of the largest normalized integrand magnitude on the grid boundary.
    pub boundary_log_mag: f64,
    pub nodes: usize,
}

impl MbEstimate {
    /// Combined relative error estimate.
    pub fn rel_error(&self) -> f64 {
        self.rel_truncation + self.rel_discretization.unwrap_or(0.0) + self.rel_rounding
    }
}

/// The integrand (without the `(2πi)^{-m}` normalization) at `γ ∈ ℂ^m`.
pub fn integrand(gamma: &[Complex64], s: &SpectralData) -> Result<LogComplex> {
    if gamma.len() != s.m {
        return Err(Error::InvalidInput(format!(
            "expected {} integration variables, got {}",
            s.m,
            gamma.len()
        )));
    }
    let hbar = s.hbar;
    let mut ln = Complex64::new(0.0, 0.0);
    for g in gamma {
        ln += -(s.x / s.h()) * g;
        for l in &s.lambda {
            ln += ln_gamma1(g - l, hbar)?;
        }
    }
    let mut value = LogComplex::from_ln(ln);
    for (i, gi) in gamma.iter().enumerate() {
        for (k, gk) in gamma.iter().enumerate() {
            if i != k {
                value = value * ln_recip_gamma1(gi - gk, hbar);
            }
        }
    }
    Ok(value)
}

/// Tabulated factors on a uniform grid `y_k = -T + k·step`, `γ = ε + i y`.
struct Grid {
    m: usize,
    n: usize,
    /// `ln` of the one-variable factor at node k.
    line: Vec<Complex64>,
    /// `ln` of `1/(Γ₁(i·step·d)Γ₁(-i·step·d))` for `d ≥ 1`; entry 0 is unused
    /// (the measure vanishes on the diagonal, which the walk never visits).
    pair: Vec<Complex64>,
    /// First index of the inner box `|y| ≤ T/GROWTH`.
    inner_lo: usize,
}

/// One visited node of [`Grid::walk`].
#[derive(Clone, Copy)]
struct Node {
    ln: Complex64,
    weight: f64,
    all_even: bool,
    inner: bool,
    boundary: bool,
}

impl Grid {
    fn new(s: &SpectralData, epsilon: f64, half_extent: f64, n: usize) -> Result<Self> {
        let step = 2.0 * half_extent / (n as f64 - 1.0);
        let hbar = s.hbar;
        let line = (0..n)
            .map(|k| {
                let g = Complex64::new(epsilon, -half_extent + k as f64 * step);
                let mut acc = -(s.x / s.h()) * g;
                for l in &s.lambda {
                    acc += ln_gamma1(g - l, hbar)?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        let pair = if s.m > 1 {
            (0..n)
                .map(|d| {
                    if d == 0 {
                        return Complex64::new(f64::NAN, f64::NAN);
                    }
                    let z = Complex64::new(0.0, step * d as f64);
                    (ln_recip_gamma1(z, hbar) * ln_recip_gamma1(-z, hbar)).ln()
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(Grid {
            m: s.m,
            n,
            line,
            pair,
            inner_lo: ((n - 1) as f64 / 2.0 * (1.0 - 1.0 / GROWTH)).round() as usize,
        })
    }

    fn extend(&self, acc: &Node, k: usize, ln: Complex64) -> Node {
        let n = self.n;
        Node {
            ln,
            weight: acc.weight * trapezoid_weight(k, n),
            all_even: acc.all_even && k % 2 == 0,
            inner: acc.inner && k >= self.inner_lo && k < n - self.inner_lo,
            boundary: acc.boundary || k == 0 || k == n - 1,
        }
    }

    /// Visit every strictly increasing multi-index starting with `first`, in
    /// lexicographic order. The integrand is symmetric in the variables and
    /// vanishes when two of them coincide, so these nodes carry the whole sum
    /// up to a factor `m!`. Partial sums of `ln f` are carried down the
    /// nesting so the innermost loop adds one line and `m-1` pair terms.
    fn walk(&self, first: usize, visit: &mut impl FnMut(&Node)) {
        if first + self.m > self.n {
            return;
        }
        let root = Node {
            ln: Complex64::new(0.0, 0.0),
            weight: 1.0,
            all_even: true,
            inner: true,
            boundary: false,
        };
        let node = self.extend(&root, first, self.line[first]);
        let mut idx = [0usize; MAX_QUADRATURE_DIM];
        idx[0] = first;
        self.walk_from(1, &mut idx, &node, visit);
    }

    fn walk_from(
        &self,
        depth: usize,
        idx: &mut [usize; MAX_QUADRATURE_DIM],
        acc: &Node,
        visit: &mut impl FnMut(&Node),
    ) {
        if depth == self.m {
            visit(acc);
            return;
        }
        let last = self.n - (self.m - depth);
        for k in idx[depth - 1] + 1..=last {
            let mut ln = acc.ln + self.line[k];
            for &prev in &idx[..depth] {
                ln += self.pair[k - prev];
            }
            idx[depth] = k;
            let node = self.extend(acc, k, ln);
            self.walk_from(depth + 1, idx, &node, visit);
        }
    }
}

/// Nodes more than this many nats below the running peak are not summed;
/// `e^{-40}` is far below the rounding floor of the peak itself.
const SKIP_BELOW_PEAK: f64 = 40.0;

const FULL: usize = 0;
const COARSE: usize = 1;
const INNER: usize = 2;
const ABS: usize = 3;

/// Linear-space partial sums relative to a shared running scale:
/// the full grid, the nested grid of step `2h`, the inner box `|y| ≤ T/1.25`,
/// and `Σ|f|` (real channel only).
#[derive(Clone, Copy)]
struct SliceSums {
    scale: f64,
    re: [Compensated; 4],
    im: [Compensated; 4],
    boundary_max: f64,
    global_max: f64,
}

impl SliceSums {
    fn new() -> Self {
        SliceSums {
            scale: f64::NEG_INFINITY,
            re: [Compensated::default(); 4],
            im: [Compensated::default(); 4],
            boundary_max: f64::NEG_INFINITY,
            global_max: f64::NEG_INFINITY,
        }
    }

    fn rescale(&mut self, scale: f64) {
        if self.scale.is_finite() {
            let f = (self.scale - scale).exp();
            for c in self.re.iter_mut().chain(self.im.iter_mut()) {
                c.scale(f);
            }
        }
        self.scale = scale;
    }

    fn merge(&mut self, other: &SliceSums) {
        self.boundary_max = self.boundary_max.max(other.boundary_max);
        self.global_max = self.global_max.max(other.global_max);
        if !other.scale.is_finite() {
            return;
        }
        if other.scale > self.scale {
            self.rescale(other.scale);
        }
        let f = (other.scale - self.scale).exp();
        for ch in 0..4 {
            self.re[ch].add(other.re[ch].value() * f);
            self.im[ch].add(other.im[ch].value() * f);
        }
    }

    fn total(&self, ch: usize) -> LogComplex {
        if !self.scale.is_finite() {
            return LogComplex::ZERO;
        }
        let z = Complex64::new(self.re[ch].value(), self.im[ch].value());
        let lc = LogComplex::from_complex(z);
        if lc.is_zero() {
            lc
        } else {
            LogComplex::new(lc.log_mag + self.scale, lc.phase)
        }
    }
}

fn trapezoid_weight(k: usize, n: usize) -> f64 {
    if k == 0 || k == n - 1 {
        0.5
    } else {
        1.0
    }
}

fn scan(grid: &Grid, with_coarse: bool) -> SliceSums {
    let slices: Vec<SliceSums> = (0..grid.n)
        .into_par_iter()
        .map(|first| {
            let mut out = SliceSums::new();
            grid.walk(first, &mut |node| {
                let ln = node.ln;
                out.global_max = out.global_max.max(ln.re);
                if node.boundary {
                    out.boundary_max = out.boundary_max.max(ln.re);
                }
                if ln.re > out.scale {
                    out.rescale(ln.re);
                } else if ln.re < out.scale - SKIP_BELOW_PEAK {
                    return;
                }
                let mag = (ln.re - out.scale).exp() * node.weight;
                let (sin, cos) = ln.im.sin_cos();
                let (re, im) = (mag * cos, mag * sin);
                out.re[FULL].add(re);
                out.im[FULL].add(im);
                out.re[ABS].add(mag);
                if with_coarse && node.all_even {
                    out.re[COARSE].add(re);
                    out.im[COARSE].add(im);
                }
                if node.inner {
                    out.re[INNER].add(re);
                    out.im[INNER].add(im);
                }
            });
            out
        })
        .collect();
    // fixed-order reduction: the result does not depend on the thread count
    let mut total = SliceSums::new();
    for sl in &slices {
        total.merge(sl);
    }
    total
}

fn check_dim(s: &SpectralData) -> Result<()> {
    if s.m > MAX_QUADRATURE_DIM {
        return Err(Error::DeskScaleLimit(s.m));
    }
    Ok(())
}

/// Trapezoid approximation of `(2πi)^{-m} ∫_𝒞 integrand`.
pub fn eval_mb(s: &SpectralData, c: &ContourConfig) -> Result<MbEstimate> {
    s.validate()?;
    check_dim(s)?;
    c.validate(s)?;
    let m = s.m as f64;
    let n = c.nodes_per_dim;
    let step = c.step();
    let grid = Grid::new(s, c.epsilon, c.half_extent, n)?;
    let with_coarse = n % 2 == 1;
    let sums = scan(&grid, with_coarse);

    // dγ = i dy, so (i·step)^m / (2πi)^m = (step/2π)^m; m! for the ordered nodes
    let ln_mfact: f64 = (1..=s.m).map(|k| (k as f64).ln()).sum();
    let norm = LogComplex::new(m * (step.ln() - LN_2PI) + ln_mfact, 0.0);
    let value = sums.total(FULL) * norm;
    let boundary_log_mag = sums.boundary_max - m * LN_2PI;

    let rel_discretization = if with_coarse {
        let coarse_norm = LogComplex::new(m * ((2.0 * step).ln() - LN_2PI) + ln_mfact, 0.0);
        let coarse = sums.total(COARSE) * coarse_norm;
        let d = (value.add(-coarse).log_mag - value.log_mag).exp();
        Some(if d < 1.0 { d * d } else { d })
    } else {
        None
    };

    if value.is_zero() {
        return Err(Error::NonConvergence {
            estimate: f64::INFINITY,
            tol: c.tol,
        });
    }
    // the inner box misses the shell T/1.25 < |y| ≤ T; the tail beyond T is smaller still
    let inner = sums.total(INNER) * norm;
    let rel_truncation = (value.add(-inner).log_mag - value.log_mag).exp();
    if !(rel_truncation <= c.tol) {
        return Err(Error::NonConvergence {
            estimate: rel_truncation,
            tol: c.tol,
        });
    }

    let rel_rounding = NODE_ROUNDING * (sums.total(ABS).log_mag + norm.log_mag - value.log_mag).exp();

    Ok(MbEstimate {
        value,
        rel_truncation,
        rel_discretization,
        rel_rounding,
        boundary_log_mag,
        nodes: n.pow(s.m as u32),
    })
}

/// `m·max λ - Σ(top m of λ)`: how far the leading residues of a contour
/// sitting just right of `max λ` are from the contour itself.
fn intrinsic_gap(s: &SpectralData) -> f64 {
    let mut sorted = s.lambda.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let omega: f64 = sorted[..s.m].iter().sum();
    s.m as f64 * sorted[0] - omega
}

/// Distance `δ = ε - max λ` of the contour from the rightmost poles.
///
/// For `x < 0` the integrand on the contour exceeds `|Ψ|` by about
/// `e^{|x|(Δ + mδ)/ħ}` (`Δ` = [`intrinsic_gap`]), so node rounding is
/// amplified by that factor. `δ` is the largest value in `[ħ/16, ħ/P]` that
/// keeps the amplified rounding below `max(tol, 1e-11)`, where `P = C(m,2)`
/// (at least 1): each measure pair grows like `e^{π|Δy|/ħ}` and is only
/// balanced by the gamma factors up to powers of `|y|` whose exponents grow
/// with `ε`, so the offset shrinks with the number of pairs.
pub fn contour_offset(s: &SpectralData, tol: f64) -> f64 {
    let h = s.h();
    let cap = h / pair_count(s.m).max(1) as f64;
    if s.x >= 0.0 {
        return cap;
    }
    let ax = s.x.abs() / h;
    let budget = (tol.max(1e-11) / NODE_ROUNDING).ln() - ax * intrinsic_gap(s);
    (h * budget / (s.m as f64 * ax)).clamp(h / 16.0, cap)
}

fn pair_count(m: usize) -> usize {
    m * (m - 1) / 2
}

/// Trapezoid step used by [`auto_contour`] for a contour at distance `δ`
/// from the poles.
///
/// The aliasing error is about `e^{-2πδ/step}` times the integrand scale on
/// the line shifted towards the poles, relative to `|Ψ|` that scale is
/// `e^{|x|(Δ + (m-1)δ)/ħ}`; the step solves for a total below `tol`. It is
/// further capped at `ħ/4` and at `πħ/|x|` so the oscillation `e^{-ixy/ħ}`
/// stays resolved.
pub fn max_step(s: &SpectralData, delta: f64, tol: f64) -> f64 {
    let h = s.h();
    let ax = s.x.abs() / h;
    let mut amplification = 0.0;
    if s.x < 0.0 {
        amplification = ax * (intrinsic_gap(s) + (s.m as f64 - 1.0) * delta);
    }
    let needed = (1.0 / tol).ln() + amplification + 10f64.ln();
    (2.0 * PI * delta / needed)
        .min(h / 4.0)
        .min(PI * h / ax.max(1e-300))
}

/// Expected `ln |Ψ| - ln(integrand scale on the contour)` for `x < 0`: the
/// leading residues sit at `Re γ = λ`, a distance `mε - Σ(top m λ)` left of
/// the contour.
fn cancellation_log(s: &SpectralData, epsilon: f64) -> f64 {
    if s.x >= 0.0 {
        return 0.0;
    }
    let mut sorted = s.lambda.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let omega: f64 = sorted[..s.m].iter().sum();
    (s.x / s.h()) * (s.m as f64 * epsilon - omega)
}

/// Choose `ε`, `T` and the node count for a requested tolerance.
///
/// `ε = max λ + δ` with `δ` from [`contour_offset`]; `T` grows geometrically
/// from `2ħ` until the largest integrand magnitude on the truncation boundary
/// falls below `tol` times the peak magnitude near the contour center
/// (discounted by the expected cancellation for `x < 0`); the step comes
/// from [`max_step`].
pub fn auto_contour(s: &SpectralData, tol: f64) -> Result<ContourConfig> {
    s.validate()?;
    check_dim(s)?;
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidInput(format!("tol must lie in (0, 1), got {tol}")));
    }
    let h = s.h();
    let delta = contour_offset(s, tol);
    let epsilon = s.max_lambda() + delta;
    let probe_step = h / 2.0;
    let probe_nodes = |t: f64| 2 * (t / probe_step).ceil() as usize + 1;

    let center_t = 3.0 * h;
    let center = scan(&Grid::new(s, epsilon, center_t, probe_nodes(center_t))?, false);
    let reference = center.global_max + cancellation_log(s, epsilon);
    let target = tol.ln() + reference;

    let limit = 200.0 * h * s.n as f64;
    let mut t = 2.0 * h;
    loop {
        let grid = Grid::new(s, epsilon, t, probe_nodes(t))?;
        if boundary_max(&grid) < target {
            break;
        }
        t *= GROWTH;
        if t > limit {
            return Err(Error::ContourGiveUp {
                half_extent: t,
                limit,
            });
        }
    }
    let step = max_step(s, delta, tol);
    let mut nodes = (2.0 * t / step).ceil() as usize + 1;
    if nodes % 2 == 0 {
        nodes += 1;
    }
    nodes = nodes.max(MIN_NODES + 1);
    Ok(ContourConfig {
        epsilon,
        half_extent: t,
        nodes_per_dim: nodes,
        tol,
    })
}

fn boundary_max(grid: &Grid) -> f64 {
    (0..grid.n)
        .into_par_iter()
        .map(|first| {
            let mut best = f64::NEG_INFINITY;
            grid.walk(first, &mut |node| {
                if node.boundary {
                    best = best.max(node.ln.re);
                }
            });
            best
        })
        .reduce(|| f64::NEG_INFINITY, f64::max)
}

/// Extra truncation growths tried by [`evaluate`] when the boundary check fails.
const RETRIES: usize = 6;

/// Step halvings tried by [`evaluate`] when the nested-grid estimate exceeds `tol`.
const REFINEMENTS: usize = 2;

/// [`auto_contour`] followed by [`eval_mb`]. If the boundary check fails the
/// half extent grows by the usual factor (same step) up to [`RETRIES`] times;
/// if the discretization estimate exceeds `tol` the step is halved (same
/// extent) up to [`REFINEMENTS`] times. The step rule assumes the integrand
/// stays bounded across a strip of width `δ`, which a multiple pole at the
/// strip edge (coincident `λ`) or strong cancellation for `x > 0` can defeat.
pub fn evaluate(s: &SpectralData, tol: f64) -> Result<MbEstimate> {
    let mut c = auto_contour(s, tol)?;
    let (mut grown, mut refined) = (0, 0);
    loop {
        match eval_mb(s, &c) {
            Err(Error::NonConvergence { .. }) if grown < RETRIES => {
                let step = c.step();
                c.half_extent *= GROWTH;
                c.nodes_per_dim = (2.0 * c.half_extent / step).ceil() as usize + 1;
                if c.nodes_per_dim % 2 == 0 {
                    c.nodes_per_dim += 1;
                }
                c.half_extent = step * (c.nodes_per_dim - 1) as f64 / 2.0;
                grown += 1;
            }
            Ok(e) if refined < REFINEMENTS && e.rel_discretization.is_some_and(|d| d > tol) => {
                c.nodes_per_dim = 2 * (c.nodes_per_dim - 1) + 1;
                refined += 1;
            }
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn integrand_examples() {
        let s = SpectralData::new(1, 2, vec![0.0, 0.0], 1.0, 0.0).unwrap();
        let v = integrand(&[c(1.0, 0.0)], &s).unwrap().to_complex();
        assert!((v - c(1.0, 0.0)).norm() < 1e-14);
        let v = integrand(&[c(0.5, 0.0)], &s).unwrap().to_complex();
        assert!((v - c(PI, 0.0)).norm() < 1e-13);

        let s = SpectralData::new(2, 3, vec![0.3, -0.1, 0.2], 1.0, -1.0).unwrap();
        let g = c(1.1, 0.4);
        assert!(integrand(&[g, g], &s).unwrap().is_zero());
    }

    #[test]
    fn integrand_pole_is_an_error() {
        let s = SpectralData::new(1, 2, vec![0.0, 0.5], 1.0, 0.0).unwrap();
        assert!(matches!(
            integrand(&[c(-1.5, 0.0)], &s),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn config_validation() {
        let s = SpectralData::new(1, 2, vec![0.0, 0.0], 1.0, 0.0).unwrap();
        let good = ContourConfig {
            epsilon: 1.0,
            half_extent: 10.0,
            nodes_per_dim: 81,
            tol: 1e-10,
        };
        assert!(good.validate(&s).is_ok());
        assert!(ContourConfig { epsilon: 0.0, ..good }.validate(&s).is_err());
        assert!(ContourConfig { nodes_per_dim: 15, ..good }.validate(&s).is_err());
        assert!(ContourConfig { nodes_per_dim: 60, ..good }.validate(&s).is_err());
    }

    #[test]
    fn auto_contour_rejects_bad_tol_and_large_m() {
        let s = SpectralData::new(1, 2, vec![0.0, 0.0], 1.0, 0.0).unwrap();
        assert!(auto_contour(&s, 0.0).is_err());
        assert!(auto_contour(&s, -1.0).is_err());
        let s = SpectralData::new(4, 5, vec![0.0, 0.1, 0.2, 0.3, 0.4], 1.0, 0.0).unwrap();
        assert!(matches!(auto_contour(&s, 1e-8), Err(Error::DeskScaleLimit(4))));
    }

    #[test]
    fn auto_contour_node_invariant_m2() {
        let s = SpectralData::new(2, 4, vec![0.9, 0.4, -0.3, -1.1], 1.0, -2.0).unwrap();
        let cfg = auto_contour(&s, 1e-10).unwrap();
        assert!((cfg.epsilon - 1.9).abs() < 1e-15);
        assert!(cfg.nodes_per_dim as f64 >= 2.0 * cfg.half_extent / 0.25);
        assert!(cfg.validate(&s).is_ok());
    }

    #[test]
    fn value_is_real_for_real_data() {
        let s = SpectralData::new(2, 3, vec![0.4, -0.2, 0.7], 1.0, -1.0).unwrap();
        let est = evaluate(&s, 1e-12).unwrap();
        let z = est.value.to_complex();
        assert!(z.im.abs() <= 1e-10 * z.norm(), "{z}");
    }
}
