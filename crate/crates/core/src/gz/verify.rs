//! Operator-algebra and partial-fraction suites on seeded random data.

use num_complex::Complex64;
use rayon::prelude::*;

use super::array::TriangularArray;
use super::combin::{combin1, combin1_expected, combin2};
use super::generators::{build_en_n, element, gen, nested_commutator, GenKind};
use super::measure::GzMeasure;
use super::operator::{deviation, DifferenceOperator};
use super::sampling::{random_array, random_test_function, stream, uniform_complex, TestFn};
use super::{nan_max, CheckReport, SuiteReport};
use crate::error::{Error, Result};

/// Sizes and thresholds of [`verify_operator_algebra`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraOptions {
    pub max_n: usize,
    pub functions: usize,
    pub arrays: usize,
    pub hbar: f64,
    pub tol: f64,
}

impl Default for AlgebraOptions {
    fn default() -> Self {
        AlgebraOptions {
            max_n: 5,
            functions: 20,
            arrays: 20,
            hbar: 1.0,
            tol: 1e-9,
        }
    }
}

struct Probe {
    functions: Vec<TestFn>,
    arrays: Vec<TriangularArray>,
}

impl Probe {
    fn new(big_n: usize, opts: &AlgebraOptions, seed: u64) -> Result<Self> {
        // functions and arrays live on disjoint stream ranges per N
        let base = (big_n as u64) << 32;
        let functions = (0..opts.functions as u64)
            .map(|k| random_test_function(&mut stream(seed, base + k), big_n))
            .collect();
        let arrays = (0..opts.arrays as u64)
            .map(|k| random_array(&mut stream(seed, base + (1 << 31) + k), big_n, opts.hbar))
            .collect::<Result<_>>()?;
        Ok(Probe { functions, arrays })
    }

    /// Largest relative deviation of `a·f` from `b·f` over all pairs.
    fn compare(&self, a: &DifferenceOperator, b: &DifferenceOperator) -> f64 {
        self.arrays
            .par_iter()
            .map(|g| {
                self.functions
                    .iter()
                    .map(|f| deviation(a.apply_measured(f.as_ref(), g), b.apply_measured(f.as_ref(), g)))
                    .fold(0.0, nan_max)
            })
            .reduce(|| 0.0, nan_max)
    }

    fn samples(&self) -> usize {
        self.functions.len() * self.arrays.len()
    }
}

/// gl_N relations on random test functions, for `2 ≤ N ≤ max_n`:
/// `[E_{n,n+1}, E_{n+1,n}] = E_nn − E_{n+1,n+1}`, closed-form `E_{n,N}` =
/// nested commutator, `E_{n,N}` from [`element`] = nested commutator,
/// `[E_{n,n+1}, E_{k,k+1}] = 0` for `|n−k| ≥ 2`, and `(A†)† = A`.
pub fn verify_operator_algebra(seed: u64, opts: AlgebraOptions) -> Result<SuiteReport> {
    if opts.max_n < 2 || opts.functions == 0 || opts.arrays == 0 {
        return Err(Error::InvalidInput(
            "need max_n >= 2 and at least one function and array".into(),
        ));
    }
    let h = opts.hbar;
    let mut checks = Vec::new();
    let zero = |n| DifferenceOperator::zero(n, h);
    for big_n in 2..=opts.max_n {
        let probe = Probe::new(big_n, &opts, seed)?;
        let ns = probe.samples();
        let mut gl = 0.0f64;
        for n in 1..big_n {
            let lhs = gen(GenKind::Raise(n), big_n, h)?.commutator(&gen(GenKind::Lower(n), big_n, h)?);
            let rhs = gen(GenKind::Cartan(n), big_n, h)?.sub(&gen(GenKind::Cartan(n + 1), big_n, h)?);
            gl = nan_max(gl, probe.compare(&lhs, &rhs));
        }
        checks.push(CheckReport::asserted(format!("N={big_n} [E_n,n+1, E_n+1,n] = E_nn - E_n+1,n+1"), gl, ns, opts.tol));

        let (mut closed, mut elem) = (0.0f64, 0.0f64);
        for n in 1..big_n {
            let nested = nested_commutator(n, big_n, h)?;
            closed = nan_max(closed, probe.compare(&build_en_n(n, big_n, h)?, &nested));
            if n + 1 < big_n {
                elem = nan_max(elem, probe.compare(&element(n, big_n, big_n, h)?, &nested));
            }
        }
        checks.push(CheckReport::asserted(format!("N={big_n} closed-form E_nN = nested commutator"), closed, ns, opts.tol));
        if big_n > 2 {
            checks.push(CheckReport::asserted(format!("N={big_n} element(n,N) = nested commutator"), elem, ns, opts.tol));
        }

        if big_n >= 4 {
            let mut serre = 0.0f64;
            for n in 1..big_n {
                for k in n + 2..big_n {
                    let c = gen(GenKind::Raise(n), big_n, h)?.commutator(&gen(GenKind::Raise(k), big_n, h)?);
                    serre = nan_max(serre, probe.compare(&c, &zero(big_n)));
                }
            }
            checks.push(CheckReport::asserted(format!("N={big_n} [E_n,n+1, E_k,k+1] = 0, |n-k| >= 2"), serre, ns, opts.tol));
        }

        let mu = GzMeasure::new(big_n, h);
        let mut inv = 0.0f64;
        for n in 1..big_n {
            for kind in [GenKind::Raise(n), GenKind::Lower(n)] {
                let a = gen(kind, big_n, h)?;
                inv = nan_max(inv, probe.compare(&mu.adjoint(&mu.adjoint(&a)), &a));
            }
        }
        checks.push(CheckReport::asserted(format!("N={big_n} adjoint involution"), inv, ns, opts.tol));

        if big_n >= 3 {
            let ratio = measure_ratio_deviation(&mu, &probe.arrays);
            checks.push(CheckReport::asserted(format!("N={big_n} closed-form measure shift ratio"), ratio, probe.arrays.len(), opts.tol));
        }
    }
    Ok(SuiteReport::new("operator_algebra", seed, opts.tol, checks))
}

/// Closed-form `μ(γ ± ħe_{n,i})/μ(γ)` against direct quotients.
fn measure_ratio_deviation(mu: &GzMeasure, arrays: &[TriangularArray]) -> f64 {
    let big_n = mu.big_n;
    let mut worst = 0.0f64;
    for g in arrays {
        let base = mu.eval(g);
        for n in 2..big_n {
            for i in 1..=n {
                for k in [-1, 1, 2] {
                    let mut t = vec![0; super::array::position_count(big_n)];
                    t[super::array::position(n, i)] = k;
                    let direct = mu.eval(&g.shifted(&t, mu.hbar)) / base;
                    let closed = mu.shift_ratio(g, &t);
                    worst = nan_max(worst, (direct - closed).norm() / closed.norm());
                }
            }
        }
    }
    worst
}

/// Partial-fraction identities for `1 ≤ n ≤ max_n` at `points` random
/// complex configurations each: `combin1(γ, p) = δ_{p,n−1}` for `p < n`,
/// `= h_{p−n+1}(γ)` for `n ≤ p < n + 3`, and `combin2(γ, c) = 1`.
pub fn verify_combin(max_n: usize, points: usize, seed: u64, tol: f64) -> Result<SuiteReport> {
    if max_n == 0 || points == 0 {
        return Err(Error::InvalidInput("need max_n >= 1 and points >= 1".into()));
    }
    let mut checks = Vec::new();
    for n in 1..=max_n {
        let per_point: Vec<(f64, f64, f64)> = (0..points as u64)
            .into_par_iter()
            .map(|k| {
                let mut rng = stream(seed, ((n as u64) << 32) + k);
                // well-separated points keep the partial fractions well conditioned
                let g: Vec<Complex64> = loop {
                    let g: Vec<Complex64> = (0..n).map(|_| uniform_complex(&mut rng, 1.0)).collect();
                    let sep = (0..n)
                        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                        .map(|(i, j)| (g[i] - g[j]).norm())
                        .fold(f64::INFINITY, f64::min);
                    if sep > 0.1 {
                        break g;
                    }
                };
                let c = uniform_complex(&mut rng, 1.0);
                let mut low = 0.0f64;
                for p in 0..n as u32 {
                    low = nan_max(low, (combin1(&g, p)? - combin1_expected(&g, p)).norm());
                }
                let mut high = 0.0f64;
                for p in n as u32..n as u32 + 3 {
                    let want = combin1_expected(&g, p);
                    high = nan_max(high, (combin1(&g, p)? - want).norm() / want.norm().max(1.0));
                }
                let two = (combin2(&g, c)? - 1.0).norm();
                Ok((low, high, two))
            })
            .collect::<Result<_>>()?;
        let fold = |f: fn(&(f64, f64, f64)) -> f64| per_point.iter().map(f).fold(0.0, nan_max);
        checks.push(CheckReport::asserted(format!("n={n} combin1 p<n = delta_(p,n-1)"), fold(|t| t.0), points, tol));
        checks.push(CheckReport::asserted(format!("n={n} combin1 p>=n = h_(p-n+1)"), fold(|t| t.1), points, tol));
        checks.push(CheckReport::asserted(format!("n={n} combin2 = 1"), fold(|t| t.2), points, tol));
    }
    Ok(SuiteReport::new("combin", seed, tol, checks))
}
