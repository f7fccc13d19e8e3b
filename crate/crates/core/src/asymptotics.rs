//! Leading `x → -∞` behavior as a sum over `S_N / (S_m × S_{N-m})`.
//!
//! Each coset is represented by the m-subset `S = {σ(1), …, σ(m)}`; the
//! summand is `e^{-(x/ħ)Σ_{i∈S}λ_i} Π_{i∈S, j∉S} Γ₁(λ_i - λ_j|ħ)`, and the
//! sum carries the multiplicity `m!` and the residue factor `ħ^m` of the
//! `dγ/(2πi)` measure.

use itertools::Itertools;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logcomplex::{LogAccumulator, LogComplex};
use crate::special::{ln_gamma, ln_gamma1, Hbar};
use crate::spectral::SpectralData;

/// Minimal-length coset representative, stored as a sorted 0-based subset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CosetRep {
    pub subset: Vec<usize>,
}

impl CosetRep {
    pub fn contains(&self, i: usize) -> bool {
        self.subset.binary_search(&i).is_ok()
    }

    /// `ω_m` transported by the coset: `Σ_{i∈S} λ_i`.
    pub fn weight(&self, lambda: &[f64]) -> f64 {
        self.subset.iter().map(|&i| lambda[i]).sum()
    }
}

/// The roots `λ_i - λ_j`, `i ∈ S`, `j ∉ S`, as 0-based pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSet {
    pub pairs: Vec<(usize, usize)>,
}

impl RootSet {
    pub fn for_coset(coset: &CosetRep, big_n: usize) -> Self {
        let pairs = coset
            .subset
            .iter()
            .flat_map(|&i| {
                (0..big_n)
                    .filter(|j| !coset.contains(*j))
                    .map(move |j| (i, j))
            })
            .collect();
        RootSet { pairs }
    }
}

/// All m-subsets of `{0..N-1}` in lexicographic order.
pub fn enumerate_cosets(m: usize, big_n: usize) -> Result<Vec<CosetRep>> {
    if m < 1 || m >= big_n {
        return Err(Error::InvalidInput(format!(
            "need 1 <= m < N, got m = {m}, N = {big_n}"
        )));
    }
    Ok((0..big_n)
        .combinations(m)
        .map(|subset| CosetRep { subset })
        .collect())
}

/// `Π_{i∈S, j∉S} Γ₁(λ_i - λ_j|ħ)`.
pub fn coset_coefficient(coset: &CosetRep, lambda: &[f64], hbar: Hbar) -> Result<LogComplex> {
    let roots = RootSet::for_coset(coset, lambda.len());
    let mut ln = Complex64::new(0.0, 0.0);
    for (i, j) in roots.pairs {
        let d = lambda[i] - lambda[j];
        ln += ln_gamma1(Complex64::new(d, 0.0), hbar).map_err(|_| Error::PairPole {
            i: i + 1,
            j: j + 1,
            diff: d,
        })?;
    }
    Ok(LogComplex::from_ln(ln))
}

/// One coset's contribution without the global `m! ħ^m` factor.
pub fn coset_term(coset: &CosetRep, s: &SpectralData) -> Result<LogComplex> {
    let exponent = -(s.x / s.h()) * coset.weight(&s.lambda);
    Ok(LogComplex::new(exponent, 0.0) * coset_coefficient(coset, &s.lambda, s.hbar)?)
}

/// `m! ħ^m Σ_S e^{-(x/ħ)Σ_S λ} Π_{i∈S,j∉S} Γ₁(λ_i - λ_j|ħ)`.
pub fn leading_asymptotic(s: &SpectralData) -> Result<LogComplex> {
    s.validate()?;
    let mut acc = LogAccumulator::new();
    for coset in enumerate_cosets(s.m, s.n)? {
        acc.push(coset_term(&coset, s)?);
    }
    let ln_m_factorial = ln_gamma(Complex64::new(s.m as f64 + 1.0, 0.0))?.re;
    let prefactor = LogComplex::new(ln_m_factorial + s.m as f64 * s.h().ln(), 0.0);
    Ok(acc.total() * prefactor)
}
