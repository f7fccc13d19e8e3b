//! `gl_N` generators in the Gelfand-Zetlin difference realization.
//!
//! * `E_kk = ħ⁻¹(Σ_j γ_{k,j} − Σ_i γ_{k−1,i})`
//! * `E_{n,n+1} = −ħ⁻¹ Σ_i [Π_j(γ_{n,i}−γ_{n+1,j}−ħ/2) / Π_{s≠i}(γ_{n,i}−γ_{n,s})] e^{−ħ∂_{n,i}}`
//! * `E_{n+1,n} = ħ⁻¹ Σ_i [Π_j(γ_{n,i}−γ_{n−1,j}+ħ/2) / Π_{s≠i}(γ_{n,i}−γ_{n,s})] e^{ħ∂_{n,i}}`

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::array::{position, position_count, TriangularArray};
use super::operator::{DifferenceOperator, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenKind {
    Cartan(usize),
    Raise(usize),
    Lower(usize),
}

fn check_hbar(hbar: f64) -> Result<()> {
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(Error::InvalidHbar(hbar));
    }
    Ok(())
}

fn vandermonde_row(g: &TriangularArray, n: usize, i: usize) -> Complex64 {
    let gi = g.get(n, i);
    (1..=n).filter(|&s| s != i).map(|s| gi - g.get(n, s)).product()
}

/// One of the Chevalley-type generators `E_kk`, `E_{n,n+1}`, `E_{n+1,n}`.
pub fn gen(kind: GenKind, big_n: usize, hbar: f64) -> Result<DifferenceOperator> {
    check_hbar(hbar)?;
    let out_of_range = |what: &str, k: usize, hi: usize| {
        Error::IndexOutOfRange(format!("{what} index {k} outside 1..={hi} for N = {big_n}"))
    };
    match kind {
        GenKind::Cartan(k) => {
            if k == 0 || k > big_n {
                return Err(out_of_range("cartan", k, big_n));
            }
            Ok(DifferenceOperator::multiplication(big_n, hbar, move |g| {
                (g.row_sum(k) - g.row_sum(k - 1)) / hbar
            }))
        }
        GenKind::Raise(n) | GenKind::Lower(n) => {
            if n == 0 || n >= big_n {
                return Err(out_of_range("raise/lower", n, big_n - 1));
            }
            let raise = matches!(kind, GenKind::Raise(_));
            let terms = (1..=n)
                .map(|i| {
                    let mut shift = vec![0; position_count(big_n)];
                    shift[position(n, i)] = if raise { -1 } else { 1 };
                    let coeff: Arc<dyn Fn(&TriangularArray) -> Complex64 + Send + Sync> = if raise {
                        Arc::new(move |g| {
                            let gi = g.get(n, i);
                            let num: Complex64 =
                                (1..=n + 1).map(|j| gi - g.get(n + 1, j) - hbar / 2.0).product();
                            -num / vandermonde_row(g, n, i) / hbar
                        })
                    } else {
                        Arc::new(move |g| {
                            let gi = g.get(n, i);
                            let num: Complex64 =
                                (1..n).map(|j| gi - g.get(n - 1, j) + hbar / 2.0).product();
                            num / vandermonde_row(g, n, i) / hbar
                        })
                    };
                    Term { coeff, shift }
                })
                .collect();
            Ok(DifferenceOperator::from_terms(big_n, hbar, terms))
        }
    }
}

/// `E_ab` for any `1 ≤ a, b ≤ N`, built from generators by commutators:
/// `E_ab = [E_{a,a+1}, E_{a+1,b}]` for `a < b − 1` and
/// `E_ab = [E_{a,a−1}, E_{a−1,b}]` for `a > b + 1`.
pub fn element(a: usize, b: usize, big_n: usize, hbar: f64) -> Result<DifferenceOperator> {
    if a == 0 || b == 0 || a > big_n || b > big_n {
        return Err(Error::IndexOutOfRange(format!(
            "E_({a},{b}) outside gl_{big_n}"
        )));
    }
    if a == b {
        gen(GenKind::Cartan(a), big_n, hbar)
    } else if b == a + 1 {
        gen(GenKind::Raise(a), big_n, hbar)
    } else if a == b + 1 {
        gen(GenKind::Lower(b), big_n, hbar)
    } else if a < b {
        Ok(gen(GenKind::Raise(a), big_n, hbar)?.commutator(&element(a + 1, b, big_n, hbar)?))
    } else {
        Ok(gen(GenKind::Lower(a - 1), big_n, hbar)?.commutator(&element(a - 1, b, big_n, hbar)?))
    }
}

/// `[[…[E_{n,n+1}, E_{n+1,n+2}], …], E_{N−1,N}]`.
pub fn nested_commutator(n: usize, big_n: usize, hbar: f64) -> Result<DifferenceOperator> {
    if n == 0 || n >= big_n {
        return Err(Error::IndexOutOfRange(format!("n = {n} outside 1..N-1, N = {big_n}")));
    }
    let mut acc = gen(GenKind::Raise(n), big_n, hbar)?;
    for k in n + 1..big_n {
        acc = acc.commutator(&gen(GenKind::Raise(k), big_n, hbar)?);
    }
    Ok(acc)
}

/// Closed form of `E_{n,N}` as a nested sum over one index per row
/// `N−1, N−2, …, n`: layer `t` sits in row `a = N−t` with index `i_t`, carries
/// `Π_{j≠i_{t−1}} (γ_{a,i_t} − γ_{a+1,j} − ħ/2) / Π_{k≠i_t}(γ_{a,i_t} − γ_{a,k})`
/// (no exclusion in the first layer) and shifts `γ_{a,i_t} → γ_{a,i_t} − ħ`.
/// The overall factor is `−1/ħ`.
pub fn build_en_n(n: usize, big_n: usize, hbar: f64) -> Result<DifferenceOperator> {
    check_hbar(hbar)?;
    if n == 0 || n >= big_n {
        return Err(Error::IndexOutOfRange(format!("n = {n} outside 1..N-1, N = {big_n}")));
    }
    let layers = big_n - n;
    let mut terms = Vec::new();
    let mut idx = vec![1usize; layers];
    loop {
        let choice = idx.clone();
        let mut shift = vec![0; position_count(big_n)];
        for (t, &i) in choice.iter().enumerate() {
            shift[position(big_n - 1 - t, i)] = -1;
        }
        let coeff = Arc::new(move |g: &TriangularArray| {
            let mut c = Complex64::new(-1.0 / hbar, 0.0);
            for (t, &i) in choice.iter().enumerate() {
                let a = big_n - 1 - t;
                let gi = g.get(a, i);
                let skip = if t == 0 { 0 } else { choice[t - 1] };
                for j in (1..=a + 1).filter(|&j| j != skip) {
                    c *= gi - g.get(a + 1, j) - hbar / 2.0;
                }
                c /= vandermonde_row(g, a, i);
            }
            c
        });
        terms.push(Term { coeff, shift });
        // odometer over i_t ∈ 1..=N−t
        let mut t = layers;
        loop {
            if t == 0 {
                return Ok(DifferenceOperator::from_terms(big_n, hbar, terms));
            }
            t -= 1;
            if idx[t] < big_n - 1 - t {
                idx[t] += 1;
                break;
            }
            idx[t] = 1;
        }
    }
}

/// Permutation of `{1..N}`, stored 0-based: `map[i] = w(i+1) − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(big_n: usize) -> Self {
        Permutation {
            map: (0..big_n).collect(),
        }
    }

    /// From 1-based images `[w(1), …, w(N)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let big_n = images.len();
        let mut seen = vec![false; big_n];
        for &w in images {
            if w == 0 || w > big_n || seen[w - 1] {
                return Err(Error::InvalidInput(format!("{images:?} is not a permutation")));
            }
            seen[w - 1] = true;
        }
        Ok(Permutation {
            map: images.iter().map(|w| w - 1).collect(),
        })
    }

    /// Simple transposition `s_k = (k, k+1)`.
    pub fn simple(k: usize, big_n: usize) -> Result<Self> {
        if k == 0 || k >= big_n {
            return Err(Error::IndexOutOfRange(format!("s_{k} in S_{big_n}")));
        }
        let mut p = Self::identity(big_n);
        p.map.swap(k - 1, k);
        Ok(p)
    }

    /// Coxeter element `c_n = s_n ⋯ s_1`, read left to right (`s_n` acts
    /// first): `i ↦ i+1` for `i ≤ n`, `n+1 ↦ 1`, fixing the rest.
    pub fn coxeter(n: usize, big_n: usize) -> Result<Self> {
        if n >= big_n {
            return Err(Error::IndexOutOfRange(format!("c_{n} in S_{big_n}")));
        }
        let mut p = Self::identity(big_n);
        for k in (1..=n).rev() {
            p = p.then(&Self::simple(k, big_n)?);
        }
        Ok(p)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        Permutation {
            map: self.map.iter().map(|&i| other.map[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![0; self.map.len()];
        for (i, &w) in self.map.iter().enumerate() {
            map[w] = i;
        }
        Permutation { map }
    }

    /// 1-based image.
    pub fn apply(&self, i: usize) -> usize {
        self.map[i - 1] + 1
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }
}

/// 1-based labels `(w⁻¹(i), w⁻¹(j))` of the twisted element `E^w_ij`.
pub fn twisted_label(i: usize, j: usize, w: &Permutation) -> (usize, usize) {
    let inv = w.inverse();
    (inv.apply(i), inv.apply(j))
}

/// `E^w_ij = E_{w⁻¹(i), w⁻¹(j)}`.
pub fn twist(i: usize, j: usize, w: &Permutation, hbar: f64) -> Result<DifferenceOperator> {
    let big_n = w.size();
    if i == 0 || j == 0 || i > big_n || j > big_n {
        return Err(Error::IndexOutOfRange(format!("E^w_({i},{j}) in gl_{big_n}")));
    }
    let (a, b) = twisted_label(i, j, w);
    element(a, b, big_n, hbar)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(rows: &[&[f64]]) -> TriangularArray {
        TriangularArray::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.1 * x)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn generator_examples() {
        let g = arr(&[&[0.3], &[0.7, -0.4]]);
        let one = |_: &TriangularArray| Complex64::new(1.0, 0.0);
        let h = 0.8;
        let c1 = gen(GenKind::Cartan(1), 2, h).unwrap().apply(&one, &g);
        assert!((c1 - g.get(1, 1) / h).norm() < 1e-15);
        let r = gen(GenKind::Raise(1), 2, h).unwrap().apply(&one, &g);
        let want = -(g.get(1, 1) - g.get(2, 1) - h / 2.0) * (g.get(1, 1) - g.get(2, 2) - h / 2.0) / h;
        assert!((r - want).norm() < 1e-15);
        let l = gen(GenKind::Lower(1), 2, h).unwrap().apply(&one, &g);
        assert!((l - 1.0 / h).norm() < 1e-15);
        assert_eq!(gen(GenKind::Raise(2), 3, h).unwrap().len(), 2);
        assert!(gen(GenKind::Raise(3), 3, h).is_err());
        assert!(gen(GenKind::Cartan(0), 3, h).is_err());
    }

    #[test]
    fn coxeter_cycle() {
        let c = Permutation::coxeter(2, 4).unwrap();
        assert_eq!((1..=4).map(|i| c.apply(i)).collect::<Vec<_>>(), vec![2, 3, 1, 4]);
        assert_eq!(Permutation::coxeter(0, 3).unwrap(), Permutation::identity(3));
        assert!(Permutation::from_images(&[1, 1]).is_err());
    }

    #[test]
    fn twisted_labels_match_expected_instances() {
        for (m, big_n) in [(2, 3), (3, 4), (3, 5), (4, 6)] {
            let w = Permutation::coxeter(m - 1, big_n).unwrap();
            assert_eq!(twisted_label(2, 1, &w), (1, m));
            assert_eq!(twisted_label(m + 1, m, &w), (m + 1, m - 1));
            assert_eq!(twisted_label(1, big_n, &w), (m, big_n));
            assert_eq!(twisted_label(m, big_n, &w), (m - 1, big_n));
        }
        let id = Permutation::identity(4);
        assert_eq!(twisted_label(3, 2, &id), (3, 2));
    }

    #[test]
    fn en_n_term_count() {
        // N−1 choices in the first layer, N−2 in the next, …
        assert_eq!(build_en_n(1, 4, 1.0).unwrap().len(), 3 * 2 * 1);
        assert_eq!(build_en_n(3, 4, 1.0).unwrap().len(), 3);
        assert!(build_en_n(4, 4, 1.0).is_err());
    }
}
