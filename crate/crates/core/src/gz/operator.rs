use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use super::array::{position_count, TriangularArray};

/// Coefficient of one operator term, a function of the whole array.
pub type Coeff = Arc<dyn Fn(&TriangularArray) -> Complex64 + Send + Sync>;

/// `coeff(γ)·e^{ħ shift·∂}`.
#[derive(Clone)]
pub struct Term {
    pub coeff: Coeff,
    pub shift: Vec<i32>,
}

/// Finite sum of coefficient × shift terms acting on functions of a
/// triangular array of size `N`.
#[derive(Clone)]
pub struct DifferenceOperator {
    big_n: usize,
    hbar: f64,
    terms: Vec<Term>,
}

/// Value of `A·f` together with `Σ |coeff|·|f(shifted)|`, the scale against
/// which cancellations are judged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Applied {
    pub value: Complex64,
    pub magnitude: f64,
}

impl std::fmt::Debug for DifferenceOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DifferenceOperator")
            .field("N", &self.big_n)
            .field("hbar", &self.hbar)
            .field("terms", &self.terms.len())
            .finish()
    }
}

impl DifferenceOperator {
    pub fn zero(big_n: usize, hbar: f64) -> Self {
        DifferenceOperator {
            big_n,
            hbar,
            terms: Vec::new(),
        }
    }

    /// Multiplication by `c(γ)`.
    pub fn multiplication(
        big_n: usize,
        hbar: f64,
        c: impl Fn(&TriangularArray) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        DifferenceOperator {
            big_n,
            hbar,
            terms: vec![Term {
                coeff: Arc::new(c),
                shift: vec![0; position_count(big_n)],
            }],
        }
    }

    pub fn from_terms(big_n: usize, hbar: f64, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| t.shift.len() == position_count(big_n)));
        DifferenceOperator { big_n, hbar, terms }
    }

    pub fn size(&self) -> usize {
        self.big_n
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `A∘B`: coefficient `a(γ)·b(γ + ħ s_A)`, shift `s_A + s_B`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.big_n, other.big_n, "operators on different arrays");
        let hbar = self.hbar;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let (ca, cb) = (a.coeff.clone(), b.coeff.clone());
                let sa = a.shift.clone();
                let identity = sa.iter().all(|&s| s == 0);
                let coeff: Coeff = if identity {
                    Arc::new(move |g| ca(g) * cb(g))
                } else {
                    Arc::new(move |g| {
                        let left = ca(g);
                        if left == Complex64::new(0.0, 0.0) {
                            return left;
                        }
                        left * cb(&g.shifted(&sa, hbar))
                    })
                };
                let shift = a.shift.iter().zip(&b.shift).map(|(x, y)| x + y).collect();
                terms.push(Term { coeff, shift });
            }
        }
        DifferenceOperator {
            big_n: self.big_n,
            hbar,
            terms,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let f = t.coeff.clone();
                Term {
                    coeff: Arc::new(move |g| c * f(g)),
                    shift: t.shift.clone(),
                }
            })
            .collect();
        DifferenceOperator { terms, ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        DifferenceOperator { terms, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// `[A, B] = A∘B − B∘A`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    /// `(A·f)(γ)`; terms with identical shifts share one evaluation of `f`.
    pub fn apply(&self, f: &dyn Fn(&TriangularArray) -> Complex64, g: &TriangularArray) -> Complex64 {
        self.apply_measured(f, g).value
    }

    pub fn apply_measured(
        &self,
        f: &dyn Fn(&TriangularArray) -> Complex64,
        g: &TriangularArray,
    ) -> Applied {
        let mut groups: BTreeMap<&[i32], (Complex64, f64)> = BTreeMap::new();
        for t in &self.terms {
            let c = t.coeff.as_ref()(g);
            let e = groups.entry(&t.shift).or_insert((Complex64::new(0.0, 0.0), 0.0));
            e.0 += c;
            e.1 += c.norm();
        }
        let mut value = Complex64::new(0.0, 0.0);
        let mut magnitude = 0.0;
        for (shift, (c, abs_c)) in groups {
            if abs_c == 0.0 {
                continue;
            }
            let fv = f(&g.shifted(shift, self.hbar));
            value += c * fv;
            magnitude += abs_c * fv.norm();
        }
        Applied { value, magnitude }
    }
}

/// Relative deviation between two applications, judged on the larger of
/// their term magnitudes.
pub fn deviation(a: Applied, b: Applied) -> f64 {
    let scale = a.magnitude.max(b.magnitude);
    if scale == 0.0 {
        return 0.0;
    }
    (a.value - b.value).norm() / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gz::array::position;

    fn shift_op(big_n: usize, n: usize, i: usize, k: i32) -> DifferenceOperator {
        let mut shift = vec![0; position_count(big_n)];
        shift[position(n, i)] = k;
        DifferenceOperator::from_terms(
            big_n,
            1.0,
            vec![Term {
                coeff: Arc::new(|_| Complex64::new(1.0, 0.0)),
                shift,
            }],
        )
    }

    #[test]
    fn composition_rule() {
        // (γ₁₁ · e^{ħ∂₁₁}) ∘ (γ₁₁ · e^{ħ∂₁₁}) f = γ₁₁ (γ₁₁ + ħ) f(γ₁₁ + 2ħ)
        let x = DifferenceOperator::multiplication(2, 1.0, |g| g.get(1, 1));
        let a = x.compose(&shift_op(2, 1, 1, 1));
        let aa = a.compose(&a);
        let mut g = TriangularArray::zeros(2);
        g.set(1, 1, Complex64::new(0.3, 0.2));
        let f = |g: &TriangularArray| g.get(1, 1) * g.get(1, 1);
        let got = aa.apply(&f, &g);
        let z = g.get(1, 1);
        let want = z * (z + 1.0) * (z + 2.0) * (z + 2.0);
        assert!((got - want).norm() < 1e-14);
    }

    #[test]
    fn self_commutator_vanishes() {
        let x = DifferenceOperator::multiplication(2, 1.0, |g| g.get(1, 1));
        let a = x.compose(&shift_op(2, 1, 1, -1));
        let mut g = TriangularArray::zeros(2);
        g.set(1, 1, Complex64::new(0.7, -0.1));
        let f = |g: &TriangularArray| g.get(1, 1).exp();
        assert!(a.commutator(&a).apply(&f, &g).norm() < 1e-15);
    }
}
