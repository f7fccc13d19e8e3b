use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::Hbar;

/// Relative margin (in units of ħ) below which `λ_i - λ_j` counts as lying on `ħℤ`.
pub const GENERICITY_MARGIN: f64 = 1e-6;

/// One problem instance: the Grassmannian `Gr(m, N)`, spectral parameters
/// `λ ∈ ℝ^N`, deformation `ħ > 0`, and the point `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub lambda: Vec<f64>,
    pub hbar: Hbar,
    pub x: f64,
}

impl SpectralData {
    pub fn new(m: usize, n: usize, lambda: Vec<f64>, hbar: f64, x: f64) -> Result<Self> {
        let s = SpectralData {
            m,
            n,
            lambda,
            hbar: Hbar::new(hbar)?,
            x,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 1 || self.m >= self.n {
            return Err(Error::InvalidInput(format!(
                "need 1 <= m < N, got m = {}, N = {}",
                self.m, self.n
            )));
        }
        if self.lambda.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "lambda has {} entries, expected N = {}",
                self.lambda.len(),
                self.n
            )));
        }
        if self.lambda.iter().any(|l| !l.is_finite()) || !self.x.is_finite() {
            return Err(Error::InvalidInput("lambda and x must be finite".into()));
        }
        Ok(())
    }

    pub fn h(&self) -> f64 {
        self.hbar.get()
    }

    pub fn max_lambda(&self) -> f64 {
        self.lambda.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Same instance at a different `x`.
    pub fn with_x(&self, x: f64) -> Self {
        SpectralData { x, ..self.clone() }
    }

    /// Same instance with a different spectrum.
    pub fn with_lambda(&self, lambda: Vec<f64>) -> Self {
        SpectralData {
            lambda,
            ..self.clone()
        }
    }

    /// Reject spectra with some `λ_i - λ_j` within `GENERICITY_MARGIN·ħ` of `ħℤ`.
    /// Indices in the error are 1-based.
    pub fn check_generic(&self) -> Result<()> {
        let h = self.h();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let d = self.lambda[i] - self.lambda[j];
                let r = d / h;
                if (r - r.round()).abs() < GENERICITY_MARGIN {
                    return Err(Error::NonGeneric {
                        i: i + 1,
                        j: j + 1,
                        diff: d,
                        margin: GENERICITY_MARGIN * h,
                    });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(SpectralData::new(0, 2, vec![0.0, 0.0], 1.0, 0.0).is_err());
        assert!(SpectralData::new(2, 2, vec![0.0, 0.0], 1.0, 0.0).is_err());
        assert!(SpectralData::new(1, 3, vec![0.0, 0.0], 1.0, 0.0).is_err());
        assert!(matches!(
            SpectralData::new(1, 2, vec![0.0, 0.0], -1.0, 0.0),
            Err(Error::InvalidHbar(_))
        ));
    }

    #[test]
    fn genericity() {
        let s = SpectralData::new(1, 3, vec![0.5, 0.0, -0.2], 1.0, -1.0).unwrap();
        assert!(s.check_generic().is_ok());
        let s = s.with_lambda(vec![1.5, 0.0, 0.5]);
        match s.check_generic() {
            Err(Error::NonGeneric { i, j, .. }) => assert_eq!((i, j), (1, 3)),
            other => panic!("unexpected {other:?}"),
        }
        let s = s.with_lambda(vec![0.0, 0.0, 0.3]);
        assert!(s.check_generic().is_err());
    }
}
