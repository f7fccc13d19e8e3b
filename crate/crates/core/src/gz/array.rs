use num_complex::Complex64;

use crate::error::{Error, Result};

/// Number of positions `(n, i)`, `1 ≤ i ≤ n ≤ N`.
pub fn position_count(big_n: usize) -> usize {
    big_n * (big_n + 1) / 2
}

/// Flat 0-based offset of the 1-based position `(n, i)`.
#[inline]
pub fn position(n: usize, i: usize) -> usize {
    debug_assert!(1 <= i && i <= n);
    n * (n - 1) / 2 + i - 1
}

/// Gelfand-Zetlin pattern `γ_{n,i}`, `1 ≤ i ≤ n ≤ N`; row `N` holds the spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularArray {
    big_n: usize,
    entries: Vec<Complex64>,
}

impl TriangularArray {
    pub fn zeros(big_n: usize) -> Self {
        TriangularArray {
            big_n,
            entries: vec![Complex64::new(0.0, 0.0); position_count(big_n)],
        }
    }

    /// Build from rows `1..=N`; row `n` must have exactly `n` entries.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let big_n = rows.len();
        if big_n == 0 {
            return Err(Error::InvalidInput("empty triangular array".into()));
        }
        let mut entries = Vec::with_capacity(position_count(big_n));
        for (k, row) in rows.iter().enumerate() {
            if row.len() != k + 1 {
                return Err(Error::InvalidInput(format!(
                    "row {} has {} entries, expected {}",
                    k + 1,
                    row.len(),
                    k + 1
                )));
            }
            entries.extend_from_slice(row);
        }
        Ok(TriangularArray { big_n, entries })
    }

    pub fn size(&self) -> usize {
        self.big_n
    }

    /// `γ_{n,i}`, 1-based.
    #[inline]
    pub fn get(&self, n: usize, i: usize) -> Complex64 {
        self.entries[position(n, i)]
    }

    pub fn try_get(&self, n: usize, i: usize) -> Result<Complex64> {
        if n == 0 || n > self.big_n || i == 0 || i > n {
            return Err(Error::IndexOutOfRange(format!(
                "position ({n}, {i}) in an array with N = {}",
                self.big_n
            )));
        }
        Ok(self.get(n, i))
    }

    #[inline]
    pub fn set(&mut self, n: usize, i: usize, v: Complex64) {
        self.entries[position(n, i)] = v;
    }

    pub fn row(&self, n: usize) -> &[Complex64] {
        let start = position(n, 1);
        &self.entries[start..start + n]
    }

    pub fn row_sum(&self, n: usize) -> Complex64 {
        if n == 0 {
            return Complex64::new(0.0, 0.0);
        }
        self.row(n).iter().sum()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// `γ + ħ·shift`, shift indexed by flat position.
    pub fn shifted(&self, shift: &[i32], hbar: f64) -> Self {
        let mut out = self.clone();
        for (e, &s) in out.entries.iter_mut().zip(shift) {
            if s != 0 {
                *e += hbar * s as f64;
            }
        }
        out
    }
}
