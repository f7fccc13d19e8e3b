//! Gelfand-Zetlin scaffolding: the difference-operator realization of
//! `gl_N`, its twists and adjoints, the Whittaker vectors, and numerical
//! checks of the identities used to reduce the pairing integral to the
//! Mellin-Barnes form.

pub mod array;
pub mod combin;
pub mod generators;
pub mod measure;
pub mod operator;
pub mod sampling;
pub mod support;
pub mod verify;
pub mod whittaker;

use serde::{Deserialize, Serialize};

pub use array::TriangularArray;
pub use combin::{combin1, combin2, complete_homogeneous};
pub use generators::{build_en_n, element, gen, nested_commutator, twist, GenKind, Permutation};
pub use measure::GzMeasure;
pub use operator::{DifferenceOperator, Term};
pub use support::{verify_right_support_relations, SupportConstraints};
pub use verify::{verify_combin, verify_operator_algebra};
pub use whittaker::{psi_l, verify_left_whittaker};

/// Default acceptance threshold for the pointwise identities.
pub const IDENTITY_TOL: f64 = 1e-9;

/// One identity (or one recorded quantity) inside a suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    /// Recorded-only checks never fail the suite.
    pub asserted: bool,
    pub pass: bool,
    pub max_deviation: f64,
    pub samples: usize,
    /// Observed constant (re, im), e.g. a Whittaker eigenvalue times ħ.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub recorded: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn asserted(name: impl Into<String>, max_deviation: f64, samples: usize, tol: f64) -> Self {
        CheckReport {
            name: name.into(),
            asserted: true,
            pass: max_deviation <= tol,
            max_deviation,
            samples,
            recorded: None,
            note: None,
        }
    }

    pub fn recorded_only(name: impl Into<String>, max_deviation: f64, samples: usize) -> Self {
        CheckReport {
            name: name.into(),
            asserted: false,
            pass: true,
            max_deviation,
            samples,
            recorded: None,
            note: None,
        }
    }

    pub fn with_value(mut self, v: num_complex::Complex64) -> Self {
        self.recorded = Some([v.re, v.im]);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// A named group of checks with its overall verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub tol: f64,
    pub pass: bool,
    /// Largest deviation over the asserted checks.
    pub max_deviation: f64,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, seed: u64, tol: f64, checks: Vec<CheckReport>) -> Self {
        let asserted = checks.iter().filter(|c| c.asserted);
        let pass = asserted.clone().all(|c| c.pass);
        let max_deviation = asserted.map(|c| c.max_deviation).fold(0.0, nan_max);
        SuiteReport {
            suite: suite.into(),
            seed,
            tol,
            pass,
            max_deviation,
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| c.asserted && !c.pass)
    }
}

/// `max` that propagates NaN, so a broken evaluation can never pass.
pub(crate) fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}
