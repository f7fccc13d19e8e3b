//! Shared inputs for the criterion benches.

use pwhit_core::SpectralData;

/// Named evaluation points, small to moderate quadrature cost.
pub fn fixtures() -> Vec<(&'static str, SpectralData)> {
    let make = |m, lambda: &[f64], x| SpectralData::new(m, lambda.len(), lambda.to_vec(), 1.0, x).unwrap();
    vec![
        ("gr1_2", make(1, &[0.5, 0.0], -3.0)),
        ("gr1_3", make(1, &[0.7, -0.1, -0.6], -3.0)),
        ("gr2_4", make(2, &[0.9, 0.4, -0.35, -1.15], -3.0)),
        ("gr2_5", make(2, &[1.05, 0.52, 0.1, -0.41, -0.97], -3.0)),
    ]
}
