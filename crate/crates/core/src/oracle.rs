//! Independent reference values used by the test suites.

/// Euler-Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `K₀(z)` for real `0 < z ≲ 10` from the ascending series
/// `K₀(z) = −(ln(z/2) + γ) I₀(z) + Σ_{k≥1} (z²/4)^k/(k!)² H_k`.
pub fn bessel_k0(z: f64) -> f64 {
    assert!(z > 0.0 && z.is_finite(), "bessel_k0 needs z > 0");
    let q = z * z / 4.0;
    let mut term = 1.0;
    let mut i0 = 1.0;
    let mut tail = 0.0;
    let mut harmonic = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        tail += term * harmonic;
        if term < 1e-18 * i0 {
            break;
        }
    }
    -((z / 2.0).ln() + EULER_GAMMA) * i0 + tail
}

/// `Ψ^{(1,2)}_{(0,0)}(x)|_{ħ=1} = 2K₀(2e^{x/2})`.
pub fn psi_1_2_zero_spectrum(x: f64) -> f64 {
    2.0 * bessel_k0(2.0 * (x / 2.0).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tabulated_values() {
        // Abramowitz & Stegun table 9.8
        assert!((bessel_k0(1.0) - 0.421_024_438_240_708_3).abs() < 1e-15);
        assert!((bessel_k0(2.0) - 0.113_893_872_749_533_4).abs() < 1e-15);
        assert!((psi_1_2_zero_spectrum(0.0) - 0.227_787_745_499_066_8).abs() < 1e-14);
    }
}
