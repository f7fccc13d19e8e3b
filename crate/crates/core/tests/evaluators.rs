use pwhit_core::mb::{contour_offset, max_step};
use pwhit_core::residue::order_sum;
use pwhit_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spec(m: usize, n: usize, lambda: &[f64], hbar: f64, x: f64) -> SpectralData {
    SpectralData::new(m, n, lambda.to_vec(), hbar, x).unwrap()
}

/// Spectrum with pairwise gaps ≥ `gap` and all differences at least 0.05ħ
/// away from ħℤ.
fn random_spectrum(rng: &mut ChaCha8Rng, n: usize, hbar: f64, gap: f64) -> Vec<f64> {
    loop {
        let l: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.2..1.2)).collect();
        let ok = (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let d = (l[i] - l[j]).abs();
                let r = d / hbar;
                d >= gap && (r - r.round()).abs() > 0.05
            })
        });
        if ok {
            return l;
        }
    }
}

#[test]
fn bessel_oracle() {
    for x in [-4.0, -2.0, 0.0, 1.0] {
        let s = spec(1, 2, &[0.0, 0.0], 1.0, x);
        let got = evaluate(&s, 1e-10).unwrap().value.to_complex();
        let want = oracle::psi_1_2_zero_spectrum(x);
        assert!((got.re - want).abs() <= 1e-8 * want, "x = {x}: {got} vs {want}");
        assert!(got.im.abs() <= 1e-8 * want);
    }
    let v = evaluate(&spec(1, 2, &[0.0, 0.0], 1.0, 0.0), 1e-10).unwrap().value.re();
    assert!((v - 0.2277877).abs() < 1e-7);
}

#[test]
fn contour_shift_and_node_doubling() {
    let s = spec(2, 4, &[0.9, 0.4, -0.35, -1.15], 1.0, -3.0);
    let c = auto_contour(&s, 1e-10).unwrap();
    let base = eval_mb(&s, &c).unwrap().value;
    let doubled = ContourConfig {
        nodes_per_dim: 2 * (c.nodes_per_dim - 1) + 1,
        ..c
    };
    assert!(eval_mb(&s, &doubled).unwrap().value.rel_diff(base) < 1e-9);
    // a second contour further right; same step rule, generous extent
    let delta = contour_offset(&s, 1e-10) * 0.6;
    let step = max_step(&s, delta, 1e-10);
    let shifted = ContourConfig {
        epsilon: s.max_lambda() + delta,
        half_extent: c.half_extent * 1.25,
        nodes_per_dim: (2.5 * c.half_extent / step).ceil() as usize | 1,
        tol: 1e-10,
    };
    assert!(eval_mb(&s, &shifted).unwrap().value.rel_diff(base) < 1e-8);
}

#[test]
fn cross_method_agreement() {
    let cases: [(usize, usize, &[f64], f64); 4] = [
        (1, 3, &[0.7, -0.1, -0.6], -3.0),
        (2, 4, &[0.9, 0.4, -0.35, -1.15], -4.0),
        (2, 5, &[1.05, 0.52, 0.1, -0.41, -0.97], -5.0),
        (2, 3, &[0.45, -0.2, 0.9], -3.0),
    ];
    for (m, n, l, x) in cases {
        let s = spec(m, n, l, 1.0, x);
        let a = evaluate(&s, 1e-9).unwrap();
        let b = eval_residue_series(&s, &SeriesConfig::default()).unwrap();
        assert!(b.converged);
        assert!(a.value.rel_diff(b.value) < 1e-7, "({m},{n}) x={x}");
    }
}

#[test]
fn hbar_other_than_one() {
    let s = spec(2, 4, &[0.9, 0.4, -0.35, -1.15], 0.7, -3.0);
    let a = evaluate(&s, 1e-9).unwrap();
    let b = eval_residue_series(&s, &SeriesConfig::default()).unwrap();
    assert!(a.value.rel_diff(b.value) < 1e-7);
}

#[test]
fn asymptotic_ratio() {
    for (m, n, l) in [(1usize, 2usize, &[0.5, 0.0][..]), (1, 3, &[0.6, 0.0, -0.7])] {
        let s = spec(m, n, l, 1.0, -12.0);
        let v = evaluate(&s, 1e-10).unwrap().value;
        let r = (v / leading_asymptotic(&s).unwrap()).to_complex();
        assert!((r.re - 1.0).abs() <= 1e-3 && r.im.abs() < 1e-6, "({m},{n}): {r}");
    }
}

#[test]
fn order_zero_partial_sum_is_the_leading_asymptotic() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10 {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(1..n);
        let hbar = rng.gen_range(0.5..1.5);
        let l = random_spectrum(&mut rng, n, hbar, 0.1);
        let s = spec(m, n, &l, hbar, rng.gen_range(-6.0..-1.0));
        let (s0, _) = order_sum(&s, 0).unwrap();
        assert!(s0.rel_diff(leading_asymptotic(&s).unwrap()) < 1e-12);
    }
}

#[test]
fn permutation_and_translation() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..6 {
        let n = rng.gen_range(2..=4);
        let m = rng.gen_range(1..n.min(3));
        let l = random_spectrum(&mut rng, n, 1.0, 0.3);
        let x = rng.gen_range(-5.0..-1.0);
        let s = spec(m, n, &l, 1.0, x);
        let base = evaluate(&s, 1e-10).unwrap().value;

        let mut p = l.clone();
        p.rotate_left(1);
        p.swap(0, n - 1);
        let sp = s.with_lambda(p);
        assert!(evaluate(&sp, 1e-10).unwrap().value.rel_diff(base) < 1e-10);
        let r0 = eval_residue_series(&s, &SeriesConfig::default()).unwrap().value;
        let r1 = eval_residue_series(&sp, &SeriesConfig::default()).unwrap().value;
        assert!(r0.rel_diff(r1) < 1e-13);

        let d = rng.gen_range(-0.5..0.5);
        let st = s.with_lambda(l.iter().map(|v| v + d).collect());
        let factor = LogComplex::new(-(m as f64) * d * x, 0.0);
        assert!(evaluate(&st, 1e-10).unwrap().value.rel_diff(base * factor) < 1e-8);
    }
}

#[test]
fn quadrature_is_deterministic() {
    let s = spec(2, 4, &[0.9, 0.4, -0.35, -1.15], 1.0, -2.0);
    let a = evaluate(&s, 1e-9).unwrap();
    let b = evaluate(&s, 1e-9).unwrap();
    assert_eq!(a, b);
}
