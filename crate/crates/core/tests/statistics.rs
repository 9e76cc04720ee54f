//! Margin of error against hand-derived t quantiles.

use std::f64::consts::PI;
use std::path::PathBuf;

use vmorph_core::bench::margin_of_error;

fn samples(name: &str) -> Vec<f64> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/stats").join(name);
    std::fs::read_to_string(path)
        .unwrap()
        .split_whitespace()
        .map(|w| w.parse().unwrap())
        .collect()
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Gamma((df + 1) / 2) / Gamma(df / 2) for integer df, from the factorial
/// and half-integer product forms.
fn gamma_ratio(df: u32) -> f64 {
    // Gamma(k + 1/2) = (2k)! / (4^k k!) sqrt(pi); Gamma(k) = (k - 1)!
    let half = |k: u32| (1..=k).map(|i| (2 * i - 1) as f64 / 2.0).product::<f64>() * PI.sqrt();
    let whole = |k: u32| (1..k).map(f64::from).product::<f64>();
    if df % 2 == 0 {
        half(df / 2) / whole(df / 2)
    } else {
        whole(df.div_ceil(2)) / half(df / 2)
    }
}

fn t_density(x: f64, df: u32) -> f64 {
    let v = f64::from(df);
    gamma_ratio(df) / (v * PI).sqrt() * (1.0 + x * x / v).powf(-(v + 1.0) / 2.0)
}

/// P(0 <= T <= x) by composite Simpson's rule.
fn t_mass(x: f64, df: u32) -> f64 {
    let n = 4_000;
    let h = x / n as f64;
    let mut s = t_density(0.0, df) + t_density(x, df);
    for i in 1..n {
        s += t_density(i as f64 * h, df) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// Two-sided quantile: the x with P(-x <= T <= x) = confidence.
fn t_quantile(confidence: f64, df: u32) -> f64 {
    let (mut lo, mut hi) = (0.0, 50.0);
    for _ in 0..80 {
        let mid = (lo + hi) / 2.0;
        if 2.0 * t_mass(mid, df) < confidence {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / 2.0
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * b.abs()
}

#[test]
fn three_samples_use_closed_form_quantile() {
    let xs = samples("three.txt");
    let (_, sd) = mean_sd(&xs);
    for c in [0.8f64, 0.9, 0.95, 0.99] {
        // df = 2: t = sqrt(2c^2 / (1 - c^2))
        let t = (2.0 * c * c / (1.0 - c * c)).sqrt();
        let want = t * sd / 3f64.sqrt();
        let got = margin_of_error(&xs, c).unwrap();
        assert!(close(got, want), "{c}: {got} vs {want}");
    }
    assert!(close(margin_of_error(&xs, 0.95).unwrap(), 4.302_652_729_749_464 * sd / 3f64.sqrt()));
}

#[test]
fn fixture_samples_match_integrated_quantile() {
    let xs = samples("samples.txt");
    assert_eq!(xs.len(), 25);
    let (_, sd) = mean_sd(&xs);
    for c in [0.9, 0.95, 0.99] {
        let want = t_quantile(c, 24) * sd / 5.0;
        let got = margin_of_error(&xs, c).unwrap();
        assert!(close(got, want), "{c}: {got} vs {want}");
    }
}

#[test]
fn constant_samples_give_zero() {
    assert_eq!(margin_of_error(&[0.3; 25], 0.95).unwrap(), 0.0);
    assert_eq!(margin_of_error(&[7.0, 7.0], 0.99).unwrap(), 0.0);
}

#[test]
fn oracle_sanity() {
    // tabulated two-sided 95% value for df = 24 is 2.064
    assert!((t_quantile(0.95, 24) - 2.064).abs() < 5e-4);
    // df = 1 is the Cauchy distribution
    assert!((t_quantile(0.9, 1) - (PI * 0.45).tan()).abs() < 1e-6);
}
