mod common;

use anova_core::{eval_1d, eval_tensor, BasisKind, Complex64};
use common::{gauss_chebyshev_unit, gauss_legendre};
use proptest::prelude::*;

#[test]
fn cosine_is_orthonormal() {
    let rule = gauss_legendre(200, 0.0, 1.0);
    for k in 0..=8 {
        for l in 0..=8 {
            let ip: f64 = rule
                .iter()
                .map(|&(x, w)| w * eval_1d::<f64>(BasisKind::Cosine, k, x).unwrap() * eval_1d::<f64>(BasisKind::Cosine, l, x).unwrap())
                .sum();
            let want = if k == l { 1.0 } else { 0.0 };
            assert!((ip - want).abs() < 1e-8, "k={k} l={l} ip={ip}");
        }
    }
}

#[test]
fn exponential_is_orthonormal() {
    let rule = gauss_legendre(200, -0.5, 0.5);
    for k in -8..=8 {
        for l in -8..=8 {
            let ip: Complex64 = rule
                .iter()
                .map(|&(x, w)| {
                    let a: Complex64 = eval_1d(BasisKind::Exponential, k, x).unwrap();
                    let b: Complex64 = eval_1d(BasisKind::Exponential, l, x).unwrap();
                    a * b.conj() * w
                })
                .sum();
            let want = if k == l { 1.0 } else { 0.0 };
            assert!((ip - want).norm() < 1e-8, "k={k} l={l} ip={ip}");
        }
    }
}

#[test]
fn chebyshev_is_orthonormal_under_its_measure() {
    let rule = gauss_chebyshev_unit(64);
    for k in 0..=8 {
        for l in 0..=8 {
            let ip: f64 = rule
                .iter()
                .map(|&(x, w)| {
                    w * eval_1d::<f64>(BasisKind::Chebyshev, k, x).unwrap() * eval_1d::<f64>(BasisKind::Chebyshev, l, x).unwrap()
                })
                .sum();
            let want = if k == l { 1.0 } else { 0.0 };
            assert!((ip - want).abs() < 1e-8, "k={k} l={l} ip={ip}");
        }
    }
}

#[test]
fn exponential_has_unit_modulus() {
    for k in -10..=10 {
        for j in 0..50 {
            let x = -0.5 + j as f64 / 50.0;
            let v: Complex64 = eval_1d(BasisKind::Exponential, k, x).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-14);
        }
    }
}

proptest! {
    #[test]
    fn tensor_equals_product_of_factors(
        ks in prop::collection::vec(0i64..12, 1..6),
        seed in prop::collection::vec(0.0f64..=1.0, 6),
    ) {
        let x = &seed[..ks.len()];
        for kind in [BasisKind::Cosine, BasisKind::Chebyshev] {
            let t: f64 = eval_tensor(kind, &ks, x).unwrap();
            let p: f64 = ks.iter().zip(x).map(|(&k, &xi)| eval_1d::<f64>(kind, k, xi).unwrap()).product();
            prop_assert!((t - p).abs() <= 1e-14 * p.abs().max(1.0));
        }
        let xs: Vec<f64> = x.iter().map(|v| v - 0.5).collect();
        let ks: Vec<i64> = ks.iter().map(|k| k - 6).collect();
        let t: Complex64 = eval_tensor(BasisKind::Exponential, &ks, &xs).unwrap();
        let p: Complex64 = ks.iter().zip(&xs).map(|(&k, &xi)| eval_1d::<Complex64>(BasisKind::Exponential, k, xi).unwrap()).product();
        prop_assert!((t - p).norm() <= 1e-14);
    }

    #[test]
    fn zero_frequency_is_exactly_one(x in 0.0f64..=1.0) {
        for kind in BasisKind::ALL {
            prop_assert_eq!(eval_1d::<Complex64>(kind, 0, x).unwrap(), Complex64::new(1.0, 0.0));
        }
        prop_assert_eq!(eval_1d::<f64>(BasisKind::Cosine, 0, x).unwrap(), 1.0);
        prop_assert_eq!(eval_1d::<f64>(BasisKind::Chebyshev, 0, x).unwrap(), 1.0);
    }
}
