//! Independent reference implementations used as test oracles.
//!
//! Nothing here goes through the operator or the solver under test: dense
//! matrices are assembled entry by entry from `eval_tensor`, least-squares
//! problems are solved through the normal equations with nalgebra, and
//! quadrature rules are computed from scratch.
#![allow(dead_code)]

use anova_core::{eval_tensor, BasisKind, Complex64, FrequencyIndexUnion, Nodes, Scalar};
use nalgebra::{ComplexField, DMatrix, DVector};
use rand::Rng;

/// Dense `M x |I(U)|` design matrix, row-major, built pointwise.
pub fn dense_design<T: Scalar>(index: &FrequencyIndexUnion, nodes: &Nodes) -> Vec<T> {
    let freqs = index.frequencies();
    let mut a = Vec::with_capacity(nodes.len() * freqs.len());
    for x in nodes.rows() {
        for k in &freqs {
            a.push(eval_tensor::<T>(index.kind(), k, x).unwrap());
        }
    }
    a
}

pub fn dense_matvec<T: Scalar>(a: &[T], rows: usize, cols: usize, x: &[T]) -> Vec<T> {
    (0..rows).map(|i| (0..cols).map(|j| a[i * cols + j] * x[j]).sum()).collect()
}

pub fn dense_adjoint<T: Scalar>(a: &[T], rows: usize, cols: usize, y: &[T]) -> Vec<T> {
    (0..cols).map(|j| (0..rows).map(|i| a[i * cols + j].conj() * y[i]).sum()).collect()
}

/// Scalars nalgebra can factorize.
pub trait OracleField: Scalar + ComplexField<RealField = f64> {}
impl OracleField for f64 {}
impl OracleField for Complex64 {}

/// Solves `(A^* A + lambda I) g = A^* y` by LU on the normal equations.
pub fn normal_equations<T: OracleField>(a: &[T], rows: usize, cols: usize, y: &[T], lambda: f64) -> Vec<T> {
    let a = DMatrix::from_row_slice(rows, cols, a);
    let ah = a.adjoint();
    let mut n = &ah * &a;
    for j in 0..cols {
        n[(j, j)] += <T as Scalar>::from_real(lambda);
    }
    let rhs = &ah * DVector::from_column_slice(y);
    n.lu().solve(&rhs).expect("normal equations are singular").iter().copied().collect()
}

pub fn rel_err<T: Scalar>(got: &[T], want: &[T]) -> f64 {
    let num: f64 = got.iter().zip(want).map(|(a, b)| (*a - *b).abs2()).sum();
    let den: f64 = want.iter().map(|b| b.abs2()).sum();
    (num / den.max(f64::MIN_POSITIVE)).sqrt()
}

pub fn max_abs_diff<T: Scalar>(a: &[T], b: &[T]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (*x - *y).abs()).fold(0.0, f64::max)
}

/// Gauss-Legendre nodes and weights on `[a, b]` via Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let mut t = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
            let dt = p1 / dp;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - t * t) * dp * dp);
        out.push((0.5 * (b - a) * t + 0.5 * (a + b), 0.5 * (b - a) * w));
    }
    out
}

/// Gauss-Chebyshev rule for the Chebyshev probability measure on `[0, 1]`.
pub fn gauss_chebyshev_unit(n: usize) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|j| {
            let t = (std::f64::consts::PI * (2 * j - 1) as f64 / (2 * n) as f64).cos();
            ((t + 1.0) / 2.0, 1.0 / n as f64)
        })
        .collect()
}

pub fn random_nodes<R: Rng>(rng: &mut R, m: usize, d: usize, kind: BasisKind) -> Nodes {
    let (lo, hi) = if kind.is_periodic() { (-0.5, 0.5) } else { (0.0, 1.0) };
    Nodes::from_flat(d, (0..m * d).map(|_| rng.random_range(lo..hi)).collect()).unwrap()
}

/// Nodes drawn from the basis' orthogonality measure (arcsine law for Chebyshev).
pub fn measure_nodes<R: Rng>(rng: &mut R, m: usize, d: usize, kind: BasisKind) -> Nodes {
    if kind != BasisKind::Chebyshev {
        return random_nodes(rng, m, d, kind);
    }
    let pi = std::f64::consts::PI;
    Nodes::from_flat(d, (0..m * d).map(|_| (1.0 - (pi * rng.random_range(0.0..1.0)).cos()) / 2.0).collect()).unwrap()
}

pub trait RandomScalar: Scalar {
    fn random<R: Rng>(rng: &mut R) -> Self;
}

impl RandomScalar for f64 {
    fn random<R: Rng>(rng: &mut R) -> Self {
        rng.random_range(-1.0..1.0)
    }
}

impl RandomScalar for Complex64 {
    fn random<R: Rng>(rng: &mut R) -> Self {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    }
}

pub fn random_vec<T: RandomScalar, R: Rng>(rng: &mut R, n: usize) -> Vec<T> {
    (0..n).map(|_| T::random(rng)).collect()
}
