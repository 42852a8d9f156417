mod common;

use anova_core::{
    lsqr_solve, BandwidthProfile, BasisKind, Complex64, DesignOperator, FrequencyIndexUnion, LinearOperator, Nodes,
    SolverConfig, StopReason, TermSet,
};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tight(lambda: f64) -> SolverConfig {
    SolverConfig { lambda, max_iterations: Some(10_000), tolerance: 1e-14 }
}

struct Problem {
    index: FrequencyIndexUnion,
    nodes: Nodes,
}

impl Problem {
    fn new(rng: &mut ChaCha8Rng, kind: BasisKind, d: usize, ds: usize, bw: &[usize], m: usize) -> Self {
        let terms = TermSet::superposition(d, ds).unwrap();
        let bw = BandwidthProfile::from_orders(bw).unwrap();
        let index = FrequencyIndexUnion::build(&terms, &bw, kind).unwrap();
        let nodes = random_nodes(rng, m, d, kind);
        Problem { index, nodes }
    }
}

fn check_normal_equations<T: RandomScalar + OracleField>(p: &Problem, lambda: f64, rng: &mut ChaCha8Rng) {
    let op = DesignOperator::<T>::new(&p.index, &p.nodes).unwrap();
    let (m, n) = (p.nodes.len(), p.index.len());
    let y: Vec<T> = random_vec(rng, m);
    let sol = lsqr_solve(&op, &y, &tight(lambda)).unwrap();
    let dense = dense_design::<T>(&p.index, &p.nodes);
    let want = normal_equations(&dense, m, n, &y, lambda);
    let err = rel_err(&sol.coefficients, &want);
    assert!(err < 1e-8, "relative error {err:e} (m={m}, n={n}, lambda={lambda}, stop={:?})", sol.stop);
}

#[test]
fn forty_by_twelve_damped_example() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    // U_2 on d = 2 with N = (2, 4): 1 + 2 * 1 + 3^2 = 12 columns
    let full = TermSet::superposition(2, 2).unwrap();
    let bw = BandwidthProfile::from_orders(&[2, 4]).unwrap();
    let index = FrequencyIndexUnion::build(&full, &bw, BasisKind::Cosine).unwrap();
    assert_eq!(index.len(), 12);
    let nodes = random_nodes(&mut rng, 40, 2, BasisKind::Cosine);
    check_normal_equations::<f64>(&Problem { index, nodes }, 0.1, &mut rng);
}

#[test]
fn random_overdetermined_systems_match_normal_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..12 {
        let lambda = [0.0, 0.1, 1.0][trial % 3];
        let d = rng.random_range(2..=4);
        let p = Problem::new(&mut rng, BasisKind::Cosine, d, 2, &[6, 4], 120);
        check_normal_equations::<f64>(&p, lambda, &mut rng);
        let p = Problem::new(&mut rng, BasisKind::Chebyshev, d, 2, &[4, 2], 60);
        check_normal_equations::<f64>(&p, lambda, &mut rng);
        let p = Problem::new(&mut rng, BasisKind::Exponential, d, 2, &[6, 4], 150);
        check_normal_equations::<Complex64>(&p, lambda, &mut rng);
    }
}

#[test]
fn consistent_system_is_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let p = Problem::new(&mut rng, BasisKind::Cosine, 4, 2, &[6, 4], 200);
    let op = DesignOperator::<f64>::new(&p.index, &p.nodes).unwrap();
    let truth: Vec<f64> = random_vec(&mut rng, p.index.len());
    let y = op.matvec(&truth).unwrap();
    let sol = lsqr_solve(&op, &y, &tight(0.0)).unwrap();
    assert!(rel_err(&sol.coefficients, &truth) < 1e-7);
    assert!(sol.stop.converged());
}

#[test]
fn residual_history_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for lambda in [0.0, 0.5, 3.0] {
        let p = Problem::new(&mut rng, BasisKind::Cosine, 5, 2, &[6, 4], 150);
        let op = DesignOperator::<f64>::new(&p.index, &p.nodes).unwrap();
        let y: Vec<f64> = random_vec(&mut rng, 150);
        let sol = lsqr_solve(&op, &y, &tight(lambda)).unwrap();
        assert_eq!(sol.residual_history.len(), sol.iterations + 1);
        for w in sol.residual_history.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12), "{} > {}", w[1], w[0]);
        }
    }
}

#[test]
fn larger_damping_shrinks_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let p = Problem::new(&mut rng, BasisKind::Cosine, 3, 2, &[8, 4], 80);
    let op = DesignOperator::<f64>::new(&p.index, &p.nodes).unwrap();
    let y: Vec<f64> = random_vec(&mut rng, 80);
    let mut last = f64::INFINITY;
    for lambda in [0.0, 0.01, 0.1, 1.0, 10.0, 100.0] {
        let sol = lsqr_solve(&op, &y, &tight(lambda)).unwrap();
        let norm = sol.coefficients.iter().map(|c| c * c).sum::<f64>().sqrt();
        assert!(norm <= last + 1e-10, "lambda={lambda}: {norm} > {last}");
        last = norm;
    }
}

#[test]
fn identical_inputs_give_identical_bits() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let p = Problem::new(&mut rng, BasisKind::Exponential, 4, 2, &[6, 4], 100);
    let op = DesignOperator::<Complex64>::new(&p.index, &p.nodes).unwrap();
    let y: Vec<Complex64> = random_vec(&mut rng, 100);
    let cfg = SolverConfig::with_lambda(0.3);
    let a = lsqr_solve(&op, &y, &cfg).unwrap();
    let b = lsqr_solve(&op, &y, &cfg).unwrap();
    assert_eq!(a.coefficients, b.coefficients);
    assert_eq!(a.residual_history, b.residual_history);
}

#[test]
fn iteration_cap_is_respected() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let p = Problem::new(&mut rng, BasisKind::Cosine, 5, 2, &[8, 6], 300);
    let op = DesignOperator::<f64>::new(&p.index, &p.nodes).unwrap();
    let y: Vec<f64> = random_vec(&mut rng, 300);
    let cfg = SolverConfig { lambda: 0.0, max_iterations: Some(3), tolerance: 1e-14 };
    let sol = lsqr_solve(&op, &y, &cfg).unwrap();
    assert_eq!(sol.iterations, 3);
    assert_eq!(sol.stop, StopReason::MaxIterations);
    assert!(sol.coefficients.iter().all(|c| c.is_finite()));
    assert_eq!(op.ncols(), p.index.len());
}
