//! Damped least squares via LSQR (Paige & Saunders, 1982).
//!
//! Minimizes `||y - F g||^2 + lambda ||g||^2` using only applications of `F`
//! and `F^*`. The damping enters the bidiagonalization as `sqrt(lambda)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::operator::LinearOperator;
use crate::scalar::{norm2, Scalar};

/// Default relative stopping threshold.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Iteration budget per unknown when none is configured.
pub const DEFAULT_ITERATIONS_PER_UNKNOWN: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Regularization weight `lambda >= 0`.
    pub lambda: f64,
    /// `None` means `10 * |I(U)|`.
    pub max_iterations: Option<usize>,
    pub tolerance: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { lambda: 0.0, max_iterations: None, tolerance: DEFAULT_TOLERANCE }
    }
}

impl SolverConfig {
    pub fn with_lambda(lambda: f64) -> Self {
        SolverConfig { lambda, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(Error::InvalidConfig(alloc::format!("lambda must be finite and >= 0, got {}", self.lambda)));
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(Error::InvalidConfig(alloc::format!("tolerance must lie in (0, 1), got {}", self.tolerance)));
        }
        if self.max_iterations == Some(0) {
            return Err(Error::InvalidConfig("max_iterations must be at least 1".into()));
        }
        Ok(())
    }

    pub fn iteration_budget(&self, unknowns: usize) -> usize {
        self.max_iterations.unwrap_or(DEFAULT_ITERATIONS_PER_UNKNOWN * unknowns.max(1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The right-hand side is zero, or orthogonal to the range; the solution is zero.
    Trivial,
    /// The (damped) system is compatible to within the tolerance.
    Residual,
    /// The normal equations are satisfied to within the tolerance.
    LeastSquares,
    /// The iteration budget ran out first.
    MaxIterations,
}

impl StopReason {
    pub fn converged(self) -> bool {
        !matches!(self, StopReason::MaxIterations)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution<T> {
    pub coefficients: Vec<T>,
    pub iterations: usize,
    /// `||(y, 0) - (F; sqrt(lambda) I) g|| / ||y||` at exit.
    pub relative_residual: f64,
    pub stop: StopReason,
    /// Damped residual norm after every iteration, starting with `||y||`.
    pub residual_history: Vec<f64>,
}

pub fn lsqr_solve<T: Scalar, A: LinearOperator<T> + ?Sized>(op: &A, rhs: &[T], cfg: &SolverConfig) -> Result<Solution<T>> {
    cfg.validate()?;
    let (m, n) = (op.nrows(), op.ncols());
    if m == 0 || n == 0 {
        return Err(Error::EmptySystem);
    }
    if rhs.len() != m {
        return Err(Error::LengthMismatch { expected: m, found: rhs.len() });
    }
    if let Some(i) = rhs.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }

    let damp = libm::sqrt(cfg.lambda);
    let tol = cfg.tolerance;
    let max_iter = cfg.iteration_budget(n);

    let mut x = vec![T::zero(); n];
    let mut u = rhs.to_vec();
    let mut beta = norm2(&u);
    let bnorm = beta;
    let mut history = vec![bnorm];

    if beta == 0.0 {
        return Ok(Solution { coefficients: x, iterations: 0, relative_residual: 0.0, stop: StopReason::Trivial, residual_history: history });
    }
    scale(&mut u, 1.0 / beta);
    let mut v = vec![T::zero(); n];
    op.apply_adjoint_add(&u, &mut v);
    let mut alpha = norm2(&v);
    if alpha == 0.0 {
        return Ok(Solution { coefficients: x, iterations: 0, relative_residual: 1.0, stop: StopReason::Trivial, residual_history: history });
    }
    scale(&mut v, 1.0 / alpha);
    let mut w = v.clone();

    let mut rhobar = alpha;
    let mut phibar = beta;
    let mut anorm = 0.0f64;
    let mut res2 = 0.0f64;
    let mut xxnorm = 0.0f64;
    let (mut cs2, mut sn2, mut z) = (-1.0f64, 0.0f64, 0.0f64);
    let mut rnorm = beta;
    let mut stop = StopReason::MaxIterations;
    let mut iterations = 0;

    while iterations < max_iter {
        iterations += 1;

        // next bidiagonalization step: beta u = A v - alpha u, alpha v = A^* u - beta v
        scale(&mut u, -alpha);
        op.apply_add(&v, &mut u);
        beta = norm2(&u);
        anorm = libm::sqrt(anorm * anorm + alpha * alpha + beta * beta + cfg.lambda);
        if beta > 0.0 {
            scale(&mut u, 1.0 / beta);
            scale(&mut v, -beta);
            op.apply_adjoint_add(&u, &mut v);
            alpha = norm2(&v);
            if alpha > 0.0 {
                scale(&mut v, 1.0 / alpha);
            }
        }

        // eliminate the damping term
        let rhobar1 = libm::hypot(rhobar, damp);
        let cs1 = rhobar / rhobar1;
        let sn1 = damp / rhobar1;
        let psi = sn1 * phibar;
        phibar *= cs1;

        // eliminate the subdiagonal beta
        let rho = libm::hypot(rhobar1, beta);
        let cs = rhobar1 / rho;
        let sn = beta / rho;
        let theta = sn * alpha;
        rhobar = -cs * alpha;
        let phi = cs * phibar;
        phibar *= sn;
        let tau = sn * phi;

        let t1 = phi / rho;
        let t2 = -theta / rho;
        for (xi, wi) in x.iter_mut().zip(w.iter_mut()) {
            *xi += wi.scale(t1);
        }
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi = *vi + wi.scale(t2);
        }

        // estimate ||x|| with a rotation on the right
        let delta = sn2 * rho;
        let gambar = -cs2 * rho;
        let rhs_z = phi - delta * z;
        let zbar = rhs_z / gambar;
        let xnorm = libm::sqrt(xxnorm + zbar * zbar);
        let gamma = libm::hypot(gambar, theta);
        cs2 = gambar / gamma;
        sn2 = theta / gamma;
        z = rhs_z / gamma;
        xxnorm += z * z;

        res2 += psi * psi;
        rnorm = libm::sqrt(phibar * phibar + res2);
        history.push(rnorm);
        let arnorm = alpha * libm::fabs(tau);

        let test1 = rnorm / bnorm;
        let test2 = if rnorm > 0.0 { arnorm / (anorm * rnorm) } else { 0.0 };
        let rtol = tol + tol * anorm * xnorm / bnorm;

        if test2 <= tol {
            stop = StopReason::LeastSquares;
            break;
        }
        if test1 <= rtol {
            stop = StopReason::Residual;
            break;
        }
        if beta == 0.0 || alpha == 0.0 {
            // exact breakdown: the Krylov space is exhausted
            stop = StopReason::LeastSquares;
            break;
        }
    }

    Ok(Solution { coefficients: x, iterations, relative_residual: rnorm / bnorm, stop, residual_history: history })
}

fn scale<T: Scalar>(v: &mut [T], s: f64) {
    for e in v {
        *e = e.scale(s);
    }
}
