//! One-dimensional orthonormal systems and their tensor products.
//!
//! * `Exponential`: `e^{2 pi i k x}` on the torus, identified with `[-0.5, 0.5)`.
//! * `Cosine`: `sqrt(2) cos(pi k x)` on `[0, 1]`, orthonormal w.r.t. Lebesgue measure.
//! * `Chebyshev`: `sqrt(2) cos(k arccos(2x - 1))` on `[0, 1]`, orthonormal w.r.t. the
//!   Chebyshev measure `dx / (pi sqrt(x (1 - x)))`. Uniformly scattered nodes do not
//!   follow that measure, so least-squares fits with this system tend to be poorly
//!   conditioned on such data.
//!
//! All three systems have `eta_0 == 1`.

use core::f64::consts::{PI, SQRT_2};
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// Periodic Fourier system.
    Exponential,
    /// Nonperiodic cosine system.
    Cosine,
    /// Nonperiodic Chebyshev system.
    Chebyshev,
}

impl BasisKind {
    pub const ALL: [BasisKind; 3] = [BasisKind::Exponential, BasisKind::Cosine, BasisKind::Chebyshev];

    pub fn is_periodic(self) -> bool {
        matches!(self, BasisKind::Exponential)
    }

    /// Whether the basis functions are complex valued.
    pub fn is_complex(self) -> bool {
        self.is_periodic()
    }

    /// Token used on the command line and in model files.
    pub fn token(self) -> &'static str {
        match self {
            BasisKind::Exponential => "per",
            BasisKind::Cosine => "cos",
            BasisKind::Chebyshev => "cheb",
        }
    }

    pub fn domain(self) -> &'static str {
        match self {
            BasisKind::Exponential => "[-0.5, 0.5)",
            BasisKind::Cosine | BasisKind::Chebyshev => "[0, 1]",
        }
    }

    /// Maps a coordinate into the canonical domain.
    ///
    /// Periodic coordinates are wrapped into `[-0.5, 0.5)`; nonperiodic ones must
    /// already lie in `[0, 1]`.
    pub fn map_to_domain(self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::Domain { value: x, domain: self.domain() });
        }
        match self {
            BasisKind::Exponential => {
                let w = x - libm::floor(x + 0.5);
                // floor rounding can land exactly on 0.5
                Ok(if w >= 0.5 { w - 1.0 } else { w })
            }
            BasisKind::Cosine | BasisKind::Chebyshev => {
                if (0.0..=1.0).contains(&x) {
                    Ok(x)
                } else {
                    Err(Error::Domain { value: x, domain: self.domain() })
                }
            }
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per" => Ok(BasisKind::Exponential),
            "cos" => Ok(BasisKind::Cosine),
            "cheb" => Ok(BasisKind::Chebyshev),
            other => Err(Error::InvalidConfig(alloc::format!(
                "unknown basis '{other}', expected one of per, cos, cheb"
            ))),
        }
    }
}

/// Evaluates `eta_k(x)` for a coordinate already mapped into the domain.
#[inline]
pub(crate) fn eval_1d_mapped<T: Scalar>(kind: BasisKind, k: i64, x: f64) -> Result<T> {
    if k == 0 {
        return Ok(T::one());
    }
    match kind {
        BasisKind::Exponential => T::cis(2.0 * PI * (k as f64) * x).ok_or(Error::ComplexBasisOnRealField),
        BasisKind::Cosine => {
            if k < 0 {
                return Err(Error::InvalidFrequency(k));
            }
            Ok(T::from_real(SQRT_2 * libm::cos(PI * (k as f64) * x)))
        }
        BasisKind::Chebyshev => {
            if k < 0 {
                return Err(Error::InvalidFrequency(k));
            }
            let t = (2.0 * x - 1.0).clamp(-1.0, 1.0);
            Ok(T::from_real(SQRT_2 * libm::cos((k as f64) * libm::acos(t))))
        }
    }
}

/// Evaluates the one-dimensional basis function `eta_k(x)`.
pub fn eval_1d<T: Scalar>(kind: BasisKind, k: i64, x: f64) -> Result<T> {
    if k < 0 && !kind.is_periodic() {
        return Err(Error::InvalidFrequency(k));
    }
    let x = kind.map_to_domain(x)?;
    eval_1d_mapped(kind, k, x)
}

/// Evaluates the tensor product `phi_k(x) = prod_i eta_{k_i}(x_i)`.
pub fn eval_tensor<T: Scalar>(kind: BasisKind, k: &[i64], x: &[f64]) -> Result<T> {
    if k.len() != x.len() {
        return Err(Error::DimensionMismatch { expected: k.len(), found: x.len() });
    }
    let mut acc = T::one();
    for (&ki, &xi) in k.iter().zip(x) {
        // domain is checked even where k_i = 0
        let xi = kind.map_to_domain(xi)?;
        if ki != 0 {
            acc *= eval_1d_mapped::<T>(kind, ki, xi)?;
        }
    }
    Ok(acc)
}
