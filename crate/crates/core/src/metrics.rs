use crate::error::{Error, Result};

fn check(reference: &[f64], approx: &[f64]) -> Result<()> {
    if reference.len() != approx.len() {
        return Err(Error::LengthMismatch { expected: reference.len(), found: approx.len() });
    }
    if reference.is_empty() {
        return Err(Error::EmptyData);
    }
    Ok(())
}

fn sum_sq_diff(reference: &[f64], approx: &[f64]) -> f64 {
    reference.iter().zip(approx).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// Mean squared error.
pub fn mse(reference: &[f64], approx: &[f64]) -> Result<f64> {
    check(reference, approx)?;
    Ok(sum_sq_diff(reference, approx) / reference.len() as f64)
}

pub fn rmse(reference: &[f64], approx: &[f64]) -> Result<f64> {
    mse(reference, approx).map(libm::sqrt)
}

/// `sqrt(sum |f - g|^2 / sum |f|^2)`.
pub fn relative_error(reference: &[f64], approx: &[f64]) -> Result<f64> {
    check(reference, approx)?;
    let denom: f64 = reference.iter().map(|a| a * a).sum();
    if denom == 0.0 {
        return Err(Error::UndefinedReference);
    }
    Ok(libm::sqrt(sum_sq_diff(reference, approx) / denom))
}
