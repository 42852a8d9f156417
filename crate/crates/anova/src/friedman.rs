//! The three Friedman regression benchmarks on `[0, 1]^d`.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::dataset::Dataset;
use crate::error::{AppError, AppResult};
use crate::rng::{stream, Purpose};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FriedmanSpec {
    pub which: u8,
    pub dimension: usize,
    /// Standard deviation of the additive Gaussian noise.
    pub sigma: f64,
}

impl FriedmanSpec {
    pub fn new(which: u8) -> AppResult<Self> {
        match which {
            1 => Ok(FriedmanSpec { which, dimension: 10, sigma: 1.0 }),
            2 => Ok(FriedmanSpec { which, dimension: 4, sigma: 125.0 }),
            3 => Ok(FriedmanSpec { which, dimension: 4, sigma: 0.1 }),
            _ => Err(AppError::Config(format!("Friedman function must be 1, 2 or 3, got {which}"))),
        }
    }

    pub fn noiseless(self) -> Self {
        FriedmanSpec { sigma: 0.0, ..self }
    }
}

pub fn s1(x: f64) -> f64 {
    100.0 * x
}

pub fn s2(x: f64) -> f64 {
    520.0 * PI * x + 40.0 * PI
}

pub fn s4(x: f64) -> f64 {
    10.0 * x + 1.0
}

pub fn friedman_eval(spec: &FriedmanSpec, x: &[f64]) -> AppResult<f64> {
    if x.len() != spec.dimension {
        return Err(AppError::Data(format!(
            "Friedman {} expects {} coordinates, got {}",
            spec.which,
            spec.dimension,
            x.len()
        )));
    }
    Ok(match spec.which {
        1 => 10.0 * (PI * x[0] * x[1]).sin() + 20.0 * (x[2] - 0.5).powi(2) + 10.0 * x[3] + 5.0 * x[4],
        2 => {
            let inner = s2(x[1]) * x[2] - 1.0 / (s2(x[1]) * s4(x[3]));
            s1(x[0]).hypot(inner)
        }
        3 => {
            let num = s2(x[1]) * x[2] - 1.0 / (s2(x[1]) * s4(x[3]));
            let den = s1(x[0]);
            if den == 0.0 {
                // limit of arctan(num / t) as t -> 0+; a simultaneous zero numerator gives 0
                if num == 0.0 {
                    0.0
                } else {
                    num.signum() * FRAC_PI_2
                }
            } else {
                (num / den).atan()
            }
        }
        _ => unreachable!("validated in FriedmanSpec::new"),
    })
}

/// `m` uniform nodes with noisy values, drawn from the `(seed, rep)` streams
/// for either the training or the test role.
pub fn friedman_sample(spec: &FriedmanSpec, m: usize, seed: u64, rep: usize, test: bool) -> AppResult<Dataset> {
    if m == 0 {
        return Err(AppError::Config("sample size must be at least 1".into()));
    }
    let (nodes_purpose, noise_purpose) =
        if test { (Purpose::TestNodes, Purpose::TestNoise) } else { (Purpose::TrainNodes, Purpose::TrainNoise) };
    let mut node_rng = stream(seed, rep, nodes_purpose);
    let mut noise_rng = stream(seed, rep, noise_purpose);
    let d = spec.dimension;
    let features: Vec<f64> = (0..m * d).map(|_| node_rng.random::<f64>()).collect();
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let targets = features
        .chunks(d)
        .map(|x| Ok(friedman_eval(spec, x)? + spec.sigma * normal.sample(&mut noise_rng)))
        .collect::<AppResult<Vec<f64>>>()?;
    let columns = (1..=d).map(|i| format!("x{i}")).collect();
    Dataset::new(d, features, targets, columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_values() {
        let f1 = FriedmanSpec::new(1).unwrap();
        let mut x = [0.5; 10];
        let v = friedman_eval(&f1, &x).unwrap();
        assert!((v - (10.0 * (PI / 4.0).sin() + 7.5)).abs() < 1e-12);
        x[5..].copy_from_slice(&[0.1, 0.9, 0.3, 0.0, 1.0]);
        assert_eq!(friedman_eval(&f1, &x).unwrap(), v);

        let f2 = FriedmanSpec::new(2).unwrap();
        assert!((friedman_eval(&f2, &[0.0; 4]).unwrap() - 1.0 / (40.0 * PI)).abs() < 1e-15);
        assert!(friedman_eval(&f2, &[0.0; 3]).is_err());
        assert!(FriedmanSpec::new(4).is_err());
    }

    #[test]
    fn f3_at_zero_scale_takes_the_limit() {
        let f3 = FriedmanSpec::new(3).unwrap();
        assert_eq!(friedman_eval(&f3, &[0.0, 0.5, 0.5, 0.5]).unwrap(), FRAC_PI_2);
        assert_eq!(friedman_eval(&f3, &[0.0, 0.5, 0.0, 0.5]).unwrap(), -FRAC_PI_2);
        let near = friedman_eval(&f3, &[1e-300, 0.5, 0.5, 0.5]).unwrap();
        assert!((near - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn noiseless_sample_is_exact() {
        let spec = FriedmanSpec::new(2).unwrap().noiseless();
        let ds = friedman_sample(&spec, 20, 5, 0, false).unwrap();
        for (x, y) in ds.rows().zip(ds.targets()) {
            assert_eq!(*y, friedman_eval(&spec, x).unwrap());
        }
    }

    #[test]
    fn noise_statistics() {
        let spec = FriedmanSpec::new(1).unwrap();
        let ds = friedman_sample(&spec, 200, 42, 0, false).unwrap();
        let resid: Vec<f64> = ds.rows().zip(ds.targets()).map(|(x, y)| y - friedman_eval(&spec, x).unwrap()).collect();
        let mean = resid.iter().sum::<f64>() / 200.0;
        let sd = (resid.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / 199.0).sqrt();
        assert!(mean.abs() <= 0.25, "mean {mean}");
        assert!((0.8..=1.2).contains(&sd), "sd {sd}");
    }

    #[test]
    fn sampling_is_deterministic() {
        let spec = FriedmanSpec::new(3).unwrap();
        let a = friedman_sample(&spec, 50, 9, 2, true).unwrap();
        let b = friedman_sample(&spec, 50, 9, 2, true).unwrap();
        let c = friedman_sample(&spec, 50, 9, 2, false).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
