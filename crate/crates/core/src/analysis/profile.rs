use serde::{Deserialize, Serialize};

use super::census::SubgraphCensus;
use crate::error::{Error, Result};

/// Default additive constant in the ratio denominator.
pub const DEFAULT_SRP_EPSILON: f64 = 4.0;

/// Subgraph ratio profile against one null model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SrpProfile {
    /// `(real - null_mean) / (real + null_mean + epsilon)` per pattern.
    pub delta: [f64; 7],
    /// `delta` scaled to unit Euclidean norm, or all zeros when `delta` is.
    pub srp: [f64; 7],
    pub null_mean: [f64; 7],
    pub epsilon: f64,
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample standard deviation with the `n - 1` denominator.
pub fn sample_std(values: &[f64]) -> f64 {
    let mu = mean(values);
    let ss: f64 = values.iter().map(|x| (x - mu) * (x - mu)).sum();
    (ss / (values.len() as f64 - 1.0)).sqrt()
}

/// Profile of `real` against the mean of `null_samples`.
pub fn srp(real: &SubgraphCensus, null_samples: &[SubgraphCensus], epsilon: f64) -> Result<SrpProfile> {
    if null_samples.is_empty() {
        return Err(Error::InvalidInput("SRP needs at least one null sample".into()));
    }
    let real = real.to_array();
    let mut null_mean = [0.0; 7];
    for sample in null_samples {
        for (acc, x) in null_mean.iter_mut().zip(sample.to_array()) {
            *acc += x as f64;
        }
    }
    null_mean.iter_mut().for_each(|x| *x /= null_samples.len() as f64);

    let mut delta = [0.0; 7];
    for p in 0..7 {
        let r = real[p] as f64;
        delta[p] = (r - null_mean[p]) / (r + null_mean[p] + epsilon);
    }
    let norm = delta.iter().map(|d| d * d).sum::<f64>().sqrt();
    let srp = if norm > 0.0 {
        delta.map(|d| d / norm)
    } else {
        [0.0; 7]
    };
    Ok(SrpProfile {
        delta,
        srp,
        null_mean,
        epsilon,
    })
}

/// `(real - mean) / sd` over the null values. `None` when there are fewer
/// than two values or they have no spread.
pub fn z_score(real: f64, null_values: &[f64]) -> Option<f64> {
    if null_values.len() < 2 {
        return None;
    }
    let sd = sample_std(null_values);
    if sd == 0.0 || !sd.is_finite() {
        return None;
    }
    Some((real - mean(null_values)) / sd)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census(values: [u64; 7]) -> SubgraphCensus {
        let [triangle, path4, claw, cycle4, paw, diamond, k4] = values;
        SubgraphCensus { triangle, path4, claw, cycle4, paw, diamond, k4 }
    }

    #[test]
    fn equal_means_give_zero_profile() {
        let real = census([5, 4, 3, 2, 1, 0, 7]);
        let nulls = [census([4, 4, 2, 2, 0, 0, 7]), census([6, 4, 4, 2, 2, 0, 7])];
        let p = srp(&real, &nulls, DEFAULT_SRP_EPSILON).unwrap();
        assert_eq!(p.srp, [0.0; 7]);
    }

    #[test]
    fn single_pattern_gives_unit_vector() {
        let real = census([10, 0, 0, 0, 0, 0, 0]);
        let nulls = [census([0; 7]), census([0; 7])];
        let p = srp(&real, &nulls, DEFAULT_SRP_EPSILON).unwrap();
        assert!((p.delta[0] - 10.0 / 14.0).abs() < 1e-15);
        assert_eq!(p.srp, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn signs_follow_overrepresentation() {
        let real = census([10, 1, 5, 5, 5, 5, 5]);
        let nulls = [census([2, 9, 5, 5, 5, 5, 5]); 3];
        let p = srp(&real, &nulls, DEFAULT_SRP_EPSILON).unwrap();
        assert!(p.srp[0] > 0.0 && p.srp[1] < 0.0);
        let norm: f64 = p.srp.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_null_is_error() {
        assert!(srp(&census([0; 7]), &[], DEFAULT_SRP_EPSILON).is_err());
    }

    #[test]
    fn z_scores() {
        assert_eq!(z_score(1.0, &[0.0, 2.0]), Some(0.0));
        let z = z_score(3.0, &[0.0, 2.0]).unwrap();
        assert!((z - 2.0_f64.sqrt()).abs() < 1e-12);
        assert_eq!(z_score(3.0, &[1.0, 1.0, 1.0]), None);
        assert_eq!(z_score(3.0, &[1.0]), None);
    }
}
