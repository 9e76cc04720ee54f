use statrs::distribution::{ContinuousCDF, StudentsT};

use super::BenchError;

/// Half-width of the two-sided Student-t confidence interval for the mean
/// of `samples`, that is `t(1 - (1 - c) / 2, n - 1) * s / sqrt(n)`.
pub fn margin_of_error(samples: &[f64], confidence: f64) -> Result<f64, BenchError> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(BenchError::InvalidConfidence(confidence));
    }
    let n = samples.len();
    if n < 2 {
        return Err(BenchError::InsufficientSamples);
    }
    if samples.iter().all(|&x| x == samples[0]) {
        return Ok(0.0);
    }
    let nf = n as f64;
    let mean = samples.iter().sum::<f64>() / nf;
    let ss: f64 = samples.iter().map(|x| (x - mean) * (x - mean)).sum();
    let sd = (ss / (nf - 1.0)).sqrt();
    let t = StudentsT::new(0.0, 1.0, nf - 1.0).expect("positive degrees of freedom");
    let q = t.inverse_cdf(1.0 - (1.0 - confidence) / 2.0);
    Ok(q * sd / nf.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_degrees_of_freedom_closed_form() {
        // with df = 2 the quantile is sqrt(2c^2 / (1 - c^2))
        let c: f64 = 0.95;
        let t = (2.0 * c * c / (1.0 - c * c)).sqrt();
        assert!((t - 4.302_652_729_749_46).abs() < 1e-9);
        let moe = margin_of_error(&[9.0, 10.0, 11.0], c).unwrap();
        assert!((moe - t / 3f64.sqrt()).abs() < 1e-9, "{moe}");
    }

    #[test]
    fn one_degree_of_freedom_is_cauchy() {
        let c: f64 = 0.9;
        let t = (std::f64::consts::PI * c / 2.0).tan();
        let samples = [1.0, 3.0];
        let sd = 2f64.sqrt();
        let moe = margin_of_error(&samples, c).unwrap();
        assert!((moe - t * sd / 2f64.sqrt()).abs() < 1e-9, "{moe}");
    }

    #[test]
    fn constant_samples_have_zero_margin() {
        assert_eq!(margin_of_error(&[0.1; 7], 0.95).unwrap(), 0.0);
    }

    #[test]
    fn wider_at_higher_confidence() {
        let xs = [2.0, 3.5, 1.0, 4.0, 2.5];
        assert!(margin_of_error(&xs, 0.99).unwrap() > margin_of_error(&xs, 0.95).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(margin_of_error(&[1.0], 0.95), Err(BenchError::InsufficientSamples)));
        assert!(matches!(margin_of_error(&[1.0, 2.0], 1.0), Err(BenchError::InvalidConfidence(_))));
        assert!(matches!(margin_of_error(&[1.0, 2.0], f64::NAN), Err(BenchError::InvalidConfidence(_))));
    }
}
