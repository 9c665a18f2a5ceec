use alloc::vec::Vec;

use crate::float::{ln, sqrt};
use crate::{Error, Result};

/// Least-squares line through `(ln M, ln count)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root mean square of the residuals.
    pub residual: f64,
}

/// Fits `count ~ C * M^slope`. Needs at least three samples with positive values.
pub fn fit_exponent(samples: &[(u64, u64)]) -> Result<ExponentFit> {
    if samples.len() < 3 {
        return Err(Error::TooFewSamples(samples.len()));
    }
    if samples.iter().any(|&(m, c)| m == 0 || c == 0) {
        return Err(Error::InvalidProblem(
            "exponent fit needs positive samples".into(),
        ));
    }
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .map(|&(m, c)| (ln(m as f64), ln(c as f64)))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidProblem(
            "exponent fit needs distinct memory values".into(),
        ));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = pts
        .iter()
        .map(|p| p.1 - intercept - slope * p.0)
        .map(|e| e * e)
        .sum();
    Ok(ExponentFit {
        slope,
        intercept,
        residual: sqrt(sse / n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_square() {
        let f = fit_exponent(&[(2, 4), (4, 16), (8, 64), (16, 256)]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!(f.residual < 1e-12);
    }

    #[test]
    fn too_few() {
        assert_eq!(
            fit_exponent(&[(2, 4), (4, 16)]),
            Err(Error::TooFewSamples(2))
        );
    }
}
