//! Growth exponent of point counts in `q`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionFit {
    /// Least-squares slope of `log count` against `log q`.
    pub exponent: f64,
    pub intercept: f64,
    /// Root mean square of the fit residuals.
    pub residual: f64,
}

pub fn estimate_dimension(counts: &[(u64, u64)]) -> Result<DimensionFit> {
    if counts.len() < 3 {
        return Err(Error::Config(format!(
            "dimension fit needs at least 3 values of q, got {}",
            counts.len()
        )));
    }
    if let Some(&(q, c)) = counts.iter().find(|&&(q, c)| q < 2 || c == 0) {
        return Err(Error::Config(format!("cannot take logarithms of q = {q}, count = {c}")));
    }
    let pts: Vec<(f64, f64)> = counts
        .iter()
        .map(|&(q, c)| ((q as f64).ln(), (c as f64).ln()))
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Config("dimension fit needs distinct values of q".into()));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let residual = (pts
        .iter()
        .map(|p| (p.1 - intercept - exponent * p.0).powi(2))
        .sum::<f64>()
        / m)
        .sqrt();
    Ok(DimensionFit {
        exponent,
        intercept,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_counts_have_exponent_zero() {
        let fit = estimate_dimension(&[(3, 7), (5, 7), (7, 7)]).unwrap();
        assert!(fit.exponent.abs() < 1e-12);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn pure_powers_are_exact() {
        let fit = estimate_dimension(&[(3, 81), (5, 625), (7, 2401), (9, 6561)]).unwrap();
        assert!((fit.exponent - 4.0).abs() < 1e-9);
    }

    #[test]
    fn too_few_points() {
        assert!(estimate_dimension(&[(3, 13), (5, 31)]).is_err());
    }
}
