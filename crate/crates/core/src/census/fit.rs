//! Least-squares fits of normalized counts against `log H`.

use serde::{Deserialize, Serialize};

use crate::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitRecord {
    /// Which tally was fitted.
    pub model: String,
    pub exponent: f64,
    pub with_log: bool,
    pub heights: Vec<u64>,
    pub counts: Vec<u64>,
    /// `count / (H^a log H)` with the log, `count / H^a` without.
    pub normalized: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    pub residuals: Vec<f64>,
    /// `max / min` of `normalized`.
    pub band: f64,
}

/// Fits `count / H^a = slope * log H + intercept` (or a constant when
/// `with_log` is false).
pub fn fit_asymptotic(
    model: &str,
    heights: &[u64],
    counts: &[u64],
    exponent: f64,
    with_log: bool,
) -> Result<FitRecord, Error> {
    if heights.len() != counts.len() {
        return Err(Error::InvalidInput("heights and counts differ in length".into()));
    }
    if heights.len() < 3 {
        return Err(Error::InvalidInput("a fit needs at least three heights".into()));
    }
    if counts.iter().all(|&c| c == 0) {
        return Err(Error::DegenerateFit);
    }
    let ys: Vec<f64> = heights
        .iter()
        .zip(counts)
        .map(|(&h, &c)| c as f64 / (h as f64).powf(exponent))
        .collect();
    let xs: Vec<f64> = heights.iter().map(|&h| (h as f64).ln()).collect();
    let m = ys.len() as f64;
    let (slope, intercept) = if with_log {
        let mx = xs.iter().sum::<f64>() / m;
        let my = ys.iter().sum::<f64>() / m;
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let slope = sxy / sxx;
        (slope, my - slope * mx)
    } else {
        (0.0, ys.iter().sum::<f64>() / m)
    };
    let residuals = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| y - (slope * x + intercept))
        .collect();
    let normalized: Vec<f64> = if with_log {
        ys.iter().zip(&xs).map(|(y, x)| y / x).collect()
    } else {
        ys
    };
    let max = normalized.iter().cloned().fold(f64::MIN, f64::max);
    let min = normalized.iter().cloned().fold(f64::MAX, f64::min);
    Ok(FitRecord {
        model: model.to_string(),
        exponent,
        with_log,
        heights: heights.to_vec(),
        counts: counts.to_vec(),
        normalized,
        slope,
        intercept,
        residuals,
        band: if min > 0.0 { max / min } else { f64::INFINITY },
    })
}
