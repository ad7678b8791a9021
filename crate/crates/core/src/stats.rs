//! Small statistics helpers for the Monte Carlo harness and model-law tests.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::{Error, Result};

/// Sample mean and (n−1)-normalized standard deviation.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Least-squares line fit returning `(slope, intercept, r²)`.
pub fn linear_regression(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, intercept, r2)
}

/// Result of a chi-square goodness-of-fit test.
#[derive(Debug, Clone, Copy)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Chi-square GOF of observed counts against expected counts, pooling cells
/// from both ends until every expected count is at least `min_expected`.
pub fn chi_square_gof(
    observed: &[f64],
    expected: &[f64],
    min_expected: f64,
) -> Result<ChiSquareResult> {
    assert_eq!(observed.len(), expected.len());
    // pool sparse cells: sweep once, merging any deficient cell forward
    let mut cells: Vec<(f64, f64)> = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| (o, e))
        .collect();
    let mut pooled: Vec<(f64, f64)> = Vec::new();
    let mut carry = (0.0, 0.0);
    for (o, e) in cells.drain(..) {
        carry.0 += o;
        carry.1 += e;
        if carry.1 >= min_expected {
            pooled.push(carry);
            carry = (0.0, 0.0);
        }
    }
    if carry.1 > 0.0 {
        match pooled.last_mut() {
            Some(last) => {
                last.0 += carry.0;
                last.1 += carry.1;
            }
            None => pooled.push(carry),
        }
    }
    if pooled.len() < 2 {
        return Err(Error::Inconclusive(
            "chi-square: fewer than two cells after pooling".into(),
        ));
    }
    let statistic: f64 = pooled
        .iter()
        .map(|&(o, e)| (o - e) * (o - e) / e)
        .sum();
    let dof = pooled.len() - 1;
    let dist = ChiSquared::new(dof as f64)
        .map_err(|e| Error::Inconclusive(format!("chi-square dof: {e}")))?;
    Ok(ChiSquareResult { statistic, dof, p_value: 1.0 - dist.cdf(statistic) })
}

/// `C(n, k)` as f64 (exact for the desk-scale arguments used here).
pub fn binomial_coefficient(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Binomial pmf `P(Bin(n,p) = k)`.
pub fn binomial_pmf(n: usize, p: f64, k: usize) -> f64 {
    if p == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if p == 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    binomial_coefficient(n, k) * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32)
}
