//! Distribution summaries: histograms and moment-based shape statistics.

use crate::error::{Error, Result};

/// Bimodality-coefficient threshold; values above it suggest more than one mode.
/// It equals the coefficient of a uniform distribution.
pub const BIMODALITY_THRESHOLD: f64 = 5.0 / 9.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    /// `n_bins + 1` edges from the minimum to the maximum.
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_low,bin_high,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", self.edges[i], self.edges[i + 1], c));
        }
        out
    }
}

fn nonempty(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        Err(Error::InsufficientData("empty column".into()))
    } else {
        Ok(())
    }
}

/// Equal-width bins over `[min, max]`; the last bin is closed on the right.
/// A constant column puts every value in the first bin.
pub fn histogram(values: &[f64], n_bins: usize) -> Result<Histogram> {
    nonempty(values)?;
    if n_bins == 0 {
        return Err(Error::domain("histogram needs at least one bin"));
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = (max - min) / n_bins as f64;
    let edges = (0..=n_bins)
        .map(|i| {
            if i == n_bins {
                max
            } else {
                min + width * i as f64
            }
        })
        .collect();
    let mut counts = vec![0; n_bins];
    for &v in values {
        let bin = if width > 0.0 {
            (((v - min) / width) as usize).min(n_bins - 1)
        } else {
            0
        };
        counts[bin] += 1;
    }
    Ok(Histogram { edges, counts })
}

pub fn mean(values: &[f64]) -> Result<f64> {
    nonempty(values)?;
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// Midpoint median.
pub fn median(values: &[f64]) -> Result<f64> {
    nonempty(values)?;
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Ok(if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    })
}

/// Population central moments `(m2, m3, m4)`.
fn central_moments(values: &[f64]) -> Result<(f64, f64, f64)> {
    let mu = mean(values)?;
    let n = values.len() as f64;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &v in values {
        let d = v - mu;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    Ok((m2 / n, m3 / n, m4 / n))
}

/// Population skewness `m3 / m2^1.5`.
pub fn skewness(values: &[f64]) -> Result<f64> {
    let (m2, m3, _) = central_moments(values)?;
    if m2 == 0.0 {
        return Err(Error::domain("skewness of a constant column is undefined"));
    }
    Ok(m3 / m2.powf(1.5))
}

/// Population excess kurtosis `m4 / m2^2 - 3`.
pub fn excess_kurtosis(values: &[f64]) -> Result<f64> {
    let (m2, _, m4) = central_moments(values)?;
    if m2 == 0.0 {
        return Err(Error::domain("kurtosis of a constant column is undefined"));
    }
    Ok(m4 / (m2 * m2) - 3.0)
}

/// Sarle's bimodality coefficient from the bias-corrected sample skewness
/// and excess kurtosis. Values below [`BIMODALITY_THRESHOLD`] indicate a
/// unimodal distribution.
pub fn bimodality_coefficient(values: &[f64]) -> Result<f64> {
    let n = values.len();
    if n < 4 {
        return Err(Error::InsufficientData(format!(
            "bimodality coefficient needs at least 4 values, got {n}"
        )));
    }
    let n = n as f64;
    let g1 = skewness(values)?;
    let g2 = excess_kurtosis(values)?;
    let skew = g1 * (n * (n - 1.0)).sqrt() / (n - 2.0);
    let kurt = ((n + 1.0) * g2 + 6.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0));
    Ok((skew * skew + 1.0) / (kurt + 3.0 * (n - 1.0).powi(2) / ((n - 2.0) * (n - 3.0))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn skewness_examples() {
        assert_relative_eq!(skewness(&[-1.0, 0.0, 1.0]).unwrap(), 0.0, epsilon = 1e-15);
        // mean 2.5, m2 = 18.75, m3 = 93.75
        let s = skewness(&[0.0, 0.0, 0.0, 10.0]).unwrap();
        assert_relative_eq!(s, 93.75 / 18.75_f64.powf(1.5), epsilon = 1e-14);
        assert_relative_eq!(s, 1.1547, epsilon = 5e-5);
        assert!(matches!(skewness(&[]), Err(Error::InsufficientData(_))));
        assert!(skewness(&[2.0, 2.0]).is_err());
    }

    #[test]
    fn histogram_examples() {
        let values = [0.0, 0.1, 0.5, 0.9, 1.0];
        let single = histogram(&values, 1).unwrap();
        assert_eq!(single.counts, vec![5]);
        let h = histogram(&values, 2).unwrap();
        assert_eq!(h.counts, vec![2, 3]);
        assert_eq!(h.edges, vec![0.0, 0.5, 1.0]);
        let flat = histogram(&[3.0; 7], 10).unwrap();
        assert_eq!(flat.counts[0], 7);
        assert_eq!(flat.total(), 7);
        assert_eq!(flat.counts.iter().filter(|&&c| c > 0).count(), 1);
        assert!(histogram(&[], 3).is_err());
        assert!(histogram(&[1.0], 0).is_err());
    }

    #[test]
    fn median_and_mean() {
        assert_eq!(median(&[3.0, 1.0, 2.0]).unwrap(), 2.0);
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]).unwrap(), 2.5);
        assert_eq!(mean(&[1.0, 2.0, 6.0]).unwrap(), 3.0);
    }

    #[test]
    fn bimodality_separates_one_and_two_modes() {
        // triangular (unimodal) vs two separated clusters
        let tri: Vec<f64> = (0..1000)
            .flat_map(|i| {
                let x = i as f64 / 1000.0;
                [x, 1.0 - x, 0.5 * (x + (1.0 - x))]
            })
            .collect();
        assert!(bimodality_coefficient(&tri).unwrap() < BIMODALITY_THRESHOLD);
        let two: Vec<f64> = (0..1000)
            .map(|i| if i % 2 == 0 { -1.0 } else { 1.0 } + (i % 7) as f64 * 0.01)
            .collect();
        assert!(bimodality_coefficient(&two).unwrap() > BIMODALITY_THRESHOLD);
    }
}
