//! Ordinary least squares with classical (homoskedastic) inference.
//!
//! The fit uses a Householder QR factorisation of the design matrix; the
//! coefficient covariance is `sigma^2 (R^T R)^-1`, which equals
//! `sigma^2 (X^T X)^-1` without ever forming the normal equations.

use crate::error::{Error, Result};

use super::dist::{f_pvalue, t_pvalue};

/// Name given to the intercept column by [`ols_with_intercept`].
pub const INTERCEPT: &str = "Constant";

/// Relative threshold on `|R_jj|` below which a column counts as collinear.
const RANK_TOLERANCE: f64 = 1e-10;

/// Significance thresholds for one, two and three stars.
pub const STAR_LEVELS: [f64; 3] = [0.1, 0.05, 0.01];

pub fn stars(p: f64) -> &'static str {
    if p < STAR_LEVELS[2] {
        "***"
    } else if p < STAR_LEVELS[1] {
        "**"
    } else if p < STAR_LEVELS[0] {
        "*"
    } else {
        ""
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionResult {
    pub names: Vec<String>,
    pub coefficients: Vec<f64>,
    pub standard_errors: Vec<f64>,
    pub t_stats: Vec<f64>,
    pub p_values: Vec<f64>,
    pub r_squared: f64,
    pub adj_r_squared: f64,
    pub f_statistic: f64,
    pub f_p_value: f64,
    pub residual_std_error: f64,
    pub n_obs: usize,
    pub df_residual: usize,
    pub stars: Vec<&'static str>,
}

impl RegressionResult {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn coefficient(&self, name: &str) -> Option<f64> {
        self.index_of(name).map(|i| self.coefficients[i])
    }

    pub fn p_value(&self, name: &str) -> Option<f64> {
        self.index_of(name).map(|i| self.p_values[i])
    }

    pub fn has_intercept(&self) -> bool {
        self.index_of(INTERCEPT).is_some()
    }
}

/// Fits `y = X b + e` where `columns` are the columns of `X`.
///
/// The caller supplies the intercept column when one is wanted; R² is
/// centred when a constant column is present and uncentred otherwise.
pub fn ols_fit(columns: &[Vec<f64>], y: &[f64], names: &[String]) -> Result<RegressionResult> {
    let k = columns.len();
    let n = y.len();
    if names.len() != k {
        return Err(Error::Schema(format!(
            "{} names for {k} design columns",
            names.len()
        )));
    }
    if let Some(bad) = columns.iter().position(|c| c.len() != n) {
        return Err(Error::Schema(format!(
            "column `{}` has {} rows, response has {n}",
            names[bad],
            columns[bad].len()
        )));
    }
    if k == 0 || n <= k {
        return Err(Error::InsufficientData(format!(
            "need more observations than coefficients (n = {n}, k = {k})"
        )));
    }
    if let Some(v) = y
        .iter()
        .chain(columns.iter().flatten())
        .find(|v| !v.is_finite())
    {
        return Err(Error::domain(format!(
            "non-finite value {v} in regression input"
        )));
    }

    let qr = HouseholderQr::factor(columns, y);
    let max_diag = qr.r_diag().fold(0.0_f64, |m, d| m.max(d.abs()));
    let collinear: Vec<String> = qr
        .r_diag()
        .enumerate()
        .filter(|&(_, d)| !(d.abs() > RANK_TOLERANCE * max_diag))
        .map(|(j, _)| names[j].clone())
        .collect();
    if !collinear.is_empty() {
        return Err(Error::SingularDesign { columns: collinear });
    }

    let coefficients = qr.solve();
    let r_inv = qr.r_inverse();

    let residuals: Vec<f64> = (0..n)
        .map(|i| y[i] - (0..k).map(|j| columns[j][i] * coefficients[j]).sum::<f64>())
        .collect();
    let rss: f64 = residuals.iter().map(|e| e * e).sum();
    let df_residual = n - k;
    let sigma2 = rss / df_residual as f64;

    let has_constant = columns
        .iter()
        .any(|c| c.iter().all(|&v| v == c[0]) && c[0] != 0.0);
    let tss = if has_constant {
        let mean = y.iter().sum::<f64>() / n as f64;
        y.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
    } else {
        y.iter().map(|v| v * v).sum::<f64>()
    };
    let r_squared = if tss > 0.0 {
        (1.0 - rss / tss).clamp(0.0, 1.0)
    } else {
        1.0
    };
    let df_model = if has_constant { k - 1 } else { k };
    let denom_df = if has_constant { n - 1 } else { n };
    let adj_r_squared = 1.0 - (1.0 - r_squared) * denom_df as f64 / df_residual as f64;

    let (f_statistic, f_p_value) = if df_model == 0 {
        (f64::NAN, f64::NAN)
    } else if r_squared >= 1.0 {
        (f64::INFINITY, 0.0)
    } else {
        let f = (r_squared / df_model as f64) / ((1.0 - r_squared) / df_residual as f64);
        (f, f_pvalue(f, df_model as f64, df_residual as f64)?)
    };

    let mut standard_errors = Vec::with_capacity(k);
    let mut t_stats = Vec::with_capacity(k);
    let mut p_values = Vec::with_capacity(k);
    for j in 0..k {
        // (R^T R)^-1 = R^-1 R^-T, so the j-th diagonal is the squared norm of row j of R^-1
        let var = sigma2 * (j..k).map(|c| r_inv[j][c].powi(2)).sum::<f64>();
        let se = var.sqrt();
        let t = coefficients[j] / se;
        let p = if se > 0.0 {
            t_pvalue(t, df_residual as f64)?
        } else if coefficients[j] == 0.0 {
            1.0
        } else {
            0.0
        };
        standard_errors.push(se);
        t_stats.push(t);
        p_values.push(p);
    }

    Ok(RegressionResult {
        names: names.to_vec(),
        stars: p_values.iter().map(|&p| stars(p)).collect(),
        coefficients,
        standard_errors,
        t_stats,
        p_values,
        r_squared,
        adj_r_squared,
        f_statistic,
        f_p_value,
        residual_std_error: sigma2.sqrt(),
        n_obs: n,
        df_residual,
    })
}

/// Prepends a unit column named [`INTERCEPT`] and fits.
pub fn ols_with_intercept(
    predictors: &[Vec<f64>],
    y: &[f64],
    names: &[String],
) -> Result<RegressionResult> {
    let mut columns = Vec::with_capacity(predictors.len() + 1);
    columns.push(vec![1.0; y.len()]);
    columns.extend(predictors.iter().cloned());
    let mut all_names = Vec::with_capacity(names.len() + 1);
    all_names.push(INTERCEPT.to_string());
    all_names.extend(names.iter().cloned());
    ols_fit(&columns, y, &all_names)
}

/// Compact QR of an `n x k` matrix stored column-major, with `Q^T y` carried along.
struct HouseholderQr {
    /// Upper triangle holds R; below the diagonal the Householder vectors.
    a: Vec<Vec<f64>>,
    diag: Vec<f64>,
    qty: Vec<f64>,
}

impl HouseholderQr {
    fn factor(columns: &[Vec<f64>], y: &[f64]) -> Self {
        let k = columns.len();
        let n = y.len();
        let mut a: Vec<Vec<f64>> = columns.to_vec();
        let mut qty = y.to_vec();
        let mut diag = vec![0.0; k];
        for j in 0..k {
            let norm = a[j][j..].iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 {
                diag[j] = 0.0;
                continue;
            }
            let alpha = if a[j][j] > 0.0 { -norm } else { norm };
            // v = x - alpha e1, stored in place
            a[j][j] -= alpha;
            let vnorm2 = a[j][j..].iter().map(|v| v * v).sum::<f64>();
            diag[j] = alpha;
            if vnorm2 == 0.0 {
                continue;
            }
            let (head, tail) = a.split_at_mut(j + 1);
            let v = &head[j][j..];
            for col in tail.iter_mut() {
                let s = 2.0 * dot(v, &col[j..]) / vnorm2;
                for (c, vi) in col[j..].iter_mut().zip(v) {
                    *c -= s * vi;
                }
            }
            let s = 2.0 * dot(v, &qty[j..]) / vnorm2;
            for (q, vi) in qty[j..].iter_mut().zip(v) {
                *q -= s * vi;
            }
        }
        debug_assert!(qty.len() == n);
        Self { a, diag, qty }
    }

    fn r(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[j]
        } else {
            self.a[j][i]
        }
    }

    fn r_diag(&self) -> impl Iterator<Item = f64> + '_ {
        self.diag.iter().copied()
    }

    fn solve(&self) -> Vec<f64> {
        let k = self.diag.len();
        let mut b = vec![0.0; k];
        for i in (0..k).rev() {
            let s: f64 = (i + 1..k).map(|j| self.r(i, j) * b[j]).sum();
            b[i] = (self.qty[i] - s) / self.r(i, i);
        }
        b
    }

    /// Inverse of the upper-triangular R, returned as rows.
    #[allow(clippy::needless_range_loop)]
    fn r_inverse(&self) -> Vec<Vec<f64>> {
        let k = self.diag.len();
        let mut inv = vec![vec![0.0; k]; k];
        for c in 0..k {
            inv[c][c] = 1.0 / self.r(c, c);
            for i in (0..c).rev() {
                let s: f64 = (i + 1..=c).map(|j| self.r(i, j) * inv[j][c]).sum();
                inv[i][c] = -s / self.r(i, i);
            }
        }
        inv
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
