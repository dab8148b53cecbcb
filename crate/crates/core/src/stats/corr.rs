use crate::error::{Error, Result};

use super::table::Table;

/// Pairwise Pearson coefficients. Entries involving a constant column are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
}

impl CorrelationMatrix {
    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.labels.iter().position(|l| l == a)?;
        let j = self.labels.iter().position(|l| l == b)?;
        self.values[i][j]
    }

    /// Comma-separated matrix with a label column; undefined entries are `NA`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("variable");
        for l in &self.labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for (label, row) in self.labels.iter().zip(&self.values) {
            out.push_str(label);
            for v in row {
                out.push(',');
                match v {
                    Some(r) => out.push_str(&r.to_string()),
                    None => out.push_str("NA"),
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

pub fn pearson_matrix(table: &Table, columns: &[&str]) -> Result<CorrelationMatrix> {
    if table.n_rows() < 2 {
        return Err(Error::InsufficientData(format!(
            "correlation needs at least 2 rows, got {}",
            table.n_rows()
        )));
    }
    let data = table.columns(columns)?;
    let k = data.len();
    let mut values = vec![vec![None; k]; k];
    for i in 0..k {
        let constant = data[i].iter().all(|&v| v == data[i][0]);
        if !constant {
            values[i][i] = Some(1.0);
        }
        for j in 0..i {
            let r = pearson(&data[i], &data[j]);
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(CorrelationMatrix {
        labels: columns.iter().map(|s| s.to_string()).collect(),
        values,
    })
}
