//! Regression tables in a side-by-side plain-text layout and as CSV.

use std::fmt::Write;

use super::ols::{RegressionResult, INTERCEPT};

/// Formats with thousands separators and a fixed number of decimals.
pub fn grouped(value: f64, decimals: usize) -> String {
    let s = format!("{:.*}", decimals, value.abs());
    let (int, frac) = s.split_once('.').unwrap_or((&s, ""));
    let mut out = String::new();
    for (i, ch) in int.chars().enumerate() {
        if i > 0 && (int.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(ch);
    }
    if !frac.is_empty() {
        out.push('.');
        out.push_str(frac);
    }
    if value < 0.0 && out.chars().any(|c| c.is_ascii_digit() && c != '0') {
        out.insert(0, '-');
    }
    out
}

/// Renders one or more models as columns: coefficient with stars, then the
/// standard error in parentheses on the next line. The intercept is listed
/// last; predictors appear in first-seen order.
pub fn regression_table(dependent: &str, models: &[&RegressionResult]) -> String {
    let mut rows: Vec<&str> = Vec::new();
    for m in models {
        for n in &m.names {
            if n != INTERCEPT && !rows.contains(&n.as_str()) {
                rows.push(n);
            }
        }
    }
    if models.iter().any(|m| m.has_intercept()) {
        rows.push(INTERCEPT);
    }

    let label_w = rows
        .iter()
        .map(|r| r.len())
        .chain(["Residual Std. Error".len()])
        .max()
        .unwrap_or(0);
    let mut cells: Vec<Vec<String>> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for &row in &rows {
        labels.push(row.to_string());
        labels.push(String::new());
        let (mut coef, mut se) = (Vec::new(), Vec::new());
        for m in models {
            match m.index_of(row) {
                Some(i) => {
                    coef.push(format!("{}{}", grouped(m.coefficients[i], 3), m.stars[i]));
                    se.push(format!("({})", grouped(m.standard_errors[i], 3)));
                }
                None => {
                    coef.push(String::new());
                    se.push(String::new());
                }
            }
        }
        cells.push(coef);
        cells.push(se);
    }
    let mut footer: Vec<(String, Vec<String>)> = vec![
        (
            "Observations".into(),
            models.iter().map(|m| grouped(m.n_obs as f64, 0)).collect(),
        ),
        (
            "R2".into(),
            models
                .iter()
                .map(|m| format!("{:.3}", m.r_squared))
                .collect(),
        ),
        (
            "Adjusted R2".into(),
            models
                .iter()
                .map(|m| format!("{:.3}", m.adj_r_squared))
                .collect(),
        ),
        (
            "Residual Std. Error".into(),
            models
                .iter()
                .map(|m| {
                    format!(
                        "{} (df = {})",
                        grouped(m.residual_std_error, 3),
                        m.df_residual
                    )
                })
                .collect(),
        ),
    ];
    footer.push((
        "F Statistic".into(),
        models
            .iter()
            .map(|m| {
                let k = m.n_obs - m.df_residual - usize::from(m.has_intercept());
                format!(
                    "{}{} (df = {}; {})",
                    grouped(m.f_statistic, 3),
                    super::ols::stars(m.f_p_value),
                    k,
                    m.df_residual
                )
            })
            .collect(),
    ));

    let width = |col: usize| {
        cells
            .iter()
            .map(|r| r[col].len())
            .chain(footer.iter().map(|(_, r)| r[col].len()))
            .chain([format!("({})", col + 1).len()])
            .max()
            .unwrap_or(0)
    };
    let widths: Vec<usize> = (0..models.len()).map(width).collect();
    let total = label_w + widths.iter().map(|w| w + 2).sum::<usize>();
    let rule = "=".repeat(total);
    let thin = "-".repeat(total);

    let mut out = String::new();
    let line = |out: &mut String, label: &str, values: &[String]| {
        let _ = write!(out, "{label:<label_w$}");
        for (v, w) in values.iter().zip(&widths) {
            let _ = write!(out, "  {v:>w$}");
        }
        out.push('\n');
    };
    let _ = writeln!(out, "{rule}");
    let _ = writeln!(out, "{:<label_w$}  Dependent variable: {dependent}", "");
    if models.len() > 1 {
        let heads: Vec<String> = (1..=models.len()).map(|i| format!("({i})")).collect();
        line(&mut out, "", &heads);
    }
    let _ = writeln!(out, "{thin}");
    for (label, values) in labels.iter().zip(&cells) {
        line(&mut out, label, values);
    }
    let _ = writeln!(out, "{thin}");
    for (label, values) in &footer {
        line(&mut out, label, values);
    }
    let _ = writeln!(out, "{rule}");
    let _ = writeln!(out, "Note: *p<0.1; **p<0.05; ***p<0.01");
    out
}

/// One row per coefficient followed by the fit statistics as `name,value` rows.
pub fn regression_csv(reg: &RegressionResult) -> String {
    let mut out = String::from("term,estimate,std_error,t_stat,p_value,stars\n");
    for i in 0..reg.names.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            reg.names[i],
            reg.coefficients[i],
            reg.standard_errors[i],
            reg.t_stats[i],
            reg.p_values[i],
            reg.stars[i]
        );
    }
    for (name, value) in [
        ("n_obs", reg.n_obs as f64),
        ("df_residual", reg.df_residual as f64),
        ("r_squared", reg.r_squared),
        ("adj_r_squared", reg.adj_r_squared),
        ("residual_std_error", reg.residual_std_error),
        ("f_statistic", reg.f_statistic),
        ("f_p_value", reg.f_p_value),
    ] {
        let _ = writeln!(out, "{name},{value},,,,");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::ols::ols_with_intercept;
    use super::*;

    #[test]
    fn grouping() {
        assert_eq!(grouped(1864.321, 3), "1,864.321");
        assert_eq!(grouped(-1047.8421, 3), "-1,047.842");
        assert_eq!(grouped(20000.0, 0), "20,000");
        assert_eq!(grouped(12.5, 1), "12.5");
        assert_eq!(grouped(-0.0001, 3), "0.000");
        assert_eq!(grouped(123456789.0, 0), "123,456,789");
    }

    #[test]
    fn table_layout() {
        let x = vec![vec![0.0, 1.0, 2.0, 3.0]];
        let y = [1.0, 1.0, 4.0, 4.5];
        let m = ols_with_intercept(&x, &y, &["x".to_string()]).unwrap();
        let text = regression_table("y", &[&m, &m]);
        let lines: Vec<&str> = text.lines().collect();
        let x_line = lines.iter().position(|l| l.starts_with("x ")).unwrap();
        let const_line = lines
            .iter()
            .position(|l| l.starts_with("Constant"))
            .unwrap();
        assert!(x_line < const_line);
        assert!(lines[x_line + 1].trim_start().starts_with('('));
        assert!(text.contains("Observations"));
        assert!(text.contains("(2)"));
        assert!(text.contains("(df = 1; 2)"));
        let csv = regression_csv(&m);
        assert!(csv.starts_with("term,estimate"));
        assert!(csv.contains("\nx,"));
        assert!(csv.contains("\nr_squared,"));
    }
}
