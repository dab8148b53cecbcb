use std::fmt;

use crate::error::{Error, Result};

use super::ols::RegressionResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
    /// Only significance is required.
    Any,
}

impl Sign {
    fn admits(self, value: f64) -> bool {
        match self {
            Sign::Positive => value > 0.0,
            Sign::Negative => value < 0.0,
            Sign::Any => !value.is_nan(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
            Sign::Any => "any",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub name: String,
    pub expected: Sign,
    pub coefficient: f64,
    pub p_value: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignReport {
    pub alpha: f64,
    pub verdicts: Vec<Verdict>,
}

impl SignReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.pass)
    }
}

impl fmt::Display for SignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.verdicts {
            writeln!(
                f,
                "{:<6} {:<32} expected {:<3} coef {:>12.5e} p {:.3e}",
                if v.pass { "ok" } else { "FAIL" },
                v.name,
                v.expected.symbol(),
                v.coefficient,
                v.p_value
            )?;
        }
        write!(
            f,
            "{} at alpha = {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.alpha
        )
    }
}

/// Checks that each named coefficient has the expected sign and `p < alpha`.
pub fn sign_check(
    reg: &RegressionResult,
    expected: &[(&str, Sign)],
    alpha: f64,
) -> Result<SignReport> {
    let verdicts = expected
        .iter()
        .map(|&(name, sign)| {
            let i = reg
                .index_of(name)
                .ok_or_else(|| Error::Schema(format!("no coefficient named `{name}`")))?;
            let (coefficient, p_value) = (reg.coefficients[i], reg.p_values[i]);
            Ok(Verdict {
                name: name.to_string(),
                expected: sign,
                coefficient,
                p_value,
                pass: sign.admits(coefficient) && p_value < alpha,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SignReport { alpha, verdicts })
}
