//! The named analyses run on sweep output.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::stats::{
    histogram, median, ols_with_intercept, pearson_matrix, quartile_subset, regression_table,
    skewness, CorrelationMatrix, Histogram, RegressionResult, SubsetFilter, SubsetRule, Table,
};

pub const DEPENDENT: &str = "anti_immigrant_sentiment";

/// Engagement predictors of the threat regression, in table order.
pub const ENGAGEMENT_PREDICTORS: [&str; 5] = [
    "engagement_5",
    "engagement_2",
    "engagement_1",
    "engagement_3",
    "engagement_4",
];

/// Predictors of the full and subset models, in table order.
pub const MODEL_PREDICTORS: [&str; 24] = [
    "tvMediaUse",
    "ThreatPctOfMedia",
    "socialMediaUse",
    "Rel_frequency",
    "Initial_concern_5",
    "Initial_concern_2",
    "Initial_concern_1",
    "Initial_concern_4",
    "Hazard_intensity_contagion",
    "Hazard_intensity_financial",
    "Hazard_intensity_natural",
    "Hazard_intensity_predation",
    "Hazard_intensity_social",
    "habituationRate",
    "energyDecay",
    "Big_5_openness",
    "Big_5_conscientiousness",
    "Big_5_agreeableness",
    "hazard_event_count_contagion",
    "hazard_event_count_financial",
    "hazard_event_count_natural",
    "hazard_event_count_predation",
    "hazard_event_count_social",
    "nationalism_level",
];

/// Columns shown in the correlation matrix and the histograms.
pub const OUTCOME_COLUMNS: [&str; 13] = [
    "nationalism_level",
    "economic_conservatism",
    "social_conservatism",
    "anthropomorphic_promiscuity",
    "sociographic_prudery",
    "anti_immigrant_sentiment",
    "threat_con_fin_nat",
    "threat_soc_pred",
    "engagement_1",
    "engagement_2",
    "engagement_3",
    "engagement_4",
    "engagement_5",
];

pub const HISTOGRAM_BINS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Analysis {
    /// Anti-immigrant sentiment on the five engagements.
    FullRegression,
    /// The 24-predictor model on every run.
    FullModel,
    LowNationalism,
    HighNationalism,
    LowPrudery,
    HighPrudery,
    LowAp,
    HighAp,
    /// Nationalism on religious attendance.
    Nationalism,
    Correlations,
    Histograms,
}

impl Analysis {
    pub const ALL: [Analysis; 11] = [
        Analysis::FullRegression,
        Analysis::FullModel,
        Analysis::LowNationalism,
        Analysis::HighNationalism,
        Analysis::LowPrudery,
        Analysis::HighPrudery,
        Analysis::LowAp,
        Analysis::HighAp,
        Analysis::Nationalism,
        Analysis::Correlations,
        Analysis::Histograms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Analysis::FullRegression => "full-regression",
            Analysis::FullModel => "full-model",
            Analysis::LowNationalism => "low-nationalism",
            Analysis::HighNationalism => "high-nationalism",
            Analysis::LowPrudery => "low-prudery",
            Analysis::HighPrudery => "high-prudery",
            Analysis::LowAp => "low-ap",
            Analysis::HighAp => "high-ap",
            Analysis::Nationalism => "nationalism",
            Analysis::Correlations => "correlations",
            Analysis::Histograms => "histograms",
        }
    }

    /// Quartile subset for the subset models.
    pub fn subset(self) -> Option<SubsetFilter> {
        let (column, rule) = match self {
            Analysis::LowNationalism => ("nationalism_level", SubsetRule::LowestQuartile),
            Analysis::HighNationalism => ("nationalism_level", SubsetRule::HighestQuartile),
            Analysis::LowPrudery => ("sociographic_prudery", SubsetRule::LowestQuartile),
            Analysis::HighPrudery => ("sociographic_prudery", SubsetRule::HighestQuartile),
            Analysis::LowAp => ("anthropomorphic_promiscuity", SubsetRule::LowestQuartile),
            Analysis::HighAp => ("anthropomorphic_promiscuity", SubsetRule::HighestQuartile),
            _ => return None,
        };
        Some(SubsetFilter::new(column, rule))
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Analysis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Analysis::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Analysis::ALL.iter().map(|a| a.name()).collect();
                Error::Schema(format!(
                    "unknown analysis `{s}`; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

pub fn regress(table: &Table, dependent: &str, predictors: &[&str]) -> Result<RegressionResult> {
    let y = table.column(dependent)?;
    let x = table.columns(predictors)?;
    let names: Vec<String> = predictors.iter().map(|s| s.to_string()).collect();
    ols_with_intercept(&x, y, &names)
}

pub fn engagement_regression(table: &Table) -> Result<RegressionResult> {
    regress(table, DEPENDENT, &ENGAGEMENT_PREDICTORS)
}

/// The 24-predictor model, optionally on a quartile subset.
pub fn model(table: &Table, subset: Option<&SubsetFilter>) -> Result<RegressionResult> {
    match subset {
        Some(f) => regress(&quartile_subset(table, f)?, DEPENDENT, &MODEL_PREDICTORS),
        None => regress(table, DEPENDENT, &MODEL_PREDICTORS),
    }
}

pub fn nationalism_regression(table: &Table) -> Result<RegressionResult> {
    regress(table, "nationalism_level", &["Rel_frequency"])
}

pub fn correlations(table: &Table) -> Result<CorrelationMatrix> {
    pearson_matrix(table, &OUTCOME_COLUMNS)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnShape {
    pub column: String,
    pub median: f64,
    pub skewness: f64,
    pub histogram: Histogram,
}

pub fn shapes(table: &Table, columns: &[&str], bins: usize) -> Result<Vec<ColumnShape>> {
    columns
        .iter()
        .map(|&c| {
            let v = table.column(c)?;
            Ok(ColumnShape {
                column: c.to_string(),
                median: median(v)?,
                skewness: skewness(v)?,
                histogram: histogram(v, bins)?,
            })
        })
        .collect()
}

/// Text output of an analysis.
pub fn render(analysis: Analysis, table: &Table) -> Result<String> {
    Ok(match analysis {
        Analysis::FullRegression => regression_table(DEPENDENT, &[&engagement_regression(table)?]),
        Analysis::Nationalism => {
            regression_table("nationalism_level", &[&nationalism_regression(table)?])
        }
        Analysis::Correlations => correlations(table)?.to_csv(),
        Analysis::Histograms => {
            let mut out = String::new();
            for s in shapes(table, &OUTCOME_COLUMNS, HISTOGRAM_BINS)? {
                out.push_str(&format!(
                    "{}: median {:.6} skewness {:.4}\n",
                    s.column, s.median, s.skewness
                ));
                let peak = s.histogram.counts.iter().copied().max().unwrap_or(1).max(1);
                for (i, &c) in s.histogram.counts.iter().enumerate() {
                    let bar = "#".repeat((c * 40).div_ceil(peak));
                    out.push_str(&format!(
                        "  [{:>11.4}, {:>11.4}) {:>6} {bar}\n",
                        s.histogram.edges[i],
                        s.histogram.edges[i + 1],
                        c
                    ));
                }
            }
            out
        }
        other => regression_table(DEPENDENT, &[&model(table, other.subset().as_ref())?]),
    })
}
