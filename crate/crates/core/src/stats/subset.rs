use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::table::Table;

/// Column used to break ties; falls back to row position when absent.
pub const TIE_BREAK_COLUMN: &str = "run_id";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetRule {
    LowestQuartile,
    HighestQuartile,
    BelowMedian,
    AboveMedian,
}

impl SubsetRule {
    fn keep(self, n: usize) -> usize {
        match self {
            SubsetRule::LowestQuartile | SubsetRule::HighestQuartile => n / 4,
            SubsetRule::BelowMedian | SubsetRule::AboveMedian => n / 2,
        }
    }

    fn takes_top(self) -> bool {
        matches!(self, SubsetRule::HighestQuartile | SubsetRule::AboveMedian)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SubsetRule::LowestQuartile => "lowest_quartile",
            SubsetRule::HighestQuartile => "highest_quartile",
            SubsetRule::BelowMedian => "below_median",
            SubsetRule::AboveMedian => "above_median",
        }
    }
}

impl fmt::Display for SubsetRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SubsetRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lowest_quartile" => Ok(SubsetRule::LowestQuartile),
            "highest_quartile" => Ok(SubsetRule::HighestQuartile),
            "below_median" => Ok(SubsetRule::BelowMedian),
            "above_median" => Ok(SubsetRule::AboveMedian),
            other => Err(Error::Schema(format!("unknown subset rule `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetFilter {
    pub column: String,
    pub rule: SubsetRule,
}

impl SubsetFilter {
    pub fn new(column: impl Into<String>, rule: SubsetRule) -> Self {
        Self {
            column: column.into(),
            rule,
        }
    }
}

/// Row indices selected by `filter`, returned in ascending row order.
///
/// Rows are ranked by the column value (descending for the upper subsets);
/// equal values are ordered by ascending run id so the subset always has
/// exactly `floor(n/4)` (or `floor(n/2)`) rows.
pub fn subset_indices(table: &Table, filter: &SubsetFilter) -> Result<Vec<usize>> {
    let values = table.column(&filter.column)?;
    let n = values.len();
    if n == 0 {
        return Err(Error::InsufficientData(
            "cannot subset an empty table".into(),
        ));
    }
    let ids: Vec<f64> = match table.column(TIE_BREAK_COLUMN) {
        Ok(c) => c.to_vec(),
        Err(_) => (0..n).map(|i| i as f64).collect(),
    };
    let mut order: Vec<usize> = (0..n).collect();
    let from_top = filter.rule.takes_top();
    order.sort_by(|&a, &b| {
        let by_value = values[a].total_cmp(&values[b]);
        let by_value = if from_top {
            by_value.reverse()
        } else {
            by_value
        };
        by_value
            .then_with(|| ids[a].total_cmp(&ids[b]))
            .then(a.cmp(&b))
    });
    let mut keep: Vec<usize> = order[..filter.rule.keep(n)].to_vec();
    keep.sort_unstable();
    Ok(keep)
}

pub fn quartile_subset(table: &Table, filter: &SubsetFilter) -> Result<Table> {
    Ok(table.select_rows(&subset_indices(table, filter)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(values: Vec<f64>) -> Table {
        let ids = (0..values.len()).map(|i| i as f64).collect();
        Table::new(vec!["run_id".into(), "v".into()], vec![ids, values]).unwrap()
    }

    #[test]
    fn highest_quartile_of_four() {
        let t = table(vec![3.0, 1.0, 4.0, 2.0]);
        let s = quartile_subset(&t, &SubsetFilter::new("v", SubsetRule::HighestQuartile)).unwrap();
        assert_eq!(s.column("v").unwrap(), &[4.0]);
        assert_eq!(s.column("run_id").unwrap(), &[2.0]);
    }

    #[test]
    fn ties_break_by_run_id() {
        let t = table(vec![1.0; 10]);
        let lo = subset_indices(&t, &SubsetFilter::new("v", SubsetRule::LowestQuartile)).unwrap();
        let hi = subset_indices(&t, &SubsetFilter::new("v", SubsetRule::HighestQuartile)).unwrap();
        assert_eq!(lo, vec![0, 1]);
        assert_eq!(hi, vec![0, 1]);
        let below = subset_indices(&t, &SubsetFilter::new("v", SubsetRule::BelowMedian)).unwrap();
        assert_eq!(below.len(), 5);
    }

    #[test]
    fn sizes_and_membership() {
        let values: Vec<f64> = (0..20_000).map(|i| ((i * 7919) % 20_000) as f64).collect();
        let t = table(values.clone());
        let lo = quartile_subset(&t, &SubsetFilter::new("v", SubsetRule::LowestQuartile)).unwrap();
        assert_eq!(lo.n_rows(), 5_000);
        assert!(lo.column("v").unwrap().iter().all(|&v| v < 5_000.0));
        let above = quartile_subset(&t, &SubsetFilter::new("v", SubsetRule::AboveMedian)).unwrap();
        assert_eq!(above.n_rows(), 10_000);
        assert!(above.column("v").unwrap().iter().all(|&v| v >= 10_000.0));
    }

    #[test]
    fn missing_column_is_schema_error() {
        let t = table(vec![1.0, 2.0]);
        assert!(matches!(
            quartile_subset(&t, &SubsetFilter::new("nope", SubsetRule::LowestQuartile)),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn rule_names_parse() {
        for r in [
            SubsetRule::LowestQuartile,
            SubsetRule::HighestQuartile,
            SubsetRule::BelowMedian,
            SubsetRule::AboveMedian,
        ] {
            assert_eq!(r.as_str().parse::<SubsetRule>().unwrap(), r);
        }
        assert!("top".parse::<SubsetRule>().is_err());
    }
}
