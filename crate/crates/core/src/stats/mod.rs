//! Statistics used to analyse sweep output.

pub mod corr;
pub mod describe;
pub mod dist;
pub mod ols;
pub mod report;
pub mod signcheck;
pub mod subset;
pub mod table;

pub use corr::{pearson, pearson_matrix, CorrelationMatrix};
pub use describe::{bimodality_coefficient, histogram, median, skewness, Histogram};
pub use dist::{f_pvalue, t_pvalue};
pub use ols::{ols_fit, ols_with_intercept, stars, RegressionResult, INTERCEPT};
pub use report::{regression_csv, regression_table};
pub use signcheck::{sign_check, Sign, SignReport, Verdict};
pub use subset::{quartile_subset, subset_indices, SubsetFilter, SubsetRule};
pub use table::Table;
