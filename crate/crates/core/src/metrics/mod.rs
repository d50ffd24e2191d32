//! Elite-set diversity, mean relative error, run records and result tables.

mod diversity;
mod mre;
mod record;
mod table;

pub use diversity::{hamming, mean_pairwise_diversity};
pub use mre::{mean_relative_error, mre, mre_by_algorithm, relative_error};
pub use record::{RunRecord, SearchTrace, StartKind};
pub use table::{Cell, ResultTable, TableRow};
