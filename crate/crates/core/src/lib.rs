//! Exact truncated power series in commuting and free indeterminates.
//!
//! Composition and inversion are computed both by direct substitution and by
//! energy sums over labelled (commutative) or planar (free) trees; the two
//! routes are kept independent so each can check the other.

pub mod apps;
pub mod cli;
pub mod commseries;
pub mod error;
pub mod freeseries;
pub mod limits;
pub mod matrix;
pub mod multi_index;
pub mod partitions;
pub mod rational;
pub mod trees;
pub mod word;

pub use commseries::{CommMap, CommSeries};
pub use error::{Error, Result};
pub use freeseries::{FreeMap, FreeSeries};
pub use limits::Limits;
pub use matrix::Matrix;
pub use multi_index::{LabelSlot, MultiIndex};
pub use rational::Rational;
pub use word::Word;
