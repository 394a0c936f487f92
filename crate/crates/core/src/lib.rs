//! Weighted Spearman footrule and weighted Kendall tau between ranked
//! lists, full or partial.
//!
//! Partial lists are completed by appending each list's missing elements
//! in the order the other list ranks them ([`complete_pair`]). The pair is
//! then relabelled by the first list's ranks ([`align`]) and measured with
//! element weights that follow their tokens ([`measures`]).
//!
//! ```
//! use rankdist::{compare, RankedList, WeightTable};
//!
//! let a = RankedList::new(["a", "b", "c"]).unwrap();
//! let b = RankedList::new(["b", "d", "c", "e"]).unwrap();
//! let report = compare(&a, &b, &WeightTable::unit()).unwrap();
//! assert_eq!(report.footrule_raw, 8.0);
//! assert_eq!(report.kendall_raw, 5.0);
//! assert!(report.dg_holds);
//! ```

pub mod analysis;
pub mod error;
pub mod experiments;
mod fenwick;
pub mod format;
pub mod measures;
pub mod model;

pub use error::{Error, Result};
pub use measures::{compare, KendallAlgo, MeasureReport};
pub use model::{
    align, complete_and_align, complete_pair, parse_ranked_list, AlignedPair, ListFormat,
    RankedList, WeightTable,
};
