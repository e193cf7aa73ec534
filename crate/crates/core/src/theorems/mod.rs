//! Executable forms of the main results as reportable checks over explicit
//! instances. A `holds` verdict speaks only about the instance checked.

mod checks;
mod report;
mod search;
mod suite;

pub use checks::*;
pub use report::{TheoremReport, Verdict};
pub use search::{comparison_image, search_maltsev_counterexample, split_square_document, SearchDomain};
pub use suite::{verify, THEOREM_IDS};
