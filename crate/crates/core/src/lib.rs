//! Upper homogeneous posets: rank-truncated graded posets, exact power
//! series, generators for the standard families and checks of the identities
//! relating their rank and characteristic generating functions.

pub mod families;
pub mod poset;
pub mod random;
pub mod report;
pub mod series;
pub mod verify;

pub use families::{generate, Family, FamilyError, FamilySpec, GoldenForm};
pub use poset::{BoundError, Element, ElementId, GradedPoset, MobiusVector, PosetError};
pub use report::VerificationReport;
pub use series::{SeriesError, TruncatedSeries};
pub use verify::{UphoStatus, VerifyError};
