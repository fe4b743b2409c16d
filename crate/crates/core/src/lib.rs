//! Finite quadratical quasigroups and k-translatable groupoids.
//!
//! - [`groupoid`]: Cayley tables, identity checks, duals, products,
//!   closure, 4-cycles and isomorphism search.
//! - [`linear`]: linear groupoids `ax + by + c` over `Z_m`.
//! - [`translatable`]: k-translatability checks, ordering search and the
//!   idempotent first-row construction.
//! - [`qn`]: H-chains, the Qn form and a deduction engine for completing or
//!   refuting Qn tables.
//! - [`enumerate`]: resumable sweeps classifying quadratical forms on `Z_m`.
//! - [`fixtures`]: bundled reference tables.

pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod groupoid;
pub mod linear;
pub mod qn;
pub mod translatable;

pub use error::{Error, Result};
pub use groupoid::{CayleyTable, IdentityId, IdentityReport, Verdict};
pub use linear::LinearSpec;
pub use qn::{DeductionOutcome, PartialTable, QnDecomposition};
pub use translatable::TranslatabilityReport;
pub use enumerate::ClassificationRow;
