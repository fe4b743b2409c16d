//! Finite groupoids given by their Cayley tables: identity checking,
//! duality, products, closure, 4-cycles and isomorphism.

mod identity;
mod iso;
mod ops;
mod table;

pub use identity::{check_identity, is_quadratical, IdentityId, IdentityReport, Verdict};
pub use iso::{find_isomorphism, is_isomorphism};
pub use ops::{
    direct_product, dual, four_cycles, four_cycles_around, generated_subgroupoid,
    greedy_generating_set, two_generation_report, TwoGenerationReport,
};
pub use table::CayleyTable;

pub(crate) use table::check_permutation;
