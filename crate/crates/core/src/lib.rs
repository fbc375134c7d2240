//! Diagonal type-B permutation groups with socle `L²`, genus-system search,
//! and exact rational auditing of the fixed-point-ratio bound chains that
//! drive the classification at low genus.
//!
//! The crate is organized around a small permutation kernel ([`perm`],
//! [`bsgs`]), exact arithmetic ([`algebra`]), a catalog of concrete groups
//! ([`atlas`]), the diagonal construction ([`socle`]), Riemann–Hurwitz
//! bookkeeping ([`rh`]), the two search modes ([`search`]), and the audit
//! ledger ([`ledger`]). The `mforge` binary wires these into a CLI.

pub mod algebra;
pub mod atlas;
pub mod bsgs;
pub mod config;
pub mod ledger;
pub mod perm;
pub mod report;
pub mod rh;
pub mod search;
pub mod socle;
pub mod theorem;

pub use perm::{CycleData, Perm, PermError};
