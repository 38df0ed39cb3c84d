//! Reconstruction of multisets of constant-weight binary strings from the
//! compositions of all their prefixes and suffixes.
//!
//! Given the multiset of (zeros, ones) pairs of every affix of h strings
//! of one length and one weight, this crate can
//!
//! - rebuild one compatible multiset in O(nh) grid work ([`greedy`]),
//! - decide whether the multiset is unique up to reversing strings
//!   ([`uniqueness`]),
//! - enumerate every compatible multiset up to reversal ([`enumerate`]),
//! - and cross-check all of it against a brute-force search ([`oracle`]).
//!
//! Everything is phrased over cumulative weight grids ([`cwf`]): 2h rows
//! of running affix weights, two per string, one from each end.

pub mod compositions;
pub mod cwf;
pub mod enumerate;
pub mod greedy;
pub mod io;
pub mod oracle;
pub mod strings;
pub mod uniqueness;

pub use compositions::{compose_string, CompositionMultiset, CompositionPair, CountTables};
pub use cwf::{is_branching, is_merging, partner, Cwf, MaximalInterval};
pub use enumerate::{reconstruct_all, reconstruct_all_parallel, HalfClass, HalfProfile};
pub use greedy::reconstruct_one;
pub use oracle::{brute_force_all, brute_force_unique, Budget};
pub use strings::{enumerate_constant_weight, BitString, ReversalClass, StringMultiset};
pub use uniqueness::{check_unique, check_unique_cwf, UniquenessReport};
