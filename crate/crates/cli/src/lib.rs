//! File formats and verification suites behind the `widthforge` binary.
//!
//! Everything here is a thin adapter: parsing produces the core types,
//! serialization is canonical (sorted records, no comments), and the suites
//! drive the core invariants over fixed corpora, reporting CSV rows in
//! deterministic order.

pub mod formats;
pub mod suites;
