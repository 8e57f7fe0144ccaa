//! Exact mutation theory for skew-symmetric 3×3 exchange matrices.
//!
//! An [`ExchangeMatrix`] `B` encodes a quiver with `b_ij` arrows `i → j`
//! whenever `b_ij > 0`. This crate decides whether a 3-vertex matrix is
//! mutation-cyclic (every matrix in its mutation class is cyclic) or
//! mutation-acyclic, and attaches a replayable [`MutationTrace`] to every
//! verdict so the answer can be checked without trusting the classifier.
//!
//! ```
//! use mut3_core::{classify, SortedTriple, Verdict};
//!
//! let q = SortedTriple::from_u64(3, 3, 7).unwrap().to_matrix();
//! let result = classify(&q).unwrap();
//! assert_eq!(result.verdict, Verdict::MutationCyclic);
//! assert_eq!(result.root, Some(SortedTriple::from_u64(2, 3, 3).unwrap()));
//! ```
//!
//! All arithmetic is exact ([`num_bigint::BigInt`]); mutation parameters grow
//! exponentially along walks, so fixed-width integers are never used for
//! entries.

pub mod classifier;
mod decimal;
pub mod error;
pub mod explorer;
pub mod quiver;
pub mod sequences;
pub mod threshold;

pub use classifier::{
    classify, is_mutation_finite, is_root, to_cyclic, verify_certificate, ClassificationResult,
    Classifier, MutationStep, MutationTrace, Verdict, DEFAULT_MAX_STEPS,
};
pub use error::{Error, Result};
pub use explorer::{
    enumerate_class, node_label, random_walk, same_class, Caps, ClassEdge, ClassGraph, ClassNode,
    ClassStatus, SameClass,
};
pub use quiver::{CanonicalKey, ExchangeMatrix, SortedTriple};
pub use sequences::{s_closed_form, s_recurrence, s_terms, RecurrenceParams};
pub use threshold::{
    c0_equal_case, c0_near_case, scan_window, threshold_c0, threshold_c0_with,
    verify_monotone_window, ScanPoint, ThresholdResult,
};
