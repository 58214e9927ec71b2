//! Invariants of symmetric quiver representations: trace-word generators,
//! exact evaluation, an independent invariant-theory oracle, pfaffian
//! extensions for special orthogonal groups, and local-model bookkeeping.

pub mod error;
pub mod evaluate;
pub mod io;
pub mod linalg;
pub mod local_model;
pub mod oracle;
pub mod pfaffian_so;
pub mod poly;
pub mod quiver;
pub mod rng;
pub mod suite;
pub mod words;

pub use error::{Error, Result};
pub use evaluate::{act, evaluate_word, invariance_report, Evaluator, GroupElement, Representation, StarMode};
pub use io::{parse_quiver, parse_spec, QuiverFile};
pub use linalg::{RatMatrix, Rational};
pub use local_model::{
    build_local_quiver, ext_dimensions, fiber_cardinality, h1ad_inventory, hilbert_series, local_model_report, multiplicity,
    tangent_dim, DecompositionSpec, Flavor, LocalModelReport, SummandKind, SummandSpec,
};
pub use oracle::{check_spanning, fft_check, FftReport, SpanOptions, SpanningReport};
pub use pfaffian_so::{pfaffian_functional, pfaffian_identity_check, so_extension_check, PfaffianContext};
pub use quiver::{
    build_doubled, gram_matrix, validate_dimension, DimVector, DoubledQuiver, FormAssignment, SymQuiver, VertexKind,
};
pub use words::{canonicalize, enumerate_cycles, generators, SignedArrow, TraceWord};
