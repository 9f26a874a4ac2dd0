//! Partitional clustering of uncertain objects.
//!
//! An uncertain object is a box-shaped domain region paired with a probability
//! density over it. Every clustering objective in this crate is evaluated from
//! per-object moments (expected value, second-order moment, variance), which
//! are computed once when an object is built.
//!
//! Module map:
//!
//! - [`model`]: regions, pdf families, analytic moments, sampling, dataset I/O.
//! - [`closedform`]: expected squared distances and the UK-means / MMVar objectives.
//! - [`ucentroid`]: the U-centroid, its moments and variance, and the
//!   incremental [`ClusterStats`](ucentroid::ClusterStats) behind the UCPC objective.
//! - [`algorithms`]: UCPC relocation search and the UK-means, MMVar and
//!   basic (sampling) UK-means baselines.
//! - [`oracle`]: Monte-Carlo and exhaustive-enumeration verifiers.
//! - [`eval`]: F-measure, intra/inter distances, Q and Θ.
//! - [`datagen`]: synthetic uncertainty generation for deterministic data.

pub mod algorithms;
pub mod closedform;
pub mod datagen;
pub mod error;
pub mod eval;
pub mod model;
pub mod oracle;
pub mod rng;
pub mod ucentroid;

pub use error::{Error, Result};
pub use model::{Dataset, Moments, PdfSpec, Region, SourcePdf, UncertainObject};
