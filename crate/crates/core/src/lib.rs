//! Extraction of JSON Schema descriptions enriched with tagged unions.
//!
//! Objects reached by the same labeled path are encoded as a relation whose
//! columns hold property values and property subschemas at increasing depth.
//! Dependencies of the form `[tag.value = c] -> [other.type@d = s]` are
//! discovered over position list indexes, pruned, merged into tagged unions
//! and emitted as `if`/`then`/`else` chains (or `anyOf`) that are composed
//! with a structural schema.
//!
//! ```
//! use cfdschema::json::{DocumentCollection, InputMode};
//! use cfdschema::pipeline::{run_pipeline, PipelineConfig};
//!
//! let coll = DocumentCollection::from_text(
//!     r#"[{"kind":"a","v":1},{"kind":"b","v":"x"},{"kind":"a","v":2}]"#,
//!     InputMode::Single,
//! ).unwrap();
//! let runs = run_pipeline(&coll, "demo", &PipelineConfig::default()).unwrap();
//! assert_eq!(runs[0].report.cfds_with_threshold_and_heuristics, 2);
//! ```

pub mod baseline;
pub mod discovery;
pub mod emit;
pub mod encoding;
pub mod error;
pub mod heuristics;
pub mod json;
pub mod pipeline;
pub mod report;
pub mod schema;
pub mod validate;

pub use error::{Error, Result};
