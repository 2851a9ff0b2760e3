//! JSON value model, parsing, printing and labeled-path traversal.

mod collection;
pub mod parse;
mod path;
pub mod print;
mod value;

pub use collection::DocumentCollection;
pub use parse::{parse_documents, parse_value, InputMode, ParseError};
pub use path::{PathKey, Segment};
pub use value::{canonical_order, JsonKind, JsonNumber, JsonObject, JsonValue, ObjectId};
