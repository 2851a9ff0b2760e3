//! Relational encoding of same-path objects.
//!
//! Every object reachable by one labeled path becomes a row. Columns are the
//! object id, `label.value` for properties that occur with a basic value, and
//! `label.type@d` holding the structural subschema of the property value
//! truncated to depth `d = 1..=k`.

use std::fmt::{self, Write as _};
use std::io;

use crate::json::print::write_escaped;
use crate::json::{DocumentCollection, JsonNumber, JsonObject, JsonValue, ObjectId, PathKey};

pub const DEFAULT_MAX_DEPTH: usize = 6;

/// A basic JSON value usable as a tag constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasicValue {
    Null,
    Bool(bool),
    Number(JsonNumber),
    String(String),
}

impl BasicValue {
    pub fn from_json(v: &JsonValue) -> Option<BasicValue> {
        match v {
            JsonValue::Null => Some(BasicValue::Null),
            JsonValue::Bool(b) => Some(BasicValue::Bool(*b)),
            JsonValue::Number(n) => Some(BasicValue::Number(n.clone())),
            JsonValue::String(s) => Some(BasicValue::String(s.clone())),
            _ => None,
        }
    }

    pub fn to_json(&self) -> JsonValue {
        match self {
            BasicValue::Null => JsonValue::Null,
            BasicValue::Bool(b) => JsonValue::Bool(*b),
            BasicValue::Number(n) => JsonValue::Number(n.clone()),
            BasicValue::String(s) => JsonValue::String(s.clone()),
        }
    }

    /// JSON text of the value; numbers keep their lexeme.
    pub fn canonical_text(&self) -> String {
        self.to_json().to_json_text()
    }
}

impl fmt::Display for BasicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

/// Structural description of a JSON value, possibly truncated.
///
/// `Array(None)` and `Object(None)` are unexpanded: they only record the
/// kind. Object members are sorted by label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subschema {
    Null,
    Boolean,
    Number,
    String,
    Array(Option<Box<Items>>),
    Object(Option<Vec<(String, Subschema)>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Items {
    /// The array has no elements.
    Empty,
    /// All elements share this description.
    Uniform(Subschema),
    /// Elements differ. `common` is the most detailed truncation all elements
    /// still share, taken at depth `depth`; `depth == 0` (and `common ==
    /// None`) means they differ already in kind.
    Mixed {
        depth: usize,
        common: Option<Subschema>,
    },
}

impl Subschema {
    pub fn any_items() -> Items {
        Items::Mixed {
            depth: 0,
            common: None,
        }
    }

    /// Canonical text; distinct descriptors never share a text.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out);
        out
    }

    fn write_text(&self, out: &mut String) {
        match self {
            Subschema::Null => out.push_str("null"),
            Subschema::Boolean => out.push_str("boolean"),
            Subschema::Number => out.push_str("number"),
            Subschema::String => out.push_str("string"),
            Subschema::Array(None) => out.push_str("array"),
            Subschema::Array(Some(items)) => {
                out.push_str("array<");
                match items.as_ref() {
                    Items::Empty => {}
                    Items::Uniform(s) => s.write_text(out),
                    Items::Mixed { common: None, .. } => out.push_str("any"),
                    Items::Mixed {
                        depth,
                        common: Some(c),
                    } => {
                        let _ = write!(out, "any@{depth}:");
                        c.write_text(out);
                    }
                }
                out.push('>');
            }
            Subschema::Object(None) => out.push_str("object"),
            Subschema::Object(Some(members)) => {
                out.push('{');
                for (i, (label, s)) in members.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_escaped(label, out);
                    out.push(':');
                    s.write_text(out);
                }
                out.push('}');
            }
        }
    }
}

impl fmt::Display for Subschema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

/// Structural subschema of `v`, expanded `depth` levels deep (`depth >= 1`).
pub fn derive_subschema(v: &JsonValue, depth: usize) -> Subschema {
    assert!(depth >= 1, "subschema depth starts at 1");
    match v {
        JsonValue::Null => Subschema::Null,
        JsonValue::Bool(_) => Subschema::Boolean,
        JsonValue::Number(_) => Subschema::Number,
        JsonValue::String(_) => Subschema::String,
        JsonValue::Array(_) | JsonValue::Object(_) if depth == 1 => match v {
            JsonValue::Array(_) => Subschema::Array(None),
            _ => Subschema::Object(None),
        },
        JsonValue::Array(elements) => {
            if elements.is_empty() {
                return Subschema::Array(Some(Box::new(Items::Empty)));
            }
            let descs: Vec<Subschema> = elements
                .iter()
                .map(|e| derive_subschema(e, depth - 1))
                .collect();
            Subschema::Array(Some(Box::new(join_items(descs, depth - 1))))
        }
        JsonValue::Object(o) => {
            let mut members: Vec<(String, Subschema)> = o
                .members
                .iter()
                .map(|(l, child)| (l.clone(), derive_subschema(child, depth - 1)))
                .collect();
            members.sort_by(|a, b| a.0.cmp(&b.0));
            Subschema::Object(Some(members))
        }
    }
}

/// Combines element descriptions computed at `item_depth`.
fn join_items(descs: Vec<Subschema>, item_depth: usize) -> Items {
    let first = &descs[0];
    if descs.iter().all(|d| d == first) {
        return Items::Uniform(descs.into_iter().next().expect("non-empty"));
    }
    for depth in (1..item_depth).rev() {
        let head = truncate(first, depth);
        if descs.iter().skip(1).all(|d| truncate(d, depth) == head) {
            return Items::Mixed {
                depth,
                common: Some(head),
            };
        }
    }
    Subschema::any_items()
}

/// Cuts `s` down to `depth` levels. For any value `v` and `d <= k`,
/// `truncate(&derive_subschema(v, k), d) == derive_subschema(v, d)`.
pub fn truncate(s: &Subschema, depth: usize) -> Subschema {
    assert!(depth >= 1, "subschema depth starts at 1");
    match s {
        Subschema::Array(Some(_)) | Subschema::Object(Some(_)) if depth == 1 => match s {
            Subschema::Array(_) => Subschema::Array(None),
            _ => Subschema::Object(None),
        },
        Subschema::Array(Some(items)) => {
            let items = match items.as_ref() {
                Items::Empty => Items::Empty,
                Items::Uniform(x) => Items::Uniform(truncate(x, depth - 1)),
                Items::Mixed {
                    depth: agreed,
                    common: Some(c),
                } if depth - 1 <= *agreed => Items::Uniform(truncate(c, depth - 1)),
                mixed => mixed.clone(),
            };
            Subschema::Array(Some(Box::new(items)))
        }
        Subschema::Object(Some(members)) => Subschema::Object(Some(
            members
                .iter()
                .map(|(l, m)| (l.clone(), truncate(m, depth - 1)))
                .collect(),
        )),
        other => other.clone(),
    }
}

/// Column identity in an [`ObjectRelation`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AttributeId {
    ObjectId,
    Value(String),
    Type(String, usize),
}

impl AttributeId {
    /// The property label, or `None` for the object id.
    pub fn label(&self) -> Option<&str> {
        match self {
            AttributeId::ObjectId => None,
            AttributeId::Value(l) | AttributeId::Type(l, _) => Some(l),
        }
    }
}

impl fmt::Display for AttributeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttributeId::ObjectId => f.write_str("O.id"),
            AttributeId::Value(l) => write!(f, "{l}.value"),
            AttributeId::Type(l, d) => write!(f, "{l}.type@{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Cell {
    Missing,
    Id(ObjectId),
    Basic(BasicValue),
    Schema(Subschema),
}

impl Cell {
    pub fn is_missing(&self) -> bool {
        matches!(self, Cell::Missing)
    }

    /// Text used in CSV exports; empty for missing cells.
    pub fn text(&self) -> String {
        match self {
            Cell::Missing => String::new(),
            Cell::Id(id) => id.to_string(),
            Cell::Basic(b) => b.canonical_text(),
            Cell::Schema(s) => s.canonical_text(),
        }
    }
}

/// The relation for one path, stored column by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectRelation {
    path: PathKey,
    attributes: Vec<AttributeId>,
    columns: Vec<Vec<Cell>>,
    rows: usize,
}

impl ObjectRelation {
    /// Builds a relation directly from columns. All columns must have the same
    /// length; used by tests and tools that synthesize relations.
    pub fn from_columns(path: PathKey, columns: Vec<(AttributeId, Vec<Cell>)>) -> Self {
        let rows = columns.first().map_or(0, |(_, c)| c.len());
        assert!(
            columns.iter().all(|(_, c)| c.len() == rows),
            "ragged relation"
        );
        let (attributes, columns) = columns.into_iter().unzip();
        ObjectRelation {
            path,
            attributes,
            columns,
            rows,
        }
    }

    pub fn path(&self) -> &PathKey {
        &self.path
    }

    pub fn attributes(&self) -> &[AttributeId] {
        &self.attributes
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn column(&self, attr: &AttributeId) -> Option<&[Cell]> {
        self.attributes
            .iter()
            .position(|a| a == attr)
            .map(|i| self.columns[i].as_slice())
    }

    pub fn cell(&self, row: usize, attr: &AttributeId) -> Option<&Cell> {
        self.column(attr).and_then(|c| c.get(row))
    }

    pub fn value_attributes(&self) -> impl Iterator<Item = &AttributeId> {
        self.attributes
            .iter()
            .filter(|a| matches!(a, AttributeId::Value(_)))
    }

    pub fn type_attributes(&self) -> impl Iterator<Item = &AttributeId> {
        self.attributes
            .iter()
            .filter(|a| matches!(a, AttributeId::Type(..)))
    }

    /// Writes the relation as CSV: attribute names as header, canonical cell
    /// text, empty fields for missing cells.
    pub fn write_csv<W: io::Write>(&self, writer: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(self.attributes.iter().map(ToString::to_string))?;
        for row in 0..self.rows {
            w.write_record(self.columns.iter().map(|c| c[row].text()))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Encodes the given objects (all reachable by `path`) with relaxation depths
/// `1..=max_depth`.
pub fn encode_objects(path: &PathKey, objects: &[&JsonObject], max_depth: usize) -> ObjectRelation {
    assert!(max_depth >= 1, "max depth starts at 1");
    let mut labels: indexmap::IndexMap<&str, bool> = indexmap::IndexMap::new();
    for o in objects {
        for (label, v) in &o.members {
            *labels.entry(label.as_str()).or_insert(false) |= v.is_basic();
        }
    }

    let mut columns = Vec::new();
    columns.push((
        AttributeId::ObjectId,
        objects.iter().map(|o| Cell::Id(o.id)).collect(),
    ));
    for (label, has_basic) in &labels {
        let values: Vec<Option<&JsonValue>> = objects.iter().map(|o| o.get(label)).collect();
        if *has_basic {
            columns.push((
                AttributeId::Value((*label).to_owned()),
                values
                    .iter()
                    .map(|v| match v.and_then(BasicValue::from_json) {
                        Some(b) => Cell::Basic(b),
                        None => Cell::Missing,
                    })
                    .collect(),
            ));
        }
        let deepest: Vec<Option<Subschema>> = values
            .iter()
            .map(|v| v.map(|v| derive_subschema(v, max_depth)))
            .collect();
        for depth in 1..=max_depth {
            columns.push((
                AttributeId::Type((*label).to_owned(), depth),
                deepest
                    .iter()
                    .map(|s| match s {
                        Some(s) if depth == max_depth => Cell::Schema(s.clone()),
                        Some(s) => Cell::Schema(truncate(s, depth)),
                        None => Cell::Missing,
                    })
                    .collect(),
            ));
        }
    }
    ObjectRelation::from_columns(path.clone(), columns)
}

/// Relation for all objects in `coll` reachable by `path`.
pub fn encode_relation(
    coll: &DocumentCollection,
    path: &PathKey,
    max_depth: usize,
) -> ObjectRelation {
    encode_objects(path, &coll.objects_at_path(path), max_depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::json::{parse_value, InputMode};

    fn derive(text: &str, depth: usize) -> Subschema {
        derive_subschema(&parse_value(text).unwrap(), depth)
    }

    fn t1() -> Subschema {
        Subschema::Array(Some(Box::new(Items::Uniform(Subschema::Number))))
    }

    fn t2() -> Subschema {
        Subschema::Array(Some(Box::new(Items::Uniform(t1()))))
    }

    #[test]
    fn point_and_line_coordinates() {
        for d in 2..=6 {
            assert_eq!(derive("[30,10]", d), t1());
        }
        for d in 3..=6 {
            assert_eq!(derive("[[55,5],[10,30],[10,10]]", d), t2());
        }
        assert_eq!(derive("[[55,5]]", 2).canonical_text(), "array<array>");
    }

    #[test]
    fn depth_one_records_kind_only() {
        assert_eq!(derive(r#"{"min": 0.0}"#, 1), Subschema::Object(None));
        assert_eq!(
            derive(r#"{"min": 0.0}"#, 2).canonical_text(),
            r#"{"min":number}"#
        );
    }

    #[test]
    fn heterogeneous_items() {
        assert_eq!(derive("[1,\"a\"]", 3).canonical_text(), "array<any>");
        let s = derive("[[1],[1,\"a\"]]", 3);
        assert_eq!(s.canonical_text(), "array<any@1:array>");
        assert_eq!(truncate(&s, 2), derive("[[1],[1,\"a\"]]", 2));
        assert_eq!(derive("[]", 2).canonical_text(), "array<>");
    }

    #[test]
    fn encodes_pooled_mixed_values() {
        let coll =
            DocumentCollection::from_text(r#"[{"a":1},{"a":"x"},{"a":[1]}]"#, InputMode::Single)
                .unwrap();
        let rel = encode_relation(&coll, &PathKey::root().items(), 2);
        assert_eq!(rel.row_count(), 3);
        let values: Vec<String> = rel
            .column(&AttributeId::Value("a".into()))
            .unwrap()
            .iter()
            .map(Cell::text)
            .collect();
        assert_eq!(values, ["1", "\"x\"", ""]);
        let types: Vec<String> = rel
            .column(&AttributeId::Type("a".into(), 1))
            .unwrap()
            .iter()
            .map(Cell::text)
            .collect();
        assert_eq!(types, ["number", "string", "array"]);
    }

    #[test]
    fn empty_object_has_only_id() {
        let coll = DocumentCollection::from_text("{}", InputMode::Single).unwrap();
        let rel = encode_relation(&coll, &PathKey::root(), 6);
        assert_eq!(rel.attributes(), &[AttributeId::ObjectId]);
        assert_eq!(rel.row_count(), 1);
    }

    #[test]
    fn csv_export() {
        let coll =
            DocumentCollection::from_text(r#"[{"a":1,"b":[]},{"b":null}]"#, InputMode::Single)
                .unwrap();
        let rel = encode_relation(&coll, &PathKey::root().items(), 2);
        let mut buf = Vec::new();
        rel.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "O.id,a.value,a.type@1,a.type@2,b.value,b.type@1,b.type@2"
        );
        assert_eq!(lines.next().unwrap(), "0:2,1,number,number,,array,array<>");
        assert_eq!(lines.next().unwrap(), "0:4,,,,null,null,null");
    }
}
