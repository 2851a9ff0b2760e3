//! Structural schema extraction: types, nesting, required properties and
//! `anyOf` unions of incompatible shapes.
//!
//! Values reaching the same place are clustered greedily. Two shapes are
//! compatible when they have the same kind, shared object properties are
//! compatible, and every item cluster of one array is compatible with some
//! item cluster of the other. Compatible shapes merge; the rest become
//! alternatives.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::json::{parse_documents, DocumentCollection, InputMode, JsonValue};
use crate::schema::{Keyword, SchemaNode, SchemaType};

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Null,
    Boolean,
    Number,
    String,
    Array(Vec<Shape>),
    Object {
        properties: Vec<(String, Shape)>,
        /// Labels present in every merged object, in property order.
        required: Vec<String>,
    },
}

impl Shape {
    fn of(v: &JsonValue) -> Shape {
        match v {
            JsonValue::Null => Shape::Null,
            JsonValue::Bool(_) => Shape::Boolean,
            JsonValue::Number(_) => Shape::Number,
            JsonValue::String(_) => Shape::String,
            JsonValue::Array(items) => {
                let mut clusters = Vec::new();
                for item in items {
                    insert(&mut clusters, Shape::of(item));
                }
                Shape::Array(clusters)
            }
            JsonValue::Object(o) => Shape::Object {
                properties: o
                    .members
                    .iter()
                    .map(|(l, v)| (l.clone(), Shape::of(v)))
                    .collect(),
                required: o.members.iter().map(|(l, _)| l.clone()).collect(),
            },
        }
    }

    fn compatible(&self, other: &Shape) -> bool {
        match (self, other) {
            (Shape::Array(a), Shape::Array(b)) => {
                a.is_empty()
                    || b.is_empty()
                    || (a.iter().all(|x| b.iter().any(|y| x.compatible(y)))
                        && b.iter().all(|y| a.iter().any(|x| x.compatible(y))))
            }
            (Shape::Object { properties: a, .. }, Shape::Object { properties: b, .. }) => {
                a.iter().all(|(l, x)| {
                    b.iter()
                        .find(|(m, _)| m == l)
                        .is_none_or(|(_, y)| x.compatible(y))
                })
            }
            (a, b) => std::mem::discriminant(a) == std::mem::discriminant(b),
        }
    }

    /// Merges a compatible shape into `self`.
    fn absorb(&mut self, other: Shape) {
        match (self, other) {
            (Shape::Array(a), Shape::Array(b)) => {
                for s in b {
                    insert(a, s);
                }
            }
            (
                Shape::Object {
                    properties,
                    required,
                },
                Shape::Object {
                    properties: other_props,
                    required: other_req,
                },
            ) => {
                required.retain(|l| other_req.contains(l));
                for (label, shape) in other_props {
                    match properties.iter_mut().find(|(l, _)| *l == label) {
                        Some((_, mine)) => mine.absorb(shape),
                        None => properties.push((label, shape)),
                    }
                }
            }
            _ => {}
        }
    }

    fn to_schema(&self) -> SchemaNode {
        match self {
            Shape::Null => SchemaNode::of_type(SchemaType::Null),
            Shape::Boolean => SchemaNode::of_type(SchemaType::Boolean),
            Shape::Number => SchemaNode::of_type(SchemaType::Number),
            Shape::String => SchemaNode::of_type(SchemaType::String),
            Shape::Array(items) => {
                let node = SchemaNode::of_type(SchemaType::Array);
                if items.is_empty() {
                    node
                } else {
                    node.with(Keyword::Items(Box::new(union_schema(items))))
                }
            }
            Shape::Object {
                properties,
                required,
            } => {
                let mut node = SchemaNode::of_type(SchemaType::Object);
                if !properties.is_empty() {
                    node = node.with(Keyword::Properties(
                        properties
                            .iter()
                            .map(|(l, s)| (l.clone(), s.to_schema()))
                            .collect(),
                    ));
                }
                if !required.is_empty() {
                    node = node.with(Keyword::Required(required.clone()));
                }
                node
            }
        }
    }
}

fn insert(clusters: &mut Vec<Shape>, shape: Shape) {
    match clusters.iter_mut().find(|c| c.compatible(&shape)) {
        Some(c) => c.absorb(shape),
        None => clusters.push(shape),
    }
}

fn union_schema(clusters: &[Shape]) -> SchemaNode {
    match clusters {
        [one] => one.to_schema(),
        many => {
            SchemaNode::empty().with(Keyword::AnyOf(many.iter().map(Shape::to_schema).collect()))
        }
    }
}

/// Schema accepting every document of the collection.
pub fn extract_structural_schema(coll: &DocumentCollection) -> Result<SchemaNode> {
    if coll.is_empty() {
        return Err(Error::EmptyCollection);
    }
    let mut clusters = Vec::new();
    for doc in coll.documents() {
        insert(&mut clusters, Shape::of(doc));
    }
    Ok(union_schema(&clusters))
}

/// Reads a schema produced by another tool. Unknown keywords are kept.
pub fn load_external_schema(path: &Path) -> Result<SchemaNode> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let doc = parse_documents(&text, InputMode::Single, 0)
        .map_err(|source| Error::Parse {
            path: path.display().to_string(),
            source,
        })?
        .pop()
        .ok_or(Error::EmptyCollection)?;
    Ok(SchemaNode::from_json(&doc)?)
}
