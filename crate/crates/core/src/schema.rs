//! AST for the JSON Schema subset this crate emits and validates.
//!
//! Keywords keep their order so a loaded schema re-serializes as written.
//! Keywords outside the subset are carried as [`Keyword::Other`].

use std::fmt;

use crate::json::{print, JsonValue};

pub const DRAFT_07: &str = "http://json-schema.org/draft-07/schema#";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemaType {
    Null,
    Boolean,
    Integer,
    Number,
    String,
    Array,
    Object,
}

impl SchemaType {
    pub fn name(self) -> &'static str {
        match self {
            SchemaType::Null => "null",
            SchemaType::Boolean => "boolean",
            SchemaType::Integer => "integer",
            SchemaType::Number => "number",
            SchemaType::String => "string",
            SchemaType::Array => "array",
            SchemaType::Object => "object",
        }
    }

    pub fn from_name(name: &str) -> Option<SchemaType> {
        Some(match name {
            "null" => SchemaType::Null,
            "boolean" => SchemaType::Boolean,
            "integer" => SchemaType::Integer,
            "number" => SchemaType::Number,
            "string" => SchemaType::String,
            "array" => SchemaType::Array,
            "object" => SchemaType::Object,
            _ => return None,
        })
    }
}

/// `"type": "x"` or `"type": ["x", "y"]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeSpec {
    Single(SchemaType),
    Union(Vec<SchemaType>),
}

impl TypeSpec {
    pub fn types(&self) -> &[SchemaType] {
        match self {
            TypeSpec::Single(t) => std::slice::from_ref(t),
            TypeSpec::Union(ts) => ts,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Keyword {
    Type(TypeSpec),
    Properties(Vec<(String, SchemaNode)>),
    Items(Box<SchemaNode>),
    Required(Vec<String>),
    Const(JsonValue),
    Enum(Vec<JsonValue>),
    If(Box<SchemaNode>),
    Then(Box<SchemaNode>),
    Else(Box<SchemaNode>),
    AllOf(Vec<SchemaNode>),
    AnyOf(Vec<SchemaNode>),
    /// Any other keyword, kept verbatim.
    Other(String, JsonValue),
}

impl Keyword {
    pub fn name(&self) -> &str {
        match self {
            Keyword::Type(_) => "type",
            Keyword::Properties(_) => "properties",
            Keyword::Items(_) => "items",
            Keyword::Required(_) => "required",
            Keyword::Const(_) => "const",
            Keyword::Enum(_) => "enum",
            Keyword::If(_) => "if",
            Keyword::Then(_) => "then",
            Keyword::Else(_) => "else",
            Keyword::AllOf(_) => "allOf",
            Keyword::AnyOf(_) => "anyOf",
            Keyword::Other(name, _) => name,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SchemaNode {
    Bool(bool),
    Keywords(Vec<Keyword>),
}

impl Default for SchemaNode {
    fn default() -> Self {
        SchemaNode::Keywords(Vec::new())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct SchemaError {
    /// JSON pointer into the schema document.
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.pointer.is_empty() {
            "/"
        } else {
            &self.pointer
        };
        write!(f, "malformed schema at {at}: {}", self.message)
    }
}

fn pointer_escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

impl SchemaNode {
    /// The schema `{}`, which accepts everything.
    pub fn empty() -> Self {
        SchemaNode::default()
    }

    pub fn keywords(&self) -> &[Keyword] {
        match self {
            SchemaNode::Bool(_) => &[],
            SchemaNode::Keywords(k) => k,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SchemaNode::Keywords(k) if k.is_empty())
    }

    pub fn with(mut self, keyword: Keyword) -> Self {
        match &mut self {
            SchemaNode::Keywords(k) => k.push(keyword),
            SchemaNode::Bool(_) => self = SchemaNode::Keywords(vec![keyword]),
        }
        self
    }

    pub fn of_type(t: SchemaType) -> Self {
        SchemaNode::empty().with(Keyword::Type(TypeSpec::Single(t)))
    }

    pub fn get(&self, name: &str) -> Option<&Keyword> {
        self.keywords().iter().find(|k| k.name() == name)
    }

    pub fn to_json(&self) -> JsonValue {
        match self {
            SchemaNode::Bool(b) => JsonValue::Bool(*b),
            SchemaNode::Keywords(keywords) => JsonValue::object(keywords.iter().map(|k| {
                let value = match k {
                    Keyword::Type(TypeSpec::Single(t)) => JsonValue::string(t.name()),
                    Keyword::Type(TypeSpec::Union(ts)) => {
                        JsonValue::Array(ts.iter().map(|t| JsonValue::string(t.name())).collect())
                    }
                    Keyword::Properties(props) => {
                        JsonValue::object(props.iter().map(|(l, s)| (l.clone(), s.to_json())))
                    }
                    Keyword::Items(s) | Keyword::If(s) | Keyword::Then(s) | Keyword::Else(s) => {
                        s.to_json()
                    }
                    Keyword::Required(labels) => JsonValue::Array(
                        labels
                            .iter()
                            .map(|l| JsonValue::string(l.clone()))
                            .collect(),
                    ),
                    Keyword::Const(v) => v.clone(),
                    Keyword::Enum(vs) => JsonValue::Array(vs.clone()),
                    Keyword::AllOf(ss) | Keyword::AnyOf(ss) => {
                        JsonValue::Array(ss.iter().map(SchemaNode::to_json).collect())
                    }
                    Keyword::Other(_, v) => v.clone(),
                };
                (k.name().to_owned(), value)
            })),
        }
    }

    /// Expanded pretty print (2-space indent).
    pub fn to_pretty_string(&self) -> String {
        print::expanded(&self.to_json())
    }

    pub fn from_json(v: &JsonValue) -> Result<SchemaNode, SchemaError> {
        parse_node(v, "")
    }
}

fn err(pointer: &str, message: impl Into<String>) -> SchemaError {
    SchemaError {
        pointer: pointer.to_owned(),
        message: message.into(),
    }
}

fn parse_node(v: &JsonValue, ptr: &str) -> Result<SchemaNode, SchemaError> {
    let obj = match v {
        JsonValue::Bool(b) => return Ok(SchemaNode::Bool(*b)),
        JsonValue::Object(o) => o,
        _ => return Err(err(ptr, "a schema must be an object or a boolean")),
    };
    let mut keywords = Vec::with_capacity(obj.members.len());
    for (name, value) in &obj.members {
        let here = format!("{ptr}/{}", pointer_escape(name));
        let sub = |v: &JsonValue| parse_node(v, &here).map(Box::new);
        let list = |v: &JsonValue| -> Result<Vec<SchemaNode>, SchemaError> {
            let items = v
                .as_array()
                .ok_or_else(|| err(&here, format!("'{name}' must be an array")))?;
            if items.is_empty() {
                return Err(err(&here, format!("'{name}' must not be empty")));
            }
            items
                .iter()
                .enumerate()
                .map(|(i, s)| parse_node(s, &format!("{here}/{i}")))
                .collect()
        };
        let keyword = match name.as_str() {
            "type" => Keyword::Type(parse_type(value, &here)?),
            "properties" => {
                let o = value
                    .as_object()
                    .ok_or_else(|| err(&here, "'properties' must be an object"))?;
                Keyword::Properties(
                    o.members
                        .iter()
                        .map(|(l, s)| {
                            parse_node(s, &format!("{here}/{}", pointer_escape(l)))
                                .map(|s| (l.clone(), s))
                        })
                        .collect::<Result<_, _>>()?,
                )
            }
            // tuple-form items are outside the subset
            "items" if value.as_array().is_some() => Keyword::Other(name.clone(), value.clone()),
            "items" => Keyword::Items(sub(value)?),
            "required" => {
                let items = value
                    .as_array()
                    .ok_or_else(|| err(&here, "'required' must be an array"))?;
                let labels = items
                    .iter()
                    .map(|l| {
                        l.as_str()
                            .map(str::to_owned)
                            .ok_or_else(|| err(&here, "'required' entries must be strings"))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Keyword::Required(labels)
            }
            "const" => Keyword::Const(value.clone()),
            "enum" => Keyword::Enum(
                value
                    .as_array()
                    .ok_or_else(|| err(&here, "'enum' must be an array"))?
                    .to_vec(),
            ),
            "if" => Keyword::If(sub(value)?),
            "then" => Keyword::Then(sub(value)?),
            "else" => Keyword::Else(sub(value)?),
            "allOf" => Keyword::AllOf(list(value)?),
            "anyOf" => Keyword::AnyOf(list(value)?),
            _ => Keyword::Other(name.clone(), value.clone()),
        };
        keywords.push(keyword);
    }
    Ok(SchemaNode::Keywords(keywords))
}

fn parse_type(v: &JsonValue, ptr: &str) -> Result<TypeSpec, SchemaError> {
    let one = |v: &JsonValue| {
        v.as_str()
            .and_then(SchemaType::from_name)
            .ok_or_else(|| err(ptr, format!("unknown type {v}")))
    };
    match v {
        JsonValue::Array(items) => Ok(TypeSpec::Union(
            items.iter().map(one).collect::<Result<_, _>>()?,
        )),
        other => Ok(TypeSpec::Single(one(other)?)),
    }
}
