//! Draft-07 validation restricted to the keyword subset in [`crate::schema`].
//!
//! Keywords outside the subset are ignored; [`unsupported_keywords`] lists
//! them so callers can warn.

use crate::json::{JsonKind, JsonValue};
use crate::schema::{Keyword, SchemaNode, SchemaType};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationError {
    /// JSON pointer into the instance.
    pub instance_path: String,
    pub keyword: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationResult {
    pub errors: Vec<ValidationError>,
}

impl ValidationResult {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Keywords that only annotate and never affect validation.
const ANNOTATIONS: &[&str] = &[
    "$schema",
    "$id",
    "$comment",
    "title",
    "description",
    "default",
    "examples",
    "readOnly",
    "writeOnly",
    "definitions",
];

/// Schema pointers and names of keywords the validator skips.
pub fn unsupported_keywords(schema: &SchemaNode) -> Vec<(String, String)> {
    fn walk(node: &SchemaNode, ptr: &str, out: &mut Vec<(String, String)>) {
        for k in node.keywords() {
            let here = format!("{ptr}/{}", k.name());
            match k {
                Keyword::Other(name, _) if !ANNOTATIONS.contains(&name.as_str()) => {
                    out.push((ptr.to_owned(), name.clone()))
                }
                Keyword::Properties(props) => {
                    for (l, s) in props {
                        walk(s, &format!("{here}/{l}"), out);
                    }
                }
                Keyword::Items(s) | Keyword::If(s) | Keyword::Then(s) | Keyword::Else(s) => {
                    walk(s, &here, out)
                }
                Keyword::AllOf(ss) | Keyword::AnyOf(ss) => {
                    for (i, s) in ss.iter().enumerate() {
                        walk(s, &format!("{here}/{i}"), out);
                    }
                }
                _ => {}
            }
        }
    }
    let mut out = Vec::new();
    walk(schema, "", &mut out);
    out
}

pub fn validate(instance: &JsonValue, schema: &SchemaNode) -> ValidationResult {
    let mut errors = Vec::new();
    check(instance, schema, &mut String::new(), &mut errors);
    ValidationResult { errors }
}

pub fn is_valid(instance: &JsonValue, schema: &SchemaNode) -> bool {
    let mut errors = Vec::new();
    check(instance, schema, &mut String::new(), &mut errors);
    errors.is_empty()
}

fn matches_type(instance: &JsonValue, t: SchemaType) -> bool {
    match (t, instance) {
        (SchemaType::Integer, JsonValue::Number(n)) => n.is_integer(),
        (SchemaType::Null, v) => v.kind() == JsonKind::Null,
        (SchemaType::Boolean, v) => v.kind() == JsonKind::Boolean,
        (SchemaType::Number, v) => v.kind() == JsonKind::Number,
        (SchemaType::String, v) => v.kind() == JsonKind::String,
        (SchemaType::Array, v) => v.kind() == JsonKind::Array,
        (SchemaType::Object, v) => v.kind() == JsonKind::Object,
        _ => false,
    }
}

fn push_token(path: &mut String, token: &str) -> usize {
    let len = path.len();
    path.push('/');
    path.push_str(&token.replace('~', "~0").replace('/', "~1"));
    len
}

fn check(
    instance: &JsonValue,
    schema: &SchemaNode,
    path: &mut String,
    errors: &mut Vec<ValidationError>,
) {
    let keywords = match schema {
        SchemaNode::Bool(true) => return,
        SchemaNode::Bool(false) => {
            errors.push(ValidationError {
                instance_path: path.clone(),
                keyword: "false".into(),
                message: "the schema false rejects every value".into(),
            });
            return;
        }
        SchemaNode::Keywords(k) => k,
    };
    let mut fail = |keyword: &str, message: String, path: &str| {
        errors.push(ValidationError {
            instance_path: path.to_owned(),
            keyword: keyword.to_owned(),
            message,
        })
    };

    let mut condition = None;
    let mut then_branch = None;
    let mut else_branch = None;
    let mut nested: Vec<(&JsonValue, &SchemaNode, Option<String>)> = Vec::new();

    for k in keywords {
        match k {
            Keyword::Type(spec) => {
                if !spec.types().iter().any(|t| matches_type(instance, *t)) {
                    let names: Vec<&str> = spec.types().iter().map(|t| t.name()).collect();
                    fail(
                        "type",
                        format!(
                            "expected {}, found {}",
                            names.join(" or "),
                            instance.kind().name()
                        ),
                        path,
                    );
                }
            }
            Keyword::Properties(props) => {
                if let JsonValue::Object(o) = instance {
                    for (label, sub) in props {
                        if let Some(child) = o.get(label) {
                            nested.push((child, sub, Some(label.clone())));
                        }
                    }
                }
            }
            Keyword::Items(sub) => {
                if let JsonValue::Array(items) = instance {
                    for (i, item) in items.iter().enumerate() {
                        nested.push((item, sub, Some(i.to_string())));
                    }
                }
            }
            Keyword::Required(labels) => {
                if let JsonValue::Object(o) = instance {
                    for l in labels {
                        if o.get(l).is_none() {
                            fail("required", format!("missing property '{l}'"), path);
                        }
                    }
                }
            }
            Keyword::Const(c) => {
                if !instance.json_eq(c) {
                    fail("const", format!("expected {c}"), path);
                }
            }
            Keyword::Enum(options) => {
                if !options.iter().any(|o| instance.json_eq(o)) {
                    fail(
                        "enum",
                        "value is not one of the enumerated values".into(),
                        path,
                    );
                }
            }
            Keyword::If(s) => condition = Some(s),
            Keyword::Then(s) => then_branch = Some(s),
            Keyword::Else(s) => else_branch = Some(s),
            Keyword::AllOf(subs) => {
                for s in subs {
                    nested.push((instance, s, None));
                }
            }
            Keyword::AnyOf(subs) => {
                if !subs.iter().any(|s| is_valid_at(instance, s)) {
                    fail("anyOf", "no alternative matches".into(), path);
                }
            }
            Keyword::Other(..) => {}
        }
    }

    if let Some(cond) = condition {
        let branch = if is_valid_at(instance, cond) {
            then_branch
        } else {
            else_branch
        };
        if let Some(b) = branch {
            nested.push((instance, b, None));
        }
    }

    for (value, sub, token) in nested {
        match token {
            Some(t) => {
                let len = push_token(path, &t);
                check(value, sub, path, errors);
                path.truncate(len);
            }
            None => check(value, sub, path, errors),
        }
    }
}

fn is_valid_at(instance: &JsonValue, schema: &SchemaNode) -> bool {
    is_valid(instance, schema)
}
