//! Rendering tagged-union groups as JSON Schema, path wrapping and
//! composition with a structural schema.

use crate::encoding::{BasicValue, Items, Subschema};
use crate::heuristics::{TaggedUnionCase, TaggedUnionGroup};
use crate::json::{print, JsonValue, Segment};
use crate::schema::{Keyword, SchemaNode, SchemaType, DRAFT_07};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Encoding {
    /// Right-nested `if`/`then`/`else` chain; unknown tags are accepted.
    #[default]
    IfThenElse,
    /// One `anyOf` branch per case; unknown tags are rejected.
    AnyOf,
}

impl Encoding {
    pub fn name(self) -> &'static str {
        match self {
            Encoding::IfThenElse => "ite",
            Encoding::AnyOf => "anyof",
        }
    }
}

/// `type`, plus `items`/`properties` where the descriptor is expanded.
pub fn render_subschema(s: &Subschema) -> SchemaNode {
    match s {
        Subschema::Null => SchemaNode::of_type(SchemaType::Null),
        Subschema::Boolean => SchemaNode::of_type(SchemaType::Boolean),
        Subschema::Number => SchemaNode::of_type(SchemaType::Number),
        Subschema::String => SchemaNode::of_type(SchemaType::String),
        Subschema::Array(items) => {
            let node = SchemaNode::of_type(SchemaType::Array);
            let item = items.as_deref().and_then(|i| match i {
                Items::Uniform(x) => Some(x),
                Items::Mixed { common, .. } => common.as_ref(),
                Items::Empty => None,
            });
            match item {
                Some(x) => node.with(Keyword::Items(Box::new(render_subschema(x)))),
                None => node,
            }
        }
        Subschema::Object(members) => {
            let node = SchemaNode::of_type(SchemaType::Object);
            match members {
                Some(m) if !m.is_empty() => node.with(Keyword::Properties(
                    m.iter()
                        .map(|(l, x)| (l.clone(), render_subschema(x)))
                        .collect(),
                )),
                _ => node,
            }
        }
    }
}

fn tag_const(tag: &str, constant: &BasicValue) -> (String, SchemaNode) {
    (
        tag.to_owned(),
        SchemaNode::empty().with(Keyword::Const(constant.to_json())),
    )
}

fn consequent_properties(case: &TaggedUnionCase) -> Vec<(String, SchemaNode)> {
    case.consequents
        .iter()
        .map(|c| (c.label.clone(), render_subschema(&c.subschema)))
        .collect()
}

/// Chains the cases in group order; the last case has no `else`.
pub fn emit_if_then_else(group: &TaggedUnionGroup) -> SchemaNode {
    assert!(
        !group.cases.is_empty(),
        "a tagged union group has at least one case"
    );
    let mut node: Option<SchemaNode> = None;
    for case in group.cases.iter().rev() {
        let condition = SchemaNode::empty()
            .with(Keyword::Properties(vec![tag_const(
                &group.tag,
                &case.constant,
            )]))
            .with(Keyword::Required(vec![group.tag.clone()]));
        let then = SchemaNode::empty().with(Keyword::Properties(consequent_properties(case)));
        let mut here = SchemaNode::empty()
            .with(Keyword::If(Box::new(condition)))
            .with(Keyword::Then(Box::new(then)));
        if let Some(rest) = node.take() {
            here = here.with(Keyword::Else(Box::new(rest)));
        }
        node = Some(here);
    }
    node.expect("non-empty group")
}

/// One object branch per case carrying the tag constant and the consequents.
pub fn emit_anyof(group: &TaggedUnionGroup) -> SchemaNode {
    assert!(
        !group.cases.is_empty(),
        "a tagged union group has at least one case"
    );
    let branches = group
        .cases
        .iter()
        .map(|case| {
            let mut props = vec![tag_const(&group.tag, &case.constant)];
            props.extend(consequent_properties(case));
            SchemaNode::of_type(SchemaType::Object).with(Keyword::Properties(props))
        })
        .collect();
    SchemaNode::empty().with(Keyword::AnyOf(branches))
}

/// Per branch of an [`emit_anyof`] node: the constant and the rendered
/// consequents.
pub type AnyOfCase = (JsonValue, Vec<(String, SchemaNode)>);

/// Tag label and cases recovered from an [`emit_anyof`] node.
pub fn read_anyof(node: &SchemaNode) -> Option<(String, Vec<AnyOfCase>)> {
    let Some(Keyword::AnyOf(branches)) = node.get("anyOf") else {
        return None;
    };
    let mut tag = None;
    let mut cases = Vec::new();
    for b in branches {
        let Some(Keyword::Properties(props)) = b.get("properties") else {
            return None;
        };
        let (first, rest) = props.split_first()?;
        let Some(Keyword::Const(c)) = first.1.get("const") else {
            return None;
        };
        match &tag {
            None => tag = Some(first.0.clone()),
            Some(t) if *t != first.0 => return None,
            Some(_) => {}
        }
        cases.push((c.clone(), rest.to_vec()));
    }
    Some((tag?, cases))
}

pub fn emit_group(group: &TaggedUnionGroup, encoding: Encoding) -> SchemaNode {
    match encoding {
        Encoding::IfThenElse => emit_if_then_else(group),
        Encoding::AnyOf => emit_anyof(group),
    }
}

/// Makes `inner` apply to the values reached by `path` from the root.
pub fn wrap_at_path(path: &[Segment], inner: SchemaNode) -> SchemaNode {
    path.iter().rev().fold(inner, |acc, seg| match seg {
        Segment::Label(l) => SchemaNode::empty().with(Keyword::Properties(vec![(l.clone(), acc)])),
        Segment::Wildcard => SchemaNode::empty().with(Keyword::Items(Box::new(acc))),
    })
}

/// `{}` for no groups, the single wrapped constraint for one, otherwise an
/// `allOf` of the wrapped constraints in group order.
pub fn nest_groups_into_t(groups: &[TaggedUnionGroup], encoding: Encoding) -> SchemaNode {
    let mut wrapped: Vec<SchemaNode> = groups
        .iter()
        .map(|g| wrap_at_path(g.path.segments(), emit_group(g, encoding)))
        .collect();
    match wrapped.len() {
        0 => SchemaNode::empty(),
        1 => wrapped.pop().expect("one element"),
        _ => SchemaNode::empty().with(Keyword::AllOf(wrapped)),
    }
}

pub fn compose(s: &SchemaNode, t: &SchemaNode) -> SchemaNode {
    SchemaNode::empty().with(Keyword::AllOf(vec![s.clone(), t.clone()]))
}

/// Prepends `$schema` unless already present.
pub fn with_schema_uri(node: &SchemaNode) -> SchemaNode {
    match node {
        SchemaNode::Keywords(k) if node.get("$schema").is_none() => {
            let mut out = vec![Keyword::Other(
                "$schema".into(),
                JsonValue::string(DRAFT_07),
            )];
            out.extend(k.iter().cloned());
            SchemaNode::Keywords(out)
        }
        other => other.clone(),
    }
}

/// Lines of the expanded pretty print.
pub fn line_count(node: &SchemaNode) -> usize {
    print::expanded_line_count(&node.to_json())
}

/// `|T| / |compose(S, T)|`.
pub fn ratio_t(s: &SchemaNode, t: &SchemaNode) -> f64 {
    line_count(t) as f64 / line_count(&compose(s, t)) as f64
}
