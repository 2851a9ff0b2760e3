#![allow(dead_code)]

use std::path::{Path, PathBuf};

use cfdschema::encoding::{AttributeId, BasicValue, Cell, ObjectRelation, Subschema};
use cfdschema::json::{DocumentCollection, InputMode, JsonNumber, JsonValue, ObjectId, PathKey};
use proptest::prelude::*;

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub fn load(name: &str) -> DocumentCollection {
    DocumentCollection::from_files(&[data_dir().join(name)], InputMode::Single).unwrap()
}

/// Bundled fixtures used as datasets.
pub const DATASETS: &[&str] = &[
    "geometry_collection.json",
    "minecraft.json",
    "feature_collection.geojson",
    "topology.topojson",
];

fn basic() -> impl Strategy<Value = BasicValue> {
    prop_oneof![
        Just(BasicValue::Null),
        Just(BasicValue::Bool(true)),
        (0i64..3).prop_map(|n| BasicValue::Number(JsonNumber::from_i64(n))),
        prop::sample::select(vec!["x", "y"]).prop_map(|s| BasicValue::String(s.into())),
    ]
}

fn descriptor() -> impl Strategy<Value = Subschema> {
    prop::sample::select(vec![
        Subschema::Number,
        Subschema::String,
        Subschema::Array(None),
        Subschema::Object(None),
    ])
}

fn cell_for(attr: &AttributeId) -> BoxedStrategy<Cell> {
    let present = match attr {
        AttributeId::Value(_) => basic().prop_map(Cell::Basic).boxed(),
        _ => descriptor().prop_map(Cell::Schema).boxed(),
    };
    prop_oneof![1 => Just(Cell::Missing), 3 => present].boxed()
}

fn attribute() -> impl Strategy<Value = AttributeId> {
    let label = prop::sample::select(vec!["a", "b", "c"]).prop_map(String::from);
    prop_oneof![
        label.clone().prop_map(AttributeId::Value),
        (label, 1usize..=3).prop_map(|(l, d)| AttributeId::Type(l, d)),
    ]
}

/// Relations with up to `max_attrs` distinct attributes besides the object
/// id and up to `max_rows` rows; cells are drawn from small domains so that
/// clusters form, with roughly one missing cell in four.
pub fn relation(max_attrs: usize, max_rows: usize) -> impl Strategy<Value = ObjectRelation> {
    (
        prop::collection::vec(attribute(), 1..=max_attrs),
        0..=max_rows,
    )
        .prop_flat_map(|(mut attrs, rows)| {
            attrs.sort();
            attrs.dedup();
            let columns: Vec<BoxedStrategy<(AttributeId, Vec<Cell>)>> = attrs
                .into_iter()
                .map(|a| {
                    let cells = prop::collection::vec(cell_for(&a), rows);
                    cells.prop_map(move |c| (a.clone(), c)).boxed()
                })
                .collect();
            columns.prop_map(move |cols| {
                let ids = (0..rows)
                    .map(|r| {
                        Cell::Id(ObjectId {
                            document: 0,
                            line: r + 1,
                        })
                    })
                    .collect();
                let mut all = vec![(AttributeId::ObjectId, ids)];
                all.extend(cols);
                ObjectRelation::from_columns(PathKey::root().items(), all)
            })
        })
}

pub fn tags_and_consequents(rel: &ObjectRelation) -> (Vec<AttributeId>, Vec<AttributeId>) {
    (
        rel.value_attributes().cloned().collect(),
        rel.type_attributes().cloned().collect(),
    )
}

fn scalar() -> impl Strategy<Value = JsonValue> {
    prop_oneof![
        Just(JsonValue::Null),
        any::<bool>().prop_map(JsonValue::Bool),
        (-2i64..3).prop_map(JsonValue::from),
        prop::sample::select(vec!["1.5", "2.0", "-0.5"])
            .prop_map(|l| JsonValue::Number(JsonNumber::from_lexeme(l).unwrap())),
        prop::sample::select(vec!["a", "b", ""]).prop_map(JsonValue::from),
    ]
}

/// Small JSON values; object labels come from {a, b, c}.
pub fn json_value() -> impl Strategy<Value = JsonValue> {
    scalar().prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..=3).prop_map(JsonValue::Array),
            prop::collection::btree_map(prop::sample::select(vec!["a", "b", "c"]), inner, 0..=3)
                .prop_map(|m| JsonValue::object(m.into_iter().map(|(k, v)| (k.to_owned(), v)))),
        ]
    })
}

fn type_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec![
        "null", "boolean", "integer", "number", "string", "array", "object",
    ])
}

fn text(v: &JsonValue) -> String {
    v.to_json_text()
}

/// Schema documents over the supported keyword subset, as JSON text.
/// Combinator arrays are never empty.
pub fn schema_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("true".to_owned()),
        Just("false".to_owned()),
        Just("{}".to_owned()),
        type_name().prop_map(|t| format!(r#"{{"type":"{t}"}}"#)),
        prop::collection::btree_set(type_name(), 1..=3).prop_map(|ts| {
            let names: Vec<String> = ts.into_iter().map(|t| format!("\"{t}\"")).collect();
            format!(r#"{{"type":[{}]}}"#, names.join(","))
        }),
        scalar().prop_map(|v| format!(r#"{{"const":{}}}"#, text(&v))),
        json_value().prop_map(|v| format!(r#"{{"const":{}}}"#, text(&v))),
        prop::collection::vec(scalar(), 1..=3).prop_map(|vs| {
            let items: Vec<String> = vs.iter().map(text).collect();
            format!(r#"{{"enum":[{}]}}"#, items.join(","))
        }),
        prop::collection::btree_set(prop::sample::select(vec!["a", "b", "c"]), 0..=2).prop_map(
            |ls| {
                let items: Vec<String> = ls.into_iter().map(|l| format!("\"{l}\"")).collect();
                format!(r#"{{"required":[{}]}}"#, items.join(","))
            }
        ),
    ];
    leaf.prop_recursive(3, 24, 3, |inner| {
        let list = prop::collection::vec(inner.clone(), 1..=3).prop_map(|v| v.join(","));
        prop_oneof![
            prop::collection::btree_map(
                prop::sample::select(vec!["a", "b", "c"]),
                inner.clone(),
                1..=2
            )
            .prop_map(|m| {
                let props: Vec<String> =
                    m.into_iter().map(|(l, s)| format!("\"{l}\":{s}")).collect();
                format!(r#"{{"properties":{{{}}}}}"#, props.join(","))
            }),
            inner.clone().prop_map(|s| format!(r#"{{"items":{s}}}"#)),
            list.clone().prop_map(|l| format!(r#"{{"allOf":[{l}]}}"#)),
            list.prop_map(|l| format!(r#"{{"anyOf":[{l}]}}"#)),
            (
                inner.clone(),
                inner.clone(),
                prop::option::of(inner.clone())
            )
                .prop_map(|(i, t, e)| {
                    match e {
                        Some(e) => format!(r#"{{"if":{i},"then":{t},"else":{e}}}"#),
                        None => format!(r#"{{"if":{i},"then":{t}}}"#),
                    }
                }),
            (type_name(), inner.clone(), inner).prop_map(|(t, a, b)| {
                format!(r#"{{"type":"{t}","properties":{{"a":{a}}},"items":{b},"required":["a"]}}"#)
            }),
        ]
    })
}
