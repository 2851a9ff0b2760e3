//! Deterministic JSON printers.
//!
//! Two layouts exist:
//!
//! * **expanded**: 2-space indentation, one scalar per line, `"key": value`.
//!   Line-for-line identical to `serde_json::to_string_pretty` and Python's
//!   `json.dumps(indent=2)`. All LoC metrics use this layout.
//! * **compact**: objects open on the line of their first member (`{ "a": 1,`),
//!   every member starts a new line, and arrays stay inline unless they
//!   contain an object, in which case each element starts a new line and the
//!   closing `]` gets a line of its own. Object ids are the line numbers of
//!   this layout, so the four geometry objects of the usual GeoJSON
//!   `GeometryCollection` example get ids 3, 5, 7 and 9.

use std::fmt::Write as _;

use super::value::{JsonObject, JsonValue, ObjectId};

pub(crate) fn write_escaped(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '\u{8}' => out.push_str("\\b"),
            '\u{c}' => out.push_str("\\f"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

pub(crate) fn write_inline(v: &JsonValue, out: &mut String) {
    match v {
        JsonValue::Null => out.push_str("null"),
        JsonValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        JsonValue::Number(n) => out.push_str(n.lexeme()),
        JsonValue::String(s) => write_escaped(s, out),
        JsonValue::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_inline(item, out);
            }
            out.push(']');
        }
        JsonValue::Object(o) => {
            out.push('{');
            for (i, (label, value)) in o.members.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_escaped(label, out);
                out.push(':');
                write_inline(value, out);
            }
            out.push('}');
        }
    }
}

/// Expanded pretty print, without a trailing newline.
pub fn expanded(v: &JsonValue) -> String {
    let mut out = String::new();
    write_expanded(v, 0, &mut out);
    out
}

fn indent(level: usize, out: &mut String) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_expanded(v: &JsonValue, level: usize, out: &mut String) {
    match v {
        JsonValue::Array(items) if !items.is_empty() => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(",\n");
                }
                indent(level + 1, out);
                write_expanded(item, level + 1, out);
            }
            out.push('\n');
            indent(level, out);
            out.push(']');
        }
        JsonValue::Object(o) if !o.is_empty() => {
            out.push_str("{\n");
            for (i, (label, value)) in o.members.iter().enumerate() {
                if i > 0 {
                    out.push_str(",\n");
                }
                indent(level + 1, out);
                write_escaped(label, out);
                out.push_str(": ");
                write_expanded(value, level + 1, out);
            }
            out.push('\n');
            indent(level, out);
            out.push('}');
        }
        other => write_inline(other, out),
    }
}

/// Number of lines of the expanded layout, computed without building the text.
pub fn expanded_line_count(v: &JsonValue) -> usize {
    match v {
        JsonValue::Array(items) if !items.is_empty() => {
            2 + items.iter().map(expanded_line_count).sum::<usize>()
        }
        JsonValue::Object(o) if !o.is_empty() => {
            2 + o
                .members
                .iter()
                .map(|(_, v)| expanded_line_count(v))
                .sum::<usize>()
        }
        _ => 1,
    }
}

fn contains_object(v: &JsonValue) -> bool {
    match v {
        JsonValue::Object(_) => true,
        JsonValue::Array(items) => items.iter().any(contains_object),
        _ => false,
    }
}

/// Walks the compact layout starting at `line`, calling `on_object` with the
/// opening line of every object. Returns the line the value ends on.
fn layout(
    v: &mut JsonValue,
    line: usize,
    on_object: &mut impl FnMut(&mut JsonObject, usize),
) -> usize {
    match v {
        JsonValue::Object(o) => {
            on_object(o, line);
            let mut end = line;
            for (i, (_, value)) in o.members.iter_mut().enumerate() {
                let start = if i == 0 { line } else { end + 1 };
                end = layout(value, start, on_object);
            }
            end
        }
        JsonValue::Array(items) if items.iter().any(contains_object) => {
            let mut end = line;
            for item in items.iter_mut() {
                end = layout(item, end + 1, on_object);
            }
            end + 1
        }
        _ => line,
    }
}

/// Assigns every object in `doc` its [`ObjectId`] for document `document`.
pub fn assign_object_ids(doc: &mut JsonValue, document: usize) {
    layout(doc, 1, &mut |o, line| o.id = ObjectId { document, line });
}

/// Number of lines in the compact layout of `v`.
pub fn compact_line_count(v: &JsonValue) -> usize {
    let mut copy = v.clone();
    layout(&mut copy, 1, &mut |_, _| {})
}

/// Compact layout text (see module docs). Object ids of a freshly parsed
/// document equal the 1-based line numbers of their `{` in this text.
pub fn compact(v: &JsonValue) -> String {
    let mut out = String::new();
    write_compact(v, 0, &mut out);
    out
}

fn write_compact(v: &JsonValue, level: usize, out: &mut String) {
    match v {
        JsonValue::Object(o) if !o.is_empty() => {
            out.push_str("{ ");
            for (i, (label, value)) in o.members.iter().enumerate() {
                if i > 0 {
                    out.push_str(",\n");
                    indent(level + 1, out);
                }
                write_escaped(label, out);
                out.push_str(": ");
                write_compact(value, level + 1, out);
            }
            out.push_str(" }");
        }
        JsonValue::Array(items) if items.iter().any(contains_object) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                indent(level + 1, out);
                write_compact(item, level + 1, out);
            }
            out.push('\n');
            indent(level, out);
            out.push(']');
        }
        JsonValue::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_compact(item, level + 1, out);
            }
            out.push(']');
        }
        other => write_inline(other, out),
    }
}
