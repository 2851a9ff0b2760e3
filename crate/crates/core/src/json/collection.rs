use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use super::parse::{parse_documents, InputMode};
use super::path::{PathKey, Segment};
use super::value::{JsonObject, JsonValue};
use crate::error::Error;

/// An ordered set of JSON documents.
///
/// The collection itself plays the role of the virtual root: its children
/// are the document roots, and every path is replayed from each of them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DocumentCollection {
    documents: Vec<JsonValue>,
}

impl DocumentCollection {
    pub fn new(documents: Vec<JsonValue>) -> Self {
        let mut documents = documents;
        for (i, doc) in documents.iter_mut().enumerate() {
            super::print::assign_object_ids(doc, i);
        }
        DocumentCollection { documents }
    }

    pub fn from_text(text: &str, mode: InputMode) -> Result<Self, Error> {
        Ok(DocumentCollection {
            documents: parse_documents(text, mode, 0)?,
        })
    }

    /// Reads each file in order; every file contributes documents according
    /// to `mode`. Document indices continue across files.
    pub fn from_files<P: AsRef<Path>>(files: &[P], mode: InputMode) -> Result<Self, Error> {
        let mut documents = Vec::new();
        for file in files {
            let file = file.as_ref();
            let text = std::fs::read_to_string(file).map_err(|source| Error::Io {
                path: file.display().to_string(),
                source,
            })?;
            let docs =
                parse_documents(&text, mode, documents.len()).map_err(|source| Error::Parse {
                    path: file.display().to_string(),
                    source,
                })?;
            documents.extend(docs);
        }
        Ok(DocumentCollection { documents })
    }

    pub fn documents(&self) -> &[JsonValue] {
        &self.documents
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// Every object grouped by the labeled path that reaches it. Within a path,
    /// objects appear in document order, then pre-order traversal order.
    pub fn objects_by_path(&self) -> BTreeMap<PathKey, Vec<&JsonObject>> {
        let mut groups: HashMap<Vec<Segment>, Vec<&JsonObject>> = HashMap::new();
        let mut segments = Vec::new();
        for doc in &self.documents {
            collect(doc, &mut segments, &mut groups);
        }
        groups
            .into_iter()
            .map(|(segs, objs)| (path_from_segments(segs), objs))
            .collect()
    }

    /// All paths through which at least one object is reachable.
    pub fn enumerate_object_paths(&self) -> BTreeSet<PathKey> {
        self.objects_by_path().into_keys().collect()
    }

    /// Objects reachable by `path`. Unknown paths give an empty list.
    pub fn objects_at_path(&self, path: &PathKey) -> Vec<&JsonObject> {
        let mut out = Vec::new();
        for doc in &self.documents {
            replay(doc, path.segments(), &mut out);
        }
        out
    }
}

fn path_from_segments(segments: Vec<Segment>) -> PathKey {
    segments.into_iter().fold(PathKey::root(), |p, s| match s {
        Segment::Label(l) => p.child(&l),
        Segment::Wildcard => p.items(),
    })
}

fn collect<'a>(
    v: &'a JsonValue,
    segments: &mut Vec<Segment>,
    groups: &mut HashMap<Vec<Segment>, Vec<&'a JsonObject>>,
) {
    match v {
        JsonValue::Object(o) => {
            match groups.get_mut(segments.as_slice()) {
                Some(list) => list.push(o),
                None => {
                    groups.insert(segments.clone(), vec![o]);
                }
            }
            for (label, child) in &o.members {
                if matches!(child, JsonValue::Object(_) | JsonValue::Array(_)) {
                    segments.push(Segment::Label(label.clone()));
                    collect(child, segments, groups);
                    segments.pop();
                }
            }
        }
        JsonValue::Array(items) => {
            segments.push(Segment::Wildcard);
            for item in items {
                if matches!(item, JsonValue::Object(_) | JsonValue::Array(_)) {
                    collect(item, segments, groups);
                }
            }
            segments.pop();
        }
        _ => {}
    }
}

fn replay<'a>(v: &'a JsonValue, segments: &[Segment], out: &mut Vec<&'a JsonObject>) {
    match segments.split_first() {
        None => {
            if let JsonValue::Object(o) = v {
                out.push(o);
            }
        }
        Some((Segment::Label(l), rest)) => {
            if let Some(child) = v.as_object().and_then(|o| o.get(l)) {
                replay(child, rest, out);
            }
        }
        Some((Segment::Wildcard, rest)) => {
            if let Some(items) = v.as_array() {
                for item in items {
                    replay(item, rest, out);
                }
            }
        }
    }
}
