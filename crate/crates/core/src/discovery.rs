//! Discovery of value-type ucCFDs `[A.value = c] -> [B.type@d = σ]` through
//! position list index inclusion, plus the nested-loop reference check.

use std::cmp::Reverse;
use std::collections::HashMap;

use crate::encoding::{AttributeId, BasicValue, Cell, ObjectRelation, Subschema};
use crate::json::PathKey;

/// Rows of one attribute grouped by equal cell value. Missing cells belong to
/// no cluster; clusters appear in order of their first row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionListIndex {
    attribute: AttributeId,
    clusters: Vec<Cluster>,
    rows: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub value: Cell,
    /// Ascending, 0-based row positions.
    pub rows: Vec<usize>,
}

impl PositionListIndex {
    pub fn attribute(&self) -> &AttributeId {
        &self.attribute
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    /// Distinct non-missing values.
    pub fn distinct_values(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_unique(&self) -> bool {
        self.clusters.iter().all(|c| c.rows.len() == 1)
    }

    /// Cluster index of every row, `None` for missing cells.
    pub fn probe_table(&self) -> Vec<Option<usize>> {
        let mut table = vec![None; self.rows];
        for (i, c) in self.clusters.iter().enumerate() {
            for &r in &c.rows {
                table[r] = Some(i);
            }
        }
        table
    }
}

/// PLI of `attr`, or `None` when the relation has no such attribute.
pub fn build_pli(rel: &ObjectRelation, attr: &AttributeId) -> Option<PositionListIndex> {
    let column = rel.column(attr)?;
    let mut index: HashMap<&Cell, usize> = HashMap::new();
    let mut clusters: Vec<Cluster> = Vec::new();
    for (row, cell) in column.iter().enumerate() {
        if cell.is_missing() {
            continue;
        }
        match index.get(cell) {
            Some(&i) => clusters[i].rows.push(row),
            None => {
                index.insert(cell, clusters.len());
                clusters.push(Cluster {
                    value: cell.clone(),
                    rows: vec![row],
                });
            }
        }
    }
    Some(PositionListIndex {
        attribute: attr.clone(),
        clusters,
        rows: rel.row_count(),
    })
}

/// One discovered dependency `[tag.value = constant] -> [consequent.type@depth = subschema]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UcCfdCandidate {
    pub path: PathKey,
    pub tag: String,
    pub constant: BasicValue,
    pub consequent: String,
    pub depth: usize,
    pub subschema: Subschema,
    /// Number of rows with `tag.value = constant`.
    pub support: usize,
    /// Those rows, ascending.
    pub witnesses: Vec<usize>,
}

impl UcCfdCandidate {
    fn sort_key(&self) -> (&str, String, &str, Reverse<usize>) {
        (
            &self.tag,
            self.constant.canonical_text(),
            &self.consequent,
            Reverse(self.depth),
        )
    }
}

/// Sorts by tag label, constant text, consequent label, then depth descending.
pub fn sort_candidates(cands: &mut [UcCfdCandidate]) {
    cands.sort_by_cached_key(|c| {
        let (a, b, c2, d) = c.sort_key();
        (a.to_owned(), b, c2.to_owned(), d)
    });
}

fn tag_label(attr: &AttributeId) -> Option<&str> {
    match attr {
        AttributeId::Value(l) => Some(l),
        _ => None,
    }
}

fn consequent_parts(attr: &AttributeId) -> Option<(&str, usize)> {
    match attr {
        AttributeId::Type(l, d) => Some((l, *d)),
        _ => None,
    }
}

/// Emits a candidate for each tag cluster that is contained in one cluster of
/// a consequent attribute. Attributes of the wrong role, and consequents
/// sharing the tag's label, are skipped.
pub fn discover_candidates(
    rel: &ObjectRelation,
    tag_attrs: &[AttributeId],
    consequent_attrs: &[AttributeId],
) -> Vec<UcCfdCandidate> {
    let consequents: Vec<(&str, usize, PositionListIndex, Vec<Option<usize>>)> = consequent_attrs
        .iter()
        .filter_map(|attr| {
            let (label, depth) = consequent_parts(attr)?;
            let pli = build_pli(rel, attr)?;
            let probe = pli.probe_table();
            Some((label, depth, pli, probe))
        })
        .collect();

    let mut out = Vec::new();
    for attr in tag_attrs {
        let Some(tag) = tag_label(attr) else { continue };
        let Some(tag_pli) = build_pli(rel, attr) else {
            continue;
        };
        for cluster in tag_pli.clusters() {
            let Cell::Basic(constant) = &cluster.value else {
                continue;
            };
            for (label, depth, pli, probe) in &consequents {
                if *label == tag {
                    continue;
                }
                let first = probe[cluster.rows[0]];
                let Some(target) = first else { continue };
                if cluster.rows.iter().all(|&r| probe[r] == first) {
                    let Cell::Schema(subschema) = &pli.clusters()[target].value else {
                        continue;
                    };
                    out.push(UcCfdCandidate {
                        path: rel.path().clone(),
                        tag: tag.to_owned(),
                        constant: constant.clone(),
                        consequent: (*label).to_owned(),
                        depth: *depth,
                        subschema: subschema.clone(),
                        support: cluster.rows.len(),
                        witnesses: cluster.rows.clone(),
                    });
                }
            }
        }
    }
    sort_candidates(&mut out);
    out
}

/// Reference implementation: checks the ucCFD definition over all tuple
/// pairs. Quadratic; meant for tests.
pub fn brute_force_candidates(
    rel: &ObjectRelation,
    tag_attrs: &[AttributeId],
    consequent_attrs: &[AttributeId],
) -> Vec<UcCfdCandidate> {
    let mut out = Vec::new();
    for attr in tag_attrs {
        let Some(tag) = tag_label(attr) else { continue };
        let Some(tag_col) = rel.column(attr) else {
            continue;
        };
        let mut constants: Vec<&BasicValue> = Vec::new();
        for cell in tag_col {
            if let Cell::Basic(b) = cell {
                if !constants.contains(&b) {
                    constants.push(b);
                }
            }
        }
        for constant in constants {
            let rows: Vec<usize> = (0..rel.row_count())
                .filter(|&r| matches!(&tag_col[r], Cell::Basic(b) if b == constant))
                .collect();
            for cattr in consequent_attrs {
                let Some((label, depth)) = consequent_parts(cattr) else {
                    continue;
                };
                if label == tag {
                    continue;
                }
                let Some(col) = rel.column(cattr) else {
                    continue;
                };
                let holds = rows.iter().all(|&s| {
                    rows.iter().all(|&t| {
                        matches!((&col[s], &col[t]), (Cell::Schema(a), Cell::Schema(b)) if a == b)
                    })
                });
                if holds {
                    let Cell::Schema(subschema) = &col[rows[0]] else {
                        unreachable!()
                    };
                    out.push(UcCfdCandidate {
                        path: rel.path().clone(),
                        tag: tag.to_owned(),
                        constant: constant.clone(),
                        consequent: label.to_owned(),
                        depth,
                        subschema: subschema.clone(),
                        support: rows.len(),
                        witnesses: rows.clone(),
                    });
                }
            }
        }
    }
    sort_candidates(&mut out);
    out
}

/// Of candidates sharing (path, tag, constant, consequent), the one with the
/// greatest depth. `None` for an empty slice.
pub fn deepest_valid_depth(cands: &[UcCfdCandidate]) -> Option<UcCfdCandidate> {
    cands.iter().max_by_key(|c| c.depth).cloned()
}

/// Keeps only the most detailed depth per (path, tag, constant, consequent).
/// Input order is preserved among the survivors.
pub fn resolve_depths(cands: Vec<UcCfdCandidate>) -> Vec<UcCfdCandidate> {
    let mut best: HashMap<(PathKey, String, BasicValue, String), usize> = HashMap::new();
    for (i, c) in cands.iter().enumerate() {
        let key = (
            c.path.clone(),
            c.tag.clone(),
            c.constant.clone(),
            c.consequent.clone(),
        );
        best.entry(key)
            .and_modify(|j| {
                if c.depth > cands[*j].depth {
                    *j = i;
                }
            })
            .or_insert(i);
    }
    let mut keep = vec![false; cands.len()];
    for i in best.into_values() {
        keep[i] = true;
    }
    cands
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}
