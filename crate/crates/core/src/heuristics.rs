//! Pruning: default heuristics (single-valued and unique attributes, union
//! rule) and the configurable minimum support threshold.

use std::collections::HashMap;

use crate::discovery::{build_pli, UcCfdCandidate};
use crate::encoding::{AttributeId, BasicValue, ObjectRelation, Subschema, DEFAULT_MAX_DEPTH};
use crate::error::Error;
use crate::json::PathKey;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    /// Fraction of the relation's rows, in `(0, 1]`.
    Relative(f64),
    /// Row count, at least 1.
    Absolute(usize),
}

impl Threshold {
    pub fn mode_name(&self) -> &'static str {
        match self {
            Threshold::Relative(_) => "relative",
            Threshold::Absolute(_) => "absolute",
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            Threshold::Relative(t) => *t,
            Threshold::Absolute(n) => *n as f64,
        }
    }

    pub fn admits(&self, support: usize, rows: usize) -> bool {
        match *self {
            Threshold::Relative(t) => rows > 0 && support as f64 / rows as f64 >= t,
            Threshold::Absolute(n) => support >= n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeuristicsConfig {
    pub threshold: Threshold,
    pub max_depth: usize,
}

impl Default for HeuristicsConfig {
    fn default() -> Self {
        HeuristicsConfig {
            threshold: Threshold::Relative(0.15),
            max_depth: DEFAULT_MAX_DEPTH,
        }
    }
}

impl HeuristicsConfig {
    pub fn validate(&self) -> Result<(), Error> {
        match self.threshold {
            Threshold::Relative(t) if !(t > 0.0 && t <= 1.0) => {
                return Err(Error::Config(format!(
                    "relative threshold must lie in (0, 1], got {t}"
                )))
            }
            Threshold::Absolute(0) => {
                return Err(Error::Config(
                    "absolute threshold must be at least 1".into(),
                ))
            }
            _ => {}
        }
        if self.max_depth == 0 {
            return Err(Error::Config("max depth must be at least 1".into()));
        }
        Ok(())
    }
}

/// Attributes with at least two distinct non-missing values. The object id
/// is kept unless the relation has fewer than two rows.
pub fn drop_single_valued(rel: &ObjectRelation) -> Vec<AttributeId> {
    rel.attributes()
        .iter()
        .filter(|a| build_pli(rel, a).is_some_and(|p| p.distinct_values() > 1))
        .cloned()
        .collect()
}

/// All attributes except the object id and `label.value` attributes whose
/// values are pairwise distinct.
pub fn drop_unique(rel: &ObjectRelation) -> Vec<AttributeId> {
    rel.attributes()
        .iter()
        .filter(|a| match a {
            AttributeId::ObjectId => false,
            AttributeId::Value(_) => !build_pli(rel, a).is_some_and(|p| p.is_unique()),
            AttributeId::Type(..) => true,
        })
        .cloned()
        .collect()
}

/// Attributes surviving both default attribute heuristics, split into tag
/// (`.value`) and consequent (`.type@d`) roles.
pub fn retained_attributes(rel: &ObjectRelation) -> (Vec<AttributeId>, Vec<AttributeId>) {
    let single = drop_single_valued(rel);
    let unique = drop_unique(rel);
    let kept: Vec<AttributeId> = rel
        .attributes()
        .iter()
        .filter(|a| single.contains(a) && unique.contains(a))
        .cloned()
        .collect();
    kept.into_iter()
        .filter(|a| !matches!(a, AttributeId::ObjectId))
        .partition(|a| matches!(a, AttributeId::Value(_)))
}

/// Keeps candidates whose support meets the threshold; order is preserved.
pub fn apply_threshold(
    cands: Vec<UcCfdCandidate>,
    row_count: usize,
    cfg: &HeuristicsConfig,
) -> Result<Vec<UcCfdCandidate>, Error> {
    cfg.validate()?;
    Ok(cands
        .into_iter()
        .filter(|c| cfg.threshold.admits(c.support, row_count))
        .collect())
}

/// A property implied by a tag constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Consequent {
    pub label: String,
    pub depth: usize,
    pub subschema: Subschema,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedUnionCase {
    pub constant: BasicValue,
    pub consequents: Vec<Consequent>,
    pub support: usize,
    /// First row carrying the constant; breaks support ties.
    pub first_row: usize,
}

/// All cases switching on one tag property at one path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedUnionGroup {
    pub path: PathKey,
    pub tag: String,
    pub cases: Vec<TaggedUnionCase>,
}

impl TaggedUnionGroup {
    /// Flattens the group back into one (path, tag, constant, consequent,
    /// depth, subschema, support) tuple per implied property.
    pub fn flatten(&self) -> Vec<(PathKey, String, BasicValue, String, usize, Subschema, usize)> {
        self.cases
            .iter()
            .flat_map(|case| {
                case.consequents.iter().map(move |c| {
                    (
                        self.path.clone(),
                        self.tag.clone(),
                        case.constant.clone(),
                        c.label.clone(),
                        c.depth,
                        c.subschema.clone(),
                        case.support,
                    )
                })
            })
            .collect()
    }
}

/// Merges candidates sharing (path, tag, constant) into one case. Groups are
/// ordered by path then tag label; cases by descending support, then by the
/// row where the constant first occurs. Consequents keep candidate order.
pub fn apply_union_rule(cands: &[UcCfdCandidate]) -> Vec<TaggedUnionGroup> {
    let mut groups: Vec<TaggedUnionGroup> = Vec::new();
    let mut group_index: HashMap<(&PathKey, &str), usize> = HashMap::new();
    let mut case_index: HashMap<(usize, &BasicValue), usize> = HashMap::new();
    for c in cands {
        let g = *group_index.entry((&c.path, &c.tag)).or_insert_with(|| {
            groups.push(TaggedUnionGroup {
                path: c.path.clone(),
                tag: c.tag.clone(),
                cases: Vec::new(),
            });
            groups.len() - 1
        });
        let cases = &mut groups[g].cases;
        let k = *case_index.entry((g, &c.constant)).or_insert_with(|| {
            cases.push(TaggedUnionCase {
                constant: c.constant.clone(),
                consequents: Vec::new(),
                support: c.support,
                first_row: c.witnesses.first().copied().unwrap_or(0),
            });
            cases.len() - 1
        });
        cases[k].consequents.push(Consequent {
            label: c.consequent.clone(),
            depth: c.depth,
            subschema: c.subschema.clone(),
        });
    }
    for g in &mut groups {
        g.cases.sort_by(|a, b| {
            b.support
                .cmp(&a.support)
                .then(a.first_row.cmp(&b.first_row))
        });
    }
    groups.sort_by(|a, b| a.path.cmp(&b.path).then_with(|| a.tag.cmp(&b.tag)));
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discovery::{discover_candidates, resolve_depths};
    use crate::encoding::encode_relation;
    use crate::json::{DocumentCollection, InputMode};

    fn geometry_collection() -> ObjectRelation {
        let coll = DocumentCollection::from_text(
            include_str!("../tests/data/geometry_collection.json"),
            InputMode::Single,
        )
        .unwrap();
        encode_relation(&coll, &PathKey::root().child("geometries").items(), 6)
    }

    fn candidates(rel: &ObjectRelation) -> Vec<UcCfdCandidate> {
        let (tags, cons) = retained_attributes(rel);
        resolve_depths(discover_candidates(rel, &tags, &cons))
    }

    #[test]
    fn single_valued_type_attribute_is_dropped() {
        let rel = geometry_collection();
        let kept = drop_single_valued(&rel);
        for d in 1..=6 {
            assert!(!kept.contains(&AttributeId::Type("type".into(), d)));
        }
        assert!(kept.contains(&AttributeId::Value("type".into())));
        // coordinates.type@1 is "array" for every row
        assert!(!kept.contains(&AttributeId::Type("coordinates".into(), 1)));
        assert!(kept.contains(&AttributeId::Type("coordinates".into(), 2)));
    }

    #[test]
    fn one_row_relation_keeps_nothing() {
        let coll = DocumentCollection::from_text(r#"{"a":1,"b":"x"}"#, InputMode::Single).unwrap();
        let rel = encode_relation(&coll, &PathKey::root(), 3);
        assert!(drop_single_valued(&rel).is_empty());
    }

    #[test]
    fn unique_tags_are_dropped() {
        let coll = DocumentCollection::from_text(
            r#"[{"id":"a","g":[1]},{"id":"b","g":[[1]]},{"id":"c","g":[1]}]"#,
            InputMode::Single,
        )
        .unwrap();
        let rel = encode_relation(&coll, &PathKey::root().items(), 3);
        let kept = drop_unique(&rel);
        assert!(!kept.contains(&AttributeId::Value("id".into())));
        assert!(!kept.contains(&AttributeId::ObjectId));
        assert!(drop_unique(&geometry_collection()).contains(&AttributeId::Value("type".into())));
        assert!(candidates(&rel).is_empty());
    }

    #[test]
    fn empty_relation_excludes_no_property_attributes() {
        let rel =
            ObjectRelation::from_columns(PathKey::root(), vec![(AttributeId::ObjectId, vec![])]);
        assert!(drop_unique(&rel).is_empty());
        assert_eq!(retained_attributes(&rel), (vec![], vec![]));
    }

    #[test]
    fn thresholds() {
        let rel = geometry_collection();
        let cands = candidates(&rel);
        assert_eq!(cands.len(), 2);
        let relative = HeuristicsConfig {
            threshold: Threshold::Relative(0.5),
            ..Default::default()
        };
        assert_eq!(
            apply_threshold(cands.clone(), 4, &relative).unwrap().len(),
            2
        );
        let absolute = HeuristicsConfig {
            threshold: Threshold::Absolute(3),
            ..Default::default()
        };
        assert!(apply_threshold(cands.clone(), 4, &absolute)
            .unwrap()
            .is_empty());
        for bad in [
            Threshold::Relative(0.0),
            Threshold::Relative(1.5),
            Threshold::Relative(f64::NAN),
            Threshold::Absolute(0),
        ] {
            let cfg = HeuristicsConfig {
                threshold: bad,
                ..Default::default()
            };
            assert!(matches!(
                apply_threshold(cands.clone(), 4, &cfg),
                Err(Error::Config(_))
            ));
        }
    }

    #[test]
    fn union_rule_merges_consequents() {
        let coll = DocumentCollection::from_text(
            r#"[{"condition":"time_check","period":24000,"value":{"min":0.0}},
                {"condition":"weather_check","raining":false,"thundering":false},
                {"condition":"time_check","period":24000,"value":{"min":{"score":"x"}}}]"#,
            InputMode::Single,
        )
        .unwrap();
        let rel = encode_relation(&coll, &PathKey::root().items(), 6);
        let tags = vec![AttributeId::Value("condition".into())];
        let cons: Vec<AttributeId> = rel.type_attributes().cloned().collect();
        let cands = resolve_depths(discover_candidates(&rel, &tags, &cons));
        let groups = apply_union_rule(&cands);
        assert_eq!(groups.len(), 1);
        let time = &groups[0].cases[0];
        assert_eq!(time.constant, BasicValue::String("time_check".into()));
        let labels: Vec<(&str, usize)> = time
            .consequents
            .iter()
            .map(|c| (c.label.as_str(), c.depth))
            .collect();
        assert_eq!(labels, vec![("period", 6), ("value", 1)]);
        assert_eq!(groups[0].cases[1].consequents.len(), 2);
    }

    #[test]
    fn running_example_is_one_group_in_first_seen_order() {
        let groups = apply_union_rule(&candidates(&geometry_collection()));
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[0].tag, "type");
        let consts: Vec<String> = groups[0]
            .cases
            .iter()
            .map(|c| c.constant.canonical_text())
            .collect();
        assert_eq!(consts, ["\"Point\"", "\"LineString\""]);
    }
}
