mod common;

use std::collections::BTreeSet;

use cfdschema::discovery::{discover_candidates, resolve_depths, UcCfdCandidate};
use cfdschema::encoding::{derive_subschema, truncate};
use cfdschema::heuristics::{apply_threshold, apply_union_rule, HeuristicsConfig, Threshold};
use proptest::prelude::*;

fn key(c: &UcCfdCandidate) -> (String, String, String, String, usize) {
    (
        c.path.render(),
        c.tag.clone(),
        c.constant.canonical_text(),
        c.consequent.clone(),
        c.depth,
    )
}

fn cfg(t: f64) -> HeuristicsConfig {
    HeuristicsConfig {
        threshold: Threshold::Relative(t),
        ..Default::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn truncation_agrees_with_shallower_derivation(v in common::json_value(), k in 1usize..=6, d in 1usize..=6) {
        let d = d.min(k);
        prop_assert_eq!(truncate(&derive_subschema(&v, k), d), derive_subschema(&v, d));
    }

    #[test]
    fn raising_the_threshold_only_removes(rel in common::relation(8, 32), a in 0.01f64..=1.0, b in 0.01f64..=1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (tags, cons) = common::tags_and_consequents(&rel);
        let cands = resolve_depths(discover_candidates(&rel, &tags, &cons));
        let rows = rel.row_count();
        let low: BTreeSet<_> = apply_threshold(cands.clone(), rows, &cfg(lo)).unwrap().iter().map(key).collect();
        let high: BTreeSet<_> = apply_threshold(cands, rows, &cfg(hi)).unwrap().iter().map(key).collect();
        prop_assert!(high.is_subset(&low));
    }

    #[test]
    fn union_rule_flattens_back(rel in common::relation(8, 32)) {
        let (tags, cons) = common::tags_and_consequents(&rel);
        let cands = resolve_depths(discover_candidates(&rel, &tags, &cons));
        let groups = apply_union_rule(&cands);
        let mut flat: Vec<_> = groups
            .iter()
            .flat_map(|g| g.flatten())
            .map(|(p, t, c, b, d, s, n)| (p.render(), t, c.canonical_text(), b, d, s.canonical_text(), n))
            .collect();
        let mut expected: Vec<_> = cands
            .iter()
            .map(|c| (c.path.render(), c.tag.clone(), c.constant.canonical_text(), c.consequent.clone(),
                      c.depth, c.subschema.canonical_text(), c.support))
            .collect();
        flat.sort();
        expected.sort();
        prop_assert_eq!(flat, expected);
        for g in &groups {
            let constants: BTreeSet<_> = g.cases.iter().map(|c| c.constant.canonical_text()).collect();
            prop_assert_eq!(constants.len(), g.cases.len());
            prop_assert!(g.cases.iter().all(|c| !c.consequents.is_empty()));
            prop_assert!(g.cases.windows(2).all(|w| w[0].support >= w[1].support));
        }
    }

    #[test]
    fn resolution_keeps_one_depth_per_dependency(rel in common::relation(8, 32)) {
        let (tags, cons) = common::tags_and_consequents(&rel);
        let all = discover_candidates(&rel, &tags, &cons);
        let resolved = resolve_depths(all.clone());
        let mut seen = BTreeSet::new();
        for c in &resolved {
            prop_assert!(seen.insert((c.tag.clone(), c.constant.canonical_text(), c.consequent.clone())));
            prop_assert!(all.iter().all(|o| o.tag != c.tag || o.constant != c.constant
                || o.consequent != c.consequent || o.depth <= c.depth));
        }
    }
}
