mod common;

use std::fs;

use cfdschema::discovery::{discover_candidates, resolve_depths};
use cfdschema::emit::{emit_anyof, emit_if_then_else, Encoding};
use cfdschema::encoding::encode_relation;
use cfdschema::heuristics::Threshold;
use cfdschema::json::{parse_value, InputMode, JsonValue, PathKey};
use cfdschema::pipeline::{run_pipeline, write_runs, PipelineConfig};
use cfdschema::validate::is_valid;

fn grid() -> Vec<Threshold> {
    vec![
        Threshold::Relative(0.5),
        Threshold::Relative(0.35),
        Threshold::Relative(0.15),
    ]
}

#[test]
fn every_bundled_dataset_validates_at_every_threshold() {
    for name in common::DATASETS {
        let coll = common::load(name);
        let cfg = PipelineConfig {
            thresholds: grid(),
            validate: true,
            ..Default::default()
        };
        for run in run_pipeline(&coll, name, &cfg).unwrap() {
            assert_eq!(
                run.report.valid,
                Some(true),
                "{name} at {:?}: {:?}",
                run.threshold,
                run.failures
            );
        }
    }
}

#[test]
fn witnesses_satisfy_their_own_case_under_both_encodings() {
    for name in common::DATASETS {
        let coll = common::load(name);
        let by_path = coll.objects_by_path();
        let cfg = PipelineConfig {
            thresholds: vec![Threshold::Absolute(1)],
            ..Default::default()
        };
        let run = run_pipeline(&coll, name, &cfg).unwrap().remove(0);
        for g in &run.groups {
            let objects = &by_path[&g.path];
            let ite = emit_if_then_else(g);
            let anyof = emit_anyof(g);
            for o in objects.iter().filter(|o| {
                o.get(&g.tag)
                    .is_some_and(|v| g.cases.iter().any(|c| v.json_eq(&c.constant.to_json())))
            }) {
                let v = JsonValue::Object((*o).clone());
                assert!(is_valid(&v, &ite), "{name} {}", o.id);
                assert!(is_valid(&v, &anyof), "{name} {}", o.id);
            }
        }
    }
}

#[test]
fn unknown_tags_pass_if_then_else_but_not_anyof() {
    let coll = common::load("geometry_collection.json");
    let cfg = PipelineConfig {
        thresholds: vec![Threshold::Relative(0.5)],
        ..Default::default()
    };
    let run = run_pipeline(&coll, "geometry_collection", &cfg)
        .unwrap()
        .remove(0);
    let polygon = parse_value(r#"{"type":"Polygon","coordinates":[[[1,2]]]}"#).unwrap();
    assert!(is_valid(&polygon, &emit_if_then_else(&run.groups[0])));
    assert!(!is_valid(&polygon, &emit_anyof(&run.groups[0])));
}

#[test]
fn feature_collection_finds_geometry_unions() {
    let coll = common::load("feature_collection.geojson");
    let cfg = PipelineConfig {
        thresholds: vec![Threshold::Relative(0.15)],
        ..Default::default()
    };
    let run = run_pipeline(&coll, "fc", &cfg).unwrap().remove(0);
    let geometry = PathKey::root().child("features").items().child("geometry");
    let g = run
        .groups
        .iter()
        .find(|g| g.path == geometry && g.tag == "type")
        .unwrap();
    let constants: Vec<String> = g
        .cases
        .iter()
        .map(|c| c.constant.canonical_text())
        .collect();
    assert_eq!(constants, ["\"Point\"", "\"LineString\"", "\"Polygon\""]);
    let rel = encode_relation(&coll, &geometry, 6);
    assert_eq!(rel.row_count(), 8);
}

#[test]
fn minecraft_min_has_no_dependency() {
    let coll = common::load("minecraft.json");
    let value_path = PathKey::root().items().child("value");
    let rel = encode_relation(&coll, &value_path, 6);
    let all: Vec<_> = rel.attributes().to_vec();
    assert!(discover_candidates(&rel, &all, &all).is_empty());
    let rel = encode_relation(&coll, &PathKey::root().items(), 6);
    let all: Vec<_> = rel.attributes().to_vec();
    let resolved = resolve_depths(discover_candidates(&rel, &all, &all));
    assert!(resolved.iter().all(|c| c.consequent != "min"));
    let value = resolved
        .iter()
        .find(|c| c.tag == "condition" && c.consequent == "value")
        .unwrap();
    assert_eq!(value.depth, 1);
    assert!(resolved
        .iter()
        .any(|c| c.tag == "condition" && c.consequent == "period"));
}

#[test]
fn repeated_runs_write_identical_files() {
    for name in common::DATASETS {
        let coll = common::load(name);
        for encoding in [Encoding::IfThenElse, Encoding::AnyOf] {
            let cfg = PipelineConfig {
                thresholds: grid(),
                encoding,
                ..Default::default()
            };
            let a = tempfile::tempdir().unwrap();
            let b = tempfile::tempdir().unwrap();
            write_runs(a.path(), &run_pipeline(&coll, name, &cfg).unwrap()).unwrap();
            write_runs(b.path(), &run_pipeline(&coll, name, &cfg).unwrap()).unwrap();
            for t in [
                "threshold-relative-0.5",
                "threshold-relative-0.35",
                "threshold-relative-0.15",
            ] {
                for f in ["schema-S.json", "schema-T.json", "schema-ite.json"] {
                    let x = fs::read(a.path().join(t).join(f)).unwrap();
                    let y = fs::read(b.path().join(t).join(f)).unwrap();
                    assert_eq!(x, y, "{name} {t} {f}");
                }
            }
        }
    }
}

#[test]
fn input_modes_agree() {
    let single = cfdschema::json::DocumentCollection::from_text(
        "[{\"t\":1},{\"t\":2}]",
        InputMode::ArrayOfDocuments,
    )
    .unwrap();
    let lines = cfdschema::json::DocumentCollection::from_text(
        "{\"t\":1}\n\n{\"t\":2}\n",
        InputMode::NewlineDelimited,
    )
    .unwrap();
    assert_eq!(single.documents(), lines.documents());
}
