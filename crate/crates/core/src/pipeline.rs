//! End-to-end extraction: structural schema S, tagged-union schema T, their
//! composition, and the summary report.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::baseline::{extract_structural_schema, load_external_schema};
use crate::discovery::{discover_candidates, resolve_depths, UcCfdCandidate};
use crate::emit::{compose, line_count, nest_groups_into_t, with_schema_uri, Encoding};
use crate::encoding::{encode_objects, AttributeId, ObjectRelation, DEFAULT_MAX_DEPTH};
use crate::error::{Error, Result};
use crate::heuristics::{
    apply_threshold, apply_union_rule, retained_attributes, HeuristicsConfig, TaggedUnionGroup,
    Threshold,
};
use crate::json::{print, DocumentCollection};
use crate::report::{emit_report, ExtractionReport, ReportFormat};
use crate::schema::SchemaNode;
use crate::validate::{validate, ValidationError};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Baseline {
    #[default]
    Internal,
    External(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    /// One run per threshold, in this order.
    pub thresholds: Vec<Threshold>,
    pub max_depth: usize,
    pub encoding: Encoding,
    pub baseline: Baseline,
    pub validate: bool,
    /// Directory receiving one CSV file per encoded relation.
    pub dump_relations: Option<PathBuf>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            thresholds: vec![HeuristicsConfig::default().threshold],
            max_depth: DEFAULT_MAX_DEPTH,
            encoding: Encoding::default(),
            baseline: Baseline::default(),
            validate: false,
            dump_relations: None,
        }
    }
}

impl PipelineConfig {
    fn heuristics(&self, threshold: Threshold) -> HeuristicsConfig {
        HeuristicsConfig {
            threshold,
            max_depth: self.max_depth,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.thresholds.is_empty() {
            return Err(Error::Config("at least one threshold is required".into()));
        }
        self.thresholds
            .iter()
            .try_for_each(|t| self.heuristics(*t).validate())
    }
}

/// A document rejected by the composite schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentFailure {
    pub document: usize,
    pub errors: Vec<ValidationError>,
}

/// Result of one threshold setting.
#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub threshold: Threshold,
    pub groups: Vec<TaggedUnionGroup>,
    pub s: SchemaNode,
    pub t: SchemaNode,
    pub composite: SchemaNode,
    /// Empty unless validation was requested.
    pub failures: Vec<DocumentFailure>,
    pub report: ExtractionReport,
}

/// Threshold-independent discovery state of one path.
struct PathDiscovery {
    rel: ObjectRelation,
    resolved: Vec<UcCfdCandidate>,
    tags: Vec<AttributeId>,
    consequents: Vec<AttributeId>,
}

fn discover_path(rel: ObjectRelation) -> PathDiscovery {
    let all_tags: Vec<AttributeId> = rel.value_attributes().cloned().collect();
    let all_cons: Vec<AttributeId> = rel.type_attributes().cloned().collect();
    let resolved = resolve_depths(discover_candidates(&rel, &all_tags, &all_cons));
    let (tags, consequents) = retained_attributes(&rel);
    PathDiscovery {
        rel,
        resolved,
        tags,
        consequents,
    }
}

fn survives_heuristics(c: &UcCfdCandidate, d: &PathDiscovery) -> bool {
    d.tags.contains(&AttributeId::Value(c.tag.clone()))
        && d.consequents
            .contains(&AttributeId::Type(c.consequent.clone(), c.depth))
}

fn file_stem(index: usize, rel: &ObjectRelation) -> String {
    let rendered = rel.path().render();
    let cleaned: String = rendered
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    let cleaned = cleaned.trim_matches('_');
    if cleaned.is_empty() {
        format!("{index:03}-root")
    } else {
        format!("{index:03}-{cleaned}")
    }
}

fn dump_relations(dir: &Path, paths: &[PathDiscovery]) -> Result<()> {
    let io = |source| Error::Io {
        path: dir.display().to_string(),
        source,
    };
    fs::create_dir_all(dir).map_err(io)?;
    let mut index = String::new();
    for (i, d) in paths.iter().enumerate() {
        let stem = file_stem(i, &d.rel);
        let file = dir.join(format!("{stem}.csv"));
        let f = fs::File::create(&file).map_err(|source| Error::Io {
            path: file.display().to_string(),
            source,
        })?;
        d.rel.write_csv(f)?;
        index.push_str(&format!("{stem}.csv\t{}\n", d.rel.path().render()));
    }
    fs::write(dir.join("relations.tsv"), index).map_err(io)
}

/// Runs extraction once per configured threshold. Parsing, encoding and
/// discovery are shared across the thresholds.
pub fn run_pipeline(
    coll: &DocumentCollection,
    dataset: &str,
    cfg: &PipelineConfig,
) -> Result<Vec<PipelineRun>> {
    cfg.validate()?;
    if coll.is_empty() {
        return Err(Error::EmptyCollection);
    }
    let start = Instant::now();
    let s = match &cfg.baseline {
        Baseline::Internal => extract_structural_schema(coll)?,
        Baseline::External(path) => load_external_schema(path)?,
    };
    let by_path = coll.objects_by_path();
    let paths: Vec<PathDiscovery> = by_path
        .par_iter()
        .map(|(path, objects)| discover_path(encode_objects(path, objects, cfg.max_depth)))
        .collect();
    if let Some(dir) = &cfg.dump_relations {
        dump_relations(dir, &paths)?;
    }
    let doc_loc: usize = coll
        .documents()
        .iter()
        .map(print::expanded_line_count)
        .sum();
    let s_loc = line_count(&s);
    let without_heuristics: usize = paths.iter().map(|d| d.resolved.len()).sum();
    let shared = start.elapsed();

    cfg.thresholds
        .iter()
        .map(|&threshold| {
            let run_start = Instant::now();
            let h = cfg.heuristics(threshold);
            let mut with_threshold = 0;
            let mut kept = Vec::new();
            for d in &paths {
                let passed = apply_threshold(d.resolved.clone(), d.rel.row_count(), &h)?;
                with_threshold += passed.len();
                kept.extend(passed.into_iter().filter(|c| survives_heuristics(c, d)));
            }
            let groups = apply_union_rule(&kept);
            let cases: usize = groups.iter().map(|g| g.cases.len()).sum();
            let t = nest_groups_into_t(&groups, cfg.encoding);
            let composite = compose(&s, &t);
            let failures = if cfg.validate {
                validate_documents(coll, &composite)
            } else {
                Vec::new()
            };
            let t_loc = line_count(&t);
            let composite_loc = line_count(&composite);
            let report = ExtractionReport {
                dataset: dataset.to_owned(),
                documents: coll.len(),
                doc_loc,
                s_loc,
                t_loc,
                composite_loc,
                ratio_t: t_loc as f64 / composite_loc as f64,
                cfds_without_heuristics: without_heuristics,
                cfds_with_threshold: with_threshold,
                cfds_with_threshold_and_heuristics: cases,
                valid: cfg.validate.then_some(failures.is_empty()),
                threshold: threshold.into(),
                max_depth: cfg.max_depth,
                encoding: cfg.encoding.name(),
                seconds: (shared + run_start.elapsed()).as_secs_f64(),
            };
            Ok(PipelineRun {
                threshold,
                groups,
                s: s.clone(),
                t,
                composite,
                failures,
                report,
            })
        })
        .collect()
}

/// Documents rejected by `schema`, in document order.
pub fn validate_documents(coll: &DocumentCollection, schema: &SchemaNode) -> Vec<DocumentFailure> {
    coll.documents()
        .par_iter()
        .enumerate()
        .filter_map(|(i, doc)| {
            let r = validate(doc, schema);
            (!r.is_valid()).then_some(DocumentFailure {
                document: i,
                errors: r.errors,
            })
        })
        .collect()
}

/// Subdirectory name for one threshold of a grid run.
pub fn threshold_dir_name(t: Threshold) -> String {
    format!("threshold-{}-{}", t.mode_name(), t.value())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Writes `schema-S.json`, `schema-T.json`, `schema-ite.json` and
/// `report.json` into `dir`.
pub fn write_run(dir: &Path, run: &PipelineRun) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    write_file(
        &dir.join("schema-S.json"),
        &(run.s.to_pretty_string() + "\n"),
    )?;
    write_file(
        &dir.join("schema-T.json"),
        &(run.t.to_pretty_string() + "\n"),
    )?;
    write_file(
        &dir.join("schema-ite.json"),
        &(with_schema_uri(&run.composite).to_pretty_string() + "\n"),
    )?;
    write_file(
        &dir.join("report.json"),
        &emit_report(std::slice::from_ref(&run.report), ReportFormat::Json),
    )
}

/// A single run goes straight into `dir`; a grid gets one subdirectory per
/// threshold plus a combined `report.json`.
pub fn write_runs(dir: &Path, runs: &[PipelineRun]) -> Result<()> {
    match runs {
        [one] => write_run(dir, one),
        many => {
            for run in many {
                write_run(&dir.join(threshold_dir_name(run.threshold)), run)?;
            }
            let reports: Vec<ExtractionReport> = many.iter().map(|r| r.report.clone()).collect();
            write_file(
                &dir.join("report.json"),
                &emit_report(&reports, ReportFormat::Json),
            )
        }
    }
}
