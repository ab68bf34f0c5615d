//! Bound-verification runs over random families, with JSON-lines and CSV
//! output.

use std::io::Write;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gen::{instance_rng, random_interval_graph, random_symmetric_rank};
use crate::bounds::{evaluate_bounds, Bound};
use crate::circle::{crossing_graph, ChordDiagram};
use crate::decomposition::td_validate;
use crate::error::{Error, Limits, Result};
use crate::geometry::{intersection_graph, random_string_diagram};
use crate::graph::Graph;
use crate::minors::{hadwiger_with_model, ModelKind};
use crate::perturbation::{apply_perturbation, perturbation_model_from_matrix};
use crate::treewidth::treewidth_with_decomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Random rooted polylines in the disc.
    OuterString,
    /// Random chord diagrams plus a random symmetric perturbation of rank at most 2.
    CirclePerturb,
    /// Random interval graphs.
    Chordal,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::OuterString => "outer-string",
            Family::CirclePerturb => "circle-perturb",
            Family::Chordal => "chordal",
        }
    }

    /// The largest `n` used by the acceptance runs.
    pub fn default_max_n(self) -> usize {
        match self {
            Family::OuterString => 14,
            Family::CirclePerturb | Family::Chordal => 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub index: u64,
    pub family: Family,
    pub params: serde_json::Value,
    pub seed: u64,
    pub n: usize,
    pub treewidth: Option<usize>,
    pub hadwiger: Option<usize>,
    pub bound: Option<u128>,
    /// `None` when an oracle cap was hit and the instance was skipped.
    pub pass: Option<bool>,
    pub certificate: String,
    pub skipped: Option<String>,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub family: Family,
    pub trials: usize,
    pub failures: Vec<u64>,
    pub skipped: usize,
    pub max_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl ExperimentReport {
    pub fn all_pass(&self) -> bool {
        self.summary.failures.is_empty()
    }

    /// One JSON object per record. Timing is dropped when `timing` is false
    /// so that reruns compare byte for byte.
    pub fn write_jsonl<W: Write>(&self, mut w: W, timing: bool) -> Result<()> {
        for r in &self.records {
            let mut v = serde_json::to_value(r).map_err(io)?;
            if !timing {
                v.as_object_mut().unwrap().remove("wall_ms");
            }
            writeln!(w, "{v}").map_err(io)?;
        }
        Ok(())
    }

    pub fn write_summary_csv<W: Write>(&self, w: W) -> Result<()> {
        let s = &self.summary;
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["family", "trials", "failures", "skipped", "max_ratio"]).map_err(io)?;
        out.write_record([
            s.family.name().to_string(),
            s.trials.to_string(),
            s.failures.len().to_string(),
            s.skipped.to_string(),
            format!("{:.4}", s.max_ratio),
        ])
        .map_err(io)?;
        out.flush().map_err(io)
    }
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

struct Instance {
    graph: Graph,
    params: serde_json::Value,
    // bound as a function of the Hadwiger number
    bound: Box<dyn Fn(u64) -> u128 + Send>,
}

fn generate<R: Rng>(family: Family, max_n: usize, rng: &mut R) -> Result<Instance> {
    let n = rng.gen_range(max_n.div_ceil(2).max(1)..=max_n.max(1));
    Ok(match family {
        Family::OuterString => {
            let segs = rng.gen_range(1..=3);
            let d = random_string_diagram(n, segs, rng);
            Instance {
                graph: intersection_graph(&d),
                params: serde_json::json!({ "n": n, "segs": segs }),
                bound: Box::new(|had| evaluate_bounds(Bound::OuterString { had })),
            }
        }
        Family::CirclePerturb => {
            let r = rng.gen_range(0..=2.min(n));
            let cd = ChordDiagram::random(n, rng);
            let p = random_symmetric_rank(n, r, rng)?;
            let model = perturbation_model_from_matrix(&p)?;
            let k = model.k as u64;
            Instance {
                graph: apply_perturbation(&crossing_graph(&cd), &model)?,
                params: serde_json::json!({ "n": n, "r": r, "k": k }),
                bound: Box::new(move |had| {
                    let by_k = evaluate_bounds(Bound::PerturbedCircle { k, had });
                    let by_r = evaluate_bounds(Bound::RankPerturbation { r: r as u32, had });
                    by_k.min(by_r)
                }),
            }
        }
        Family::Chordal => Instance {
            graph: random_interval_graph(n, rng),
            params: serde_json::json!({ "n": n }),
            bound: Box::new(|had| evaluate_bounds(Bound::Chordal { had })),
        },
    })
}

fn run_one(family: Family, seed: u64, index: u64, max_n: usize, limits: &Limits) -> Result<Record> {
    let start = Instant::now();
    let mut rng = instance_rng(seed, index);
    let inst = generate(family, max_n, &mut rng)?;
    let g = &inst.graph;
    let mut rec = Record {
        index,
        family,
        params: inst.params,
        seed,
        n: g.n(),
        treewidth: None,
        hadwiger: None,
        bound: None,
        pass: None,
        certificate: String::new(),
        skipped: None,
        wall_ms: 0.0,
    };
    let oracles = treewidth_with_decomposition(g, limits).and_then(|(tw, td)| {
        let (had, model) = hadwiger_with_model(g, limits)?;
        Ok((tw, td, had, model))
    });
    match oracles {
        Ok((tw, td, had, model)) => {
            // both certificates are re-checked before the bound is evaluated
            td_validate(g, &td)?;
            model.validate(g, ModelKind::Minor)?;
            let bound = (inst.bound)(had as u64);
            rec.treewidth = Some(tw);
            rec.hadwiger = Some(had);
            rec.bound = Some(bound);
            rec.pass = Some(match family {
                Family::Chordal => tw as u128 == bound,
                _ => tw as u128 <= bound,
            });
            rec.certificate = "tree-decomposition+clique-minor".into();
        }
        Err(e @ Error::ResourceLimit { .. }) => rec.skipped = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    rec.wall_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(rec)
}

/// Generate `trials` instances of `family` with at most `max_n` vertices,
/// compute treewidth and Hadwiger number exactly, and compare against the
/// family's bound. Instances that hit a cap are skipped, never passed.
pub fn verify_bound(family: Family, trials: usize, seed: u64, max_n: usize, limits: &Limits) -> Result<ExperimentReport> {
    let records: Vec<Record> = (0..trials as u64)
        .into_par_iter()
        .map(|i| run_one(family, seed, i, max_n, limits))
        .collect::<Result<_>>()?;
    let failures = records.iter().filter(|r| r.pass == Some(false)).map(|r| r.index).collect();
    let skipped = records.iter().filter(|r| r.pass.is_none()).count();
    let max_ratio = records
        .iter()
        .filter_map(|r| match (r.treewidth, r.hadwiger) {
            (Some(tw), Some(had)) if had > 0 => Some(tw as f64 / had as f64),
            _ => None,
        })
        .fold(0.0, f64::max);
    Ok(ExperimentReport {
        summary: Summary {
            family,
            trials,
            failures,
            skipped,
            max_ratio,
        },
        records,
    })
}
