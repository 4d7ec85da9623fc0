//! Report assembly: one stable JSON shape and a human-readable rendering.
//!
//! The JSON schema is the stability surface. Keys, in order:
//! `command`, `file`, `algebra` (`field`, `dim`, `loewy_length`,
//! `radical_layer_dims`, `commutator_dim`, `hh0_dim`, `vertices`,
//! `loops_per_vertex`), `params` (`suite`, `trials`, `seed`, `bound`; null
//! when not applicable), `results` (ordered entries with `id`, `instance`,
//! `outcome`, `value`, `witnesses`), `refuted`. Timing never enters the
//! JSON so identical inputs and seed produce byte-identical reports.

use hstrace_core::algebra::Algebra;
use hstrace_core::verify::{Outcome, TheoremReport};
use serde::Serialize;

#[derive(Serialize)]
pub struct AlgebraSummary {
    pub field: String,
    pub dim: usize,
    pub loewy_length: usize,
    pub radical_layer_dims: Vec<usize>,
    pub commutator_dim: usize,
    pub hh0_dim: usize,
    pub vertices: Vec<String>,
    pub loops_per_vertex: Vec<usize>,
}

impl AlgebraSummary {
    pub fn new(a: &Algebra) -> AlgebraSummary {
        AlgebraSummary {
            field: a.field().to_string(),
            dim: a.dim(),
            loewy_length: a.loewy_length(),
            radical_layer_dims: a.radical_layer_dims(),
            commutator_dim: a.hh0_basis().commutators.dim(),
            hh0_dim: a.hh0_dim(),
            vertices: a.vertex_names().to_vec(),
            loops_per_vertex: a.loops_per_vertex(),
        }
    }
}

#[derive(Serialize)]
pub struct Params {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub bound: usize,
}

#[derive(Serialize)]
pub struct Entry {
    pub id: String,
    pub instance: String,
    pub outcome: Outcome,
    pub value: Option<String>,
    pub witnesses: Vec<String>,
}

impl Entry {
    pub fn computed(id: &str, instance: String, value: String, witnesses: Vec<String>) -> Entry {
        Entry {
            id: id.to_string(),
            instance,
            outcome: Outcome::Verified,
            value: Some(value),
            witnesses,
        }
    }

    pub fn from_theorem(r: TheoremReport) -> Entry {
        Entry { id: r.id, instance: r.instance, outcome: r.outcome, value: None, witnesses: r.witnesses }
    }

    pub fn from_check(id: &str, instance: String, report: hstrace_core::trace::CheckReport) -> Entry {
        let outcome =
            if report.ok() { Outcome::Verified } else { Outcome::Refuted };
        let mut witnesses = vec![format!("{} identities checked exactly", report.checks)];
        witnesses.extend(report.failures);
        Entry { id: id.to_string(), instance, outcome, value: None, witnesses }
    }
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub file: String,
    pub algebra: AlgebraSummary,
    pub params: Option<Params>,
    pub results: Vec<Entry>,
    pub refuted: usize,
}

impl Report {
    pub fn new(command: &str, file: &str, algebra: &Algebra) -> Report {
        Report {
            command: command.to_string(),
            file: file.to_string(),
            algebra: AlgebraSummary::new(algebra),
            params: None,
            results: Vec::new(),
            refuted: 0,
        }
    }

    pub fn finish(&mut self) {
        self.refuted = self
            .results
            .iter()
            .filter(|e| e.outcome == Outcome::Refuted)
            .count();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self, elapsed: std::time::Duration) -> String {
        let mut out = String::new();
        let a = &self.algebra;
        out.push_str(&format!("{} {}\n", self.command, self.file));
        out.push_str(&format!(
            "algebra: dim {} over {}, Loewy length {}, radical layers {:?}\n",
            a.dim, a.field, a.loewy_length, a.radical_layer_dims
        ));
        out.push_str(&format!(
            "HH0 dim {} ([A,A] dim {}); vertices {:?}; loops per vertex {:?}\n",
            a.hh0_dim, a.commutator_dim, a.vertices, a.loops_per_vertex
        ));
        if let Some(p) = &self.params {
            out.push_str(&format!(
                "suite {} (trials {}, seed {}, bound {})\n",
                p.suite, p.trials, p.seed, p.bound
            ));
        }
        for e in &self.results {
            let tag = match &e.outcome {
                Outcome::Verified => "verified    ",
                Outcome::Refuted => "REFUTED     ",
                Outcome::Inconclusive(b) => {
                    out.push_str(&format!(
                        "inconclusive({b}) {:<28} {}{}\n",
                        e.id,
                        e.instance,
                        e.value.as_deref().map(|v| format!(" = {v}")).unwrap_or_default()
                    ));
                    continue;
                }
            };
            out.push_str(&format!(
                "{tag}{:<28} {}{}\n",
                e.id,
                e.instance,
                e.value.as_deref().map(|v| format!(" = {v}")).unwrap_or_default()
            ));
            if e.outcome == Outcome::Refuted {
                for w in &e.witnesses {
                    out.push_str(&format!("    {w}\n"));
                }
            }
        }
        let inconclusive = self
            .results
            .iter()
            .filter(|e| matches!(e.outcome, Outcome::Inconclusive(_)))
            .count();
        out.push_str(&format!(
            "summary: {} results, {} refuted, {} inconclusive\n",
            self.results.len(),
            self.refuted,
            inconclusive
        ));
        out.push_str(&format!("elapsed: {:.3}s\n", elapsed.as_secs_f64()));
        out
    }
}
