//! Reports and their text rendering.

use std::fmt::Write;

use serde::Serialize;

use crate::spec::JobSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub degree: i64,
    pub weight: i64,
    pub dim: usize,
}

/// One compared cell. `weight` is absent when the comparison is by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Delta {
    pub source: String,
    pub degree: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<i64>,
    pub expected: usize,
    pub computed: usize,
}

impl Delta {
    pub fn ok(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub job: JobSpec,
    pub window: [i64; 2],
    pub coefficients: String,
    /// Nonzero homology in the window.
    pub betti: Vec<BettiEntry>,
    pub deltas: Vec<Delta>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<serde_json::Value>,
    pub max_block: usize,
    pub wall_ms: u64,
    pub verdict: Verdict,
}

impl Report {
    pub fn decide(&mut self) {
        let ok = self.deltas.iter().all(Delta::ok) && self.checks.iter().all(|c| c.passed);
        self.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
    }

    /// Totals over weights from the top degree down.
    pub fn descending(&self) -> Vec<usize> {
        (self.window[0]..=self.window[1])
            .rev()
            .map(|k| self.betti.iter().filter(|e| e.degree == k).map(|e| e.dim).sum())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let [lo, hi] = self.window;
        let _ = writeln!(s, "task {}  window [{lo}, {hi}]  coefficients {}", task_name(&self.job), self.coefficients);
        let _ = writeln!(s, "betti (top degree first): {:?}", self.descending());
        if !self.betti.is_empty() {
            let _ = writeln!(s, "{:>8} {:>8} {:>8}", "degree", "weight", "dim");
            for e in &self.betti {
                let _ = writeln!(s, "{:>8} {:>8} {:>8}", e.degree, e.weight, e.dim);
            }
        }
        let mut sources: Vec<&str> = self.deltas.iter().map(|d| d.source.as_str()).collect();
        sources.dedup();
        for src in sources {
            let bad: Vec<&Delta> = self.deltas.iter().filter(|d| d.source == src && !d.ok()).collect();
            if bad.is_empty() {
                let _ = writeln!(s, "{src}: match");
            } else {
                let _ = writeln!(s, "{src}: {} mismatches", bad.len());
                for d in bad {
                    let w = d.weight.map(|w| format!(" weight {w}")).unwrap_or_default();
                    let _ = writeln!(s, "  degree {}{w}: expected {}, computed {}", d.degree, d.expected, d.computed);
                }
            }
        }
        for c in &self.checks {
            let _ = writeln!(s, "{}: {} ({})", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail);
        }
        if let Some(t) = &self.table {
            let _ = writeln!(s, "{}", serde_json::to_string_pretty(t).expect("tables serialize"));
        }
        let _ = writeln!(
            s,
            "verdict {}  (max block {}, {} ms)",
            if self.verdict == Verdict::Pass { "pass" } else { "fail" },
            self.max_block,
            self.wall_ms
        );
        s
    }
}

fn task_name(job: &JobSpec) -> String {
    serde_json::to_value(job.task).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

/// What `explain` prints.
#[derive(Debug, Clone, Serialize)]
pub struct Explanation {
    pub job: JobSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation_level: Option<usize>,
    /// Chain dimension of each simplicial level, summed over blocks.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub level_dims: Vec<usize>,
    /// `(degree, weight, dim)` of the total complex.
    pub blocks: Vec<(i64, i64, usize)>,
    pub max_block: usize,
    /// `Σ rows · cols · min(rows, cols)` over the differentials.
    pub elimination_cost: u128,
}

impl Explanation {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let [lo, hi] = self.job.window;
        let _ = writeln!(s, "task {}  window [{lo}, {hi}]", task_name(&self.job));
        if let Some(l) = self.truncation_level {
            let _ = writeln!(s, "truncation level {l}");
        }
        for (n, d) in self.level_dims.iter().enumerate() {
            let _ = writeln!(s, "level {n}: {d}");
        }
        let _ = writeln!(s, "{} blocks, max block {}", self.blocks.len(), self.max_block);
        for (k, w, d) in &self.blocks {
            let _ = writeln!(s, "  ({k}, {w}): {d}");
        }
        let _ = writeln!(s, "estimated elimination cost {}", self.elimination_cost);
        s
    }
}
