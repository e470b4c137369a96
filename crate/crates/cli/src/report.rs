//! The report every command produces, and its two renderings.

use std::fmt::Write as _;

use serde::Serialize;
use stp_core::homalg::AbGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Whether the verdict decides the exit code.
    pub gating: bool,
    pub detail: String,
    /// For a failure: the degree and the two groups, or the refuting simplex.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: &str, status: Status, detail: impl Into<String>) -> Self {
        Self { name: name.into(), status, gating: true, detail: detail.into(), witness: None }
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Self {
        self.witness = witness;
        self
    }

    pub fn informational(mut self) -> Self {
        self.gating = false;
        self
    }
}

/// Groups per degree, rendered `symbol_i = G`.
#[derive(Clone, Debug, Serialize)]
pub struct GroupRow {
    pub name: String,
    pub symbol: String,
    pub groups: Vec<String>,
}

impl GroupRow {
    pub fn new(name: &str, symbol: &str, groups: &[AbGroup]) -> Self {
        Self { name: name.into(), symbol: symbol.into(), groups: groups.iter().map(ToString::to_string).collect() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub step: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceInfo {
    pub name: String,
    pub subdivisions: usize,
    pub vertices: usize,
    pub f_vector: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub space: SpaceInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeff: Option<String>,
    pub max_degree: usize,
    pub facts: Vec<(String, String)>,
    pub groups: Vec<GroupRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<(String, Vec<Vec<String>>)>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<serde_json::Value>,
    /// Only with `--timings`; otherwise reports are reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

impl Report {
    pub fn new(command: String, space: SpaceInfo, coeff: Option<&AbGroup>, max_degree: usize) -> Self {
        Self {
            command,
            space,
            coeff: coeff.map(ToString::to_string),
            max_degree,
            facts: Vec::new(),
            groups: Vec::new(),
            matrices: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            cover: None,
            timings: None,
        }
    }

    pub fn fact(&mut self, key: &str, value: impl ToString) {
        self.facts.push((key.into(), value.to_string()));
    }

    /// 0 if every gating check passed (inconclusive ones only when
    /// allowed), else 1.
    pub fn exit_code(&self, allow_inconclusive: bool) -> i32 {
        let bad = self.checks.iter().filter(|c| c.gating).any(|c| match c.status {
            Status::Pass => false,
            Status::Fail => true,
            Status::Inconclusive => !allow_inconclusive,
        });
        i32::from(bad)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.space;
        let _ = writeln!(out, "$ stp {}", self.command);
        let sd = if s.subdivisions > 0 { format!(", subdivided {}x", s.subdivisions) } else { String::new() };
        let fv: Vec<String> = s.f_vector.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "space {}{sd}: {} vertices, f-vector ({})", s.name, s.vertices, fv.join(", "));
        if let Some(c) = &self.coeff {
            let _ = writeln!(out, "coefficients {c}, degrees 0..={}", self.max_degree);
        } else {
            let _ = writeln!(out, "degrees 0..={}", self.max_degree);
        }
        for (k, v) in &self.facts {
            let _ = writeln!(out, "{k}: {v}");
        }
        for row in &self.groups {
            let parts: Vec<String> = row.groups.iter().enumerate().map(|(i, g)| format!("{}_{i} = {g}", row.symbol)).collect();
            let _ = writeln!(out, "{}: {}", row.name, parts.join(", "));
        }
        for (name, m) in &self.matrices {
            let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.join(" "))).collect();
            let _ = writeln!(out, "{name}: {}", if rows.is_empty() { "[]".to_string() } else { rows.join(" ") });
        }
        for c in &self.checks {
            let gate = if c.gating { "" } else { " (informational)" };
            let _ = writeln!(out, "check {}: {}{gate} - {}", c.name, c.status.label(), c.detail);
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "  witness: {w}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        if let Some(t) = &self.timings {
            for t in t {
                let _ = writeln!(out, "time {}: {:.3}s", t.step, t.seconds);
            }
        }
        out
    }
}
