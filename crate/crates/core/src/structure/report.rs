use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// How a quantifier was discharged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled { samples: usize },
}

/// A counterexample, checkable without the code that found it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Vertex { vertex: usize },
    Vertices { vertices: Vec<usize> },
    /// Consecutive vertices are adjacent; for a cycle the ends are too.
    Path { vertices: Vec<usize> },
    /// `|N(set) \ excluded| < 2 |set|` in `G - removed`.
    Expansion {
        removed: Vec<(usize, usize)>,
        excluded: Vec<usize>,
        set: Vec<usize>,
        neighborhood: Vec<usize>,
    },
    /// `component` is a connected component of `G - removed` that misses
    /// some vertex.
    Disconnected { removed: Vec<(usize, usize)>, component: Vec<usize> },
    Block { block: usize, vertices: Vec<usize> },
    /// Offending edges at one vertex.
    Star { vertex: usize, edges: Vec<(usize, usize)> },
    /// A set whose induced edge count breaks a density bound.
    Dense { set: Vec<usize>, edges: usize },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Vertex { .. } => "vertex",
            Witness::Vertices { .. } => "vertices",
            Witness::Path { .. } => "path",
            Witness::Expansion { .. } => "expansion",
            Witness::Disconnected { .. } => "disconnected",
            Witness::Block { .. } => "block",
            Witness::Star { .. } => "star",
            Witness::Dense { .. } => "dense",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredicateReport {
    pub predicate: String,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub mode: Mode,
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn join_pairs(items: &[(usize, usize)]) -> String {
    items.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(",")
}

impl PredicateReport {
    pub fn pass(predicate: impl Into<String>, mode: Mode) -> Self {
        Self { predicate: predicate.into(), holds: true, witness: None, mode }
    }

    pub fn fail(predicate: impl Into<String>, mode: Mode, witness: Witness) -> Self {
        Self { predicate: predicate.into(), holds: false, witness: Some(witness), mode }
    }

    /// Line-oriented `key=value` rendering.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "predicate={}", self.predicate);
        let _ = writeln!(out, "holds={}", self.holds);
        match self.mode {
            Mode::Exhaustive => out.push_str("mode=exhaustive\n"),
            Mode::Sampled { samples } => {
                let _ = writeln!(out, "mode=sampled\nsamples={samples}");
            }
        }
        let Some(w) = &self.witness else { return out };
        let _ = writeln!(out, "witness.kind={}", w.kind());
        let mut put = |k: &str, v: String| {
            let _ = writeln!(out, "witness.{k}={v}");
        };
        match w {
            Witness::Vertex { vertex } => put("vertex", vertex.to_string()),
            Witness::Vertices { vertices } | Witness::Path { vertices } => {
                put("vertices", join(vertices))
            }
            Witness::Expansion { removed, excluded, set, neighborhood } => {
                put("removed", join_pairs(removed));
                put("excluded", join(excluded));
                put("set", join(set));
                put("neighborhood", join(neighborhood));
            }
            Witness::Disconnected { removed, component } => {
                put("removed", join_pairs(removed));
                put("component", join(component));
            }
            Witness::Block { block, vertices } => {
                put("block", block.to_string());
                put("vertices", join(vertices));
            }
            Witness::Star { vertex, edges } => {
                put("vertex", vertex.to_string());
                put("edges", join_pairs(edges));
            }
            Witness::Dense { set, edges } => {
                put("set", join(set));
                put("edges", edges.to_string());
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// A conjunction of clauses. Clauses that could not be decided are listed
/// in `unknown` and do not count against `holds`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompositeReport {
    pub predicate: String,
    pub holds: bool,
    pub clauses: Vec<PredicateReport>,
    pub unknown: Vec<String>,
}

impl CompositeReport {
    pub fn new(predicate: impl Into<String>, clauses: Vec<PredicateReport>, unknown: Vec<String>) -> Self {
        let holds = clauses.iter().all(|c| c.holds);
        Self { predicate: predicate.into(), holds, clauses, unknown }
    }

    pub fn first_failure(&self) -> Option<&PredicateReport> {
        self.clauses.iter().find(|c| !c.holds)
    }

    pub fn clause(&self, name: &str) -> Option<&PredicateReport> {
        self.clauses.iter().find(|c| c.predicate == name)
    }

    pub fn to_kv(&self) -> String {
        let mut out = format!("predicate={}\nholds={}\n", self.predicate, self.holds);
        if !self.unknown.is_empty() {
            let _ = writeln!(out, "unknown={}", self.unknown.join(","));
        }
        for c in &self.clauses {
            for line in c.to_kv().lines() {
                let _ = writeln!(out, "{}.{line}", c.predicate);
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
