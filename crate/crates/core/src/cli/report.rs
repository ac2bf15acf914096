//! Machine-readable report. Every field round-trips through JSON.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::problem::Encoded;
use super::verify::Check;

pub type EncodedMatrix = Vec<Vec<Encoded>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<String>>,
    pub oracle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldEcho {
    pub p: u64,
    pub k: usize,
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_poly: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRow {
    pub j: usize,
    pub chi: Vec<Encoded>,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub rho_index: usize,
    pub rho_dim: usize,
    pub theta_dim: usize,
    pub endo_dim: usize,
    pub irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepSummary {
    pub name: String,
    pub group_order: usize,
    pub dim: usize,
    /// Generator name to image.
    pub images: BTreeMap<String, EncodedMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilitySection {
    pub rep: String,
    pub dim: usize,
    pub irreducible: bool,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntertwiningSection {
    pub rep: String,
    pub rep2: String,
    pub i_value: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disjoint: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedSection {
    pub from_order: usize,
    pub index: usize,
    pub induced: RepSummary,
    pub irreducible: bool,
    pub endo_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetRow {
    pub rep_word: String,
    pub hx_order: usize,
    pub i_value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeySection {
    pub rep: String,
    pub subgroup_order: usize,
    pub double_cosets: Vec<CosetRow>,
    pub i_total: usize,
    pub i_ll: usize,
    pub i_induced_direct: usize,
    pub condition_holds: bool,
    pub irreducible_by_condition: bool,
    /// Present when the condition is inconclusive.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direct_irreducible: Option<bool>,
    pub intertwining_preserved: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monomial_criterion: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_path_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsomorphismSection {
    pub rep: String,
    pub rep2: String,
    pub double_cosets: Vec<CosetRow>,
    pub non_isomorphic: bool,
    pub i_direct: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchRow {
    pub rep: String,
    pub dim: usize,
    /// Index into `entries`, absent when there is no linear N-constituent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<usize>,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: CommandEcho,
    pub seed: u64,
    pub field: FieldEcho,
    pub group_order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<EntryRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sum: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_compat: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<Check>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreducibility: Option<IrreducibilitySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intertwining: Option<IntertwiningSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub induced: Option<InducedSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mackey: Option<MackeySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isomorphism: Option<IsomorphismSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matches: Option<Vec<MatchRow>>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::Parse(e.to_string()))
    }

    /// Plain-text rendering for the terminal.
    pub fn human(&self) -> String {
        let mut out = String::new();
        let f = &self.field;
        out.push_str(&format!(
            "{} {}: |G| = {}, GF({}), seed {}\n",
            self.tool, self.command.name, self.group_order, f.q, self.seed
        ));
        if let Some(entries) = &self.entries {
            out.push_str(&format!(
                "{:>3} {:<18} {:>6} {:>6} {:>4} {:>7} {:>9} {:>8} {:>11}\n",
                "j", "chi", "|O_j|", "|I_j|", "rho", "dim rho", "dim theta", "i(th,th)", "irreducible"
            ));
            for e in entries {
                let chi = serde_json::to_string(&e.chi).expect("serializes");
                out.push_str(&format!(
                    "{:>3} {:<18} {:>6} {:>6} {:>4} {:>7} {:>9} {:>8} {:>11}\n",
                    e.j, chi, e.orbit_size, e.stabilizer_order, e.rho_index, e.rho_dim, e.theta_dim, e.endo_dim, e.irreducible
                ));
            }
        }
        if let (Some(sum), Some(complete)) = (self.sum, self.complete) {
            out.push_str(&format!(
                "sum of dim^2 / i = {sum} (|G| = {}), complete: {complete}, field_compat: {}\n",
                self.group_order,
                self.field_compat.unwrap_or(false)
            ));
        }
        if let Some(checks) = &self.checks {
            for c in checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                out.push_str(&format!("{mark} {:<36} cases {:>4}  {}\n", c.name, c.cases, c.detail));
            }
        }
        if let Some(s) = &self.irreducibility {
            out.push_str(&format!("{} (dim {}): irreducible = {} via {}", s.rep, s.dim, s.irreducible, s.method));
            if let Some(w) = s.witness_dim {
                out.push_str(&format!(", invariant subspace of dim {w}"));
            }
            if let Some(o) = s.oracle {
                out.push_str(&format!(", exhaustive spin agrees: {}", o == s.irreducible));
            }
            out.push('\n');
        }
        if let Some(s) = &self.intertwining {
            out.push_str(&format!("i({}, {}) = {}\n", s.rep, s.rep2, s.i_value));
        }
        if let Some(s) = &self.induced {
            out.push_str(&format!(
                "induced from a subgroup of order {} (index {}): dim {}, irreducible {}, i = {}\n",
                s.from_order, s.index, s.induced.dim, s.irreducible, s.endo_dim
            ));
            for (name, m) in &s.induced.images {
                out.push_str(&format!("  {name} -> {}\n", serde_json::to_string(m).expect("serializes")));
            }
        }
        if let Some(s) = &self.mackey {
            out.push_str(&format!("{:<16} {:>8} {:>6}\n", "x", "|H^(x)|", "i"));
            for r in &s.double_cosets {
                out.push_str(&format!("{:<16} {:>8} {:>6}\n", r.rep_word, r.hx_order, r.i_value));
            }
            out.push_str(&format!(
                "total {} (direct {}), i(L, L) = {}, condition holds: {}\n",
                s.i_total, s.i_induced_direct, s.i_ll, s.condition_holds
            ));
            match s.direct_irreducible {
                Some(v) => out.push_str(&format!("inconclusive by the condition; direct verdict: irreducible = {v}\n")),
                None => out.push_str("induced module irreducible by the condition\n"),
            }
            if let Some(m) = s.monomial_criterion {
                out.push_str(&format!("monomial criterion: {m}\n"));
            }
        }
        if let Some(s) = &self.isomorphism {
            out.push_str(&format!(
                "{}^G vs {}^G: non-isomorphic = {} (direct i = {})\n",
                s.rep, s.rep2, s.non_isomorphic, s.i_direct
            ));
        }
        if let Some(ms) = &self.matches {
            for m in ms {
                match m.entry {
                    Some(e) => out.push_str(&format!("{} (dim {}): entry {e}\n", m.rep, m.dim)),
                    None => out.push_str(&format!("{} (dim {}): {}\n", m.rep, m.dim, m.verdict)),
                }
            }
        }
        out
    }
}
