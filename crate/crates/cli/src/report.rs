//! Report envelope and the JSON encodings shared by the commands.

use leavitt_core::rep_type::{FactorDescriptor, FactorKind, Witness};
use leavitt_core::structure::SharedVertex;
use leavitt_core::{AdmissiblePair, Cycle, Graph, Vertex, VertexSet, XNat};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const TOOL: &str = "leavitt";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The output of one command: a structured result and its text rendering.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub result: Value,
    pub text: String,
}

impl Report {
    /// The top-level object. `serde_json` maps keep keys sorted, so the
    /// serialization is deterministic.
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputDigest": self.input_digest,
            "result": self.result,
            "tool": TOOL,
            "version": VERSION,
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
        s.push('\n');
        s
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn xnat(x: XNat) -> Value {
    match x {
        XNat::Fin(n) => json!(n),
        XNat::Omega => json!("omega"),
    }
}

pub fn names(g: &Graph, vs: impl IntoIterator<Item = Vertex>) -> Vec<String> {
    vs.into_iter().map(|v| g.name(v).to_string()).collect()
}

pub fn set(g: &Graph, s: &VertexSet) -> Value {
    json!(names(g, s.iter().copied()))
}

pub fn pair(g: &Graph, p: &AdmissiblePair) -> Value {
    json!({ "h": set(g, &p.h), "s": set(g, &p.s) })
}

pub fn cycle(g: &Graph, c: &Cycle) -> Value {
    json!(c.edges().iter().map(|&e| g.edge_label(e)).collect::<Vec<_>>())
}

pub fn shared_vertex(g: &Graph, w: &SharedVertex) -> Value {
    json!({
        "vertex": g.name(w.vertex),
        "first": cycle(g, &w.first),
        "second": cycle(g, &w.second),
    })
}

pub fn factor_kind(k: FactorKind) -> &'static str {
    match k {
        FactorKind::MatrixOverK => "matrix-over-field",
        FactorKind::MatrixOverLaurent => "matrix-over-laurent",
    }
}

/// `M_n(K)` / `M_n(K[x,x⁻¹])` with `n` printed as a number or `ω`.
pub fn factor_text(f: &FactorDescriptor) -> String {
    match f.kind {
        FactorKind::MatrixOverK => format!("M_{}(K)", f.size),
        FactorKind::MatrixOverLaurent => format!("M_{}(K[x,x^-1])", f.size),
    }
}

/// `g` is the graph the witness vertices and edges live in; `row_name`
/// resolves row witnesses.
pub fn factor(g: Option<&Graph>, f: &FactorDescriptor, row_name: impl Fn(usize) -> String) -> Value {
    let witness = match (&f.witness, g) {
        (Witness::LineClass { members, sink }, Some(g)) => json!({
            "kind": "line-class",
            "members": names(g, members.iter().copied()),
            "sink": g.name(*sink),
        }),
        (Witness::Cycle(c), Some(g)) => json!({ "kind": "cycle", "edges": cycle(g, c) }),
        (Witness::Row(r), _) => json!({ "kind": "row", "row": row_name(*r) }),
        (_, None) => Value::Null,
    };
    json!({ "kind": factor_kind(f.kind), "size": xnat(f.size), "witness": witness })
}

pub fn list_text(items: &[String]) -> String {
    format!("{{{}}}", items.join(","))
}
