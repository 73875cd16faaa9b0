//! Command dispatch over parsed documents.

use std::fmt::Write as _;

use leavitt_core::chen::{enumerate_tail_classes, Completeness};
use leavitt_core::cycles::{enumerate_simple_cycles, is_acyclic, scc_decomposition};
use leavitt_core::graph::VertexKind;
use leavitt_core::rep_type::{firt_decision, Evidence, Terminal};
use leavitt_core::row_graphs::{
    pyramid, row_admissible_chain, row_ideal_lattice, row_socular_chain, RowChain, RowGraph, RowSet,
};
use leavitt_core::structure::{
    condition_k, cycles_pairwise_disjoint, cycles_without_exits, line_point_classes, line_points,
};
use leavitt_core::{
    classify_rep_type, ideal_lattice, socular_chain, Cardinality, FieldCard, Graph, StructureError, DEFAULT_LATTICE_CAP,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::document::{emit, parse_graph_file, Body, GraphDocument, ParseError};
use crate::report::{self, digest, factor, factor_text, list_text, names, pair, set, shared_vertex, xnat, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Analyze,
    Lattice,
    Chain,
    Census { field: FieldCard },
    Chen { max_period: usize },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Analyze => "analyze",
            Command::Lattice => "lattice",
            Command::Chain => "chain",
            Command::Census { .. } => "census",
            Command::Chen { .. } => "chen",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub max_lattice: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_lattice: DEFAULT_LATTICE_CAP }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Input(String),
    #[error("analysis aborted: {0}")]
    Abort(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Abort(_) => 1,
            _ => 2,
        }
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        CliError::Abort(e.to_string())
    }
}

/// Parse `text` (read from `path`) and run `command` on it.
pub fn run_text(command: &Command, path: &str, text: &str, options: Options) -> Result<Report, CliError> {
    let mut doc = parse_graph_file(text).map_err(|source| CliError::Parse { path: path.to_string(), source })?;
    doc.source_file = Some(path.into());
    run(command, &doc, &digest(text.as_bytes()), options)
}

pub fn run(command: &Command, doc: &GraphDocument, input_digest: &str, options: Options) -> Result<Report, CliError> {
    let (result, text) = match (&doc.body, command) {
        (_, Command::Validate) => validate(doc),
        (Body::Graph(g), Command::Analyze) => analyze(&doc.name, g),
        (Body::Rows(rg), Command::Analyze) => analyze_rows(&doc.name, rg),
        (Body::Graph(g), Command::Lattice) => lattice(g, options)?,
        (Body::Rows(rg), Command::Lattice) => lattice_rows(rg),
        (Body::Graph(g), Command::Chain) => chain(g, options),
        (Body::Rows(rg), Command::Chain) => chain_rows(rg),
        (Body::Graph(g), Command::Census { field }) => census(g, *field, options),
        (Body::Rows(rg), Command::Census { field }) => census_rows(rg, *field),
        (Body::Graph(g), Command::Chen { max_period }) => chen(g, *max_period)?,
        (Body::Rows(_), Command::Chen { .. }) => {
            return Err(CliError::Input("chen needs a finite graph, not a rowgraph".into()));
        }
    };
    Ok(Report { command: command.name().to_string(), input_digest: input_digest.to_string(), result, text })
}

/// Generate `pyramid(layers)` and analyze it. The digest is taken over the
/// canonical text of the generated document.
pub fn run_pyramid(layers: usize) -> Result<Report, CliError> {
    let rg = pyramid(layers).map_err(|e| CliError::Input(format!("pyramid {layers}: {e}")))?;
    let doc = GraphDocument { name: format!("pyramid{layers}"), body: Body::Rows(rg.clone()), source_file: None };
    let canonical = emit(&doc);
    let hs = row_lattice_sets(&rg);
    let chain = row_socular_chain(&rg);
    let admissible = row_admissible_chain(&rg);
    let result = json!({
        "layers": layers,
        "document": canonical,
        "census": chain.census().to_string(),
        "hereditarySaturated": hs.iter().map(|s| row_names(&rg, s)).collect::<Vec<_>>(),
        "admissibleChain": admissible.iter().map(|s| json!({"h": row_names(&rg, s), "s": []})).collect::<Vec<_>>(),
        "stages": row_stages_json(&rg, &chain),
    });
    let mut text = format!("pyramid({layers})\n{canonical}");
    writeln!(text, "census: {}", chain.census()).unwrap();
    writeln!(text, "hereditary saturated sets ({}): {}", hs.len(), row_sets_text(&rg, &hs)).unwrap();
    let pairs: Vec<String> = admissible.iter().map(|s| format!("({}, {{}})", rg.format_rows(s))).collect();
    writeln!(text, "admissible chain: {}", pairs.join(" < ")).unwrap();
    text.push_str(&row_stages_text(&rg, &chain));
    Ok(Report { command: "pyramid".into(), input_digest: digest(canonical.as_bytes()), result, text })
}

fn validate(doc: &GraphDocument) -> (Value, String) {
    let canonical = emit(doc);
    match &doc.body {
        Body::Graph(g) => {
            let edges = g.bundles().len();
            let result = json!({
                "valid": true,
                "kind": "graph",
                "name": doc.name,
                "vertices": g.vertex_count(),
                "edges": edges,
                "canonical": canonical,
            });
            (result, format!("valid graph {}: {} vertices, {} edges\n", doc.name, g.vertex_count(), edges))
        }
        Body::Rows(rg) => {
            let result = json!({
                "valid": true,
                "kind": "rowgraph",
                "name": doc.name,
                "rows": rg.len(),
                "canonical": canonical,
            });
            (result, format!("valid rowgraph {}: {} rows\n", doc.name, rg.len()))
        }
    }
}

fn kind_name(k: VertexKind) -> &'static str {
    match k {
        VertexKind::Sink => "sink",
        VertexKind::Regular => "regular",
        VertexKind::InfiniteEmitter => "infinite-emitter",
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn analyze(name: &str, g: &Graph) -> (Value, String) {
    let points = line_points(g);
    let classes = line_point_classes(g);
    let exitless = cycles_without_exits(g);
    let (cycles, complete) = enumerate_simple_cycles(g);
    let k = condition_k(g);
    let disjoint = cycles_pairwise_disjoint(g);
    let components = scc_decomposition(g);

    let vertices: Vec<Value> = g
        .vertices()
        .map(|v| {
            let class = g.classify_vertex(v).expect("own vertex");
            json!({"id": g.name(v), "kind": kind_name(class.kind), "outDegree": xnat(class.out_degree)})
        })
        .collect();
    let result = json!({
        "acyclic": is_acyclic(g),
        "components": components.iter().map(|c| names(g, c.iter().copied())).collect::<Vec<_>>(),
        "conditionK": k,
        "cycles": {"complete": complete, "list": cycles.iter().map(|c| report::cycle(g, c)).collect::<Vec<_>>()},
        "cyclesDisjoint": match &disjoint {
            Ok(()) => json!({"holds": true}),
            Err(w) => json!({"holds": false, "witness": shared_vertex(g, w)}),
        },
        "exitlessCycles": exitless.iter().map(|c| report::cycle(g, c)).collect::<Vec<_>>(),
        "linePointClasses": classes.iter().map(|c| names(g, c.iter().copied())).collect::<Vec<_>>(),
        "linePoints": set(g, &points),
        "vertices": vertices,
    });

    let mut t = format!("graph {name}: {} vertices, {} edges\n", g.vertex_count(), g.bundles().len());
    t.push_str("vertices:\n");
    for v in g.vertices() {
        let class = g.classify_vertex(v).expect("own vertex");
        writeln!(t, "  {} {} (out-degree {})", g.name(v), kind_name(class.kind), class.out_degree).unwrap();
    }
    writeln!(t, "line points: {}", list_text(&names(g, points.iter().copied()))).unwrap();
    let class_text: Vec<String> = classes.iter().map(|c| list_text(&names(g, c.iter().copied()))).collect();
    writeln!(t, "line-point classes: {}", or_none(&class_text.join(" "))).unwrap();
    let cycle_text: Vec<String> = cycles.iter().map(|c| format!("[{}]", c.label(g))).collect();
    let suffix = if complete { "" } else { " (truncated)" };
    writeln!(t, "simple cycles: {}{suffix}", or_none(&cycle_text.join(" "))).unwrap();
    let exitless_text: Vec<String> = exitless.iter().map(|c| format!("[{}]", c.label(g))).collect();
    writeln!(t, "exitless cycles: {}", or_none(&exitless_text.join(" "))).unwrap();
    writeln!(t, "condition K: {}", yes(k)).unwrap();
    match &disjoint {
        Ok(()) => t.push_str("cycles pairwise disjoint: yes\n"),
        Err(w) => writeln!(
            t,
            "cycles pairwise disjoint: no ([{}] and [{}] share {})",
            w.first.label(g),
            w.second.label(g),
            g.name(w.vertex)
        )
        .unwrap(),
    }
    (result, t)
}

fn or_none(s: &str) -> &str {
    if s.is_empty() {
        "none"
    } else {
        s
    }
}

fn row_names(rg: &RowGraph, s: &RowSet) -> Vec<String> {
    s.iter().map(|&r| rg.name(r).to_string()).collect()
}

fn row_sets_text(rg: &RowGraph, sets: &[RowSet]) -> String {
    sets.iter().map(|s| rg.format_rows(s)).collect::<Vec<_>>().join(" ")
}

fn row_lattice_sets(rg: &RowGraph) -> Vec<RowSet> {
    row_ideal_lattice(rg).elements
}

fn analyze_rows(name: &str, rg: &RowGraph) -> (Value, String) {
    let rows: Vec<Value> =
        (0..rg.len()).map(|r| json!({"id": rg.name(r), "up": rg.up_target(r).map(|t| rg.name(t))})).collect();
    let hs = row_lattice_sets(rg);
    let chain = row_socular_chain(rg);
    let result = json!({
        "rows": rows,
        "hereditarySaturated": hs.iter().map(|s| row_names(rg, s)).collect::<Vec<_>>(),
        "census": chain.census().to_string(),
    });
    let mut t = format!("rowgraph {name}: {} rows\n", rg.len());
    for r in 0..rg.len() {
        match rg.up_target(r) {
            Some(u) => writeln!(t, "  {} up {}", rg.name(r), rg.name(u)).unwrap(),
            None => writeln!(t, "  {}", rg.name(r)).unwrap(),
        }
    }
    writeln!(t, "hereditary saturated sets ({}): {}", hs.len(), row_sets_text(rg, &hs)).unwrap();
    writeln!(t, "census: {}", chain.census()).unwrap();
    (result, t)
}

fn lattice(g: &Graph, options: Options) -> Result<(Value, String), CliError> {
    let l = ideal_lattice(g, options.max_lattice)?;
    let p = &l.poset;
    let covers = p.covers();
    let ji = p.join_irreducibles();
    let distributive = p.is_distributive();
    let result = json!({
        "elements": l.elements.iter().map(|e| pair(g, e)).collect::<Vec<_>>(),
        "covers": covers.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "joinIrreducibles": ji,
        "maxChainLength": p.max_chain_length(),
        "distributive": distributive,
        "allIdealsGraded": l.all_ideals_graded,
    });
    let mut t = format!("ideal lattice: {} elements, {} covers\n", l.elements.len(), covers.len());
    for (i, e) in l.elements.iter().enumerate() {
        writeln!(t, "  [{i}] {}", e.display(g)).unwrap();
    }
    let cover_text: Vec<String> = covers.iter().map(|(a, b)| format!("{a}<{b}")).collect();
    writeln!(t, "covers: {}", or_none(&cover_text.join(" "))).unwrap();
    let ji_text: Vec<String> = ji.iter().map(|i| format!("[{i}]")).collect();
    writeln!(t, "join-irreducible ({}): {}", ji.len(), or_none(&ji_text.join(" "))).unwrap();
    writeln!(t, "longest chain: {}", p.max_chain_length()).unwrap();
    writeln!(t, "distributive: {}", yes(distributive)).unwrap();
    writeln!(t, "all ideals graded: {}", yes(l.all_ideals_graded)).unwrap();
    Ok((result, t))
}

fn lattice_rows(rg: &RowGraph) -> (Value, String) {
    let l = row_ideal_lattice(rg);
    let p = &l.poset;
    let covers = p.covers();
    let ji = p.join_irreducibles();
    let result = json!({
        "elements": l.elements.iter().map(|s| row_names(rg, s)).collect::<Vec<_>>(),
        "covers": covers.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "joinIrreducibles": ji,
        "maxChainLength": p.max_chain_length(),
        "distributive": p.is_distributive(),
    });
    let mut t = format!("row lattice: {} elements, {} covers\n", l.elements.len(), covers.len());
    for (i, s) in l.elements.iter().enumerate() {
        writeln!(t, "  [{i}] {}", rg.format_rows(s)).unwrap();
    }
    let cover_text: Vec<String> = covers.iter().map(|(a, b)| format!("{a}<{b}")).collect();
    writeln!(t, "covers: {}", or_none(&cover_text.join(" "))).unwrap();
    writeln!(t, "join-irreducible: {}", ji.len()).unwrap();
    writeln!(t, "distributive: {}", yes(p.is_distributive())).unwrap();
    (result, t)
}

fn chain(g: &Graph, options: Options) -> (Value, String) {
    let chain = socular_chain(g);
    let firt = firt_decision(g, options.max_lattice);
    let mut stages = Vec::new();
    let mut t = String::new();
    for (i, stage) in chain.stages.iter().enumerate() {
        let q = &stage.quotient.graph;
        stages.push(json!({
            "index": i,
            "pair": pair(g, &stage.pair),
            "quotientVertices": names(q, q.vertices()),
            "classes": stage.classes.iter().map(|c| names(q, c.iter().copied())).collect::<Vec<_>>(),
            "cycles": stage.cycles.iter().map(|c| report::cycle(q, c)).collect::<Vec<_>>(),
            "factors": stage.factors.iter().map(|f| factor(Some(q), f, |r| r.to_string())).collect::<Vec<_>>(),
        }));
        let factors: Vec<String> = stage.factors.iter().map(factor_text).collect();
        writeln!(t, "stage {i}: {} ; factors {}", stage.pair.display(g), or_none(&factors.join(" "))).unwrap();
        let classes: Vec<String> = stage.classes.iter().map(|c| list_text(&names(q, c.iter().copied()))).collect();
        if !classes.is_empty() {
            writeln!(t, "  line-point classes: {}", classes.join(" ")).unwrap();
        }
        let cycles: Vec<String> = stage.cycles.iter().map(|c| format!("[{}]", c.label(q))).collect();
        if !cycles.is_empty() {
            writeln!(t, "  exitless cycles: {}", cycles.join(" ")).unwrap();
        }
    }
    let terminal = match chain.terminal {
        Terminal::Exhausted => "exhausted",
        Terminal::Stalled => "stalled",
    };
    writeln!(t, "terminal: {terminal}").unwrap();
    if let Some(rem) = &chain.remainder {
        writeln!(t, "  remaining quotient: {}", list_text(&names(&rem.graph, rem.graph.vertices()))).unwrap();
    }
    let firt_json = json!({
        "acyclic": firt.acyclic,
        "finiteLattice": firt.finite_lattice,
        "chainReachesTop": firt.chain_reaches_top,
        "holds": firt.holds(),
        "gradedChain": firt.chain.iter().map(|p| pair(g, p)).collect::<Vec<_>>(),
    });
    let graded: Vec<String> = firt.chain.iter().map(|p| p.display(g).to_string()).collect();
    writeln!(t, "graded chain: {}", graded.join(" < ")).unwrap();
    writeln!(
        t,
        "finitely many simple modules: {} (acyclic {}, finite lattice {}, chain reaches top {})",
        yes(firt.holds()),
        yes(firt.acyclic),
        yes(firt.finite_lattice),
        yes(firt.chain_reaches_top)
    )
    .unwrap();
    let result = json!({
        "stages": stages,
        "terminal": terminal,
        "remainder": chain.remainder.as_ref().map(|r| names(&r.graph, r.graph.vertices())),
        "classCounts": chain.class_counts(),
        "firt": firt_json,
    });
    (result, t)
}

fn row_stages_json(rg: &RowGraph, chain: &RowChain) -> Vec<Value> {
    chain
        .stages
        .iter()
        .enumerate()
        .map(|(i, s)| {
            json!({
                "index": i,
                "rows": s.rows.iter().map(|&r| rg.name(r)).collect::<Vec<_>>(),
                "consumed": row_names(rg, &s.consumed),
                "factors": s.factors.iter().map(|f| factor(None, f, |r| rg.name(r).to_string())).collect::<Vec<_>>(),
            })
        })
        .collect()
}

fn row_stages_text(rg: &RowGraph, chain: &RowChain) -> String {
    let mut t = String::new();
    for (i, s) in chain.stages.iter().enumerate() {
        let rows: Vec<&str> = s.rows.iter().map(|&r| rg.name(r)).collect();
        let factors: Vec<String> = s.factors.iter().map(factor_text).collect();
        writeln!(t, "stage {i}: rows {} ; factors {}", rows.join(","), factors.join(" ")).unwrap();
    }
    t
}

fn chain_rows(rg: &RowGraph) -> (Value, String) {
    let chain = row_socular_chain(rg);
    let admissible = row_admissible_chain(rg);
    let result = json!({
        "stages": row_stages_json(rg, &chain),
        "classCounts": chain.class_counts(),
        "admissibleChain": admissible.iter().map(|s| json!({"h": row_names(rg, s), "s": []})).collect::<Vec<_>>(),
    });
    let mut t = row_stages_text(rg, &chain);
    let pairs: Vec<String> = admissible.iter().map(|s| format!("({}, {{}})", rg.format_rows(s))).collect();
    writeln!(t, "admissible chain: {}", pairs.join(" < ")).unwrap();
    (result, t)
}

fn census(g: &Graph, field: FieldCard, options: Options) -> (Value, String) {
    let c = classify_rep_type(g, field);
    let (evidence, evidence_text) = match &c.evidence {
        Evidence::SharedCycleVertex(w) => (
            json!({"kind": "shared-cycle-vertex", "witness": shared_vertex(g, w)}),
            format!("cycles [{}] and [{}] share vertex {}", w.first.label(g), w.second.label(g), g.name(w.vertex)),
        ),
        Evidence::StalledChain { stage } => (
            json!({"kind": "stalled-chain", "stage": stage}),
            format!("socular chain stalls at stage {stage}: no line points or exitless cycles remain"),
        ),
        Evidence::CycleWithField { stage, cycle, field } => (
            json!({"kind": "cycle-with-field", "stage": stage, "cycle": report::cycle(g, cycle), "field": field.to_string()}),
            format!("exitless cycle [{}] at stage {stage}, field {field}", cycle.label(g)),
        ),
        Evidence::FiniteBreakdown(counts) => (
            json!({"kind": "finite-breakdown", "perStage": counts}),
            format!("line-point classes per stage {counts:?}"),
        ),
    };
    // Independent count, when the lattice is small enough to build.
    let join_irreducibles = match c.cardinality {
        Cardinality::Finite(_) => ideal_lattice(g, options.max_lattice).ok().map(|l| l.poset.join_irreducibles().len()),
        _ => None,
    };
    let result = json!({
        "cardinality": c.cardinality.to_string(),
        "field": field.to_string(),
        "evidence": evidence,
        "joinIrreducibles": join_irreducibles,
    });
    let mut t = format!("census: {}\nfield: {field}\nevidence: {evidence_text}\n", c.cardinality);
    if let Some(n) = join_irreducibles {
        writeln!(t, "join-irreducible admissible pairs: {n}").unwrap();
    }
    (result, t)
}

fn census_rows(rg: &RowGraph, field: FieldCard) -> (Value, String) {
    let chain = row_socular_chain(rg);
    let counts = chain.class_counts();
    let result = json!({
        "cardinality": chain.census().to_string(),
        "field": field.to_string(),
        "evidence": {"kind": "finite-breakdown", "perStage": counts},
        "joinIrreducibles": row_ideal_lattice(rg).poset.join_irreducibles().len(),
    });
    let t = format!("census: {}\nfield: {field}\nevidence: line-point classes per stage {counts:?}\n", chain.census());
    (result, t)
}

fn chen(g: &Graph, max_period: usize) -> Result<(Value, String), CliError> {
    if max_period == 0 {
        return Err(CliError::Input("--max-period must be at least 1".into()));
    }
    let (classes, completeness) = enumerate_tail_classes(g, max_period);
    let completeness = match completeness {
        Completeness::Total => "total",
        Completeness::Truncated => "truncated",
    };
    let list: Vec<Value> = classes
        .iter()
        .map(|c| {
            json!({
                "period": c.period().iter().map(|&e| g.edge_label(e)).collect::<Vec<_>>(),
                "base": g.name(g.source(c.period()[0])),
                "representative": c.representative().label(g),
            })
        })
        .collect();
    let result = json!({"maxPeriod": max_period, "completeness": completeness, "classes": list});
    let mut t = format!("tail classes: {} ({completeness}, period bound {max_period})\n", classes.len());
    for c in &classes {
        writeln!(t, "  {}", c.representative().label(g)).unwrap();
    }
    Ok((result, t))
}
