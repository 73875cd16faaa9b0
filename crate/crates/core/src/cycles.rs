//! Strongly connected components, simple cycles and walk counts.

use std::collections::BTreeSet;

use crate::graph::{BundleIx, Cycle, Edge, Graph, Vertex, VertexSet};
use crate::xnat::XNat;

/// Number of copies of an `ω`-bundle that cycle enumeration instantiates.
/// Two copies are enough to witness every "two distinct cycles" phenomenon.
pub const OMEGA_WINDOW: u64 = 2;

/// Strongly connected components in topological order of the condensation
/// (a component precedes every component it can reach). Each component is
/// sorted; the order is a function of the graph alone.
pub fn scc_decomposition(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comps: Vec<Vec<Vertex>> = Vec::new();
    let mut next = 0usize;
    let succ: Vec<Vec<usize>> = (0..n).map(|v| g.successors(Vertex(v)).map(|w| w.0).collect()).collect();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // Explicit DFS frames: (vertex, next successor position).
        let mut frames: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            if *pos < succ[v].len() {
                let w = succ[v][*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(Vertex(w));
                        if w == v {
                            break;
                        }
                    }
                    comp.sort();
                    comps.push(comp);
                }
            }
        }
    }
    // Tarjan emits sinks of the condensation first.
    comps.reverse();
    comps
}

/// Component id of every vertex, indexed like `scc_decomposition`.
pub(crate) fn component_ids(g: &Graph) -> (Vec<Vec<Vertex>>, Vec<usize>) {
    let comps = scc_decomposition(g);
    let mut id = vec![0; g.vertex_count()];
    for (i, c) in comps.iter().enumerate() {
        for v in c {
            id[v.0] = i;
        }
    }
    (comps, id)
}

/// Vertices lying on some closed path: members of a component with more
/// than one vertex or with a loop.
pub fn cyclic_vertices(g: &Graph) -> VertexSet {
    let (comps, id) = component_ids(g);
    let mut out = VertexSet::new();
    for (i, c) in comps.iter().enumerate() {
        let nontrivial = c.len() > 1 || g.successors(c[0]).any(|w| id[w.0] == i);
        if nontrivial {
            out.extend(c.iter().copied());
        }
    }
    out
}

pub fn is_acyclic(g: &Graph) -> bool {
    cyclic_vertices(g).is_empty()
}

/// Every simple cycle, each in canonical rotation, sorted.
///
/// Parallel copies of a finite bundle give distinct cycles. An `ω`-bundle
/// contributes its first [`OMEGA_WINDOW`] copies only; the second field of the
/// result is `false` when that truncation actually dropped cycles.
pub fn enumerate_simple_cycles(g: &Graph) -> (Vec<Cycle>, bool) {
    enumerate_simple_cycles_windowed(g, OMEGA_WINDOW)
}

pub fn enumerate_simple_cycles_windowed(g: &Graph, omega_copies: u64) -> (Vec<Cycle>, bool) {
    let mut complete = true;
    let mut out = BTreeSet::new();
    for shape in bundle_cycles(g) {
        if shape.iter().any(|&b| g.bundle(b).multiplicity == XNat::Omega) {
            complete = false;
        }
        let copies: Vec<u64> = shape
            .iter()
            .map(|&b| match g.bundle(b).multiplicity {
                XNat::Fin(n) => n,
                XNat::Omega => omega_copies,
            })
            .collect();
        for_each_copy_choice(&copies, |choice| {
            let edges = shape.iter().zip(choice).map(|(&bundle, &copy)| Edge { bundle, copy }).collect();
            out.insert(Cycle::canonical_unchecked(edges));
        });
    }
    (out.into_iter().collect(), complete)
}

fn for_each_copy_choice(copies: &[u64], mut f: impl FnMut(&[u64])) {
    if copies.contains(&0) {
        return;
    }
    let mut choice = vec![0u64; copies.len()];
    loop {
        f(&choice);
        let mut i = 0;
        loop {
            if i == choice.len() {
                return;
            }
            choice[i] += 1;
            if choice[i] < copies[i] {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Simple cycles as bundle sequences, each reported once starting at its
/// smallest vertex.
fn bundle_cycles(g: &Graph) -> Vec<Vec<BundleIx>> {
    let (_, comp) = component_ids(g);
    let mut out = Vec::new();
    for s in g.vertices() {
        let mut on_path = vec![false; g.vertex_count()];
        on_path[s.0] = true;
        let mut path = Vec::new();
        extend_cycles(g, s, s, &comp, &mut on_path, &mut path, &mut out);
    }
    out
}

fn extend_cycles(
    g: &Graph,
    start: Vertex,
    at: Vertex,
    comp: &[usize],
    on_path: &mut [bool],
    path: &mut Vec<BundleIx>,
    out: &mut Vec<Vec<BundleIx>>,
) {
    for &b in g.out_bundles(at) {
        let w = g.bundle(b).range;
        if w == start {
            path.push(b);
            out.push(path.clone());
            path.pop();
        } else if w > start && !on_path[w.0] && comp[w.0] == comp[start.0] {
            on_path[w.0] = true;
            path.push(b);
            extend_cycles(g, start, w, comp, on_path, path, out);
            path.pop();
            on_path[w.0] = false;
        }
    }
}

/// For every vertex `x`, the number of walks from `x` that end on their first
/// arrival at `target`, using only edges accepted by `keep`. The target
/// counts its own trivial walk. `ω` whenever a walk can pick up a cycle.
///
/// `None` if a finite count overflows `u64`.
pub(crate) fn walks_into(g: &Graph, target: Vertex, keep: impl Fn(BundleIx) -> bool) -> Option<Vec<XNat>> {
    let n = g.vertex_count();
    // Edges leaving the target are irrelevant: walks stop there.
    let usable = |b: BundleIx| keep(b) && g.bundle(b).source != target;
    let mut reaches = vec![false; n];
    reaches[target.0] = true;
    let mut queue = vec![target];
    while let Some(v) = queue.pop() {
        for &b in g.in_bundles(v) {
            let u = g.bundle(b).source;
            if usable(b) && !reaches[u.0] {
                reaches[u.0] = true;
                queue.push(u);
            }
        }
    }
    // Depth-first evaluation over the co-reachable part; a back edge means a
    // cycle that can be pumped, which makes every walk count through it ω.
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut mark = vec![Mark::New; n];
    let mut count = vec![XNat::ZERO; n];
    count[target.0] = XNat::ONE;
    mark[target.0] = Mark::Done;
    for root in 0..n {
        if !reaches[root] || mark[root] != Mark::New {
            continue;
        }
        let mut frames: Vec<(usize, usize)> = vec![(root, 0)];
        mark[root] = Mark::Active;
        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            let bundles = g.out_bundles(Vertex(v));
            if *pos < bundles.len() {
                let b = bundles[*pos];
                *pos += 1;
                let w = g.bundle(b).range.0;
                if !usable(b) || !reaches[w] {
                    continue;
                }
                match mark[w] {
                    Mark::New => {
                        mark[w] = Mark::Active;
                        frames.push((w, 0));
                    }
                    Mark::Active => count[v] = XNat::Omega,
                    Mark::Done => {}
                }
            } else {
                frames.pop();
                let mut total = count[v];
                for &b in bundles {
                    let w = g.bundle(b).range.0;
                    if usable(b) && reaches[w] {
                        total = total.checked_add(g.bundle(b).multiplicity.checked_mul(count[w])?)?;
                    }
                }
                count[v] = total;
                mark[v] = Mark::Done;
                if let Some(&(parent, _)) = frames.last() {
                    if count[v] == XNat::Omega {
                        count[parent] = XNat::Omega;
                    }
                }
            }
        }
    }
    // A vertex on a pumpable cycle passes ω down to everything reaching it;
    // the DFS above already propagated along tree edges, finish the job for
    // cross edges into ω-vertices.
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if reaches[v] && count[v] != XNat::Omega && v != target.0 {
                let omega = g
                    .out_bundles(Vertex(v))
                    .iter()
                    .any(|&b| usable(b) && reaches[g.bundle(b).range.0] && count[g.bundle(b).range.0] == XNat::Omega);
                if omega {
                    count[v] = XNat::Omega;
                    changed = true;
                }
            }
        }
    }
    Some(count)
}
