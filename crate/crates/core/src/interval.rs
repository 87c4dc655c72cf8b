//! Chordal, interval and unit interval recognition with clique-path
//! certificates.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::consecutive::{pq_tree, BinaryMatrix, PqNode};
use crate::error::IntervalError;
use crate::graph::{Clique, Graph, Vertex, VertexSet};
use crate::structures::contains_claw_center;

/// A perfect elimination ordering: every vertex's later neighbors form a clique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeoCertificate {
    pub order: Vec<Vertex>,
}

impl PeoCertificate {
    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.n();
        if self.order.len() != n {
            return false;
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return false;
            }
            pos[v] = i;
        }
        self.order.iter().all(|&v| {
            let later: VertexSet = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| pos[u] > pos[v])
                .collect();
            g.is_clique(&later)
        })
    }

    /// Vertex positions in the ordering.
    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// Maximal cliques in an order where each vertex's cliques are consecutive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliquePath {
    pub cliques: Vec<Clique>,
}

impl CliquePath {
    /// Checks maximality, coverage and per-vertex consecutiveness.
    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.n();
        let mut covered = vec![false; n];
        for q in &self.cliques {
            if !g.is_clique(q) || q.iter().any(|v| v >= n) {
                return false;
            }
            let maximal = (0..n).all(|v| q.contains(v) || !q.iter().all(|u| g.adjacent(u, v)));
            if !maximal {
                return false;
            }
            q.iter().for_each(|v| covered[v] = true);
        }
        if covered.contains(&false) {
            return false;
        }
        (0..n).all(|v| {
            let idx: Vec<usize> = (0..self.cliques.len())
                .filter(|&k| self.cliques[k].contains(v))
                .collect();
            idx.windows(2).all(|w| w[1] == w[0] + 1)
        })
    }

    pub fn reversed(&self) -> CliquePath {
        CliquePath {
            cliques: self.cliques.iter().rev().cloned().collect(),
        }
    }
}

/// Lexicographic breadth-first search by partition refinement.
pub fn lex_bfs(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut classes: Vec<Vec<Vertex>> = if n > 0 { vec![(0..n).collect()] } else { vec![] };
    let mut order = Vec::with_capacity(n);
    while let Some(first) = classes.first_mut() {
        let v = first.remove(0);
        if first.is_empty() {
            classes.remove(0);
        }
        order.push(v);
        let nb = g.neighbor_bits(v);
        let mut refined = Vec::with_capacity(classes.len() * 2);
        for class in classes.drain(..) {
            let (inside, outside): (Vec<Vertex>, Vec<Vertex>) =
                class.into_iter().partition(|&u| nb.contains(u));
            if !inside.is_empty() {
                refined.push(inside);
            }
            if !outside.is_empty() {
                refined.push(outside);
            }
        }
        classes = refined;
    }
    order
}

/// Chordality test. Returns a perfect elimination ordering, or a chordless
/// cycle of length at least four.
pub fn is_chordal(g: &Graph) -> Result<PeoCertificate, Vec<Vertex>> {
    let mut order = lex_bfs(g);
    order.reverse();
    let peo = PeoCertificate { order };
    if peo.verify(g) {
        Ok(peo)
    } else {
        Err(find_hole(g).expect("a graph without a perfect elimination ordering has a hole"))
    }
}

/// Any chordless cycle of length at least four, through the first vertex
/// that has two non-adjacent neighbors joined outside its closed neighborhood.
pub fn find_hole(g: &Graph) -> Option<Vec<Vertex>> {
    for v in 0..g.n() {
        let mut blocked = g.neighbor_bits(v).clone();
        blocked.insert(v);
        let ns = g.neighbors(v);
        for (i, &x) in ns.iter().enumerate() {
            for &y in &ns[i + 1..] {
                if g.adjacent(x, y) {
                    continue;
                }
                if let Some(path) = g.shortest_path_within(x, y, |u| !blocked.contains(u)) {
                    let mut hole = vec![v];
                    hole.extend(path);
                    return Some(hole);
                }
            }
        }
    }
    None
}

/// All maximal cliques of a chordal graph from a perfect elimination
/// ordering; at most `n` of them, sorted.
pub fn maximal_cliques_chordal(
    g: &Graph,
    peo: &PeoCertificate,
) -> Result<Vec<Clique>, IntervalError> {
    if !peo.verify(g) {
        return Err(IntervalError::InvalidCertificate);
    }
    Ok(cliques_from_peo(g, peo))
}

fn cliques_from_peo(g: &Graph, peo: &PeoCertificate) -> Vec<Clique> {
    let pos = peo.positions();
    let n = g.n();
    let candidates: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert(v);
            for &u in g.neighbors(v) {
                if pos[u] > pos[v] {
                    s.insert(u);
                }
            }
            s
        })
        .collect();
    let mut out: Vec<Clique> = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        let dominated = candidates
            .iter()
            .enumerate()
            .any(|(j, d)| j != i && c.is_subset(d) && (c != d || j < i));
        if !dominated {
            out.push(VertexSet::from_bitset(c));
        }
    }
    out.sort();
    out
}

/// Maximal cliques plus the PQ-tree of their valid consecutive orders.
struct IntervalModel {
    cliques: Vec<Clique>,
    tree: PqNode,
}

fn interval_model(g: &Graph) -> Option<IntervalModel> {
    let peo = is_chordal(g).ok()?;
    let cliques = cliques_from_peo(g, &peo);
    let m = BinaryMatrix::clique_matrix(g.n(), &cliques);
    let tree = pq_tree(&m)?;
    Some(IntervalModel { cliques, tree })
}

/// Interval graph test via the consecutive-ones property of the clique matrix.
pub fn is_interval(g: &Graph) -> Option<CliquePath> {
    let model = interval_model(g)?;
    let cliques = model
        .tree
        .frontier()
        .into_iter()
        .map(|k| model.cliques[k].clone())
        .collect();
    Some(CliquePath { cliques })
}

/// Unit interval test: interval and claw-free.
pub fn is_unit_interval(g: &Graph) -> Option<CliquePath> {
    if contains_claw_center(g).is_some() {
        return None;
    }
    is_interval(g)
}

/// Decides whether the union of `blocks` induces a unit interval graph with
/// a proper vertex ordering that lists every vertex of block `i` before
/// every vertex of block `j` whenever `i < j`.
///
/// A proper ordering is one where `u < v < w` and `uw` an edge imply `uv`
/// and `vw` are edges; these are exactly the left-to-right orders of unit
/// interval models. Empty blocks impose nothing. Proper orderings are closed
/// under reversal, so reversing the block list never changes the answer.
/// The condition is hereditary: it survives deleting vertices.
pub fn uig_respects_block_order(g: &Graph, blocks: &[VertexSet]) -> Result<bool, IntervalError> {
    let mut label = vec![usize::MAX; g.n()];
    for (b, block) in blocks.iter().enumerate() {
        for v in block.iter() {
            if v >= g.n() {
                return Err(crate::error::GraphError::VertexOutOfRange { v, n: g.n() }.into());
            }
            if label[v] != usize::MAX {
                return Err(IntervalError::BlocksNotDisjoint(v));
            }
            label[v] = b;
        }
    }
    let support: VertexSet = blocks.iter().flat_map(|b| b.iter()).collect();
    let sub = g.induced_subgraph(&support)?;
    if contains_claw_center(&sub.graph).is_some() {
        return Ok(false);
    }
    let Some(model) = interval_model(&sub.graph) else {
        return Ok(false);
    };

    // Vertices spanning the same run of cliques are twins; within one
    // component the runs come in the unique order of its twin classes, up
    // to reversal.
    let frontier = model.tree.frontier();
    let mut span = vec![(usize::MAX, 0); sub.graph.n()];
    for (pos, &k) in frontier.iter().enumerate() {
        for v in model.cliques[k].iter() {
            span[v].0 = span[v].0.min(pos);
            span[v].1 = pos;
        }
    }
    let mut ranges = Vec::new();
    for comp in sub.graph.connected_components() {
        let mut classes: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for v in comp.iter() {
            let b = label[sub.original(v)];
            let entry = classes.entry(span[v]).or_insert((b, b));
            entry.0 = entry.0.min(b);
            entry.1 = entry.1.max(b);
        }
        let seq: Vec<(usize, usize)> = classes.into_values().collect();
        let forward = seq.windows(2).all(|w| w[0].1 <= w[1].0);
        let backward = seq.windows(2).all(|w| w[0].0 >= w[1].1);
        if !forward && !backward {
            return Ok(false);
        }
        let lo = seq.iter().map(|c| c.0).min().unwrap();
        let hi = seq.iter().map(|c| c.1).max().unwrap();
        ranges.push((lo, hi));
    }
    // components are contiguous in any proper ordering; their label ranges
    // must line up end to end
    ranges.sort_unstable();
    Ok(ranges.windows(2).all(|w| w[0].1 <= w[1].0))
}
