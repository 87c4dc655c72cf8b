//! Small fixed structures the recognizer keys on: induced C4s, W4 hubs,
//! 4-suns, claws and holes of length at least five.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::graph::{Graph, Vertex, VertexSet};

/// An induced 4-cycle `a-b-c-d-a` in canonical form: `a` is the smallest
/// vertex and `b < d`, so each cycle has exactly one representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct InducedC4 {
    pub vertices: [Vertex; 4],
}

impl InducedC4 {
    /// Canonicalizes a cycle given in any rotation or direction.
    pub fn canonical(cycle: [Vertex; 4]) -> Self {
        let start = (0..4).min_by_key(|&i| cycle[i]).unwrap();
        let a = cycle[start];
        let next = cycle[(start + 1) % 4];
        let prev = cycle[(start + 3) % 4];
        let c = cycle[(start + 2) % 4];
        let (b, d) = if next < prev { (next, prev) } else { (prev, next) };
        InducedC4 {
            vertices: [a, b, c, d],
        }
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from(self.vertices)
    }

    /// The two pairs of opposite (non-adjacent) cycle vertices.
    pub fn diagonals(&self) -> [(Vertex, Vertex); 2] {
        let [a, b, c, d] = self.vertices;
        [(a, c), (b, d)]
    }
}

/// An induced wheel: a C4 plus a vertex adjacent to all four of its vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct W4Witness {
    pub cycle: InducedC4,
    pub universal: Vertex,
}

/// Every induced C4, sorted by canonical form.
pub fn enumerate_induced_c4(g: &Graph) -> Vec<InducedC4> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        let ns: Vec<Vertex> = g.neighbors(a).iter().copied().filter(|&v| v > a).collect();
        for (i, &b) in ns.iter().enumerate() {
            for &d in &ns[i + 1..] {
                if g.adjacent(b, d) {
                    continue;
                }
                let mut common = g.neighbor_bits(b).clone();
                common.intersect_with(g.neighbor_bits(d));
                for c in common.ones() {
                    if c > a && !g.adjacent(a, c) {
                        out.push(InducedC4 {
                            vertices: [a, b, c, d],
                        });
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Union of the vertices of all induced C4s.
pub fn c4_vertex_union(g: &Graph) -> VertexSet {
    enumerate_induced_c4(g)
        .iter()
        .flat_map(|c| c.vertices)
        .collect()
}

/// Hubs of induced W4s built on the given cycles, with one witness per
/// (cycle, hub) pair.
pub fn w4_universals(g: &Graph, cycles: &[InducedC4]) -> (VertexSet, Vec<W4Witness>) {
    let mut hubs = FixedBitSet::with_capacity(g.n());
    let mut witnesses = Vec::new();
    for &cycle in cycles {
        let [a, b, c, d] = cycle.vertices;
        let mut common = g.neighbor_bits(a).clone();
        for v in [b, c, d] {
            common.intersect_with(g.neighbor_bits(v));
        }
        for u in common.ones() {
            hubs.insert(u);
            witnesses.push(W4Witness {
                cycle,
                universal: u,
            });
        }
    }
    witnesses.sort_unstable();
    (VertexSet::from_bitset(&hubs), witnesses)
}

/// Searches for an induced 4-sun: a K4 `w0..w3` and pairwise non-adjacent
/// `s0..s3` with `s_k` adjacent to exactly `w_k` and `w_{k+1}` inside the K4.
///
/// The witness lists the K4 in cyclic order followed by the four satellites.
pub fn contains_4sun(g: &Graph) -> Option<[Vertex; 8]> {
    let n = g.n();
    for a in 0..n {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > b && g.adjacent(a, c)) {
                for &d in g.neighbors(c).iter().filter(|&&d| d > c) {
                    if !(g.adjacent(a, d) && g.adjacent(b, d)) {
                        continue;
                    }
                    // the three Hamiltonian cycles of K4{a,b,c,d}
                    for ring in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                        if let Some(sats) = sun_satellites(g, ring) {
                            let [w0, w1, w2, w3] = ring;
                            let [s0, s1, s2, s3] = sats;
                            return Some([w0, w1, w2, w3, s0, s1, s2, s3]);
                        }
                    }
                }
            }
        }
    }
    None
}

fn sun_satellites(g: &Graph, ring: [Vertex; 4]) -> Option<[Vertex; 4]> {
    let candidates: Vec<Vec<Vertex>> = (0..4)
        .map(|k| {
            let (x, y) = (ring[k], ring[(k + 1) % 4]);
            let others = [ring[(k + 2) % 4], ring[(k + 3) % 4]];
            g.neighbors(x)
                .iter()
                .copied()
                .filter(|&s| {
                    !ring.contains(&s)
                        && g.adjacent(s, y)
                        && !g.adjacent(s, others[0])
                        && !g.adjacent(s, others[1])
                })
                .collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut chosen = [0; 4];
    fn pick(g: &Graph, cands: &[Vec<Vertex>], k: usize, chosen: &mut [Vertex; 4]) -> bool {
        if k == 4 {
            return true;
        }
        for &s in &cands[k] {
            if chosen[..k].iter().all(|&t| !g.adjacent(s, t)) {
                chosen[k] = s;
                if pick(g, cands, k + 1, chosen) {
                    return true;
                }
            }
        }
        false
    }
    pick(g, &candidates, 0, &mut chosen).then_some(chosen)
}

/// Finds an induced claw `K_{1,3}`, returned as `(center, [leaves])`.
pub fn contains_claw_center(g: &Graph) -> Option<(Vertex, [Vertex; 3])> {
    for v in 0..g.n() {
        let ns = g.neighbors(v);
        for (i, &x) in ns.iter().enumerate() {
            for (j, &y) in ns.iter().enumerate().skip(i + 1) {
                if g.adjacent(x, y) {
                    continue;
                }
                for &z in &ns[j + 1..] {
                    if !g.adjacent(x, z) && !g.adjacent(y, z) {
                        return Some((v, [x, y, z]));
                    }
                }
            }
        }
    }
    None
}

/// Finds a chordless cycle of length at least five.
///
/// For every edge `bc`, any such hole through `bc` continues as `a-b-c-d`
/// with `a` and `d` joined by a path that avoids all other neighbors of `b`
/// and `c`. Components of `G - (N(b) ∪ N(c))` decide that path's existence;
/// a shortest one closes the hole.
pub fn has_hole_ge5(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.n();
    let mut label = vec![usize::MAX; n];
    for (b, c) in g.edges() {
        let mut blocked = g.neighbor_bits(b).clone();
        blocked.union_with(g.neighbor_bits(c));

        let ends_a: Vec<Vertex> = g
            .neighbors(b)
            .iter()
            .copied()
            .filter(|&a| a != c && !g.adjacent(a, c))
            .collect();
        let ends_d: Vec<Vertex> = g
            .neighbors(c)
            .iter()
            .copied()
            .filter(|&d| d != b && !g.adjacent(d, b))
            .collect();
        if ends_a.is_empty() || ends_d.is_empty() {
            continue;
        }

        label.iter_mut().for_each(|l| *l = usize::MAX);
        let mut next = 0;
        for s in 0..n {
            if blocked.contains(s) || label[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            label[s] = next;
            while let Some(u) = stack.pop() {
                for &w in g.neighbors(u) {
                    if !blocked.contains(w) && label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }

        let touches = |x: Vertex| -> FixedBitSet {
            let mut set = FixedBitSet::with_capacity(next);
            for &w in g.neighbors(x) {
                if !blocked.contains(w) {
                    set.insert(label[w]);
                }
            }
            set
        };
        let d_touch: Vec<FixedBitSet> = ends_d.iter().map(|&d| touches(d)).collect();
        for &a in &ends_a {
            let at = touches(a);
            for (k, &d) in ends_d.iter().enumerate() {
                if g.adjacent(a, d) || at.is_disjoint(&d_touch[k]) {
                    continue;
                }
                let path = g
                    .shortest_path_within(a, d, |v| !blocked.contains(v))
                    .expect("shared component implies a path");
                let mut hole = vec![b, c];
                hole.extend(path.iter().rev().copied());
                hole.pop(); // `a` moves to the front
                hole.insert(0, a);
                return Some(rotate_hole(hole));
            }
        }
    }
    None
}

/// Rotates a cycle so its smallest vertex is first.
fn rotate_hole(mut hole: Vec<Vertex>) -> Vec<Vertex> {
    if let Some(pos) = hole.iter().enumerate().min_by_key(|(_, &v)| v).map(|(i, _)| i) {
        hole.rotate_left(pos);
    }
    hole
}

/// Checks that `cycle` is a chordless cycle of `g` (length at least 4).
pub fn is_hole(g: &Graph, cycle: &[Vertex]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    let set: VertexSet = cycle.iter().copied().collect();
    if set.len() != k {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.adjacent(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn c4_enumeration_examples() {
        assert_eq!(
            enumerate_induced_c4(&cycle(4)),
            vec![InducedC4 {
                vertices: [0, 1, 2, 3]
            }]
        );
        assert!(enumerate_induced_c4(&complete(4)).is_empty());
        assert!(enumerate_induced_c4(&cycle(6)).is_empty());
    }

    #[test]
    fn canonical_form_is_rotation_invariant() {
        let expect = InducedC4 {
            vertices: [1, 3, 7, 5],
        };
        for cyc in [[1, 3, 7, 5], [3, 7, 5, 1], [5, 7, 3, 1], [7, 5, 1, 3]] {
            assert_eq!(InducedC4::canonical(cyc), expect);
        }
    }

    #[test]
    fn c4_union_examples() {
        assert!(c4_vertex_union(&path(5)).is_empty());
        assert_eq!(c4_vertex_union(&cycle(4)), VertexSet::from([0, 1, 2, 3]));
        let pendant =
            Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)]).unwrap();
        assert_eq!(c4_vertex_union(&pendant), VertexSet::from([0, 1, 2, 3]));
    }

    #[test]
    fn w4_hub_examples() {
        let w = wheel4();
        let (hubs, wit) = w4_universals(&w, &enumerate_induced_c4(&w));
        assert_eq!(hubs, VertexSet::from([4]));
        assert_eq!(wit.len(), 1);

        let c = cycle(4);
        assert!(w4_universals(&c, &enumerate_induced_c4(&c)).0.is_empty());

        // two C4s joined by a perfect matching: the cube graph Q3
        let mut edges = vec![];
        for k in 0..4 {
            edges.push((k, (k + 1) % 4));
            edges.push((4 + k, 4 + (k + 1) % 4));
            edges.push((k, 4 + k));
        }
        let cube = Graph::from_edge_list(8, &edges).unwrap();
        let cycles = enumerate_induced_c4(&cube);
        assert_eq!(cycles.len(), 6);
        assert!(w4_universals(&cube, &cycles).0.is_empty());
    }

    #[test]
    fn four_sun_examples() {
        let w = contains_4sun(&four_sun()).expect("4-sun contains itself");
        let ring: VertexSet = w[..4].iter().copied().collect();
        assert_eq!(ring, VertexSet::from([0, 1, 2, 3]));
        assert!(contains_4sun(&complete(4)).is_none());
        assert!(contains_4sun(&wheel4()).is_none());
    }

    #[test]
    fn claw_examples() {
        assert_eq!(contains_claw_center(&star(3)), Some((0, [1, 2, 3])));
        assert!(contains_claw_center(&path(4)).is_none());
        assert!(contains_claw_center(&cycle(6)).is_none());
    }

    #[test]
    fn long_hole_examples() {
        let h = has_hole_ge5(&cycle(5)).unwrap();
        assert_eq!(h.len(), 5);
        assert!(is_hole(&cycle(5), &h));
        assert!(has_hole_ge5(&cycle(4)).is_none());
        // C6 with chord 0-3 splits into two C4s
        let mut edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.push((0, 3));
        let split = Graph::from_edge_list(6, &edges).unwrap();
        assert!(has_hole_ge5(&split).is_none());
        let h = has_hole_ge5(&cycle(9)).unwrap();
        assert_eq!(h, (0..9).collect::<Vec<_>>());
    }
}
