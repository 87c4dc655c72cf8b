//! Cross-module properties: brute-force agreement of the structure finders,
//! geometric facts about generated instances, and recognizer invariants.

use apud_core::chordal::{recognize_chordal_apud11, ChordalVerdict};
use apud_core::geometry::{random_apud11, verify_embedding, Embedding, Ray};
use apud_core::graph::{Graph, Vertex, VertexSet};
use apud_core::interval::{is_chordal, is_interval, is_unit_interval};
use apud_core::recognizer::{explain, recognize_apud11, ReportFormat};
use apud_core::structures::{
    contains_4sun, contains_claw_center, enumerate_induced_c4, has_hole_ge5, is_hole,
    w4_universals, InducedC4,
};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut it = bits.into_iter();
            Graph::from_predicate(n, |_, _| it.next().unwrap())
        })
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<Vertex>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn brute_c4(g: &Graph) -> Vec<InducedC4> {
    let mut out = Vec::new();
    for s in subsets(g.n(), 4) {
        let [a, b, c, d] = [s[0], s[1], s[2], s[3]];
        for cyc in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
            let e = |i: usize, j: usize| g.adjacent(cyc[i], cyc[j]);
            if e(0, 1) && e(1, 2) && e(2, 3) && e(3, 0) && !e(0, 2) && !e(1, 3) {
                out.push(InducedC4::canonical(cyc));
            }
        }
    }
    out.sort();
    out
}

/// Induced subgraph on `s` is a cycle.
fn induces_cycle(g: &Graph, s: &[Vertex]) -> bool {
    let sub = g.induced_subgraph(&s.iter().copied().collect()).unwrap();
    sub.graph.is_connected() && (0..s.len()).all(|v| sub.graph.degree(v) == 2)
}

fn brute_has_long_hole(g: &Graph) -> bool {
    (5..=g.n()).any(|k| subsets(g.n(), k).iter().any(|s| induces_cycle(g, s)))
}

fn brute_claw(g: &Graph) -> bool {
    (0..g.n()).any(|c| {
        let nb = g.neighbors(c);
        subsets(nb.len(), 3).iter().any(|t| {
            let [x, y, z] = [nb[t[0]], nb[t[1]], nb[t[2]]];
            !g.adjacent(x, y) && !g.adjacent(y, z) && !g.adjacent(x, z)
        })
    })
}

/// A 4-clique `k0 k1 k2 k3` with tips `t_i` adjacent to exactly `k_i`,
/// `k_{i+1}` of the clique and to no other tip.
fn brute_4sun(g: &Graph) -> bool {
    for k in subsets(g.n(), 4) {
        if !g.is_clique(&k.iter().copied().collect()) {
            continue;
        }
        for ring in [[k[0], k[1], k[2], k[3]], [k[0], k[1], k[3], k[2]], [k[0], k[2], k[1], k[3]]] {
            let cands: Vec<Vec<Vertex>> = (0..4)
                .map(|i| {
                    (0..g.n())
                        .filter(|&t| !k.contains(&t))
                        .filter(|&t| (0..4).all(|j| g.adjacent(t, ring[j]) == (j == i || j == (i + 1) % 4)))
                        .collect()
                })
                .collect();
            for &a in &cands[0] {
                for &b in &cands[1] {
                    for &c in &cands[2] {
                        for &d in &cands[3] {
                            let t = [a, b, c, d];
                            if (0..4).all(|i| (i + 1..4).all(|j| t[i] != t[j] && !g.adjacent(t[i], t[j]))) {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn structure_finders_match_brute_force(g in arb_graph(8)) {
        prop_assert_eq!(enumerate_induced_c4(&g), brute_c4(&g));
        prop_assert_eq!(contains_4sun(&g).is_some(), brute_4sun(&g));
        prop_assert_eq!(contains_claw_center(&g).is_some(), brute_claw(&g));
        let hole = has_hole_ge5(&g);
        prop_assert_eq!(hole.is_some(), brute_has_long_hole(&g));
        if let Some(h) = hole {
            prop_assert!(h.len() >= 5 && is_hole(&g, &h));
        }
        if has_hole_ge5(&g).is_none() && is_chordal(&g).is_err() {
            prop_assert!(!enumerate_induced_c4(&g).is_empty());
        }
    }

    #[test]
    fn graph_core_basics(g in arb_graph(9)) {
        let all = g.induced_subgraph(&g.vertices()).unwrap();
        prop_assert_eq!(all.graph.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        let comps = g.connected_components();
        let covered: usize = comps.iter().map(VertexSet::len).sum();
        let union: VertexSet = comps.iter().flat_map(|c| c.iter()).collect();
        prop_assert_eq!(covered, g.n());
        prop_assert_eq!(union.len(), g.n());
        for s in subsets(g.n(), 3.min(g.n())) {
            let s: VertexSet = s.into_iter().collect();
            let m = g.induced_subgraph(&s).unwrap().graph.edge_count();
            prop_assert_eq!(g.is_clique(&s), m == s.len() * (s.len().saturating_sub(1)) / 2);
        }
    }

    #[test]
    fn interval_class_inclusions(g in arb_graph(8)) {
        if is_interval(&g).is_some() {
            prop_assert!(is_chordal(&g).is_ok());
        }
        if let Some(path) = is_unit_interval(&g) {
            prop_assert!(is_interval(&g).is_some());
            prop_assert!(path.reversed().verify(&g));
            if g.is_connected() {
                // a maximal clique splits a connected unit interval graph in at most two
                for q in &path.cliques {
                    let rest = g.without(q).unwrap();
                    let comps = rest.graph.connected_components();
                    prop_assert!(comps.len() <= 2);
                    for c in comps {
                        let piece = rest.graph.induced_subgraph(&c).unwrap();
                        prop_assert!(is_unit_interval(&piece.graph).is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn recognizer_is_invariant_under_relabeling(seed in 1u64..400, shift in 1usize..50) {
        let n = 5 + (seed as usize * 7) % 30;
        let (_, g) = random_apud11(n, &BigRational::from_integer(4.into()), seed);
        let relabel = |v: Vertex| (v + shift) % n;
        let h = Graph::from_edge_list(n, &g.edges().map(|(u, v)| (relabel(u), relabel(v))).collect::<Vec<_>>()).unwrap();
        prop_assert!(recognize_apud11(&h).accepted);
        if is_chordal(&g).is_ok() && g.is_connected() {
            prop_assert!(recognize_chordal_apud11(&h).unwrap().accepted());
        }
    }
}

fn offset(e: &Embedding, v: Vertex) -> &BigRational {
    &e.placements[v].offset
}

fn generated(count: u64) -> impl Iterator<Item = (u64, Embedding, Graph)> {
    (1..=count).map(|seed| {
        let n = 5 + (seed as usize * 7) % 56;
        let extent = [2, 4, 8][(seed % 3) as usize];
        let (e, g) = random_apud11(n, &BigRational::from_integer(extent.into()), seed);
        (seed, e, g)
    })
}

/// Whether the center of `v` lies in the part of the box spanned by the
/// cycle that none of the four cycle disks covers.
fn centered_in_gamma(e: &Embedding, cycle: &[Vertex; 4], v: Vertex) -> bool {
    let (x, y) = e.placements[v].center();
    let bound = |ray: Ray| -> &BigRational {
        let w = cycle.iter().find(|&&w| e.placements[w].ray == ray).unwrap();
        offset(e, *w)
    };
    let abs = |r: &BigRational| if r < &BigRational::zero() { -r.clone() } else { r.clone() };
    let inside_box = abs(&x) <= *bound(if x >= BigRational::zero() { Ray::XPlus } else { Ray::XMinus })
        && abs(&y) <= *bound(if y >= BigRational::zero() { Ray::YPlus } else { Ray::YMinus });
    let one = BigRational::from_integer(1.into());
    let covered = cycle.iter().any(|&w| {
        let (cx, cy) = e.placements[w].center();
        let (dx, dy) = (&x - cx, &y - cy);
        &dx * &dx + &dy * &dy <= one
    });
    inside_box && !covered
}

#[test]
fn generated_instances_respect_the_cycle_geometry() {
    let two = BigRational::from_integer(2.into());
    for (seed, e, g) in generated(300) {
        assert!(verify_embedding(&e, &g).unwrap());
        let cycles = enumerate_induced_c4(&g);
        for c in &cycles {
            let [a, b, cc, d] = c.vertices;
            let rays: VertexSet = c.vertices.iter().map(|&v| e.placements[v].ray.index()).collect();
            assert_eq!(rays.len(), 4, "seed {seed}: cycle {c:?} shares a ray");
            assert_eq!(e.placements[a].ray.opposite(), e.placements[cc].ray, "seed {seed}");
            assert_eq!(e.placements[b].ray.opposite(), e.placements[d].ray, "seed {seed}");
            assert!(c.vertices.iter().all(|&v| *offset(&e, v) <= two), "seed {seed}");

            let f: VertexSet = (0..g.n()).filter(|&v| centered_in_gamma(&e, &c.vertices, v)).collect();
            assert!(g.is_clique(&f), "seed {seed}: region of {c:?} holds non-adjacent centers");
        }
        // hubs of one cycle are pairwise adjacent
        let (_, witnesses) = w4_universals(&g, &cycles);
        for c in &cycles {
            let hubs: VertexSet = witnesses
                .iter()
                .filter(|w| w.cycle == *c)
                .map(|w| w.universal)
                .collect();
            assert!(g.is_clique(&hubs), "seed {seed}");
        }
    }
}

/// Four vertices, one per ray, inducing K4 minus an edge.
fn has_diamond_one_per_ray(e: &Embedding, g: &Graph) -> bool {
    let rays: Vec<Vec<Vertex>> = Ray::ALL.iter().map(|&r| e.on_ray(r)).collect();
    for &a in &rays[0] {
        for &b in &rays[1] {
            for &c in &rays[2] {
                for &d in &rays[3] {
                    let q = [a, b, c, d];
                    let m = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| g.adjacent(q[i], q[j]))
                        .count();
                    if m == 5 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[test]
fn wheels_come_with_a_diamond_across_the_rays() {
    let mut checked = 0;
    for (seed, e, g) in generated(300) {
        if is_chordal(&g).is_ok() || !recognize_apud11(&g).accepted {
            continue;
        }
        checked += 1;
        let (hubs, _) = w4_universals(&g, &enumerate_induced_c4(&g));
        assert_eq!(!hubs.is_empty(), has_diamond_one_per_ray(&e, &g), "seed {seed}");
    }
    assert!(checked > 50);
}

#[test]
fn chordal_generated_instances_are_accepted() {
    let mut checked = 0;
    for (seed, _, g) in generated(600) {
        if is_chordal(&g).is_err() {
            continue;
        }
        for comp in g.connected_components() {
            let sub = g.induced_subgraph(&comp).unwrap();
            checked += 1;
            let verdict = recognize_chordal_apud11(&sub.graph).unwrap();
            assert!(matches!(verdict, ChordalVerdict::Accepted(_)), "seed {seed}: {verdict:?}");
        }
    }
    assert!(checked > 200);
}

#[test]
fn verdicts_and_reports_are_repeatable() {
    for (_, _, g) in generated(60) {
        let a = recognize_apud11(&g);
        let b = recognize_apud11(&g);
        assert_eq!(a, b);
        assert_eq!(explain(&a, ReportFormat::Json), explain(&b, ReportFormat::Json));
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..k {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// Connected graphs on `n` vertices, one per isomorphism class.
fn connected_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let slot = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let canon = perms
            .iter()
            .map(|p| edges.iter().fold(0u32, |m, &(u, v)| m | 1 << slot(p[u], p[v])))
            .min()
            .unwrap();
        if seen.insert(canon) {
            let g = Graph::from_edge_list(n, &edges).unwrap();
            if g.is_connected() {
                out.push(g);
            }
        }
    }
    out
}

/// Accepted small graphs really embed, given a fine enough grid. The
/// coarse grid used elsewhere misses a few of them.
#[test]
fn accepted_small_graphs_embed_on_a_fine_grid() {
    use apud_core::geometry::{grid_bruteforce_embed, grid_bruteforce_embed_with, GridSearch};
    let q = |p: i64, r: i64| BigRational::new(p.into(), r.into());
    let mut accepted = 0;
    for n in 1..=6 {
        for g in connected_graphs_up_to_iso(n) {
            if !recognize_apud11(&g).accepted {
                continue;
            }
            accepted += 1;
            let coarse = grid_bruteforce_embed(&g, &q(1, 4), &q(4, 1)).unwrap();
            if coarse.is_none() {
                let fine = GridSearch { threads: 4, ..GridSearch::new(q(1, 12), q(3, 1)) };
                let e = grid_bruteforce_embed_with(&g, &fine).unwrap();
                assert!(e.is_some(), "accepted but not embedded: {:?}", g.edges().collect::<Vec<_>>());
            }
        }
    }
    assert!(accepted > 100);
}
