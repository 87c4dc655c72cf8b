//! Maximal clique enumeration with a hard cap on the number of cliques.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::graph::{Clique, Graph, VertexSet};

/// Maximal cliques in lexicographic order of their sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueList {
    pub cliques: Vec<Clique>,
    /// Set when the graph has more than `cap` maximal cliques; `cliques`
    /// then holds the first `cap` found.
    pub capped: bool,
}

/// Bron–Kerbosch enumeration with Tomita pivoting, stopping once more than
/// `cap` maximal cliques have been seen.
pub fn enumerate_maximal_cliques(g: &Graph, cap: u64) -> CliqueList {
    assert!(cap >= 1, "clique cap must be positive");
    let n = g.n();
    let mut found = Vec::new();
    if n > 0 {
        let mut p = FixedBitSet::with_capacity(n);
        p.insert_range(..);
        let x = FixedBitSet::with_capacity(n);
        let mut r = Vec::new();
        let mut search = Search {
            g,
            limit: cap.saturating_add(1),
            found: &mut found,
        };
        search.expand(&mut r, p, x);
    }
    let capped = found.len() as u64 > cap;
    if capped {
        found.truncate(cap as usize);
    }
    found.sort_unstable();
    CliqueList {
        cliques: found,
        capped,
    }
}

/// All maximal cliques, without a cap.
pub fn maximal_cliques(g: &Graph) -> Vec<Clique> {
    enumerate_maximal_cliques(g, u64::MAX - 1).cliques
}

struct Search<'a> {
    g: &'a Graph,
    limit: u64,
    found: &'a mut Vec<Clique>,
}

impl Search<'_> {
    /// Returns false once the limit is reached.
    fn expand(&mut self, r: &mut Vec<usize>, mut p: FixedBitSet, mut x: FixedBitSet) -> bool {
        if p.is_clear() {
            if x.is_clear() {
                self.found.push(VertexSet::from_unsorted(r.clone()));
                return (self.found.len() as u64) < self.limit;
            }
            return true;
        }
        // pivot maximizing |P ∩ N(u)|
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| {
                let mut common = p.clone();
                common.intersect_with(self.g.neighbor_bits(u));
                (common.count_ones(..), std::cmp::Reverse(u))
            })
            .unwrap();
        let mut candidates = p.clone();
        candidates.difference_with(self.g.neighbor_bits(pivot));
        for v in candidates.ones().collect::<Vec<_>>() {
            let nv = self.g.neighbor_bits(v);
            let mut p2 = p.clone();
            p2.intersect_with(nv);
            let mut x2 = x.clone();
            x2.intersect_with(nv);
            r.push(v);
            let keep_going = self.expand(r, p2, x2);
            r.pop();
            if !keep_going {
                return false;
            }
            p.set(v, false);
            x.insert(v);
        }
        true
    }
}

/// Four cliques (repeats allowed) whose union is exactly `universe`.
///
/// Branches on the smallest uncovered vertex, so the depth is at most four
/// and each level only tries cliques containing that vertex. An empty
/// universe is covered by four empty sets.
pub fn cliques_covering(universe: &VertexSet, cliques: &[Clique]) -> Option<[Clique; 4]> {
    collect_covers(universe, cliques, true).into_iter().next()
}

/// Every cover of `universe` by at most four distinct cliques drawn from
/// `cliques`, padded to four slots by repeating the last clique. Only
/// cliques inside `universe` are used; each cover is listed once.
pub fn covers(universe: &VertexSet, cliques: &[Clique]) -> Vec<[Clique; 4]> {
    collect_covers(universe, cliques, false)
}

fn collect_covers(universe: &VertexSet, cliques: &[Clique], first_only: bool) -> Vec<[Clique; 4]> {
    if universe.is_empty() {
        return vec![[VertexSet::new(), VertexSet::new(), VertexSet::new(), VertexSet::new()]];
    }
    let usable: Vec<usize> = (0..cliques.len())
        .filter(|&i| cliques[i].is_subset(universe))
        .collect();
    let mut found = BTreeSet::new();
    cover_rec(universe, cliques, &usable, &mut Vec::new(), &mut found, first_only);
    found
        .into_iter()
        .map(|idx| {
            let mut slots: Vec<Clique> = idx.iter().map(|&i| cliques[i].clone()).collect();
            while slots.len() < 4 {
                slots.push(slots.last().cloned().unwrap());
            }
            slots.try_into().unwrap()
        })
        .collect()
}

fn cover_rec(
    universe: &VertexSet,
    cliques: &[Clique],
    usable: &[usize],
    chosen: &mut Vec<usize>,
    found: &mut BTreeSet<Vec<usize>>,
    first_only: bool,
) {
    let covered = chosen
        .iter()
        .fold(VertexSet::new(), |acc, &i| acc.union(&cliques[i]));
    let Some(missing) = universe.iter().find(|&v| !covered.contains(v)) else {
        let mut key = chosen.clone();
        key.sort_unstable();
        found.insert(key);
        return;
    };
    if chosen.len() == 4 {
        return;
    }
    for &i in usable {
        if cliques[i].contains(missing) {
            chosen.push(i);
            cover_rec(universe, cliques, usable, chosen, found, first_only);
            chosen.pop();
            if first_only && !found.is_empty() {
                return;
            }
        }
    }
}
