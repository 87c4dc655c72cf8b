//! Assignment of vertices to the four rays.
//!
//! A *core* of vertices near the origin is split over the rays, each *outer*
//! part goes on a ray of its own, and every pair of rays `i`, `j` must then
//! line up as `[outer_i, core_i, core_j, outer_j]` in a unit interval
//! ordering: from far out on ray `i`, in to the origin, and out along `j`.

use serde::Serialize;

use crate::geometry::Ray;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::interval::uig_respects_block_order;

/// A vertex-to-ray assignment certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayLayout {
    /// Core vertices per ray, in `Ray::ALL` order.
    pub core: [VertexSet; 4],
    /// Outer parts per ray; at most one part per ray.
    pub outer: [VertexSet; 4],
}

impl RayLayout {
    pub fn ray_of(&self, v: Vertex) -> Option<Ray> {
        (0..4)
            .find(|&i| self.core[i].contains(v) || self.outer[i].contains(v))
            .map(Ray::from_index)
    }
}

/// Whether every pair of rays lines up. Pairs are unordered because
/// reversing the block list never changes the test.
pub fn layout_holds(g: &Graph, layout: &RayLayout) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| pair_holds(g, &layout.core, &layout.outer, i, j)))
}

fn pair_holds(g: &Graph, core: &[VertexSet; 4], outer: &[VertexSet; 4], i: usize, j: usize) -> bool {
    let blocks = [
        outer[i].clone(),
        core[i].clone(),
        core[j].clone(),
        outer[j].clone(),
    ];
    uig_respects_block_order(g, &blocks).expect("layout parts are disjoint and in range")
}

/// The search input.
pub struct LayoutProblem<'a> {
    pub g: &'a Graph,
    pub core: VertexSet,
    /// At most four disjoint parts, each placed whole on one ray.
    pub outer: Vec<VertexSet>,
    /// Induced 4-cycles `[a, b, c, d]` inside the core: their vertices sit on
    /// four distinct rays, with `a`, `c` opposite and `b`, `d` opposite.
    pub cycles: Vec<[Vertex; 4]>,
}

/// Ray relation forced between two units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Relation {
    Opposite,
    Perpendicular,
    /// Non-adjacent core units cannot share a ray.
    Apart,
}

fn allowed(rel: Relation, r: usize) -> u8 {
    match rel {
        Relation::Opposite => 1 << ((r + 2) % 4),
        Relation::Perpendicular => (1 << ((r + 1) % 4)) | (1 << ((r + 3) % 4)),
        Relation::Apart => 0b1111 & !(1 << r),
    }
}

/// Searches for a layout. True twins in the core (equal closed
/// neighborhoods) are kept together: one can always sit on top of the other.
pub fn find_layout(p: &LayoutProblem) -> Option<RayLayout> {
    assert!(p.outer.len() <= 4, "at most four outer parts");
    let g = p.g;

    // units: outer parts first, then twin classes of the core
    let mut units: Vec<Vec<Vertex>> = p.outer.iter().map(|s| s.as_slice().to_vec()).collect();
    let outer_count = units.len();
    let mut unit_of = vec![usize::MAX; g.n()];
    let mut class_rep: Vec<(Vertex, usize)> = Vec::new();
    for v in p.core.iter() {
        let twin = class_rep
            .iter()
            .find(|&&(w, _)| g.adjacent(v, w) && closed_hoods_equal(g, v, w));
        match twin {
            Some(&(_, u)) => {
                units[u].push(v);
                unit_of[v] = u;
            }
            None => {
                class_rep.push((v, units.len()));
                unit_of[v] = units.len();
                units.push(vec![v]);
            }
        }
    }

    let k = units.len();
    let mut relations: Vec<Vec<(usize, Relation)>> = vec![Vec::new(); k];
    let mut relate = |a: usize, b: usize, rel: Relation| {
        relations[a].push((b, rel));
        relations[b].push((a, rel));
    };
    for a in 0..outer_count {
        for b in a + 1..outer_count {
            relate(a, b, Relation::Apart);
        }
    }
    for a in outer_count..k {
        for b in a + 1..k {
            if !g.adjacent(units[a][0], units[b][0]) {
                relate(a, b, Relation::Apart);
            }
        }
    }
    for cyc in &p.cycles {
        let u = cyc.map(|v| unit_of[v]);
        relate(u[0], u[2], Relation::Opposite);
        relate(u[1], u[3], Relation::Opposite);
        for i in 0..4 {
            relate(u[i], u[(i + 1) % 4], Relation::Perpendicular);
        }
    }

    let mut state = Search {
        g,
        units: &units,
        relations: &relations,
        domain: vec![0b1111; k],
        ray: vec![usize::MAX; k],
        core: Default::default(),
        outer: Default::default(),
        outer_count,
    };
    // Rotations and reflections act on the rays; fixing the first cycle
    // removes them. Without cycles the rays are interchangeable and the
    // search only opens a fresh ray in index order.
    if let Some(cyc) = p.cycles.first() {
        let u = cyc.map(|v| unit_of[v]);
        for (i, &unit) in u.iter().enumerate() {
            if state.ray[unit] == usize::MAX && !state.assign(unit, i) {
                return None;
            }
        }
    }
    if state.solve() {
        Some(RayLayout {
            core: state.core,
            outer: state.outer,
        })
    } else {
        None
    }
}

fn closed_hoods_equal(g: &Graph, u: Vertex, v: Vertex) -> bool {
    let mut a = g.neighbor_bits(u).clone();
    a.insert(u);
    let mut b = g.neighbor_bits(v).clone();
    b.insert(v);
    a == b
}

struct Search<'a> {
    g: &'a Graph,
    units: &'a [Vec<Vertex>],
    relations: &'a [Vec<(usize, Relation)>],
    domain: Vec<u8>,
    ray: Vec<usize>,
    core: [VertexSet; 4],
    outer: [VertexSet; 4],
    outer_count: usize,
}

impl Search<'_> {
    fn used_rays(&self) -> u8 {
        self.ray
            .iter()
            .filter(|&&r| r != usize::MAX)
            .fold(0, |m, &r| m | (1 << r))
    }

    /// Places a unit and checks the pairs through its ray. On failure the
    /// state is left for the caller to roll back.
    fn assign(&mut self, unit: usize, r: usize) -> bool {
        if self.domain[unit] & (1 << r) == 0 {
            return false;
        }
        self.ray[unit] = r;
        self.domain[unit] = 1 << r;
        let members: VertexSet = self.units[unit].iter().copied().collect();
        if unit < self.outer_count {
            self.outer[r] = members;
        } else {
            self.core[r] = self.core[r].union(&members);
        }
        for &(other, rel) in &self.relations[unit] {
            if self.ray[other] == usize::MAX {
                self.domain[other] &= allowed(rel, r);
                if self.domain[other] == 0 {
                    return false;
                }
            } else if allowed(rel, r) & (1 << self.ray[other]) == 0 {
                return false;
            }
        }
        let mut partner_seen_empty = false;
        for s in 0..4 {
            if s == r {
                continue;
            }
            let empty = self.core[s].is_empty() && self.outer[s].is_empty();
            if empty {
                if partner_seen_empty {
                    continue;
                }
                partner_seen_empty = true;
            }
            if !pair_holds(self.g, &self.core, &self.outer, r, s) {
                return false;
            }
        }
        true
    }

    fn next_unit(&self) -> Option<usize> {
        if let Some(u) = (0..self.outer_count).find(|&u| self.ray[u] == usize::MAX) {
            return Some(u);
        }
        (self.outer_count..self.units.len())
            .filter(|&u| self.ray[u] == usize::MAX)
            .min_by_key(|&u| (self.domain[u].count_ones(), std::cmp::Reverse(self.relations[u].len()), u))
    }

    fn solve(&mut self) -> bool {
        let Some(unit) = self.next_unit() else {
            return true;
        };
        let used = self.used_rays();
        let mut fresh_tried = false;
        for r in 0..4 {
            if self.domain[unit] & (1 << r) == 0 {
                continue;
            }
            if used & (1 << r) == 0 {
                // unused rays are interchangeable at this point
                if fresh_tried {
                    continue;
                }
                fresh_tried = true;
            }
            let saved = (
                self.domain.clone(),
                self.ray.clone(),
                self.core.clone(),
                self.outer.clone(),
            );
            if self.assign(unit, r) && self.solve() {
                return true;
            }
            (self.domain, self.ray, self.core, self.outer) = saved;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn solve(g: &Graph, core: &[Vertex], outer: &[&[Vertex]], cycles: Vec<[Vertex; 4]>) -> Option<RayLayout> {
        let p = LayoutProblem {
            g,
            core: core.iter().copied().collect(),
            outer: outer.iter().map(|s| s.iter().copied().collect()).collect(),
            cycles,
        };
        let found = find_layout(&p);
        if let Some(layout) = &found {
            assert!(layout_holds(g, layout));
        }
        found
    }

    #[test]
    fn c4_spreads_over_four_rays() {
        let g = cycle(4);
        let layout = solve(&g, &[0, 1, 2, 3], &[], vec![[0, 1, 2, 3]]).unwrap();
        for v in 0..4 {
            assert_eq!(layout.core[v], VertexSet::singleton(v));
        }
    }

    #[test]
    fn wheel_hub_joins_a_ray() {
        let g = wheel4();
        let layout = solve(&g, &[0, 1, 2, 3, 4], &[], vec![[0, 1, 2, 3]]).unwrap();
        assert!(layout.ray_of(4).is_some());
    }

    #[test]
    fn star_with_five_leaves_has_no_layout() {
        let g = star(5);
        // center 0 and one leaf as the core, the other leaves outside
        assert!(solve(&g, &[0, 1], &[&[2], &[3], &[4], &[5]], vec![]).is_none());
        let g = star(4);
        assert!(solve(&g, &[0], &[&[1], &[2], &[3], &[4]], vec![]).is_some());
    }

    #[test]
    fn outer_parts_need_their_own_ray() {
        // a long path through a single core vertex
        let g = path(7);
        assert!(solve(&g, &[3], &[&[0, 1, 2], &[4, 5, 6]], vec![]).is_some());
        // C6 minus nothing: a hole cannot be laid out on two rays
        let g = cycle(6);
        assert!(solve(&g, &[0], &[&[1, 2, 3, 4, 5]], vec![]).is_none());
    }
}
