//! Unit disks centered on the two coordinate axes: exact intersection
//! graphs, a seeded instance generator and a brute-force grid embedder.
//!
//! Disks have radius one, so two of them meet iff their centers are at
//! distance at most 2. Tangent disks count as intersecting.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::graph::{Graph, Vertex};

/// A half-axis starting at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Ray {
    #[serde(rename = "X+")]
    XPlus,
    #[serde(rename = "Y+")]
    YPlus,
    #[serde(rename = "X-")]
    XMinus,
    #[serde(rename = "Y-")]
    YMinus,
}

impl Ray {
    /// Counter-clockwise from the positive x-axis.
    pub const ALL: [Ray; 4] = [Ray::XPlus, Ray::YPlus, Ray::XMinus, Ray::YMinus];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Ray {
        Ray::ALL[i % 4]
    }

    pub fn is_horizontal(self) -> bool {
        matches!(self, Ray::XPlus | Ray::XMinus)
    }

    fn sign(self) -> i32 {
        match self {
            Ray::XPlus | Ray::YPlus => 1,
            Ray::XMinus | Ray::YMinus => -1,
        }
    }

    pub fn opposite(self) -> Ray {
        Ray::from_index(self.index() + 2)
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ray::XPlus => "X+",
            Ray::YPlus => "Y+",
            Ray::XMinus => "X-",
            Ray::YMinus => "Y-",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub ray: Ray,
    /// Distance from the origin, non-negative.
    pub offset: BigRational,
}

impl Placement {
    pub fn new(ray: Ray, offset: BigRational) -> Self {
        Placement { ray, offset }
    }

    /// Center coordinates.
    pub fn center(&self) -> (BigRational, BigRational) {
        let signed = if self.ray.sign() > 0 {
            self.offset.clone()
        } else {
            -self.offset.clone()
        };
        if self.ray.is_horizontal() {
            (signed, BigRational::zero())
        } else {
            (BigRational::zero(), signed)
        }
    }
}

/// Closed unit-disk intersection: squared center distance at most 4.
pub fn disks_intersect(a: &Placement, b: &Placement) -> bool {
    let (ax, ay) = a.center();
    let (bx, by) = b.center();
    let dx = ax - bx;
    let dy = ay - by;
    dx.clone() * dx + dy.clone() * dy <= BigRational::from_integer(BigInt::from(4))
}

/// One placement per vertex, indexed by vertex id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Embedding {
    pub placements: Vec<Placement>,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingJson {
    vertices: Vec<VertexJson>,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: Vertex,
    ray: Ray,
    offset: String,
}

impl Embedding {
    pub fn new(placements: Vec<Placement>) -> Self {
        Embedding { placements }
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    /// Vertices on the given ray, in id order.
    pub fn on_ray(&self, ray: Ray) -> Vec<Vertex> {
        (0..self.len()).filter(|&v| self.placements[v].ray == ray).collect()
    }

    pub fn to_json(&self) -> String {
        let doc = EmbeddingJson {
            vertices: self
                .placements
                .iter()
                .enumerate()
                .map(|(id, p)| VertexJson {
                    id,
                    ray: p.ray,
                    offset: p.offset.to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("embedding serializes")
    }

    /// Parses the JSON form; ids must be exactly `0..n` in some order.
    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        let doc: EmbeddingJson =
            serde_json::from_str(text).map_err(|e| GeometryError::Invalid(e.to_string()))?;
        let n = doc.vertices.len();
        let mut slots: Vec<Option<Placement>> = vec![None; n];
        for v in doc.vertices {
            let offset = BigRational::from_str(&v.offset)
                .map_err(|_| GeometryError::Invalid(format!("bad offset '{}'", v.offset)))?;
            if offset.is_negative() {
                return Err(GeometryError::Invalid(format!("negative offset for {}", v.id)));
            }
            match slots.get_mut(v.id) {
                Some(slot @ None) => *slot = Some(Placement::new(v.ray, offset)),
                Some(Some(_)) => {
                    return Err(GeometryError::Invalid(format!("duplicate id {}", v.id)))
                }
                None => return Err(GeometryError::Invalid(format!("id {} out of range", v.id))),
            }
        }
        Ok(Embedding {
            placements: slots.into_iter().map(|p| p.unwrap()).collect(),
        })
    }
}

/// The intersection graph of the embedded disks.
pub fn intersection_graph(e: &Embedding) -> Graph {
    Graph::from_predicate(e.len(), |u, v| {
        disks_intersect(&e.placements[u], &e.placements[v])
    })
}

/// Whether `e` realizes exactly the edges of `g`.
pub fn verify_embedding(e: &Embedding, g: &Graph) -> Result<bool, GeometryError> {
    if e.len() != g.n() {
        return Err(GeometryError::VertexMismatch {
            embedding: e.len(),
            graph: g.n(),
        });
    }
    Ok(intersection_graph(e) == *g)
}

/// Offsets of generated instances are multiples of 1/GRID.
pub const GENERATOR_GRID: i64 = 8;

/// A random embedding with uniform rays and offsets uniform on the 1/8 grid
/// in `[0, extent]`, together with its intersection graph.
pub fn random_apud11(n: usize, extent: &BigRational, seed: u64) -> (Embedding, Graph) {
    assert!(extent.is_positive(), "extent must be positive");
    let max_k = (extent * BigRational::from_integer(GENERATOR_GRID.into()))
        .floor()
        .to_integer()
        .to_i64()
        .expect("extent fits the grid");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let placements = (0..n)
        .map(|_| {
            let ray = Ray::from_index(rng.gen_range(0..4));
            let k = rng.gen_range(0..=max_k);
            Placement::new(ray, BigRational::new(k.into(), GENERATOR_GRID.into()))
        })
        .collect();
    let e = Embedding::new(placements);
    let g = intersection_graph(&e);
    (e, g)
}

/// Parameters of the exhaustive grid search.
#[derive(Clone, Debug)]
pub struct GridSearch {
    pub step: BigRational,
    pub extent: BigRational,
    /// Largest accepted vertex count.
    pub limit: usize,
    pub threads: usize,
}

impl GridSearch {
    pub const DEFAULT_LIMIT: usize = 8;

    pub fn new(step: BigRational, extent: BigRational) -> Self {
        GridSearch {
            step,
            extent,
            limit: Self::DEFAULT_LIMIT,
            threads: 1,
        }
    }
}

/// Searches every placement with offsets on the `step` grid in
/// `[0, extent]`. `None` only means no grid embedding exists.
pub fn grid_bruteforce_embed(
    g: &Graph,
    step: &BigRational,
    extent: &BigRational,
) -> Result<Option<Embedding>, GeometryError> {
    grid_bruteforce_embed_with(g, &GridSearch::new(step.clone(), extent.clone()))
}

pub fn grid_bruteforce_embed_with(
    g: &Graph,
    params: &GridSearch,
) -> Result<Option<Embedding>, GeometryError> {
    let n = g.n();
    if n > params.limit {
        return Err(GeometryError::TooLarge {
            n,
            limit: params.limit,
        });
    }
    if !params.step.is_positive() || params.extent.is_negative() {
        return Err(GeometryError::Invalid("step must be positive, extent non-negative".into()));
    }
    if n == 0 {
        return Ok(Some(Embedding::default()));
    }
    let grid = PlacementGrid::new(&params.step, &params.extent);
    let order = search_order(g);
    let search = GridDfs {
        g,
        grid: &grid,
        order: &order,
    };

    // The first vertex goes on X+ (rotations), and the first vertex off the
    // x-axis goes on Y+ (reflection).
    let roots: Vec<usize> = grid.on_ray(Ray::XPlus).collect();
    let best = AtomicUsize::new(usize::MAX);
    let found: Mutex<Vec<(usize, Vec<usize>)>> = Mutex::new(Vec::new());
    let next = AtomicUsize::new(0);
    let worker = || loop {
        let i = next.fetch_add(1, Ordering::SeqCst);
        if i >= roots.len() || i > best.load(Ordering::SeqCst) {
            return;
        }
        let mut chosen = vec![roots[i]];
        if search.extend(&mut chosen, &|| i > best.load(Ordering::SeqCst)) {
            best.fetch_min(i, Ordering::SeqCst);
            found.lock().unwrap().push((i, chosen));
        }
    };
    let threads = params.threads.max(1).min(roots.len());
    if threads <= 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..threads {
                s.spawn(worker);
            }
        });
    }
    let hit = found
        .into_inner()
        .unwrap()
        .into_iter()
        .min_by_key(|(i, _)| *i);
    Ok(hit.map(|(_, chosen)| {
        let mut placements = vec![None; n];
        for (depth, &slot) in chosen.iter().enumerate() {
            placements[order[depth]] = Some(grid.placements[slot].clone());
        }
        Embedding::new(placements.into_iter().map(Option::unwrap).collect())
    }))
}

/// Breadth-first order per component, each component started from its
/// highest-degree vertex, so most vertices have a placed neighbor.
fn search_order(g: &Graph) -> Vec<Vertex> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    let mut by_degree: Vec<Vertex> = (0..g.n()).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for root in by_degree {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut head = start;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    order.push(u);
                }
            }
        }
    }
    order
}

/// All grid placements and their pairwise intersection table. The origin is
/// listed once, on X+.
struct PlacementGrid {
    placements: Vec<Placement>,
    meets: Vec<FixedBitSet>,
}

impl PlacementGrid {
    fn new(step: &BigRational, extent: &BigRational) -> Self {
        let steps = (extent / step).floor().to_integer();
        let mut placements = vec![Placement::new(Ray::XPlus, BigRational::zero())];
        for ray in Ray::ALL {
            let mut k = BigInt::from(1);
            while k <= steps {
                placements.push(Placement::new(ray, step * BigRational::from_integer(k.clone())));
                k += 1;
            }
        }
        let p = placements.len();
        let meets = (0..p)
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(p);
                for b in 0..p {
                    if a != b && disks_intersect(&placements[a], &placements[b]) {
                        row.insert(b);
                    }
                }
                row
            })
            .collect();
        PlacementGrid { placements, meets }
    }

    fn on_ray(&self, ray: Ray) -> impl Iterator<Item = usize> + '_ {
        (0..self.placements.len()).filter(move |&i| self.placements[i].ray == ray)
    }
}

struct GridDfs<'a> {
    g: &'a Graph,
    grid: &'a PlacementGrid,
    order: &'a [Vertex],
}

impl GridDfs<'_> {
    /// Extends `chosen` (grid slots for a prefix of `order`) to a full
    /// placement; `cancelled` aborts the search early.
    fn extend(&self, chosen: &mut Vec<usize>, cancelled: &dyn Fn() -> bool) -> bool {
        let depth = chosen.len();
        if depth == self.order.len() {
            return true;
        }
        if cancelled() {
            return false;
        }
        let v = self.order[depth];
        let p = self.grid.placements.len();
        let mut allowed = FixedBitSet::with_capacity(p);
        allowed.insert_range(..);
        let mut off_axis_used = false;
        for (i, &slot) in chosen.iter().enumerate() {
            let row = &self.grid.meets[slot];
            if self.g.adjacent(v, self.order[i]) {
                allowed.intersect_with(row);
            } else {
                allowed.difference_with(row);
                // two disks at the same spot meet, so equal slots are excluded
                allowed.set(slot, false);
            }
            off_axis_used |= !self.grid.placements[slot].ray.is_horizontal();
        }
        for slot in allowed.ones() {
            if !off_axis_used && self.grid.placements[slot].ray == Ray::YMinus {
                continue;
            }
            chosen.push(slot);
            if self.extend(chosen, cancelled) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}
