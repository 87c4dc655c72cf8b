//! The full recognition pipeline for arbitrary graphs.
//!
//! Chordal inputs go to [`crate::chordal`]. Otherwise the induced C4s pin
//! down a core of vertices around the origin: `L` (vertices on induced C4s)
//! and `U` (hubs of induced W4s). Everything else, `Delta`, splits into at
//! most four unit interval components that sit further out on the rays. A
//! series of necessary conditions filters the input before the final search
//! for a ray layout (see [`crate::layout`]).

use std::fmt::Write as _;

use serde::Serialize;

use crate::chordal::{
    recognize_chordal_any, recognize_chordal_apud11_with, ChordalCertificate, ChordalOptions,
    ChordalRejection, ChordalVerdict,
};
use crate::cliques::{covers, enumerate_maximal_cliques, maximal_cliques};
use crate::consecutive::{is_helly_circular_arc, HcaRejection};
use crate::graph::{Clique, Graph, InducedSubgraph, Vertex, VertexSet};
use crate::interval::{is_chordal, is_unit_interval};
use crate::layout::{find_layout, layout_holds, LayoutProblem, RayLayout};
use crate::structures::{enumerate_induced_c4, has_hole_ge5, w4_universals, InducedC4};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecognizerOptions {
    /// Reject early on a chordless cycle of length five or more.
    pub longhole_guard: bool,
    /// Maximal clique budget; `None` means `n^4` for the whole input.
    pub clique_cap: Option<u64>,
    pub chordal: ChordalOptions,
}

impl Default for RecognizerOptions {
    fn default() -> Self {
        RecognizerOptions {
            longhole_guard: true,
            clique_cap: None,
            chordal: ChordalOptions::default(),
        }
    }
}

/// The step that settled the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Components,
    Chordal,
    LongHole,
    S4Remainder,
    HellyCarc,
    HellyCarcReduced,
    Delta,
    CliqueCap,
    CliqueCover,
    UniversalCover,
    Layout,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Reason {
    LongHole,
    NotS4Remainder,
    NotHellyCarc,
    TooManyComponents,
    ComponentNotUIG,
    CliqueCapExceeded,
    NoCliqueCover,
    NoUniversalCover,
    NoConsistentTuple,
    ChordalReject,
}

/// The accepting tuple of the non-chordal branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleWitness {
    /// Per ray, the vertices of `L'` on it.
    #[serde(rename = "C")]
    pub c: [Clique; 4],
    /// Per ray, the hubs on it.
    #[serde(rename = "S")]
    pub s: [Clique; 4],
    #[serde(rename = "Delta")]
    pub delta: [VertexSet; 4],
    /// Core vertices per ray.
    pub rays: [VertexSet; 4],
}

impl TupleWitness {
    fn layout(&self) -> RayLayout {
        RayLayout {
            core: self.rays.clone(),
            outer: self.delta.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentWitness {
    pub vertices: VertexSet,
    pub witness: Witness,
}

/// Evidence behind a verdict, with vertex ids of the input graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Chordal {
        clique: Clique,
        pieces: Vec<VertexSet>,
        rays: Option<[VertexSet; 4]>,
    },
    Tuple(Box<TupleWitness>),
    Components {
        components: Vec<ComponentWitness>,
    },
    FourSun {
        four_sun: [Vertex; 8],
    },
    NoSeparatingClique {
        no_separating_clique: VertexSet,
    },
    CentralComponents {
        central_components: Vec<VertexSet>,
    },
    Cycle {
        cycle: Vec<Vertex>,
    },
    Remainder {
        remainder: VertexSet,
    },
    Carc {
        vertices: VertexSet,
    },
    ComponentList {
        components: Vec<VertexSet>,
    },
    Component {
        component: VertexSet,
    },
    Cap {
        cap: u64,
    },
    Cover {
        universe: VertexSet,
    },
    Universal {
        universal: VertexSet,
    },
    Search {
        #[serde(rename = "L'")]
        l_prime: VertexSet,
        #[serde(rename = "U")]
        universal: VertexSet,
        #[serde(rename = "Delta")]
        delta: Vec<VertexSet>,
    },
}

impl Witness {
    /// Renames vertices through `f`.
    fn map(&self, f: &dyn Fn(Vertex) -> Vertex) -> Witness {
        let set = |s: &VertexSet| -> VertexSet { s.iter().map(f).collect() };
        let sets = |v: &[VertexSet]| -> Vec<VertexSet> { v.iter().map(set).collect() };
        let four = |a: &[VertexSet; 4]| -> [VertexSet; 4] { [set(&a[0]), set(&a[1]), set(&a[2]), set(&a[3])] };
        match self {
            Witness::Chordal { clique, pieces, rays } => Witness::Chordal {
                clique: set(clique),
                pieces: sets(pieces),
                rays: rays.as_ref().map(four),
            },
            Witness::Tuple(t) => Witness::Tuple(Box::new(TupleWitness {
                c: four(&t.c),
                s: four(&t.s),
                delta: four(&t.delta),
                rays: four(&t.rays),
            })),
            Witness::Components { components } => Witness::Components {
                components: components
                    .iter()
                    .map(|c| ComponentWitness {
                        vertices: set(&c.vertices),
                        witness: c.witness.map(f),
                    })
                    .collect(),
            },
            Witness::FourSun { four_sun } => Witness::FourSun {
                four_sun: four_sun.map(f),
            },
            Witness::NoSeparatingClique {
                no_separating_clique,
            } => Witness::NoSeparatingClique {
                no_separating_clique: set(no_separating_clique),
            },
            Witness::CentralComponents { central_components } => Witness::CentralComponents {
                central_components: sets(central_components),
            },
            Witness::Cycle { cycle } => Witness::Cycle {
                cycle: cycle.iter().map(|&v| f(v)).collect(),
            },
            Witness::Remainder { remainder } => Witness::Remainder {
                remainder: set(remainder),
            },
            Witness::Carc { vertices } => Witness::Carc {
                vertices: set(vertices),
            },
            Witness::ComponentList { components } => Witness::ComponentList {
                components: sets(components),
            },
            Witness::Component { component } => Witness::Component {
                component: set(component),
            },
            Witness::Cap { cap } => Witness::Cap { cap: *cap },
            Witness::Cover { universe } => Witness::Cover {
                universe: set(universe),
            },
            Witness::Universal { universal } => Witness::Universal {
                universal: set(universal),
            },
            Witness::Search {
                l_prime,
                universal,
                delta,
            } => Witness::Search {
                l_prime: set(l_prime),
                universal: set(universal),
                delta: sets(delta),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub accepted: bool,
    pub stage: Stage,
    pub reason: Option<Reason>,
    pub witness: Witness,
}

impl Verdict {
    fn accept(stage: Stage, witness: Witness) -> Self {
        Verdict {
            accepted: true,
            stage,
            reason: None,
            witness,
        }
    }

    fn reject(stage: Stage, reason: Reason, witness: Witness) -> Self {
        Verdict {
            accepted: false,
            stage,
            reason: Some(reason),
            witness,
        }
    }

    fn lifted(self, sub: &InducedSubgraph) -> Self {
        Verdict {
            witness: self.witness.map(&|v| sub.original(v)),
            ..self
        }
    }
}

/// Intermediate sets of the non-chordal branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineState {
    pub cycles: Vec<InducedC4>,
    #[serde(rename = "L")]
    pub l: VertexSet,
    #[serde(rename = "U")]
    pub u: VertexSet,
    #[serde(rename = "L'")]
    pub l_prime: VertexSet,
    /// Components of `G - (L ∪ U)`.
    #[serde(rename = "Delta")]
    pub delta: Vec<VertexSet>,
}

/// Computes `L`, `U`, `L'` and `Delta`.
///
/// `Delta` leaves out the hubs as well as `L`: a hub need not lie on any
/// induced C4, and leaving it in would glue the pieces of different rays
/// together.
pub fn pipeline_state(g: &Graph) -> PipelineState {
    let cycles = enumerate_induced_c4(g);
    let l: VertexSet = cycles.iter().flat_map(|c| c.vertices).collect();
    let (u, _) = w4_universals(g, &cycles);
    let l_prime = l.difference(&u);
    let rest = g.without(&l.union(&u)).expect("in range");
    let delta = rest
        .graph
        .connected_components()
        .iter()
        .map(|c| rest.lift(c))
        .collect();
    PipelineState {
        cycles,
        l,
        u,
        l_prime,
        delta,
    }
}

pub fn recognize_apud11(g: &Graph) -> Verdict {
    recognize_apud11_with(g, &RecognizerOptions::default())
}

/// Decides any simple graph. A disconnected graph is accepted when every
/// component is, and at most one component is not a unit interval graph:
/// only one component can use the region around the origin, the others
/// must fit on a single ray.
pub fn recognize_apud11_with(g: &Graph, options: &RecognizerOptions) -> Verdict {
    let n = g.n() as u64;
    let cap = options
        .clique_cap
        .unwrap_or_else(|| n.saturating_mul(n).saturating_mul(n).saturating_mul(n))
        .max(1);
    let comps = g.connected_components();
    if comps.len() <= 1 {
        return recognize_connected(g, options, cap);
    }
    let mut central = Vec::new();
    let mut parts = Vec::new();
    for comp in comps {
        let sub = g.induced_subgraph(&comp).expect("component is in range");
        let verdict = recognize_connected(&sub.graph, options, cap).lifted(&sub);
        if !verdict.accepted {
            return verdict;
        }
        if is_unit_interval(&sub.graph).is_none() {
            central.push(comp.clone());
        }
        parts.push(ComponentWitness {
            vertices: comp,
            witness: verdict.witness,
        });
    }
    if central.len() > 1 {
        return Verdict::reject(
            Stage::Components,
            Reason::TooManyComponents,
            Witness::ComponentList {
                components: central,
            },
        );
    }
    Verdict::accept(Stage::Components, Witness::Components { components: parts })
}

fn chordal_witness(cert: ChordalCertificate) -> Witness {
    Witness::Chordal {
        clique: cert.clique,
        pieces: cert.pieces.into_iter().map(|p| p.vertices).collect(),
        rays: cert.layout.map(|l| l.core),
    }
}

fn chordal_rejection(r: ChordalRejection, g: &Graph) -> Witness {
    match r {
        ChordalRejection::FourSunFound(sun) => Witness::FourSun { four_sun: sun },
        ChordalRejection::NoSeparatingClique => Witness::NoSeparatingClique {
            no_separating_clique: g.vertices(),
        },
        ChordalRejection::SeveralCentralComponents(c) => Witness::CentralComponents {
            central_components: c,
        },
    }
}

fn recognize_connected(g: &Graph, options: &RecognizerOptions, cap: u64) -> Verdict {
    if is_chordal(g).is_ok() {
        return match recognize_chordal_apud11_with(g, options.chordal)
            .expect("input is connected and chordal")
        {
            ChordalVerdict::Accepted(cert) => Verdict::accept(Stage::Chordal, chordal_witness(cert)),
            ChordalVerdict::Rejected(r) => {
                Verdict::reject(Stage::Chordal, Reason::ChordalReject, chordal_rejection(r, g))
            }
        };
    }

    let state = pipeline_state(g);
    if options.longhole_guard {
        if let Some(cycle) = has_hole_ge5(g) {
            return Verdict::reject(Stage::LongHole, Reason::LongHole, Witness::Cycle { cycle });
        }
    }

    // what is left after removing L must be a chordal graph of the same kind
    let rest = g.without(&state.l).expect("in range");
    let remainder_ok = matches!(
        recognize_chordal_any(&rest.graph, options.chordal),
        Ok(ChordalVerdict::Accepted(_))
    );
    if !remainder_ok {
        let remainder = g.vertices().difference(&state.l);
        return Verdict::reject(
            Stage::S4Remainder,
            Reason::NotS4Remainder,
            Witness::Remainder { remainder },
        );
    }

    // the cycle vertices, hubs removed, form a Helly circular-arc graph
    let carc = |set: &VertexSet, stage: Stage| -> Option<Verdict> {
        let sub = g.induced_subgraph(set).expect("in range");
        match is_helly_circular_arc(&sub.graph, cap) {
            Ok(_) => None,
            Err(HcaRejection::CapExceeded { cap }) => Some(Verdict::reject(
                stage,
                Reason::CliqueCapExceeded,
                Witness::Cap { cap },
            )),
            Err(HcaRejection::NoCircularOrder) => Some(Verdict::reject(
                stage,
                Reason::NotHellyCarc,
                Witness::Carc {
                    vertices: set.clone(),
                },
            )),
        }
    };
    if state.u.is_empty() {
        if let Some(v) = carc(&state.l, Stage::HellyCarc) {
            return v;
        }
    } else if let Some(v) = carc(&state.l_prime, Stage::HellyCarcReduced) {
        return v;
    }

    if state.delta.len() > 4 {
        return Verdict::reject(
            Stage::Delta,
            Reason::TooManyComponents,
            Witness::ComponentList {
                components: state.delta.clone(),
            },
        );
    }
    for part in &state.delta {
        let sub = g.induced_subgraph(part).expect("in range");
        if is_unit_interval(&sub.graph).is_none() {
            return Verdict::reject(
                Stage::Delta,
                Reason::ComponentNotUIG,
                Witness::Component {
                    component: part.clone(),
                },
            );
        }
    }

    if enumerate_maximal_cliques(g, cap).capped {
        return Verdict::reject(Stage::CliqueCap, Reason::CliqueCapExceeded, Witness::Cap { cap });
    }

    // one clique per ray covers L'
    let lp = g.induced_subgraph(&state.l_prime).expect("in range");
    let q: Vec<Clique> = maximal_cliques(&lp.graph).iter().map(|c| lp.lift(c)).collect();
    let c_covers = covers(&state.l_prime, &q);
    if c_covers.is_empty() {
        return Verdict::reject(
            Stage::CliqueCover,
            Reason::NoCliqueCover,
            Witness::Cover {
                universe: state.l_prime.clone(),
            },
        );
    }
    // Hubs and cycle vertices on one ray form a single clique, so the whole
    // core is covered by four cliques.
    let core = state.l_prime.union(&state.u);
    if !state.u.is_empty() {
        let cs = g.induced_subgraph(&core).expect("in range");
        let joint: Vec<Clique> = maximal_cliques(&cs.graph).iter().map(|c| cs.lift(c)).collect();
        if covers(&core, &joint).is_empty() {
            return Verdict::reject(
                Stage::UniversalCover,
                Reason::NoUniversalCover,
                Witness::Universal {
                    universal: state.u.clone(),
                },
            );
        }
    }

    let problem = LayoutProblem {
        g,
        core,
        outer: state.delta.clone(),
        cycles: state.cycles.iter().map(|c| c.vertices).collect(),
    };
    match find_layout(&problem) {
        Some(layout) => {
            let c = std::array::from_fn(|i| layout.core[i].intersection(&state.l_prime));
            let s = std::array::from_fn(|i| layout.core[i].intersection(&state.u));
            Verdict::accept(
                Stage::Layout,
                Witness::Tuple(Box::new(TupleWitness {
                    c,
                    s,
                    delta: layout.outer,
                    rays: layout.core,
                })),
            )
        }
        None => Verdict::reject(
            Stage::Layout,
            Reason::NoConsistentTuple,
            Witness::Search {
                l_prime: state.l_prime,
                universal: state.u,
                delta: state.delta,
            },
        ),
    }
}

/// Re-checks an accepting verdict against the graph: every ray pair lines
/// up, every vertex is placed once, and every induced C4 has its vertices
/// on four distinct rays.
pub fn verify_witness(g: &Graph, verdict: &Verdict) -> bool {
    if !verdict.accepted {
        return false;
    }
    match &verdict.witness {
        Witness::Tuple(t) => {
            let layout = t.layout();
            let placed: usize = layout.core.iter().chain(&layout.outer).map(VertexSet::len).sum();
            let all: VertexSet = layout.core.iter().chain(&layout.outer).flat_map(|s| s.iter()).collect();
            placed == g.n()
                && all.len() == g.n()
                && layout_holds(g, &layout)
                && enumerate_induced_c4(g).iter().all(|c| {
                    let rays: VertexSet = c
                        .vertices
                        .iter()
                        .map(|&v| layout.ray_of(v).unwrap().index())
                        .collect();
                    rays.len() == 4
                })
        }
        Witness::Chordal { clique, pieces, .. } => {
            let all: VertexSet = pieces.iter().flat_map(|p| p.iter()).chain(clique.iter()).collect();
            all.len() == g.n() && g.is_clique(clique)
        }
        Witness::Components { components } => components.iter().all(|c| {
            let sub = g.induced_subgraph(&c.vertices).unwrap();
            let local = Verdict {
                witness: c.witness.map(&|v| sub.local(v).unwrap()),
                ..verdict.clone()
            };
            verify_witness(&sub.graph, &local)
        }),
        _ => false,
    }
}

/// Output formats of [`explain`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Deterministic rendering of a verdict.
pub fn explain(verdict: &Verdict, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string(verdict).expect("verdict serializes"),
        ReportFormat::Text => {
            let mut out = String::new();
            let stage = serde_json::to_value(verdict.stage).unwrap();
            writeln!(out, "accepted: {}", if verdict.accepted { "yes" } else { "no" }).unwrap();
            writeln!(out, "stage: {}", stage.as_str().unwrap()).unwrap();
            match verdict.reason {
                Some(r) => writeln!(out, "reason: {r:?}").unwrap(),
                None => writeln!(out, "reason: none").unwrap(),
            }
            let witness = serde_json::to_value(&verdict.witness).unwrap();
            if let Some(fields) = witness.as_object() {
                for (key, value) in fields {
                    writeln!(out, "{key}: {value}").unwrap();
                }
            }
            out
        }
    }
}
