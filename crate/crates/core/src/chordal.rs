//! Recognition of chordal graphs representable by unit disks on the axes.
//!
//! A connected chordal input is accepted when it has no induced 4-sun and
//! some maximal clique `Q` leaves at most four components, each a unit
//! interval graph whose vertices see nested parts of `Q`, and `Q` splits
//! over the four rays so that every pair of rays lines up (see
//! [`crate::layout`]). Without that last condition the star with five
//! leaves would pass: the clique made of the center and one leaf leaves four
//! single vertices.

use serde::Serialize;

use crate::error::ChordalError;
use crate::graph::{Clique, Graph, Vertex, VertexSet};
use crate::interval::{is_chordal, is_unit_interval, maximal_cliques_chordal, CliquePath};
use crate::layout::{find_layout, LayoutProblem, RayLayout};
use crate::structures::contains_4sun;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChordalOptions {
    /// Require the nested-attachment condition. Off gives the bare
    /// "at most four unit interval pieces" test.
    pub chain_check: bool,
    /// Require a ray layout of the clique and its pieces.
    pub layout_check: bool,
}

impl Default for ChordalOptions {
    fn default() -> Self {
        ChordalOptions {
            chain_check: true,
            layout_check: true,
        }
    }
}

impl ChordalOptions {
    /// Only the 4-sun test and the "at most four unit interval pieces" test.
    pub fn bare() -> Self {
        ChordalOptions {
            chain_check: false,
            layout_check: false,
        }
    }
}

/// A component left after removing the central clique, with its clique path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub vertices: VertexSet,
    pub path: CliquePath,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChordalCertificate {
    /// Empty when every component of the input is a unit interval graph.
    pub clique: Clique,
    pub pieces: Vec<Piece>,
    /// Present when the layout condition was checked.
    pub layout: Option<RayLayout>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ChordalRejection {
    FourSunFound([Vertex; 8]),
    NoSeparatingClique,
    /// Two components each need the area around the origin.
    SeveralCentralComponents(Vec<VertexSet>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ChordalVerdict {
    Accepted(ChordalCertificate),
    Rejected(ChordalRejection),
}

impl ChordalVerdict {
    pub fn accepted(&self) -> bool {
        matches!(self, ChordalVerdict::Accepted(_))
    }
}

/// Whether the `q`-neighborhoods of the vertices of `comp` are totally
/// ordered by inclusion.
pub fn chain_attachment_ok(g: &Graph, q: &Clique, comp: &VertexSet) -> bool {
    let mut hoods: Vec<VertexSet> = comp
        .iter()
        .map(|v| q.iter().filter(|&u| g.adjacent(u, v)).collect())
        .collect();
    hoods.sort_by_key(VertexSet::len);
    hoods.windows(2).all(|w| w[0].is_subset(&w[1]))
}

/// Decides a connected chordal graph.
pub fn recognize_chordal_apud11(g: &Graph) -> Result<ChordalVerdict, ChordalError> {
    recognize_chordal_apud11_with(g, ChordalOptions::default())
}

pub fn recognize_chordal_apud11_with(
    g: &Graph,
    options: ChordalOptions,
) -> Result<ChordalVerdict, ChordalError> {
    if !g.is_connected() {
        return Err(ChordalError::NotConnected);
    }
    let peo = is_chordal(g).map_err(|_| ChordalError::NotChordal)?;
    if g.n() == 0 {
        return Ok(ChordalVerdict::Accepted(ChordalCertificate {
            clique: VertexSet::new(),
            pieces: vec![],
            layout: None,
        }));
    }
    if let Some(sun) = contains_4sun(g) {
        return Ok(ChordalVerdict::Rejected(ChordalRejection::FourSunFound(sun)));
    }
    let cliques = maximal_cliques_chordal(g, &peo).expect("certificate was just verified");
    for q in cliques {
        let Some(pieces) = split_at(g, &q, options) else {
            continue;
        };
        let layout = if options.layout_check {
            let problem = LayoutProblem {
                g,
                core: q.clone(),
                outer: pieces.iter().map(|p| p.vertices.clone()).collect(),
                cycles: vec![],
            };
            match find_layout(&problem) {
                Some(layout) => Some(layout),
                None => continue,
            }
        } else {
            None
        };
        return Ok(ChordalVerdict::Accepted(ChordalCertificate {
            clique: q,
            pieces,
            layout,
        }));
    }
    Ok(ChordalVerdict::Rejected(ChordalRejection::NoSeparatingClique))
}

/// The pieces of `g - q` if there are at most four and each qualifies.
fn split_at(g: &Graph, q: &Clique, options: ChordalOptions) -> Option<Vec<Piece>> {
    let rest = g.without(q).expect("clique vertices are in range");
    let comps = rest.graph.connected_components();
    if comps.len() > 4 {
        return None;
    }
    comps
        .iter()
        .map(|local| {
            let vertices = rest.lift(local);
            if options.chain_check && !chain_attachment_ok(g, q, &vertices) {
                return None;
            }
            unit_interval_piece(g, vertices)
        })
        .collect()
}

fn unit_interval_piece(g: &Graph, vertices: VertexSet) -> Option<Piece> {
    let sub = g.induced_subgraph(&vertices).expect("piece is in range");
    let local = is_unit_interval(&sub.graph)?;
    let path = CliquePath {
        cliques: local.cliques.iter().map(|c| sub.lift(c)).collect(),
    };
    Some(Piece { vertices, path })
}

/// Decides a chordal graph that may be disconnected: at most one component
/// may fail to be a unit interval graph, and that one must be accepted on
/// its own. Unit interval components can always be laid out far out on a
/// ray, clear of everything else.
pub fn recognize_chordal_any(
    g: &Graph,
    options: ChordalOptions,
) -> Result<ChordalVerdict, ChordalError> {
    is_chordal(g).map_err(|_| ChordalError::NotChordal)?;
    let comps = g.connected_components();
    let mut central = Vec::new();
    let mut outer = Vec::new();
    for comp in comps {
        match unit_interval_piece(g, comp.clone()) {
            Some(piece) => outer.push(piece),
            None => central.push(comp),
        }
    }
    match central.len() {
        0 => Ok(ChordalVerdict::Accepted(ChordalCertificate {
            clique: VertexSet::new(),
            pieces: outer,
            layout: None,
        })),
        1 => {
            let sub = g.induced_subgraph(&central[0]).expect("component is in range");
            match recognize_chordal_apud11_with(&sub.graph, options)? {
                ChordalVerdict::Accepted(cert) => {
                    let mut pieces: Vec<Piece> = cert
                        .pieces
                        .into_iter()
                        .map(|p| Piece {
                            vertices: sub.lift(&p.vertices),
                            path: CliquePath {
                                cliques: p.path.cliques.iter().map(|c| sub.lift(c)).collect(),
                            },
                        })
                        .collect();
                    pieces.extend(outer);
                    let layout = cert.layout.map(|l| RayLayout {
                        core: l.core.map(|s| sub.lift(&s)),
                        outer: l.outer.map(|s| sub.lift(&s)),
                    });
                    Ok(ChordalVerdict::Accepted(ChordalCertificate {
                        clique: sub.lift(&cert.clique),
                        pieces,
                        layout,
                    }))
                }
                ChordalVerdict::Rejected(ChordalRejection::FourSunFound(sun)) => {
                    Ok(ChordalVerdict::Rejected(ChordalRejection::FourSunFound(
                        sun.map(|v| sub.original(v)),
                    )))
                }
                rejected => Ok(rejected),
            }
        }
        _ => Ok(ChordalVerdict::Rejected(
            ChordalRejection::SeveralCentralComponents(central),
        )),
    }
}
