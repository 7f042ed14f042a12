//! Theta-graph certificates, independent checkers, and the constructive
//! finders for bipartite graphs of high minimum or average degree.
//!
//! A Theta-graph is a cycle of length at least 2k together with a chord.
//! Every finder re-verifies its output with [`verify_theta`] before
//! returning; a verification failure is an invariant-violation error, never
//! a silent fallback.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;
use serde::{Deserialize, Serialize};

use crate::graph::{BipartiteView, Graph, TrilayeredView};

/// A simple cycle (as a vertex sequence) plus one chord.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaCertificate {
    pub cycle: Vec<usize>,
    pub chord: (usize, usize),
}

impl ThetaCertificate {
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.cycle.iter().copied().collect()
    }

    /// Cyclic distance between two cycle positions.
    fn cyclic_distance(&self, u: usize, v: usize) -> Option<usize> {
        let pos = |x| self.cycle.iter().position(|&c| c == x);
        let (i, j) = (pos(u)?, pos(v)?);
        let l = self.cycle.len();
        let d = i.abs_diff(j);
        Some(d.min(l - d))
    }
}

/// For each certificate vertex in V2, a V1 neighbor outside the certificate.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellPlacedWitness {
    pub map: BTreeMap<usize, usize>,
}

/// True iff `cert` is a valid Theta-graph in `g` for the given `k`: the
/// cycle is simple, cyclically adjacent, of length >= 2k, and the chord is a
/// real edge joining cycle vertices at cyclic distance >= 2.
pub fn verify_theta(g: &Graph, cert: &ThetaCertificate, k: usize) -> bool {
    let l = cert.cycle.len();
    if l < 2 * k || l < 4 {
        return false;
    }
    let distinct: BTreeSet<usize> = cert.cycle.iter().copied().collect();
    if distinct.len() != l {
        return false;
    }
    for i in 0..l {
        if !g.has_edge(cert.cycle[i], cert.cycle[(i + 1) % l]) {
            return false;
        }
    }
    let (a, b) = cert.chord;
    if !g.has_edge(a, b) {
        return false;
    }
    match cert.cyclic_distance(a, b) {
        Some(d) => d >= 2,
        None => false, // a chord endpoint is off the cycle
    }
}

/// True iff `cert` is a Theta-graph of the view's retained edges and the
/// witness covers exactly the certificate vertices in V2, mapping each to an
/// adjacent V1 vertex outside the certificate.
pub fn verify_well_placed(
    t: &TrilayeredView<'_>,
    cert: &ThetaCertificate,
    witness: &WellPlacedWitness,
    k: usize,
) -> bool {
    let vertices = cert.vertices();
    if !vertices.iter().all(|&v| t.contains(v)) {
        return false;
    }
    let retained = t.retained_graph();
    if !verify_theta(&retained, cert, k) {
        return false;
    }
    let v2_on_cert: BTreeSet<usize> = vertices.intersection(t.v2()).copied().collect();
    let covered: BTreeSet<usize> = witness.map.keys().copied().collect();
    if covered != v2_on_cert {
        return false;
    }
    witness.map.iter().all(|(&u, &w)| {
        t.v1().contains(&w) && !vertices.contains(&w) && t.base().has_edge(u, w)
    })
}

/// Removal transcript and survivor set of degree peeling.
#[derive(Debug, Clone)]
pub struct PeelOutcome {
    pub kept: BTreeSet<usize>,
    pub removed: Vec<usize>,
}

/// Maximal induced subgraph of minimum degree >= `delta`, by repeatedly
/// removing the smallest-id violating vertex. The survivor set is the unique
/// fixpoint, independent of removal order.
pub fn peel_min_degree(g: &Graph, delta: usize) -> PeelOutcome {
    let mut alive: Vec<bool> = alloc::vec![true; g.vertex_count()];
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = Vec::new();
    loop {
        let victim = (0..g.vertex_count()).find(|&v| alive[v] && deg[v] < delta);
        match victim {
            None => break,
            Some(v) => {
                alive[v] = false;
                removed.push(v);
                for &u in g.neighbors(v) {
                    if alive[u] {
                        deg[u] -= 1;
                    }
                }
            }
        }
    }
    PeelOutcome {
        kept: (0..g.vertex_count()).filter(|&v| alive[v]).collect(),
        removed,
    }
}

/// Peel a bipartite view to minimum cross-degree >= `delta`.
pub fn peel_view_min_degree<'a>(b: &BipartiteView<'a>, delta: usize) -> BipartiteView<'a> {
    let mut keep: BTreeSet<usize> = b.left().union(b.right()).copied().collect();
    loop {
        let current = b.restrict(&keep);
        let victim = keep
            .iter()
            .copied()
            .find(|&v| current.degree(v) < delta);
        match victim {
            None => return current,
            Some(v) => {
                keep.remove(&v);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ThetaError {
    /// The maximal-path argument needs k >= 3.
    KTooSmall { k: usize },
    /// A view vertex below the required minimum degree.
    LowDegree {
        vertex: usize,
        degree: usize,
        required: usize,
    },
    /// Average degree below 2k for the average-degree finder.
    AvgDegreeTooLow { avg: f64, required: usize },
    /// Peeling emptied the view; cannot happen when the precondition holds.
    PeelEmptied,
    /// Bug trap: a constructed certificate failed re-verification.
    CertificationFailed { attempted_path: Vec<usize> },
}

impl fmt::Display for ThetaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaError::KTooSmall { k } => write!(f, "k = {k} but the finder requires k >= 3"),
            ThetaError::LowDegree {
                vertex,
                degree,
                required,
            } => write!(
                f,
                "vertex {vertex} has cross-degree {degree} < required {required}"
            ),
            ThetaError::AvgDegreeTooLow { avg, required } => {
                write!(f, "average degree {avg} below required {required}")
            }
            ThetaError::PeelEmptied => write!(f, "peeling emptied the view"),
            ThetaError::CertificationFailed { .. } => {
                write!(f, "constructed certificate failed verification")
            }
        }
    }
}

impl core::error::Error for ThetaError {}

/// Find a Theta-graph in a bipartite view of minimum cross-degree >= k.
///
/// Maximal-path argument: extend a path greedily (smallest-id neighbor)
/// until stuck; the endpoint's >= k neighbors all lie on the path, the
/// farthest of them closes a cycle of length >= 2k (bipartite parity makes
/// it even), and the second-farthest supplies the chord.
pub fn find_theta_min_degree(
    b: &BipartiteView<'_>,
    k: usize,
) -> Result<ThetaCertificate, ThetaError> {
    if k < 3 {
        return Err(ThetaError::KTooSmall { k });
    }
    let members: BTreeSet<usize> = b.left().union(b.right()).copied().collect();
    for &v in &members {
        let d = b.degree(v);
        if d < k {
            return Err(ThetaError::LowDegree {
                vertex: v,
                degree: d,
                required: k,
            });
        }
    }
    let start = *members.iter().next().ok_or(ThetaError::PeelEmptied)?;
    let retained = b.retained_graph();
    let mut path = alloc::vec![start];
    let mut on_path: BTreeSet<usize> = path.iter().copied().collect();
    loop {
        let tail = *path.last().unwrap();
        let next = retained
            .neighbors(tail)
            .iter()
            .copied()
            .find(|u| !on_path.contains(u));
        match next {
            Some(u) => {
                path.push(u);
                on_path.insert(u);
            }
            None => break,
        }
    }
    let tail = *path.last().unwrap();
    let last = path.len() - 1;
    let neighbor_positions: Vec<usize> = path
        .iter()
        .enumerate()
        .filter(|&(_, &u)| retained.has_edge(tail, u))
        .map(|(i, _)| i)
        .collect();
    if neighbor_positions.len() < k {
        // cannot happen when the view really has min degree >= k
        return Err(ThetaError::CertificationFailed {
            attempted_path: path,
        });
    }
    let farthest = neighbor_positions[0];
    let chord_pos = neighbor_positions[1];
    let cycle: Vec<usize> = path[farthest..=last].to_vec();
    let cert = ThetaCertificate {
        cycle,
        chord: (tail, path[chord_pos]),
    };
    if verify_theta(&retained, &cert, k) {
        Ok(cert)
    } else {
        Err(ThetaError::CertificationFailed {
            attempted_path: path,
        })
    }
}

/// Find a Theta-graph in a bipartite view of average degree >= 2k: peel to
/// minimum degree k (which cannot exhaust the view) and delegate.
pub fn find_theta_avg_degree(
    b: &BipartiteView<'_>,
    k: usize,
) -> Result<ThetaCertificate, ThetaError> {
    if k < 3 {
        return Err(ThetaError::KTooSmall { k });
    }
    let n = b.vertex_count();
    let e = b.edge_count();
    if n == 0 || (2 * e) < 2 * k * n {
        return Err(ThetaError::AvgDegreeTooLow {
            avg: if n == 0 { 0.0 } else { 2.0 * e as f64 / n as f64 },
            required: 2 * k,
        });
    }
    let peeled = peel_view_min_degree(b, k);
    if peeled.vertex_count() == 0 {
        return Err(ThetaError::PeelEmptied);
    }
    find_theta_min_degree(&peeled, k)
}
