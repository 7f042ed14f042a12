//! Good-path embedding through a trilayered view.
//!
//! Grows a path v0 ~> v1 ~> ... whose anchors live in V1, with each segment
//! alternating V2/V3 over 2D edges, while every V2 path vertex keeps a V1
//! neighbor off the path. Any obstruction to growth is converted into a
//! verified Theta-certificate: either inside G[V2,V3] or well-placed across
//! all three layers.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use serde::Serialize;

use crate::graph::{BipartiteView, TrilayeredView};
use crate::theta::{find_theta_avg_degree, verify_theta, verify_well_placed, ThetaCertificate,
    ThetaError, WellPlacedWitness};
use crate::trilayer::{satisfies_spec, InequalityCheck, MinDegSpec};

/// Anchored path: anchors in V1, segments of 2D edges alternating V2/V3
/// (D vertices in V2, D-1 in V3 each), and a witness map sending every V2
/// path vertex to a V1 neighbor off the path.
#[derive(Debug, Clone)]
pub struct GoodPath {
    pub anchors: Vec<usize>,
    pub segments: Vec<Vec<usize>>,
    pub goodness: BTreeMap<usize, usize>,
}

impl GoodPath {
    pub fn single(v0: usize) -> GoodPath {
        GoodPath {
            anchors: alloc::vec![v0],
            segments: Vec::new(),
            goodness: BTreeMap::new(),
        }
    }

    /// Path vertices in order: v0, segment, v1, segment, ...
    pub fn vertex_list(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (idx, &a) in self.anchors.iter().enumerate() {
            out.push(a);
            if idx < self.segments.len() {
                out.extend(&self.segments[idx]);
            }
        }
        out
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.vertex_list().into_iter().collect()
    }

    pub fn last_anchor(&self) -> usize {
        *self.anchors.last().expect("a path has at least one anchor")
    }
}

/// True iff the goodness map is complete and valid: every V2 path vertex
/// maps to an off-path V1 neighbor.
pub fn check_good(t: &TrilayeredView<'_>, p: &GoodPath) -> bool {
    let on_path = p.vertex_set();
    for v in &on_path {
        if t.layer_of(*v) != Some(2) {
            continue;
        }
        match p.goodness.get(v) {
            None => return false,
            Some(&x) => {
                if !t.v1().contains(&x) || on_path.contains(&x) || !t.base().has_edge(*v, x) {
                    return false;
                }
            }
        }
    }
    true
}

/// Frontier state for one segment-growing round.
#[derive(Debug, Clone, Default)]
pub struct ExtensionState {
    pub i: usize,
    /// frontier endpoint -> its path from the segment start (2i edges)
    pub qpaths: BTreeMap<usize, Vec<usize>>,
    pub s1: BTreeSet<usize>,
    pub f1: BTreeSet<usize>,
    pub t_sets: BTreeMap<usize, Vec<usize>>,
    pub t_all: BTreeSet<usize>,
    pub s2: BTreeSet<usize>,
    pub f2: BTreeSet<usize>,
    pub dset: BTreeSet<usize>,
    /// u -> chosen (v, w) two-step extension
    pub extensions: BTreeMap<usize, (usize, usize)>,
    pub eps: f64,
}

/// eps = (D - i) / (4 (2k+1) Delta)
pub fn epsilon(d_param: usize, i: usize, k: usize, delta: f64) -> f64 {
    (d_param - i) as f64 / (4.0 * (2 * k + 1) as f64 * delta)
}

#[derive(Debug)]
pub enum EmbedError {
    Precondition(InequalityCheck),
    /// A frontier vertex with too few off-path neighbors toward V3.
    LowOffPathDegree {
        vertex: usize,
        degree: usize,
        required: f64,
    },
    /// A V2 vertex with more than Delta*d neighbors in V3.
    OverDegree {
        vertex: usize,
        degree: usize,
        limit: f64,
    },
    Theta(ThetaError),
    InvariantViolation(String),
}

impl fmt::Display for EmbedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbedError::Precondition(c) => write!(f, "precondition failed: {c}"),
            EmbedError::LowOffPathDegree {
                vertex,
                degree,
                required,
            } => write!(
                f,
                "vertex {vertex} has {degree} off-path neighbors in V3, required {required}"
            ),
            EmbedError::OverDegree {
                vertex,
                degree,
                limit,
            } => write!(
                f,
                "vertex {vertex} has {degree} neighbors in V3, exceeding the limit {limit}"
            ),
            EmbedError::Theta(e) => write!(f, "theta finder: {e}"),
            EmbedError::InvariantViolation(msg) => write!(f, "invariant violation: {msg}"),
        }
    }
}

impl core::error::Error for EmbedError {}

impl From<ThetaError> for EmbedError {
    fn from(e: ThetaError) -> Self {
        EmbedError::Theta(e)
    }
}

#[derive(Debug)]
pub enum EmbedOutcome {
    ThetaInV2V3(ThetaCertificate),
    WellPlaced(ThetaCertificate, WellPlacedWitness),
    Budget(BudgetReport),
}

/// What the build achieved before the frontier fell below the guaranteed
/// floor (possible at desk-scale parameters, impossible at the scales the
/// floors were derived for).
#[derive(Debug, Clone, Serialize)]
pub struct BudgetReport {
    pub anchors_built: usize,
    pub round: usize,
    pub shortfall: String,
}

/// Per-round frontier statistics, serialized under `embed --trace`.
#[derive(Debug, Clone, Serialize)]
pub struct RoundTrace {
    pub anchor_index: usize,
    pub i: usize,
    pub u_count: usize,
    pub s1_count: usize,
    pub s2_count: usize,
    pub survivors: usize,
    pub eps: f64,
    /// the per-step recurrence floor eps/(2(i+1)) |U_i| - 2k
    pub recurrence_floor: f64,
}

pub struct EmbedParams {
    pub a: f64,
    pub b: f64,
    pub d_param: usize,
    pub delta: f64,
    pub d: f64,
    pub k: usize,
}

impl EmbedParams {
    /// The V2->V3 degree floor handed to the spec: d + k.
    pub fn c(&self) -> f64 {
        self.d + self.k as f64
    }
}

#[derive(Debug)]
pub enum ExtendStep<'g> {
    Extended(GoodPath, Vec<RoundTrace>),
    Outcome(EmbedOutcome, Vec<RoundTrace>),
    // lifetime kept for parity with the chain API
    #[doc(hidden)]
    _Phantom(core::marker::PhantomData<&'g ()>),
}

/// Smallest V1 neighbor of w outside `excluded`.
fn pick_witness(
    t: &TrilayeredView<'_>,
    w: usize,
    excluded: &BTreeSet<usize>,
) -> Option<usize> {
    t.neighbors_in(w, 1)
        .into_iter()
        .find(|x| !excluded.contains(x))
}

/// Anchor-neighbor extraction: an anchor with >= k neighbors in V2 on one
/// side of it along the path closes a cycle of length >= 2k through the
/// path, with a chord to an interior neighbor; the goodness map supplies
/// the well-placed witness.
fn anchor_extract(
    t: &TrilayeredView<'_>,
    p: &GoodPath,
    k: usize,
) -> Option<(ThetaCertificate, WellPlacedWitness)> {
    let verts = p.vertex_list();
    let pos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for &anchor in &p.anchors {
        let a_pos = pos[&anchor];
        let mut before: Vec<usize> = Vec::new();
        let mut after: Vec<usize> = Vec::new();
        for u in t.neighbors_in(anchor, 2) {
            if let Some(&pu) = pos.get(&u) {
                if pu < a_pos {
                    before.push(pu);
                } else if pu > a_pos {
                    after.push(pu);
                }
            }
        }
        for side in [before, after] {
            if side.len() < k || k < 2 {
                continue;
            }
            let mut positions = side;
            positions.sort_unstable();
            // cycle: subpath from first to last neighbor, closed through
            // the anchor; chord from the anchor to the second neighbor
            let first = positions[0];
            let last = positions[positions.len() - 1];
            let mut cycle: Vec<usize> = verts[first..=last].to_vec();
            cycle.push(anchor);
            let chord = (anchor, verts[positions[1]]);
            let cert = ThetaCertificate {
                cycle,
                chord: (chord.0.min(chord.1), chord.0.max(chord.1)),
            };
            if !verify_theta(t.base(), &cert, k) {
                continue;
            }
            let cert_verts = cert.vertices();
            let mut map = BTreeMap::new();
            let mut ok = true;
            for &v in &cert_verts {
                if t.layer_of(v) == Some(2) {
                    match p.goodness.get(&v) {
                        Some(&x) if !cert_verts.contains(&x) => {
                            map.insert(v, x);
                        }
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            if !ok {
                continue;
            }
            let witness = WellPlacedWitness { map };
            if verify_well_placed(t, &cert, &witness, k) {
                return Some((cert, witness));
            }
        }
    }
    None
}

/// End-vertex extraction: the endpoint u of a finished segment whose V1
/// neighbors all lie on the path closes a long cycle back to its second
/// neighbor, with a chord to the third; its first neighbor witnesses u.
fn end_extract(
    t: &TrilayeredView<'_>,
    full_path: &[usize],
    goodness: &BTreeMap<usize, usize>,
    u: usize,
    k: usize,
) -> Option<(ThetaCertificate, WellPlacedWitness)> {
    let pos: BTreeMap<usize, usize> =
        full_path.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut nbr_pos: Vec<usize> = t
        .neighbors_in(u, 1)
        .into_iter()
        .filter_map(|x| pos.get(&x).copied())
        .collect();
    nbr_pos.sort_unstable();
    if nbr_pos.len() < 3 {
        return None;
    }
    // cycle from the second neighbor to u (the path end), chord to the third
    let start = nbr_pos[1];
    let cycle: Vec<usize> = full_path[start..].to_vec();
    let chord_v = full_path[nbr_pos[2]];
    let cert = ThetaCertificate {
        cycle,
        chord: (u.min(chord_v), u.max(chord_v)),
    };
    if !verify_theta(t.base(), &cert, k) {
        return None;
    }
    let cert_verts = cert.vertices();
    let path_set: BTreeSet<usize> = full_path.iter().copied().collect();
    let mut map = BTreeMap::new();
    for &v in &cert_verts {
        if t.layer_of(v) != Some(2) {
            continue;
        }
        let target = if v == u {
            // the first (off-cycle) path neighbor witnesses u
            Some(full_path[nbr_pos[0]]).filter(|x| !cert_verts.contains(x))
        } else {
            goodness
                .get(&v)
                .copied()
                .filter(|x| !cert_verts.contains(x))
                .or_else(|| {
                    pick_witness(t, v, &path_set)
                })
        };
        map.insert(v, target?);
    }
    let witness = WellPlacedWitness { map };
    if verify_well_placed(t, &cert, &witness, k) {
        Some((cert, witness))
    } else {
        None
    }
}

/// Long-edge extraction for a V3 vertex v at the end of P_v: a path
/// neighbor at distance >= 2k closes a long cycle, any strictly interior
/// neighbor is the chord.
fn long_edge_extract(
    t: &TrilayeredView<'_>,
    p_v: &[usize],
    goodness: &BTreeMap<usize, usize>,
    k: usize,
) -> Option<(ThetaCertificate, WellPlacedWitness)> {
    let v = *p_v.last()?;
    let pos: BTreeMap<usize, usize> = p_v.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let last = p_v.len() - 1;
    let mut nbr_pos: Vec<usize> = t
        .neighbors_in(v, 2)
        .into_iter()
        .filter_map(|x| pos.get(&x).copied())
        .filter(|&px| px < last)
        .collect();
    nbr_pos.sort_unstable();
    let &far = nbr_pos.first()?;
    if last - far < 2 * k {
        return None;
    }
    let chord_pos = nbr_pos
        .iter()
        .copied()
        .find(|&px| px > far && px < last - 1)?;
    let cycle: Vec<usize> = p_v[far..].to_vec();
    let cert = ThetaCertificate {
        cycle,
        chord: (v.min(p_v[chord_pos]), v.max(p_v[chord_pos])),
    };
    if !verify_theta(t.base(), &cert, k) {
        return None;
    }
    let cert_verts = cert.vertices();
    let path_set: BTreeSet<usize> = p_v.iter().copied().collect();
    let mut map = BTreeMap::new();
    for &x in &cert_verts {
        if t.layer_of(x) != Some(2) {
            continue;
        }
        let target = goodness
            .get(&x)
            .copied()
            .filter(|y| !cert_verts.contains(y))
            .or_else(|| pick_witness(t, x, &path_set))?;
        map.insert(x, target);
    }
    let witness = WellPlacedWitness { map };
    if verify_well_placed(t, &cert, &witness, k) {
        Some((cert, witness))
    } else {
        None
    }
}

/// Partition the frontier into vertices with a reserved V3 set (S1) and the
/// rest (F1). A failed majority hands the dense leftover G[F1, T] to the
/// average-degree finder.
///
/// Selection is deterministic: frontier vertices in ascending id, reserved
/// sets are the smallest ceil(d/(2k+1)) ids of M_u.
pub fn procedure_one(
    t: &TrilayeredView<'_>,
    p: &GoodPath,
    state: &mut ExtensionState,
    d: f64,
    k: usize,
) -> Result<Option<ThetaCertificate>, EmbedError> {
    let base_path = p.vertex_list();
    let quota = libm::ceil(d / (2 * k + 1) as f64) as usize;
    let frontier: Vec<usize> = state.qpaths.keys().copied().collect();
    for &u in &frontier {
        let p_u: BTreeSet<usize> = base_path
            .iter()
            .copied()
            .chain(state.qpaths[&u].iter().copied())
            .collect();
        let off_path = t
            .neighbors_in(u, 3)
            .into_iter()
            .filter(|x| !p_u.contains(x))
            .count();
        if (off_path as f64) < d {
            return Err(EmbedError::LowOffPathDegree {
                vertex: u,
                degree: off_path,
                required: d,
            });
        }
        let m_u: Vec<usize> = t
            .neighbors_in(u, 3)
            .into_iter()
            .filter(|x| !state.t_all.contains(x) && !p_u.contains(x))
            .collect();
        if m_u.len() >= quota && quota > 0 {
            let t_u: Vec<usize> = m_u.into_iter().take(quota).collect();
            state.t_all.extend(t_u.iter().copied());
            state.t_sets.insert(u, t_u);
            state.s1.insert(u);
        } else {
            state.f1.insert(u);
        }
    }
    if 2 * state.s1.len() < frontier.len() {
        // the counting argument puts average degree > 2k on G[F1 u T]
        let view = BipartiteView::new(t.base(), state.f1.clone(), state.t_all.clone())
            .expect("F1 and T live in the base graph");
        let cert = find_theta_avg_degree(&view, k)?;
        return Ok(Some(cert));
    }
    Ok(None)
}

/// Greedy two-step extensions from S1 through reserved V3 vertices into
/// fresh V2 endpoints, kept collision-free through Dset.
pub fn procedure_two(
    t: &TrilayeredView<'_>,
    p: &GoodPath,
    state: &mut ExtensionState,
    delta: f64,
    d: f64,
    k: usize,
) -> Result<(), EmbedError> {
    let base_path = p.vertex_list();
    for &u in &state.s1.clone() {
        let p_u: Vec<usize> = base_path
            .iter()
            .copied()
            .chain(state.qpaths[&u].iter().copied())
            .collect();
        let mut chosen = None;
        'search: for &v in &state.t_sets[&u] {
            let p_v: BTreeSet<usize> = p_u.iter().copied().chain([v]).collect();
            for w in t.neighbors_in(v, 2) {
                if !p_v.contains(&w) && !state.dset.contains(&w) {
                    chosen = Some((v, w));
                    break 'search;
                }
            }
        }
        match chosen {
            Some((v, w)) => {
                state.s2.insert(u);
                state.dset.insert(w);
                state.extensions.insert(u, (v, w));
            }
            None => {
                state.f2.insert(u);
            }
        }
    }
    let floor = state.eps * state.s1.len() as f64 - 2.0 * k as f64;
    if (state.s2.len() as f64) < floor {
        // the proof's counting forces some V2 vertex past Delta*d
        for &w in state.dset.iter().chain(state.s1.iter()) {
            let deg = t.degree_in(w, 3);
            if deg as f64 > delta * d {
                return Err(EmbedError::OverDegree {
                    vertex: w,
                    degree: deg,
                    limit: delta * d,
                });
            }
        }
        if let Some(w) = t.v2().iter().find(|&&w| t.degree_in(w, 3) as f64 > delta * d) {
            return Err(EmbedError::OverDegree {
                vertex: *w,
                degree: t.degree_in(*w, 3),
                limit: delta * d,
            });
        }
        return Err(EmbedError::InvariantViolation(format!(
            "two-step extension floor failed ({} < {floor}) with no over-degree vertex",
            state.s2.len()
        )));
    }
    Ok(())
}

fn spec_violation(t: &TrilayeredView<'_>, spec: &MinDegSpec) -> Option<InequalityCheck> {
    for &v in t.v1() {
        let deg = t.degree_in(v, 2) as f64;
        if deg < spec.a {
            return Some(InequalityCheck {
                name: format!("min-degree-v1-to-v2 (vertex {v})"),
                lhs: deg,
                rhs: spec.a,
                pass: false,
            });
        }
    }
    for &v in t.v2() {
        let d1 = t.degree_in(v, 1) as f64;
        if d1 < spec.b {
            return Some(InequalityCheck {
                name: format!("min-degree-v2-to-v1 (vertex {v})"),
                lhs: d1,
                rhs: spec.b,
                pass: false,
            });
        }
        let d3 = t.degree_in(v, 3) as f64;
        if d3 < spec.c {
            return Some(InequalityCheck {
                name: format!("min-degree-v2-to-v3 (vertex {v})"),
                lhs: d3,
                rhs: spec.c,
                pass: false,
            });
        }
    }
    for &v in t.v3() {
        let deg = t.degree_in(v, 2) as f64;
        if deg < spec.d {
            return Some(InequalityCheck {
                name: format!("min-degree-v3-to-v2 (vertex {v})"),
                lhs: deg,
                rhs: spec.d,
                pass: false,
            });
        }
    }
    None
}

/// Grow the path by one anchor, or surface the obstruction as a verified
/// certificate or a budget report.
pub fn extend_once<'g>(
    t: &TrilayeredView<'g>,
    p: &GoodPath,
    params: &EmbedParams,
) -> Result<ExtendStep<'g>, EmbedError> {
    let k = params.k;
    let d_param = params.d_param;
    if d_param == 0 {
        return Err(EmbedError::InvariantViolation(String::from(
            "segment length parameter must be at least 1",
        )));
    }
    let spec = MinDegSpec::new(params.a, params.b, params.c(), d_param as f64);
    if let Some(check) = spec_violation(t, &spec) {
        return Err(EmbedError::Precondition(check));
    }
    debug_assert!(satisfies_spec(t, &spec));
    let eq_a = InequalityCheck {
        name: String::from("frontier-size-floor"),
        lhs: params.a,
        rhs: 2.0 * k as f64 * libm::pow(params.delta * d_param as f64, d_param as f64 - 1.0),
        pass: params.a
            >= 2.0 * k as f64 * libm::pow(params.delta * d_param as f64, d_param as f64 - 1.0),
    };
    if !eq_a.pass {
        return Err(EmbedError::Precondition(eq_a));
    }
    let eq_b = InequalityCheck {
        name: String::from("final-anchor-floor"),
        lhs: (params.b - 4.0) * d_param as f64,
        rhs: 2.0 * k as f64,
        pass: (params.b - 4.0) * d_param as f64 >= 2.0 * k as f64,
    };
    if !eq_b.pass {
        return Err(EmbedError::Precondition(eq_b));
    }
    for &v in t.v2() {
        let deg = t.degree_in(v, 3);
        if deg as f64 > params.delta * params.d {
            return Err(EmbedError::OverDegree {
                vertex: v,
                degree: deg,
                limit: params.delta * params.d,
            });
        }
    }

    let mut traces = Vec::new();
    // anchors over-adjacent to the path's V2 part end the build immediately
    if let Some((cert, witness)) = anchor_extract(t, p, k) {
        return Ok(ExtendStep::Outcome(
            EmbedOutcome::WellPlaced(cert, witness),
            traces,
        ));
    }

    let path_set = p.vertex_set();
    let anchor_index = p.anchors.len() - 1;
    let mut state = ExtensionState {
        qpaths: t
            .neighbors_in(p.last_anchor(), 2)
            .into_iter()
            .filter(|u| !path_set.contains(u))
            .map(|u| (u, alloc::vec![u]))
            .collect(),
        ..ExtensionState::default()
    };
    if state.qpaths.is_empty() {
        return Ok(ExtendStep::Outcome(
            EmbedOutcome::Budget(BudgetReport {
                anchors_built: p.anchors.len(),
                round: 0,
                shortfall: String::from("no fresh V2 neighbor at the last anchor"),
            }),
            traces,
        ));
    }

    for i in 0..d_param - 1 {
        state.i = i;
        state.eps = epsilon(d_param, i, k, params.delta);
        state.s1.clear();
        state.f1.clear();
        state.t_sets.clear();
        state.t_all.clear();
        state.s2.clear();
        state.f2.clear();
        state.dset.clear();
        state.extensions.clear();
        let u_count = state.qpaths.len();

        if let Some(cert) = procedure_one(t, p, &mut state, params.d, k)? {
            traces.push(RoundTrace {
                anchor_index,
                i,
                u_count,
                s1_count: state.s1.len(),
                s2_count: 0,
                survivors: 0,
                eps: state.eps,
                recurrence_floor: state.eps / (2.0 * (i + 1) as f64) * u_count as f64
                    - 2.0 * k as f64,
            });
            return Ok(ExtendStep::Outcome(EmbedOutcome::ThetaInV2V3(cert), traces));
        }

        // every reserved V3 vertex must keep D - i usable targets, where
        // targets among the last 2k path vertices count but are never used
        let base_path = p.vertex_list();
        for (&u, t_u) in &state.t_sets {
            let p_u: Vec<usize> = base_path
                .iter()
                .copied()
                .chain(state.qpaths[&u].iter().copied())
                .collect();
            for &v in t_u {
                let p_v: Vec<usize> = p_u.iter().copied().chain([v]).collect();
                let p_v_set: BTreeSet<usize> = p_v.iter().copied().collect();
                let tail: BTreeSet<usize> = p_v
                    .iter()
                    .rev()
                    .take(2 * k)
                    .copied()
                    .collect();
                let usable = t
                    .neighbors_in(v, 2)
                    .into_iter()
                    .filter(|w| !p_v_set.contains(w) || tail.contains(w))
                    .count();
                if usable < d_param - i {
                    let got = long_edge_extract(t, &p_v, &p.goodness, k).ok_or_else(|| {
                        EmbedError::InvariantViolation(format!(
                            "V3 vertex {v} has {usable} usable targets (need {}), and no \
                             long-edge certificate could be built",
                            d_param - i
                        ))
                    })?;
                    return Ok(ExtendStep::Outcome(
                        EmbedOutcome::WellPlaced(got.0, got.1),
                        traces,
                    ));
                }
            }
        }

        procedure_two(t, p, &mut state, params.delta, params.d, k)?;

        // keep a pairwise vertex-disjoint subset of the extended paths
        let mut kept: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for (&u, &(v, w)) in &state.extensions {
            let mut q = state.qpaths[&u].clone();
            q.push(v);
            q.push(w);
            if q.iter().all(|x| !used.contains(x)) {
                used.extend(q.iter().copied());
                kept.push((w, q));
            }
        }
        let survivors = kept.len();
        traces.push(RoundTrace {
            anchor_index,
            i,
            u_count,
            s1_count: state.s1.len(),
            s2_count: state.s2.len(),
            survivors,
            eps: state.eps,
            recurrence_floor: state.eps / (2.0 * (i + 1) as f64) * u_count as f64
                - 2.0 * k as f64,
        });
        let floor = state.s2.len().div_ceil(2 * i + 2);
        if survivors < floor || survivors == 0 {
            return Ok(ExtendStep::Outcome(
                EmbedOutcome::Budget(BudgetReport {
                    anchors_built: p.anchors.len(),
                    round: i,
                    shortfall: format!(
                        "disjoint-path filter kept {survivors}, below the floor {floor}"
                    ),
                }),
                traces,
            ));
        }
        state.qpaths = kept.into_iter().collect();
    }

    // segment complete: pick the smallest endpoint and a fresh V1 anchor
    let (&u, q) = state
        .qpaths
        .iter()
        .next()
        .expect("the frontier was checked non-empty every round");
    let segment = q.clone();
    let mut new_set = path_set.clone();
    new_set.extend(segment.iter().copied());
    let full_path: Vec<usize> = p
        .vertex_list()
        .into_iter()
        .chain(segment.iter().copied())
        .collect();
    let v_l = match t
        .neighbors_in(u, 1)
        .into_iter()
        .find(|x| !new_set.contains(x))
    {
        Some(x) => x,
        None => {
            // all V1 neighbors of u already lie on the path
            let got = end_extract(t, &full_path, &p.goodness, u, k).ok_or_else(|| {
                EmbedError::InvariantViolation(format!(
                    "endpoint {u} has all V1 neighbors on the path and no certificate \
                     could be extracted"
                ))
            })?;
            return Ok(ExtendStep::Outcome(
                EmbedOutcome::WellPlaced(got.0, got.1),
                traces,
            ));
        }
    };
    new_set.insert(v_l);

    let mut next = GoodPath {
        anchors: p.anchors.iter().copied().chain([v_l]).collect(),
        segments: p.segments.iter().cloned().chain([segment.clone()]).collect(),
        goodness: p.goodness.clone(),
    };
    // repair the witness map: old targets may have been absorbed into the
    // path, new V2 vertices need fresh targets
    let v2_on_path: Vec<usize> = next
        .vertex_list()
        .into_iter()
        .filter(|&x| t.layer_of(x) == Some(2))
        .collect();
    for w in v2_on_path {
        let valid = next
            .goodness
            .get(&w)
            .is_some_and(|x| !new_set.contains(x));
        if !valid {
            match pick_witness(t, w, &new_set) {
                Some(x) => {
                    next.goodness.insert(w, x);
                }
                None => {
                    let got =
                        end_extract(t, &full_path, &p.goodness, u, k).ok_or_else(|| {
                            EmbedError::InvariantViolation(format!(
                                "vertex {w} lost its off-path witness and no certificate \
                                 could be extracted"
                            ))
                        })?;
                    return Ok(ExtendStep::Outcome(
                        EmbedOutcome::WellPlaced(got.0, got.1),
                        traces,
                    ));
                }
            }
        }
    }
    if !check_good(t, &next) {
        return Err(EmbedError::InvariantViolation(String::from(
            "extended path failed the goodness re-check",
        )));
    }
    Ok(ExtendStep::Extended(next, traces))
}

#[derive(Debug)]
pub struct EmbedReport {
    pub outcome: EmbedOutcome,
    pub rounds: Vec<RoundTrace>,
    pub anchors_built: usize,
}

/// Run the path build to completion from the smallest V1 vertex. Path
/// vertices are never reused, so more anchors than vertices is impossible;
/// the loop must end in a Theta outcome or a budget report.
pub fn embed_or_theta<'g>(
    t: &TrilayeredView<'g>,
    params: &EmbedParams,
) -> Result<EmbedReport, EmbedError> {
    if t.v2().is_empty() {
        return Ok(EmbedReport {
            outcome: EmbedOutcome::Budget(BudgetReport {
                anchors_built: 0,
                round: 0,
                shortfall: String::from("V2 is empty"),
            }),
            rounds: Vec::new(),
            anchors_built: 0,
        });
    }
    let v0 = match t.v1().iter().next() {
        Some(&v) => v,
        None => {
            return Ok(EmbedReport {
                outcome: EmbedOutcome::Budget(BudgetReport {
                    anchors_built: 0,
                    round: 0,
                    shortfall: String::from("V1 is empty"),
                }),
                rounds: Vec::new(),
                anchors_built: 0,
            })
        }
    };
    let mut path = GoodPath::single(v0);
    let mut rounds = Vec::new();
    let n = t.base().vertex_count();
    loop {
        if path.anchors.len() > n {
            return Err(EmbedError::InvariantViolation(String::from(
                "more anchors than vertices: path vertices were reused",
            )));
        }
        match extend_once(t, &path, params)? {
            ExtendStep::Extended(next, mut tr) => {
                rounds.append(&mut tr);
                path = next;
            }
            ExtendStep::Outcome(outcome, mut tr) => {
                rounds.append(&mut tr);
                return Ok(EmbedReport {
                    outcome,
                    rounds,
                    anchors_built: path.anchors.len(),
                });
            }
            ExtendStep::_Phantom(_) => unreachable!(),
        }
    }
}
