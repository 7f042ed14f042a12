//! Minimum-degree peeling of trilayered views, the three-way base step, and
//! the iterated subset chain over V2 with full invariant tracking.
//!
//! Every outcome is self-checking: the base step re-verifies the minimum
//! degree spec of a surviving subgraph, the edge-retention and size bounds of
//! a shrunk V2, and runs the certificate checker on any Theta-graph before
//! returning it.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use serde::Serialize;

use crate::graph::{BipartiteView, TrilayeredView};
use crate::theta::{
    find_theta_avg_degree, find_theta_min_degree, peel_view_min_degree, verify_theta,
    ThetaCertificate, ThetaError,
};

/// Per-direction degree floors of a trilayered graph: V1->V2, V2->V1,
/// V2->V3, V3->V2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinDegSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl MinDegSpec {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> MinDegSpec {
        MinDegSpec { a, b, c, d }
    }
}

/// Which degree floor a removed vertex violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DegreeSide {
    V1ToV2,
    V2ToV1,
    V2ToV3,
    V3ToV2,
}

#[derive(Debug, Clone, Serialize)]
pub struct Removal {
    pub vertex: usize,
    pub layer: u8,
    pub side: DegreeSide,
    pub degree_at_removal: usize,
}

/// Full transcript of one peeling run, including the sets the base-step
/// analysis needs: R (V2 vertices removed for too few live V3 neighbors),
/// S (V2 vertices with at least 4k^2 neighbors in V1, computed on the input
/// view), E' (V2-V3 edges whose V3 endpoint was removed first), and
/// V2~ = R \ S.
#[derive(Debug, Clone)]
pub struct PeelTranscript {
    pub removals: Vec<Removal>,
    pub r: BTreeSet<usize>,
    pub s: BTreeSet<usize>,
    pub eprime: Vec<(usize, usize)>,
    pub v2_tilde: BTreeSet<usize>,
}

/// Peel a trilayered view to the given minimum degree spec.
///
/// Removal rule: scan the sides in order (V1->V2, V2->V1, V2->V3, V3->V2)
/// and remove the smallest-id violator of the first side that has one. The
/// surviving sets form the unique maximal subgraph meeting the spec.
pub fn peel_to_min_deg<'g>(
    t: &TrilayeredView<'g>,
    spec: &MinDegSpec,
    k: usize,
) -> (Option<TrilayeredView<'g>>, PeelTranscript) {
    let s_threshold = 4 * k * k;
    let s: BTreeSet<usize> = t
        .v2()
        .iter()
        .copied()
        .filter(|&v| t.degree_in(v, 1) >= s_threshold)
        .collect();

    let mut alive1 = t.v1().clone();
    let mut alive2 = t.v2().clone();
    let mut alive3 = t.v3().clone();
    let mut removals: Vec<Removal> = Vec::new();
    let mut removed_at: alloc::collections::BTreeMap<usize, usize> =
        alloc::collections::BTreeMap::new();

    // incremental degree counters per retained direction and one violator
    // set per side; degrees only decrease, so a violator stays one until
    // removed and the sets never need re-validation
    use alloc::collections::BTreeMap;
    let mut deg12: BTreeMap<usize, usize> =
        alive1.iter().map(|&v| (v, t.degree_in(v, 2))).collect();
    let mut deg21: BTreeMap<usize, usize> =
        alive2.iter().map(|&v| (v, t.degree_in(v, 1))).collect();
    let mut deg23: BTreeMap<usize, usize> =
        alive2.iter().map(|&v| (v, t.degree_in(v, 3))).collect();
    let mut deg32: BTreeMap<usize, usize> =
        alive3.iter().map(|&v| (v, t.degree_in(v, 2))).collect();
    let below = |deg: usize, floor: f64| (deg as f64) < floor;
    let mut viol_a: BTreeSet<usize> = deg12
        .iter()
        .filter(|&(_, &d)| below(d, spec.a))
        .map(|(&v, _)| v)
        .collect();
    let mut viol_b: BTreeSet<usize> = deg21
        .iter()
        .filter(|&(_, &d)| below(d, spec.b))
        .map(|(&v, _)| v)
        .collect();
    let mut viol_c: BTreeSet<usize> = deg23
        .iter()
        .filter(|&(_, &d)| below(d, spec.c))
        .map(|(&v, _)| v)
        .collect();
    let mut viol_d: BTreeSet<usize> = deg32
        .iter()
        .filter(|&(_, &d)| below(d, spec.d))
        .map(|(&v, _)| v)
        .collect();

    loop {
        let (v, layer, side) = if let Some(&v) = viol_a.iter().next() {
            (v, 1u8, DegreeSide::V1ToV2)
        } else if let Some(&v) = viol_b.iter().next() {
            (v, 2, DegreeSide::V2ToV1)
        } else if let Some(&v) = viol_c.iter().next() {
            (v, 2, DegreeSide::V2ToV3)
        } else if let Some(&v) = viol_d.iter().next() {
            (v, 3, DegreeSide::V3ToV2)
        } else {
            break;
        };
        let deg = match side {
            DegreeSide::V1ToV2 => deg12[&v],
            DegreeSide::V2ToV1 => deg21[&v],
            DegreeSide::V2ToV3 => deg23[&v],
            DegreeSide::V3ToV2 => deg32[&v],
        };
        match layer {
            1 => {
                alive1.remove(&v);
                deg12.remove(&v);
                viol_a.remove(&v);
                for &u in t.base().neighbors(v) {
                    if let Some(d) = deg21.get_mut(&u) {
                        *d -= 1;
                        if below(*d, spec.b) {
                            viol_b.insert(u);
                        }
                    }
                }
            }
            2 => {
                alive2.remove(&v);
                deg21.remove(&v);
                deg23.remove(&v);
                viol_b.remove(&v);
                viol_c.remove(&v);
                for &u in t.base().neighbors(v) {
                    if let Some(d) = deg12.get_mut(&u) {
                        *d -= 1;
                        if below(*d, spec.a) {
                            viol_a.insert(u);
                        }
                    } else if let Some(d) = deg32.get_mut(&u) {
                        *d -= 1;
                        if below(*d, spec.d) {
                            viol_d.insert(u);
                        }
                    }
                }
            }
            _ => {
                alive3.remove(&v);
                deg32.remove(&v);
                viol_d.remove(&v);
                for &u in t.base().neighbors(v) {
                    if let Some(d) = deg23.get_mut(&u) {
                        *d -= 1;
                        if below(*d, spec.c) {
                            viol_c.insert(u);
                        }
                    }
                }
            }
        }
        removed_at.insert(v, removals.len());
        removals.push(Removal {
            vertex: v,
            layer,
            side,
            degree_at_removal: deg,
        });
    }

    let r: BTreeSet<usize> = removals
        .iter()
        .filter(|rm| rm.layer == 2 && rm.side == DegreeSide::V2ToV3)
        .map(|rm| rm.vertex)
        .collect();
    let mut eprime = Vec::new();
    for &u in t.v2() {
        for v in t.neighbors_in(u, 3) {
            if let Some(&v_time) = removed_at.get(&v) {
                let u_later = removed_at.get(&u).map_or(true, |&u_time| u_time > v_time);
                if u_later {
                    eprime.push((u, v));
                }
            }
        }
    }
    let v2_tilde: BTreeSet<usize> = r.difference(&s).copied().collect();
    let transcript = PeelTranscript {
        removals,
        r,
        s,
        eprime,
        v2_tilde,
    };
    let survivor = if alive1.is_empty() && alive2.is_empty() && alive3.is_empty() {
        None
    } else {
        Some(t.restrict(alive1, alive2, alive3))
    };
    (survivor, transcript)
}

/// True iff the view satisfies the spec vertexwise.
pub fn satisfies_spec(t: &TrilayeredView<'_>, spec: &MinDegSpec) -> bool {
    t.v1()
        .iter()
        .all(|&v| t.degree_in(v, 2) as f64 >= spec.a)
        && t.v2().iter().all(|&v| {
            t.degree_in(v, 1) as f64 >= spec.b && t.degree_in(v, 3) as f64 >= spec.c
        })
        && t.v3().iter().all(|&v| t.degree_in(v, 2) as f64 >= spec.d)
}

/// One evaluated inequality with both sides.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

impl InequalityCheck {
    fn ge(name: &str, lhs: f64, rhs: f64) -> InequalityCheck {
        InequalityCheck {
            name: String::from(name),
            lhs,
            rhs,
            pass: lhs >= rhs,
        }
    }

    /// >= with a hair of relative slack, for derived floating-point chains.
    fn ge_approx(name: &str, lhs: f64, rhs: f64) -> InequalityCheck {
        let tol = 1e-9 * lhs.abs().max(rhs.abs()).max(1.0);
        InequalityCheck {
            name: String::from(name),
            lhs,
            rhs,
            pass: lhs >= rhs - tol,
        }
    }

    fn le(name: &str, lhs: f64, rhs: f64) -> InequalityCheck {
        InequalityCheck {
            name: String::from(name),
            lhs,
            rhs,
            pass: lhs <= rhs,
        }
    }
}

impl fmt::Display for InequalityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} vs {} ({})",
            self.name,
            self.lhs,
            self.rhs,
            if self.pass { "holds" } else { "violated" }
        )
    }
}

#[derive(Debug)]
pub enum TrilayerError {
    /// A stated precondition inequality failed; carries both sides.
    Precondition(InequalityCheck),
    /// A V2 vertex below the required degree toward V3.
    LowV2ToV3 {
        vertex: usize,
        degree: usize,
        required: f64,
    },
    /// The proof guarantees a Theta-graph here but the finder could not
    /// certify one; always a bug, never silently ignored.
    InvariantViolation(String),
    Theta(ThetaError),
}

impl fmt::Display for TrilayerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrilayerError::Precondition(c) => write!(f, "precondition failed: {c}"),
            TrilayerError::LowV2ToV3 {
                vertex,
                degree,
                required,
            } => write!(
                f,
                "vertex {vertex} has only {degree} neighbors toward V3, required {required}"
            ),
            TrilayerError::InvariantViolation(msg) => write!(f, "invariant violation: {msg}"),
            TrilayerError::Theta(e) => write!(f, "theta finder: {e}"),
        }
    }
}

impl core::error::Error for TrilayerError {}

impl From<ThetaError> for TrilayerError {
    fn from(e: ThetaError) -> Self {
        TrilayerError::Theta(e)
    }
}

/// The three-way outcome of the base step.
#[derive(Debug)]
pub enum BaseOutcome<'g> {
    /// A Theta-graph in G[V1, V2], verified.
    ThetaFound(ThetaCertificate),
    /// A surviving trilayered subgraph meeting the spec (re-verified).
    Subgraph {
        view: TrilayeredView<'g>,
        transcript: PeelTranscript,
    },
    /// V2~ = R \ S with the retention and size bounds re-verified.
    Shrunk {
        v2_tilde: BTreeSet<usize>,
        retention: InequalityCheck,
        size_bound: InequalityCheck,
        transcript: PeelTranscript,
    },
}

/// Search G[V1, V2] (or its dense S-side part) for the average-degree
/// witness the proof guarantees when peeling empties and the shrink bounds
/// both fail.
fn forced_theta<'g>(
    t: &TrilayeredView<'g>,
    s: &BTreeSet<usize>,
    k: usize,
) -> Result<ThetaCertificate, TrilayerError> {
    let base = t.base();
    if !s.is_empty() {
        let view = BipartiteView::new(base, t.v1().clone(), s.clone())
            .expect("S is a subset of V2");
        let n = view.vertex_count();
        let e = view.edge_count();
        if n > 0 && 2 * e >= 2 * k * n {
            let cert = find_theta_avg_degree(&view, k)?;
            return Ok(cert);
        }
    }
    let whole = t.bipartite_12();
    let peeled = peel_view_min_degree(&whole, k);
    if peeled.vertex_count() > 0 {
        let cert = find_theta_min_degree(&peeled, k)?;
        return Ok(cert);
    }
    Err(TrilayerError::InvariantViolation(String::from(
        "peeling emptied the view, shrink bounds failed, and no theta witness was found",
    )))
}

/// The base step: peel toward the spec and report exactly one of the three
/// outcomes. Requires the edge-budget inequality
/// a*e(V1,V2) >= (A+k+1)|V1| + B|V2| and V2->V3 degrees >= d + 4k^2 + C.
pub fn base_step<'g>(
    t: &TrilayeredView<'g>,
    a: f64,
    spec: &MinDegSpec,
    d: f64,
    k: usize,
) -> Result<BaseOutcome<'g>, TrilayerError> {
    let e12 = t.e12() as f64;
    let n1 = t.v1().len() as f64;
    let n2 = t.v2().len() as f64;
    let budget = InequalityCheck::ge(
        "edge-budget",
        a * e12,
        (spec.a + k as f64 + 1.0) * n1 + spec.b * n2,
    );
    if !budget.pass {
        return Err(TrilayerError::Precondition(budget));
    }
    let v3_floor = d + (4 * k * k) as f64 + spec.c;
    for &v in t.v2() {
        let deg = t.degree_in(v, 3);
        if (deg as f64) < v3_floor {
            return Err(TrilayerError::LowV2ToV3 {
                vertex: v,
                degree: deg,
                required: v3_floor,
            });
        }
    }

    let (survivor, transcript) = peel_to_min_deg(t, spec, k);
    if let Some(view) = survivor {
        if !satisfies_spec(&view, spec) {
            return Err(TrilayerError::InvariantViolation(String::from(
                "peel survivor fails the spec re-check",
            )));
        }
        return Ok(BaseOutcome::Subgraph { view, transcript });
    }

    let e_tilde: usize = transcript
        .v2_tilde
        .iter()
        .map(|&v| t.degree_in(v, 1))
        .sum();
    let retention = InequalityCheck::ge(
        "shrunk-edge-retention",
        e_tilde as f64,
        (1.0 - a) * e12,
    );
    let size_bound = InequalityCheck::le(
        "shrunk-size-bound",
        transcript.v2_tilde.len() as f64,
        spec.d * t.v3().len() as f64 / d,
    );
    if retention.pass && size_bound.pass {
        return Ok(BaseOutcome::Shrunk {
            v2_tilde: transcript.v2_tilde.clone(),
            retention,
            size_bound,
            transcript,
        });
    }

    let cert = forced_theta(t, &transcript.s, k)?;
    if !verify_theta(t.base(), &cert, k) {
        return Err(TrilayerError::InvariantViolation(String::from(
            "forced theta certificate failed verification",
        )));
    }
    Ok(BaseOutcome::ThetaFound(cert))
}

/// Report of the three feasibility conditions, natural log throughout.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub checks: [InequalityCheck; 3],
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Evaluate the three conditions gating the chain:
/// (1) d*e(V1,V2) >= 40 k log k |V3|,
/// (2) e(V1,V2) >= 6k (log k + 1)^2 (2 Delta k)^{2k-1} |V1|,
/// (3) e(V1,V2) >= 20 (log k + 1) |V2|.
pub fn check_conditions(
    t: &TrilayeredView<'_>,
    d: f64,
    k: usize,
    delta: f64,
) -> ConditionReport {
    let e12 = t.e12() as f64;
    let kf = k as f64;
    let log_k = libm::log(kf);
    let n1 = t.v1().len() as f64;
    let n2 = t.v2().len() as f64;
    let n3 = t.v3().len() as f64;
    ConditionReport {
        checks: [
            InequalityCheck::ge("condition-1", d * e12, 40.0 * kf * log_k * n3),
            InequalityCheck::ge(
                "condition-2",
                e12,
                6.0 * kf
                    * (log_k + 1.0)
                    * (log_k + 1.0)
                    * libm::pow(2.0 * delta * kf, 2.0 * kf - 1.0)
                    * n1,
            ),
            InequalityCheck::ge("condition-3", e12, 20.0 * (log_k + 1.0) * n2),
        ],
    }
}

/// Per-step record of the chain: the schedule values, the sizes, and every
/// tracked invariant evaluated at that step.
#[derive(Debug, Clone, Serialize)]
pub struct ChainStep {
    pub i: usize,
    pub a_i: f64,
    pub d_i: f64,
    pub cap_a: f64,
    pub cap_b: f64,
    pub cap_d: f64,
    pub v2_size: usize,
    pub e12: usize,
    pub checks: Vec<InequalityCheck>,
}

#[derive(Debug)]
pub enum ChainOutcome<'g> {
    ThetaFound(ThetaCertificate),
    Subgraph {
        view: TrilayeredView<'g>,
        spec: MinDegSpec,
        eq4: InequalityCheck,
        eq5: InequalityCheck,
    },
    Failure(FailureReport),
}

/// First violated tracked inequality and where it happened.
#[derive(Debug, Clone, Serialize)]
pub struct FailureReport {
    pub step: usize,
    pub violated: InequalityCheck,
    /// Context for the post-chain contradiction branch: both gating
    /// conditions are reported there without deciding which one the
    /// derivation actually contradicts.
    pub context: Vec<InequalityCheck>,
}

#[derive(Debug)]
pub struct ChainResult<'g> {
    pub outcome: ChainOutcome<'g>,
    pub steps: Vec<ChainStep>,
    pub conditions: ConditionReport,
    pub t_steps: usize,
}

/// Number of chain steps: ceil(log k), at least 1. Tests may override.
pub fn default_chain_steps(k: usize) -> usize {
    let t = libm::ceil(libm::log(k as f64)) as usize;
    t.max(1)
}

/// Run the iterated subset chain on V2.
///
/// Requires conditions (1)-(3) and V2->V3 minimum degree d + 4k^2 + C. Each
/// step derives (a_i, A_i, B_i, D_i) from the current subset, runs the base
/// step, and records invariants: edge retention (per-step and cumulative),
/// the density growth floor, the eventual-density bound, and the shrink
/// bound on |V2^(i+1)|.
pub fn iterate_chain<'g>(
    t: &TrilayeredView<'g>,
    d: f64,
    k: usize,
    delta: f64,
    c_floor: f64,
    t_override: Option<usize>,
) -> Result<ChainResult<'g>, TrilayerError> {
    let conditions = check_conditions(t, d, k, delta);
    for check in &conditions.checks {
        if !check.pass {
            return Err(TrilayerError::Precondition(check.clone()));
        }
    }
    let v3_floor = d + (4 * k * k) as f64 + c_floor;
    for &v in t.v2() {
        let deg = t.degree_in(v, 3);
        if (deg as f64) < v3_floor {
            return Err(TrilayerError::LowV2ToV3 {
                vertex: v,
                degree: deg,
                required: v3_floor,
            });
        }
    }

    let t_steps = t_override.unwrap_or_else(|| default_chain_steps(k));
    let kf = k as f64;
    let e12_0 = t.e12() as f64;
    let n1 = t.v1().len() as f64;
    let n3 = t.v3().len() as f64;
    let d0 = e12_0 / t.v2().len() as f64;
    let big_f = d * e12_0 / (8.0 * kf * n3);

    let mut current = t.clone();
    let mut steps: Vec<ChainStep> = Vec::new();
    let mut prev_d = d0;

    for i in 0..t_steps {
        let a_i = 1.0 / (t_steps - i + 1) as f64;
        let e12_i = current.e12() as f64;
        let n2_i = current.v2().len() as f64;
        if n2_i == 0.0 {
            return Err(TrilayerError::InvariantViolation(String::from(
                "chain subset emptied",
            )));
        }
        let d_i = e12_i / n2_i;
        let cap_a = a_i * e12_i / (2.0 * n1) - kf - 1.0;
        let cap_b = a_i * d_i / 4.0 + 5.0;
        let cap_d = (2.0 * kf).min(8.0 * kf / (a_i * d_i));
        let spec = MinDegSpec::new(cap_a, cap_b, c_floor, cap_d);

        let mut checks = Vec::new();
        // cumulative retention: e(V1, V2^(i)) >= ((t-i+1)/(t+1)) e(V1, V2)
        checks.push(InequalityCheck::ge_approx(
            "cumulative-retention",
            e12_i,
            (t_steps - i + 1) as f64 / (t_steps + 1) as f64 * e12_0,
        ));
        // density floor accumulated so far: d_0/d_i <= e(t+1)/(5^i (t-i+1))
        checks.push(InequalityCheck::le(
            "density-growth",
            d0 / d_i,
            libm::exp(1.0) * (t_steps + 1) as f64
                / (libm::pow(5.0, i as f64) * (t_steps - i + 1) as f64),
        ));

        let outcome = match base_step(&current, a_i, &spec, d, k) {
            Ok(outcome) => outcome,
            Err(TrilayerError::Precondition(check)) => {
                steps.push(ChainStep {
                    i,
                    a_i,
                    d_i,
                    cap_a,
                    cap_b,
                    cap_d,
                    v2_size: n2_i as usize,
                    e12: e12_i as usize,
                    checks,
                });
                return Ok(ChainResult {
                    outcome: ChainOutcome::Failure(FailureReport {
                        step: i,
                        violated: check,
                        context: Vec::new(),
                    }),
                    steps,
                    conditions,
                    t_steps,
                });
            }
            Err(e) => return Err(e),
        };

        match outcome {
            BaseOutcome::ThetaFound(cert) => {
                steps.push(ChainStep {
                    i,
                    a_i,
                    d_i,
                    cap_a,
                    cap_b,
                    cap_d,
                    v2_size: n2_i as usize,
                    e12: e12_i as usize,
                    checks,
                });
                return Ok(ChainResult {
                    outcome: ChainOutcome::ThetaFound(cert),
                    steps,
                    conditions,
                    t_steps,
                });
            }
            BaseOutcome::Subgraph { view, .. } => {
                let eq4 = InequalityCheck::ge(
                    "subgraph-a-floor",
                    cap_a,
                    2.0 * kf * libm::pow(delta * cap_d, cap_d - 1.0),
                );
                let eq5 =
                    InequalityCheck::ge("subgraph-b-floor", (cap_b - 4.0) * cap_d, 2.0 * kf);
                steps.push(ChainStep {
                    i,
                    a_i,
                    d_i,
                    cap_a,
                    cap_b,
                    cap_d,
                    v2_size: n2_i as usize,
                    e12: e12_i as usize,
                    checks,
                });
                return Ok(ChainResult {
                    outcome: ChainOutcome::Subgraph {
                        view,
                        spec,
                        eq4,
                        eq5,
                    },
                    steps,
                    conditions,
                    t_steps,
                });
            }
            BaseOutcome::Shrunk {
                v2_tilde,
                retention,
                size_bound,
                ..
            } => {
                let next: BTreeSet<usize> = v2_tilde;
                let next_view =
                    current.restrict(current.v1().clone(), next.clone(), current.v3().clone());
                let e_next = next_view.e12() as f64;
                let d_next = if next.is_empty() {
                    0.0
                } else {
                    e_next / next.len() as f64
                };
                checks.push(retention.clone());
                checks.push(size_bound.clone());
                // density growth floor for the next subset
                checks.push(InequalityCheck::ge_approx(
                    "density-step-floor",
                    d_next,
                    a_i * prev_d * (t_steps - i) as f64 / (t_steps + 1) as f64 * big_f,
                ));
                let first_violation = checks.iter().find(|c| !c.pass).cloned();
                steps.push(ChainStep {
                    i,
                    a_i,
                    d_i,
                    cap_a,
                    cap_b,
                    cap_d,
                    v2_size: n2_i as usize,
                    e12: e12_i as usize,
                    checks,
                });
                if let Some(violated) = first_violation {
                    return Ok(ChainResult {
                        outcome: ChainOutcome::Failure(FailureReport {
                            step: i,
                            violated,
                            context: Vec::new(),
                        }),
                        steps,
                        conditions,
                        t_steps,
                    });
                }
                prev_d = d_next;
                current = next_view;
            }
        }
    }

    // post-chain endgame: the final subset must have average degree >= 2k in
    // G[V1, V2^(t)], otherwise the derivation d0 < 20(t+1) contradicts the
    // gating conditions (reported without deciding which one).
    let final_bip = current.bipartite_12();
    let n = final_bip.vertex_count() as f64;
    let avg = if n == 0.0 {
        0.0
    } else {
        2.0 * final_bip.edge_count() as f64 / n
    };
    let avg_check = InequalityCheck::ge("post-chain-average-degree", avg, 2.0 * kf);
    if avg_check.pass {
        let cert = find_theta_avg_degree(&final_bip, k)?;
        if !verify_theta(t.base(), &cert, k) {
            return Err(TrilayerError::InvariantViolation(String::from(
                "post-chain theta certificate failed verification",
            )));
        }
        return Ok(ChainResult {
            outcome: ChainOutcome::ThetaFound(cert),
            steps,
            conditions,
            t_steps,
        });
    }
    let context = alloc::vec![
        InequalityCheck::ge(
            "derived-d0-floor",
            d0,
            20.0 * (t_steps + 1) as f64,
        ),
        conditions.checks[0].clone(),
        conditions.checks[2].clone(),
    ];
    Ok(ChainResult {
        outcome: ChainOutcome::Failure(FailureReport {
            step: t_steps,
            violated: avg_check,
            context,
        }),
        steps,
        conditions,
        t_steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use alloc::vec::Vec;

    fn view<'g>(
        g: &'g Graph,
        v1: &[usize],
        v2: &[usize],
        v3: &[usize],
    ) -> TrilayeredView<'g> {
        TrilayeredView::new(
            g,
            v1.iter().copied().collect(),
            v2.iter().copied().collect(),
            v3.iter().copied().collect(),
        )
        .unwrap()
    }

    #[test]
    fn peel_trivial_path_survives() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let t = view(&g, &[0], &[1], &[2]);
        let spec = MinDegSpec::new(1.0, 1.0, 1.0, 1.0);
        let (survivor, transcript) = peel_to_min_deg(&t, &spec, 2);
        assert!(survivor.is_some());
        assert!(transcript.removals.is_empty());
    }

    #[test]
    fn peel_cascade_empties() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let t = view(&g, &[0], &[1], &[2]);
        let spec = MinDegSpec::new(2.0, 1.0, 1.0, 1.0);
        let (survivor, transcript) = peel_to_min_deg(&t, &spec, 2);
        assert!(survivor.is_none());
        assert_eq!(transcript.removals[0].vertex, 0);
        assert_eq!(transcript.removals[0].side, DegreeSide::V1ToV2);
        assert_eq!(transcript.removals.len(), 3);
    }

    /// Exhaustive fixpoint oracle: the union of all sub-views satisfying the
    /// spec (peeling uniqueness makes the maximal one unique).
    fn brute_force_peel(
        t: &TrilayeredView<'_>,
        spec: &MinDegSpec,
    ) -> (BTreeSet<usize>, BTreeSet<usize>, BTreeSet<usize>) {
        let all: Vec<usize> = t
            .v1()
            .iter()
            .chain(t.v2().iter())
            .chain(t.v3().iter())
            .copied()
            .collect();
        let n = all.len();
        assert!(n <= 16);
        let mut best: Option<(usize, BTreeSet<usize>)> = None;
        for mask in 0u32..(1 << n) {
            let keep: BTreeSet<usize> = all
                .iter()
                .enumerate()
                .filter(|&(i, _)| (mask >> i) & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            let sub = t.restrict(
                t.v1().intersection(&keep).copied().collect(),
                t.v2().intersection(&keep).copied().collect(),
                t.v3().intersection(&keep).copied().collect(),
            );
            if satisfies_spec(&sub, spec)
                && best.as_ref().map_or(true, |(size, _)| keep.len() > *size)
            {
                best = Some((keep.len(), keep));
            }
        }
        let keep = best.map(|(_, k)| k).unwrap_or_default();
        (
            t.v1().intersection(&keep).copied().collect(),
            t.v2().intersection(&keep).copied().collect(),
            t.v3().intersection(&keep).copied().collect(),
        )
    }

    #[test]
    fn peel_half_of_v2_matches_brute_force() {
        // V2 = {2,3,4,5}; only 2 and 3 meet [1:2, 2:1]
        let g = Graph::from_edges(
            8,
            &[
                (0, 2),
                (1, 2),
                (0, 3),
                (1, 3),
                (0, 4),
                (1, 5),
                (2, 6),
                (2, 7),
                (3, 6),
                (3, 7),
                (4, 6),
                (5, 7),
            ],
        )
        .unwrap();
        let t = view(&g, &[0, 1], &[2, 3, 4, 5], &[6, 7]);
        let spec = MinDegSpec::new(1.0, 2.0, 2.0, 1.0);
        let (survivor, _) = peel_to_min_deg(&t, &spec, 2);
        let survivor = survivor.unwrap();
        assert_eq!(survivor.v2(), &BTreeSet::from([2, 3]));
        let (b1, b2, b3) = brute_force_peel(&t, &spec);
        assert_eq!(survivor.v1(), &b1);
        assert_eq!(survivor.v2(), &b2);
        assert_eq!(survivor.v3(), &b3);
    }

    fn complete_trilayer(n1: usize, n2: usize, n3: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n1 {
            for j in 0..n2 {
                edges.push((i, n1 + j));
            }
        }
        for j in 0..n2 {
            for l in 0..n3 {
                edges.push((n1 + j, n1 + n2 + l));
            }
        }
        Graph::from_edges(n1 + n2 + n3, &edges).unwrap()
    }

    #[test]
    fn base_step_subgraph_outcome() {
        // dense complete trilayer survives its spec outright
        let g = complete_trilayer(6, 12, 20);
        let v1: Vec<usize> = (0..6).collect();
        let v2: Vec<usize> = (6..18).collect();
        let v3: Vec<usize> = (18..38).collect();
        let t = view(&g, &v1, &v2, &v3);
        // k = 2: the V2->V3 floor is d + 16 + C = 19 <= 20
        let spec = MinDegSpec::new(2.0, 2.0, 2.0, 2.0);
        let outcome = base_step(&t, 0.9, &spec, 1.0, 2).unwrap();
        match outcome {
            BaseOutcome::Subgraph { view, .. } => {
                assert!(satisfies_spec(&view, &spec));
            }
            other => panic!("expected Subgraph, got {other:?}"),
        }
    }

    #[test]
    fn base_step_shrunk_outcome() {
        // complete V1 x V2 (30 x 8), each V2 vertex gets 38 private V3
        // leaves: the whole V3 side peels (degree 1 < 2), dragging V2 out
        // through the C side, and no V2 vertex reaches 4k^2 = 36 V1
        // neighbors, so V2~ keeps every edge.
        let mut edges = Vec::new();
        for i in 0..30 {
            for j in 0..8 {
                edges.push((i, 30 + j));
            }
        }
        let mut next = 38;
        for j in 0..8 {
            for _ in 0..38 {
                edges.push((30 + j, next));
                next += 1;
            }
        }
        let g = Graph::from_edges(next, &edges).unwrap();
        let v1: Vec<usize> = (0..30).collect();
        let v2: Vec<usize> = (30..38).collect();
        let v3: Vec<usize> = (38..next).collect();
        let t = view(&g, &v1, &v2, &v3);
        let spec = MinDegSpec::new(1.0, 2.0, 1.0, 2.0);
        match base_step(&t, 0.8, &spec, 1.0, 3).unwrap() {
            BaseOutcome::Shrunk {
                v2_tilde,
                retention,
                size_bound,
                transcript,
            } => {
                assert_eq!(v2_tilde.len(), 8);
                assert!(transcript.s.is_empty());
                assert_eq!(transcript.r.len(), 8);
                assert_eq!(retention.lhs, 240.0);
                assert!((retention.rhs - 48.0).abs() < 1e-9);
                assert_eq!(size_bound.rhs, 608.0);
                // every V2-V3 edge lost its V3 endpoint first
                assert_eq!(transcript.eprime.len(), 8 * 38);
            }
            other => panic!("expected Shrunk, got {other:?}"),
        }
    }

    #[test]
    fn base_step_forced_theta_outcome() {
        // complete V1 x V2 (40 x 40) puts all of V2 into S, V3 peels away
        // (degree 38 < 41), so V2~ is empty and the edge-retention bound
        // fails; the dense S side must then yield a Theta-graph.
        let mut edges = Vec::new();
        for i in 0..40 {
            for j in 0..40 {
                edges.push((i, 40 + j));
            }
        }
        for j in 0..40 {
            for l in 0..38 {
                edges.push((40 + j, 80 + l));
            }
        }
        let g = Graph::from_edges(118, &edges).unwrap();
        let v1: Vec<usize> = (0..40).collect();
        let v2: Vec<usize> = (40..80).collect();
        let v3: Vec<usize> = (80..118).collect();
        let t = view(&g, &v1, &v2, &v3);
        let spec = MinDegSpec::new(1.0, 2.0, 1.0, 41.0);
        match base_step(&t, 0.8, &spec, 1.0, 3).unwrap() {
            BaseOutcome::ThetaFound(cert) => {
                assert!(verify_theta(&g, &cert, 3));
                assert!(cert.cycle.len() >= 6);
            }
            other => panic!("expected ThetaFound, got {other:?}"),
        }
    }

    #[test]
    fn base_step_precondition_error_reports_sides() {
        let g = complete_trilayer(2, 2, 2);
        let t = view(&g, &[0, 1], &[2, 3], &[4, 5]);
        let spec = MinDegSpec::new(50.0, 50.0, 1.0, 1.0);
        match base_step(&t, 0.5, &spec, 0.0, 2) {
            Err(TrilayerError::Precondition(check)) => {
                assert_eq!(check.name, "edge-budget");
                assert!(check.lhs < check.rhs);
            }
            other => panic!("expected precondition error, got {other:?}"),
        }
    }

    #[test]
    fn conditions_examples() {
        // empty V3 makes condition 1 trivial
        let g = complete_trilayer(2, 2, 2);
        let t = view(&g, &[0, 1], &[2, 3], &[]);
        let report = check_conditions(&t, 1.0, 4, 1.0);
        assert!(report.checks[0].pass);
        assert_eq!(report.checks[0].rhs, 0.0);
    }

    #[test]
    fn condition3_example_values() {
        // k=4, e(V1,V2)=100, |V2|=10: rhs = 20 (ln 4 + 1) * 10
        let g = complete_trilayer(10, 10, 1);
        let v1: Vec<usize> = (0..10).collect();
        let v2: Vec<usize> = (10..20).collect();
        let t = view(&g, &v1, &v2, &[20]);
        assert_eq!(t.e12(), 100);
        let report = check_conditions(&t, 1.0, 4, 1.0);
        let c3 = &report.checks[2];
        assert!((c3.rhs - 477.2588722239781).abs() < 1e-9);
        assert!(!c3.pass);
    }

    #[test]
    fn condition2_example_values() {
        // k=4, delta=1, |V1|=1: rhs = 6*4*(ln 4 + 1)^2 * 8^7
        let g = complete_trilayer(1, 2, 1);
        let t = view(&g, &[0], &[1, 2], &[3]);
        let report = check_conditions(&t, 1.0, 4, 1.0);
        let c2 = &report.checks[1];
        let expected = 24.0 * libm::pow(libm::log(4.0) + 1.0, 2.0) * 2097152.0;
        assert!((c2.rhs - expected).abs() / expected < 1e-12);
        assert!((c2.rhs - 2.866e8).abs() / 2.866e8 < 1e-3);
    }

    #[test]
    fn chain_schedule_values() {
        // a_i = 1/(t-i+1) for t = 3
        let t_steps = 3usize;
        let a: Vec<f64> = (0..t_steps)
            .map(|i| 1.0 / (t_steps - i + 1) as f64)
            .collect();
        assert_eq!(a, alloc::vec![0.25, 1.0 / 3.0, 0.5]);
        // D_i = min(2k, 8k/(a_i d_i)) with k = 4, a_i d_i = 32
        let cap_d = (2.0 * 4.0f64).min(8.0 * 4.0 / 32.0);
        assert_eq!(cap_d, 1.0);
    }

    #[test]
    fn default_steps() {
        assert_eq!(default_chain_steps(2), 1);
        assert_eq!(default_chain_steps(3), 2);
        assert_eq!(default_chain_steps(8), 3);
    }

    /// Complete V1 x V2 and V2 x V3: 45 x 650 x 43, k = 3.
    fn dense_chain_graph() -> Graph {
        complete_trilayer(45, 650, 43)
    }

    fn dense_chain_view(g: &Graph) -> TrilayeredView<'_> {
        let v1: Vec<usize> = (0..45).collect();
        let v2: Vec<usize> = (45..695).collect();
        let v3: Vec<usize> = (695..738).collect();
        view(g, &v1, &v2, &v3)
    }

    #[test]
    fn chain_subgraph_outcome() {
        let g = dense_chain_graph();
        let t = dense_chain_view(&g);
        let result = iterate_chain(&t, 2.0, 3, 0.25, 5.0, Some(1)).unwrap();
        assert!(result.conditions.all_hold());
        assert_eq!(result.steps.len(), 1);
        match result.outcome {
            ChainOutcome::Subgraph { view, spec, eq4, eq5 } => {
                assert!(satisfies_spec(&view, &spec));
                assert!(eq4.pass, "{eq4}");
                assert!(eq5.pass, "{eq5}");
                assert!((spec.a - 158.5).abs() < 1e-9);
                assert!((spec.b - 10.625).abs() < 1e-9);
                assert!((spec.d - 24.0 / 22.5).abs() < 1e-9);
            }
            other => panic!("expected Subgraph, got {other:?}"),
        }
        for step in &result.steps {
            for check in &step.checks {
                assert!(check.pass, "{check}");
            }
        }
    }

    #[test]
    fn chain_failure_reports_edge_budget() {
        // with the default two steps for k = 3, the first-step edge budget
        // needs average degree 60 on the V2 side; this instance has 45
        let g = dense_chain_graph();
        let t = dense_chain_view(&g);
        let result = iterate_chain(&t, 2.0, 3, 0.25, 5.0, None).unwrap();
        assert!(result.conditions.all_hold());
        assert_eq!(result.t_steps, 2);
        match result.outcome {
            ChainOutcome::Failure(report) => {
                assert_eq!(report.step, 0);
                assert_eq!(report.violated.name, "edge-budget");
                assert!(report.violated.lhs < report.violated.rhs);
            }
            other => panic!("expected Failure, got {other:?}"),
        }
    }

    #[test]
    fn chain_conditions_gate() {
        let g = complete_trilayer(3, 3, 3);
        let v1: Vec<usize> = (0..3).collect();
        let v2: Vec<usize> = (3..6).collect();
        let v3: Vec<usize> = (6..9).collect();
        let t = view(&g, &v1, &v2, &v3);
        match iterate_chain(&t, 1.0, 3, 1.0, 1.0, None) {
            Err(TrilayerError::Precondition(check)) => {
                assert!(check.name.starts_with("condition-"));
            }
            other => panic!("expected condition error, got {other:?}"),
        }
    }

    #[test]
    fn chain_forced_theta_outcome() {
        // complete K_{145,84} on V1 x V2, 438 private V3 leaves per V2
        // vertex; the entire V3 side peels (degree 1), V2 follows through
        // the C side, every V2 vertex has 145 >= 36 V1-neighbors, so the
        // shrunk set is empty, retention fails, and the dense V1-V2 side
        // must produce a Theta-graph
        let n1 = 145;
        let n2 = 84;
        let priv_per = 438;
        let mut edges = Vec::new();
        for i in 0..n1 {
            for j in 0..n2 {
                edges.push((i, n1 + j));
            }
        }
        let mut next = n1 + n2;
        for j in 0..n2 {
            for _ in 0..priv_per {
                edges.push((n1 + j, next));
                next += 1;
            }
        }
        let g = Graph::from_edges(next, &edges).unwrap();
        let v1: Vec<usize> = (0..n1).collect();
        let v2: Vec<usize> = (n1..n1 + n2).collect();
        let v3: Vec<usize> = (n1 + n2..next).collect();
        let t = view(&g, &v1, &v2, &v3);
        let result = iterate_chain(&t, 400.0, 3, 0.1, 2.0, Some(6)).unwrap();
        assert!(result.conditions.all_hold());
        match result.outcome {
            ChainOutcome::ThetaFound(cert) => {
                assert!(verify_theta(&g, &cert, 3));
            }
            other => panic!("expected ThetaFound, got {other:?}"),
        }
    }

    #[test]
    fn peel_order_independent() {
        use rand::seq::IteratorRandom;
        use rand::SeedableRng;

        // random small trilayered instances: the surviving set must match
        // a randomized removal order (fixpoint uniqueness)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for trial in 0..30 {
            let mut edges = Vec::new();
            for i in 0..4usize {
                for j in 4..9usize {
                    if rand::Rng::gen_bool(&mut rng, 0.55) {
                        edges.push((i, j));
                    }
                }
            }
            for j in 4..9usize {
                for l in 9..13usize {
                    if rand::Rng::gen_bool(&mut rng, 0.55) {
                        edges.push((j, l));
                    }
                }
            }
            if edges.is_empty() {
                continue;
            }
            let g = Graph::from_edges(13, &edges).unwrap();
            let v1: Vec<usize> = (0..4).collect();
            let v2: Vec<usize> = (4..9).collect();
            let v3: Vec<usize> = (9..13).collect();
            let t = view(&g, &v1, &v2, &v3);
            let spec = MinDegSpec::new(2.0, 2.0, 1.0, 2.0);
            let (survivor, _) = peel_to_min_deg(&t, &spec, 2);

            // randomized-order peel
            let mut a1: BTreeSet<usize> = t.v1().clone();
            let mut a2: BTreeSet<usize> = t.v2().clone();
            let mut a3: BTreeSet<usize> = t.v3().clone();
            loop {
                let cur = t.restrict(a1.clone(), a2.clone(), a3.clone());
                let violators: Vec<(usize, u8)> = a1
                    .iter()
                    .filter(|&&v| (cur.degree_in(v, 2) as f64) < spec.a)
                    .map(|&v| (v, 1u8))
                    .chain(a2.iter().filter_map(|&v| {
                        ((cur.degree_in(v, 1) as f64) < spec.b
                            || (cur.degree_in(v, 3) as f64) < spec.c)
                            .then_some((v, 2))
                    }))
                    .chain(a3.iter().filter_map(|&v| {
                        ((cur.degree_in(v, 2) as f64) < spec.d).then_some((v, 3))
                    }))
                    .collect();
                match violators.iter().choose(&mut rng) {
                    None => break,
                    Some(&(v, layer)) => {
                        match layer {
                            1 => a1.remove(&v),
                            2 => a2.remove(&v),
                            _ => a3.remove(&v),
                        };
                    }
                }
            }
            match survivor {
                None => assert!(
                    a1.is_empty() && a2.is_empty() && a3.is_empty(),
                    "trial {trial}"
                ),
                Some(s) => {
                    assert_eq!(s.v1(), &a1, "trial {trial}");
                    assert_eq!(s.v2(), &a2, "trial {trial}");
                    assert_eq!(s.v3(), &a3, "trial {trial}");
                }
            }
        }
    }
}
