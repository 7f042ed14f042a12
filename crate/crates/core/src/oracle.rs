//! Exhaustive, exponential-time ground-truth searches used to validate the
//! constructive modules at desk scale.
//!
//! Cycle enumeration is DFS from each anchor vertex with the
//! smallest-vertex-on-cycle convention: only vertices larger than the anchor
//! may appear after it, so every cycle is visited exactly twice (once per
//! direction) and the first hit, in DFS order with ascending neighbors, is
//! the lexicographically smallest representation. All searches are
//! deterministic; budget exhaustion is a third result state, never conflated
//! with "not found".

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::graph::{Graph, TrilayeredView};
use crate::theta::{ThetaCertificate, WellPlacedWitness};

/// Caps for exhaustive searches. `max_steps` counts DFS node expansions.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub max_vertices: usize,
    pub max_steps: u64,
}

impl SearchBudget {
    pub fn new(max_vertices: usize, max_steps: u64) -> SearchBudget {
        SearchBudget {
            max_vertices,
            max_steps,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_vertices: 16,
            max_steps: 50_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    NotFound,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

struct BudgetExceeded;

struct CycleSearch<'a> {
    g: &'a Graph,
    len: usize,
    steps_left: u64,
}

impl<'a> CycleSearch<'a> {
    /// Visit cycles of exactly `self.len` vertices in lexicographic order of
    /// their canonical representation. `accept` may reject a cycle to keep
    /// the enumeration going; the first accepted cycle is returned.
    fn run<F, T>(&mut self, accept: &mut F) -> Result<Option<T>, BudgetExceeded>
    where
        F: FnMut(&[usize]) -> Option<T>,
    {
        let n = self.g.vertex_count();
        if self.len < 3 || self.len > n {
            return Ok(None);
        }
        let mut path = Vec::with_capacity(self.len);
        let mut on_path = alloc::vec![false; n];
        for anchor in 0..n {
            path.clear();
            path.push(anchor);
            on_path[anchor] = true;
            let found = self.extend(anchor, &mut path, &mut on_path, accept)?;
            on_path[anchor] = false;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn extend<F, T>(
        &mut self,
        anchor: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        accept: &mut F,
    ) -> Result<Option<T>, BudgetExceeded>
    where
        F: FnMut(&[usize]) -> Option<T>,
    {
        if self.steps_left == 0 {
            return Err(BudgetExceeded);
        }
        self.steps_left -= 1;
        if path.len() == self.len {
            if self.g.has_edge(*path.last().unwrap(), anchor) {
                if let Some(t) = accept(path) {
                    return Ok(Some(t));
                }
            }
            return Ok(None);
        }
        let tail = *path.last().unwrap();
        for &u in self.g.neighbors(tail) {
            if u <= anchor || on_path[u] {
                continue;
            }
            path.push(u);
            on_path[u] = true;
            let found = self.extend(anchor, path, on_path, accept)?;
            path.pop();
            on_path[u] = false;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// The lexicographically smallest chord of a cycle, if any: the smallest
/// sorted edge pair joining cycle vertices at cyclic distance >= 2.
fn smallest_chord(g: &Graph, cycle: &[usize]) -> Option<(usize, usize)> {
    let l = cycle.len();
    let mut sorted: Vec<(usize, usize)> = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            let d = (j - i).min(l - (j - i));
            if d < 2 {
                continue;
            }
            let (a, b) = (cycle[i].min(cycle[j]), cycle[i].max(cycle[j]));
            if g.has_edge(a, b) {
                sorted.push((a, b));
            }
        }
    }
    sorted.into_iter().min()
}

/// Lexicographically smallest simple cycle of length exactly 2k, or none.
pub fn find_c2k_exact(
    g: &Graph,
    k: usize,
    budget: &SearchBudget,
) -> SearchOutcome<Vec<usize>> {
    if g.vertex_count() > budget.max_vertices {
        return SearchOutcome::BudgetExceeded;
    }
    if k < 2 {
        return SearchOutcome::NotFound;
    }
    let mut search = CycleSearch {
        g,
        len: 2 * k,
        steps_left: budget.max_steps,
    };
    match search.run(&mut |cycle: &[usize]| Some(cycle.to_vec())) {
        Ok(Some(c)) => SearchOutcome::Found(c),
        Ok(None) => SearchOutcome::NotFound,
        Err(BudgetExceeded) => SearchOutcome::BudgetExceeded,
    }
}

/// Lexicographically smallest Theta certificate (by cycle length, then cycle
/// sequence, then chord), or none.
pub fn find_theta_exact(
    g: &Graph,
    k: usize,
    budget: &SearchBudget,
) -> SearchOutcome<ThetaCertificate> {
    if g.vertex_count() > budget.max_vertices {
        return SearchOutcome::BudgetExceeded;
    }
    let mut steps_left = budget.max_steps;
    for len in (2 * k).max(4)..=g.vertex_count() {
        let mut search = CycleSearch { g, len, steps_left };
        let result = search.run(&mut |cycle: &[usize]| {
            smallest_chord(g, cycle).map(|chord| ThetaCertificate {
                cycle: cycle.to_vec(),
                chord,
            })
        });
        steps_left = search.steps_left;
        match result {
            Ok(Some(cert)) => return SearchOutcome::Found(cert),
            Ok(None) => {}
            Err(BudgetExceeded) => return SearchOutcome::BudgetExceeded,
        }
    }
    SearchOutcome::NotFound
}

/// Smallest well-placed Theta certificate in a trilayered view, with its
/// witness map (each V2 certificate vertex mapped to its smallest V1
/// neighbor outside the certificate), or none.
pub fn find_well_placed_theta_exact(
    t: &TrilayeredView<'_>,
    k: usize,
    budget: &SearchBudget,
) -> SearchOutcome<(ThetaCertificate, WellPlacedWitness)> {
    if t.base().vertex_count() > budget.max_vertices {
        return SearchOutcome::BudgetExceeded;
    }
    let retained = t.retained_graph();
    let mut steps_left = budget.max_steps;
    for len in (2 * k).max(4)..=retained.vertex_count() {
        let mut search = CycleSearch {
            g: &retained,
            len,
            steps_left,
        };
        let result = search.run(&mut |cycle: &[usize]| {
            let chord = smallest_chord(&retained, cycle)?;
            let witness = well_placed_witness(t, cycle)?;
            Some((
                ThetaCertificate {
                    cycle: cycle.to_vec(),
                    chord,
                },
                witness,
            ))
        });
        steps_left = search.steps_left;
        match result {
            Ok(Some(found)) => return SearchOutcome::Found(found),
            Ok(None) => {}
            Err(BudgetExceeded) => return SearchOutcome::BudgetExceeded,
        }
    }
    SearchOutcome::NotFound
}

/// Witness map for a candidate cycle, or None if some V2 cycle vertex has no
/// V1 neighbor outside the cycle.
fn well_placed_witness(t: &TrilayeredView<'_>, cycle: &[usize]) -> Option<WellPlacedWitness> {
    let members: BTreeSet<usize> = cycle.iter().copied().collect();
    let mut witness = WellPlacedWitness::default();
    for &v in cycle {
        if !t.v2().contains(&v) {
            continue;
        }
        let target = t
            .neighbors_in(v, 1)
            .into_iter()
            .find(|u| !members.contains(u))?;
        witness.map.insert(v, target);
    }
    Some(witness)
}

/// Length of the shortest cycle, or None for forests.
///
/// BFS from every root; a non-tree edge (u, w) closes a walk of length
/// dist(u) + dist(w) + 1 which always contains a cycle, and for a root on a
/// shortest cycle the bound is attained, so the minimum over all roots is
/// exact.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    for root in 0..n {
        let mut dist = alloc::vec![usize::MAX; n];
        let mut parent = alloc::vec![usize::MAX; n];
        let mut queue = alloc::collections::VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        for (u, w) in g.edges() {
            if dist[u] == usize::MAX || dist[w] == usize::MAX {
                continue;
            }
            if parent[u] == w || parent[w] == u {
                continue;
            }
            let candidate = dist[u] + dist[w] + 1;
            best = Some(best.map_or(candidate, |b| b.min(candidate)));
        }
    }
    best
}
