//! Immutable simple undirected graphs and the views (bipartite, trilayered,
//! BFS layers) that every search in this crate runs on.
//!
//! Vertices are dense 0-based ids. Graphs are immutable after construction;
//! "removals" always produce views or new graphs, and induced subgraphs carry
//! an explicit new->old label map so certificates can be lifted back.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// Edge u-u at the given input line (or edge index for in-memory construction).
    SelfLoop { line: usize },
    /// The same edge appeared twice; silent dedup would hide generator bugs.
    DuplicateEdge { line: usize },
    MalformedToken { line: usize, token: String },
    VertexOutOfRange { vertex: usize, n: usize },
    LayerIndexOutOfRange { i: usize, layers: usize },
    EmptyGraph,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop { line } => write!(f, "self-loop at line {line}"),
            GraphError::DuplicateEdge { line } => write!(f, "duplicate edge at line {line}"),
            GraphError::MalformedToken { line, token } => {
                write!(f, "malformed token {token:?} at line {line}")
            }
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph on {n} vertices")
            }
            GraphError::LayerIndexOutOfRange { i, layers } => {
                write!(f, "layer index {i} out of range ({layers} layers)")
            }
            GraphError::EmptyGraph => write!(f, "operation requires a nonempty graph"),
        }
    }
}

impl core::error::Error for GraphError {}

/// Simple undirected graph with sorted adjacency lists.
///
/// Invariants: no self-loops, no duplicate edges, symmetric adjacency,
/// `m == sum of degrees / 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Build a graph on `n` vertices from an edge list. Self-loops and
    /// duplicate edges are rejected; the error carries the 1-based edge index.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let numbered: Vec<(usize, usize, usize)> = edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| (i + 1, u, v))
            .collect();
        Self::from_numbered_edges(Some(n), &numbered)
    }

    fn from_numbered_edges(
        n: Option<usize>,
        edges: &[(usize, usize, usize)],
    ) -> Result<Graph, GraphError> {
        let max_id = edges.iter().map(|&(_, u, v)| u.max(v)).max();
        let n = match n {
            Some(n) => n,
            None => max_id.map_or(0, |m| m + 1),
        };
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(line, u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop { line });
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge { line });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            adj,
            m: seen.len(),
        })
    }

    /// Parse the edge-list interchange format: one `u v` pair per line,
    /// `#` comments, optional `p <n> <m>` header declaring the vertex count.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut declared_n = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tokens = content.split_whitespace();
            let first = tokens.next().unwrap();
            if first == "p" {
                let n_tok = tokens.next().ok_or(GraphError::MalformedToken {
                    line,
                    token: String::from(content),
                })?;
                let n: usize = n_tok.parse().map_err(|_| GraphError::MalformedToken {
                    line,
                    token: String::from(n_tok),
                })?;
                declared_n = Some(n);
                continue;
            }
            let u: usize = first.parse().map_err(|_| GraphError::MalformedToken {
                line,
                token: String::from(first),
            })?;
            let v_tok = tokens.next().ok_or(GraphError::MalformedToken {
                line,
                token: String::from(content),
            })?;
            let v: usize = v_tok.parse().map_err(|_| GraphError::MalformedToken {
                line,
                token: String::from(v_tok),
            })?;
            if let Some(extra) = tokens.next() {
                return Err(GraphError::MalformedToken {
                    line,
                    token: String::from(extra),
                });
            }
            edges.push((line, u, v));
        }
        Self::from_numbered_edges(declared_n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        0..self.n
    }

    /// All edges as (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// (d_min, d_max, m). For the empty graph both degrees are 0.
    pub fn degree_stats(&self) -> (usize, usize, usize) {
        let d_min = (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0);
        let d_max = (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0);
        (d_min, d_max, self.m)
    }

    /// Induced subgraph on `s`, relabelled to dense ids. `labels[new] = old`.
    pub fn induced(&self, s: &BTreeSet<usize>) -> Result<InducedSubgraph, GraphError> {
        for &v in s {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let labels: Vec<usize> = s.iter().copied().collect();
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in labels.iter().enumerate() {
            index[old] = new;
        }
        let mut edges = Vec::new();
        for (new_u, &old_u) in labels.iter().enumerate() {
            for &old_v in &self.adj[old_u] {
                if old_u < old_v && s.contains(&old_v) {
                    edges.push((new_u, index[old_v]));
                }
            }
        }
        let graph = Graph::from_edges(labels.len(), &edges)?;
        Ok(InducedSubgraph { graph, labels })
    }

    /// Same vertex set, only the given edges kept. Labels are preserved;
    /// vertices may become isolated.
    pub fn with_edges(&self, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        Graph::from_edges(self.n, edges)
    }

    /// Deterministic greedy 2-coloring followed by local switching: move any
    /// vertex whose cross-degree is below its same-side degree until no vertex
    /// improves. The fixpoint retains at least ceil(m/2) edges.
    pub fn bipartite_half(&self) -> Result<BipartiteView<'_>, GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        // side[v]: false = left, true = right
        let mut side = vec![false; self.n];
        for v in 0..self.n {
            let mut left_nbrs = 0usize;
            let mut right_nbrs = 0usize;
            for &u in &self.adj[v] {
                if u < v {
                    if side[u] {
                        right_nbrs += 1;
                    } else {
                        left_nbrs += 1;
                    }
                }
            }
            // join the side opposite to the majority of placed neighbors
            side[v] = left_nbrs > right_nbrs;
        }
        loop {
            let mut changed = false;
            for v in 0..self.n {
                let same = self
                    .adj[v]
                    .iter()
                    .filter(|&&u| side[u] == side[v])
                    .count();
                let cross = self.adj[v].len() - same;
                if cross < same {
                    side[v] = !side[v];
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let left: BTreeSet<usize> = (0..self.n).filter(|&v| !side[v]).collect();
        let right: BTreeSet<usize> = (0..self.n).filter(|&v| side[v]).collect();
        Ok(BipartiteView::new(self, left, right).expect("sides are disjoint by construction"))
    }

    /// BFS layers from `root` up to distance `k`. `layers[i]` is the set of
    /// vertices at graph distance exactly `i`; deeper vertices are omitted.
    pub fn bfs_layers(&self, root: usize, k: usize) -> Result<LayerDecomposition, GraphError> {
        if root >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: root, n: self.n });
        }
        let mut depth = vec![None; self.n];
        depth[root] = Some(0);
        let mut queue = VecDeque::new();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let du = depth[u].unwrap();
            if du == k {
                continue;
            }
            for &v in &self.adj[u] {
                if depth[v].is_none() {
                    depth[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        let mut layers = vec![BTreeSet::new(); k + 1];
        for v in 0..self.n {
            if let Some(d) = depth[v] {
                layers[d].insert(v);
            }
        }
        Ok(LayerDecomposition {
            root,
            layers,
            depth,
        })
    }

    /// Trilayered view on layers i-1, i, i+1 of a BFS decomposition.
    pub fn trilayer(
        &self,
        decomposition: &LayerDecomposition,
        i: usize,
    ) -> Result<TrilayeredView<'_>, GraphError> {
        let layers = decomposition.layers.len();
        if i == 0 || i + 1 >= layers {
            return Err(GraphError::LayerIndexOutOfRange { i, layers });
        }
        TrilayeredView::new(
            self,
            decomposition.layers[i - 1].clone(),
            decomposition.layers[i].clone(),
            decomposition.layers[i + 1].clone(),
        )
    }
}

/// An induced subgraph together with its new->old label map.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub labels: Vec<usize>,
}

/// BFS layer decomposition: `layers[i]` is the set of vertices at distance
/// exactly `i` from the root.
#[derive(Debug, Clone)]
pub struct LayerDecomposition {
    pub root: usize,
    pub layers: Vec<BTreeSet<usize>>,
    pub depth: Vec<Option<usize>>,
}

/// View of a graph retaining only edges with one endpoint in `left` and one
/// in `right`.
#[derive(Debug, Clone)]
pub struct BipartiteView<'a> {
    base: &'a Graph,
    left: BTreeSet<usize>,
    right: BTreeSet<usize>,
}

impl<'a> BipartiteView<'a> {
    pub fn new(
        base: &'a Graph,
        left: BTreeSet<usize>,
        right: BTreeSet<usize>,
    ) -> Result<Self, GraphError> {
        for &v in left.iter().chain(right.iter()) {
            if v >= base.vertex_count() {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: base.vertex_count(),
                });
            }
        }
        debug_assert!(left.intersection(&right).next().is_none());
        Ok(BipartiteView { base, left, right })
    }

    pub fn base(&self) -> &'a Graph {
        self.base
    }

    pub fn left(&self) -> &BTreeSet<usize> {
        &self.left
    }

    pub fn right(&self) -> &BTreeSet<usize> {
        &self.right
    }

    pub fn contains(&self, v: usize) -> bool {
        self.left.contains(&v) || self.right.contains(&v)
    }

    /// Retained edges (u in left, v in right).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &u in &self.left {
            for &v in self.base.neighbors(u) {
                if self.right.contains(&v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.left
            .iter()
            .map(|&u| {
                self.base
                    .neighbors(u)
                    .iter()
                    .filter(|v| self.right.contains(v))
                    .count()
            })
            .sum()
    }

    /// Cross-degree of a vertex of the view.
    pub fn degree(&self, v: usize) -> usize {
        let other = if self.left.contains(&v) {
            &self.right
        } else if self.right.contains(&v) {
            &self.left
        } else {
            return 0;
        };
        self.base
            .neighbors(v)
            .iter()
            .filter(|u| other.contains(u))
            .count()
    }

    pub fn min_degree(&self) -> usize {
        self.left
            .iter()
            .chain(self.right.iter())
            .map(|&v| self.degree(v))
            .min()
            .unwrap_or(0)
    }

    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// The retained edges as a standalone graph on the base vertex ids.
    pub fn retained_graph(&self) -> Graph {
        self.base
            .with_edges(&self.edges())
            .expect("view edges come from a valid graph")
    }

    /// Restrict the view to a vertex subset (of left ∪ right).
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> BipartiteView<'a> {
        BipartiteView {
            base: self.base,
            left: self.left.intersection(keep).copied().collect(),
            right: self.right.intersection(keep).copied().collect(),
        }
    }
}

/// View of a graph retaining only V1-V2 and V2-V3 edges.
#[derive(Debug, Clone)]
pub struct TrilayeredView<'a> {
    base: &'a Graph,
    v1: BTreeSet<usize>,
    v2: BTreeSet<usize>,
    v3: BTreeSet<usize>,
}

impl<'a> TrilayeredView<'a> {
    pub fn new(
        base: &'a Graph,
        v1: BTreeSet<usize>,
        v2: BTreeSet<usize>,
        v3: BTreeSet<usize>,
    ) -> Result<Self, GraphError> {
        for &v in v1.iter().chain(v2.iter()).chain(v3.iter()) {
            if v >= base.vertex_count() {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: base.vertex_count(),
                });
            }
        }
        debug_assert!(v1.intersection(&v2).next().is_none());
        debug_assert!(v2.intersection(&v3).next().is_none());
        debug_assert!(v1.intersection(&v3).next().is_none());
        Ok(TrilayeredView { base, v1, v2, v3 })
    }

    pub fn base(&self) -> &'a Graph {
        self.base
    }

    pub fn v1(&self) -> &BTreeSet<usize> {
        &self.v1
    }

    pub fn v2(&self) -> &BTreeSet<usize> {
        &self.v2
    }

    pub fn v3(&self) -> &BTreeSet<usize> {
        &self.v3
    }

    pub fn contains(&self, v: usize) -> bool {
        self.v1.contains(&v) || self.v2.contains(&v) || self.v3.contains(&v)
    }

    pub fn layer_of(&self, v: usize) -> Option<u8> {
        if self.v1.contains(&v) {
            Some(1)
        } else if self.v2.contains(&v) {
            Some(2)
        } else if self.v3.contains(&v) {
            Some(3)
        } else {
            None
        }
    }

    /// Retained edges: base edges lying in V1 x V2 or V2 x V3.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &u in &self.v2 {
            for &v in self.base.neighbors(u) {
                if self.v1.contains(&v) || self.v3.contains(&v) {
                    out.push((u.min(v), u.max(v)));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn neighbors_in(&self, v: usize, layer: u8) -> Vec<usize> {
        let my_layer = match self.layer_of(v) {
            Some(l) => l,
            None => return Vec::new(),
        };
        // only consecutive-layer edges are retained
        if (my_layer as i8 - layer as i8).abs() != 1 {
            return Vec::new();
        }
        let set = match layer {
            1 => &self.v1,
            2 => &self.v2,
            3 => &self.v3,
            _ => return Vec::new(),
        };
        self.base
            .neighbors(v)
            .iter()
            .copied()
            .filter(|u| set.contains(u))
            .collect()
    }

    pub fn degree_in(&self, v: usize, layer: u8) -> usize {
        self.neighbors_in(v, layer).len()
    }

    /// Edge count between V1 and V2.
    pub fn e12(&self) -> usize {
        self.v2.iter().map(|&v| self.degree_in(v, 1)).sum()
    }

    /// Edge count between V2 and V3.
    pub fn e23(&self) -> usize {
        self.v2.iter().map(|&v| self.degree_in(v, 3)).sum()
    }

    pub fn retained_graph(&self) -> Graph {
        self.base
            .with_edges(&self.edges())
            .expect("view edges come from a valid graph")
    }

    /// Restrict each layer to the given subsets.
    pub fn restrict(
        &self,
        v1: BTreeSet<usize>,
        v2: BTreeSet<usize>,
        v3: BTreeSet<usize>,
    ) -> TrilayeredView<'a> {
        debug_assert!(v1.is_subset(&self.v1));
        debug_assert!(v2.is_subset(&self.v2));
        debug_assert!(v3.is_subset(&self.v3));
        TrilayeredView {
            base: self.base,
            v1,
            v2,
            v3,
        }
    }

    /// The V1-V2 part of the view as a bipartite view.
    pub fn bipartite_12(&self) -> BipartiteView<'a> {
        BipartiteView {
            base: self.base,
            left: self.v1.clone(),
            right: self.v2.clone(),
        }
    }

    /// The V2-V3 part of the view as a bipartite view.
    pub fn bipartite_23(&self) -> BipartiteView<'a> {
        BipartiteView {
            base: self.base,
            left: self.v2.clone(),
            right: self.v3.clone(),
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::format;

    pub(crate) fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub(crate) fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5)); // outer C5
            edges.push((i, i + 5)); // spokes
            edges.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn parse_basic() {
        let g = Graph::parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(2, 1));
    }

    #[test]
    fn parse_header_and_comments() {
        let g = Graph::parse_edge_list("# a comment\np 5 1\n0 1 # trailing\n").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn parse_rejects_self_loop() {
        assert_eq!(
            Graph::parse_edge_list("0 0"),
            Err(GraphError::SelfLoop { line: 1 })
        );
    }

    #[test]
    fn parse_rejects_duplicate_edge() {
        assert_eq!(
            Graph::parse_edge_list("0 1\n1 0"),
            Err(GraphError::DuplicateEdge { line: 2 })
        );
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(matches!(
            Graph::parse_edge_list("0 x"),
            Err(GraphError::MalformedToken { line: 1, .. })
        ));
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = petersen();
        let total: usize = g.vertices().map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.edge_count());
        assert_eq!(g.degree_stats(), (3, 3, 15));
    }

    #[test]
    fn bipartite_half_k2() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let view = g.bipartite_half().unwrap();
        assert_eq!(view.edge_count(), 1);
    }

    #[test]
    fn bipartite_half_c5_reaches_max_cut() {
        let g = cycle(5);
        let view = g.bipartite_half().unwrap();
        // contract floor is ceil(5/2) = 3; the local-switching fixpoint
        // reaches the true max cut, computed here by exhaustion over 2^5 sides
        let mut best = 0;
        for mask in 0u32..32 {
            let cut = g
                .edges()
                .iter()
                .filter(|&&(u, v)| (mask >> u) & 1 != (mask >> v) & 1)
                .count();
            best = best.max(cut);
        }
        assert_eq!(best, 4);
        assert_eq!(view.edge_count(), 4);
    }

    #[test]
    fn bfs_layers_c6() {
        let g = cycle(6);
        let l = g.bfs_layers(0, 3).unwrap();
        assert_eq!(l.layers[1], BTreeSet::from([1, 5]));
        assert_eq!(l.layers[2], BTreeSet::from([2, 4]));
        assert_eq!(l.layers[3], BTreeSet::from([3]));
    }

    #[test]
    fn bfs_layers_k2_truncates() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let l = g.bfs_layers(0, 3).unwrap();
        assert_eq!(l.layers[1], BTreeSet::from([1]));
        assert!(l.layers[2].is_empty() && l.layers[3].is_empty());
    }

    #[test]
    fn bfs_layers_petersen() {
        let g = petersen();
        let l = g.bfs_layers(0, 2).unwrap();
        assert_eq!(l.layers[1].len(), 3);
        assert_eq!(l.layers[2].len(), 6);
    }

    #[test]
    fn bfs_root_out_of_range() {
        let g = cycle(4);
        assert!(g.bfs_layers(9, 2).is_err());
    }

    #[test]
    fn trilayer_c6() {
        let g = cycle(6);
        let l = g.bfs_layers(0, 3).unwrap();
        let t = g.trilayer(&l, 1).unwrap();
        assert_eq!(t.v1(), &BTreeSet::from([0]));
        assert_eq!(t.v2(), &BTreeSet::from([1, 5]));
        assert_eq!(t.v3(), &BTreeSet::from([2, 4]));
        assert_eq!(t.edges().len(), 4);

        let t2 = g.trilayer(&l, 2).unwrap();
        let expected: Vec<(usize, usize)> = vec![(1, 2), (2, 3), (3, 4), (4, 5)];
        assert_eq!(t2.edges(), expected);
    }

    #[test]
    fn trilayer_petersen_edge_count() {
        let g = petersen();
        let l = g.bfs_layers(0, 3).unwrap();
        let t = g.trilayer(&l, 1).unwrap();
        // 3 spoke edges V1-V2 plus 6 edges V2-V3
        assert_eq!(t.edges().len(), 9);
        assert_eq!(t.e12(), 3);
        assert_eq!(t.e23(), 6);
    }

    #[test]
    fn trilayer_index_out_of_range() {
        let g = cycle(6);
        let l = g.bfs_layers(0, 3).unwrap();
        assert!(g.trilayer(&l, 0).is_err());
        assert!(g.trilayer(&l, 3).is_err());
    }

    #[test]
    fn induced_path_from_c6() {
        let g = cycle(6);
        let sub = g.induced(&BTreeSet::from([0, 1, 2])).unwrap();
        assert_eq!(sub.graph.edge_count(), 2);
        assert_eq!(sub.labels, vec![0, 1, 2]);
    }

    #[test]
    fn induced_empty() {
        let g = cycle(6);
        let sub = g.induced(&BTreeSet::new()).unwrap();
        assert_eq!(sub.graph.vertex_count(), 0);
        assert_eq!(sub.graph.edge_count(), 0);
    }

    #[test]
    fn bfs_layer_semantics_petersen() {
        // every vertex of V_i has a neighbor in V_{i-1} and none earlier than i-1
        let g = petersen();
        for root in 0..10 {
            let l = g.bfs_layers(root, 3).unwrap();
            for i in 1..l.layers.len() {
                for &u in &l.layers[i] {
                    assert!(g
                        .neighbors(u)
                        .iter()
                        .any(|v| l.layers[i - 1].contains(v)));
                    for j in 0..i.saturating_sub(1) {
                        assert!(
                            !g.neighbors(u).iter().any(|v| l.layers[j].contains(v)),
                            "{}",
                            format!("vertex {u} at depth {i} touches layer {j}")
                        );
                    }
                }
            }
        }
    }
}
