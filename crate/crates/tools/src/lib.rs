//! Shared plumbing for the command-line binary and the integration suite:
//! seeded graph generators, engineered trilayered fixtures, and edge-list
//! file handling.

use std::collections::BTreeSet;
use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thetagraph_core::Graph;

/// Layer sizes of a trilayered instance laid out on contiguous id ranges:
/// V1 = 0..n1, V2 = n1..n1+n2, V3 = n1+n2..n1+n2+n3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerSizes {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

impl LayerSizes {
    pub fn total(&self) -> usize {
        self.n1 + self.n2 + self.n3
    }

    pub fn sets(&self) -> (BTreeSet<usize>, BTreeSet<usize>, BTreeSet<usize>) {
        let v1 = (0..self.n1).collect();
        let v2 = (self.n1..self.n1 + self.n2).collect();
        let v3 = (self.n1 + self.n2..self.total()).collect();
        (v1, v2, v3)
    }

    pub fn parse(text: &str) -> Result<LayerSizes> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 3 {
            bail!("expected three comma-separated layer sizes, got {text:?}");
        }
        let mut v = [0usize; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p.trim().parse().context("layer size must be an integer")?;
        }
        Ok(LayerSizes {
            n1: v[0],
            n2: v[1],
            n3: v[2],
        })
    }
}

/// A generated graph, with layer structure when the instance is trilayered.
#[derive(Debug, Clone)]
pub struct GeneratedGraph {
    pub graph: Graph,
    pub layers: Option<LayerSizes>,
}

/// Erdos--Renyi G(n, p), deterministic per seed.
pub fn gen_random(seed: u64, n: usize, p: f64) -> Result<GeneratedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Ok(GeneratedGraph {
        graph: Graph::from_edges(n, &edges)?,
        layers: None,
    })
}

/// Random bipartite graph on ceil(n/2) + floor(n/2) vertices.
pub fn gen_bipartite(seed: u64, n: usize, p: f64) -> Result<GeneratedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let left = n.div_ceil(2);
    let mut edges = Vec::new();
    for u in 0..left {
        for v in left..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Ok(GeneratedGraph {
        graph: Graph::from_edges(n, &edges)?,
        layers: None,
    })
}

pub fn gen_cycle(n: usize) -> Result<GeneratedGraph> {
    if n < 3 {
        bail!("a cycle needs at least 3 vertices");
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(GeneratedGraph {
        graph: Graph::from_edges(n, &edges)?,
        layers: None,
    })
}

fn complete_trilayer_edges(sizes: LayerSizes) -> Vec<(usize, usize)> {
    let LayerSizes { n1, n2, n3 } = sizes;
    let mut edges = Vec::new();
    for u in 0..n1 {
        for v in n1..n1 + n2 {
            edges.push((u, v));
        }
    }
    for u in n1..n1 + n2 {
        for v in n1 + n2..n1 + n2 + n3 {
            edges.push((u, v));
        }
    }
    edges
}

/// Named engineered trilayered instances. Each drives a specific branch of
/// the layered machinery; the seed perturbs sizes where the branch target
/// tolerates it, so corpora of distinct instances can be generated.
pub fn gen_trilayer_fixture(name: &str, seed: u64) -> Result<GeneratedGraph> {
    match name {
        // survives peeling intact: dense complete trilayer
        "subgraph" => {
            let sizes = LayerSizes {
                n1: 6,
                n2: 12,
                n3: 20,
            };
            Ok(GeneratedGraph {
                graph: Graph::from_edges(sizes.total(), &complete_trilayer_edges(sizes))?,
                layers: Some(sizes),
            })
        }
        // every V2 vertex hangs its own sparse V3 star, so the V3 side
        // peels away and drags all of V2 with it
        "shrunk" => {
            let (n1, n2, leaves) = (30usize, 8usize, 38usize);
            let mut edges = Vec::new();
            for u in 0..n1 {
                for v in n1..n1 + n2 {
                    edges.push((u, v));
                }
            }
            let mut next = n1 + n2;
            for v in n1..n1 + n2 {
                for _ in 0..leaves {
                    edges.push((v, next));
                    next += 1;
                }
            }
            Ok(GeneratedGraph {
                graph: Graph::from_edges(next, &edges)?,
                layers: Some(LayerSizes {
                    n1,
                    n2,
                    n3: n2 * leaves,
                }),
            })
        }
        // V3 floor unreachable, V1-V2 dense enough that peeling it forces
        // a certificate out of the bipartite finders
        "forced-theta" => {
            let (n1, n2, n3) = (40usize, 40usize, 38usize);
            let sizes = LayerSizes { n1, n2, n3 };
            Ok(GeneratedGraph {
                graph: Graph::from_edges(sizes.total(), &complete_trilayer_edges(sizes))?,
                layers: Some(sizes),
            })
        }
        // dense instance on which the subset chain runs to a subgraph
        "chain-dense" => {
            let sizes = LayerSizes {
                n1: 45,
                n2: 650,
                n3: 43,
            };
            Ok(GeneratedGraph {
                graph: Graph::from_edges(sizes.total(), &complete_trilayer_edges(sizes))?,
                layers: Some(sizes),
            })
        }
        // generous complete instance where the path machinery lands a
        // well-placed certificate; the seed jitters the sizes
        "planted-theta" => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n1 = 12 + rng.gen_range(0..4);
            let n2 = 12 + rng.gen_range(0..6);
            let n3 = 6 + rng.gen_range(0..4);
            let sizes = LayerSizes { n1, n2, n3 };
            Ok(GeneratedGraph {
                graph: Graph::from_edges(sizes.total(), &complete_trilayer_edges(sizes))?,
                layers: Some(sizes),
            })
        }
        // heavy V3 sharing: frontier paths collide and the certificate
        // comes out of the dense V2-V3 pair instead
        "collision" => {
            let sizes = LayerSizes {
                n1: 8,
                n2: 24,
                n3: 10,
            };
            Ok(GeneratedGraph {
                graph: Graph::from_edges(sizes.total(), &complete_trilayer_edges(sizes))?,
                layers: Some(sizes),
            })
        }
        other => bail!(
            "unknown fixture {other:?}; known: subgraph, shrunk, forced-theta, \
             chain-dense, planted-theta, collision"
        ),
    }
}

/// Render a graph as the interchange edge-list format, with a size header
/// and a layer comment when the instance is trilayered. Deterministic.
pub fn render_edge_list(g: &GeneratedGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "p {} {}\n",
        g.graph.vertex_count(),
        g.graph.edge_count()
    ));
    if let Some(sizes) = g.layers {
        out.push_str(&format!("# layers {} {} {}\n", sizes.n1, sizes.n2, sizes.n3));
    }
    for (u, v) in g.graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Read edge-list text from a path, or stdin when no path is given.
pub fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("reading stdin")?;
            Ok(buf)
        }
    }
}

/// Parse an edge list, also recovering a `# layers n1 n2 n3` comment if one
/// is present.
pub fn parse_graph_text(text: &str) -> Result<GeneratedGraph> {
    let graph = Graph::parse_edge_list(text).map_err(|e| anyhow::anyhow!("{e}"))?;
    let layers = text.lines().find_map(|line| {
        let rest = line.trim().strip_prefix("# layers")?;
        let parts: Vec<usize> = rest
            .split_whitespace()
            .map(|p| p.parse().ok())
            .collect::<Option<_>>()?;
        (parts.len() == 3).then(|| LayerSizes {
            n1: parts[0],
            n2: parts[1],
            n3: parts[2],
        })
    });
    Ok(GeneratedGraph { graph, layers })
}
