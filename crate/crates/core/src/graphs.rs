//! 2-degenerate graphs: degeneracy orders, heights and levels, predecessor
//! normalization, and instance generators.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub type VertexId = usize;

/// Default cap on the number of vertices a generator may produce.
pub const DEFAULT_VERTEX_CAP: u128 = 10_000_000;

/// Number of common neighbours added per pair of first-layer vertices in the
/// lower-bound family.
pub const DEFAULT_MULTIPLICITY: usize = 89;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// Peeling stalled; `core` is the remaining vertex set, in which every
    /// vertex has at least three remaining neighbours.
    #[error("graph is not 2-degenerate: {} vertices remain with minimum degree >= 3", core.len())]
    NotTwoDegenerate { core: Vec<VertexId> },
    #[error("requested {requested} vertices, above the cap of {cap}")]
    SizeOverflow { requested: u128, cap: u128 },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("invalid graph: {0}")]
    Invalid(String),
}

/// A graph together with a 2-degeneracy order and the induced predecessor
/// lists. Edges are stored as `(min, max)` pairs in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateGraph {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
    order: Vec<VertexId>,
    preds: Vec<Vec<VertexId>>,
    layers: Vec<Option<u32>>,
}

fn normalize_edge(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl DegenerateGraph {
    /// Assembles a graph from an explicit order and predecessor lists,
    /// checking every structural invariant. The edge set is the union of the
    /// predecessor edges.
    pub fn from_order(
        vertex_count: usize,
        order: Vec<VertexId>,
        preds: Vec<Vec<VertexId>>,
    ) -> Result<Self, GraphError> {
        if order.len() != vertex_count || preds.len() != vertex_count {
            return Err(GraphError::Invalid(format!(
                "order has {} entries and preds {} for {} vertices",
                order.len(),
                preds.len(),
                vertex_count
            )));
        }
        let mut position = vec![usize::MAX; vertex_count];
        for (i, &v) in order.iter().enumerate() {
            if v >= vertex_count {
                return Err(GraphError::UnknownVertex(v));
            }
            if position[v] != usize::MAX {
                return Err(GraphError::Invalid(format!("vertex {v} repeated in order")));
            }
            position[v] = i;
        }
        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        for (v, ps) in preds.iter().enumerate() {
            if ps.len() > 2 {
                return Err(GraphError::Invalid(format!("vertex {v} has {} predecessors", ps.len())));
            }
            for &u in ps {
                if u >= vertex_count {
                    return Err(GraphError::UnknownVertex(u));
                }
                if u == v {
                    return Err(GraphError::Invalid(format!("self-loop at {v}")));
                }
                if position[u] >= position[v] {
                    return Err(GraphError::Invalid(format!(
                        "predecessor {u} of {v} is not earlier in the order"
                    )));
                }
                let e = normalize_edge(u, v);
                if !seen.insert(e) {
                    return Err(GraphError::Invalid(format!("parallel edge {}-{}", e.0, e.1)));
                }
                edges.push(e);
            }
        }
        edges.sort_unstable();
        Ok(DegenerateGraph { vertex_count, edges, order, preds, layers: vec![None; vertex_count] })
    }

    pub fn with_layers(mut self, layers: Vec<Option<u32>>) -> Result<Self, GraphError> {
        if layers.len() != self.vertex_count {
            return Err(GraphError::Invalid("layer tag count does not match vertex count".into()));
        }
        self.layers = layers;
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn preds(&self, v: VertexId) -> &[VertexId] {
        &self.preds[v]
    }

    pub fn layer(&self, v: VertexId) -> Option<u32> {
        self.layers[v]
    }

    pub fn layers(&self) -> &[Option<u32>] {
        &self.layers
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.binary_search(&normalize_edge(u, v)).is_ok()
    }

    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        adjacency(self.vertex_count, &self.edges)
    }

    /// Vertices grouped by layer tag; untagged vertices are skipped.
    pub fn layer_members(&self) -> Vec<Vec<VertexId>> {
        let mut out: Vec<Vec<VertexId>> = Vec::new();
        for (v, tag) in self.layers.iter().enumerate() {
            if let Some(t) = *tag {
                let t = t as usize;
                if out.len() <= t {
                    out.resize(t + 1, Vec::new());
                }
                out[t].push(v);
            }
        }
        out
    }
}

fn adjacency(n: usize, edges: &[(VertexId, VertexId)]) -> Vec<Vec<VertexId>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// Peels vertices of degree at most two (smallest id first) and returns the
/// reversed removal sequence as a degeneracy order. Predecessors of a vertex
/// are its neighbours that were still present when it was removed.
pub fn degeneracy_order(
    vertex_count: usize,
    edges: &[(VertexId, VertexId)],
) -> Result<DegenerateGraph, GraphError> {
    let mut seen = HashSet::new();
    for &(u, v) in edges {
        if u >= vertex_count {
            return Err(GraphError::UnknownVertex(u));
        }
        if v >= vertex_count {
            return Err(GraphError::UnknownVertex(v));
        }
        if u == v {
            return Err(GraphError::Invalid(format!("self-loop at {u}")));
        }
        if !seen.insert(normalize_edge(u, v)) {
            return Err(GraphError::Invalid(format!("parallel edge {u}-{v}")));
        }
    }
    let adj = adjacency(vertex_count, edges);
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; vertex_count];
    let mut ready: BTreeSet<VertexId> = (0..vertex_count).filter(|&v| degree[v] <= 2).collect();
    let mut removal = Vec::with_capacity(vertex_count);
    let mut preds = vec![Vec::new(); vertex_count];

    while let Some(v) = ready.pop_first() {
        removed[v] = true;
        removal.push(v);
        for &w in &adj[v] {
            if removed[w] {
                continue;
            }
            preds[v].push(w);
            degree[w] -= 1;
            if degree[w] == 2 {
                ready.insert(w);
            }
        }
    }
    if removal.len() < vertex_count {
        let core = (0..vertex_count).filter(|&v| !removed[v]).collect();
        return Err(GraphError::NotTwoDegenerate { core });
    }
    for ps in &mut preds {
        ps.sort_unstable();
    }
    removal.reverse();
    DegenerateGraph::from_order(vertex_count, removal, preds)
}

/// Height and level structure induced by the predecessor relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightMap {
    pub height: Vec<usize>,
    pub levels: Vec<Vec<VertexId>>,
}

impl HeightMap {
    pub fn max_height(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }
}

pub fn heights(g: &DegenerateGraph) -> HeightMap {
    let mut height = vec![0usize; g.vertex_count()];
    for &v in g.order() {
        height[v] = g.preds(v).iter().map(|&u| height[u] + 1).max().unwrap_or(0);
    }
    let levels_len = height.iter().copied().max().map_or(0, |h| h + 1);
    let mut levels = vec![Vec::new(); levels_len];
    for (v, &h) in height.iter().enumerate() {
        levels[h].push(v);
    }
    HeightMap { height, levels }
}

/// Gives every vertex with exactly one predecessor a second one: a fresh
/// source vertex placed first in the order. Returns the dummy's id, or
/// `None` (and the graph unchanged) when no vertex needs it.
pub fn normalize_predecessors(g: &DegenerateGraph) -> (DegenerateGraph, Option<VertexId>) {
    let needy: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| g.preds(v).len() == 1).collect();
    if needy.is_empty() {
        return (g.clone(), None);
    }
    let dummy = g.vertex_count();
    let mut preds: Vec<Vec<VertexId>> = (0..g.vertex_count()).map(|v| g.preds(v).to_vec()).collect();
    for &v in &needy {
        preds[v].push(dummy);
    }
    preds.push(Vec::new());
    let mut order = Vec::with_capacity(dummy + 1);
    order.push(dummy);
    order.extend_from_slice(g.order());
    let mut layers = g.layers().to_vec();
    layers.push(None);
    let out = DegenerateGraph::from_order(dummy + 1, order, preds)
        .and_then(|h| h.with_layers(layers))
        .expect("adding a source vertex preserves validity");
    (out, Some(dummy))
}

/// Removes the dummy vertex introduced by [`normalize_predecessors`] with its
/// incident edges; vertex ids above it shift down by one.
pub fn strip_dummy(g: &DegenerateGraph, dummy: Option<VertexId>) -> Result<DegenerateGraph, GraphError> {
    let Some(d) = dummy else {
        return Ok(g.clone());
    };
    if d >= g.vertex_count() {
        return Err(GraphError::UnknownVertex(d));
    }
    let remap = |v: VertexId| if v > d { v - 1 } else { v };
    let preds: Vec<Vec<VertexId>> = (0..g.vertex_count())
        .filter(|&v| v != d)
        .map(|v| g.preds(v).iter().filter(|&&u| u != d).map(|&u| remap(u)).collect())
        .collect();
    let order: Vec<VertexId> = g.order().iter().filter(|&&v| v != d).map(|&v| remap(v)).collect();
    let layers: Vec<Option<u32>> =
        g.layers().iter().enumerate().filter(|&(v, _)| v != d).map(|(_, &t)| t).collect();
    DegenerateGraph::from_order(g.vertex_count() - 1, order, preds)?.with_layers(layers)
}

fn choose2(n: u128) -> u128 {
    n * n.saturating_sub(1) / 2
}

/// Layer sizes `|Λ0|..|Λ3|` of the lower-bound family, or `None` on
/// arithmetic overflow.
pub fn lower_bound_layer_sizes(n: usize, multiplicity: usize) -> Option<[u128; 4]> {
    let l0 = n as u128;
    let l1 = choose2(l0);
    let l2 = (multiplicity as u128).checked_mul(choose2(l1))?;
    let l3 = l2.checked_mul(l2.checked_sub(1).unwrap_or(0))? / 2;
    Some([l0, l1, l2, l3])
}

/// Builds `G(n)`: `n` base vertices; one common neighbour per base pair;
/// `multiplicity` common neighbours per pair of those; one common neighbour
/// per pair of the third layer. Vertices carry their layer index as tag.
pub fn generate_lower_bound_graph(n: usize, multiplicity: usize) -> Result<DegenerateGraph, GraphError> {
    generate_lower_bound_graph_capped(n, multiplicity, DEFAULT_VERTEX_CAP)
}

pub fn generate_lower_bound_graph_capped(
    n: usize,
    multiplicity: usize,
    cap: u128,
) -> Result<DegenerateGraph, GraphError> {
    if n < 2 {
        return Err(GraphError::Invalid(format!("n must be at least 2, got {n}")));
    }
    if multiplicity < 1 {
        return Err(GraphError::Invalid("multiplicity must be at least 1".into()));
    }
    let sizes = lower_bound_layer_sizes(n, multiplicity)
        .ok_or(GraphError::SizeOverflow { requested: u128::MAX, cap })?;
    let total: u128 = sizes.iter().sum();
    if total > cap {
        return Err(GraphError::SizeOverflow { requested: total, cap });
    }
    let total = total as usize;
    let mut preds: Vec<Vec<VertexId>> = Vec::with_capacity(total);
    let mut layers: Vec<Option<u32>> = Vec::with_capacity(total);
    let mut previous: Vec<VertexId> = (0..n).collect();
    for _ in 0..n {
        preds.push(Vec::new());
        layers.push(Some(0));
    }
    for layer in 1..=3u32 {
        let copies = if layer == 2 { multiplicity } else { 1 };
        let mut current = Vec::new();
        for i in 0..previous.len() {
            for j in i + 1..previous.len() {
                for _ in 0..copies {
                    current.push(preds.len());
                    preds.push(vec![previous[i], previous[j]]);
                    layers.push(Some(layer));
                }
            }
        }
        previous = current;
    }
    let order = (0..total).collect();
    DegenerateGraph::from_order(total, order, preds)?.with_layers(layers)
}

/// Probabilities used by [`random_2degenerate_with`].
#[derive(Clone, Copy, Debug)]
pub struct RandomGraphConfig {
    /// Chance that a vertex gets a single predecessor.
    pub single_pred: f64,
    /// Chance that a vertex gets no predecessor.
    pub no_pred: f64,
}

impl Default for RandomGraphConfig {
    fn default() -> Self {
        RandomGraphConfig { single_pred: 0.1, no_pred: 0.03 }
    }
}

pub fn random_2degenerate(n: usize, seed: u64) -> DegenerateGraph {
    random_2degenerate_with(n, seed, RandomGraphConfig::default())
}

/// Vertex `v` (in id order) draws its predecessors uniformly from `0..v`.
pub fn random_2degenerate_with(n: usize, seed: u64, config: RandomGraphConfig) -> DegenerateGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut preds: Vec<Vec<VertexId>> = Vec::with_capacity(n);
    for v in 0..n {
        let roll: f64 = rng.gen();
        let want = if roll < config.no_pred {
            0
        } else if roll < config.no_pred + config.single_pred {
            1
        } else {
            2
        };
        let want = want.min(v);
        let mut ps: Vec<VertexId> = Vec::with_capacity(want);
        while ps.len() < want {
            let u = rng.gen_range(0..v);
            if !ps.contains(&u) {
                ps.push(u);
            }
        }
        ps.sort_unstable();
        preds.push(ps);
    }
    DegenerateGraph::from_order(n, (0..n).collect(), preds).expect("generator respects the invariants")
}
