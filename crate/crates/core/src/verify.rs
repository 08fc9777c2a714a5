//! Exact checks for drawings: the six feasibility constraints of the
//! level-by-level construction, per-color plane/forest checks, and minimum
//! plane (forest) decompositions of a fixed drawing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::exactgeom::{orientation, segments_cross, Crossing, GeomError, Orientation, Point, Rat, Segment};
use crate::graphs::{heights, DegenerateGraph, VertexId};
use crate::layout::{ColoredDrawing, EdgeColor};

/// Default node cap for the exact solvers.
pub const DEFAULT_EXACT_LIMIT: usize = 60;

pub type Edge = (VertexId, VertexId);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("drawing and graph disagree: {0}")]
    ShapeMismatch(String),
    #[error("edges {0:?} and {1:?} overlap along a segment")]
    Overlap(Edge, Edge),
    #[error("degenerate edge {0:?}")]
    DegenerateEdge(Edge),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Vertex(VertexId),
    VertexPair(VertexId, VertexId),
    Edge(Edge),
    EdgePair(Edge, Edge),
    VertexEdge(VertexId, Edge),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Vertex(v) => write!(f, "vertex {v}"),
            Witness::VertexPair(u, v) => write!(f, "vertices {u} {v}"),
            Witness::Edge((a, b)) => write!(f, "edge {a}-{b}"),
            Witness::EdgePair((a, b), (c, d)) => write!(f, "edges {a}-{b} {c}-{d}"),
            Witness::VertexEdge(v, (a, b)) => write!(f, "vertex {v} edge {a}-{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintResult {
    /// 1..=6.
    pub id: u8,
    pub witness: Option<Witness>,
}

impl ConstraintResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub height: usize,
    pub constraints: [ConstraintResult; 6],
}

impl FeasibilityReport {
    pub fn overall(&self) -> bool {
        self.constraints.iter().all(ConstraintResult::passed)
    }

    pub fn get(&self, id: u8) -> &ConstraintResult {
        &self.constraints[usize::from(id) - 1]
    }
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            match &c.witness {
                None => writeln!(f, "C{} PASS", c.id)?,
                Some(w) => writeln!(f, "C{} FAIL {w}", c.id)?,
            }
        }
        write!(f, "OVERALL {}", if self.overall() { "PASS" } else { "FAIL" })
    }
}

fn segment_of(d: &ColoredDrawing, (u, v): Edge) -> Result<Segment, VerifyError> {
    let (Some(a), Some(b)) = (d.position(u), d.position(v)) else {
        return Err(VerifyError::ShapeMismatch(format!("edge {u}-{v} has an unplaced endpoint")));
    };
    Segment::new(a.clone(), b.clone()).map_err(|_| VerifyError::DegenerateEdge((u, v)))
}

/// Checks the six feasibility constraints for the vertices of `g` with height
/// at most `k`, which must be exactly the vertices drawn in `d`.
pub fn check_feasible(d: &ColoredDrawing, g: &DegenerateGraph, k: usize) -> Result<FeasibilityReport, VerifyError> {
    let hm = heights(g);
    let expected: BTreeSet<VertexId> = (0..g.vertex_count()).filter(|&v| hm.height[v] <= k).collect();
    let drawn: BTreeSet<VertexId> = d.positions().keys().copied().collect();
    if expected != drawn {
        let missing: Vec<_> = expected.difference(&drawn).take(5).collect();
        let extra: Vec<_> = drawn.difference(&expected).take(5).collect();
        return Err(VerifyError::ShapeMismatch(format!("missing {missing:?}, unexpected {extra:?}")));
    }
    let edges: BTreeSet<Edge> = g.edges().iter().copied().filter(|&(u, v)| drawn.contains(&u) && drawn.contains(&v)).collect();
    if let Some(e) = d.colors().keys().find(|e| !edges.contains(e)) {
        return Err(VerifyError::ShapeMismatch(format!("colored pair {}-{} is not an edge", e.0, e.1)));
    }
    let mut segments = Vec::with_capacity(edges.len());
    for &e in &edges {
        segments.push((e, segment_of(d, e)?));
    }

    let c1 = check_colors(d, g, &hm.height, k, &edges);
    let c2 = check_separator(d, &hm.height, k);
    let c3 = first_monochromatic_crossing(d, &segments);
    let c4 = check_distinct_coordinates(d);
    let c5 = check_rays(d, &segments, EdgeColor::H);
    let c6 = check_rays(d, &segments, EdgeColor::V);
    let mk = |id, witness| ConstraintResult { id, witness };
    Ok(FeasibilityReport {
        height: k,
        constraints: [mk(1, c1), mk(2, c2), mk(3, c3), mk(4, c4), mk(5, c5), mk(6, c6)],
    })
}

fn check_colors(d: &ColoredDrawing, g: &DegenerateGraph, height: &[usize], k: usize, edges: &BTreeSet<Edge>) -> Option<Witness> {
    for &(u, v) in edges {
        if d.color_of(u, v).is_none() {
            return Some(Witness::Edge((u, v)));
        }
    }
    for &v in d.positions().keys() {
        let preds = g.preds(v);
        let colors: Vec<EdgeColor> = preds.iter().filter_map(|&p| d.color_of(p, v)).collect();
        if colors.len() == 2 && colors[0] == colors[1] {
            return Some(Witness::Vertex(v));
        }
        if height[v] == k && k > 0 && colors.iter().any(|c| !matches!(c, EdgeColor::H | EdgeColor::Hs)) {
            return Some(Witness::Vertex(v));
        }
    }
    None
}

fn check_separator(d: &ColoredDrawing, height: &[usize], k: usize) -> Option<Witness> {
    let mut lower: Option<(VertexId, &Rat)> = None;
    let mut top: Option<(VertexId, &Rat)> = None;
    for (&v, p) in d.positions() {
        if height[v] == k {
            if top.is_none_or(|(_, x)| &p.x < x) {
                top = Some((v, &p.x));
            }
        } else if lower.is_none_or(|(_, x)| &p.x > x) {
            lower = Some((v, &p.x));
        }
    }
    match (lower, top) {
        (Some((u, xu)), Some((w, xw))) if xu >= xw => Some(Witness::VertexPair(u, w)),
        _ => None,
    }
}

fn check_distinct_coordinates(d: &ColoredDrawing) -> Option<Witness> {
    for axis in 0..2 {
        let mut coords: Vec<(&Rat, VertexId)> =
            d.positions().iter().map(|(&v, p)| (if axis == 0 { &p.x } else { &p.y }, v)).collect();
        coords.sort();
        if let Some(w) = coords.windows(2).find(|w| w[0].0 == w[1].0) {
            return Some(Witness::VertexPair(w[0].1, w[1].1));
        }
    }
    None
}

/// Whether the ray from `origin` (rightward if `rightward`, else downward)
/// meets `s`.
fn ray_hits(origin: &Point, s: &Segment, rightward: bool) -> bool {
    // Coordinate across the ray, then along it.
    let key = |p: &Point| if rightward { (p.y.clone(), p.x.clone()) } else { (p.x.clone(), p.y.clone()) };
    let (lo, hi) = if key(&s.a).0 <= key(&s.b).0 { (&s.a, &s.b) } else { (&s.b, &s.a) };
    let ((o_across, o_along), (lo_across, lo_along), (hi_across, hi_along)) = (key(origin), key(lo), key(hi));
    if o_across < lo_across || o_across > hi_across {
        return false;
    }
    if lo_across == hi_across {
        return if rightward { lo_along.max(hi_along) >= o_along } else { lo_along.min(hi_along) <= o_along };
    }
    // Rightward: lo -> hi points up; the crossing is right of origin iff
    // origin is not right of the line. Downward: lo -> hi points right; the
    // crossing is below origin iff origin is not below the line.
    orientation(lo, hi, origin) != Orientation::Clockwise
}

fn check_rays(d: &ColoredDrawing, segments: &[(Edge, Segment)], color: EdgeColor) -> Option<Witness> {
    let rightward = color == EdgeColor::H;
    let class: Vec<&(Edge, Segment)> = segments.iter().filter(|(e, _)| d.color_of(e.0, e.1) == Some(color)).collect();
    for (&v, p) in d.positions() {
        for (e, s) in &class {
            if e.0 != v && e.1 != v && ray_hits(p, s, rightward) {
                return Some(Witness::VertexEdge(v, *e));
            }
        }
    }
    None
}

/// Pairs of edges whose axis-aligned bounding boxes intersect, per x-sweep.
fn candidate_pairs(segments: &[(Edge, Segment)]) -> Vec<(usize, usize)> {
    let mut idx: Vec<usize> = (0..segments.len()).collect();
    let xmin = |s: &Segment| if s.a.x <= s.b.x { s.a.x.clone() } else { s.b.x.clone() };
    let xmax = |s: &Segment| if s.a.x >= s.b.x { s.a.x.clone() } else { s.b.x.clone() };
    let lo: Vec<Rat> = segments.iter().map(|(_, s)| xmin(s)).collect();
    let hi: Vec<Rat> = segments.iter().map(|(_, s)| xmax(s)).collect();
    idx.sort_by(|&a, &b| lo[a].cmp(&lo[b]));
    let mut out = Vec::new();
    for (pos, &i) in idx.iter().enumerate() {
        for &j in &idx[pos + 1..] {
            if lo[j] > hi[i] {
                break;
            }
            let (si, sj) = (&segments[i].1, &segments[j].1);
            let ylo_i = si.a.y.clone().min(si.b.y.clone());
            let yhi_i = si.a.y.clone().max(si.b.y.clone());
            let ylo_j = sj.a.y.clone().min(sj.b.y.clone());
            let yhi_j = sj.a.y.clone().max(sj.b.y.clone());
            if ylo_j <= yhi_i && ylo_i <= yhi_j {
                out.push((i.min(j), i.max(j)));
            }
        }
    }
    out.sort();
    out
}

fn first_monochromatic_crossing(d: &ColoredDrawing, segments: &[(Edge, Segment)]) -> Option<Witness> {
    monochromatic_pairs(d, segments).into_iter().next().map(|(e, f)| Witness::EdgePair(e, f))
}

fn monochromatic_pairs(d: &ColoredDrawing, segments: &[(Edge, Segment)]) -> Vec<(Edge, Edge)> {
    let mut out = Vec::new();
    for color in EdgeColor::ALL {
        let class: Vec<(Edge, Segment)> =
            segments.iter().filter(|(e, _)| d.color_of(e.0, e.1) == Some(color)).cloned().collect();
        for (i, j) in candidate_pairs(&class) {
            let hit = match segments_cross(&class[i].1, &class[j].1) {
                Ok(Crossing::Proper) | Err(GeomError::Overlap) => true,
                Ok(_) | Err(_) => false,
            };
            if hit {
                let (e, f) = (class[i].0, class[j].0);
                out.push((e.min(f), e.max(f)));
            }
        }
    }
    out.sort();
    out
}

/// All same-colored edge pairs that cross properly or overlap, sorted.
pub fn monochromatic_crossings(d: &ColoredDrawing) -> Vec<(Edge, Edge)> {
    let segments: Vec<(Edge, Segment)> =
        d.colors().keys().filter_map(|&e| segment_of(d, e).ok().map(|s| (e, s))).collect();
    monochromatic_pairs(d, &segments)
}

/// Disjoint-set forest over arbitrary vertex ids.
#[derive(Clone, Debug, Default)]
pub struct UnionFind {
    parent: BTreeMap<VertexId, VertexId>,
}

impl UnionFind {
    pub fn find(&mut self, v: VertexId) -> VertexId {
        let mut root = v;
        while let Some(&p) = self.parent.get(&root) {
            if p == root {
                break;
            }
            root = p;
        }
        let mut cur = v;
        while cur != root {
            let next = *self.parent.get(&cur).unwrap_or(&root);
            self.parent.insert(cur, root);
            cur = next;
        }
        root
    }

    /// Merges the sets of `u` and `v`; false if they were already joined.
    pub fn union(&mut self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = (self.find(u), self.find(v));
        if a == b {
            return false;
        }
        self.parent.insert(a, b);
        self.parent.entry(b).or_insert(b);
        true
    }
}

pub fn color_class_is_forest(d: &ColoredDrawing, c: EdgeColor) -> bool {
    let mut uf = UnionFind::default();
    d.colors().iter().filter(|(_, &col)| col == c).all(|(&(u, v), _)| uf.union(u, v))
}

/// Edges of a fixed drawing with adjacency between properly crossing edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictGraph {
    pub edges: Vec<Edge>,
    pub adjacency: Vec<Vec<usize>>,
}

impl ConflictGraph {
    pub fn node_count(&self) -> usize {
        self.edges.len()
    }

    pub fn conflict_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }
}

pub fn build_conflict_graph(positions: &BTreeMap<VertexId, Point>, edges: &[Edge]) -> Result<ConflictGraph, VerifyError> {
    let mut segments = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        let (Some(a), Some(b)) = (positions.get(&u), positions.get(&v)) else {
            return Err(VerifyError::ShapeMismatch(format!("edge {u}-{v} has an unplaced endpoint")));
        };
        let s = Segment::new(a.clone(), b.clone()).map_err(|_| VerifyError::DegenerateEdge((u, v)))?;
        segments.push(((u, v), s));
    }
    let mut adjacency = vec![Vec::new(); edges.len()];
    for (i, j) in candidate_pairs(&segments) {
        match segments_cross(&segments[i].1, &segments[j].1) {
            Ok(Crossing::Proper) => {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
            Ok(_) => {}
            Err(_) => return Err(VerifyError::Overlap(edges[i], edges[j])),
        }
    }
    for a in &mut adjacency {
        a.sort_unstable();
    }
    Ok(ConflictGraph { edges: edges.to_vec(), adjacency })
}

pub fn drawing_conflict_graph(d: &ColoredDrawing) -> Result<ConflictGraph, VerifyError> {
    let edges: Vec<Edge> = d.colors().keys().copied().collect();
    build_conflict_graph(d.positions(), &edges)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub colors: usize,
    /// Color per conflict-graph node (drawing edge), 0-based.
    pub coloring: Vec<usize>,
    /// False when the node count exceeded the exact limit.
    pub exact: bool,
}

/// Greedy saturation coloring; returns the coloring.
fn dsatur(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut color = vec![usize::MAX; n];
    let mut seen: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (seen[v].len(), adj[v].len(), std::cmp::Reverse(v)))
            .expect("uncolored vertex remains");
        let c = (0..).find(|c| !seen[v].contains(c)).expect("unbounded");
        color[v] = c;
        for &u in &adj[v] {
            seen[u].insert(c);
        }
    }
    color
}

fn greedy_clique(adj: &[Vec<usize>]) -> usize {
    let n = adj.len();
    let mut best = usize::from(n > 0);
    for start in 0..n {
        let mut clique = vec![start];
        let mut cand: Vec<usize> = adj[start].clone();
        while let Some(&v) = cand.iter().max_by_key(|&&v| (adj[v].len(), std::cmp::Reverse(v))) {
            clique.push(v);
            cand.retain(|&u| u != v && adj[v].binary_search(&u).is_ok());
        }
        best = best.max(clique.len());
    }
    best
}

struct ColorSearch<'a> {
    adj: &'a [Vec<usize>],
    color: Vec<usize>,
    best: usize,
    best_coloring: Vec<usize>,
    lower: usize,
}

impl ColorSearch<'_> {
    fn run(&mut self, colored: usize, used: usize) {
        if used >= self.best || self.best == self.lower {
            return;
        }
        let n = self.adj.len();
        if colored == n {
            self.best = used;
            self.best_coloring = self.color.clone();
            return;
        }
        let mut pick = None;
        let mut pick_key = (0, 0);
        for v in 0..n {
            if self.color[v] != usize::MAX {
                continue;
            }
            let sat = self.adj[v]
                .iter()
                .filter(|&&u| self.color[u] != usize::MAX)
                .map(|&u| self.color[u])
                .collect::<BTreeSet<_>>()
                .len();
            let key = (sat + 1, self.adj[v].len());
            if pick.is_none() || key > pick_key {
                pick = Some(v);
                pick_key = key;
            }
        }
        let v = pick.expect("uncolored vertex remains");
        for c in 0..=used.min(self.best.saturating_sub(2)) {
            if self.adj[v].iter().any(|&u| self.color[u] == c) {
                continue;
            }
            self.color[v] = c;
            self.run(colored + 1, used.max(c + 1));
            self.color[v] = usize::MAX;
        }
    }
}

/// Minimum number of plane color classes of a fixed drawing (a proper
/// coloring of its conflict graph). Exact up to `exact_limit` nodes.
pub fn min_plane_decomposition(cg: &ConflictGraph, exact_limit: usize) -> Decomposition {
    let n = cg.node_count();
    if n == 0 {
        return Decomposition { colors: 0, coloring: vec![], exact: true };
    }
    let heuristic = dsatur(&cg.adjacency);
    let upper = heuristic.iter().max().map_or(0, |c| c + 1);
    if n > exact_limit {
        return Decomposition { colors: upper, coloring: heuristic, exact: false };
    }
    let mut search = ColorSearch {
        adj: &cg.adjacency,
        color: vec![usize::MAX; n],
        best: upper,
        best_coloring: heuristic,
        lower: greedy_clique(&cg.adjacency),
    };
    search.run(0, 0);
    Decomposition { colors: search.best, coloring: search.best_coloring, exact: true }
}

/// Whether adding edge `e` to the class `class_edges` closes a cycle.
fn closes_cycle(class_edges: &[Edge], e: Edge) -> bool {
    let mut uf = UnionFind::default();
    for &(a, b) in class_edges {
        uf.union(a, b);
    }
    uf.find(e.0) == uf.find(e.1)
}

fn greedy_forest_coloring(cg: &ConflictGraph) -> Vec<usize> {
    let n = cg.node_count();
    let mut color = vec![usize::MAX; n];
    let mut classes: Vec<Vec<Edge>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(cg.adjacency[i].len()), i));
    for i in order {
        let c = (0..=classes.len())
            .find(|&c| {
                c == classes.len()
                    || (!cg.adjacency[i].iter().any(|&j| color[j] == c) && !closes_cycle(&classes[c], cg.edges[i]))
            })
            .expect("a fresh class always fits");
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(cg.edges[i]);
        color[i] = c;
    }
    color
}

struct ForestSearch<'a> {
    cg: &'a ConflictGraph,
    order: Vec<usize>,
    color: Vec<usize>,
    classes: Vec<Vec<Edge>>,
}

impl ForestSearch<'_> {
    fn fits(&mut self, pos: usize, k: usize, used: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let i = self.order[pos];
        let e = self.cg.edges[i];
        for c in 0..k.min(used + 1) {
            if self.cg.adjacency[i].iter().any(|&j| self.color[j] == c) || closes_cycle(&self.classes[c], e) {
                continue;
            }
            self.color[i] = c;
            self.classes[c].push(e);
            if self.fits(pos + 1, k, used.max(c + 1)) {
                return true;
            }
            self.classes[c].pop();
            self.color[i] = usize::MAX;
        }
        false
    }
}

/// Lower bound on forests from edge density of the whole edge set.
fn arboricity_lower_bound(edges: &[Edge]) -> usize {
    let vertices: BTreeSet<VertexId> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    if vertices.len() < 2 {
        return 0;
    }
    edges.len().div_ceil(vertices.len() - 1)
}

/// Minimum number of plane forests covering a fixed drawing. Exact up to
/// `exact_limit` edges.
pub fn min_plane_forest_decomposition(d: &ColoredDrawing, exact_limit: usize) -> Result<Decomposition, VerifyError> {
    let cg = drawing_conflict_graph(d)?;
    Ok(min_forest_decomposition_of(&cg, exact_limit))
}

pub fn min_forest_decomposition_of(cg: &ConflictGraph, exact_limit: usize) -> Decomposition {
    let n = cg.node_count();
    if n == 0 {
        return Decomposition { colors: 0, coloring: vec![], exact: true };
    }
    let heuristic = greedy_forest_coloring(cg);
    let upper = heuristic.iter().max().map_or(0, |c| c + 1);
    if n > exact_limit {
        return Decomposition { colors: upper, coloring: heuristic, exact: false };
    }
    let lower = greedy_clique(&cg.adjacency).max(arboricity_lower_bound(&cg.edges)).max(1);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(cg.adjacency[i].len()), i));
    for k in lower..upper {
        let mut s = ForestSearch { cg, order: order.clone(), color: vec![usize::MAX; n], classes: vec![Vec::new(); k] };
        if s.fits(0, k, 0) {
            return Decomposition { colors: k, coloring: s.color, exact: true };
        }
    }
    Decomposition { colors: upper, coloring: heuristic, exact: true }
}

/// Whether `coloring` is a valid plane decomposition (and, if `forests`,
/// every class is acyclic).
pub fn is_valid_decomposition(cg: &ConflictGraph, coloring: &[usize], forests: bool) -> bool {
    if coloring.len() != cg.node_count() {
        return false;
    }
    for (i, adj) in cg.adjacency.iter().enumerate() {
        if adj.iter().any(|&j| coloring[j] == coloring[i]) {
            return false;
        }
    }
    if forests {
        let mut ufs: BTreeMap<usize, UnionFind> = BTreeMap::new();
        for (i, &(a, b)) in cg.edges.iter().enumerate() {
            if !ufs.entry(coloring[i]).or_default().union(a, b) {
                return false;
            }
        }
    }
    true
}

/// Exact-solver node cap, overridable through `PLANEWEAVE_EXACT_LIMIT`.
pub fn exact_limit_from_env() -> usize {
    std::env::var("PLANEWEAVE_EXACT_LIMIT")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_EXACT_LIMIT)
}

pub fn colors_used(d: &ColoredDrawing) -> usize {
    d.colors().values().copied().collect::<BTreeSet<EdgeColor>>().len()
}
