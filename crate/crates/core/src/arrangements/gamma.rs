use super::ArrangementError;

/// The `t`-blowup of the complement of the `k x k` grid graph: cells `(i, j)`
/// with `1 <= i, j <= k`, each holding `t` vertices; vertices in cells
/// `(i, j)` and `(p, q)` are adjacent iff `i != p` and `j != q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaGraph {
    pub k: usize,
    pub t: usize,
}

impl GammaGraph {
    pub fn new(k: usize, t: usize) -> Result<Self, ArrangementError> {
        if k == 0 || t == 0 {
            return Err(ArrangementError::Precondition("k and t must be positive".into()));
        }
        Ok(GammaGraph { k, t })
    }

    pub fn vertex_count(&self) -> usize {
        self.k * self.k * self.t
    }

    /// Vertex id of the `s`-th vertex (0-based) in cell `(i, j)` (1-based).
    pub fn vertex(&self, i: usize, j: usize, s: usize) -> usize {
        ((i - 1) * self.k + (j - 1)) * self.t + s
    }

    /// Cell `(i, j)` of vertex `v`, 1-based.
    pub fn cell(&self, v: usize) -> (usize, usize) {
        let c = v / self.t;
        (c / self.k + 1, c % self.k + 1)
    }

    pub fn cell_vertices(&self, i: usize, j: usize) -> std::ops::Range<usize> {
        let start = self.vertex(i, j, 0);
        start..start + self.t
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        let ((i, j), (p, q)) = (self.cell(u), self.cell(v));
        i != p && j != q
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(move |&u| self.adjacent(u, v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// All edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n).flat_map(|u| (u + 1..n).filter(move |&v| self.adjacent(u, v)).map(move |v| (u, v))).collect()
    }
}

/// Dense symmetric edge coloring; `0` marks an uncolored pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaColoring {
    n: usize,
    colors: Vec<u32>,
}

impl GammaColoring {
    pub fn new(g: &GammaGraph) -> Self {
        let n = g.vertex_count();
        GammaColoring { n, colors: vec![0; n * n] }
    }

    /// Every edge of `g` colored `c`.
    pub fn uniform(g: &GammaGraph, c: u32) -> Self {
        let mut out = Self::new(g);
        for (u, v) in g.edges() {
            out.set(u, v, c);
        }
        out
    }

    pub fn set(&mut self, u: usize, v: usize, c: u32) {
        self.colors[u * self.n + v] = c;
        self.colors[v * self.n + u] = c;
    }

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.colors[u * self.n + v]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibilityViolation {
    /// A monochromatic `K5` in a color other than `r`.
    MonochromaticK5 { vertices: [usize; 5], color: u32 },
    /// A monotone path `u v w` in one color `c` with `3 <= c < r`.
    MonotonePath { path: [usize; 3], color: u32 },
}

fn check_complete(g: &GammaGraph, coloring: &GammaColoring, r: u32) -> Result<(), ArrangementError> {
    if coloring.n != g.vertex_count() {
        return Err(ArrangementError::IncompleteColoring("coloring size does not match the graph".into()));
    }
    for (u, v) in g.edges() {
        let c = coloring.get(u, v);
        if c == 0 || c > r {
            return Err(ArrangementError::IncompleteColoring(format!("edge {u}-{v} has color {c}, expected 1..={r}")));
        }
    }
    Ok(())
}

/// Extends `clique` (all edges colored `color`) to five vertices using
/// candidates above its last vertex.
fn mono_k5(g: &GammaGraph, coloring: &GammaColoring, clique: &mut Vec<usize>, color: u32) -> bool {
    if clique.len() == 5 {
        return true;
    }
    let start = clique.last().map_or(0, |&v| v + 1);
    for v in start..g.vertex_count() {
        if clique.iter().all(|&u| g.adjacent(u, v) && coloring.get(u, v) == color) {
            clique.push(v);
            if mono_k5(g, coloring, clique, color) {
                return true;
            }
            clique.pop();
        }
    }
    false
}

/// Whether `u v w` is monotone: strictly increasing first index and strictly
/// monotone (either direction) second index.
pub fn is_monotone_path(g: &GammaGraph, u: usize, v: usize, w: usize) -> bool {
    let ((i, j), (p, q), (x, y)) = (g.cell(u), g.cell(v), g.cell(w));
    i < p && p < x && ((j < q && q < y) || (y < q && q < j))
}

/// Checks both admissibility clauses exhaustively; `Ok(None)` means
/// admissible, otherwise the first violation in vertex order.
pub fn is_admissible(
    g: &GammaGraph,
    coloring: &GammaColoring,
    r: u32,
) -> Result<Option<AdmissibilityViolation>, ArrangementError> {
    check_complete(g, coloring, r)?;
    let n = g.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            if !g.adjacent(u, v) {
                continue;
            }
            let color = coloring.get(u, v);
            if color == r {
                continue;
            }
            let mut clique = vec![u, v];
            if mono_k5(g, coloring, &mut clique, color) {
                let vertices = [clique[0], clique[1], clique[2], clique[3], clique[4]];
                return Ok(Some(AdmissibilityViolation::MonochromaticK5 { vertices, color }));
            }
        }
    }
    for v in 0..n {
        for u in g.neighbors(v) {
            let c = coloring.get(u, v);
            if !(3..r).contains(&c) {
                continue;
            }
            for w in g.neighbors(v) {
                if coloring.get(v, w) == c && is_monotone_path(g, u, v, w) {
                    return Ok(Some(AdmissibilityViolation::MonotonePath { path: [u, v, w], color: c }));
                }
            }
        }
    }
    Ok(None)
}

/// Which `(i, j)`-quadrant holds cell `(p, q)`: 0 for `p<i,q<j`, 1 for
/// `p<i,q>j`, 2 for `p>i,q<j`, 3 for `p>i,q>j`; `None` on a shared row or
/// column.
pub fn quadrant(i: usize, j: usize, p: usize, q: usize) -> Option<usize> {
    if p == i || q == j {
        return None;
    }
    Some(usize::from(p > i) * 2 + usize::from(q > j))
}

/// First cell `(i, j)` in lexicographic order where every vertex has an
/// `r`-colored edge into each of the four `(i, j)`-quadrants.
pub fn find_quadrant_hub(g: &GammaGraph, coloring: &GammaColoring, r: u32) -> Option<(usize, usize)> {
    for i in 1..=g.k {
        for j in 1..=g.k {
            let hub = g.cell_vertices(i, j).all(|v| {
                let mut seen = [false; 4];
                for u in g.neighbors(v) {
                    if coloring.get(u, v) == r {
                        let (p, q) = g.cell(u);
                        if let Some(quad) = quadrant(i, j, p, q) {
                            seen[quad] = true;
                        }
                    }
                }
                seen.iter().all(|&s| s)
            });
            if hub {
                return Some((i, j));
            }
        }
    }
    None
}
