use std::collections::BTreeMap;

use crate::exactgeom::{orientation, Orientation, Point};
use crate::graphs::VertexId;
use crate::verify::{build_conflict_graph, Edge};

use super::ArrangementError;

fn check_general_position(points: &[Point]) -> Result<(), ArrangementError> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                if orientation(&points[i], &points[j], &points[l]) == Orientation::Collinear {
                    return Err(ArrangementError::CollinearInput(i, j, l));
                }
            }
        }
    }
    Ok(())
}

/// Largest subset in convex position, as indices in counterclockwise order
/// starting from its lowest point.
///
/// For each anchor taken as the lowest vertex, the other candidates are
/// sorted by angle and a longest chain of left turns is found over ordered
/// pairs; the chain closes if the turn back to the anchor is also left.
pub fn max_convex_subset(points: &[Point]) -> Result<Vec<usize>, ArrangementError> {
    check_general_position(points)?;
    let n = points.len();
    if n <= 2 {
        return Ok((0..n).collect());
    }
    let key = |i: usize| (&points[i].y, &points[i].x);
    let mut best: Vec<usize> = vec![0, 1];
    for a in 0..n {
        let pa = &points[a];
        let mut cand: Vec<usize> = (0..n).filter(|&i| key(i) > key(a)).collect();
        cand.sort_by(|&p, &q| match orientation(pa, &points[p], &points[q]) {
            Orientation::CounterClockwise => std::cmp::Ordering::Less,
            Orientation::Clockwise => std::cmp::Ordering::Greater,
            Orientation::Collinear => std::cmp::Ordering::Equal,
        });
        let m = cand.len();
        // len[i][j]: vertices on the best chain a, ..., cand[i], cand[j].
        let mut len = vec![vec![0usize; m]; m];
        let mut parent = vec![vec![usize::MAX; m]; m];
        for j in 0..m {
            for i in 0..j {
                len[i][j] = 3;
                for h in 0..i {
                    if len[h][i] + 1 > len[i][j]
                        && orientation(&points[cand[h]], &points[cand[i]], &points[cand[j]]) == Orientation::CounterClockwise
                    {
                        len[i][j] = len[h][i] + 1;
                        parent[i][j] = h;
                    }
                }
                let closes = orientation(&points[cand[i]], &points[cand[j]], pa) == Orientation::CounterClockwise;
                if closes && len[i][j] > best.len() {
                    let mut chain = vec![cand[j], cand[i]];
                    let (mut x, mut y) = (i, j);
                    while parent[x][y] != usize::MAX {
                        let h = parent[x][y];
                        chain.push(cand[h]);
                        y = x;
                        x = h;
                    }
                    chain.push(a);
                    chain.reverse();
                    best = chain;
                }
            }
        }
    }
    Ok(best)
}

/// Some `k` points in convex position, or `None` if the largest such subset
/// is smaller.
pub fn convex_position_subset(points: &[Point], k: usize) -> Result<Option<Vec<usize>>, ArrangementError> {
    let best = max_convex_subset(points)?;
    Ok((best.len() >= k).then(|| best[..k].to_vec()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biclique {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub color: u32,
}

type Bits = Vec<u64>;

fn popcount(b: &Bits) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn and(x: &Bits, y: &Bits) -> Bits {
    x.iter().zip(y).map(|(a, b)| a & b).collect()
}

fn grow(rows: &[Bits], chosen: &mut Vec<usize>, common: &Bits, k: usize) -> Option<Bits> {
    if chosen.len() == k {
        return Some(common.clone());
    }
    let start = chosen.last().map_or(0, |&v| v + 1);
    for a in start..rows.len() {
        if rows.len() - a < k - chosen.len() {
            break;
        }
        let next = and(common, &rows[a]);
        if popcount(&next) < k {
            continue;
        }
        chosen.push(a);
        if let Some(found) = grow(rows, chosen, &next, k) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// A monochromatic `K_{k,k}` in a complete bipartite coloring given as a
/// matrix (`colors[a][b]`), searching colors in increasing order and
/// `A`-subsets lexicographically.
pub fn monochromatic_biclique(colors: &[Vec<u32>], k: usize) -> Result<Option<Biclique>, ArrangementError> {
    let nb = colors.first().map_or(0, Vec::len);
    if let Some(a) = colors.iter().position(|row| row.len() != nb) {
        return Err(ArrangementError::IncompleteColoring(format!("row {a} has {} entries, expected {nb}", colors[a].len())));
    }
    if k == 0 {
        return Ok(Some(Biclique { a: vec![], b: vec![], color: colors.first().and_then(|r| r.first()).copied().unwrap_or(0) }));
    }
    let mut palette: Vec<u32> = colors.iter().flatten().copied().collect();
    palette.sort_unstable();
    palette.dedup();
    let words = nb.div_ceil(64);
    for color in palette {
        let rows: Vec<Bits> = colors
            .iter()
            .map(|row| {
                let mut bits = vec![0u64; words];
                for (b, &c) in row.iter().enumerate() {
                    if c == color {
                        bits[b / 64] |= 1 << (b % 64);
                    }
                }
                bits
            })
            .collect();
        let all: Bits = (0..words)
            .map(|w| if (w + 1) * 64 <= nb { u64::MAX } else { (1u64 << (nb % 64)) - 1 })
            .collect();
        let mut chosen = Vec::new();
        if let Some(common) = grow(&rows, &mut chosen, &all, k) {
            let b = (0..nb).filter(|&b| common[b / 64] >> (b % 64) & 1 == 1).take(k).collect();
            return Ok(Some(Biclique { a: chosen, b, color }));
        }
    }
    Ok(None)
}

fn extend_clique(adj: &[Vec<bool>], chosen: &mut Vec<usize>, cand: &[usize], k: usize) -> bool {
    if chosen.len() == k {
        return true;
    }
    for (pos, &v) in cand.iter().enumerate() {
        if cand.len() - pos < k - chosen.len() {
            break;
        }
        let next: Vec<usize> = cand[pos + 1..].iter().copied().filter(|&u| adj[v][u]).collect();
        chosen.push(v);
        if extend_clique(adj, chosen, &next, k) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// `k` pairwise vertex-disjoint edges whose segments pairwise cross
/// properly, or `None`.
pub fn pairwise_crossing_edges(
    positions: &BTreeMap<VertexId, Point>,
    edges: &[Edge],
    k: usize,
) -> Result<Option<Vec<Edge>>, ArrangementError> {
    let cg = build_conflict_graph(positions, edges)?;
    let n = edges.len();
    let mut adj = vec![vec![false; n]; n];
    for (i, nbrs) in cg.adjacency.iter().enumerate() {
        for &j in nbrs {
            let (a, b) = (edges[i], edges[j]);
            adj[i][j] = a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1;
        }
    }
    let mut chosen = Vec::new();
    let all: Vec<usize> = (0..n).collect();
    Ok(extend_clique(&adj, &mut chosen, &all, k).then(|| chosen.iter().map(|&i| edges[i]).collect()))
}
