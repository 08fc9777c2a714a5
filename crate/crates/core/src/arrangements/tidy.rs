use std::collections::BTreeMap;

use crate::exactgeom::{
    convex_hull, in_convex_position, locate_in_polygon, orientation, segment_in_polygon, segments_cross, Crossing,
    GeomError, Orientation, Point, PointLocation, Segment,
};

use super::{is_grid_equivalent, ArrangementError, ColoredSegmentFamily, GridCertificate};

/// How a segment leaving a point of a convex set meets that set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QEdgeType {
    /// Exits through a side `q_j q_{j+1}` with `j < i - 1`.
    L,
    /// Exits through a side `q_j q_{j+1}` with `i < j < k`.
    R,
    /// Exits through the closing side `q_1 q_k`.
    I,
    /// Misses the interior of the hull.
    E,
}

/// Classifies segment `e` with endpoint `q[i]` (0-based) against the convex
/// polygon `q` given counterclockwise.
pub fn classify_q_edge(q: &[Point], i: usize, e: &Segment) -> Result<QEdgeType, ArrangementError> {
    let k = q.len();
    if k < 3 || i >= k {
        return Err(ArrangementError::Precondition("need at least three points and a valid index".into()));
    }
    for j in 0..k {
        if orientation(&q[j], &q[(j + 1) % k], &q[(j + 2) % k]) != Orientation::CounterClockwise {
            return Err(ArrangementError::Precondition("points are not in strictly convex counterclockwise order".into()));
        }
    }
    let far = if e.a == q[i] {
        &e.b
    } else if e.b == q[i] {
        &e.a
    } else {
        return Err(ArrangementError::Precondition(format!("segment has no endpoint at q{}", i + 1)));
    };
    if locate_in_polygon(q, far) != PointLocation::Outside {
        return Err(ArrangementError::Precondition("far endpoint lies in the hull".into()));
    }
    for (j, v) in q.iter().enumerate() {
        if j != i && e.contains_point(v) {
            return Err(ArrangementError::Precondition(format!("segment passes through q{}", j + 1)));
        }
    }
    // Sides q_j q_{j+1} in 1-based terms; side index s joins q[s] and q[s+1].
    for s in 0..k {
        let t = (s + 1) % k;
        if s == i || t == i {
            continue;
        }
        let side = Segment { a: q[s].clone(), b: q[t].clone() };
        match segments_cross(e, &side) {
            Ok(Crossing::Proper) => {}
            Ok(_) => continue,
            Err(GeomError::Overlap) => {
                return Err(ArrangementError::Precondition("segment runs along a side".into()));
            }
            Err(other) => return Err(other.into()),
        }
        return Ok(if t == 0 {
            QEdgeType::I
        } else if s + 1 < i {
            QEdgeType::L
        } else {
            QEdgeType::R
        });
    }
    Ok(QEdgeType::E)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

/// Edge of the drawn 1-subdivision from base vertex `base` of side `side`
/// to a subdivision point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionEdge {
    pub side: Side,
    pub base: usize,
    pub sub: Point,
}

/// Hull order of `A` followed by `B`, counterclockwise, starting at the first
/// `A` point after a `B` point. `None` unless `A` and `B` are separated.
pub fn separated_order(a: &[Point], b: &[Point]) -> Option<(Vec<usize>, Vec<usize>)> {
    let all: Vec<Point> = a.iter().chain(b).cloned().collect();
    if !in_convex_position(&all) {
        return None;
    }
    let hull = convex_hull(&all);
    let label: Vec<(Side, usize)> = hull
        .iter()
        .map(|p| match a.iter().position(|x| x == p) {
            Some(i) => (Side::A, i),
            None => (Side::B, b.iter().position(|x| x == p).expect("hull point comes from the input")),
        })
        .collect();
    let n = label.len();
    let changes = (0..n).filter(|&i| label[i].0 != label[(i + 1) % n].0).count();
    if changes > 2 {
        return None;
    }
    let start = (0..n)
        .find(|&i| label[i].0 == Side::A && (changes == 0 || label[(i + n - 1) % n].0 == Side::B))
        .unwrap_or(0);
    let mut ao = Vec::new();
    let mut bo = Vec::new();
    for step in 0..n {
        let (side, idx) = label[(start + step) % n];
        match side {
            Side::A => ao.push(idx),
            Side::B => bo.push(idx),
        }
    }
    Some((ao, bo))
}

/// Separated sides, and no proper crossing among `A`-edges or among
/// `B`-edges.
pub fn is_tidy(a: &[Point], b: &[Point], edges: &[SubdivisionEdge]) -> bool {
    if separated_order(a, b).is_none() {
        return false;
    }
    let mut segs: BTreeMap<Side, Vec<Segment>> = BTreeMap::new();
    for e in edges {
        let base = match e.side {
            Side::A => a.get(e.base),
            Side::B => b.get(e.base),
        };
        let Some(base) = base else { return false };
        let Ok(s) = Segment::new(base.clone(), e.sub.clone()) else { return false };
        segs.entry(e.side).or_default().push(s);
    }
    segs.values().all(|class| {
        (0..class.len()).all(|i| {
            (i + 1..class.len()).all(|j| matches!(segments_cross(&class[i], &class[j]), Ok(Crossing::None | Crossing::AtEndpoint)))
        })
    })
}

/// Corridors of a grid with one side in `A` and one in `B`, with the tidy and
/// dotted flags. Corridor keys are 1-based `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridContext {
    /// Grid vertices on the `A` side, in the order given by `A`.
    pub a_side: Vec<Point>,
    pub b_side: Vec<Point>,
    /// `x^A_i`: crossing of the edge at `a_i` with the farthest selected blue.
    pub cross_a: Vec<Point>,
    pub cross_b: Vec<Point>,
    pub corridor_a: BTreeMap<(usize, usize), Vec<Point>>,
    pub corridor_b: BTreeMap<(usize, usize), Vec<Point>>,
    pub tidy_grid: bool,
    pub dotted: bool,
}

/// For each selected segment: its endpoint on the given side and the index of
/// that endpoint in the side's order.
fn anchor(segments: &[&Segment], side: &[Point], order: &[usize]) -> Result<Vec<(usize, Point)>, ArrangementError> {
    let mut out = Vec::new();
    for s in segments {
        let hit = [&s.a, &s.b].into_iter().find_map(|p| side.iter().position(|x| x == p).map(|i| (i, p.clone())));
        let Some((idx, p)) = hit else {
            return Err(ArrangementError::InvalidCertificate("a selected segment has no endpoint on its side".into()));
        };
        let rank = order.iter().position(|&o| o == idx).expect("order covers the side");
        out.push((rank, p));
    }
    Ok(out)
}

fn far_crossing(s: &Segment, base: &Point, others: &[&Segment]) -> Point {
    others
        .iter()
        .map(|o| crate::exactgeom::line_intersection(s, o).expect("grid segments cross"))
        .max_by(|p, q| p.squared_distance(base).cmp(&q.squared_distance(base)))
        .expect("at least one crossing")
}

fn corridors(side: &[(Point, Point)]) -> BTreeMap<(usize, usize), Vec<Point>> {
    let k = side.len();
    let mut out = BTreeMap::new();
    for i in 0..k {
        for j in i + 1..k {
            let mut poly = vec![side[i].1.clone()];
            poly.extend(side[i..=j].iter().map(|(a, _)| a.clone()));
            poly.push(side[j].1.clone());
            out.insert((i + 1, j + 1), poly);
        }
    }
    out
}

/// Builds corridors for a certificate whose reds are `A`-edges and blues are
/// `B`-edges, then evaluates the tidy and dotted predicates. A cell counts as
/// dotted when some subdivision point lies strictly inside it.
pub fn grid_context(
    cert: &GridCertificate,
    f: &ColoredSegmentFamily,
    a: &[Point],
    b: &[Point],
    subdivision_points: &[Point],
) -> Result<GridContext, ArrangementError> {
    if !is_grid_equivalent(cert, f) {
        return Err(ArrangementError::InvalidCertificate("selection is not a grid".into()));
    }
    let (a_order, b_order) = separated_order(a, b)
        .ok_or_else(|| ArrangementError::Precondition("A and B are not separated".into()))?;
    let reds: Vec<&Segment> = cert.red_idx.iter().map(|&i| &f.red()[i]).collect();
    let blues: Vec<&Segment> = cert.blue_idx.iter().map(|&i| &f.blue()[i]).collect();
    let build = |segs: &[&Segment], others: &[&Segment], pts: &[Point], order: &[usize]| {
        let mut anchored: Vec<(usize, Point, Point)> = anchor(segs, pts, order)?
            .into_iter()
            .zip(segs)
            .map(|((rank, p), s)| {
                let x = far_crossing(s, &p, others);
                (rank, p, x)
            })
            .collect();
        anchored.sort_by_key(|t| t.0);
        if anchored.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(ArrangementError::InvalidCertificate("two selected segments share a side vertex".into()));
        }
        Ok(anchored.into_iter().map(|(_, p, x)| (p, x)).collect::<Vec<_>>())
    };
    let side_a = build(&reds, &blues, a, &a_order)?;
    let side_b = build(&blues, &reds, b, &b_order)?;
    let corridor_a = corridors(&side_a);
    let corridor_b = corridors(&side_b);
    let k = side_a.len();

    let contained = |side: &[(Point, Point)], corr: &BTreeMap<(usize, usize), Vec<Point>>| {
        k < 2 || {
            let outer = &corr[&(1, k)];
            side.iter().all(|(p, x)| Segment::new(p.clone(), x.clone()).is_ok_and(|s| segment_in_polygon(outer, &s)))
        }
    };
    let tidy_grid = contained(&side_a, &corridor_a) && contained(&side_b, &corridor_b);
    let dotted = tidy_grid
        && (1..k).all(|i| {
            (1..k).all(|j| {
                let (ca, cb) = (&corridor_a[&(i, i + 1)], &corridor_b[&(j, j + 1)]);
                subdivision_points.iter().any(|p| {
                    locate_in_polygon(ca, p) == PointLocation::Inside && locate_in_polygon(cb, p) == PointLocation::Inside
                })
            })
        });
    Ok(GridContext {
        a_side: side_a.iter().map(|(p, _)| p.clone()).collect(),
        b_side: side_b.iter().map(|(p, _)| p.clone()).collect(),
        cross_a: side_a.into_iter().map(|(_, x)| x).collect(),
        cross_b: side_b.into_iter().map(|(_, x)| x).collect(),
        corridor_a,
        corridor_b,
        tidy_grid,
        dotted,
    })
}
