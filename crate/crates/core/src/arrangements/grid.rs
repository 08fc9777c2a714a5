use std::collections::BTreeMap;

use crate::exactgeom::{direction_sign, line_intersection, rat, segments_cross, Crossing, Orientation, Point, Rat, Segment};

use super::{binomial, for_each_subset, ArrangementError, ColoredSegmentFamily};

/// Default cap on candidate selections for grid searches.
pub const DEFAULT_GRID_SEARCH_LIMIT: u128 = 1_000_000;

/// Largest `red * blue` size for which a failed pigeonhole step falls back to
/// complete search.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 10_000;

/// Selected reds and blues forming a grid, with the common crossing orders.
///
/// Orientation convention: every selected blue is directed so that the first
/// selected red crosses it with positive sign; every selected red is directed
/// so that it crosses the first (directed) blue with positive sign. Orders
/// are positions into `blue_idx` (resp. `red_idx`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridCertificate {
    pub red_idx: Vec<usize>,
    pub blue_idx: Vec<usize>,
    pub cross_order_red: Vec<usize>,
    pub cross_order_blue: Vec<usize>,
}

impl GridCertificate {
    pub fn k(&self) -> usize {
        self.red_idx.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoTwoType {
    TypeI,
    TypeII,
    Invalid,
}

/// Positive iff `b` crosses `r` from right to left.
fn crossing_sign(r: &Segment, b: &Segment) -> Orientation {
    direction_sign(&r.direction(), &b.direction())
}

fn oriented(s: &Segment, flip: bool) -> Segment {
    if flip {
        s.reversed()
    } else {
        s.clone()
    }
}

/// Order of `others` along `s` by the parameter of the crossing point.
fn crossing_order(s: &Segment, others: &[Segment]) -> Vec<usize> {
    let mut keyed: Vec<(Rat, usize)> = others
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let p = line_intersection(s, o).expect("crossing segments are not parallel");
            (s.param_of(&p), i)
        })
        .collect();
    keyed.sort();
    keyed.into_iter().map(|(_, i)| i).collect()
}

struct Signature {
    signs_agree: bool,
    red_orders: Vec<Vec<usize>>,
    blue_orders: Vec<Vec<usize>>,
}

impl Signature {
    fn uniform(&self) -> bool {
        self.signs_agree
            && self.red_orders.windows(2).all(|w| w[0] == w[1])
            && self.blue_orders.windows(2).all(|w| w[0] == w[1])
    }
}

/// Crossing signature of reds against blues; every pair must cross properly.
fn signature(reds: &[Segment], blues: &[Segment]) -> Signature {
    let blues: Vec<Segment> =
        blues.iter().map(|b| oriented(b, crossing_sign(&reds[0], b) == Orientation::Clockwise)).collect();
    let reds: Vec<Segment> =
        reds.iter().map(|r| oriented(r, crossing_sign(r, &blues[0]) == Orientation::Clockwise)).collect();
    let signs_agree =
        reds.iter().all(|r| blues.iter().all(|b| crossing_sign(r, b) == Orientation::CounterClockwise));
    Signature {
        signs_agree,
        red_orders: reds.iter().map(|r| crossing_order(r, &blues)).collect(),
        blue_orders: blues.iter().map(|b| crossing_order(b, &reds)).collect(),
    }
}

fn disjoint(s: &Segment, t: &Segment) -> bool {
    matches!(segments_cross(s, t), Ok(Crossing::None))
}

fn proper(s: &Segment, t: &Segment) -> bool {
    matches!(segments_cross(s, t), Ok(Crossing::Proper))
}

/// Classifies two disjoint reds and two disjoint blues that cross pairwise.
/// Type I is the grid-like arrangement: after consistent orientation both
/// reds see the blues in the same order and vice versa.
pub fn classify_two_two(r1: &Segment, r2: &Segment, b1: &Segment, b2: &Segment) -> TwoTwoType {
    if !disjoint(r1, r2) || !disjoint(b1, b2) {
        return TwoTwoType::Invalid;
    }
    if ![(r1, b1), (r1, b2), (r2, b1), (r2, b2)].iter().all(|(r, b)| proper(r, b)) {
        return TwoTwoType::Invalid;
    }
    let sig = signature(&[r1.clone(), r2.clone()], &[b1.clone(), b2.clone()]);
    if sig.uniform() {
        TwoTwoType::TypeI
    } else {
        TwoTwoType::TypeII
    }
}

/// Checks every condition of a grid certificate against the family.
pub fn is_grid_equivalent(cert: &GridCertificate, f: &ColoredSegmentFamily) -> bool {
    let k = cert.red_idx.len();
    if k == 0 || cert.blue_idx.len() != k || cert.cross_order_red.len() != k || cert.cross_order_blue.len() != k {
        return false;
    }
    let valid = |idx: &[usize], n: usize| {
        let mut s = idx.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len() == idx.len() && idx.iter().all(|&i| i < n)
    };
    if !valid(&cert.red_idx, f.red().len()) || !valid(&cert.blue_idx, f.blue().len()) {
        return false;
    }
    let reds: Vec<Segment> = cert.red_idx.iter().map(|&i| f.red()[i].clone()).collect();
    let blues: Vec<Segment> = cert.blue_idx.iter().map(|&i| f.blue()[i].clone()).collect();
    for group in [&reds, &blues] {
        for i in 0..k {
            for j in i + 1..k {
                if !disjoint(&group[i], &group[j]) {
                    return false;
                }
            }
        }
    }
    if !reds.iter().all(|r| blues.iter().all(|b| proper(r, b))) {
        return false;
    }
    let mut endpoints: Vec<&Point> = reds.iter().chain(&blues).flat_map(|s| [&s.a, &s.b]).collect();
    endpoints.sort();
    if endpoints.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let sig = signature(&reds, &blues);
    sig.signs_agree
        && sig.red_orders.iter().all(|o| o == &cert.cross_order_red)
        && sig.blue_orders.iter().all(|o| o == &cert.cross_order_blue)
}

/// Certificate for the given selection if it forms a grid.
pub fn certificate_for(f: &ColoredSegmentFamily, red_idx: &[usize], blue_idx: &[usize]) -> Option<GridCertificate> {
    let reds: Vec<Segment> = red_idx.iter().map(|&i| f.red()[i].clone()).collect();
    let blues: Vec<Segment> = blue_idx.iter().map(|&i| f.blue()[i].clone()).collect();
    if reds.is_empty() || !reds.iter().all(|r| blues.iter().all(|b| proper(r, b))) {
        return None;
    }
    let sig = signature(&reds, &blues);
    let cert = GridCertificate {
        red_idx: red_idx.to_vec(),
        blue_idx: blue_idx.to_vec(),
        cross_order_red: sig.red_orders[0].clone(),
        cross_order_blue: sig.blue_orders[0].clone(),
    };
    is_grid_equivalent(&cert, f).then_some(cert)
}

/// Reds grouped by their crossing vector against `blues` (first blue is the
/// reference), in order of first appearance. Only reds crossing every blue
/// properly are considered.
fn first_full_bucket(f: &ColoredSegmentFamily, blue_idx: &[usize], k: usize) -> Option<Vec<usize>> {
    let blues: Vec<&Segment> = blue_idx.iter().map(|&i| &f.blue()[i]).collect();
    let mut buckets: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for (ri, r) in f.red().iter().enumerate() {
        if !blues.iter().all(|b| proper(r, b)) {
            continue;
        }
        let r = oriented(r, crossing_sign(r, blues[0]) == Orientation::Clockwise);
        let vector: Vec<bool> = blues[1..].iter().map(|b| crossing_sign(&r, b) == Orientation::Clockwise).collect();
        let bucket = buckets.entry(vector).or_default();
        bucket.push(ri);
        if bucket.len() == k {
            return Some(bucket.clone());
        }
    }
    None
}

/// Finds a `k`-grid in an all-crossing family.
///
/// Takes the first `k` blues, sorts reds into buckets by crossing vector and
/// returns the first bucket reaching `k` reds. If that fails, repeats over
/// every `k`-subset of blues, which is complete because the reds of any grid
/// share one crossing vector. `None` means no grid exists.
pub fn find_k_grid(f: &ColoredSegmentFamily, k: usize) -> Result<Option<GridCertificate>, ArrangementError> {
    if k == 0 {
        return Err(ArrangementError::Precondition("k must be positive".into()));
    }
    if let Some((red, blue)) = f.first_non_crossing() {
        return Err(ArrangementError::NotAllCrossing { red, blue });
    }
    let (nr, nb) = (f.red().len(), f.blue().len());
    if nr < k || nb < k {
        return Ok(None);
    }
    let first: Vec<usize> = (0..k).collect();
    if let Some(reds) = first_full_bucket(f, &first, k) {
        if let Some(cert) = certificate_for(f, &reds, &first) {
            return Ok(Some(cert));
        }
    }
    let size = binomial(nb, k).saturating_mul(nr as u128);
    if nr.saturating_mul(nb) > EXHAUSTIVE_PAIR_LIMIT || size > DEFAULT_GRID_SEARCH_LIMIT {
        return Err(ArrangementError::SearchLimitExceeded { size, limit: DEFAULT_GRID_SEARCH_LIMIT });
    }
    let mut found = None;
    for_each_subset(nb, k, |blues| {
        found = first_full_bucket(f, blues, k).and_then(|reds| certificate_for(f, &reds, blues));
        found.is_some()
    });
    Ok(found)
}

/// Tries every pair of `k`-subsets of reds and blues (no crossing
/// precondition). Returns the lexicographically first grid.
pub fn exhaustive_grid_search(
    f: &ColoredSegmentFamily,
    k: usize,
    limit: u128,
) -> Result<Option<GridCertificate>, ArrangementError> {
    if k == 0 {
        return Err(ArrangementError::Precondition("k must be positive".into()));
    }
    let (nr, nb) = (f.red().len(), f.blue().len());
    let size = binomial(nr, k).saturating_mul(binomial(nb, k));
    if size > limit {
        return Err(ArrangementError::SearchLimitExceeded { size, limit });
    }
    // Crossing table avoids repeating predicates across subsets.
    let crosses: Vec<Vec<bool>> = f.red().iter().map(|r| f.blue().iter().map(|b| proper(r, b)).collect()).collect();
    let mut found = None;
    for_each_subset(nr, k, |reds| {
        for_each_subset(nb, k, |blues| {
            if reds.iter().all(|&r| blues.iter().all(|&b| crosses[r][b])) {
                found = certificate_for(f, reds, blues);
            }
            found.is_some()
        })
    });
    Ok(found)
}

/// Star-of-David family: a red triangle and the blue triangle obtained by a
/// half turn about its centroid, sides trimmed so no two same-colored sides
/// touch, each side replaced by `k` parallel copies.
///
/// Every red crosses the `2k` blues not parallel to it and misses the `k`
/// parallel ones, so grids have at most `k` rows.
pub fn generate_no_grid_family(k: usize) -> Result<ColoredSegmentFamily, ArrangementError> {
    if k == 0 {
        return Err(ArrangementError::Precondition("k must be positive".into()));
    }
    let p = Point::from_ints;
    let red_tri = [p(0, 0), p(12, 0), p(6, 12)];
    // Half turn about the centroid (6, 4).
    let blue_tri = [p(12, 8), p(0, 8), p(6, -4)];
    let centroid = p(6, 4);
    let step = rat(1, 16 * k as i64);
    let trim = |a: &Point, b: &Point| {
        let s = Segment { a: a.clone(), b: b.clone() };
        (s.point_at(&rat(1, 12)), s.point_at(&rat(11, 12)))
    };
    let copies = |tri: &[Point; 3]| -> Vec<Segment> {
        let mut out = Vec::new();
        for side in 0..3 {
            let (a, b) = (&tri[side], &tri[(side + 1) % 3]);
            let (s, e) = trim(a, b);
            // Unit-free inward shift towards the centroid.
            let (dx, dy) = (&centroid.x - &a.x - (&b.x - &a.x) / rat(2, 1), &centroid.y - &a.y - (&b.y - &a.y) / rat(2, 1));
            for j in 0..k {
                let t = &step * Rat::from_integer((j as i64).into());
                out.push(Segment { a: s.offset(&t, &dx, &dy), b: e.offset(&t, &dx, &dy) });
            }
        }
        out
    };
    ColoredSegmentFamily::new(copies(&red_tri), copies(&blue_tri))
}

/// Canonical axis-parallel `k`-grid: reds `y = i`, blues `x = j`.
pub fn canonical_grid(k: usize) -> ColoredSegmentFamily {
    let n = k as i64 + 1;
    let red = (1..n).map(|i| Segment::from_ints(0, i, n, i).expect("non-degenerate")).collect();
    let blue = (1..n).map(|j| Segment::from_ints(j, 0, j, n).expect("non-degenerate")).collect();
    ColoredSegmentFamily::new(red, blue).expect("parallel segments are disjoint")
}
