//! Generators, fixtures and brute-force oracles shared by the integration
//! tests. Oracles avoid the library's predicates: they use their own integer
//! or rational formulas.
#![allow(dead_code)]

use std::collections::BTreeMap;

use planeweave::arrangements::{find_k_grid, ColoredSegmentFamily, GammaColoring, GammaGraph, GridCertificate};
use planeweave::exactgeom::{int, Point, Rat, Segment};
use planeweave::layout::ColoredDrawing;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ri(x: i64, y: i64) -> Point {
    Point::from_ints(x, y)
}

fn cross(ax: &Rat, ay: &Rat, bx: &Rat, by: &Rat) -> Rat {
    ax * by - ay * bx
}

// ---------------------------------------------------------------------------
// Perturbation constraints of one construction level.

/// Violations of the slope and offset constraints for a drawing `d` about to
/// receive a new level with slope `m` and offset `eps`. Meeting points are
/// those of the slope-`m` line through a lower vertex with the horizontal
/// line through a higher one. Distances between parallel lines are compared
/// in true Euclidean form, squared: `eps^2 (1 + m^2) < gap^2`.
///
/// Coordinates are scaled by the lcm `l` of their denominators, with
/// `m = p/q` and `eps = e/f`, so every test is an integer comparison.
pub fn perturbation_violations(d: &ColoredDrawing, m: &Rat, eps: &Rat) -> Vec<String> {
    let mut out = Vec::new();
    let zero = int(0);
    if *m <= zero || *eps <= zero {
        out.push(format!("non-positive m {m} or eps {eps}"));
        return out;
    }
    let l = d.positions().values().fold(BigInt::one(), |acc, pt| acc.lcm(pt.x.denom()).lcm(pt.y.denom()));
    let scale = |r: &Rat| r.numer() * (&l / r.denom());
    let pts: Vec<(usize, BigInt, BigInt)> = d.positions().iter().map(|(&v, pt)| (v, scale(&pt.x), scale(&pt.y))).collect();
    let (p, q) = (m.numer(), m.denom());
    let (e, f) = (eps.numer(), eps.denom());
    let el = e * &l;
    let eps_sq_slope = e * e * (q * q + p * p) * &l * &l;
    let Some(x_max) = pts.iter().map(|t| &t.1).max() else { return out };
    let x_max_p = x_max * p;
    // Meeting x-coordinates, scaled by `l * p`.
    let mut meets = Vec::new();
    for (u, xu, yu) in &pts {
        for (v, xv, yv) in &pts {
            if u == v {
                continue;
            }
            let dy = yv - yu;
            if dy.is_positive() {
                // (i)
                let x = xu * p + &dy * q;
                if x <= x_max_p {
                    out.push(format!("(i) meet of {u} and {v} not beyond x_max"));
                }
                meets.push(x);
                // (ii)
                if el >= &dy * f {
                    out.push(format!("(ii) eps {eps} not below gap of {u} {v}"));
                }
            }
            if u < v {
                // (iv)
                let gap = &dy * q - p * (xv - xu);
                if !gap.is_zero() && eps_sq_slope >= f * f * &gap * &gap {
                    out.push(format!("(iv) eps {eps} not below line distance of {u} {v}"));
                }
            }
        }
    }
    // (iii): the smallest nonzero gap among meeting x-coordinates is between
    // neighbours in sorted order.
    meets.sort();
    meets.dedup();
    let elp = &el * p;
    for w in meets.windows(2) {
        if elp >= f * (&w[1] - &w[0]) {
            out.push(format!("(iii) eps {eps} not below a meet gap"));
            break;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Random all-crossing red/blue families.

type F = (f64, f64);

fn fcross(a: F, b: F) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn fsub(a: F, b: F) -> F {
    (a.0 - b.0, a.1 - b.1)
}

fn fdisjoint(s: (F, F), t: (F, F)) -> bool {
    let o = |a: F, b: F, c: F| fcross(fsub(b, a), fsub(c, a));
    let d1 = o(s.0, s.1, t.0);
    let d2 = o(s.0, s.1, t.1);
    let d3 = o(t.0, t.1, s.0);
    let d4 = o(t.0, t.1, s.1);
    !(d1 * d2 <= 0.0 && d3 * d4 <= 0.0)
}

/// Lines through random centers with directions within `cone` radians of
/// horizontal (reds) or vertical (blues); each segment spans its crossings
/// with the other color plus a random margin. Rounded to integer endpoints
/// and validated exactly; retried until valid.
pub fn random_all_crossing(rng: &mut ChaCha8Rng, nr: usize, nb: usize, cone: f64) -> ColoredSegmentFamily {
    'attempt: loop {
        let mut line = |base: f64| {
            let a = base + rng.gen_range(-cone..cone);
            ((rng.gen_range(-100.0..100.0), rng.gen_range(-100.0..100.0)), (a.cos(), a.sin()))
        };
        let reds: Vec<(F, F)> = (0..nr).map(|_| line(0.0)).collect();
        let blues: Vec<(F, F)> = (0..nb).map(|_| line(std::f64::consts::FRAC_PI_2)).collect();
        let mut span = |own: &[(F, F)], other: &[(F, F)]| -> Option<Vec<(F, F)>> {
            let mut out = Vec::new();
            for &(c, d) in own {
                let mut ts = Vec::new();
                for &(c2, d2) in other {
                    let det = fcross(d, d2);
                    if det.abs() < 0.1 {
                        return None;
                    }
                    ts.push(fcross(fsub(c2, c), d2) / det);
                }
                let lo = ts.iter().cloned().fold(f64::INFINITY, f64::min) - rng.gen_range(2.0..30.0);
                let hi = ts.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + rng.gen_range(2.0..30.0);
                out.push(((c.0 + lo * d.0, c.1 + lo * d.1), (c.0 + hi * d.0, c.1 + hi * d.1)));
            }
            Some(out)
        };
        let (Some(rs), Some(bs)) = (span(&reds, &blues), span(&blues, &reds)) else { continue };
        for segs in [&rs, &bs] {
            for i in 0..segs.len() {
                for j in i + 1..segs.len() {
                    if !fdisjoint(segs[i], segs[j]) {
                        continue 'attempt;
                    }
                }
            }
        }
        let exact = |s: &(F, F)| {
            let r = |v: f64| (v * 4.0).round() as i64;
            Segment::from_ints(r(s.0 .0), r(s.0 .1), r(s.1 .0), r(s.1 .1))
        };
        let (Ok(rs), Ok(bs)) = (rs.iter().map(exact).collect(), bs.iter().map(exact).collect()) else { continue };
        if let Ok(f) = ColoredSegmentFamily::new(rs, bs) {
            if f.is_all_crossing() {
                return f;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Face structure of two reds and two blues.

fn meet(s: &Segment, t: &Segment) -> (Rat, Rat) {
    let (sx, sy) = (&s.b.x - &s.a.x, &s.b.y - &s.a.y);
    let (tx, ty) = (&t.b.x - &t.a.x, &t.b.y - &t.a.y);
    let (wx, wy) = (&t.a.x - &s.a.x, &t.a.y - &s.a.y);
    let u = cross(&wx, &wy, &tx, &ty) / cross(&sx, &sy, &tx, &ty);
    (&s.a.x + &u * &sx, &s.a.y + &u * &sy)
}

/// Whether the four crossings, walked along `r1, b2, r2, b1`, bound a convex
/// face. The crossing cycle is always a simple quadrilateral; when one corner
/// is reflex, a tail of the segment through it enters the quadrilateral, so
/// the four segments do not form a grid.
pub fn crossing_cycle_is_convex(r1: &Segment, r2: &Segment, b1: &Segment, b2: &Segment) -> bool {
    let corners = [meet(r1, b1), meet(r1, b2), meet(r2, b2), meet(r2, b1)];
    let zero = int(0);
    let turns: Vec<bool> = (0..4)
        .map(|i| {
            let (a, b, c) = (&corners[i], &corners[(i + 1) % 4], &corners[(i + 2) % 4]);
            cross(&(&b.0 - &a.0), &(&b.1 - &a.1), &(&c.0 - &b.0), &(&c.1 - &b.1)) > zero
        })
        .collect();
    turns.iter().all(|&t| t == turns[0])
}

// ---------------------------------------------------------------------------
// Convex position by brute force on integer points.

fn icross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

/// Number of vertices of the convex hull (strict turns), monotone chain.
pub fn hull_size(pts: &[(i64, i64)]) -> usize {
    let mut p = pts.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p.len();
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> =
            if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for &q in iter {
            while hull.len() >= start + 2 && icross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0 {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    hull.len()
}

/// Largest subset in convex position, over all `2^n` subsets.
pub fn brute_force_max_convex(pts: &[(i64, i64)]) -> usize {
    let n = pts.len();
    (0u32..1 << n)
        .filter_map(|mask| {
            let sub: Vec<(i64, i64)> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| pts[i]).collect();
            (hull_size(&sub) == sub.len()).then_some(sub.len())
        })
        .max()
        .unwrap_or(0)
}

/// `n` integer points in `[0, 1000)^2` with no three collinear.
pub fn general_position_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<(i64, i64)> {
    loop {
        let pts: Vec<(i64, i64)> = (0..n).map(|_| (rng.gen_range(0..1000), rng.gen_range(0..1000))).collect();
        let ok = (0..n).all(|i| (i + 1..n).all(|j| (j + 1..n).all(|k| icross(pts[i], pts[j], pts[k]) != 0)));
        if ok {
            return pts;
        }
    }
}

/// Whether the given points are in convex position (every point a strict
/// hull vertex).
pub fn in_convex_position_oracle(pts: &[(i64, i64)]) -> bool {
    hull_size(pts) == pts.len()
}

// ---------------------------------------------------------------------------
// Grid fixtures with one side in A and one in B.

pub struct TidyFixture {
    pub name: &'static str,
    pub family: ColoredSegmentFamily,
    pub cert: GridCertificate,
    pub a: Vec<Point>,
    pub b: Vec<Point>,
    pub subdivision: Vec<Point>,
    pub tidy: bool,
    pub dotted: bool,
}

fn value_at(s: &Segment, x: &Rat) -> Rat {
    &s.a.y + (x - &s.a.x) * (&s.b.y - &s.a.y) / (&s.b.x - &s.a.x)
}

fn swap_xy(p: &Point) -> Point {
    Point::new(p.y.clone(), p.x.clone())
}

fn swap_segment(s: &Segment) -> Segment {
    Segment { a: swap_xy(&s.a), b: swap_xy(&s.b) }
}

/// A on a left arc, B on a bottom arc, reds leaving A to the right, blues
/// leaving B upwards at `x = 4, 6, 8`. With `escape`, the middle red rises
/// above the top one between the blues and leaves the outer corridor.
fn base_fixture(escape: bool) -> (Vec<Point>, Vec<Point>, Vec<Segment>, Vec<Segment>) {
    let a = vec![ri(-3, 0), ri(-5, 5), ri(0, 10)];
    let b = vec![ri(4, -6), ri(6, -7), ri(8, -6)];
    let ends = [ri(10, 5), if escape { ri(10, 21) } else { ri(10, 11) }, ri(10, 15)];
    let reds = a.iter().zip(ends).map(|(p, e)| Segment::new(p.clone(), e).unwrap()).collect();
    let blues = b.iter().map(|p| Segment::new(p.clone(), Point::new(p.x.clone(), int(25))).unwrap()).collect();
    (a, b, reds, blues)
}

/// One point strictly inside every cell of the tidy base fixture: the
/// midpoint between consecutive reds at the middle of consecutive blues.
fn cell_points(reds: &[Segment]) -> Vec<Point> {
    let mut by_height: Vec<&Segment> = reds.iter().collect();
    by_height.sort_by_key(|s| value_at(s, &int(5)));
    let mut out = Vec::new();
    for x in [int(5), int(7)] {
        for w in by_height.windows(2) {
            let y = (value_at(w[0], &x) + value_at(w[1], &x)) / int(2);
            out.push(Point::new(x.clone(), y));
        }
    }
    out
}

fn fixture(
    name: &'static str,
    (a, b, reds, blues): (Vec<Point>, Vec<Point>, Vec<Segment>, Vec<Segment>),
    subdivision: Vec<Point>,
    tidy: bool,
    dotted: bool,
) -> TidyFixture {
    let family = ColoredSegmentFamily::new(reds, blues).unwrap();
    let cert = find_k_grid(&family, 3).unwrap().expect("fixture is a 3-grid");
    TidyFixture { name, family, cert, a, b, subdivision, tidy, dotted }
}

/// Hand-built grids with expected tidy and dotted flags.
pub fn tidy_fixtures() -> Vec<TidyFixture> {
    let base = base_fixture(false);
    let cells = cell_points(&base.2);
    assert_eq!(cells.len(), 4);
    let mut out = vec![fixture("dotted", base.clone(), cells.clone(), true, true)];

    out.push(fixture("one empty cell", base.clone(), cells[1..].to_vec(), true, false));

    // Move one point onto the red between two cells.
    let mut on_edge = cells.clone();
    on_edge[0] = Point::new(int(5), value_at(&base.2[1], &int(5)));
    out.push(fixture("point on a cell side", base.clone(), on_edge, true, false));

    let mut outside = cells.clone();
    outside[3] = ri(20, 20);
    out.push(fixture("point outside the grid", base.clone(), outside, true, false));

    out.push(fixture("escaping A-edge", base_fixture(true), cells.clone(), false, false));

    // Mirror in y = x: reds become blues anchored on the old B.
    let (a, b, reds, blues) = base_fixture(true);
    let mirrored = (
        b.iter().map(swap_xy).collect(),
        a.iter().map(swap_xy).collect(),
        blues.iter().map(swap_segment).collect(),
        reds.iter().map(swap_segment).collect(),
    );
    out.push(fixture("escaping B-edge", mirrored, cells.iter().map(swap_xy).collect(), false, false));

    let (a, b, reds, blues) = base.clone();
    let mirrored = (
        b.iter().map(swap_xy).collect(),
        a.iter().map(swap_xy).collect(),
        blues.iter().map(swap_segment).collect(),
        reds.iter().map(swap_segment).collect(),
    );
    out.push(fixture("mirrored dotted", mirrored, cells.iter().map(swap_xy).collect(), true, true));

    // Uniform scaling and translation.
    let (s, dx, dy) = (Rat::new(3.into(), 2.into()), int(-7), int(11));
    let map = |p: &Point| p.scaled(&s).translated(&dx, &dy);
    let maps = |v: &Segment| Segment { a: map(&v.a), b: map(&v.b) };
    let moved = (
        base.0.iter().map(map).collect(),
        base.1.iter().map(map).collect(),
        base.2.iter().map(maps).collect(),
        base.3.iter().map(maps).collect(),
    );
    out.push(fixture("scaled dotted", moved, cells.iter().map(map).collect(), true, true));
    out
}

// ---------------------------------------------------------------------------
// Admissible colorings of the blowup graph.

/// Independent admissibility check: every 5-clique of one color below `r`
/// and every monotone 2-path in one color `3..r` is a violation.
pub fn admissible_oracle(g: &GammaGraph, c: &GammaColoring, r: u32) -> bool {
    let n = g.vertex_count();
    let adj = |u: usize, v: usize| {
        let ((i, j), (p, q)) = (g.cell(u), g.cell(v));
        i != p && j != q
    };
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if u == v || v == w || u == w || !adj(u, v) || !adj(v, w) {
                    continue;
                }
                let col = c.get(u, v);
                if col != c.get(v, w) || !(3..r).contains(&col) {
                    continue;
                }
                let ((i, j), (p, q), (x, y)) = (g.cell(u), g.cell(v), g.cell(w));
                if i < p && p < x && ((j < q && q < y) || (y < q && q < j)) {
                    return false;
                }
            }
        }
    }
    // Five cells in distinct rows and columns, one vertex from each.
    let verts: Vec<usize> = (0..n).collect();
    let mut stack: Vec<usize> = Vec::new();
    fn grow(
        stack: &mut Vec<usize>,
        verts: &[usize],
        from: usize,
        adj: &dyn Fn(usize, usize) -> bool,
        c: &GammaColoring,
        r: u32,
    ) -> bool {
        if stack.len() == 5 {
            let col = c.get(stack[0], stack[1]);
            return col != r && stack.iter().all(|&a| stack.iter().all(|&b| a == b || c.get(a, b) == col));
        }
        for &v in &verts[from..] {
            if stack.iter().all(|&u| adj(u, v)) {
                stack.push(v);
                if grow(stack, verts, v + 1, adj, c, r) {
                    return true;
                }
                stack.pop();
            }
        }
        false
    }
    !grow(&mut stack, &verts, 0, &adj, c, r)
}

/// A planted coloring with its expected verdict.
pub struct GammaCase {
    pub name: String,
    pub graph: GammaGraph,
    pub coloring: GammaColoring,
    pub r: u32,
    pub admissible: bool,
}

/// Starting from the uniform top color, plants 2-paths `u v w` through cells
/// `a`, `b`, `c` on the `k = 4, t = 2` blowup; `expect` is the verdict
/// derived from the definition by hand.
pub fn gamma_battery() -> Vec<GammaCase> {
    let r = 5;
    let g = GammaGraph::new(4, 2).unwrap();
    let mut out = Vec::new();
    let mut path = |name: &str, cells: [(usize, usize); 3], colors: (u32, u32), admissible: bool| {
        let mut c = GammaColoring::uniform(&g, r);
        let [a, b, d] = cells;
        let (u, v, w) = (g.vertex(a.0, a.1, 0), g.vertex(b.0, b.1, 1), g.vertex(d.0, d.1, 0));
        c.set(u, v, colors.0);
        c.set(v, w, colors.1);
        out.push(GammaCase { name: name.to_string(), graph: g, coloring: c, r, admissible });
    };
    // Monotone in both index chains, middle colors: rejected.
    path("rising path color 3", [(1, 1), (2, 2), (3, 3)], (3, 3), false);
    path("rising path color 4", [(1, 1), (2, 3), (4, 4)], (4, 4), false);
    path("falling path color 3", [(1, 4), (2, 3), (3, 1)], (3, 3), false);
    path("falling path color 4", [(2, 4), (3, 2), (4, 1)], (4, 4), false);
    path("reversed listing color 3", [(3, 3), (2, 2), (1, 1)], (3, 3), false);
    path("wide rising path", [(1, 1), (3, 2), (4, 4)], (3, 3), false);
    path("wide falling path", [(1, 4), (2, 2), (4, 1)], (4, 4), false);
    // Non-monotone or outside the middle colors: accepted.
    path("second index turns", [(1, 1), (2, 3), (3, 2)], (3, 3), true);
    path("first index turns", [(1, 1), (3, 2), (2, 3)], (3, 3), true);
    path("first index peaks", [(1, 2), (3, 3), (2, 4)], (4, 4), true);
    path("rising path color 1", [(1, 1), (2, 2), (3, 3)], (1, 1), true);
    path("rising path color 2", [(1, 1), (2, 2), (3, 3)], (2, 2), true);
    path("rising path top color", [(1, 1), (2, 2), (3, 3)], (5, 5), true);
    path("two middle colors", [(1, 1), (2, 2), (3, 3)], (3, 4), true);
    path("middle and low color", [(1, 1), (2, 2), (3, 3)], (3, 1), true);
    path("falling path colors 1 and 2", [(1, 4), (2, 3), (3, 1)], (1, 2), true);
    out.push(GammaCase {
        name: "uniform top color".into(),
        graph: g,
        coloring: GammaColoring::uniform(&g, r),
        r,
        admissible: true,
    });
    out.push(GammaCase {
        name: "uniform color 1".into(),
        graph: g,
        coloring: GammaColoring::uniform(&g, 1),
        r,
        admissible: true,
    });
    // Every edge in color 3: rising paths exist.
    out.push(GammaCase {
        name: "uniform color 3".into(),
        graph: g,
        coloring: GammaColoring::uniform(&g, 3),
        r,
        admissible: false,
    });

    // Monochromatic K5 needs five rows; plant on the k = 5 blowup.
    let g5 = GammaGraph::new(5, 1).unwrap();
    let k5 = |cells: [(usize, usize); 5]| -> Vec<usize> { cells.iter().map(|&(i, j)| g5.vertex(i, j, 0)).collect() };
    let mut plant = |name: &str, verts: Vec<usize>, color: u32, admissible: bool| {
        // Color 1 between adjacent rows, 2 otherwise: every 5-clique spans all
        // rows, so it sees both colors, and colors 3..r are unused.
        let mut c = GammaColoring::new(&g5);
        for (u, v) in g5.edges() {
            let (i, p) = (g5.cell(u).0, g5.cell(v).0);
            c.set(u, v, if i.abs_diff(p) == 1 { 1 } else { 2 });
        }
        for (x, &u) in verts.iter().enumerate() {
            for &v in &verts[x + 1..] {
                c.set(u, v, color);
            }
        }
        out.push(GammaCase { name: name.to_string(), graph: g5, coloring: c, r, admissible });
    };
    plant("K5 in color 1", k5([(1, 2), (2, 4), (3, 1), (4, 5), (5, 3)]), 1, false);
    plant("K5 in color 2", k5([(1, 1), (2, 2), (3, 3), (4, 4), (5, 5)]), 2, false);
    plant("K5 in top color", k5([(1, 5), (2, 4), (3, 3), (4, 2), (5, 1)]), 5, true);
    out
}

/// Every vertex of the reported cell has an `r`-colored edge into each
/// quadrant, and no earlier cell qualifies.
pub fn audit_hub(g: &GammaGraph, c: &GammaColoring, r: u32, hub: Option<(usize, usize)>) -> bool {
    let qualifies = |i: usize, j: usize| {
        g.cell_vertices(i, j).all(|v| {
            let mut seen = BTreeMap::new();
            for u in 0..g.vertex_count() {
                let (p, q) = g.cell(u);
                if p != i && q != j && c.get(u, v) == r {
                    let key = (p > i, q > j);
                    *seen.entry(key).or_insert(0) += 1;
                }
            }
            seen.len() == 4
        })
    };
    let cells: Vec<(usize, usize)> = (1..=g.k).flat_map(|i| (1..=g.k).map(move |j| (i, j))).collect();
    cells.into_iter().find(|&(i, j)| qualifies(i, j)) == hub
}

/// Random coloring from colors `{1, 2, r}`; admissible on the `k = 4`
/// blowup because it has no 5-clique and colors 1, 2 are unrestricted.
pub fn random_low_top_coloring(rng: &mut ChaCha8Rng, g: &GammaGraph, r: u32, top_bias: f64) -> GammaColoring {
    let mut c = GammaColoring::new(g);
    for (u, v) in g.edges() {
        let col = if rng.gen_bool(top_bias) { r } else { rng.gen_range(1..=2) };
        c.set(u, v, col);
    }
    c
}

// ---------------------------------------------------------------------------
// Decomposition oracles on small conflict graphs.

/// Whether the two integer segments cross at a single point interior to both.
pub fn iproper_cross(s: ((i64, i64), (i64, i64)), t: ((i64, i64), (i64, i64))) -> bool {
    let d1 = icross(s.0, s.1, t.0).signum();
    let d2 = icross(s.0, s.1, t.1).signum();
    let d3 = icross(t.0, t.1, s.0).signum();
    let d4 = icross(t.0, t.1, s.1).signum();
    d1 * d2 < 0 && d3 * d4 < 0
}

fn acyclic(edges: &[(usize, usize)]) -> bool {
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    fn root(p: &mut BTreeMap<usize, usize>, mut v: usize) -> usize {
        while let Some(&u) = p.get(&v) {
            v = u;
        }
        v
    }
    for &(a, b) in edges {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent.insert(ra, rb);
    }
    true
}

/// Smallest `k` such that some assignment of `k` classes to the nodes has no
/// two adjacent nodes alike (and, if `forests`, every class acyclic), over all
/// `k^n` assignments.
pub fn brute_force_classes(edges: &[(usize, usize)], adjacent: &dyn Fn(usize, usize) -> bool, forests: bool) -> usize {
    let n = edges.len();
    if n == 0 {
        return 0;
    }
    for k in 1..=n {
        let total = k.pow(n as u32);
        for code in 0..total {
            let class: Vec<usize> = (0..n).map(|i| code / k.pow(i as u32) % k).collect();
            let plane = (0..n).all(|i| (i + 1..n).all(|j| class[i] != class[j] || !adjacent(i, j)));
            if !plane {
                continue;
            }
            if forests
                && !(0..k).all(|c| {
                    let sub: Vec<(usize, usize)> = (0..n).filter(|&i| class[i] == c).map(|i| edges[i]).collect();
                    acyclic(&sub)
                })
            {
                continue;
            }
            return k;
        }
    }
    n
}
