//! Level-by-level construction of a straight-line drawing of a 2-degenerate
//! graph whose edges split into four plane forests (colors h, hs, v, vs).
//!
//! The drawing of all lower levels is reflected at the line `x = -y` (with
//! h/v and hs/vs swapped), then every vertex of the next level is put just
//! below-right of the point where the slope-`m` line through its lower
//! predecessor meets the horizontal line through its upper predecessor.
//! Slope and offsets are explicit rationals chosen from finite minima, so
//! every constraint can be re-checked exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::exactgeom::{max_bits, slanted_horizontal_meet, GeomError, Point, Rat};
use crate::graphs::{heights, normalize_predecessors, strip_dummy, DegenerateGraph, GraphError, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeColor {
    H,
    Hs,
    V,
    Vs,
}

impl EdgeColor {
    pub const ALL: [EdgeColor; 4] = [EdgeColor::H, EdgeColor::Hs, EdgeColor::V, EdgeColor::Vs];

    /// The color after reflecting at `x = -y`.
    pub fn swapped(self) -> EdgeColor {
        match self {
            EdgeColor::H => EdgeColor::V,
            EdgeColor::V => EdgeColor::H,
            EdgeColor::Hs => EdgeColor::Vs,
            EdgeColor::Vs => EdgeColor::Hs,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeColor::H => "h",
            EdgeColor::Hs => "hs",
            EdgeColor::V => "v",
            EdgeColor::Vs => "vs",
        }
    }

    pub fn index(self) -> usize {
        match self {
            EdgeColor::H => 0,
            EdgeColor::Hs => 1,
            EdgeColor::V => 2,
            EdgeColor::Vs => 3,
        }
    }
}

impl fmt::Display for EdgeColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EdgeColor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "h" => Ok(EdgeColor::H),
            "hs" => Ok(EdgeColor::Hs),
            "v" => Ok(EdgeColor::V),
            "vs" => Ok(EdgeColor::Vs),
            other => Err(format!("unknown edge color {other:?}")),
        }
    }
}

/// Where the top level sits relative to the rest of the drawing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separator {
    /// Top level strictly right of `x = value`, everything else left of or on it.
    Vertical(Rat),
    /// Top level strictly below `y = value` (the state right after reflecting).
    Horizontal(Rat),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LayoutError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Exact vertex positions plus the four-color edge assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredDrawing {
    pos: BTreeMap<VertexId, Point>,
    color: BTreeMap<(VertexId, VertexId), EdgeColor>,
    height: usize,
    separator: Option<Separator>,
}

fn edge_key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl ColoredDrawing {
    /// A drawing with the given positions and edge colors. Edge keys are
    /// normalized to `(min, max)`.
    pub fn new(
        pos: BTreeMap<VertexId, Point>,
        colors: impl IntoIterator<Item = ((VertexId, VertexId), EdgeColor)>,
    ) -> Self {
        let color = colors.into_iter().map(|((u, v), c)| (edge_key(u, v), c)).collect();
        ColoredDrawing { pos, color, height: 0, separator: None }
    }

    pub fn with_height(mut self, height: usize, separator: Option<Separator>) -> Self {
        self.height = height;
        self.separator = separator;
        self
    }

    pub fn positions(&self) -> &BTreeMap<VertexId, Point> {
        &self.pos
    }

    pub fn position(&self, v: VertexId) -> Option<&Point> {
        self.pos.get(&v)
    }

    pub fn colors(&self) -> &BTreeMap<(VertexId, VertexId), EdgeColor> {
        &self.color
    }

    pub fn color_of(&self, u: VertexId, v: VertexId) -> Option<EdgeColor> {
        self.color.get(&edge_key(u, v)).copied()
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn separator(&self) -> Option<&Separator> {
        self.separator.as_ref()
    }

    pub fn vertex_count(&self) -> usize {
        self.pos.len()
    }

    pub fn set_position(&mut self, v: VertexId, p: Point) {
        self.pos.insert(v, p);
    }

    pub fn set_color(&mut self, u: VertexId, v: VertexId, c: EdgeColor) {
        self.color.insert(edge_key(u, v), c);
    }

    /// Applies `(x, y) -> (a x + dx, a y + dy)` with `a > 0`.
    pub fn transformed(&self, scale: &Rat, dx: &Rat, dy: &Rat) -> ColoredDrawing {
        assert!(scale.is_positive(), "scale must be positive");
        let pos = self.pos.iter().map(|(&v, p)| (v, p.scaled(scale).translated(dx, dy))).collect();
        let separator = self.separator.as_ref().map(|s| match s {
            Separator::Vertical(x) => Separator::Vertical(x * scale + dx),
            Separator::Horizontal(y) => Separator::Horizontal(y * scale + dy),
        });
        ColoredDrawing { pos, color: self.color.clone(), height: self.height, separator }
    }

    /// Drops vertex `v` and its incident edges.
    pub fn without_vertex(&self, v: VertexId) -> ColoredDrawing {
        let mut out = self.clone();
        out.pos.remove(&v);
        out.color.retain(|&(a, b), _| a != v && b != v);
        out
    }

    /// Largest numerator and denominator bit lengths over all coordinates.
    pub fn coordinate_bits(&self) -> (u64, u64) {
        max_bits(self.pos.values().flat_map(|p| [&p.x, &p.y]))
    }
}

/// Reflects at `x = -y`, i.e. `(x, y) -> (-y, -x)`, and swaps h<->v, hs<->vs.
pub fn reflect_and_swap(d: &ColoredDrawing) -> ColoredDrawing {
    let pos = d.pos.iter().map(|(&v, p)| (v, Point::new(-&p.y, -&p.x))).collect();
    let color = d.color.iter().map(|(&e, &c)| (e, c.swapped())).collect();
    let separator = d.separator.as_ref().map(|s| match s {
        Separator::Vertical(x) => Separator::Horizontal(-x),
        Separator::Horizontal(y) => Separator::Vertical(-y),
    });
    ColoredDrawing { pos, color, height: d.height, separator }
}

fn min_positive_adjacent_gap(mut values: Vec<Rat>) -> Option<Rat> {
    values.sort();
    values
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .filter(|g| g.is_positive())
        .min()
}

fn extremes(values: impl Iterator<Item = Rat>) -> Option<(Rat, Rat)> {
    values.fold(None, |acc, v| match acc {
        None => Some((v.clone(), v)),
        Some((lo, hi)) => Some((if v < lo { v.clone() } else { lo }, if v > hi { v } else { hi })),
    })
}

/// Slope `m > 0` such that, for every pair `y(u) < y(v)`, the slope-`m` line
/// through `u` meets the horizontal line through `v` right of every vertex.
///
/// `m = min(1, dy / (W + 1))` with `dy` the smallest positive vertical gap and
/// `W` the x-extent. Every positive slope between two vertices is at least
/// `dy / W > m`, so no two vertices share a slope-`m` line.
pub fn choose_slope(d: &ColoredDrawing) -> Result<Rat, LayoutError> {
    let ys: Vec<Rat> = d.pos.values().map(|p| p.y.clone()).collect();
    let dy = min_positive_adjacent_gap(ys).ok_or_else(|| {
        LayoutError::DegenerateInput("all vertices share one y-coordinate".into())
    })?;
    let (xmin, xmax) = extremes(d.pos.values().map(|p| p.x.clone())).expect("non-empty");
    let width = xmax - xmin;
    let mut m = dy / (width + Rat::one());
    if m > Rat::one() {
        m = Rat::one();
    }
    Ok(m)
}

/// Offset bound `eps > 0`: half the minimum over (a) positive vertical gaps
/// between vertices, (b) positive horizontal gaps between slanted/horizontal
/// meeting points, (c) half of every positive vertical gap between parallel
/// slope-`m` lines through two vertices. With no candidate at all, 1.
pub fn choose_epsilon(d: &ColoredDrawing, m: &Rat) -> Result<Rat, LayoutError> {
    if !m.is_positive() {
        return Err(LayoutError::Precondition(format!("slope must be positive, got {m}")));
    }
    let pts: Vec<&Point> = d.pos.values().collect();
    let mut sorted: Vec<&Point> = pts.clone();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(LayoutError::DegenerateInput(format!("two vertices coincide at ({})", w[0])));
    }
    // Integer coordinates in units of 1/den.
    let den = pts.iter().flat_map(|p| [p.x.denom(), p.y.denom()]).fold(BigInt::one(), |acc, q| acc.lcm(q));
    let to_int = |r: &Rat| r.numer() * (&den / r.denom());
    let xs: Vec<BigInt> = pts.iter().map(|p| to_int(&p.x)).collect();
    let ys: Vec<BigInt> = pts.iter().map(|p| to_int(&p.y)).collect();
    let (mn, md) = (m.numer(), m.denom());

    // Meeting x-coordinates in units of 1/(den * mn).
    let mut meets = Vec::new();
    for (xu, yu) in xs.iter().zip(&ys) {
        for yv in &ys {
            if yu < yv {
                meets.push(xu * mn + (yv - yu) * md);
            }
        }
    }
    // Slope-m line offsets y - m x in units of 1/(den * md).
    let offsets: Vec<BigInt> = xs.iter().zip(&ys).map(|(x, y)| y * md - x * mn).collect();

    let frac = |g: BigInt, unit: BigInt| Rat::new(g, unit);
    let mut candidates: Vec<Rat> = Vec::new();
    candidates.extend(min_positive_int_gap(ys).map(|g| frac(g, den.clone())));
    candidates.extend(min_positive_int_gap(meets).map(|g| frac(g, &den * mn)));
    candidates.extend(min_positive_int_gap(offsets).map(|g| frac(g, &den * md * 2)));
    Ok(match candidates.into_iter().min() {
        Some(c) => c / Rat::from_integer(BigInt::from(2)),
        None => Rat::one(),
    })
}

fn min_positive_int_gap(mut values: Vec<BigInt>) -> Option<BigInt> {
    values.sort();
    values.windows(2).map(|w| &w[1] - &w[0]).filter(|g| g.is_positive()).min()
}

/// Largest power of two not above `r`; `r` must be positive.
///
/// Shrinking `m` or `eps` keeps every placement constraint satisfied, and
/// power-of-two values keep coordinate denominators powers of two.
pub fn dyadic_floor(r: &Rat) -> Rat {
    assert!(r.is_positive(), "dyadic_floor needs a positive value");
    let mut k = r.numer().bits() as i64 - r.denom().bits() as i64;
    let pow = |k: i64| {
        if k >= 0 {
            Rat::from_integer(BigInt::one() << k)
        } else {
            Rat::new(BigInt::one(), BigInt::one() << (-k))
        }
    };
    while pow(k) > *r {
        k -= 1;
    }
    while pow(k + 1) <= *r {
        k += 1;
    }
    pow(k)
}

/// A vertex of the new level with its two predecessors, in either order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewVertex {
    pub id: VertexId,
    pub preds: (VertexId, VertexId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub point: Point,
    /// Upper predecessor; its horizontal line carries the point.
    pub horizontal_source: VertexId,
    /// Lower predecessor; the slope-`m` line through it carries the point.
    pub slanted_source: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub intersection: usize,
    /// 1-based position among the vertices sharing this intersection.
    pub local_rank: usize,
    /// 1-based position across the whole level.
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacementSchedule {
    pub intersections: Vec<Intersection>,
    pub assignment: BTreeMap<VertexId, Assignment>,
}

/// Orders the meeting points bottom to top, then left to right, and ranks the
/// new vertices along that order (ties at one point broken by vertex id).
pub fn build_schedule(
    d: &ColoredDrawing,
    level: &[NewVertex],
    m: &Rat,
) -> Result<PlacementSchedule, LayoutError> {
    let mut keyed: Vec<(Rat, Rat, VertexId, VertexId, VertexId, Point)> = Vec::with_capacity(level.len());
    for w in level {
        let (a, b) = w.preds;
        let pa = d.position(a).ok_or_else(|| unplaced(a, w.id))?;
        let pb = d.position(b).ok_or_else(|| unplaced(b, w.id))?;
        let (u, pu, v, pv) = if pa.y < pb.y { (a, pa, b, pb) } else { (b, pb, a, pa) };
        let p = slanted_horizontal_meet(pu, m, pv)?;
        keyed.push((pv.y.clone(), p.x.clone(), w.id, v, u, p));
    }
    keyed.sort_by(|a, b| (&a.0, &a.1, a.2).cmp(&(&b.0, &b.1, b.2)));

    let mut intersections: Vec<Intersection> = Vec::new();
    let mut assignment = BTreeMap::new();
    let mut local = 0;
    for (rank0, (_, _, w, v, u, p)) in keyed.into_iter().enumerate() {
        let same = intersections.last().is_some_and(|last| last.point == p);
        if same {
            local += 1;
        } else {
            intersections.push(Intersection { point: p, horizontal_source: v, slanted_source: u });
            local = 1;
        }
        assignment.insert(w, Assignment { intersection: intersections.len() - 1, local_rank: local, rank: rank0 + 1 });
    }
    Ok(PlacementSchedule { intersections, assignment })
}

fn unplaced(pred: VertexId, w: VertexId) -> LayoutError {
    LayoutError::Precondition(format!("predecessor {pred} of vertex {w} is not placed"))
}

/// Displacement parameter `eps / (2^rank (1 + m))` along `(m, -1)`.
pub fn placement_offset(eps: &Rat, m: &Rat, rank: usize) -> Rat {
    let pow = Rat::from_integer(BigInt::one() << rank);
    eps / (pow * (Rat::one() + m))
}

/// Dyadic offset `dyadic_floor(eps / (1 + m)) / 2^rank`; never exceeds
/// `placement_offset` and halves exactly per rank.
pub fn dyadic_placement_offset(eps: &Rat, m: &Rat, rank: usize) -> Rat {
    let pow = Rat::from_integer(BigInt::one() << rank);
    dyadic_floor(&(eps / (Rat::one() + m))) / pow
}

/// Places every scheduled vertex on the line of slope `-1/m` through its
/// meeting point, below-right of it, and colors its two new edges (h to the
/// horizontal source, hs to the slanted source).
pub fn place_level(d: &ColoredDrawing, schedule: &PlacementSchedule, m: &Rat, eps: &Rat) -> ColoredDrawing {
    place_level_with(d, schedule, m, |r| placement_offset(eps, m, r))
}

fn place_level_with(d: &ColoredDrawing, schedule: &PlacementSchedule, m: &Rat, offset: impl Fn(usize) -> Rat) -> ColoredDrawing {
    let xmax = extremes(d.pos.values().map(|p| p.x.clone())).map(|(_, hi)| hi);
    let mut out = d.clone();
    let down = -Rat::one();
    for (&w, a) in &schedule.assignment {
        let meet = &schedule.intersections[a.intersection];
        let delta = offset(a.rank);
        out.pos.insert(w, meet.point.offset(&delta, m, &down));
        out.color.insert(edge_key(w, meet.horizontal_source), EdgeColor::H);
        out.color.insert(edge_key(w, meet.slanted_source), EdgeColor::Hs);
    }
    out.height = d.height + 1;
    out.separator = xmax.map(Separator::Vertical);
    out
}

/// Per-level record of a construction run.
#[derive(Clone, Debug)]
pub struct LevelTrace {
    pub height: usize,
    pub slope: Rat,
    pub epsilon: Rat,
    /// The reflected drawing of all lower levels, before placement.
    pub reflected: ColoredDrawing,
    /// The drawing after placing this level.
    pub drawing: ColoredDrawing,
}

#[derive(Clone, Debug)]
pub struct Construction {
    /// The input with a dummy predecessor added where needed.
    pub normalized: DegenerateGraph,
    pub dummy: Option<VertexId>,
    /// Drawing of level 0 (base case).
    pub base: ColoredDrawing,
    pub levels: Vec<LevelTrace>,
    /// Final drawing of the input graph, dummy removed.
    pub drawing: ColoredDrawing,
}

/// Level-0 positions: vertex `i` at `(i, i)`.
pub fn place_base_level(vertices: &[VertexId]) -> ColoredDrawing {
    let pos = vertices
        .iter()
        .map(|&v| {
            let c = Rat::from_integer(BigInt::from(v));
            (v, Point::new(c.clone(), c))
        })
        .collect::<BTreeMap<_, _>>();
    let sep = extremes(pos.values().map(|p: &Point| p.x.clone())).map(|(lo, _)| Separator::Vertical(lo - Rat::one()));
    ColoredDrawing { pos, color: BTreeMap::new(), height: 0, separator: sep }
}

pub fn construct_drawing(g: &DegenerateGraph) -> Result<ColoredDrawing, LayoutError> {
    Ok(construct_drawing_traced(g)?.drawing)
}

pub fn construct_drawing_traced(g: &DegenerateGraph) -> Result<Construction, LayoutError> {
    let (normalized, dummy) = normalize_predecessors(g);
    let hm = heights(&normalized);
    let base = place_base_level(hm.levels.first().map(Vec::as_slice).unwrap_or(&[]));
    let mut current = base.clone();
    let mut levels = Vec::new();
    for k in 1..hm.levels.len() {
        let reflected = reflect_and_swap(&current);
        let slope = dyadic_floor(&choose_slope(&reflected)?);
        let epsilon = dyadic_floor(&choose_epsilon(&reflected, &slope)?);
        let level: Vec<NewVertex> = hm.levels[k]
            .iter()
            .map(|&w| {
                let ps = normalized.preds(w);
                NewVertex { id: w, preds: (ps[0], ps[1]) }
            })
            .collect();
        let schedule = build_schedule(&reflected, &level, &slope)?;
        let drawing = place_level_with(&reflected, &schedule, &slope, |r| dyadic_placement_offset(&epsilon, &slope, r));
        current = drawing.clone();
        levels.push(LevelTrace { height: k, slope, epsilon, reflected, drawing });
    }
    let mut drawing = current;
    if let Some(dm) = dummy {
        drawing = drawing.without_vertex(dm);
        strip_dummy(&normalized, dummy)?;
    }
    Ok(Construction { normalized, dummy, base, levels, drawing })
}
