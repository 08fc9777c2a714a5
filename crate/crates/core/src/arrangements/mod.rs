//! Segment arrangements and combinatorial searches behind the lower bound:
//! grids in red/blue segment families, tidy drawings and their corridors,
//! the blowup graph with admissible colorings, and small Ramsey-type finders.

mod gamma;
mod grid;
mod search;
mod tidy;

pub use gamma::*;
pub use grid::*;
pub use search::*;
pub use tidy::*;

use thiserror::Error;

use crate::exactgeom::{segments_cross, Crossing, GeomError, Rat, Segment};
use crate::verify::VerifyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("{color} segments {i} and {j} are not disjoint")]
    NotDisjoint { color: &'static str, i: usize, j: usize },
    #[error("red segment {red} does not cross blue segment {blue}")]
    NotAllCrossing { red: usize, blue: usize },
    #[error("search space of {size} candidates exceeds the limit {limit}")]
    SearchLimitExceeded { size: u128, limit: u128 },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("points {0}, {1} and {2} are collinear")]
    CollinearInput(usize, usize, usize),
    #[error("incomplete coloring: {0}")]
    IncompleteColoring(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// Red and blue segments; each color class is pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredSegmentFamily {
    red: Vec<Segment>,
    blue: Vec<Segment>,
}

fn check_disjoint(segs: &[Segment], color: &'static str) -> Result<(), ArrangementError> {
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if !matches!(segments_cross(&segs[i], &segs[j]), Ok(Crossing::None)) {
                return Err(ArrangementError::NotDisjoint { color, i, j });
            }
        }
    }
    Ok(())
}

impl ColoredSegmentFamily {
    pub fn new(red: Vec<Segment>, blue: Vec<Segment>) -> Result<Self, ArrangementError> {
        check_disjoint(&red, "red")?;
        check_disjoint(&blue, "blue")?;
        Ok(ColoredSegmentFamily { red, blue })
    }

    pub fn red(&self) -> &[Segment] {
        &self.red
    }

    pub fn blue(&self) -> &[Segment] {
        &self.blue
    }

    /// First red/blue pair that does not cross properly, if any.
    pub fn first_non_crossing(&self) -> Option<(usize, usize)> {
        for (i, r) in self.red.iter().enumerate() {
            for (j, b) in self.blue.iter().enumerate() {
                if !matches!(segments_cross(r, b), Ok(Crossing::Proper)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_all_crossing(&self) -> bool {
        self.first_non_crossing().is_none()
    }

    /// Applies `(x, y) -> (a x + dx, a y + dy)` with `a > 0`.
    pub fn transformed(&self, scale: &Rat, dx: &Rat, dy: &Rat) -> ColoredSegmentFamily {
        let map = |s: &Segment| Segment {
            a: s.a.scaled(scale).translated(dx, dy),
            b: s.b.scaled(scale).translated(dx, dy),
        };
        ColoredSegmentFamily { red: self.red.iter().map(map).collect(), blue: self.blue.iter().map(map).collect() }
    }
}

/// `n choose k`, saturating at `u128::MAX`.
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Calls `f` on every increasing `k`-subset of `0..n` in lexicographic order
/// until it returns true.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            return false;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}
