//! Pointwise semantics of the set operators, evaluated from membership alone.
//! Used to check the symbolic operators on sampled points.

use super::{DefinableSet, FanSpace, Point, MAX_PERIOD};

/// Every skeleton point and every generic point of index at most `window`.
pub fn sample_points(space: &FanSpace, window: u64) -> Vec<Point> {
    let mut pts: Vec<Point> = (0..space.skeleton_size()).map(Point::Skel).collect();
    for t in 0..space.num_tails() {
        for index in 0..=window {
            let p = Point::Gen { tail: t, index };
            if space.is_point(p) {
                pts.push(p);
            }
        }
    }
    pts
}

/// Largest index mentioned by the space and the sets.
pub fn bound_of(space: &FanSpace, sets: &[&DefinableSet]) -> u64 {
    sets.iter()
        .filter_map(|d| d.max_index())
        .chain(space.max_index())
        .max()
        .unwrap_or(0)
}

/// Tail `t` meets `d` infinitely often: past the bound the trace is periodic
/// with period at most `MAX_PERIOD`, so one window decides.
pub fn meets_infinitely(d: &DefinableSet, t: usize, bound: u64) -> bool {
    (bound + 1..=bound + MAX_PERIOD).any(|n| d.contains(Point::Gen { tail: t, index: n }))
}

/// Tail `t` lies cofinitely inside `d`.
pub fn inside_cofinitely(d: &DefinableSet, t: usize, bound: u64) -> bool {
    (bound + 1..=bound + MAX_PERIOD).all(|n| {
        let p = Point::Gen { tail: t, index: n };
        !d.space().is_point(p) || d.contains(p)
    })
}

/// `x ∈ ↓D`: some `y ∈ D` above `x`. Only skeleton points lie strictly above
/// anything, so `y` ranges over `x` and the skeleton.
pub fn in_down(d: &DefinableSet, x: Point) -> bool {
    let sp = d.space();
    d.contains(x)
        || (0..sp.skeleton_size()).any(|s| d.contains(Point::Skel(s)) && sp.leq(x, Point::Skel(s)))
}

/// `x ∈ ↑D`: some `y ∈ D` below `x`; generic `y` are represented by the
/// sampled window past the bound.
pub fn in_up(d: &DefinableSet, x: Point, bound: u64) -> bool {
    let sp = d.space();
    if d.contains(x) {
        return true;
    }
    if (0..sp.skeleton_size()).any(|s| d.contains(Point::Skel(s)) && sp.leq(Point::Skel(s), x)) {
        return true;
    }
    (0..sp.num_tails()).any(|t| {
        (0..=bound + MAX_PERIOD).any(|n| {
            let g = Point::Gen { tail: t, index: n };
            d.contains(g) && sp.leq(g, x)
        })
    })
}

pub fn in_closure(d: &DefinableSet, x: Point, bound: u64) -> bool {
    d.contains(x)
        || match x {
            Point::Skel(s) => d.space().tails_of(s).any(|t| meets_infinitely(d, t, bound)),
            Point::Gen { .. } => false,
        }
}

pub fn in_interior(d: &DefinableSet, x: Point, bound: u64) -> bool {
    d.contains(x)
        && match x {
            Point::Skel(s) => d
                .space()
                .tails_of(s)
                .all(|t| inside_cofinitely(d, t, bound)),
            Point::Gen { .. } => true,
        }
}

/// Whether `got` has exactly the members `want` predicts on the sample.
pub fn agrees(got: &DefinableSet, sample: &[Point], want: impl Fn(Point) -> bool) -> Option<Point> {
    sample.iter().copied().find(|&p| got.contains(p) != want(p))
}
