//! Priestley and Esakia verdicts for fan spaces.

use std::sync::Arc;

use serde::Serialize;

use super::{BasisConfig, DefinableSet, FanSpace, Point, ShapeBasis, Trace};

/// Points `p ≰ q` with no clopen upset containing `p` but not `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PriestleyFailure {
    pub p: Point,
    pub q: Point,
}

/// A clopen set whose down-closure is not clopen.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DownFailure {
    pub clopen: DefinableSet,
    pub down: DefinableSet,
}

/// Clopen upsets whose implication is not clopen.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ImplicationFailure {
    pub u: DefinableSet,
    pub v: DefinableSet,
    pub implication: DefinableSet,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpaceVerdict {
    pub priestley: bool,
    pub esakia: bool,
    /// `↓K` is clopen for every clopen `K` of the shape basis.
    pub down_route: bool,
    /// Clopen upsets of the shape basis are closed under implication.
    pub implication_route: bool,
    pub priestley_failure: Option<PriestleyFailure>,
    pub down_failure: Option<DownFailure>,
    pub implication_failure: Option<ImplicationFailure>,
}

impl SpaceVerdict {
    /// The two characterizations coincide on Priestley spaces; outside that
    /// class they are unrelated and always agree vacuously.
    pub fn routes_agree(&self) -> bool {
        !self.priestley || self.down_route == self.implication_route
    }
}

/// The least clopen upset containing `p`: saturate `↑p` under adding the
/// tails of contained limits, the limits of infinite tails, and up-closure.
pub fn least_clopen_upset(space: &Arc<FanSpace>, p: Point) -> DefinableSet {
    let mut s = DefinableSet::from_points(space, [p])
        .expect("point of the space")
        .up_closure();
    loop {
        let mut next = s.clone();
        for (t, tail) in space.tails().iter().enumerate() {
            if s.named().contains(tail.limit) {
                next = next.with_trace(t, Trace::full());
            }
        }
        let next = next.closure().up_closure();
        if next == s {
            return s;
        }
        s = next;
    }
}

/// Skeleton points plus two generic representatives per tail.
fn representatives(space: &FanSpace) -> Vec<Point> {
    let b = space.max_index().unwrap_or(0);
    let mut pts: Vec<Point> = (0..space.skeleton_size()).map(Point::Skel).collect();
    for t in 0..space.num_tails() {
        let first = space.generic_after(t, b);
        let second = space.generic_after(t, first);
        pts.push(Point::Gen {
            tail: t,
            index: first,
        });
        pts.push(Point::Gen {
            tail: t,
            index: second,
        });
    }
    pts
}

/// A clopen upset containing `p` and not `q`, re-verified, if the catalog
/// has one.
pub fn separating_upset(space: &Arc<FanSpace>, p: Point, q: Point) -> Option<DefinableSet> {
    let c = least_clopen_upset(space, p);
    let cand = if !c.contains(q) {
        c
    } else if let Point::Gen { tail, index } = q {
        let tr = c.trace(tail).with_membership(index, false);
        c.with_trace(tail, tr)
    } else {
        return None;
    };
    let ok = cand.contains(p) && !cand.contains(q) && cand.is_clopen() && cand.is_upset_def();
    ok.then_some(cand)
}

pub fn validate(space: &FanSpace) -> SpaceVerdict {
    validate_with(space, BasisConfig::default())
}

pub fn validate_with(space: &FanSpace, cfg: BasisConfig) -> SpaceVerdict {
    let space = Arc::new(space.clone());
    let reps = representatives(&space);
    let mut priestley_failure = None;
    'outer: for &p in &reps {
        for &q in &reps {
            if !space.leq(p, q) && separating_upset(&space, p, q).is_none() {
                priestley_failure = Some(PriestleyFailure { p, q });
                break 'outer;
            }
        }
    }
    let basis = ShapeBasis::new(&space, None, cfg);
    let down_failure = basis.clopens().into_iter().find_map(|k| {
        let down = k.down_closure();
        (!down.is_clopen()).then_some(DownFailure { clopen: k, down })
    });
    let cu = basis.clopen_upsets();
    let implication_failure = cu.iter().find_map(|u| {
        cu.iter().find_map(|v| {
            let imp = DefinableSet::open_upset_implication(u, v).expect("same space");
            (!imp.is_clopen()).then(|| ImplicationFailure {
                u: u.clone(),
                v: v.clone(),
                implication: imp,
            })
        })
    });
    let priestley = priestley_failure.is_none();
    let down_route = down_failure.is_none();
    let implication_route = implication_failure.is_none();
    SpaceVerdict {
        priestley,
        esakia: priestley && down_route && implication_route,
        down_route,
        implication_route,
        priestley_failure,
        down_failure,
        implication_failure,
    }
}
