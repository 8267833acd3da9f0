//! Independent re-evaluation of classifier witnesses. Both sides of the
//! failing equation are recomputed pointwise from the witness set and
//! `FanMap::apply`, never from the symbolic operators, and compared on a
//! window of sampled points.

use esakia::fan::oracle::sample_points;
use esakia::fan::{DefinableSet, FanSpace, Point, MAX_PERIOD};
use esakia::morphism::{FanMap, MinusFailure, TailMap, Witness};

/// Points above `x`: `x` itself and the skeleton points above it.
fn above(space: &FanSpace, x: Point) -> impl Iterator<Item = Point> + '_ {
    std::iter::once(x).chain(
        (0..space.skeleton_size())
            .map(Point::Skel)
            .filter(move |&s| s != x && space.leq(x, s)),
    )
}

/// Closure membership from a membership predicate: a limit is in the closure
/// when one of its tails meets the set past `bound` within a period window.
fn in_closure(space: &FanSpace, member: &dyn Fn(Point) -> bool, x: Point, bound: u64) -> bool {
    member(x)
        || match x {
            Point::Skel(s) => space.tails_of(s).any(|t| {
                (bound + 1..=bound + MAX_PERIOD).any(|n| {
                    let g = Point::Gen { tail: t, index: n };
                    space.is_point(g) && member(g)
                })
            }),
            Point::Gen { .. } => false,
        }
}

fn window(f: &FanMap, sets: &[&DefinableSet]) -> u64 {
    let (d, c) = f.bounds();
    sets.iter()
        .filter_map(|s| s.max_index())
        .chain([d, c])
        .max()
        .unwrap_or(0)
        + MAX_PERIOD
}

/// `f⁻¹(↓cl E)` against `↓cl f⁻¹(E)`; with `closure` off, `f⁻¹(↓E)` against
/// `↓f⁻¹(E)`. Returns a sampled point where they differ.
fn differs(f: &FanMap, e: &DefinableSet, closure: bool) -> Option<Point> {
    let (dom, cod) = (f.dom().as_ref(), f.cod().as_ref());
    let bound = window(f, &[e]);
    let in_e = |p: Point| e.contains(p);
    let in_pre = |p: Point| e.contains(f.apply(p));
    let cl = |space: &FanSpace, member: &dyn Fn(Point) -> bool, z: Point| {
        if closure {
            in_closure(space, member, z, bound)
        } else {
            member(z)
        }
    };
    sample_points(dom, bound + MAX_PERIOD)
        .into_iter()
        .find(|&x| {
            let lhs = above(cod, f.apply(x)).any(|z| cl(cod, &in_e, z));
            let rhs = above(dom, x).any(|z| cl(dom, &in_pre, z));
            lhs != rhs
        })
}

/// Whether the witness still exhibits a failure of `f`.
pub fn witness_fails(f: &FanMap, w: &Witness) -> bool {
    match w {
        Witness::NotPriestley(MinusFailure::NotMonotone { p, q }) => {
            f.dom().leq(*p, *q) && !f.cod().leq(f.apply(*p), f.apply(*q))
        }
        Witness::NotPriestley(MinusFailure::Discontinuous { limit, tail }) => {
            // Far along the tail, images must be the limit's image or lie on
            // a codomain tail converging to it.
            let target = f.apply(Point::Skel(*limit));
            let far = f.dom().generic_after(*tail, window(f, &[]));
            let image = f.apply(Point::Gen {
                tail: *tail,
                index: far,
            });
            let converges = match (image, target, f.tail_maps()[*tail]) {
                (p, t, _) if p == t => true,
                (Point::Gen { tail: ct, .. }, Point::Skel(s), TailMap::Embed { .. }) => {
                    f.cod().tails()[ct].limit == s
                }
                _ => false,
            };
            !converges
        }
        Witness::Point(pf) => match DefinableSet::from_points(f.cod(), [pf.y]) {
            Ok(single) => differs(f, &single, false).is_some(),
            Err(_) => false,
        },
        Witness::Set(sf) => differs(f, &sf.set, true).is_some(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use esakia::morphism::classify;
    use esakia::morphism::examples::{f1, f2, f3};

    #[test]
    fn example_map_witnesses_reproduce() {
        for f in [f1(), f2(), f3()] {
            let v = classify(&f).unwrap();
            for w in v.witnesses.values() {
                assert!(witness_fails(&f, w), "{w:?}");
            }
        }
    }

    #[test]
    fn a_witness_against_a_passing_map_does_not_reproduce() {
        let bad = classify(&f1()).unwrap().witnesses["es"].clone();
        let Witness::Point(pf) = bad else { panic!() };
        let id = FanMap::identity(f1().dom());
        let w = Witness::Point(esakia::morphism::PointFailure { ..pf });
        assert!(!witness_fails(&id, &w));
    }
}
