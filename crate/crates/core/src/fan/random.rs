//! Seeded random fan spaces, definable sets and maps.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{validate, DefinableSet, FanSpace, Point, Tag, Tail, Trace};
use crate::morphism::{FanMap, TailMap};
use crate::poset::FinPoset;
use crate::subset::Subset;

/// A random poset on `n` points: random relations along a random labeling,
/// closed transitively.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> FinPoset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    FinPoset::from_pairs(n, &pairs).expect("acyclic along the labeling")
}

/// A random fan space with at most `max_skeleton` skeleton points and
/// `max_tails` tails. Tail targets are upsets above the limit, so most
/// results are Priestley; nothing else is enforced.
pub fn random_space<R: Rng>(rng: &mut R, max_skeleton: usize, max_tails: usize) -> FanSpace {
    let n = rng.gen_range(1..=max_skeleton);
    let skeleton = random_poset(rng, n, 0.4);
    let tags: Vec<Tag> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Tag::Limit
            } else {
                Tag::Isolated
            }
        })
        .collect();
    let limits: Vec<usize> = (0..n).filter(|&i| tags[i] == Tag::Limit).collect();
    let mut tails = Vec::new();
    if !limits.is_empty() {
        for _ in 0..rng.gen_range(0..=max_tails) {
            let limit = *limits.choose(rng).expect("nonempty");
            let above = skeleton.up_of(limit);
            let below = if rng.gen_bool(0.85) {
                let pick: Subset = above.iter().filter(|_| rng.gen_bool(0.5)).collect();
                skeleton.up_set(pick).expect("in range")
            } else {
                let pick: Subset = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
                skeleton.up_set(pick).expect("in range")
            };
            let excluded = if rng.gen_bool(0.2) {
                vec![rng.gen_range(0..3)]
            } else {
                vec![]
            };
            tails.push(Tail {
                limit,
                below,
                excluded,
            });
        }
    }
    FanSpace::new(skeleton, tags, tails).expect("well formed by construction")
}

/// A random space that validates as Esakia.
pub fn random_esakia_space<R: Rng>(rng: &mut R, max_skeleton: usize, max_tails: usize) -> FanSpace {
    loop {
        let x = random_space(rng, max_skeleton, max_tails);
        if validate(&x).esakia {
            return x;
        }
    }
}

fn random_trace<R: Rng>(rng: &mut R) -> Trace {
    let ex: Vec<u64> = (0..rng.gen_range(0..3))
        .map(|_| rng.gen_range(0..6))
        .collect();
    match rng.gen_range(0..4) {
        0 => Trace::finite(ex),
        1 => Trace::cofinite(ex),
        _ => {
            let p = rng.gen_range(1..=4);
            Trace::periodic(p, rng.gen_range(0..1u64 << p), ex).expect("small period")
        }
    }
}

pub fn random_set<R: Rng>(rng: &mut R, space: &Arc<FanSpace>) -> DefinableSet {
    let named: Subset = (0..space.skeleton_size())
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    let tails = (0..space.num_tails()).map(|_| random_trace(rng)).collect();
    DefinableSet::new(space.clone(), named, tails).expect("well formed")
}

fn random_point<R: Rng>(rng: &mut R, space: &FanSpace) -> Point {
    if space.num_tails() > 0 && rng.gen_bool(0.25) {
        let tail = rng.gen_range(0..space.num_tails());
        let index = space.generic_after(tail, rng.gen_range(0..4));
        Point::Gen { tail, index }
    } else {
        Point::Skel(rng.gen_range(0..space.skeleton_size()))
    }
}

/// A random map between the given spaces, biased towards continuity.
pub fn random_map<R: Rng>(rng: &mut R, dom: &Arc<FanSpace>, cod: &Arc<FanSpace>) -> FanMap {
    loop {
        let named: Vec<Point> = (0..dom.skeleton_size())
            .map(|_| random_point(rng, cod))
            .collect();
        let tails: Vec<TailMap> = dom
            .tails()
            .iter()
            .map(|t| {
                let target = named[t.limit];
                let into: Vec<usize> = match target {
                    Point::Skel(j) => cod.tails_of(j).collect(),
                    Point::Gen { .. } => vec![],
                };
                if rng.gen_bool(0.85) {
                    if !into.is_empty() && rng.gen_bool(0.7) {
                        TailMap::Embed {
                            tail: *into.choose(rng).expect("nonempty"),
                            a: rng.gen_range(1..=2),
                            b: rng.gen_range(0..3),
                        }
                    } else {
                        TailMap::Const(target)
                    }
                } else if cod.num_tails() > 0 && rng.gen_bool(0.5) {
                    TailMap::Embed {
                        tail: rng.gen_range(0..cod.num_tails()),
                        a: rng.gen_range(1..=2),
                        b: rng.gen_range(0..3),
                    }
                } else {
                    TailMap::Const(random_point(rng, cod))
                }
            })
            .collect();
        let mut overrides = BTreeMap::new();
        if dom.num_tails() > 0 && rng.gen_bool(0.2) {
            let t = rng.gen_range(0..dom.num_tails());
            let n = dom.generic_after(t, rng.gen_range(0..3));
            overrides.insert((t, n), random_point(rng, cod));
        }
        if let Ok(f) = FanMap::new(dom.clone(), cod.clone(), named, tails, overrides) {
            return f;
        }
    }
}
