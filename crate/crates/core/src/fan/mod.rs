//! Fan spaces: a finite skeleton poset plus countably many tails, each a
//! discrete sequence of generic points converging to a limit in the skeleton.
//!
//! The order is the skeleton order, together with `g <= s` for every generic
//! point `g` of tail `t` and every `s` in the upset `below_t`. Generic points
//! are minimal and their down-set is themselves. Skeleton points tagged
//! isolated, generic points, and limits with no tails are isolated. A limit
//! has as basic neighbourhoods itself together with cofinite parts of each of
//! its tails.
//!
//! # Shape bases
//!
//! Statements quantified over all clopen, open or downward closed sets are
//! decided over finite families of [`DefinableSet`]s. Write `B` for the
//! largest index mentioned by the objects involved (excluded indices,
//! exceptions, override and image indices, affine offsets) and `L` for the
//! least common multiple of the periods in play. Every generic index `n > B`
//! in a given residue class mod `L` occupies the same position relative to
//! every object, so a condition that holds or fails at one such index does so
//! at all of them, and a trace is determined, for the purpose of every
//! operator here, by its finite part below `B`, its residue pattern mod `L`
//! and whether it is finite. The bases therefore range over skeleton subsets
//! crossed with per-tail traces drawn from: empty, full, one fresh index
//! beyond `B` in or out, and unions of residue classes mod `L`. Further fresh
//! indices may be requested to stress this argument.

mod basis;
mod definable;
pub mod examples;
pub mod oracle;
pub mod random;
mod trace;
mod validate;

pub use basis::{BasisConfig, ShapeBasis};
pub use definable::DefinableSet;
pub(crate) use trace::lcm as trace_lcm;
pub use trace::{Trace, MAX_PERIOD};
pub use validate::{
    validate, validate_with, DownFailure, ImplicationFailure, PriestleyFailure, SpaceVerdict,
};

use serde::{Deserialize, Serialize};

use crate::error::{malformed, Error, Result};
use crate::poset::FinPoset;
use crate::subset::Subset;

/// Topological role of a skeleton point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Limit,
    Isolated,
}

/// A point of a fan space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Point {
    Skel(usize),
    Gen { tail: usize, index: u64 },
}

/// A countable sequence of generic points converging to `limit`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tail {
    pub limit: usize,
    /// Skeleton points above every generic point of the tail; an upset.
    pub below: Subset,
    /// Indices that are not points of the tail, sorted.
    pub excluded: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FanSpace {
    skeleton: FinPoset,
    tags: Vec<Tag>,
    tails: Vec<Tail>,
}

impl FanSpace {
    pub fn new(skeleton: FinPoset, tags: Vec<Tag>, mut tails: Vec<Tail>) -> Result<FanSpace> {
        let n = skeleton.size();
        if tags.len() != n {
            return Err(malformed(
                "fanspace.tags",
                format!("{} tags for {} skeleton points", tags.len(), n),
            ));
        }
        for (t, tail) in tails.iter_mut().enumerate() {
            if tail.limit >= n {
                return Err(Error::IndexOutOfRange {
                    index: tail.limit,
                    size: n,
                });
            }
            if tags[tail.limit] != Tag::Limit {
                return Err(malformed(
                    format!("fanspace.tails[{t}].limit"),
                    format!("point {} is tagged isolated", tail.limit),
                ));
            }
            if !tail.below.fits(n) || !skeleton.is_upset(tail.below) {
                return Err(malformed(
                    format!("fanspace.tails[{t}].below"),
                    "not an upset of the skeleton",
                ));
            }
            tail.excluded.sort_unstable();
            tail.excluded.dedup();
        }
        Ok(FanSpace {
            skeleton,
            tags,
            tails,
        })
    }

    /// A finite poset as a fan space with no tails, every point isolated.
    pub fn embed_finite_poset(p: &FinPoset) -> FanSpace {
        FanSpace {
            skeleton: p.clone(),
            tags: vec![Tag::Isolated; p.size()],
            tails: Vec::new(),
        }
    }

    pub fn skeleton(&self) -> &FinPoset {
        &self.skeleton
    }

    pub fn tags(&self) -> &[Tag] {
        &self.tags
    }

    pub fn tails(&self) -> &[Tail] {
        &self.tails
    }

    pub fn num_tails(&self) -> usize {
        self.tails.len()
    }

    pub fn skeleton_size(&self) -> usize {
        self.skeleton.size()
    }

    /// Tails converging to skeleton point `s`.
    pub fn tails_of(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        self.tails
            .iter()
            .enumerate()
            .filter(move |(_, t)| t.limit == s)
            .map(|(i, _)| i)
    }

    pub fn is_point(&self, p: Point) -> bool {
        match p {
            Point::Skel(i) => i < self.skeleton.size(),
            Point::Gen { tail, index } => self
                .tails
                .get(tail)
                .is_some_and(|t| t.excluded.binary_search(&index).is_err()),
        }
    }

    pub(crate) fn check_point(&self, p: Point, path: &str) -> Result<()> {
        if self.is_point(p) {
            Ok(())
        } else {
            Err(malformed(
                path,
                format!("{p:?} is not a point of the space"),
            ))
        }
    }

    pub fn leq(&self, p: Point, q: Point) -> bool {
        match (p, q) {
            (Point::Skel(i), Point::Skel(j)) => self.skeleton.leq(i, j),
            (Point::Gen { tail, .. }, Point::Skel(j)) => self.tails[tail].below.contains(j),
            (Point::Skel(_), Point::Gen { .. }) => false,
            (a, b) => a == b,
        }
    }

    /// Isolated in the topology.
    pub fn is_isolated(&self, p: Point) -> bool {
        match p {
            Point::Skel(i) => self.tails_of(i).next().is_none(),
            Point::Gen { .. } => true,
        }
    }

    /// Largest excluded index, if any tail has one.
    pub fn max_index(&self) -> Option<u64> {
        self.tails
            .iter()
            .filter_map(|t| t.excluded.last().copied())
            .max()
    }

    /// The least generic index of tail `t` greater than `after`.
    pub fn generic_after(&self, t: usize, after: u64) -> u64 {
        let mut n = after + 1;
        while self.tails[t].excluded.binary_search(&n).is_ok() {
            n += 1;
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn construction_is_validated() {
        let p = FinPoset::chain(2);
        let bad_tag = FanSpace::new(
            p.clone(),
            vec![Tag::Isolated, Tag::Isolated],
            vec![Tail {
                limit: 0,
                below: Subset::EMPTY,
                excluded: vec![],
            }],
        );
        assert!(bad_tag.is_err());
        let not_upset = FanSpace::new(
            p,
            vec![Tag::Limit, Tag::Isolated],
            vec![Tail {
                limit: 0,
                below: Subset::singleton(0),
                excluded: vec![],
            }],
        );
        assert!(not_upset.is_err());
    }

    #[test]
    fn order_of_x4() {
        let x = x4();
        let inf = Point::Skel(0);
        let g = |n| Point::Gen { tail: 0, index: n };
        assert!(x.leq(g(3), inf));
        assert!(!x.leq(inf, g(3)));
        assert!(!x.leq(g(3), g(4)));
        assert!(x.leq(g(3), g(3)));
    }

    #[test]
    fn materialized_indices_are_not_generic() {
        let x = ne_space();
        assert!(!x.is_point(Point::Gen { tail: 0, index: 0 }));
        assert!(x.is_point(Point::Gen { tail: 0, index: 1 }));
        assert_eq!(x.generic_after(0, 0), 1);
    }
}
