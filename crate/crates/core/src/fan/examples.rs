//! The bundled spaces.
//!
//! In `x2` tail 0 indexes the even numbers (`n` stands for `2n`) and tail 1
//! the odd ones (`n` stands for `2n + 1`).

use super::{FanSpace, Tag, Tail};
use crate::poset::FinPoset;
use crate::subset::Subset;

/// The two-element chain `x < y`, with `x = 0`.
pub fn x1() -> FanSpace {
    FanSpace::embed_finite_poset(&FinPoset::chain(2))
}

/// Evens and odds compactified separately: limits `0 = ∞_E`, `1 = ∞_O`,
/// trivial order.
pub fn x2() -> FanSpace {
    let tail = |limit| Tail {
        limit,
        below: Subset::EMPTY,
        excluded: vec![],
    };
    FanSpace::new(
        FinPoset::antichain(2),
        vec![Tag::Limit, Tag::Limit],
        vec![tail(0), tail(1)],
    )
    .expect("well formed")
}

/// One-point compactification of the naturals with trivial order; `∞ = 0`.
pub fn x3() -> FanSpace {
    FanSpace::new(
        FinPoset::chain(1),
        vec![Tag::Limit],
        vec![Tail {
            limit: 0,
            below: Subset::EMPTY,
            excluded: vec![],
        }],
    )
    .expect("well formed")
}

/// As `x3`, ordered by `u <= v` iff `u = v` or `v = ∞`.
pub fn x4() -> FanSpace {
    FanSpace::new(
        FinPoset::chain(1),
        vec![Tag::Limit],
        vec![Tail {
            limit: 0,
            below: Subset::singleton(0),
            excluded: vec![],
        }],
    )
    .expect("well formed")
}

/// Priestley but not Esakia: a tail converging to `∞ = 0`, with index 0
/// materialized as the isolated point `p0 = 1` and `∞ < p0`.
pub fn ne_space() -> FanSpace {
    FanSpace::new(
        FinPoset::chain(2),
        vec![Tag::Limit, Tag::Isolated],
        vec![Tail {
            limit: 0,
            below: Subset::EMPTY,
            excluded: vec![0],
        }],
    )
    .expect("well formed")
}

/// A single isolated point.
pub fn point() -> FanSpace {
    FanSpace::embed_finite_poset(&FinPoset::chain(1))
}

/// Every bundled space with its file stem.
pub fn bundled() -> Vec<(&'static str, FanSpace)> {
    vec![
        ("x1", x1()),
        ("x2", x2()),
        ("x3", x3()),
        ("x4", x4()),
        ("ne", ne_space()),
        ("point", point()),
    ]
}
