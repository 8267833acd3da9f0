//! The four bundled maps and their expected verdicts.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{FanMap, TailMap};
use crate::fan::examples::{point, x1, x2, x3, x4};
use crate::fan::Point;

/// `X1 -> X1` collapsing both points onto `x`.
pub fn f1() -> FanMap {
    let x = Arc::new(x1());
    FanMap::new(
        x.clone(),
        x,
        vec![Point::Skel(0), Point::Skel(0)],
        vec![],
        BTreeMap::new(),
    )
    .expect("well formed")
}

/// `X2 -> X3`, the identity on numbers: evens `n -> 2n`, odds `n -> 2n + 1`,
/// both limits to `∞`.
pub fn f2() -> FanMap {
    FanMap::new(
        Arc::new(x2()),
        Arc::new(x3()),
        vec![Point::Skel(0), Point::Skel(0)],
        vec![
            TailMap::Embed {
                tail: 0,
                a: 2,
                b: 0,
            },
            TailMap::Embed {
                tail: 0,
                a: 2,
                b: 1,
            },
        ],
        BTreeMap::new(),
    )
    .expect("well formed")
}

/// `X1 -> X4` with `x -> 0` and `y -> ∞`.
pub fn f3() -> FanMap {
    FanMap::new(
        Arc::new(x1()),
        Arc::new(x4()),
        vec![Point::Gen { tail: 0, index: 0 }, Point::Skel(0)],
        vec![],
        BTreeMap::new(),
    )
    .expect("well formed")
}

/// The point `* -> ∞` of `X4`.
pub fn f4() -> FanMap {
    FanMap::new(
        Arc::new(point()),
        Arc::new(x4()),
        vec![Point::Skel(0)],
        vec![],
        BTreeMap::new(),
    )
    .expect("well formed")
}

/// A row of the reference table: map name and the expected value of each
/// constrained cell, in the order es_minus, es, es_plus, es_star, es_dagger,
/// spectral_open. `None` leaves a cell unconstrained.
pub struct GoldenRow {
    pub name: &'static str,
    pub map: FanMap,
    pub expected: [Option<bool>; 6],
}

pub fn golden_table() -> Vec<GoldenRow> {
    let (t, f) = (Some(true), Some(false));
    vec![
        GoldenRow {
            name: "f1",
            map: f1(),
            expected: [t, f, f, t, f, None],
        },
        GoldenRow {
            name: "f2",
            map: f2(),
            expected: [None, t, f, None, None, None],
        },
        GoldenRow {
            name: "f3",
            map: f3(),
            expected: [None, t, t, f, None, None],
        },
        GoldenRow {
            name: "f4",
            map: f4(),
            expected: [None, None, t, None, None, f],
        },
    ]
}
