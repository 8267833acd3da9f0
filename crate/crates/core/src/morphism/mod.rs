//! Maps between fan spaces and their classification into the morphism
//! classes of Esakia spaces.
//!
//! A map fixes the image of every skeleton point, sends each tail either to
//! a constant point or affinely into a tail of the codomain, and may override
//! finitely many generic points. Preimages and images of definable sets are
//! again definable: an affine pullback of a trace with period `p` has period
//! dividing `p`, and an affine image with slope `a` has period dividing `a·p`.

mod classify;
pub mod examples;

pub use classify::{
    classify, classify_with, es_failure, es_plus_failure, es_star_failure, is_es_minus,
    is_spectral_open, minus_failure, preimage_hom_check, spectral_open_failure, ImageFailure,
    MinusFailure, PointFailure, RouteCheck, SetFailure, Verdict, Witness,
};

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{malformed, Error, Result};
use crate::fan::{DefinableSet, FanSpace, Point, Trace};

/// Behaviour of one domain tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TailMap {
    Const(Point),
    /// Index `n` goes to index `a·n + b` of codomain tail `tail`.
    Embed {
        tail: usize,
        a: u64,
        b: u64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FanMap {
    dom: Arc<FanSpace>,
    cod: Arc<FanSpace>,
    named: Vec<Point>,
    tails: Vec<TailMap>,
    overrides: BTreeMap<(usize, u64), Point>,
}

impl FanMap {
    pub fn new(
        dom: Arc<FanSpace>,
        cod: Arc<FanSpace>,
        named: Vec<Point>,
        tails: Vec<TailMap>,
        overrides: BTreeMap<(usize, u64), Point>,
    ) -> Result<FanMap> {
        if named.len() != dom.skeleton_size() {
            return Err(malformed(
                "fanmap.named",
                format!(
                    "{} images for {} skeleton points",
                    named.len(),
                    dom.skeleton_size()
                ),
            ));
        }
        for (i, &p) in named.iter().enumerate() {
            cod.check_point(p, &format!("fanmap.named[{i}]"))?;
        }
        if tails.len() != dom.num_tails() {
            return Err(malformed(
                "fanmap.tails",
                format!("{} behaviours for {} tails", tails.len(), dom.num_tails()),
            ));
        }
        for (t, tm) in tails.iter().enumerate() {
            let path = format!("fanmap.tails[{t}]");
            match *tm {
                TailMap::Const(p) => cod.check_point(p, &path)?,
                TailMap::Embed { tail, a, .. } => {
                    if tail >= cod.num_tails() {
                        return Err(Error::IndexOutOfRange {
                            index: tail,
                            size: cod.num_tails(),
                        });
                    }
                    if a == 0 {
                        return Err(malformed(path, "slope must be at least 1"));
                    }
                }
            }
        }
        for (&(t, n), &p) in &overrides {
            let path = format!("fanmap.overrides[{t},{n}]");
            dom.check_point(Point::Gen { tail: t, index: n }, &path)?;
            cod.check_point(p, &path)?;
        }
        let f = FanMap {
            dom,
            cod,
            named,
            tails,
            overrides,
        };
        // Affine images must avoid the codomain's excluded indices.
        for (t, tm) in f.tails.iter().enumerate() {
            if let TailMap::Embed { tail, a, b } = *tm {
                for &e in &f.cod.tails()[tail].excluded {
                    if e < b || (e - b) % a != 0 {
                        continue;
                    }
                    let n = (e - b) / a;
                    let live = f.dom.is_point(Point::Gen { tail: t, index: n });
                    if live && !f.overrides.contains_key(&(t, n)) {
                        return Err(malformed(
                            format!("fanmap.tails[{t}]"),
                            format!("index {n} lands on excluded index {e}"),
                        ));
                    }
                }
            }
        }
        Ok(f)
    }

    pub fn identity(space: &Arc<FanSpace>) -> FanMap {
        FanMap {
            dom: space.clone(),
            cod: space.clone(),
            named: (0..space.skeleton_size()).map(Point::Skel).collect(),
            tails: (0..space.num_tails())
                .map(|t| TailMap::Embed {
                    tail: t,
                    a: 1,
                    b: 0,
                })
                .collect(),
            overrides: BTreeMap::new(),
        }
    }

    pub fn dom(&self) -> &Arc<FanSpace> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FanSpace> {
        &self.cod
    }

    pub fn named(&self) -> &[Point] {
        &self.named
    }

    pub fn tail_maps(&self) -> &[TailMap] {
        &self.tails
    }

    pub fn overrides(&self) -> &BTreeMap<(usize, u64), Point> {
        &self.overrides
    }

    /// The same map with `(tail, index)` overridden by the value it already
    /// takes.
    pub fn with_redundant_override(&self, tail: usize, index: u64) -> Result<FanMap> {
        let p = Point::Gen { tail, index };
        self.dom.check_point(p, "override")?;
        let mut g = self.clone();
        g.overrides.insert((tail, index), self.apply(p));
        Ok(g)
    }

    pub fn apply(&self, p: Point) -> Point {
        match p {
            Point::Skel(i) => self.named[i],
            Point::Gen { tail, index } => {
                if let Some(&q) = self.overrides.get(&(tail, index)) {
                    return q;
                }
                match self.tails[tail] {
                    TailMap::Const(q) => q,
                    TailMap::Embed { tail: ct, a, b } => Point::Gen {
                        tail: ct,
                        index: a * index + b,
                    },
                }
            }
        }
    }

    fn point_index(p: Point) -> u64 {
        match p {
            Point::Gen { index, .. } => index,
            Point::Skel(_) => 0,
        }
    }

    /// Largest special index on the domain side and on the codomain side.
    pub fn bounds(&self) -> (u64, u64) {
        let dom_b = self
            .dom
            .max_index()
            .into_iter()
            .chain(self.overrides.keys().map(|&(_, n)| n))
            .max()
            .unwrap_or(0);
        let mut cod_b = self.cod.max_index().unwrap_or(0);
        let targets =
            self.named
                .iter()
                .chain(self.overrides.values())
                .chain(self.tails.iter().filter_map(|t| match t {
                    TailMap::Const(p) => Some(p),
                    TailMap::Embed { .. } => None,
                }));
        for &p in targets {
            cod_b = cod_b.max(Self::point_index(p));
        }
        for t in &self.tails {
            if let TailMap::Embed { a, b, .. } = *t {
                cod_b = cod_b.max(a * (dom_b + 1) + b);
            }
        }
        (dom_b, cod_b)
    }

    /// Least common multiple of the slopes embedding into codomain tail `ct`.
    pub fn slope_modulus(&self, ct: usize) -> Result<u64> {
        self.tails.iter().try_fold(1, |acc, t| match *t {
            TailMap::Embed { tail, a, .. } if tail == ct => crate::fan::trace_lcm(acc, a),
            _ => Ok(acc),
        })
    }

    /// Generic indices of codomain tail `ct` hit by skeleton points, constant
    /// tails or overrides.
    pub fn pinned_indices(&self, ct: usize) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .named
            .iter()
            .chain(self.overrides.values())
            .chain(self.tails.iter().filter_map(|t| match t {
                TailMap::Const(p) => Some(p),
                TailMap::Embed { .. } => None,
            }))
            .filter_map(|p| match *p {
                Point::Gen { tail, index } if tail == ct => Some(index),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn check_cod(&self, d: &DefinableSet) -> Result<()> {
        if Arc::ptr_eq(d.space(), &self.cod) || **d.space() == *self.cod {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    fn check_dom(&self, d: &DefinableSet) -> Result<()> {
        if Arc::ptr_eq(d.space(), &self.dom) || **d.space() == *self.dom {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    /// `f⁻¹(D)`, exactly.
    pub fn preimage(&self, d: &DefinableSet) -> Result<DefinableSet> {
        self.check_cod(d)?;
        let named = (0..self.dom.skeleton_size())
            .filter(|&i| d.contains(self.named[i]))
            .collect();
        let (dom_b, cod_b) = self.bounds();
        // a·n + b >= n, so indices beyond every special index pull back uniformly.
        let bound = dom_b.max(cod_b).max(d.max_index().unwrap_or(0));
        let tails = (0..self.dom.num_tails())
            .map(|t| {
                let period = match self.tails[t] {
                    TailMap::Const(_) => 1,
                    TailMap::Embed { tail, .. } => d.trace(tail).period(),
                };
                Trace::from_fn(period, bound, |n| {
                    d.contains(self.apply(Point::Gen { tail: t, index: n }))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        DefinableSet::new(self.dom.clone(), named, tails)
    }

    /// `f[D]`, exactly.
    pub fn image(&self, d: &DefinableSet) -> Result<DefinableSet> {
        self.check_dom(d)?;
        let mut named = crate::subset::Subset::EMPTY;
        let mut pinned: Vec<Vec<u64>> = vec![Vec::new(); self.cod.num_tails()];
        let mut hit = |p: Point| match p {
            Point::Skel(j) => named = named.with(j),
            Point::Gen { tail, index } => pinned[tail].push(index),
        };
        for i in d.named().iter() {
            hit(self.named[i]);
        }
        for (&(t, n), &p) in &self.overrides {
            if d.trace(t).contains(n) {
                hit(p);
            }
        }
        for (t, tm) in self.tails.iter().enumerate() {
            if let TailMap::Const(p) = *tm {
                let tr = d.trace(t);
                let live = tr.is_infinite()
                    || tr
                        .exceptions()
                        .iter()
                        .any(|&n| !self.overrides.contains_key(&(t, n)));
                if live {
                    hit(p);
                }
            }
        }
        let (dom_b, cod_b) = self.bounds();
        let dom_bound = dom_b.max(d.max_index().unwrap_or(0));
        let mut tails = Vec::with_capacity(self.cod.num_tails());
        for ct in 0..self.cod.num_tails() {
            let embeds: Vec<(usize, u64, u64)> = self
                .tails
                .iter()
                .enumerate()
                .filter_map(|(t, tm)| match *tm {
                    TailMap::Embed { tail, a, b } if tail == ct => Some((t, a, b)),
                    _ => None,
                })
                .collect();
            let mut period = 1;
            let mut bound = cod_b;
            for &(t, a, b) in &embeds {
                period = crate::fan::trace_lcm(period, a * d.trace(t).period())?;
                bound = bound.max(a * (dom_bound + 1) + b);
            }
            bound = bound.max(pinned[ct].iter().copied().max().unwrap_or(0));
            let pins = &pinned[ct];
            let tr = Trace::from_fn(period, bound, |m| {
                pins.contains(&m)
                    || embeds.iter().any(|&(t, a, b)| {
                        if m < b || (m - b) % a != 0 {
                            return false;
                        }
                        let n = (m - b) / a;
                        d.contains(Point::Gen { tail: t, index: n })
                            && !self.overrides.contains_key(&(t, n))
                    })
            })?;
            tails.push(tr);
        }
        DefinableSet::new(self.cod.clone(), named, tails)
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use crate::fan::examples::*;
    use crate::subset::Subset;

    #[test]
    fn f2_preimage_of_evens_with_limit() {
        let f = f2();
        let x3 = f.cod().clone();
        let e_inf = DefinableSet::new(
            x3,
            Subset::singleton(0),
            vec![Trace::periodic(2, 1, []).unwrap()],
        )
        .unwrap();
        let pre = f.preimage(&e_inf).unwrap();
        let expect = DefinableSet::new(
            f.dom().clone(),
            Subset::from_indices([0, 1]),
            vec![Trace::full(), Trace::empty()],
        )
        .unwrap();
        assert_eq!(pre, expect);
    }

    #[test]
    fn identity_preimage_and_image() {
        for (_, x) in bundled() {
            let x = Arc::new(x);
            let id = FanMap::identity(&x);
            let d = DefinableSet::new(
                x.clone(),
                x.skeleton().carrier(),
                vec![Trace::cofinite([1]); x.num_tails()],
            )
            .unwrap();
            assert_eq!(id.preimage(&d).unwrap(), d);
            assert_eq!(id.image(&d).unwrap(), d);
            let full = DefinableSet::full(&x);
            assert_eq!(id.preimage(&full).unwrap(), full);
        }
    }

    #[test]
    fn images_of_affine_tails() {
        let f = f2();
        let all = DefinableSet::full(f.dom());
        let img = f.image(&all).unwrap();
        assert_eq!(img, DefinableSet::full(f.cod()));
        let evens_only = DefinableSet::new(
            f.dom().clone(),
            Subset::EMPTY,
            vec![Trace::full(), Trace::empty()],
        )
        .unwrap();
        let img = f.image(&evens_only).unwrap();
        assert_eq!(img.trace(0), &Trace::periodic(2, 1, []).unwrap());
    }

    #[test]
    fn landing_on_excluded_indices_is_rejected() {
        let ne = Arc::new(ne_space());
        let x3 = Arc::new(x3());
        let bad = FanMap::new(
            x3.clone(),
            ne.clone(),
            vec![Point::Skel(0)],
            vec![TailMap::Embed {
                tail: 0,
                a: 1,
                b: 0,
            }],
            BTreeMap::new(),
        );
        assert!(bad.is_err());
        let fixed = FanMap::new(
            x3,
            ne,
            vec![Point::Skel(0)],
            vec![TailMap::Embed {
                tail: 0,
                a: 1,
                b: 0,
            }],
            BTreeMap::from([((0, 0), Point::Skel(1))]),
        );
        assert!(fixed.is_ok());
    }
}
