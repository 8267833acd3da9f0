//! The five morphism classes, spectral openness, and the algebraic
//! cross-check through preimage maps.

use serde::Serialize;
use std::collections::{BTreeMap, HashSet};

use super::{FanMap, TailMap};
use crate::error::Result;
use crate::fan::{BasisConfig, DefinableSet, Point, ShapeBasis};

/// Why a map is not a Priestley morphism.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "fails", rename_all = "snake_case")]
pub enum MinusFailure {
    /// The tail does not converge to the image of its limit.
    Discontinuous { limit: usize, tail: usize },
    /// `p <= q` but not `f(p) <= f(q)`.
    NotMonotone { p: Point, q: Point },
}

/// `f⁻¹(↓y)` against `↓f⁻¹(y)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointFailure {
    pub y: Point,
    pub lhs: DefinableSet,
    pub rhs: DefinableSet,
}

/// `lhs` and `rhs` are the two sides of the defining equation at `set`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SetFailure {
    pub set: DefinableSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other: Option<DefinableSet>,
    pub lhs: DefinableSet,
    pub rhs: DefinableSet,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "witness", rename_all = "snake_case")]
pub enum Witness {
    NotPriestley(MinusFailure),
    Point(PointFailure),
    Set(SetFailure),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub es_minus: bool,
    pub es: bool,
    pub es_plus: bool,
    pub es_star: bool,
    pub es_dagger: bool,
    /// One witness per false flag, keyed by flag name.
    pub witnesses: BTreeMap<String, Witness>,
}

impl Verdict {
    /// The first containment between classes that this verdict breaks.
    pub fn invariant_violation(&self) -> Option<&'static str> {
        if self.es_plus && !self.es {
            Some("es_plus => es")
        } else if self.es && !self.es_minus {
            Some("es => es_minus")
        } else if self.es_star && !self.es_minus {
            Some("es_star => es_minus")
        } else if self.es_dagger != (self.es_plus && self.es_star) {
            Some("es_dagger = es_plus && es_star")
        } else {
            None
        }
    }

    pub fn flags(&self) -> [bool; 5] {
        [
            self.es_minus,
            self.es,
            self.es_plus,
            self.es_star,
            self.es_dagger,
        ]
    }
}

/// Continuity at every limit, then order preservation on skeleton pairs,
/// generic-below obligations (one fresh representative per tail) and every
/// overridden point.
pub fn minus_failure(f: &FanMap) -> Option<MinusFailure> {
    let (dom, cod) = (f.dom(), f.cod());
    for (t, tail) in dom.tails().iter().enumerate() {
        let target = f.named()[tail.limit];
        let ok = match f.tail_maps()[t] {
            TailMap::Const(p) => p == target,
            TailMap::Embed { tail: ct, .. } => target == Point::Skel(cod.tails()[ct].limit),
        };
        if !ok {
            return Some(MinusFailure::Discontinuous {
                limit: tail.limit,
                tail: t,
            });
        }
    }
    let sk = dom.skeleton();
    for i in 0..sk.size() {
        for j in sk.up_of(i).iter() {
            if !cod.leq(f.named()[i], f.named()[j]) {
                return Some(MinusFailure::NotMonotone {
                    p: Point::Skel(i),
                    q: Point::Skel(j),
                });
            }
        }
    }
    let (dom_b, _) = f.bounds();
    for (t, tail) in dom.tails().iter().enumerate() {
        let fresh = dom.generic_after(t, dom_b);
        let reps = std::iter::once(fresh).chain(
            f.overrides()
                .keys()
                .filter(|&&(ot, _)| ot == t)
                .map(|&(_, n)| n),
        );
        for n in reps {
            let g = Point::Gen { tail: t, index: n };
            for s in tail.below.iter() {
                if !cod.leq(f.apply(g), f.named()[s]) {
                    return Some(MinusFailure::NotMonotone {
                        p: g,
                        q: Point::Skel(s),
                    });
                }
            }
        }
    }
    None
}

pub fn is_es_minus(f: &FanMap) -> bool {
    minus_failure(f).is_none()
}

/// The codomain basis adapted to `f`: residue classes by the slopes landing
/// in each tail, and singletons at pinned indices.
fn cod_basis(f: &FanMap, cfg: BasisConfig) -> Result<ShapeBasis> {
    let (_, cod_b) = f.bounds();
    let mut b = ShapeBasis::new(f.cod(), Some(cod_b), cfg);
    for ct in 0..f.cod().num_tails() {
        b = b.with_modulus(ct, f.slope_modulus(ct)?)?;
        b = b.with_singles(ct, f.pinned_indices(ct));
    }
    Ok(b)
}

fn dom_basis(f: &FanMap, cfg: BasisConfig) -> ShapeBasis {
    let (dom_b, _) = f.bounds();
    let mut b = ShapeBasis::new(f.dom(), Some(dom_b), cfg);
    for t in 0..f.dom().num_tails() {
        let pinned: Vec<u64> = f
            .overrides()
            .keys()
            .filter(|&&(ot, _)| ot == t)
            .map(|&(_, n)| n)
            .collect();
        b = b.with_singles(t, pinned);
    }
    b
}

/// `↓f⁻¹(y) = f⁻¹(↓y)` at every skeleton point and at every generic index
/// up to one full period past the bound.
pub fn es_failure(f: &FanMap, cfg: BasisConfig) -> Result<Option<PointFailure>> {
    let cod = f.cod();
    let (_, cod_b) = f.bounds();
    let mut ys: Vec<Point> = (0..cod.skeleton_size()).map(Point::Skel).collect();
    for ct in 0..cod.num_tails() {
        let window = f.slope_modulus(ct)? + cfg.depth.max(1) as u64;
        for m in 0..=cod_b + window {
            let y = Point::Gen { tail: ct, index: m };
            if cod.is_point(y) {
                ys.push(y);
            }
        }
    }
    for y in ys {
        let single = DefinableSet::from_points(cod, [y])?;
        let lhs = f.preimage(&single.down_closure())?;
        let rhs = f.preimage(&single)?.down_closure();
        if lhs != rhs {
            return Ok(Some(PointFailure { y, lhs, rhs }));
        }
    }
    Ok(None)
}

fn differences(open: &[DefinableSet]) -> Result<Vec<DefinableSet>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for u in open {
        for v in open {
            let e = u.difference(v)?;
            if seen.insert(e.clone()) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

fn closure_failure(f: &FanMap, sets: &[DefinableSet]) -> Result<Option<SetFailure>> {
    for e in sets {
        let lhs = f.preimage(&e.spectral_closure())?;
        let rhs = f.preimage(e)?.spectral_closure();
        if lhs != rhs {
            return Ok(Some(SetFailure {
                set: e.clone(),
                other: None,
                lhs,
                rhs,
            }));
        }
    }
    Ok(None)
}

/// `f⁻¹(↓cl E) = ↓cl f⁻¹(E)` over differences of basis open upsets.
pub fn es_plus_failure(f: &FanMap, cfg: BasisConfig) -> Result<Option<SetFailure>> {
    let basis = cod_basis(f, cfg)?;
    closure_failure(f, &differences(&basis.open_upsets())?)
}

/// `f⁻¹(↓cl D) = ↓cl f⁻¹(D)` over basis downsets.
pub fn es_star_failure(f: &FanMap, cfg: BasisConfig) -> Result<Option<SetFailure>> {
    let basis = cod_basis(f, cfg)?;
    closure_failure(f, &basis.downsets())
}

pub fn classify(f: &FanMap) -> Result<Verdict> {
    classify_with(f, BasisConfig::default())
}

pub fn classify_with(f: &FanMap, cfg: BasisConfig) -> Result<Verdict> {
    let mut witnesses = BTreeMap::new();
    let minus = minus_failure(f);
    let es_minus = minus.is_none();
    let es_cond = es_failure(f, cfg)?;
    let plus_cond = es_plus_failure(f, cfg)?;
    let star_cond = es_star_failure(f, cfg)?;
    let es = es_minus && es_cond.is_none();
    let es_plus = es_minus && plus_cond.is_none();
    let es_star = es_minus && star_cond.is_none();
    let es_dagger = es_plus && es_star;
    let minus_w = minus.map(Witness::NotPriestley);
    if let Some(w) = &minus_w {
        witnesses.insert("es_minus".into(), w.clone());
    }
    if !es {
        let w = es_cond.map(Witness::Point).or_else(|| minus_w.clone());
        witnesses.insert("es".into(), w.expect("a failing flag has a cause"));
    }
    if !es_plus {
        let w = plus_cond.map(Witness::Set).or(minus_w.clone());
        witnesses.insert("es_plus".into(), w.expect("a failing flag has a cause"));
    }
    if !es_star {
        let w = star_cond.map(Witness::Set).or(minus_w);
        witnesses.insert("es_star".into(), w.expect("a failing flag has a cause"));
    }
    if !es_dagger {
        let key = if es_plus { "es_star" } else { "es_plus" };
        let w = witnesses[key].clone();
        witnesses.insert("es_dagger".into(), w);
    }
    Ok(Verdict {
        es_minus,
        es,
        es_plus,
        es_star,
        es_dagger,
        witnesses,
    })
}

/// Image of a basis open upset of the domain that is not an open upset.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ImageFailure {
    pub set: DefinableSet,
    pub image: DefinableSet,
}

pub fn spectral_open_failure(f: &FanMap, cfg: BasisConfig) -> Result<Option<ImageFailure>> {
    for u in dom_basis(f, cfg).open_upsets() {
        let image = f.image(&u)?;
        if !(image.is_open() && image.is_upset_def()) {
            return Ok(Some(ImageFailure { set: u, image }));
        }
    }
    Ok(None)
}

pub fn is_spectral_open(f: &FanMap) -> Result<bool> {
    Ok(spectral_open_failure(f, BasisConfig::default())?.is_none())
}

/// One class decided twice: by the classifier and by the preimage map on
/// the algebra side.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RouteCheck {
    pub class: &'static str,
    pub classifier: bool,
    pub algebra: bool,
    pub witness: Option<SetFailure>,
}

impl RouteCheck {
    pub fn agree(&self) -> bool {
        self.classifier == self.algebra
    }
}

fn implication_failure(f: &FanMap, family: &[DefinableSet]) -> Result<Option<SetFailure>> {
    for u in family {
        for v in family {
            let lhs = f.preimage(&DefinableSet::open_upset_implication(u, v)?)?;
            let rhs = DefinableSet::open_upset_implication(&f.preimage(u)?, &f.preimage(v)?)?;
            if lhs != rhs {
                return Ok(Some(SetFailure {
                    set: u.clone(),
                    other: Some(v.clone()),
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(None)
}

/// Meets of open upsets are `□ int` of intersections, and every upset is an
/// intersection of open upsets; so `f⁻¹` preserves all meets iff it commutes
/// with `□ int` on upsets, here the complements of basis downsets.
fn meet_failure(f: &FanMap, downsets: &[DefinableSet]) -> Result<Option<SetFailure>> {
    for d in downsets {
        let u = d.complement();
        let lhs = f.preimage(&u.interior().box_op())?;
        let rhs = f.preimage(&u)?.interior().box_op();
        if lhs != rhs {
            return Ok(Some(SetFailure {
                set: u,
                other: None,
                lhs,
                rhs,
            }));
        }
    }
    Ok(None)
}

/// Decides ES, ES⁺ and ES* through `f⁻¹` on the algebra side and compares
/// with the classifier.
pub fn preimage_hom_check(f: &FanMap, cfg: BasisConfig) -> Result<Vec<RouteCheck>> {
    let v = classify_with(f, cfg)?;
    let basis = cod_basis(f, cfg)?;
    let es = implication_failure(f, &basis.clopen_upsets())?;
    let plus = implication_failure(f, &basis.open_upsets())?;
    let star = meet_failure(f, &basis.downsets())?;
    let route = |class, classifier, w: Option<SetFailure>| RouteCheck {
        class,
        classifier,
        algebra: v.es_minus && w.is_none(),
        witness: w,
    };
    Ok(vec![
        route("es", v.es, es),
        route("es_plus", v.es_plus, plus),
        route("es_star", v.es_star, star),
    ])
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;
    use crate::fan::examples::*;
    use std::sync::Arc;

    #[test]
    fn golden_table() {
        let v1 = classify(&f1()).unwrap();
        assert_eq!(v1.flags(), [true, false, false, true, false]);
        let Witness::Point(w) = &v1.witnesses["es"] else {
            panic!()
        };
        assert_eq!(w.y, Point::Skel(1));
        assert_eq!(w.lhs, DefinableSet::full(f1().dom()));
        assert!(w.rhs.is_empty());

        let v2 = classify(&f2()).unwrap();
        assert!(v2.es_minus && v2.es && !v2.es_plus && !v2.es_dagger);

        let v3 = classify(&f3()).unwrap();
        assert!(v3.es && v3.es_plus && !v3.es_star && !v3.es_dagger);
        let Witness::Set(w) = &v3.witnesses["es_star"] else {
            panic!()
        };
        assert_eq!(w.lhs, DefinableSet::full(f3().dom()));

        let v4 = classify(&f4()).unwrap();
        assert!(v4.es_plus);
        assert!(!is_spectral_open(&f4()).unwrap());
        assert!(!is_spectral_open(&f3()).unwrap());
    }

    #[test]
    fn f2_is_not_es_star() {
        let v2 = classify(&f2()).unwrap();
        assert!(!v2.es_star);
        let Witness::Set(w) = &v2.witnesses["es_star"] else {
            panic!()
        };
        assert_eq!(w.set.trace(0).mode(), "PERIODIC");
    }

    #[test]
    fn f2_plus_witness_is_the_evens() {
        let v2 = classify(&f2()).unwrap();
        let Witness::Set(w) = &v2.witnesses["es_plus"] else {
            panic!()
        };
        assert!(w.set.named().is_empty());
        assert_eq!(w.set.trace(0).period(), 2);
        assert_eq!(w.lhs.named().len(), 2);
        assert_eq!(w.rhs.named().len(), 1);
    }

    #[test]
    fn identities_pass_everything() {
        for (_, x) in bundled() {
            let x = Arc::new(x);
            if !crate::fan::validate(&x).esakia {
                continue;
            }
            let v = classify(&FanMap::identity(&x)).unwrap();
            assert_eq!(v.flags(), [true; 5]);
            assert!(is_spectral_open(&FanMap::identity(&x)).unwrap());
        }
    }

    #[test]
    fn broken_continuity_on_x4() {
        let x = Arc::new(x4());
        let f = FanMap::new(
            x.clone(),
            x,
            vec![Point::Skel(0)],
            vec![TailMap::Const(Point::Gen { tail: 0, index: 0 })],
            Default::default(),
        )
        .unwrap();
        assert!(matches!(
            minus_failure(&f),
            Some(MinusFailure::Discontinuous { .. })
        ));
        let v = classify(&f).unwrap();
        assert_eq!(v.flags(), [false; 5]);
        assert_eq!(v.witnesses.len(), 5);
    }

    #[test]
    fn routes_agree_on_example_maps() {
        for f in [f1(), f2(), f3(), f4()] {
            for r in preimage_hom_check(&f, BasisConfig::default()).unwrap() {
                assert!(r.agree(), "{r:?}");
            }
        }
    }

    #[test]
    fn redundant_overrides_do_not_change_verdicts() {
        for f in [f2(), f3()] {
            let base = classify(&f).unwrap().flags();
            for t in 0..f.dom().num_tails() {
                for n in [0, 3, 7] {
                    let g = f.with_redundant_override(t, n).unwrap();
                    assert_eq!(classify(&g).unwrap().flags(), base);
                }
            }
        }
    }
}
