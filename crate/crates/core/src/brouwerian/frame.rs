//! Filter frames of meet-semilattices and the frame-side notions: pseudoprime
//! and prime elements, pseudopoints, the space `Y_L`, Brouwerian and
//! arithmetic frames, and right adjoints.
//!
//! At finite scale every element is compact and `≪` is `<=`, so the frame
//! notions collapse onto their lattice counterparts. The definitions below are
//! still evaluated literally, with `≪` and compactness computed by
//! [`FrameView`], so that the collapse is checked rather than assumed.

use std::sync::Arc;

use serde::Serialize;

use super::space::{filters, PointedGenSpace};
use super::topology::FiniteTopology;
use crate::duality::{frame_hom_violation, FrameView};
use crate::error::{Error, Result};
use crate::hom::AlgHom;
use crate::lattice::{FinLattice, MeetSemilatticeView, SetLattice};
use crate::poset::FinPoset;
use crate::subset::{subsets_of, Subset};

/// The filters of a meet-semilattice under inclusion.
#[derive(Clone, Debug)]
pub struct FilterFrame {
    pub base: MeetSemilatticeView,
    pub filters: SetLattice,
}

pub fn filter_frame(a: &MeetSemilatticeView) -> Result<FilterFrame> {
    Ok(FilterFrame {
        base: a.clone(),
        filters: SetLattice::from_family(filters(a)?)?,
    })
}

impl FilterFrame {
    pub fn size(&self) -> usize {
        self.filters.size()
    }

    pub fn lattice(&self) -> &FinLattice {
        &self.filters.lattice
    }

    pub fn frame(&self) -> Result<FrameView> {
        FrameView::new(self.filters.lattice.clone())
    }

    /// Index of `↑a`.
    pub fn principal(&self, a: usize) -> usize {
        self.filters
            .index_of(self.base.base().principal_filter(a))
            .expect("principal filters are filters")
    }

    /// `a ↦ ↑a` as an isomorphism `A -> K(ℱ(A))^d`, after checking that the
    /// compact elements are exactly the principal filters.
    pub fn k_dual_iso(&self) -> std::result::Result<Vec<usize>, String> {
        let frame = self.frame().map_err(|e| e.to_string())?;
        let principal: Subset = (0..self.base.size()).map(|a| self.principal(a)).collect();
        if frame.compact_elements() != principal {
            return Err(format!(
                "compact filters {:?} are not the principal filters {principal:?}",
                frame.compact_elements()
            ));
        }
        let emb = principal.to_vec();
        let kd = self.lattice().order().restrict(principal).dual();
        let map: Vec<usize> = (0..self.base.size())
            .map(|a| {
                emb.iter()
                    .position(|&e| e == self.principal(a))
                    .expect("principal")
            })
            .collect();
        if !self.base.base().order().is_isomorphism(&kd, &map) {
            return Err("a ↦ ↑a is not an order isomorphism onto K(ℱ(A))^d".into());
        }
        Ok(map)
    }
}

/// `ℱ(h)(F) = ↑h[F]`, as a map of filter indices.
pub fn f_of_hom(h: &AlgHom, fa: &FilterFrame, fb: &FilterFrame) -> Result<Vec<usize>> {
    if !h.is_ms_hom() {
        return Err(Error::NotAHomomorphism {
            kind: "meet-semilattice",
        });
    }
    if h.dom != *fa.base.base() || h.cod != *fb.base.base() {
        return Err(Error::Mismatch);
    }
    fa.filters
        .sets
        .iter()
        .map(|&f| {
            let img: Subset = f.iter().map(|x| h.apply(x)).collect();
            let up = h.cod.order().up_set(img)?;
            fb.filters
                .index_of(up)
                .ok_or_else(|| crate::error::malformed("ℱ(h)", "image is not a filter"))
        })
        .collect()
}

/// `p != 1` such that `a_1 ∧ ... ∧ a_n ≪ p` forces some `a_i <= p`.
pub fn pseudoprime_elements(l: &FrameView) -> Subset {
    let b = l.base();
    (0..b.size())
        .filter(|&p| p != b.top())
        .filter(|&p| {
            subsets_of(b.carrier())
                .filter(|&s| l.way_below(b.meet_all(s), p))
                .all(|s| s.iter().any(|a| b.leq(a, p)))
        })
        .collect()
}

/// `p != 1` such that `a ∧ b <= p` forces `a <= p` or `b <= p`.
pub fn prime_elements(l: &FrameView) -> Subset {
    let b = l.base();
    let n = b.size();
    (0..n)
        .filter(|&p| p != b.top())
        .filter(|&p| {
            (0..n).all(|x| (0..n).all(|y| !b.leq(b.meet(x, y), p) || b.leq(x, p) || b.leq(y, p)))
        })
        .collect()
}

/// Nonempty upsets `U` such that `⋁S ∈ U` forces `S ∩ U != ∅`, and
/// `a_1, ..., a_n ∈ U` with `a_1 ∧ ... ∧ a_n ≪ b` forces `b ∈ U`.
pub fn pseudopoints(l: &FrameView) -> Result<Vec<Subset>> {
    let b = l.base();
    let n = b.size();
    let mut out: Vec<Subset> = b
        .order()
        .all_upsets()?
        .into_iter()
        .filter(|u| !u.is_empty())
        .filter(|&u| {
            subsets_of(b.carrier())
                .all(|s| !u.contains(b.join_all(s)) || !s.intersection(u).is_empty())
        })
        .filter(|&u| {
            subsets_of(u).all(|s| {
                let m = b.meet_all(s);
                (0..n).all(|y| !l.way_below(m, y) || u.contains(y))
            })
        })
        .collect();
    out.sort_by_key(|s| (s.len(), s.0));
    Ok(out)
}

/// `Y_L` with the element of `L` standing for each point; the last point is
/// the top.
#[derive(Clone, Debug)]
pub struct YSpace {
    pub space: Arc<PointedGenSpace>,
    pub elements: Vec<usize>,
}

/// `PP(L) ∪ {1}` under the order of `L`, topologized by `↑k` and the
/// complements of `↑l` for compact `k`, `l`, with `X0 = P(L)` and `m = 1`.
pub fn y_space(l: &FrameView) -> Result<YSpace> {
    let b = l.base();
    let mut elements = pseudoprime_elements(l).to_vec();
    elements.push(b.top());
    let n = elements.len();
    let order = FinPoset::from_fn(n, |i, j| b.leq(elements[i], elements[j]))?;
    let up = |k: usize| -> Subset { (0..n).filter(|&i| b.leq(k, elements[i])).collect() };
    let mut subbasis = Vec::new();
    for k in l.compact_elements() {
        subbasis.push(up(k));
        subbasis.push(up(k).complement(n));
    }
    let topology = FiniteTopology::from_subbasis(n, subbasis)?;
    let primes = prime_elements(l);
    let x0: Subset = (0..n).filter(|&i| primes.contains(elements[i])).collect();
    let space = PointedGenSpace::new(order, topology, x0, n - 1)?;
    Ok(YSpace {
        space: Arc::new(space),
        elements,
    })
}

/// `K(L)^d` as a lattice on positions, with the embedding into `L`. A finite
/// join-semilattice with bottom is a lattice, so only `K(L)` being closed
/// under binary joins is required.
fn compact_dual(l: &FrameView) -> Result<(FinLattice, Vec<usize>)> {
    let k = l.compact_elements();
    let emb = k.to_vec();
    let kd = FinLattice::from_poset(l.base().order().restrict(k).dual())?;
    Ok((kd, emb))
}

/// Every element is the join of the compact elements below it.
pub fn is_algebraic(l: &FrameView) -> bool {
    let b = l.base();
    let k = l.compact_elements();
    (0..b.size()).all(|a| b.join_all(k.intersection(b.order().down_of(a))) == a)
}

/// Algebraic, with `K(L)^d` a Brouwerian semilattice.
pub fn is_brouwerian_frame(l: &FrameView) -> bool {
    is_algebraic(l)
        && compact_dual(l)
            .map(|(kd, _)| MeetSemilatticeView::new(kd).is_brouwerian_semilattice())
            .unwrap_or(false)
}

/// Algebraic, with compact elements closed under binary meets.
pub fn is_arithmetic(l: &FrameView) -> bool {
    let b = l.base();
    let k = l.compact_elements();
    is_algebraic(l) && k.iter().all(|x| k.iter().all(|y| k.contains(b.meet(x, y))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "fails", rename_all = "snake_case")]
pub enum BrwFrmFailure {
    NotBrouwerianFrame,
    NotFrameHom {
        detail: String,
    },
    CompactNotPreserved {
        a: usize,
    },
    /// `α(a -> b) != α(a) -> α(b)`, implications taken in the compact duals.
    Implication {
        a: usize,
        b: usize,
    },
}

/// A frame homomorphism between Brouwerian frames that preserves compact
/// elements and the implication of `K(-)^d`.
pub fn brwfrm_failure(l: &FrameView, m: &FrameView, alpha: &[usize]) -> Option<BrwFrmFailure> {
    if !is_brouwerian_frame(l) || !is_brouwerian_frame(m) {
        return Some(BrwFrmFailure::NotBrouwerianFrame);
    }
    if let Some(detail) = frame_hom_violation(l.base(), m.base(), alpha) {
        return Some(BrwFrmFailure::NotFrameHom { detail });
    }
    if let Some(a) = l
        .compact_elements()
        .iter()
        .find(|&a| !m.compact_elements().contains(alpha[a]))
    {
        return Some(BrwFrmFailure::CompactNotPreserved { a });
    }
    let (ld, lemb) = compact_dual(l).expect("Brouwerian frame");
    let (md, memb) = compact_dual(m).expect("Brouwerian frame");
    let pos = |emb: &[usize], x: usize| emb.iter().position(|&e| e == x).expect("compact");
    for i in 0..lemb.len() {
        for j in 0..lemb.len() {
            let lhs = alpha[lemb[ld.heyting_implication(i, j).expect("Brouwerian")]];
            let (ai, aj) = (pos(&memb, alpha[lemb[i]]), pos(&memb, alpha[lemb[j]]));
            let rhs = memb[md.heyting_implication(ai, aj).expect("Brouwerian")];
            if lhs != rhs {
                return Some(BrwFrmFailure::Implication {
                    a: lemb[i],
                    b: lemb[j],
                });
            }
        }
    }
    None
}

pub fn is_brwfrm_morphism(l: &FrameView, m: &FrameView, alpha: &[usize]) -> bool {
    brwfrm_failure(l, m, alpha).is_none()
}

/// `r(b) = ⋁{a : α(a) <= b}`, checked to satisfy `α(a) <= b` iff `a <= r(b)`.
pub fn right_adjoint(l: &FinLattice, m: &FinLattice, alpha: &[usize]) -> Result<Vec<usize>> {
    let r: Vec<usize> = (0..m.size())
        .map(|b| l.join_all((0..l.size()).filter(|&a| m.leq(alpha[a], b)).collect()))
        .collect();
    for a in 0..l.size() {
        for b in 0..m.size() {
            if m.leq(alpha[a], b) != l.leq(a, r[b]) {
                return Err(crate::error::malformed(
                    "right adjoint",
                    format!("adjunction fails at a={a}, b={b}"),
                ));
            }
        }
    }
    Ok(r)
}

/// Replays, for each pseudoprime `p` and each `a, b ≰ p`, the argument that
/// `a ∧ b ≰ p` in an arithmetic frame: pick compact `k <= a`, `l <= b`
/// outside `↓p`; `k ∧ l` is compact, so `a ∧ b <= p` would give
/// `k ∧ l ≪ p` and then `k <= p` or `l <= p`. Reports the first step that
/// fails, or the pseudoprime that is not prime.
pub fn arithmetic_primality(l: &FrameView) -> std::result::Result<(), String> {
    let b = l.base();
    let k = l.compact_elements();
    let n = b.size();
    for p in pseudoprime_elements(l) {
        for x in (0..n).filter(|&x| !b.leq(x, p)) {
            for y in (0..n).filter(|&y| !b.leq(y, p)) {
                let pick = |z: usize| k.iter().find(|&c| b.leq(c, z) && !b.leq(c, p));
                let (Some(kx), Some(ly)) = (pick(x), pick(y)) else {
                    return Err(format!("no compact below {x} or {y} outside ↓{p}"));
                };
                let kl = b.meet(kx, ly);
                if !k.contains(kl) {
                    return Err(format!("{kx} ∧ {ly} is not compact"));
                }
                if b.leq(b.meet(x, y), p) {
                    if !l.way_below(kl, p) {
                        return Err(format!("{kl} <= {p} compact but not way below"));
                    }
                    return Err(format!("pseudoprime {p} is not prime: {x} ∧ {y} <= {p}"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{all_homs, Signature};
    use crate::lattice::distributive_lattices_upto;

    fn fv(l: FinLattice) -> FrameView {
        FrameView::new(l).unwrap()
    }

    #[test]
    fn filter_frames_of_small_views() {
        let c2 = filter_frame(&MeetSemilatticeView::new(FinLattice::chain(2))).unwrap();
        assert_eq!(c2.size(), 2);
        let d2 = filter_frame(&MeetSemilatticeView::new(FinLattice::boolean(2))).unwrap();
        assert_eq!(d2.size(), 4);
        for a in 0..4 {
            assert_eq!(
                d2.filters.sets[d2.principal(a)],
                FinLattice::boolean(2).principal_filter(a)
            );
        }
        d2.k_dual_iso().unwrap();
        let id = AlgHom::identity(&FinLattice::boolean(2));
        assert_eq!(f_of_hom(&id, &d2, &d2).unwrap(), (0..4).collect::<Vec<_>>());
    }

    #[test]
    fn primes_of_a_chain() {
        let c3 = fv(FinLattice::chain(3));
        assert_eq!(prime_elements(&c3), Subset::from_indices([0, 1]));
        assert_eq!(pseudoprime_elements(&c3), prime_elements(&c3));
        let one = y_space(&fv(FinLattice::chain(1))).unwrap();
        assert_eq!(one.elements, vec![0]);
    }

    #[test]
    fn pseudoprimes_are_primes_and_match_pseudopoints() {
        for l in distributive_lattices_upto(8).unwrap() {
            let f = fv(l.lattice.clone());
            let pp = pseudoprime_elements(&f);
            assert_eq!(pp, prime_elements(&f));
            let b = f.base();
            let pts = pseudopoints(&f).unwrap();
            let via: Subset = pts
                .iter()
                .map(|&u| b.join_all(u.complement(b.size())))
                .collect();
            assert_eq!(pts.len(), pp.len());
            assert_eq!(via, pp);
            assert!(is_brouwerian_frame(&f) && is_arithmetic(&f));
            arithmetic_primality(&f).unwrap();
        }
    }

    #[test]
    fn y_spaces_are_generalized_esakia() {
        for l in distributive_lattices_upto(6).unwrap() {
            let y = y_space(&fv(l.lattice)).unwrap();
            assert_eq!(y.space.pgps_failures(), vec![]);
            assert!(y.space.validate_pges());
            // Every point but the top is prime, so the space is pointed Esakia.
            assert_eq!(y.space.x0(), y.space.carrier().without(y.space.m()));
            assert!(y.space.is_esakia());
        }
    }

    #[test]
    fn right_adjoint_of_identity_and_of_filter_maps() {
        let l = FinLattice::boolean(2);
        assert_eq!(
            right_adjoint(&l, &l, &[0, 1, 2, 3]).unwrap(),
            vec![0, 1, 2, 3]
        );
        let c3 = FinLattice::chain(3);
        let (fa, fb) = (
            filter_frame(&MeetSemilatticeView::new(c3.clone())).unwrap(),
            filter_frame(&MeetSemilatticeView::new(l.clone())).unwrap(),
        );
        for h in all_homs(&c3, &l, Signature::MeetSemilattice) {
            let alpha = f_of_hom(&h, &fa, &fb).unwrap();
            let r = right_adjoint(fa.lattice(), fb.lattice(), &alpha).unwrap();
            // r(G) is the preimage filter h⁻¹(G).
            for (g, &set) in fb.filters.sets.iter().enumerate() {
                let pre: Subset = (0..c3.size())
                    .filter(|&a| set.contains(h.apply(a)))
                    .collect();
                assert_eq!(fa.filters.sets[r[g]], pre);
            }
        }
    }

    #[test]
    fn filter_maps_are_brouwerian_frame_morphisms_iff_implication_is_preserved() {
        let lats = distributive_lattices_upto(5).unwrap();
        for a in &lats {
            for b in &lats {
                let (fa, fb) = (
                    filter_frame(&MeetSemilatticeView::new(a.lattice.clone())).unwrap(),
                    filter_frame(&MeetSemilatticeView::new(b.lattice.clone())).unwrap(),
                );
                let (la, lb) = (fa.frame().unwrap(), fb.frame().unwrap());
                for h in all_homs(&a.lattice, &b.lattice, Signature::MeetSemilattice) {
                    let alpha = f_of_hom(&h, &fa, &fb).unwrap();
                    let frame_hom = frame_hom_violation(la.base(), lb.base(), &alpha).is_none();
                    assert_eq!(frame_hom, super::super::maps::is_dms_p(&h), "{:?}", h.map);
                    if frame_hom {
                        assert_eq!(
                            is_brwfrm_morphism(&la, &lb, &alpha),
                            h.is_brw_semilattice_hom()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn dropping_implication_is_detected() {
        // Lattice homs C3 -> C2 that drop implication give frame maps that
        // fail exactly on implication.
        let c3 = FinLattice::chain(3);
        let c2 = FinLattice::chain(2);
        let (fa, fb) = (
            filter_frame(&MeetSemilatticeView::new(c3.clone())).unwrap(),
            filter_frame(&MeetSemilatticeView::new(c2.clone())).unwrap(),
        );
        let (la, lb) = (fa.frame().unwrap(), fb.frame().unwrap());
        let mut found = false;
        for h in all_homs(&c3, &c2, Signature::DistributiveLattice) {
            let alpha = f_of_hom(&h, &fa, &fb).unwrap();
            if !h.is_brw_semilattice_hom() {
                found = true;
                assert!(matches!(
                    brwfrm_failure(&la, &lb, &alpha),
                    Some(BrwFrmFailure::Implication { .. })
                ));
            }
        }
        assert!(found);
    }
}
