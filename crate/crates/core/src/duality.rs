//! Priestley and Esakia duality at finite scale: prime filter spectra, the
//! Stone map, ideal frames, points, and the three-way triangle.
//!
//! Finite spaces carry the discrete topology, so closure and interior are
//! identities and the spectral closure is `↓`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::AlgHom;
use crate::lattice::{upset_lattice, FinLattice, SetLattice};
use crate::poset::{FinPoset, PosetMap};
use crate::subset::Subset;

/// Nonempty, up-closed, meet-closed, proper, and prime. Checked literally.
pub fn is_prime_filter(l: &FinLattice, s: Subset) -> bool {
    if s.is_empty() || s == l.carrier() || !l.order().is_upset(s) {
        return false;
    }
    for a in s.iter() {
        for b in s.iter() {
            if !s.contains(l.meet(a, b)) {
                return false;
            }
        }
    }
    let n = l.size();
    (0..n).all(|a| (0..n).all(|b| !s.contains(l.join(a, b)) || s.contains(a) || s.contains(b)))
}

/// Nonempty, up-closed and meet-closed.
pub fn is_filter(l: &FinLattice, s: Subset) -> bool {
    !s.is_empty()
        && l.order().is_upset(s)
        && s.iter().all(|a| s.iter().all(|b| s.contains(l.meet(a, b))))
}

/// Nonempty, down-closed and join-closed.
pub fn is_ideal(l: &FinLattice, s: Subset) -> bool {
    !s.is_empty()
        && l.order().is_downset(s)
        && s.iter().all(|a| s.iter().all(|b| s.contains(l.join(a, b))))
}

fn require_distributive(l: &FinLattice) -> Result<()> {
    match l.distributivity_violation() {
        Some((x, y, z)) => Err(Error::NotDistributive { x, y, z }),
        None => Ok(()),
    }
}

/// The prime filters of a finite distributive lattice ordered by inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFilterSpace {
    pub base: FinLattice,
    pub filters: Vec<Subset>,
    pub order: FinPoset,
}

impl PrimeFilterSpace {
    pub fn size(&self) -> usize {
        self.filters.len()
    }

    pub fn index_of(&self, f: Subset) -> Option<usize> {
        self.filters.iter().position(|&g| g == f)
    }

    /// `φ(a)`: the filters containing `a`.
    pub fn stone_map(&self, a: usize) -> Subset {
        (0..self.size())
            .filter(|&i| self.filters[i].contains(a))
            .collect()
    }
}

pub fn prime_filters(l: &FinLattice) -> Result<PrimeFilterSpace> {
    require_distributive(l)?;
    // Finite filters are principal.
    let filters: Vec<Subset> = (0..l.size())
        .map(|a| l.principal_filter(a))
        .filter(|&f| is_prime_filter(l, f))
        .collect();
    let order = FinPoset::from_fn(filters.len(), |i, j| filters[i].is_subset(filters[j]))?;
    Ok(PrimeFilterSpace {
        base: l.clone(),
        filters,
        order,
    })
}

/// Clopen upsets of a finite discrete poset: all of its upsets.
pub fn clopup(x: &FinPoset) -> Result<SetLattice> {
    upset_lattice(x)
}

/// `U → V = X ∖ ↓(U ∖ V)`.
pub fn clopup_implication(x: &FinPoset, u: Subset, v: Subset) -> Result<Subset> {
    for s in [u, v] {
        if !x.is_upset(s) {
            return Err(crate::error::malformed(
                "implication",
                format!("{s:?} is not an upset"),
            ));
        }
    }
    Ok(x.down_set(u.difference(v))?.complement(x.size()))
}

/// `pf(h) = h⁻¹ : pf(B) -> pf(A)`.
pub fn dual_of_hom(h: &AlgHom) -> Result<(PrimeFilterSpace, PrimeFilterSpace, PosetMap)> {
    if !h.is_dl_hom() {
        return Err(Error::NotAHomomorphism {
            kind: "bounded lattice",
        });
    }
    let xa = prime_filters(&h.dom)?;
    let xb = prime_filters(&h.cod)?;
    let mut assignment = Vec::with_capacity(xb.size());
    for &f in &xb.filters {
        let pre: Subset = (0..h.dom.size())
            .filter(|&a| f.contains(h.apply(a)))
            .collect();
        let i = xa.index_of(pre).ok_or(Error::NotAHomomorphism {
            kind: "bounded lattice",
        })?;
        assignment.push(i);
    }
    let map = PosetMap::new(xb.order.clone(), xa.order.clone(), assignment)?;
    debug_assert!(map.is_order_preserving());
    Ok((xa, xb, map))
}

/// `f⁻¹ : ClopUp(Y) -> ClopUp(X)` for an order-preserving `f : X -> Y`.
pub fn preimage_hom(f: &PosetMap) -> Result<(SetLattice, SetLattice, AlgHom)> {
    if let Some((a, b)) = f.order_violation() {
        return Err(crate::error::malformed(
            "map",
            format!("not order-preserving at {a} <= {b}"),
        ));
    }
    let cx = clopup(&f.dom)?;
    let cy = clopup(&f.cod)?;
    let map = cy
        .sets
        .iter()
        .map(|&u| cx.index_of(f.preimage(u)).expect("preimage of an upset"))
        .collect();
    let h = AlgHom::new(cy.lattice.clone(), cx.lattice.clone(), map)?;
    Ok((cx, cy, h))
}

/// All ideals of `l` as subsets of its carrier.
pub fn ideals_of(l: &FinLattice) -> Result<Vec<Subset>> {
    Ok(l.order()
        .all_downsets()?
        .into_iter()
        .filter(|&d| is_ideal(l, d))
        .collect())
}

/// The frame `J(A)` of ideals. `principal[a]` indexes `↓a`.
#[derive(Clone, Debug)]
pub struct IdealFrame {
    pub base: FinLattice,
    pub ideals: SetLattice,
    pub principal: Vec<usize>,
}

pub fn ideal_frame(a: &FinLattice) -> Result<IdealFrame> {
    let ideals = SetLattice::from_family(ideals_of(a)?)?;
    let principal = (0..a.size())
        .map(|x| {
            ideals
                .index_of(a.principal_ideal(x))
                .expect("principal ideals are ideals")
        })
        .collect::<Vec<_>>();
    // Every ideal of a finite lattice is principal.
    let mut hit = vec![false; ideals.size()];
    for &i in &principal {
        hit[i] = true;
    }
    debug_assert!(hit.iter().all(|&h| h));
    Ok(IdealFrame {
        base: a.clone(),
        ideals,
        principal,
    })
}

impl IdealFrame {
    pub fn size(&self) -> usize {
        self.ideals.size()
    }

    /// `I → J = {a : a ∧ b ∈ J for all b ∈ I}`, returned as an index into
    /// the frame.
    pub fn implication(&self, i: usize, j: usize) -> Result<usize> {
        let a = &self.base;
        let (si, sj) = (self.ideals.sets[i], self.ideals.sets[j]);
        let e: Subset = (0..a.size())
            .filter(|&x| si.iter().all(|b| sj.contains(a.meet(x, b))))
            .collect();
        self.ideals
            .index_of(e)
            .ok_or_else(|| crate::error::malformed("ideal implication", "result is not an ideal"))
    }
}

/// `h*(I) = ↓h[I]`, as a map of ideal indices.
pub fn h_star(h: &AlgHom, ja: &IdealFrame, jb: &IdealFrame) -> Result<Vec<usize>> {
    if !h.is_dl_hom() {
        return Err(Error::NotAHomomorphism {
            kind: "bounded lattice",
        });
    }
    ja.ideals
        .sets
        .iter()
        .map(|&i| {
            let img: Subset = i.iter().map(|x| h.apply(x)).collect();
            let d = h.cod.order().down_set(img)?;
            jb.ideals
                .index_of(d)
                .ok_or_else(|| crate::error::malformed("h*", "image is not an ideal"))
        })
        .collect()
}

/// Preserves finite meets (with top) and all joins (with bottom). In a finite
/// lattice every join is an iterated binary join.
pub fn frame_hom_violation(l: &FinLattice, m: &FinLattice, map: &[usize]) -> Option<String> {
    if map[l.top()] != m.top() {
        return Some("top not preserved".into());
    }
    if map[l.bottom()] != m.bottom() {
        return Some("bottom not preserved".into());
    }
    for a in 0..l.size() {
        for b in 0..l.size() {
            if map[l.meet(a, b)] != m.meet(map[a], map[b]) {
                return Some(format!("meet of {a}, {b} not preserved"));
            }
            if map[l.join(a, b)] != m.join(map[a], map[b]) {
                return Some(format!("join of {a}, {b} not preserved"));
            }
        }
    }
    None
}

/// A finite distributive lattice read as a frame. Finite distributive
/// lattices satisfy the infinite distributive law, since every join is finite.
#[derive(Clone, Debug)]
pub struct FrameView {
    base: FinLattice,
    ideals: Vec<Subset>,
    compact: Subset,
}

impl FrameView {
    pub fn new(base: FinLattice) -> Result<FrameView> {
        require_distributive(&base)?;
        let ideals = ideals_of(&base)?;
        let mut fv = FrameView {
            base,
            ideals,
            compact: Subset::EMPTY,
        };
        fv.compact = (0..fv.base.size())
            .filter(|&a| fv.way_below(a, a))
            .collect();
        debug_assert_eq!(fv.compact, fv.base.carrier());
        Ok(fv)
    }

    pub fn base(&self) -> &FinLattice {
        &self.base
    }

    /// `a ≪ b`: every ideal whose join is above `b` contains `a`. Ideals are
    /// exactly the directed downsets, which suffice for the definition.
    pub fn way_below(&self, a: usize, b: usize) -> bool {
        let l = &self.base;
        self.ideals
            .iter()
            .filter(|&&i| l.leq(b, l.join_all(i)))
            .all(|i| i.contains(a))
    }

    pub fn compact_elements(&self) -> Subset {
        self.compact
    }

    /// `K(L)` with the embedding `position -> element of L`.
    pub fn compact_lattice(&self) -> Result<(FinLattice, Vec<usize>)> {
        let elems = self.compact.to_vec();
        let l = &self.base;
        for &a in &elems {
            for &b in &elems {
                if !self.compact.contains(l.meet(a, b)) || !self.compact.contains(l.join(a, b)) {
                    return Err(crate::error::malformed(
                        "frame",
                        "compact elements do not form a bounded sublattice",
                    ));
                }
            }
        }
        let k = FinLattice::from_poset(l.order().restrict(self.compact))?;
        Ok((k, elems))
    }

    /// Completely prime filters. At finite scale a filter is completely prime
    /// iff it omits the bottom and is prime for binary joins.
    pub fn points(&self) -> Vec<Subset> {
        let l = &self.base;
        (0..l.size())
            .map(|a| l.principal_filter(a))
            .filter(|&f| is_prime_filter(l, f))
            .collect()
    }

    /// The bijection `P ↦ P ∩ K(L)` from points onto the prime filters of
    /// `K(L)`, as indices into [`FrameView::points`] and the spectrum of the
    /// compact lattice. Verified to be an order isomorphism with inverse
    /// `F ↦ ↑F`.
    pub fn pt_pf_iso(&self) -> Result<(PrimeFilterSpace, Vec<usize>)> {
        let (k, emb) = self.compact_lattice()?;
        let pf = prime_filters(&k)?;
        let pts = self.points();
        let mut iso = Vec::with_capacity(pts.len());
        for &p in &pts {
            let restricted: Subset = (0..emb.len()).filter(|&i| p.contains(emb[i])).collect();
            let j = pf
                .index_of(restricted)
                .ok_or_else(|| crate::error::malformed("pt", "restriction is not prime"))?;
            let back = self
                .base
                .order()
                .up_set(restricted.iter().map(|i| emb[i]).collect())?;
            if back != p {
                return Err(crate::error::malformed(
                    "pt",
                    "inverse does not recover the point",
                ));
            }
            iso.push(j);
        }
        let pts_order = FinPoset::from_fn(pts.len(), |i, j| pts[i].is_subset(pts[j]))?;
        if !pts_order.is_isomorphism(&pf.order, &iso) {
            return Err(crate::error::malformed("pt", "not an order isomorphism"));
        }
        Ok((pf, iso))
    }

    /// `K(L)` is a Heyting subalgebra of `L`. Decided two ways: closure of
    /// `K(L)` under the implication of `L`, and the bounded sublattice `K(L)`
    /// being a Heyting algebra in its own right. The routes must agree.
    pub fn is_heyting_frame(&self) -> Result<bool> {
        let l = &self.base;
        let closed = self.compact.iter().all(|a| {
            self.compact.iter().all(|b| {
                l.heyting_implication(a, b)
                    .map(|c| self.compact.contains(c))
                    .unwrap_or(false)
            })
        });
        let (k, _) = self.compact_lattice()?;
        let intrinsic = k.is_heyting_algebra();
        assert_eq!(closed, intrinsic, "Heyting frame routes disagree");
        Ok(closed)
    }

    /// A pair `a ≰ b` with no `c` such that `a ∨ c = 1` and `b ∨ c != 1`.
    pub fn subfit_violation(&self) -> Option<(usize, usize)> {
        let l = &self.base;
        let n = l.size();
        for a in 0..n {
            for b in 0..n {
                if l.leq(a, b) {
                    continue;
                }
                let ok = (0..n).any(|c| l.join(a, c) == l.top() && l.join(b, c) != l.top());
                if !ok {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_subfit(&self) -> bool {
        self.subfit_violation().is_none()
    }
}

/// Order isomorphism between two lattices given as a bijection.
pub fn is_lattice_iso(a: &FinLattice, b: &FinLattice, map: &[usize]) -> bool {
    a.order().is_isomorphism(b.order(), map)
}

/// One leg of the triangle or one naturality square.
#[derive(Clone, Debug, Serialize)]
pub struct Leg {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleReport {
    pub legs: Vec<Leg>,
}

impl TriangleReport {
    pub fn passed(&self) -> bool {
        self.legs.iter().all(|l| l.pass)
    }

    pub(crate) fn push(
        &mut self,
        name: impl Into<String>,
        outcome: std::result::Result<(), String>,
    ) {
        let (pass, detail) = match outcome {
            Ok(()) => (true, String::new()),
            Err(e) => (false, e),
        };
        self.legs.push(Leg {
            name: name.into(),
            pass,
            detail,
        });
    }
}

/// The data each lattice contributes to the triangle.
struct Corner {
    j: IdealFrame,
    pf: PrimeFilterSpace,
    /// `a ↦` position of `↓a` in `K(J(A))`.
    k_iso: Vec<usize>,
    k_emb: Vec<usize>,
    /// point index `↦` prime filter index of `A`.
    pt_iso: Vec<usize>,
    points: Vec<Subset>,
    up: SetLattice,
}

fn corner(a: &FinLattice) -> std::result::Result<Corner, String> {
    let j = ideal_frame(a).map_err(|e| e.to_string())?;
    let frame = FrameView::new(j.ideals.lattice.clone()).map_err(|e| e.to_string())?;
    let (k, k_emb) = frame.compact_lattice().map_err(|e| e.to_string())?;
    let k_iso: Vec<usize> = j
        .principal
        .iter()
        .map(|&ix| k_emb.iter().position(|&e| e == ix).ok_or("↓a not compact"))
        .collect::<std::result::Result<_, _>>()?;
    if !is_lattice_iso(a, &k, &k_iso) {
        return Err("a ↦ ↓a is not an isomorphism onto K(J(A))".into());
    }
    let pf = prime_filters(a).map_err(|e| e.to_string())?;
    let points = frame.points();
    // P ↦ {a : ↓a ∈ P}.
    let mut pt_iso = Vec::new();
    for &p in &points {
        let f: Subset = (0..a.size())
            .filter(|&x| p.contains(j.principal[x]))
            .collect();
        pt_iso.push(
            pf.index_of(f)
                .ok_or(format!("point {p:?} restricts to a non-prime {f:?}"))?,
        );
    }
    let pt_order = FinPoset::from_fn(points.len(), |x, y| points[x].is_subset(points[y]))
        .map_err(|e| e.to_string())?;
    if !pt_order.is_isomorphism(&pf.order, &pt_iso) {
        return Err("pt(J(A)) -> pf(A) is not an order isomorphism".into());
    }
    frame.pt_pf_iso().map_err(|e| e.to_string())?;
    let up = clopup(&pf.order).map_err(|e| e.to_string())?;
    Ok(Corner {
        j,
        pf,
        k_iso,
        k_emb,
        pt_iso,
        points,
        up,
    })
}

/// Checks `K(J(A)) ≅ A`, `pt(J(A)) ≅ pf(A)` and `ClopUp(pf(A)) ≅ A`, and the
/// naturality square of each leg for every hom out of `A` in `homs`.
pub fn check_triangle_dl(a: &FinLattice, homs: &[AlgHom]) -> TriangleReport {
    let mut report = TriangleReport { legs: Vec::new() };
    let ca = match corner(a) {
        Ok(c) => c,
        Err(e) => {
            report.push("objects", Err(e));
            return report;
        }
    };
    report.push("K(J(A)) ≅ A", Ok(()));
    report.push("pt(J(A)) ≅ pf(A)", Ok(()));
    let stone: Vec<usize> = (0..a.size())
        .map(|x| ca.up.index_of(ca.pf.stone_map(x)).unwrap_or(usize::MAX))
        .collect();
    report.push(
        "ClopUp(pf(A)) ≅ A",
        if stone.contains(&usize::MAX) || !is_lattice_iso(a, &ca.up.lattice, &stone) {
            Err(format!("Stone map {stone:?} is not an isomorphism"))
        } else {
            Ok(())
        },
    );
    for (n, h) in homs.iter().enumerate() {
        if &h.dom != a {
            report.push(format!("hom {n}"), Err("domain differs from A".into()));
            continue;
        }
        report.push(format!("hom {n}: naturality"), naturality(&ca, h));
    }
    report
}

fn naturality(ca: &Corner, h: &AlgHom) -> std::result::Result<(), String> {
    let cb = corner(&h.cod)?;
    let hs = h_star(h, &ca.j, &cb.j).map_err(|e| e.to_string())?;
    frame_hom_violation(&ca.j.ideals.lattice, &cb.j.ideals.lattice, &hs)
        .map_or(Ok(()), |v| Err(format!("h* is not a frame hom: {v}")))?;
    // K leg: h*(↓a) = ↓h(a).
    for x in 0..h.dom.size() {
        let lhs = hs[ca.j.principal[x]];
        let rhs = cb.j.principal[h.apply(x)];
        if lhs != rhs {
            return Err(format!("K square fails at {x}"));
        }
        debug_assert_eq!(cb.k_emb[cb.k_iso[h.apply(x)]], rhs);
    }
    let (_, _, pfh) = dual_of_hom(h).map_err(|e| e.to_string())?;
    // pt leg: (h*)⁻¹ on points, then into pf(A), equals pf(h) after pt ≅ pf on B.
    for (q, &p) in cb.points.iter().enumerate() {
        let pre: Subset = (0..ca.j.size()).filter(|&i| p.contains(hs[i])).collect();
        let pi = ca
            .points
            .iter()
            .position(|&r| r == pre)
            .ok_or(format!("(h*)⁻¹ of point {q} is not a point"))?;
        if ca.pt_iso[pi] != pfh.apply(cb.pt_iso[q]) {
            return Err(format!("pt square fails at point {q}"));
        }
    }
    // ClopUp leg: pf(h)⁻¹(φ_A(a)) = φ_B(h(a)).
    for x in 0..h.dom.size() {
        if pfh.preimage(ca.pf.stone_map(x)) != cb.pf.stone_map(h.apply(x)) {
            return Err(format!("ClopUp square fails at {x}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{all_homs, Signature};
    use crate::lattice::downset_lattice;
    use crate::subset::subsets_of;

    fn d2() -> FinLattice {
        FinLattice::from_poset(FinPoset::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap())
            .unwrap()
    }

    fn s(ix: &[usize]) -> Subset {
        Subset::from_indices(ix.iter().copied())
    }

    #[test]
    fn prime_filters_match_subset_oracle() {
        for l in crate::lattice::enumerate_lattices(5, true).unwrap() {
            let brute: Vec<Subset> = subsets_of(l.carrier())
                .filter(|&f| is_prime_filter(&l, f))
                .collect();
            let mut got = prime_filters(&l).unwrap().filters;
            got.sort();
            let mut brute = brute;
            brute.sort();
            assert_eq!(got, brute);
        }
        let x = prime_filters(&d2()).unwrap();
        assert_eq!(x.filters, vec![s(&[1, 3]), s(&[2, 3])]);
        assert_eq!(x.order.cover_pairs(), vec![]);
        let c3 = prime_filters(&FinLattice::chain(3)).unwrap();
        assert_eq!(c3.filters, vec![s(&[1, 2]), s(&[2])]);
        assert_eq!(c3.order.cover_pairs(), vec![(1, 0)]);
        assert_eq!(
            prime_filters(&FinLattice::chain(2)).unwrap().filters,
            vec![s(&[1])]
        );
        assert!(prime_filters(&FinLattice::m3()).is_err());
    }

    #[test]
    fn stone_map_values() {
        let x = prime_filters(&d2()).unwrap();
        assert_eq!(x.stone_map(1), s(&[0]));
        assert_eq!(x.stone_map(3), s(&[0, 1]));
        assert_eq!(x.stone_map(0), Subset::EMPTY);
    }

    #[test]
    fn clopup_examples() {
        assert_eq!(clopup(&FinPoset::antichain(2)).unwrap().size(), 4);
        assert_eq!(clopup(&FinPoset::chain(2)).unwrap().size(), 3);
        assert_eq!(clopup(&FinPoset::empty()).unwrap().size(), 1);
        let c2 = FinPoset::chain(2);
        assert_eq!(
            clopup_implication(&c2, s(&[1]), s(&[1])).unwrap(),
            s(&[0, 1])
        );
        assert_eq!(
            clopup_implication(&c2, s(&[1]), Subset::EMPTY).unwrap(),
            Subset::EMPTY
        );
        let ac = FinPoset::antichain(2);
        assert_eq!(
            clopup_implication(&ac, s(&[0]), Subset::EMPTY).unwrap(),
            s(&[1])
        );
    }

    #[test]
    fn dual_of_hom_examples() {
        let id = AlgHom::identity(&d2());
        let (_, _, m) = dual_of_hom(&id).unwrap();
        assert_eq!(m.assignment, vec![0, 1]);
        let h = AlgHom::new(FinLattice::chain(2), FinLattice::chain(3), vec![0, 2]).unwrap();
        let (_, xb, m) = dual_of_hom(&h).unwrap();
        assert_eq!(xb.size(), 2);
        assert_eq!(m.assignment, vec![0, 0]);
        // a -> 1, b -> 0: the filter ↑1 of C2 pulls back to ↑a.
        let h = AlgHom::new(d2(), FinLattice::chain(2), vec![0, 1, 0, 1]).unwrap();
        let (xa, _, m) = dual_of_hom(&h).unwrap();
        assert_eq!(xa.filters[m.apply(0)], s(&[1, 3]));
    }

    #[test]
    fn ideal_frames() {
        assert_eq!(ideal_frame(&FinLattice::chain(2)).unwrap().size(), 2);
        assert_eq!(ideal_frame(&d2()).unwrap().size(), 4);
        assert_eq!(ideal_frame(&FinLattice::chain(1)).unwrap().size(), 1);
        let c3 = ideal_frame(&FinLattice::chain(3)).unwrap();
        let r = c3.implication(c3.principal[1], c3.principal[0]).unwrap();
        assert_eq!(r, c3.principal[0]);
        let j = ideal_frame(&d2()).unwrap();
        assert_eq!(
            j.implication(j.principal[1], j.principal[2]).unwrap(),
            j.principal[2]
        );
        for i in 0..4 {
            assert_eq!(j.implication(i, i).unwrap(), j.principal[3]);
        }
    }

    #[test]
    fn h_star_examples() {
        let h = AlgHom::new(FinLattice::chain(2), FinLattice::chain(3), vec![0, 2]).unwrap();
        let ja = ideal_frame(&h.dom).unwrap();
        let jb = ideal_frame(&h.cod).unwrap();
        let hs = h_star(&h, &ja, &jb).unwrap();
        assert_eq!(hs[ja.principal[0]], jb.principal[0]);
        let h = AlgHom::new(d2(), FinLattice::chain(2), vec![0, 1, 0, 1]).unwrap();
        let ja = ideal_frame(&h.dom).unwrap();
        let jb = ideal_frame(&h.cod).unwrap();
        let hs = h_star(&h, &ja, &jb).unwrap();
        assert_eq!(hs[ja.principal[1]], jb.principal[1]);
    }

    #[test]
    fn frame_views() {
        let c3 = FrameView::new(FinLattice::chain(3)).unwrap();
        assert_eq!(c3.compact_elements(), s(&[0, 1, 2]));
        assert!(c3.way_below(1, 2));
        assert!(!c3.way_below(2, 1));
        assert_eq!(
            FrameView::new(FinLattice::chain(2)).unwrap().points().len(),
            1
        );
        assert_eq!(FrameView::new(d2()).unwrap().points().len(), 2);
        let dc2 = downset_lattice(&FinPoset::chain(2)).unwrap().lattice;
        let f = FrameView::new(dc2.clone()).unwrap();
        assert_eq!(f.points().len(), prime_filters(&dc2).unwrap().size());
        assert_eq!(f.points().len(), 2);
        f.pt_pf_iso().unwrap();
        assert!(matches!(
            FrameView::new(FinLattice::m3()),
            Err(Error::NotDistributive { .. })
        ));
        let dc3 = downset_lattice(&FinPoset::chain(3)).unwrap().lattice;
        assert!(FrameView::new(dc3).unwrap().is_heyting_frame().unwrap());
        assert!(FrameView::new(d2()).unwrap().is_subfit());
        assert!(!FrameView::new(FinLattice::chain(3)).unwrap().is_subfit());
        assert!(FrameView::new(FinLattice::chain(2)).unwrap().is_subfit());
    }

    #[test]
    fn triangles() {
        let b3 = downset_lattice(&FinPoset::antichain(3)).unwrap().lattice;
        for l in [FinLattice::chain(2), d2(), b3] {
            let homs = all_homs(&l, &FinLattice::chain(3), Signature::DistributiveLattice);
            let r = check_triangle_dl(&l, &homs);
            assert!(r.passed(), "{r:?}");
        }
    }
}
