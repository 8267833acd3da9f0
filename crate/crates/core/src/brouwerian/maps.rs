//! Point maps between pointed generalized spaces, and the homomorphisms they
//! dualize.

use std::sync::Arc;

use serde::Serialize;

use super::space::{prime_filters_ms, PointedGenSpace, Spectrum};
use crate::error::{Error, Result};
use crate::hom::AlgHom;
use crate::lattice::MeetSemilatticeView;
use crate::subset::Subset;

/// Why a meet-semilattice map is not a morphism of distributive
/// meet-semilattices preserving joins and primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "fails", rename_all = "snake_case")]
pub enum DmsPFailure {
    NotMeetHom,
    Join {
        a: usize,
        b: usize,
    },
    /// The preimage of this prime filter of the codomain is not prime.
    PrimePreimage {
        prime: Subset,
        preimage: Subset,
    },
}

/// A meet-semilattice homomorphism preserving binary joins and pulling prime
/// filters back to prime filters. Every pair has a join in a finite
/// semilattice with top; the empty join is not demanded separately, because
/// pulling back a proper prime filter already forces `h(0)` out of it.
pub fn dms_p_failure(h: &AlgHom) -> Option<DmsPFailure> {
    if !h.is_ms_hom() {
        return Some(DmsPFailure::NotMeetHom);
    }
    let (a, b) = (&h.dom, &h.cod);
    for x in 0..a.size() {
        for y in 0..a.size() {
            if h.apply(a.join(x, y)) != b.join(h.apply(x), h.apply(y)) {
                return Some(DmsPFailure::Join { a: x, b: y });
            }
        }
    }
    let pa = prime_filters_ms(&MeetSemilatticeView::new(a.clone())).unwrap_or_default();
    let pb = prime_filters_ms(&MeetSemilatticeView::new(b.clone())).unwrap_or_default();
    for &p in &pb {
        let pre: Subset = (0..a.size()).filter(|&x| p.contains(h.apply(x))).collect();
        if !pa.contains(&pre) {
            return Some(DmsPFailure::PrimePreimage {
                prime: p,
                preimage: pre,
            });
        }
    }
    None
}

pub fn is_dms_p(h: &AlgHom) -> bool {
    dms_p_failure(h).is_none()
}

/// A total map between the carriers of two pointed generalized spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedMap {
    dom: Arc<PointedGenSpace>,
    cod: Arc<PointedGenSpace>,
    map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "fails", rename_all = "snake_case")]
pub enum MapFailure {
    NotMonotone {
        x: usize,
        y: usize,
    },
    /// The preimage of an admissible is not admissible.
    PreimageNotAdmissible {
        u: Subset,
        preimage: Subset,
    },
    /// `x ∈ X0` lands outside `Y0`.
    LeavesX0 {
        x: usize,
    },
    /// `f(x) <= y ∈ Y0` without `z ∈ X0` above `x` having `f(z) = y`.
    NoLift {
        x: usize,
        y: usize,
    },
    NotContinuous {
        open: Subset,
    },
    /// `f(x) <= y` without any `z >= x` having `f(z) = y`.
    NotEsakia {
        x: usize,
        y: usize,
    },
    /// The preimage of the top of the codomain is more than the top.
    TopPreimage {
        preimage: Subset,
    },
    NotPointedEsakiaSpace,
}

impl PointedMap {
    pub fn new(
        dom: Arc<PointedGenSpace>,
        cod: Arc<PointedGenSpace>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != dom.size() {
            return Err(crate::error::malformed(
                "map",
                format!("{} entries for a domain of size {}", map.len(), dom.size()),
            ));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= cod.size()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                size: cod.size(),
            });
        }
        Ok(PointedMap { dom, cod, map })
    }

    pub fn dom(&self) -> &Arc<PointedGenSpace> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<PointedGenSpace> {
        &self.cod
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn preimage(&self, u: Subset) -> Subset {
        (0..self.map.len())
            .filter(|&x| u.contains(self.map[x]))
            .collect()
    }

    fn monotone_failure(&self) -> Option<MapFailure> {
        let (x, y) = (self.dom.order(), self.cod.order());
        for a in 0..x.size() {
            for b in x.up_of(a) {
                if !y.leq(self.map[a], self.map[b]) {
                    return Some(MapFailure::NotMonotone { x: a, y: b });
                }
            }
        }
        None
    }

    pub fn pgps_p_failure(&self) -> Option<MapFailure> {
        if let Some(f) = self.monotone_failure() {
            return Some(f);
        }
        for &u in self.cod.admissibles() {
            let pre = self.preimage(u);
            if !self.dom.is_admissible_clopen_upset(pre) {
                return Some(MapFailure::PreimageNotAdmissible { u, preimage: pre });
            }
        }
        self.dom
            .x0()
            .iter()
            .find(|&x| !self.cod.x0().contains(self.map[x]))
            .map(|x| MapFailure::LeavesX0 { x })
    }

    pub fn is_pgps_p_map(&self) -> bool {
        self.pgps_p_failure().is_none()
    }

    pub fn pges_p_failure(&self) -> Option<MapFailure> {
        if let Some(f) = self.pgps_p_failure() {
            return Some(f);
        }
        let (dx, cy) = (self.dom.as_ref(), self.cod.as_ref());
        for x in 0..dx.size() {
            for y in cy.x0().intersection(cy.order().up_of(self.map[x])) {
                if !dx
                    .x0()
                    .iter()
                    .any(|z| dx.order().leq(x, z) && self.map[z] == y)
                {
                    return Some(MapFailure::NoLift { x, y });
                }
            }
        }
        None
    }

    pub fn is_pges_p_map(&self) -> bool {
        self.pges_p_failure().is_none()
    }

    /// Preimages of admissibles commute with implication on admissibles.
    pub fn preserves_admissible_implication(&self) -> bool {
        let adm = self.cod.admissibles();
        adm.iter().all(|&u| {
            adm.iter().all(|&v| {
                let lhs = self
                    .cod
                    .admissible_implication(u, v)
                    .map(|w| self.preimage(w));
                let rhs = self
                    .dom
                    .admissible_implication(self.preimage(u), self.preimage(v));
                lhs.is_some() && lhs == rhs
            })
        })
    }

    /// An Esakia morphism between pointed Esakia spaces with
    /// `f⁻¹(n) = {m}`.
    pub fn pes_p_failure(&self) -> Option<MapFailure> {
        if !self.dom.is_esakia() || !self.cod.is_esakia() {
            return Some(MapFailure::NotPointedEsakiaSpace);
        }
        if let Some(f) = self.monotone_failure() {
            return Some(f);
        }
        let (dx, cy) = (self.dom.as_ref(), self.cod.as_ref());
        for open in cy.topology().opens().unwrap_or_default() {
            if !dx.topology().is_open(self.preimage(open)) {
                return Some(MapFailure::NotContinuous { open });
            }
        }
        for x in 0..dx.size() {
            for y in cy.order().up_of(self.map[x]) {
                if !dx.order().up_of(x).iter().any(|z| self.map[z] == y) {
                    return Some(MapFailure::NotEsakia { x, y });
                }
            }
        }
        let top = self.preimage(Subset::singleton(cy.m()));
        if top != Subset::singleton(dx.m()) {
            return Some(MapFailure::TopPreimage { preimage: top });
        }
        None
    }

    pub fn is_pes_p_map(&self) -> bool {
        self.pes_p_failure().is_none()
    }
}

/// The point map `X_B -> X_A`, `x ↦ h⁻¹(x)`, dual to a morphism `h : A -> B`
/// preserving joins and primes. Errors if some preimage is not a point.
pub fn dual_map(h: &AlgHom, xb: &Spectrum, xa: &Spectrum) -> Result<PointedMap> {
    if h.dom != *xa.algebra.base() || h.cod != *xb.algebra.base() {
        return Err(Error::Mismatch);
    }
    let map = xb
        .points
        .iter()
        .map(|&x| {
            let pre: Subset = (0..h.dom.size())
                .filter(|&a| x.contains(h.apply(a)))
                .collect();
            xa.index_of(pre).ok_or_else(|| {
                crate::error::malformed("dual map", format!("{pre:?} is not a point"))
            })
        })
        .collect::<Result<_>>()?;
    PointedMap::new(xb.space.clone(), xa.space.clone(), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brouwerian::space::pointed_spectrum;
    use crate::lattice::FinLattice;

    #[test]
    fn dms_p_examples() {
        let c2 = FinLattice::chain(2);
        let c3 = FinLattice::chain(3);
        assert!(is_dms_p(&AlgHom::identity(&c3)));
        let h = AlgHom::new(c2, c3, vec![1, 2]).unwrap();
        assert!(h.is_brw_algebra_hom());
        assert!(matches!(
            dms_p_failure(&h),
            Some(DmsPFailure::PrimePreimage { .. })
        ));
    }

    #[test]
    fn identity_maps_pass_everything() {
        for l in [FinLattice::chain(3), FinLattice::boolean(2)] {
            let x = pointed_spectrum(&MeetSemilatticeView::new(l)).unwrap();
            let id = PointedMap::new(
                x.space.clone(),
                x.space.clone(),
                (0..x.space.size()).collect(),
            )
            .unwrap();
            assert!(id.is_pgps_p_map());
            assert!(id.is_pges_p_map());
            assert!(id.is_pes_p_map());
            assert!(id.preserves_admissible_implication());
        }
    }

    #[test]
    fn collapsing_onto_the_top_is_not_pointed() {
        let x = pointed_spectrum(&MeetSemilatticeView::new(FinLattice::chain(3))).unwrap();
        let sp = &x.space;
        let f = PointedMap::new(sp.clone(), sp.clone(), vec![sp.m(); sp.size()]).unwrap();
        assert!(matches!(
            f.pes_p_failure(),
            Some(MapFailure::TopPreimage { .. })
        ));
    }
}
