//! Generalized Priestley and Esakia morphisms: relations between pointed
//! generalized spaces, their box operators, and `∗`-composition.

use std::sync::Arc;

use serde::Serialize;

use super::space::{PointedGenSpace, Spectrum};
use crate::error::{Error, Result};
use crate::hom::AlgHom;
use crate::subset::Subset;

/// A relation `R ⊆ X × Y`, stored as the image `R[x]` of each `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenRelation {
    dom: Arc<PointedGenSpace>,
    cod: Arc<PointedGenSpace>,
    rows: Vec<Subset>,
}

/// Why a relation is not a generalized Priestley or Esakia morphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "fails", rename_all = "snake_case")]
pub enum RelationFailure {
    /// `x` is not related to `y`, yet every admissible containing `R[x]`
    /// contains `y`.
    NotSeparated { x: usize, y: usize },
    /// `□_R U` is not admissible.
    BoxNotAdmissible { u: Subset, image: Subset },
    /// `x R y` with `y ∈ Y0`, and no `z ∈ X0` above `x` has `R[z] = ↑y`.
    NoEsakiaWitness { x: usize, y: usize },
}

impl GenRelation {
    pub fn from_rows(
        dom: Arc<PointedGenSpace>,
        cod: Arc<PointedGenSpace>,
        rows: Vec<Subset>,
    ) -> Result<Self> {
        if rows.len() != dom.size() {
            return Err(crate::error::malformed(
                "relation",
                format!("{} rows for a domain of size {}", rows.len(), dom.size()),
            ));
        }
        if let Some(r) = rows.iter().find(|r| !r.is_subset(cod.carrier())) {
            let index = r
                .difference(cod.carrier())
                .first()
                .expect("nonempty difference");
            return Err(Error::IndexOutOfRange {
                index,
                size: cod.size(),
            });
        }
        Ok(GenRelation { dom, cod, rows })
    }

    pub fn from_pairs(
        dom: Arc<PointedGenSpace>,
        cod: Arc<PointedGenSpace>,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let mut rows = vec![Subset::EMPTY; dom.size()];
        for &(x, y) in pairs {
            if x >= dom.size() {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    size: dom.size(),
                });
            }
            if y >= cod.size() {
                return Err(Error::IndexOutOfRange {
                    index: y,
                    size: cod.size(),
                });
            }
            rows[x] = rows[x].with(y);
        }
        GenRelation::from_rows(dom, cod, rows)
    }

    /// The identity morphism, which is the order `<=`: the dual relation of
    /// the identity homomorphism. The graph of the identity separates points
    /// only on antichains.
    pub fn identity(x: &Arc<PointedGenSpace>) -> Self {
        let rows = (0..x.size()).map(|i| x.order().up_of(i)).collect();
        GenRelation {
            dom: x.clone(),
            cod: x.clone(),
            rows,
        }
    }

    pub fn dom(&self) -> &Arc<PointedGenSpace> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<PointedGenSpace> {
        &self.cod
    }

    /// `R[x]`.
    pub fn image_of(&self, x: usize) -> Subset {
        self.rows[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.rows.len())
            .flat_map(|x| self.rows[x].iter().map(move |y| (x, y)))
            .collect()
    }

    /// `□_R U = {x : R[x] ⊆ U}`.
    pub fn box_r(&self, u: Subset) -> Subset {
        (0..self.rows.len())
            .filter(|&x| self.rows[x].is_subset(u))
            .collect()
    }

    pub fn gp_failure(&self) -> Option<RelationFailure> {
        let adm = self.cod.admissibles();
        for x in 0..self.dom.size() {
            for y in 0..self.cod.size() {
                if !self.related(x, y)
                    && !adm
                        .iter()
                        .any(|u| self.rows[x].is_subset(*u) && !u.contains(y))
                {
                    return Some(RelationFailure::NotSeparated { x, y });
                }
            }
        }
        for &u in adm {
            let image = self.box_r(u);
            if !self.dom.is_admissible_clopen_upset(image) {
                return Some(RelationFailure::BoxNotAdmissible { u, image });
            }
        }
        None
    }

    pub fn is_gp_morphism(&self) -> bool {
        self.gp_failure().is_none()
    }

    pub fn ge_failure(&self) -> Option<RelationFailure> {
        if let Some(f) = self.gp_failure() {
            return Some(f);
        }
        let (dx, cy) = (self.dom.as_ref(), self.cod.as_ref());
        for x in 0..dx.size() {
            for y in self.rows[x].intersection(cy.x0()) {
                let up = cy.order().up_of(y);
                let ok = dx
                    .x0()
                    .iter()
                    .any(|z| dx.order().leq(x, z) && self.rows[z] == up);
                if !ok {
                    return Some(RelationFailure::NoEsakiaWitness { x, y });
                }
            }
        }
        None
    }

    pub fn is_ge_morphism(&self) -> bool {
        self.ge_failure().is_none()
    }
}

/// `S ∗ R`: `x` relates to `z` iff every admissible `U` of the target with
/// `x ∈ □_R □_S U` contains `z`.
pub fn compose_star(s: &GenRelation, r: &GenRelation) -> Result<GenRelation> {
    if r.cod != s.dom {
        return Err(Error::Mismatch);
    }
    let z = &s.cod;
    let boxes: Vec<(Subset, Subset)> = z
        .admissibles()
        .iter()
        .map(|&u| (u, r.box_r(s.box_r(u))))
        .collect();
    let rows = (0..r.dom.size())
        .map(|x| {
            boxes
                .iter()
                .filter(|(_, b)| b.contains(x))
                .fold(z.carrier(), |acc, (u, _)| acc.intersection(*u))
        })
        .collect();
    GenRelation::from_rows(r.dom.clone(), s.cod.clone(), rows)
}

/// Ordinary relational composition, kept only for comparison with
/// [`compose_star`]; it is not the composition of the category.
#[derive(Clone, Debug)]
pub struct RawComposition {
    pub relation: GenRelation,
    /// Always set: this is a diagnostic, not a morphism composition.
    pub diagnostic_only: bool,
    /// Whether the raw composite happens to equal `S ∗ R`.
    pub agrees_with_star: bool,
}

pub fn compose_raw(s: &GenRelation, r: &GenRelation) -> Result<RawComposition> {
    let star = compose_star(s, r)?;
    let rows = (0..r.dom.size())
        .map(|x| {
            r.rows[x]
                .iter()
                .fold(Subset::EMPTY, |acc, y| acc.union(s.rows[y]))
        })
        .collect();
    let relation = GenRelation::from_rows(r.dom.clone(), s.cod.clone(), rows)?;
    Ok(RawComposition {
        agrees_with_star: relation == star,
        relation,
        diagnostic_only: true,
    })
}

/// The dual relation `R_h ⊆ X_B × X_A` of a meet-semilattice homomorphism
/// `h : A -> B`: `x R_h y` iff `h⁻¹(x) ⊆ y`.
pub fn dual_relation(h: &AlgHom, xb: &Spectrum, xa: &Spectrum) -> Result<GenRelation> {
    if !h.is_ms_hom() {
        return Err(Error::NotAHomomorphism {
            kind: "meet-semilattice",
        });
    }
    if h.dom != *xa.algebra.base() || h.cod != *xb.algebra.base() {
        return Err(Error::Mismatch);
    }
    let pre = |x: Subset| -> Subset {
        (0..h.dom.size())
            .filter(|&a| x.contains(h.apply(a)))
            .collect()
    };
    let rows = xb
        .points
        .iter()
        .map(|&x| {
            let p = pre(x);
            (0..xa.points.len())
                .filter(|&y| p.is_subset(xa.points[y]))
                .collect()
        })
        .collect();
    GenRelation::from_rows(xb.space.clone(), xa.space.clone(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brouwerian::space::pointed_spectrum;
    use crate::lattice::{FinLattice, MeetSemilatticeView};

    fn spectrum_of(l: FinLattice) -> Spectrum {
        pointed_spectrum(&MeetSemilatticeView::new(l)).unwrap()
    }

    #[test]
    fn identity_is_both_kinds_of_morphism() {
        for l in [FinLattice::chain(2), FinLattice::boolean(2)] {
            let x = spectrum_of(l.clone());
            let id = GenRelation::identity(&x.space);
            assert!(id.is_gp_morphism());
            assert!(id.is_ge_morphism());
            assert_eq!(compose_star(&id, &id).unwrap(), id);
            let dual = dual_relation(&AlgHom::identity(&l), &x, &x).unwrap();
            assert_eq!(dual, id);
        }
    }

    #[test]
    fn graph_of_the_identity_is_not_separating() {
        let x = spectrum_of(FinLattice::chain(2));
        let graph =
            GenRelation::from_pairs(x.space.clone(), x.space.clone(), &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(
            graph.gp_failure(),
            Some(RelationFailure::NotSeparated { x: 0, y: 1 })
        );
    }

    #[test]
    fn empty_relation_boxes_everything() {
        let x = spectrum_of(FinLattice::chain(2));
        let r = GenRelation::from_pairs(x.space.clone(), x.space.clone(), &[]).unwrap();
        assert_eq!(r.box_r(Subset::EMPTY), x.space.carrier());
        // Every admissible contains m, so the empty image cannot be
        // separated from m.
        assert_eq!(
            r.gp_failure(),
            Some(RelationFailure::NotSeparated { x: 0, y: 1 })
        );
        let id = GenRelation::identity(&x.space);
        // □_∅ U = X for every U, so each x reaches exactly ⋂𝒜 = {m}.
        let star = compose_star(&r, &id).unwrap();
        let m = x.space.m();
        assert_eq!(
            star.pairs(),
            (0..x.space.size()).map(|i| (i, m)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn dual_of_a_projection_is_generalized_priestley() {
        let d2 = FinLattice::boolean(2);
        let c2 = FinLattice::chain(2);
        // d2 indices: 0 bottom, 3 top; atoms 1, 2. Send atom 1 to 1, atom 2 to 0.
        let h = AlgHom::new(d2.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert!(h.is_ms_hom());
        let (xa, xb) = (spectrum_of(d2), spectrum_of(c2));
        let r = dual_relation(&h, &xb, &xa).unwrap();
        assert!(r.is_gp_morphism(), "{:?}", r.gp_failure());
        assert!(r.is_ge_morphism());
    }

    #[test]
    fn raw_composition_is_flagged() {
        let x = spectrum_of(FinLattice::boolean(2));
        let id = GenRelation::identity(&x.space);
        let raw = compose_raw(&id, &id).unwrap();
        assert!(raw.diagnostic_only && raw.agrees_with_star);
    }
}
