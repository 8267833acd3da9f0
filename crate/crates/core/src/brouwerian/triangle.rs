//! The triangle relating a finite distributive meet-semilattice, its filter
//! frame and its pointed spectrum, with naturality for given morphisms.

use super::frame::{
    arithmetic_primality, f_of_hom, filter_frame, is_arithmetic, is_brouwerian_frame,
    is_brwfrm_morphism, right_adjoint, y_space, FilterFrame, YSpace,
};
use super::maps::{dms_p_failure, dual_map};
use super::relation::dual_relation;
use super::space::{pointed_spectrum, PointedGenSpace, Spectrum};
use crate::duality::{frame_hom_violation, FrameView, TriangleReport};
use crate::hom::AlgHom;
use crate::lattice::{MeetSemilatticeView, SetLattice};
use crate::subset::Subset;

type Outcome = std::result::Result<(), String>;

/// Admissible closed upsets under reverse inclusion.
pub fn va_frame(x: &PointedGenSpace) -> crate::Result<SetLattice> {
    let sets: Vec<Subset> = x
        .order()
        .all_upsets()?
        .into_iter()
        .filter(|&u| x.topology().is_closed(u) && x.is_admissible(u))
        .collect();
    SetLattice::from_family(sets)
}

/// `K(𝒱ᵃ(X))^d`, read back as a family of sets ordered by inclusion, is
/// `𝒜(X)` with its order.
fn va_compacts_are_admissibles(x: &PointedGenSpace) -> Outcome {
    let va = va_frame(x).map_err(|e| e.to_string())?;
    let rev = va.lattice.dual();
    let frame = FrameView::new(rev).map_err(|e| format!("𝒱ᵃ is not a frame: {e}"))?;
    let mut compact: Vec<Subset> = frame
        .compact_elements()
        .iter()
        .map(|i| va.sets[i])
        .collect();
    compact.sort_by_key(|s| (s.len(), s.0));
    if compact != x.admissibles() {
        return Err(format!(
            "compacts {compact:?} differ from 𝒜 {:?}",
            x.admissibles()
        ));
    }
    // Positions in `va.sets` are ordered by inclusion; the order dual of the
    // reverse inclusion is inclusion again.
    let k = frame.compact_elements();
    for i in k {
        for j in k {
            let dual_leq = frame.base().leq(j, i);
            if dual_leq != va.sets[i].is_subset(va.sets[j]) {
                return Err(format!(
                    "order mismatch at {:?}, {:?}",
                    va.sets[i], va.sets[j]
                ));
            }
        }
    }
    Ok(())
}

/// `G ↦ {a : ↑a ⊆ G}` from `Y_ℱ(A)` to `X_A`, checked to be an isomorphism
/// of pointed generalized spaces: a bijection preserving and reflecting the
/// order, matching `X0` and `m`, and carrying opens onto opens.
pub fn y_to_x(
    fa: &FilterFrame,
    y: &YSpace,
    x: &Spectrum,
) -> std::result::Result<Vec<usize>, String> {
    let a = fa.base.base();
    let map: Vec<usize> = y
        .elements
        .iter()
        .map(|&g| {
            let set = fa.filters.sets[g];
            let f: Subset = (0..a.size())
                .filter(|&e| a.principal_filter(e).is_subset(set))
                .collect();
            x.index_of(f).ok_or(format!("{f:?} is not a point of X_A"))
        })
        .collect::<std::result::Result<_, _>>()?;
    let (ys, xs) = (&y.space, &x.space);
    if !ys.order().is_isomorphism(xs.order(), &map) {
        return Err(format!("{map:?} is not an order isomorphism"));
    }
    if map[ys.m()] != xs.m() {
        return Err("top is not sent to top".into());
    }
    let x0: Subset = ys.x0().iter().map(|i| map[i]).collect();
    if x0 != xs.x0() {
        return Err(format!("X0 maps to {x0:?}, expected {:?}", xs.x0()));
    }
    for i in 0..ys.size() {
        let nb: Subset = ys
            .topology()
            .neighbourhood(i)
            .iter()
            .map(|j| map[j])
            .collect();
        if nb != xs.topology().neighbourhood(map[i]) {
            return Err(format!("neighbourhoods differ at {i}"));
        }
    }
    Ok(map)
}

struct Corner {
    fa: FilterFrame,
    frame: FrameView,
    x: Spectrum,
    y: YSpace,
    y_iso: Vec<usize>,
}

fn corner(a: &MeetSemilatticeView, report: &mut TriangleReport) -> Option<Corner> {
    let built = (|| -> std::result::Result<(FilterFrame, FrameView, Spectrum, YSpace), String> {
        let fa = filter_frame(a).map_err(|e| e.to_string())?;
        let frame = fa.frame().map_err(|e| e.to_string())?;
        let x = pointed_spectrum(a).map_err(|e| e.to_string())?;
        let y = y_space(&frame).map_err(|e| e.to_string())?;
        Ok((fa, frame, x, y))
    })();
    let (fa, frame, x, y) = match built {
        Ok(c) => c,
        Err(e) => {
            report.push("objects", Err(e));
            return None;
        }
    };
    let failures = x.space.pgps_failures();
    report.push(
        "𝒳(A) is a pointed generalized Priestley space",
        if failures.is_empty() {
            Ok(())
        } else {
            Err(format!("{failures:?}"))
        },
    );
    let brw = a.is_brouwerian_semilattice();
    report.push(
        "𝒳(A) generalized Esakia iff A Brouwerian",
        if x.space.validate_pges() == brw {
            Ok(())
        } else {
            Err(format!("A Brouwerian: {brw}"))
        },
    );
    report.push("K(ℱ(A))^d ≅ A", fa.k_dual_iso().map(|_| ()));
    report.push("𝒜(𝒳(A)) ≅ A", x.phi_iso().map(|_| ()));
    let y_iso = y_to_x(&fa, &y, &x);
    report.push(
        "𝒴(ℱ(A)) ≅ 𝒳(A)",
        y_iso.as_ref().map(|_| ()).map_err(Clone::clone),
    );
    report.push(
        "K(𝒱ᵃ(𝒳(A)))^d = 𝒜(𝒳(A))",
        va_compacts_are_admissibles(&x.space),
    );
    report.push(
        "ℱ(A) Brouwerian frame iff A Brouwerian",
        if is_brouwerian_frame(&frame) == brw {
            Ok(())
        } else {
            Err(format!("A Brouwerian: {brw}"))
        },
    );
    report.push(
        "ℱ(A) arithmetic with PP ⊆ P",
        if is_arithmetic(&frame) {
            arithmetic_primality(&frame)
        } else {
            Err("not arithmetic".into())
        },
    );
    Some(Corner {
        fa,
        frame,
        x,
        y,
        y_iso: y_iso.ok()?,
    })
}

/// Checks the object legs of the triangle for `a` and, for each hom out of
/// `a` in `homs`, the naturality of each leg.
pub fn check_triangle_brw(a: &MeetSemilatticeView, homs: &[AlgHom]) -> TriangleReport {
    let mut report = TriangleReport { legs: Vec::new() };
    let Some(ca) = corner(a, &mut report) else {
        return report;
    };
    for (n, h) in homs.iter().enumerate() {
        if h.dom != *a.base() {
            report.push(format!("hom {n}"), Err("domain differs from A".into()));
            continue;
        }
        let mut scratch = TriangleReport { legs: Vec::new() };
        let Some(cb) = corner(&MeetSemilatticeView::new(h.cod.clone()), &mut scratch) else {
            report.push(
                format!("hom {n}: codomain"),
                Err(format!("{:?}", scratch.legs)),
            );
            continue;
        };
        report.push(format!("hom {n}: naturality"), naturality(&ca, &cb, h));
    }
    report
}

fn naturality(ca: &Corner, cb: &Corner, h: &AlgHom) -> Outcome {
    if let Some(f) = dms_p_failure(h) {
        return Err(format!("not a join and prime preserving morphism: {f:?}"));
    }
    let alpha = f_of_hom(h, &ca.fa, &cb.fa).map_err(|e| e.to_string())?;
    if let Some(v) = frame_hom_violation(ca.fa.lattice(), cb.fa.lattice(), &alpha) {
        return Err(format!("ℱ(h) is not a frame hom: {v}"));
    }
    // K leg: ℱ(h)(↑a) = ↑h(a).
    for x in 0..h.dom.size() {
        if alpha[ca.fa.principal(x)] != cb.fa.principal(h.apply(x)) {
            return Err(format!("K square fails at {x}"));
        }
    }
    // 𝒜 leg: □_{R_h} φ(a) = φ(h(a)).
    let r = dual_relation(h, &cb.x, &ca.x).map_err(|e| e.to_string())?;
    if let Some(f) = r.gp_failure() {
        return Err(format!(
            "R_h is not a generalized Priestley morphism: {f:?}"
        ));
    }
    for x in 0..h.dom.size() {
        if r.box_r(ca.x.phi(x)) != cb.x.phi(h.apply(x)) {
            return Err(format!("𝒜 square fails at {x}"));
        }
    }
    // 𝒳 leg: the point map is h⁻¹, and R_h[x] = ↑h⁻¹(x).
    let f = dual_map(h, &cb.x, &ca.x).map_err(|e| e.to_string())?;
    if let Some(e) = f.pgps_p_failure() {
        return Err(format!("h⁻¹ is not a point morphism: {e:?}"));
    }
    for x in 0..cb.x.points.len() {
        if r.image_of(x) != ca.x.space.order().up_of(f.apply(x)) {
            return Err(format!("R_h[{x}] is not the up-set of h⁻¹({x})"));
        }
    }
    // 𝒴 leg: the right adjoint of ℱ(h) matches h⁻¹ across 𝒴 ≅ 𝒳.
    let radj =
        right_adjoint(ca.fa.lattice(), cb.fa.lattice(), &alpha).map_err(|e| e.to_string())?;
    for (i, &g) in cb.y.elements.iter().enumerate() {
        let j =
            ca.y.elements
                .iter()
                .position(|&e| e == radj[g])
                .ok_or(format!("r sends {g} outside Y"))?;
        if ca.y_iso[j] != f.apply(cb.y_iso[i]) {
            return Err(format!("𝒴 square fails at {g}"));
        }
    }
    // Implication: all four routes agree with h preserving it.
    let brw = h.is_brw_semilattice_hom();
    let routes = [
        ("R_h generalized Esakia", r.is_ge_morphism()),
        ("h⁻¹ lifts", f.is_pges_p_map()),
        (
            "ℱ(h) Brouwerian frame morphism",
            is_brwfrm_morphism(&ca.frame, &cb.frame, &alpha),
        ),
    ];
    if ca.x.algebra.is_brouwerian_semilattice() && cb.x.algebra.is_brouwerian_semilattice() {
        for (name, v) in routes {
            if v != brw {
                return Err(format!("{name} is {v} but h preserves implication: {brw}"));
            }
        }
        if f.preserves_admissible_implication() != brw {
            return Err("preimage implication route disagrees".into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{all_homs, Signature};
    use crate::lattice::FinLattice;

    #[test]
    fn triangles_of_small_algebras() {
        for l in [
            FinLattice::chain(1),
            FinLattice::chain(2),
            FinLattice::chain(3),
            FinLattice::boolean(2),
        ] {
            let a = MeetSemilatticeView::new(l.clone());
            let homs: Vec<AlgHom> = [FinLattice::chain(2), FinLattice::boolean(2)]
                .iter()
                .flat_map(|b| all_homs(&l, b, Signature::DistributiveLattice))
                .collect();
            let r = check_triangle_brw(&a, &homs);
            assert!(r.passed(), "{:?}", r.legs);
        }
    }

    #[test]
    fn a_hom_that_is_not_join_preserving_fails_naturality() {
        let c2 = FinLattice::chain(2);
        let c3 = FinLattice::chain(3);
        let h = AlgHom::new(c2.clone(), c3, vec![1, 2]).unwrap();
        let r = check_triangle_brw(&MeetSemilatticeView::new(c2), &[h]);
        assert!(!r.passed());
        assert_eq!(r.legs.iter().filter(|l| !l.pass).count(), 1);
    }
}
