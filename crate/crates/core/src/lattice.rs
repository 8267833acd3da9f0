//! Finite bounded lattices with eager meet/join tables.

use std::collections::HashMap;

use crate::canon;
use crate::error::{Error, Result};
use crate::poset::FinPoset;
use crate::subset::{Subset, MAX_CARRIER};

/// A finite bounded lattice on `0..size`.
///
/// `meet[a * n + b]` and `join[a * n + b]` agree with the infimum and supremum
/// in `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinLattice {
    order: FinPoset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FinLattice {
    /// Tables are computed iff every pair has an infimum and supremum and the
    /// carrier is nonempty.
    pub fn from_poset(order: FinPoset) -> Result<FinLattice> {
        let n = order.size();
        let bottom = order
            .minimum()
            .ok_or(Error::NoExtremes("no least element"))?;
        let top = order
            .maximum()
            .ok_or(Error::NoExtremes("no greatest element"))?;
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower = order.down_of(a).intersection(order.down_of(b));
                let m = lower
                    .iter()
                    .find(|&x| lower.is_subset(order.down_of(x)))
                    .ok_or(Error::NotALattice {
                        a,
                        b,
                        missing: "meet",
                    })?;
                let upper = order.up_of(a).intersection(order.up_of(b));
                let j = upper
                    .iter()
                    .find(|&x| upper.is_subset(order.up_of(x)))
                    .ok_or(Error::NotALattice {
                        a,
                        b,
                        missing: "join",
                    })?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        Ok(FinLattice {
            order,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn chain(n: usize) -> FinLattice {
        Self::from_poset(FinPoset::chain(n)).expect("nonempty chain")
    }

    /// The lattice of subsets of a `k`-element set.
    pub fn boolean(k: usize) -> FinLattice {
        downset_lattice(&FinPoset::antichain(k))
            .expect("small boolean lattice")
            .lattice
    }

    /// Bottom, three atoms, top.
    pub fn m3() -> FinLattice {
        let p = FinPoset::from_pairs(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
            .expect("m3 order");
        Self::from_poset(p).expect("m3 is a lattice")
    }

    /// Bottom < a < b < top with c incomparable to a and b.
    pub fn n5() -> FinLattice {
        let p =
            FinPoset::from_pairs(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).expect("n5 order");
        Self::from_poset(p).expect("n5 is a lattice")
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    pub fn order(&self) -> &FinPoset {
        &self.order
    }

    pub fn carrier(&self) -> Subset {
        self.order.carrier()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Meet of a set; the empty meet is the top.
    pub fn meet_all(&self, s: Subset) -> usize {
        s.iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a set; the empty join is the bottom.
    pub fn join_all(&self, s: Subset) -> usize {
        s.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// A triple with `x ∧ (y ∨ z) != (x ∧ y) ∨ (x ∧ z)`, if any.
    pub fn distributivity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_violation().is_none()
    }

    /// The largest `c` with `a ∧ c <= b`.
    pub fn heyting_implication(&self, a: usize, b: usize) -> Result<usize> {
        let cands: Subset = (0..self.size())
            .filter(|&c| self.leq(self.meet(a, c), b))
            .collect();
        self.order
            .maximum_of(cands)
            .ok_or(Error::NoResidual { a, b })
    }

    /// First pair without a residual.
    pub fn residual_violation(&self) -> Option<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.heyting_implication(a, b).is_err())
    }

    pub fn is_heyting_algebra(&self) -> bool {
        self.is_distributive() && self.residual_violation().is_none()
    }

    /// The implication table, if every residual exists.
    pub fn implication_table(&self) -> Result<Vec<usize>> {
        let n = self.size();
        let mut t = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                t.push(self.heyting_implication(a, b)?);
            }
        }
        Ok(t)
    }

    /// The smallest `c` with `b <= a ∨ c`: the implication of the order dual.
    pub fn co_implication(&self, a: usize, b: usize) -> Result<usize> {
        let cands: Subset = (0..self.size())
            .filter(|&c| self.leq(b, self.join(a, c)))
            .collect();
        self.order
            .minimum_of(cands)
            .ok_or(Error::NoResidual { a, b })
    }

    /// The order-dual lattice on the same indices.
    pub fn dual(&self) -> FinLattice {
        FinLattice {
            order: self.order.dual(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// Upset generated by `a`.
    pub fn principal_filter(&self, a: usize) -> Subset {
        self.order.up_of(a)
    }

    pub fn principal_ideal(&self, a: usize) -> Subset {
        self.order.down_of(a)
    }
}

impl FinPoset {
    /// The greatest element of `s`, if `s` has one.
    pub fn maximum_of(&self, s: Subset) -> Option<usize> {
        s.iter().find(|&x| s.is_subset(self.down_of(x)))
    }

    pub fn minimum_of(&self, s: Subset) -> Option<usize> {
        s.iter().find(|&x| s.is_subset(self.up_of(x)))
    }
}

/// A lattice realized as a family of subsets of some carrier under inclusion.
///
/// `sets[i]` is the set standing for lattice element `i`; indices are sorted by
/// size then bits, so `0` is the least set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetLattice {
    pub lattice: FinLattice,
    pub sets: Vec<Subset>,
    index: HashMap<Subset, usize>,
}

impl SetLattice {
    /// The inclusion lattice of `family`; errors if it is not a bounded lattice.
    pub fn from_family(mut family: Vec<Subset>) -> Result<SetLattice> {
        family.sort_by_key(|s| (s.len(), s.0));
        family.dedup();
        if family.len() > MAX_CARRIER {
            return Err(Error::BoundExceeded {
                size: family.len(),
                bound: MAX_CARRIER,
            });
        }
        let order = FinPoset::from_fn(family.len(), |i, j| family[i].is_subset(family[j]))?;
        let lattice = FinLattice::from_poset(order)?;
        let index = family.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        Ok(SetLattice {
            lattice,
            sets: family,
            index,
        })
    }

    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn size(&self) -> usize {
        self.sets.len()
    }
}

/// Downsets of `p` under union and intersection.
pub fn downset_lattice(p: &FinPoset) -> Result<SetLattice> {
    let sets = p.all_downsets_bounded(MAX_CARRIER + 1)?;
    SetLattice::from_family(sets)
}

/// Upsets of `p` under union and intersection.
pub fn upset_lattice(p: &FinPoset) -> Result<SetLattice> {
    let sets = p.all_upsets_bounded(MAX_CARRIER + 1)?;
    SetLattice::from_family(sets)
}

/// A lattice viewed as a meet-semilattice with top: only `∧`, `1` and `<=` are
/// structure. Every finite meet-semilattice with top has all joins, so the
/// base lattice is stored in full.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetSemilatticeView {
    base: FinLattice,
}

impl MeetSemilatticeView {
    pub fn new(base: FinLattice) -> Self {
        MeetSemilatticeView { base }
    }

    pub fn base(&self) -> &FinLattice {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    /// `a ∧ b <= c` with no `a' >= a`, `b' >= b` meeting exactly in `c`.
    pub fn distributivity_violation(&self) -> Option<(usize, usize, usize)> {
        let l = &self.base;
        let n = l.size();
        for a in 0..n {
            for b in 0..n {
                let ab = l.meet(a, b);
                for c in l.order().up_of(ab).iter() {
                    let ok = l
                        .order()
                        .up_of(a)
                        .iter()
                        .any(|a2| l.order().up_of(b).iter().any(|b2| l.meet(a2, b2) == c));
                    if !ok {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive_ms(&self) -> bool {
        self.distributivity_violation().is_none()
    }

    /// Residual of `∧`; uses only meets and the order.
    pub fn implication(&self, a: usize, b: usize) -> Result<usize> {
        self.base.heyting_implication(a, b)
    }

    pub fn is_brouwerian_semilattice(&self) -> bool {
        self.base.residual_violation().is_none()
    }
}

/// Representatives of all lattices with `n` elements, up to isomorphism.
pub fn enumerate_lattices(n: usize, distributive_only: bool) -> Result<Vec<FinLattice>> {
    let mut out = Vec::new();
    for p in canon::enumerate_posets(n)? {
        if let Ok(l) = FinLattice::from_poset(p) {
            if !distributive_only || l.is_distributive() {
                out.push(l);
            }
        }
    }
    Ok(out)
}

/// Every lattice with at most `n` elements, up to isomorphism: the
/// one-element lattice, then each poset on `k <= n - 2` points with a fresh
/// bottom and top, kept when the result is a lattice. Isomorphisms of bounded
/// lattices fix the bounds, so no class appears twice.
pub fn lattices_upto(n: usize) -> Result<Vec<FinLattice>> {
    let mut out = Vec::new();
    if n >= 1 {
        out.push(FinLattice::chain(1));
    }
    for k in 0..=n.saturating_sub(2) {
        if n < 2 {
            break;
        }
        for p in canon::enumerate_posets(k)? {
            let inner = |i: usize| (1..=k).contains(&i);
            let q = FinPoset::from_fn(k + 2, |i, j| {
                i == j || i == 0 || j == k + 1 || (inner(i) && inner(j) && p.leq(i - 1, j - 1))
            })?;
            if let Ok(l) = FinLattice::from_poset(q) {
                out.push(l);
            }
        }
    }
    Ok(out)
}

/// Every distributive lattice with at most `n` elements, up to isomorphism, as
/// the downset lattice of its poset of join-irreducibles. Sorted by size.
pub fn distributive_lattices_upto(n: usize) -> Result<Vec<SetLattice>> {
    let mut out = Vec::new();
    for k in 0..n.max(1) {
        for p in canon::enumerate_posets_bounded(k, canon::ENUM_HARD_BOUND)? {
            // A k-element poset has at least k + 1 downsets.
            let sets = match p.all_downsets_bounded(n) {
                Ok(s) => s,
                Err(Error::BoundExceeded { .. }) => continue,
                Err(e) => return Err(e),
            };
            out.push(SetLattice::from_family(sets)?);
        }
    }
    out.sort_by_key(|l| l.size());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d2() -> FinLattice {
        FinLattice::from_poset(FinPoset::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap())
            .unwrap()
    }

    fn brute_residual(l: &FinLattice, a: usize, b: usize) -> Option<usize> {
        let n = l.size();
        (0..n).find(|&c| (0..n).all(|x| l.leq(l.meet(a, x), b) == l.leq(x, c)))
    }

    #[test]
    fn lattice_counts_match_known_sequence() {
        let mut counts = [0usize; 9];
        for l in lattices_upto(8).unwrap() {
            counts[l.size()] += 1;
        }
        assert_eq!(counts, [0, 1, 1, 1, 2, 5, 15, 53, 222]);
        for n in 1..=6 {
            let direct: usize = (1..=n)
                .map(|k| enumerate_lattices(k, false).unwrap().len())
                .sum();
            assert_eq!(lattices_upto(n).unwrap().len(), direct);
        }
    }

    #[test]
    fn lattice_construction() {
        assert_eq!(FinLattice::chain(3).join(0, 1), 1);
        assert!(matches!(
            FinLattice::from_poset(FinPoset::antichain(2)),
            Err(Error::NoExtremes(_))
        ));
        let up = upset_lattice(&FinPoset::chain(2)).unwrap();
        assert_eq!(up.size(), 3);
        assert_eq!(up.lattice.order().cover_pairs(), vec![(0, 1), (1, 2)]);
        // Bowtie below a top has bounds but pairs without a join.
        let bow = FinPoset::from_pairs(
            6,
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (2, 3),
                (1, 4),
                (2, 4),
                (3, 5),
                (4, 5),
            ],
        )
        .unwrap();
        assert!(matches!(
            FinLattice::from_poset(bow),
            Err(Error::NotALattice {
                missing: "join",
                ..
            })
        ));
    }

    #[test]
    fn distributivity() {
        assert!(d2().is_distributive());
        assert!(!FinLattice::m3().is_distributive());
        assert!(!FinLattice::n5().is_distributive());
        assert!(FinLattice::chain(5).is_distributive());
    }

    #[test]
    fn implications() {
        let c3 = FinLattice::chain(3);
        assert_eq!(c3.heyting_implication(1, 0).unwrap(), 0);
        let l = d2();
        for a in 0..4 {
            assert_eq!(l.heyting_implication(a, a).unwrap(), l.top());
        }
        assert_eq!(l.heyting_implication(1, 2).unwrap(), 2);
        assert_eq!(brute_residual(&l, 1, 2), Some(2));
        let m3 = FinLattice::m3();
        assert!(matches!(
            m3.heyting_implication(1, 2),
            Err(Error::NoResidual { a: 1, b: 2 })
        ));
        assert!(!m3.is_heyting_algebra());
        assert!(l.is_heyting_algebra());
        assert!(FinLattice::chain(2).is_heyting_algebra());
    }

    #[test]
    fn meet_semilattice_views() {
        assert!(MeetSemilatticeView::new(d2()).is_distributive_ms());
        assert!(!MeetSemilatticeView::new(FinLattice::m3()).is_distributive_ms());
        assert!(MeetSemilatticeView::new(FinLattice::chain(4)).is_distributive_ms());
        assert!(!MeetSemilatticeView::new(FinLattice::m3()).is_brouwerian_semilattice());
        assert!(MeetSemilatticeView::new(FinLattice::chain(1)).is_brouwerian_semilattice());
    }

    #[test]
    fn downset_lattices() {
        let c2 = downset_lattice(&FinPoset::chain(2)).unwrap();
        assert!(c2
            .lattice
            .order()
            .is_isomorphism(FinLattice::chain(3).order(), &[0, 1, 2]));
        let b2 = downset_lattice(&FinPoset::antichain(2)).unwrap();
        assert!(
            crate::canon::find_isomorphism(b2.lattice.order(), d2().order())
                .unwrap()
                .is_some()
        );
        assert_eq!(downset_lattice(&FinPoset::empty()).unwrap().size(), 1);
    }

    #[test]
    fn residuals_match_brute_force_on_small_lattices() {
        for l in enumerate_lattices(5, false).unwrap() {
            for a in 0..l.size() {
                for b in 0..l.size() {
                    assert_eq!(l.heyting_implication(a, b).ok(), brute_residual(&l, a, b));
                }
            }
        }
    }

    #[test]
    fn distributive_lattice_counts() {
        // 1, 1, 1, 2, 3, 5, 8, 15 distributive lattices of sizes 1..=8.
        let all = distributive_lattices_upto(8).unwrap();
        let counts: Vec<usize> = (1..=8)
            .map(|k| all.iter().filter(|l| l.size() == k).count())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 5, 8, 15]);
        assert_eq!(enumerate_lattices(4, true).unwrap().len(), 2);
        assert_eq!(enumerate_lattices(5, false).unwrap().len(), 5);
    }
}
