//! Finite posets on an indexed carrier, their subsets and order operators.

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_CARRIER};

/// Default cap on the number of sets `all_upsets` will materialize.
pub const DEFAULT_UPSET_LIMIT: usize = 1 << 18;

/// A partial order on `0..size`.
///
/// `up[i]` holds every `j` with `i <= j`, `down[i]` every `j` with `j <= i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinPoset {
    size: usize,
    up: Vec<Subset>,
    down: Vec<Subset>,
}

impl FinPoset {
    /// Builds a poset from a full relation given as up-set rows; the rows must
    /// already be reflexive, antisymmetric and transitive.
    pub fn from_up_rows(up: Vec<Subset>) -> Result<FinPoset> {
        let size = up.len();
        if size > MAX_CARRIER {
            return Err(Error::BoundExceeded {
                size,
                bound: MAX_CARRIER,
            });
        }
        for (i, row) in up.iter().enumerate() {
            if !row.fits(size) {
                return Err(Error::IndexOutOfRange {
                    index: row.iter().last().unwrap_or(0),
                    size,
                });
            }
            if !row.contains(i) {
                return Err(Error::NotPartialOrder(format!("{i} <= {i} missing")));
            }
            for j in row.iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::NotPartialOrder(format!("{i} <= {j} and {j} <= {i}")));
                }
                if !up[j].is_subset(*row) {
                    return Err(Error::NotPartialOrder(format!("{i} <= {j} not transitive")));
                }
            }
        }
        Ok(Self::from_rows_unchecked(up))
    }

    fn from_rows_unchecked(up: Vec<Subset>) -> FinPoset {
        let size = up.len();
        let mut down = vec![Subset::EMPTY; size];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j] = down[j].with(i);
            }
        }
        FinPoset { size, up, down }
    }

    /// Builds a poset from generating pairs `(i, j)` meaning `i <= j`, taking
    /// the reflexive-transitive closure.
    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<FinPoset> {
        if size > MAX_CARRIER {
            return Err(Error::BoundExceeded {
                size,
                bound: MAX_CARRIER,
            });
        }
        let mut up: Vec<Subset> = (0..size).map(Subset::singleton).collect();
        for &(i, j) in pairs {
            for idx in [i, j] {
                if idx >= size {
                    return Err(Error::IndexOutOfRange { index: idx, size });
                }
            }
            up[i] = up[i].with(j);
        }
        // Warshall on bit rows.
        for k in 0..size {
            for i in 0..size {
                if up[i].contains(k) {
                    up[i] = up[i].union(up[k]);
                }
            }
        }
        for i in 0..size {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::NotPartialOrder(format!("cycle through {i} and {j}")));
                }
            }
        }
        Ok(Self::from_rows_unchecked(up))
    }

    /// Builds a poset from an order predicate, validating the axioms.
    pub fn from_fn(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<FinPoset> {
        let up = (0..size)
            .map(|i| (0..size).filter(|&j| leq(i, j)).collect())
            .collect();
        Self::from_up_rows(up)
    }

    pub fn chain(n: usize) -> FinPoset {
        Self::from_fn(n, |i, j| i <= j).expect("chains are posets")
    }

    pub fn antichain(n: usize) -> FinPoset {
        Self::from_fn(n, |i, j| i == j).expect("antichains are posets")
    }

    pub fn empty() -> FinPoset {
        Self::antichain(0)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn carrier(&self) -> Subset {
        Subset::full(self.size)
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    #[inline]
    pub fn up_of(&self, i: usize) -> Subset {
        self.up[i]
    }

    #[inline]
    pub fn down_of(&self, i: usize) -> Subset {
        self.down[i]
    }

    fn check(&self, s: Subset) -> Result<()> {
        if s.fits(self.size) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: s.iter().find(|&i| i >= self.size).unwrap_or(0),
                size: self.size,
            })
        }
    }

    pub fn up_set(&self, s: Subset) -> Result<Subset> {
        self.check(s)?;
        Ok(self.up_set_unchecked(s))
    }

    pub fn down_set(&self, s: Subset) -> Result<Subset> {
        self.check(s)?;
        Ok(self.down_set_unchecked(s))
    }

    #[inline]
    pub(crate) fn up_set_unchecked(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, i| acc.union(self.up[i]))
    }

    #[inline]
    pub(crate) fn down_set_unchecked(&self, s: Subset) -> Subset {
        s.iter()
            .fold(Subset::EMPTY, |acc, i| acc.union(self.down[i]))
    }

    pub fn is_upset(&self, s: Subset) -> bool {
        s.fits(self.size) && self.up_set_unchecked(s) == s
    }

    pub fn is_downset(&self, s: Subset) -> bool {
        s.fits(self.size) && self.down_set_unchecked(s) == s
    }

    /// Indices listed so that every element comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&i| self.down[i].len());
        order
    }

    /// Every upset exactly once, in a deterministic order.
    pub fn all_upsets(&self) -> Result<Vec<Subset>> {
        self.all_upsets_bounded(DEFAULT_UPSET_LIMIT)
    }

    pub fn all_upsets_bounded(&self, limit: usize) -> Result<Vec<Subset>> {
        // Decide maximal elements first: an element may join only once its
        // whole strict up-set is in.
        let mut order = self.linear_extension();
        order.reverse();
        let mut out = Vec::new();
        self.upsets_rec(&order, 0, Subset::EMPTY, limit, &mut out)?;
        Ok(out)
    }

    fn upsets_rec(
        &self,
        order: &[usize],
        k: usize,
        cur: Subset,
        limit: usize,
        out: &mut Vec<Subset>,
    ) -> Result<()> {
        if k == order.len() {
            if out.len() >= limit {
                return Err(Error::BoundExceeded {
                    size: out.len() + 1,
                    bound: limit,
                });
            }
            out.push(cur);
            return Ok(());
        }
        let x = order[k];
        self.upsets_rec(order, k + 1, cur, limit, out)?;
        if self.up[x].without(x).is_subset(cur) {
            self.upsets_rec(order, k + 1, cur.with(x), limit, out)?;
        }
        Ok(())
    }

    /// Every downset exactly once.
    pub fn all_downsets(&self) -> Result<Vec<Subset>> {
        self.all_downsets_bounded(DEFAULT_UPSET_LIMIT)
    }

    pub fn all_downsets_bounded(&self, limit: usize) -> Result<Vec<Subset>> {
        Ok(self
            .all_upsets_bounded(limit)?
            .into_iter()
            .map(|u| u.complement(self.size))
            .collect())
    }

    /// Lower covers of `i`: the maximal elements strictly below it.
    pub fn lower_covers(&self, i: usize) -> Subset {
        let strict = self.down[i].without(i);
        strict
            .iter()
            .filter(|&j| (self.up[j].intersection(strict)).without(j).is_empty())
            .collect()
    }

    pub fn upper_covers(&self, i: usize) -> Subset {
        let strict = self.up[i].without(i);
        strict
            .iter()
            .filter(|&j| (self.down[j].intersection(strict)).without(j).is_empty())
            .collect()
    }

    /// Elements with exactly one lower cover. For a lattice order these are
    /// the join-irreducibles (the bottom has none).
    pub fn join_irreducibles(&self) -> Subset {
        (0..self.size)
            .filter(|&i| self.lower_covers(i).len() == 1)
            .collect()
    }

    pub fn maximal(&self, s: Subset) -> Subset {
        s.iter()
            .filter(|&i| self.up[i].intersection(s) == Subset::singleton(i))
            .collect()
    }

    pub fn minimal(&self, s: Subset) -> Subset {
        s.iter()
            .filter(|&i| self.down[i].intersection(s) == Subset::singleton(i))
            .collect()
    }

    /// The unique maximum, if any.
    pub fn maximum(&self) -> Option<usize> {
        (0..self.size).find(|&i| self.down[i] == self.carrier())
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.size).find(|&i| self.up[i] == self.carrier())
    }

    /// The order-dual poset on the same indices.
    pub fn dual(&self) -> FinPoset {
        FinPoset {
            size: self.size,
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// The subposet induced on `s`, re-indexed in increasing index order.
    pub fn restrict(&self, s: Subset) -> FinPoset {
        let idx: Vec<usize> = s.to_vec();
        Self::from_fn(idx.len(), |a, b| self.leq(idx[a], idx[b])).expect("restriction of a poset")
    }

    /// Generating pairs of the order: the covering relation, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.size {
            for i in self.lower_covers(j).iter() {
                out.push((i, j));
            }
        }
        out.sort_unstable();
        out
    }

    /// Posets related by a map: checks whether `perm` is an isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &FinPoset, perm: &[usize]) -> bool {
        if self.size != other.size || perm.len() != self.size {
            return false;
        }
        let mut seen = Subset::EMPTY;
        for &p in perm {
            if p >= other.size || seen.contains(p) {
                return false;
            }
            seen = seen.with(p);
        }
        (0..self.size)
            .all(|i| (0..self.size).all(|j| self.leq(i, j) == other.leq(perm[i], perm[j])))
    }
}

/// A total map between the carriers of two finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    pub dom: FinPoset,
    pub cod: FinPoset,
    pub assignment: Vec<usize>,
}

impl PosetMap {
    pub fn new(dom: FinPoset, cod: FinPoset, assignment: Vec<usize>) -> Result<PosetMap> {
        if assignment.len() != dom.size() {
            return Err(crate::error::malformed(
                "map",
                format!(
                    "assignment has {} entries, domain has {}",
                    assignment.len(),
                    dom.size()
                ),
            ));
        }
        if let Some(&bad) = assignment.iter().find(|&&v| v >= cod.size()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                size: cod.size(),
            });
        }
        Ok(PosetMap {
            dom,
            cod,
            assignment,
        })
    }

    pub fn identity(p: &FinPoset) -> PosetMap {
        PosetMap {
            dom: p.clone(),
            cod: p.clone(),
            assignment: (0..p.size()).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.assignment[i]
    }

    pub fn preimage(&self, s: Subset) -> Subset {
        (0..self.dom.size())
            .filter(|&i| s.contains(self.assignment[i]))
            .collect()
    }

    pub fn image(&self, s: Subset) -> Subset {
        s.iter().map(|i| self.assignment[i]).collect()
    }

    /// A pair `x <= y` whose images are not ordered, if any.
    pub fn order_violation(&self) -> Option<(usize, usize)> {
        for x in 0..self.dom.size() {
            for y in self.dom.up_of(x).iter() {
                if !self.cod.leq(self.apply(x), self.apply(y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_order_preserving(&self) -> bool {
        self.order_violation().is_none()
    }

    /// A point `y` of the codomain with `down(f^-1(y)) != f^-1(down(y))`.
    pub fn p_morphism_violation(&self) -> Option<usize> {
        (0..self.cod.size()).find(|&y| {
            let lhs = self
                .dom
                .down_set_unchecked(self.preimage(Subset::singleton(y)));
            let rhs = self.preimage(self.cod.down_of(y));
            lhs != rhs
        })
    }

    /// Bounded-morphism test. Maps that are not order-preserving are rejected.
    pub fn is_p_morphism(&self) -> bool {
        self.is_order_preserving() && self.p_morphism_violation().is_none()
    }
}

/// Every total map from a carrier of size `m` into one of size `n`.
pub fn all_functions(m: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if n == 0 && m > 0 { 0 } else { n.pow(m as u32) };
    (0..total).map(move |mut code| {
        let mut v = Vec::with_capacity(m);
        for _ in 0..m {
            v.push(code % n.max(1));
            code /= n.max(1);
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ix: &[usize]) -> Subset {
        Subset::from_indices(ix.iter().copied())
    }

    // 0 < a,b < 1 with a=1, b=2, top=3
    fn diamond() -> FinPoset {
        FinPoset::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn brute_up(p: &FinPoset, set: Subset) -> Subset {
        (0..p.size())
            .filter(|&x| set.iter().any(|s| p.leq(s, x)))
            .collect()
    }

    #[test]
    fn up_and_down_sets() {
        let c3 = FinPoset::chain(3);
        assert_eq!(c3.up_set(s(&[1])).unwrap(), s(&[1, 2]));
        assert_eq!(c3.down_set(s(&[1])).unwrap(), s(&[0, 1]));
        assert_eq!(c3.up_set(Subset::EMPTY).unwrap(), Subset::EMPTY);
        assert_eq!(c3.down_set(c3.carrier()).unwrap(), c3.carrier());
        let d2 = diamond();
        assert_eq!(d2.up_set(s(&[1, 2])).unwrap(), brute_up(&d2, s(&[1, 2])));
        assert_eq!(d2.up_set(s(&[1, 2])).unwrap(), s(&[1, 2, 3]));
        assert_eq!(d2.down_set(s(&[1])).unwrap(), s(&[0, 1]));
        assert!(matches!(
            c3.up_set(s(&[5])),
            Err(Error::IndexOutOfRange { index: 5, size: 3 })
        ));
    }

    #[test]
    fn upset_predicates() {
        let c3 = FinPoset::chain(3);
        assert!(c3.is_upset(s(&[1, 2])));
        assert!(!c3.is_upset(s(&[1])));
        let d2 = diamond();
        assert!(d2.is_downset(s(&[0, 1, 2])));
        assert!(!d2.is_upset(s(&[0, 1, 2])));
    }

    #[test]
    fn upset_counts() {
        assert_eq!(
            FinPoset::chain(2).all_upsets().unwrap(),
            vec![s(&[]), s(&[1]), s(&[0, 1])]
        );
        assert_eq!(FinPoset::antichain(2).all_upsets().unwrap().len(), 4);
        assert_eq!(FinPoset::chain(3).all_upsets().unwrap().len(), 4);
        assert_eq!(FinPoset::antichain(5).all_upsets().unwrap().len(), 32);
        assert!(matches!(
            FinPoset::antichain(5).all_upsets_bounded(10),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn upsets_match_brute_force() {
        let d2 = diamond();
        let brute: Vec<Subset> = crate::subset::subsets_of(d2.carrier())
            .filter(|&x| brute_up(&d2, x) == x)
            .collect();
        let mut got = d2.all_upsets().unwrap();
        got.sort();
        assert_eq!(got, brute);
    }

    #[test]
    fn order_preservation_and_p_morphisms() {
        let c2 = FinPoset::chain(2);
        assert!(PosetMap::identity(&c2).is_order_preserving());
        let swap = PosetMap::new(c2.clone(), c2.clone(), vec![1, 0]).unwrap();
        assert!(!swap.is_order_preserving());
        // x, y -> x
        let collapse = PosetMap::new(c2.clone(), c2.clone(), vec![0, 0]).unwrap();
        assert!(collapse.is_order_preserving());
        assert!(!collapse.is_p_morphism());
        assert_eq!(collapse.p_morphism_violation(), Some(1));
        let c3_c2 = PosetMap::new(FinPoset::chain(3), c2.clone(), vec![0, 0, 1]).unwrap();
        assert!(c3_c2.is_p_morphism());
        assert!(PosetMap::identity(&diamond()).is_p_morphism());
    }

    #[test]
    fn join_irreducibles() {
        assert_eq!(FinPoset::chain(3).join_irreducibles(), s(&[1, 2]));
        assert_eq!(diamond().join_irreducibles(), s(&[1, 2]));
        assert_eq!(FinPoset::chain(2).join_irreducibles(), s(&[1]));
    }

    #[test]
    fn pairs_loader_rejects_cycles() {
        assert!(FinPoset::from_pairs(2, &[(0, 1), (1, 0)]).is_err());
        assert!(FinPoset::from_pairs(2, &[(0, 2)]).is_err());
        let p = FinPoset::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.cover_pairs(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn function_enumeration() {
        assert_eq!(all_functions(2, 3).count(), 9);
        assert_eq!(all_functions(0, 3).count(), 1);
        assert_eq!(all_functions(2, 0).count(), 0);
        assert_eq!(all_functions(0, 0).count(), 1);
    }
}
