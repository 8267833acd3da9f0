//! Definable subsets of a fan space and their operators.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{FanSpace, Point, Trace};
use crate::error::{malformed, Error, Result};
use crate::subset::Subset;

/// A subset of a fan space: a set of skeleton points plus one trace per tail.
/// Traces are kept normalized against the tail's excluded indices, so
/// structural equality is set equality.
#[derive(Clone)]
pub struct DefinableSet {
    space: Arc<FanSpace>,
    named: Subset,
    tails: Vec<Trace>,
}

fn same_space(a: &Arc<FanSpace>, b: &Arc<FanSpace>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for DefinableSet {
    fn eq(&self, other: &Self) -> bool {
        self.named == other.named
            && self.tails == other.tails
            && same_space(&self.space, &other.space)
    }
}

impl Eq for DefinableSet {}

impl Hash for DefinableSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.named.hash(state);
        self.tails.hash(state);
    }
}

impl fmt::Debug for DefinableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{named: {:?}, tails: {:?}}}",
            self.named.to_vec(),
            self.tails
        )
    }
}

impl DefinableSet {
    pub fn new(space: Arc<FanSpace>, named: Subset, tails: Vec<Trace>) -> Result<DefinableSet> {
        if !named.fits(space.skeleton_size()) {
            return Err(malformed("set.named", "index outside the skeleton"));
        }
        if tails.len() != space.num_tails() {
            return Err(malformed(
                "set.tails",
                format!("{} traces for {} tails", tails.len(), space.num_tails()),
            ));
        }
        Ok(Self::build(space, named, tails))
    }

    fn build(space: Arc<FanSpace>, named: Subset, tails: Vec<Trace>) -> DefinableSet {
        let tails = tails
            .into_iter()
            .zip(space.tails())
            .map(|(tr, t)| tr.normalized(&t.excluded))
            .collect();
        DefinableSet {
            space,
            named,
            tails,
        }
    }

    pub fn empty(space: &Arc<FanSpace>) -> DefinableSet {
        DefinableSet {
            space: space.clone(),
            named: Subset::EMPTY,
            tails: vec![Trace::empty(); space.num_tails()],
        }
    }

    pub fn full(space: &Arc<FanSpace>) -> DefinableSet {
        DefinableSet {
            space: space.clone(),
            named: space.skeleton().carrier(),
            tails: vec![Trace::full(); space.num_tails()],
        }
    }

    /// A finite set of points.
    pub fn from_points<I: IntoIterator<Item = Point>>(
        space: &Arc<FanSpace>,
        points: I,
    ) -> Result<DefinableSet> {
        let mut named = Subset::EMPTY;
        let mut idx: Vec<Vec<u64>> = vec![Vec::new(); space.num_tails()];
        for p in points {
            space.check_point(p, "set.points")?;
            match p {
                Point::Skel(i) => named = named.with(i),
                Point::Gen { tail, index } => idx[tail].push(index),
            }
        }
        let tails = idx.into_iter().map(Trace::finite).collect();
        Ok(Self::build(space.clone(), named, tails))
    }

    pub fn space(&self) -> &Arc<FanSpace> {
        &self.space
    }

    pub fn named(&self) -> Subset {
        self.named
    }

    pub fn tails(&self) -> &[Trace] {
        &self.tails
    }

    pub fn trace(&self, t: usize) -> &Trace {
        &self.tails[t]
    }

    pub fn with_trace(&self, t: usize, tr: Trace) -> DefinableSet {
        let mut tails = self.tails.clone();
        tails[t] = tr;
        Self::build(self.space.clone(), self.named, tails)
    }

    pub fn with_named(&self, named: Subset) -> DefinableSet {
        DefinableSet {
            space: self.space.clone(),
            named,
            tails: self.tails.clone(),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match p {
            Point::Skel(i) => self.named.contains(i),
            Point::Gen { tail, index } => {
                self.space.is_point(p) && self.tails[tail].contains(index)
            }
        }
    }

    /// Largest exceptional index over all traces.
    pub fn max_index(&self) -> Option<u64> {
        self.tails.iter().filter_map(Trace::max_exception).max()
    }

    /// Least common multiple of the trace periods.
    pub fn period(&self) -> Result<u64> {
        self.tails
            .iter()
            .try_fold(1, |acc, t| super::trace::lcm(acc, t.period()))
    }

    pub fn is_empty(&self) -> bool {
        self.named.is_empty()
            && self
                .tails
                .iter()
                .all(|t| t.is_finite_mode() && t.exceptions().is_empty())
    }

    fn check(&self, other: &DefinableSet) -> Result<()> {
        if same_space(&self.space, &other.space) {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    fn zip(
        &self,
        other: &DefinableSet,
        named: Subset,
        op: impl Fn(bool, bool) -> bool + Copy,
    ) -> Result<DefinableSet> {
        self.check(other)?;
        let tails = self
            .tails
            .iter()
            .zip(&other.tails)
            .map(|(a, b)| a.zip(b, op))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::build(self.space.clone(), named, tails))
    }

    pub fn union(&self, other: &DefinableSet) -> Result<DefinableSet> {
        self.zip(other, self.named.union(other.named), |a, b| a || b)
    }

    pub fn intersect(&self, other: &DefinableSet) -> Result<DefinableSet> {
        self.zip(other, self.named.intersection(other.named), |a, b| a && b)
    }

    pub fn difference(&self, other: &DefinableSet) -> Result<DefinableSet> {
        self.zip(other, self.named.difference(other.named), |a, b| a && !b)
    }

    pub fn complement(&self) -> DefinableSet {
        DefinableSet {
            space: self.space.clone(),
            named: self.named.complement(self.space.skeleton_size()),
            tails: self.tails.iter().map(Trace::complement).collect(),
        }
    }

    pub fn is_subset(&self, other: &DefinableSet) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// `↓D`: skeleton down-closure, plus every tail lying below a named point.
    pub fn down_closure(&self) -> DefinableSet {
        let sk = self.space.skeleton();
        let named = sk.down_set_unchecked(self.named);
        let tails = self
            .space
            .tails()
            .iter()
            .zip(&self.tails)
            .map(|(t, tr)| {
                if t.below.intersection(self.named).is_empty() {
                    tr.clone()
                } else {
                    Trace::full()
                }
            })
            .collect();
        DefinableSet {
            space: self.space.clone(),
            named,
            tails,
        }
    }

    /// `↑D`: adds `below_t` for every tail meeting `D`.
    pub fn up_closure(&self) -> DefinableSet {
        let mut named = self.named;
        for (t, tr) in self.space.tails().iter().zip(&self.tails) {
            if !(tr.is_finite_mode() && tr.exceptions().is_empty()) {
                named = named.union(t.below);
            }
        }
        DefinableSet {
            space: self.space.clone(),
            named: self.space.skeleton().up_set_unchecked(named),
            tails: self.tails.clone(),
        }
    }

    /// Adds the limit of every tail met infinitely often.
    pub fn closure(&self) -> DefinableSet {
        let mut named = self.named;
        for (t, tr) in self.space.tails().iter().zip(&self.tails) {
            if tr.is_infinite() {
                named = named.with(t.limit);
            }
        }
        self.with_named(named)
    }

    /// Removes every limit some tail of which is not cofinitely inside.
    pub fn interior(&self) -> DefinableSet {
        let mut named = self.named;
        for (t, tr) in self.space.tails().iter().zip(&self.tails) {
            if !tr.is_cofinite() {
                named = named.without(t.limit);
            }
        }
        self.with_named(named)
    }

    pub fn is_open(&self) -> bool {
        self.interior() == *self
    }

    pub fn is_closed(&self) -> bool {
        self.closure() == *self
    }

    pub fn is_clopen(&self) -> bool {
        self.is_open() && self.is_closed()
    }

    pub fn is_upset_def(&self) -> bool {
        self.up_closure() == *self
    }

    pub fn is_downset_def(&self) -> bool {
        self.down_closure() == *self
    }

    /// `↓cl D`, the closure in the spectral topology of a Priestley space.
    pub fn spectral_closure(&self) -> DefinableSet {
        self.closure().down_closure()
    }

    /// The largest upset inside `D`.
    pub fn box_op(&self) -> DefinableSet {
        self.complement().down_closure().complement()
    }

    /// `U → V = X ∖ ↓cl(U ∖ V)` for open upsets `U`, `V`.
    pub fn open_upset_implication(u: &DefinableSet, v: &DefinableSet) -> Result<DefinableSet> {
        Ok(u.difference(v)?.spectral_closure().complement())
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    fn g(tail: usize, index: u64) -> Point {
        Point::Gen { tail, index }
    }

    #[test]
    fn x2_evens_and_odds() {
        let x = Arc::new(x2());
        let evens = DefinableSet::new(
            x.clone(),
            Subset::EMPTY,
            vec![Trace::full(), Trace::empty()],
        )
        .unwrap();
        let odds = DefinableSet::new(
            x.clone(),
            Subset::EMPTY,
            vec![Trace::empty(), Trace::full()],
        )
        .unwrap();
        let all = evens.union(&odds).unwrap();
        assert!(all.tails().iter().all(Trace::is_cofinite));
        assert!(all.named().is_empty());
        assert_eq!(evens.closure(), evens.with_named(Subset::singleton(0)));
        assert!(evens.closure().is_clopen());
        assert_eq!(evens.complement().complement(), evens);
    }

    #[test]
    fn down_closures() {
        let x4 = Arc::new(x4());
        let inf = DefinableSet::from_points(&x4, [Point::Skel(0)]).unwrap();
        assert_eq!(inf.down_closure(), DefinableSet::full(&x4));
        assert!(!inf.is_open());
        let x3 = Arc::new(x3());
        let d = DefinableSet::from_points(&x3, [g(0, 2), Point::Skel(0)]).unwrap();
        assert_eq!(d.down_closure(), d);
        let ne = Arc::new(ne_space());
        let p0 = DefinableSet::from_points(&ne, [Point::Skel(1)]).unwrap();
        assert_eq!(p0.down_closure().named(), Subset::from_indices([0, 1]));
        assert!(!p0.down_closure().is_open());
    }

    #[test]
    fn closure_interior() {
        let x3 = Arc::new(x3());
        let nat = DefinableSet::new(x3.clone(), Subset::EMPTY, vec![Trace::full()]).unwrap();
        assert_eq!(nat.closure(), DefinableSet::full(&x3));
        assert_eq!(DefinableSet::empty(&x3).closure(), DefinableSet::empty(&x3));
        let almost =
            DefinableSet::new(x3.clone(), Subset::singleton(0), vec![Trace::cofinite([1])])
                .unwrap();
        assert!(almost.is_open());
        let thin = DefinableSet::new(x3, Subset::singleton(0), vec![Trace::finite([1])]).unwrap();
        assert_eq!(thin.interior().named(), Subset::EMPTY);
    }

    #[test]
    fn box_and_implication() {
        let x4 = Arc::new(x4());
        let full = DefinableSet::full(&x4);
        assert_eq!(full.box_op(), full);
        let nat = DefinableSet::new(x4.clone(), Subset::EMPTY, vec![Trace::full()]).unwrap();
        assert!(nat.box_op().is_empty());
        let v = DefinableSet::new(x4.clone(), Subset::singleton(0), vec![Trace::cofinite([0])])
            .unwrap();
        assert!(v.is_open() && v.is_upset_def());
        assert_eq!(DefinableSet::open_upset_implication(&full, &v).unwrap(), v);
        assert_eq!(DefinableSet::open_upset_implication(&v, &v).unwrap(), full);
        let x1 = Arc::new(x1());
        let y = DefinableSet::from_points(&x1, [Point::Skel(1)]).unwrap();
        assert_eq!(y.box_op(), y);
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let a = DefinableSet::full(&Arc::new(x3()));
        let b = DefinableSet::full(&Arc::new(x4()));
        assert!(matches!(a.union(&b), Err(Error::Mismatch)));
    }
}
