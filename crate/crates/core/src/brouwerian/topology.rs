//! Finite topologies generated from a subbasis.
//!
//! A finite topology is determined by the least open neighbourhood of each
//! point, which is the intersection of the subbasic sets containing it. The
//! predicates use those neighbourhoods; [`FiniteTopology::opens`] also
//! materializes the open family literally, by closing the subbasis under
//! finite intersections and then unions.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_CARRIER};

/// Materializing more opens than this is refused.
pub const MAX_OPENS: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopology {
    size: usize,
    subbasis: Vec<Subset>,
    nbhd: Vec<Subset>,
}

impl FiniteTopology {
    pub fn from_subbasis(size: usize, subbasis: Vec<Subset>) -> Result<FiniteTopology> {
        if size > MAX_CARRIER {
            return Err(Error::BoundExceeded {
                size,
                bound: MAX_CARRIER,
            });
        }
        let carrier = Subset::full(size);
        if let Some(s) = subbasis.iter().find(|s| !s.is_subset(carrier)) {
            let index = s.difference(carrier).first().expect("nonempty difference");
            return Err(Error::IndexOutOfRange { index, size });
        }
        let nbhd = (0..size)
            .map(|x| {
                subbasis
                    .iter()
                    .filter(|s| s.contains(x))
                    .fold(carrier, |acc, &s| acc.intersection(s))
            })
            .collect();
        Ok(FiniteTopology {
            size,
            subbasis,
            nbhd,
        })
    }

    pub fn discrete(size: usize) -> FiniteTopology {
        FiniteTopology::from_subbasis(size, (0..size).map(Subset::singleton).collect())
            .expect("singletons fit the carrier")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn subbasis(&self) -> &[Subset] {
        &self.subbasis
    }

    /// The least open set containing `x`.
    pub fn neighbourhood(&self, x: usize) -> Subset {
        self.nbhd[x]
    }

    pub fn is_open(&self, s: Subset) -> bool {
        s.iter().all(|x| self.nbhd[x].is_subset(s))
    }

    pub fn is_closed(&self, s: Subset) -> bool {
        self.is_open(s.complement(self.size))
    }

    pub fn is_clopen(&self, s: Subset) -> bool {
        self.is_open(s) && self.is_closed(s)
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.size).all(|x| self.nbhd[x] == Subset::singleton(x))
    }

    pub fn interior(&self, s: Subset) -> Subset {
        s.iter().filter(|&x| self.nbhd[x].is_subset(s)).collect()
    }

    pub fn closure(&self, s: Subset) -> Subset {
        (0..self.size)
            .filter(|&x| !self.nbhd[x].intersection(s).is_empty())
            .collect()
    }

    /// Every open set, sorted by size then bits: finite intersections of the
    /// subbasis (the empty intersection is the carrier), closed under unions.
    pub fn opens(&self) -> Result<Vec<Subset>> {
        let carrier = Subset::full(self.size);
        let mut basis: BTreeSet<u64> = BTreeSet::from([carrier.0]);
        loop {
            let mut grown = basis.clone();
            for &b in &basis {
                for s in &self.subbasis {
                    grown.insert(b & s.0);
                }
            }
            if grown.len() == basis.len() {
                break;
            }
            basis = grown;
        }
        let mut opens: BTreeSet<u64> = BTreeSet::from([0]);
        for &b in &basis {
            let more: Vec<u64> = opens.iter().map(|&o| o | b).collect();
            opens.extend(more);
            if opens.len() > MAX_OPENS {
                return Err(Error::BoundExceeded {
                    size: opens.len(),
                    bound: MAX_OPENS,
                });
            }
        }
        let mut out: Vec<Subset> = opens.into_iter().map(Subset).collect();
        out.sort_by_key(|s| (s.len(), s.0));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::subsets_of;

    #[test]
    fn materialized_opens_match_the_neighbourhood_predicate() {
        let sub = vec![
            Subset::from_indices([0, 1]),
            Subset::from_indices([1, 2]),
            Subset::from_indices([3]),
        ];
        let t = FiniteTopology::from_subbasis(4, sub).unwrap();
        let opens = t.opens().unwrap();
        for s in subsets_of(Subset::full(4)) {
            assert_eq!(t.is_open(s), opens.contains(&s), "{s:?}");
        }
        assert_eq!(t.neighbourhood(1), Subset::singleton(1));
        assert_eq!(t.neighbourhood(0), Subset::from_indices([0, 1]));
        assert!(!t.is_discrete());
        assert_eq!(
            t.closure(Subset::singleton(1)),
            Subset::from_indices([0, 1, 2])
        );
        assert_eq!(t.interior(Subset::from_indices([0, 2])), Subset::EMPTY);
    }

    #[test]
    fn singletons_generate_the_discrete_topology() {
        let t = FiniteTopology::discrete(3);
        assert!(t.is_discrete());
        assert_eq!(t.opens().unwrap().len(), 8);
        assert!(t.is_clopen(Subset::singleton(2)));
    }

    #[test]
    fn empty_subbasis_is_indiscrete() {
        let t = FiniteTopology::from_subbasis(3, vec![]).unwrap();
        assert_eq!(t.opens().unwrap(), vec![Subset::EMPTY, Subset::full(3)]);
        assert!(!t.is_open(Subset::singleton(0)));
    }
}
