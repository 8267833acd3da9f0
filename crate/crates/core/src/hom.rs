//! Maps between finite lattices and the homomorphism predicates of each
//! signature.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::FinLattice;

/// A total map between the carriers of two finite lattices. Preservation
/// properties are predicates, not construction invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgHom {
    pub dom: FinLattice,
    pub cod: FinLattice,
    pub map: Vec<usize>,
}

/// The first operation found not to be preserved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "fails", rename_all = "snake_case")]
pub enum HomViolation {
    Meet { a: usize, b: usize },
    Join { a: usize, b: usize },
    Top,
    Bottom,
    Implication { a: usize, b: usize },
}

impl AlgHom {
    pub fn new(dom: FinLattice, cod: FinLattice, map: Vec<usize>) -> Result<AlgHom> {
        if map.len() != dom.size() {
            return Err(crate::error::malformed(
                "hom.map",
                format!("{} entries for a domain of size {}", map.len(), dom.size()),
            ));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= cod.size()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                size: cod.size(),
            });
        }
        Ok(AlgHom { dom, cod, map })
    }

    pub fn identity(l: &FinLattice) -> AlgHom {
        AlgHom {
            dom: l.clone(),
            cod: l.clone(),
            map: (0..l.size()).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &AlgHom) -> Result<AlgHom> {
        if g.dom != self.cod {
            return Err(Error::Mismatch);
        }
        Ok(AlgHom {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            map: self.map.iter().map(|&x| g.map[x]).collect(),
        })
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.dom.size();
        (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
    }

    fn meet_violation(&self) -> Option<HomViolation> {
        if self.apply(self.dom.top()) != self.cod.top() {
            return Some(HomViolation::Top);
        }
        self.pairs()
            .find(|&(a, b)| {
                self.apply(self.dom.meet(a, b)) != self.cod.meet(self.apply(a), self.apply(b))
            })
            .map(|(a, b)| HomViolation::Meet { a, b })
    }

    fn join_violation(&self) -> Option<HomViolation> {
        self.pairs()
            .find(|&(a, b)| {
                self.apply(self.dom.join(a, b)) != self.cod.join(self.apply(a), self.apply(b))
            })
            .map(|(a, b)| HomViolation::Join { a, b })
    }

    fn implication_violation(&self) -> Option<HomViolation> {
        self.pairs()
            .find(|&(a, b)| {
                let lhs = self.dom.heyting_implication(a, b);
                let rhs = self.cod.heyting_implication(self.apply(a), self.apply(b));
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) => self.apply(l) != r,
                    _ => true,
                }
            })
            .map(|(a, b)| HomViolation::Implication { a, b })
    }

    /// Preserves `∧` and `1`.
    pub fn ms_violation(&self) -> Option<HomViolation> {
        self.meet_violation()
    }

    /// Preserves `∧`, `∨`, `0`, `1`.
    pub fn dl_violation(&self) -> Option<HomViolation> {
        self.meet_violation()
            .or_else(|| self.join_violation())
            .or_else(|| {
                (self.apply(self.dom.bottom()) != self.cod.bottom()).then_some(HomViolation::Bottom)
            })
    }

    pub fn ha_violation(&self) -> Option<HomViolation> {
        self.dl_violation().or_else(|| self.implication_violation())
    }

    /// Preserves `∧`, `1`, `→`.
    pub fn brw_semilattice_violation(&self) -> Option<HomViolation> {
        self.meet_violation()
            .or_else(|| self.implication_violation())
    }

    /// Preserves `∧`, `1`, `→`, `∨`; the bottom need not be preserved.
    pub fn brw_algebra_violation(&self) -> Option<HomViolation> {
        self.brw_semilattice_violation()
            .or_else(|| self.join_violation())
    }

    pub fn is_ms_hom(&self) -> bool {
        self.ms_violation().is_none()
    }

    pub fn is_dl_hom(&self) -> bool {
        self.dl_violation().is_none()
    }

    pub fn is_ha_hom(&self) -> bool {
        self.ha_violation().is_none()
    }

    pub fn is_brw_semilattice_hom(&self) -> bool {
        self.brw_semilattice_violation().is_none()
    }

    pub fn is_brw_algebra_hom(&self) -> bool {
        self.brw_algebra_violation().is_none()
    }
}

/// Which preservation property a search enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Signature {
    MeetSemilattice,
    DistributiveLattice,
}

/// Every homomorphism `a -> b` of the given signature, in lexicographic order
/// of the assignment vector.
pub fn all_homs(a: &FinLattice, b: &FinLattice, sig: Signature) -> Vec<AlgHom> {
    let n = a.size();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    extend(a, b, sig, 0, &mut map, &mut out);
    out
}

fn extend(
    a: &FinLattice,
    b: &FinLattice,
    sig: Signature,
    k: usize,
    map: &mut Vec<usize>,
    out: &mut Vec<AlgHom>,
) {
    if k == a.size() {
        let h = AlgHom {
            dom: a.clone(),
            cod: b.clone(),
            map: map.clone(),
        };
        let ok = match sig {
            Signature::MeetSemilattice => h.is_ms_hom(),
            Signature::DistributiveLattice => h.is_dl_hom(),
        };
        if ok {
            out.push(h);
        }
        return;
    }
    for v in 0..b.size() {
        map[k] = v;
        // Prune on operations whose arguments are already assigned.
        let consistent = (0..=k).all(|i| {
            let (x, y) = (i, k);
            let m = a.meet(x, y);
            let meet_ok = m > k || map[m] == b.meet(map[x], map[y]);
            let j = a.join(x, y);
            let join_ok =
                sig == Signature::MeetSemilattice || j > k || map[j] == b.join(map[x], map[y]);
            meet_ok && join_ok
        });
        let ends_ok = (k != a.top() || v == b.top())
            && (sig == Signature::MeetSemilattice || k != a.bottom() || v == b.bottom());
        if consistent && ends_ok {
            extend(a, b, sig, k + 1, map, out);
        }
    }
    map[k] = usize::MAX;
}
