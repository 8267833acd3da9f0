//! Pointed generalized Priestley and Esakia spaces, admissible sets, and the
//! pointed spectrum of a finite distributive meet-semilattice.

use std::sync::Arc;

use serde::Serialize;

use super::topology::FiniteTopology;
use crate::duality::is_filter;
use crate::error::{Error, Result};
use crate::lattice::{FinLattice, MeetSemilatticeView, SetLattice};
use crate::poset::FinPoset;
use crate::subset::{subsets_of, Subset};

/// A finite poset with a topology, a distinguished subset `X0` and a point
/// `m`. Construction enforces that `m` is the unique maximum and that `X0`
/// avoids it; the remaining conditions are checked by
/// [`PointedGenSpace::pgps_failures`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedGenSpace {
    order: FinPoset,
    topology: FiniteTopology,
    x0: Subset,
    m: usize,
    admissibles: Vec<Subset>,
}

/// Why a space is not a pointed generalized Priestley space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "fails", rename_all = "snake_case")]
pub enum PgpsFailure {
    /// `x ≰ y` and no clopen upset contains `x` but not `y`.
    NotPriestley { x: usize, y: usize },
    /// `x ≠ m` lies below no point of `X0`.
    NotCofinal { x: usize },
    /// The least open neighbourhood of `x ≠ m` misses `X0`.
    NotDense { x: usize },
    /// `x ∈ X0` but no admissible set omits `x`. Reported apart from
    /// [`PgpsFailure::NotDirected`] because the two fail for different reasons.
    EmptyIdeal { x: usize },
    /// `x ∈ X0` and the admissibles `u`, `v` omitting `x` have no common
    /// admissible superset omitting `x`.
    NotDirected { x: usize, u: Subset, v: Subset },
    /// `x ∉ X0` although its admissibles omitting it are nonempty and directed.
    SpuriousX0 { x: usize },
    /// Admissibles do not determine the order at `x`, `y`.
    OrderNotDetermined { x: usize, y: usize },
}

impl PointedGenSpace {
    pub fn new(order: FinPoset, topology: FiniteTopology, x0: Subset, m: usize) -> Result<Self> {
        let n = order.size();
        if topology.size() != n {
            return Err(Error::Mismatch);
        }
        if m >= n {
            return Err(Error::IndexOutOfRange { index: m, size: n });
        }
        if order.maximum() != Some(m) {
            return Err(crate::error::malformed("m", "not the unique maximum"));
        }
        if !x0.is_subset(Subset::full(n).without(m)) {
            return Err(crate::error::malformed("x0", "must lie inside X minus m"));
        }
        let mut s = PointedGenSpace {
            order,
            topology,
            x0,
            m,
            admissibles: Vec::new(),
        };
        s.admissibles = s
            .order
            .all_upsets()?
            .into_iter()
            .filter(|&u| s.topology.is_clopen(u) && s.is_admissible(u))
            .collect();
        s.admissibles.sort_by_key(|u| (u.len(), u.0));
        Ok(s)
    }

    pub fn order(&self) -> &FinPoset {
        &self.order
    }

    pub fn topology(&self) -> &FiniteTopology {
        &self.topology
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    pub fn carrier(&self) -> Subset {
        self.order.carrier()
    }

    pub fn x0(&self) -> Subset {
        self.x0
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `X0 ∖ U` is cofinal in `X ∖ U`.
    pub fn is_admissible(&self, u: Subset) -> bool {
        let rest = self.carrier().difference(u);
        let below = self
            .order
            .down_set(self.x0.difference(u))
            .expect("in range");
        rest.is_subset(below)
    }

    /// Admissible clopen upsets, sorted by size then bits.
    pub fn admissibles(&self) -> &[Subset] {
        &self.admissibles
    }

    pub fn is_admissible_clopen_upset(&self, u: Subset) -> bool {
        self.admissibles.contains(&u)
    }

    /// Admissible sets omitting `x`.
    pub fn ideal_at(&self, x: usize) -> Vec<Subset> {
        self.admissibles
            .iter()
            .copied()
            .filter(|u| !u.contains(x))
            .collect()
    }

    fn directedness(&self, x: usize) -> std::result::Result<(), Option<(Subset, Subset)>> {
        let ix = self.ideal_at(x);
        if ix.is_empty() {
            return Err(None);
        }
        for &u in &ix {
            for &v in &ix {
                if !ix.iter().any(|w| u.union(v).is_subset(*w)) {
                    return Err(Some((u, v)));
                }
            }
        }
        Ok(())
    }

    /// Every condition of a pointed generalized Priestley space that fails,
    /// in a fixed order. Compactness is automatic for finite spaces.
    pub fn pgps_failures(&self) -> Vec<PgpsFailure> {
        let n = self.size();
        let mut out = Vec::new();
        let clopen_upsets: Vec<Subset> = self
            .order
            .all_upsets()
            .expect("carrier within bounds")
            .into_iter()
            .filter(|&u| self.topology.is_clopen(u))
            .collect();
        for x in 0..n {
            for y in 0..n {
                if !self.order.leq(x, y)
                    && !clopen_upsets
                        .iter()
                        .any(|u| u.contains(x) && !u.contains(y))
                {
                    out.push(PgpsFailure::NotPriestley { x, y });
                }
            }
        }
        let cofinal = self.order.down_set(self.x0).expect("in range");
        for x in (0..n).filter(|&x| x != self.m) {
            if !cofinal.contains(x) {
                out.push(PgpsFailure::NotCofinal { x });
            }
            if self
                .topology
                .neighbourhood(x)
                .intersection(self.x0)
                .is_empty()
            {
                out.push(PgpsFailure::NotDense { x });
            }
        }
        for x in 0..n {
            match (self.x0.contains(x), self.directedness(x)) {
                (true, Err(None)) => out.push(PgpsFailure::EmptyIdeal { x }),
                (true, Err(Some((u, v)))) => out.push(PgpsFailure::NotDirected { x, u, v }),
                (false, Ok(())) => out.push(PgpsFailure::SpuriousX0 { x }),
                _ => {}
            }
        }
        for x in 0..n {
            for y in 0..n {
                let det = self
                    .admissibles
                    .iter()
                    .all(|u| !u.contains(x) || u.contains(y));
                if det != self.order.leq(x, y) {
                    out.push(PgpsFailure::OrderNotDetermined { x, y });
                }
            }
        }
        out
    }

    pub fn is_pgps(&self) -> bool {
        self.pgps_failures().is_empty()
    }

    /// Admissibles `U`, `V` with `↓(U ∖ V)` not clopen.
    pub fn pges_violation(&self) -> Option<(Subset, Subset)> {
        for &u in &self.admissibles {
            for &v in &self.admissibles {
                let d = self.order.down_set(u.difference(v)).expect("in range");
                if !self.topology.is_clopen(d) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// A pointed generalized Esakia space.
    pub fn validate_pges(&self) -> bool {
        self.is_pgps() && self.pges_violation().is_none()
    }

    /// A union of differences of admissibles. The differences inside `e`
    /// are closed under union, so `e` qualifies iff they cover it.
    pub fn is_e_clopen(&self, e: Subset) -> bool {
        let mut cover = Subset::EMPTY;
        for &u in &self.admissibles {
            for &v in &self.admissibles {
                let d = u.difference(v);
                if d.is_subset(e) {
                    cover = cover.union(d);
                }
            }
        }
        cover == e
    }

    /// The largest admissible `W` with `W ∩ U ⊆ V`, if there is one.
    pub fn admissible_implication(&self, u: Subset, v: Subset) -> Option<Subset> {
        let cands: Vec<Subset> = self
            .admissibles
            .iter()
            .copied()
            .filter(|w| w.intersection(u).is_subset(v))
            .collect();
        cands
            .iter()
            .copied()
            .find(|&w| cands.iter().all(|c| c.is_subset(w)))
    }

    /// `𝒜(X)` under inclusion. Errors if it is not a lattice.
    pub fn admissible_lattice(&self) -> Result<SetLattice> {
        SetLattice::from_family(self.admissibles.clone())
    }

    /// `𝒜(X)` is closed under intersection and is a Brouwerian semilattice.
    pub fn admissibles_brouwerian(&self) -> bool {
        let closed = self.admissibles.iter().all(|&u| {
            self.admissibles
                .iter()
                .all(|&v| self.admissibles.contains(&u.intersection(v)))
        });
        closed
            && self
                .admissible_lattice()
                .map(|l| MeetSemilatticeView::new(l.lattice).is_brouwerian_semilattice())
                .unwrap_or(false)
    }

    /// Esakia: Priestley and `↓U` clopen for each clopen `U`.
    pub fn is_esakia(&self) -> bool {
        let n = self.size();
        let priestley = !self
            .pgps_failures()
            .iter()
            .any(|f| matches!(f, PgpsFailure::NotPriestley { .. }));
        priestley
            && subsets_of(Subset::full(n))
                .filter(|&u| self.topology.is_clopen(u))
                .all(|u| {
                    self.topology
                        .is_clopen(self.order.down_set(u).expect("in range"))
                })
    }
}

/// Filters of `a` under inclusion, sorted by size then bits.
pub fn filters(a: &MeetSemilatticeView) -> Result<Vec<Subset>> {
    let l = a.base();
    let mut out: Vec<Subset> = l
        .order()
        .all_upsets()?
        .into_iter()
        .filter(|&s| is_filter(l, s))
        .collect();
    out.sort_by_key(|s| (s.len(), s.0));
    Ok(out)
}

fn require_distributive_ms(a: &MeetSemilatticeView) -> Result<()> {
    match a.distributivity_violation() {
        Some((x, y, z)) => Err(Error::NotDistributive { x, y, z }),
        None => Ok(()),
    }
}

/// Meet-prime elements of the filter frame: proper filters `F` such that
/// `G ∩ H ⊆ F` forces `G ⊆ F` or `H ⊆ F`.
pub fn prime_filters_ms(a: &MeetSemilatticeView) -> Result<Vec<Subset>> {
    require_distributive_ms(a)?;
    let fs = filters(a)?;
    let whole = a.base().carrier();
    Ok(fs
        .iter()
        .copied()
        .filter(|&f| {
            f != whole
                && fs.iter().all(|&g| {
                    fs.iter().all(|&h| {
                        !g.intersection(h).is_subset(f) || g.is_subset(f) || h.is_subset(f)
                    })
                })
        })
        .collect())
}

/// Filters `F` such that `a_1, ..., a_n ∉ F` and `⋂ ↑a_i ⊆ ↑c` force
/// `c ∉ F`. The family may be empty, whose intersection is all of `A`, so
/// optimal filters are proper.
pub fn optimal_filters(a: &MeetSemilatticeView) -> Result<Vec<Subset>> {
    require_distributive_ms(a)?;
    let l = a.base();
    let whole = l.carrier();
    Ok(filters(a)?
        .into_iter()
        .filter(|&f| {
            subsets_of(whole.difference(f)).all(|outside| {
                let meet = outside
                    .iter()
                    .fold(whole, |acc, x| acc.intersection(l.principal_filter(x)));
                f.iter().all(|c| !meet.is_subset(l.principal_filter(c)))
            })
        })
        .collect())
}

/// The pointed spectrum of a finite distributive meet-semilattice, with the
/// filter standing for each point.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub algebra: MeetSemilatticeView,
    pub space: Arc<PointedGenSpace>,
    /// `points[i]` is the filter at point `i`; the last one is `A` itself.
    pub points: Vec<Subset>,
}

impl Spectrum {
    /// `φ(a)`: the points containing `a`.
    pub fn phi(&self, a: usize) -> Subset {
        (0..self.points.len())
            .filter(|&i| self.points[i].contains(a))
            .collect()
    }

    pub fn index_of(&self, f: Subset) -> Option<usize> {
        self.points.iter().position(|&p| p == f)
    }

    /// `a ↦ φ(a)` as positions in [`PointedGenSpace::admissibles`], if every
    /// `φ(a)` is admissible and the map is an order isomorphism onto them.
    pub fn phi_iso(&self) -> std::result::Result<Vec<usize>, String> {
        let adm = self.space.admissibles();
        let map: Vec<usize> = (0..self.algebra.size())
            .map(|a| {
                adm.iter()
                    .position(|&u| u == self.phi(a))
                    .ok_or(format!("φ({a}) is not admissible"))
            })
            .collect::<std::result::Result<_, _>>()?;
        let adm_order = FinPoset::from_fn(adm.len(), |i, j| adm[i].is_subset(adm[j]))
            .map_err(|e| e.to_string())?;
        if !self.algebra.base().order().is_isomorphism(&adm_order, &map) {
            return Err(format!("φ = {map:?} is not an order isomorphism onto 𝒜"));
        }
        Ok(map)
    }
}

/// `Opt(A) ∪ {A}` under inclusion, topologized by the subbasis of all `φ(a)`
/// and their complements, with `X0 = Pr(A)` and `m = A`. At finite scale the
/// subbasis footnote about finite intersections does not bite: the generated
/// topology is materialized directly.
pub fn pointed_spectrum(a: &MeetSemilatticeView) -> Result<Spectrum> {
    let opt = optimal_filters(a)?;
    let pr = prime_filters_ms(a)?;
    let whole = a.base().carrier();
    let mut points = opt;
    points.push(whole);
    let n = points.len();
    let order = FinPoset::from_fn(n, |i, j| points[i].is_subset(points[j]))?;
    let phi = |x: usize| -> Subset { (0..n).filter(|&i| points[i].contains(x)).collect() };
    let mut subbasis = Vec::new();
    for x in 0..a.size() {
        subbasis.push(phi(x));
        subbasis.push(phi(x).complement(n));
    }
    let topology = FiniteTopology::from_subbasis(n, subbasis)?;
    let x0: Subset = (0..n).filter(|&i| pr.contains(&points[i])).collect();
    let space = PointedGenSpace::new(order, topology, x0, n - 1)?;
    Ok(Spectrum {
        algebra: a.clone(),
        space: Arc::new(space),
        points,
    })
}

/// The view of a lattice, checked to be a distributive meet-semilattice.
pub fn view(l: &FinLattice) -> Result<MeetSemilatticeView> {
    let v = MeetSemilatticeView::new(l.clone());
    require_distributive_ms(&v)?;
    Ok(v)
}
