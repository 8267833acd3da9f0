//! Canonical labeling of small posets and enumeration up to isomorphism.
//!
//! Labeling refines an initial degree coloring by the colors of strict
//! up- and down-sets until stable, then searches orderings that respect the
//! color classes with branch-and-bound on the adjacency encoding. Twins
//! (elements with identical relations to everything else) are tried once.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poset::FinPoset;
use crate::subset::Subset;

/// Largest carrier accepted by [`canonical_form`].
pub const CANON_MAX: usize = 11;

/// Default and hard bounds for [`enumerate_posets`].
pub const ENUM_DEFAULT_BOUND: usize = 7;
pub const ENUM_HARD_BOUND: usize = 8;

/// Isomorphism-invariant key of a poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey {
    pub size: usize,
    pub bits: u128,
}

fn refine_colors(p: &FinPoset) -> Vec<usize> {
    let n = p.size();
    let mut colors: Vec<usize> = {
        let sig: Vec<(usize, usize)> = (0..n)
            .map(|i| (p.down_of(i).len(), p.up_of(i).len()))
            .collect();
        relabel(&sig)
    };
    loop {
        let sig: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|i| {
                let mut d: Vec<usize> = p.down_of(i).without(i).iter().map(|j| colors[j]).collect();
                let mut u: Vec<usize> = p.up_of(i).without(i).iter().map(|j| colors[j]).collect();
                d.sort_unstable();
                u.sort_unstable();
                (colors[i], d, u)
            })
            .collect();
        let next = relabel(&sig);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

fn relabel<T: Ord + Clone>(sig: &[T]) -> Vec<usize> {
    let mut uniq: Vec<T> = sig.to_vec();
    uniq.sort();
    uniq.dedup();
    sig.iter()
        .map(|s| uniq.binary_search(s).expect("present"))
        .collect()
}

struct Search<'a> {
    p: &'a FinPoset,
    slots: Vec<usize>,
    best: Option<(Vec<bool>, Vec<usize>)>,
    colors: Vec<usize>,
}

impl Search<'_> {
    fn bits_for(&self, placed: &[usize], x: usize) -> Vec<bool> {
        let mut v = Vec::with_capacity(2 * placed.len());
        for &y in placed {
            v.push(self.p.leq(y, x));
            v.push(self.p.leq(x, y));
        }
        v
    }

    fn go(&mut self, placed: &mut Vec<usize>, used: Subset, bits: &mut Vec<bool>) {
        let k = placed.len();
        if k == self.slots.len() {
            let better = match &self.best {
                None => true,
                Some((b, _)) => bits.as_slice() < b.as_slice(),
            };
            if better {
                self.best = Some((bits.clone(), placed.clone()));
            }
            return;
        }
        let color = self.slots[k];
        let mut tried: Vec<usize> = Vec::new();
        for x in 0..self.p.size() {
            if used.contains(x) || self.colors[x] != color {
                continue;
            }
            if tried.iter().any(|&t| self.twins(t, x)) {
                continue;
            }
            tried.push(x);
            let add = self.bits_for(placed, x);
            let start = bits.len();
            bits.extend_from_slice(&add);
            let prune = match &self.best {
                Some((b, _)) => bits[..] > b[..bits.len()],
                None => false,
            };
            if !prune {
                placed.push(x);
                self.go(placed, used.with(x), bits);
                placed.pop();
            }
            bits.truncate(start);
        }
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        let strip = Subset::singleton(a).with(b);
        self.p.up_of(a).difference(strip) == self.p.up_of(b).difference(strip)
            && self.p.down_of(a).difference(strip) == self.p.down_of(b).difference(strip)
    }
}

/// Canonical key of `p` together with the labeling `position -> element`
/// that realizes it.
pub fn canonical_form(p: &FinPoset) -> Result<(CanonKey, Vec<usize>)> {
    let n = p.size();
    if n > CANON_MAX {
        return Err(Error::BoundExceeded {
            size: n,
            bound: CANON_MAX,
        });
    }
    let colors = refine_colors(p);
    let mut slots = colors.clone();
    slots.sort_unstable();
    let mut search = Search {
        p,
        slots,
        best: None,
        colors,
    };
    search.go(&mut Vec::new(), Subset::EMPTY, &mut Vec::new());
    let (bits, order) = search.best.unwrap_or_default();
    let mut code: u128 = 0;
    for b in bits {
        code = code << 1 | b as u128;
    }
    Ok((
        CanonKey {
            size: n,
            bits: code,
        },
        order,
    ))
}

/// The canonically relabeled copy of `p`.
pub fn canonical_poset(p: &FinPoset) -> Result<FinPoset> {
    let (_, order) = canonical_form(p)?;
    Ok(FinPoset::from_fn(p.size(), |a, b| p.leq(order[a], order[b])).expect("relabeling"))
}

/// An isomorphism `p -> q` (as an index map) if one exists.
pub fn find_isomorphism(p: &FinPoset, q: &FinPoset) -> Result<Option<Vec<usize>>> {
    if p.size() != q.size() {
        return Ok(None);
    }
    let (kp, op) = canonical_form(p)?;
    let (kq, oq) = canonical_form(q)?;
    if kp != kq {
        return Ok(None);
    }
    let mut map = vec![0; p.size()];
    for pos in 0..p.size() {
        map[op[pos]] = oq[pos];
    }
    debug_assert!(p.is_isomorphism(q, &map));
    Ok(Some(map))
}

/// One representative per isomorphism class of posets of size `n`, in
/// increasing canonical-key order.
pub fn enumerate_posets(n: usize) -> Result<Vec<FinPoset>> {
    enumerate_posets_bounded(n, ENUM_DEFAULT_BOUND)
}

pub fn enumerate_posets_bounded(n: usize, bound: usize) -> Result<Vec<FinPoset>> {
    let bound = bound.min(ENUM_HARD_BOUND);
    if n > bound {
        return Err(Error::BoundExceeded { size: n, bound });
    }
    let mut level: Vec<FinPoset> = vec![FinPoset::empty()];
    for k in 0..n {
        let mut next: BTreeMap<CanonKey, FinPoset> = BTreeMap::new();
        for p in &level {
            // Adjoin a new maximal element whose strict down-set is `d`.
            for d in p.all_downsets()? {
                let mut rows: Vec<Subset> = (0..k)
                    .map(|i| {
                        if d.contains(i) {
                            p.up_of(i).with(k)
                        } else {
                            p.up_of(i)
                        }
                    })
                    .collect();
                rows.push(Subset::singleton(k));
                let q = FinPoset::from_up_rows(rows).expect("extension by a maximal element");
                let (key, _) = canonical_form(&q)?;
                next.entry(key)
                    .or_insert_with(|| canonical_poset(&q).expect("small"));
            }
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

/// All posets of every size `0..=n`.
pub fn enumerate_posets_upto(n: usize) -> Result<Vec<FinPoset>> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(enumerate_posets(k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::all_functions;
    use std::collections::BTreeSet;

    /// Independent oracle: minimum adjacency matrix over all n! relabelings.
    fn brute_key(p: &FinPoset) -> Vec<bool> {
        let n = p.size();
        let mut best: Option<Vec<bool>> = None;
        for f in all_functions(n, n) {
            let mut seen = Subset::EMPTY;
            if f.iter().any(|&x| {
                let dup = seen.contains(x);
                seen = seen.with(x);
                dup
            }) {
                continue;
            }
            let v: Vec<bool> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| p.leq(f[i], f[j]))
                .collect();
            if best.as_ref().is_none_or(|b| &v < b) {
                best = Some(v);
            }
        }
        best.unwrap_or_default()
    }

    /// Every labeled poset on n points by brute force over relations.
    fn all_labeled(n: usize) -> Vec<FinPoset> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .collect();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let ok = FinPoset::from_fn(n, |i, j| i == j || chosen.contains(&(i, j)));
            if let Ok(p) = ok {
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn counts_small() {
        let counts: Vec<usize> = (0..=5)
            .map(|n| enumerate_posets(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn counts_match_brute_force_oracle() {
        for n in 0..=4 {
            let classes: BTreeSet<Vec<bool>> = all_labeled(n).iter().map(brute_key).collect();
            assert_eq!(classes.len(), enumerate_posets(n).unwrap().len(), "n={n}");
        }
    }

    #[test]
    fn representatives_pairwise_non_isomorphic() {
        for n in 0..=5 {
            let reps = enumerate_posets(n).unwrap();
            let keys: BTreeSet<Vec<bool>> = reps.iter().map(brute_key).collect();
            assert_eq!(keys.len(), reps.len());
        }
    }

    #[test]
    fn labeled_isomorphic_posets_share_keys() {
        for p in all_labeled(3) {
            let q = canonical_poset(&p).unwrap();
            assert_eq!(canonical_form(&p).unwrap().0, canonical_form(&q).unwrap().0);
            assert!(find_isomorphism(&p, &q).unwrap().is_some());
        }
    }

    #[test]
    fn larger_counts() {
        assert_eq!(enumerate_posets(6).unwrap().len(), 318);
        assert_eq!(enumerate_posets(7).unwrap().len(), 2045);
        assert!(enumerate_posets(8).is_err());
    }
}
