//! Finite families of definable sets standing in for quantifiers over all
//! sets of a given kind. See the module docs of `fan` for why they suffice.

use std::collections::HashSet;
use std::sync::Arc;

use super::{DefinableSet, FanSpace, Trace};
use crate::error::Result;
use crate::subset::{subsets_of, Subset};

/// How many fresh indices beyond the bound each tail receives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisConfig {
    pub depth: usize,
}

impl Default for BasisConfig {
    fn default() -> Self {
        BasisConfig { depth: 1 }
    }
}

/// Per-tail trace menu plus the skeleton subsets to cross it with.
#[derive(Clone, Debug)]
pub struct ShapeBasis {
    space: Arc<FanSpace>,
    bound: u64,
    depth: usize,
    moduli: Vec<u64>,
    singles: Vec<Vec<u64>>,
}

impl ShapeBasis {
    /// `bound` is the largest index any object under study mentions; the
    /// space's own excluded indices are always taken into account.
    pub fn new(space: &Arc<FanSpace>, bound: Option<u64>, cfg: BasisConfig) -> ShapeBasis {
        let bound = bound
            .into_iter()
            .chain(space.max_index())
            .max()
            .unwrap_or(0);
        ShapeBasis {
            space: space.clone(),
            bound,
            depth: cfg.depth.max(1),
            moduli: vec![1; space.num_tails()],
            singles: vec![Vec::new(); space.num_tails()],
        }
    }

    /// Adds the residue classes mod `m` on tail `t`.
    pub fn with_modulus(mut self, t: usize, m: u64) -> Result<ShapeBasis> {
        self.moduli[t] = super::trace::lcm(self.moduli[t], m)?;
        Ok(self)
    }

    /// Adds singleton traces at specific indices of tail `t`.
    pub fn with_singles(mut self, t: usize, indices: impl IntoIterator<Item = u64>) -> ShapeBasis {
        let ex = &self.space.tails()[t].excluded;
        self.singles[t].extend(indices.into_iter().filter(|i| ex.binary_search(i).is_err()));
        self.singles[t].sort_unstable();
        self.singles[t].dedup();
        self
    }

    pub fn space(&self) -> &Arc<FanSpace> {
        &self.space
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Fresh generic indices of tail `t`: at least `depth`, and at least one
    /// per residue class of the tail's modulus.
    pub fn fresh(&self, t: usize) -> Vec<u64> {
        let k = self.depth.max(self.moduli[t] as usize);
        let mut out = Vec::with_capacity(k);
        let mut last = self.bound;
        for _ in 0..k {
            last = self.space.generic_after(t, last);
            out.push(last);
        }
        out
    }

    fn residue_unions(&self, t: usize) -> Vec<Trace> {
        let m = self.moduli[t];
        if m == 1 {
            return Vec::new();
        }
        let all = (1u64 << m) - 1;
        (1..all)
            .filter_map(|r| Trace::periodic(m, r, []).ok())
            .collect()
    }

    /// Candidate traces for tail `t`.
    pub fn tail_options(&self, t: usize) -> Vec<Trace> {
        let mut opts = vec![Trace::empty(), Trace::full()];
        for f in self.fresh(t) {
            opts.push(Trace::finite([f]));
            opts.push(Trace::cofinite([f]));
        }
        let singles = &self.singles[t];
        for r in self.residue_unions(t) {
            if !singles.is_empty() {
                let mut thin = r.clone();
                for &s in singles {
                    thin = thin.with_membership(s, false);
                }
                opts.push(thin);
            }
            opts.push(r);
        }
        for &s in singles {
            opts.push(Trace::finite([s]));
            opts.push(Trace::cofinite([s]));
        }
        let ex = &self.space.tails()[t].excluded;
        let mut seen = HashSet::new();
        opts.into_iter()
            .map(|o| o.normalized(ex))
            .filter(|o| seen.insert(o.clone()))
            .collect()
    }

    /// Every combination of a skeleton subset drawn from `named` with one
    /// option per tail, deduplicated, in a fixed order.
    fn product(&self, named: &[Subset], keep: impl Fn(&DefinableSet) -> bool) -> Vec<DefinableSet> {
        let options: Vec<Vec<Trace>> = (0..self.space.num_tails())
            .map(|t| self.tail_options(t))
            .collect();
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let mut choice = vec![0usize; options.len()];
        for &s in named {
            loop {
                let tails = choice
                    .iter()
                    .enumerate()
                    .map(|(t, &c)| options[t][c].clone())
                    .collect();
                let d =
                    DefinableSet::new(self.space.clone(), s, tails).expect("shape-basis member");
                if keep(&d) && seen.insert(d.clone()) {
                    out.push(d);
                }
                // Odometer over the per-tail menus.
                let mut t = 0;
                loop {
                    if t == choice.len() {
                        break;
                    }
                    choice[t] += 1;
                    if choice[t] < options[t].len() {
                        break;
                    }
                    choice[t] = 0;
                    t += 1;
                }
                if t == choice.len() {
                    break;
                }
            }
        }
        out
    }

    fn all_named(&self) -> Vec<Subset> {
        subsets_of(self.space.skeleton().carrier()).collect()
    }

    fn named_upsets(&self) -> Vec<Subset> {
        self.space
            .skeleton()
            .all_upsets()
            .expect("skeleton within bounds")
    }

    fn named_downsets(&self) -> Vec<Subset> {
        self.space
            .skeleton()
            .all_downsets()
            .expect("skeleton within bounds")
    }

    pub fn all_sets(&self) -> Vec<DefinableSet> {
        self.product(&self.all_named(), |_| true)
    }

    pub fn clopens(&self) -> Vec<DefinableSet> {
        self.product(&self.all_named(), DefinableSet::is_clopen)
    }

    pub fn clopen_upsets(&self) -> Vec<DefinableSet> {
        self.product(&self.named_upsets(), |d| d.is_clopen() && d.is_upset_def())
    }

    pub fn open_upsets(&self) -> Vec<DefinableSet> {
        self.product(&self.named_upsets(), |d| d.is_open() && d.is_upset_def())
    }

    pub fn downsets(&self) -> Vec<DefinableSet> {
        self.product(&self.named_downsets(), DefinableSet::is_downset_def)
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    #[test]
    fn x4_clopen_upsets() {
        let x = Arc::new(x4());
        let b = ShapeBasis::new(&x, None, BasisConfig::default());
        // A clopen upset of X4 meeting the naturals contains ∞, hence is cofinite.
        let cu = b.clopen_upsets();
        assert!(cu
            .iter()
            .all(|u| u.named().is_empty() == u.trace(0).is_finite_mode()));
        assert!(cu.contains(&DefinableSet::full(&x)));
        assert!(cu.contains(&DefinableSet::empty(&x)));
        assert_eq!(cu.len(), 3);
    }

    #[test]
    fn moduli_add_residue_classes() {
        let x = Arc::new(x3());
        let b = ShapeBasis::new(&x, Some(3), BasisConfig::default())
            .with_modulus(0, 2)
            .unwrap();
        assert_eq!(b.fresh(0), vec![4, 5]);
        let evens = Trace::periodic(2, 1, []).unwrap();
        assert!(b.tail_options(0).contains(&evens));
        assert!(b.open_upsets().iter().any(|u| u.trace(0) == &evens));
    }
}
