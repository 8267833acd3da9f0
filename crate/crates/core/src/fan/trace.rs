//! Eventually periodic subsets of a tail's index set.

use std::fmt;

use crate::error::{Error, Result};

/// Largest period a trace may carry.
pub const MAX_PERIOD: u64 = 64;

/// An eventually periodic set of natural numbers: `n` is a member iff bit
/// `n mod period` of `residues` differs from `n ∈ exceptions`.
///
/// Canonical form: `period` is minimal for `residues`, `exceptions` is sorted
/// and avoids the owning tail's excluded indices. Two canonical traces over
/// the same tail are equal iff they denote the same set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Trace {
    period: u64,
    residues: u64,
    exceptions: Vec<u64>,
}

fn mask(period: u64) -> u64 {
    if period == 64 {
        u64::MAX
    } else {
        (1u64 << period) - 1
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> Result<u64> {
    let l = a / gcd(a, b) * b;
    if l > MAX_PERIOD {
        Err(Error::PeriodOverflow(l))
    } else {
        Ok(l)
    }
}

impl Trace {
    pub fn empty() -> Trace {
        Trace {
            period: 1,
            residues: 0,
            exceptions: Vec::new(),
        }
    }

    pub fn full() -> Trace {
        Trace {
            period: 1,
            residues: 1,
            exceptions: Vec::new(),
        }
    }

    /// Exactly the listed indices.
    pub fn finite<I: IntoIterator<Item = u64>>(members: I) -> Trace {
        Self::raw(1, 0, members.into_iter().collect())
    }

    /// Everything except the listed indices.
    pub fn cofinite<I: IntoIterator<Item = u64>>(missing: I) -> Trace {
        Self::raw(1, 1, missing.into_iter().collect())
    }

    /// Residue classes mod `period`, with finitely many flips.
    pub fn periodic<I: IntoIterator<Item = u64>>(
        period: u64,
        residues: u64,
        exceptions: I,
    ) -> Result<Trace> {
        if period == 0 || period > MAX_PERIOD {
            return Err(Error::PeriodOverflow(period));
        }
        Ok(Self::raw(
            period,
            residues & mask(period),
            exceptions.into_iter().collect(),
        ))
    }

    fn raw(period: u64, residues: u64, mut exceptions: Vec<u64>) -> Trace {
        exceptions.sort_unstable();
        exceptions.dedup();
        let mut t = Trace {
            period,
            residues,
            exceptions,
        };
        t.minimize_period();
        t
    }

    fn minimize_period(&mut self) {
        let p = self.period;
        for d in 1..=p {
            if p % d != 0 {
                continue;
            }
            let ok = (0..p).all(|r| self.residue(r) == self.residue(r % d));
            if ok {
                self.residues &= mask(d);
                self.period = d;
                return;
            }
        }
    }

    /// Builds the trace of `f`, assuming `f(n)` depends only on `n mod period`
    /// once `n > bound`.
    pub fn from_fn(period: u64, bound: u64, f: impl Fn(u64) -> bool) -> Result<Trace> {
        if period == 0 || period > MAX_PERIOD {
            return Err(Error::PeriodOverflow(period));
        }
        let start = bound + 1;
        let mut residues = 0u64;
        for r in 0..period {
            let n = start + (r + period - start % period) % period;
            if f(n) {
                residues |= 1 << r;
            }
        }
        let exceptions = (0..=bound)
            .filter(|&n| f(n) != (residues >> (n % period) & 1 == 1))
            .collect();
        Ok(Self::raw(period, residues, exceptions))
    }

    #[inline]
    fn residue(&self, n: u64) -> bool {
        self.residues >> (n % self.period) & 1 == 1
    }

    pub fn contains(&self, n: u64) -> bool {
        self.residue(n) != self.exceptions.binary_search(&n).is_ok()
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    /// Bit `r` set iff residue class `r` is eventually in the set.
    pub fn residues(&self) -> u64 {
        self.residues
    }

    pub fn exceptions(&self) -> &[u64] {
        &self.exceptions
    }

    /// Largest exceptional index, if any.
    pub fn max_exception(&self) -> Option<u64> {
        self.exceptions.last().copied()
    }

    pub fn is_infinite(&self) -> bool {
        self.residues != 0
    }

    pub fn is_cofinite(&self) -> bool {
        self.residues == mask(self.period)
    }

    /// No members other than the given excluded indices.
    pub fn is_empty_off(&self, excluded: &[u64]) -> bool {
        self.residues == 0
            && self
                .exceptions
                .iter()
                .all(|e| excluded.binary_search(e).is_ok())
    }

    pub fn is_finite_mode(&self) -> bool {
        self.residues == 0
    }

    pub fn complement(&self) -> Trace {
        Trace {
            period: self.period,
            residues: !self.residues & mask(self.period),
            exceptions: self.exceptions.clone(),
        }
    }

    pub fn zip(&self, other: &Trace, op: impl Fn(bool, bool) -> bool) -> Result<Trace> {
        let period = lcm(self.period, other.period)?;
        let mut residues = 0u64;
        for r in 0..period {
            if op(self.residue(r), other.residue(r)) {
                residues |= 1 << r;
            }
        }
        let mut cands: Vec<u64> = self
            .exceptions
            .iter()
            .chain(&other.exceptions)
            .copied()
            .collect();
        cands.sort_unstable();
        cands.dedup();
        let exceptions = cands
            .into_iter()
            .filter(|&n| {
                op(self.contains(n), other.contains(n)) != (residues >> (n % period) & 1 == 1)
            })
            .collect();
        Ok(Self::raw(period, residues, exceptions))
    }

    pub fn union(&self, other: &Trace) -> Result<Trace> {
        self.zip(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Trace) -> Result<Trace> {
        self.zip(other, |a, b| a && b)
    }

    /// Flips membership of `n` to `member`.
    pub fn with_membership(&self, n: u64, member: bool) -> Trace {
        if self.contains(n) == member {
            return self.clone();
        }
        let mut ex = self.exceptions.clone();
        match ex.binary_search(&n) {
            Ok(i) => {
                ex.remove(i);
            }
            Err(i) => ex.insert(i, n),
        }
        Trace {
            period: self.period,
            residues: self.residues,
            exceptions: ex,
        }
    }

    /// Drops exceptions at indices that are not points of the tail.
    pub(crate) fn normalized(mut self, excluded: &[u64]) -> Trace {
        self.exceptions
            .retain(|e| excluded.binary_search(e).is_err());
        self
    }

    /// Short mode label: FIN, COFIN or PERIODIC.
    pub fn mode(&self) -> &'static str {
        if self.residues == 0 {
            "FIN"
        } else if self.is_cofinite() {
            "COFIN"
        } else {
            "PERIODIC"
        }
    }
}

impl fmt::Debug for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode() {
            "PERIODIC" => {
                let r: Vec<u64> = (0..self.period).filter(|&r| self.residue(r)).collect();
                write!(f, "PERIODIC({}:{:?})^{:?}", self.period, r, self.exceptions)
            }
            m => write!(f, "{m}{:?}", self.exceptions),
        }
    }
}
