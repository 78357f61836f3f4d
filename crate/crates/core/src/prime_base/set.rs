use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::prime::{Prime, PrimeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetMode {
    Finite,
    Cofinite,
}

/// A finite or cofinite set of primes. For `Cofinite` the list holds the
/// excluded primes, so `Finite{}` is empty and `Cofinite{}` is every prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeSet {
    mode: SetMode,
    primes: BTreeSet<Prime>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersect,
    Diff,
}

impl PrimeSet {
    pub fn empty() -> PrimeSet {
        PrimeSet { mode: SetMode::Finite, primes: BTreeSet::new() }
    }

    pub fn all() -> PrimeSet {
        PrimeSet { mode: SetMode::Cofinite, primes: BTreeSet::new() }
    }

    pub fn finite<I: IntoIterator<Item = Prime>>(primes: I) -> PrimeSet {
        PrimeSet { mode: SetMode::Finite, primes: primes.into_iter().collect() }
    }

    pub fn cofinite<I: IntoIterator<Item = Prime>>(excluded: I) -> PrimeSet {
        PrimeSet { mode: SetMode::Cofinite, primes: excluded.into_iter().collect() }
    }

    pub fn singleton(p: Prime) -> PrimeSet {
        PrimeSet::finite([p])
    }

    pub fn mode(&self) -> SetMode {
        self.mode
    }

    /// The listed primes: members for a finite set, non-members for a cofinite one.
    pub fn listed(&self) -> &BTreeSet<Prime> {
        &self.primes
    }

    pub fn is_finite(&self) -> bool {
        self.mode == SetMode::Finite
    }

    pub fn is_empty(&self) -> bool {
        self.mode == SetMode::Finite && self.primes.is_empty()
    }

    pub fn is_all(&self) -> bool {
        self.mode == SetMode::Cofinite && self.primes.is_empty()
    }

    pub fn contains(&self, p: Prime) -> bool {
        match self.mode {
            SetMode::Finite => self.primes.contains(&p),
            SetMode::Cofinite => !self.primes.contains(&p),
        }
    }

    /// Membership of a prime that is not listed; this is the value on the
    /// "default region" of any representation whose exceptions cover the list.
    pub fn contains_generic(&self) -> bool {
        self.mode == SetMode::Cofinite
    }

    pub fn complement(&self) -> PrimeSet {
        let mode = match self.mode {
            SetMode::Finite => SetMode::Cofinite,
            SetMode::Cofinite => SetMode::Finite,
        };
        PrimeSet { mode, primes: self.primes.clone() }
    }

    pub fn combine(&self, op: SetOp, other: &PrimeSet) -> PrimeSet {
        use SetMode::*;
        match op {
            SetOp::Diff => self.combine(SetOp::Intersect, &other.complement()),
            SetOp::Union => match (self.mode, other.mode) {
                (Finite, Finite) => PrimeSet::finite(self.primes.union(&other.primes).copied()),
                (Cofinite, Cofinite) => PrimeSet::cofinite(self.primes.intersection(&other.primes).copied()),
                (Finite, Cofinite) => PrimeSet::cofinite(other.primes.difference(&self.primes).copied()),
                (Cofinite, Finite) => PrimeSet::cofinite(self.primes.difference(&other.primes).copied()),
            },
            SetOp::Intersect => match (self.mode, other.mode) {
                (Finite, Finite) => PrimeSet::finite(self.primes.intersection(&other.primes).copied()),
                (Cofinite, Cofinite) => PrimeSet::cofinite(self.primes.union(&other.primes).copied()),
                (Finite, Cofinite) => PrimeSet::finite(self.primes.difference(&other.primes).copied()),
                (Cofinite, Finite) => PrimeSet::finite(other.primes.difference(&self.primes).copied()),
            },
        }
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        self.combine(SetOp::Union, other)
    }

    pub fn intersect(&self, other: &PrimeSet) -> PrimeSet {
        self.combine(SetOp::Intersect, other)
    }

    pub fn diff(&self, other: &PrimeSet) -> PrimeSet {
        self.combine(SetOp::Diff, other)
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.diff(other).is_empty()
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = self.primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
        match self.mode {
            SetMode::Finite => write!(f, "{{{list}}}"),
            SetMode::Cofinite if self.primes.is_empty() => f.write_str("all"),
            SetMode::Cofinite => write!(f, "all-{{{list}}}"),
        }
    }
}

pub fn parse_prime_list(body: &str) -> Result<BTreeSet<Prime>, PrimeError> {
    body.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
}

impl FromStr for PrimeSet {
    type Err = PrimeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let braced = |u: &str| -> Result<BTreeSet<Prime>, PrimeError> {
            u.strip_prefix('{')
                .and_then(|v| v.strip_suffix('}'))
                .ok_or_else(|| PrimeError::Parse(s.to_string()))
                .and_then(parse_prime_list)
        };
        if t == "all" {
            Ok(PrimeSet::all())
        } else if let Some(rest) = t.strip_prefix("all-").or_else(|| t.strip_prefix("all−")) {
            Ok(PrimeSet::cofinite(braced(rest)?))
        } else {
            Ok(PrimeSet::finite(braced(&t)?))
        }
    }
}
