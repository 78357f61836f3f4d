//! Finite models of the cd-type algebra and machine checks of its laws.
//!
//! A universe fixes finitely many primes and a value range. Every prime
//! outside the list shares one "default region" profile, which is either
//! tied to the rational value (`Regular`) or free (`Free`).

mod laws;

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::cdtype::{BocksteinFn, CdType, ExtCdType};
use crate::prime_base::{ExtInt, Prime, PrimeFn, PrimeMap, PrimeSet};

pub use laws::{check_laws, CheckConfig, Failure, Law, LawReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefaultRegion {
    /// Unlisted primes carry the rational value in all three local slots.
    Regular,
    /// Unlisted primes carry any locally valid profile.
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    pub primes: Vec<Prime>,
    pub value_bound: i64,
    pub allow_extended: bool,
    pub default_region: DefaultRegion,
}

/// Local values `(Z_(p), Z_p, Z_p∞)` at one region.
pub type Local = (i64, i64, i64);

/// BI1–BI6 at one region, on plain integers.
pub fn locally_valid(q: i64, (zl, zp, zi): Local) -> bool {
    zi <= zp && zp <= zi + 1 && zp <= zl && q <= zl && zl <= q.max(zi + 1) && zi <= q.max(zl - 1)
}

impl Universe {
    pub fn new(primes: Vec<Prime>, value_bound: i64) -> Universe {
        assert!(!primes.is_empty(), "a universe needs at least one prime");
        assert!(value_bound >= 1, "value bound must be at least 1");
        Universe { primes, value_bound, allow_extended: false, default_region: DefaultRegion::Free }
    }

    pub fn with_default(mut self, region: DefaultRegion) -> Universe {
        self.default_region = region;
        self
    }

    /// The extended model on the first prime, with values in `[−bound, bound]`.
    pub fn extended(&self) -> Universe {
        Universe {
            primes: vec![self.primes[0]],
            value_bound: self.value_bound,
            allow_extended: true,
            default_region: self.default_region,
        }
    }

    pub fn range(&self) -> (i64, i64) {
        let lo = if self.allow_extended { -self.value_bound } else { 1 };
        (lo, self.value_bound)
    }

    /// Smallest prime outside the universe; it stands for the default region.
    pub fn fresh_prime(&self) -> Prime {
        let listed: BTreeSet<Prime> = self.primes.iter().copied().collect();
        let mut g = Prime::new(2).expect("prime");
        while listed.contains(&g) {
            g = g.next();
        }
        g
    }

    fn locals(&self, q: i64) -> Vec<Local> {
        let (lo, hi) = self.range();
        let vals = lo..=hi;
        vals.clone()
            .cartesian_product(vals.clone())
            .cartesian_product(vals)
            .map(|((a, b), c)| (a, b, c))
            .filter(|&l| locally_valid(q, l))
            .collect()
    }

    fn default_locals(&self, q: i64) -> Vec<Local> {
        match self.default_region {
            DefaultRegion::Regular => vec![(q, q, q)],
            DefaultRegion::Free => self.locals(q),
        }
    }

    /// Every valid Bockstein function of the model.
    pub fn enumerate_phis(&self) -> Vec<BocksteinFn> {
        let (lo, hi) = self.range();
        let f = ExtInt::Fin;
        let mut out = Vec::new();
        for q in lo..=hi {
            let locals = self.locals(q);
            let mut axes = vec![self.default_locals(q)];
            axes.extend(self.primes.iter().map(|_| locals.clone()));
            for choice in axes.into_iter().multi_cartesian_product() {
                let (dflt, rest) = choice.split_first().expect("default axis");
                let map = |pick: fn(&Local) -> i64| {
                    PrimeMap::new(f(pick(dflt)), self.primes.iter().zip(rest).map(|(&p, l)| (p, f(pick(l)))))
                };
                out.push(BocksteinFn {
                    q: f(q),
                    zloc: map(|l| l.0),
                    zp: map(|l| l.1),
                    zpinf: map(|l| l.2),
                });
            }
        }
        out
    }

    /// Every triple whose Bockstein function lies in the model, built
    /// directly from `(S, D; d)` without going through `from_phi`.
    pub fn enumerate_triples(&self) -> Vec<ExtCdType> {
        let (lo, hi) = self.range();
        let f = ExtInt::Fin;
        let mut out = Vec::new();
        for d0 in lo..=hi {
            // (in S, in D, d) per region; off S the value is pinned to d(0)
            let mut local = vec![(false, false, d0)];
            for v in lo..=hi + 1 {
                local.push((true, false, v));
                local.push((true, true, v));
            }
            let default_axis = match self.default_region {
                DefaultRegion::Regular => vec![(false, false, d0)],
                DefaultRegion::Free => local.clone(),
            };
            let mut axes = vec![default_axis];
            axes.extend(self.primes.iter().map(|_| local.clone()));
            for choice in axes.into_iter().multi_cartesian_product() {
                let (dflt, rest) = choice.split_first().expect("default axis");
                let set = |pick: fn(&(bool, bool, i64)) -> bool| {
                    let flips = self.primes.iter().zip(rest).filter(|(_, c)| pick(c) != pick(dflt)).map(|(&p, _)| p);
                    if pick(dflt) {
                        PrimeSet::cofinite(flips)
                    } else {
                        PrimeSet::finite(flips)
                    }
                };
                let d = PrimeFn::new(f(d0), f(dflt.2), self.primes.iter().zip(rest).map(|(&p, c)| (p, f(c.2))));
                let t = ExtCdType::new(set(|c| c.0), set(|c| c.1), d).expect("constructed valid");
                let phi = t.to_phi();
                let inside = phi.slots().into_iter().all(|s| {
                    let v = phi.at(s);
                    v >= f(lo) && v <= f(hi)
                });
                if inside {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Non-zero types of the positive model, or all types of the extended one.
    pub fn enumerate_ext_types(&self) -> Vec<ExtCdType> {
        self.enumerate_phis().iter().map(|phi| phi.to_ext().expect("enumerated functions are valid")).collect()
    }

    pub fn enumerate_types(&self) -> Vec<CdType> {
        self.enumerate_ext_types()
            .into_iter()
            .map(|t| t.positive().expect("positive model"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    /// Independent count of valid `(φQ, φZ₂, φZ₂∞, φZ₍₂₎)` in `[1, B]⁴`.
    fn brute_count(b: i64) -> usize {
        let r = 1..=b;
        let mut n = 0;
        for q in r.clone() {
            for zp in r.clone() {
                for zi in r.clone() {
                    for zl in r.clone() {
                        let bi = [zi <= zp, zp <= zi + 1, zp <= zl, q <= zl, zl <= q.max(zi + 1), zi <= q.max(zl - 1)];
                        n += usize::from(bi.iter().all(|&x| x));
                    }
                }
            }
        }
        n
    }

    #[test]
    fn bound_one_is_nat_one() {
        let u = Universe::new(vec![p(2)], 1);
        assert_eq!(u.enumerate_types(), vec![CdType::nat(1u64)]);
    }

    #[test]
    fn regular_count_matches_brute_force() {
        for b in 1..=5 {
            let u = Universe::new(vec![p(2)], b).with_default(DefaultRegion::Regular);
            assert_eq!(u.enumerate_phis().len(), brute_count(b), "bound {b}");
        }
    }

    #[test]
    fn contains_pontryagin_type() {
        let two = p(2);
        let u = Universe::new(vec![two], 2).with_default(DefaultRegion::Regular);
        let d = PrimeFn::new(ExtInt::ONE, ExtInt::ONE, [(two, ExtInt::Fin(2))]);
        let pi2 = CdType::triple(PrimeSet::singleton(two), PrimeSet::singleton(two), d).unwrap();
        assert!(u.enumerate_types().contains(&pi2));
    }

    #[test]
    fn triples_and_functions_agree() {
        let u = Universe::new(vec![p(2), p(3)], 3);
        let a: BTreeSet<String> = u.enumerate_ext_types().iter().map(|t| t.to_string()).collect();
        let b: BTreeSet<String> = u.enumerate_triples().iter().map(|t| t.to_string()).collect();
        assert_eq!(a.len(), 375);
        assert_eq!(a, b);
    }
}
