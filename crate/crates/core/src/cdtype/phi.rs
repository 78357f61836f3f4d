use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::{BasisKind, CdError, CdType, ExtCdType};
use crate::prime_base::{region_keys, regions, ExtInt, Prime, PrimeFn, PrimeMap, PrimeSet, Region};

/// A function `σ → ℤ ∪ {±∞}`: the value at Q and, per prime, at Z_p,
/// Z_p∞ and Z_(p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BocksteinFn {
    pub q: ExtInt,
    pub zp: PrimeMap<ExtInt>,
    pub zpinf: PrimeMap<ExtInt>,
    pub zloc: PrimeMap<ExtInt>,
}

/// A single coordinate of a Bockstein function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SigmaSlot {
    Q,
    Zloc(Region),
    Zp(Region),
    ZpInf(Region),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BiRule {
    BI1,
    BI2,
    BI3,
    BI4,
    BI5,
    BI6,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: BiRule,
    pub region: Region,
    pub lhs: ExtInt,
    pub rhs: ExtInt,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at {}: {} > {}", self.rule, self.region, self.lhs, self.rhs)
    }
}

impl fmt::Display for SigmaSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, r) = match self {
            SigmaSlot::Q => return f.write_str("Q"),
            SigmaSlot::Zloc(r) => ("Zloc", r),
            SigmaSlot::Zp(r) => ("Zp", r),
            SigmaSlot::ZpInf(r) => ("Zpinf", r),
        };
        match r {
            Region::Default => write!(f, "{name}(p)"),
            Region::At(p) => write!(f, "{name}({p})"),
        }
    }
}

impl From<BasisKind> for SigmaSlot {
    fn from(k: BasisKind) -> SigmaSlot {
        match k {
            BasisKind::Q => SigmaSlot::Q,
            BasisKind::Zp(p) => SigmaSlot::Zp(Region::At(p)),
            BasisKind::ZpInf(p) => SigmaSlot::ZpInf(Region::At(p)),
            BasisKind::Zloc(p) => SigmaSlot::Zloc(Region::At(p)),
        }
    }
}

impl BocksteinFn {
    pub fn constant(v: ExtInt) -> BocksteinFn {
        let m = PrimeMap::constant(v);
        BocksteinFn { q: v, zp: m.clone(), zpinf: m.clone(), zloc: m }
    }

    pub fn keys(&self) -> BTreeSet<Prime> {
        region_keys([&self.zp.keys(), &self.zpinf.keys(), &self.zloc.keys()])
    }

    /// Slots covering the function: Q, then the three p-slots per region.
    pub fn slots(&self) -> Vec<SigmaSlot> {
        self.slots_with(&BTreeSet::new())
    }

    pub fn slots_with(&self, extra: &BTreeSet<Prime>) -> Vec<SigmaSlot> {
        let keys = region_keys([&self.keys(), extra]);
        let mut out = vec![SigmaSlot::Q];
        for r in regions(&keys) {
            out.extend([SigmaSlot::Zloc(r), SigmaSlot::Zp(r), SigmaSlot::ZpInf(r)]);
        }
        out
    }

    pub fn at(&self, slot: SigmaSlot) -> ExtInt {
        match slot {
            SigmaSlot::Q => self.q,
            SigmaSlot::Zp(r) => *self.zp.at(r),
            SigmaSlot::ZpInf(r) => *self.zpinf.at(r),
            SigmaSlot::Zloc(r) => *self.zloc.at(r),
        }
    }

    pub fn get(&self, kind: BasisKind) -> ExtInt {
        self.at(kind.into())
    }

    /// `(Z_(p), Z_p, Z_p∞)` at a region.
    pub fn local(&self, r: Region) -> (ExtInt, ExtInt, ExtInt) {
        (*self.zloc.at(r), *self.zp.at(r), *self.zpinf.at(r))
    }

    pub fn max(&self, other: &BocksteinFn) -> BocksteinFn {
        let m = |a: &PrimeMap<ExtInt>, b: &PrimeMap<ExtInt>| a.zip_with(b, |x, y| *x.max(y));
        BocksteinFn {
            q: self.q.max(other.q),
            zp: m(&self.zp, &other.zp),
            zpinf: m(&self.zpinf, &other.zpinf),
            zloc: m(&self.zloc, &other.zloc),
        }
    }

    /// Pointwise `≤` on all of σ.
    pub fn le(&self, other: &BocksteinFn) -> bool {
        let extra = other.keys();
        self.slots_with(&extra).into_iter().all(|s| self.at(s) <= other.at(s))
    }

    pub fn sup(&self) -> ExtInt {
        self.slots().into_iter().map(|s| self.at(s)).max().expect("Q slot")
    }

    pub fn inf(&self) -> ExtInt {
        self.slots().into_iter().map(|s| self.at(s)).min().expect("Q slot")
    }

    pub fn is_constant(&self) -> bool {
        self.slots().into_iter().all(|s| self.at(s) == self.q)
    }

    /// Checks BI1–BI6 on the default region and every listed prime.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let q = self.q;
        for r in regions(&self.keys()) {
            let (zl, zp, zi) = self.local(r);
            let checks = [
                (BiRule::BI1, zi, zp),
                (BiRule::BI2, zp, zi.succ()),
                (BiRule::BI3, zp, zl),
                (BiRule::BI4, q, zl),
                (BiRule::BI5, zl, q.max(zi.succ())),
                (BiRule::BI6, zi, q.max(zl.pred())),
            ];
            for (rule, lhs, rhs) in checks {
                if lhs > rhs {
                    out.push(Violation { rule, region: r, lhs, rhs });
                }
            }
        }
        out
    }

    /// Inverse of `ExtCdType::to_phi`.
    ///
    /// A prime is singular when `Z_(p)` and `Z_p∞` disagree. A prime with all
    /// three local values infinite over a finite rational value is also put
    /// in `S`, since `d(p) = ∞ ≠ d(0)` cannot sit off `S`.
    pub fn to_ext(&self) -> Result<ExtCdType, CdError> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(CdError::InvalidPhi(violations));
        }
        let keys = self.keys();
        let q = self.q;
        let sing = PrimeMap::tabulate(&keys, |r| {
            let (zl, zp, zi) = self.local(r);
            zl != zi || zp != q
        });
        let def = self.zp.zip_with(&self.zpinf, |a, b| a != b);
        let s = sing.preimage(|b| *b);
        let d = PrimeFn::from_parts(q, self.zp.clone());
        ExtCdType::new(s, def.preimage(|b| *b), d)
    }

    pub fn to_cdtype(&self) -> Result<CdType, CdError> {
        self.to_ext()?.positive()
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for s in self.slots() {
            parts.push(format!("{s}={}", self.at(s)));
        }
        parts.join(", ")
    }
}

impl ExtCdType {
    /// The Bockstein function of the triple.
    pub fn to_phi(&self) -> BocksteinFn {
        let keys = self.keys();
        let d0 = *self.d.at_zero();
        let zp = self.d.primes().clone();
        let zpinf = PrimeMap::tabulate(&keys, |r| {
            let v = *self.d.at(r);
            if self.in_d(r) {
                v.pred()
            } else {
                v
            }
        });
        let zloc = PrimeMap::tabulate(&keys, |r| {
            if self.in_s(r) {
                d0.max(zpinf.at(r).succ())
            } else {
                d0
            }
        });
        BocksteinFn { q: d0, zp, zpinf, zloc }
    }
}

impl CdType {
    pub fn to_phi(&self) -> BocksteinFn {
        match self {
            CdType::Zero => BocksteinFn::constant(ExtInt::ZERO),
            CdType::Positive(t) => t.to_phi(),
        }
    }

    pub fn from_phi(phi: &BocksteinFn) -> Result<CdType, CdError> {
        phi.to_cdtype()
    }
}

/// Characteristic function helper kept for callers that build `d` by hand.
pub(crate) fn chi(set: &PrimeSet) -> PrimeFn<ExtInt> {
    PrimeFn::indicator(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn f(v: i64) -> ExtInt {
        ExtInt::Fin(v)
    }

    fn pi(prime: Prime) -> CdType {
        let d = PrimeFn::new(f(1), f(1), [(prime, f(2))]);
        CdType::triple(PrimeSet::singleton(prime), PrimeSet::singleton(prime), d).unwrap()
    }

    #[test]
    fn pontryagin_profile() {
        let two = p(2);
        let phi = pi(two).to_phi();
        assert_eq!(phi.local(Region::At(two)), (f(2), f(2), f(1)));
        assert_eq!(phi.q, f(1));
        assert_eq!(phi.local(Region::At(p(3))), (f(1), f(1), f(1)));
        assert!(phi.validate().is_empty());
        assert_eq!(CdType::from_phi(&phi).unwrap(), pi(two));
    }

    #[test]
    fn bi2_detected() {
        let two = p(2);
        let mut phi = BocksteinFn::constant(f(3));
        phi.zpinf = phi.zpinf.with(two, f(1));
        let v = phi.validate();
        assert!(v.iter().any(|x| x.rule == BiRule::BI2 && x.region == Region::At(two)));
        assert!(matches!(phi.to_ext(), Err(CdError::InvalidPhi(_))));
    }

    #[test]
    fn constants() {
        assert_eq!(CdType::from_phi(&BocksteinFn::constant(f(0))).unwrap(), CdType::Zero);
        assert_eq!(CdType::from_phi(&BocksteinFn::constant(f(4))).unwrap(), CdType::nat(4u64));
        assert!(BocksteinFn::constant(f(4)).validate().is_empty());
    }

    #[test]
    fn infinite_local_values_round_trip() {
        let two = p(2);
        let mut phi = BocksteinFn::constant(f(1));
        phi.zp = phi.zp.with(two, ExtInt::PosInf);
        phi.zpinf = phi.zpinf.with(two, ExtInt::PosInf);
        phi.zloc = phi.zloc.with(two, ExtInt::PosInf);
        let t = phi.to_ext().unwrap();
        assert!(t.singular().contains(two));
        assert_eq!(t.to_phi(), phi);
    }
}
