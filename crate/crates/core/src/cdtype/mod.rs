//! cd-types as triples `(S, D; d)` and as Bockstein functions.

mod basis;
mod ops;
mod phi;
mod serial;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::prime_base::{region_keys, regions, ExtInt, ExtNat, Prime, PrimeFn, PrimeSet, Region, SlotError};

pub use basis::{Decomposition, FamilyPattern, UniformFamily, WedgeFamily};
pub use phi::{BiRule, BocksteinFn, SigmaSlot, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdError {
    #[error("D is not contained in S")]
    DeficientNotSingular,
    #[error("d must equal d(0) off S, fails at {0}")]
    OffSingular(Region),
    #[error("invalid Bockstein function: {}", render_violations(.0))]
    InvalidPhi(Vec<Violation>),
    #[error(transparent)]
    Arith(#[from] SlotError),
    #[error("result leaves the positive class (inferior norm {0})")]
    NotPositive(ExtInt),
    #[error("conjugation needs finite values")]
    Infinite,
    #[error("{0}")]
    Argument(String),
}

fn render_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A triple `(S, D; d)` with `D ⊆ S` and `d = d(0)` off `S`, values in
/// `ℤ ∪ {±∞}`. This is the extended class; `CdType` is its positive part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtCdType {
    s: PrimeSet,
    def: PrimeSet,
    d: PrimeFn<ExtInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CdType {
    Zero,
    Positive(ExtCdType),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKind {
    Q,
    Zp(Prime),
    ZpInf(Prime),
    Zloc(Prime),
}

impl ExtCdType {
    pub fn new(s: PrimeSet, def: PrimeSet, d: PrimeFn<ExtInt>) -> Result<ExtCdType, CdError> {
        if !def.is_subset(&s) {
            return Err(CdError::DeficientNotSingular);
        }
        let d0 = *d.at_zero();
        let keys = region_keys([&d.keys(), s.listed()]);
        for r in regions(&keys) {
            let inside = match r {
                Region::Default => s.contains_generic(),
                Region::At(p) => s.contains(p),
            };
            if !inside && *d.at(r) != d0 {
                return Err(CdError::OffSingular(r));
            }
        }
        Ok(ExtCdType { s, def, d })
    }

    /// `(∅, ∅; n)`.
    pub fn constant(n: ExtInt) -> ExtCdType {
        ExtCdType { s: PrimeSet::empty(), def: PrimeSet::empty(), d: PrimeFn::constant(n) }
    }

    pub fn singular(&self) -> &PrimeSet {
        &self.s
    }

    pub fn deficient(&self) -> &PrimeSet {
        &self.def
    }

    pub fn field_fn(&self) -> &PrimeFn<ExtInt> {
        &self.d
    }

    /// Every prime at which some component has a non-generic value.
    pub fn keys(&self) -> BTreeSet<Prime> {
        region_keys([&self.d.keys(), self.s.listed(), self.def.listed()])
    }

    pub fn in_s(&self, r: Region) -> bool {
        match r {
            Region::Default => self.s.contains_generic(),
            Region::At(p) => self.s.contains(p),
        }
    }

    pub fn in_d(&self, r: Region) -> bool {
        match r {
            Region::Default => self.def.contains_generic(),
            Region::At(p) => self.def.contains(p),
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == ExtCdType::constant(ExtInt::ZERO)
    }

    /// Lands in the positive class or reports why not.
    pub fn positive(self) -> Result<CdType, CdError> {
        CdType::try_from(self)
    }
}

impl TryFrom<ExtCdType> for CdType {
    type Error = CdError;

    fn try_from(t: ExtCdType) -> Result<CdType, CdError> {
        if t.is_zero() {
            return Ok(CdType::Zero);
        }
        let inf = t.inferior_norm();
        if inf >= ExtInt::ONE {
            Ok(CdType::Positive(t))
        } else {
            Err(CdError::NotPositive(inf))
        }
    }
}

impl CdType {
    /// The zero type as the triple `(∅, ∅; 0)`.
    pub fn as_ext(&self) -> ExtCdType {
        match self {
            CdType::Zero => ExtCdType::constant(ExtInt::ZERO),
            CdType::Positive(t) => t.clone(),
        }
    }

    pub fn into_ext(self) -> ExtCdType {
        match self {
            CdType::Zero => ExtCdType::constant(ExtInt::ZERO),
            CdType::Positive(t) => t,
        }
    }

    pub fn triple(s: PrimeSet, def: PrimeSet, d: PrimeFn<ExtInt>) -> Result<CdType, CdError> {
        ExtCdType::new(s, def, d)?.positive()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CdType::Zero)
    }

    /// The type `(∅, ∅; n)` of an n-dimensional full-valued compactum.
    pub fn nat(n: impl Into<ExtNat>) -> CdType {
        match n.into() {
            ExtNat::Fin(0) => CdType::Zero,
            n => CdType::Positive(ExtCdType::constant(n.to_ext_int().unwrap_or(ExtInt::PosInf))),
        }
    }
}

fn nat_of(v: ExtInt) -> ExtNat {
    ExtNat::try_from(v).expect("positive class values are non-negative")
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKind::Q => f.write_str("Q"),
            BasisKind::Zp(p) => write!(f, "Zp({p})"),
            BasisKind::ZpInf(p) => write!(f, "Zpinf({p})"),
            BasisKind::Zloc(p) => write!(f, "Zloc({p})"),
        }
    }
}

impl BasisKind {
    pub fn prime(self) -> Option<Prime> {
        match self {
            BasisKind::Q => None,
            BasisKind::Zp(p) | BasisKind::ZpInf(p) | BasisKind::Zloc(p) => Some(p),
        }
    }

    /// The four kinds at a prime, in the order Q, Zloc, Zp, Zpinf.
    pub fn all_at(p: Prime) -> [BasisKind; 4] {
        [BasisKind::Q, BasisKind::Zloc(p), BasisKind::Zp(p), BasisKind::ZpInf(p)]
    }
}

impl fmt::Display for ExtCdType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_empty() && self.d.exceptions().is_empty() && *self.d.at_zero() >= ExtInt::ZERO {
            return write!(f, "nat({})", self.d.at_zero());
        }
        write!(f, "triple(S={}, D={}, d={})", self.s, self.def, self.d)
    }
}

impl fmt::Display for CdType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CdType::Zero => f.write_str("nat(0)"),
            CdType::Positive(t) => t.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn triple_invariants() {
        let d = PrimeFn::new(ExtInt::ONE, ExtInt::ONE, [(p(2), ExtInt::Fin(2))]);
        assert!(ExtCdType::new(PrimeSet::singleton(p(2)), PrimeSet::singleton(p(2)), d.clone()).is_ok());
        assert_eq!(
            ExtCdType::new(PrimeSet::empty(), PrimeSet::empty(), d.clone()),
            Err(CdError::OffSingular(Region::At(p(2))))
        );
        assert_eq!(
            ExtCdType::new(PrimeSet::empty(), PrimeSet::singleton(p(2)), PrimeFn::constant(ExtInt::ONE)),
            Err(CdError::DeficientNotSingular)
        );
        let wrong_default = PrimeFn::new(ExtInt::ONE, ExtInt::Fin(2), []);
        assert_eq!(
            ExtCdType::new(PrimeSet::singleton(p(3)), PrimeSet::empty(), wrong_default),
            Err(CdError::OffSingular(Region::Default))
        );
    }

    #[test]
    fn positive_class() {
        assert_eq!(CdType::nat(0u64), CdType::Zero);
        assert_eq!(ExtCdType::constant(ExtInt::ZERO).positive(), Ok(CdType::Zero));
        assert!(matches!(ExtCdType::constant(ExtInt::Fin(-1)).positive(), Err(CdError::NotPositive(_))));
        // d = 1 on D puts a zero in the Zp∞ slot
        let d = PrimeFn::new(ExtInt::Fin(2), ExtInt::Fin(2), [(p(2), ExtInt::ONE)]);
        let t = ExtCdType::new(PrimeSet::singleton(p(2)), PrimeSet::singleton(p(2)), d).unwrap();
        assert_eq!(t.positive(), Err(CdError::NotPositive(ExtInt::ZERO)));
    }
}
