use super::phi::chi;
use super::{nat_of, CdError, CdType, ExtCdType};
use crate::prime_base::{ExtInt, ExtNat, PrimeFn};

impl ExtCdType {
    /// `[+]`: `(S₁ ∪ S₂, D₁ ∪ D₂; d₁ + d₂)`.
    pub fn sum(&self, other: &ExtCdType) -> Result<ExtCdType, CdError> {
        let d = self.d.add(&other.d)?;
        ExtCdType::new(self.s.union(&other.s), self.def.union(&other.def), d)
    }

    /// `[×]`: `(S₁ ∩ S₂, D₁ ∩ D₂; (d₁ − d₁(0))(d₂ − d₂(0)) + d₁(0)d₂(0))`.
    pub fn times(&self, other: &ExtCdType) -> Result<ExtCdType, CdError> {
        let shifted = |t: &ExtCdType| -> Result<PrimeFn<ExtInt>, CdError> {
            let d0 = *t.d.at_zero();
            // the zero slot of d − d(0) vanishes even when d(0) is infinite
            let base = PrimeFn::from_parts(d0, t.d.primes().map(|_| d0));
            Ok(t.d.sub(&base)?.with_zero(ExtInt::ZERO))
        };
        let prod = shifted(self)?.mul(&shifted(other)?)?;
        let c = self.d.at_zero().mul(*other.d.at_zero()).map_err(|source| {
            CdError::Arith(crate::prime_base::SlotError { slot: crate::prime_base::Slot::Zero, source })
        })?;
        let d = prod.scalar(crate::prime_base::PointOp::Add, c)?;
        ExtCdType::new(self.s.intersect(&other.s), self.def.intersect(&other.def), d)
    }

    /// `∨`: the triple of the pointwise maximum of the Bockstein functions.
    pub fn wedge(&self, other: &ExtCdType) -> Result<ExtCdType, CdError> {
        self.to_phi().max(&other.to_phi()).to_ext()
    }

    /// `‖F‖ = sup (d + χ_{S∖D})`.
    pub fn norm(&self) -> ExtInt {
        let bump = chi(&self.s.diff(&self.def));
        self.d.add(&bump).expect("adding 0 or 1 is total").sup()
    }

    /// `|F| = inf (d − χ_D)`.
    pub fn inferior_norm(&self) -> ExtInt {
        self.d.sub(&chi(&self.def)).expect("subtracting 0 or 1 is total").inf()
    }

    /// `F̄ = (S, S ∖ D; −d)`.
    pub fn conjugate(&self) -> Result<ExtCdType, CdError> {
        if !self.d.values().all(|v| v.is_finite()) {
            return Err(CdError::Infinite);
        }
        let d = self.d.map(|v| v.checked_neg().expect("finite"));
        ExtCdType::new(self.s.clone(), self.s.diff(&self.def), d)
    }

    /// `F₁ ⪯ F₂` in the order of Bockstein functions.
    pub fn leq(&self, other: &ExtCdType) -> bool {
        self.to_phi().le(&other.to_phi())
    }

    /// `kF = F [+] ... [+] F`.
    pub fn scale(&self, k: u32) -> Result<ExtCdType, CdError> {
        if k == 0 {
            return Err(CdError::Argument("scale factor must be at least 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.sum(self)?;
        }
        Ok(acc)
    }
}

impl CdType {
    pub fn sum(&self, other: &CdType) -> Result<CdType, CdError> {
        self.as_ext().sum(&other.as_ext())?.positive()
    }

    /// Fails with `NotPositive` when the product leaves the positive class;
    /// use `ExtCdType::times` for the unrestricted operation.
    pub fn times(&self, other: &CdType) -> Result<CdType, CdError> {
        self.as_ext().times(&other.as_ext())?.positive()
    }

    pub fn wedge(&self, other: &CdType) -> Result<CdType, CdError> {
        self.as_ext().wedge(&other.as_ext())?.positive()
    }

    pub fn norm(&self) -> ExtNat {
        nat_of(self.as_ext().norm())
    }

    pub fn inferior_norm(&self) -> ExtNat {
        nat_of(self.as_ext().inferior_norm())
    }

    pub fn leq(&self, other: &CdType) -> bool {
        self.to_phi().le(&other.to_phi())
    }

    pub fn scale(&self, k: u32) -> Result<CdType, CdError> {
        self.as_ext().scale(k)?.positive()
    }

    /// The largest field dimension, `max(sup_p d(p), d(0))`.
    pub fn field_max(&self) -> ExtNat {
        nat_of(self.as_ext().field_fn().sup())
    }
}
