//! Dimension queries: Bockstein's theorem, regularity, powers, testing
//! spaces, full-valuedness, ANR admissibility and fibration bounds.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cdtype::{BasisKind, BocksteinFn, CdError, CdType, FamilyPattern, UniformFamily, WedgeFamily};
use crate::groups::{sigma_of, BocksteinFamily, GroupError, GroupExpr};
use crate::prime_base::{regions, ExtArith, ExtInt, ExtNat, Prime, Region};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cd(#[from] CdError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("the norm is infinite")]
    InfiniteNorm,
}

fn nat(v: ExtInt) -> ExtNat {
    ExtNat::try_from(v).expect("positive class values are non-negative")
}

/// `sup {φ(H) : H ∈ σ(G)}` for a family given explicitly.
pub fn dim_family(phi: &BocksteinFn, fam: &BocksteinFamily) -> ExtNat {
    let mut best = ExtInt::ZERO;
    if fam.has_q {
        best = best.max(phi.q);
    }
    let parts = [
        phi.zloc.sup_over(&fam.loc),
        phi.zp.sup_over(&fam.zp_set()),
        phi.zpinf.sup_over(&fam.zpinf_set()),
    ];
    for v in parts.into_iter().flatten() {
        best = best.max(v);
    }
    nat(best)
}

/// `dim_G` of a compactum of type `F`, by Bockstein's theorem.
pub fn dim(f: &CdType, g: &GroupExpr) -> Result<ExtNat, DimError> {
    let fam = sigma_of(g)?;
    Ok(match f {
        CdType::Zero => ExtNat::ZERO,
        _ => dim_family(&f.to_phi(), &fam),
    })
}

fn positive(f: &CdType) -> Result<&crate::cdtype::ExtCdType, DimError> {
    match f {
        CdType::Zero => Err(DimError::Precondition("the zero type has no p-local data".into())),
        CdType::Positive(t) => Ok(t),
    }
}

/// `ε(p) = dim_{Z_p} − dim_{Z_p∞}`, always 0 or 1.
pub fn deficiency(f: &CdType, p: Prime) -> Result<u8, DimError> {
    Ok(u8::from(positive(f)?.deficient().contains(p)))
}

pub fn p_regular(f: &CdType, p: Prime) -> Result<bool, DimError> {
    let phi = positive(f)?.to_phi();
    let r = Region::At(p);
    Ok(phi.zloc.at(r) == phi.zpinf.at(r))
}

pub fn p_singular(f: &CdType, p: Prime) -> Result<bool, DimError> {
    p_regular(f, p).map(|b| !b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PowerKind {
    Basic,
    Exceptional,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerReport {
    pub base_norm: ExtNat,
    pub kind: PowerKind,
    /// `‖kF‖` keyed by the exponent `k`.
    pub power_norms: BTreeMap<u32, ExtNat>,
}

/// Norms of `kF` for `1 ≤ k ≤ k_max`, classified by whether a field attains
/// the norm.
pub fn power_report(f: &CdType, k_max: u32) -> Result<PowerReport, DimError> {
    let base = f.norm();
    let b = match base {
        ExtNat::Inf => return Err(DimError::InfiniteNorm),
        ExtNat::Fin(0) => return Err(DimError::Precondition("norm must be at least 1".into())),
        ExtNat::Fin(b) => b,
    };
    let kind = if f.field_max() == base { PowerKind::Basic } else { PowerKind::Exceptional };
    let mut power_norms = BTreeMap::new();
    for k in 1..=k_max {
        let got = f.scale(k)?.norm();
        let k64 = u64::from(k);
        let expect = match kind {
            PowerKind::Basic => k64 * b,
            PowerKind::Exceptional => k64 * b - k64 + 1,
        };
        if got != ExtNat::Fin(expect) {
            return Err(DimError::Precondition(format!("power {k} has norm {got}, expected {expect}")));
        }
        power_norms.insert(k, got);
    }
    Ok(PowerReport { base_norm: base, kind, power_norms })
}

/// `T_n(G) = ⋁ {Φ(H, n) : H ∈ σ(G)}`.
pub fn test_space(g: &GroupExpr, n: impl Into<ExtNat>) -> Result<CdType, DimError> {
    let n = n.into();
    if n == ExtNat::ZERO {
        return Err(DimError::Precondition("n must be at least 1".into()));
    }
    let fam = sigma_of(g)?;
    let mut w = WedgeFamily::default();
    if fam.has_q {
        w.explicit.push(CdType::phi_basis(BasisKind::Q, n)?);
    }
    w.uniform.push(UniformFamily::constant(FamilyPattern::Zloc, fam.loc.clone(), n));
    w.uniform.push(UniformFamily::constant(FamilyPattern::Zp, fam.zp_set(), n));
    w.uniform.push(UniformFamily::constant(FamilyPattern::ZpInf, fam.zpinf_set(), n));
    Ok(w.evaluate()?)
}

/// `‖F [+] T_n(G)‖ − n`, defined when `‖F‖ − dim_G F < n`.
pub fn testing_dim(f: &CdType, g: &GroupExpr, n: u64) -> Result<ExtNat, DimError> {
    let dg = dim(f, g)?;
    let norm = f.norm();
    let gap = norm.ext_sub(dg).map_err(|_| DimError::Precondition("‖F‖ − dim_G F is undefined".into()))?;
    if gap >= ExtNat::Fin(n) {
        return Err(DimError::Precondition(format!("‖F‖ − dim_G F = {gap} is not below n = {n}")));
    }
    let t = test_space(g, n)?;
    let total = f.sum(&t)?.norm();
    total.ext_sub(ExtNat::Fin(n)).map_err(|_| DimError::Precondition("norm below n".into()))
}

/// `‖Φ(G, n) [+] Φ(G', m)‖`, with the pair ordered so that `n ≥ m`.
pub fn fundamental_product_dim(g: BasisKind, n: u64, g2: BasisKind, m: u64) -> Result<ExtNat, DimError> {
    let ((g, n), (g2, m)) = if n >= m { ((g, n), (g2, m)) } else { ((g2, m), (g, n)) };
    if m < 2 {
        return Err(DimError::Precondition("both dimensions must be at least 2".into()));
    }
    let a = CdType::phi_basis(g, n)?;
    let b = CdType::phi_basis(g2, m)?;
    Ok(a.sum(&b)?.norm())
}

/// `dim_G Φ(G', m) + n` for `n ≥ m`.
pub fn fundamental_product_formula(g: BasisKind, n: u64, g2: BasisKind, m: u64) -> Result<ExtNat, DimError> {
    let ((g, n), (g2, m)) = if n >= m { ((g, n), (g2, m)) } else { ((g2, m), (g, n)) };
    let phi = CdType::phi_basis(g2, m)?.to_phi();
    Ok(nat(phi.get(g)).ext_add(ExtNat::Fin(n)).expect("finite"))
}

/// True when every `dim_G` agrees with `dim_Z`.
pub fn is_full_valued(f: &CdType) -> bool {
    f.to_phi().is_constant()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum AnrClause {
    /// `dim_{Z_(p)} = dim_{Z_p}` at every prime.
    LocalEqualsCyclic,
    /// No `dim_G` falls below `dim_Q`.
    RationalIsLeast,
    /// Two-dimensional ANRs are full-valued.
    TwoDimFullValued,
}

impl fmt::Display for AnrClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AnrClause::LocalEqualsCyclic => "(a) dim_Zloc(p) = dim_Zp(p) for all p",
            AnrClause::RationalIsLeast => "(b) dim_G >= dim_Q for all G",
            AnrClause::TwoDimFullValued => "(c) norm 2 forces nat(2)",
        })
    }
}

/// Necessary conditions for a type to be realized by an ANR compactum.
/// Passing does not certify that such an ANR exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnrReport {
    pub admissible: bool,
    pub failed: Vec<AnrClause>,
}

pub fn anr_admissible(f: &CdType) -> AnrReport {
    let phi = f.to_phi();
    let mut failed = Vec::new();
    if regions(&phi.keys()).any(|r| phi.zloc.at(r) != phi.zp.at(r)) {
        failed.push(AnrClause::LocalEqualsCyclic);
    }
    if phi.inf() < phi.q {
        failed.push(AnrClause::RationalIsLeast);
    }
    if f.norm() == ExtNat::Fin(2) && *f != CdType::nat(2u64) {
        failed.push(AnrClause::TwoDimFullValued);
    }
    AnrReport { admissible: failed.is_empty(), failed }
}

/// Right-hand sides of the four fibration inequalities for `f: X → Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FibrationBounds {
    /// `dim_G Y + sup dim f⁻¹(y)`
    pub base_g_fiber: ExtNat,
    /// `dim Y + sup dim_G f⁻¹(y)`
    pub base_fiber_g: ExtNat,
    /// `dim_G Y + sup dim_G f⁻¹(y)`; valid only when G is a PID with unity.
    pub both_g: ExtNat,
    /// `dim_G Y + sup dim_G f⁻¹(y) + 1`
    pub both_g_plus_one: ExtNat,
    pub pid_with_unity: bool,
}

pub fn fibration_bounds(
    dim_g_y: ExtNat,
    dim_y: ExtNat,
    fiber_dim: ExtNat,
    fiber_dim_g: ExtNat,
    pid_with_unity: bool,
) -> FibrationBounds {
    let add = |a: ExtNat, b: ExtNat| a.ext_add(b).unwrap_or(ExtNat::Inf);
    let both = add(dim_g_y, fiber_dim_g);
    FibrationBounds {
        base_g_fiber: add(dim_g_y, fiber_dim),
        base_fiber_g: add(dim_y, fiber_dim_g),
        both_g: both,
        both_g_plus_one: add(both, ExtNat::ONE),
        pid_with_unity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime_base::{PrimeFn, PrimeSet};

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn singular(prime: Prime, high: i64, low: i64) -> CdType {
        let d = PrimeFn::new(ExtInt::Fin(low), ExtInt::Fin(low), [(prime, ExtInt::Fin(high))]);
        CdType::triple(PrimeSet::singleton(prime), PrimeSet::singleton(prime), d).unwrap()
    }

    fn n(v: u64) -> ExtNat {
        ExtNat::Fin(v)
    }

    #[test]
    fn bockstein_sup() {
        let two = p(2);
        let pi2 = singular(two, 2, 1);
        assert_eq!(dim(&pi2, &GroupExpr::Z).unwrap(), n(2));
        assert_eq!(dim(&pi2, &GroupExpr::Zp(p(3))).unwrap(), n(1));
        for t in [pi2.clone(), CdType::nat(3u64), CdType::phi_basis(BasisKind::ZpInf(two), 4u64).unwrap()] {
            assert_eq!(dim(&t, &GroupExpr::Zpk(two, 3)).unwrap(), dim(&t, &GroupExpr::Zp(two)).unwrap());
        }
        let q5 = CdType::phi_basis(BasisKind::Q, 5u64).unwrap();
        let all = GroupExpr::SumOver(PrimeSet::all(), crate::groups::SumPattern::Zp);
        assert_eq!(dim(&q5, &all).unwrap(), n(1));
        assert_eq!(dim(&CdType::Zero, &GroupExpr::Q).unwrap(), n(0));
    }

    #[test]
    fn regularity() {
        let two = p(2);
        assert_eq!(deficiency(&singular(two, 2, 1), two).unwrap(), 1);
        assert!(p_regular(&CdType::nat(4u64), p(5)).unwrap());
        let pi2 = singular(two, 2, 1);
        assert!(p_singular(&pi2.sum(&pi2).unwrap(), two).unwrap());
    }

    #[test]
    fn powers() {
        let two = p(2);
        let r = power_report(&CdType::phi_basis(BasisKind::ZpInf(two), 3u64).unwrap(), 4).unwrap();
        assert_eq!(r.kind, PowerKind::Exceptional);
        assert_eq!(r.power_norms[&4], n(4 * 3 - 4 + 1));
        let r = power_report(&singular(two, 2, 1), 4).unwrap();
        assert_eq!(r.kind, PowerKind::Basic);
        assert_eq!(r.power_norms[&3], n(6));
        assert_eq!(power_report(&CdType::nat(ExtNat::Inf), 2), Err(DimError::InfiniteNorm));
    }

    #[test]
    fn testing() {
        let two = p(2);
        assert_eq!(test_space(&GroupExpr::Zp(two), 3u64).unwrap(), CdType::phi_basis(BasisKind::Zp(two), 3u64).unwrap());
        assert_eq!(test_space(&GroupExpr::Z, 3u64).unwrap(), CdType::nat(3u64));
        assert_eq!(test_space(&GroupExpr::Q, 3u64).unwrap(), CdType::phi_basis(BasisKind::Q, 3u64).unwrap());
        assert_eq!(testing_dim(&singular(p(3), 2, 1), &GroupExpr::Zp(two), 5).unwrap(), n(1));
        assert_eq!(testing_dim(&CdType::nat(4u64), &GroupExpr::Zinv(p(3)), 1).unwrap(), n(4));
        let f = CdType::phi_basis(BasisKind::Zp(two), 3u64).unwrap();
        assert_eq!(testing_dim(&f, &GroupExpr::Zp(two), 4).unwrap(), n(3));
        let q3 = CdType::phi_basis(BasisKind::Q, 3u64).unwrap();
        assert!(matches!(testing_dim(&q3, &GroupExpr::Zp(two), 2), Err(DimError::Precondition(_))));
    }

    #[test]
    fn products_of_fundamentals() {
        let two = p(2);
        let got = fundamental_product_dim(BasisKind::Zp(two), 5, BasisKind::Q, 3).unwrap();
        assert_eq!(got, n(6));
        let got = fundamental_product_dim(BasisKind::Zp(two), 5, BasisKind::ZpInf(two), 3).unwrap();
        assert_eq!(got, n(7));
        assert_eq!(fundamental_product_formula(BasisKind::Zp(two), 5, BasisKind::ZpInf(two), 3).unwrap(), n(7));
        let got = fundamental_product_dim(BasisKind::Zloc(two), 5, BasisKind::Zp(two), 3).unwrap();
        assert_eq!(got, n(8));
    }

    #[test]
    fn full_valued_and_anr() {
        let two = p(2);
        assert!(is_full_valued(&CdType::nat(3u64)));
        assert!(!is_full_valued(&singular(two, 2, 1)));
        assert!(!is_full_valued(&CdType::phi_basis(BasisKind::Zloc(two), 3u64).unwrap()));
        assert!(anr_admissible(&singular(two, 4, 3)).admissible);
        let r = anr_admissible(&CdType::phi_basis(BasisKind::ZpInf(two), 3u64).unwrap());
        assert!(r.failed.contains(&AnrClause::LocalEqualsCyclic));
        let r = anr_admissible(&singular(two, 2, 1));
        assert_eq!(r.failed, vec![AnrClause::TwoDimFullValued]);
    }

    #[test]
    fn fibrations() {
        let b = fibration_bounds(n(2), n(3), n(1), n(1), true);
        assert_eq!((b.base_g_fiber, b.base_fiber_g, b.both_g, b.both_g_plus_one), (n(3), n(4), n(3), n(4)));
        let b = fibration_bounds(ExtNat::Inf, n(3), n(1), n(1), false);
        assert_eq!(b.base_g_fiber, ExtNat::Inf);
        assert_eq!(b.both_g_plus_one, ExtNat::Inf);
        let b = fibration_bounds(n(5), n(5), n(0), n(0), false);
        assert_eq!((b.base_g_fiber, b.base_fiber_g, b.both_g, b.both_g_plus_one), (n(5), n(5), n(5), n(6)));
    }
}
