use std::collections::BTreeSet;
use std::fmt;

use super::{BasisKind, BocksteinFn, CdError, CdType};
use crate::prime_base::{regions, ExtInt, ExtNat, Prime, PrimeFn, PrimeMap, PrimeSet, Region};

impl CdType {
    /// Kuzminov's fundamental type `Φ(G, n)`. For `n = 1` every kind gives
    /// `nat(1)`; otherwise
    ///
    /// * `Φ(Q, n)      = (𝒫, ∅; (n−1)δ₀ + 1)`
    /// * `Φ(Z_(p), n)  = (𝒫∖{p}, ∅; (n−1)(δ₀ + δ_p) + 1)`
    /// * `Φ(Z_p, n)    = ({p}, {p}; (n−1)δ_p + 1)`
    /// * `Φ(Z_p∞, n)   = ({p}, ∅; (n−2)δ_p + 1)`
    pub fn phi_basis(kind: BasisKind, n: impl Into<ExtNat>) -> Result<CdType, CdError> {
        let n = n.into();
        match n {
            ExtNat::Fin(0) => return Err(CdError::Argument("Phi(G, n) needs n >= 1".into())),
            ExtNat::Fin(1) => return Ok(CdType::nat(1u64)),
            _ => {}
        }
        let top = n.to_ext_int().map_err(|_| CdError::Argument("n out of range".into()))?;
        let one = ExtInt::ONE;
        let (s, def, d) = match kind {
            BasisKind::Q => (PrimeSet::all(), PrimeSet::empty(), PrimeFn::new(top, one, [])),
            BasisKind::Zloc(p) => (
                PrimeSet::cofinite([p]),
                PrimeSet::empty(),
                PrimeFn::new(top, one, [(p, top)]),
            ),
            BasisKind::Zp(p) => (PrimeSet::singleton(p), PrimeSet::singleton(p), PrimeFn::new(one, one, [(p, top)])),
            BasisKind::ZpInf(p) => (PrimeSet::singleton(p), PrimeSet::empty(), PrimeFn::new(one, one, [(p, top.pred())])),
        };
        CdType::triple(s, def, d)
    }
}

/// The prime-indexed kinds of the Kuzminov basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyPattern {
    Zloc,
    Zp,
    ZpInf,
}

impl FamilyPattern {
    pub fn kind(self, p: Prime) -> BasisKind {
        match self {
            FamilyPattern::Zloc => BasisKind::Zloc(p),
            FamilyPattern::Zp => BasisKind::Zp(p),
            FamilyPattern::ZpInf => BasisKind::ZpInf(p),
        }
    }

    fn name(self) -> &'static str {
        match self {
            FamilyPattern::Zloc => "Zloc",
            FamilyPattern::Zp => "Zp",
            FamilyPattern::ZpInf => "Zpinf",
        }
    }
}

/// The family `{Φ(pattern(p), k(p)) : p ∈ primes}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformFamily {
    pub pattern: FamilyPattern,
    pub primes: PrimeSet,
    pub k: PrimeMap<ExtNat>,
}

/// Finitely many explicit types together with finitely many uniform families.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WedgeFamily {
    pub explicit: Vec<CdType>,
    pub uniform: Vec<UniformFamily>,
}

fn fresh_prime(avoid: &BTreeSet<Prime>, also: Option<Prime>) -> Prime {
    let mut g = Prime::new(2).expect("2 is prime");
    while avoid.contains(&g) || Some(g) == also {
        g = g.next();
    }
    g
}

fn local_max(a: (ExtInt, ExtInt, ExtInt), b: (ExtInt, ExtInt, ExtInt)) -> (ExtInt, ExtInt, ExtInt) {
    (a.0.max(b.0), a.1.max(b.1), a.2.max(b.2))
}

impl UniformFamily {
    pub fn constant(pattern: FamilyPattern, primes: PrimeSet, n: impl Into<ExtNat>) -> UniformFamily {
        UniformFamily { pattern, primes, k: PrimeMap::constant(n.into()) }
    }

    /// The pointwise maximum of the members' Bockstein functions, or `None`
    /// for an empty family.
    ///
    /// At a prime `r` the member indexed by `r` contributes its own local
    /// profile, and the members indexed by other primes contribute a common
    /// profile that is monotone in `n`, so only their largest `n` matters.
    pub fn to_phi(&self) -> Result<Option<BocksteinFn>, CdError> {
        if self.primes.is_empty() {
            return Ok(None);
        }
        if self.k.exceptions().values().chain([self.k.default_value()]).any(|k| *k == ExtNat::Fin(0)) {
            return Err(CdError::Argument("family members need n >= 1".into()));
        }
        let keys: BTreeSet<Prime> = self.primes.listed().union(&self.k.keys()).copied().collect();
        let generic = fresh_prime(&keys, None);
        let member = |p: Prime, n: ExtNat| CdType::phi_basis(self.pattern.kind(p), n).map(|t| t.to_phi());

        let mut zloc = Vec::new();
        let mut zp = Vec::new();
        let mut zpinf = Vec::new();
        for r in regions(&keys) {
            let (rp, inside, others) = match r {
                Region::Default => (generic, self.primes.contains_generic(), self.primes.clone()),
                Region::At(p) => (p, self.primes.contains(p), self.primes.diff(&PrimeSet::singleton(p))),
            };
            let mut acc: Option<(ExtInt, ExtInt, ExtInt)> = None;
            if inside {
                acc = Some(member(rp, *self.k.at(r))?.local(Region::At(rp)));
            }
            if let Some(m) = self.k.sup_over(&others) {
                let other = fresh_prime(&keys, Some(rp));
                let prof = member(other, m)?.local(Region::At(rp));
                acc = Some(acc.map_or(prof, |a| local_max(a, prof)));
            }
            let (l, z, i) = acc.expect("nonempty family reaches every region");
            zloc.push((r, l));
            zp.push((r, z));
            zpinf.push((r, i));
        }
        let top = self.k.sup_over(&self.primes).expect("nonempty");
        let q = member(generic, top)?.q;
        let build = |v: Vec<(Region, ExtInt)>| {
            let default = v[0].1;
            let ex = v.into_iter().filter_map(|(r, x)| match r {
                Region::At(p) => Some((p, x)),
                Region::Default => None,
            });
            PrimeMap::new(default, ex.collect::<Vec<_>>())
        };
        Ok(Some(BocksteinFn { q, zloc: build(zloc), zp: build(zp), zpinf: build(zpinf) }))
    }
}

impl WedgeFamily {
    pub fn evaluate(&self) -> Result<CdType, CdError> {
        let mut acc: Option<BocksteinFn> = None;
        let mut join = |phi: BocksteinFn| {
            acc = Some(match acc.take() {
                Some(a) => a.max(&phi),
                None => phi,
            });
        };
        for t in &self.explicit {
            join(t.to_phi());
        }
        for fam in &self.uniform {
            if let Some(phi) = fam.to_phi()? {
                join(phi);
            }
        }
        match acc {
            Some(phi) => phi.to_cdtype(),
            None => Ok(CdType::Zero),
        }
    }
}

/// Exponents `k_G` with `F = ⋁ Φ(G, k_G)` over the whole basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub q: ExtNat,
    pub zloc: PrimeMap<ExtNat>,
    pub zp: PrimeMap<ExtNat>,
    pub zpinf: PrimeMap<ExtNat>,
}

impl CdType {
    pub fn decompose(&self) -> Result<Decomposition, CdError> {
        let t = match self {
            CdType::Zero => return Err(CdError::Argument("the zero type has no decomposition".into())),
            CdType::Positive(t) => t,
        };
        let one = ExtNat::ONE;
        if self.norm() == one {
            let ones = PrimeMap::constant(one);
            return Ok(Decomposition { q: one, zloc: ones.clone(), zp: ones.clone(), zpinf: ones });
        }
        let nat = |v: ExtInt| ExtNat::try_from(v).map_err(|_| CdError::NotPositive(v));
        let keys = t.keys();
        let d = t.field_fn();
        let zloc = PrimeMap::try_tabulate(&keys, |r| if t.in_s(r) { Ok(one) } else { nat(*d.at(r)) })?;
        let zp = PrimeMap::try_tabulate(&keys, |r| if t.in_d(r) { nat(*d.at(r)) } else { Ok(one) })?;
        let zpinf = PrimeMap::try_tabulate(&keys, |r| {
            if t.in_s(r) && !t.in_d(r) {
                nat(d.at(r).succ())
            } else {
                Ok(one)
            }
        })?;
        Ok(Decomposition { q: nat(*d.at_zero())?, zloc, zp, zpinf })
    }
}

impl Decomposition {
    pub fn to_family(&self) -> WedgeFamily {
        let fam = |pattern, k: &PrimeMap<ExtNat>| UniformFamily { pattern, primes: PrimeSet::all(), k: k.clone() };
        WedgeFamily {
            explicit: vec![CdType::phi_basis(BasisKind::Q, self.q).expect("q >= 1")],
            uniform: vec![
                fam(FamilyPattern::Zloc, &self.zloc),
                fam(FamilyPattern::Zp, &self.zp),
                fam(FamilyPattern::ZpInf, &self.zpinf),
            ],
        }
    }

    pub fn recompose(&self) -> Result<CdType, CdError> {
        self.to_family().evaluate()
    }

    pub fn get(&self, kind: BasisKind) -> ExtNat {
        match kind {
            BasisKind::Q => self.q,
            BasisKind::Zloc(p) => *self.zloc.get(p),
            BasisKind::Zp(p) => *self.zp.get(p),
            BasisKind::ZpInf(p) => *self.zpinf.get(p),
        }
    }
}

fn render_family(pattern: FamilyPattern, k: &PrimeMap<ExtNat>, out: &mut Vec<String>) {
    let name = pattern.name();
    let big = |v: &ExtNat| *v >= ExtNat::Fin(2);
    for (p, v) in k.exceptions() {
        if big(v) {
            out.push(format!("Phi({name}({p}),{v})"));
        }
    }
    let dv = k.default_value();
    if big(dv) {
        let ex: Vec<String> = k.exceptions().keys().map(|p| p.to_string()).collect();
        let tail = match ex.len() {
            0 => String::new(),
            1 => format!(" ≠ {}", ex[0]),
            _ => format!(" ∉ {{{}}}", ex.join(",")),
        };
        out.push(format!("Phi({name}(p),{dv}) for all p{tail}"));
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.q >= ExtNat::Fin(2) {
            parts.push(format!("Phi(Q,{})", self.q));
        }
        render_family(FamilyPattern::Zloc, &self.zloc, &mut parts);
        render_family(FamilyPattern::Zp, &self.zp, &mut parts);
        render_family(FamilyPattern::ZpInf, &self.zpinf, &mut parts);
        parts.push("1-types".into());
        f.write_str(&parts.join(" ∨ "))
    }
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

    /// Row of the fundamental table in the order Z_(p), Z_p, Z_p∞, Q, Z_(q), Z_q, Z_q∞.
    fn row(t: &CdType, prime: Prime, other: Prime) -> [ExtInt; 7] {
        let phi = t.to_phi();
        let (a, b, c) = phi.local(Region::At(prime));
        let (x, y, z) = phi.local(Region::At(other));
        [a, b, c, phi.q, x, y, z]
    }

    #[test]
    fn fundamental_rows() {
        let (two, seven) = (p(2), p(7));
        for n in 2..6i64 {
            let nn = n as u64;
            let r = |k| row(&CdType::phi_basis(k, nn).unwrap(), two, seven);
            assert_eq!(r(BasisKind::Q), [f(n), f(1), f(1), f(n), f(n), f(1), f(1)]);
            assert_eq!(r(BasisKind::Zloc(two)), [f(n), f(n), f(n), f(n), f(n), f(1), f(1)]);
            assert_eq!(r(BasisKind::Zp(two)), [f(n), f(n), f(n - 1), f(1), f(1), f(1), f(1)]);
            assert_eq!(r(BasisKind::ZpInf(two)), [f(n), f(n - 1), f(n - 1), f(1), f(1), f(1), f(1)]);
        }
    }

    #[test]
    fn basis_norms() {
        for n in 1..7u64 {
            for k in BasisKind::all_at(p(3)) {
                assert_eq!(CdType::phi_basis(k, n).unwrap().norm(), ExtNat::Fin(n));
            }
        }
        assert!(CdType::phi_basis(BasisKind::Q, 0u64).is_err());
    }

    #[test]
    fn uniform_families() {
        let fam = UniformFamily::constant(FamilyPattern::Zloc, PrimeSet::all(), 4u64);
        let w = WedgeFamily { explicit: vec![], uniform: vec![fam] };
        assert_eq!(w.evaluate().unwrap(), CdType::nat(4u64));
        let zp_all = UniformFamily::constant(FamilyPattern::Zp, PrimeSet::all(), 3u64);
        let t = WedgeFamily { explicit: vec![], uniform: vec![zp_all] }.evaluate().unwrap();
        let phi = t.to_phi();
        assert_eq!(phi.q, f(1));
        assert_eq!(phi.local(Region::At(p(11))), (f(3), f(3), f(2)));
        assert_eq!(phi.local(Region::Default), (f(3), f(3), f(2)));
    }

    #[test]
    fn wedge_with_nat() {
        let two = p(2);
        let w = CdType::phi_basis(BasisKind::Zp(two), 3u64).unwrap().wedge(&CdType::nat(2u64)).unwrap();
        let d = PrimeFn::new(f(2), f(2), [(two, f(3))]);
        assert_eq!(w, CdType::triple(PrimeSet::singleton(two), PrimeSet::singleton(two), d).unwrap());
    }

    #[test]
    fn decompositions() {
        let nat3 = CdType::nat(3u64).decompose().unwrap();
        assert_eq!(nat3.q, ExtNat::Fin(3));
        assert_eq!(*nat3.zloc.default_value(), ExtNat::Fin(3));
        assert_eq!(nat3.recompose().unwrap(), CdType::nat(3u64));
        assert_eq!(nat3.to_string(), "Phi(Q,3) ∨ Phi(Zloc(p),3) for all p ∨ 1-types");

        let two = p(2);
        let d = PrimeFn::new(f(1), f(1), [(two, f(2))]);
        let pi2 = CdType::triple(PrimeSet::singleton(two), PrimeSet::singleton(two), d).unwrap();
        let dec = pi2.decompose().unwrap();
        assert_eq!(dec.get(BasisKind::Zp(two)), ExtNat::Fin(2));
        assert_eq!(dec.get(BasisKind::Q), ExtNat::ONE);
        assert_eq!(dec.to_string(), "Phi(Zp(2),2) ∨ 1-types");
        assert_eq!(dec.recompose().unwrap(), pi2);
    }
}
