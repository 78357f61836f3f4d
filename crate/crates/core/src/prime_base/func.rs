use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ext::{ArithError, ExtArith};
use super::prime::Prime;
use super::set::PrimeSet;

/// A place where a finitely represented prime function is evaluated: either
/// a listed prime or the generic prime outside every listed exception.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    Default,
    At(Prime),
}

/// Location of a value inside a `PrimeFn`, used in error reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Zero,
    Default,
    Prime(Prime),
}

impl From<Region> for Slot {
    fn from(r: Region) -> Slot {
        match r {
            Region::Default => Slot::Default,
            Region::At(p) => Slot::Prime(p),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Default => f.write_str("default"),
            Region::At(p) => write!(f, "p={p}"),
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Zero => f.write_str("0"),
            Slot::Default => f.write_str("default"),
            Slot::Prime(p) => write!(f, "p={p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{source} at slot {slot}")]
pub struct SlotError {
    pub slot: Slot,
    pub source: ArithError,
}

/// Union of the exception keys of several representations.
pub fn region_keys<'a, I>(keys: I) -> BTreeSet<Prime>
where
    I: IntoIterator<Item = &'a BTreeSet<Prime>>,
{
    keys.into_iter().flat_map(|k| k.iter().copied()).collect()
}

/// `Region::Default` followed by each key.
pub fn regions(keys: &BTreeSet<Prime>) -> impl Iterator<Item = Region> + '_ {
    std::iter::once(Region::Default).chain(keys.iter().map(|&p| Region::At(p)))
}

/// A function on all primes equal to `default` outside a finite exception set.
/// Exceptions never repeat the default, so equal functions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeMap<V> {
    default: V,
    exceptions: BTreeMap<Prime, V>,
}

impl<V: Clone + PartialEq> PrimeMap<V> {
    pub fn constant(v: V) -> Self {
        PrimeMap { default: v, exceptions: BTreeMap::new() }
    }

    pub fn new<I: IntoIterator<Item = (Prime, V)>>(default: V, exceptions: I) -> Self {
        let exceptions = exceptions.into_iter().filter(|(_, v)| *v != default).collect();
        PrimeMap { default, exceptions }
    }

    pub fn default_value(&self) -> &V {
        &self.default
    }

    pub fn exceptions(&self) -> &BTreeMap<Prime, V> {
        &self.exceptions
    }

    pub fn keys(&self) -> BTreeSet<Prime> {
        self.exceptions.keys().copied().collect()
    }

    pub fn get(&self, p: Prime) -> &V {
        self.exceptions.get(&p).unwrap_or(&self.default)
    }

    pub fn at(&self, r: Region) -> &V {
        match r {
            Region::Default => &self.default,
            Region::At(p) => self.get(p),
        }
    }

    pub fn with(&self, p: Prime, v: V) -> Self {
        let mut out = self.clone();
        if v == out.default {
            out.exceptions.remove(&p);
        } else {
            out.exceptions.insert(p, v);
        }
        out
    }

    /// Builds a map by evaluating `f` on the default region and on each key.
    pub fn tabulate(keys: &BTreeSet<Prime>, mut f: impl FnMut(Region) -> V) -> Self {
        let default = f(Region::Default);
        let ex: Vec<_> = keys.iter().map(|&p| (p, f(Region::At(p)))).collect();
        PrimeMap::new(default, ex)
    }

    pub fn try_tabulate<E>(
        keys: &BTreeSet<Prime>,
        mut f: impl FnMut(Region) -> Result<V, E>,
    ) -> Result<Self, E> {
        let default = f(Region::Default)?;
        let mut ex = Vec::with_capacity(keys.len());
        for &p in keys {
            ex.push((p, f(Region::At(p))?));
        }
        Ok(PrimeMap::new(default, ex))
    }

    pub fn map<W: Clone + PartialEq>(&self, f: impl Fn(&V) -> W) -> PrimeMap<W> {
        PrimeMap::new(f(&self.default), self.exceptions.iter().map(|(&p, v)| (p, f(v))))
    }

    pub fn zip_with<W, U>(&self, other: &PrimeMap<W>, f: impl Fn(&V, &W) -> U) -> PrimeMap<U>
    where
        W: Clone + PartialEq,
        U: Clone + PartialEq,
    {
        let keys = region_keys([&self.keys(), &other.keys()]);
        PrimeMap::tabulate(&keys, |r| f(self.at(r), other.at(r)))
    }

    /// Primes at which `pred` holds.
    pub fn preimage(&self, pred: impl Fn(&V) -> bool) -> PrimeSet {
        let flipped = self.exceptions.iter().filter(|(_, v)| pred(v) != pred(&self.default)).map(|(&p, _)| p);
        if pred(&self.default) {
            PrimeSet::cofinite(flipped)
        } else {
            PrimeSet::finite(flipped)
        }
    }
}

impl<V: Clone + PartialEq + Ord> PrimeMap<V> {
    /// Supremum over the primes of `set`; `None` when the set is empty.
    pub fn sup_over(&self, set: &PrimeSet) -> Option<V> {
        self.over(set).max()
    }

    pub fn inf_over(&self, set: &PrimeSet) -> Option<V> {
        self.over(set).min()
    }

    fn over<'a>(&'a self, set: &'a PrimeSet) -> Box<dyn Iterator<Item = V> + 'a> {
        if set.is_finite() {
            Box::new(set.listed().iter().map(move |&p| self.get(p).clone()))
        } else {
            // infinitely many unlisted primes carry the default
            let ex = self.exceptions.iter().filter(|(p, _)| set.contains(**p)).map(|(_, v)| v.clone());
            Box::new(std::iter::once(self.default.clone()).chain(ex))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointOp {
    Add,
    Sub,
    Max,
    Min,
    Mul,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Sup,
    Inf,
}

impl PointOp {
    pub fn apply<V: ExtArith>(self, a: V, b: V) -> Result<V, ArithError> {
        match self {
            PointOp::Add => a.ext_add(b),
            PointOp::Sub => a.ext_sub(b),
            PointOp::Mul => a.ext_mul(b),
            PointOp::Max => Ok(a.max(b)),
            PointOp::Min => Ok(a.min(b)),
        }
    }
}

/// A function on `𝒫 ∪ {0}`: a value at the slot 0 plus a `PrimeMap`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(
    into = "Wire<V>",
    from = "Wire<V>",
    bound(serialize = "V: Serialize + Clone + PartialEq", deserialize = "V: Deserialize<'de> + Clone + PartialEq")
)]
pub struct PrimeFn<V: Clone + PartialEq> {
    at_zero: V,
    primes: PrimeMap<V>,
}

#[derive(Serialize, Deserialize)]
struct Wire<V> {
    at_zero: V,
    default: V,
    exceptions: BTreeMap<Prime, V>,
}

impl<V: Clone + PartialEq> From<PrimeFn<V>> for Wire<V> {
    fn from(f: PrimeFn<V>) -> Self {
        Wire { at_zero: f.at_zero, default: f.primes.default, exceptions: f.primes.exceptions }
    }
}

impl<V: Clone + PartialEq> From<Wire<V>> for PrimeFn<V> {
    fn from(w: Wire<V>) -> Self {
        PrimeFn::new(w.at_zero, w.default, w.exceptions)
    }
}

impl<V: Clone + PartialEq> PrimeFn<V> {
    pub fn constant(v: V) -> Self {
        PrimeFn { at_zero: v.clone(), primes: PrimeMap::constant(v) }
    }

    pub fn new<I: IntoIterator<Item = (Prime, V)>>(at_zero: V, default: V, exceptions: I) -> Self {
        PrimeFn { at_zero, primes: PrimeMap::new(default, exceptions) }
    }

    pub fn from_parts(at_zero: V, primes: PrimeMap<V>) -> Self {
        PrimeFn { at_zero, primes }
    }

    pub fn at_zero(&self) -> &V {
        &self.at_zero
    }

    pub fn with_zero(&self, v: V) -> Self {
        PrimeFn { at_zero: v, primes: self.primes.clone() }
    }

    pub fn with(&self, p: Prime, v: V) -> Self {
        PrimeFn { at_zero: self.at_zero.clone(), primes: self.primes.with(p, v) }
    }

    pub fn primes(&self) -> &PrimeMap<V> {
        &self.primes
    }

    pub fn default_value(&self) -> &V {
        &self.primes.default
    }

    pub fn exceptions(&self) -> &BTreeMap<Prime, V> {
        &self.primes.exceptions
    }

    pub fn keys(&self) -> BTreeSet<Prime> {
        self.primes.keys()
    }

    pub fn get(&self, p: Prime) -> &V {
        self.primes.get(p)
    }

    pub fn at(&self, r: Region) -> &V {
        self.primes.at(r)
    }

    pub fn slot(&self, s: Slot) -> &V {
        match s {
            Slot::Zero => &self.at_zero,
            Slot::Default => self.primes.default_value(),
            Slot::Prime(p) => self.primes.get(p),
        }
    }

    pub fn map<W: Clone + PartialEq>(&self, f: impl Fn(&V) -> W) -> PrimeFn<W> {
        PrimeFn { at_zero: f(&self.at_zero), primes: self.primes.map(f) }
    }

    /// Every stored value: slot 0, the default, then each exception.
    pub fn values(&self) -> impl Iterator<Item = &V> {
        std::iter::once(&self.at_zero)
            .chain(std::iter::once(&self.primes.default))
            .chain(self.primes.exceptions.values())
    }
}

impl<V: ExtArith> PrimeFn<V> {
    /// χ_A: 1 on A, 0 elsewhere, and 0 at the slot 0.
    pub fn indicator(set: &PrimeSet) -> Self {
        let bit = |b: bool| if b { V::one() } else { V::zero() };
        let primes = PrimeMap::new(bit(set.contains_generic()), set.listed().iter().map(|&p| (p, bit(set.contains(p)))));
        PrimeFn { at_zero: V::zero(), primes }
    }

    /// δ_p.
    pub fn delta(p: Prime) -> Self {
        PrimeFn::new(V::zero(), V::zero(), [(p, V::one())])
    }

    /// δ_0.
    pub fn delta_zero() -> Self {
        PrimeFn::new(V::one(), V::zero(), [])
    }

    pub fn pointwise(op: PointOp, f: &Self, g: &Self) -> Result<Self, SlotError> {
        let at_zero = op
            .apply(f.at_zero, g.at_zero)
            .map_err(|source| SlotError { slot: Slot::Zero, source })?;
        let keys = region_keys([&f.keys(), &g.keys()]);
        let primes = PrimeMap::try_tabulate(&keys, |r| {
            op.apply(*f.at(r), *g.at(r)).map_err(|source| SlotError { slot: r.into(), source })
        })?;
        Ok(PrimeFn { at_zero, primes })
    }

    pub fn add(&self, g: &Self) -> Result<Self, SlotError> {
        Self::pointwise(PointOp::Add, self, g)
    }

    pub fn sub(&self, g: &Self) -> Result<Self, SlotError> {
        Self::pointwise(PointOp::Sub, self, g)
    }

    pub fn mul(&self, g: &Self) -> Result<Self, SlotError> {
        Self::pointwise(PointOp::Mul, self, g)
    }

    pub fn max(&self, g: &Self) -> Self {
        Self::pointwise(PointOp::Max, self, g).expect("max is total")
    }

    pub fn min(&self, g: &Self) -> Self {
        Self::pointwise(PointOp::Min, self, g).expect("min is total")
    }

    pub fn scalar(&self, op: PointOp, k: V) -> Result<Self, SlotError> {
        Self::pointwise(op, self, &PrimeFn::constant(k))
    }

    pub fn extremum(&self, kind: Extremum) -> V {
        let it = self.values().copied();
        match kind {
            Extremum::Sup => it.max(),
            Extremum::Inf => it.min(),
        }
        .expect("at least two stored values")
    }

    pub fn sup(&self) -> V {
        self.extremum(Extremum::Sup)
    }

    pub fn inf(&self) -> V {
        self.extremum(Extremum::Inf)
    }
}

impl<V: Clone + PartialEq + fmt::Display> fmt::Display for PrimeFn<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{zero:{}, default:{}", self.at_zero, self.primes.default)?;
        for (p, v) in &self.primes.exceptions {
            write!(f, ", {p}:{v}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime_base::ExtNat;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn n(v: u64) -> ExtNat {
        ExtNat::Fin(v)
    }

    #[test]
    fn kuzminov_zp_profile() {
        let two = p(2);
        let d = PrimeFn::<ExtNat>::delta(two).scalar(PointOp::Mul, n(2)).unwrap();
        let d = d.add(&PrimeFn::constant(n(1))).unwrap();
        assert_eq!(d, PrimeFn::new(n(1), n(1), [(two, n(3))]));
    }

    #[test]
    fn max_and_extrema() {
        let f = PrimeFn::new(n(1), n(1), [(p(2), n(4))]);
        let g = PrimeFn::max(&PrimeFn::constant(n(2)), &f);
        assert_eq!(g, PrimeFn::new(n(2), n(2), [(p(2), n(4))]));
        assert_eq!(PrimeFn::new(n(3), n(1), [(p(2), n(4))]).sup(), n(4));
        assert_eq!(PrimeFn::new(n(2), n(2), [(p(3), n(1))]).inf(), n(1));
    }

    #[test]
    fn infinite_slots() {
        let f = PrimeFn::new(n(1), n(1), [(p(5), ExtNat::Inf)]);
        let g = f.add(&PrimeFn::constant(n(1))).unwrap();
        assert_eq!(*g.get(p(5)), ExtNat::Inf);
        let err = f.sub(&PrimeFn::constant(ExtNat::Inf)).unwrap_err();
        assert_eq!(err.slot, Slot::Zero);
        let err = PrimeFn::constant(ExtNat::Inf).with_zero(n(0)).sub(&f.with_zero(ExtNat::Inf)).unwrap_err();
        assert_eq!(err.slot, Slot::Zero);
    }

    #[test]
    fn indicator_and_preimage() {
        let chi = PrimeFn::<ExtNat>::indicator(&PrimeSet::cofinite([p(3)]));
        assert_eq!(*chi.at_zero(), n(0));
        assert_eq!(*chi.get(p(3)), n(0));
        assert_eq!(*chi.get(p(7)), n(1));
        assert_eq!(chi.primes().preimage(|v| *v == n(1)), PrimeSet::cofinite([p(3)]));
        assert_eq!(PrimeFn::<ExtNat>::indicator(&PrimeSet::empty()), PrimeFn::constant(n(0)));
    }

    #[test]
    fn sup_over_sets() {
        let m = PrimeMap::new(1, [(p(2), 5), (p(3), 0)]);
        assert_eq!(m.sup_over(&PrimeSet::cofinite([p(2)])), Some(1));
        assert_eq!(m.inf_over(&PrimeSet::cofinite([p(2)])), Some(0));
        assert_eq!(m.sup_over(&PrimeSet::finite([p(2), p(7)])), Some(5));
        assert_eq!(m.sup_over(&PrimeSet::empty()), None);
    }

    #[test]
    fn json_shape() {
        let f = PrimeFn::new(n(1), n(1), [(p(2), n(2)), (p(11), ExtNat::Inf)]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"at_zero":1,"default":1,"exceptions":{"2":2,"11":"inf"}}"#);
        assert_eq!(serde_json::from_str::<PrimeFn<ExtNat>>(&s).unwrap(), f);
    }
}
