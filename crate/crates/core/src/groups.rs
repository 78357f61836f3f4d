//! Abelian groups built from a small grammar, their divisibility/torsion
//! profile, and the Bockstein family `σ(G)`.

use std::fmt;

use thiserror::Error;

use crate::prime_base::{Prime, PrimeMap, PrimeSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("the trivial group has no Bockstein family")]
    Trivial,
    #[error("empty direct sum")]
    EmptySum,
    #[error("exponent must be at least 1")]
    ZeroExponent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumPattern {
    Zp,
    ZpInf,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Q,
    Z,
    Zp(Prime),
    Zpk(Prime, u32),
    ZpInf(Prime),
    /// Fractions whose denominators avoid every prime of the set.
    Zloc(PrimeSet),
    /// Z with p inverted.
    Zinv(Prime),
    Sum(Vec<GroupExpr>),
    SumOver(PrimeSet, SumPattern),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TorStatus {
    Zero,
    NonDiv,
    Div,
}

impl TorStatus {
    pub fn combine(self, other: TorStatus) -> TorStatus {
        use TorStatus::*;
        match (self, other) {
            (Zero, x) | (x, Zero) => x,
            (Div, Div) => Div,
            _ => NonDiv,
        }
    }
}

/// `tf` is `None` for torsion groups, otherwise the set of primes dividing
/// `G/Tor G`. `tor` records the p-primary torsion per prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupProfile {
    pub tf: Option<PrimeSet>,
    pub tor: PrimeMap<TorStatus>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TorKind {
    None,
    Zp,
    ZpInf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BocksteinFamily {
    pub has_q: bool,
    pub loc: PrimeSet,
    pub tors: PrimeMap<TorKind>,
}

impl GroupExpr {
    pub fn check(&self) -> Result<(), GroupError> {
        match self {
            GroupExpr::Zpk(_, 0) => Err(GroupError::ZeroExponent),
            GroupExpr::Sum(parts) if parts.is_empty() => Err(GroupError::EmptySum),
            GroupExpr::Sum(parts) => parts.iter().try_for_each(GroupExpr::check),
            _ => Ok(()),
        }
    }

    pub fn sum(parts: Vec<GroupExpr>) -> GroupExpr {
        GroupExpr::Sum(parts)
    }

    /// Splits into the torsion subgroup and the torsion-free quotient; either
    /// part is `None` when it is zero.
    pub fn split(&self) -> (Option<GroupExpr>, Option<GroupExpr>) {
        match self {
            GroupExpr::Q | GroupExpr::Z | GroupExpr::Zloc(_) | GroupExpr::Zinv(_) => (None, Some(self.clone())),
            GroupExpr::Sum(parts) => {
                let (mut tor, mut free) = (Vec::new(), Vec::new());
                for part in parts {
                    let (t, f) = part.split();
                    tor.extend(t);
                    free.extend(f);
                }
                let wrap = |mut v: Vec<GroupExpr>| match v.len() {
                    0 => None,
                    1 => v.pop(),
                    _ => Some(GroupExpr::Sum(v)),
                };
                (wrap(tor), wrap(free))
            }
            GroupExpr::SumOver(set, _) if set.is_empty() => (None, None),
            _ => (Some(self.clone()), None),
        }
    }
}

fn torsion_at(p: Prime, status: TorStatus) -> PrimeMap<TorStatus> {
    PrimeMap::new(TorStatus::Zero, [(p, status)])
}

pub fn normalize(expr: &GroupExpr) -> GroupProfile {
    let free = |div: PrimeSet| GroupProfile { tf: Some(div), tor: PrimeMap::constant(TorStatus::Zero) };
    let torsion = |tor: PrimeMap<TorStatus>| GroupProfile { tf: None, tor };
    match expr {
        GroupExpr::Q => free(PrimeSet::all()),
        GroupExpr::Z => free(PrimeSet::empty()),
        GroupExpr::Zloc(l) => free(l.complement()),
        GroupExpr::Zinv(p) => free(PrimeSet::singleton(*p)),
        GroupExpr::Zp(p) | GroupExpr::Zpk(p, _) => torsion(torsion_at(*p, TorStatus::NonDiv)),
        GroupExpr::ZpInf(p) => torsion(torsion_at(*p, TorStatus::Div)),
        GroupExpr::SumOver(set, pattern) => {
            let on = match pattern {
                SumPattern::Zp => TorStatus::NonDiv,
                SumPattern::ZpInf => TorStatus::Div,
            };
            let status = |inside: bool| if inside { on } else { TorStatus::Zero };
            let tor = PrimeMap::new(status(set.contains_generic()), set.listed().iter().map(|&p| (p, status(set.contains(p)))));
            torsion(tor)
        }
        GroupExpr::Sum(parts) => {
            let mut tf: Option<PrimeSet> = None;
            let mut tor = PrimeMap::constant(TorStatus::Zero);
            for part in parts {
                let prof = normalize(part);
                tf = match (tf, prof.tf) {
                    (Some(a), Some(b)) => Some(a.intersect(&b)),
                    (a, b) => a.or(b),
                };
                tor = tor.zip_with(&prof.tor, |a, b| a.combine(*b));
            }
            GroupProfile { tf, tor }
        }
    }
}

impl GroupProfile {
    pub fn is_trivial(&self) -> bool {
        self.tf.is_none() && self.tor.preimage(|s| *s != TorStatus::Zero).is_empty()
    }
}

pub fn sigma(profile: &GroupProfile) -> Result<BocksteinFamily, GroupError> {
    if profile.is_trivial() {
        return Err(GroupError::Trivial);
    }
    let (has_q, loc) = match &profile.tf {
        Some(div) => (div.is_all(), div.complement()),
        None => (false, PrimeSet::empty()),
    };
    let tors = profile.tor.map(|s| match s {
        TorStatus::Zero => TorKind::None,
        TorStatus::NonDiv => TorKind::Zp,
        TorStatus::Div => TorKind::ZpInf,
    });
    Ok(BocksteinFamily { has_q, loc, tors })
}

pub fn sigma_of(expr: &GroupExpr) -> Result<BocksteinFamily, GroupError> {
    expr.check()?;
    sigma(&normalize(expr))
}

impl BocksteinFamily {
    pub fn zp_set(&self) -> PrimeSet {
        self.tors.preimage(|k| *k == TorKind::Zp)
    }

    pub fn zpinf_set(&self) -> PrimeSet {
        self.tors.preimage(|k| *k == TorKind::ZpInf)
    }
}

/// Renders `name(p)` over a prime set, e.g. `Zloc(p) for all p ≠ 3`.
fn render_over(name: &str, set: &PrimeSet, out: &mut Vec<String>) {
    let list = set.listed().iter().map(|p| p.to_string()).collect::<Vec<_>>();
    if set.is_finite() {
        out.extend(list.iter().map(|p| format!("{name}({p})")));
    } else if list.is_empty() {
        out.push(format!("{name}(p) for all p"));
    } else if list.len() == 1 {
        out.push(format!("{name}(p) for all p ≠ {}", list[0]));
    } else {
        out.push(format!("{name}(p) for all p ∉ {{{}}}", list.join(",")));
    }
}

impl fmt::Display for BocksteinFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.has_q {
            parts.push("Q".to_string());
        }
        render_over("Zloc", &self.loc, &mut parts);
        render_over("Zp", &self.zp_set(), &mut parts);
        render_over("Zpinf", &self.zpinf_set(), &mut parts);
        f.write_str(&parts.join(", "))
    }
}

impl fmt::Display for SumPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumPattern::Zp => "Zp",
            SumPattern::ZpInf => "Zpinf",
        })
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Q => f.write_str("Q"),
            GroupExpr::Z => f.write_str("Z"),
            GroupExpr::Zp(p) => write!(f, "Z/{p}"),
            GroupExpr::Zpk(p, k) => write!(f, "Z/{p}^{k}"),
            GroupExpr::ZpInf(p) => write!(f, "Zpinf({p})"),
            GroupExpr::Zloc(l) if l.is_finite() => {
                let list = l.listed().iter().map(|p| p.to_string()).collect::<Vec<_>>();
                write!(f, "Zloc{{{}}}", list.join(","))
            }
            GroupExpr::Zloc(l) => write!(f, "Zloc({l})"),
            GroupExpr::Zinv(p) => write!(f, "Zinv({p})"),
            GroupExpr::Sum(parts) => {
                let text = parts.iter().map(|g| match g {
                    GroupExpr::Sum(_) => format!("({g})"),
                    _ => g.to_string(),
                });
                f.write_str(&text.collect::<Vec<_>>().join(" + "))
            }
            GroupExpr::SumOver(set, pat) if set.is_all() => write!(f, "SumAll({pat})"),
            GroupExpr::SumOver(set, pat) => write!(f, "SumOver({set}, {pat})"),
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
    fn profiles() {
        let z = normalize(&GroupExpr::Z);
        assert_eq!(z.tf, Some(PrimeSet::empty()));
        let qz2 = normalize(&GroupExpr::Sum(vec![GroupExpr::Q, GroupExpr::Zp(p(2))]));
        assert_eq!(qz2.tf, Some(PrimeSet::all()));
        assert_eq!(*qz2.tor.get(p(2)), TorStatus::NonDiv);
        assert_eq!(*qz2.tor.get(p(3)), TorStatus::Zero);
        let inf3 = normalize(&GroupExpr::ZpInf(p(3)));
        assert_eq!(inf3.tf, None);
        assert_eq!(*inf3.tor.get(p(3)), TorStatus::Div);
        let qz = normalize(&GroupExpr::Sum(vec![GroupExpr::Q, GroupExpr::Z]));
        assert_eq!(qz.tf, Some(PrimeSet::empty()));
    }

    #[test]
    fn families() {
        assert_eq!(sigma_of(&GroupExpr::Z).unwrap().to_string(), "Zloc(p) for all p");
        assert_eq!(sigma_of(&GroupExpr::Q).unwrap().to_string(), "Q");
        assert_eq!(sigma_of(&GroupExpr::Zpk(p(2), 3)).unwrap().to_string(), "Zp(2)");
        assert_eq!(sigma_of(&GroupExpr::Zinv(p(3))).unwrap().to_string(), "Zloc(p) for all p ≠ 3");
        assert_eq!(sigma_of(&GroupExpr::ZpInf(p(5))).unwrap().to_string(), "Zpinf(5)");
        let all = GroupExpr::SumOver(PrimeSet::all(), SumPattern::Zp);
        assert_eq!(sigma_of(&all).unwrap().to_string(), "Zp(p) for all p");
        let mixed = GroupExpr::Sum(vec![GroupExpr::Zp(p(2)), GroupExpr::ZpInf(p(2))]);
        assert_eq!(sigma_of(&mixed).unwrap().to_string(), "Zp(2)");
    }

    #[test]
    fn trivial_rejected() {
        let empty = GroupExpr::SumOver(PrimeSet::empty(), SumPattern::Zp);
        assert_eq!(sigma_of(&empty), Err(GroupError::Trivial));
        assert_eq!(GroupExpr::Sum(vec![]).check(), Err(GroupError::EmptySum));
    }

    #[test]
    fn split_parts() {
        let g = GroupExpr::Sum(vec![GroupExpr::Z, GroupExpr::Zp(p(2)), GroupExpr::Q]);
        let (t, f) = g.split();
        assert_eq!(t, Some(GroupExpr::Zp(p(2))));
        assert_eq!(f, Some(GroupExpr::Sum(vec![GroupExpr::Z, GroupExpr::Q])));
        assert_eq!(g.to_string(), "Z + Z/2 + Q");
    }
}
