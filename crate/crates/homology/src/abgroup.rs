//! Finitely described abelian groups and the universal coefficient formulas.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::complex::HomologyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Z,
    Q,
    /// `Z/m` with `m` a prime power.
    Zmod(u64),
    /// The Prüfer group `Z/p^∞`.
    ZpInfinity(u64),
}

fn prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let p = (2..=m).find(|d| m.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = m;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl Coefficients {
    pub fn zmod(m: u64) -> Result<Coefficients, HomologyError> {
        prime_power(m)
            .map(|_| Coefficients::Zmod(m))
            .ok_or_else(|| HomologyError::Precondition(format!("modulus {m} is not a prime power")))
    }

    pub fn prufer(p: u64) -> Result<Coefficients, HomologyError> {
        match prime_power(p) {
            Some((q, 1)) if q == p => Ok(Coefficients::ZpInfinity(p)),
            _ => Err(HomologyError::Precondition(format!("{p} is not prime"))),
        }
    }

    /// The prime when the coefficients form the field `Z/p`.
    pub fn prime_field(self) -> Option<u64> {
        match self {
            Coefficients::Zmod(m) => prime_power(m).filter(|&(_, k)| k == 1).map(|(p, _)| p),
            _ => None,
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Z => f.write_str("Z"),
            Coefficients::Q => f.write_str("Q"),
            Coefficients::Zmod(m) => write!(f, "Z/{m}"),
            Coefficients::ZpInfinity(p) => write!(f, "Zpinf({p})"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = HomologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || HomologyError::Precondition(format!("unknown coefficients '{s}'"));
        match t {
            "Z" => Ok(Coefficients::Z),
            "Q" => Ok(Coefficients::Q),
            _ => {
                if let Some(m) = t.strip_prefix("Z/") {
                    Coefficients::zmod(m.parse().map_err(|_| bad())?)
                } else if let Some(p) = t.strip_prefix("Zpinf(").and_then(|r| r.strip_suffix(')')) {
                    Coefficients::prufer(p.parse().map_err(|_| bad())?)
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// `Z^free ⊕ Q^rational ⊕ ⊕ Z/p^∞ ⊕ ⊕ Z/t`, with the finite cyclic orders
/// kept as invariant factors (each divides the next).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbGroup {
    pub free: usize,
    pub rational: usize,
    pub prufer: Vec<u64>,
    pub torsion: Vec<BigInt>,
}

/// Invariant factors of `⊕ Z/aᵢ`: split into prime powers and regroup.
fn invariant_form(orders: &[BigInt]) -> Vec<BigInt> {
    let mut by_prime: std::collections::BTreeMap<BigInt, Vec<BigInt>> = Default::default();
    for a in orders {
        let mut n = a.abs();
        if n <= BigInt::one() {
            continue;
        }
        let mut d = BigInt::from(2);
        while &d * &d <= n {
            if (&n % &d).is_zero() {
                let mut q = BigInt::one();
                while (&n % &d).is_zero() {
                    n /= &d;
                    q *= &d;
                }
                by_prime.entry(d.clone()).or_default().push(q);
            }
            d += 1;
        }
        if n > BigInt::one() {
            by_prime.entry(n.clone()).or_default().push(n);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![BigInt::one(); len];
    for powers in by_prime.values_mut() {
        powers.sort();
        // largest powers go to the last factors
        for (k, q) in powers.iter().rev().enumerate() {
            out[len - 1 - k] *= q;
        }
    }
    out
}

impl AbGroup {
    pub fn zero() -> AbGroup {
        AbGroup::default()
    }

    pub fn free(n: usize) -> AbGroup {
        AbGroup { free: n, ..AbGroup::default() }
    }

    pub fn cyclic(orders: &[i64]) -> AbGroup {
        AbGroup::from_parts(0, orders.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `Z^free ⊕ ⊕ Z/aᵢ` with the orders normalized.
    pub fn from_parts(free: usize, orders: Vec<BigInt>) -> AbGroup {
        AbGroup { free, rational: 0, prufer: Vec::new(), torsion: invariant_form(&orders) }
    }

    fn normalized(mut self) -> AbGroup {
        self.torsion = invariant_form(&self.torsion);
        self.prufer.sort_unstable();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.rational == 0 && self.prufer.is_empty() && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        let mut torsion = self.torsion.clone();
        torsion.extend(other.torsion.iter().cloned());
        let mut prufer = self.prufer.clone();
        prufer.extend(&other.prufer);
        AbGroup { free: self.free + other.free, rational: self.rational + other.rational, prufer, torsion }.normalized()
    }

    /// Vector-space dimension, when the group is one over `Q` or `Z/p`.
    pub fn dimension(&self) -> Option<usize> {
        if self.free > 0 || !self.prufer.is_empty() {
            return None;
        }
        if self.torsion.is_empty() {
            return Some(self.rational);
        }
        if self.rational > 0 {
            return None;
        }
        let p = self.torsion.last().expect("nonempty");
        let prime = self.torsion.iter().all(|t| t == p) && invariant_form(std::slice::from_ref(p)).len() == 1;
        let square_free = prime && {
            let mut d = BigInt::from(2);
            let mut ok = true;
            while &d * &d <= *p {
                if (p % &d).is_zero() {
                    ok = false;
                }
                d += 1;
            }
            ok
        };
        square_free.then_some(self.torsion.len())
    }

    /// Drops one free summand, turning `H₀` into reduced `H̃₀`.
    pub fn reduce_free(&self) -> AbGroup {
        AbGroup { free: self.free.saturating_sub(1), ..self.clone() }
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        parts.extend(std::iter::repeat_n("Z".to_string(), self.free));
        parts.extend(std::iter::repeat_n("Q".to_string(), self.rational));
        parts.extend(self.prufer.iter().map(|p| format!("Zpinf({p})")));
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn gcd_u(a: &BigInt, m: u64) -> BigInt {
    a.gcd(&BigInt::from(m))
}

/// `p^{v_p(a)}`
fn p_part(a: &BigInt, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let mut n = a.abs();
    let mut out = BigInt::one();
    while !n.is_zero() && (&n % &pb).is_zero() {
        n /= &pb;
        out *= &pb;
    }
    out
}

/// `H ⊗ G` for `H = Z^r ⊕ ⊕ Z/t` finitely generated.
pub fn tensor(h: &AbGroup, g: Coefficients) -> AbGroup {
    match g {
        Coefficients::Z => h.clone(),
        Coefficients::Q => AbGroup { rational: h.free, ..AbGroup::default() },
        Coefficients::Zmod(m) => {
            let mut orders: Vec<BigInt> = vec![BigInt::from(m); h.free];
            orders.extend(h.torsion.iter().map(|t| gcd_u(t, m)));
            AbGroup::from_parts(0, orders)
        }
        Coefficients::ZpInfinity(p) => AbGroup { prufer: vec![p; h.free], ..AbGroup::default() },
    }
}

/// `Tor(H, G)`
pub fn tor(h: &AbGroup, g: Coefficients) -> AbGroup {
    match g {
        Coefficients::Z | Coefficients::Q => AbGroup::zero(),
        Coefficients::Zmod(m) => AbGroup::from_parts(0, h.torsion.iter().map(|t| gcd_u(t, m)).collect()),
        Coefficients::ZpInfinity(p) => AbGroup::from_parts(0, h.torsion.iter().map(|t| p_part(t, p)).collect()),
    }
}

/// `Hom(H, G)`
pub fn hom(h: &AbGroup, g: Coefficients) -> AbGroup {
    let free_part = match g {
        Coefficients::Z => AbGroup::free(h.free),
        _ => tensor(&AbGroup::free(h.free), g),
    };
    let tors = match g {
        Coefficients::Z | Coefficients::Q => AbGroup::zero(),
        Coefficients::Zmod(m) => AbGroup::from_parts(0, h.torsion.iter().map(|t| gcd_u(t, m)).collect()),
        Coefficients::ZpInfinity(p) => AbGroup::from_parts(0, h.torsion.iter().map(|t| p_part(t, p)).collect()),
    };
    free_part.direct_sum(&tors)
}

/// `Ext(H, G)`
pub fn ext(h: &AbGroup, g: Coefficients) -> AbGroup {
    match g {
        Coefficients::Z => AbGroup::from_parts(0, h.torsion.clone()),
        Coefficients::Zmod(m) => AbGroup::from_parts(0, h.torsion.iter().map(|t| gcd_u(t, m)).collect()),
        Coefficients::Q | Coefficients::ZpInfinity(_) => AbGroup::zero(),
    }
}

/// `Tor(A, B)` and `A ⊗ B` for two finitely generated groups.
pub fn tensor_fg(a: &AbGroup, b: &AbGroup) -> AbGroup {
    let mut orders = Vec::new();
    for t in &b.torsion {
        orders.extend(std::iter::repeat_n(t.clone(), a.free));
    }
    for t in &a.torsion {
        orders.extend(std::iter::repeat_n(t.clone(), b.free));
        orders.extend(b.torsion.iter().map(|u| t.gcd(u)));
    }
    AbGroup::from_parts(a.free * b.free, orders)
}

pub fn tor_fg(a: &AbGroup, b: &AbGroup) -> AbGroup {
    let orders = a.torsion.iter().flat_map(|t| b.torsion.iter().map(move |u| t.gcd(u))).collect();
    AbGroup::from_parts(0, orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_normalization() {
        assert_eq!(AbGroup::cyclic(&[2, 3]).to_string(), "Z/6");
        assert_eq!(AbGroup::cyclic(&[4, 6]).to_string(), "Z/2 + Z/12");
        assert_eq!(AbGroup::cyclic(&[1, 1]).to_string(), "0");
    }

    #[test]
    fn uct_pieces() {
        let h = AbGroup::from_parts(1, vec![BigInt::from(2)]);
        assert_eq!(tensor(&h, Coefficients::Zmod(2)).to_string(), "Z/2 + Z/2");
        assert_eq!(tensor(&h, Coefficients::Q).to_string(), "Q");
        assert_eq!(tor(&h, Coefficients::Zmod(4)).to_string(), "Z/2");
        assert_eq!(tor(&h, Coefficients::ZpInfinity(2)).to_string(), "Z/2");
        assert_eq!(hom(&h, Coefficients::Z).to_string(), "Z");
        assert_eq!(ext(&h, Coefficients::Z).to_string(), "Z/2");
        assert_eq!(tensor(&h, Coefficients::Zmod(3)).dimension(), Some(1));
        assert_eq!(AbGroup::cyclic(&[4]).dimension(), None);
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!("Z/4".parse::<Coefficients>().unwrap(), Coefficients::Zmod(4));
        assert!("Z/6".parse::<Coefficients>().is_err());
        assert_eq!("Zpinf(3)".parse::<Coefficients>().unwrap(), Coefficients::ZpInfinity(3));
        assert_eq!(Coefficients::Zmod(5).prime_field(), Some(5));
        assert_eq!(Coefficients::Zmod(9).prime_field(), None);
    }
}
