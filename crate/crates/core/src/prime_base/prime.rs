use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimeError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse prime from {0:?}")]
    Parse(String),
}

/// A rational prime. Primality is checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(value: u64) -> Result<Prime, PrimeError> {
        if is_prime(value) {
            Ok(Prime(value))
        } else {
            Err(PrimeError::NotPrime(value))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Smallest prime strictly greater than `self`.
    pub fn next(self) -> Prime {
        let mut n = self.0 + 1;
        while !is_prime(n) {
            n += 1;
        }
        Prime(n)
    }
}

impl TryFrom<u64> for Prime {
    type Error = PrimeError;
    fn try_from(v: u64) -> Result<Self, Self::Error> {
        Prime::new(v)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Prime {
    type Err = PrimeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: u64 = s.trim().parse().map_err(|_| PrimeError::Parse(s.to_string()))?;
        Prime::new(v)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set is exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(limit: u64) -> Vec<Prime> {
    (2..=limit).filter(|&n| is_prime(n)).map(Prime).collect()
}
