//! Integer helpers: primality, prime sets, p-parts.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime divisors of `n` in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in prime_divisors(n) {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        out.push((p, e));
    }
    out
}

/// A power of a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PPower {
    pub p: u64,
    pub exponent: u32,
    pub value: u64,
}

impl PPower {
    pub fn new(p: u64, exponent: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let value = p
            .checked_pow(exponent)
            .ok_or_else(|| Error::InvalidParameter(format!("{p}^{exponent} overflows")))?;
        Ok(PPower { p, exponent, value })
    }

    /// Interprets `value` as a power of `p`.
    pub fn of_value(p: u64, value: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut v = value;
        let mut e = 0;
        while v > 1 && v % p == 0 {
            v /= p;
            e += 1;
        }
        if v != 1 {
            return Err(Error::InvalidParameter(format!("{value} is not a power of {p}")));
        }
        Ok(PPower { p, exponent: e, value })
    }
}

impl fmt::Display for PPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> PPower {
    assert!(is_prime(p), "{p} is not prime");
    assert!(n > 0);
    let mut e = 0;
    let mut v = 1;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        e += 1;
        v *= p;
    }
    PPower {
        p,
        exponent: e,
        value: v,
    }
}

pub fn is_power_of(n: u64, p: u64) -> bool {
    n >= 1 && p_part(n, p).value == n
}

/// A finite set of primes, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeSet(BTreeSet<u64>);

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in primes {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            set.insert(p);
        }
        Ok(PrimeSet(set))
    }

    /// `π(n)`: the prime divisors of `n`.
    pub fn of(n: u64) -> Self {
        PrimeSet(prime_divisors(n).into_iter().collect())
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.contains(&p)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// All prime divisors of `n` lie in `pi`. `1` qualifies for every `pi`.
pub fn pi_number(n: u64, pi: &PrimeSet) -> bool {
    prime_divisors(n).into_iter().all(|p| pi.contains(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_parts() {
        assert_eq!(p_part(24, 2).value, 8);
        assert_eq!(p_part(24, 3).value, 3);
        assert_eq!(p_part(35, 2).value, 1);
        assert_eq!(p_part(35, 2).exponent, 0);
    }

    #[test]
    fn pi_numbers() {
        let two = PrimeSet::new([2]).unwrap();
        assert!(pi_number(8, &two));
        assert!(!pi_number(6, &two));
        assert!(pi_number(1, &PrimeSet::default()));
        assert!(!pi_number(3, &PrimeSet::default()));
    }

    #[test]
    fn prime_sets_reject_composites() {
        assert!(PrimeSet::new([2, 4]).is_err());
        assert_eq!(PrimeSet::of(60).iter().collect::<Vec<_>>(), vec![2, 3, 5]);
        assert_eq!(PrimeSet::of(1).to_string(), "{}");
    }

    #[test]
    fn ppower_parsing() {
        assert_eq!(PPower::of_value(2, 16).unwrap().exponent, 4);
        assert!(PPower::of_value(2, 12).is_err());
        assert!(PPower::new(4, 2).is_err());
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
    }
}
