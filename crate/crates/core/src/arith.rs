//! Integer helpers shared by the other modules: lcm towers, factorials,
//! primality, and decimal-string serde adapters.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// lcm(1, 2, ..., m). Returns 1 for m = 0.
pub fn lcm_upto(m: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=m {
        acc = acc.lcm(&BigInt::from(k));
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `a mod m` in `[0, m)` for `m > 0`.
pub fn rem_floor(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

pub fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// Parses `"2,3,5"` (whitespace tolerated, empty items skipped).
pub fn parse_int_list(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(parse_int)
        .collect()
}

const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller-Rabin over the first twelve prime bases. Deterministic below
/// 3.3e24; a strong probable-prime test beyond that.
pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    let n = n.magnitude();
    for &p in &SMALL_PRIMES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    if *n < BigUint::from(41u32 * 41) {
        return *n > BigUint::one();
    }

    let one = BigUint::one();
    let n_minus_one = n - &one;
    let twos = n_minus_one.trailing_zeros().unwrap_or(0);
    let odd = &n_minus_one >> twos;

    'bases: for &a in &SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&odd, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..twos {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Returns the first error for any element that fails [`is_prime`].
pub fn require_primes(values: &[BigInt]) -> Result<()> {
    match values.iter().find(|p| !is_prime(p)) {
        Some(p) => Err(Error::NotPrime(p.clone())),
        None => Ok(()),
    }
}

/// The first `count` primes, by sieve.
pub fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    let mut limit = 32usize;
    loop {
        let mut composite = vec![false; limit + 1];
        let mut out = Vec::new();
        for i in 2..=limit {
            if composite[i] {
                continue;
            }
            out.push(i as u64);
            if out.len() == count {
                return out;
            }
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
        limit *= 2;
    }
}

/// Converts to `i64` when it fits.
pub fn to_i64(n: &BigInt) -> Option<i64> {
    num_traits::ToPrimitive::to_i64(n)
}

pub fn abs_to_u64(n: &BigInt) -> Option<u64> {
    num_traits::ToPrimitive::to_u64(&n.abs())
}

/// Serde adapter writing any `Display`/`FromStr` value as a decimal string.
pub mod decimal {
    use serde::{de, Deserialize, Deserializer, Serializer};
    use std::fmt::Display;
    use std::str::FromStr;

    pub fn serialize<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let text = String::deserialize(d)?;
        text.trim().parse().map_err(de::Error::custom)
    }
}

/// Same as [`decimal`] for a sequence of values.
pub mod decimal_vec {
    use serde::ser::SerializeSeq;
    use serde::{de, Deserialize, Deserializer, Serializer};
    use std::fmt::Display;
    use std::str::FromStr;

    pub fn serialize<T: Display, S: Serializer>(values: &[T], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&v.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let items = Vec::<String>::deserialize(d)?;
        items
            .iter()
            .map(|t| t.trim().parse().map_err(de::Error::custom))
            .collect()
    }
}
