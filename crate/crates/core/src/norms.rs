//! The divisibility norm on ℤ and the metrics built from it.
//!
//! `‖n‖` is `1/K` for the largest `K` such that every one of `1..=K` divides
//! `n` (equivalently `lcm(1..K) | n`), and `‖0‖ = 0`. Values are kept as the
//! integer `K`, so comparisons and ball boundaries are exact.
//!
//! The alternative norm `‖n‖₁ = Σ_{k∤n} 2^{-k}` is computed exactly as a
//! dyadic rational. It is squeezed between `2^{-(K+1)}` and `2^{-K}`, which
//! is why both norms have the same open balls up to refinement.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{abs_to_u64, decimal};
use crate::error::{Error, Result};

/// Default bound on `|n|` for [`ferry_norm`]; the exact value then has a
/// denominator of at most `2^4096`.
pub const FERRY_DEFAULT_CAP: u64 = 4096;

/// Exact value of `‖n‖`: zero, or `1/K` with `K ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "NormRepr", try_from = "NormRepr")]
pub enum NormValue {
    Zero,
    Reciprocal(BigUint),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum NormRepr {
    Zero,
    Reciprocal {
        #[serde(with = "decimal")]
        k: BigUint,
    },
}

impl From<NormValue> for NormRepr {
    fn from(v: NormValue) -> Self {
        match v {
            NormValue::Zero => NormRepr::Zero,
            NormValue::Reciprocal(k) => NormRepr::Reciprocal { k },
        }
    }
}

impl TryFrom<NormRepr> for NormValue {
    type Error = String;

    fn try_from(r: NormRepr) -> std::result::Result<Self, String> {
        match r {
            NormRepr::Zero => Ok(NormValue::Zero),
            NormRepr::Reciprocal { k } if k.is_zero() => Err("reciprocal norm needs k >= 1".into()),
            NormRepr::Reciprocal { k } => Ok(NormValue::Reciprocal(k)),
        }
    }
}

impl NormValue {
    pub fn reciprocal(k: u64) -> Self {
        assert!(k >= 1, "norm denominator must be positive");
        NormValue::Reciprocal(BigUint::from(k))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, NormValue::Zero)
    }

    /// The `K` of `1/K`, or `None` for zero.
    pub fn denominator(&self) -> Option<&BigUint> {
        match self {
            NormValue::Zero => None,
            NormValue::Reciprocal(k) => Some(k),
        }
    }

    pub fn denominator_u64(&self) -> Option<u64> {
        self.denominator().and_then(ToPrimitive::to_u64)
    }

    pub fn to_ratio(&self) -> BigRational {
        match self {
            NormValue::Zero => BigRational::zero(),
            NormValue::Reciprocal(k) => BigRational::new(BigInt::one(), BigInt::from(k.clone())),
        }
    }
}

impl Ord for NormValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NormValue::Zero, NormValue::Zero) => Ordering::Equal,
            (NormValue::Zero, _) => Ordering::Less,
            (_, NormValue::Zero) => Ordering::Greater,
            // larger denominator, smaller value
            (NormValue::Reciprocal(a), NormValue::Reciprocal(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for NormValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormValue::Zero => write!(f, "0"),
            NormValue::Reciprocal(k) if k.is_one() => write!(f, "1"),
            NormValue::Reciprocal(k) => write!(f, "1/{k}"),
        }
    }
}

/// `‖n‖`, by growing `L = lcm(1..k)` until `lcm(L, k+1)` no longer divides `n`.
pub fn norm(n: &BigInt) -> NormValue {
    if n.is_zero() {
        return NormValue::Zero;
    }
    let mut tower = BigInt::one();
    let mut k: u64 = 1;
    loop {
        let next = tower.lcm(&BigInt::from(k + 1));
        if !n.is_multiple_of(&next) {
            return NormValue::Reciprocal(BigUint::from(k));
        }
        tower = next;
        k += 1;
    }
}

pub fn dist(m: &BigInt, n: &BigInt) -> NormValue {
    norm(&(m - n))
}

/// A non-negative dyadic rational `num / 2^exp`, kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DyadicRepr", into = "DyadicRepr")]
pub struct DyadicValue {
    numerator: BigUint,
    exponent: u64,
}

#[derive(Serialize, Deserialize)]
struct DyadicRepr {
    #[serde(with = "decimal")]
    num: BigUint,
    exp: u64,
}

impl From<DyadicValue> for DyadicRepr {
    fn from(v: DyadicValue) -> Self {
        DyadicRepr {
            num: v.numerator,
            exp: v.exponent,
        }
    }
}

impl TryFrom<DyadicRepr> for DyadicValue {
    type Error = String;

    fn try_from(r: DyadicRepr) -> std::result::Result<Self, String> {
        let reduced = if r.num.is_zero() {
            r.exp == 0
        } else {
            r.exp == 0 || r.num.is_odd()
        };
        if !reduced {
            return Err("dyadic value is not in lowest terms".into());
        }
        if r.num > BigUint::one() << r.exp {
            return Err("dyadic norm value exceeds 1".into());
        }
        Ok(DyadicValue {
            numerator: r.num,
            exponent: r.exp,
        })
    }
}

impl DyadicValue {
    pub fn new(numerator: BigUint, exponent: u64) -> Self {
        if numerator.is_zero() {
            return Self::zero();
        }
        let shift = numerator.trailing_zeros().unwrap_or(0).min(exponent);
        DyadicValue {
            numerator: numerator >> shift,
            exponent: exponent - shift,
        }
    }

    pub fn zero() -> Self {
        DyadicValue {
            numerator: BigUint::zero(),
            exponent: 0,
        }
    }

    /// `2^{-k}`.
    pub fn pow2_neg(k: u64) -> Self {
        DyadicValue {
            numerator: BigUint::one(),
            exponent: k,
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(BigInt::from(self.numerator.clone()), BigInt::one() << self.exponent)
    }
}

impl Ord for DyadicValue {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        let lhs = &self.numerator << (e - self.exponent);
        let rhs = &other.numerator << (e - other.exponent);
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for DyadicValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &DyadicValue {
    type Output = DyadicValue;

    fn add(self, other: &DyadicValue) -> DyadicValue {
        let e = self.exponent.max(other.exponent);
        let sum = (&self.numerator << (e - self.exponent)) + (&other.numerator << (e - other.exponent));
        DyadicValue::new(sum, e)
    }
}

impl fmt::Display for DyadicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/2^{}", self.numerator, self.exponent)
        }
    }
}

/// `‖n‖₁` with the default cap.
pub fn ferry_norm(n: &BigInt) -> Result<DyadicValue> {
    ferry_norm_capped(n, FERRY_DEFAULT_CAP)
}

/// `‖n‖₁ = 1 - Σ_{d | n} 2^{-d}` for `n ≠ 0`, computed over the common
/// denominator `2^|n|`.
pub fn ferry_norm_capped(n: &BigInt, cap: u64) -> Result<DyadicValue> {
    let size = match abs_to_u64(n) {
        Some(size) if size <= cap => size,
        _ => return Err(Error::CapExceeded { value: n.clone(), cap }),
    };
    if size == 0 {
        return Ok(DyadicValue::zero());
    }
    let mut numerator = BigUint::one() << size;
    for d in divisors(size) {
        numerator -= BigUint::one() << (size - d);
    }
    Ok(DyadicValue::new(numerator, size))
}

pub fn ferry_dist(m: &BigInt, n: &BigInt) -> Result<DyadicValue> {
    ferry_norm(&(m - n))
}

pub fn ferry_dist_capped(m: &BigInt, n: &BigInt, cap: u64) -> Result<DyadicValue> {
    ferry_norm_capped(&(m - n), cap)
}

/// Bounds `2^{-(K+1)} ≤ ‖n‖₁ ≤ 2^{-K}` implied by `‖n‖ = 1/K`. `None` for
/// the zero norm.
pub fn ferry_sandwich(norm: &NormValue) -> Option<(DyadicValue, DyadicValue)> {
    let k = norm.denominator_u64()?;
    Some((DyadicValue::pow2_neg(k + 1), DyadicValue::pow2_neg(k)))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
