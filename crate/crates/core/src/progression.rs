//! Residue classes `a + bℤ` and finite unions of them.
//!
//! The classes form a basis of clopen sets. A [`ProgressionUnion`] is kept
//! in a canonical form that depends only on the set it denotes, so two
//! unions are equal as sets iff they are equal as values.
//!
//! Canonical form: with `P` the minimal period of the set, walk the
//! divisors `d` of `P` in increasing order and, for each residue `r < d`,
//! take `r + dℤ` whenever it lies inside what is still uncovered. The
//! output is pairwise disjoint and sorted by `(modulus, residue)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, decimal};
use crate::error::{Error, Result};

/// Default half-width `W` of the `[-W, W]` scans used by checkers.
pub const DEFAULT_WINDOW: u64 = 100_000;

/// Environment variable that overrides [`DEFAULT_WINDOW`].
pub const WINDOW_ENV: &str = "FURSTENBERG_WINDOW";

pub fn window_from_env() -> u64 {
    std::env::var(WINDOW_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_WINDOW)
}

/// The arithmetic progression `residue + modulus·ℤ`, with `modulus ≥ 1` and
/// `0 ≤ residue < modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ClassRepr", into = "ClassRepr")]
pub struct ResidueClass {
    // field order gives the derived (modulus, residue) ordering
    modulus: BigInt,
    residue: BigInt,
}

#[derive(Serialize, Deserialize)]
struct ClassRepr {
    #[serde(with = "decimal")]
    residue: BigInt,
    #[serde(with = "decimal")]
    modulus: BigInt,
}

impl From<ResidueClass> for ClassRepr {
    fn from(c: ResidueClass) -> Self {
        ClassRepr {
            residue: c.residue,
            modulus: c.modulus,
        }
    }
}

impl TryFrom<ClassRepr> for ResidueClass {
    type Error = Error;

    fn try_from(r: ClassRepr) -> Result<Self> {
        ResidueClass::new(r.residue, r.modulus)
    }
}

impl ResidueClass {
    /// Any integer residue is accepted and reduced.
    pub fn new(residue: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Result<Self> {
        let modulus = modulus.into();
        if modulus < BigInt::one() {
            return Err(Error::InvalidModulus(modulus));
        }
        let residue = residue.into().mod_floor(&modulus);
        Ok(ResidueClass { modulus, residue })
    }

    /// `0 + 1ℤ`.
    pub fn integers() -> Self {
        ResidueClass {
            modulus: BigInt::one(),
            residue: BigInt::zero(),
        }
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn is_integers(&self) -> bool {
        self.modulus.is_one()
    }

    pub fn contains(&self, n: &BigInt) -> bool {
        n.mod_floor(&self.modulus) == self.residue
    }

    pub fn is_subset_of(&self, other: &ResidueClass) -> bool {
        self.modulus.is_multiple_of(&other.modulus) && other.contains(&self.residue)
    }

    /// Smallest member `≥ n`.
    pub fn first_at_least(&self, n: &BigInt) -> BigInt {
        n + (&self.residue - n).mod_floor(&self.modulus)
    }

    /// Members in `[lo, hi]`, ascending.
    pub fn members_in<'a>(&'a self, lo: &BigInt, hi: &'a BigInt) -> impl Iterator<Item = BigInt> + 'a {
        let first = self.first_at_least(lo);
        std::iter::successors(Some(first), move |x| Some(x + &self.modulus)).take_while(move |x| x <= hi)
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}

impl FromStr for ResidueClass {
    type Err = Error;

    /// Parses `"a mod b"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected \"a mod b\", got {s:?}"));
        let (a, b) = s.split_once("mod").ok_or_else(bad)?;
        let a = arith::parse_int(a).map_err(|_| bad())?;
        let b = arith::parse_int(b).map_err(|_| bad())?;
        ResidueClass::new(a, b)
    }
}

/// `x ∩ y`, or `None` when the classes are disjoint. Non-empty exactly when
/// `gcd(x.modulus, y.modulus)` divides the residue difference.
pub fn intersect_classes(x: &ResidueClass, y: &ResidueClass) -> Option<ResidueClass> {
    let ext = x.modulus.extended_gcd(&y.modulus);
    let g = ext.gcd;
    let diff = &y.residue - &x.residue;
    if !diff.is_multiple_of(&g) {
        return None;
    }
    // x.m·t ≡ diff (mod y.m)  ⇒  t ≡ (diff/g)·s (mod y.m/g), with s·x.m + _·y.m = g
    let reduced = &y.modulus / &g;
    let t = ((&diff / &g) * &ext.x).mod_floor(&reduced);
    let lcm = &x.modulus * &reduced;
    let point = &x.residue + &x.modulus * t;
    Some(ResidueClass {
        residue: point.mod_floor(&lcm),
        modulus: lcm,
    })
}

/// Bounds on canonicalization work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalLimits {
    /// Largest bit length allowed for a lifted common modulus.
    pub max_modulus_bits: u64,
    /// Largest common modulus that is expanded into an explicit residue system.
    pub max_period: u64,
}

impl Default for CanonicalLimits {
    fn default() -> Self {
        CanonicalLimits {
            max_modulus_bits: 4096,
            max_period: 1 << 24,
        }
    }
}

/// A finite union of residue classes in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "UnionRepr")]
pub struct ProgressionUnion {
    classes: Vec<ResidueClass>,
}

#[derive(Deserialize)]
struct UnionRepr {
    classes: Vec<ResidueClass>,
}

impl TryFrom<UnionRepr> for ProgressionUnion {
    type Error = Error;

    fn try_from(r: UnionRepr) -> Result<Self> {
        ProgressionUnion::from_classes(r.classes)
    }
}

impl ProgressionUnion {
    pub fn empty() -> Self {
        ProgressionUnion { classes: Vec::new() }
    }

    pub fn integers() -> Self {
        ProgressionUnion {
            classes: vec![ResidueClass::integers()],
        }
    }

    pub fn from_class(class: ResidueClass) -> Self {
        ProgressionUnion { classes: vec![class] }
    }

    pub fn from_classes(classes: Vec<ResidueClass>) -> Result<Self> {
        Self::from_classes_with(classes, &CanonicalLimits::default())
    }

    pub fn from_classes_with(classes: Vec<ResidueClass>, limits: &CanonicalLimits) -> Result<Self> {
        canonicalize(classes, limits)
    }

    pub fn classes(&self) -> &[ResidueClass] {
        &self.classes
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn is_integers(&self) -> bool {
        self.classes.len() == 1 && self.classes[0].is_integers()
    }

    pub fn contains(&self, n: &BigInt) -> bool {
        self.classes.iter().any(|c| c.contains(n))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.union_with(other, &CanonicalLimits::default())
    }

    pub fn union_with(&self, other: &Self, limits: &CanonicalLimits) -> Result<Self> {
        let all = self.classes.iter().chain(&other.classes).cloned().collect();
        canonicalize(all, limits)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.intersect_with(other, &CanonicalLimits::default())
    }

    /// Pairwise CRT intersections; disjoint inputs give disjoint pieces.
    pub fn intersect_with(&self, other: &Self, limits: &CanonicalLimits) -> Result<Self> {
        let pieces = self
            .classes
            .iter()
            .flat_map(|x| other.classes.iter().filter_map(move |y| intersect_classes(x, y)))
            .collect();
        canonicalize(pieces, limits)
    }

    pub fn complement(&self) -> Result<Self> {
        self.complement_with(&CanonicalLimits::default())
    }

    pub fn complement_with(&self, limits: &CanonicalLimits) -> Result<Self> {
        match self.classes.as_slice() {
            [] => return Ok(Self::integers()),
            [only] if only.is_integers() => return Ok(Self::empty()),
            _ => {}
        }
        let mut system = ResidueSystem::build(&self.classes, limits)?;
        system.invert();
        Ok(system.canonical())
    }
}

impl fmt::Display for ProgressionUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.classes.is_empty() {
            return write!(f, "{{}}");
        }
        write!(f, "{{")?;
        for (i, c) in self.classes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// The other `b − 1` classes with the same modulus; empty for `b = 1`.
pub fn complement_class(x: &ResidueClass) -> Result<ProgressionUnion> {
    complement_class_with(x, &CanonicalLimits::default())
}

pub fn complement_class_with(x: &ResidueClass, limits: &CanonicalLimits) -> Result<ProgressionUnion> {
    match x.modulus.to_u64() {
        Some(b) if b <= limits.max_period => {}
        _ => {
            return Err(Error::ModulusBlowup {
                detail: format!("{} (complement needs one class per residue)", x.modulus),
            })
        }
    }
    let mut classes = Vec::new();
    let mut r = BigInt::zero();
    while r < x.modulus {
        if r != x.residue {
            classes.push(ResidueClass {
                residue: r.clone(),
                modulus: x.modulus.clone(),
            });
        }
        r += 1;
    }
    Ok(ProgressionUnion { classes })
}

/// `{c : dist(center, c) < radius}`, which is `center + lcm(1..m)ℤ` for the
/// least `m` with `1/m < radius`.
pub fn open_ball(center: &BigInt, radius: &BigRational) -> Result<ResidueClass> {
    open_ball_with(center, radius, &CanonicalLimits::default())
}

pub fn open_ball_with(center: &BigInt, radius: &BigRational, limits: &CanonicalLimits) -> Result<ResidueClass> {
    if !radius.is_positive() {
        return Err(Error::InvalidRadius(radius.to_string()));
    }
    // 1/m < r  ⇔  m > den/num
    let m = radius.denom() / radius.numer() + 1u32;
    let m = m.to_u64().ok_or_else(|| Error::ModulusBlowup {
        detail: format!("lcm(1..{m})"),
    })?;
    let mut tower = BigInt::one();
    for k in 2..=m {
        tower = tower.lcm(&BigInt::from(k));
        if tower.bits() > limits.max_modulus_bits {
            return Err(Error::ModulusBlowup {
                detail: format!("lcm(1..{m})"),
            });
        }
    }
    ResidueClass::new(center.clone(), tower)
}

/// Splits `ℤ` into `a + kℤ` and the other residues mod `k`, for the least
/// `k ≥ 2` not dividing `b − a`.
pub fn separate_points(a: &BigInt, b: &BigInt) -> Result<(ResidueClass, ProgressionUnion)> {
    if a == b {
        return Err(Error::EqualPoints(a.clone()));
    }
    let diff = b - a;
    let mut k = BigInt::from(2);
    while diff.is_multiple_of(&k) {
        k += 1;
    }
    let first = ResidueClass::new(a.clone(), k)?;
    let rest = complement_class(&first)?;
    Ok((first, rest))
}

/// `∏ primes + 1`, which lies in none of the `pℤ` and is not `±1`.
pub fn euclid_witness(primes: &[BigInt]) -> Result<BigInt> {
    if primes.is_empty() {
        return Err(Error::EmptyInput);
    }
    arith::require_primes(primes)?;
    let mut distinct = primes.to_vec();
    distinct.sort();
    distinct.dedup();
    Ok(distinct.iter().product::<BigInt>() + 1)
}

fn canonicalize(mut classes: Vec<ResidueClass>, limits: &CanonicalLimits) -> Result<ProgressionUnion> {
    classes.sort();
    classes.dedup();
    if classes.iter().any(ResidueClass::is_integers) {
        return Ok(ProgressionUnion::integers());
    }
    // drop classes swallowed by a coarser one
    let mut kept: Vec<ResidueClass> = Vec::with_capacity(classes.len());
    for c in classes {
        if !kept.iter().any(|k| c.is_subset_of(k)) {
            kept.push(c);
        }
    }
    if kept.len() <= 1 {
        return Ok(ProgressionUnion { classes: kept });
    }
    Ok(ResidueSystem::build(&kept, limits)?.canonical())
}

/// A periodic set held as a membership table over one full period.
struct ResidueSystem {
    period: u64,
    member: Vec<bool>,
}

impl ResidueSystem {
    fn build(classes: &[ResidueClass], limits: &CanonicalLimits) -> Result<Self> {
        let mut common = BigInt::one();
        for c in classes {
            common = common.lcm(&c.modulus);
            if common.bits() > limits.max_modulus_bits {
                return Err(Error::ModulusBlowup {
                    detail: format!("of {} bits (bound {})", common.bits(), limits.max_modulus_bits),
                });
            }
        }
        let period = match common.to_u64() {
            Some(p) if p <= limits.max_period => p,
            _ => {
                return Err(Error::ModulusBlowup {
                    detail: format!("{common} (residue-system bound {})", limits.max_period),
                })
            }
        };
        let mut member = vec![false; period as usize];
        for c in classes {
            // both fit: modulus divides the period
            let m = c.modulus.to_u64().unwrap() as usize;
            let r = c.residue.to_u64().unwrap() as usize;
            for slot in member.iter_mut().skip(r).step_by(m) {
                *slot = true;
            }
        }
        Ok(ResidueSystem { period, member })
    }

    fn invert(&mut self) {
        for slot in &mut self.member {
            *slot = !*slot;
        }
    }

    /// Shrinks to the minimal period.
    fn reduce_period(&mut self) {
        for p in prime_factors(self.period) {
            while self.period.is_multiple_of(p) {
                let q = (self.period / p) as usize;
                let periodic = (q..self.period as usize).all(|x| self.member[x] == self.member[x % q]);
                if !periodic {
                    break;
                }
                self.period /= p;
                self.member.truncate(q);
            }
        }
    }

    fn canonical(mut self) -> ProgressionUnion {
        self.reduce_period();
        let period = self.period as usize;
        let mut remaining = self.member;
        let mut left = remaining.iter().filter(|&&b| b).count();
        let mut classes = Vec::new();
        for d in divisors(self.period) {
            if left == 0 {
                break;
            }
            let d = d as usize;
            if left < period / d {
                continue;
            }
            for r in 0..d {
                if !remaining[r] || !(r..period).step_by(d).all(|x| remaining[x]) {
                    continue;
                }
                for x in (r..period).step_by(d) {
                    remaining[x] = false;
                }
                left -= period / d;
                classes.push(ResidueClass {
                    residue: BigInt::from(r),
                    modulus: BigInt::from(d),
                });
            }
        }
        ProgressionUnion { classes }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::dist;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn class(r: i64, m: i64) -> ResidueClass {
        ResidueClass::new(r, m).unwrap()
    }

    fn union(cs: &[(i64, i64)]) -> ProgressionUnion {
        ProgressionUnion::from_classes(cs.iter().map(|&(r, m)| class(r, m)).collect()).unwrap()
    }

    fn raw(cs: &[(i64, i64)]) -> Vec<ResidueClass> {
        cs.iter().map(|&(r, m)| class(r, m)).collect()
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    #[test]
    fn class_normalization() {
        let c = class(-1, 6);
        assert_eq!(c.residue(), &big(5));
        assert!(matches!(ResidueClass::new(1, 0), Err(Error::InvalidModulus(_))));
        assert_eq!("5 mod 6".parse::<ResidueClass>().unwrap(), c);
        assert_eq!(" -7  mod 3".parse::<ResidueClass>().unwrap(), class(2, 3));
        assert!("5 mod".parse::<ResidueClass>().is_err());
        assert_eq!(c.to_string(), "5 mod 6");
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"residue":"5","modulus":"6"}"#);
    }

    #[test]
    fn contains_examples() {
        assert!(union(&[(0, 2)]).contains(&big(10)));
        assert!(!union(&[(1, 3), (2, 3)]).contains(&big(6)));
        assert!(union(&[(5, 6)]).contains(&big(-1)));
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(intersect_classes(&class(1, 2), &class(2, 3)), Some(class(5, 6)));
        assert_eq!(intersect_classes(&class(1, 2), &class(0, 2)), None);
        assert_eq!(intersect_classes(&class(0, 4), &class(2, 6)), Some(class(8, 12)));
        // window-scan oracle for the same three
        for (x, y) in [((1, 2), (2, 3)), ((1, 2), (0, 2)), ((0, 4), (2, 6))] {
            let (x, y) = (class(x.0, x.1), class(y.0, y.1));
            let got = intersect_classes(&x, &y);
            for n in -200..=200 {
                let n = big(n);
                let want = x.contains(&n) && y.contains(&n);
                assert_eq!(got.as_ref().is_some_and(|c| c.contains(&n)), want);
            }
        }
    }

    #[test]
    fn intersect_empty_iff_no_common_residue() {
        for m1 in 1..=12i64 {
            for m2 in 1..=12i64 {
                for r1 in 0..m1 {
                    for r2 in 0..m2 {
                        let (x, y) = (class(r1, m1), class(r2, m2));
                        let l = num_integer::lcm(m1, m2);
                        let brute: Vec<i64> = (0..l).filter(|&n| n % m1 == r1 && n % m2 == r2).collect();
                        match intersect_classes(&x, &y) {
                            None => assert!(brute.is_empty()),
                            Some(c) => {
                                assert_eq!(brute.len(), 1);
                                assert_eq!(c, class(brute[0], l));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn complement_class_examples() {
        assert_eq!(
            complement_class(&class(0, 3)).unwrap().classes(),
            &raw(&[(1, 3), (2, 3)])[..]
        );
        assert!(complement_class(&class(0, 1)).unwrap().is_empty());
        assert_eq!(complement_class(&class(1, 2)).unwrap().classes(), &raw(&[(0, 2)])[..]);
    }

    #[test]
    fn set_operation_examples() {
        let evens = union(&[(0, 2)]);
        let threes = union(&[(0, 3)]);
        assert_eq!(evens.intersect(&threes).unwrap(), union(&[(0, 6)]));
        assert!(union(&[(0, 2), (1, 2)]).complement().unwrap().is_empty());
        assert_eq!(evens.union(&union(&[(1, 2)])).unwrap(), ProgressionUnion::integers());
    }

    #[test]
    fn canonical_form_merges_and_splits() {
        // {0 mod 2} ∪ {0 mod 3} = residues {0,2,3,4} mod 6
        assert_eq!(union(&[(0, 2), (0, 3)]).classes(), &raw(&[(0, 2), (3, 6)])[..]);
        assert_eq!(union(&[(1, 4), (3, 4)]).classes(), &raw(&[(1, 2)])[..]);
        assert_eq!(
            union(&[(0, 4), (2, 4), (1, 6), (3, 6), (5, 6)]),
            ProgressionUnion::integers()
        );
        // same set from two presentations
        assert_eq!(union(&[(0, 2), (3, 6)]), union(&[(0, 6), (2, 6), (4, 6), (3, 6)]));
        assert_eq!(union(&[(2, 4), (2, 4), (6, 8)]), union(&[(2, 4)]));
    }

    #[test]
    fn canonical_form_is_disjoint_and_sorted() {
        let u = union(&[(0, 2), (0, 3), (0, 5), (1, 7)]);
        let cs = u.classes();
        for w in cs.windows(2) {
            assert!(w[0] < w[1]);
        }
        for (i, x) in cs.iter().enumerate() {
            for y in &cs[i + 1..] {
                assert!(intersect_classes(x, y).is_none(), "{x} overlaps {y}");
            }
        }
    }

    #[test]
    fn complement_matches_intersection_of_class_complements() {
        let sets = [
            vec![(0, 2), (0, 3)],
            vec![(1, 4), (2, 6)],
            vec![(3, 5)],
            vec![(0, 6), (5, 10)],
        ];
        for cs in sets {
            let u = union(&cs);
            let mut folded = ProgressionUnion::integers();
            for c in u.classes() {
                folded = folded.intersect(&complement_class(c).unwrap()).unwrap();
            }
            assert_eq!(u.complement().unwrap(), folded);
        }
    }

    #[test]
    fn clopen_double_complement() {
        for (r, m) in [(0, 1), (3, 7), (5, 12), (0, 30)] {
            let x = ProgressionUnion::from_class(class(r, m));
            assert_eq!(x.complement().unwrap().complement().unwrap(), x);
        }
    }

    #[test]
    fn blowup_is_reported() {
        let limits = CanonicalLimits {
            max_modulus_bits: 4096,
            max_period: 100,
        };
        let err = ProgressionUnion::from_classes_with(raw(&[(0, 11), (0, 13)]), &limits).unwrap_err();
        assert!(err.is_resource_bound());
        let tight = CanonicalLimits {
            max_modulus_bits: 6,
            max_period: 1 << 20,
        };
        assert!(ProgressionUnion::from_classes_with(raw(&[(0, 11), (0, 13)]), &tight).is_err());
        let huge = ResidueClass::new(0, BigInt::one() << 200).unwrap();
        assert!(complement_class(&huge).unwrap_err().is_resource_bound());
    }

    #[test]
    fn ball_examples() {
        assert_eq!(open_ball(&big(0), &ratio(2, 1)).unwrap(), ResidueClass::integers());
        assert_eq!(open_ball(&big(0), &ratio(1, 2)).unwrap(), class(0, 6));
        assert_eq!(open_ball(&big(5), &ratio(1, 3)).unwrap(), class(5, 12));
        assert!(open_ball(&big(0), &ratio(0, 1)).is_err());
        assert!(open_ball(&big(0), &ratio(-1, 2)).is_err());
    }

    #[test]
    fn ball_matches_metric() {
        let radii = [ratio(1, 1), ratio(3, 2), ratio(1, 4), ratio(2, 7), ratio(1, 5)];
        for r in &radii {
            for center in [-7i64, 0, 3] {
                let ball = open_ball(&big(center), r).unwrap();
                for n in -3000..=3000 {
                    let inside = dist(&big(center), &big(n)).to_ratio() < *r;
                    assert_eq!(ball.contains(&big(n)), inside, "center {center} radius {r} n {n}");
                }
            }
        }
    }

    #[test]
    fn separate_points_examples() {
        let (a, rest) = separate_points(&big(0), &big(2)).unwrap();
        assert_eq!((a, rest.classes().to_vec()), (class(0, 3), raw(&[(1, 3), (2, 3)])));
        let (a, rest) = separate_points(&big(0), &big(1)).unwrap();
        assert_eq!((a, rest.classes().to_vec()), (class(0, 2), raw(&[(1, 2)])));
        let (a, rest) = separate_points(&big(3), &big(9)).unwrap();
        assert_eq!(
            (a, rest.classes().to_vec()),
            (class(3, 4), raw(&[(0, 4), (1, 4), (2, 4)]))
        );
        assert!(matches!(separate_points(&big(4), &big(4)), Err(Error::EqualPoints(_))));
    }

    #[test]
    fn euclid_examples() {
        let p = |v: &[i64]| v.iter().map(|&x| big(x)).collect::<Vec<_>>();
        assert_eq!(euclid_witness(&p(&[2, 3, 5])).unwrap(), big(31));
        assert_eq!(euclid_witness(&p(&[2])).unwrap(), big(3));
        assert_eq!(euclid_witness(&p(&[3, 5])).unwrap(), big(16));
        assert!(!16.is_multiple_of(&3) && !16.is_multiple_of(&5));
        assert!(matches!(euclid_witness(&p(&[2, 4])), Err(Error::NotPrime(_))));
        assert!(matches!(euclid_witness(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn union_json() {
        let u = union(&[(1, 3), (2, 3)]);
        let j = serde_json::to_string(&u).unwrap();
        assert_eq!(
            j,
            r#"{"classes":[{"residue":"1","modulus":"3"},{"residue":"2","modulus":"3"}]}"#
        );
        assert_eq!(serde_json::from_str::<ProgressionUnion>(&j).unwrap(), u);
        // non-canonical input is canonicalized on the way in
        let messy = r#"{"classes":[{"residue":"1","modulus":"2"},{"residue":"0","modulus":"2"}]}"#;
        assert!(serde_json::from_str::<ProgressionUnion>(messy).unwrap().is_integers());
    }

    #[test]
    fn members_in_window() {
        let c = class(2, 5);
        let got: Vec<BigInt> = c.members_in(&big(-10), &big(10)).collect();
        assert_eq!(got, [-8, -3, 2, 7].map(big));
    }
}
