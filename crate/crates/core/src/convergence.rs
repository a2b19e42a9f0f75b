//! Convergence of integer sequences in the progression topology.
//!
//! `aₙ → L` iff for every `k ≥ 1`, `k | aₙ − L` for all large `n`. Only
//! finitely many `k` and `n` can be probed, so every verdict is qualified by
//! a depth `K` (moduli `1..=K`) and a budget `N` (indices `0..=N`).
//!
//! For each `k`, let `z` be the first index from which the residue of
//! `aₙ − L` mod `k` is zero through `N`:
//!
//! - `z ≤ ⌊N/2⌋`: stable, with stabilization index `N_k = z`;
//! - `z > N − ⌊N/4⌋`: refuted, a nonzero residue shows up in the last
//!   quarter of the probes;
//! - otherwise inconclusive.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, decimal};
use crate::error::{Error, Result};
use crate::progression::{intersect_classes, ResidueClass};

pub const DEFAULT_DEPTH: u64 = 50;
pub const DEFAULT_BUDGET: u64 = 100;

type Generator = dyn Fn(u64) -> BigInt + Send + Sync;

/// A pure map `ℕ → ℤ` with a shared, lazily grown prefix cache.
#[derive(Clone)]
pub struct IntegerSequence {
    description: String,
    generator: Arc<Generator>,
    cache: Arc<Mutex<Vec<BigInt>>>,
}

impl fmt::Debug for IntegerSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegerSequence")
            .field("description", &self.description)
            .finish()
    }
}

impl IntegerSequence {
    pub fn from_fn<F>(description: impl Into<String>, f: F) -> Self
    where
        F: Fn(u64) -> BigInt + Send + Sync + 'static,
    {
        IntegerSequence {
            description: description.into(),
            generator: Arc::new(f),
            cache: Arc::new(Mutex::new(Vec::new())),
        }
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn value(&self, n: u64) -> BigInt {
        self.prefix(n + 1).pop().unwrap()
    }

    /// `a₀, …, a_{len-1}`.
    pub fn prefix(&self, len: u64) -> Vec<BigInt> {
        let len = len as usize;
        let mut cache = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        while cache.len() < len {
            let next = (self.generator)(cache.len() as u64);
            cache.push(next);
        }
        cache[..len].to_vec()
    }

    pub fn factorial() -> Self {
        Self::from_fn("factorial", arith::factorial)
    }

    /// `a₀ = 1`, `aₙ = n·n! = (n+1)! − n!`.
    pub fn telescoping() -> Self {
        Self::from_fn("telescoping", |n| match n {
            0 => BigInt::one(),
            n => arith::factorial(n) * n,
        })
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_fn(format!("constant:{c}"), move |_| c.clone())
    }

    pub fn identity() -> Self {
        Self::from_fn("identity", BigInt::from)
    }

    /// `(−1)ⁿ`.
    pub fn alternating() -> Self {
        Self::from_fn(
            "alternating",
            |n| if n % 2 == 0 { BigInt::one() } else { -BigInt::one() },
        )
    }

    /// `c₀ + c₁n + c₂n² + …`.
    pub fn polynomial(coefficients: Vec<BigInt>) -> Self {
        let label = coefficients
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",");
        Self::from_fn(format!("poly:{label}"), move |n| {
            let n = BigInt::from(n);
            coefficients.iter().rev().fold(BigInt::zero(), |acc, c| acc * &n + c)
        })
    }

    /// Parses `factorial`, `telescoping`, `identity`, `alternating`,
    /// `constant:c`, or `poly:c0,c1,...`.
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        match name {
            "factorial" => return Ok(Self::factorial()),
            "telescoping" => return Ok(Self::telescoping()),
            "identity" => return Ok(Self::identity()),
            "alternating" => return Ok(Self::alternating()),
            _ => {}
        }
        if let Some(c) = name.strip_prefix("constant:") {
            return Ok(Self::constant(arith::parse_int(c)?));
        }
        if let Some(cs) = name.strip_prefix("poly:") {
            let coefficients = arith::parse_int_list(cs)?;
            if coefficients.is_empty() {
                return Err(Error::Parse("poly: needs at least one coefficient".into()));
            }
            return Ok(Self::polynomial(coefficients));
        }
        Err(Error::Parse(format!(
            "unknown sequence {name:?}; expected factorial, telescoping, identity, alternating, constant:c or poly:c0,c1,..."
        )))
    }

    pub fn zip_with<F>(&self, other: &Self, description: impl Into<String>, f: F) -> Self
    where
        F: Fn(BigInt, BigInt) -> BigInt + Send + Sync + 'static,
    {
        let (a, b) = (self.clone(), other.clone());
        Self::from_fn(description, move |n| f(a.value(n), b.value(n)))
    }

    pub fn map<F>(&self, description: impl Into<String>, f: F) -> Self
    where
        F: Fn(BigInt) -> BigInt + Send + Sync + 'static,
    {
        let a = self.clone();
        Self::from_fn(description, move |n| f(a.value(n)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = format!("({}) + ({})", self.description, other.description);
        self.zip_with(other, d, |x, y| x + y)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = format!("({}) * ({})", self.description, other.description);
        self.zip_with(other, d, |x, y| x * y)
    }

    pub fn neg(&self) -> Self {
        self.map(format!("-({})", self.description), |x| -x)
    }

    pub fn offset(&self, c: BigInt) -> Self {
        self.map(format!("({}) + {c}", self.description), move |x| x + &c)
    }
}

/// `n ↦ Σ_{i ≤ n} terms(i)`, exactly.
pub fn series_partial_sums(terms: &IntegerSequence) -> IntegerSequence {
    let terms = terms.clone();
    let label = format!("partial sums of {}", terms.description);
    IntegerSequence::from_fn(label, move |n| terms.prefix(n + 1).into_iter().sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationIndex {
    pub k: u64,
    pub n: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// For every `k ≤ depth`, `k | aₙ − L` for `N_k ≤ n ≤ budget`.
    Verified {
        depth: u64,
        budget: u64,
        stabilization: Vec<StabilizationIndex>,
    },
    /// Residues mod `k` keep missing the limit late in the probe range.
    RefutedAt { k: u64 },
    /// `k` is the first modulus whose tail is neither stable nor refuted.
    Inconclusive { k: u64 },
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::RefutedAt { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Verified {
                depth,
                budget,
                stabilization,
            } => {
                let worst = stabilization.iter().map(|s| s.n).max().unwrap_or(0);
                write!(f, "Verified (depth {depth}, budget {budget}, max N_k = {worst})")
            }
            Verdict::RefutedAt { k } => write!(f, "RefutedAt({k})"),
            Verdict::Inconclusive { k } => write!(f, "Inconclusive (first unsettled k = {k})"),
        }
    }
}

fn check_bounds(depth: u64, budget: u64) -> Result<()> {
    if depth == 0 || budget == 0 {
        return Err(Error::InvalidArgument(format!(
            "depth and budget must be >= 1 (got {depth}, {budget})"
        )));
    }
    Ok(())
}

/// First index from which `values[i] mod k == target` holds through the end.
fn settle_index(values: &[BigInt], k: &BigInt, target: &BigInt) -> u64 {
    let tail = values.iter().rev().take_while(|v| &v.mod_floor(k) == target).count();
    (values.len() - tail) as u64
}

/// Checks `seq → limit` at the given depth and budget.
pub fn converges_to(seq: &IntegerSequence, limit: &BigInt, depth: u64, budget: u64) -> Result<Verdict> {
    check_bounds(depth, budget)?;
    let diffs: Vec<BigInt> = seq.prefix(budget + 1).into_iter().map(|v| v - limit).collect();
    let stable_by = budget / 2;
    let refute_after = budget - budget / 4;
    let zero = BigInt::zero();

    let mut stabilization = Vec::with_capacity(depth as usize);
    let mut unsettled = None;
    for k in 1..=depth {
        let z = settle_index(&diffs, &BigInt::from(k), &zero);
        if z <= stable_by {
            stabilization.push(StabilizationIndex { k, n: z });
        } else if z > refute_after {
            return Ok(Verdict::RefutedAt { k });
        } else if unsettled.is_none() {
            unsettled = Some(k);
        }
    }
    Ok(match unsettled {
        Some(k) => Verdict::Inconclusive { k },
        None => Verdict::Verified {
            depth,
            budget,
            stabilization,
        },
    })
}

/// Eventual residues `r_k` of a sequence mod `k = 1..=depth`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfiniteProfile {
    pub depth: u64,
    pub budget: u64,
    /// `residues[k-1] = r_k`.
    pub residues: Vec<u64>,
    /// `stabilization_indices[k-1] = N_k`.
    pub stabilization_indices: Vec<u64>,
}

impl ProfiniteProfile {
    pub fn residue(&self, k: u64) -> Option<u64> {
        self.residues.get(k.checked_sub(1)? as usize).copied()
    }

    /// `j | k ⇒ r_k ≡ r_j (mod j)` for all `j, k ≤ depth`.
    pub fn is_compatible(&self) -> bool {
        (1..=self.depth).all(|k| {
            (1..=k)
                .filter(|j| k % j == 0)
                .all(|j| self.residues[k as usize - 1] % j == self.residues[j as usize - 1])
        })
    }

    /// The class of the limit modulo `lcm(1..depth)`, combining all residues by CRT.
    pub fn limit_class(&self) -> ResidueClass {
        let mut acc = ResidueClass::integers();
        for (i, &r) in self.residues.iter().enumerate() {
            let here = ResidueClass::new(r, i as u64 + 1).expect("positive modulus");
            acc = intersect_classes(&acc, &here).expect("compatible residues intersect");
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ProfileOutcome {
    Profile(ProfiniteProfile),
    /// Residues mod `k` do not settle within the budget.
    Divergent {
        k: u64,
    },
}

/// Finds the eventual residue mod every `k ≤ depth`, or the first `k` whose
/// residues do not settle by index `⌊budget/2⌋`.
pub fn limit_profile(seq: &IntegerSequence, depth: u64, budget: u64) -> Result<ProfileOutcome> {
    check_bounds(depth, budget)?;
    let values = seq.prefix(budget + 1);
    let last = values.last().unwrap();
    let stable_by = budget / 2;
    let mut residues = Vec::with_capacity(depth as usize);
    let mut stabilization_indices = Vec::with_capacity(depth as usize);
    for k in 1..=depth {
        let kb = BigInt::from(k);
        let target = last.mod_floor(&kb);
        let z = settle_index(&values, &kb, &target);
        if z > stable_by {
            return Ok(ProfileOutcome::Divergent { k });
        }
        residues.push(target.to_u64().unwrap());
        stabilization_indices.push(z);
    }
    let profile = ProfiniteProfile {
        depth,
        budget,
        residues,
        stabilization_indices,
    };
    if !profile.is_compatible() {
        // cannot happen for residues read off a common index; report the first offender
        let k = (1..=depth)
            .find(|&k| {
                (1..=k)
                    .filter(|j| k % j == 0)
                    .any(|j| profile.residues[k as usize - 1] % j != profile.residues[j as usize - 1])
            })
            .unwrap();
        return Ok(ProfileOutcome::Divergent { k });
    }
    Ok(ProfileOutcome::Profile(profile))
}

/// Two convergent sequences with their claimed limits.
#[derive(Debug, Clone)]
pub struct ContinuityCase {
    pub a: IntegerSequence,
    pub limit_a: BigInt,
    pub b: IntegerSequence,
    pub limit_b: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuityVerdict {
    /// `aₙ + bₙ → a + b`
    pub sum: Verdict,
    /// `−aₙ → −a`
    pub negation: Verdict,
    /// `aₙ·bₙ → a·b`
    pub product: Verdict,
    #[serde(with = "decimal")]
    pub product_limit: BigInt,
}

impl ContinuityVerdict {
    pub fn all_verified(&self) -> bool {
        self.sum.is_verified() && self.negation.is_verified() && self.product.is_verified()
    }

    pub fn any_refuted(&self) -> bool {
        self.sum.is_refuted() || self.negation.is_refuted() || self.product.is_refuted()
    }
}

/// Checks that the ring operations carry limits to limits for each case.
/// Every input pair must itself verify at the same depth and budget.
pub fn check_continuity_products(cases: &[ContinuityCase], depth: u64, budget: u64) -> Result<Vec<ContinuityVerdict>> {
    cases
        .iter()
        .enumerate()
        .map(|(index, case)| {
            for (seq, limit) in [(&case.a, &case.limit_a), (&case.b, &case.limit_b)] {
                if !converges_to(seq, limit, depth, budget)?.is_verified() {
                    return Err(Error::PreconditionFailed { index });
                }
            }
            let product_limit = &case.limit_a * &case.limit_b;
            Ok(ContinuityVerdict {
                sum: converges_to(&case.a.add(&case.b), &(&case.limit_a + &case.limit_b), depth, budget)?,
                negation: converges_to(&case.a.neg(), &-&case.limit_a, depth, budget)?,
                product: converges_to(&case.a.mul(&case.b), &product_limit, depth, budget)?,
                product_limit,
            })
        })
        .collect()
}
