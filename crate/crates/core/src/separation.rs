//! Separating two disjoint finite prime sets by arithmetic progressions.
//!
//! Each `pᵢ ∈ A` gets a class `pᵢ + aᵢℤ` and each `qⱼ ∈ B` a class
//! `qⱼ + bⱼℤ`. The unions `U` and `V` are disjoint iff, for every pair,
//! `gcd(aᵢ, bⱼ) ∤ pᵢ − qⱼ` (that is exactly when `aᵢkᵢ − bⱼkⱼ = qⱼ − pᵢ` has
//! no solution). A [`SeparationCertificate`] records the moduli together
//! with this pairwise evidence.
//!
//! [`separate`] builds the moduli as metric balls: with `‖pᵢ − qⱼ‖ = 1/Kᵢⱼ`,
//! take `mᵢ = 1 + maxⱼ Kᵢⱼ`, `nⱼ = 1 + maxᵢ Kᵢⱼ`, `aᵢ = lcm(1..mᵢ)`,
//! `bⱼ = lcm(1..nⱼ)`. Then `gcd(aᵢ, bⱼ) = lcm(1..min(mᵢ, nⱼ))`, which
//! cannot divide `pᵢ − qⱼ` because `min(mᵢ, nⱼ) > Kᵢⱼ`.
//!
//! [`compact_separate`] searches for small moduli instead and falls back to
//! the ball construction.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, decimal, decimal_vec};
use crate::error::{Error, Result};
use crate::norms::norm;
use crate::progression::{intersect_classes, ResidueClass};

/// Per-pair evidence: `gcd(aᵢ, bⱼ)` and `pᵢ − qⱼ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEvidence {
    pub i: usize,
    pub j: usize,
    #[serde(with = "decimal")]
    pub gcd: BigInt,
    #[serde(with = "decimal")]
    pub diff: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationCertificate {
    #[serde(rename = "A", with = "decimal_vec")]
    pub primes_a: Vec<BigInt>,
    #[serde(rename = "B", with = "decimal_vec")]
    pub primes_b: Vec<BigInt>,
    #[serde(rename = "a", with = "decimal_vec")]
    pub moduli_a: Vec<BigInt>,
    #[serde(rename = "b", with = "decimal_vec")]
    pub moduli_b: Vec<BigInt>,
    pub evidence: Vec<PairEvidence>,
}

impl SeparationCertificate {
    /// Assembles a certificate and its evidence from sets and moduli. No
    /// checking happens here; see [`verify`].
    pub fn new(primes_a: Vec<BigInt>, primes_b: Vec<BigInt>, moduli_a: Vec<BigInt>, moduli_b: Vec<BigInt>) -> Self {
        let mut evidence = Vec::with_capacity(primes_a.len() * primes_b.len());
        for (i, (p, a)) in primes_a.iter().zip(&moduli_a).enumerate() {
            for (j, (q, b)) in primes_b.iter().zip(&moduli_b).enumerate() {
                evidence.push(PairEvidence {
                    i,
                    j,
                    gcd: a.gcd(b),
                    diff: p - q,
                });
            }
        }
        SeparationCertificate {
            primes_a,
            primes_b,
            moduli_a,
            moduli_b,
            evidence,
        }
    }

    /// The classes whose union is `U`. Fails only on a non-positive modulus.
    pub fn u_classes(&self) -> Result<Vec<ResidueClass>> {
        classes(&self.primes_a, &self.moduli_a)
    }

    pub fn v_classes(&self) -> Result<Vec<ResidueClass>> {
        classes(&self.primes_b, &self.moduli_b)
    }

    pub fn max_modulus(&self) -> BigInt {
        self.moduli_a
            .iter()
            .chain(&self.moduli_b)
            .max()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }
}

fn classes(points: &[BigInt], moduli: &[BigInt]) -> Result<Vec<ResidueClass>> {
    points
        .iter()
        .zip(moduli)
        .map(|(p, m)| ResidueClass::new(p.clone(), m.clone()))
        .collect()
}

/// Input handling shared by the constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparateOptions {
    /// Reject non-primes. With `false`, any two disjoint finite integer
    /// sets are accepted; the construction and certificate are unchanged.
    pub require_primes: bool,
}

impl Default for SeparateOptions {
    fn default() -> Self {
        SeparateOptions { require_primes: true }
    }
}

fn prepare(a: &[BigInt], b: &[BigInt], opts: &SeparateOptions) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    if opts.require_primes {
        arith::require_primes(a)?;
        arith::require_primes(b)?;
    }
    let dedup = |xs: &[BigInt]| {
        let mut seen = HashSet::new();
        xs.iter()
            .filter(|x| seen.insert((*x).clone()))
            .cloned()
            .collect::<Vec<_>>()
    };
    let (a, b) = (dedup(a), dedup(b));
    let in_a: HashSet<&BigInt> = a.iter().collect();
    if let Some(common) = b.iter().find(|q| in_a.contains(q)) {
        return Err(Error::NotDisjoint(common.clone()));
    }
    Ok((a, b))
}

pub fn separate(a: &[BigInt], b: &[BigInt]) -> Result<SeparationCertificate> {
    separate_with(a, b, &SeparateOptions::default())
}

/// The lcm-tower (metric ball) construction.
pub fn separate_with(a: &[BigInt], b: &[BigInt], opts: &SeparateOptions) -> Result<SeparationCertificate> {
    let (a, b) = prepare(a, b, opts)?;
    let depth: Vec<Vec<u64>> = a
        .iter()
        .map(|p| {
            b.iter()
                .map(|q| {
                    norm(&(p - q))
                        .denominator_u64()
                        .expect("distinct points have a finite norm depth")
                })
                .collect()
        })
        .collect();
    let m: Vec<u64> = depth.iter().map(|row| 1 + row.iter().max().unwrap()).collect();
    let n: Vec<u64> = (0..b.len())
        .map(|j| 1 + depth.iter().map(|row| row[j]).max().unwrap())
        .collect();
    let moduli_a = m.into_iter().map(arith::lcm_upto).collect();
    let moduli_b = n.into_iter().map(arith::lcm_upto).collect();
    Ok(SeparationCertificate::new(a, b, moduli_a, moduli_b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CertificateVerdict {
    Valid,
    /// `gcd(aᵢ, bⱼ) | pᵢ − qⱼ`; `witness` is the least common point `≥ 2`.
    InvalidPair {
        i: usize,
        j: usize,
        #[serde(with = "decimal")]
        witness: BigInt,
    },
    /// An integer of the scanned window lying in both unions.
    WindowCounterexample {
        #[serde(with = "decimal")]
        n: BigInt,
    },
    /// The certificate is not well formed (lengths, moduli, or evidence).
    Malformed {
        reason: String,
    },
}

impl CertificateVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateVerdict::Valid)
    }
}

impl fmt::Display for CertificateVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateVerdict::Valid => write!(f, "Valid"),
            CertificateVerdict::InvalidPair { i, j, witness } => {
                write!(f, "InvalidPair({i}, {j}): both progressions contain {witness}")
            }
            CertificateVerdict::WindowCounterexample { n } => write!(f, "WindowCounterexample({n})"),
            CertificateVerdict::Malformed { reason } => write!(f, "Malformed: {reason}"),
        }
    }
}

/// Checks every pair exactly, then scans `[-window, window]` for a common point.
pub fn verify(cert: &SeparationCertificate, window: u64) -> CertificateVerdict {
    let w = BigInt::from(window);
    verify_range(cert, &-&w, &w)
}

/// [`verify`] with an arbitrary scan range `[lo, hi]` (empty when `lo > hi`).
pub fn verify_range(cert: &SeparationCertificate, lo: &BigInt, hi: &BigInt) -> CertificateVerdict {
    if let Err(reason) = check_shape(cert) {
        return CertificateVerdict::Malformed { reason };
    }
    if let Some(bad) = first_invalid_pair(cert) {
        return bad;
    }
    // shape already checked the moduli
    let (u, v) = (cert.u_classes().unwrap(), cert.v_classes().unwrap());
    match first_common_point(&u, &v, lo, hi) {
        Some(n) => CertificateVerdict::WindowCounterexample { n },
        None => CertificateVerdict::Valid,
    }
}

fn check_shape(cert: &SeparationCertificate) -> std::result::Result<(), String> {
    let (na, nb) = (cert.primes_a.len(), cert.primes_b.len());
    if na == 0 || nb == 0 {
        return Err("both sets must be non-empty".into());
    }
    if cert.moduli_a.len() != na || cert.moduli_b.len() != nb {
        return Err(format!(
            "expected {na} + {nb} moduli, found {} + {}",
            cert.moduli_a.len(),
            cert.moduli_b.len()
        ));
    }
    if let Some(m) = cert.moduli_a.iter().chain(&cert.moduli_b).find(|m| **m < BigInt::one()) {
        return Err(format!("modulus {m} is not positive"));
    }
    if cert.evidence.len() != na * nb {
        return Err(format!(
            "expected {} evidence entries, found {}",
            na * nb,
            cert.evidence.len()
        ));
    }
    let mut seen = vec![false; na * nb];
    for e in &cert.evidence {
        if e.i >= na || e.j >= nb {
            return Err(format!("evidence index ({}, {}) out of range", e.i, e.j));
        }
        let slot = &mut seen[e.i * nb + e.j];
        if *slot {
            return Err(format!("duplicate evidence for ({}, {})", e.i, e.j));
        }
        *slot = true;
        if e.gcd != cert.moduli_a[e.i].gcd(&cert.moduli_b[e.j]) {
            return Err(format!("evidence gcd for ({}, {}) is wrong", e.i, e.j));
        }
        if e.diff != &cert.primes_a[e.i] - &cert.primes_b[e.j] {
            return Err(format!("evidence difference for ({}, {}) is wrong", e.i, e.j));
        }
    }
    Ok(())
}

fn first_invalid_pair(cert: &SeparationCertificate) -> Option<CertificateVerdict> {
    let nb = cert.primes_b.len();
    (0..cert.primes_a.len() * nb).into_par_iter().find_map_first(|idx| {
        let (i, j) = (idx / nb, idx % nb);
        let (p, q) = (&cert.primes_a[i], &cert.primes_b[j]);
        let (a, b) = (&cert.moduli_a[i], &cert.moduli_b[j]);
        if !(p - q).is_multiple_of(&a.gcd(b)) {
            return None;
        }
        // solvable: a·kᵢ − b·kⱼ = q − p; the common points form one class
        let x = ResidueClass::new(p.clone(), a.clone()).ok()?;
        let y = ResidueClass::new(q.clone(), b.clone()).ok()?;
        let common = intersect_classes(&x, &y).expect("gcd divides the difference");
        Some(CertificateVerdict::InvalidPair {
            i,
            j,
            witness: common.first_at_least(&BigInt::from(2)),
        })
    })
}

/// Least integer of `[lo, hi]` in both unions, walking the members of
/// whichever side has fewer of them in the range.
fn first_common_point(u: &[ResidueClass], v: &[ResidueClass], lo: &BigInt, hi: &BigInt) -> Option<BigInt> {
    if lo > hi {
        return None;
    }
    let span = hi - lo + 1;
    let count = |cs: &[ResidueClass]| cs.iter().map(|c| &span / c.modulus() + 1).sum::<BigInt>();
    let (walk, other) = if count(u) <= count(v) { (u, v) } else { (v, u) };
    walk.par_iter()
        .filter_map(|c| c.members_in(lo, hi).find(|n| other.iter().any(|o| o.contains(n))))
        .min()
}

/// Tree-search node allowance per candidate maximum modulus.
const NODES_PER_BOUND: u64 = 20000;
/// Tree-search node allowance over the whole search.
const NODES_TOTAL: u64 = 1_000_000;

pub fn compact_separate(a: &[BigInt], b: &[BigInt], search_bound: u64) -> Result<SeparationCertificate> {
    compact_separate_with(a, b, search_bound, &SeparateOptions::default())
}

/// Searches for moduli `≤ search_bound`, trying each maximum `M = 2, 3, …`
/// in turn and, for a given `M`, tuples `(a₀, …, b₀, …)` in lexicographic
/// order. The search is bounded; when it finds nothing the lcm-tower
/// certificate is returned, even if its moduli exceed the bound.
pub fn compact_separate_with(
    a: &[BigInt],
    b: &[BigInt],
    search_bound: u64,
    opts: &SeparateOptions,
) -> Result<SeparationCertificate> {
    let tower = separate_with(a, b, opts)?;
    let (a, b) = (tower.primes_a.clone(), tower.primes_b.clone());
    let Some(diffs) = a
        .iter()
        .map(|p| b.iter().map(|q| (p - q).to_i128()).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()
    else {
        return Ok(tower);
    };

    let mut cap = search_bound;
    if let Some(t) = tower.max_modulus().to_u64() {
        cap = cap.min(t);
    }
    let uniform = uniform_modulus(&a, &b, cap);
    if let Some(m) = uniform {
        cap = m;
    }

    let mut search = CompactSearch {
        diffs: &diffs,
        nodes_total: 0,
    };
    for max in 2..=cap {
        if search.nodes_total >= NODES_TOTAL {
            break;
        }
        if let Some((ma, mb)) = search.run(max) {
            let to_big = |v: Vec<u64>| v.into_iter().map(BigInt::from).collect();
            return Ok(SeparationCertificate::new(a, b, to_big(ma), to_big(mb)));
        }
    }
    match uniform {
        Some(m) => {
            let all = |n: usize| vec![BigInt::from(m); n];
            Ok(SeparationCertificate::new(
                a.clone(),
                b.clone(),
                all(a.len()),
                all(b.len()),
            ))
        }
        None => Ok(tower),
    }
}

/// Least `M ≤ cap` with `A mod M` and `B mod M` disjoint; then every modulus
/// can be `M`.
fn uniform_modulus(a: &[BigInt], b: &[BigInt], cap: u64) -> Option<u64> {
    (2..=cap).find(|&m| {
        let mb = BigInt::from(m);
        let seen: HashSet<BigInt> = a.iter().map(|p| p.mod_floor(&mb)).collect();
        b.iter().all(|q| !seen.contains(&q.mod_floor(&mb)))
    })
}

type Bits = Vec<u64>;

fn and(x: &[u64], y: &[u64]) -> Bits {
    x.iter().zip(y).map(|(a, b)| a & b).collect()
}

fn any(bits: &[u64]) -> bool {
    bits.iter().any(|&w| w != 0)
}

fn ones(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter()
        .enumerate()
        .flat_map(|(w, &word)| (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b))
}

struct CompactSearch<'a> {
    diffs: &'a [Vec<i128>],
    nodes_total: u64,
}

/// Pairwise compatibility at one maximum modulus: `table[i][j][u]` is the
/// set of `v` with `gcd(u, v) ∤ pᵢ − qⱼ`.
struct Compat {
    max: usize,
    table: Vec<Vec<Vec<Bits>>>,
}

impl Compat {
    fn new(diffs: &[Vec<i128>], max: u64) -> Self {
        let max = max as usize;
        let words = max / 64 + 1;
        let table = diffs
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&d| {
                        (0..=max)
                            .map(|u| {
                                let mut bits = vec![0u64; words];
                                if u >= 2 {
                                    for v in 2..=max {
                                        if d % (u.gcd(&v) as i128) != 0 {
                                            bits[v / 64] |= 1 << (v % 64);
                                        }
                                    }
                                }
                                bits
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Compat { max, table }
    }

    fn full(&self) -> Bits {
        let mut bits = vec![0u64; self.max / 64 + 1];
        for v in 2..=self.max {
            bits[v / 64] |= 1 << (v % 64);
        }
        bits
    }
}

impl CompactSearch<'_> {
    /// Lexicographically least assignment with every modulus in `2..=max`,
    /// or `None` if there is none or the node allowance runs out.
    fn run(&mut self, max: u64) -> Option<(Vec<u64>, Vec<u64>)> {
        let compat = Compat::new(self.diffs, max);
        let (na, nb) = (self.diffs.len(), self.diffs[0].len());
        let b_domains = vec![compat.full(); nb];
        let a_domains = vec![compat.full(); na];
        let mut assigned = Vec::with_capacity(na);
        let mut nodes = 0;
        let found = self.descend(&compat, &a_domains, &b_domains, &mut assigned, &mut nodes);
        self.nodes_total += nodes;
        found.map(|mb| (assigned, mb))
    }

    fn descend(
        &self,
        compat: &Compat,
        a_domains: &[Bits],
        b_domains: &[Bits],
        assigned: &mut Vec<u64>,
        nodes: &mut u64,
    ) -> Option<Vec<u64>> {
        let i = assigned.len();
        if i == self.diffs.len() {
            // B-side moduli are independent once A is fixed: take each minimum
            return b_domains.iter().map(|d| ones(d).next().map(|v| v as u64)).collect();
        }
        for u in ones(&a_domains[i]) {
            *nodes += 1;
            if *nodes > NODES_PER_BOUND || self.nodes_total + *nodes > NODES_TOTAL {
                return None;
            }
            let narrowed_b: Vec<Bits> = b_domains
                .iter()
                .enumerate()
                .map(|(j, d)| and(d, &compat.table[i][j][u]))
                .collect();
            if !narrowed_b.iter().all(|d| any(d)) {
                continue;
            }
            // every later aₖ still needs a partner in each narrowed B domain
            let narrowed_a: Option<Vec<Bits>> = a_domains[i + 1..]
                .iter()
                .enumerate()
                .map(|(offset, dom)| {
                    let k = i + 1 + offset;
                    let mut keep = dom.clone();
                    for u2 in ones(dom) {
                        let supported = narrowed_b
                            .iter()
                            .enumerate()
                            .all(|(j, bd)| bd.iter().zip(&compat.table[k][j][u2]).any(|(x, y)| x & y != 0));
                        if !supported {
                            keep[u2 / 64] &= !(1 << (u2 % 64));
                        }
                    }
                    any(&keep).then_some(keep)
                })
                .collect();
            let Some(narrowed_a) = narrowed_a else { continue };
            let mut a_next = a_domains[..=i].to_vec();
            a_next.extend(narrowed_a);
            assigned.push(u as u64);
            if let Some(mb) = self.descend(compat, &a_next, &narrowed_b, assigned, nodes) {
                return Some(mb);
            }
            assigned.pop();
            if *nodes > NODES_PER_BOUND {
                return None;
            }
        }
        None
    }
}
