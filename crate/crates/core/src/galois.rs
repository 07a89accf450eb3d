//! Symmetric-group certification from Frobenius cycle types.
//!
//! For a squarefree integer polynomial f and a prime p not dividing lc(f)
//! with f squarefree mod p, the multiset of irreducible-factor degrees of
//! f mod p is the cycle type of a Frobenius element of Gal(f). Only the
//! degree pattern is needed, so distinct-degree factorization (iterated
//! gcd with t^(p^k) - t) suffices and no factors are ever extracted.
//!
//! The group is certified to be the full symmetric group from three kinds
//! of witnesses:
//!   - a pattern [n]: f is irreducible over Q, so the group is transitive;
//!   - a pattern [n-1, 1]: a point stabilizer contains an (n-1)-cycle, so
//!     the group is doubly transitive;
//!   - a pattern with exactly one even part, equal to 2 (the rest odd):
//!     raising such an element to the odd lcm of the other parts leaves a
//!     single transposition.
//!
//! A doubly transitive group containing a transposition is S_n.

use crate::arith::modpoly::ModPoly;
use crate::arith::poly::IntPoly;
use crate::arith::{is_prime_u64, primes_up_to, Rational};
use crate::serde_util::rat_str;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaloisError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is not squarefree over Q")]
    NotSquarefree,
    #[error("polynomial must be nonconstant")]
    Constant,
}

/// A cycle type: factor degrees sorted in decreasing order.
pub type Partition = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternOutcome {
    /// Factor-degree multiset of f mod p.
    Pattern(Partition),
    /// p divides the leading coefficient, or f mod p is not squarefree.
    Skip,
}

/// Factor-degree pattern of f mod p by distinct-degree factorization.
pub fn distinct_degree_pattern(f: &IntPoly, p: u64) -> Result<PatternOutcome, GaloisError> {
    if !is_prime_u64(p) {
        return Err(GaloisError::NotPrime(p));
    }
    let deg = match f.degree() {
        None | Some(0) => return Err(GaloisError::Constant),
        Some(d) => d,
    };
    let fbar = ModPoly::from_int_poly(f, p);
    if fbar.degree() != Some(deg) {
        return Ok(PatternOutcome::Skip); // p | lc
    }
    if fbar.gcd(&fbar.derivative()).degree() != Some(0) {
        return Ok(PatternOutcome::Skip); // not squarefree mod p
    }
    let mut g = fbar.make_monic();
    let mut pattern: Partition = Vec::new();
    let t = ModPoly::t(p);
    let mut w = t.rem(&g);
    let mut k = 0u32;
    while let Some(d) = g.degree() {
        if d == 0 {
            break;
        }
        k += 1;
        if 2 * k as usize > d {
            pattern.push(d as u32);
            break;
        }
        w = w.powmod_u64(p, &g);
        let factor = w.sub(&t.rem(&g)).gcd(&g);
        if let Some(fd) = factor.degree() {
            if fd > 0 {
                for _ in 0..(fd as u32 / k) {
                    pattern.push(k);
                }
                g = g.divrem(&factor).0;
                w = w.rem(&g);
            }
        }
    }
    pattern.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert_eq!(pattern.iter().sum::<u32>() as usize, deg);
    Ok(PatternOutcome::Pattern(pattern))
}

/// One witness prime together with the cycle type observed there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub prime: u64,
    pub pattern: Partition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Conclusion {
    Symmetric,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaloisCertificate {
    pub schema_version: u32,
    pub degree: usize,
    pub conclusion: Conclusion,
    pub witness_full_cycle: Option<Witness>,
    pub witness_n_minus_1_cycle: Option<Witness>,
    pub witness_transposition: Option<Witness>,
    pub prime_bound: u64,
    pub primes_scanned: u64,
    /// Attached when the scan was inconclusive.
    pub census: Option<CycleTypeCensus>,
}

/// True when some power of a permutation with this cycle type is a single
/// transposition: exactly one even part, equal to 2.
pub fn certifies_transposition(pattern: &[u32]) -> bool {
    pattern.iter().filter(|&&k| k % 2 == 0).count() == 1 && pattern.contains(&2)
}

fn n_minus_1_pattern(n: usize) -> Partition {
    vec![n as u32 - 1, 1]
}

fn scan_primes(f: &IntPoly, prime_bound: u64) -> Vec<(u64, PatternOutcome)> {
    let primes = primes_up_to(prime_bound);
    let outcomes = crate::par::map_slice(&primes, |&p| {
        distinct_degree_pattern(f, p).expect("p prime and f nonconstant")
    });
    primes.into_iter().zip(outcomes).collect()
}

fn require_squarefree(f: &IntPoly) -> Result<usize, GaloisError> {
    let deg = match f.degree() {
        None | Some(0) => return Err(GaloisError::Constant),
        Some(d) => d,
    };
    if !f.is_squarefree() {
        return Err(GaloisError::NotSquarefree);
    }
    Ok(deg)
}

/// Scans primes up to `prime_bound` and certifies Gal(f) = S_n when the
/// required witnesses appear (n <= 2: irreducibility alone; n = 3: [3] and
/// [2,1]; n >= 4: all three witness kinds). Witness primes are the smallest
/// for each kind, independent of scan parallelism.
pub fn certify_symmetric(f: &IntPoly, prime_bound: u64) -> Result<GaloisCertificate, GaloisError> {
    let n = require_squarefree(f)?;
    if n < 2 {
        return Err(GaloisError::Constant);
    }
    let scan = scan_primes(f, prime_bound);
    let primes_scanned = scan.len() as u64;
    let mut full = None;
    let mut almost = None;
    let mut transp = None;
    for (p, outcome) in &scan {
        let PatternOutcome::Pattern(pat) = outcome else {
            continue;
        };
        if full.is_none() && pat.len() == 1 {
            full = Some(Witness {
                prime: *p,
                pattern: pat.clone(),
            });
        }
        if almost.is_none() && *pat == n_minus_1_pattern(n) {
            almost = Some(Witness {
                prime: *p,
                pattern: pat.clone(),
            });
        }
        if transp.is_none() && certifies_transposition(pat) {
            transp = Some(Witness {
                prime: *p,
                pattern: pat.clone(),
            });
        }
        if full.is_some() && almost.is_some() && transp.is_some() {
            break;
        }
    }
    let symmetric = match n {
        2 => full.is_some(),
        3 => full.is_some() && transp.is_some(),
        _ => full.is_some() && almost.is_some() && transp.is_some(),
    };
    let conclusion = if symmetric {
        Conclusion::Symmetric
    } else {
        Conclusion::Inconclusive
    };
    let census = if symmetric {
        None
    } else {
        Some(census_from_scan(n, prime_bound, &scan))
    };
    Ok(GaloisCertificate {
        schema_version: 1,
        degree: n,
        conclusion,
        witness_full_cycle: full,
        witness_n_minus_1_cycle: almost,
        witness_transposition: transp,
        prime_bound,
        primes_scanned,
        census,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub partition: Partition,
    pub count: u64,
    /// count / primes_used, descriptive.
    pub frequency: f64,
    /// Exact density of this class in S_n: 1 / prod(k^m_k * m_k!).
    #[serde(with = "rat_str")]
    pub sn_class_density: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleTypeCensus {
    pub schema_version: u32,
    pub degree: usize,
    pub prime_bound: u64,
    /// Primes whose pattern was recorded.
    pub primes_used: u64,
    /// Primes skipped (p | lc or non-squarefree reduction).
    pub skipped: u64,
    pub entries: Vec<CensusEntry>,
}

fn census_from_scan(
    degree: usize,
    prime_bound: u64,
    scan: &[(u64, PatternOutcome)],
) -> CycleTypeCensus {
    use std::collections::BTreeMap;
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    let mut skipped = 0u64;
    let mut used = 0u64;
    for (_, outcome) in scan {
        match outcome {
            PatternOutcome::Skip => skipped += 1,
            PatternOutcome::Pattern(p) => {
                used += 1;
                *counts.entry(p.clone()).or_insert(0) += 1;
            }
        }
    }
    let entries = counts
        .into_iter()
        .map(|(partition, count)| CensusEntry {
            frequency: count as f64 / used.max(1) as f64,
            sn_class_density: sn_class_density(degree, &partition),
            partition,
            count,
        })
        .collect();
    CycleTypeCensus {
        schema_version: 1,
        degree,
        prime_bound,
        primes_used: used,
        skipped,
        entries,
    }
}

/// Cycle-type statistics of f mod p over all primes up to the bound, with
/// the exact S_n class density of each observed partition for side-by-side
/// comparison.
pub fn chebotarev_census(f: &IntPoly, prime_bound: u64) -> Result<CycleTypeCensus, GaloisError> {
    let n = require_squarefree(f)?;
    let scan = scan_primes(f, prime_bound);
    Ok(census_from_scan(n, prime_bound, &scan))
}

/// Density of the conjugacy class with cycle type `partition` in S_n:
/// 1 / prod over distinct part sizes k of (k^m_k * m_k!), where m_k is the
/// multiplicity of k.
pub fn sn_class_density(n: usize, partition: &[u32]) -> Rational {
    use crate::arith::Int;
    debug_assert_eq!(partition.iter().sum::<u32>() as usize, n);
    let mut denom = Int::one();
    let mut mult: std::collections::BTreeMap<u32, u32> = std::collections::BTreeMap::new();
    for &k in partition {
        *mult.entry(k).or_insert(0) += 1;
    }
    for (k, m) in mult {
        for _ in 0..m {
            denom *= Int::from(k);
        }
        for i in 1..=m {
            denom *= Int::from(i);
        }
    }
    Rational::new(Int::one(), denom)
}
