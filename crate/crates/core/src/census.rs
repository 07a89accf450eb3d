//! Censuses of rational points of bounded anticanonical height on P^2 and
//! on tuples, and the non-transitivity experiment over random 8-point
//! tuples.
//!
//! Points are counted through their canonical primitive representatives
//! (coprime coordinates, first nonzero coordinate positive), one per point
//! of P^2(Q); the height is the cubed sup norm, so height <= B means
//! sup norm <= floor(B^(1/3)).

use crate::arith::poly::IntPoly;
use crate::arith::roots::rational_roots_bounded;
use crate::arith::{cube_root_floor, Int, Rational};
use crate::budget::Budget;
use crate::galois::{distinct_degree_pattern, PatternOutcome};
use crate::pencil::discriminant::pencil_discriminant;
use crate::pencil::{cubics_through_points, Pencil, PencilError, ProjPoint};
use crate::rng::SplitMix64;
use crate::serde_util::{int_str, rat_opt_str, rat_str};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CensusError {
    #[error("only curve degree 3 (8-point tuples) is supported, got {0}")]
    UnsupportedDegree(u32),
    #[error("coordinate bound must be at least 2")]
    CoordBoundTooSmall,
    #[error("per-factor height support {support} exceeds the cap {cap}")]
    SupportTooLarge { support: u64, cap: u64 },
}

/// Counts per sup norm 0..=h of canonical representatives; slot 0 is 0.
fn counts_by_norm(h: u64) -> Vec<u64> {
    let h = h as i64;
    let gcd3 = |a: i64, b: i64, c: i64| -> i64 {
        a.unsigned_abs()
            .gcd(&b.unsigned_abs())
            .gcd(&c.unsigned_abs()) as i64
    };
    // canonical representative: first nonzero coordinate positive
    let mut per_x0 = crate::par::map_range(1, h + 1, |x0| {
        let mut buckets = vec![0u64; h as usize + 1];
        for x1 in -h..=h {
            for x2 in -h..=h {
                if gcd3(x0, x1, x2) == 1 {
                    let norm = x0.max(x1.abs()).max(x2.abs()) as usize;
                    buckets[norm] += 1;
                }
            }
        }
        buckets
    });
    // x0 = 0, x1 > 0
    per_x0.push({
        let mut buckets = vec![0u64; h as usize + 1];
        for x1 in 1..=h {
            for x2 in -h..=h {
                if x1.unsigned_abs().gcd(&x2.unsigned_abs()) == 1 {
                    buckets[x1.max(x2.abs()) as usize] += 1;
                }
            }
        }
        buckets
    });
    let mut total = vec![0u64; h as usize + 1];
    for b in per_x0 {
        for (t, v) in total.iter_mut().zip(b) {
            *t += v;
        }
    }
    // x0 = x1 = 0: the single point (0 : 0 : 1)
    if h >= 1 {
        total[1] += 1;
    }
    total
}

/// Exact number of points of P^2(Q) with anticanonical height <= B.
pub fn count_p2_points(b: u64) -> u64 {
    counts_by_norm(cube_root_floor(b)).iter().sum()
}

/// Exact number of k-tuples of points of P^2(Q) whose product height is
/// <= B, by divisor-sum convolution over the per-factor norm counts.
pub fn count_tuples(b: u64, k: u32, budget: &Budget) -> Result<Int, CensusError> {
    assert!(k >= 1, "at least one factor");
    let m = cube_root_floor(b);
    if m > budget.tuple_support {
        return Err(CensusError::SupportTooLarge {
            support: m,
            cap: budget.tuple_support,
        });
    }
    let counts = counts_by_norm(m);
    let mut prefix = vec![Int::zero(); m as usize + 1];
    for n in 1..=m as usize {
        prefix[n] = &prefix[n - 1] + Int::from(counts[n]);
    }
    // tuples with product of norms <= cap, over the last `level` factors
    fn go(
        level: u32,
        cap: u64,
        counts: &[u64],
        prefix: &[Int],
        memo: &mut BTreeMap<(u32, u64), Int>,
    ) -> Int {
        if cap == 0 {
            return Int::zero();
        }
        if level == 1 {
            return prefix[cap as usize].clone();
        }
        if let Some(v) = memo.get(&(level, cap)) {
            return v.clone();
        }
        let mut acc = Int::zero();
        for n in 1..=cap {
            if counts[n as usize] == 0 {
                continue;
            }
            acc += Int::from(counts[n as usize]) * go(level - 1, cap / n, counts, prefix, memo);
        }
        memo.insert((level, cap), acc.clone());
        acc
    }
    let mut memo = BTreeMap::new();
    Ok(go(k, m, &counts, &prefix, &mut memo))
}

/// A tuple of points with its product anticanonical height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightedTuple {
    points: Vec<ProjPoint>,
    height: Int,
}

impl HeightedTuple {
    pub fn new(points: Vec<ProjPoint>) -> Self {
        let height = points.iter().map(|p| p.height()).product();
        HeightedTuple { points, height }
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn height(&self) -> &Int {
        &self.height
    }

    /// Recomputes the product height from the points.
    pub fn recomputed_height(&self) -> Int {
        self.points.iter().map(|p| p.height()).product()
    }
}

/// Draws `count` tuples of 3e-1 canonical points with coordinates bounded
/// by `h_coord`, from a single SplitMix64 stream; points are resampled
/// until distinct within their tuple, and tuples repeat across the sample
/// when the space is small. Only e = 3 is supported.
pub fn sample_tuples(
    e: u32,
    h_coord: i64,
    count: usize,
    seed: u64,
) -> Result<Vec<HeightedTuple>, CensusError> {
    if e != 3 {
        return Err(CensusError::UnsupportedDegree(e));
    }
    if h_coord < 2 {
        return Err(CensusError::CoordBoundTooSmall);
    }
    let mut rng = SplitMix64::new(seed);
    let mut tuples = Vec::with_capacity(count);
    for _ in 0..count {
        let mut points: Vec<ProjPoint> = Vec::with_capacity(8);
        while points.len() < 8 {
            let c = [
                rng.range_i64(-h_coord, h_coord),
                rng.range_i64(-h_coord, h_coord),
                rng.range_i64(-h_coord, h_coord),
            ];
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            let p = ProjPoint::from_i64(&c).unwrap();
            if !points.contains(&p) {
                points.push(p);
            }
        }
        tuples.push(HeightedTuple::new(points));
    }
    Ok(tuples)
}

/// Per-tuple outcome of the experiment. The first three are evidence of
/// non-transitivity; `IrreducibleCertified` proves the Galois action on
/// the 12 singular members is transitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TupleFlag {
    RationalRoot,
    DegreeDrop,
    NotSquarefree,
    IrreducibleCertified,
    Unresolved,
}

impl TupleFlag {
    pub fn is_nontransitive_evidence(self) -> bool {
        matches!(
            self,
            TupleFlag::RationalRoot | TupleFlag::DegreeDrop | TupleFlag::NotSquarefree
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            TupleFlag::RationalRoot => "RATIONAL_ROOT",
            TupleFlag::DegreeDrop => "DEGREE_DROP",
            TupleFlag::NotSquarefree => "NOT_SQUAREFREE",
            TupleFlag::IrreducibleCertified => "IRREDUCIBLE_CERTIFIED",
            TupleFlag::Unresolved => "UNRESOLVED",
        }
    }
}

/// Classification of one pencil's discriminant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PencilClassification {
    pub flag: TupleFlag,
    pub delta_degree: usize,
    /// The verified root, when flag = RATIONAL_ROOT.
    #[serde(with = "rat_opt_str")]
    pub rational_root: Option<Rational>,
    /// Smallest prime with a full-degree irreducible pattern, when
    /// flag = IRREDUCIBLE_CERTIFIED.
    pub witness_prime: Option<u64>,
}

const ROOT_CERTIFICATE_PRIMES: usize = 30;
const ROOT_DIVISOR_CAP: u64 = 100_000;

/// Classifies the pencil by its discriminant: degree drop, loss of
/// squarefreeness, a verified rational root, a mod-p certificate of
/// irreducibility, or unresolved.
pub fn classify_pencil(pencil: &Pencil, prime_bound: u64) -> PencilClassification {
    let delta = pencil_discriminant(pencil).delta_poly();
    let degree = delta.degree().unwrap_or(0);
    if degree < 12 {
        return PencilClassification {
            flag: TupleFlag::DegreeDrop,
            delta_degree: degree,
            rational_root: None,
            witness_prime: None,
        };
    }
    if !delta.is_squarefree() {
        return PencilClassification {
            flag: TupleFlag::NotSquarefree,
            delta_degree: degree,
            rational_root: None,
            witness_prime: None,
        };
    }
    match find_rational_root(&delta) {
        RootStatus::Found(root) => {
            debug_assert!(delta.eval_rat(&root).is_zero());
            return PencilClassification {
                flag: TupleFlag::RationalRoot,
                delta_degree: degree,
                rational_root: Some(root),
                witness_prime: None,
            };
        }
        RootStatus::None | RootStatus::Unknown => {}
    }
    // irreducibility scan: a single full-degree pattern proves
    // irreducibility over Q (and rules out any missed rational root)
    for p in crate::arith::primes_up_to(prime_bound) {
        if let Ok(PatternOutcome::Pattern(pat)) = distinct_degree_pattern(&delta, p) {
            if pat.len() == 1 {
                return PencilClassification {
                    flag: TupleFlag::IrreducibleCertified,
                    delta_degree: degree,
                    rational_root: None,
                    witness_prime: Some(p),
                };
            }
        }
    }
    PencilClassification {
        flag: TupleFlag::Unresolved,
        delta_degree: degree,
        rational_root: None,
        witness_prime: None,
    }
}

enum RootStatus {
    Found(Rational),
    None,
    Unknown,
}

/// Rational-root status of an integer polynomial: a no-root certificate
/// from some prime not dividing the leading coefficient (no roots mod p
/// implies no rational roots), else a divisor-capped search.
fn find_rational_root(f: &IntPoly) -> RootStatus {
    use crate::arith::modpoly::ModPoly;
    let lc = f.leading().expect("nonzero polynomial");
    let mut usable = 0;
    for p in crate::arith::primes_up_to(1000) {
        if usable >= ROOT_CERTIFICATE_PRIMES {
            break;
        }
        let fbar = ModPoly::from_int_poly(f, p);
        if fbar.degree() != f.degree() {
            continue; // p | lc
        }
        usable += 1;
        if fbar.count_distinct_roots() == 0 {
            debug_assert!(!lc.is_zero());
            return RootStatus::None;
        }
    }
    match rational_roots_bounded(f, ROOT_DIVISOR_CAP)
        .into_iter()
        .next()
    {
        Some(r) => RootStatus::Found(r),
        None => RootStatus::Unknown,
    }
}

/// Aggregate census / experiment figures, shared by both subcommands:
/// B and M(B) for the census side, sample and flag counts for the
/// experiment side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub schema_version: u32,
    /// Height bound for census rows; for experiments, the largest product
    /// height a sampled tuple can attain, (h_coord^3)^8.
    #[serde(with = "int_str")]
    pub b: Int,
    /// Exact tuple count at the bound, when a census was run.
    pub m_b: Option<String>,
    pub samples_tested: u64,
    pub nontransitive_flagged: u64,
    pub degenerate: u64,
    #[serde(with = "rat_str")]
    pub ratio: Rational,
    pub flag_counts: BTreeMap<String, u64>,
}

/// Full experiment output: summary plus one record per tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub coord_bound: i64,
    pub seed: u64,
    pub prime_bound: u64,
    pub summary: CensusReport,
    pub tuples: Vec<TupleRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TupleRecord {
    pub index: usize,
    pub points: Vec<String>,
    #[serde(with = "int_str")]
    pub height: Int,
    /// Set when the tuple failed to give a pencil (kernel dimension != 2).
    pub degenerate: Option<String>,
    pub flag: Option<TupleFlag>,
    pub delta_degree: Option<usize>,
    #[serde(with = "rat_opt_str")]
    pub rational_root: Option<Rational>,
    pub witness_prime: Option<u64>,
}

/// Runs the discriminant classification over each tuple (in parallel; the
/// aggregation is keyed by tuple index and deterministic) and aggregates
/// flag counts. Degenerate tuples are a separate category, not failures.
pub fn transitivity_experiment(tuples: &[HeightedTuple], prime_bound: u64) -> Vec<TupleRecord> {
    let outcomes = crate::par::map_slice(tuples, |t| match cubics_through_points(t.points()) {
        Err(e) => Err(e),
        Ok(pencil) => Ok(classify_pencil(&pencil, prime_bound)),
    });
    tuples
        .iter()
        .zip(outcomes)
        .enumerate()
        .map(|(index, (tuple, outcome))| {
            let points = tuple.points().iter().map(|p| p.to_string()).collect();
            match outcome {
                Err(e) => TupleRecord {
                    index,
                    points,
                    height: tuple.height().clone(),
                    degenerate: Some(degenerate_reason(&e)),
                    flag: None,
                    delta_degree: None,
                    rational_root: None,
                    witness_prime: None,
                },
                Ok(c) => TupleRecord {
                    index,
                    points,
                    height: tuple.height().clone(),
                    degenerate: None,
                    flag: Some(c.flag),
                    delta_degree: Some(c.delta_degree),
                    rational_root: c.rational_root,
                    witness_prime: c.witness_prime,
                },
            }
        })
        .collect()
}

fn degenerate_reason(e: &PencilError) -> String {
    match e {
        PencilError::Degenerate(d) => format!("DEGENERATE kernel dimension {d}"),
        PencilError::DuplicatePoint(i, j) => format!("DUPLICATE_POINT {i} {j}"),
        other => format!("{other}"),
    }
}

/// Summary over per-tuple records.
pub fn summarize(records: &[TupleRecord], b: Int) -> CensusReport {
    let mut flag_counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut degenerate = 0u64;
    let mut nontransitive = 0u64;
    for r in records {
        match (&r.degenerate, r.flag) {
            (Some(_), _) => degenerate += 1,
            (None, Some(flag)) => {
                *flag_counts.entry(flag.name().to_string()).or_insert(0) += 1;
                if flag.is_nontransitive_evidence() {
                    nontransitive += 1;
                }
            }
            (None, None) => unreachable!("record without outcome"),
        }
    }
    let samples = records.len() as u64;
    let ratio = if samples == 0 {
        Rational::zero()
    } else {
        Rational::new(Int::from(nontransitive), Int::from(samples))
    };
    CensusReport {
        schema_version: 1,
        b,
        m_b: None,
        samples_tested: samples,
        nontransitive_flagged: nontransitive,
        degenerate,
        ratio,
        flag_counts,
    }
}

/// Experiment entry point: sample, classify, aggregate.
pub fn run_experiment(
    h_coord: i64,
    samples: usize,
    seed: u64,
    prime_bound: u64,
) -> Result<ExperimentReport, CensusError> {
    let tuples = sample_tuples(3, h_coord, samples, seed)?;
    let records = transitivity_experiment(&tuples, prime_bound);
    let b = {
        let h3 = Int::from(h_coord) * Int::from(h_coord) * Int::from(h_coord);
        let mut acc = Int::one();
        for _ in 0..8 {
            acc *= &h3;
        }
        acc
    };
    let summary = summarize(&records, b);
    Ok(ExperimentReport {
        schema_version: 1,
        coord_bound: h_coord,
        seed,
        prime_bound,
        summary,
        tuples: records,
    })
}

/// Eight distinct points on the nodal cubic y^2 z = x^3 + x^2 z, via its
/// rational parametrization (t^2 - 1 : t(t^2 - 1) : 1).
pub fn nodal_cubic_tuple() -> HeightedTuple {
    let points = (2..=9i64)
        .map(|t| ProjPoint::from_i64(&[t * t - 1, t * (t * t - 1), 1]).unwrap())
        .collect();
    HeightedTuple::new(points)
}
