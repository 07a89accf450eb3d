//! Counts of rational plane curves of degree d through 3d-1 general points,
//! via the Kontsevich–Manin recursion
//!
//!   N_d = sum over dA+dB=d, dA,dB>0 of
//!         N_dA * N_dB * dA^2 * dB * ( dB*C(3d-4, 3dA-2) - dA*C(3d-4, 3dA-1) )
//!
//! with the seed N_1 = 1 (the recursion's sum is empty for d = 1; there is
//! one line through two points). Values grow super-exponentially, so all
//! arithmetic is arbitrary precision.

use super::arith::Int;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("degree must be at least 1")]
    InvalidDegree,
}

/// Memoized table of curve counts, filled on demand. The table is an
/// owned value (confine it to one thread, or share completed tables
/// read-only); `km_count` is a pure function of the degree.
#[derive(Debug, Clone, Default)]
pub struct CurveCountTable {
    entries: BTreeMap<u32, Int>,
}

impl CurveCountTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Bottom-up fill for all degrees `1..=max_d`.
    pub fn up_to(max_d: u32) -> Result<Self, CountError> {
        if max_d < 1 {
            return Err(CountError::InvalidDegree);
        }
        let mut table = Self::new();
        for d in 1..=max_d {
            table.count(d)?;
        }
        Ok(table)
    }

    pub fn get(&self, d: u32) -> Option<&Int> {
        self.entries.get(&d)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, &Int)> {
        self.entries.iter().map(|(&d, n)| (d, n))
    }

    /// Top-down memoized count.
    pub fn count(&mut self, d: u32) -> Result<Int, CountError> {
        if d < 1 {
            return Err(CountError::InvalidDegree);
        }
        if let Some(n) = self.entries.get(&d) {
            return Ok(n.clone());
        }
        let n = if d == 1 {
            Int::one()
        } else {
            let mut acc = Int::zero();
            for d_a in 1..d {
                let d_b = d - d_a;
                let n_a = self.count(d_a)?;
                let n_b = self.count(d_b)?;
                acc += recursion_summand(d, d_a, d_b, &n_a, &n_b);
            }
            acc
        };
        self.entries.insert(d, n.clone());
        Ok(n)
    }
}

/// One term of the recursion, exposed for the permutation-invariance test.
pub fn recursion_summand(d: u32, d_a: u32, d_b: u32, n_a: &Int, n_b: &Int) -> Int {
    debug_assert_eq!(d_a + d_b, d);
    let m = 3 * d as u64 - 4;
    let da = Int::from(d_a);
    let db = Int::from(d_b);
    let bracket = &db * binomial(m, 3 * d_a as i64 - 2) - &da * binomial(m, 3 * d_a as i64 - 1);
    n_a * n_b * &da * &da * &db * bracket
}

/// The number of rational plane curves of degree `d` through `3d-1` general
/// points.
pub fn km_count(d: u32) -> Result<Int, CountError> {
    CurveCountTable::new().count(d)
}

/// Binomial coefficient with C(n, k) = 0 for k < 0 or k > n.
pub fn binomial(n: u64, k: i64) -> Int {
    if k < 0 || k as u64 > n {
        return Int::zero();
    }
    num_integer::binomial(Int::from(n), Int::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(5, -1), int(0));
        assert_eq!(binomial(8, 4), int(70));
        assert_eq!(binomial(5, 6), int(0));
        assert_eq!(binomial(0, 0), int(1));
    }

    #[test]
    fn known_counts() {
        assert_eq!(km_count(1).unwrap(), int(1));
        assert_eq!(km_count(2).unwrap(), int(1));
        assert_eq!(km_count(3).unwrap(), int(12));
        assert_eq!(km_count(4).unwrap(), int(620));
        assert_eq!(km_count(5).unwrap(), int(87304));
    }

    #[test]
    fn rejects_zero() {
        assert_eq!(km_count(0), Err(CountError::InvalidDegree));
        assert_eq!(
            CurveCountTable::up_to(0).err(),
            Some(CountError::InvalidDegree)
        );
    }

    #[test]
    fn memo_consistency_top_down_vs_bottom_up() {
        let mut top_down = CurveCountTable::new();
        top_down.count(10).unwrap();
        let bottom_up = CurveCountTable::up_to(10).unwrap();
        for d in 1..=10 {
            assert_eq!(top_down.get(d), bottom_up.get(d), "d={d}");
        }
    }

    #[test]
    fn positive_and_increasing() {
        let table = CurveCountTable::up_to(12).unwrap();
        let mut prev = int(0);
        for d in 3..=12 {
            let n = table.get(d).unwrap().clone();
            assert!(n > prev, "N_{d} not increasing");
            prev = n;
        }
    }

    #[test]
    fn summand_order_invariance() {
        // exact integer addition is order-independent; shuffle the summand
        // list for d = 9 and compare totals
        let table = CurveCountTable::up_to(9).unwrap();
        let d = 9u32;
        let summands: Vec<Int> = (1..d)
            .map(|d_a| {
                recursion_summand(
                    d,
                    d_a,
                    d - d_a,
                    table.get(d_a).unwrap(),
                    table.get(d - d_a).unwrap(),
                )
            })
            .collect();
        let forward: Int = summands.iter().cloned().sum();
        let backward: Int = summands.iter().rev().cloned().sum();
        let mut shuffled = summands.clone();
        // deterministic shuffle
        let mut rng = crate::rng::SplitMix64::new(5);
        for i in (1..shuffled.len()).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            shuffled.swap(i, j);
        }
        let shuffled_sum: Int = shuffled.into_iter().sum();
        assert_eq!(forward, table.get(d).unwrap().clone());
        assert_eq!(forward, backward);
        assert_eq!(forward, shuffled_sum);
    }
}
