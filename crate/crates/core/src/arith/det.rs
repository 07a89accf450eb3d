//! Fraction-free (Bareiss) determinants over exact domains.
//!
//! One generic routine serves both integer matrices and matrices of integer
//! polynomials (the symbolic pencil-discriminant path).

use super::poly::IntPoly;
use super::Int;
use num_integer::Integer;
use num_traits::{One, Zero};

/// An integral domain with exact division, as needed by Bareiss elimination.
pub trait ExactDomain: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division known to be exact; implementations assert this.
    fn exact_div(&self, other: &Self) -> Self;
}

impl ExactDomain for Int {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        assert!(Zero::is_zero(&r), "inexact division in Bareiss elimination");
        q
    }
}

impl ExactDomain for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn one() -> Self {
        IntPoly::constant(<Int as One>::one())
    }
    fn is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        IntPoly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        IntPoly::mul(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        IntPoly::sub(self, other)
    }
    fn neg(&self) -> Self {
        IntPoly::neg(self)
    }
    fn exact_div(&self, other: &Self) -> Self {
        IntPoly::exact_div(self, other)
    }
}

/// Determinant of a square matrix by fraction-free Gaussian elimination.
/// Intermediate entries stay in the domain; each step divides exactly by
/// the previous pivot.
pub fn bareiss_det<T: ExactDomain>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign_flip = false;
    let mut prev_pivot = T::one();
    for k in 0..n {
        // pivot search
        let pivot_row = match (k..n).find(|&i| !m[i][k].is_zero()) {
            Some(i) => i,
            None => return T::zero(),
        };
        if pivot_row != k {
            m.swap(k, pivot_row);
            sign_flip = !sign_flip;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let t = pivot.mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev_pivot);
            }
            m[i][k] = T::zero();
        }
        prev_pivot = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn im(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn integer_determinants() {
        assert_eq!(bareiss_det(im(&[&[2]])), int(2));
        assert_eq!(bareiss_det(im(&[&[1, 2], &[3, 4]])), int(-2));
        assert_eq!(bareiss_det(im(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(
            bareiss_det(im(&[&[2, 0, 1], &[1, 3, 2], &[0, 1, 4]])),
            int((2 * (3 * 4 - 2)) + 1)
        );
        assert_eq!(bareiss_det(im(&[&[1, 2], &[2, 4]])), int(0));
    }

    #[test]
    fn polynomial_determinant() {
        // det [[t, 1], [1, t]] = t^2 - 1
        let t = IntPoly::from_i64(&[0, 1]);
        let one = IntPoly::from_i64(&[1]);
        let m = vec![vec![t.clone(), one.clone()], vec![one, t]];
        assert_eq!(bareiss_det(m), IntPoly::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn matches_cofactor_on_random() {
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::new(99);
        for _ in 0..50 {
            let n = 1 + (rng.next_u64() % 5) as usize;
            let m: Vec<Vec<Int>> = (0..n)
                .map(|_| (0..n).map(|_| int(rng.range_i64(-9, 9))).collect())
                .collect();
            assert_eq!(bareiss_det(m.clone()), cofactor_det(&m));
        }
    }

    fn cofactor_det(m: &[Vec<Int>]) -> Int {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = int(0);
        for j in 0..n {
            if Zero::is_zero(&m[0][j]) {
                continue;
            }
            let minor: Vec<Vec<Int>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[i][c].clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
}
