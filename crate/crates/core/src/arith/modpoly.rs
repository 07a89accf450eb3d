//! Dense univariate polynomials over F_p (p an odd-or-even prime < 2^62).
//!
//! Coefficients are `u64` residues; products go through `u128`. Degrees in
//! this crate stay tiny, so naive O(n^2) multiplication is the right choice.

use super::poly::IntPoly;
use super::Int;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModPolyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus polynomial must be nonconstant")]
    ConstantModulus,
}

/// base^exponent mod (modulus, p), by square-and-multiply; p is validated
/// by a Miller-Rabin primality check.
pub fn poly_powmod(
    base: &IntPoly,
    exponent: &Int,
    modulus: &IntPoly,
    p: u64,
) -> Result<ModPoly, ModPolyError> {
    if !super::is_prime_u64(p) {
        return Err(ModPolyError::NotPrime(p));
    }
    let m = ModPoly::from_int_poly(modulus, p);
    if m.degree().is_none_or(|d| d == 0) {
        return Err(ModPolyError::ConstantModulus);
    }
    Ok(ModPoly::from_int_poly(base, p).powmod(exponent, &m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        ModPoly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    /// The monomial t.
    pub fn t(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    /// Reduction of an integer polynomial mod p.
    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let pi = Int::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| {
                let mut r = c.mod_floor(&pi);
                if r.is_negative() {
                    r += &pi;
                }
                r.to_u64().expect("residue fits u64")
            })
            .collect();
        Self::new(p, coeffs)
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn add(&self, other: &ModPoly) -> ModPoly {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % self.p
            })
            .collect();
        Self::new(self.p, coeffs)
    }

    pub fn sub(&self, other: &ModPoly) -> ModPoly {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::new(self.p, coeffs)
    }

    pub fn mul(&self, other: &ModPoly) -> ModPoly {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + self.mulmod(a, b)) % self.p;
            }
        }
        Self::new(self.p, coeffs)
    }

    fn inv_mod(&self, a: u64) -> u64 {
        // extended Euclid; p prime and a != 0
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (self.p as i128, (a % self.p) as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1, "non-invertible element mod p");
        (t.rem_euclid(self.p as i128)) as u64
    }

    pub fn divrem(&self, divisor: &ModPoly) -> (ModPoly, ModPoly) {
        debug_assert_eq!(self.p, divisor.p);
        let dlc = divisor.leading().expect("division by zero polynomial");
        let dinv = self.inv_mod(dlc);
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(ddeg)];
        while rem.len() > ddeg {
            let k = rem.len() - 1 - ddeg;
            let factor = self.mulmod(*rem.last().unwrap(), dinv);
            if factor != 0 {
                for (i, &c) in divisor.coeffs.iter().enumerate() {
                    let v = self.mulmod(factor, c);
                    rem[k + i] = (rem[k + i] + self.p - v) % self.p;
                }
                quot[k] = factor;
            }
            rem.pop();
        }
        (Self::new(self.p, quot), Self::new(self.p, rem))
    }

    pub fn rem(&self, divisor: &ModPoly) -> ModPoly {
        self.divrem(divisor).1
    }

    pub fn make_monic(&self) -> ModPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.inv_mod(lc);
                Self::new(
                    self.p,
                    self.coeffs.iter().map(|&c| self.mulmod(c, inv)).collect(),
                )
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> ModPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mulmod(c, (i as u64) % self.p))
            .collect();
        Self::new(self.p, coeffs)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (self.mulmod(acc, x) + c) % self.p;
        }
        acc
    }

    /// `self^exp mod modulus`, square-and-multiply over the bits of `exp`.
    pub fn powmod(&self, exp: &Int, modulus: &ModPoly) -> ModPoly {
        debug_assert!(!exp.is_negative());
        let mut acc = ModPoly::constant(self.p, 1).rem(modulus);
        if modulus.degree() == Some(0) {
            acc = ModPoly::zero(self.p);
        }
        let mut base = self.rem(modulus);
        let (_, bytes) = exp.to_bytes_le();
        let nbits = exp.bits();
        for i in 0..nbits {
            if bytes[(i / 8) as usize] >> (i % 8) & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            if i + 1 < nbits {
                base = base.mul(&base).rem(modulus);
            }
        }
        acc
    }

    pub fn powmod_u64(&self, exp: u64, modulus: &ModPoly) -> ModPoly {
        self.powmod(&Int::from(exp), modulus)
    }

    /// Number of distinct roots in F_p, as deg gcd(t^p - t, self).
    pub fn count_distinct_roots(&self) -> usize {
        if self.is_zero() {
            return self.p.min(usize::MAX as u64) as usize;
        }
        let t = Self::t(self.p);
        let frob = t.powmod_u64(self.p, self);
        let g = frob.sub(&t.rem(self)).gcd(self);
        g.degree().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_char2_square() {
        // t^2 + 1 = (t+1)^2 over F_2; its derivative vanishes, so
        // gcd(f, f') = gcd(f, 0) = f (monic). The squarefreeness test only
        // needs the gcd to be nonconstant, which holds either way.
        let f = ModPoly::new(2, vec![1, 0, 1]);
        let g = f.gcd(&f.derivative());
        assert_eq!(g, f);
        assert!(g.degree() > Some(0));
        let h = ModPoly::new(2, vec![1, 1]);
        assert_eq!(h.mul(&h), f);
        // the repeated factor itself divides the gcd
        assert!(g.rem(&h).is_zero());
    }

    #[test]
    fn powmod_example() {
        // t^5 mod (t^2+1) over F_5 is t
        let t = ModPoly::t(5);
        let m = ModPoly::new(5, vec![1, 0, 1]);
        assert_eq!(t.powmod_u64(5, &m), t);
        // anything^0 = 1
        let f = ModPoly::new(5, vec![3, 1, 4]);
        assert_eq!(f.powmod_u64(0, &m), ModPoly::constant(5, 1));
    }

    #[test]
    fn powmod_matches_naive() {
        let m = ModPoly::new(7, vec![3, 0, 2, 1]);
        let f = ModPoly::new(7, vec![1, 5, 2]);
        let mut naive = ModPoly::constant(7, 1);
        for e in 0..=64u64 {
            assert_eq!(f.powmod_u64(e, &m), naive.rem(&m), "exp {e}");
            naive = naive.mul(&f);
        }
    }

    #[test]
    fn divrem_roundtrip() {
        let f = ModPoly::new(11, vec![1, 2, 3, 4, 5]);
        let d = ModPoly::new(11, vec![7, 0, 1]);
        let (q, r) = f.divrem(&d);
        assert_eq!(q.mul(&d).add(&r), f);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn checked_powmod_entry_point() {
        // t^5 mod (t^2 + 1) over F_5 is t
        let base = IntPoly::from_i64(&[0, 1]);
        let modulus = IntPoly::from_i64(&[1, 0, 1]);
        let r = poly_powmod(&base, &Int::from(5), &modulus, 5).unwrap();
        assert_eq!(r, ModPoly::t(5));
        assert_eq!(
            poly_powmod(&base, &Int::from(2), &modulus, 6),
            Err(ModPolyError::NotPrime(6))
        );
        assert_eq!(
            poly_powmod(&base, &Int::from(2), &IntPoly::from_i64(&[3]), 5),
            Err(ModPolyError::ConstantModulus)
        );
        // t^9 mod (t^2 + 1) over F_3, against naive repeated multiplication
        let m3 = ModPoly::new(3, vec![1, 0, 1]);
        let naive = {
            let mut acc = ModPoly::constant(3, 1);
            for _ in 0..9 {
                acc = acc.mul(&ModPoly::t(3)).rem(&m3);
            }
            acc
        };
        assert_eq!(
            poly_powmod(&base, &Int::from(9), &modulus, 3).unwrap(),
            naive
        );
        assert_eq!(naive, ModPoly::t(3)); // t^(3^2) = t by Frobenius on F_9
    }

    #[test]
    fn distinct_roots() {
        // t^2+1 mod 5 has roots 2, 3
        assert_eq!(ModPoly::new(5, vec![1, 0, 1]).count_distinct_roots(), 2);
        // no roots mod 3
        assert_eq!(ModPoly::new(3, vec![1, 0, 1]).count_distinct_roots(), 0);
    }
}
