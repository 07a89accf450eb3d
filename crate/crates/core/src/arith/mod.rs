//! Exact arithmetic substrate: arbitrary-precision rationals, univariate
//! polynomials over Q and over prime fields, and exact linear algebra.
//!
//! All values are immutable after construction and freely shareable
//! between threads.

pub mod det;
pub mod matrix;
pub mod modpoly;
pub mod multi;
pub mod poly;
pub mod roots;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator (zero is 0/1). These invariants are maintained by
/// construction.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// gcd of a slice, ignoring signs; 0 for an all-zero (or empty) slice.
pub fn gcd_all(values: &[Int]) -> Int {
    use num_integer::Integer;
    let mut g = Int::zero();
    for v in values {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Scales a rational vector to coprime integer entries with the first
/// nonzero entry positive. Returns `None` for the zero vector.
pub fn primitive_integer_vector(v: &[Rational]) -> Option<Vec<Int>> {
    use num_integer::Integer;
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let mut den = Int::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = gcd_all(&ints);
    let mut out: Vec<Int> = ints.into_iter().map(|x| x / &g).collect();
    let flip = out
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    if flip {
        for x in &mut out {
            *x = -std::mem::take(x);
        }
    }
    Some(out)
}

/// Lossy f64 view of a big integer (for plot data and fits).
pub fn int_to_f64(n: &Int) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(f64::MAX)
}

/// Floor of the cube root.
pub fn cube_root_floor(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).cbrt() as u64;
    while r > 0
        && r.checked_mul(r)
            .and_then(|s| s.checked_mul(r))
            .is_none_or(|c| c > n)
    {
        r -= 1;
    }
    while (r + 1)
        .checked_mul(r + 1)
        .and_then(|s| s.checked_mul(r + 1))
        .is_some_and(|c| c <= n)
    {
        r += 1;
    }
    r
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in `[2, bound]`, by sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}
