//! Exact rational roots of integer polynomials.
//!
//! Degrees 1 and 2 are solved in closed form. Beyond that, candidate roots
//! u/v come from divisor enumeration of the trailing and leading
//! coefficients, capped: full integer factorization is deliberately
//! avoided, so only roots with |numerator| and denominator up to the cap
//! are found. Every reported root is verified by exact substitution.

use super::poly::IntPoly;
use super::{Int, Rational};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// All rational roots of a*t^2 + b*t + c (a != 0), via the discriminant.
pub fn quadratic_roots(a: &Int, b: &Int, c: &Int) -> Vec<Rational> {
    let disc = b * b - Int::from(4) * a * c;
    let Some(s) = exact_sqrt(&disc) else {
        return Vec::new();
    };
    let two_a = Int::from(2) * a;
    let mut roots = vec![Rational::new(-b + &s, two_a.clone())];
    if !s.is_zero() {
        roots.push(Rational::new(-b - s, two_a));
    }
    roots.sort();
    roots
}

struct Screen {
    p: u64,
    /// Roots of f mod p, as a membership table.
    is_root: Vec<bool>,
}

fn build_screens(f: &IntPoly) -> Vec<Screen> {
    use super::modpoly::ModPoly;
    let mut screens = Vec::new();
    for p in [10007u64, 10009, 10037, 10039, 10061] {
        let fbar = ModPoly::from_int_poly(f, p);
        if fbar.degree() != f.degree() {
            continue; // need p coprime to lc so denominators stay invertible
        }
        let mut is_root = vec![false; p as usize];
        for x in 0..p {
            if fbar.eval(x) == 0 {
                is_root[x as usize] = true;
            }
        }
        screens.push(Screen { p, is_root });
        if screens.len() == 2 {
            break;
        }
    }
    screens
}

fn passes_screens(screens: &[Screen], u: &Int, v: &Int, negative: bool) -> bool {
    for s in screens {
        let p = s.p;
        let um = reduce_mod(u, p);
        let vm = reduce_mod(v, p);
        debug_assert_ne!(vm, 0, "v divides lc which is coprime to p");
        // u * v^{-1} mod p, inverse by Fermat
        let mut inv = 1u64;
        let mut base = vm % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                inv = (inv as u128 * base as u128 % p as u128) as u64;
            }
            base = (base as u128 * base as u128 % p as u128) as u64;
            e >>= 1;
        }
        let mut r = (um as u128 * inv as u128 % p as u128) as u64;
        if negative {
            r = (p - r) % p;
        }
        if !s.is_root[r as usize] {
            return false;
        }
    }
    true
}

fn reduce_mod(n: &Int, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    let m = Int::from(p);
    let mut r = n.mod_floor(&m);
    if r.is_negative() {
        r += &m;
    }
    r.to_u64().unwrap()
}

fn bounded_divisors(n: &Int, cap: u64) -> Vec<Int> {
    // positive divisors d <= cap, by trial division
    let mut out = Vec::new();
    let n = n.abs();
    let mut d = Int::one();
    let cap = Int::from(cap);
    while d <= cap {
        if (&n % &d).is_zero() {
            out.push(d.clone());
        }
        d += 1;
    }
    out
}

/// Rational roots of `f`, exact for deg <= 2; for higher degree, the
/// divisor-capped search described in the module docs. Roots are sorted
/// and deduplicated.
pub fn rational_roots_bounded(f: &IntPoly, cap: u64) -> Vec<Rational> {
    let mut f = f.clone();
    let mut roots = Vec::new();
    if f.is_zero() {
        return roots;
    }
    // factor out powers of t
    while f.coeff(0).is_zero() && f.degree() > Some(0) {
        roots.push(Rational::zero());
        f = IntPoly::from_coeffs(f.coeffs()[1..].to_vec());
    }
    match f.degree() {
        None | Some(0) => {}
        Some(1) => roots.push(Rational::new(-f.coeff(0), f.coeff(1))),
        Some(2) => roots.extend(quadratic_roots(&f.coeff(2), &f.coeff(1), &f.coeff(0))),
        Some(_) => {
            let numerators = bounded_divisors(&f.coeff(0), cap);
            let lc = f.leading().unwrap().clone();
            let denominators = bounded_divisors(&lc, cap);
            // candidates are screened mod two primes first; only the rare
            // survivors are verified by exact substitution
            let screens = build_screens(&f);
            for u in &numerators {
                for v in &denominators {
                    if !u.gcd(v).is_one() {
                        continue;
                    }
                    for negative in [false, true] {
                        if !passes_screens(&screens, u, v, negative) {
                            continue;
                        }
                        let num = if negative { -u.clone() } else { u.clone() };
                        let cand = Rational::new(num, v.clone());
                        if f.eval_rat(&cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn sqrt_checks() {
        assert_eq!(exact_sqrt(&int(49)), Some(int(7)));
        assert_eq!(exact_sqrt(&int(48)), None);
        assert_eq!(exact_sqrt(&int(-4)), None);
        assert_eq!(exact_sqrt(&int(0)), Some(int(0)));
    }

    #[test]
    fn quadratics() {
        // 6t^2 - 5t + 1 = (3t-1)(2t-1)
        assert_eq!(
            quadratic_roots(&int(6), &int(-5), &int(1)),
            vec![rat(1, 3), rat(1, 2)]
        );
        // t^2 + 1: none
        assert!(quadratic_roots(&int(1), &int(0), &int(1)).is_empty());
        // double root
        assert_eq!(quadratic_roots(&int(1), &int(-2), &int(1)), vec![rat(1, 1)]);
    }

    #[test]
    fn bounded_search() {
        // (2t - 3)(t + 5)(t^2 + 1) = 2t^4 + 7t^3 - 13t^2 + 7t - 15
        let f = IntPoly::from_i64(&[-15, 7, -13, 7, 2]);
        assert_eq!(rational_roots_bounded(&f, 100), vec![rat(-5, 1), rat(3, 2)]);
        // t^2 * (t - 4)
        let g = IntPoly::from_i64(&[0, 0, -4, 1]);
        assert_eq!(rational_roots_bounded(&g, 100), vec![rat(0, 1), rat(4, 1)]);
    }
}
