//! Dense univariate polynomials over Q and over Z.
//!
//! Coefficient index = degree of the monomial; trailing zeros are trimmed so
//! the zero polynomial is the empty list. The maximum degree in this crate
//! is small (12 for pencil discriminants), so the dense form is the right
//! representation.

use super::{gcd_all, Int, Rational};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("empty polynomial text")]
    Empty,
    #[error("malformed term `{0}`")]
    BadTerm(String),
    #[error("malformed rational `{0}`")]
    BadNumber(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> RatPoly {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dlc = divisor.leading().expect("division by zero polynomial");
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(ddeg)];
        while rem.len() > ddeg {
            let k = rem.len() - 1 - ddeg;
            let factor = rem.last().unwrap() / dlc;
            if !factor.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let v = &factor * c;
                    rem[k + i] -= v;
                }
                quot[k] = factor;
            }
            rem.pop();
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn derivative(&self) -> RatPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(Int::from(i)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Monic gcd over Q, via the subresultant PRS on primitive integer
    /// parts (keeps intermediate coefficients polynomially bounded).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return RatPoly::constant(Rational::one());
        }
        let (f, _) = self.to_primitive_int().unwrap();
        let (g, _) = other.to_primitive_int().unwrap();
        let d = IntPoly::subresultant_gcd(&f, &g);
        d.to_rat().monic()
    }

    /// Writes the polynomial as `(scale) * (primitive integer polynomial)`
    /// with content 1 and positive leading coefficient. `None` when zero.
    pub fn to_primitive_int(&self) -> Option<(IntPoly, Rational)> {
        if self.is_zero() {
            return None;
        }
        let mut den = Int::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = gcd_all(&ints);
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let poly = IntPoly::from_coeffs(ints.iter().map(|x| x / &g).collect());
        Some((poly, Rational::new(g, den)))
    }

    /// Lagrange interpolation through points with distinct abscissae.
    pub fn interpolate(points: &[(Rational, Rational)]) -> RatPoly {
        let mut acc = RatPoly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = RatPoly::constant(Rational::one());
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = basis.mul(&RatPoly::from_coeffs(vec![-xj.clone(), Rational::one()]));
                denom *= xi - xj;
            }
            acc = acc.add(&basis.scale(&(yi / denom)));
        }
        acc
    }

    /// Parses the term-list text format, e.g. `-5/74*t^3 + 1*t^0`.
    /// Whitespace-insensitive; `c`, `t`, `c*t`, `t^i` and `c*t^i` terms are
    /// accepted.
    pub fn parse(text: &str) -> Result<RatPoly, PolyParseError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyParseError::Empty);
        }
        let mut acc = RatPoly::zero();
        for (sign, term) in split_signed_terms(&compact) {
            if term.is_empty() {
                return Err(PolyParseError::BadTerm(term));
            }
            let (coeff_text, exp) = match term.find('t') {
                None => (term.as_str(), 0usize),
                Some(pos) => {
                    let var = &term[pos..];
                    let exp = if var == "t" {
                        1
                    } else {
                        var.strip_prefix("t^")
                            .and_then(|e| e.parse::<usize>().ok())
                            .ok_or_else(|| PolyParseError::BadTerm(term.clone()))?
                    };
                    let head = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
                    (head, exp)
                }
            };
            let coeff = if coeff_text.is_empty() {
                Rational::one()
            } else {
                parse_rational(coeff_text)?
            };
            let coeff = if sign { -coeff } else { coeff };
            acc = acc.add(&RatPoly::monomial(coeff, exp));
        }
        Ok(acc)
    }
}

impl fmt::Display for RatPoly {
    /// Canonical printer for the text format: highest degree first, every
    /// term as `c*t^i`. Round-trips through `RatPoly::parse`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if a.denom().is_one() {
                write!(f, "{}*t^{}", a.numer(), i)?;
            } else {
                write!(f, "{}/{}*t^{}", a.numer(), a.denom(), i)?;
            }
        }
        Ok(())
    }
}

/// Splits compacted text into `(is_negative, term)` pairs.
fn split_signed_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut term = String::new();
    let mut sign = false;
    let mut chars = s.chars().peekable();
    // leading sign
    while let Some(&c) = chars.peek() {
        if c == '+' || c == '-' {
            if c == '-' {
                sign = !sign;
            }
            chars.next();
        } else {
            break;
        }
    }
    for c in chars {
        if c == '+' || c == '-' {
            if term.is_empty() {
                // consecutive signs fold into the pending term
                if c == '-' {
                    sign = !sign;
                }
            } else {
                out.push((sign, std::mem::take(&mut term)));
                sign = c == '-';
            }
        } else {
            term.push(c);
        }
    }
    out.push((sign, term));
    out
}

fn parse_rational(s: &str) -> Result<Rational, PolyParseError> {
    let bad = || PolyParseError::BadNumber(s.to_string());
    match s.split_once('/') {
        None => s
            .parse::<Int>()
            .map(Rational::from_integer)
            .map_err(|_| bad()),
        Some((n, d)) => {
            let num = n.parse::<Int>().map_err(|_| bad())?;
            let den = d.parse::<Int>().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Integer-coefficient polynomial; the workhorse for fraction-free
/// computations (subresultant PRS, symbolic Bareiss determinants).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn constant(c: Int) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Int) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides every coefficient by `c`, asserting exactness.
    pub fn exact_div_scalar(&self, c: &Int) -> IntPoly {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    let (q, r) = x.div_rem(c);
                    assert!(r.is_zero(), "inexact scalar division in IntPoly");
                    q
                })
                .collect(),
        }
    }

    /// Polynomial division asserting an exact quotient in Z[t].
    pub fn exact_div(&self, divisor: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let dlc = divisor.leading().expect("division by zero polynomial");
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Int::zero(); self.coeffs.len() - ddeg];
        while rem.len() > ddeg {
            let k = rem.len() - 1 - ddeg;
            let (q, r) = rem.last().unwrap().div_rem(dlc);
            assert!(r.is_zero(), "inexact polynomial division in IntPoly");
            if !q.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let v = &q * c;
                    rem[k + i] -= v;
                }
                quot[k] = q;
            }
            rem.pop();
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "inexact polynomial division in IntPoly"
        );
        Self::from_coeffs(quot)
    }

    /// Pseudo-remainder: `lc(d)^(deg f - deg d + 1) * f  mod  d`.
    fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let dlc = divisor.leading().expect("pseudo_rem by zero");
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut steps = self.coeffs.len().saturating_sub(ddeg);
        while rem.len() > ddeg {
            let k = rem.len() - 1 - ddeg;
            let lead = rem.pop().unwrap();
            for c in rem.iter_mut() {
                *c *= dlc;
            }
            for (i, c) in divisor.coeffs.iter().take(ddeg).enumerate() {
                let v = &lead * c;
                rem[k + i] -= v;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            steps -= 1;
        }
        // remaining multiplications to reach the uniform lc power
        let mut out = Self::from_coeffs(rem);
        for _ in 0..steps {
            out = out.scale(dlc);
        }
        out
    }

    pub fn content(&self) -> Int {
        gcd_all(&self.coeffs)
    }

    /// Content-1 form with positive leading coefficient; zero stays zero.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        self.exact_div_scalar(&g)
    }

    /// Subresultant PRS gcd; result is primitive with positive leading
    /// coefficient.
    pub fn subresultant_gcd(f: &IntPoly, g: &IntPoly) -> IntPoly {
        if f.is_zero() {
            return g.primitive_part();
        }
        if g.is_zero() {
            return f.primitive_part();
        }
        let (mut a, mut b) = if f.degree() >= g.degree() {
            (f.primitive_part(), g.primitive_part())
        } else {
            (g.primitive_part(), f.primitive_part())
        };
        let mut delta = a.degree().unwrap() - b.degree().unwrap();
        let mut beta: Int = if delta % 2 == 0 {
            -Int::one()
        } else {
            Int::one()
        }; // (-1)^(delta+1)
        let mut psi = -Int::one();
        loop {
            let r = a.pseudo_rem(&b).exact_div_scalar(&beta);
            if r.is_zero() {
                return b.primitive_part();
            }
            let neg_lc = -b.leading().unwrap().clone();
            if delta > 0 {
                let num = pow_int(&neg_lc, delta as u32);
                let den = pow_int(&psi, (delta - 1) as u32);
                let (q, rr) = num.div_rem(&den);
                assert!(rr.is_zero(), "subresultant psi division inexact");
                psi = q;
            }
            let next_delta = b.degree().unwrap() - r.degree().unwrap();
            beta = &neg_lc * pow_int(&psi, next_delta as u32);
            a = b;
            b = r;
            delta = next_delta;
        }
    }

    pub fn derivative(&self) -> IntPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Int::from(i))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::from_coeffs(
            self.coeffs
                .iter()
                .cloned()
                .map(Rational::from_integer)
                .collect(),
        )
    }

    /// True when gcd(f, f') = 1 over Q. Fast path: a prime p with p not
    /// dividing lc(f) and f squarefree mod p certifies squarefreeness
    /// (the discriminant is nonzero mod p); the exact subresultant gcd is
    /// the fallback when no small prime certifies.
    pub fn is_squarefree(&self) -> bool {
        use super::modpoly::ModPoly;
        match self.degree() {
            None | Some(0) => return true,
            Some(1) => return true,
            _ => {}
        }
        let mut tried = 0;
        for p in super::primes_up_to(200) {
            let fbar = ModPoly::from_int_poly(self, p);
            if fbar.degree() != self.degree() {
                continue;
            }
            tried += 1;
            if fbar.gcd(&fbar.derivative()).degree() == Some(0) {
                return true;
            }
            if tried >= 25 {
                break;
            }
        }
        let f = self.to_rat();
        f.gcd(&f.derivative()).degree() == Some(0)
    }
}

fn pow_int(base: &Int, exp: u32) -> Int {
    let mut acc = Int::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}
