//! Text format for multivariate terms, shared by the cubic and
//! hypersurface-form parsers.
//!
//! A polynomial is a signed sum of terms; a term is `*`-separated factors,
//! each a rational constant or `v^e` with `v` one of `x`, `y`, `z` (indices
//! 0..2) or `x0`, `x1`, ... Exponent `^e` defaults to 1 when omitted.
//! Whitespace is ignored.

use super::poly::PolyParseError;
use super::Rational;
use num_traits::One;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiTerm {
    pub coeff: Rational,
    /// Exponent per variable index.
    pub exps: Vec<u32>,
}

/// Parses into `(nvars, terms)`; `nvars` is one past the highest variable
/// index seen (at least 1).
pub fn parse_terms(text: &str) -> Result<(usize, Vec<MultiTerm>), PolyParseError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(PolyParseError::Empty);
    }
    let mut terms = Vec::new();
    let mut nvars = 1usize;
    for (negative, term) in split_signed(&compact) {
        if term.is_empty() {
            return Err(PolyParseError::BadTerm(term));
        }
        let mut coeff = Rational::one();
        let mut exps: Vec<(usize, u32)> = Vec::new();
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(PolyParseError::BadTerm(term.clone()));
            }
            if factor.starts_with(|c: char| c.is_ascii_digit()) {
                coeff *= parse_rational(factor)?;
            } else {
                let (var, exp) =
                    parse_var_power(factor).ok_or_else(|| PolyParseError::BadTerm(term.clone()))?;
                nvars = nvars.max(var + 1);
                exps.push((var, exp));
            }
        }
        if negative {
            coeff = -coeff;
        }
        let max_var = exps.iter().map(|&(v, _)| v + 1).max().unwrap_or(1);
        let mut padded = vec![0u32; max_var];
        for (v, e) in exps {
            padded[v] += e;
        }
        terms.push(MultiTerm {
            coeff,
            exps: padded,
        });
    }
    for t in &mut terms {
        t.exps.resize(nvars, 0);
    }
    Ok((nvars, terms))
}

fn parse_var_power(s: &str) -> Option<(usize, u32)> {
    let (var, exp) = match s.split_once('^') {
        None => (s, 1u32),
        Some((v, e)) => (v, e.parse().ok()?),
    };
    let idx = match var {
        "x" => 0,
        "y" => 1,
        "z" => 2,
        _ => var.strip_prefix('x')?.parse::<usize>().ok()?,
    };
    Some((idx, exp))
}

fn split_signed(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut term = String::new();
    let mut sign = false;
    let mut chars = s.chars().peekable();
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
    use super::Int;
    use num_traits::Zero;
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn parses_mixed_variables() {
        let (nvars, terms) = parse_terms("x^3 + 5/74*y^3 - 10/37*x*y + 108/37").unwrap();
        assert_eq!(nvars, 2);
        assert_eq!(terms.len(), 4);
        assert_eq!(terms[0].exps, vec![3, 0]);
        assert_eq!(terms[1].coeff, rat(5, 74));
        assert_eq!(terms[2].coeff, rat(-10, 37));
        assert_eq!(terms[2].exps, vec![1, 1]);
        assert_eq!(terms[3].exps, vec![0, 0]);
    }

    #[test]
    fn indexed_variables() {
        let (nvars, terms) = parse_terms("x0^3+x1^3+x2^3-2*x3").unwrap();
        assert_eq!(nvars, 4);
        assert_eq!(terms[3].coeff, rat(-2, 1));
        assert_eq!(terms[3].exps, vec![0, 0, 0, 1]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_terms("").is_err());
        assert!(parse_terms("x^").is_err());
        assert!(parse_terms("w^2").is_err());
        assert!(parse_terms("3//4*x").is_err());
    }
}
