//! Integer homogeneous forms in several variables, for the residue-class
//! enumerations.

use crate::arith::multi::parse_terms;
use crate::arith::poly::PolyParseError;
use crate::arith::Int;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    nvars: usize,
    terms: Vec<(Vec<u32>, Int)>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormError {
    #[error("parse error: {0}")]
    Parse(#[from] PolyParseError),
    #[error("form coefficients must be integers")]
    NonIntegerCoefficients,
    #[error("zero form")]
    Zero,
}

impl Form {
    pub fn new(nvars: usize, terms: Vec<(Vec<u32>, Int)>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Form { nvars, terms }
    }

    /// Parses e.g. `x0^3+x1^3+x2^3` or `x^2*y - z^3` (x, y, z are aliases
    /// for x0, x1, x2).
    pub fn parse(text: &str) -> Result<Self, FormError> {
        let (nvars, raw) = parse_terms(text)?;
        let mut terms: Vec<(Vec<u32>, Int)> = Vec::new();
        for t in raw {
            if !t.coeff.denom().is_one() {
                return Err(FormError::NonIntegerCoefficients);
            }
            let coeff = t.coeff.numer().clone();
            match terms.iter_mut().find(|(e, _)| *e == t.exps) {
                Some((_, c)) => *c += coeff,
                None => terms.push((t.exps, coeff)),
            }
        }
        let form = Form::new(nvars, terms);
        if form.terms.is_empty() {
            return Err(FormError::Zero);
        }
        Ok(form)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Vec<u32>, Int)] {
        &self.terms
    }

    /// Same form viewed in a larger ambient space (extra variables unused).
    pub fn embed(mut self, nvars: usize) -> Self {
        if nvars > self.nvars {
            self.nvars = nvars;
            for (e, _) in &mut self.terms {
                e.resize(nvars, 0);
            }
        }
        self
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.iter().all(|(e, _)| e.iter().sum::<u32>() == d)
    }

    /// Partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Form {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[var] -= 1;
                (e2, c * Int::from(e[var]))
            })
            .collect();
        Form::new(self.nvars, terms)
    }

    /// Evaluation mod `modulus`, coordinates already reduced; extra
    /// coordinates beyond the form's variables are ignored.
    pub fn eval_mod(&self, x: &[u64], modulus: u64) -> u64 {
        debug_assert!(x.len() >= self.nvars);
        let m = modulus as u128;
        let mut acc: u128 = 0;
        for (exps, c) in &self.terms {
            let mut term = reduce_int(c, modulus) as u128;
            for (&xi, &e) in x.iter().zip(exps) {
                for _ in 0..e {
                    term = term * xi as u128 % m;
                }
            }
            acc = (acc + term) % m;
        }
        acc as u64
    }
}

pub(crate) fn reduce_int(c: &Int, modulus: u64) -> u64 {
    use num_integer::Integer;
    let m = Int::from(modulus);
    let mut r = c.mod_floor(&m);
    if r.is_negative() {
        r += &m;
    }
    r.to_u64().unwrap()
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &e) in exps.iter().enumerate() {
                if e > 0 {
                    write!(f, "*x{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
