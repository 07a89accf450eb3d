//! Pencils of plane cubics through eight rational points.
//!
//! The 10 coefficients of a ternary cubic are indexed by the monomials
//! x^3, x^2 y, x^2 z, x y^2, x y z, x z^2, y^3, y^2 z, y z^2, z^3 (in this
//! order throughout the crate). Affine input in x, y is homogenized on the
//! chart z = 1.

pub mod discriminant;

use crate::arith::matrix::RatMatrix;
use crate::arith::multi::parse_terms;
use crate::arith::poly::{IntPoly, PolyParseError, RatPoly};
use crate::arith::{gcd_all, primitive_integer_vector, Int, Rational};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Exponents (a, b, c) of x^a y^b z^c for each coefficient slot.
pub const CUBIC_MONOMIALS: [(u32, u32, u32); 10] = [
    (3, 0, 0),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (1, 1, 1),
    (1, 0, 2),
    (0, 3, 0),
    (0, 2, 1),
    (0, 1, 2),
    (0, 0, 3),
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PencilError {
    #[error("projective point must have a nonzero coordinate")]
    ZeroPoint,
    #[error("expected a point of P^2 (3 coordinates), got {0}")]
    WrongDimension(usize),
    #[error("expected exactly 8 points, got {0}")]
    WrongPointCount(usize),
    #[error("duplicate point at positions {0} and {1}")]
    DuplicatePoint(usize, usize),
    #[error("points impose dependent conditions: kernel dimension {0}, expected 2")]
    Degenerate(usize),
    #[error("the two cubics are proportional and span no pencil")]
    NotAPencil,
    #[error("cubic has total degree {0} > 3")]
    DegreeTooHigh(u32),
    #[error("cubic in more than three variables")]
    TooManyVariables,
    #[error("zero cubic")]
    ZeroCubic,
    #[error("reference polynomial is not proportional to the computed discriminant")]
    ReferenceNotProportional,
    #[error("polynomial parse error: {0}")]
    Parse(#[from] PolyParseError),
}

/// A point of P^N(Q) as its canonical primitive integer representative:
/// coprime coordinates, first nonzero coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<Int>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Int>) -> Result<Self, PencilError> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(PencilError::ZeroPoint);
        }
        let g = gcd_all(&coords);
        let mut coords: Vec<Int> = coords.into_iter().map(|c| c / &g).collect();
        if coords.iter().find(|c| !c.is_zero()).unwrap().is_negative() {
            for c in &mut coords {
                *c = -std::mem::take(c);
            }
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self, PencilError> {
        Self::new(coords.iter().map(|&c| Int::from(c)).collect())
    }

    /// Affine (x, y) on the chart z = 1.
    pub fn from_affine(x: i64, y: i64) -> Self {
        Self::from_i64(&[x, y, 1]).expect("affine point is nonzero")
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Sup norm of the primitive representative.
    pub fn sup_norm(&self) -> Int {
        self.coords.iter().map(|c| c.abs()).max().unwrap()
    }

    /// Anticanonical height on P^2: cube of the sup norm.
    pub fn height(&self) -> Int {
        let n = self.sup_norm();
        &n * &n * &n
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A plane cubic with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryCubic {
    coeffs: [Rational; 10],
}

impl TernaryCubic {
    pub fn new(coeffs: [Rational; 10]) -> Result<Self, PencilError> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(PencilError::ZeroCubic);
        }
        Ok(TernaryCubic { coeffs })
    }

    pub fn from_int_coeffs(coeffs: &[Int]) -> Result<Self, PencilError> {
        assert_eq!(coeffs.len(), 10);
        let mut out: [Rational; 10] = Default::default();
        for (slot, c) in out.iter_mut().zip(coeffs) {
            *slot = Rational::from_integer(c.clone());
        }
        Self::new(out)
    }

    pub fn coeffs(&self) -> &[Rational; 10] {
        &self.coeffs
    }

    /// Parses a cubic in x, y, z (or affine x, y). Terms of total degree
    /// below 3 are homogenized with powers of z.
    pub fn parse(text: &str) -> Result<Self, PencilError> {
        let (nvars, terms) = parse_terms(text)?;
        if nvars > 3 {
            return Err(PencilError::TooManyVariables);
        }
        let mut coeffs: [Rational; 10] = Default::default();
        for term in terms {
            let a = *term.exps.first().unwrap_or(&0);
            let b = *term.exps.get(1).unwrap_or(&0);
            let c = *term.exps.get(2).unwrap_or(&0);
            let total = a + b + c;
            if total > 3 {
                return Err(PencilError::DegreeTooHigh(total));
            }
            let key = (a, b, c + (3 - total));
            let idx = CUBIC_MONOMIALS.iter().position(|m| *m == key).unwrap();
            coeffs[idx] += term.coeff;
        }
        Self::new(coeffs)
    }

    pub fn eval(&self, point: &ProjPoint) -> Rational {
        let [x, y, z] = [&point.coords[0], &point.coords[1], &point.coords[2]];
        let mut acc = Rational::zero();
        for (c, &(a, b, g)) in self.coeffs.iter().zip(&CUBIC_MONOMIALS) {
            if c.is_zero() {
                continue;
            }
            acc += c * Rational::from_integer(pow(x, a) * pow(y, b) * pow(z, g));
        }
        acc
    }

    /// Coprime integer coefficient vector with positive first nonzero entry,
    /// and the rational scale such that `self = scale * primitive`.
    pub fn primitive(&self) -> (Vec<Int>, Rational) {
        let v = primitive_integer_vector(&self.coeffs).expect("cubic is nonzero");
        let idx = v.iter().position(|c| !c.is_zero()).unwrap();
        let scale = &self.coeffs[idx] / Rational::from_integer(v[idx].clone());
        (v, scale)
    }

    /// The cubic f(M x) for an integer 3x3 matrix M; the discriminant
    /// scales by det(M)^12 under this substitution.
    pub fn substitute(&self, m: &[[i64; 3]; 3]) -> Result<TernaryCubic, PencilError> {
        let (prim, scale) = self.primitive();
        let prim: [Int; 10] = prim.try_into().unwrap();
        let moved = discriminant::transform_cubic(&prim, m, Int::from);
        let coeffs: [Rational; 10] =
            std::array::from_fn(|i| Rational::from_integer(moved[i].clone()) * &scale);
        TernaryCubic::new(coeffs)
    }

    /// Row of the interpolation matrix: the 10 cubic monomials evaluated at
    /// the point.
    pub fn monomial_row(point: &ProjPoint) -> Vec<Int> {
        let [x, y, z] = [&point.coords[0], &point.coords[1], &point.coords[2]];
        CUBIC_MONOMIALS
            .iter()
            .map(|&(a, b, g)| pow(x, a) * pow(y, b) * pow(z, g))
            .collect()
    }
}

fn pow(base: &Int, exp: u32) -> Int {
    let mut acc = Int::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

impl fmt::Display for TernaryCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = ["x", "y", "z"];
        let mut first = true;
        for (c, &(a, b, g)) in self.coeffs.iter().zip(&CUBIC_MONOMIALS) {
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
            let m = c.abs();
            if m.denom().is_one() {
                write!(f, "{}", m.numer())?;
            } else {
                write!(f, "{}/{}", m.numer(), m.denom())?;
            }
            for (v, e) in vars.iter().zip([a, b, g]) {
                if e > 0 {
                    write!(f, "*{v}^{e}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A pencil a + t*b of cubics; a and b are not proportional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil {
    a: TernaryCubic,
    b: TernaryCubic,
}

impl Pencil {
    pub fn new(a: TernaryCubic, b: TernaryCubic) -> Result<Self, PencilError> {
        let rows = vec![a.primitive().0, b.primitive().0];
        if RatMatrix::from_int_rows(&rows).rank() != 2 {
            return Err(PencilError::NotAPencil);
        }
        Ok(Pencil { a, b })
    }

    pub fn a(&self) -> &TernaryCubic {
        &self.a
    }

    pub fn b(&self) -> &TernaryCubic {
        &self.b
    }

    /// Generators as integer cubics with a *common* denominator cleared and
    /// common content removed, so the pencil parameter t is untouched.
    pub fn integer_pair(&self) -> ([Int; 10], [Int; 10]) {
        use num_integer::Integer;
        let mut den = Int::one();
        for c in self.a.coeffs().iter().chain(self.b.coeffs()) {
            den = den.lcm(c.denom());
        }
        let lift = |f: &TernaryCubic| -> [Int; 10] {
            std::array::from_fn(|i| {
                let c = &f.coeffs()[i];
                c.numer() * (&den / c.denom())
            })
        };
        let mut a = lift(&self.a);
        let mut b = lift(&self.b);
        let mut all: Vec<Int> = a.to_vec();
        all.extend_from_slice(&b);
        let g = gcd_all(&all);
        if g > Int::one() {
            for x in a.iter_mut().chain(b.iter_mut()) {
                *x = &*x / &g;
            }
        }
        (a, b)
    }

    /// The member a + t*b.
    pub fn member(&self, t: &Rational) -> Result<TernaryCubic, PencilError> {
        let coeffs: [Rational; 10] =
            std::array::from_fn(|i| &self.a.coeffs[i] + t * &self.b.coeffs[i]);
        TernaryCubic::new(coeffs)
    }
}

/// The pencil of cubics through 8 points in general position: the kernel of
/// the 8x10 matrix of cubic monomials evaluated at the points. The returned
/// basis is the canonical (echelon, primitive-integer) kernel basis.
pub fn cubics_through_points(points: &[ProjPoint]) -> Result<Pencil, PencilError> {
    if points.len() != 8 {
        return Err(PencilError::WrongPointCount(points.len()));
    }
    for p in points {
        if p.coords.len() != 3 {
            return Err(PencilError::WrongDimension(p.coords.len()));
        }
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(PencilError::DuplicatePoint(i, j));
            }
        }
    }
    let rows: Vec<Vec<Int>> = points.iter().map(TernaryCubic::monomial_row).collect();
    let kernel = RatMatrix::from_int_rows(&rows).kernel_basis();
    if kernel.len() != 2 {
        return Err(PencilError::Degenerate(kernel.len()));
    }
    let a = TernaryCubic::from_int_coeffs(&kernel[0])?;
    let b = TernaryCubic::from_int_coeffs(&kernel[1])?;
    Pencil::new(a, b)
}

/// Coefficients in z of an integer cubic specialized at rational (x, y).
fn z_slice(cubic: &[Int; 10], x: &Rational, y: &Rational) -> RatPoly {
    let mut coeffs = vec![Rational::zero(); 4];
    for (c, &(a, b, g)) in cubic.iter().zip(&CUBIC_MONOMIALS) {
        if c.is_zero() {
            continue;
        }
        let mut v = Rational::from_integer(c.clone());
        for _ in 0..a {
            v *= x;
        }
        for _ in 0..b {
            v *= y;
        }
        coeffs[g as usize] += v;
    }
    RatPoly::from_coeffs(coeffs)
}

/// Resultant in z of two cubics-in-z given by padded coefficient slots
/// (degree fixed at 3 even when the leading slot vanishes), as the 6x6
/// Sylvester determinant.
fn sylvester_resultant_deg3(f: &[Int; 4], g: &[Int; 4]) -> Int {
    let mut m = vec![vec![Int::zero(); 6]; 6];
    for shift in 0..3 {
        for (k, c) in f.iter().enumerate() {
            m[shift][shift + 3 - k] = c.clone();
        }
        for (k, c) in g.iter().enumerate() {
            m[3 + shift][shift + 3 - k] = c.clone();
        }
    }
    crate::arith::det::bareiss_det(m)
}

const ROOT_DIVISOR_CAP: u64 = 100_000;

/// Rational base points of the pencil (common zeros of both generators),
/// by elimination: the resultant in z is interpolated as a degree-9 form in
/// (x : y); its rational roots give candidate directions, and the gcd of
/// the specialized generators gives z. Points whose coordinates have a
/// prime factor beyond the divisor cap can be missed once the residual
/// factor has degree 3 or more; with 7 known base points supplied the
/// residual is at most quadratic and the search is exact.
pub fn rational_base_points(pencil: &Pencil, known: &[ProjPoint]) -> Vec<ProjPoint> {
    let (a, b) = pencil.integer_pair();
    // R(t) = Res_z(a(t,1,z), b(t,1,z)), a polynomial of degree <= 9 in t
    let samples: Vec<(Rational, Rational)> = (-6..=6)
        .map(|t| {
            let ti = Rational::from_integer(Int::from(t));
            let fa = rat_slice_to_int4(&z_slice(&a, &ti, &Rational::one()));
            let fb = rat_slice_to_int4(&z_slice(&b, &ti, &Rational::one()));
            (
                ti,
                Rational::from_integer(sylvester_resultant_deg3(&fa, &fb)),
            )
        })
        .collect();
    let resultant = RatPoly::interpolate(&samples);
    let mut directions: Vec<(Rational, Rational)> = Vec::new(); // (x, y) with y = 1 or (1, 0)
    if resultant.is_zero() {
        // common component; nothing sensible to report
        return Vec::new();
    }
    // deflate known directions (with multiplicity), then take rational roots
    let mut residual = resultant.to_primitive_int().unwrap().0;
    for p in known {
        let [x, y, _] = [&p.coords[0], &p.coords[1], &p.coords[2]];
        if y.is_zero() {
            continue;
        }
        let dir = Rational::new(x.clone(), y.clone());
        // t - dir, cleared: den*t - num
        let lin = IntPoly::from_coeffs(vec![-dir.numer().clone(), dir.denom().clone()]);
        let quot = residual.to_rat().divrem(&lin.to_rat()).0;
        if let Some((q, _)) = quot.to_primitive_int() {
            if residual.to_rat().divrem(&lin.to_rat()).1.is_zero() {
                residual = q;
            }
        }
    }
    for t in crate::arith::roots::rational_roots_bounded(&residual, ROOT_DIVISOR_CAP) {
        directions.push((t, Rational::one()));
    }
    directions.push((Rational::one(), Rational::zero()));
    let mut found = Vec::new();
    for (x, y) in directions {
        let ga = z_slice(&a, &x, &y);
        let gb = z_slice(&b, &x, &y);
        let g = ga.gcd(&gb);
        if g.is_zero() {
            continue;
        }
        let Some((gi, _)) = g.to_primitive_int() else {
            continue;
        };
        for z in crate::arith::roots::rational_roots_bounded(&gi, ROOT_DIVISOR_CAP) {
            if let Some(p) = point_from_rationals(&[x.clone(), y.clone(), z]) {
                if !known.contains(&p) && !found.contains(&p) {
                    found.push(p);
                }
            }
        }
    }
    // the remaining corner of the (x:y) chart decomposition
    let corner = ProjPoint::from_i64(&[0, 0, 1]).unwrap();
    if pencil.a.eval(&corner).is_zero()
        && pencil.b.eval(&corner).is_zero()
        && !known.contains(&corner)
        && !found.contains(&corner)
    {
        found.push(corner);
    }
    found.retain(|p| pencil.a.eval(p).is_zero() && pencil.b.eval(p).is_zero());
    found.sort_by_key(|p| (p.height(), p.coords.clone()));
    found
}

fn rat_slice_to_int4(f: &RatPoly) -> [Int; 4] {
    // clear denominators; the resultant scales by a nonzero constant, which
    // does not affect root locations
    let mut den = Int::one();
    for c in f.coeffs() {
        den = den.lcm(c.denom());
    }
    std::array::from_fn(|i| {
        let c = f.coeff(i);
        c.numer() * (&den / c.denom())
    })
}

fn point_from_rationals(coords: &[Rational]) -> Option<ProjPoint> {
    crate::arith::primitive_integer_vector(coords).map(|v| ProjPoint::new(v).unwrap())
}
