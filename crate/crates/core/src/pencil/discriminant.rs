//! Discriminants of ternary cubics via the Macaulay resultant of the three
//! partial derivatives.
//!
//! For three ternary quadrics the Macaulay matrix lives in degree 4: rows
//! are multiples of the quadrics by degree-2 monomials, columns the 15
//! degree-4 monomials, and the resultant is det(M) divided by the 3x3 minor
//! on the monomials divisible by two of x^2, y^2, z^2. The minor can vanish
//! for unlucky coefficients; we then retry after a unimodular change of
//! variables, which leaves the discriminant unchanged (the covariance
//! weight is 12, an even power of det = +-1).

use super::{Pencil, PencilError, TernaryCubic, CUBIC_MONOMIALS};
use crate::arith::det::{bareiss_det, ExactDomain};
use crate::arith::poly::{IntPoly, RatPoly};
use crate::arith::{Int, Rational};
use crate::rng::SplitMix64;
use crate::serde_util::{int_vec_str, rat_opt_str};
use num_integer::Integer;
#[allow(unused_imports)]
use num_traits::One as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Exponent triples of the homogeneous monomials of degree `d`, in the
/// canonical order (decreasing x, then decreasing y).
pub fn monomials_of_degree(d: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push((a, b, d - a - b));
        }
    }
    out
}

fn mono_index(list: &[(u32, u32, u32)], m: (u32, u32, u32)) -> usize {
    list.iter().position(|&x| x == m).expect("monomial in list")
}

/// Coefficients of the three partials, in the degree-2 monomial order.
fn partials<T: ExactDomain>(cubic: &[T; 10], from_i64: impl Fn(i64) -> T) -> [[T; 6]; 3] {
    let deg2 = monomials_of_degree(2);
    let mut out: [[T; 6]; 3] = [
        std::array::from_fn(|_| T::zero()),
        std::array::from_fn(|_| T::zero()),
        std::array::from_fn(|_| T::zero()),
    ];
    for (c, &(a, b, g)) in cubic.iter().zip(&CUBIC_MONOMIALS) {
        if c.is_zero() {
            continue;
        }
        if a > 0 {
            let idx = mono_index(&deg2, (a - 1, b, g));
            out[0][idx] = out[0][idx].add(&from_i64(a as i64).mul(c));
        }
        if b > 0 {
            let idx = mono_index(&deg2, (a, b - 1, g));
            out[1][idx] = out[1][idx].add(&from_i64(b as i64).mul(c));
        }
        if g > 0 {
            let idx = mono_index(&deg2, (a, b, g - 1));
            out[2][idx] = out[2][idx].add(&from_i64(g as i64).mul(c));
        }
    }
    out
}

/// Macaulay matrix in degree 4 for three quadrics, plus the row/column
/// indices of the non-reduced monomials x^2y^2, x^2z^2, y^2z^2.
fn macaulay_matrix<T: ExactDomain>(quadrics: &[[T; 6]; 3]) -> (Vec<Vec<T>>, [usize; 3]) {
    let deg4 = monomials_of_degree(4);
    let deg2 = monomials_of_degree(2);
    let mut matrix: Vec<Vec<T>> = Vec::with_capacity(15);
    for &(a, b, g) in &deg4 {
        // assign the row monomial to the first variable whose square divides it
        let (which, q) = if a >= 2 {
            (0, (a - 2, b, g))
        } else if b >= 2 {
            (1, (a, b - 2, g))
        } else {
            (2, (a, b, g - 2))
        };
        let mut row: Vec<T> = (0..15).map(|_| T::zero()).collect();
        for (coeff, &(qa, qb, qg)) in quadrics[which].iter().zip(&deg2) {
            if coeff.is_zero() {
                continue;
            }
            let target = (q.0 + qa, q.1 + qb, q.2 + qg);
            row[mono_index(&deg4, target)] = coeff.clone();
        }
        matrix.push(row);
    }
    let non_reduced = [
        mono_index(&deg4, (2, 2, 0)),
        mono_index(&deg4, (2, 0, 2)),
        mono_index(&deg4, (0, 2, 2)),
    ];
    (matrix, non_reduced)
}

fn submatrix<T: Clone>(m: &[Vec<T>], idx: &[usize]) -> Vec<Vec<T>> {
    idx.iter()
        .map(|&i| idx.iter().map(|&j| m[i][j].clone()).collect())
        .collect()
}

/// Substitutes x_i <- sum_j m[i][j] * x_j into a cubic with coefficients in T.
pub(crate) fn transform_cubic<T: ExactDomain>(
    cubic: &[T; 10],
    m: &[[i64; 3]; 3],
    from_i64: impl Fn(i64) -> T + Copy,
) -> [T; 10] {
    let lines: Vec<Vec<T>> = (0..3)
        .map(|i| (0..3).map(|j| from_i64(m[i][j])).collect())
        .collect();
    let mut out: [T; 10] = std::array::from_fn(|_| T::zero());
    for (c, &(a, b, g)) in cubic.iter().zip(&CUBIC_MONOMIALS) {
        if c.is_zero() {
            continue;
        }
        // product of linear forms, accumulated degree by degree
        let mut acc: Vec<T> = vec![T::one()];
        let mut deg = 0u32;
        for (i, &e) in [a, b, g].iter().enumerate() {
            for _ in 0..e {
                acc = mul_homogeneous(&acc, deg, &lines[i], 1);
                deg += 1;
            }
        }
        debug_assert_eq!(deg, 3);
        for (slot, term) in out.iter_mut().zip(acc.iter()) {
            *slot = slot.add(&term.mul(c));
        }
    }
    out
}

fn mul_homogeneous<T: ExactDomain>(p: &[T], dp: u32, q: &[T], dq: u32) -> Vec<T> {
    let mp = monomials_of_degree(dp);
    let mq = monomials_of_degree(dq);
    let mr = monomials_of_degree(dp + dq);
    let mut out: Vec<T> = (0..mr.len()).map(|_| T::zero()).collect();
    for (a, &(xa, ya, za)) in p.iter().zip(&mp) {
        if a.is_zero() {
            continue;
        }
        for (b, &(xb, yb, zb)) in q.iter().zip(&mq) {
            if b.is_zero() {
                continue;
            }
            let idx = mono_index(&mr, (xa + xb, ya + yb, za + zb));
            out[idx] = out[idx].add(&a.mul(b));
        }
    }
    out
}

fn det3x3_int(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Random unimodular 3x3 integer matrix (product of elementary shears and
/// swaps, det = +-1).
fn random_unimodular(rng: &mut SplitMix64) -> [[i64; 3]; 3] {
    let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..6 {
        match rng.next_u64() % 4 {
            0 | 1 => {
                // row_j += lambda * row_i
                let i = (rng.next_u64() % 3) as usize;
                let mut j = (rng.next_u64() % 3) as usize;
                if i == j {
                    j = (j + 1) % 3;
                }
                let lambda = rng.range_i64(-2, 2);
                let source = m[i];
                for (t, sv) in m[j].iter_mut().zip(source) {
                    *t += lambda * sv;
                }
            }
            2 => {
                let i = (rng.next_u64() % 3) as usize;
                let j = (i + 1) % 3;
                m.swap(i, j);
            }
            _ => {
                let i = (rng.next_u64() % 3) as usize;
                for t in m[i].iter_mut() {
                    *t = -*t;
                }
            }
        }
    }
    debug_assert_eq!(det3x3_int(&m).abs(), 1);
    m
}

const MAX_MINOR_RETRIES: u32 = 64;

/// Discriminant of an integer ternary cubic: the Macaulay resultant of its
/// three partials. Returns an exact integer; zero iff the projective cubic
/// is singular.
pub(crate) fn disc_int(cubic: &[Int; 10]) -> Int {
    let from = Int::from;
    let mut rng = SplitMix64::new(0x6d61_6361_756c_6179);
    let mut seen_zero_full_det = true;
    for attempt in 0..MAX_MINOR_RETRIES {
        let work = if attempt == 0 {
            cubic.clone()
        } else {
            transform_cubic(cubic, &random_unimodular(&mut rng), from)
        };
        let quadrics = partials(&work, from);
        let (m, non_reduced) = macaulay_matrix(&quadrics);
        let minor = bareiss_det(submatrix(&m, &non_reduced));
        if !Zero::is_zero(&minor) {
            let full = bareiss_det(m);
            let (q, r) = full.div_rem(&minor);
            assert!(
                Zero::is_zero(&r),
                "Macaulay minor does not divide the full determinant"
            );
            return q;
        }
        // keep track of whether det(M) also vanishes; det(M) = Res * minor,
        // so a nonzero det with zero minor would be inconsistent
        if attempt < 4 {
            let full = bareiss_det(m);
            seen_zero_full_det &= Zero::is_zero(&full);
        }
    }
    // Every change of variables left the minor zero. That happens only for
    // cubics like a triple line, whose full determinant vanishes identically
    // as well; the resultant is zero.
    assert!(
        seen_zero_full_det,
        "zero Macaulay minor with nonzero determinant"
    );
    <Int as Zero>::zero()
}

/// Discriminant of a rational ternary cubic; homogeneous of degree 12 in
/// the coefficients.
pub fn ternary_cubic_discriminant(f: &TernaryCubic) -> Rational {
    let (prim, scale) = f.primitive();
    let prim: [Int; 10] = prim.try_into().unwrap();
    let d = disc_int(&prim);
    let mut scale12 = Rational::one();
    for _ in 0..12 {
        scale12 *= &scale;
    }
    scale12 * Rational::from_integer(d)
}

/// Report for the discriminant of a pencil a + t*b.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantReport {
    pub schema_version: u32,
    /// The pencil generators, in the cubic text format.
    pub basis: [String; 2],
    /// Coefficients of the primitive integer discriminant, index = degree
    /// in t; content 1, positive leading coefficient.
    #[serde(with = "int_vec_str")]
    pub delta: Vec<Int>,
    pub degree: usize,
    /// Rational r with reference = r * delta, when a reference was supplied
    /// and matched.
    #[serde(with = "rat_opt_str")]
    pub scalar_vs_reference: Option<Rational>,
}

impl DiscriminantReport {
    pub fn delta_poly(&self) -> IntPoly {
        IntPoly::from_coeffs(self.delta.clone())
    }

    /// Checks exact proportionality against a reference polynomial by
    /// cross-multiplying every coefficient pair, and records the scalar.
    pub fn with_reference(mut self, reference: &RatPoly) -> Result<Self, PencilError> {
        let delta = self.delta_poly();
        if reference.degree() != delta.degree() {
            return Err(PencilError::ReferenceNotProportional);
        }
        let n = self.delta.len();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = reference.coeff(i) * Rational::from_integer(delta.coeff(j));
                let rhs = reference.coeff(j) * Rational::from_integer(delta.coeff(i));
                if lhs != rhs {
                    return Err(PencilError::ReferenceNotProportional);
                }
            }
        }
        let pivot = delta
            .coeffs()
            .iter()
            .position(|c| !Zero::is_zero(c))
            .unwrap();
        let scalar = reference.coeff(pivot) / Rational::from_integer(delta.coeff(pivot));
        self.scalar_vs_reference = Some(scalar);
        Ok(self)
    }
}

fn normalize_delta(delta: &RatPoly) -> IntPoly {
    match delta.to_primitive_int() {
        Some((poly, _)) => poly,
        None => IntPoly::zero(),
    }
}

/// Discriminant of the pencil member a + t*b as a polynomial in t, by exact
/// interpolation: the discriminant at 13 sample values of t (computed in
/// parallel), then Lagrange interpolation. Returned in primitive integer
/// form with positive leading coefficient.
pub fn pencil_discriminant(p: &Pencil) -> DiscriminantReport {
    let (a, b) = p.integer_pair();
    let samples: Vec<i64> = (-6..=6).collect();
    let values = crate::par::map_slice(&samples, |&t| {
        let member: [Int; 10] = std::array::from_fn(|i| &a[i] + Int::from(t) * &b[i]);
        disc_int(&member)
    });
    let points: Vec<(Rational, Rational)> = samples
        .iter()
        .zip(values)
        .map(|(&t, v)| {
            (
                Rational::from_integer(Int::from(t)),
                Rational::from_integer(v),
            )
        })
        .collect();
    let delta = normalize_delta(&RatPoly::interpolate(&points));
    let degree = delta.degree().map_or(0, |d| d);
    debug_assert!(degree <= 12);
    DiscriminantReport {
        schema_version: 1,
        basis: [p.a().to_string(), p.b().to_string()],
        delta: delta.coeffs().to_vec(),
        degree,
        scalar_vs_reference: None,
    }
}

/// Same discriminant by the symbolic route: Bareiss elimination over Z[t]
/// on the Macaulay matrix whose entries are linear in t. Must agree with
/// the interpolation path.
pub fn pencil_discriminant_symbolic(p: &Pencil) -> IntPoly {
    let (a, b) = p.integer_pair();
    let from = |n: i64| IntPoly::constant(Int::from(n));
    let cubic: [IntPoly; 10] =
        std::array::from_fn(|i| IntPoly::from_coeffs(vec![a[i].clone(), b[i].clone()]));
    let mut rng = SplitMix64::new(0x73796d62_6f6c6963);
    for attempt in 0..MAX_MINOR_RETRIES {
        let work = if attempt == 0 {
            cubic.clone()
        } else {
            transform_cubic(&cubic, &random_unimodular(&mut rng), from)
        };
        let quadrics = partials(&work, from);
        let (m, non_reduced) = macaulay_matrix(&quadrics);
        let minor = bareiss_det(submatrix(&m, &non_reduced));
        if !ExactDomain::is_zero(&minor) {
            let full = bareiss_det(m);
            let delta = full.exact_div(&minor);
            return delta.primitive_part();
        }
    }
    // both generators would have to be degenerate in every coordinate frame
    IntPoly::zero()
}

/// Fast integer discriminant in i128, for small lifted coefficients (used
/// by the mod-p sieve predicates). `None` on overflow or persistent zero
/// minor; callers fall back to `disc_int`.
pub(crate) fn disc_i128(cubic: &[i128; 10]) -> Option<i128> {
    fn bareiss_checked(mut m: Vec<Vec<i128>>) -> Option<i128> {
        let n = m.len();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            let pivot_row = (k..n).find(|&i| m[i][k] != 0);
            let Some(pr) = pivot_row else { return Some(0) };
            if pr != k {
                m.swap(k, pr);
                sign = -sign;
            }
            let pivot = m[k][k];
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = pivot
                        .checked_mul(m[i][j])?
                        .checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                    m[i][j] = t / prev;
                }
                m[i][k] = 0;
            }
            prev = pivot;
        }
        Some(sign * m[n - 1][n - 1])
    }

    // partials/macaulay want ExactDomain; hand-roll the small pieces here
    let deg2 = monomials_of_degree(2);
    let mut quadrics = [[0i128; 6]; 3];
    for (c, &(a, b, g)) in cubic.iter().zip(&CUBIC_MONOMIALS) {
        if *c == 0 {
            continue;
        }
        if a > 0 {
            quadrics[0][mono_index(&deg2, (a - 1, b, g))] += a as i128 * c;
        }
        if b > 0 {
            quadrics[1][mono_index(&deg2, (a, b - 1, g))] += b as i128 * c;
        }
        if g > 0 {
            quadrics[2][mono_index(&deg2, (a, b, g - 1))] += g as i128 * c;
        }
    }
    let deg4 = monomials_of_degree(4);
    let mut matrix = vec![vec![0i128; 15]; 15];
    let mut non_reduced = [0usize; 3];
    for (r, &(a, b, g)) in deg4.iter().enumerate() {
        let (which, q) = if a >= 2 {
            (0, (a - 2, b, g))
        } else if b >= 2 {
            (1, (a, b - 2, g))
        } else {
            (2, (a, b, g - 2))
        };
        for (coeff, &(qa, qb, qg)) in quadrics[which].iter().zip(&deg2) {
            if *coeff != 0 {
                matrix[r][mono_index(&deg4, (q.0 + qa, q.1 + qb, q.2 + qg))] = *coeff;
            }
        }
    }
    for (slot, m) in non_reduced
        .iter_mut()
        .zip([(2, 2, 0), (2, 0, 2), (0, 2, 2)])
    {
        *slot = mono_index(&deg4, m);
    }
    let minor: Vec<Vec<i128>> = non_reduced
        .iter()
        .map(|&i| non_reduced.iter().map(|&j| matrix[i][j]).collect())
        .collect();
    let minor_det = bareiss_checked(minor)?;
    if minor_det == 0 {
        return None;
    }
    let full = bareiss_checked(matrix)?;
    if full % minor_det != 0 {
        return None;
    }
    Some(full / minor_det)
}
