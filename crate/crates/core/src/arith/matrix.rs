//! Exact rational matrices and kernel computation.

use super::{primitive_integer_vector, Int, Rational};
use num_traits::{One, Zero};

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        RatMatrix { rows, cols, data }
    }

    pub fn from_int_rows(rows: &[Vec<Int>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols));
        let data = rows
            .iter()
            .flat_map(|r| r.iter().cloned().map(Rational::from_integer))
            .collect();
        RatMatrix {
            rows: rows.len(),
            cols: ncols,
            data,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rational::one();
        }
        RatMatrix {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    /// Integer row echelon form (fraction-free, rows kept primitive) and the
    /// pivot columns.
    fn int_echelon(&self) -> (Vec<Vec<Int>>, Vec<usize>) {
        let mut rows: Vec<Vec<Int>> = (0..self.rows)
            .map(|i| {
                let row: Vec<Rational> = (0..self.cols).map(|j| self.at(i, j).clone()).collect();
                primitive_integer_vector(&row).unwrap_or_else(|| vec![Int::zero(); self.cols])
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            let Some(pivot_row) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, pivot_row);
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row_data = &head[r];
            let pivot = pivot_row_data[col].clone();
            for row in tail.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for j in 0..self.cols {
                    row[j] = &row[j] * &pivot - &factor * &pivot_row_data[j];
                }
                // keep entries small
                let g = super::gcd_all(row);
                if g > Int::one() {
                    for x in row.iter_mut() {
                        *x = &*x / &g;
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.int_echelon().1.len()
    }

    /// Basis of the right kernel, canonicalized: the basis matrix is in
    /// reduced row echelon form, every vector scaled to coprime integers
    /// with positive first nonzero entry. Fraction-free elimination
    /// throughout; basis size is always `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<Vec<Int>> {
        let (echelon, pivots) = self.int_echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis: Vec<Vec<Rational>> = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate().rev() {
                let row = &echelon[r];
                let mut acc = Rational::zero();
                for j in p + 1..self.cols {
                    if !row[j].is_zero() && !v[j].is_zero() {
                        acc += Rational::from_integer(row[j].clone()) * &v[j];
                    }
                }
                v[p] = -acc / Rational::from_integer(row[p].clone());
            }
            basis.push(v);
        }
        rref_in_place(&mut basis);
        basis
            .iter()
            .map(|v| primitive_integer_vector(v).expect("kernel basis vector is nonzero"))
            .collect()
    }
}

/// Reduced row echelon form over Q, rows ordered by pivot column.
fn rref_in_place(rows: &mut [Vec<Rational>]) {
    if rows.is_empty() {
        return;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for col in 0..cols {
        let Some(pivot_row) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot_row);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            let pivot_row = rows[r].clone();
            for (x, pv) in rows[i].iter_mut().zip(&pivot_row) {
                let v = &factor * pv;
                *x -= v;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
}

/// True when the integer row sets span the same rational row space.
pub fn same_row_space(a: &[Vec<Int>], b: &[Vec<Int>]) -> bool {
    if a.is_empty() || b.is_empty() {
        return a.is_empty() && b.is_empty();
    }
    let ra = RatMatrix::from_int_rows(a).rank();
    let rb = RatMatrix::from_int_rows(b).rank();
    let mut stacked: Vec<Vec<Int>> = a.to_vec();
    stacked.extend_from_slice(b);
    let rs = RatMatrix::from_int_rows(&stacked).rank();
    ra == rb && rb == rs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat_int};
    use crate::rng::SplitMix64;
    use num_traits::Signed;

    fn mat(rows: &[&[i64]]) -> RatMatrix {
        let data: Vec<Rational> = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| rat_int(x)))
            .collect();
        RatMatrix::new(rows.len(), rows[0].len(), data)
    }

    #[test]
    fn identity_has_empty_kernel() {
        assert!(RatMatrix::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn one_by_two() {
        let m = mat(&[&[1, -1]]);
        assert_eq!(m.kernel_basis(), vec![vec![int(1), int(1)]]);
    }

    #[test]
    fn zero_matrix_full_basis() {
        let m = mat(&[&[0, 0, 0]]);
        let b = m.kernel_basis();
        assert_eq!(b.len(), 3);
        // standard basis in RREF order
        for (i, v) in b.iter().enumerate() {
            let mut e = vec![int(0); 3];
            e[i] = int(1);
            assert_eq!(v, &e);
        }
    }

    #[test]
    fn kernel_vectors_annihilate_rows() {
        let m = mat(&[&[2, 4, 6, 1], &[1, 2, 3, 0]]);
        let b = m.kernel_basis();
        assert_eq!(b.len() + m.rank(), 4);
        for v in &b {
            for i in 0..m.rows() {
                let dot: Rational = (0..m.cols())
                    .map(|j| m.at(i, j) * Rational::from_integer(v[j].clone()))
                    .sum();
                assert!(dot.is_zero());
            }
        }
    }

    // independent oracle: plain rational Gauss-Jordan
    fn naive_kernel_dim(m: &RatMatrix) -> usize {
        let mut rows: Vec<Vec<Rational>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.at(i, j).clone()).collect())
            .collect();
        rref_in_place(&mut rows);
        let rank = rows
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .count();
        m.cols() - rank
    }

    #[test]
    fn random_matrices_match_naive_oracle() {
        let mut rng = SplitMix64::new(2024);
        for _ in 0..300 {
            let rows = 1 + (rng.next_u64() % 5) as usize;
            let cols = 1 + (rng.next_u64() % 6) as usize;
            let data: Vec<Rational> = (0..rows * cols)
                .map(|_| rat_int(rng.range_i64(-4, 4)))
                .collect();
            let m = RatMatrix::new(rows, cols, data);
            let b = m.kernel_basis();
            assert_eq!(b.len(), naive_kernel_dim(&m));
            assert_eq!(b.len() + m.rank(), m.cols());
            for v in &b {
                for i in 0..m.rows() {
                    let dot: Rational = (0..m.cols())
                        .map(|j| m.at(i, j) * Rational::from_integer(v[j].clone()))
                        .sum();
                    assert!(dot.is_zero());
                }
                // primitive, first nonzero positive
                assert_eq!(crate::arith::gcd_all(v), int(1));
                assert!(v.iter().find(|x| !x.is_zero()).unwrap().is_positive());
            }
        }
    }

    #[test]
    fn row_space_comparison() {
        let a = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        let b = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert!(same_row_space(&a, &b));
        let c = vec![vec![int(1), int(1)]];
        assert!(!same_row_space(&a, &c));
    }
}
