//! Dense matrices with fraction-free (Bareiss) elimination.

use std::fmt;

use crate::poly::UniPoly;
use crate::scalar::{Field, IntegralDomain, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[R]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    /// Builds from row vectors; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + other.get(i, j).clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(R::zero(), |acc, k| {
                acc + self.get(i, k).clone() * other.get(k, j).clone()
            })
        })
    }

    /// Columns `cols` of every row, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// Block diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.get(i - self.rows, j - self.cols).clone()
            } else {
                R::zero()
            }
        })
    }

    /// `x · M · yᵀ`.
    pub fn bilinear(&self, x: &[R], y: &[R]) -> R {
        let mut acc = R::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc = acc + x[i].clone() * self.get(i, j).clone() * y[j].clone();
            }
        }
        acc
    }
}

/// Outcome of fraction-free elimination.
struct Echelon<R> {
    rank: usize,
    /// Last pivot, i.e. ± the largest nonvanishing leading minor after row swaps.
    last_pivot: R,
    swaps: usize,
}

impl<R: IntegralDomain> Matrix<R> {
    fn bareiss(&self) -> Echelon<R> {
        let mut a = self.clone();
        let mut prev = R::one();
        let mut r = 0;
        let mut swaps = 0;
        for col in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(piv) = (r..a.rows).find(|&i| !a.get(i, col).is_zero()) else {
                continue;
            };
            if piv != r {
                for j in 0..a.cols {
                    a.data.swap(piv * a.cols + j, r * a.cols + j);
                }
                swaps += 1;
            }
            let p = a.get(r, col).clone();
            for i in r + 1..a.rows {
                let f = a.get(i, col).clone();
                for j in col + 1..a.cols {
                    let v = p.clone() * a.get(i, j).clone() - f.clone() * a.get(r, j).clone();
                    let v = v.div_exact(&prev).expect("Bareiss step divides exactly");
                    a.set(i, j, v);
                }
                a.set(i, col, R::zero());
            }
            prev = p;
            r += 1;
        }
        Echelon {
            rank: r,
            last_pivot: prev,
            swaps,
        }
    }

    pub fn rank(&self) -> usize {
        self.bareiss().rank
    }

    /// Determinant of a square matrix by fraction-free elimination.
    pub fn det_bareiss(&self) -> R {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return R::one();
        }
        let e = self.bareiss();
        if e.rank < self.rows {
            return R::zero();
        }
        if e.swaps % 2 == 1 {
            -e.last_pivot
        } else {
            e.last_pivot
        }
    }

    /// Rank, and the determinant when the matrix is square.
    pub fn rank_and_det(&self) -> (usize, Option<R>) {
        let e = self.bareiss();
        let det = (self.rows == self.cols).then(|| {
            if self.rows == 0 {
                R::one()
            } else if e.rank < self.rows {
                R::zero()
            } else if e.swaps % 2 == 1 {
                -e.last_pivot.clone()
            } else {
                e.last_pivot.clone()
            }
        });
        (e.rank, det)
    }
}

impl<F: Field> Matrix<F> {
    /// `det(t·I − M)`, monic of degree n.
    pub fn charpoly(&self) -> UniPoly<F> {
        assert_eq!(
            self.rows, self.cols,
            "characteristic polynomial of a non-square matrix"
        );
        let n = self.rows;
        let m = Matrix::from_fn(n, n, |i, j| {
            let c = UniPoly::constant(-self.get(i, j).clone());
            if i == j {
                c + UniPoly::var()
            } else {
                c
            }
        });
        m.det_bareiss()
    }

    /// Basis of the right kernel `{x : M·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(piv) = (r..a.rows).find(|&i| !a.get(i, col).is_zero()) else {
                continue;
            };
            for j in 0..a.cols {
                a.data.swap(piv * a.cols + j, r * a.cols + j);
            }
            let inv = a.get(r, col).inv().expect("nonzero pivot");
            for j in 0..a.cols {
                let v = a.get(r, j).clone() * inv.clone();
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i != r && !a.get(i, col).is_zero() {
                    let f = a.get(i, col).clone();
                    for j in 0..a.cols {
                        let v = a.get(i, j).clone() - f.clone() * a.get(r, j).clone();
                        a.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![F::zero(); a.cols];
                x[fc] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    x[pc] = -a.get(row, fc).clone();
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_rank_det() {
        assert_eq!(
            Matrix::<Rational>::identity(3).rank_and_det(),
            (3, Some(int(1)))
        );
    }

    #[test]
    fn det_with_swaps_and_skipped_columns() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det_bareiss(), int(-1));
        assert_eq!(
            m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).det_bareiss(),
            int(6)
        );
        assert_eq!(m(&[&[0, 0, 1], &[0, 1, 0], &[0, 2, 0]]).rank(), 2);
        let wide = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 0, 1, 1]]);
        assert_eq!(wide.rank_and_det(), (2, None));
    }

    #[test]
    fn charpoly_and_nullspace() {
        let a = m(&[&[2, 1], &[1, 2]]);
        assert_eq!(a.charpoly(), UniPoly::from_i64s(&[3, -4, 1]));
        let b = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ker = b.nullspace();
        assert_eq!(ker.len(), 2);
        for v in ker {
            let col = Matrix::from_rows(v.into_iter().map(|x| vec![x]).collect());
            assert!(b.mul(&col).row(0).iter().all(|x| *x == int(0)));
        }
    }
}
