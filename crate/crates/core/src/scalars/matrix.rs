use std::fmt;

use thiserror::Error;

use super::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("matrix is singular")]
    Singular,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Dense row-major matrix of exact scalars.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = K::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Result<Self, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinAlgError::Shape("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<K>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(K::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &K) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.clone() * s).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(K::zero(), |acc, (a, b)| acc + a.clone() * b)
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    ///
    /// The pivot in each column is the first row (at or below the current
    /// pivot row) holding a nonzero entry.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].try_inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = m[(i, j)].clone() - factor.clone() * &m[(r, j)];
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Kernel basis, returned in reduced echelon form: each vector has leading
    /// entry 1 and the leading positions are zero in all other vectors.
    pub fn null_space(&self) -> Vec<Vec<K>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let raw: Vec<Vec<K>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![K::zero(); self.cols];
                v[f] = K::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)].clone();
                }
                v
            })
            .collect();
        if raw.is_empty() {
            return raw;
        }
        let (basis, _) = Matrix::from_rows(raw).expect("uniform rows").rref();
        (0..basis.rows)
            .map(|i| basis.row(i).to_vec())
            .filter(|row| row.iter().any(|v| !v.is_zero()))
            .collect()
    }

    pub fn inverse(&self) -> Result<Self, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        self.solve(&Self::identity(self.rows))
            .ok_or(LinAlgError::Singular)
    }

    /// One solution `X` of `self · X = rhs`, or `None` when the system is inconsistent.
    ///
    /// Free variables are set to zero.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows, "solve: row mismatch");
        let n = self.cols;
        let mut aug = Self::zeros(self.rows, n + rhs.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                aug[(i, n + j)] = rhs[(i, j)].clone();
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Self::zeros(n, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(pc, j)] = r[(row, n + j)].clone();
            }
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<K> std::ops::Index<(usize, usize)> for Matrix<K> {
    type Output = K;
    fn index(&self, (i, j): (usize, usize)) -> &K {
        &self.data[i * self.cols + j]
    }
}

impl<K> std::ops::IndexMut<(usize, usize)> for Matrix<K> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut K {
        &mut self.data[i * self.cols + j]
    }
}

impl<K: fmt::Display> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(ToString::to_string)
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{FieldSpec, Fp, Rational};
    use proptest::prelude::*;

    fn q(v: i64) -> Rational {
        Rational::from_i64_in(&FieldSpec::Rationals, v)
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn null_space_examples() {
        assert!(Matrix::<Rational>::identity(2).null_space().is_empty());
        let z = Matrix::<Rational>::zeros(2, 2).null_space();
        assert_eq!(z, vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
        let ns = qm(&[&[1, 1], &[2, 2]]).null_space();
        assert_eq!(ns, vec![vec![q(1), q(-1)]]);
    }

    #[test]
    fn rank_and_inverse() {
        assert_eq!(Matrix::<Rational>::identity(3).rank(), 3);
        let inv = qm(&[&[2]]).inverse().unwrap();
        assert_eq!(inv[(0, 0)], Rational::new(1.into(), 2.into()));
        assert_eq!(qm(&[&[1, 1], &[2, 2]]).inverse(), Err(LinAlgError::Singular));
        assert_eq!(
            qm(&[&[1, 1, 1]]).inverse(),
            Err(LinAlgError::NotSquare { rows: 1, cols: 3 })
        );
    }

    #[test]
    fn solve_inconsistent() {
        let a = qm(&[&[1, 1], &[2, 2]]);
        let b = qm(&[&[1], &[3]]);
        assert!(a.solve(&b).is_none());
        let b = qm(&[&[1], &[2]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);
    }

    #[test]
    fn prime_field_inverse() {
        let f7 = FieldSpec::PrimeField(7);
        let m = Matrix::from_rows(vec![
            vec![Fp::from_i64_in(&f7, 1), Fp::from_i64_in(&f7, 2)],
            vec![Fp::from_i64_in(&f7, 3), Fp::from_i64_in(&f7, 4)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix<Rational>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |vals| {
                let rows = vals.chunks(c).map(|ch| ch.iter().map(|&v| q(v)).collect()).collect();
                Matrix::from_rows(rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let ns = m.null_space();
            prop_assert_eq!(m.rank() + ns.len(), m.cols());
            for v in &ns {
                prop_assert!(m.mul_vec(v).iter().all(num_traits::Zero::is_zero));
            }
        }

        #[test]
        fn rref_is_deterministic(m in small_matrix()) {
            prop_assert_eq!(m.rref(), m.clone().rref());
        }

        #[test]
        fn field_axioms_rational(a in -20i64..20, b in -20i64..20, c in 1i64..20) {
            let (a, b, c) = (q(a), q(b), Rational::new(c.into(), 7.into()));
            prop_assert_eq!((a.clone() + &b) + &c, a.clone() + (b.clone() + &c));
            prop_assert_eq!(a.clone() * (b.clone() + &c), a.clone() * &b + a.clone() * &c);
            prop_assert_eq!(c.clone() * c.try_inv().unwrap(), q(1));
        }

        #[test]
        fn field_axioms_prime(a in 0i64..101, b in 0i64..101, c in 1i64..101) {
            let f = FieldSpec::PrimeField(101);
            let (a, b, c) = (Fp::from_i64_in(&f, a), Fp::from_i64_in(&f, b), Fp::from_i64_in(&f, c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(c * c.try_inv().unwrap(), Fp::one_in(&f));
            prop_assert_eq!(a - a, Fp::zero_in(&f));
        }
    }
}
