use super::field::Field;
use super::sparse::{self, SparseVec};
use super::subspace::{ColumnEchelon, Echelon, Subspace};
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize, desc: &F::Desc) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![F::zero(desc); rows * cols],
        }
    }

    pub fn identity(n: usize, desc: &F::Desc) -> Self {
        let mut m = Self::zeros(n, n, desc);
        for k in 0..n {
            m.entries[k * n + k] = F::one(desc);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]], desc: &F::Desc) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| F::from_i64(v, desc)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn sparse_row(&self, r: usize) -> SparseVec<F> {
        sparse::from_dense(self.row(r))
    }

    pub fn sparse_col(&self, c: usize) -> SparseVec<F> {
        (0..self.rows)
            .filter(|&r| !self.get(r, c).is_zero())
            .map(|r| (r, self.get(r, c).clone()))
            .collect()
    }

    pub fn mul_vec(&self, v: &[F], desc: &F::Desc) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(F::zero(desc), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix<F>, desc: &F::Desc) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out: Matrix<F> = Matrix::zeros(self.rows, other.cols, desc);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c).add(&a.mul(other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    fn column_echelon(&self, desc: &F::Desc) -> ColumnEchelon<F> {
        let cols: Vec<SparseVec<F>> = (0..self.cols).map(|c| self.sparse_col(c)).collect();
        ColumnEchelon::from_columns(self.rows, desc, cols.iter())
    }

    pub fn rank(&self, desc: &F::Desc) -> usize {
        let mut e = Echelon::new(self.cols, desc);
        for r in 0..self.rows {
            e.insert(&self.sparse_row(r));
        }
        e.rank()
    }
}

/// Reduced row echelon form and its pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>, desc: &F::Desc) -> (Matrix<F>, Vec<usize>) {
    let rows: Vec<SparseVec<F>> = (0..m.rows).map(|r| m.sparse_row(r)).collect();
    let sub = Subspace::span(m.cols, desc, rows.iter());
    let entries = sub
        .basis()
        .iter()
        .flat_map(|v| sparse::to_dense(v, m.cols, desc))
        .collect();
    (
        Matrix {
            rows: sub.rank(),
            cols: m.cols,
            entries,
        },
        sub.pivots().to_vec(),
    )
}

pub fn kernel_basis<F: Field>(m: &Matrix<F>, desc: &F::Desc) -> Subspace<F> {
    m.column_echelon(desc).kernel()
}

/// Particular solution of `m·x = rhs` with zeros at non-pivot coordinates.
pub fn solve<F: Field>(m: &Matrix<F>, rhs: &[F], desc: &F::Desc) -> Result<Option<Vec<F>>> {
    if rhs.len() != m.rows {
        return Err(Error::Dimension(format!(
            "rhs of length {} for {} rows",
            rhs.len(),
            m.rows
        )));
    }
    Ok(m.column_echelon(desc)
        .solve(&sparse::from_dense(rhs))
        .map(|x| sparse::to_dense(&x, m.cols, desc)))
}

pub fn complement_basis<F: Field>(
    sub: &Subspace<F>,
    within: &Subspace<F>,
    desc: &F::Desc,
) -> Result<Vec<SparseVec<F>>> {
    sub.complement_in(within, desc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::Rational;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64(rows, &()).unwrap()
    }

    fn v(d: &[i64]) -> Vec<Rational> {
        d.iter().map(|&x| Rational::from_integer(x)).collect()
    }

    #[test]
    fn rref_examples() {
        assert_eq!(rref(&m(&[&[1, 2], &[2, 4]]), &()), (m(&[&[1, 2]]), vec![0]));
        let id = Matrix::<Rational>::identity(3, &());
        assert_eq!(rref(&id, &()), (id.clone(), vec![0, 1, 2]));
        assert_eq!(rref(&m(&[&[0, 1], &[1, 0]]), &()).0, m(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(
            kernel_basis(&Matrix::<Rational>::zeros(2, 3, &()), &()).rank(),
            3
        );
        assert_eq!(
            kernel_basis(&Matrix::<Rational>::identity(3, &()), &()).rank(),
            0
        );
        let k = kernel_basis(&m(&[&[1, 1]]), &());
        assert_eq!(k.basis(), &[sparse::from_dense(&v(&[1, -1]))]);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::<Rational>::identity(2, &());
        assert_eq!(solve(&id, &v(&[3, 4]), &()).unwrap(), Some(v(&[3, 4])));
        assert_eq!(
            solve(&m(&[&[1, 1]]), &v(&[2]), &()).unwrap(),
            Some(v(&[2, 0]))
        );
        assert_eq!(solve(&m(&[&[0]]), &v(&[1]), &()).unwrap(), None);
        assert!(solve(&m(&[&[1, 1]]), &v(&[1, 2]), &()).is_err());
    }

    #[test]
    fn complement_examples() {
        let full = Subspace::<Rational>::full(2, &());
        assert_eq!(
            complement_basis(&Subspace::zero(2), &full, &())
                .unwrap()
                .len(),
            2
        );
        assert!(complement_basis(&full, &full, &()).unwrap().is_empty());
    }
}
