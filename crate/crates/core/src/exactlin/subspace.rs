//! Incremental row echelon forms, canonical subspaces and column-wise
//! elimination for kernels and particular solutions.

use std::collections::HashMap;

use super::field::Field;
use super::sparse::{self, Accumulator, SparseVec};
use crate::error::{Error, Result};

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert<F> {
    /// The vector raised the rank; payload is the new row index.
    Independent(usize),
    /// The vector was dependent. With tracking enabled the payload is a
    /// relation `Σ c_k v_k = 0` over inserted vectors with coefficient 1 on
    /// the vector just inserted; otherwise it is empty.
    Dependent(SparseVec<F>),
}

/// Row echelon form built one vector at a time. Rows have a leading 1 at
/// their pivot and are not back-reduced.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    dim: usize,
    desc: F::Desc,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
    row_of_pivot: HashMap<usize, usize>,
    combos: Option<Vec<SparseVec<F>>>,
    inserted: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(dim: usize, desc: &F::Desc) -> Self {
        Echelon {
            dim,
            desc: desc.clone(),
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_pivot: HashMap::new(),
            combos: None,
            inserted: 0,
        }
    }

    /// An echelon form that records every row as a combination of the
    /// inserted vectors.
    pub fn tracking(dim: usize, desc: &F::Desc) -> Self {
        let mut e = Self::new(dim, desc);
        e.combos = Some(Vec::new());
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn desc(&self) -> &F::Desc {
        &self.desc
    }

    /// Reduces `v` against the current rows, returning the residual and the
    /// `(row, coefficient)` pairs subtracted.
    fn reduce_raw(&self, v: &[(usize, F)]) -> (SparseVec<F>, Vec<(usize, F)>) {
        let mut v: SparseVec<F> = v.to_vec();
        let mut used = Vec::new();
        let mut pos = 0;
        while pos < v.len() {
            match self.row_of_pivot.get(&v[pos].0) {
                Some(&r) => {
                    let c = v[pos].1.clone();
                    let tail = sparse::axpy(&v[pos..], &c.neg(), &self.rows[r]);
                    v.truncate(pos);
                    v.extend(tail);
                    used.push((r, c));
                }
                None => pos += 1,
            }
        }
        (v, used)
    }

    /// Residual of `v` after reduction; zero iff `v` lies in the row span.
    pub fn reduce(&self, v: &[(usize, F)]) -> SparseVec<F> {
        self.reduce_raw(v).0
    }

    pub fn contains(&self, v: &[(usize, F)]) -> bool {
        self.reduce(v).is_empty()
    }

    fn combine(&self, used: &[(usize, F)], acc: &mut Accumulator<F>) {
        let combos = self.combos.as_ref().expect("tracking disabled");
        for (r, c) in used {
            acc.add_scaled(c, &combos[*r]);
        }
    }

    /// Coefficients over inserted vectors expressing `v`, or `None` when `v`
    /// is outside the span. Requires tracking.
    pub fn express(&self, v: &[(usize, F)]) -> Option<SparseVec<F>> {
        let (res, used) = self.reduce_raw(v);
        if !res.is_empty() {
            return None;
        }
        let mut acc = Accumulator::new(self.inserted.max(1), &self.desc);
        self.combine(&used, &mut acc);
        Some(acc.take(&self.desc))
    }

    pub fn insert(&mut self, v: &[(usize, F)]) -> Insert<F> {
        debug_assert!(v.last().is_none_or(|e| e.0 < self.dim));
        let k = self.inserted;
        self.inserted += 1;
        let (res, used) = self.reduce_raw(v);
        let combo = if self.combos.is_some() {
            let mut acc = Accumulator::new(self.inserted, &self.desc);
            acc.add_at(k, &F::one(&self.desc));
            let neg: Vec<(usize, F)> = used.iter().map(|(r, c)| (*r, c.neg())).collect();
            self.combine(&neg, &mut acc);
            Some(acc.take(&self.desc))
        } else {
            None
        };
        if res.is_empty() {
            return Insert::Dependent(combo.unwrap_or_default());
        }
        let lead_inv = res[0].1.inv();
        let pivot = res[0].0;
        let row = sparse::scale(&lead_inv, &res);
        let r = self.rows.len();
        self.rows.push(row);
        self.pivots.push(pivot);
        self.row_of_pivot.insert(pivot, r);
        if let (Some(combos), Some(c)) = (self.combos.as_mut(), combo) {
            combos.push(sparse::scale(&lead_inv, &c));
        }
        Insert::Independent(r)
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    /// Canonical reduced row echelon form of the current span.
    pub fn to_subspace(&self) -> Subspace<F> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivots[r]);
        let mut reduced: Vec<SparseVec<F>> = vec![Vec::new(); order.len()];
        let mut lookup: HashMap<usize, usize> = HashMap::new();
        for (slot, &r) in order.iter().enumerate().rev() {
            let mut v = self.rows[r].clone();
            let mut pos = 1;
            while pos < v.len() {
                match lookup.get(&v[pos].0) {
                    Some(&s) => {
                        let c = v[pos].1.clone();
                        let tail = sparse::axpy(&v[pos..], &c.neg(), &reduced[s]);
                        v.truncate(pos);
                        v.extend(tail);
                    }
                    None => pos += 1,
                }
            }
            lookup.insert(self.pivots[r], slot);
            reduced[slot] = v;
        }
        let pivots = order.iter().map(|&r| self.pivots[r]).collect();
        Subspace {
            dim: self.dim,
            rows: reduced,
            pivots,
        }
    }
}

/// A subspace of `F^dim` stored as its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    dim: usize,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(dim: usize) -> Self {
        Subspace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(dim: usize, desc: &F::Desc) -> Self {
        Subspace {
            dim,
            rows: (0..dim).map(|k| vec![(k, F::one(desc))]).collect(),
            pivots: (0..dim).collect(),
        }
    }

    pub fn span<'a, I>(dim: usize, desc: &F::Desc, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a SparseVec<F>>,
    {
        let mut e = Echelon::new(dim, desc);
        for v in vectors {
            e.insert(v);
        }
        e.to_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` modulo the subspace.
    pub fn reduce(&self, v: &[(usize, F)]) -> SparseVec<F> {
        let mut w = v.to_vec();
        for (row, p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = sparse::get(&w, *p).cloned() {
                w = sparse::axpy(&w, &c.neg(), row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[(usize, F)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[(usize, F)]) -> Option<SparseVec<F>> {
        let coeffs: SparseVec<F> = self
            .pivots
            .iter()
            .enumerate()
            .filter_map(|(r, p)| sparse::get(v, *p).map(|c| (r, c.clone())))
            .collect();
        let mut w = v.to_vec();
        for (r, c) in &coeffs {
            w = sparse::axpy(&w, &c.neg(), &self.rows[*r]);
        }
        w.is_empty().then_some(coeffs)
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    fn check_dim(&self, other: &Subspace<F>) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "ambient {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace<F>, desc: &F::Desc) -> Result<Subspace<F>> {
        self.check_dim(other)?;
        Ok(Subspace::span(
            self.dim,
            desc,
            self.rows.iter().chain(&other.rows),
        ))
    }

    /// Intersection by the Zassenhaus algorithm.
    pub fn intersect(&self, other: &Subspace<F>, desc: &F::Desc) -> Result<Subspace<F>> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut e = Echelon::new(2 * n, desc);
        for v in &self.rows {
            let mut w = v.clone();
            w.extend(v.iter().map(|(k, c)| (k + n, c.clone())));
            e.insert(&w);
        }
        for v in &other.rows {
            e.insert(v);
        }
        let tails: Vec<SparseVec<F>> = e
            .rows()
            .iter()
            .filter(|row| row[0].0 >= n)
            .map(|row| row.iter().map(|(k, c)| (k - n, c.clone())).collect())
            .collect();
        Ok(Subspace::span(n, desc, tails.iter()))
    }

    /// Vectors of `within`'s echelon basis that extend `self` to a basis of
    /// `within`, scanned in order.
    pub fn complement_in(&self, within: &Subspace<F>, desc: &F::Desc) -> Result<Vec<SparseVec<F>>> {
        self.check_dim(within)?;
        if !within.contains_subspace(self) {
            return Err(Error::NotContained);
        }
        let mut e = Echelon::new(self.dim, desc);
        for v in &self.rows {
            e.insert(v);
        }
        let mut out = Vec::new();
        for v in &within.rows {
            if let Insert::Independent(_) = e.insert(v) {
                out.push(v.clone());
            }
        }
        Ok(out)
    }
}

/// Column-by-column elimination of a linear map given by its columns.
///
/// Independent columns are the pivot columns of the reduced row echelon
/// form; every dependent column yields the corresponding reduced kernel
/// vector.
#[derive(Clone, Debug)]
pub struct ColumnEchelon<F: Field> {
    echelon: Echelon<F>,
    pivot_cols: Vec<usize>,
    kernel: Vec<SparseVec<F>>,
}

impl<F: Field> ColumnEchelon<F> {
    pub fn new(rows: usize, desc: &F::Desc) -> Self {
        ColumnEchelon {
            echelon: Echelon::tracking(rows, desc),
            pivot_cols: Vec::new(),
            kernel: Vec::new(),
        }
    }

    pub fn from_columns<'a, I>(rows: usize, desc: &F::Desc, cols: I) -> Self
    where
        I: IntoIterator<Item = &'a SparseVec<F>>,
    {
        let mut ce = Self::new(rows, desc);
        for c in cols {
            ce.push(c);
        }
        ce
    }

    pub fn push(&mut self, col: &[(usize, F)]) {
        let k = self.echelon.inserted();
        match self.echelon.insert(col) {
            Insert::Independent(_) => self.pivot_cols.push(k),
            Insert::Dependent(rel) => self.kernel.push(rel),
        }
    }

    pub fn cols(&self) -> usize {
        self.echelon.inserted()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// Kernel basis, one vector per dependent column in column order.
    pub fn kernel_vectors(&self) -> &[SparseVec<F>] {
        &self.kernel
    }

    pub fn kernel(&self) -> Subspace<F> {
        Subspace::span(self.cols(), self.echelon.desc(), self.kernel.iter())
    }

    pub fn image(&self) -> Subspace<F> {
        self.echelon.to_subspace()
    }

    pub fn in_image(&self, rhs: &[(usize, F)]) -> bool {
        self.echelon.contains(rhs)
    }

    /// The particular solution supported on pivot columns, or `None`.
    pub fn solve(&self, rhs: &[(usize, F)]) -> Option<SparseVec<F>> {
        self.echelon.express(rhs)
    }
}

/// Expresses vectors in a fixed independent family.
#[derive(Clone, Debug)]
pub struct Decomposer<F: Field> {
    echelon: Echelon<F>,
}

impl<F: Field> Decomposer<F> {
    pub fn new<'a, I>(dim: usize, desc: &F::Desc, family: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a SparseVec<F>>,
    {
        let mut echelon = Echelon::tracking(dim, desc);
        for v in family {
            if let Insert::Dependent(_) = echelon.insert(v) {
                return Err(Error::Internal("decomposition family is dependent".into()));
            }
        }
        Ok(Decomposer { echelon })
    }

    pub fn len(&self) -> usize {
        self.echelon.inserted()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coords(&self, v: &[(usize, F)]) -> Option<SparseVec<F>> {
        if self.echelon.inserted() == 0 {
            return v.is_empty().then(Vec::new);
        }
        self.echelon.express(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    fn sv(d: &[i64]) -> SparseVec<Rational> {
        sparse::from_dense(&d.iter().map(|&x| r(x)).collect::<Vec<_>>())
    }

    #[test]
    fn subspace_is_canonical() {
        let a = Subspace::span(3, &(), [sv(&[1, 2, 3]), sv(&[0, 1, 1])].iter());
        let b = Subspace::span(3, &(), [sv(&[1, 3, 4]), sv(&[2, 4, 6])].iter());
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[sv(&[1, 0, 1]), sv(&[0, 1, 1])]);
        assert_eq!(a.pivots(), &[0, 1]);
    }

    #[test]
    fn sum_and_intersection() {
        let e1 = Subspace::span(3, &(), [sv(&[1, 0, 0])].iter());
        let e2 = Subspace::span(3, &(), [sv(&[0, 1, 0])].iter());
        assert_eq!(e1.sum(&e2, &()).unwrap().rank(), 2);
        let p = Subspace::span(3, &(), [sv(&[1, 1, 0]), sv(&[0, 0, 1])].iter());
        let q = Subspace::span(3, &(), [sv(&[1, 0, 0]), sv(&[0, 1, 0])].iter());
        let i = p.intersect(&q, &()).unwrap();
        assert_eq!(i.basis(), &[sv(&[1, 1, 0])]);
        assert_eq!(p.intersect(&p, &()).unwrap(), p);
        assert!(e1.sum(&Subspace::zero(4), &()).is_err());
    }

    #[test]
    fn complement_scans_in_order() {
        let v = Subspace::full(3, &());
        let s = Subspace::span(3, &(), [sv(&[0, 1, 0])].iter());
        assert_eq!(
            s.complement_in(&v, &()).unwrap(),
            vec![sv(&[1, 0, 0]), sv(&[0, 0, 1])]
        );
        assert!(v.complement_in(&v, &()).unwrap().is_empty());
        assert!(v.complement_in(&s, &()).is_err());
    }

    #[test]
    fn column_echelon_kernel_and_solve() {
        // columns of [[1,2,1],[0,0,1]]
        let cols = [sv(&[1, 0]), sv(&[2, 0]), sv(&[1, 1])];
        let ce = ColumnEchelon::from_columns(2, &(), cols.iter());
        assert_eq!(ce.pivot_cols(), &[0, 2]);
        assert_eq!(ce.kernel_vectors(), &[sv(&[-2, 1])]);
        let x = ce.solve(&sv(&[3, 1])).unwrap();
        assert_eq!(x, sv(&[2, 0, 1]));
    }

    #[test]
    fn decomposer_coordinates() {
        let fam = [sv(&[1, 1]), sv(&[0, 1])];
        let d = Decomposer::new(2, &(), fam.iter()).unwrap();
        assert_eq!(d.coords(&sv(&[2, 5])).unwrap(), sv(&[2, 3]));
        assert!(Decomposer::new(2, &(), [sv(&[1, 1]), sv(&[2, 2])].iter()).is_err());
    }
}
