//! Sparse coordinate vectors: `(index, value)` pairs sorted by index with no
//! stored zeros.

use super::field::Field;

pub type SparseVec<F> = Vec<(usize, F)>;

/// `a + c·b`, merging two sorted vectors.
pub fn axpy<F: Field>(a: &[(usize, F)], c: &F, b: &[(usize, F)]) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = c.mul(&b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn add<F: Field>(a: &[(usize, F)], b: &[(usize, F)]) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            let v = a[i].1.add(&b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(c: &F, a: &[(usize, F)]) -> SparseVec<F> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(k, v)| (*k, c.mul(v))).collect()
}

pub fn neg<F: Field>(a: &[(usize, F)]) -> SparseVec<F> {
    a.iter().map(|(k, v)| (*k, v.neg())).collect()
}

pub fn get<F: Field>(a: &[(usize, F)], idx: usize) -> Option<&F> {
    a.binary_search_by_key(&idx, |e| e.0).ok().map(|p| &a[p].1)
}

pub fn from_dense<F: Field>(dense: &[F]) -> SparseVec<F> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (k, v.clone()))
        .collect()
}

pub fn to_dense<F: Field>(a: &[(usize, F)], len: usize, desc: &F::Desc) -> Vec<F> {
    let mut out = vec![F::zero(desc); len];
    for (k, v) in a {
        out[*k] = v.clone();
    }
    out
}

/// Builds a sorted sparse vector from unsorted entries, summing duplicates.
pub fn from_unsorted<F: Field>(mut entries: Vec<(usize, F)>) -> SparseVec<F> {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec<F> = Vec::with_capacity(entries.len());
    for (k, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 = last.1.add(&v),
            _ => out.push((k, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// Dense accumulator for building linear combinations of many sparse vectors.
pub struct Accumulator<F: Field> {
    values: Vec<F>,
    touched: Vec<usize>,
    flags: Vec<bool>,
}

impl<F: Field> Accumulator<F> {
    pub fn new(len: usize, desc: &F::Desc) -> Self {
        Accumulator {
            values: vec![F::zero(desc); len],
            touched: Vec::new(),
            flags: vec![false; len],
        }
    }

    pub fn add_scaled(&mut self, c: &F, v: &[(usize, F)]) {
        for (k, x) in v {
            if !self.flags[*k] {
                self.flags[*k] = true;
                self.touched.push(*k);
            }
            self.values[*k] = self.values[*k].add(&c.mul(x));
        }
    }

    pub fn add_at(&mut self, k: usize, c: &F) {
        if !self.flags[k] {
            self.flags[k] = true;
            self.touched.push(k);
        }
        self.values[k] = self.values[k].add(c);
    }

    /// Extracts the accumulated vector and resets the accumulator.
    pub fn take(&mut self, desc: &F::Desc) -> SparseVec<F> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &k in &self.touched {
            let v = std::mem::replace(&mut self.values[k], F::zero(desc));
            self.flags[k] = false;
            if !v.is_zero() {
                out.push((k, v));
            }
        }
        self.touched.clear();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn axpy_merges_and_cancels() {
        let a = vec![(0, r(1)), (2, r(3))];
        let b = vec![(1, r(1)), (2, r(1))];
        assert_eq!(axpy(&a, &r(-3), &b), vec![(0, r(1)), (1, r(-3))]);
    }

    #[test]
    fn unsorted_input_is_normalized() {
        let v = from_unsorted(vec![(3, r(1)), (1, r(2)), (3, r(-1)), (1, r(1))]);
        assert_eq!(v, vec![(1, r(3))]);
    }

    #[test]
    fn accumulator_round_trip() {
        let mut acc = Accumulator::new(4, &());
        acc.add_scaled(&r(2), &[(0, r(1)), (3, r(1))]);
        acc.add_at(0, &r(-2));
        assert_eq!(acc.take(&()), vec![(3, r(2))]);
        assert!(acc.take(&()).is_empty());
    }
}
