//! The Koszul complex `K = ⋀(R^n)` of a graded quotient ring.
//!
//! Exterior basis elements `T_S` are bitmasks over the variables. The
//! colexicographic order of `i`-subsets is the increasing order of their
//! masks, so `BTreeMap<u32, _>` iterates in that order. A graded piece
//! `K_{i,j}` has coordinates `rank(S) * dim R_{j-i} + b` for the `b`-th basis
//! monomial of `R_{j-i}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{sparse, ColumnEchelon, Field, SparseVec, Subspace};
use crate::polyring::{GradedQuotientRing, RingElement};

pub type ExteriorIndex = u32;

/// All `i`-subsets of `{0..n-1}` in colexicographic order.
pub fn subset_order(n: usize, i: usize) -> Vec<ExteriorIndex> {
    if i > n {
        return Vec::new();
    }
    (0u32..(1u32 << n))
        .filter(|m| m.count_ones() as usize == i)
        .collect()
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// Position of `s` in [`subset_order`].
pub fn subset_rank(s: ExteriorIndex) -> usize {
    let mut rank = 0;
    let mut k = 0;
    let mut bits = s;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        k += 1;
        rank += binom(v, k);
        bits &= bits - 1;
    }
    rank
}

/// Sign of `T_S ∧ T_T` relative to `T_{S∪T}`; `None` when they overlap.
pub fn wedge_sign(s: ExteriorIndex, t: ExteriorIndex) -> Option<bool> {
    if s & t != 0 {
        return None;
    }
    let mut inversions = 0;
    let mut bits = t;
    while bits != 0 {
        let v = bits.trailing_zeros();
        inversions += (s >> v).count_ones();
        bits &= bits - 1;
    }
    Some(inversions % 2 == 1)
}

/// Formats `T_S` with 1-based variable numbers.
pub fn index_label(s: ExteriorIndex, n: usize) -> String {
    let idx: Vec<String> = (0..32)
        .filter(|v| s >> v & 1 == 1)
        .map(|v| (v + 1).to_string())
        .collect();
    if idx.is_empty() {
        String::new()
    } else if n <= 9 {
        format!("T{}", idx.concat())
    } else {
        format!("T{{{}}}", idx.join(","))
    }
}

/// Element of `K_i` with ring coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulElement<F: Field> {
    hdeg: usize,
    terms: BTreeMap<ExteriorIndex, RingElement<F>>,
}

impl<F: Field> KoszulElement<F> {
    pub fn zero(hdeg: usize) -> Self {
        KoszulElement {
            hdeg,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(s: ExteriorIndex, coeff: RingElement<F>) -> Self {
        let mut e = Self::zero(s.count_ones() as usize);
        if !coeff.is_empty() {
            e.terms.insert(s, coeff);
        }
        e
    }

    pub fn hdeg(&self) -> usize {
        self.hdeg
    }

    pub fn terms(&self) -> &BTreeMap<ExteriorIndex, RingElement<F>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, c: &F, other: &KoszulElement<F>) {
        debug_assert!(other.is_zero() || self.is_zero() || self.hdeg == other.hdeg);
        if self.is_zero() {
            self.hdeg = other.hdeg;
        }
        for (s, v) in &other.terms {
            let cur = self.terms.remove(s).unwrap_or_default();
            let next = sparse::axpy(&cur, c, v);
            if !next.is_empty() {
                self.terms.insert(*s, next);
            }
        }
    }

    pub fn add(&self, other: &KoszulElement<F>, desc: &F::Desc) -> Self {
        let mut out = self.clone();
        out.add_scaled(&F::one(desc), other);
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.hdeg);
        }
        KoszulElement {
            hdeg: self.hdeg,
            terms: self
                .terms
                .iter()
                .map(|(s, v)| (*s, sparse::scale(c, v)))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        KoszulElement {
            hdeg: self.hdeg,
            terms: self
                .terms
                .iter()
                .map(|(s, v)| (*s, sparse::neg(v)))
                .collect(),
        }
    }

    /// True when no coefficient has a nonzero constant term.
    pub fn in_max_ideal(&self) -> bool {
        self.terms
            .values()
            .all(|v| v.first().is_none_or(|(g, _)| *g != 0))
    }

    /// Internal degrees present in the element, ascending.
    pub fn internal_degrees(&self, ring: &GradedQuotientRing<F>) -> Vec<usize> {
        let mut ds: Vec<usize> = self
            .terms
            .values()
            .flat_map(|v| v.iter().map(|(g, _)| ring.degree_of(*g) + self.hdeg))
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Component of internal degree `j`.
    pub fn component(&self, ring: &GradedQuotientRing<F>, j: usize) -> Self {
        let mut out = Self::zero(self.hdeg);
        if j < self.hdeg {
            return out;
        }
        let d = j - self.hdeg;
        for (s, v) in &self.terms {
            let part: RingElement<F> = v
                .iter()
                .filter(|(g, _)| ring.degree_of(*g) == d)
                .cloned()
                .collect();
            if !part.is_empty() {
                out.terms.insert(*s, part);
            }
        }
        out
    }

    pub fn display<'a>(&'a self, ring: &'a GradedQuotientRing<F>) -> KoszulDisplay<'a, F> {
        KoszulDisplay { e: self, ring }
    }
}

pub struct KoszulDisplay<'a, F: Field> {
    e: &'a KoszulElement<F>,
    ring: &'a GradedQuotientRing<F>,
}

impl<F: Field> fmt::Display for KoszulDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return f.write_str("0");
        }
        let n = self.ring.nvars();
        for (k, (s, v)) in self.e.terms.iter().enumerate() {
            let label = index_label(*s, n);
            let coeff = self.ring.display_element(v).to_string();
            let (neg, body) = if v.len() == 1 {
                match coeff.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, coeff),
                }
            } else {
                (false, format!("({coeff})"))
            };
            match (k == 0, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            match (body.as_str(), label.is_empty()) {
                (b, true) => f.write_str(b)?,
                ("1", false) => f.write_str(&label)?,
                (b, false) => write!(f, "{b}*{label}")?,
            }
        }
        Ok(())
    }
}

/// Koszul complex over a fixed ring.
#[derive(Clone, Debug)]
pub struct KoszulComplex<F: Field> {
    ring: Arc<GradedQuotientRing<F>>,
    subsets: Vec<Vec<ExteriorIndex>>,
}

impl<F: Field> KoszulComplex<F> {
    pub fn new(ring: Arc<GradedQuotientRing<F>>) -> Self {
        let n = ring.nvars();
        let subsets = (0..=n).map(|i| subset_order(n, i)).collect();
        KoszulComplex { ring, subsets }
    }

    pub fn ring(&self) -> &GradedQuotientRing<F> {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<GradedQuotientRing<F>> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.nvars()
    }

    pub fn desc(&self) -> &F::Desc {
        self.ring.desc()
    }

    pub fn subsets(&self, i: usize) -> &[ExteriorIndex] {
        self.subsets.get(i).map_or(&[], Vec::as_slice)
    }

    /// `dim K_{i,j} = C(n,i) · dim R_{j-i}`.
    pub fn piece_dim(&self, i: usize, j: usize) -> usize {
        if j < i {
            return 0;
        }
        self.subsets(i).len() * self.ring.dim(j - i)
    }

    /// Coordinates of the internal-degree-`j` part of `e` in `K_{i,j}`.
    pub fn to_coords(&self, e: &KoszulElement<F>, j: usize) -> SparseVec<F> {
        let i = e.hdeg();
        if j < i {
            return Vec::new();
        }
        let d = j - i;
        let dim = self.ring.dim(d);
        let off = self.ring.offset(d);
        let mut out = Vec::new();
        for (s, v) in e.terms() {
            let base = subset_rank(*s) * dim;
            for (g, c) in v {
                if self.ring.degree_of(*g) == d {
                    out.push((base + g - off, c.clone()));
                }
            }
        }
        out.sort_by_key(|t| t.0);
        out
    }

    pub fn from_coords(&self, i: usize, j: usize, v: &[(usize, F)]) -> KoszulElement<F> {
        let mut e = KoszulElement::zero(i);
        if v.is_empty() {
            return e;
        }
        let d = j - i;
        let dim = self.ring.dim(d);
        let off = self.ring.offset(d);
        for (k, c) in v {
            let s = self.subsets(i)[k / dim];
            e.terms
                .entry(s)
                .or_default()
                .push((off + k % dim, c.clone()));
        }
        e
    }

    /// Basis element of `K_{i,j}` at coordinate `k`: `(T_S, global ring index)`.
    pub fn basis_element(&self, i: usize, j: usize, k: usize) -> (ExteriorIndex, usize) {
        let d = j - i;
        let dim = self.ring.dim(d);
        (self.subsets(i)[k / dim], self.ring.offset(d) + k % dim)
    }

    /// `∂(g·T_S) = Σ_m (-1)^{m+1} x_{s_m} g · T_{S \ s_m}`.
    pub fn differential_of_basis(&self, s: ExteriorIndex, g: usize) -> Result<KoszulElement<F>> {
        let i = s.count_ones() as usize;
        let mut out = KoszulElement::zero(i.saturating_sub(1));
        let mut bits = s;
        let mut m = 0;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let coeff = self.ring.mul_var(v, g)?;
            let coeff = if m % 2 == 1 {
                sparse::neg(&coeff)
            } else {
                coeff
            };
            m += 1;
            if !coeff.is_empty() {
                out.add_scaled(
                    &F::one(self.desc()),
                    &KoszulElement::monomial(s & !(1 << v), coeff),
                );
            }
        }
        Ok(out)
    }

    pub fn differential(&self, e: &KoszulElement<F>) -> Result<KoszulElement<F>> {
        let mut out = KoszulElement::zero(e.hdeg().saturating_sub(1));
        for (s, v) in e.terms() {
            for (g, c) in v {
                out.add_scaled(c, &self.differential_of_basis(*s, *g)?);
            }
        }
        Ok(out)
    }

    /// Bilinear exterior product with ring coefficients multiplied in `R`.
    pub fn wedge(&self, u: &KoszulElement<F>, v: &KoszulElement<F>) -> Result<KoszulElement<F>> {
        let hdeg = u.hdeg() + v.hdeg();
        let mut acc: BTreeMap<ExteriorIndex, Vec<(usize, F)>> = BTreeMap::new();
        for (s, a) in u.terms() {
            for (t, b) in v.terms() {
                let Some(neg) = wedge_sign(*s, *t) else {
                    continue;
                };
                let entry = acc.entry(s | t).or_default();
                for (g, x) in a {
                    for (h, y) in b {
                        let c = x.mul(y);
                        let c = if neg { c.neg() } else { c };
                        for (k, p) in self.ring.mul_basis(*g, *h)? {
                            entry.push((*k, c.mul(p)));
                        }
                    }
                }
            }
        }
        let terms = acc
            .into_iter()
            .map(|(s, t)| (s, sparse::from_unsorted(t)))
            .filter(|(_, t)| !t.is_empty())
            .collect();
        Ok(KoszulElement { hdeg, terms })
    }

    /// Columns of `∂_i` restricted to internal degree `j`.
    pub fn differential_columns(&self, i: usize, j: usize) -> Result<Vec<SparseVec<F>>> {
        let dim = self.piece_dim(i, j);
        (0..dim)
            .map(|k| {
                let (s, g) = self.basis_element(i, j, k);
                Ok(self.to_coords(&self.differential_of_basis(s, g)?, j))
            })
            .collect()
    }

    /// Elimination of `∂_i` at internal degree `j`.
    pub fn differential_echelon(&self, i: usize, j: usize) -> Result<ColumnEchelon<F>> {
        let cols = self.differential_columns(i, j)?;
        Ok(ColumnEchelon::from_columns(
            self.piece_dim(i.saturating_sub(1), j),
            self.desc(),
            cols.iter(),
        ))
    }

    pub fn cycle_space(&self, i: usize, j: usize) -> Result<Subspace<F>> {
        if i == 0 {
            return Ok(Subspace::full(self.piece_dim(0, j), self.desc()));
        }
        Ok(self.differential_echelon(i, j)?.kernel())
    }

    pub fn boundary_space(&self, i: usize, j: usize) -> Result<Subspace<F>> {
        if i >= self.n() {
            return Ok(Subspace::zero(self.piece_dim(i, j)));
        }
        Ok(self.differential_echelon(i + 1, j)?.image())
    }

    /// Deterministic preimage under `∂_{i+1}` of a homogeneous boundary in `K_i`.
    pub fn lift_boundary(&self, target: &KoszulElement<F>) -> Result<KoszulElement<F>> {
        let i = target.hdeg();
        let mut out = KoszulElement::zero(i + 1);
        for j in target.internal_degrees(&self.ring) {
            let rhs = self.to_coords(target, j);
            if i >= self.n() {
                return Err(Error::NotABoundary);
            }
            let x = self
                .differential_echelon(i + 1, j)?
                .solve(&rhs)
                .ok_or(Error::NotABoundary)?;
            out.add_scaled(&F::one(self.desc()), &self.from_coords(i + 1, j, &x));
        }
        Ok(out)
    }
}
