//! Degree-wise model of `R = k[x_1..x_n]/I` for a homogeneous ideal `I`.
//!
//! Each graded piece `I_j` is the row span of `x_v·I_{j-1}` together with the
//! generators of degree `j`, kept in reduced echelon form over the monomials
//! of degree `j` ordered lexicographically descending. The non-pivot
//! monomials form the basis of `R_j`. Ring elements are sparse vectors over
//! the concatenation of these bases ("global" indices, ascending degree).

use std::collections::HashMap;
use std::fmt;

use super::monomial::Monomial;
use super::poly::{write_term, Polynomial};
use crate::error::{Error, Result};
use crate::exactlin::{sparse, Echelon, Field, SparseVec, Subspace};

/// Element of `R` as coordinates over the global monomial basis.
pub type RingElement<F> = SparseVec<F>;

/// Degree search limit when no cutoff is supplied.
pub const DEFAULT_SEARCH_LIMIT: usize = 32;

/// Extra degrees kept past the socle of an artinian ring.
pub const ARTINIAN_MARGIN: usize = 5;

#[derive(Clone, Debug)]
pub struct DegreePiece<F: Field> {
    pub monomials: Vec<Monomial>,
    pub ideal: Subspace<F>,
    /// Indices (into `monomials`) of the normal-form basis of `R_j`.
    pub basis: Vec<usize>,
    /// Per monomial: coordinates of its normal form in the local basis.
    normal_forms: Vec<SparseVec<F>>,
}

impl<F: Field> DegreePiece<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug)]
pub struct GradedQuotientRing<F: Field> {
    desc: F::Desc,
    vars: Vec<String>,
    generators: Vec<Polynomial<F>>,
    pieces: Vec<DegreePiece<F>>,
    monomial_index: Vec<HashMap<Monomial, usize>>,
    artinian: bool,
    socle: Option<usize>,
    cutoff: usize,
    offsets: Vec<usize>,
    degree_of: Vec<usize>,
    basis_len: usize,
    /// `products[g*len + h]` = normal form of basis element g times h, for
    /// pairs whose degree sum is at most the cutoff.
    products: Vec<RingElement<F>>,
}

impl<F: Field> GradedQuotientRing<F> {
    /// Builds the quotient ring. With `cutoff = None` the ring must be
    /// artinian (detected below [`DEFAULT_SEARCH_LIMIT`]). Artinian rings are
    /// modeled through degree `socle + ARTINIAN_MARGIN` regardless of the
    /// requested cutoff.
    pub fn new(
        vars: Vec<String>,
        generators: Vec<Polynomial<F>>,
        cutoff: Option<usize>,
        desc: &F::Desc,
    ) -> Result<Self> {
        let n = vars.len();
        if n == 0 {
            return Err(Error::Input("at least one variable is required".into()));
        }
        for (k, g) in generators.iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::Input(format!(
                    "generator {} has the wrong number of variables",
                    k + 1
                )));
            }
            if g.is_zero() {
                return Err(Error::Input(format!("generator {} is zero", k + 1)));
            }
            match g.homogeneous_degree() {
                None => {
                    return Err(Error::Input(format!(
                        "generator {} is not homogeneous",
                        k + 1
                    )))
                }
                Some(d) if d < 2 => {
                    return Err(Error::Input(format!(
                        "generator {} has degree {d} < 2",
                        k + 1
                    )));
                }
                Some(_) => {}
            }
        }
        let limit = cutoff.unwrap_or(DEFAULT_SEARCH_LIMIT);
        let mut pieces: Vec<DegreePiece<F>> = Vec::new();
        let mut monomial_index: Vec<HashMap<Monomial, usize>> = Vec::new();
        let mut socle = None;
        for j in 0..=limit {
            let monomials = Monomial::of_degree(n, j);
            let index: HashMap<Monomial, usize> = monomials
                .iter()
                .cloned()
                .enumerate()
                .map(|(k, m)| (m, k))
                .collect();
            let mut ech = Echelon::new(monomials.len(), desc);
            if j > 0 {
                let prev = &pieces[j - 1];
                for row in prev.ideal.basis() {
                    for v in 0..n {
                        let lifted = sparse::from_unsorted(
                            row.iter()
                                .map(|(k, c)| (index[&prev.monomials[*k].mul_var(v)], c.clone()))
                                .collect(),
                        );
                        ech.insert(&lifted);
                    }
                }
            }
            for g in generators
                .iter()
                .filter(|g| g.homogeneous_degree() == Some(j))
            {
                let v = sparse::from_unsorted(
                    g.terms()
                        .iter()
                        .map(|(m, c)| (index[m], c.clone()))
                        .collect(),
                );
                ech.insert(&v);
            }
            let ideal = ech.to_subspace();
            let piece = Self::piece(monomials, ideal, desc);
            let dim = piece.dim();
            pieces.push(piece);
            monomial_index.push(index);
            if dim == 0 {
                socle = Some(j - 1);
                break;
            }
        }
        let artinian = socle.is_some();
        let cutoff = match (socle, cutoff) {
            (Some(s), _) => s + ARTINIAN_MARGIN,
            (None, Some(d)) => d,
            (None, None) => {
                return Err(Error::Input(format!(
                    "no vanishing graded piece up to degree {DEFAULT_SEARCH_LIMIT}; the ring looks non-artinian, supply a cutoff"
                )))
            }
        };
        let mut offsets = Vec::new();
        let mut degree_of = Vec::new();
        for (j, p) in pieces.iter().enumerate() {
            offsets.push(degree_of.len());
            degree_of.extend(std::iter::repeat_n(j, p.dim()));
        }
        let basis_len = degree_of.len();
        let mut ring = GradedQuotientRing {
            desc: desc.clone(),
            vars,
            generators,
            pieces,
            monomial_index,
            artinian,
            socle,
            cutoff,
            offsets,
            degree_of,
            basis_len,
            products: Vec::new(),
        };
        ring.products = ring.product_table();
        Ok(ring)
    }

    fn piece(monomials: Vec<Monomial>, ideal: Subspace<F>, desc: &F::Desc) -> DegreePiece<F> {
        let pivot_row: HashMap<usize, usize> = ideal
            .pivots()
            .iter()
            .enumerate()
            .map(|(r, p)| (*p, r))
            .collect();
        let basis: Vec<usize> = (0..monomials.len())
            .filter(|k| !pivot_row.contains_key(k))
            .collect();
        let local: HashMap<usize, usize> = basis.iter().enumerate().map(|(b, k)| (*k, b)).collect();
        let normal_forms = (0..monomials.len())
            .map(|k| match pivot_row.get(&k) {
                None => vec![(local[&k], F::one(desc))],
                Some(&r) => ideal.basis()[r]
                    .iter()
                    .filter(|(c, _)| *c != k)
                    .map(|(c, v)| (local[c], v.neg()))
                    .collect(),
            })
            .collect();
        DegreePiece {
            monomials,
            ideal,
            basis,
            normal_forms,
        }
    }

    fn product_table(&self) -> Vec<RingElement<F>> {
        let len = self.basis_len;
        let mut table = vec![Vec::new(); len * len];
        for g in 0..len {
            for h in g..len {
                let d = self.degree_of[g] + self.degree_of[h];
                if d >= self.pieces.len() {
                    continue;
                }
                let m = self.basis_monomial(g).mul(self.basis_monomial(h));
                let nf = self.monomial_normal_form(&m);
                table[g * len + h] = nf.clone();
                table[h * len + g] = nf;
            }
        }
        table
    }

    pub fn desc(&self) -> &F::Desc {
        &self.desc
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn is_artinian(&self) -> bool {
        self.artinian
    }

    pub fn socle_degree(&self) -> Option<usize> {
        self.socle
    }

    /// Largest internal degree modeled.
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Largest degree with a stored graded piece.
    pub fn top_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn hilbert_function(&self, j: usize) -> Result<usize> {
        if j > self.cutoff {
            return Err(Error::DegreeOverflow {
                degree: j,
                cutoff: self.cutoff,
            });
        }
        Ok(self.dim(j))
    }

    /// `dim R_j` for `j` up to the cutoff (zero past the socle).
    pub fn dim(&self, j: usize) -> usize {
        self.pieces.get(j).map_or(0, DegreePiece::dim)
    }

    pub fn hilbert_series(&self) -> Vec<usize> {
        (0..=self.cutoff).map(|j| self.dim(j)).collect()
    }

    pub fn piece_data(&self, j: usize) -> Option<&DegreePiece<F>> {
        self.pieces.get(j)
    }

    pub fn basis_len(&self) -> usize {
        self.basis_len
    }

    /// First global index of degree `j` (equal to `basis_len` past the top).
    pub fn offset(&self, j: usize) -> usize {
        self.offsets.get(j).copied().unwrap_or(self.basis_len)
    }

    pub fn degree_of(&self, g: usize) -> usize {
        self.degree_of[g]
    }

    pub fn basis_monomial(&self, g: usize) -> &Monomial {
        let d = self.degree_of[g];
        let p = &self.pieces[d];
        &p.monomials[p.basis[g - self.offsets[d]]]
    }

    pub fn one(&self) -> RingElement<F> {
        vec![(0, F::one(&self.desc))]
    }

    /// Global index of the variable `x_v`, if it survives in `R_1`.
    pub fn var_index(&self, v: usize) -> Option<usize> {
        let m = Monomial::var(self.nvars(), v);
        let p = self.pieces.get(1)?;
        let k = self.monomial_index[1][&m];
        p.basis
            .iter()
            .position(|&b| b == k)
            .map(|b| self.offsets[1] + b)
    }

    fn check_degree(&self, d: usize) -> Result<bool> {
        if d < self.pieces.len() {
            Ok(true)
        } else if self.artinian {
            Ok(false)
        } else {
            Err(Error::DegreeOverflow {
                degree: d,
                cutoff: self.cutoff,
            })
        }
    }

    /// Normal form of a monomial as a ring element (global coordinates).
    pub fn monomial_normal_form(&self, m: &Monomial) -> RingElement<F> {
        let d = m.degree();
        let Some(p) = self.pieces.get(d) else {
            return Vec::new();
        };
        let k = self.monomial_index[d][m];
        p.normal_forms[k]
            .iter()
            .map(|(b, c)| (self.offsets[d] + b, c.clone()))
            .collect()
    }

    pub fn normal_form(&self, poly: &Polynomial<F>) -> Result<RingElement<F>> {
        let mut out = Vec::new();
        for (m, c) in poly.terms() {
            if !self.check_degree(m.degree())? {
                continue;
            }
            out = sparse::axpy(&out, c, &self.monomial_normal_form(m));
        }
        Ok(out)
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, g: usize, h: usize) -> Result<&RingElement<F>> {
        let d = self.degree_of[g] + self.degree_of[h];
        self.check_degree(d)?;
        Ok(&self.products[g * self.basis_len + h])
    }

    pub fn multiply(&self, u: &RingElement<F>, v: &RingElement<F>) -> Result<RingElement<F>> {
        let mut terms = Vec::new();
        for (g, a) in u {
            for (h, b) in v {
                let c = a.mul(b);
                for (k, p) in self.mul_basis(*g, *h)? {
                    terms.push((*k, c.mul(p)));
                }
            }
        }
        Ok(sparse::from_unsorted(terms))
    }

    /// `x_v · g` for a basis element `g`.
    pub fn mul_var(&self, v: usize, g: usize) -> Result<RingElement<F>> {
        let d = self.degree_of[g] + 1;
        if !self.check_degree(d)? {
            return Ok(Vec::new());
        }
        Ok(self.monomial_normal_form(&self.basis_monomial(g).mul_var(v)))
    }

    /// Splits an element into homogeneous components, ascending degree.
    pub fn components(&self, u: &RingElement<F>) -> Vec<(usize, RingElement<F>)> {
        let mut out: Vec<(usize, RingElement<F>)> = Vec::new();
        for (g, c) in u {
            let d = self.degree_of[*g];
            match out.last_mut() {
                Some((e, v)) if *e == d => v.push((*g, c.clone())),
                _ => out.push((d, vec![(*g, c.clone())])),
            }
        }
        out
    }

    pub fn display_element<'a>(&'a self, u: &'a RingElement<F>) -> ElementDisplay<'a, F> {
        ElementDisplay { ring: self, u }
    }
}

pub struct ElementDisplay<'a, F: Field> {
    ring: &'a GradedQuotientRing<F>,
    u: &'a RingElement<F>,
}

impl<F: Field> fmt::Display for ElementDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u.is_empty() {
            return f.write_str("0");
        }
        for (k, (g, c)) in self.u.iter().enumerate() {
            let m = self.ring.basis_monomial(*g);
            write_term(
                f,
                k == 0,
                &c.to_string(),
                &m.display(&self.ring.vars).to_string(),
                m.degree() == 0,
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rational;
    use crate::polyring::parse_polynomial;

    pub(crate) fn ring(
        vars: &[&str],
        gens: &[&str],
        cutoff: Option<usize>,
    ) -> Result<GradedQuotientRing<Rational>> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let gens = gens
            .iter()
            .map(|g| parse_polynomial(g, &vars, &()))
            .collect::<Result<Vec<_>>>()?;
        GradedQuotientRing::new(vars, gens, cutoff, &())
    }

    fn flagship() -> GradedQuotientRing<Rational> {
        ring(
            &["x", "y", "z", "w"],
            &[
                "x^3",
                "y^3",
                "z^3 - x*y^2",
                "x^2*z^2",
                "x*y*z^2",
                "y^2*w",
                "w^2",
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn flagship_hilbert_function() {
        let r = flagship();
        assert!(r.is_artinian());
        assert_eq!(r.socle_degree(), Some(5));
        let dims: Vec<usize> = (0..=6).map(|j| r.hilbert_function(j).unwrap()).collect();
        assert_eq!(dims, vec![1, 4, 9, 12, 9, 2, 0]);
        assert_eq!(r.cutoff(), 10);
        assert_eq!(r.hilbert_function(0).unwrap(), 1);
    }

    #[test]
    fn binomial_relation_normal_form() {
        let r = flagship();
        let z3 = parse_polynomial("z^3", r.vars(), &()).unwrap();
        let xy2 = parse_polynomial("x*y^2", r.vars(), &()).unwrap();
        assert_eq!(r.normal_form(&z3).unwrap(), r.normal_form(&xy2).unwrap());
        let nf = r.normal_form(&xy2).unwrap();
        assert_eq!(r.display_element(&nf).to_string(), "z^3");
    }

    #[test]
    fn multiplication_basics() {
        let r = flagship();
        let x = r
            .normal_form(&parse_polynomial("x", r.vars(), &()).unwrap())
            .unwrap();
        let u = r
            .normal_form(&parse_polynomial("y*z - 2*w", r.vars(), &()).unwrap())
            .unwrap();
        assert_eq!(r.multiply(&r.one(), &u).unwrap(), u);
        assert_eq!(r.multiply(&x, &u).unwrap(), r.multiply(&u, &x).unwrap());
        let x2 = r.multiply(&x, &x).unwrap();
        let x3 = r.multiply(&x2, &x).unwrap();
        assert!(x3.is_empty());

        let s = ring(&["x"], &["x^2"], None).unwrap();
        assert_eq!(s.hilbert_series()[..3], [1, 1, 0]);
        let x = s
            .normal_form(&parse_polynomial("x", s.vars(), &()).unwrap())
            .unwrap();
        assert!(s.multiply(&x, &x).unwrap().is_empty());
    }

    #[test]
    fn input_validation() {
        assert!(matches!(
            ring(&["x", "y"], &["x^2 + y^3"], None),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            ring(&["x", "y"], &["x"], None),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            ring(&["x", "y"], &["x^2 - x^2"], None),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            ring(&["x", "y"], &["x^2"], None),
            Err(Error::Input(_))
        ));
        let r = ring(&["x", "y"], &["x^2"], Some(4)).unwrap();
        assert!(!r.is_artinian());
        assert_eq!(r.hilbert_series(), vec![1, 2, 2, 2, 2]);
        let y = r.var_index(1).unwrap();
        let y4 = r.monomial_normal_form(&Monomial::from_exponents(vec![0, 4]));
        assert!(matches!(
            r.multiply(&y4, &vec![(y, Rational::from_integer(1))]),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn golod_example_dims() {
        let r = ring(&["x", "y"], &["x^2", "x*y", "y^2"], None).unwrap();
        assert_eq!(r.hilbert_function(1).unwrap(), 2);
        assert_eq!(r.socle_degree(), Some(1));
    }
}
