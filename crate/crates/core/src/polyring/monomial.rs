use std::cmp::Ordering;
use std::fmt;

/// Exponent vector. Ordered so that larger monomials in the lexicographic
/// order (first variable most significant) compare greater.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, v: usize) -> Self {
        let mut e = vec![0; n];
        e[v] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, v: usize) -> Monomial {
        let mut e = self.0.clone();
        e[v] += 1;
        Monomial(e)
    }

    /// All monomials of degree `d` in `n` variables, lexicographically
    /// descending (`x^d` first).
    pub fn of_degree(n: usize, d: usize) -> Vec<Monomial> {
        fn rec(n: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos + 1 == n {
                cur[pos] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                rec(n, pos + 1, left - e, cur, out);
            }
            cur[pos] = 0;
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(n, 0, d as u32, &mut vec![0; n], &mut out);
        out
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, vars }
    }
}

/// Graded reverse comparison used to sort terms for printing: higher degree
/// first, then lexicographically larger first.
pub fn print_order(a: &Monomial, b: &Monomial) -> Ordering {
    b.degree().cmp(&a.degree()).then_with(|| b.cmp(a))
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    vars: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, &e) in self.m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&self.vars[v])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
