use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::monomial::{print_order, Monomial};
use crate::error::{Error, Result};
use crate::exactlin::Field;

/// Polynomial with nonzero coefficients keyed by monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<F: Field> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        let entry = self.terms.remove(&m);
        let v = match entry {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    /// Common degree of all terms, `None` for the zero polynomial or an
    /// inhomogeneous one.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> PolyDisplay<'a, F> {
        PolyDisplay { p: self, vars }
    }
}

pub struct PolyDisplay<'a, F: Field> {
    p: &'a Polynomial<F>,
    vars: &'a [String],
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&Monomial, &F)> = self.p.terms.iter().collect();
        terms.sort_by(|a, b| print_order(a.0, b.0));
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            write_term(
                f,
                k == 0,
                &c.to_string(),
                &m.display(self.vars).to_string(),
                m.degree() == 0,
            )?;
        }
        Ok(())
    }
}

/// Writes one signed term `c*m` of a sum.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &str,
    mono: &str,
    constant: bool,
) -> fmt::Result {
    let (neg, mag) = match coeff.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, coeff),
    };
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    if constant {
        f.write_str(mag)
    } else if mag == "1" {
        f.write_str(mono)
    } else {
        write!(f, "{mag}*{mono}")
    }
}

// ---------------------------------------------------------------------------
// Parser

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.text[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::PolyParse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.text[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }
}

/// Parses `text` over the given variable names.
///
/// Grammar: an optional leading sign, then terms joined by `+`/`-`; a term is
/// an optional `coeff*` followed by `*`-separated factors `var` or `var^k`;
/// a coefficient is `int` or `int/nat`. Whitespace is ignored and variable
/// names are matched longest first.
pub fn parse_polynomial<F: Field>(
    text: &str,
    vars: &[String],
    desc: &F::Desc,
) -> Result<Polynomial<F>> {
    let mut order: Vec<usize> = (0..vars.len()).collect();
    order.sort_by(|&a, &b| vars[b].len().cmp(&vars[a].len()).then(a.cmp(&b)));
    let mut cur = Cursor { text, pos: 0 };
    let mut poly = Polynomial::zero(vars.len());
    if cur.peek().is_none() {
        return Err(cur.err("empty polynomial"));
    }
    let mut negative = false;
    match cur.peek() {
        Some('-') => {
            negative = true;
            cur.bump();
        }
        Some('+') => cur.bump(),
        _ => {}
    }
    loop {
        let (m, c) = parse_term::<F>(&mut cur, vars, &order, desc)?;
        poly.add_term(m, if negative { c.neg() } else { c });
        match cur.peek() {
            None => break,
            Some('+') => negative = false,
            Some('-') => negative = true,
            Some(ch) => return Err(cur.err(format!("unexpected `{ch}`"))),
        }
        cur.bump();
    }
    Ok(poly)
}

fn parse_term<F: Field>(
    cur: &mut Cursor<'_>,
    vars: &[String],
    order: &[usize],
    desc: &F::Desc,
) -> Result<(Monomial, F)> {
    let mut coeff = F::one(desc);
    if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        let start = cur.pos;
        let num: BigInt = cur
            .digits()
            .unwrap_or("0")
            .parse()
            .map_err(|_| cur.err("bad integer"))?;
        let mut den = BigInt::from(1);
        if cur.peek() == Some('/') {
            cur.bump();
            den = cur
                .digits()
                .ok_or_else(|| cur.err("expected denominator"))?
                .parse()
                .map_err(|_| cur.err("bad denominator"))?;
        }
        coeff = F::from_ratio(&num, &den, desc).ok_or(Error::PolyParse {
            offset: start,
            message: "coefficient denominator vanishes in the field".into(),
        })?;
        if cur.peek() != Some('*') {
            return Err(cur.err("expected `*` after coefficient"));
        }
        cur.bump();
    }
    let mut exps = vec![0u32; vars.len()];
    loop {
        cur.skip_ws();
        let rest = &cur.text[cur.pos..];
        let v = order
            .iter()
            .copied()
            .find(|&v| rest.starts_with(vars[v].as_str()))
            .ok_or_else(|| cur.err("expected a variable"))?;
        cur.pos += vars[v].len();
        let mut e = 1u32;
        if cur.peek() == Some('^') {
            cur.bump();
            e = cur
                .digits()
                .ok_or_else(|| cur.err("malformed exponent"))?
                .parse()
                .map_err(|_| cur.err("exponent out of range"))?;
        }
        exps[v] = exps[v]
            .checked_add(e)
            .ok_or_else(|| cur.err("exponent out of range"))?;
        if cur.peek() == Some('*') {
            cur.bump();
        } else {
            break;
        }
    }
    Ok((Monomial::from_exponents(exps), coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Fp, Rational};

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(&BigInt::from(n), &BigInt::from(d), &()).unwrap()
    }

    #[test]
    fn binomial_generator() {
        let v = vars(&["x", "y", "z", "w"]);
        let p: Polynomial<Rational> = parse_polynomial("z^3 - x*y^2", &v, &()).unwrap();
        assert_eq!(p.terms().len(), 2);
        assert_eq!(
            p.terms()[&Monomial::from_exponents(vec![0, 0, 3, 0])],
            q(1, 1)
        );
        assert_eq!(
            p.terms()[&Monomial::from_exponents(vec![1, 2, 0, 0])],
            q(-1, 1)
        );
        assert_eq!(p.homogeneous_degree(), Some(3));
        assert_eq!(p.display(&v).to_string(), "-x*y^2 + z^3");
    }

    #[test]
    fn single_variable_and_fractions() {
        let v = vars(&["x", "y"]);
        let p: Polynomial<Rational> = parse_polynomial("x", &v, &()).unwrap();
        assert_eq!(p.terms()[&Monomial::var(2, 0)], q(1, 1));
        let p: Polynomial<Rational> = parse_polynomial("3/2*x*y - y^2", &v, &()).unwrap();
        assert_eq!(p.terms()[&Monomial::from_exponents(vec![1, 1])], q(3, 2));
        assert_eq!(p.terms()[&Monomial::from_exponents(vec![0, 2])], q(-1, 1));
    }

    #[test]
    fn longest_variable_name_wins() {
        let v = vars(&["x1", "x10"]);
        let p: Polynomial<Rational> = parse_polynomial("x10*x1", &v, &()).unwrap();
        assert_eq!(p.terms().keys().next().unwrap().exponents(), &[1, 1]);
    }

    #[test]
    fn errors_carry_offsets() {
        let v = vars(&["x", "y"]);
        let e = parse_polynomial::<Rational>("x + q", &v, &()).unwrap_err();
        assert_eq!(
            e,
            Error::PolyParse {
                offset: 4,
                message: "expected a variable".into()
            }
        );
        assert!(matches!(
            parse_polynomial::<Rational>("x^", &v, &()),
            Err(Error::PolyParse { .. })
        ));
        assert!(matches!(
            parse_polynomial::<Rational>("  ", &v, &()),
            Err(Error::PolyParse { .. })
        ));
        assert!(parse_polynomial::<Fp>("1/7*x", &v, &7).is_err());
    }

    #[test]
    fn cancellation_gives_zero() {
        let v = vars(&["x"]);
        let p: Polynomial<Rational> = parse_polynomial("x^2 - x^2", &v, &()).unwrap();
        assert!(p.is_zero());
    }
}
