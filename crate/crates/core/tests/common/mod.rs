#![allow(dead_code)]

use std::sync::Arc;

use koszulres_core::exactlin::Fp;
use koszulres_core::koszul::KoszulElement;
use koszulres_core::polyring::parse_polynomial;
use koszulres_core::{corpus, Analysis, Field, GradedQuotientRing, Rational};

pub fn corpus_ring(name: &str) -> Arc<GradedQuotientRing<Rational>> {
    let def = corpus::definition(name).expect("corpus entry");
    Arc::new(def.build::<Rational>(&(), None).expect("valid ring"))
}

pub fn corpus_ring_mod(name: &str, p: u32) -> Arc<GradedQuotientRing<Fp>> {
    let def = corpus::definition(name).expect("corpus entry");
    Arc::new(def.build::<Fp>(&p, None).expect("valid ring"))
}

pub fn analyze(name: &str) -> Analysis<Rational> {
    let depth = corpus::definition(name).expect("corpus entry").depth;
    Analysis::run(corpus_ring(name), depth).expect("analysis")
}

pub fn ring(
    vars: &[&str],
    gens: &[&str],
    cutoff: Option<usize>,
) -> Arc<GradedQuotientRing<Rational>> {
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let gens = gens
        .iter()
        .map(|g| parse_polynomial(g, &vars, &()).expect("polynomial"))
        .collect();
    Arc::new(GradedQuotientRing::new(vars, gens, cutoff, &()).expect("valid ring"))
}

/// `coeff · T_{indices}` with 1-based exterior indices.
pub fn koszul<F: Field>(
    ring: &GradedQuotientRing<F>,
    coeff: &str,
    indices: &[u32],
) -> KoszulElement<F> {
    let mask = indices.iter().fold(0u32, |m, &i| m | 1 << (i - 1));
    let c = if coeff == "1" {
        ring.one()
    } else {
        let poly = parse_polynomial::<F>(coeff, ring.vars(), ring.desc()).expect("polynomial");
        ring.normal_form(&poly).expect("normal form")
    };
    KoszulElement::monomial(mask, c)
}

/// Coefficients of a product of `(1 + c t)^e` factors through `t^5`.
pub fn series_product(factors: &[(i64, u32)]) -> [i64; 6] {
    let mut s = [1i64, 0, 0, 0, 0, 0];
    for &(c, e) in factors {
        for _ in 0..e {
            for k in (1..6).rev() {
                s[k] += c * s[k - 1];
            }
        }
    }
    s
}
