//! Triple Massey products `⟨A₁, A₁, A₁⟩ ⊆ A₄` and the constrained span.

use std::collections::HashMap;

use super::chart::Graded;
use super::structure::HomologyAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{ColumnEchelon, Field, SparseVec, Subspace};
use crate::koszul::KoszulElement;

/// Degree-four data: the span of constrained Massey representatives and
/// the rank `a`.
#[derive(Clone, Debug)]
pub struct MasseySpan<F: Field> {
    /// Dimension of the solution space of the linear constraint.
    pub constraint_dim: usize,
    /// Span of the classes of all constrained representatives.
    pub span: Subspace<F>,
    /// `A₁·A₃ + A₂·A₂ + span`.
    pub accumulated: Subspace<F>,
    pub a: usize,
    /// Cycles whose classes complete `A₁·A₃ + A₂·A₂` to `accumulated`.
    pub generators: Vec<Graded<F>>,
    /// Basis triples `(x, y, z)` of `z¹` with vanishing pairwise products.
    pub triples_checked: usize,
    /// Rank of `A₁·A₃ + A₂·A₂ + (basis-triple Massey classes)`.
    pub triple_rank: usize,
    /// Whether basis-triple Massey products, together with the products,
    /// already generate `accumulated`.
    pub exhibited_by_triples: bool,
    /// Whether every basis-triple Massey class lies in `accumulated`.
    pub triples_within_span: bool,
    /// Basis triples whose classes are independent modulo the products.
    pub witnesses: Vec<(usize, usize, usize)>,
}

impl<F: Field> Default for MasseySpan<F> {
    fn default() -> Self {
        MasseySpan {
            constraint_dim: 0,
            span: Subspace::zero(0),
            accumulated: Subspace::zero(0),
            a: 0,
            generators: Vec::new(),
            triples_checked: 0,
            triple_rank: 0,
            exhibited_by_triples: true,
            triples_within_span: true,
            witnesses: Vec::new(),
        }
    }
}

impl<F: Field> MasseySpan<F> {
    /// Rank of the span modulo `A₁·A₃ + A₂·A₂`.
    pub fn rank_mod_products(&self, alg: &HomologyAlgebra<F>) -> usize {
        self.a - products_sum(alg).rank()
    }
}

fn products_sum<F: Field>(alg: &HomologyAlgebra<F>) -> Subspace<F> {
    let dim = alg.a(4);
    Subspace::span(
        dim,
        alg.desc(),
        alg.p13.span.basis().iter().chain(alg.p22.span.basis()),
    )
}

/// A single triple Massey product.
#[derive(Clone, Debug)]
pub struct MasseyTriple<F: Field> {
    pub representative: KoszulElement<F>,
    pub class: SparseVec<F>,
    /// `A₃·[z] + [x]·A₃`.
    pub indeterminacy: Subspace<F>,
}

/// `⟨[x],[y],[z]⟩` for cycles of homological degree one, using the
/// deterministic lifts of `x∧y` and `y∧z`.
pub fn massey_triple_elements<F: Field>(
    alg: &HomologyAlgebra<F>,
    x: &KoszulElement<F>,
    y: &KoszulElement<F>,
    z: &KoszulElement<F>,
) -> Result<MasseyTriple<F>> {
    let k = alg.koszul();
    for e in [x, y, z] {
        if e.hdeg() != 1 || !k.differential(e)?.is_zero() {
            return Err(Error::NotACycle);
        }
    }
    let xy = k.wedge(x, y)?;
    let yz = k.wedge(y, z)?;
    let lift = |w: &KoszulElement<F>, what: &str| {
        alg.chart(2).lift(k, w).map_err(|e| match e {
            Error::NotABoundary => Error::ProductsNotZero(format!("{what} is not zero in A₂")),
            other => other,
        })
    };
    let pi_xy = lift(&xy, "[x][y]")?;
    let pi_yz = lift(&yz, "[y][z]")?;
    massey_triple_with_lifts(alg, x, z, &pi_xy, &pi_yz)
}

/// Massey representative for explicitly chosen lifts `π_xy`, `π_yz`.
pub fn massey_triple_with_lifts<F: Field>(
    alg: &HomologyAlgebra<F>,
    x: &KoszulElement<F>,
    z: &KoszulElement<F>,
    pi_xy: &KoszulElement<F>,
    pi_yz: &KoszulElement<F>,
) -> Result<MasseyTriple<F>> {
    let k = alg.koszul();
    let mut rep = k.wedge(pi_xy, z)?;
    rep.add_scaled(&F::one(alg.desc()), &k.wedge(x, pi_yz)?);
    let class = alg.class_of(&rep)?;
    let mut gens = Vec::new();
    for r in alg.chart(3).reps() {
        gens.push(alg.chart(4).class_of_cycle(k, &k.wedge(&r.element, z)?)?);
        gens.push(alg.chart(4).class_of_cycle(k, &k.wedge(x, &r.element)?)?);
    }
    let indeterminacy = Subspace::span(alg.a(4), alg.desc(), gens.iter());
    Ok(MasseyTriple {
        representative: rep,
        class,
        indeterminacy,
    })
}

/// `⟨[x],[y],[z]⟩` for classes given by coordinates in `A₁`.
pub fn massey_triple<F: Field>(
    alg: &HomologyAlgebra<F>,
    x: &[(usize, F)],
    y: &[(usize, F)],
    z: &[(usize, F)],
) -> Result<MasseyTriple<F>> {
    massey_triple_elements(
        alg,
        &alg.element_of(1, x),
        &alg.element_of(1, y),
        &alg.element_of(1, z),
    )
}

/// Solves the constraint `Σ_s [p̃¹_{si}]∧[p¹_s] = 0` and collects the classes
/// of `Σ_s π̃³_s∧p¹_s + Σ_i z¹_i∧σ_i` with `∂σ_i = Σ_s p̃¹_{si}∧p¹_s`.
///
/// `constraint` is the elimination of the columns produced by
/// `HomologyAlgebra::constraint_columns`.
pub(crate) fn massey_span<F: Field>(
    alg: &HomologyAlgebra<F>,
    constraint: &ColumnEchelon<F>,
) -> Result<MasseySpan<F>> {
    let k = alg.koszul();
    let desc = alg.desc();
    let a1 = alg.a(1);
    let a4 = alg.a(4);
    let products = products_sum(alg);
    let solutions = constraint.kernel();
    let z1 = alg.z1();

    let mut pair_cache: HashMap<(usize, usize), KoszulElement<F>> = HashMap::new();
    let mut pair = |i: usize, j: usize| -> Result<KoszulElement<F>> {
        if let Some(e) = pair_cache.get(&(i, j)) {
            return Ok(e.clone());
        }
        let e = k.wedge(&z1[i].element, &z1[j].element)?;
        pair_cache.insert((i, j), e.clone());
        Ok(e)
    };

    let mut classes = Vec::new();
    let mut cycles = Vec::new();
    if a4 > 0 {
        for c in solutions.basis() {
            let mut cycle = KoszulElement::zero(4);
            let mut sigma_targets = vec![KoszulElement::zero(2); a1];
            let mut degree = 0;
            for (t, coef) in c {
                let (s, j) = (t / a1, t % a1);
                let fam = &alg.p1[s];
                degree = fam.degree + z1[j].degree;
                cycle.add_scaled(coef, &k.wedge(&alg.pi3[s].element, &z1[j].element)?);
                for (u, v) in &fam.vector {
                    let (i, kk) = (u / a1, u % a1);
                    sigma_targets[i].add_scaled(&coef.mul(v), &pair(kk, j)?);
                }
            }
            for (i, target) in sigma_targets.iter().enumerate() {
                if target.is_zero() {
                    continue;
                }
                let sigma = alg
                    .chart(2)
                    .lift(k, target)
                    .map_err(|_| Error::Internal("constrained sum is not a boundary".into()))?;
                cycle.add_scaled(&F::one(desc), &k.wedge(&z1[i].element, &sigma)?);
            }
            if !k.differential(&cycle)?.is_zero() {
                return Err(Error::Internal(
                    "constrained Massey representative is not a cycle".into(),
                ));
            }
            classes.push(alg.chart(4).class_of_cycle(k, &cycle)?);
            cycles.push(Graded {
                element: cycle,
                degree,
            });
        }
    }
    let span = Subspace::span(a4, desc, classes.iter());

    let mut acc = crate::exactlin::Echelon::new(a4, desc);
    for v in products.basis() {
        acc.insert(v);
    }
    let mut generators = Vec::new();
    for (class, cyc) in classes.iter().zip(cycles) {
        if let crate::exactlin::Insert::Independent(_) = acc.insert(class) {
            generators.push(cyc);
        }
    }
    let accumulated = acc.to_subspace();
    let a = accumulated.rank();

    // Basis triples.
    let mut lifts: HashMap<(usize, usize), Option<KoszulElement<F>>> = HashMap::new();
    let mut lift_of = |i: usize, j: usize| -> Result<Option<KoszulElement<F>>> {
        if let Some(l) = lifts.get(&(i, j)) {
            return Ok(l.clone());
        }
        let l = if alg.p11.table[i][j].is_empty() {
            Some(
                alg.chart(2)
                    .lift(k, &k.wedge(&z1[i].element, &z1[j].element)?)?,
            )
        } else {
            None
        };
        lifts.insert((i, j), l.clone());
        Ok(l)
    };
    let mut triple_acc = crate::exactlin::Echelon::new(a4, desc);
    for v in products.basis() {
        triple_acc.insert(v);
    }
    let mut triples_checked = 0;
    let mut triples_within_span = true;
    let mut witnesses = Vec::new();
    if a4 > 0 {
        for x in 0..a1 {
            for y in 0..a1 {
                let Some(pi_xy) = lift_of(x, y)? else {
                    continue;
                };
                for z in 0..a1 {
                    let Some(pi_yz) = lift_of(y, z)? else {
                        continue;
                    };
                    triples_checked += 1;
                    let mut rep = k.wedge(&pi_xy, &z1[z].element)?;
                    rep.add_scaled(&F::one(desc), &k.wedge(&z1[x].element, &pi_yz)?);
                    let class = alg.chart(4).class_of_cycle(k, &rep)?;
                    triples_within_span &= accumulated.contains(&class);
                    if let crate::exactlin::Insert::Independent(_) = triple_acc.insert(&class) {
                        witnesses.push((x, y, z));
                    }
                }
            }
        }
    }
    let triple_space = triple_acc.to_subspace();
    let exhibited_by_triples = triple_space.contains_subspace(&accumulated);

    Ok(MasseySpan {
        constraint_dim: solutions.rank(),
        span,
        accumulated,
        a,
        generators,
        triples_checked,
        triple_rank: triple_space.rank(),
        exhibited_by_triples,
        triples_within_span,
        witnesses,
    })
}
