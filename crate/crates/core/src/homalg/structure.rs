//! Distinguished bases, product tables, lifted families and ranks of the
//! Koszul homology algebra through homological degree four.

use std::sync::Arc;

use rayon::prelude::*;

use super::chart::{Graded, HomologyChart};
use super::massey::{self, MasseySpan};
use crate::error::{Error, Result};
use crate::exactlin::{sparse, ColumnEchelon, Echelon, Field, Insert, SparseVec, Subspace};
use crate::koszul::{KoszulComplex, KoszulElement};
use crate::polyring::GradedQuotientRing;

/// Products `[u]·[v]` of representative pairs, with their span.
#[derive(Clone, Debug)]
pub struct ProductTable<F: Field> {
    pub left: usize,
    pub right: usize,
    /// `table[u][v]` = coordinates of `[rep_u ∧ rep_v]` in `A_{left+right}`.
    pub table: Vec<Vec<SparseVec<F>>>,
    pub span: Subspace<F>,
}

impl<F: Field> ProductTable<F> {
    pub fn rank(&self) -> usize {
        self.span.rank()
    }
}

/// A kernel vector `Σ_i [z¹_i] ⊗ [w_i]` together with cycle representatives
/// of its components `w_i`.
#[derive(Clone, Debug)]
pub struct TensorFamily<F: Field> {
    pub degree: usize,
    pub vector: SparseVec<F>,
    pub components: Vec<KoszulElement<F>>,
}

/// Outcome of the built-in consistency checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureChecks {
    pub graded_commutative: bool,
    pub independence_p1: bool,
    pub pi3_lifts: bool,
    pub pi4_lifts: bool,
    pub b_routes_agree: bool,
    pub b_count: bool,
    pub kernel_ranks: bool,
    pub in_max_ideal: bool,
}

impl StructureChecks {
    pub fn all(&self) -> bool {
        self.graded_commutative
            && self.independence_p1
            && self.pi3_lifts
            && self.pi4_lifts
            && self.b_routes_agree
            && self.b_count
            && self.kernel_ranks
            && self.in_max_ideal
    }
}

#[derive(Clone, Debug)]
pub struct HomologyAlgebra<F: Field> {
    koszul: KoszulComplex<F>,
    charts: Vec<HomologyChart<F>>,
    pub p11: ProductTable<F>,
    pub p12: ProductTable<F>,
    pub p13: ProductTable<F>,
    pub p22: ProductTable<F>,
    pub z2: Vec<Graded<F>>,
    pub z3: Vec<Graded<F>>,
    pub z4: Vec<Graded<F>>,
    pub p1: Vec<TensorFamily<F>>,
    pub pi3: Vec<Graded<F>>,
    pub p2: Vec<TensorFamily<F>>,
    pub pi4: Vec<Graded<F>>,
    pub kernel_phi2_rank: usize,
    pub span_a_rank: usize,
    /// `a₁q₁₁ − rank Span A`.
    pub b: usize,
    /// `rank Coker ψ`.
    pub b_psi: usize,
    pub massey: MasseySpan<F>,
    pub checks: StructureChecks,
    pub warnings: Vec<String>,
}

/// Top homological degree with a distinguished basis.
pub const MAX_HDEG: usize = 4;

fn std_complement<F: Field>(sub: &Subspace<F>, dim: usize, desc: &F::Desc) -> Vec<usize> {
    let mut e = Echelon::new(dim, desc);
    for v in sub.basis() {
        e.insert(v);
    }
    (0..dim)
        .filter(|&k| matches!(e.insert(&[(k, F::one(desc))]), Insert::Independent(_)))
        .collect()
}

fn combine<F: Field>(
    terms: impl IntoIterator<Item = (F, KoszulElement<F>)>,
    hdeg: usize,
) -> KoszulElement<F> {
    let mut out = KoszulElement::zero(hdeg);
    for (c, e) in terms {
        out.add_scaled(&c, &e);
    }
    out
}

impl<F: Field> HomologyAlgebra<F> {
    pub fn compute(ring: Arc<GradedQuotientRing<F>>) -> Result<Self> {
        let koszul = KoszulComplex::new(ring);
        let charts = (1..=MAX_HDEG)
            .map(|i| HomologyChart::build(&koszul, i))
            .collect::<Result<Vec<_>>>()?;
        let desc = koszul.desc().clone();
        let mut warnings = Vec::new();
        if !koszul.ring().is_artinian() {
            for c in &charts {
                if c.touches_limit() {
                    warnings.push(format!(
                        "homology in homological degree {} reaches the cutoff; raise the cutoff to confirm stabilization",
                        c.hdeg()
                    ));
                }
            }
        }

        let mut this = HomologyAlgebra {
            koszul,
            charts,
            p11: ProductTable::empty(1, 1),
            p12: ProductTable::empty(1, 2),
            p13: ProductTable::empty(1, 3),
            p22: ProductTable::empty(2, 2),
            z2: Vec::new(),
            z3: Vec::new(),
            z4: Vec::new(),
            p1: Vec::new(),
            pi3: Vec::new(),
            p2: Vec::new(),
            pi4: Vec::new(),
            kernel_phi2_rank: 0,
            span_a_rank: 0,
            b: 0,
            b_psi: 0,
            massey: MasseySpan::default(),
            checks: StructureChecks::default(),
            warnings,
        };
        this.p11 = this.product_table(1, 1)?;
        this.p12 = this.product_table(1, 2)?;
        this.p13 = this.product_table(1, 3)?;
        this.p22 = this.product_table(2, 2)?;

        let a1 = this.a(1);
        let a2 = this.a(2);
        this.z2 = std_complement(&this.p11.span, a2, &desc)
            .into_iter()
            .map(|k| this.chart(2).reps()[k].clone())
            .collect();
        this.z3 = std_complement(&this.p12.span, this.a(3), &desc)
            .into_iter()
            .map(|k| this.chart(3).reps()[k].clone())
            .collect();

        // Ker φ₁ and the lifts π̃³.
        let phi1 = ColumnEchelon::from_columns(a2, &desc, this.p11.table.iter().flatten());
        let ker1 = phi1.kernel();
        this.p1 = ker1
            .basis()
            .iter()
            .map(|v| this.tensor_family(v, a1, 1))
            .collect();
        this.pi3 = this
            .p1
            .iter()
            .map(|f| {
                let target = this.wedge_sum(&f.components)?;
                let lift = this
                    .chart(2)
                    .lift(&this.koszul, &target)
                    .map_err(|_| Error::Internal("sum defining π̃³ is not a boundary".into()))?;
                Ok(Graded {
                    element: lift,
                    degree: f.degree,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        // Ker φ₂, Span A and the complement B.
        let phi2 = ColumnEchelon::from_columns(this.a(3), &desc, this.p12.table.iter().flatten());
        let ker2 = phi2.kernel();
        this.kernel_phi2_rank = ker2.rank();
        let constraint = this.constraint_columns();
        let span_a_elim = ColumnEchelon::from_columns(a1 * a2, &desc, constraint.iter());
        let span_a = span_a_elim.image();
        this.span_a_rank = span_a.rank();
        let q11 = this.p11.rank();
        this.b = (a1 * q11)
            .checked_sub(this.span_a_rank)
            .ok_or_else(|| Error::Internal("rank Span A exceeds a₁q₁₁".into()))?;
        let b_vectors = span_a
            .complement_in(&ker2, &desc)
            .map_err(|_| Error::Internal("Span A ⊄ Ker φ₂".into()))?;
        this.p2 = b_vectors
            .iter()
            .map(|v| this.tensor_family(v, a2, 2))
            .collect();
        this.pi4 = this
            .p2
            .iter()
            .map(|f| {
                let target = this.wedge_sum(&f.components)?;
                let lift = this
                    .chart(3)
                    .lift(&this.koszul, &target)
                    .map_err(|_| Error::Internal("sum defining π̃⁴ is not a boundary".into()))?;
                Ok(Graded {
                    element: lift,
                    degree: f.degree,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        this.b_psi = this.coker_psi_rank();

        // Degree four: Massey span, a, and z⁴.
        this.massey = massey::massey_span(&this, &span_a_elim)?;
        this.z4 = std_complement(&this.massey.accumulated, this.a(4), &desc)
            .into_iter()
            .map(|k| this.chart(4).reps()[k].clone())
            .collect();

        this.checks = this.run_checks(&ker1)?;
        Ok(this)
    }

    pub fn koszul(&self) -> &KoszulComplex<F> {
        &self.koszul
    }

    pub fn ring(&self) -> &GradedQuotientRing<F> {
        self.koszul.ring()
    }

    pub fn desc(&self) -> &F::Desc {
        self.koszul.desc()
    }

    /// Chart of `A_i` for `1 ≤ i ≤ 4`.
    pub fn chart(&self, i: usize) -> &HomologyChart<F> {
        &self.charts[i - 1]
    }

    /// `a_i = rank A_i` (`a_0 = 1`).
    pub fn a(&self, i: usize) -> usize {
        match i {
            0 => 1,
            i if i <= MAX_HDEG => self.chart(i).rank(),
            _ => 0,
        }
    }

    pub fn z1(&self) -> &[Graded<F>] {
        self.chart(1).reps()
    }

    pub fn q11(&self) -> usize {
        self.p11.rank()
    }

    pub fn q12(&self) -> usize {
        self.p12.rank()
    }

    pub fn q13(&self) -> usize {
        self.p13.rank()
    }

    pub fn q22(&self) -> usize {
        self.p22.rank()
    }

    /// Rank of `A₁·A₃ + A₂·A₂ + span` inside `A₄`.
    pub fn a_rank(&self) -> usize {
        self.massey.a
    }

    /// Class coordinates of a cycle in the chart of its homological degree.
    pub fn class_of(&self, e: &KoszulElement<F>) -> Result<SparseVec<F>> {
        let i = e.hdeg();
        if !self.koszul.differential(e)?.is_zero() {
            return Err(Error::NotACycle);
        }
        if i == 0 || i > MAX_HDEG {
            return Err(Error::Unsupported(format!(
                "no chart in homological degree {i}"
            )));
        }
        self.chart(i).class_of_cycle(&self.koszul, e)
    }

    pub fn product_table_for(&self, i: usize, j: usize) -> Option<&ProductTable<F>> {
        match (i, j) {
            (1, 1) => Some(&self.p11),
            (1, 2) => Some(&self.p12),
            (1, 3) => Some(&self.p13),
            (2, 2) => Some(&self.p22),
            _ => None,
        }
    }

    fn product_table(&self, i: usize, j: usize) -> Result<ProductTable<F>> {
        let target = i + j;
        let left = self.chart(i).reps();
        let right = self.chart(j).reps();
        let table = left
            .par_iter()
            .map(|u| {
                right
                    .iter()
                    .map(|v| {
                        if target > MAX_HDEG || target > self.koszul.n() {
                            return Ok(Vec::new());
                        }
                        let w = self.koszul.wedge(&u.element, &v.element)?;
                        self.chart(target).class_of_cycle(&self.koszul, &w)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let dim = self.a(target);
        let span = Subspace::span(dim, self.desc(), table.iter().flatten());
        Ok(ProductTable {
            left: i,
            right: j,
            table,
            span,
        })
    }

    /// Splits a vector of `A₁ ⊗ A_k` (index `i·a_k + v`) into components
    /// `w_i = Σ_v x[i·a_k+v] rep_v`.
    fn tensor_family(&self, v: &SparseVec<F>, width: usize, k: usize) -> TensorFamily<F> {
        let a1 = self.a(1);
        let chart = self.chart(k);
        let mut parts: Vec<SparseVec<F>> = vec![Vec::new(); a1];
        for (t, c) in v {
            parts[t / width].push((t % width, c.clone()));
        }
        let (t0, _) = v[0];
        let degree = self.z1()[t0 / width].degree + chart.degree_of(t0 % width);
        TensorFamily {
            degree,
            vector: v.clone(),
            components: parts.iter().map(|p| chart.element_of(p)).collect(),
        }
    }

    /// `Σ_i z¹_i ∧ w_i`.
    pub fn wedge_sum(&self, components: &[KoszulElement<F>]) -> Result<KoszulElement<F>> {
        let hdeg = 1 + components.first().map_or(0, KoszulElement::hdeg);
        let mut out = KoszulElement::zero(hdeg);
        for (z, w) in self.z1().iter().zip(components) {
            if !w.is_zero() {
                out.add_scaled(&F::one(self.desc()), &self.koszul.wedge(&z.element, w)?);
            }
        }
        Ok(out)
    }

    /// Column `(s, j)` holds the `A₁ ⊗ A₂` coordinates of
    /// `Σ_i [z¹_i] ⊗ [p̃¹_{si} ∧ z¹_j]`.
    pub(crate) fn constraint_columns(&self) -> Vec<SparseVec<F>> {
        let a1 = self.a(1);
        let a2 = self.a(2);
        let mut cols = Vec::with_capacity(self.p1.len() * a1);
        for fam in &self.p1 {
            for j in 0..a1 {
                let mut entries = Vec::new();
                for (t, c) in &fam.vector {
                    let (i, k) = (t / a1, t % a1);
                    for (v, x) in &self.p11.table[k][j] {
                        entries.push((i * a2 + v, c.mul(x)));
                    }
                }
                cols.push(sparse::from_unsorted(entries));
            }
        }
        cols
    }

    /// `2a₁q₁₁ − rank Im ψ` with `ψ(x⊗y⊗z) = ([x][y]⊗[z], [x]⊗[y][z])`.
    fn coker_psi_rank(&self) -> usize {
        let a1 = self.a(1);
        let q11 = self.q11();
        let desc = self.desc();
        let mut e = Echelon::new(2 * a1 * q11, desc);
        let coords = |x: usize, y: usize| {
            self.p11
                .span
                .coords(&self.p11.table[x][y])
                .unwrap_or_default()
        };
        for x in 0..a1 {
            for y in 0..a1 {
                let xy = coords(x, y);
                for z in 0..a1 {
                    let yz = coords(y, z);
                    let mut col: SparseVec<F> =
                        xy.iter().map(|(r, c)| (r * a1 + z, c.clone())).collect();
                    col.extend(yz.iter().map(|(r, c)| (q11 * a1 + x * q11 + r, c.clone())));
                    e.insert(&sparse::from_unsorted(col));
                }
            }
        }
        2 * a1 * q11 - e.rank()
    }

    fn run_checks(&self, ker1: &Subspace<F>) -> Result<StructureChecks> {
        let (a1, a2) = (self.a(1), self.a(2));
        let (q11, q12) = (self.q11(), self.q12());
        let desc = self.desc();
        let k = &self.koszul;

        let mut graded_commutative = true;
        for (i, j) in [(1, 1), (1, 2), (1, 3), (2, 2)] {
            let Some(pt) = self.product_table_for(i, j) else {
                continue;
            };
            if i + j > k.n() {
                continue;
            }
            let sign_neg = (i * j) % 2 == 1;
            for (u, ru) in self.chart(i).reps().iter().enumerate() {
                for (v, rv) in self.chart(j).reps().iter().enumerate() {
                    let swapped = self
                        .chart(i + j)
                        .class_of_cycle(k, &k.wedge(&rv.element, &ru.element)?)?;
                    let expected = if sign_neg {
                        sparse::neg(&pt.table[u][v])
                    } else {
                        pt.table[u][v].clone()
                    };
                    graded_commutative &= swapped == expected;
                }
            }
        }

        let mut indep = Echelon::new(a1 * a1, desc);
        let mut independence_p1 = true;
        for fam in &self.p1 {
            let mut v = Vec::new();
            for (i, w) in fam.components.iter().enumerate() {
                v.extend(
                    self.chart(1)
                        .class_of_cycle(k, w)?
                        .into_iter()
                        .map(|(t, c)| (i * a1 + t, c)),
                );
            }
            independence_p1 &= matches!(indep.insert(&v), Insert::Independent(_));
        }

        let mut pi3_lifts = true;
        for (fam, pi) in self.p1.iter().zip(&self.pi3) {
            pi3_lifts &= k.differential(&pi.element)? == self.wedge_sum(&fam.components)?;
        }
        let mut pi4_lifts = true;
        for (fam, pi) in self.p2.iter().zip(&self.pi4) {
            pi4_lifts &= k.differential(&pi.element)? == self.wedge_sum(&fam.components)?;
        }

        let kernel_ranks = ker1.rank() == a1 * a1 - q11 && self.kernel_phi2_rank == a1 * a2 - q12;
        let b_count = (a1 * a2 + self.b) == self.p2.len() + a1 * q11 + q12;
        let in_max_ideal = self
            .z1()
            .iter()
            .chain(&self.z2)
            .chain(&self.z3)
            .chain(&self.z4)
            .chain(&self.pi3)
            .chain(&self.pi4)
            .all(|g| g.element.in_max_ideal())
            && self
                .p1
                .iter()
                .chain(&self.p2)
                .all(|f| f.components.iter().all(KoszulElement::in_max_ideal));
        Ok(StructureChecks {
            graded_commutative,
            independence_p1,
            pi3_lifts,
            pi4_lifts,
            b_routes_agree: self.b == self.b_psi,
            b_count,
            kernel_ranks,
            in_max_ideal,
        })
    }

    /// Combination of representatives of `A_i`.
    pub fn element_of(&self, i: usize, coords: &[(usize, F)]) -> KoszulElement<F> {
        combine(
            coords
                .iter()
                .map(|(t, c)| (c.clone(), self.chart(i).reps()[*t].element.clone())),
            i,
        )
    }
}

impl<F: Field> ProductTable<F> {
    fn empty(left: usize, right: usize) -> Self {
        ProductTable {
            left,
            right,
            table: Vec::new(),
            span: Subspace::zero(0),
        }
    }
}
