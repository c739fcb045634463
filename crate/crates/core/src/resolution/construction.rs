//! The truncated complex `F` assembled from Koszul blocks.
//!
//! Summands are grouped by the family of elements that defines them:
//! `K` is the plain Koszul summand and the other groups carry one copy per
//! distinguished element (`z1`, `z2`, `z3`, `z4`, `pi3`, `pi4`) or per pair
//! (`z2z1`, indexed `ℓ`-major). A copy of `K_k` shifted by `h` has its
//! generator `T_S` in internal degree `|S| + h`.

use std::fmt;
use std::sync::Arc;

use crate::exactlin::Field;
use crate::homalg::HomologyAlgebra;
use crate::koszul::{KoszulComplex, KoszulElement};

pub const MAX_F_DEGREE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    K,
    Z1,
    Z2,
    Z3,
    Z4,
    Pi3,
    Pi4,
    Z2Z1,
}

impl GroupKind {
    pub fn key(self) -> &'static str {
        match self {
            GroupKind::K => "K",
            GroupKind::Z1 => "z1",
            GroupKind::Z2 => "z2",
            GroupKind::Z3 => "z3",
            GroupKind::Z4 => "z4",
            GroupKind::Pi3 => "pi3",
            GroupKind::Pi4 => "pi4",
            GroupKind::Z2Z1 => "z2z1",
        }
    }

    fn multiplicity_label(self) -> &'static str {
        match self {
            GroupKind::K => "1",
            GroupKind::Z1 => "a1",
            GroupKind::Z2 => "a2-q11",
            GroupKind::Z3 => "a3-q12",
            GroupKind::Z4 => "a4-a",
            GroupKind::Pi3 => "a1^2-q11",
            GroupKind::Pi4 => "a1a2-a1q11-q12+b",
            GroupKind::Z2Z1 => "a1a2-a1q11",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandGroup {
    pub kind: GroupKind,
    pub koszul_degree: usize,
    pub multiplicity: usize,
}

impl SummandGroup {
    /// Display name such as `K1^(a2-q11)`.
    pub fn label(&self) -> String {
        match self.kind {
            GroupKind::K => format!("K{}", self.koszul_degree),
            kind => format!("K{}^({})", self.koszul_degree, kind.multiplicity_label()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Summand {
    pub group: usize,
    pub copy: usize,
    pub koszul_degree: usize,
    pub shift: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeModule {
    pub groups: Vec<SummandGroup>,
    pub summands: Vec<Summand>,
}

impl FreeModule {
    fn push_group(&mut self, kind: GroupKind, koszul_degree: usize, shifts: &[usize]) {
        let group = self.groups.len();
        self.groups.push(SummandGroup {
            kind,
            koszul_degree,
            multiplicity: shifts.len(),
        });
        for (copy, &shift) in shifts.iter().enumerate() {
            self.summands.push(Summand {
                group,
                copy,
                koszul_degree,
                shift,
            });
        }
    }

    /// Free rank: `Σ C(n, k)` over summands.
    pub fn rank(&self, n: usize) -> usize {
        self.summands
            .iter()
            .map(|s| binom(n, s.koszul_degree))
            .sum()
    }

    pub fn group_of(&self, kind: GroupKind) -> Option<usize> {
        self.groups.iter().position(|g| g.kind == kind)
    }

    /// Index of summand `copy` of group `group`.
    pub fn summand_index(&self, group: usize, copy: usize) -> Option<usize> {
        self.summands
            .iter()
            .position(|s| s.group == group && s.copy == copy)
    }
}

pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

#[derive(Clone, Debug)]
pub enum BlockMap<F: Field> {
    /// The Koszul differential.
    Koszul,
    /// Left multiplication `e ∧ -` by a fixed element.
    Wedge(Arc<KoszulElement<F>>),
}

#[derive(Clone, Debug)]
pub struct BlockEntry<F: Field> {
    pub source: usize,
    pub target: usize,
    pub negate: bool,
    pub map: BlockMap<F>,
}

/// The block of a differential between two summand groups.
#[derive(Clone, Debug)]
pub struct GroupBlock<F: Field> {
    pub source_group: usize,
    pub target_group: usize,
    pub label: String,
    pub entries: Vec<BlockEntry<F>>,
}

#[derive(Clone, Debug)]
pub struct Differential<F: Field> {
    pub hdeg: usize,
    pub blocks: Vec<GroupBlock<F>>,
}

/// An element of a free module: one Koszul element per summand.
pub type FreeElement<F> = Vec<KoszulElement<F>>;

#[derive(Clone, Debug)]
pub struct ResolutionF<F: Field> {
    koszul: KoszulComplex<F>,
    pub modules: Vec<FreeModule>,
    /// `differentials[i - 1]` is `∂_i : F_i → F_{i-1}`.
    pub differentials: Vec<Differential<F>>,
}

struct Builder<'a> {
    modules: &'a [FreeModule],
}

impl Builder<'_> {
    fn group(&self, i: usize, kind: GroupKind) -> usize {
        self.modules[i].group_of(kind).expect("group present")
    }

    fn idx(&self, i: usize, kind: GroupKind, copy: usize) -> usize {
        let g = self.group(i, kind);
        self.modules[i]
            .summand_index(g, copy)
            .expect("summand present")
    }

    fn count(&self, i: usize, kind: GroupKind) -> usize {
        self.modules[i].groups[self.group(i, kind)].multiplicity
    }

    /// Koszul differential on every copy of `src` into the same copy of `dst`.
    fn diagonal<F: Field>(&self, i: usize, src: GroupKind, dst: GroupKind) -> GroupBlock<F> {
        let entries = (0..self.count(i, src))
            .map(|c| BlockEntry {
                source: self.idx(i, src, c),
                target: self.idx(i - 1, dst, c),
                negate: false,
                map: BlockMap::Koszul,
            })
            .collect();
        self.block(i, src, dst, "dK", entries)
    }

    /// `(copy of src) ↦ ± e_copy ∧ -` into the single `K` summand.
    fn wedge_to_k<F: Field>(
        &self,
        i: usize,
        src: GroupKind,
        negate: bool,
        name: &str,
        elems: &[KoszulElement<F>],
    ) -> GroupBlock<F> {
        let target_group = self.group(i - 1, GroupKind::K);
        let target = self.modules[i - 1].summand_index(target_group, 0);
        let entries = elems
            .iter()
            .enumerate()
            .filter_map(|(c, e)| Some((c, e, target?)))
            .filter(|(_, e, _)| !e.is_zero())
            .map(|(c, e, target)| BlockEntry {
                source: self.idx(i, src, c),
                target,
                negate,
                map: BlockMap::Wedge(Arc::new(e.clone())),
            })
            .collect();
        let label = format!("{}{}∧", if negate { "-" } else { "" }, name);
        self.block(i, src, GroupKind::K, &label, entries)
    }

    fn block<F: Field>(
        &self,
        i: usize,
        src: GroupKind,
        dst: GroupKind,
        label: &str,
        entries: Vec<BlockEntry<F>>,
    ) -> GroupBlock<F> {
        GroupBlock {
            source_group: self.group(i, src),
            target_group: self.group(i - 1, dst),
            label: label.to_string(),
            entries,
        }
    }

    /// Copy `s` of `src` maps to copy `i` of `dst` by `fams[s][i] ∧ -`.
    fn family<F: Field>(
        &self,
        i: usize,
        src: GroupKind,
        dst: GroupKind,
        name: &str,
        fams: &[Vec<KoszulElement<F>>],
    ) -> GroupBlock<F> {
        let mut entries = Vec::new();
        for (s, comps) in fams.iter().enumerate() {
            for (c, e) in comps.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                entries.push(BlockEntry {
                    source: self.idx(i, src, s),
                    target: self.idx(i - 1, dst, c),
                    negate: false,
                    map: BlockMap::Wedge(Arc::new(e.clone())),
                });
            }
        }
        self.block(i, src, dst, &format!("{name}∧"), entries)
    }
}

fn elements<F: Field>(gs: &[crate::homalg::Graded<F>]) -> Vec<KoszulElement<F>> {
    gs.iter().map(|g| g.element.clone()).collect()
}

impl<F: Field> ResolutionF<F> {
    pub fn build(alg: &HomologyAlgebra<F>) -> Self {
        use GroupKind::*;
        let n = alg.koszul().n();
        let deg = |gs: &[crate::homalg::Graded<F>]| gs.iter().map(|g| g.degree).collect::<Vec<_>>();
        let z1d = deg(alg.z1());
        let z2d = deg(&alg.z2);
        let z3d = deg(&alg.z3);
        let z4d = deg(&alg.z4);
        let pi3d: Vec<usize> = alg.p1.iter().map(|f| f.degree).collect();
        let pi4d: Vec<usize> = alg.p2.iter().map(|f| f.degree).collect();
        let z2z1d: Vec<usize> = z2d
            .iter()
            .flat_map(|l| z1d.iter().map(move |i| l + i))
            .collect();

        let mut modules = vec![FreeModule::default(); MAX_F_DEGREE + 1];
        for (i, m) in modules.iter_mut().enumerate() {
            if i <= n {
                m.push_group(K, i, &[0]);
            } else {
                m.push_group(K, i, &[]);
            }
        }
        modules[2].push_group(Z1, 0, &z1d);
        modules[3].push_group(Z1, 1, &z1d);
        modules[3].push_group(Z2, 0, &z2d);
        modules[4].push_group(Z1, 2, &z1d);
        modules[4].push_group(Z2, 1, &z2d);
        modules[4].push_group(Z3, 0, &z3d);
        modules[4].push_group(Pi3, 0, &pi3d);
        modules[5].push_group(Z1, 3, &z1d);
        modules[5].push_group(Z2, 2, &z2d);
        modules[5].push_group(Z3, 1, &z3d);
        modules[5].push_group(Z4, 0, &z4d);
        modules[5].push_group(Pi3, 1, &pi3d);
        modules[5].push_group(Pi4, 0, &pi4d);
        modules[5].push_group(Z2Z1, 0, &z2z1d);

        let z1 = elements(alg.z1());
        let z2 = elements(&alg.z2);
        let z3 = elements(&alg.z3);
        let z4 = elements(&alg.z4);
        let pi3 = elements(&alg.pi3);
        let pi4 = elements(&alg.pi4);
        let p1: Vec<Vec<KoszulElement<F>>> = alg.p1.iter().map(|f| f.components.clone()).collect();
        let p2: Vec<Vec<KoszulElement<F>>> = alg.p2.iter().map(|f| f.components.clone()).collect();

        let b = Builder { modules: &modules };
        let mut differentials = vec![
            // ∂1
            vec![b.diagonal(1, K, K)],
            // ∂2
            vec![b.diagonal(2, K, K), b.wedge_to_k(2, Z1, false, "z1", &z1)],
            // ∂3
            vec![
                b.diagonal(3, K, K),
                b.wedge_to_k(3, Z1, false, "z1", &z1),
                b.wedge_to_k(3, Z2, true, "z2", &z2),
                b.diagonal(3, Z1, Z1),
            ],
            // ∂4
            vec![
                b.diagonal(4, K, K),
                b.wedge_to_k(4, Z1, false, "z1", &z1),
                b.wedge_to_k(4, Z2, false, "z2", &z2),
                b.wedge_to_k(4, Z3, false, "z3", &z3),
                b.wedge_to_k(4, Pi3, true, "pi3", &pi3),
                b.diagonal(4, Z1, Z1),
                b.family(4, Pi3, Z1, "p1", &p1),
                b.diagonal(4, Z2, Z2),
            ],
        ];
        // ∂5
        let a1 = z1.len();
        let minus_z2: Vec<Vec<KoszulElement<F>>> = (0..z2.len())
            .flat_map(|l| {
                let z2 = &z2;
                (0..a1).map(move |i| {
                    let mut row = vec![KoszulElement::zero(2); a1];
                    row[i] = z2[l].neg();
                    row
                })
            })
            .collect();
        let plus_z1: Vec<Vec<KoszulElement<F>>> = (0..z2.len())
            .flat_map(|l| {
                let z1 = &z1;
                let nz2 = z2.len();
                (0..a1).map(move |i| {
                    let mut row = vec![KoszulElement::zero(1); nz2];
                    row[l] = z1[i].clone();
                    row
                })
            })
            .collect();
        let mut last = vec![
            b.diagonal(5, K, K),
            b.wedge_to_k(5, Z1, false, "z1", &z1),
            b.wedge_to_k(5, Z2, true, "z2", &z2),
            b.wedge_to_k(5, Z3, false, "z3", &z3),
            b.wedge_to_k(5, Z4, false, "z4", &z4),
            b.wedge_to_k(5, Pi3, true, "pi3", &pi3),
            b.wedge_to_k(5, Pi4, true, "pi4", &pi4),
            b.diagonal(5, Z1, Z1),
            b.family(5, Pi3, Z1, "p1", &p1),
            b.family(5, Pi4, Z1, "p2", &p2),
            b.family(5, Z2Z1, Z1, "-z2", &minus_z2),
            b.diagonal(5, Z2, Z2),
            b.family(5, Z2Z1, Z2, "z1", &plus_z1),
            b.diagonal(5, Z3, Z3),
            b.diagonal(5, Pi3, Pi3),
        ];
        last.retain(|blk| blk.source_group < modules[5].groups.len());
        differentials.push(last);

        let differentials = differentials
            .into_iter()
            .enumerate()
            .map(|(k, blocks)| Differential {
                hdeg: k + 1,
                blocks,
            })
            .collect();
        ResolutionF {
            koszul: alg.koszul().clone(),
            modules,
            differentials,
        }
    }

    pub fn koszul(&self) -> &KoszulComplex<F> {
        &self.koszul
    }

    pub fn n(&self) -> usize {
        self.koszul.n()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank(self.n())).collect()
    }

    /// `graded[i][j]`: number of generators of `F_i` in internal degree `j`.
    pub fn graded_ranks(&self) -> Vec<std::collections::BTreeMap<usize, usize>> {
        let n = self.n();
        self.modules
            .iter()
            .map(|m| {
                let mut row = std::collections::BTreeMap::new();
                for s in &m.summands {
                    let c = binom(n, s.koszul_degree);
                    if c > 0 {
                        *row.entry(s.shift + s.koszul_degree).or_insert(0) += c;
                    }
                }
                row
            })
            .collect()
    }

    pub fn differential(&self, i: usize) -> &Differential<F> {
        &self.differentials[i - 1]
    }

    /// Applies `∂_i` to an element of `F_i`.
    pub fn apply(&self, i: usize, x: &FreeElement<F>) -> crate::error::Result<FreeElement<F>> {
        let target = &self.modules[i - 1];
        let mut out: FreeElement<F> = target
            .summands
            .iter()
            .map(|s| KoszulElement::zero(s.koszul_degree))
            .collect();
        let desc = self.koszul.desc();
        for block in &self.differential(i).blocks {
            for e in &block.entries {
                let src = &x[e.source];
                if src.is_zero() {
                    continue;
                }
                let img = match &e.map {
                    BlockMap::Koszul => self.koszul.differential(src)?,
                    BlockMap::Wedge(w) => self.koszul.wedge(w, src)?,
                };
                let c = if e.negate {
                    F::one(desc).neg()
                } else {
                    F::one(desc)
                };
                out[e.target].add_scaled(&c, &img);
            }
        }
        Ok(out)
    }

    /// Generator `T_S` placed in summand `idx` of `F_i`.
    pub fn generator(&self, i: usize, idx: usize, s: u32) -> FreeElement<F> {
        let m = &self.modules[i];
        let one = self.koszul.ring().one();
        m.summands
            .iter()
            .enumerate()
            .map(|(k, sm)| {
                if k == idx {
                    KoszulElement::monomial(s, one.clone())
                } else {
                    KoszulElement::zero(sm.koszul_degree)
                }
            })
            .collect()
    }
}

impl<F: Field> fmt::Display for ResolutionF<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        for (i, m) in self.modules.iter().enumerate() {
            let parts: Vec<String> = m
                .groups
                .iter()
                .filter(|g| g.multiplicity > 0)
                .map(|g| format!("{}[{}]", g.label(), g.multiplicity))
                .collect();
            writeln!(f, "F{i} = {} (rank {})", parts.join(" + "), m.rank(n))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rational;
    use crate::polyring::{parse_polynomial, GradedQuotientRing};

    fn resolution(vars: &[&str], gens: &[&str]) -> ResolutionF<Rational> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let gens = gens
            .iter()
            .map(|g| parse_polynomial(g, &vars, &()).unwrap())
            .collect();
        let ring = GradedQuotientRing::new(vars, gens, None, &()).unwrap();
        ResolutionF::build(&HomologyAlgebra::compute(Arc::new(ring)).unwrap())
    }

    #[test]
    fn binomials() {
        assert_eq!(
            (0..=4).map(|k| binom(4, k)).collect::<Vec<_>>(),
            vec![1, 4, 6, 4, 1]
        );
        assert_eq!(binom(2, 3), 0);
    }

    #[test]
    fn dual_numbers_layout() {
        let f = resolution(&["x"], &["x^2"]);
        assert_eq!(f.ranks(), vec![1; 6]);
        let labels: Vec<String> = f.modules[5]
            .groups
            .iter()
            .filter(|g| g.multiplicity > 0 && binom(1, g.koszul_degree) > 0)
            .map(|g| g.label())
            .collect();
        assert_eq!(labels, vec!["K1^(a1^2-q11)".to_string()]);
        assert_eq!(
            f.modules[5]
                .group_of(GroupKind::Z2Z1)
                .map(|g| f.modules[5].groups[g].multiplicity),
            Some(0)
        );
    }

    #[test]
    fn differential_is_a_complex_on_generators() {
        let f = resolution(&["x", "y"], &["x^2", "x*y", "y^2"]);
        for i in 2..=MAX_F_DEGREE {
            for (idx, sm) in f.modules[i].summands.iter().enumerate() {
                for &s in f.koszul().subsets(sm.koszul_degree) {
                    let g = f.generator(i, idx, s);
                    let dd = f.apply(i - 1, &f.apply(i, &g).unwrap()).unwrap();
                    assert!(
                        dd.iter().all(|e| e.is_zero()),
                        "d{}d{} on summand {idx}",
                        i - 1,
                        i
                    );
                }
            }
        }
    }
}
