//! Serializable reports. Field order is fixed by declaration order, and
//! every numeric result carries its provenance.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::analysis::Analysis;
use crate::exactlin::{Field, FieldSpec};
use crate::homalg::{Graded, HomologyAlgebra};
use crate::invariants::Series;
use crate::koszul::KoszulElement;
use crate::polyring::GradedQuotientRing;
use crate::resolution::{OracleBetti, ResolutionF, VerificationReport};
use crate::ringdef::RingDefinition;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Read from the input file.
    Input,
    /// Computed by the homology engine.
    Engine,
    /// Closed-form formula evaluated on engine invariants.
    Formula,
    /// Read off the assembled complex `F`.
    Construction,
    /// Independent syzygy computation.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tagged<T> {
    pub value: T,
    pub provenance: Provenance,
}

fn tag<T>(value: T, provenance: Provenance) -> Tagged<T> {
    Tagged { value, provenance }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub ring: RingSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<HomologySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub massey: Option<MasseySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<ResolutionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    pub warnings: Vec<String>,
    /// Wall-clock milliseconds per stage; only filled on request.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u64>>,
}

impl Report {
    pub fn new(command: &str, ring: RingSection) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            ring,
            homology: None,
            massey: None,
            invariants: None,
            resolution: None,
            oracle: None,
            warnings: Vec::new(),
            timing_ms: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RingSection {
    pub field: String,
    pub vars: Vec<String>,
    pub ideal: Vec<String>,
    pub artinian: bool,
    pub socle_degree: Option<usize>,
    pub cutoff: usize,
    pub hilbert_function: Tagged<Vec<usize>>,
    pub depth: Option<Tagged<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codepth: Option<Tagged<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codepth_source: Option<String>,
}

impl RingSection {
    pub fn new<F: Field>(
        def: &RingDefinition,
        field: FieldSpec,
        ring: &GradedQuotientRing<F>,
    ) -> Self {
        let socle = ring.socle_degree();
        let hilbert_top = socle.unwrap_or(ring.cutoff());
        RingSection {
            field: field.to_string(),
            vars: ring.vars().to_vec(),
            ideal: ring
                .generators()
                .iter()
                .map(|g| g.display(ring.vars()).to_string())
                .collect(),
            artinian: ring.is_artinian(),
            socle_degree: socle,
            cutoff: ring.cutoff(),
            hilbert_function: tag(
                (0..=hilbert_top).map(|j| ring.dim(j)).collect(),
                Provenance::Engine,
            ),
            depth: def.depth.map(|d| tag(d, Provenance::Input)),
            codepth: None,
            codepth_source: None,
        }
    }

    pub fn with_codepth<F: Field>(mut self, analysis: &Analysis<F>) -> Self {
        use crate::analysis::CodepthSource;
        let prov = match analysis.codepth.source {
            CodepthSource::Declared => Provenance::Input,
            _ => Provenance::Engine,
        };
        self.codepth = Some(tag(analysis.codepth.value, prov));
        self.codepth_source = Some(analysis.codepth.source.as_str().to_string());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilySummary {
    pub count: usize,
    /// Internal degree → number of elements.
    pub degrees: BTreeMap<usize, usize>,
}

fn summarize(degrees: impl IntoIterator<Item = usize>) -> FamilySummary {
    let mut map = BTreeMap::new();
    let mut count = 0;
    for d in degrees {
        *map.entry(d).or_insert(0) += 1;
        count += 1;
    }
    FamilySummary {
        count,
        degrees: map,
    }
}

fn graded_summary<F: Field>(g: &[Graded<F>]) -> FamilySummary {
    summarize(g.iter().map(|x| x.degree))
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologySection {
    /// `a_1..a_4`.
    pub ranks: Tagged<Vec<usize>>,
    /// Per homological degree: internal degree → rank.
    pub ranks_by_degree: Vec<BTreeMap<usize, usize>>,
    pub q11: Tagged<usize>,
    pub q12: Tagged<usize>,
    pub q13: Tagged<usize>,
    pub q22: Tagged<usize>,
    pub a: Tagged<usize>,
    pub b: Tagged<usize>,
    pub b_coker_psi: Tagged<usize>,
    pub kernel_phi1: Tagged<usize>,
    pub kernel_phi2: Tagged<usize>,
    pub distinguished: BTreeMap<String, FamilySummary>,
    pub z1: Vec<String>,
    pub checks: BTreeMap<String, bool>,
}

impl HomologySection {
    pub fn new<F: Field>(alg: &HomologyAlgebra<F>) -> Self {
        let e = Provenance::Engine;
        let c = &alg.checks;
        let checks = [
            ("graded_commutative", c.graded_commutative),
            ("independence_p1", c.independence_p1),
            ("pi3_lifts", c.pi3_lifts),
            ("pi4_lifts", c.pi4_lifts),
            ("b_routes_agree", c.b_routes_agree),
            ("b_count", c.b_count),
            ("kernel_ranks", c.kernel_ranks),
            ("in_max_ideal", c.in_max_ideal),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        let mut distinguished = BTreeMap::new();
        distinguished.insert("z1".to_string(), graded_summary(alg.z1()));
        distinguished.insert("z2".to_string(), graded_summary(&alg.z2));
        distinguished.insert("z3".to_string(), graded_summary(&alg.z3));
        distinguished.insert("z4".to_string(), graded_summary(&alg.z4));
        distinguished.insert("pi3".to_string(), graded_summary(&alg.pi3));
        distinguished.insert("pi4".to_string(), graded_summary(&alg.pi4));
        let ring = alg.ring();
        HomologySection {
            ranks: tag((1..=4).map(|i| alg.a(i)).collect(), e),
            ranks_by_degree: (1..=4)
                .map(|i| alg.chart(i).rank_by_degree().into_iter().collect())
                .collect(),
            q11: tag(alg.q11(), e),
            q12: tag(alg.q12(), e),
            q13: tag(alg.q13(), e),
            q22: tag(alg.q22(), e),
            a: tag(alg.a_rank(), e),
            b: tag(alg.b, e),
            b_coker_psi: tag(alg.b_psi, e),
            kernel_phi1: tag(alg.p1.len(), e),
            kernel_phi2: tag(alg.kernel_phi2_rank, e),
            distinguished,
            z1: alg
                .z1()
                .iter()
                .map(|g| g.element.display(ring).to_string())
                .collect(),
            checks,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MasseyGenerator {
    pub degree: usize,
    pub representative: String,
    /// Coordinates of the class in `A₄` as exact strings.
    pub class: BTreeMap<usize, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MasseySection {
    pub constraint_dim: Tagged<usize>,
    pub span_rank: Tagged<usize>,
    pub span_rank_mod_products: Tagged<usize>,
    pub a: Tagged<usize>,
    pub generators: Vec<MasseyGenerator>,
    pub basis_triples_checked: usize,
    pub basis_triple_rank: Tagged<usize>,
    pub exhibited_by_basis_triples: bool,
    pub basis_triples_within_span: bool,
    /// Basis triples `(i, j, k)` of `z1` (1-based) whose classes are new
    /// modulo the products.
    pub witnesses: Vec<[usize; 3]>,
}

fn class_strings<F: Field>(
    alg: &HomologyAlgebra<F>,
    e: &KoszulElement<F>,
) -> BTreeMap<usize, String> {
    alg.class_of(e)
        .map(|v| v.into_iter().map(|(k, c)| (k, c.to_string())).collect())
        .unwrap_or_default()
}

impl MasseySection {
    pub fn new<F: Field>(alg: &HomologyAlgebra<F>) -> Self {
        let m = &alg.massey;
        let e = Provenance::Engine;
        MasseySection {
            constraint_dim: tag(m.constraint_dim, e),
            span_rank: tag(m.span.rank(), e),
            span_rank_mod_products: tag(m.rank_mod_products(alg), e),
            a: tag(m.a, e),
            generators: m
                .generators
                .iter()
                .map(|g| MasseyGenerator {
                    degree: g.degree,
                    representative: g.element.display(alg.ring()).to_string(),
                    class: class_strings(alg, &g.element),
                })
                .collect(),
            basis_triples_checked: m.triples_checked,
            basis_triple_rank: tag(m.triple_rank, e),
            exhibited_by_basis_triples: m.exhibited_by_triples,
            basis_triples_within_span: m.triples_within_span,
            witnesses: m
                .witnesses
                .iter()
                .map(|&(x, y, z)| [x + 1, y + 1, z + 1])
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantSection {
    pub betti: Tagged<Series>,
    pub golod_bound: Tagged<Series>,
    pub defect: Tagged<Series>,
    pub deviations: Tagged<[i64; 5]>,
    pub deviations_from_betti: Option<Tagged<[i64; 5]>>,
    pub denominator: Tagged<Series>,
    pub gamma: Tagged<Series>,
    pub checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codepth3_division: Option<bool>,
}

impl InvariantSection {
    pub fn new<F: Field>(analysis: &Analysis<F>) -> Self {
        let r = &analysis.invariants;
        let f = Provenance::Formula;
        let mut checks = BTreeMap::new();
        checks.insert(
            "defect_equals_bound_minus_betti".to_string(),
            r.defect_consistent,
        );
        checks.insert("deviations_agree".to_string(), r.deviations_agree);
        checks.insert("denominator_round_trip".to_string(), r.round_trip);
        checks.insert("defect_nonnegative".to_string(), r.serre_inequality());
        InvariantSection {
            betti: tag(r.betti, f),
            golod_bound: tag(r.bound, f),
            defect: tag(r.defect, f),
            deviations: tag(r.deviations, f),
            deviations_from_betti: r.deviations_from_betti.map(|d| tag(d, f)),
            denominator: tag(r.denominator, f),
            gamma: tag(r.gamma, f),
            checks,
            codepth3_division: r.codepth3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub label: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationSection {
    pub complex: bool,
    pub composites: BTreeMap<String, bool>,
    pub complex_failures: Vec<String>,
    pub exact: bool,
    pub truncated: bool,
    pub augmentation: bool,
    /// `"i,j"` → homology dimension, nonzero entries only.
    pub exactness_failures: BTreeMap<String, i64>,
    /// Largest internal degree checked, per homological degree 1..4.
    pub max_degree_checked: Vec<usize>,
    pub degrees_checked: usize,
    pub minimal: bool,
    pub non_minimal_blocks: Vec<String>,
    pub passed: bool,
}

impl VerificationSection {
    pub fn new(v: &VerificationReport) -> Self {
        VerificationSection {
            complex: v.complex.ok(),
            composites: v
                .complex
                .composites
                .iter()
                .map(|(i, ok)| (format!("d{}d{}", i - 1, i), *ok))
                .collect(),
            complex_failures: v
                .complex
                .failures
                .iter()
                .take(20)
                .map(|f| {
                    format!(
                        "F{} {} copy {} generator {}",
                        f.hdeg,
                        f.group,
                        f.copy + 1,
                        f.generator
                    )
                })
                .collect(),
            exact: v.exactness.ok(),
            truncated: v.exactness.truncated,
            augmentation: v.exactness.augmentation_ok,
            exactness_failures: v
                .exactness
                .checks
                .iter()
                .filter(|c| c.homology != 0)
                .map(|c| (format!("{},{}", c.hdeg, c.degree), c.homology))
                .collect(),
            max_degree_checked: v.exactness.max_degree.clone(),
            degrees_checked: v.exactness.checks.len(),
            minimal: v.minimality.ok(),
            non_minimal_blocks: v.minimality.offending.clone(),
            passed: v.ok(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionSection {
    pub ranks: Tagged<Vec<usize>>,
    /// Per homological degree: internal degree → number of generators.
    pub graded: Vec<BTreeMap<usize, usize>>,
    pub modules: Vec<Vec<GroupSummary>>,
    /// Per differential: `source -> target: map`.
    pub blocks: Vec<Vec<String>>,
    /// Ranks agree with the closed-form Betti numbers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_formula: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSection>,
}

impl ResolutionSection {
    pub fn new<F: Field>(
        f: &ResolutionF<F>,
        verification: Option<&VerificationReport>,
        fault: Option<String>,
    ) -> Self {
        let modules = f
            .modules
            .iter()
            .map(|m| {
                m.groups
                    .iter()
                    .filter(|g| g.multiplicity > 0)
                    .map(|g| GroupSummary {
                        label: g.label(),
                        multiplicity: g.multiplicity,
                    })
                    .collect()
            })
            .collect();
        let blocks = f
            .differentials
            .iter()
            .map(|d| {
                d.blocks
                    .iter()
                    .filter(|b| !b.entries.is_empty())
                    .map(|b| {
                        format!(
                            "{} -> {}: {}",
                            f.modules[d.hdeg].groups[b.source_group].label(),
                            f.modules[d.hdeg - 1].groups[b.target_group].label(),
                            b.label
                        )
                    })
                    .collect()
            })
            .collect();
        ResolutionSection {
            ranks: tag(f.ranks(), Provenance::Construction),
            graded: f.graded_ranks(),
            modules,
            blocks,
            matches_formula: None,
            fault,
            verification: verification.map(VerificationSection::new),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSection {
    pub betti: Tagged<Vec<usize>>,
    pub graded: Vec<BTreeMap<usize, usize>>,
    pub truncated: bool,
    /// Largest internal degree searched per homological degree when truncated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub searched_up_to: Option<Vec<Option<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_resolution: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_formula: Option<bool>,
}

impl OracleSection {
    pub fn new(o: &OracleBetti) -> Self {
        OracleSection {
            betti: tag(o.totals(), Provenance::Oracle),
            graded: o.graded.clone(),
            truncated: o.truncated,
            searched_up_to: o.truncated.then(|| o.max_degree.clone()),
            matches_resolution: None,
            matches_formula: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rational;

    #[test]
    fn serialization_is_tagged_and_stable() {
        let def = RingDefinition::parse("field: QQ\nvars: x\nideal: x^2\n").unwrap();
        let ring = def.build::<Rational>(&(), None).unwrap();
        let report = Report::new(
            "ring-check",
            RingSection::new(&def, FieldSpec::Rationals, &ring),
        );
        let json = serde_json::to_string(&report).unwrap();
        assert!(
            json.starts_with(r#"{"schema_version":1,"command":"ring-check","ring":{"field":"QQ""#),
            "{json}"
        );
        assert!(
            json.contains(r#""hilbert_function":{"value":[1,1],"provenance":"engine"}"#),
            "{json}"
        );
        assert!(!json.contains("timing_ms"));
        assert_eq!(json, serde_json::to_string(&report).unwrap());
    }
}
