//! End-to-end pipeline from a quotient ring to its numeric invariants.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::homalg::{HomologyAlgebra, MAX_HDEG};
use crate::invariants::{InvariantInput, InvariantReport, MAX_RANKS};
use crate::polyring::GradedQuotientRing;
use crate::resolution::ResolutionF;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodepthSource {
    /// Artinian ring: `c = n`.
    Artinian,
    /// `c = n − depth` with a user-declared depth.
    Declared,
    /// Largest `i ≤ 4` with `a_i ≠ 0`.
    Inferred,
}

impl CodepthSource {
    pub fn as_str(self) -> &'static str {
        match self {
            CodepthSource::Artinian => "artinian",
            CodepthSource::Declared => "declared",
            CodepthSource::Inferred => "inferred",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Codepth {
    pub value: usize,
    pub source: CodepthSource,
}

#[derive(Clone, Debug)]
pub struct Analysis<F: Field> {
    pub ring: Arc<GradedQuotientRing<F>>,
    pub algebra: HomologyAlgebra<F>,
    pub codepth: Codepth,
    pub input: InvariantInput,
    pub invariants: InvariantReport,
}

/// `H_i(K) ≠ 0` exactly for `i ≤ c`, so the last nonzero computed rank
/// bounds the codepth.
fn codepth<F: Field>(alg: &HomologyAlgebra<F>, depth: Option<usize>) -> Result<Codepth> {
    let n = alg.koszul().n();
    let top = (1..=MAX_HDEG.min(n))
        .rev()
        .find(|&i| alg.a(i) != 0)
        .unwrap_or(0);
    if alg.ring().is_artinian() {
        return Ok(Codepth {
            value: n,
            source: CodepthSource::Artinian,
        });
    }
    match depth {
        Some(d) => {
            let c = n - d;
            if c.min(MAX_HDEG) != top {
                return Err(Error::Inconsistent(format!(
                    "declared depth {d} gives codepth {c}, but the last nonzero Koszul homology is in degree {top}"
                )));
            }
            Ok(Codepth {
                value: c,
                source: CodepthSource::Declared,
            })
        }
        None => Ok(Codepth {
            value: top,
            source: CodepthSource::Inferred,
        }),
    }
}

impl<F: Field> Analysis<F> {
    pub fn run(ring: Arc<GradedQuotientRing<F>>, depth: Option<usize>) -> Result<Self> {
        let algebra = HomologyAlgebra::compute(ring.clone())?;
        let codepth = codepth(&algebra, depth)?;
        let m = codepth.value.min(MAX_RANKS as usize);
        let input = InvariantInput {
            n: ring.nvars() as i64,
            c: codepth.value as i64,
            ranks: (1..=m).map(|i| algebra.a(i) as i64).collect(),
            q11: algebra.q11() as i64,
            q12: algebra.q12() as i64,
            q13: algebra.q13() as i64,
            q22: algebra.q22() as i64,
            a: algebra.a_rank() as i64,
            b: algebra.b as i64,
        };
        let invariants = InvariantReport::compute(&input)?;
        Ok(Analysis {
            ring,
            algebra,
            codepth,
            input,
            invariants,
        })
    }

    pub fn resolution(&self) -> ResolutionF<F> {
        ResolutionF::build(&self.algebra)
    }
}
