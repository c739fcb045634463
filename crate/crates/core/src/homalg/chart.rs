//! Coordinate charts on `A_i = H_i(K)`.
//!
//! For every internal degree `j` the chart keeps the cycles and boundaries
//! of `K_{i,j}`, representatives completing the boundaries to the cycles,
//! and an elimination of `∂_{i+1}` at `j` used for lifting boundaries.
//! Classes are numbered by ascending `j`, then by representative.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::{ColumnEchelon, Decomposer, Field, SparseVec, Subspace};
use crate::koszul::{KoszulComplex, KoszulElement};

/// A Koszul element together with its internal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graded<F: Field> {
    pub element: KoszulElement<F>,
    pub degree: usize,
}

#[derive(Clone, Debug)]
pub struct ChartPiece<F: Field> {
    pub cycles: Subspace<F>,
    pub boundaries: Subspace<F>,
    pub reps: Vec<SparseVec<F>>,
    decomposer: Decomposer<F>,
    lifter: Option<ColumnEchelon<F>>,
}

#[derive(Clone, Debug)]
pub struct HomologyChart<F: Field> {
    hdeg: usize,
    pieces: BTreeMap<usize, ChartPiece<F>>,
    offsets: BTreeMap<usize, usize>,
    reps: Vec<Graded<F>>,
    /// Largest ring degree `j - i` covered by the chart.
    max_ring_degree: usize,
    /// Whether components beyond the chart are known to vanish.
    closed: bool,
}

/// Largest ring degree at which homology can be computed.
pub fn homology_ring_degree_limit<F: Field>(k: &KoszulComplex<F>) -> usize {
    let r = k.ring();
    match r.socle_degree() {
        Some(s) => s,
        None => r.cutoff().saturating_sub(1),
    }
}

impl<F: Field> HomologyChart<F> {
    pub fn build(k: &KoszulComplex<F>, i: usize) -> Result<Self> {
        let dmax = homology_ring_degree_limit(k);
        let n = k.n();
        let degrees: Vec<usize> = if i <= n {
            (i..=i + dmax).collect()
        } else {
            Vec::new()
        };
        let built: Vec<Result<(usize, ChartPiece<F>)>> = degrees
            .par_iter()
            .map(|&j| Self::piece(k, i, j).map(|p| (j, p)))
            .collect();
        let mut pieces = BTreeMap::new();
        let mut offsets = BTreeMap::new();
        let mut reps = Vec::new();
        for item in built {
            let (j, piece) = item?;
            offsets.insert(j, reps.len());
            for v in &piece.reps {
                reps.push(Graded {
                    element: k.from_coords(i, j, v),
                    degree: j,
                });
            }
            pieces.insert(j, piece);
        }
        Ok(HomologyChart {
            hdeg: i,
            pieces,
            offsets,
            reps,
            max_ring_degree: dmax,
            closed: k.ring().is_artinian(),
        })
    }

    fn piece(k: &KoszulComplex<F>, i: usize, j: usize) -> Result<ChartPiece<F>> {
        let desc = k.desc();
        let cycles = k.cycle_space(i, j)?;
        let lifter = if i < k.n() {
            Some(k.differential_echelon(i + 1, j)?)
        } else {
            None
        };
        let boundaries = match &lifter {
            Some(l) => l.image(),
            None => Subspace::zero(k.piece_dim(i, j)),
        };
        let reps = boundaries.complement_in(&cycles, desc)?;
        let decomposer = Decomposer::new(
            k.piece_dim(i, j),
            desc,
            boundaries.basis().iter().chain(&reps),
        )?;
        Ok(ChartPiece {
            cycles,
            boundaries,
            reps,
            decomposer,
            lifter,
        })
    }

    pub fn hdeg(&self) -> usize {
        self.hdeg
    }

    /// `a_i`.
    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Graded<F>] {
        &self.reps
    }

    pub fn pieces(&self) -> &BTreeMap<usize, ChartPiece<F>> {
        &self.pieces
    }

    /// `(internal degree, rank)` for every degree with nonzero homology.
    pub fn rank_by_degree(&self) -> Vec<(usize, usize)> {
        self.pieces
            .iter()
            .filter(|(_, p)| !p.reps.is_empty())
            .map(|(j, p)| (*j, p.reps.len()))
            .collect()
    }

    /// Whether homology appears at the last ring degree covered.
    pub fn touches_limit(&self) -> bool {
        self.pieces
            .get(&(self.hdeg + self.max_ring_degree))
            .is_some_and(|p| !p.reps.is_empty())
    }

    fn piece_for(&self, j: usize) -> Result<Option<&ChartPiece<F>>> {
        match self.pieces.get(&j) {
            Some(p) => Ok(Some(p)),
            None if self.closed || j < self.hdeg => Ok(None),
            None => Err(Error::DegreeOverflow {
                degree: j,
                cutoff: self.hdeg + self.max_ring_degree,
            }),
        }
    }

    /// Coordinates of the class of a cycle. The caller guarantees `e` is a
    /// cycle of homological degree `hdeg`.
    pub fn class_of_cycle(
        &self,
        k: &KoszulComplex<F>,
        e: &KoszulElement<F>,
    ) -> Result<SparseVec<F>> {
        let mut out = Vec::new();
        for j in e.internal_degrees(k.ring()) {
            let Some(piece) = self.piece_for(j)? else {
                continue;
            };
            let v = k.to_coords(e, j);
            let c = piece.decomposer.coords(&v).ok_or(Error::NotACycle)?;
            let nb = piece.boundaries.rank();
            let off = self.offsets[&j];
            out.extend(
                c.into_iter()
                    .filter(|(t, _)| *t >= nb)
                    .map(|(t, x)| (off + t - nb, x)),
            );
        }
        Ok(out)
    }

    /// Deterministic preimage under `∂_{i+1}`.
    pub fn lift(
        &self,
        k: &KoszulComplex<F>,
        target: &KoszulElement<F>,
    ) -> Result<KoszulElement<F>> {
        let i = self.hdeg;
        let mut out = KoszulElement::zero(i + 1);
        for j in target.internal_degrees(k.ring()) {
            let piece = self.piece_for(j)?.ok_or(Error::NotABoundary)?;
            let lifter = piece.lifter.as_ref().ok_or(Error::NotABoundary)?;
            let x = lifter
                .solve(&k.to_coords(target, j))
                .ok_or(Error::NotABoundary)?;
            out.add_scaled(&F::one(k.desc()), &k.from_coords(i + 1, j, &x));
        }
        Ok(out)
    }

    /// Linear combination of representatives.
    pub fn element_of(&self, coords: &[(usize, F)]) -> KoszulElement<F> {
        let mut e = KoszulElement::zero(self.hdeg);
        for (t, c) in coords {
            e.add_scaled(c, &self.reps[*t].element);
        }
        e
    }

    pub fn degree_of(&self, t: usize) -> usize {
        self.reps[t].degree
    }
}
