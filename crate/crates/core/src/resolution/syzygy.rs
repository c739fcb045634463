//! Graded Betti numbers of the residue field by direct syzygy computation.
//!
//! Works degree by degree with plain module arithmetic over `R` and does not
//! use the Koszul complex or its homology. At each step the kernel of
//! `d_i : F_i → F_{i-1}` is computed in every internal degree `j`, and new
//! generators are chosen as a complement of `Σ_v x_v·Ker_{j-1}`.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exactlin::sparse::axpy;
use crate::exactlin::{ColumnEchelon, Field, SparseVec, Subspace};
use crate::polyring::{GradedQuotientRing, RingElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleBetti {
    /// `graded[i][j] = β_{i,j}`, zero entries omitted.
    pub graded: Vec<BTreeMap<usize, usize>>,
    /// Set when the ring is not artinian and degrees were capped.
    pub truncated: bool,
    /// `max_degree[i]`: largest internal degree searched for generators of
    /// `F_i` (`i ≥ 1`); `None` when the search is complete.
    pub max_degree: Vec<Option<usize>>,
}

impl OracleBetti {
    pub fn totals(&self) -> Vec<usize> {
        self.graded.iter().map(|m| m.values().sum()).collect()
    }

    /// Compares with graded ranks of another resolution on the degrees
    /// covered by the search.
    pub fn agrees_with(&self, graded: &[BTreeMap<usize, usize>]) -> bool {
        self.graded.iter().enumerate().all(|(i, row)| {
            let Some(other) = graded.get(i) else {
                return false;
            };
            let within = |j: &usize| self.max_degree[i].is_none_or(|m| *j <= m);
            let a: BTreeMap<_, _> = row.iter().filter(|(j, _)| within(j)).collect();
            let b: BTreeMap<_, _> = other.iter().filter(|(j, _)| within(j)).collect();
            a == b
        })
    }
}

struct Step<F: Field> {
    degrees: Vec<usize>,
    /// Image of each generator: one ring element per generator of the
    /// previous module.
    images: Vec<Vec<RingElement<F>>>,
}

struct Layout {
    offsets: Vec<Option<usize>>,
    dim: usize,
}

fn layout<F: Field>(ring: &GradedQuotientRing<F>, degrees: &[usize], j: usize) -> Layout {
    let mut offsets = Vec::with_capacity(degrees.len());
    let mut dim = 0;
    for &d in degrees {
        if j >= d && ring.dim(j - d) > 0 {
            offsets.push(Some(dim));
            dim += ring.dim(j - d);
        } else {
            offsets.push(None);
        }
    }
    Layout { offsets, dim }
}

/// Coordinates in `(F)_j` of a vector of ring elements, one per generator.
fn coords<F: Field>(
    ring: &GradedQuotientRing<F>,
    degrees: &[usize],
    lay: &Layout,
    j: usize,
    v: &[RingElement<F>],
) -> SparseVec<F> {
    let mut out = Vec::new();
    for ((elem, off), &d) in v.iter().zip(&lay.offsets).zip(degrees) {
        let Some(off) = off else { continue };
        let base = ring.offset(j - d);
        let len = ring.dim(j - d);
        for (g, c) in elem {
            if *g >= base && *g < base + len {
                out.push((off + g - base, c.clone()));
            }
        }
    }
    out
}

/// `(generator, ring basis index)` for each coordinate of `(F)_j`.
fn basis<F: Field>(
    ring: &GradedQuotientRing<F>,
    degrees: &[usize],
    j: usize,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (g, &d) in degrees.iter().enumerate() {
        if j < d {
            continue;
        }
        let base = ring.offset(j - d);
        out.extend((base..base + ring.dim(j - d)).map(|b| (g, b)));
    }
    out
}

/// Computes `β_{i,j}` of the residue field for `i ≤ max_hdeg`.
///
/// For a non-artinian ring only degrees `j` with `j - i < cutoff` are
/// examined.
pub fn oracle_betti<F: Field>(
    ring: &GradedQuotientRing<F>,
    max_hdeg: usize,
) -> Result<OracleBetti> {
    let desc = ring.desc();
    let truncated = !ring.is_artinian();
    let top = ring.socle_degree().unwrap_or(ring.cutoff());
    let mut graded = vec![BTreeMap::from([(0, 1)])];
    let mut current = Step::<F> {
        degrees: vec![0],
        images: vec![Vec::new()],
    };
    let mut prev_degrees: Vec<usize> = Vec::new();
    let mut max_degree = vec![None];

    for i in 0..max_hdeg {
        let max_gen = current.degrees.iter().copied().max().unwrap_or(0);
        let mut hi = max_gen + top;
        if truncated {
            hi = hi.min(ring.cutoff() + i.max(1) - 1);
        }
        max_degree.push(truncated.then_some(hi));
        let mut new_degrees = Vec::new();
        let mut new_images = Vec::new();
        let mut last_kernel: Option<(usize, Vec<SparseVec<F>>)> = None;
        for j in 0..=hi {
            let lay = layout(ring, &current.degrees, j);
            let cols = basis(ring, &current.degrees, j);
            let kernel: Subspace<F> = if i == 0 {
                if j == 0 {
                    Subspace::zero(lay.dim)
                } else {
                    Subspace::full(lay.dim, desc)
                }
            } else {
                let tlay = layout(ring, &prev_degrees, j);
                let mut images = Vec::with_capacity(cols.len());
                for &(g, b) in &cols {
                    let img: Vec<RingElement<F>> = current.images[g]
                        .iter()
                        .map(|r| ring.multiply(&vec![(b, F::one(desc))], r))
                        .collect::<Result<_>>()?;
                    images.push(coords(ring, &prev_degrees, &tlay, j, &img));
                }
                ColumnEchelon::from_columns(tlay.dim, desc, images.iter()).kernel()
            };
            // Σ_v x_v · Ker_{j-1}
            let mut generated = Vec::new();
            if let Some((pj, vecs)) = &last_kernel {
                debug_assert_eq!(*pj + 1, j);
                let prev_cols = basis(ring, &current.degrees, j - 1);
                for w in vecs {
                    for v in 0..ring.nvars() {
                        let mut elems = vec![Vec::new(); current.degrees.len()];
                        for (t, c) in w {
                            let (g, b) = prev_cols[*t];
                            let prod = ring.mul_var(v, b)?;
                            elems[g] = axpy(&elems[g], c, &prod);
                        }
                        generated.push(coords(ring, &current.degrees, &lay, j, &elems));
                    }
                }
            }
            let generated = Subspace::span(lay.dim, desc, generated.iter());
            let fresh = generated.complement_in(&kernel, desc)?;
            for w in &fresh {
                let mut elems = vec![Vec::new(); current.degrees.len()];
                for (t, c) in w {
                    let (g, b) = cols[*t];
                    elems[g].push((b, c.clone()));
                }
                for e in &mut elems {
                    e.sort_by_key(|(b, _)| *b);
                }
                new_degrees.push(j);
                new_images.push(elems);
            }
            last_kernel = Some((j, kernel.basis().to_vec()));
        }
        let mut row = BTreeMap::new();
        for &d in &new_degrees {
            *row.entry(d).or_insert(0) += 1;
        }
        graded.push(row);
        prev_degrees = std::mem::replace(
            &mut current,
            Step {
                degrees: new_degrees,
                images: new_images,
            },
        )
        .degrees;
    }
    Ok(OracleBetti {
        graded,
        truncated,
        max_degree,
    })
}
