//! Checks that `F` is a complex, exact in low degrees, and minimal.

use rayon::prelude::*;

use super::construction::{BlockMap, ResolutionF, MAX_F_DEGREE};
use crate::error::Result;
use crate::exactlin::{Echelon, Field, SparseVec};
use crate::koszul::KoszulElement;

/// Composite `∂_{i-1}∘∂_i` on one generator that failed to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFailure {
    pub hdeg: usize,
    pub group: String,
    pub copy: usize,
    pub generator: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexReport {
    /// `(i, ok)` for the composites `∂_{i-1}∘∂_i`, `i = 2..=5`.
    pub composites: Vec<(usize, bool)>,
    pub failures: Vec<ComplexFailure>,
}

impl ComplexReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Ranks at one internal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCheck {
    pub hdeg: usize,
    pub degree: usize,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    /// `dim - rank_out - rank_in`: the homology dimension at `(hdeg, degree)`
    /// for a complex, negative when the image exceeds the kernel.
    pub homology: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    /// One entry per `(i, j)` with `1 ≤ i ≤ 4` and `(F_i)_j ≠ 0`.
    pub checks: Vec<DegreeCheck>,
    /// `coker ∂_1 = k` checked degree by degree.
    pub augmentation_ok: bool,
    /// Set when the ring is not artinian and only degrees up to the cutoff
    /// bound were checked.
    pub truncated: bool,
    /// Largest internal degree checked for each `i` (index `i - 1`).
    pub max_degree: Vec<usize>,
}

impl ExactnessReport {
    pub fn ok(&self) -> bool {
        self.augmentation_ok && self.checks.iter().all(|c| c.homology == 0)
    }

    /// `(hdeg, degree)` pairs where homology survives.
    pub fn failures(&self) -> Vec<(usize, usize)> {
        self.checks
            .iter()
            .filter(|c| c.homology != 0)
            .map(|c| (c.hdeg, c.degree))
            .collect()
    }

    pub fn first_failing_hdeg(&self) -> Option<usize> {
        self.failures().into_iter().map(|(i, _)| i).min()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityReport {
    /// Labels `d{i}:{source}->{target}:{block}` of blocks with a unit entry.
    pub offending: Vec<String>,
}

impl MinimalityReport {
    pub fn ok(&self) -> bool {
        self.offending.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub complex: ComplexReport,
    pub exactness: ExactnessReport,
    pub minimality: MinimalityReport,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.complex.ok() && self.exactness.ok() && self.minimality.ok()
    }
}

impl<F: Field> ResolutionF<F> {
    pub fn verify(&self) -> Result<VerificationReport> {
        Ok(VerificationReport {
            complex: self.verify_complex()?,
            exactness: self.verify_exactness()?,
            minimality: self.verify_minimality(),
        })
    }

    pub fn verify_complex(&self) -> Result<ComplexReport> {
        let n = self.n();
        let mut composites = Vec::new();
        let mut failures = Vec::new();
        for i in 2..=MAX_F_DEGREE {
            let module = &self.modules[i];
            let jobs: Vec<(usize, u32)> = module
                .summands
                .iter()
                .enumerate()
                .flat_map(|(idx, s)| {
                    self.koszul()
                        .subsets(s.koszul_degree)
                        .iter()
                        .map(move |&t| (idx, t))
                })
                .collect();
            let bad: Vec<Result<Option<(usize, u32)>>> = jobs
                .par_iter()
                .map(|&(idx, t)| {
                    let g = self.generator(i, idx, t);
                    let once = self.apply(i, &g)?;
                    let twice = self.apply(i - 1, &once)?;
                    Ok(if twice.iter().all(KoszulElement::is_zero) {
                        None
                    } else {
                        Some((idx, t))
                    })
                })
                .collect();
            let mut ok = true;
            for item in bad {
                if let Some((idx, t)) = item? {
                    ok = false;
                    let s = module.summands[idx];
                    failures.push(ComplexFailure {
                        hdeg: i,
                        group: module.groups[s.group].label(),
                        copy: s.copy,
                        generator: crate::koszul::index_label(t, n),
                    });
                }
            }
            composites.push((i, ok));
        }
        Ok(ComplexReport {
            composites,
            failures,
        })
    }

    /// Internal degrees `j` where `(F_i)_j` can be nonzero.
    fn degree_range(&self, i: usize) -> Option<(usize, usize)> {
        let ring = self.koszul().ring();
        let top = ring.socle_degree().unwrap_or(ring.cutoff());
        let m = &self.modules[i];
        let lo = m.summands.iter().map(|s| s.shift + s.koszul_degree).min()?;
        let hi = m
            .summands
            .iter()
            .map(|s| s.shift + s.koszul_degree + top)
            .max()?;
        Some((lo, hi))
    }

    /// `dim (F_i)_j` and the offset of every summand at degree `j`.
    fn layout(&self, i: usize, j: usize) -> (usize, Vec<usize>) {
        let k = self.koszul();
        let mut offsets = Vec::new();
        let mut total = 0;
        for s in &self.modules[i].summands {
            offsets.push(total);
            if j >= s.shift {
                total += k.piece_dim(s.koszul_degree, j - s.shift);
            }
        }
        (total, offsets)
    }

    /// Rank of `∂_i` restricted to internal degree `j`.
    pub fn rank_at(&self, i: usize, j: usize) -> Result<usize> {
        let k = self.koszul();
        let ring = k.ring();
        let (target_dim, target_offsets) = self.layout(i - 1, j);
        let mut ech = Echelon::new(target_dim, k.desc());
        let module = &self.modules[i];
        for (idx, s) in module.summands.iter().enumerate() {
            if j < s.shift + s.koszul_degree {
                continue;
            }
            let d = j - s.shift - s.koszul_degree;
            let dim_d = ring.dim(d);
            if dim_d == 0 {
                continue;
            }
            let base = ring.offset(d);
            for &t in k.subsets(s.koszul_degree) {
                for g in base..base + dim_d {
                    let mut x = self.generator(i, idx, t);
                    x[idx] = KoszulElement::monomial(t, vec![(g, F::one(k.desc()))]);
                    let img = self.apply(i, &x)?;
                    let mut col: SparseVec<F> = Vec::new();
                    for (tidx, (e, ts)) in img.iter().zip(&self.modules[i - 1].summands).enumerate()
                    {
                        if e.is_zero() || j < ts.shift {
                            continue;
                        }
                        let off = target_offsets[tidx];
                        col.extend(
                            k.to_coords(e, j - ts.shift)
                                .into_iter()
                                .map(|(c, v)| (c + off, v)),
                        );
                    }
                    ech.insert(&col);
                    if ech.rank() == target_dim {
                        return Ok(target_dim);
                    }
                }
            }
        }
        Ok(ech.rank())
    }

    pub fn verify_exactness(&self) -> Result<ExactnessReport> {
        let ring = self.koszul().ring();
        let truncated = !ring.is_artinian();
        let cutoff = ring.cutoff();
        let bound = |i: usize, hi: usize| {
            if truncated {
                hi.min(cutoff + i - 1)
            } else {
                hi
            }
        };

        let mut jobs = Vec::new();
        let mut max_degree = Vec::new();
        for i in 1..=4 {
            let Some((lo, hi)) = self.degree_range(i) else {
                max_degree.push(0);
                continue;
            };
            let hi = bound(i, hi);
            max_degree.push(hi);
            jobs.extend((lo..=hi).map(|j| (i, j)));
        }
        let aug_hi = bound(1, ring.socle_degree().unwrap_or(cutoff) + 1);
        let aug_jobs: Vec<usize> = (0..=aug_hi).collect();

        let checks: Vec<Result<Option<DegreeCheck>>> = jobs
            .par_iter()
            .map(|&(i, j)| {
                let (dim, _) = self.layout(i, j);
                if dim == 0 {
                    return Ok(None);
                }
                let rank_in = self.rank_at(i + 1, j)?;
                let rank_out = self.rank_at(i, j)?;
                Ok(Some(DegreeCheck {
                    hdeg: i,
                    degree: j,
                    dim,
                    rank_in,
                    rank_out,
                    homology: dim as i64 - rank_in as i64 - rank_out as i64,
                }))
            })
            .collect();
        let checks = checks
            .into_iter()
            .filter_map(|c| c.transpose())
            .collect::<Result<Vec<_>>>()?;

        let aug: Vec<Result<bool>> = aug_jobs
            .par_iter()
            .map(|&j| {
                let r = self.rank_at(1, j)?;
                Ok(if j == 0 { r == 0 } else { r == ring.dim(j) })
            })
            .collect();
        let augmentation_ok = aug
            .into_iter()
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);

        Ok(ExactnessReport {
            checks,
            augmentation_ok,
            truncated,
            max_degree,
        })
    }

    pub fn verify_minimality(&self) -> MinimalityReport {
        let mut offending = Vec::new();
        for d in &self.differentials {
            let src = &self.modules[d.hdeg];
            let dst = &self.modules[d.hdeg - 1];
            for b in &d.blocks {
                let bad = b.entries.iter().any(|e| match &e.map {
                    BlockMap::Koszul => false,
                    BlockMap::Wedge(w) => !w.in_max_ideal(),
                });
                if bad {
                    offending.push(format!(
                        "d{}:{}->{}:{}",
                        d.hdeg,
                        src.groups[b.source_group].label(),
                        dst.groups[b.target_group].label(),
                        b.label
                    ));
                }
            }
        }
        MinimalityReport { offending }
    }
}
