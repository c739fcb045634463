//! Deliberate corruptions of `F` used to exercise the verifier.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::construction::{BlockMap, GroupKind, ResolutionF};
use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::koszul::KoszulElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Negates the block of `∂_hdeg` from group `source` to group `target`.
    FlipSign {
        hdeg: usize,
        source: GroupKind,
        target: GroupKind,
    },
    /// Removes a summand group of `F_5`.
    DropGroup(GroupKind),
    /// Replaces the first wedge entry of `∂_hdeg` by `T_S ∧ -` with a unit coefficient.
    UnitEntry { hdeg: usize },
}

/// Seeded single-block sign flips of `∂_3`, `∂_4`, `∂_5`.
pub const SIGN_FLIPS: [Fault; 5] = [
    Fault::FlipSign {
        hdeg: 3,
        source: GroupKind::Z2,
        target: GroupKind::K,
    },
    Fault::FlipSign {
        hdeg: 4,
        source: GroupKind::Pi3,
        target: GroupKind::K,
    },
    Fault::FlipSign {
        hdeg: 4,
        source: GroupKind::Pi3,
        target: GroupKind::Z1,
    },
    Fault::FlipSign {
        hdeg: 5,
        source: GroupKind::Z2Z1,
        target: GroupKind::Z1,
    },
    Fault::FlipSign {
        hdeg: 5,
        source: GroupKind::Z2Z1,
        target: GroupKind::Z2,
    },
];

fn kind_from(s: &str) -> Option<GroupKind> {
    use GroupKind::*;
    [K, Z1, Z2, Z3, Z4, Pi3, Pi4, Z2Z1]
        .into_iter()
        .find(|k| k.key() == s)
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fault::FlipSign {
                hdeg,
                source,
                target,
            } => write!(f, "flip:d{hdeg}:{}:{}", source.key(), target.key()),
            Fault::DropGroup(kind) => write!(f, "drop:{}", kind.key()),
            Fault::UnitEntry { hdeg } => write!(f, "unit:d{hdeg}"),
        }
    }
}

impl FromStr for Fault {
    type Err = Error;

    /// Accepts `flip:d<i>:<source>:<target>`, `drop:<group>`, `unit:d<i>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("unknown fault `{s}`"));
        let hdeg = |t: &str| -> Result<usize> {
            t.strip_prefix('d')
                .and_then(|d| d.parse().ok())
                .filter(|d| (1..=5).contains(d))
                .ok_or_else(bad)
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["drop", g] => Ok(Fault::DropGroup(kind_from(g).ok_or_else(bad)?)),
            ["unit", d] => Ok(Fault::UnitEntry { hdeg: hdeg(d)? }),
            ["flip", d, src, dst] => Ok(Fault::FlipSign {
                hdeg: hdeg(d)?,
                source: kind_from(src).ok_or_else(bad)?,
                target: kind_from(dst).ok_or_else(bad)?,
            }),
            _ => Err(bad()),
        }
    }
}

impl<F: Field> ResolutionF<F> {
    pub fn inject(&mut self, fault: &Fault) -> Result<()> {
        match *fault {
            Fault::FlipSign {
                hdeg,
                source,
                target,
            } => {
                let sg = self.modules[hdeg].group_of(source);
                let tg = self.modules[hdeg - 1].group_of(target);
                let block = self.differentials[hdeg - 1]
                    .blocks
                    .iter_mut()
                    .find(|b| {
                        Some(b.source_group) == sg
                            && Some(b.target_group) == tg
                            && !b.entries.is_empty()
                    })
                    .ok_or_else(|| {
                        Error::Input(format!("fault `{fault}` selects an empty block"))
                    })?;
                for e in &mut block.entries {
                    e.negate = !e.negate;
                }
                block.label = format!("{} (flipped)", block.label);
            }
            Fault::DropGroup(kind) => {
                let m = &mut self.modules[5];
                let g = m.group_of(kind).ok_or_else(|| {
                    Error::Input(format!("fault `{fault}` selects a missing group"))
                })?;
                let kept: Vec<bool> = m.summands.iter().map(|s| s.group != g).collect();
                let mut remap = Vec::with_capacity(kept.len());
                let mut next = 0;
                for &k in &kept {
                    remap.push(k.then_some(next));
                    next += usize::from(k);
                }
                m.summands.retain(|s| s.group != g);
                m.groups.remove(g);
                for s in &mut m.summands {
                    if s.group > g {
                        s.group -= 1;
                    }
                }
                let d = &mut self.differentials[4];
                d.blocks.retain(|b| b.source_group != g);
                for b in &mut d.blocks {
                    if b.source_group > g {
                        b.source_group -= 1;
                    }
                    for e in &mut b.entries {
                        e.source = remap[e.source].expect("kept summand");
                    }
                }
            }
            Fault::UnitEntry { hdeg } => {
                let one = self.koszul().ring().one();
                let d = &mut self.differentials[hdeg - 1];
                let entry = d
                    .blocks
                    .iter_mut()
                    .flat_map(|b| b.entries.iter_mut())
                    .find(|e| matches!(e.map, BlockMap::Wedge(_)))
                    .ok_or_else(|| Error::Input(format!("fault `{fault}` finds no wedge block")))?;
                let BlockMap::Wedge(w) = &entry.map else {
                    unreachable!()
                };
                let t = (1u32 << w.hdeg()) - 1;
                entry.map = BlockMap::Wedge(Arc::new(KoszulElement::monomial(t, one)));
            }
        }
        Ok(())
    }
}
