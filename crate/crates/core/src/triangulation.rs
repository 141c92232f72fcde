//! Perverse simplices, perverse skeleta and the perverse triangulation.
//!
//! Every flag of the subdivision is assigned to the chain member with the
//! largest perversity value (its *anchor*). The flags sharing an anchor form
//! the perverse simplex of that anchor; these partition the subdivision.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{Flag, FlagId, SimplexId, SimplicialComplex, SubdividedComplex};
use crate::perversity::{Perversity, PerversityError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TriangulationError {
    #[error(transparent)]
    Perversity(#[from] PerversityError),
    #[error("unknown simplex #{0}")]
    UnknownSimplex(SimplexId),
    #[error("skeleton level {level} outside {min}..={max}")]
    LevelOutOfRange { level: i64, min: i64, max: i64 },
}

/// The chain member of `flag` maximizing `δ(dim)`. Unique because `δ` is
/// injective and chain dimensions are distinct.
pub fn max_vertex(complex: &SimplicialComplex, flag: &Flag, perversity: &Perversity) -> SimplexId {
    *flag.chain().iter().max_by_key(|&&s| perversity.at(complex.dim(s))).expect("flags are nonempty")
}

/// Trim a perversity to the dimension of `complex`.
pub fn fit_perversity(complex: &SimplicialComplex, perversity: &Perversity) -> Result<Perversity, PerversityError> {
    perversity.restrict_to(complex.dimension())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerverseSimplex {
    pub anchor: SimplexId,
    pub level: i64,
    pub flags: BTreeSet<FlagId>,
}

#[derive(Debug, Clone)]
pub struct PerverseTriangulation {
    complex: Arc<SimplicialComplex>,
    perversity: Perversity,
    anchors: Vec<SimplexId>,
    parts: Vec<PerverseSimplex>,
}

impl PerverseTriangulation {
    pub fn new(complex: Arc<SimplicialComplex>, perversity: &Perversity) -> Result<Self, TriangulationError> {
        let perversity = fit_perversity(&complex, perversity)?;
        let sd = complex.subdivision();
        let anchors: Vec<SimplexId> = sd.flags().iter().map(|f| max_vertex(&complex, f, &perversity)).collect();
        let mut parts: Vec<PerverseSimplex> = complex
            .ids()
            .map(|s| PerverseSimplex { anchor: s, level: perversity.at(complex.dim(s)), flags: BTreeSet::new() })
            .collect();
        for (f, &a) in anchors.iter().enumerate() {
            parts[a].flags.insert(f);
        }
        Ok(PerverseTriangulation { complex, perversity, anchors, parts })
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn subdivision(&self) -> &SubdividedComplex {
        self.complex.subdivision()
    }

    pub fn perversity(&self) -> &Perversity {
        &self.perversity
    }

    /// Anchor of every flag, indexed by flag id.
    pub fn anchors(&self) -> &[SimplexId] {
        &self.anchors
    }

    pub fn anchor(&self, flag: FlagId) -> SimplexId {
        self.anchors[flag]
    }

    pub fn parts(&self) -> &[PerverseSimplex] {
        &self.parts
    }

    pub fn perverse_simplex(&self, anchor: SimplexId) -> Result<&PerverseSimplex, TriangulationError> {
        self.parts.get(anchor).ok_or(TriangulationError::UnknownSimplex(anchor))
    }

    /// Range of skeleton levels, `min δ ..= max δ`.
    pub fn levels(&self) -> std::ops::RangeInclusive<i64> {
        self.perversity.min()..=self.perversity.max()
    }

    /// Union of the perverse simplices of level at most `level`. With `clamp`
    /// levels below the range give the empty set and levels above give
    /// everything; otherwise they are an error.
    pub fn skeleton(&self, level: i64, clamp: bool) -> Result<BTreeSet<FlagId>, TriangulationError> {
        let range = self.levels();
        if !range.contains(&level) && !clamp {
            return Err(TriangulationError::LevelOutOfRange { level, min: *range.start(), max: *range.end() });
        }
        Ok(self.parts.iter().filter(|p| p.level <= level).flat_map(|p| p.flags.iter().copied()).collect())
    }

    /// Perverse simplices of exactly this level.
    pub fn stratum(&self, level: i64) -> Vec<&PerverseSimplex> {
        self.parts.iter().filter(|p| p.level == level).collect()
    }

    /// Pairwise disjoint and covering all flags.
    pub fn is_partition(&self) -> bool {
        let mut seen = vec![false; self.subdivision().len()];
        for p in &self.parts {
            for &f in &p.flags {
                if std::mem::replace(&mut seen[f], true) {
                    return false;
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Components of `X_k - X_{k-1}` agree with the level-`k` perverse
    /// simplices for every level. Returns the first level where they do not.
    pub fn check_components(&self) -> Result<(), i64> {
        let sd = self.subdivision();
        for level in self.levels() {
            let below = self.skeleton(level - 1, true).expect("clamped");
            let here = self.skeleton(level, false).expect("in range");
            let difference: BTreeSet<FlagId> = here.difference(&below).copied().collect();
            let found: BTreeSet<BTreeSet<FlagId>> = connected_components(sd, &difference).into_iter().collect();
            let expected: BTreeSet<BTreeSet<FlagId>> =
                self.stratum(level).into_iter().map(|p| p.flags.clone()).filter(|f| !f.is_empty()).collect();
            if found != expected {
                return Err(level);
            }
        }
        Ok(())
    }

    pub fn census(&self) -> TriangulationCensus {
        let sd = self.subdivision();
        let anchors = self
            .parts
            .iter()
            .map(|p| AnchorCensus {
                anchor: self.complex.key(p.anchor),
                level: p.level,
                flags: p.flags.len(),
                components: connected_components(sd, &p.flags).len(),
            })
            .collect();
        let skeleta =
            self.levels().map(|k| (k.to_string(), self.skeleton(k, false).expect("in range").len())).collect();
        TriangulationCensus {
            perversity: self.perversity.values().to_vec(),
            total_flags: sd.len(),
            anchors,
            skeleta,
            partition: self.is_partition(),
            components_match: self.check_components().is_ok(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnchorCensus {
    pub anchor: String,
    pub level: i64,
    pub flags: usize,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangulationCensus {
    pub perversity: Vec<i64>,
    pub total_flags: usize,
    pub anchors: Vec<AnchorCensus>,
    /// Skeleton size per level, keyed by the level as text.
    pub skeleta: BTreeMap<String, usize>,
    pub partition: bool,
    pub components_match: bool,
}

/// Components of the graph on `flags` joining two flags when one chain is a
/// subchain of the other. Components come out sorted by smallest member.
pub fn connected_components(sd: &SubdividedComplex, flags: &BTreeSet<FlagId>) -> Vec<BTreeSet<FlagId>> {
    let members: Vec<FlagId> = flags.iter().copied().collect();
    let mut component = vec![usize::MAX; members.len()];
    let mut out = Vec::new();
    for start in 0..members.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut set = BTreeSet::new();
        let mut stack = vec![start];
        component[start] = id;
        while let Some(i) = stack.pop() {
            set.insert(members[i]);
            let fi = sd.flag(members[i]);
            for j in 0..members.len() {
                if component[j] != usize::MAX {
                    continue;
                }
                let fj = sd.flag(members[j]);
                if fi.is_face_of(fj) || fj.is_face_of(fi) {
                    component[j] = id;
                    stack.push(j);
                }
            }
        }
        out.push(set);
    }
    out
}
