//! Minimal graded projective resolutions of simple modules, Betti tables,
//! Koszulity and the comparison of Ext dimensions with a dual algebra.
//!
//! Step `i` of the resolution of `S_w` is a sum of shifted projectives
//! `P_v⟨j⟩`. Generators of each kernel are chosen degree by degree as a
//! complement of the part reachable by arrows from lower degrees, which is
//! exactly the kernel modulo its radical. The Betti number `b_{i,j}(v)`
//! counts the summands `P_v⟨j⟩` at step `i`, and equals
//! `dim Ext^i(S_w, S_v)_j`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{AlgebraError, QuadraticQuiverAlgebra};
use crate::cellular::CellularData;
use crate::linalg::{is_zero_vec, Matrix, RowSpan, Q};
use crate::module::FreeModule;
use crate::quiver::{ArrowId, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KoszulError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("resolution of the simple at node {simple} did not terminate within {steps} steps")]
    MaxSteps { simple: NodeId, steps: usize },
    #[error("the two algebras have different numbers of nodes")]
    NodeMismatch,
    #[error("degree-one Ext does not match the dual algebra's arrows in either orientation")]
    Calibration,
}

/// A graded module: a space per node and degree, and degree-raising
/// arrow actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    dims: BTreeMap<(NodeId, usize), usize>,
    actions: BTreeMap<(ArrowId, usize), Matrix>,
    nodes: usize,
}

impl GradedModule {
    pub fn dim(&self, node: NodeId, degree: usize) -> usize {
        self.dims.get(&(node, degree)).copied().unwrap_or(0)
    }

    /// Total dimension in each degree.
    pub fn degree_dimensions(&self) -> Vec<usize> {
        let top = self.dims.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut out = vec![0; top + 1];
        for (&(_, j), &d) in &self.dims {
            out[j] += d;
        }
        while out.len() > 1 && out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    pub fn total_dimension(&self) -> usize {
        self.dims.values().sum()
    }

    /// Forget the grading.
    pub fn flatten(&self, alg: &QuadraticQuiverAlgebra) -> CellularData {
        let quiver = alg.quiver();
        let top = self.dims.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut offsets = vec![vec![0; top + 2]; self.nodes];
        let mut stalks = vec![0; self.nodes];
        for (u, row) in offsets.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = stalks[u];
                stalks[u] += self.dim(u, j);
            }
        }
        let maps = (0..quiver.arrows().len())
            .map(|a| {
                let (s, t) = quiver.arrow(a);
                let mut m = Matrix::zeros(stalks[t], stalks[s]);
                for j in 0..=top {
                    if let Some(block) = self.actions.get(&(a, j)) {
                        for r in 0..block.rows() {
                            for c in 0..block.cols() {
                                m.set(offsets[t][j + 1] + r, offsets[s][j] + c, block.get(r, c).clone());
                            }
                        }
                    }
                }
                m
            })
            .collect();
        CellularData::new(quiver.clone(), stalks, maps).expect("graded blocks fit")
    }
}

/// The indecomposable projective `P_v`: basis paths starting at `v`.
pub fn projective(alg: &QuadraticQuiverAlgebra, v: NodeId) -> Result<GradedModule, AlgebraError> {
    let free = FreeModule::new(alg, vec![(v, 0)])?;
    let quiver = alg.quiver();
    let mut dims = BTreeMap::new();
    let mut actions = BTreeMap::new();
    for j in 0..=free.max_degree() {
        for u in 0..quiver.len() {
            let d = free.piece_dim(u, j);
            if d > 0 {
                dims.insert((u, j), d);
            }
        }
    }
    for j in 0..=free.max_degree() {
        for a in 0..quiver.arrows().len() {
            let (s, t) = quiver.arrow(a);
            let (ds, dt) = (free.piece_dim(s, j), free.piece_dim(t, j + 1));
            if ds == 0 || dt == 0 {
                continue;
            }
            let mut m = Matrix::zeros(dt, ds);
            for c in 0..ds {
                let mut e = vec![Q::zero(); ds];
                e[c] = num_traits::One::one();
                for (r, x) in free.act(a, j, &e).into_iter().enumerate() {
                    m.set(r, c, x);
                }
            }
            actions.insert((a, j), m);
        }
    }
    Ok(GradedModule { dims, actions, nodes: quiver.len() })
}

/// One term `P^i` of a resolution with the images of its generators
/// under the differential into `P^{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionStep {
    /// Summands `(v, j)` standing for `P_v⟨j⟩`.
    pub summands: Vec<(NodeId, usize)>,
    /// For each summand, its image: a vector in the piece `(v, j)` of the
    /// previous term. Empty at step 0.
    pub images: Vec<Vec<Q>>,
}

/// Self-checks carried out while resolving.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResolutionChecks {
    /// Image of each differential equals the kernel of the previous one,
    /// piece by piece.
    pub exact: bool,
    /// Differentials land in the radical.
    pub minimal: bool,
    /// Consecutive differentials compose to zero.
    pub complex: bool,
    /// The alternating sum of the terms' dimension vectors is the simple.
    pub euler: bool,
}

impl ResolutionChecks {
    pub fn all(&self) -> bool {
        self.exact && self.minimal && self.complex && self.euler
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedResolution {
    pub simple: NodeId,
    pub steps: Vec<ResolutionStep>,
    pub checks: ResolutionChecks,
}

/// `step ↦ degree ↦ node ↦ multiplicity`.
pub type BettiTable = BTreeMap<usize, BTreeMap<usize, BTreeMap<NodeId, usize>>>;

impl GradedResolution {
    /// Index of the last nonzero term.
    pub fn length(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn betti(&self) -> BettiTable {
        let mut table = BettiTable::new();
        for (i, step) in self.steps.iter().enumerate() {
            for &(v, j) in &step.summands {
                *table.entry(i).or_default().entry(j).or_default().entry(v).or_default() += 1;
            }
        }
        table
    }

    /// Every step-`i` summand is generated in degree `i`.
    pub fn is_linear(&self) -> bool {
        self.steps.iter().enumerate().all(|(i, s)| s.summands.iter().all(|&(_, j)| j == i))
    }

    /// `dim Ext^i(S_simple, S_v)`, summed over internal degrees.
    pub fn ext_dimension(&self, i: usize, v: NodeId) -> usize {
        self.steps.get(i).map_or(0, |s| s.summands.iter().filter(|&&(u, _)| u == v).count())
    }
}

/// Minimal graded projective resolution of the simple at `w`.
pub fn minimal_resolution(
    alg: &QuadraticQuiverAlgebra,
    w: NodeId,
    max_steps: usize,
) -> Result<GradedResolution, KoszulError> {
    let quiver = alg.quiver();
    if w >= quiver.len() {
        return Err(AlgebraError::UnknownNode(w).into());
    }
    let nodes = quiver.len();
    let mut steps = vec![ResolutionStep { summands: vec![(w, 0)], images: Vec::new() }];
    let mut checks = ResolutionChecks { exact: true, minimal: true, complex: true, euler: true };

    // Kernel of P_w -> S_w: everything in positive degree.
    let first = FreeModule::new(alg, vec![(w, 0)])?;
    let mut kernel: BTreeMap<(NodeId, usize), Matrix> = BTreeMap::new();
    for j in 1..=first.max_degree() {
        for u in 0..nodes {
            let d = first.piece_dim(u, j);
            if d > 0 {
                kernel.insert((u, j), Matrix::identity(d));
            }
        }
    }

    loop {
        if kernel.values().all(|m| m.rows() == 0) {
            break;
        }
        if steps.len() > max_steps {
            return Err(KoszulError::MaxSteps { simple: w, steps: max_steps });
        }
        let current = FreeModule::new(alg, steps.last().unwrap().summands.clone())?;

        // Minimal generators: kernel elements not reachable by arrows from
        // the kernel one degree lower.
        let mut summands = Vec::new();
        let mut images = Vec::new();
        let top = kernel.keys().map(|&(_, j)| j).max().unwrap_or(0);
        for j in 0..=top {
            for u in 0..nodes {
                let Some(k) = kernel.get(&(u, j)) else { continue };
                let mut span = RowSpan::new(k.cols());
                if j > 0 {
                    for &a in quiver.incoming(u) {
                        let t = quiver.arrow(a).0;
                        if let Some(lower) = kernel.get(&(t, j - 1)) {
                            for r in 0..lower.rows() {
                                span.insert(&current.act(a, j - 1, lower.row(r)));
                            }
                        }
                    }
                }
                for r in 0..k.rows() {
                    if span.insert(k.row(r)) {
                        summands.push((u, j));
                        images.push(k.row(r).to_vec());
                    }
                }
            }
        }

        for (&(u, j), image) in summands.iter().zip(&images) {
            let unit_part = current
                .blocks(u, j)
                .iter()
                .filter(|b| current.summands()[b.summand].1 == j)
                .any(|b| !is_zero_vec(&image[b.offset..b.offset + b.dim]));
            if unit_part {
                checks.minimal = false;
            }
        }

        let next = FreeModule::new(alg, summands.clone())?;
        if steps.len() >= 2 {
            let previous = FreeModule::new(alg, steps[steps.len() - 2].summands.clone())?;
            let prev_images = &steps.last().unwrap().images;
            for (&(u, j), image) in summands.iter().zip(&images) {
                let d = current.hom_matrix(&previous, prev_images, u, j);
                if !is_zero_vec(&d.apply(image)) {
                    checks.complex = false;
                }
            }
        }

        let mut next_kernel = BTreeMap::new();
        for j in 0..=next.max_degree() {
            for u in 0..nodes {
                if next.piece_dim(u, j) == 0 {
                    continue;
                }
                let d = next.hom_matrix(&current, &images, u, j);
                let expected = kernel.get(&(u, j)).map_or(0, Matrix::rows);
                if d.rank() != expected {
                    checks.exact = false;
                }
                let null = d.nullspace();
                if null.rows() > 0 {
                    next_kernel.insert((u, j), null);
                }
            }
        }
        // Pieces of the current kernel untouched by the new term must be zero.
        for (&(u, j), k) in &kernel {
            if k.rows() > 0 && next.piece_dim(u, j) == 0 {
                checks.exact = false;
            }
        }

        steps.push(ResolutionStep { summands, images });
        kernel = next_kernel;
    }

    checks.euler = euler_characteristic_is_simple(alg, &steps, w)?;
    Ok(GradedResolution { simple: w, steps, checks })
}

fn euler_characteristic_is_simple(
    alg: &QuadraticQuiverAlgebra,
    steps: &[ResolutionStep],
    w: NodeId,
) -> Result<bool, AlgebraError> {
    let mut total: BTreeMap<(NodeId, usize), i64> = BTreeMap::new();
    for (i, step) in steps.iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let free = FreeModule::new(alg, step.summands.clone())?;
        for j in 0..=free.max_degree() {
            for u in 0..alg.quiver().len() {
                *total.entry((u, j)).or_default() += sign * free.piece_dim(u, j) as i64;
            }
        }
    }
    Ok(total.into_iter().all(|((u, j), x)| x == i64::from(u == w && j == 0)))
}

/// Resolutions of every simple, in node order. Global dimension of an
/// acyclic quiver algebra is below the number of nodes, which bounds the
/// number of steps.
pub fn resolve_simples(alg: &QuadraticQuiverAlgebra) -> Result<Vec<GradedResolution>, KoszulError> {
    let n = alg.quiver().len();
    (0..n).map(|w| minimal_resolution(alg, w, n)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleSummary {
    pub simple: String,
    /// `step ↦ degree ↦ node name ↦ multiplicity`.
    pub betti: BTreeMap<usize, BTreeMap<usize, BTreeMap<String, usize>>>,
    pub length: usize,
    pub linear: bool,
    pub checks: ResolutionChecks,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    pub algebra: String,
    pub koszul: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub global_dimension: Option<usize>,
    pub simples: Vec<SimpleSummary>,
}

/// Koszul when the relations are quadratic and every simple has a linear
/// minimal resolution.
pub fn koszulity_check(alg: &QuadraticQuiverAlgebra) -> Result<KoszulReport, KoszulError> {
    let label = alg.label().to_string();
    if alg.graded().is_err() {
        return Ok(KoszulReport {
            algebra: label,
            koszul: false,
            reason: Some("relations are not homogeneous quadratic".into()),
            global_dimension: None,
            simples: Vec::new(),
        });
    }
    let quiver = alg.quiver();
    let resolutions = resolve_simples(alg)?;
    let simples: Vec<SimpleSummary> = resolutions
        .iter()
        .map(|r| SimpleSummary {
            simple: quiver.name(r.simple).to_string(),
            betti: r
                .betti()
                .into_iter()
                .map(|(i, by_degree)| {
                    let named = by_degree
                        .into_iter()
                        .map(|(j, by_node)| {
                            (j, by_node.into_iter().map(|(v, m)| (quiver.name(v).to_string(), m)).collect())
                        })
                        .collect();
                    (i, named)
                })
                .collect(),
            length: r.length(),
            linear: r.is_linear(),
            checks: r.checks,
        })
        .collect();
    let mut reason = None;
    if !alg.is_quadratic() {
        reason = Some("relations are not quadratic".into());
    } else if let Some(s) = simples.iter().find(|s| !s.linear) {
        reason = Some(format!("resolution of the simple at {} is not linear", s.simple));
    } else if let Some(s) = simples.iter().find(|s| !s.checks.all()) {
        reason = Some(format!("resolution of the simple at {} failed a self-check", s.simple));
    }
    Ok(KoszulReport {
        algebra: label,
        koszul: reason.is_none(),
        reason,
        global_dimension: simples.iter().map(|s| s.length).max(),
        simples,
    })
}

/// How Ext indices line up with the dual algebra's paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `Ext^i(S_w, S_v)` against paths from `w` to `v`.
    Forward,
    /// `Ext^i(S_w, S_v)` against paths from `v` to `w`.
    Reverse,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtMismatch {
    pub degree: usize,
    pub from: String,
    pub to: String,
    pub ext: usize,
    pub dual: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtDualReport {
    pub algebra: String,
    pub dual: String,
    pub orientation: Orientation,
    /// Total `dim Ext^i` over all pairs of simples, by `i`.
    pub ext_totals: Vec<usize>,
    /// Total dimension of the dual algebra, by degree.
    pub dual_totals: Vec<usize>,
    /// Ext classes all sit in internal degree equal to their index.
    pub diagonal: bool,
    pub mismatches: Vec<ExtMismatch>,
    pub matches: bool,
}

/// Compare `dim Ext^i(S_w, S_v)` over `alg` with the degree-`i` pieces of
/// `dual`, after fixing the orientation at `i = 1`.
pub fn ext_vs_dual(alg: &QuadraticQuiverAlgebra, dual: &QuadraticQuiverAlgebra) -> Result<ExtDualReport, KoszulError> {
    let n = alg.quiver().len();
    if dual.quiver().len() != n {
        return Err(KoszulError::NodeMismatch);
    }
    let resolutions = resolve_simples(alg)?;
    let graded = dual.graded()?;
    let ext = |i: usize, w: NodeId, v: NodeId| resolutions[w].ext_dimension(i, v);
    let table = |o: Orientation, i: usize, w: NodeId, v: NodeId| match o {
        Orientation::Forward => graded.dim(i, w, v),
        Orientation::Reverse => graded.dim(i, v, w),
    };
    let fits = |o: Orientation| (0..n).all(|w| (0..n).all(|v| ext(1, w, v) == table(o, 1, w, v)));
    let orientation = if fits(Orientation::Forward) {
        Orientation::Forward
    } else if fits(Orientation::Reverse) {
        Orientation::Reverse
    } else {
        return Err(KoszulError::Calibration);
    };

    let top = resolutions.iter().map(GradedResolution::length).max().unwrap_or(0).max(graded.top_path_degree());
    let mut mismatches = Vec::new();
    let mut ext_totals = vec![0; top + 1];
    let mut dual_totals = vec![0; top + 1];
    for i in 0..=top {
        for w in 0..n {
            for v in 0..n {
                let (e, d) = (ext(i, w, v), table(orientation, i, w, v));
                ext_totals[i] += e;
                dual_totals[i] += d;
                if e != d {
                    mismatches.push(ExtMismatch {
                        degree: i,
                        from: alg.quiver().name(w).to_string(),
                        to: alg.quiver().name(v).to_string(),
                        ext: e,
                        dual: d,
                    });
                }
            }
        }
    }
    let diagonal = resolutions.iter().all(GradedResolution::is_linear);
    Ok(ExtDualReport {
        algebra: alg.label().to_string(),
        dual: dual.label().to_string(),
        orientation,
        ext_totals,
        dual_totals,
        diagonal,
        matches: mismatches.is_empty(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::RelationSpace;
    use crate::complex::SimplicialComplex;
    use crate::linalg::q;
    use crate::module::check_module;
    use crate::perversity::{enumerate_perversities, Perversity};
    use crate::quiver::{Path, Quiver};

    #[test]
    fn projective_dimensions() {
        let x = SimplicialComplex::full_simplex(2);
        let b = QuadraticQuiverAlgebra::equivalence_algebra(&x, &Perversity::top(2));
        let abc = b.quiver().node_by_name("abc").unwrap();
        let p = projective(&b, abc).unwrap();
        assert_eq!(p.degree_dimensions(), vec![1, 3, 3]);
        assert_eq!(check_module(&b, &p.flatten(&b)).unwrap(), None);
        let total: usize = (0..b.quiver().len()).map(|v| projective(&b, v).unwrap().total_dimension()).sum();
        assert_eq!(total, b.dimension().unwrap());
        let a = b.quiver().node_by_name("a").unwrap();
        assert_eq!(projective(&b, a).unwrap().degree_dimensions(), vec![1]);
    }

    #[test]
    fn interval_edge_resolution() {
        let x = SimplicialComplex::full_simplex(1);
        let alg = QuadraticQuiverAlgebra::chain_complex_algebra(&x, &Perversity::top(1));
        let q = alg.quiver();
        let ab = q.node_by_name("ab").unwrap();
        let r = minimal_resolution(&alg, ab, 5).unwrap();
        assert!(r.checks.all());
        assert_eq!(r.length(), 1);
        let mut step1 = r.steps[1].summands.clone();
        step1.sort();
        assert_eq!(step1, vec![(q.node_by_name("a").unwrap(), 1), (q.node_by_name("b").unwrap(), 1)]);
        let a = q.node_by_name("a").unwrap();
        assert_eq!(minimal_resolution(&alg, a, 5).unwrap().length(), 0);
    }

    #[test]
    fn triangle_algebras_are_koszul() {
        let x = SimplicialComplex::full_simplex(2);
        for d in enumerate_perversities(2) {
            for alg in [
                QuadraticQuiverAlgebra::chain_complex_algebra(&x, &d),
                QuadraticQuiverAlgebra::equivalence_algebra(&x, &d),
            ] {
                let report = koszulity_check(&alg).unwrap();
                assert!(report.koszul, "{}: {:?}", alg.label(), report.reason);
                assert!(report.global_dimension.unwrap() <= 2);
            }
        }
    }

    #[test]
    fn ext_matches_equivalence_algebra() {
        let x = SimplicialComplex::full_simplex(2);
        for d in enumerate_perversities(2) {
            let a = QuadraticQuiverAlgebra::chain_complex_algebra(&x, &d);
            let b = QuadraticQuiverAlgebra::equivalence_algebra(&x, &d);
            let report = ext_vs_dual(&a, &b).unwrap();
            assert!(report.matches, "{d}: {:?}", report.mismatches);
            assert_eq!(report.ext_totals[0], 7);
            assert_eq!(report.ext_totals[1], 9);
        }
        let a = QuadraticQuiverAlgebra::chain_complex_algebra(&x, &Perversity::top(2));
        assert_eq!(
            ext_vs_dual(&a, &QuadraticQuiverAlgebra::equivalence_algebra(&x, &Perversity::top(2))).unwrap().ext_totals
                [2],
            3
        );
    }

    #[test]
    fn inhomogeneous_mutant_is_rejected() {
        let quiver = Arc::new(
            Quiver::from_arrows(vec!["1".into(), "2".into(), "3".into()], vec![(0, 1), (1, 2), (0, 2)]).unwrap(),
        );
        let rel = vec![(Path::new(vec![0, 2]), q(1)), (Path::new(vec![0, 1, 2]), q(-1))];
        let alg = QuadraticQuiverAlgebra::new(
            "mutant",
            quiver.clone(),
            RelationSpace::from_relations(&quiver, &[rel]).unwrap(),
        );
        let report = koszulity_check(&alg).unwrap();
        assert!(!report.koszul);
        assert!(report.simples.is_empty());
    }

    #[test]
    fn cubic_relation_is_not_koszul() {
        let quiver = Arc::new(
            Quiver::from_arrows((0..4).map(|i| i.to_string()).collect(), vec![(0, 1), (1, 2), (2, 3)]).unwrap(),
        );
        let rel = vec![(Path::new(vec![0, 1, 2, 3]), q(1))];
        let alg = QuadraticQuiverAlgebra::new(
            "cubic",
            quiver.clone(),
            RelationSpace::from_relations(&quiver, &[rel]).unwrap(),
        );
        let report = koszulity_check(&alg).unwrap();
        assert!(!report.koszul);
        let r = minimal_resolution(&alg, 3, 4).unwrap();
        assert!(r.checks.all());
        let s0 = minimal_resolution(&alg, 0, 4).unwrap();
        assert!(!s0.is_linear());
        assert!(s0.checks.all());
    }

    #[test]
    fn single_vertex_is_semisimple() {
        let x = SimplicialComplex::full_simplex(0);
        let alg = QuadraticQuiverAlgebra::chain_complex_algebra(&x, &Perversity::top(0));
        let report = koszulity_check(&alg).unwrap();
        assert!(report.koszul);
        assert_eq!(report.global_dimension, Some(0));
    }
}
