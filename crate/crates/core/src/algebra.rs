//! Quiver algebras with homogeneous relations: the chain complex algebra
//! `A(X, δ)`, the equivalence algebra `B(X, δ)`, quadratic duals and
//! opposites.
//!
//! Multiplication is written in composition order: the product `q · p` of a
//! path `p` from `u` to `v` and a path `q` from `v` to `w` is "first `p`,
//! then `q`". Left modules are then the same thing as representations of the
//! quiver, with a linear map along every arrow.
//!
//! A relation is a linear combination of paths sharing both endpoints. The
//! relation space is stored blockwise, one block per endpoint pair, with
//! rows in reduced row-echelon form over the sorted paths of the block.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::linalg::{rref_in_place, Matrix, Q};
use crate::perversity::Perversity;
use crate::quiver::{ArrowId, NodeId, Path, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("relation mixes endpoints: {0:?} and {1:?}")]
    MixedEndpoints(Path, Path),
    #[error("relation uses a path that is not in the quiver: {0:?}")]
    NotAPath(Path),
    #[error("relations are not homogeneous; no path-length grading")]
    NotHomogeneous,
    #[error("relations are not homogeneous of degree two")]
    NotQuadratic,
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
}

/// Relations between paths with fixed endpoints.
#[derive(Debug, Clone)]
pub struct RelationBlock {
    pub source: NodeId,
    pub target: NodeId,
    pub paths: Vec<Path>,
    /// Reduced row-echelon form, one column per entry of `paths`.
    pub rows: Matrix,
}

impl RelationBlock {
    fn new(source: NodeId, target: NodeId, paths: Vec<Path>, rows: Vec<Vec<Q>>) -> Self {
        let cols = paths.len();
        let mut rows = rows;
        let rank = rref_in_place(&mut rows, cols).len();
        rows.truncate(rank);
        RelationBlock { source, target, paths, rows: Matrix::from_rows(rows, cols) }
    }

    pub fn rank(&self) -> usize {
        self.rows.rows()
    }

    /// Rows as sparse path combinations, zero coefficients dropped.
    pub fn sparse_rows(&self) -> Vec<Vec<(Path, Q)>> {
        (0..self.rows.rows())
            .map(|r| {
                self.rows
                    .row(r)
                    .iter()
                    .zip(&self.paths)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, p)| (p.clone(), c.clone()))
                    .collect()
            })
            .collect()
    }

    /// Same block with every path reversed, columns re-sorted.
    fn reversed(&self) -> RelationBlock {
        let reversed: Vec<Path> = self.paths.iter().map(Path::reversed).collect();
        let mut order: Vec<usize> = (0..reversed.len()).collect();
        order.sort_by(|&a, &b| reversed[a].cmp(&reversed[b]));
        let paths = order.iter().map(|&i| reversed[i].clone()).collect();
        let rows =
            (0..self.rows.rows()).map(|r| order.iter().map(|&i| self.rows.get(r, i).clone()).collect()).collect();
        RelationBlock::new(self.target, self.source, paths, rows)
    }
}

#[derive(Debug, Clone, Default)]
pub struct RelationSpace {
    blocks: Vec<RelationBlock>,
}

/// Canonical form used for equality: per endpoint pair of positive rank, the
/// reduced rows as sparse path combinations.
pub type CanonicalRelations = Vec<((NodeId, NodeId), Vec<Vec<(Path, Q)>>)>;

impl RelationSpace {
    /// Chain complex relations: in every block of length-two paths, the sum
    /// of all paths (literal coefficient one).
    pub fn chain_complex(quiver: &Quiver) -> Self {
        let blocks = quiver
            .length_two_blocks()
            .into_iter()
            .map(|((s, t), paths)| {
                let row = vec![Q::one(); paths.len()];
                RelationBlock::new(s, t, paths, vec![row])
            })
            .collect();
        RelationSpace { blocks }
    }

    /// Equivalence relations: all length-two paths with the same endpoints
    /// are equal.
    pub fn equivalence(quiver: &Quiver) -> Self {
        let blocks = quiver
            .length_two_blocks()
            .into_iter()
            .map(|((s, t), paths)| {
                let m = paths.len();
                let rows = (1..m)
                    .map(|i| {
                        let mut row = vec![Q::zero(); m];
                        row[0] = Q::one();
                        row[i] = -Q::one();
                        row
                    })
                    .collect();
                RelationBlock::new(s, t, paths, rows)
            })
            .collect();
        RelationSpace { blocks }
    }

    /// Arbitrary relations, each a combination of paths with shared
    /// endpoints.
    pub fn from_relations(quiver: &Quiver, relations: &[Vec<(Path, Q)>]) -> Result<Self, AlgebraError> {
        let mut grouped: BTreeMap<(NodeId, NodeId), Vec<&Vec<(Path, Q)>>> = BTreeMap::new();
        for rel in relations {
            let Some((first, _)) = rel.first() else { continue };
            for (p, _) in rel {
                if (p.source(), p.target()) != (first.source(), first.target()) {
                    return Err(AlgebraError::MixedEndpoints(first.clone(), p.clone()));
                }
                if p.nodes().iter().any(|&v| v >= quiver.len())
                    || p.nodes().windows(2).any(|w| !quiver.has_arrow(w[0], w[1]))
                {
                    return Err(AlgebraError::NotAPath(p.clone()));
                }
            }
            grouped.entry((first.source(), first.target())).or_default().push(rel);
        }
        let blocks = grouped
            .into_iter()
            .map(|((s, t), rels)| {
                let mut paths: Vec<Path> = rels.iter().flat_map(|r| r.iter().map(|(p, _)| p.clone())).collect();
                paths.sort();
                paths.dedup();
                let rows = rels
                    .iter()
                    .map(|r| {
                        let mut row = vec![Q::zero(); paths.len()];
                        for (p, c) in r.iter() {
                            row[paths.binary_search(p).unwrap()] += c;
                        }
                        row
                    })
                    .collect();
                RelationBlock::new(s, t, paths, rows)
            })
            .collect();
        Ok(RelationSpace { blocks })
    }

    pub fn blocks(&self) -> &[RelationBlock] {
        &self.blocks
    }

    pub fn block(&self, source: NodeId, target: NodeId) -> Option<&RelationBlock> {
        self.blocks.iter().find(|b| b.source == source && b.target == target)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(RelationBlock::rank).sum()
    }

    /// Every relation is a combination of paths of one common length, which
    /// is returned (`None` when there are no relations at all).
    pub fn homogeneous_degree(&self) -> Result<Option<usize>, AlgebraError> {
        let mut degree = None;
        for block in &self.blocks {
            for row in block.sparse_rows() {
                for (p, _) in row {
                    match degree {
                        None => degree = Some(p.len()),
                        Some(d) if d != p.len() => return Err(AlgebraError::NotHomogeneous),
                        _ => {}
                    }
                }
            }
        }
        Ok(degree)
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self.homogeneous_degree(), Ok(None) | Ok(Some(2)))
    }

    pub fn canonical_form(&self) -> CanonicalRelations {
        self.blocks.iter().filter(|b| b.rank() > 0).map(|b| ((b.source, b.target), b.sparse_rows())).collect()
    }

    /// Relations of the opposite algebra: every path reversed.
    pub fn reversed(&self) -> RelationSpace {
        let mut blocks: Vec<RelationBlock> = self.blocks.iter().map(RelationBlock::reversed).collect();
        blocks.sort_by_key(|b| (b.source, b.target));
        RelationSpace { blocks }
    }
}

impl PartialEq for RelationSpace {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_form() == other.canonical_form()
    }
}

impl Eq for RelationSpace {}

/// Which construction an algebra came from, for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AlgebraKind {
    A,
    B,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::A => "A",
            AlgebraKind::B => "B",
        })
    }
}

/// Degree-`d` piece of the algebra between two nodes: all paths of length
/// `d`, the ideal in reduced form, and the normal-form basis (the paths that
/// are not pivots of the ideal).
#[derive(Debug, Clone)]
pub struct Component {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    ideal: Matrix,
    pivots: Vec<usize>,
    basis: Vec<usize>,
    basis_slot: Vec<Option<usize>>,
}

impl Component {
    fn new(paths: Vec<Path>, mut ideal_rows: Vec<Vec<Q>>) -> Self {
        let cols = paths.len();
        let pivots = rref_in_place(&mut ideal_rows, cols);
        ideal_rows.truncate(pivots.len());
        let basis: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis_slot = vec![None; cols];
        for (i, &c) in basis.iter().enumerate() {
            basis_slot[c] = Some(i);
        }
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Component { paths, index, ideal: Matrix::from_rows(ideal_rows, cols), pivots, basis, basis_slot }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ideal_rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Representative paths of the basis.
    pub fn basis_paths(&self) -> impl Iterator<Item = &Path> {
        self.basis.iter().map(|&i| &self.paths[i])
    }

    pub fn basis_path(&self, i: usize) -> &Path {
        &self.paths[self.basis[i]]
    }

    /// Normal form of a single path, as coordinates in the basis.
    pub fn reduce_path(&self, path: &Path) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        let Some(&col) = self.index.get(path) else {
            return out;
        };
        if let Some(slot) = self.basis_slot[col] {
            out[slot] = Q::one();
            return out;
        }
        let row = self.pivots.iter().position(|&p| p == col).unwrap();
        // path = -(sum of the non-pivot entries of its ideal row) mod ideal
        for (slot, &c) in self.basis.iter().enumerate() {
            let x = self.ideal.get(row, c);
            if !x.is_zero() {
                out[slot] = -x.clone();
            }
        }
        out
    }
}

/// Graded pieces of an algebra with homogeneous relations, together with
/// the action of every arrow.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    degrees: Vec<BTreeMap<(NodeId, NodeId), Component>>,
    /// `(degree, source node, arrow)` ↦ matrix from the piece
    /// `(degree, source, arrow tail)` to `(degree + 1, source, arrow head)`.
    actions: HashMap<(usize, NodeId, ArrowId), Matrix>,
}

impl GradedBasis {
    fn build(quiver: &Quiver, relations: &RelationSpace, relation_degree: Option<usize>) -> Self {
        let rels: Vec<((NodeId, NodeId), Vec<Vec<(Path, Q)>>)> =
            relations.blocks().iter().map(|b| ((b.source, b.target), b.sparse_rows())).collect();
        let mut by_length: Vec<BTreeMap<(NodeId, NodeId), Vec<Path>>> = Vec::new();
        loop {
            let d = by_length.len();
            let paths = quiver.paths(d);
            if paths.is_empty() {
                break;
            }
            let mut grouped: BTreeMap<(NodeId, NodeId), Vec<Path>> = BTreeMap::new();
            for p in paths {
                grouped.entry((p.source(), p.target())).or_default().push(p);
            }
            by_length.push(grouped);
        }
        let empty = Vec::new();
        let paths_of = |len: usize, s: NodeId, t: NodeId| -> &Vec<Path> {
            by_length.get(len).and_then(|m| m.get(&(s, t))).unwrap_or(&empty)
        };

        let mut degrees = Vec::with_capacity(by_length.len());
        for (d, grouped) in by_length.iter().enumerate() {
            let mut pieces = BTreeMap::new();
            for (&(s, t), paths) in grouped {
                let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
                let mut rows = Vec::new();
                if let Some(l) = relation_degree.filter(|&l| l <= d) {
                    for ((a, b), block_rows) in &rels {
                        for i in 0..=(d - l) {
                            for prefix in paths_of(i, s, *a) {
                                for suffix in paths_of(d - l - i, *b, t) {
                                    for row in block_rows {
                                        let mut v = vec![Q::zero(); paths.len()];
                                        for (p, c) in row {
                                            let full = prefix.then(p).then(suffix);
                                            v[index[&full]] += c;
                                        }
                                        rows.push(v);
                                    }
                                }
                            }
                        }
                    }
                }
                pieces.insert((s, t), Component::new(paths.clone(), rows));
            }
            degrees.push(pieces);
        }

        let mut actions = HashMap::new();
        for (d, pieces) in degrees.iter().enumerate() {
            for (&(s, t), comp) in pieces {
                for &a in quiver.outgoing(t) {
                    let u = quiver.arrow(a).1;
                    let target = degrees.get(d + 1).and_then(|m| m.get(&(s, u)));
                    let rows = target.map_or(0, Component::dim);
                    let mut m = Matrix::zeros(rows, comp.dim());
                    if let Some(target) = target {
                        for (j, p) in comp.basis_paths().enumerate() {
                            let extended = p.then(&Path::new(vec![t, u]));
                            for (i, x) in target.reduce_path(&extended).into_iter().enumerate() {
                                m.set(i, j, x);
                            }
                        }
                    }
                    actions.insert((d, s, a), m);
                }
            }
        }
        GradedBasis { degrees, actions }
    }

    /// Highest degree with any path at all.
    pub fn top_path_degree(&self) -> usize {
        self.degrees.len().saturating_sub(1)
    }

    pub fn component(&self, degree: usize, source: NodeId, target: NodeId) -> Option<&Component> {
        self.degrees.get(degree)?.get(&(source, target))
    }

    pub fn dim(&self, degree: usize, source: NodeId, target: NodeId) -> usize {
        self.component(degree, source, target).map_or(0, Component::dim)
    }

    pub fn components(&self, degree: usize) -> impl Iterator<Item = (&(NodeId, NodeId), &Component)> {
        self.degrees.get(degree).into_iter().flat_map(|m| m.iter())
    }

    /// Action of `arrow` on the piece `(degree, source, tail(arrow))`.
    pub fn action(&self, degree: usize, source: NodeId, arrow: ArrowId) -> Option<&Matrix> {
        self.actions.get(&(degree, source, arrow))
    }
}

/// A path algebra modulo a homogeneous relation space.
#[derive(Debug, Clone)]
pub struct QuadraticQuiverAlgebra {
    label: String,
    kind: Option<AlgebraKind>,
    quiver: Arc<Quiver>,
    relations: RelationSpace,
    graded: Option<GradedBasis>,
}

impl QuadraticQuiverAlgebra {
    /// Any relation space. Inhomogeneous relations are accepted (so that
    /// such algebras can be fed to checks that must reject them) but get no
    /// graded basis.
    pub fn new(label: impl Into<String>, quiver: Arc<Quiver>, relations: RelationSpace) -> Self {
        let graded = match relations.homogeneous_degree() {
            Ok(degree) => Some(GradedBasis::build(&quiver, &relations, degree)),
            Err(_) => None,
        };
        QuadraticQuiverAlgebra { label: label.into(), kind: None, quiver, relations, graded }
    }

    /// `A(X, δ)`: the quiver of `(X, δ)` modulo the chain complex relations.
    pub fn chain_complex_algebra(complex: &SimplicialComplex, perversity: &Perversity) -> Self {
        let quiver = Arc::new(Quiver::of_complex(complex, perversity));
        let relations = RelationSpace::chain_complex(&quiver);
        let mut alg = Self::new(format!("A(X,{perversity})"), quiver, relations);
        alg.kind = Some(AlgebraKind::A);
        alg
    }

    /// `B(X, δ)`: the quiver of `(X, δ)` modulo the equivalence relations.
    pub fn equivalence_algebra(complex: &SimplicialComplex, perversity: &Perversity) -> Self {
        let quiver = Arc::new(Quiver::of_complex(complex, perversity));
        let relations = RelationSpace::equivalence(&quiver);
        let mut alg = Self::new(format!("B(X,{perversity})"), quiver, relations);
        alg.kind = Some(AlgebraKind::B);
        alg
    }

    pub fn build(kind: AlgebraKind, complex: &SimplicialComplex, perversity: &Perversity) -> Self {
        match kind {
            AlgebraKind::A => Self::chain_complex_algebra(complex, perversity),
            AlgebraKind::B => Self::equivalence_algebra(complex, perversity),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> Option<AlgebraKind> {
        self.kind
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn relations(&self) -> &RelationSpace {
        &self.relations
    }

    pub fn graded(&self) -> Result<&GradedBasis, AlgebraError> {
        self.graded.as_ref().ok_or(AlgebraError::NotHomogeneous)
    }

    pub fn is_quadratic(&self) -> bool {
        self.relations.is_quadratic()
    }

    /// Dimensions of the degree `0..=max_degree` pieces.
    pub fn graded_dimensions(&self, max_degree: usize) -> Result<Vec<usize>, AlgebraError> {
        let graded = self.graded()?;
        Ok((0..=max_degree).map(|d| graded.components(d).map(|(_, c)| c.dim()).sum()).collect())
    }

    /// Graded dimensions up to the last nonzero degree.
    pub fn hilbert_series(&self) -> Result<Vec<usize>, AlgebraError> {
        let top = self.graded()?.top_path_degree();
        let mut dims = self.graded_dimensions(top)?;
        while dims.len() > 1 && dims.last() == Some(&0) {
            dims.pop();
        }
        Ok(dims)
    }

    pub fn dimension(&self) -> Result<usize, AlgebraError> {
        Ok(self.hilbert_series()?.iter().sum())
    }

    /// `e_target · A_degree · e_source`: paths from `source` to `target`.
    pub fn piece_dim(&self, degree: usize, source: NodeId, target: NodeId) -> Result<usize, AlgebraError> {
        Ok(self.graded()?.dim(degree, source, target))
    }
}

/// The quadratic dual: lives on the opposite quiver, and its relations in
/// each block are the annihilator of the original block under the pairing
/// that matches a path with its reversal.
pub fn quadratic_dual(alg: &QuadraticQuiverAlgebra) -> Result<QuadraticQuiverAlgebra, AlgebraError> {
    if !alg.is_quadratic() {
        return Err(AlgebraError::NotQuadratic);
    }
    let quiver = alg.quiver();
    let mut blocks = Vec::new();
    for ((s, t), paths) in quiver.length_two_blocks() {
        let m = paths.len();
        // Express the original rows over this block's full path list.
        let original: Matrix = match alg.relations().block(s, t) {
            Some(b) => {
                let mut rows = vec![vec![Q::zero(); m]; b.rank()];
                for (r, row) in b.sparse_rows().into_iter().enumerate() {
                    for (p, c) in row {
                        rows[r][paths.binary_search(&p).unwrap()] = c;
                    }
                }
                Matrix::from_rows(rows, m)
            }
            None => Matrix::zeros(0, m),
        };
        let annihilator = original.nullspace();
        let block = RelationBlock::new(s, t, paths, annihilator.row_vecs());
        blocks.push(block.reversed());
    }
    blocks.sort_by_key(|b| (b.source, b.target));
    let opposite = Arc::new(quiver.opposite());
    Ok(QuadraticQuiverAlgebra::new(format!("{}^!", alg.label()), opposite, RelationSpace { blocks }))
}

/// Arrows reversed, relations carried along reversed paths.
pub fn opposite(alg: &QuadraticQuiverAlgebra) -> QuadraticQuiverAlgebra {
    let label = match alg.label().strip_suffix("^op") {
        Some(inner) => inner.to_string(),
        None => format!("{}^op", alg.label()),
    };
    let mut out = QuadraticQuiverAlgebra::new(label, Arc::new(alg.quiver().opposite()), alg.relations().reversed());
    if alg.label().ends_with("^op") {
        out.kind = alg.kind;
    }
    out
}

/// Same quiver and same relation space.
pub fn same_presentation(a: &QuadraticQuiverAlgebra, b: &QuadraticQuiverAlgebra) -> bool {
    a.quiver().names() == b.quiver().names()
        && a.quiver().arrows() == b.quiver().arrows()
        && a.relations() == b.relations()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::perversity::enumerate_perversities;

    #[test]
    fn relation_ranks_for_top_triangle() {
        let x = SimplicialComplex::full_simplex(2);
        let a = QuadraticQuiverAlgebra::chain_complex_algebra(&x, &Perversity::top(2));
        let b = QuadraticQuiverAlgebra::equivalence_algebra(&x, &Perversity::top(2));
        assert_eq!(a.relations().blocks().len(), 3);
        assert_eq!(a.relations().rank(), 3);
        assert_eq!(b.relations().rank(), 3);
        for block in b.relations().blocks() {
            assert_eq!(block.rows, Matrix::from_i64(&[&[1, -1]]));
        }
    }

    #[test]
    fn graded_dimensions_examples() {
        let x = SimplicialComplex::full_simplex(2);
        let a = QuadraticQuiverAlgebra::chain_complex_algebra(&x, &Perversity::top(2));
        let b = QuadraticQuiverAlgebra::equivalence_algebra(&x, &Perversity::top(2));
        assert_eq!(a.graded_dimensions(4).unwrap(), vec![7, 9, 3, 0, 0]);
        assert_eq!(b.graded_dimensions(3).unwrap(), vec![7, 9, 3, 0]);
        assert_eq!(a.dimension().unwrap(), 19);
        let sphere = SimplicialComplex::simplex_boundary(3);
        let a = QuadraticQuiverAlgebra::chain_complex_algebra(&sphere, &Perversity::top(2));
        assert_eq!(a.hilbert_series().unwrap(), vec![14, 24, 12]);
        assert_eq!(a.dimension().unwrap(), 50);
    }

    #[test]
    fn single_path_block_is_killed_in_a() {
        // Interval with δ = [0, -1]: ab is not above anything; use a path graph instead.
        let quiver =
            Arc::new(Quiver::from_arrows(vec!["u".into(), "v".into(), "w".into()], vec![(0, 1), (1, 2)]).unwrap());
        let a = QuadraticQuiverAlgebra::new("A", quiver.clone(), RelationSpace::chain_complex(&quiver));
        let b = QuadraticQuiverAlgebra::new("B", quiver.clone(), RelationSpace::equivalence(&quiver));
        assert_eq!(a.hilbert_series().unwrap(), vec![3, 2]);
        assert_eq!(b.hilbert_series().unwrap(), vec![3, 2, 1]);
        assert!(RelationSpace::equivalence(&quiver).blocks()[0].rank() == 0);
    }

    #[test]
    fn dual_of_sum_is_difference() {
        let quiver = Arc::new(
            Quiver::from_arrows(
                vec!["s".into(), "m1".into(), "m2".into(), "t".into()],
                vec![(0, 1), (0, 2), (1, 3), (2, 3)],
            )
            .unwrap(),
        );
        let a = QuadraticQuiverAlgebra::new("A", quiver.clone(), RelationSpace::chain_complex(&quiver));
        let dual = quadratic_dual(&a).unwrap();
        let block = dual.relations().block(3, 0).unwrap();
        assert_eq!(block.rows, Matrix::from_i64(&[&[1, -1]]));
        assert!(same_presentation(&quadratic_dual(&dual).unwrap(), &a));
    }

    #[test]
    fn dual_identities_on_triangle() {
        let x = SimplicialComplex::full_simplex(2);
        for d in enumerate_perversities(2) {
            let a = QuadraticQuiverAlgebra::chain_complex_algebra(&x, &d);
            let b_neg = QuadraticQuiverAlgebra::equivalence_algebra(&x, &d.negate());
            let b = QuadraticQuiverAlgebra::equivalence_algebra(&x, &d);
            assert!(same_presentation(&quadratic_dual(&a).unwrap(), &b_neg), "{d}");
            assert!(same_presentation(&b, &opposite(&b_neg)), "{d}");
            assert!(same_presentation(&opposite(&opposite(&b)), &b));
        }
    }

    #[test]
    fn degree_two_dimensions_are_complementary() {
        let x = SimplicialComplex::simplex_boundary(3);
        for d in enumerate_perversities(2) {
            let a = QuadraticQuiverAlgebra::chain_complex_algebra(&x, &d);
            let b = QuadraticQuiverAlgebra::equivalence_algebra(&x, &d);
            let paths = a.quiver().paths(2).len();
            let da = a.graded_dimensions(2).unwrap();
            let db = b.graded_dimensions(2).unwrap();
            assert_eq!(da[2] + db[2], paths);
            assert_eq!(da[0], x.len());
            assert_eq!(da[1], a.quiver().arrows().len());
        }
    }

    #[test]
    fn inhomogeneous_relations_have_no_grading() {
        let quiver = Arc::new(
            Quiver::from_arrows(vec!["1".into(), "2".into(), "3".into()], vec![(0, 1), (1, 2), (0, 2)]).unwrap(),
        );
        let rel = vec![(Path::new(vec![0, 2]), q(1)), (Path::new(vec![0, 1, 2]), q(-1))];
        let relations = RelationSpace::from_relations(&quiver, &[rel]).unwrap();
        assert_eq!(relations.homogeneous_degree(), Err(AlgebraError::NotHomogeneous));
        let alg = QuadraticQuiverAlgebra::new("mutant", quiver.clone(), relations);
        assert!(alg.graded_dimensions(2).is_err());
        assert!(quadratic_dual(&alg).is_err());

        let bad = vec![(Path::new(vec![0, 2]), q(1)), (Path::new(vec![0, 1]), q(1))];
        assert!(matches!(RelationSpace::from_relations(&quiver, &[bad]), Err(AlgebraError::MixedEndpoints(..))));
        let missing = vec![(Path::new(vec![2, 0]), q(1))];
        assert!(matches!(RelationSpace::from_relations(&quiver, &[missing]), Err(AlgebraError::NotAPath(_))));
    }

    #[test]
    fn component_normal_forms() {
        let x = SimplicialComplex::full_simplex(2);
        let b = QuadraticQuiverAlgebra::equivalence_algebra(&x, &Perversity::top(2));
        let g = b.graded().unwrap();
        let (abc, a) = (x.resolve_key("abc").unwrap(), x.resolve_key("a").unwrap());
        let comp = g.component(2, abc, a).unwrap();
        assert_eq!(comp.dim(), 1);
        for p in comp.paths() {
            assert_eq!(comp.reduce_path(p), vec![q(1)]);
        }
        let a_alg = QuadraticQuiverAlgebra::chain_complex_algebra(&x, &Perversity::top(2));
        let comp = a_alg.graded().unwrap().component(2, abc, a).unwrap();
        let forms: Vec<Vec<Q>> = comp.paths().iter().map(|p| comp.reduce_path(p)).collect();
        assert_eq!(forms[0], vec![-forms[1][0].clone()]);
    }
}
