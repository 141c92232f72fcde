//! Modules over quiver algebras: checking relations on a representation,
//! graded free modules built from indecomposable projectives, and seeded
//! random modules obtained as quotients of those.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraError, GradedBasis, QuadraticQuiverAlgebra};
use crate::cellular::{CellularData, ShapeError};
use crate::linalg::{is_zero_vec, q, Matrix, RowSpan, Q};
use crate::quiver::{ArrowId, NodeId, Path};

/// A relation row that does not vanish on a representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationViolation {
    pub source: NodeId,
    pub target: NodeId,
    pub row: usize,
    pub residual: Matrix,
}

/// Evaluate every relation row on `rep`. Returns the first violation in
/// block order, or `None` if `rep` is a module.
pub fn check_module(alg: &QuadraticQuiverAlgebra, rep: &CellularData) -> Result<Option<RelationViolation>, ShapeError> {
    if rep.quiver().as_ref() != alg.quiver().as_ref() {
        return Err(ShapeError::QuiverMismatch);
    }
    for block in alg.relations().blocks() {
        for (r, row) in block.sparse_rows().into_iter().enumerate() {
            let mut acc = Matrix::zeros(rep.stalk(block.target), rep.stalk(block.source));
            for (path, c) in row {
                acc = &acc + &rep.path_map(&path).scale(&c);
            }
            if !acc.is_zero() {
                return Ok(Some(RelationViolation {
                    source: block.source,
                    target: block.target,
                    row: r,
                    residual: acc,
                }));
            }
        }
    }
    Ok(None)
}

/// `⊕_k P_{v_k}⟨s_k⟩`: a graded free module. The piece at node `u` and
/// degree `j` has a block per summand, spanned by the basis paths from `v_k`
/// to `u` of length `j - s_k`.
#[derive(Debug, Clone)]
pub struct FreeModule<'a> {
    alg: &'a QuadraticQuiverAlgebra,
    graded: &'a GradedBasis,
    summands: Vec<(NodeId, usize)>,
}

/// One summand's block inside a piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PieceBlock {
    pub summand: usize,
    pub offset: usize,
    pub dim: usize,
}

impl<'a> FreeModule<'a> {
    pub fn new(alg: &'a QuadraticQuiverAlgebra, summands: Vec<(NodeId, usize)>) -> Result<Self, AlgebraError> {
        let graded = alg.graded()?;
        if let Some(&(v, _)) = summands.iter().find(|(v, _)| *v >= alg.quiver().len()) {
            return Err(AlgebraError::UnknownNode(v));
        }
        Ok(FreeModule { alg, graded, summands })
    }

    pub fn summands(&self) -> &[(NodeId, usize)] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// No piece lives above this degree.
    pub fn max_degree(&self) -> usize {
        self.summands.iter().map(|&(_, s)| s).max().unwrap_or(0) + self.graded.top_path_degree()
    }

    pub fn blocks(&self, u: NodeId, j: usize) -> Vec<PieceBlock> {
        let mut offset = 0;
        let mut out = Vec::new();
        for (k, &(v, s)) in self.summands.iter().enumerate() {
            if s > j {
                continue;
            }
            let dim = self.graded.dim(j - s, v, u);
            if dim > 0 {
                out.push(PieceBlock { summand: k, offset, dim });
                offset += dim;
            }
        }
        out
    }

    pub fn piece_dim(&self, u: NodeId, j: usize) -> usize {
        self.blocks(u, j).iter().map(|b| b.dim).sum()
    }

    /// Action of `arrow` from the piece `(tail, j)` to `(head, j + 1)`.
    pub fn act(&self, arrow: ArrowId, j: usize, v: &[Q]) -> Vec<Q> {
        let (tail, head) = self.alg.quiver().arrow(arrow);
        let target = self.blocks(head, j + 1);
        let mut out = vec![Q::zero(); target.iter().map(|b| b.dim).sum()];
        for b in self.blocks(tail, j) {
            let (v_k, s_k) = self.summands[b.summand];
            let Some(tb) = target.iter().find(|t| t.summand == b.summand) else {
                continue;
            };
            let m = self.graded.action(j - s_k, v_k, arrow).expect("action is tabulated");
            let image = m.apply(&v[b.offset..b.offset + b.dim]);
            for (i, x) in image.into_iter().enumerate() {
                out[tb.offset + i] = x;
            }
        }
        out
    }

    /// Left multiplication by a path starting at the node of `v`.
    pub fn act_path(&self, path: &Path, j: usize, v: &[Q]) -> Vec<Q> {
        let mut current = v.to_vec();
        for (step, w) in path.nodes().windows(2).enumerate() {
            let a = self.alg.quiver().arrow_id(w[0], w[1]).expect("path follows arrows");
            current = self.act(a, j + step, &current);
        }
        current
    }

    /// The generator `e_{v_k}` of summand `k`, in its piece `(v_k, s_k)`.
    pub fn generator(&self, k: usize) -> Vec<Q> {
        let (v, s) = self.summands[k];
        let blocks = self.blocks(v, s);
        let mut out = vec![Q::zero(); blocks.iter().map(|b| b.dim).sum()];
        let b = blocks.iter().find(|b| b.summand == k).expect("generator block");
        out[b.offset] = Q::one();
        out
    }

    /// Matrix at the piece `(u, j)` of the homomorphism from `self` to
    /// `target` sending generator `k` to `images[k]` (an element of the
    /// target piece `(v_k, s_k)`).
    pub fn hom_matrix(&self, target: &FreeModule<'_>, images: &[Vec<Q>], u: NodeId, j: usize) -> Matrix {
        let rows = target.piece_dim(u, j);
        let blocks = self.blocks(u, j);
        let cols = blocks.iter().map(|b| b.dim).sum();
        let mut m = Matrix::zeros(rows, cols);
        for b in blocks {
            let (v_k, s_k) = self.summands[b.summand];
            let comp = self.graded.component(j - s_k, v_k, u).expect("nonempty block");
            for i in 0..b.dim {
                let image = target.act_path(comp.basis_path(i), s_k, &images[b.summand]);
                for (r, x) in image.into_iter().enumerate() {
                    m.set(r, b.offset + i, x);
                }
            }
        }
        m
    }

    /// Dimension vector indexed by `(node, degree)`.
    pub fn dimensions(&self) -> Vec<Vec<usize>> {
        (0..self.alg.quiver().len()).map(|u| (0..=self.max_degree()).map(|j| self.piece_dim(u, j)).collect()).collect()
    }
}

/// A homogeneous element of a free module: a vector in the piece
/// `(node, degree)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousElement {
    pub node: NodeId,
    pub degree: usize,
    pub coefficients: Vec<Q>,
}

/// The quotient of `⊕ P_v` (one unshifted summand per entry of `summands`)
/// by the submodule generated by `relations`, flattened into a
/// representation. Stalks list the surviving basis in order of degree.
pub fn quotient_of_projectives(
    alg: &QuadraticQuiverAlgebra,
    summands: &[NodeId],
    relations: &[HomogeneousElement],
) -> Result<CellularData, AlgebraError> {
    let free = FreeModule::new(alg, summands.iter().map(|&v| (v, 0)).collect())?;
    let quiver = alg.quiver();
    let top = free.max_degree();
    let mut spans: Vec<Vec<RowSpan>> =
        (0..quiver.len()).map(|u| (0..=top + 1).map(|j| RowSpan::new(free.piece_dim(u, j))).collect()).collect();

    let mut queue: Vec<(NodeId, usize, Vec<Q>)> =
        relations.iter().map(|r| (r.node, r.degree, r.coefficients.clone())).collect();
    while let Some((u, j, v)) = queue.pop() {
        if v.len() != spans[u][j].ambient_dim() || !spans[u][j].insert(&v) {
            continue;
        }
        for &a in quiver.outgoing(u) {
            let w = quiver.arrow(a).1;
            let image = free.act(a, j, &v);
            if !is_zero_vec(&image) {
                queue.push((w, j + 1, image));
            }
        }
    }

    // Surviving coordinates are the non-pivot columns of each reduced span.
    let kept: Vec<Vec<Vec<usize>>> = spans
        .iter()
        .map(|per_node| {
            per_node
                .iter()
                .map(|span| (0..span.ambient_dim()).filter(|c| !span.pivots().contains(c)).collect())
                .collect()
        })
        .collect();
    let offsets: Vec<Vec<usize>> = kept
        .iter()
        .map(|per_node| {
            let mut acc = 0;
            per_node
                .iter()
                .map(|cols| {
                    let o = acc;
                    acc += cols.len();
                    o
                })
                .collect()
        })
        .collect();
    let stalks: Vec<usize> = kept.iter().map(|per_node| per_node.iter().map(Vec::len).sum()).collect();

    let mut maps = Vec::with_capacity(quiver.arrows().len());
    for a in 0..quiver.arrows().len() {
        let (s, t) = quiver.arrow(a);
        let mut m = Matrix::zeros(stalks[t], stalks[s]);
        for j in 0..=top {
            for (i, &c) in kept[s][j].iter().enumerate() {
                let mut e = vec![Q::zero(); free.piece_dim(s, j)];
                e[c] = Q::one();
                let image = spans[t][j + 1].reduce(&free.act(a, j, &e));
                for (r, &c2) in kept[t][j + 1].iter().enumerate() {
                    m.set(offsets[t][j + 1] + r, offsets[s][j] + i, image[c2].clone());
                }
            }
        }
        maps.push(m);
    }
    Ok(CellularData::new(quiver.clone(), stalks, maps).expect("quotient shapes are consistent"))
}

/// Size limits for random modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModuleBudget {
    /// Each projective appears between 0 and this many times.
    pub max_multiplicity: usize,
    /// Number of random homogeneous elements quotiented out.
    pub relations: usize,
    /// Coefficients are drawn from `-bound..=bound`.
    pub coefficient_bound: i64,
}

impl Default for ModuleBudget {
    fn default() -> Self {
        ModuleBudget { max_multiplicity: 2, relations: 3, coefficient_bound: 2 }
    }
}

/// A random module: a quotient of a sum of projectives by random
/// homogeneous elements. Deterministic in `seed`.
pub fn random_module(
    alg: &QuadraticQuiverAlgebra,
    seed: u64,
    budget: &ModuleBudget,
) -> Result<CellularData, AlgebraError> {
    random_module_with(alg, &mut ChaCha8Rng::seed_from_u64(seed), budget)
}

/// `count` random modules drawn from one ChaCha8 stream seeded by `seed`.
pub fn random_modules(
    alg: &QuadraticQuiverAlgebra,
    seed: u64,
    count: usize,
    budget: &ModuleBudget,
) -> Result<Vec<CellularData>, AlgebraError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_module_with(alg, &mut rng, budget)).collect()
}

pub fn random_module_with<R: Rng>(
    alg: &QuadraticQuiverAlgebra,
    rng: &mut R,
    budget: &ModuleBudget,
) -> Result<CellularData, AlgebraError> {
    let n = alg.quiver().len();
    let mut summands = Vec::new();
    for v in 0..n {
        for _ in 0..rng.random_range(0..=budget.max_multiplicity) {
            summands.push(v);
        }
    }
    let free = FreeModule::new(alg, summands.iter().map(|&v| (v, 0)).collect())?;
    let pieces: Vec<(NodeId, usize, usize)> = (0..n)
        .flat_map(|u| (0..=free.max_degree()).map(move |j| (u, j)))
        .map(|(u, j)| (u, j, free.piece_dim(u, j)))
        .filter(|&(_, _, d)| d > 0)
        .collect();
    let mut relations = Vec::new();
    if !pieces.is_empty() {
        for _ in 0..budget.relations {
            let (node, degree, dim) = pieces[rng.random_range(0..pieces.len())];
            let bound = budget.coefficient_bound;
            let coefficients = (0..dim).map(|_| q(rng.random_range(-bound..=bound))).collect();
            relations.push(HomogeneousElement { node, degree, coefficients });
        }
    }
    quotient_of_projectives(alg, &summands, &relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::perversity::Perversity;

    fn triangle(kind_b: bool) -> QuadraticQuiverAlgebra {
        let x = SimplicialComplex::full_simplex(2);
        if kind_b {
            QuadraticQuiverAlgebra::equivalence_algebra(&x, &Perversity::top(2))
        } else {
            QuadraticQuiverAlgebra::chain_complex_algebra(&x, &Perversity::top(2))
        }
    }

    #[test]
    fn constant_and_zero_representations() {
        let a = triangle(false);
        let b = triangle(true);
        let constant = CellularData::constant(b.quiver().clone());
        assert_eq!(check_module(&b, &constant).unwrap(), None);
        let violation = check_module(&a, &constant).unwrap().unwrap();
        assert_eq!(violation.residual, Matrix::from_i64(&[&[2]]));
        let zero = CellularData::zero(a.quiver().clone());
        assert_eq!(check_module(&a, &zero).unwrap(), None);
        assert_eq!(check_module(&b, &zero).unwrap(), None);
    }

    #[test]
    fn projectives_have_expected_dimensions() {
        let b = triangle(true);
        let abc = b.quiver().node_by_name("abc").unwrap();
        let p = quotient_of_projectives(&b, &[abc], &[]).unwrap();
        assert_eq!(p.total_dimension(), 7);
        assert_eq!(check_module(&b, &p).unwrap(), None);
        let free = FreeModule::new(&b, vec![(abc, 0)]).unwrap();
        let by_degree: Vec<usize> = (0..=2).map(|j| (0..7).map(|u| free.piece_dim(u, j)).sum()).collect();
        assert_eq!(by_degree, vec![1, 3, 3]);
    }

    #[test]
    fn random_modules_satisfy_relations() {
        for kind_b in [false, true] {
            let alg = triangle(kind_b);
            for seed in 0..10 {
                let m = random_module(&alg, seed, &ModuleBudget::default()).unwrap();
                assert_eq!(check_module(&alg, &m).unwrap(), None);
                assert_eq!(m, random_module(&alg, seed, &ModuleBudget::default()).unwrap());
            }
        }
        let alg = triangle(true);
        let empty = ModuleBudget { max_multiplicity: 0, ..ModuleBudget::default() };
        assert_eq!(random_module(&alg, 1, &empty).unwrap().total_dimension(), 0);
    }

    #[test]
    fn quotient_by_generator_is_zero() {
        let b = triangle(true);
        let abc = b.quiver().node_by_name("abc").unwrap();
        let rel = HomogeneousElement { node: abc, degree: 0, coefficients: vec![q(3)] };
        assert_eq!(quotient_of_projectives(&b, &[abc], &[rel]).unwrap().total_dimension(), 0);
    }
}
