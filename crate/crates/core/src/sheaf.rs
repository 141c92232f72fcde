//! Cellular sheaf data on a perverse complex and on its subdivision.
//!
//! An object over `(X, δ)` is linear data on the quiver `Q(X, δ)` whose
//! length-two composites agree (the equivalence axiom). An object over the
//! subdivision lives on the flag quiver, arrows running from each flag to
//! its codimension-one cofaces. The constructible ones are those that are
//! constant on every perverse simplex of the `(-δ)`-triangulation, with
//! identity maps inside a perverse simplex. The functors [`SheafContext::phi`]
//! and [`SheafContext::psi`] pass between the two descriptions.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::QuadraticQuiverAlgebra;
use crate::cellular::{CellularData, ShapeError};
use crate::complex::{FlagId, SimplexId, SimplicialComplex};
use crate::linalg::{Matrix, Q};
use crate::perversity::Perversity;
use crate::quiver::{NodeId, Path, Quiver};
use crate::triangulation::{fit_perversity, PerverseTriangulation, TriangulationError};

/// Two length-two routes from `source` to `target` through `left` and
/// `right` (with `left < right`), and the difference of their composites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diamond {
    pub source: NodeId,
    pub left: NodeId,
    pub right: NodeId,
    pub target: NodeId,
    pub residual: Matrix,
}

impl Diamond {
    pub fn describe(&self, quiver: &Quiver) -> String {
        format!(
            "{} -> {{{}, {}}} -> {}",
            quiver.name(self.source),
            quiver.name(self.left),
            quiver.name(self.right),
            quiver.name(self.target)
        )
    }
}

/// Every diamond of the quiver, ordered by `(source, target, left, right)`.
pub fn diamonds(quiver: &Quiver) -> Vec<(NodeId, NodeId, NodeId, NodeId)> {
    let mut out = Vec::new();
    for s in 0..quiver.len() {
        let mids: Vec<NodeId> = quiver.outgoing(s).iter().map(|&a| quiver.arrow(a).1).collect();
        for t in 0..quiver.len() {
            let via: Vec<NodeId> = mids.iter().copied().filter(|&m| quiver.has_arrow(m, t)).collect();
            for (i, &l) in via.iter().enumerate() {
                for &r in &via[i + 1..] {
                    out.push((s, t, l.min(r), l.max(r)));
                }
            }
        }
    }
    out
}

/// First diamond whose two composites differ, if any.
pub fn validate_tea(obj: &CellularData) -> Option<Diamond> {
    let q = obj.quiver();
    for (s, t, l, r) in diamonds(q) {
        let via = |m: NodeId| obj.map_between(m, t).unwrap() * obj.map_between(s, m).unwrap();
        let residual = &via(l) - &via(r);
        if !residual.is_zero() {
            return Some(Diamond { source: s, left: l, right: r, target: t, residual });
        }
    }
    None
}

/// The order generated by the arrows: `a ≤ b` when a path runs from `a` to
/// `b`.
pub fn poset_leq(quiver: &Quiver, a: NodeId, b: NodeId) -> bool {
    quiver.reaches(a, b)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SheafError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error("equivalence axiom fails on a diamond from node {} to node {}", .0.source, .0.target)]
    Tea(Diamond),
    #[error("node {from} is not below node {to}")]
    NotComparable { from: NodeId, to: NodeId },
    #[error("composites from node {from} to node {to} differ along {first:?} and {second:?}")]
    ChainDisagreement { from: NodeId, to: NodeId, first: Path, second: Path },
    #[error(transparent)]
    Membership(#[from] MembershipError),
    #[error("flag set is not closed under faces; flag {missing} is missing")]
    NotClosed { missing: FlagId },
}

/// The composite of restriction maps from `from` to `to`. Every path is
/// multiplied out and they must all agree.
pub fn composite_map(obj: &CellularData, from: NodeId, to: NodeId) -> Result<Matrix, SheafError> {
    let paths = obj.quiver().paths_between(from, to);
    let Some(first) = paths.first() else {
        return Err(SheafError::NotComparable { from, to });
    };
    let value = obj.path_map(first);
    for p in &paths[1..] {
        if obj.path_map(p) != value {
            return Err(SheafError::ChainDisagreement { from, to, first: first.clone(), second: p.clone() });
        }
    }
    Ok(value)
}

/// Stalkwise maps between two objects on the same quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataMorphism {
    pub components: Vec<Matrix>,
}

impl DataMorphism {
    pub fn identity(obj: &CellularData) -> Self {
        DataMorphism { components: obj.stalks().iter().map(|&d| Matrix::identity(d)).collect() }
    }

    /// Right shapes and commutes with every restriction map.
    pub fn is_morphism(&self, src: &CellularData, dst: &CellularData) -> bool {
        let q = src.quiver();
        if self.components.len() != q.len()
            || self.components.iter().enumerate().any(|(v, m)| m.shape() != (dst.stalk(v), src.stalk(v)))
        {
            return false;
        }
        (0..q.arrows().len()).all(|a| {
            let (s, t) = q.arrow(a);
            &self.components[t] * src.map(a) == dst.map(a) * &self.components[s]
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpace {
    pub basis: Vec<DataMorphism>,
}

impl HomSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// All morphisms `src -> dst`, as a basis of the solution space of the
/// commutation equations.
pub fn hom_space(src: &CellularData, dst: &CellularData) -> Result<HomSpace, ShapeError> {
    if src.quiver() != dst.quiver() {
        return Err(ShapeError::QuiverMismatch);
    }
    let q = src.quiver();
    let mut offsets = Vec::with_capacity(q.len());
    let mut unknowns = 0;
    for v in 0..q.len() {
        offsets.push(unknowns);
        unknowns += dst.stalk(v) * src.stalk(v);
    }
    // φ_v[i][k] sits at offsets[v] + i * src(v) + k.
    let var = |v: NodeId, i: usize, k: usize| offsets[v] + i * src.stalk(v) + k;
    let mut rows = Vec::new();
    for a in 0..q.arrows().len() {
        let (s, t) = q.arrow(a);
        let (sm, dm) = (src.map(a), dst.map(a));
        for i in 0..dst.stalk(t) {
            for j in 0..src.stalk(s) {
                let mut row = vec![Q::zero(); unknowns];
                for k in 0..src.stalk(t) {
                    row[var(t, i, k)] += sm.get(k, j);
                }
                for k in 0..dst.stalk(s) {
                    row[var(s, k, j)] -= dm.get(i, k);
                }
                rows.push(row);
            }
        }
    }
    let kernel = Matrix::from_rows(rows, unknowns).nullspace();
    let basis = (0..kernel.rows())
        .map(|r| {
            let v = kernel.row(r);
            let components = (0..q.len())
                .map(|n| {
                    let (h, w) = (dst.stalk(n), src.stalk(n));
                    Matrix::from_rows((0..h).map(|i| v[var(n, i, 0)..var(n, i, 0) + w].to_vec()).collect(), w)
                })
                .collect();
            DataMorphism { components }
        })
        .collect();
    Ok(HomSpace { basis })
}

/// Ways an object on the flag quiver can fail to be constructible.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MembershipError {
    #[error("object does not live on the flag quiver of this complex")]
    WrongQuiver,
    #[error("stalks at flags {0} and {1} differ inside one perverse simplex")]
    NonConstantStalk(FlagId, FlagId),
    #[error("map from flag {0} to flag {1} inside one perverse simplex is not the identity")]
    NotIdentity(FlagId, FlagId),
    #[error("equivalence axiom fails on a diamond from flag {} to flag {}", .0.source, .0.target)]
    Tea(Diamond),
}

/// An object over the subdivision that is constant along the perverse
/// simplices of the `(-δ)`-triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SObject {
    data: CellularData,
}

impl SObject {
    pub fn data(&self) -> &CellularData {
        &self.data
    }

    pub fn into_data(self) -> CellularData {
        self.data
    }
}

/// Everything derived from a complex and a perversity that the sheaf
/// functors need: the quiver `Q(X, δ)`, the flag quiver and the
/// `(-δ)`-triangulation.
#[derive(Debug, Clone)]
pub struct SheafContext {
    complex: Arc<SimplicialComplex>,
    perversity: Perversity,
    quiver: Arc<Quiver>,
    flag_quiver: Arc<Quiver>,
    dual_triangulation: PerverseTriangulation,
}

impl SheafContext {
    pub fn new(complex: Arc<SimplicialComplex>, perversity: &Perversity) -> Result<Self, SheafError> {
        let perversity = fit_perversity(&complex, perversity).map_err(TriangulationError::from)?;
        let quiver = Arc::new(Quiver::of_complex(&complex, &perversity));
        let flag_quiver = Arc::new(Quiver::of_subdivision(&complex));
        let dual_triangulation = PerverseTriangulation::new(complex.clone(), &perversity.negate())?;
        Ok(SheafContext { complex, perversity, quiver, flag_quiver, dual_triangulation })
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn perversity(&self) -> &Perversity {
        &self.perversity
    }

    /// `Q(X, δ)`.
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    /// Flags of the subdivision, arrows to codimension-one cofaces.
    pub fn flag_quiver(&self) -> &Arc<Quiver> {
        &self.flag_quiver
    }

    /// The `(-δ)`-perverse triangulation along which objects are constant.
    pub fn dual_triangulation(&self) -> &PerverseTriangulation {
        &self.dual_triangulation
    }

    /// `B(X, δ)`, whose modules are exactly the objects over `(X, δ)`.
    pub fn equivalence_algebra(&self) -> QuadraticQuiverAlgebra {
        QuadraticQuiverAlgebra::equivalence_algebra(&self.complex, &self.perversity)
    }

    /// Incident simplices with `δ(s) > δ(t)` satisfy `s ≤ t`. Returns the
    /// first pair where this fails.
    pub fn incidence_order_check(&self) -> Result<(), (SimplexId, SimplexId)> {
        let x = &self.complex;
        let level = |s: SimplexId| self.perversity.at(x.dim(s));
        for s in x.ids() {
            for t in x.ids() {
                let incident = x.is_proper_face(s, t) || x.is_proper_face(t, s);
                if incident && level(s) > level(t) && !poset_leq(&self.quiver, s, t) {
                    return Err((s, t));
                }
            }
        }
        Ok(())
    }

    /// For every codimension-one pair of flags `g ⊂ g'` the anchors `s`, `t`
    /// in the `(-δ)`-triangulation are equal, or incident with `s ≤ t`.
    /// Returns the first pair of flags where this fails.
    pub fn anchor_order_check(&self) -> Result<(), (FlagId, FlagId)> {
        let x = &self.complex;
        let sd = x.subdivision();
        for g in 0..sd.len() {
            for &h in sd.cofacets(g) {
                let (s, t) = (self.dual_triangulation.anchor(g), self.dual_triangulation.anchor(h));
                let incident = x.is_proper_face(s, t) || x.is_proper_face(t, s);
                if s != t && !(incident && poset_leq(&self.quiver, s, t)) {
                    return Err((g, h));
                }
            }
        }
        Ok(())
    }

    /// Membership in the constructible subcategory.
    pub fn check_membership(&self, data: &CellularData) -> Result<(), MembershipError> {
        if data.quiver() != &self.flag_quiver {
            return Err(MembershipError::WrongQuiver);
        }
        for part in self.dual_triangulation.parts() {
            let mut flags = part.flags.iter();
            if let Some(&first) = flags.next() {
                if let Some(&other) = flags.find(|&&f| data.stalk(f) != data.stalk(first)) {
                    return Err(MembershipError::NonConstantStalk(first, other));
                }
            }
        }
        for (a, &(g, h)) in self.flag_quiver.arrows().iter().enumerate() {
            if self.dual_triangulation.anchor(g) == self.dual_triangulation.anchor(h)
                && *data.map(a) != Matrix::identity(data.stalk(g))
            {
                return Err(MembershipError::NotIdentity(g, h));
            }
        }
        if let Some(d) = validate_tea(data) {
            return Err(MembershipError::Tea(d));
        }
        Ok(())
    }

    pub fn sobject(&self, data: CellularData) -> Result<SObject, MembershipError> {
        self.check_membership(&data)?;
        Ok(SObject { data })
    }

    /// Spread an object over `(X, δ)` to the subdivision: the stalk at a flag
    /// is the stalk at its anchor, and the map along `g -> g'` is the
    /// composite from the anchor of `g` to the anchor of `g'`.
    pub fn phi(&self, obj: &CellularData) -> Result<SObject, SheafError> {
        if obj.quiver() != &self.quiver {
            return Err(ShapeError::QuiverMismatch.into());
        }
        if let Some(d) = validate_tea(obj) {
            return Err(SheafError::Tea(d));
        }
        let anchor = |f: FlagId| self.dual_triangulation.anchor(f);
        let stalks = (0..self.flag_quiver.len()).map(|f| obj.stalk(anchor(f))).collect();
        let maps = self
            .flag_quiver
            .arrows()
            .iter()
            .map(|&(g, h)| composite_map(obj, anchor(g), anchor(h)))
            .collect::<Result<Vec<_>, _>>()?;
        let data = CellularData::new(self.flag_quiver.clone(), stalks, maps)?;
        Ok(self.sobject(data)?)
    }

    /// Read an object over `(X, δ)` off the barycenters: the stalk at `s` is
    /// the stalk at the flag `(s)`, and the map along `s -> t` is the map
    /// from `(s)` to the two-element flag `{s, t}`.
    pub fn psi(&self, obj: &SObject) -> Result<CellularData, SheafError> {
        self.check_membership(&obj.data)?;
        let x = &self.complex;
        let sd = x.subdivision();
        let stalks = x.ids().map(|s| obj.data.stalk(sd.vertex_flag(s))).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .map(|&(s, t)| {
                let chain = if x.is_proper_face(s, t) { vec![s, t] } else { vec![t, s] };
                let edge = sd.id_of(&crate::complex::Flag::new(chain)).expect("incident pair is a flag");
                obj.data.map_between(sd.vertex_flag(s), edge).expect("coface arrow").clone()
            })
            .collect();
        let out = CellularData::new(self.quiver.clone(), stalks, maps)?;
        if let Some(d) = validate_tea(&out) {
            return Err(SheafError::Tea(d));
        }
        Ok(out)
    }
}

/// Restrict an object over the subdivision to a face-closed set of flags.
pub fn restrict(
    complex: &SimplicialComplex,
    obj: &CellularData,
    flags: &BTreeSet<FlagId>,
) -> Result<CellularData, SheafError> {
    let closure = complex.subdivision().closed_union(flags);
    if !closure.was_closed {
        let missing = *closure.flags.difference(flags).next().expect("closure grew");
        return Err(SheafError::NotClosed { missing });
    }
    let (quiver, old) = obj.quiver().induced(flags);
    let stalks = old.iter().map(|&v| obj.stalk(v)).collect();
    let maps =
        quiver.arrows().iter().map(|&(s, t)| obj.map_between(old[s], old[t]).expect("induced arrow").clone()).collect();
    Ok(CellularData::new(Arc::new(quiver), stalks, maps)?)
}
