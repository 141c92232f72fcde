//! Small complexes and algebras used throughout tests and reports.

use std::sync::Arc;

use crate::algebra::{QuadraticQuiverAlgebra, RelationSpace};
use crate::complex::SimplicialComplex;
use crate::linalg::q;
use crate::quiver::{Path, Quiver};

/// A single vertex.
pub fn point() -> SimplicialComplex {
    SimplicialComplex::full_simplex(0)
}

/// The edge `ab`.
pub fn interval() -> SimplicialComplex {
    SimplicialComplex::full_simplex(1)
}

/// The full 2-simplex `abc`.
pub fn triangle() -> SimplicialComplex {
    SimplicialComplex::full_simplex(2)
}

/// The boundary of the 3-simplex, a 2-sphere.
pub fn tetrahedron_boundary() -> SimplicialComplex {
    SimplicialComplex::simplex_boundary(3)
}

/// The full 3-simplex.
pub fn tetrahedron() -> SimplicialComplex {
    SimplicialComplex::full_simplex(3)
}

/// Named test complexes: interval, triangle, sphere, tetrahedron.
pub fn test_complexes() -> Vec<(&'static str, Arc<SimplicialComplex>)> {
    vec![
        ("interval", Arc::new(interval())),
        ("triangle", Arc::new(triangle())),
        ("sphere", Arc::new(tetrahedron_boundary())),
        ("tetrahedron", Arc::new(tetrahedron())),
    ]
}

/// Quiver `1 -> 2 -> 3` plus `1 -> 3`, with the relation
/// `(1->3) = (1->2->3)` mixing path lengths one and two.
pub fn inhomogeneous_mutant() -> QuadraticQuiverAlgebra {
    let quiver = Arc::new(
        Quiver::from_arrows(vec!["1".into(), "2".into(), "3".into()], vec![(0, 1), (1, 2), (0, 2)]).expect("acyclic"),
    );
    let relation = vec![(Path::new(vec![0, 2]), q(1)), (Path::new(vec![0, 1, 2]), q(-1))];
    let relations = RelationSpace::from_relations(&quiver, &[relation]).expect("paths exist");
    QuadraticQuiverAlgebra::new("mutant", quiver, relations)
}
