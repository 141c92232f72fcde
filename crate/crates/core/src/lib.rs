//! Exact combinatorics of perverse sheaves on simplicial complexes.
//!
//! Starting from a finite simplicial complex `X` and a perversity `δ` the
//! crate builds
//!
//! * the barycentric subdivision as a set of flags and the
//!   `δ`-perverse triangulation ([`triangulation`]),
//! * the quiver `Q(X, δ)` and the algebras `A(X, δ)` and `B(X, δ)` with their
//!   quadratic duals and opposites ([`quiver`], [`algebra`]),
//! * linear sheaf data on `X` and on its subdivision, and the functors
//!   between them ([`sheaf`]),
//! * minimal graded resolutions, Koszulity and Ext dimensions ([`koszul`]).
//!
//! All arithmetic is over exact rationals.
//!
//! ```
//! use perverse_cells::{fixtures, Perversity, QuadraticQuiverAlgebra};
//!
//! let x = fixtures::triangle();
//! let a = QuadraticQuiverAlgebra::chain_complex_algebra(&x, &Perversity::top(2));
//! assert_eq!(a.hilbert_series().unwrap(), vec![7, 9, 3]);
//! ```

pub mod algebra;
pub mod cellular;
pub mod complex;
pub mod document;
pub mod fixtures;
pub mod koszul;
pub mod linalg;
pub mod module;
pub mod perversity;
pub mod quiver;
pub mod sheaf;
pub mod triangulation;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/perversities.md")]
    mod perversities {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/sheaves.md")]
    mod sheaves {}
    #[doc = include_str!("../../../book/src/koszul.md")]
    mod koszul {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

pub use algebra::{
    opposite, quadratic_dual, same_presentation, AlgebraError, AlgebraKind, QuadraticQuiverAlgebra, RelationSpace,
};
pub use cellular::{CellularData, ShapeError};
pub use complex::{parse_complex, ComplexError, Flag, FlagId, SimplexId, SimplicialComplex, SubdividedComplex};
pub use document::{AlgebraDocument, DocumentError, FlagSheafDocument, SheafDocument};
pub use koszul::{ext_vs_dual, koszulity_check, minimal_resolution, KoszulError};
pub use linalg::{Matrix, Q};
pub use module::{check_module, random_module, random_modules, ModuleBudget};
pub use perversity::{enumerate_perversities, Perversity, PerversityError};
pub use quiver::{Path, Quiver};
pub use sheaf::{composite_map, hom_space, restrict, validate_tea, SObject, SheafContext, SheafError};
pub use triangulation::{PerverseTriangulation, TriangulationError};

/// Any error the library reports.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] complex::ParseError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Perversity(#[from] PerversityError),
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
}
