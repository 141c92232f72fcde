//! Linear data on a quiver: a stalk dimension per node and a restriction
//! matrix per arrow. Serves both as a quiver representation (a module over
//! a quiver algebra) and as cellular sheaf data.

use std::sync::Arc;

use crate::linalg::Matrix;
use crate::quiver::{ArrowId, NodeId, Path, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("expected {expected} stalks, found {found}")]
    StalkCount { expected: usize, found: usize },
    #[error("expected {expected} maps, found {found}")]
    MapCount { expected: usize, found: usize },
    #[error("map {arrow} should be {expected:?} (rows, cols) but is {found:?}")]
    MapShape { arrow: String, expected: (usize, usize), found: (usize, usize) },
    #[error("objects live on different quivers")]
    QuiverMismatch,
}

/// Stalks and restriction maps. The map along `s -> t` goes from the stalk
/// at `s` to the stalk at `t`, so it has shape `stalk(t) × stalk(s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellularData {
    quiver: Arc<Quiver>,
    stalks: Vec<usize>,
    maps: Vec<Matrix>,
}

impl CellularData {
    pub fn new(quiver: Arc<Quiver>, stalks: Vec<usize>, maps: Vec<Matrix>) -> Result<Self, ShapeError> {
        if stalks.len() != quiver.len() {
            return Err(ShapeError::StalkCount { expected: quiver.len(), found: stalks.len() });
        }
        if maps.len() != quiver.arrows().len() {
            return Err(ShapeError::MapCount { expected: quiver.arrows().len(), found: maps.len() });
        }
        for (a, m) in maps.iter().enumerate() {
            let (s, t) = quiver.arrow(a);
            let expected = (stalks[t], stalks[s]);
            if m.shape() != expected {
                return Err(ShapeError::MapShape { arrow: quiver.arrow_name(a), expected, found: m.shape() });
            }
        }
        Ok(CellularData { quiver, stalks, maps })
    }

    pub fn zero(quiver: Arc<Quiver>) -> Self {
        let stalks = vec![0; quiver.len()];
        let maps = vec![Matrix::zeros(0, 0); quiver.arrows().len()];
        CellularData { quiver, stalks, maps }
    }

    /// One-dimensional stalks and identity maps everywhere.
    pub fn constant(quiver: Arc<Quiver>) -> Self {
        let stalks = vec![1; quiver.len()];
        let maps = vec![Matrix::identity(1); quiver.arrows().len()];
        CellularData { quiver, stalks, maps }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn stalks(&self) -> &[usize] {
        &self.stalks
    }

    pub fn stalk(&self, v: NodeId) -> usize {
        self.stalks[v]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: ArrowId) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn map_between(&self, s: NodeId, t: NodeId) -> Option<&Matrix> {
        self.quiver.arrow_id(s, t).map(|a| &self.maps[a])
    }

    /// Replace one map, keeping its shape.
    pub fn set_map(&mut self, arrow: ArrowId, matrix: Matrix) -> Result<(), ShapeError> {
        let (s, t) = self.quiver.arrow(arrow);
        let expected = (self.stalks[t], self.stalks[s]);
        if matrix.shape() != expected {
            return Err(ShapeError::MapShape { arrow: self.quiver.arrow_name(arrow), expected, found: matrix.shape() });
        }
        self.maps[arrow] = matrix;
        Ok(())
    }

    /// Composite of the maps along a path; the identity for a trivial path.
    pub fn path_map(&self, path: &Path) -> Matrix {
        let mut acc = Matrix::identity(self.stalks[path.source()]);
        for w in path.nodes().windows(2) {
            let a = self.quiver.arrow_id(w[0], w[1]).expect("path follows arrows");
            acc = &self.maps[a] * &acc;
        }
        acc
    }

    pub fn total_dimension(&self) -> usize {
        self.stalks.iter().sum()
    }
}
