//! The exact dodecahedron, its rotation group, inscribed cubes, face axes and tetrads.

mod cubes;
mod group;
pub mod mat3;
mod model;

pub use cubes::{pairs_equivariant, vertex_pairs, CubeSet, PairOrientation, TetradSplit};
pub use group::{rotation_group, GroupData, GroupElement, CLASS_NAMES};
pub use model::{Dart, DodecModel};

use crate::Result;

/// Everything built from the dodecahedron, with the conventions fixed.
#[derive(Clone, Debug)]
pub struct Icosa {
    pub model: DodecModel,
    pub group: GroupData,
    pub cubes: CubeSet,
    pub split: TetradSplit,
}

impl Icosa {
    pub fn build() -> Result<Icosa> {
        Icosa::with_split(false)
    }

    /// `swap = true` exchanges the roles of `E` and `ιE`.
    pub fn with_split(swap: bool) -> Result<Icosa> {
        let model = DodecModel::build()?;
        let group = rotation_group(&model)?;
        let cubes = CubeSet::new(&model, &group, PairOrientation::Counterclockwise)?;
        let split = TetradSplit::new(&model, &group.cubes, 0)?;
        let split = if swap { split.swapped() } else { split };
        Ok(Icosa { model, group, cubes, split })
    }
}
