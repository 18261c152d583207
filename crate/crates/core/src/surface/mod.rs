//! The surface obtained from the truncated dodecahedron by identifying antipodal points, its
//! cellular chain complex, homology and intersection form.

mod complex;
mod homology;
mod lagrangian;
mod vhom;

pub use complex::{mul_small, Cell1, Chain, HalfEdge, OrbitStructure, SignedPerm, SurfaceComplex, N_EDGE};
pub use homology::{chain_from_big, CanonicalCycles, Homology};
pub use lagrangian::{delta_tilde, dodecahedron_boundary2, EdgeLagrangian, K6Certificate, Mod3Witness, SplitCertificate, TrcLagrangian};
pub use vhom::{
    pairing_scale, sublattice, u_edge_generator, u_trc_generator, DivisibilityWitness, SpecialIntersections, UMaps, VHomLattice,
};
