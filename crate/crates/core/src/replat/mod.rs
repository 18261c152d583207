//! Integral lattices with an action of the rotation group, their characters, and lattices of
//! equivariant maps.

mod character;
mod hom;
mod lattice;

pub use character::{
    character_of, decompose_character, irreducible_table, is_orthonormal, permutation_character, table_gram, ClassFunction,
    IRREDUCIBLE_NAMES,
};
pub use hom::{equivariant_hom, hom_coordinates, is_equivariant, is_saturated_hom, HomLattice};
pub use lattice::{
    build_lattice, diagonal_quotient_map, is_principal, unit, vo_form, wedge2_matrix, wedge_index, wedge_pairs, LatticeKind,
    PrincipalCertificate, ZGLattice, VO_FORM_SCALE,
};
