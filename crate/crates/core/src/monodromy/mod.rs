//! Picard–Lefschetz monodromies on `Hom(Vo, H_1)` and the congruence subgroup they generate.

mod congruence;
mod picard;
mod sl2;

pub use congruence::{
    cusp_data, elliptic_count, gamma1_membership, generated_mod3, sl2_f3, words_in_gamma1, CosetCertificate, Cusp, CuspData, EllipticData,
    Letter, Multiplier, Witness, REPRESENTATIVE_NAMES,
};
pub use picard::{induced_sl2, picard_lefschetz, vanishing_set, Convention, LocalMonodromy, MonodromyTable, PicardLefschetzCheck};
pub use sl2::{normalize_cusp, SL2Mat};
