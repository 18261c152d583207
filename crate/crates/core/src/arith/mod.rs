//! Exact arithmetic: rationals, the golden field Q(sqrt 5), and integer matrices with the
//! Smith/Hermite algorithms every other module relies on.

mod golden;
mod intmat;
mod snf;

pub use golden::GoldenNumber;
pub use intmat::{int_vec, serialize_int, serialize_ints, serialize_rational, IntMat, IntVec, JsonInt, JsonInts};
pub use snf::{
    cokernel_invariants, column_echelon, express_in_basis, hermite_basis, image_basis, integer_kernel, is_saturated, left_inverse,
    smith_normal_form, solve_integer, SmithDecomposition,
};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// True when `det(m) = ±1`.
pub fn is_unimodular(m: &IntMat) -> bool {
    use num_traits::Signed;
    m.is_square() && m.det().abs() == num_bigint::BigInt::from(1)
}
