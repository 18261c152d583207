//! Smith and Hermite normal forms over Z and the lattice operations built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::intmat::{IntMat, IntVec};

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal with `d1 | d2 | ...`.
#[derive(Clone, Debug, Serialize)]
pub struct SmithDecomposition {
    pub u: IntMat,
    pub v: IntMat,
    pub d: IntMat,
    pub rank: usize,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1 .. d_rank` (all positive).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Some `x` with `M x = b`, or `None` when `b` is not in the integral column span.
    pub fn solve(&self, b: &[BigInt]) -> Option<IntVec> {
        assert_eq!(b.len(), self.u.cols(), "right-hand side has wrong length");
        let c = self.u.mul_vec(b);
        if c[self.rank..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut y = vec![BigInt::zero(); self.v.rows()];
        for i in 0..self.rank {
            let (q, r) = c[i].div_rem(self.d.get(i, i));
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
        Some(self.v.mul_vec(&y))
    }

    /// True when every nonzero invariant factor is 1, i.e. the column span is saturated.
    pub fn all_units(&self) -> bool {
        self.invariant_factors().iter().all(One::is_one)
    }
}

fn trunc_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    a / b
}

/// Position of the smallest nonzero |entry| in the lower-right block, lowest (row, col) on ties.
fn find_pivot(d: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form with the pivot rule "smallest nonzero absolute value, then lowest index".
pub fn smith_normal_form(m: &IntMat) -> SmithDecomposition {
    let (rows, cols) = m.shape();
    let mut d = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&d, t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -trunc_quotient(d.get(i, t), d.get(t, t));
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -trunc_quotient(d.get(t, j), d.get(t, t));
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                let (pi, pj) = find_pivot(&d, t).expect("nonzero block has a pivot");
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // enforce the divisibility chain
            let p = d.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let rank = (0..rows.min(cols)).take_while(|&i| !d.get(i, i).is_zero()).count();
    SmithDecomposition { u, v, d, rank }
}

/// Column echelon form: returns `(E, V)` with `M * V = E`, `V` unimodular, and the nonzero
/// columns of `E` first. The number of nonzero columns is returned as well.
pub fn column_echelon(m: &IntMat) -> (IntMat, IntMat, usize) {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut v = IntMat::identity(cols);
    let mut pc = 0;
    for i in 0..rows {
        if pc == cols {
            break;
        }
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for c in pc..cols {
                let x = a.get(i, c);
                if !x.is_zero() {
                    let ab = x.abs();
                    if best.as_ref().map_or(true, |(_, b)| ab < *b) {
                        best = Some((c, ab));
                    }
                }
            }
            let Some((c, _)) = best else { break };
            a.swap_cols(pc, c);
            v.swap_cols(pc, c);
            let mut clean = true;
            for c in pc + 1..cols {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let q = -trunc_quotient(a.get(i, c), a.get(i, pc));
                a.add_col_multiple(c, pc, &q);
                v.add_col_multiple(c, pc, &q);
                clean &= a.get(i, c).is_zero();
            }
            if clean {
                if a.get(i, pc).is_negative() {
                    a.negate_col(pc);
                    v.negate_col(pc);
                }
                pc += 1;
                break;
            }
        }
    }
    (a, v, pc)
}

/// Canonical Hermite basis of the lattice spanned by the columns of `m`
/// (columns of the result are a basis; zero columns dropped).
pub fn hermite_basis(m: &IntMat) -> IntMat {
    let (mut a, _, r) = column_echelon(m);
    // reduce entries left of each pivot into [0, pivot)
    let mut pc = 0;
    for i in 0..a.rows() {
        if pc == r {
            break;
        }
        let p = a.get(i, pc).clone();
        if p.is_zero() {
            continue;
        }
        for c in 0..pc {
            let q = -a.get(i, c).div_floor(&p);
            a.add_col_multiple(c, pc, &q);
        }
        pc += 1;
    }
    a.submatrix(0..a.rows(), 0..r)
}

/// A basis (as columns) of `{x in Z^cols : M x = 0}`; saturated by construction.
pub fn integer_kernel(m: &IntMat) -> IntMat {
    let (_, v, r) = column_echelon(m);
    let k = v.submatrix(0..v.rows(), r..v.cols());
    if k.cols() == 0 {
        return k;
    }
    hermite_basis(&k)
}

/// Basis (as columns) of the column span of `m`.
pub fn image_basis(m: &IntMat) -> IntMat {
    hermite_basis(m)
}

/// Some `x` with `A x = b` over Z, if one exists.
pub fn solve_integer(a: &IntMat, b: &[BigInt]) -> Option<IntVec> {
    smith_normal_form(a).solve(b)
}

/// Invariant factors of `Z^rows / colspan(M)`: the non-unit elementary divisors followed by
/// one zero per free summand.
pub fn cokernel_invariants(m: &IntMat) -> Vec<BigInt> {
    let snf = smith_normal_form(m);
    let mut out: Vec<BigInt> = snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
    out.extend(std::iter::repeat(BigInt::zero()).take(m.rows() - snf.rank));
    out
}

/// True when the columns span a saturated sublattice (`Z^n / span` torsion free).
pub fn is_saturated(m: &IntMat) -> bool {
    smith_normal_form(m).all_units()
}

/// Integer left inverse `L` with `L * K = I` of a saturated matrix of full column rank.
pub fn left_inverse(k: &IntMat) -> Option<IntMat> {
    let snf = smith_normal_form(k);
    if snf.rank != k.cols() || !snf.all_units() {
        return None;
    }
    let top = snf.u.submatrix(0..k.cols(), 0..k.rows());
    Some(&snf.v * &top)
}

/// Coordinates of every column of `target` in the basis given by the columns of `basis`.
pub fn express_in_basis(basis: &IntMat, target: &IntMat) -> Option<IntMat> {
    let snf = smith_normal_form(basis);
    let mut cols = Vec::with_capacity(target.cols());
    for j in 0..target.cols() {
        cols.push(snf.solve(&target.column(j))?);
    }
    Some(IntMat::from_columns(basis.cols(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::intmat::int_vec;
    use proptest::prelude::*;

    fn is_unimodular(m: &IntMat) -> bool {
        let d = m.det();
        d == BigInt::one() || d == -BigInt::one()
    }

    fn check_smith(m: &IntMat, snf: &SmithDecomposition) {
        assert_eq!(&(&snf.u * m) * &snf.v, snf.d);
        assert!(is_unimodular(&snf.u));
        assert!(is_unimodular(&snf.v));
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d.get(i, j).is_zero());
                }
            }
        }
        let f = snf.invariant_factors();
        assert!(f.iter().all(|x| x.is_positive()));
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert_eq!(snf.rank, m.rank());
    }

    #[test]
    fn identity_and_scalar() {
        let snf = smith_normal_form(&IntMat::identity(3));
        assert_eq!(snf.d, IntMat::identity(3));
        assert_eq!(snf.rank, 3);
        let snf = smith_normal_form(&IntMat::from_rows(&[vec![3]]));
        assert_eq!(snf.d, IntMat::from_rows(&[vec![3]]));
    }

    #[test]
    fn divisibility_chain_is_enforced() {
        // diag(2, 3) has Smith form diag(1, 6)
        let m = IntMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        check_smith(&m, &snf);
        assert_eq!(snf.invariant_factors(), int_vec(&[1, 6]));
    }

    #[test]
    fn deterministic() {
        let m = IntMat::from_rows(&[vec![4, 6, -2], vec![8, 3, 5], vec![0, 9, 12]]);
        let a = smith_normal_form(&m);
        let b = smith_normal_form(&m);
        assert_eq!(a.u, b.u);
        assert_eq!(a.v, b.v);
        check_smith(&m, &a);
    }

    #[test]
    fn kernel_examples() {
        let k = integer_kernel(&IntMat::from_rows(&[vec![1, -1]]));
        assert_eq!(k, IntMat::from_rows(&[vec![1], vec![1]]));
        let k = integer_kernel(&IntMat::zeros(2, 3));
        assert_eq!(k.cols(), 3);
        assert_eq!(k, IntMat::identity(3));
        let k = integer_kernel(&IntMat::identity(3));
        assert_eq!(k.cols(), 0);
    }

    #[test]
    fn kernel_is_saturated_not_just_spanning() {
        // x + 2y = 0 over Z: kernel generated by (2,-1) (not (4,-2))
        let k = integer_kernel(&IntMat::from_rows(&[vec![2, 4]]));
        assert_eq!(k.cols(), 1);
        assert!(is_saturated(&k));
        assert_eq!(k.content(), BigInt::one());
    }

    #[test]
    fn solve_examples() {
        let a = IntMat::from_rows(&[vec![2]]);
        assert_eq!(solve_integer(&a, &int_vec(&[4])), Some(int_vec(&[2])));
        assert_eq!(solve_integer(&a, &int_vec(&[3])), None);
    }

    #[test]
    fn cokernel_examples() {
        assert!(cokernel_invariants(&IntMat::identity(4)).is_empty());
        assert_eq!(cokernel_invariants(&IntMat::from_rows(&[vec![3]])), int_vec(&[3]));
        assert_eq!(cokernel_invariants(&IntMat::zeros(2, 1)), int_vec(&[0, 0]));
        assert_eq!(cokernel_invariants(&IntMat::from_rows(&[vec![2, 0], vec![0, 0]])), int_vec(&[2, 0]));
    }

    #[test]
    fn left_inverse_of_saturated() {
        let k = IntMat::from_rows(&[vec![1, 0], vec![2, 1], vec![3, 5]]);
        let l = left_inverse(&k).unwrap();
        assert_eq!(&l * &k, IntMat::identity(2));
        let not_sat = IntMat::from_rows(&[vec![2], vec![4]]);
        assert!(left_inverse(&not_sat).is_none());
    }

    fn arb_mat() -> impl Strategy<Value = IntMat> {
        (1usize..=8, 1usize..=8)
            .prop_flat_map(|(r, c)| proptest::collection::vec(-10i64..=10, r * c).prop_map(move |e| IntMat::from_i64(r, c, &e)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn smith_invariants_hold(m in arb_mat()) {
            let snf = smith_normal_form(&m);
            check_smith(&m, &snf);
        }

        #[test]
        fn kernel_is_saturated_and_annihilated(m in arb_mat()) {
            let k = integer_kernel(&m);
            prop_assert_eq!(k.cols(), m.cols() - m.rank());
            if k.cols() > 0 {
                prop_assert!((&m * &k).is_zero());
                prop_assert!(is_saturated(&k));
            }
        }

        #[test]
        fn solve_is_sound_and_complete(m in arb_mat(), seed in proptest::collection::vec(-3i64..=3, 8), perturb in 0i64..3) {
            let x0 = int_vec(&seed[..m.cols()]);
            let mut b = m.mul_vec(&x0);
            b[0] += perturb;
            let snf = smith_normal_form(&m);
            match snf.solve(&b) {
                Some(x) => prop_assert_eq!(m.mul_vec(&x), b),
                None => {
                    // b not in the span: in Smith coordinates some component is not divisible
                    let c = snf.u.mul_vec(&b);
                    let blocked = c[snf.rank..].iter().any(|x| !x.is_zero())
                        || (0..snf.rank).any(|i| !c[i].is_multiple_of(snf.d.get(i, i)));
                    prop_assert!(blocked);
                    prop_assert!(perturb != 0);
                }
            }
        }
    }
}
