use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{smith_normal_form, IntMat, IntVec};
use crate::icosa::GroupData;
use crate::{Error, Result};

/// The named integral lattices with an action of the rotation group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LatticeKind {
    Vo,
    VoDual,
    Wo,
    WoDual,
    Eo,
    Wedge2ZK,
    Wedge2Wo,
    Wedge2WoDual,
    TrivialZ,
}

impl LatticeKind {
    pub const ALL: [LatticeKind; 9] = [
        LatticeKind::Vo,
        LatticeKind::VoDual,
        LatticeKind::Wo,
        LatticeKind::WoDual,
        LatticeKind::Eo,
        LatticeKind::Wedge2ZK,
        LatticeKind::Wedge2Wo,
        LatticeKind::Wedge2WoDual,
        LatticeKind::TrivialZ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Vo => "Vo",
            LatticeKind::VoDual => "Vo_dual",
            LatticeKind::Wo => "Wo",
            LatticeKind::WoDual => "Wo_dual",
            LatticeKind::Eo => "Eo",
            LatticeKind::Wedge2ZK => "Wedge2ZK",
            LatticeKind::Wedge2Wo => "Wedge2Wo",
            LatticeKind::Wedge2WoDual => "Wedge2Wo_dual",
            LatticeKind::TrivialZ => "TrivialZ",
        }
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LatticeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LatticeKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s)).ok_or_else(|| Error::UnknownLattice(s.to_string()))
    }
}

/// A free Z-module of finite rank with the group acting by integer matrices.
#[derive(Clone, Debug, Serialize)]
pub struct ZGLattice {
    pub name: String,
    pub rank: usize,
    /// `action[g]` is the matrix of element `g` (columns are images of basis vectors).
    pub action: Vec<IntMat>,
}

/// Index pairs `(i, j)`, `i < j`, in the order used for wedge-square bases.
pub fn wedge_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Position of `e_i ∧ e_j` in the wedge-square basis and the sign relating them.
pub fn wedge_index(n: usize, i: usize, j: usize) -> Option<(usize, i64)> {
    if i == j || i >= n || j >= n {
        return None;
    }
    let (a, b, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
    // pairs before row a: sum_{k<a} (n-1-k)
    let idx = a * (2 * n - a - 1) / 2 + (b - a - 1);
    Some((idx, s))
}

fn permutation_matrix(p: &[usize]) -> IntMat {
    let n = p.len();
    let mut m = IntMat::zeros(n, n);
    for (i, &pi) in p.iter().enumerate() {
        m.set_i64(pi, i, 1);
    }
    m
}

/// `Z^n / diagonal` in the basis of the images of `e_0 .. e_{n-2}`.
fn quotient_by_diagonal(p: &[usize]) -> IntMat {
    let r = p.len() - 1;
    let mut m = IntMat::zeros(r, r);
    for i in 0..r {
        if p[i] < r {
            m.set_i64(p[i], i, 1);
        } else {
            for k in 0..r {
                m.set_i64(k, i, -1);
            }
        }
    }
    m
}

/// Coefficient-sum-zero sublattice in the basis `e_i - e_{n-1}`.
fn sum_zero(p: &[usize]) -> IntMat {
    let r = p.len() - 1;
    let mut m = IntMat::zeros(r, r);
    for i in 0..r {
        // g(e_i - e_r) = e_{p i} - e_{p r} = f_{p i} - f_{p r}, f_r = 0
        if p[i] < r {
            *m.get_mut(p[i], i) += BigInt::one();
        }
        if p[r] < r {
            *m.get_mut(p[r], i) -= BigInt::one();
        }
    }
    m
}

/// Matrix of `∧² A` in the bases `e_i ∧ e_j`, `i < j`; `A` may be rectangular.
pub fn wedge2_matrix(a: &IntMat) -> IntMat {
    let rows = wedge_pairs(a.rows());
    let cols = wedge_pairs(a.cols());
    let mut m = IntMat::zeros(rows.len(), cols.len());
    for (col, &(i, j)) in cols.iter().enumerate() {
        for (row, &(k, l)) in rows.iter().enumerate() {
            let v = a.get(k, i) * a.get(l, j) - a.get(l, i) * a.get(k, j);
            m.set(row, col, v);
        }
    }
    m
}

impl ZGLattice {
    pub fn new(name: impl Into<String>, action: Vec<IntMat>) -> ZGLattice {
        let rank = action.first().map_or(0, IntMat::rows);
        ZGLattice { name: name.into(), rank, action }
    }

    pub fn permutation(name: impl Into<String>, perms: &[Vec<usize>]) -> ZGLattice {
        ZGLattice::new(name, perms.iter().map(|p| permutation_matrix(p)).collect())
    }

    pub fn trivial(order: usize) -> ZGLattice {
        ZGLattice::new("TrivialZ", vec![IntMat::identity(1); order])
    }

    pub fn wedge2(&self, name: impl Into<String>) -> ZGLattice {
        ZGLattice::new(name, self.action.iter().map(wedge2_matrix).collect())
    }

    /// Contragredient action `g ↦ (A_g^{-1})^T` on the dual lattice.
    pub fn dual(&self, name: impl Into<String>, group: &GroupData) -> ZGLattice {
        ZGLattice::new(name, (0..self.action.len()).map(|g| self.action[group.inverse[g]].transpose()).collect())
    }

    pub fn act(&self, g: usize, v: &[BigInt]) -> IntVec {
        self.action[g].mul_vec(v)
    }

    /// Checks `A_g A_h = A_{gh}` for all pairs and `det A_g = ±1`.
    pub fn is_homomorphism(&self, group: &GroupData) -> bool {
        if self.action.len() != group.order() {
            return false;
        }
        if let Some(small) = self.action.iter().map(IntMat::to_i64_rows).collect::<Option<Vec<_>>>() {
            let n = self.rank;
            let prod = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
                (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
            };
            for g in 0..group.order() {
                for h in 0..group.order() {
                    if prod(&small[g], &small[h]) != small[group.mul[g][h]] {
                        return false;
                    }
                }
            }
        } else {
            for g in 0..group.order() {
                for h in 0..group.order() {
                    if &self.action[g] * &self.action[h] != self.action[group.mul[g][h]] {
                        return false;
                    }
                }
            }
        }
        self.action[0].is_identity() && self.action.iter().all(crate::arith::is_unimodular)
    }

    /// Checks that `form` is invariant: `A_g^T S A_g = S` for every `g`.
    pub fn preserves_form(&self, form: &IntMat) -> bool {
        self.action.iter().all(|a| &(&a.transpose() * form) * a == *form)
    }
}

/// Builds one of the named lattices from the permutation actions on cubes and axes.
pub fn build_lattice(kind: LatticeKind, group: &GroupData) -> ZGLattice {
    let cubes: Vec<Vec<usize>> = group.elements.iter().map(|e| e.cubes.clone()).collect();
    let axes: Vec<Vec<usize>> = group.elements.iter().map(|e| e.axes.clone()).collect();
    let from = |name: &str, f: fn(&[usize]) -> IntMat, perms: &[Vec<usize>]| ZGLattice::new(name, perms.iter().map(|p| f(p)).collect());
    match kind {
        LatticeKind::Vo => from("Vo", quotient_by_diagonal, &cubes),
        LatticeKind::VoDual => from("Vo_dual", sum_zero, &cubes),
        LatticeKind::Wo => from("Wo", quotient_by_diagonal, &axes),
        LatticeKind::WoDual => from("Wo_dual", sum_zero, &axes),
        LatticeKind::Eo => build_lattice(LatticeKind::Vo, group).wedge2("Eo"),
        LatticeKind::Wedge2ZK => ZGLattice::permutation("ZK", &cubes).wedge2("Wedge2ZK"),
        LatticeKind::Wedge2Wo => build_lattice(LatticeKind::Wo, group).wedge2("Wedge2Wo"),
        LatticeKind::Wedge2WoDual => build_lattice(LatticeKind::WoDual, group).wedge2("Wedge2Wo_dual"),
        LatticeKind::TrivialZ => ZGLattice::trivial(group.order()),
    }
}

/// Quotient map `Z^n -> Z^n / diagonal` in the bases used by [`build_lattice`].
pub fn diagonal_quotient_map(n: usize) -> IntMat {
    let mut m = IntMat::zeros(n - 1, n);
    for i in 0..n - 1 {
        m.set_i64(i, i, 1);
        m.set_i64(i, n - 1, -1);
    }
    m
}

/// Gram matrix `5 I - J` of the invariant form on `Vo` (projection of the standard form on
/// `Z^5`, scaled by 5 to be integral and primitive).
pub fn vo_form() -> IntMat {
    let mut s = IntMat::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            s.set_i64(i, j, if i == j { 4 } else { -1 });
        }
    }
    s
}

/// Scale relating [`vo_form`] to the projected standard form.
pub const VO_FORM_SCALE: i64 = 5;

#[derive(Clone, Debug, Serialize)]
pub struct PrincipalCertificate {
    pub lattice: String,
    pub generator: Vec<i64>,
    pub rank: usize,
    pub span_rank: usize,
    pub invariant_factors: Vec<String>,
    pub principal: bool,
}

/// Decides whether `candidate` generates `lattice` over the group ring: the 60 translates
/// must span the whole lattice (all invariant factors 1, full rank).
pub fn is_principal(lattice: &ZGLattice, candidate: &[BigInt]) -> PrincipalCertificate {
    let cols: Vec<IntVec> = lattice.action.iter().map(|a| a.mul_vec(candidate)).collect();
    let m = IntMat::from_columns(lattice.rank, &cols);
    let snf = smith_normal_form(&m);
    let inv = snf.invariant_factors();
    let principal = snf.rank == lattice.rank && inv.iter().all(One::is_one);
    PrincipalCertificate {
        lattice: lattice.name.clone(),
        generator: candidate.iter().map(|x| i64::try_from(x).unwrap_or(i64::MAX)).collect(),
        rank: lattice.rank,
        span_rank: snf.rank,
        invariant_factors: inv.iter().map(ToString::to_string).collect(),
        principal,
    }
}

/// Standard basis vector of length `n`.
pub fn unit(n: usize, i: usize) -> IntVec {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosa::{rotation_group, DodecModel};

    fn group() -> GroupData {
        rotation_group(&DodecModel::build().unwrap()).unwrap()
    }

    #[test]
    fn ranks() {
        let g = group();
        let ranks: Vec<usize> = LatticeKind::ALL.iter().map(|&k| build_lattice(k, &g).rank).collect();
        assert_eq!(ranks, vec![4, 4, 5, 5, 6, 10, 10, 10, 1]);
    }

    #[test]
    fn all_actions_are_homomorphisms() {
        let g = group();
        for k in LatticeKind::ALL {
            assert!(build_lattice(k, &g).is_homomorphism(&g), "{k}");
        }
    }

    #[test]
    fn unknown_kind() {
        assert_eq!("Vo_dual".parse::<LatticeKind>().unwrap(), LatticeKind::VoDual);
        assert!(matches!("Xo".parse::<LatticeKind>(), Err(Error::UnknownLattice(_))));
    }

    #[test]
    fn wedge_index_matches_pairs() {
        for n in 2..7 {
            for (k, &(i, j)) in wedge_pairs(n).iter().enumerate() {
                assert_eq!(wedge_index(n, i, j), Some((k, 1)));
                assert_eq!(wedge_index(n, j, i), Some((k, -1)));
            }
        }
    }

    #[test]
    fn quotient_maps_are_equivariant_with_diagonal_kernel() {
        let g = group();
        let zk = ZGLattice::permutation("ZK", &g.elements.iter().map(|e| e.cubes.clone()).collect::<Vec<_>>());
        let vo = build_lattice(LatticeKind::Vo, &g);
        let q = diagonal_quotient_map(5);
        for e in 0..60 {
            assert_eq!(&q * &zk.action[e], &vo.action[e] * &q);
        }
        let k = crate::arith::integer_kernel(&q);
        assert_eq!(k.columns(), vec![crate::arith::int_vec(&[1, 1, 1, 1, 1])]);
        assert!(smith_normal_form(&q).all_units());
    }

    #[test]
    fn vo_form_is_invariant_and_primitive() {
        let g = group();
        let vo = build_lattice(LatticeKind::Vo, &g);
        let s = vo_form();
        assert!(vo.preserves_form(&s));
        assert!(s.content().is_one());
        // <e_i - e/5, e_j - e/5> = delta_ij - 1/5
        assert_eq!(s.get(0, 0), &BigInt::from(VO_FORM_SCALE - 1));
    }

    #[test]
    fn principal_generators() {
        let g = group();
        let cases = [
            (LatticeKind::Vo, unit(4, 0)),
            (LatticeKind::Wedge2ZK, unit(10, 0)),
            (LatticeKind::Eo, unit(6, 0)),
            (LatticeKind::Wo, unit(5, 0)),
            (LatticeKind::Wedge2Wo, unit(10, 0)),
        ];
        for (k, v) in cases {
            assert!(is_principal(&build_lattice(k, &g), &v).principal, "{k}");
        }
        // twice a generator is not
        let two: Vec<BigInt> = unit(4, 0).iter().map(|x| x * 2).collect();
        assert!(!is_principal(&build_lattice(LatticeKind::Vo, &g), &two).principal);
    }
}
