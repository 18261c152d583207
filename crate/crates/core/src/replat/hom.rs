use num_bigint::BigInt;
use serde::Serialize;

use super::lattice::ZGLattice;
use crate::arith::{integer_kernel, is_saturated, IntMat};
use crate::icosa::GroupData;
use crate::{Error, Result};

/// A basis of the equivariant maps `source -> target` (each a `target.rank × source.rank` matrix).
#[derive(Clone, Debug, Serialize)]
pub struct HomLattice {
    pub source: String,
    pub target: String,
    pub basis: Vec<IntMat>,
}

impl HomLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Basis as the columns of one matrix (column-stacked vectorisations).
    pub fn basis_matrix(&self, rows: usize, cols: usize) -> IntMat {
        IntMat::from_columns(rows * cols, &self.basis.iter().map(IntMat::vectorize).collect::<Vec<_>>())
    }
}

/// Linear system whose kernel is `{X : B X = X A}`, acting on `vec(X)`.
fn intertwiner_system(a: &IntMat, b: &IntMat) -> IntMat {
    let (m, n) = (a.rows(), b.rows());
    let mut sys = IntMat::zeros(n * m, n * m);
    // vec(B X) = (I ⊗ B) vec X ; vec(X A) = (Aᵀ ⊗ I) vec X
    for j in 0..m {
        for i in 0..n {
            let row = j * n + i;
            for k in 0..n {
                *sys.get_mut(row, j * n + k) += b.get(i, k);
            }
            for k in 0..m {
                *sys.get_mut(row, k * n + i) -= a.get(k, j);
            }
        }
    }
    sys
}

/// `X` commutes with the two actions for every group element.
pub fn is_equivariant(x: &IntMat, source: &ZGLattice, target: &ZGLattice) -> bool {
    source.action.iter().zip(&target.action).all(|(a, b)| b * x == x * a)
}

/// Equivariant maps, solved on the group generators and verified on every element.
pub fn equivariant_hom(source: &ZGLattice, target: &ZGLattice, group: &GroupData) -> Result<HomLattice> {
    let (m, n) = (source.rank, target.rank);
    let mut sys = IntMat::zeros(0, n * m);
    for &g in &group.generators {
        sys = sys.vstack(&intertwiner_system(&source.action[g], &target.action[g]));
    }
    let k = integer_kernel(&sys);
    let basis: Vec<IntMat> = k.columns().iter().map(|c| IntMat::unvectorize(n, m, c)).collect();
    if !basis.iter().all(|x| is_equivariant(x, source, target)) {
        return Err(Error::Certificate(format!("generators do not control Hom({}, {})", source.name, target.name)));
    }
    Ok(HomLattice { source: source.name.clone(), target: target.name.clone(), basis })
}

/// The basis spans a saturated sublattice of all integer matrices.
pub fn is_saturated_hom(h: &HomLattice, rows: usize, cols: usize) -> bool {
    h.basis.is_empty() || is_saturated(&h.basis_matrix(rows, cols))
}

/// Coordinates of an equivariant map in the basis of `h`.
pub fn hom_coordinates(h: &HomLattice, x: &IntMat) -> Option<Vec<BigInt>> {
    crate::arith::solve_integer(&h.basis_matrix(x.rows(), x.cols()), &x.vectorize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosa::{rotation_group, DodecModel};
    use crate::replat::{build_lattice, LatticeKind};

    fn group() -> GroupData {
        rotation_group(&DodecModel::build().unwrap()).unwrap()
    }

    #[test]
    fn vo_to_eo_vanishes() {
        let g = group();
        let h = equivariant_hom(&build_lattice(LatticeKind::Vo, &g), &build_lattice(LatticeKind::Eo, &g), &g).unwrap();
        assert_eq!(h.rank(), 0);
    }

    #[test]
    fn endomorphisms_of_vo_are_scalars() {
        let g = group();
        let vo = build_lattice(LatticeKind::Vo, &g);
        let h = equivariant_hom(&vo, &vo, &g).unwrap();
        assert_eq!(h.rank(), 1);
        assert!(h.basis[0] == IntMat::identity(4) || h.basis[0] == -&IntMat::identity(4));
        assert!(is_saturated_hom(&h, 4, 4));
    }

    #[test]
    fn vo_to_its_dual() {
        let g = group();
        let vo = build_lattice(LatticeKind::Vo, &g);
        let vd = build_lattice(LatticeKind::VoDual, &g);
        let h = equivariant_hom(&vo, &vd, &g).unwrap();
        assert_eq!(h.rank(), 1);
        assert!(is_saturated_hom(&h, 4, 4));
    }

    #[test]
    fn system_matches_direct_commutation() {
        let a = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        let b = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        let x = IntMat::from_rows(&[vec![1, 2], vec![2, 1]]);
        let r = intertwiner_system(&a, &b).mul_vec(&x.vectorize());
        assert_eq!(r, (&(&b * &x) - &(&x * &a)).vectorize());
    }
}
