use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::complex::{Chain, SurfaceComplex};
use super::homology::{chain_from_big, Homology};
use super::vhom::{sublattice, VHomLattice};
use crate::arith::{
    cokernel_invariants, express_in_basis, image_basis, integer_kernel, is_saturated, is_unimodular, left_inverse, smith_normal_form,
    solve_integer, IntMat, IntVec,
};
use crate::icosa::{CubeSet, GroupData, TetradSplit};
use crate::replat::{
    build_lattice, diagonal_quotient_map, equivariant_hom, hom_coordinates, unit, wedge2_matrix, wedge_index, wedge_pairs, LatticeKind,
    ZGLattice,
};
use crate::{Error, Result};

fn cert(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

fn signed_unit(n: usize, (idx, sign): (usize, i64)) -> IntVec {
    let mut v = unit(n, idx);
    v[idx] *= sign;
    v
}

fn equivariant_between(x: &IntMat, source: &[IntMat], target: &[IntMat]) -> bool {
    source.iter().zip(target).all(|(a, b)| b * x == x * a)
}

/// `L_trc -> ∧²Z^K`, `δ_x ↦ e_a ∧ e_b` for the ordered cube pair `(a, b)` of `x`.
#[derive(Clone, Debug, Serialize)]
pub struct TrcLagrangian {
    /// Columns: images of `δ_x`, `x` in `R`.
    pub psi: IntMat,
    pub unimodular: bool,
    pub equivariant: bool,
    /// Every `±δ_x` goes to a signed `±e_a ∧ e_b`, and every such vector is hit once.
    pub vanishing_bijective: bool,
    pub isotropic: bool,
}

impl TrcLagrangian {
    pub fn build(s: &SurfaceComplex, h: &Homology, group: &GroupData, cubes: &CubeSet) -> Result<TrcLagrangian> {
        let n = s.r.len();
        let cols: Vec<IntVec> =
            s.r.iter()
                .map(|&x| {
                    let (a, b) = cubes.vertex_to_pair[x];
                    wedge_index(5, a, b).map(|p| signed_unit(10, p)).ok_or_else(|| cert("vertex has a degenerate cube pair"))
                })
                .collect::<Result<_>>()?;
        let psi = IntMat::from_columns(10, &cols);
        let basis = IntMat::identity(h.rank()).submatrix(0..h.rank(), 0..n);
        let l = sublattice("L_trc", &basis, &h.action)?;
        let target = build_lattice(LatticeKind::Wedge2ZK, group);
        let equivariant = equivariant_between(&psi, &l.action, &target.action);

        let mut hits = vec![0usize; 20];
        let mut consistent = true;
        for x in 0..s.model().vertices.len() {
            let class = h.project(&h.cycles.delta_trc[x])?;
            if class[n..].iter().any(|c| !c.is_zero()) {
                consistent = false;
                continue;
            }
            let img = psi.mul_vec(&class[..n]);
            let (a, b) = cubes.vertex_to_pair[x];
            let (idx, sign) = wedge_index(5, a, b).ok_or_else(|| cert("degenerate cube pair"))?;
            consistent &= img == signed_unit(10, (idx, sign));
            hits[2 * idx + (sign < 0) as usize] += 1;
        }
        let isotropic = (&(&basis.transpose() * &h.form) * &basis).is_zero();
        Ok(TrcLagrangian {
            unimodular: is_unimodular(&psi),
            psi,
            equivariant,
            vanishing_bijective: consistent && hits.iter().all(|&k| k == 1),
            isotropic,
        })
    }
}

/// The dual graph of the edge degeneration and its cohomology.
#[derive(Clone, Debug, Serialize)]
pub struct K6Certificate {
    /// Face-pair axis of every face.
    pub face_axis: Vec<usize>,
    /// Every pair of axes is joined by exactly one node.
    pub complete: bool,
    /// Coboundary `Z^L -> ∧²Z^L`, `l ↦ Σ_{l'} l' ∧ l`.
    pub coboundary: IntMat,
    /// `∧²π : ∧²Z^L -> ∧²W_o`.
    pub wedge_pi: IntMat,
    pub surjective: bool,
    pub kernel_is_coboundaries: bool,
    pub rank_h1: usize,
    pub equivariant: bool,
}

impl K6Certificate {
    pub fn build(s: &SurfaceComplex, group: &GroupData) -> Result<K6Certificate> {
        let m = s.model();
        let mut face_axis = vec![usize::MAX; m.faces.len()];
        for (i, ax) in group.axes.iter().enumerate() {
            for &f in ax {
                face_axis[f] = i;
            }
        }
        if face_axis.contains(&usize::MAX) {
            return Err(cert("face without an axis"));
        }
        let nl = group.axes.len();
        let mut joins = vec![0usize; nl * nl];
        // each node is seen from the four darts y, -y, ιy, -ιy
        for y in 0..m.darts.len() {
            let (i, j) = (face_axis[m.left_face[y]], face_axis[m.left_face[m.reverse(y)]]);
            joins[i.min(j) * nl + i.max(j)] += 1;
        }
        let complete = wedge_pairs(nl).iter().all(|&(i, j)| joins[i * nl + j] == 4) && (0..nl).all(|i| joins[i * nl + i] == 0);

        let npairs = nl * (nl - 1) / 2;
        let mut coboundary = IntMat::zeros(npairs, nl);
        for l in 0..nl {
            for lp in (0..nl).filter(|&k| k != l) {
                let (idx, sign) = wedge_index(nl, lp, l).expect("distinct");
                *coboundary.get_mut(idx, l) += BigInt::from(sign);
            }
        }
        let wedge_pi = wedge2_matrix(&diagonal_quotient_map(nl));
        let snf = smith_normal_form(&wedge_pi);
        let surjective = snf.rank == wedge_pi.rows() && snf.all_units();
        let kernel = integer_kernel(&wedge_pi);
        let kernel_is_coboundaries = (&wedge_pi * &coboundary).is_zero() && is_saturated(&coboundary) && coboundary.rank() == kernel.cols();
        let rank_h1 = npairs - coboundary.rank();

        let perm = ZGLattice::permutation("ZL", &group.elements.iter().map(|e| e.axes.clone()).collect::<Vec<_>>());
        let wedge_perm = perm.wedge2("Wedge2ZL");
        let wo2 = build_lattice(LatticeKind::Wedge2Wo, group);
        let equivariant = equivariant_between(&coboundary, &perm.action, &wedge_perm.action)
            && equivariant_between(&wedge_pi, &wedge_perm.action, &wo2.action);
        Ok(K6Certificate { face_axis, complete, coboundary, wedge_pi, surjective, kernel_is_coboundaries, rank_h1, equivariant })
    }
}

/// `L_edge = ker(H_1(Σ) -> H_1(Σ_edge))` and its identification with `∧²W_o`.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeLagrangian {
    /// Basis of `L_edge` in `H_1` coordinates (columns).
    pub basis: IntMat,
    pub saturated: bool,
    pub isotropic: bool,
    /// `L_edge` equals the span of the edge vanishing cycles.
    pub spanned_by_vanishing: bool,
    /// `∧²Z^L -> H_1`, `e_i ∧ e_j ↦ δ_y` with `y` having axis `i` on its left and `j` on its right.
    pub phi_tilde: IntMat,
    pub well_defined: bool,
    pub kills_coboundaries: bool,
    /// `∧²W_o -> H_1`.
    pub phi: IntMat,
    pub unimodular_onto: bool,
    pub equivariant: bool,
}

impl EdgeLagrangian {
    pub fn build(s: &SurfaceComplex, h: &Homology, group: &GroupData, k6: &K6Certificate) -> Result<EdgeLagrangian> {
        let n1 = s.cells1.len();
        let n_edge = super::N_EDGE;
        let f_bm = h.basis.submatrix(n_edge..n1, 0..h.rank());
        let f_d2 = s.boundary2.submatrix(n_edge..n1, 0..s.cells2.len());
        let k = integer_kernel(&f_bm.hstack(&-&f_d2));
        let basis = image_basis(&k.submatrix(0..h.rank(), 0..k.cols()));
        let saturated = basis.cols() > 0 && is_saturated(&basis);
        let isotropic = (&(&basis.transpose() * &h.form) * &basis).is_zero();

        let classes: Vec<IntVec> = h.cycles.delta_edge.iter().map(|c| h.project(c)).collect::<Result<_>>()?;
        let vanishing = IntMat::from_columns(h.rank(), &classes);
        let spanned_by_vanishing =
            express_in_basis(&basis, &vanishing).is_some() && express_in_basis(&image_basis(&vanishing), &basis).is_some();

        let m = s.model();
        let nl = group.axes.len();
        let mut cols: Vec<Option<IntVec>> = vec![None; nl * (nl - 1) / 2];
        let mut well_defined = true;
        for (y, class) in classes.iter().enumerate() {
            let (i, j) = (k6.face_axis[m.left_face[y]], k6.face_axis[m.left_face[m.reverse(y)]]);
            let (idx, sign) = wedge_index(nl, i, j).ok_or_else(|| cert("edge between faces of one axis"))?;
            let v: IntVec = class.iter().map(|c| c * sign).collect();
            match &cols[idx] {
                None => cols[idx] = Some(v),
                Some(prev) => well_defined &= *prev == v,
            }
        }
        let cols: Vec<IntVec> = cols.into_iter().collect::<Option<_>>().ok_or_else(|| cert("axis pair without a node"))?;
        let phi_tilde = IntMat::from_columns(h.rank(), &cols);
        let kills_coboundaries = (&phi_tilde * &k6.coboundary).is_zero();
        let section = left_inverse(&k6.wedge_pi.transpose()).ok_or_else(|| cert("∧²π has no section"))?.transpose();
        let phi = &phi_tilde * &section;
        let unimodular_onto = express_in_basis(&basis, &phi).is_some_and(|c| is_unimodular(&c));
        let wo2 = build_lattice(LatticeKind::Wedge2Wo, group);
        let equivariant = equivariant_between(&phi, &wo2.action, &h.action);
        Ok(EdgeLagrangian {
            basis,
            saturated,
            isotropic,
            spanned_by_vanishing,
            phi_tilde,
            well_defined,
            kills_coboundaries,
            phi,
            unimodular_onto,
            equivariant,
        })
    }
}

/// Surjectivity of `Hom(Vo, H_1) -> Hom(Vo, L^∨)`.
#[derive(Clone, Debug, Serialize)]
pub struct SplitCertificate {
    pub lattice: String,
    /// `H_1 -> L^∨`, `h ↦ ⟨h, -⟩`.
    pub restriction: IntMat,
    pub restriction_onto: bool,
    pub restriction_equivariant: bool,
    pub hom_rank: usize,
    /// Coordinates of the images of `U_edge`, `U_trc` in `Hom(Vo, L^∨)` (columns).
    pub images: IntMat,
    pub onto: bool,
}

impl SplitCertificate {
    pub fn build(name: &str, basis: &IntMat, h: &Homology, group: &GroupData, v: &VHomLattice) -> Result<SplitCertificate> {
        let l = sublattice(name, basis, &h.action)?;
        let dual = l.dual(format!("{name}_dual"), group);
        let restriction = &basis.transpose() * &h.form.transpose();
        let snf = smith_normal_form(&restriction);
        let restriction_onto = snf.rank == basis.cols() && snf.all_units();
        let restriction_equivariant = equivariant_between(&restriction, &h.action, &dual.action);
        let vo = build_lattice(LatticeKind::Vo, group);
        let hom = equivariant_hom(&vo, &dual, group)?;
        let coords = |u: &IntMat| hom_coordinates(&hom, &(&restriction * u)).ok_or_else(|| cert("image is not equivariant"));
        let images = IntMat::from_columns(hom.rank(), &[coords(&v.big_u_edge)?, coords(&v.big_u_trc)?]);
        let onto = hom.rank() > 0 && images.rank() == hom.rank() && cokernel_invariants(&images).is_empty();
        Ok(SplitCertificate {
            lattice: name.into(),
            restriction,
            restriction_onto,
            restriction_equivariant,
            hom_rank: hom.rank(),
            images,
            onto,
        })
    }
}

/// `δ̃ = Σ_{x∈E} Σ_{tail y = x} y - Σ_{x∈ιE} Σ_{tail y = x} y` on the dodecahedron, with
/// `∂n + 3w = δ̃` where `n` avoids the removed face pair.
#[derive(Clone, Debug, Serialize)]
pub struct Mod3Witness {
    pub removed_face: Option<usize>,
    pub n: Chain,
    pub w: Chain,
    pub holds: bool,
}

/// Oriented boundary of the faces of the dodecahedron on its 30 edges (oriented `min -> max`).
pub fn dodecahedron_boundary2(s: &SurfaceComplex) -> IntMat {
    let m = s.model();
    let mut d = IntMat::zeros(m.edges.len(), m.faces.len());
    for (f, face) in m.faces.iter().enumerate() {
        for i in 0..face.len() {
            let (e, sign) = s.edge(face[i], face[(i + 1) % face.len()]);
            *d.get_mut(e, f) += BigInt::from(sign);
        }
    }
    d
}

pub fn delta_tilde(s: &SurfaceComplex, split: &TetradSplit) -> Chain {
    let m = s.model();
    let mut c = vec![0; m.edges.len()];
    for d in &m.darts {
        let k = split.membership(d.tail);
        if k != 0 {
            let (e, sign) = s.edge(d.tail, d.head);
            c[e] += k * sign;
        }
    }
    c
}

impl Mod3Witness {
    pub fn build(s: &SurfaceComplex, split: &TetradSplit, removed_face: Option<usize>) -> Result<Mod3Witness> {
        let m = s.model();
        let d2 = dodecahedron_boundary2(s);
        let kept: Vec<usize> = (0..m.faces.len()).filter(|&f| removed_face.is_none_or(|z| f != z && f != m.face_antipode[z])).collect();
        let ne = m.edges.len();
        let sys = d2.select_columns(&kept).hstack(&IntMat::scalar(ne, 3));
        let target = delta_tilde(s, split);
        let rhs: IntVec = target.iter().map(|&x| BigInt::from(x)).collect();
        let sol = solve_integer(&sys, &rhs).ok_or_else(|| cert("δ̃ is not a boundary modulo 3"))?;
        let mut n = vec![0; m.faces.len()];
        for (i, &f) in kept.iter().enumerate() {
            n[f] = chain_from_big(&sol[i..=i])[0];
        }
        let w = chain_from_big(&sol[kept.len()..]);
        let dn = super::mul_small(&d2, &n);
        let holds = dn.iter().zip(&w).zip(&target).all(|((a, b), t)| a + 3 * b == *t);
        Ok(Mod3Witness { removed_face, n, w, holds })
    }

    /// The witness on `D` and on `D(z)` for every face `z`.
    pub fn all(s: &SurfaceComplex, split: &TetradSplit) -> Result<Vec<Mod3Witness>> {
        std::iter::once(None).chain((0..s.cells2.len()).map(Some)).map(|z| Mod3Witness::build(s, split, z)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosa::Icosa;

    struct Fixture {
        ic: Icosa,
        s: SurfaceComplex,
        h: Homology,
    }

    fn fixture() -> Fixture {
        let ic = Icosa::build().unwrap();
        let s = SurfaceComplex::build(&ic.model, &ic.group).unwrap();
        let h = Homology::build(&s).unwrap();
        Fixture { ic, s, h }
    }

    #[test]
    fn truncation_lagrangian_is_wedge_of_cubes() {
        let f = fixture();
        let t = TrcLagrangian::build(&f.s, &f.h, &f.ic.group, &f.ic.cubes).unwrap();
        assert!(t.unimodular && t.equivariant && t.vanishing_bijective && t.isotropic);
    }

    #[test]
    fn k6_cohomology() {
        let f = fixture();
        let k = K6Certificate::build(&f.s, &f.ic.group).unwrap();
        assert!(k.complete && k.surjective && k.kernel_is_coboundaries && k.equivariant);
        assert_eq!(k.rank_h1, 10);
    }

    #[test]
    fn edge_lagrangian_is_wedge_of_wo() {
        let f = fixture();
        let k = K6Certificate::build(&f.s, &f.ic.group).unwrap();
        let e = EdgeLagrangian::build(&f.s, &f.h, &f.ic.group, &k).unwrap();
        assert_eq!(e.basis.cols(), 10);
        assert!(e.saturated && e.isotropic && e.spanned_by_vanishing);
        assert!(e.well_defined && e.kills_coboundaries && e.unimodular_onto && e.equivariant);
    }

    #[test]
    fn splittings() {
        let f = fixture();
        let v = VHomLattice::build(&f.s, &f.h, &f.ic.group, &f.ic.split).unwrap();
        let k = K6Certificate::build(&f.s, &f.ic.group).unwrap();
        let e = EdgeLagrangian::build(&f.s, &f.h, &f.ic.group, &k).unwrap();
        let trc_basis = IntMat::identity(20).submatrix(0..20, 0..10);
        for (name, b) in [("L_trc", &trc_basis), ("L_edge", &e.basis)] {
            let c = SplitCertificate::build(name, b, &f.h, &f.ic.group, &v).unwrap();
            assert!(c.restriction_onto && c.restriction_equivariant, "{name}");
            assert_eq!(c.hom_rank, 1, "{name}");
            assert!(c.onto, "{name}: {:?}", c.images);
        }
    }

    #[test]
    fn mod3_witnesses() {
        let f = fixture();
        let all = Mod3Witness::all(&f.s, &f.ic.split).unwrap();
        assert_eq!(all.len(), 13);
        for w in &all {
            assert!(w.holds);
            if let Some(z) = w.removed_face {
                assert_eq!(w.n[z], 0);
                assert_eq!(w.n[f.s.model().face_antipode[z]], 0);
            }
        }
    }

    #[test]
    fn delta_tilde_boundary_is_three_times_tetrads() {
        let f = fixture();
        let m = f.s.model();
        let c = delta_tilde(&f.s, &f.ic.split);
        let mut bd = vec![0i64; m.vertices.len()];
        for (e, &(a, b)) in m.edges.iter().enumerate() {
            bd[b] += c[e];
            bd[a] -= c[e];
        }
        let expected: Vec<i64> = (0..m.vertices.len()).map(|v| -3 * f.ic.split.membership(v)).collect();
        assert_eq!(bd, expected);
    }
}
