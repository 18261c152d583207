use num_bigint::BigInt;
use serde::Serialize;

use super::complex::{Chain, SurfaceComplex};
use super::homology::{chain_from_big, Homology};
use crate::arith::{
    cokernel_invariants, image_basis, integer_kernel, is_unimodular, left_inverse, serialize_ints, serialize_rational, smith_normal_form,
    IntMat, IntVec, Rational,
};
use crate::icosa::{GroupData, TetradSplit};
use crate::replat::{build_lattice, equivariant_hom, hom_coordinates, vo_form, HomLattice, LatticeKind, ZGLattice};
use crate::{Error, Result};

fn cert(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

fn to_big(c: &[i64]) -> IntVec {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

/// The chain-level maps `u_trc, u_edge : Vo -> Z_1`, as 60 × 4 matrices on the basis `ē_0..ē_3`.
#[derive(Clone, Debug, Serialize)]
pub struct UMaps {
    pub u_trc: IntMat,
    pub u_edge: IntMat,
}

/// `Σ_{x∈E} δ_x`.
pub fn u_trc_generator(s: &SurfaceComplex, h: &Homology, split: &TetradSplit) -> Chain {
    sum_chains(s, split.e.iter().map(|&x| &h.cycles.delta_trc[x]))
}

/// `Σ_{x∈E} Σ_{tail(y)=x} δ_y`.
pub fn u_edge_generator(s: &SurfaceComplex, h: &Homology, split: &TetradSplit) -> Chain {
    let m = s.model();
    sum_chains(s, (0..m.darts.len()).filter(|&y| split.e.contains(&m.darts[y].tail)).map(|y| &h.cycles.delta_edge[y]))
}

fn sum_chains<'a>(s: &SurfaceComplex, it: impl Iterator<Item = &'a Chain>) -> Chain {
    let mut out = vec![0; s.cells1.len()];
    for c in it {
        for (o, x) in out.iter_mut().zip(c) {
            *o += x;
        }
    }
    out
}

impl UMaps {
    /// Extends the two generators over `Vo`, checking stabiliser invariance, the orbit-sum
    /// relation and equivariance.
    pub fn build(s: &SurfaceComplex, h: &Homology, group: &GroupData, split: &TetradSplit) -> Result<UMaps> {
        if split.cube != 0 {
            return Err(Error::InvalidArgument("tetrad split must live in cube 0".into()));
        }
        let vo = build_lattice(LatticeKind::Vo, group);
        let extend = |gen: Chain, name: &str| -> Result<IntMat> {
            for g in group.stabilizer(|g| group.elements[g].cubes.clone(), 0) {
                if s.action1[g].apply(&gen) != gen {
                    return Err(cert(format!("{name}(ē) is not fixed by the stabiliser of its cube")));
                }
            }
            let orbit: Vec<Chain> = (0..5).map(|k| s.action1[group.cube_transporter(k)].apply(&gen)).collect();
            if sum_chains(s, orbit.iter()).iter().any(|&x| x != 0) {
                return Err(cert(format!("orbit sum of {name}(ē) is not zero")));
            }
            let u = IntMat::from_columns(s.cells1.len(), &orbit[..4].iter().map(|c| to_big(c)).collect::<Vec<_>>());
            let ok = (0..group.order()).all(|g| &s.action1[g].matrix() * &u == &u * &vo.action[g]);
            if !ok {
                return Err(cert(format!("{name} is not equivariant")));
            }
            Ok(u)
        };
        Ok(UMaps { u_trc: extend(u_trc_generator(s, h, split), "u_trc")?, u_edge: extend(u_edge_generator(s, h, split), "u_edge")? })
    }
}

/// The sublattice spanned by the columns of a saturated, invariant `basis`, with the induced action.
pub fn sublattice(name: &str, basis: &IntMat, ambient: &[IntMat]) -> Result<ZGLattice> {
    if basis.cols() == 0 {
        return Ok(ZGLattice { name: name.into(), rank: 0, action: vec![IntMat::zeros(0, 0); ambient.len()] });
    }
    let l = left_inverse(basis).ok_or_else(|| cert(format!("{name} basis is not saturated")))?;
    let mut action = Vec::with_capacity(ambient.len());
    for a in ambient {
        let img = a * basis;
        let coords = &l * &img;
        if &(basis * &coords) != &img {
            return Err(cert(format!("{name} is not invariant")));
        }
        action.push(coords);
    }
    Ok(ZGLattice::new(name, action))
}

/// `u_edge(ē_0) - 3 w = ∂ f`, where `w` represents `U_edge(ē_0)`.
#[derive(Clone, Debug, Serialize)]
pub struct DivisibilityWitness {
    pub w: Chain,
    pub f: Chain,
}

/// Everything about `Hom_G(Vo, -)` on cycles, boundaries and homology.
#[derive(Clone, Debug, Serialize)]
pub struct VHomLattice {
    pub u: UMaps,
    pub hom_z1: HomLattice,
    pub hom_b1: HomLattice,
    pub hom_h1: HomLattice,
    /// Coordinates of `(u_trc, u_edge)` in the basis of `Hom(Vo, Z_1)` (columns).
    pub z1_change_of_basis: IntMat,
    /// Coordinates of the classes of `(u_trc, u_edge)` in the basis of `Hom(Vo, H_1)` (columns).
    pub class_map: IntMat,
    #[serde(serialize_with = "serialize_ints")]
    pub class_cokernel: Vec<BigInt>,
    /// `U_edge = class(u_edge) / 3` and `U_trc = class(u_trc)`, as 20 × 4 maps into `H_1`.
    pub big_u_edge: IntMat,
    pub big_u_trc: IntMat,
    /// Coordinates of `(U_edge, U_trc)` in the basis of `Hom(Vo, H_1)` (columns).
    pub h1_change_of_basis: IntMat,
    pub witness: DivisibilityWitness,
    /// `c` with `U_edgeᵀ Ω U_trc = c · S`, where `S` is the invariant form on `Vo`.
    #[serde(serialize_with = "serialize_rational")]
    pub scale: Rational,
}

impl VHomLattice {
    pub fn build(s: &SurfaceComplex, h: &Homology, group: &GroupData, split: &TetradSplit) -> Result<VHomLattice> {
        let u = UMaps::build(s, h, group, split)?;
        let vo = build_lattice(LatticeKind::Vo, group);
        let ambient: Vec<IntMat> = s.action1.iter().map(|a| a.matrix()).collect();

        let z1_basis = integer_kernel(&s.boundary1);
        let z1 = sublattice("Z1", &z1_basis, &ambient)?;
        let b1 = sublattice("B1", &image_basis(&s.boundary2), &ambient)?;
        let hom_z1 = equivariant_hom(&vo, &z1, group)?;
        let hom_b1 = equivariant_hom(&vo, &b1, group)?;

        let l = left_inverse(&z1_basis).ok_or_else(|| cert("Z_1 basis is not saturated"))?;
        let z1_coords = |m: &IntMat| &l * m;
        let ct = hom_coordinates(&hom_z1, &z1_coords(&u.u_trc)).ok_or_else(|| cert("u_trc not in Hom(Vo, Z_1)"))?;
        let ce = hom_coordinates(&hom_z1, &z1_coords(&u.u_edge)).ok_or_else(|| cert("u_edge not in Hom(Vo, Z_1)"))?;
        let z1_change_of_basis = IntMat::from_columns(hom_z1.rank(), &[ct, ce]);

        let h1 = ZGLattice::new("H1", h.action.clone());
        let hom_h1 = equivariant_hom(&vo, &h1, group)?;
        let class_of = |m: &IntMat| -> Result<IntMat> {
            let cols: Vec<IntVec> = m.columns().iter().map(|c| h.project(&chain_from_big(c))).collect::<Result<_>>()?;
            Ok(IntMat::from_columns(h.rank(), &cols))
        };
        let class_trc = class_of(&u.u_trc)?;
        let class_edge = class_of(&u.u_edge)?;
        let pt = hom_coordinates(&hom_h1, &class_trc).ok_or_else(|| cert("class(u_trc) not equivariant"))?;
        let pe = hom_coordinates(&hom_h1, &class_edge).ok_or_else(|| cert("class(u_edge) not equivariant"))?;
        let class_map = IntMat::from_columns(hom_h1.rank(), &[pt, pe]);
        let class_cokernel = cokernel_invariants(&class_map);

        let big_u_edge = class_edge.div_exact(&BigInt::from(3)).ok_or_else(|| cert("class(u_edge) is not divisible by 3"))?;
        let big_u_trc = class_trc;
        let ue = hom_coordinates(&hom_h1, &big_u_edge).ok_or_else(|| cert("U_edge not equivariant"))?;
        let ut = hom_coordinates(&hom_h1, &big_u_trc).ok_or_else(|| cert("U_trc not equivariant"))?;
        let h1_change_of_basis = IntMat::from_columns(hom_h1.rank(), &[ue, ut]);

        let w = h.lift(&big_u_edge.column(0));
        let rhs: IntVec = u.u_edge.column(0).iter().zip(&w).map(|(a, &b)| a - BigInt::from(3 * b)).collect();
        let f = smith_normal_form(&s.boundary2).solve(&rhs).ok_or_else(|| cert("u_edge(ē) - 3w is not a boundary"))?;
        let witness = DivisibilityWitness { w, f: chain_from_big(&f) };

        let scale = pairing_scale(h, &big_u_edge, &big_u_trc)?;
        Ok(VHomLattice {
            u,
            hom_z1,
            hom_b1,
            hom_h1,
            z1_change_of_basis,
            class_map,
            class_cokernel,
            big_u_edge,
            big_u_trc,
            h1_change_of_basis,
            witness,
            scale,
        })
    }

    /// `(U_edge, U_trc)` is a basis of `Hom(Vo, H_1)`.
    pub fn is_basis(&self) -> bool {
        self.hom_h1.rank() == 2 && is_unimodular(&self.h1_change_of_basis)
    }

    /// `(u_trc, u_edge)` is a basis of `Hom(Vo, Z_1)`.
    pub fn z1_is_spanned(&self) -> bool {
        self.hom_z1.rank() == 2 && is_unimodular(&self.z1_change_of_basis)
    }

    /// Pairing on `Hom(Vo, H_1)` after dividing by the scale, in the basis `(U_edge, U_trc)`.
    pub fn normalized_pairing(&self, h: &Homology) -> Result<[[Rational; 2]; 2]> {
        let maps = [&self.big_u_edge, &self.big_u_trc];
        let mut out: [[Rational; 2]; 2] = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = pairing_scale(h, maps[i], maps[j])? / &self.scale;
            }
        }
        Ok(out)
    }
}

/// The constant `c` with `Aᵀ Ω B = c · S`, failing if the two are not proportional.
pub fn pairing_scale(h: &Homology, a: &IntMat, b: &IntMat) -> Result<Rational> {
    let p = &(&a.transpose() * &h.form) * b;
    let s = vo_form();
    let c = Rational::new(p.get(0, 0).clone(), s.get(0, 0).clone());
    for i in 0..4 {
        for j in 0..4 {
            if Rational::from_integer(p.get(i, j).clone()) != &c * Rational::from_integer(s.get(i, j).clone()) {
                return Err(cert("pairing on Hom(Vo, H_1) is not proportional to the form on Vo"));
            }
        }
    }
    Ok(c)
}

/// Values `⟨[u_edge(ē)], δ_x⟩` for every vertex and `⟨[u_trc(ē)], δ_y⟩` for every dart.
#[derive(Clone, Debug, Serialize)]
pub struct SpecialIntersections {
    pub edge_vs_trc: Vec<i64>,
    pub trc_vs_edge: Vec<i64>,
}

impl SpecialIntersections {
    pub fn compute(s: &SurfaceComplex, h: &Homology, u: &UMaps) -> SpecialIntersections {
        let ue = chain_from_big(&u.u_edge.column(0));
        let ut = chain_from_big(&u.u_trc.column(0));
        SpecialIntersections {
            edge_vs_trc: h.cycles.delta_trc.iter().map(|d| s.pairing(&ue, d)).collect(),
            trc_vs_edge: h.cycles.delta_edge.iter().map(|d| s.pairing(&ut, d)).collect(),
        }
    }

    /// `3` on `E`, `-3` on `ιE`, `0` elsewhere.
    pub fn expected_edge_vs_trc(split: &TetradSplit, n: usize) -> Vec<i64> {
        (0..n).map(|x| 3 * split.membership(x)).collect()
    }

    /// `-1` when `y` leaves `E` or enters `ιE`, `+1` when it leaves `ιE` or enters `E`.
    pub fn expected_trc_vs_edge(s: &SurfaceComplex, split: &TetradSplit) -> Vec<i64> {
        s.model().darts.iter().map(|d| split.membership(d.head) - split.membership(d.tail)).collect()
    }

    /// The reading that only looks at the initial point of `y`.
    pub fn initial_point_reading(s: &SurfaceComplex, split: &TetradSplit) -> Vec<i64> {
        s.model().darts.iter().map(|d| -split.membership(d.tail)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosa::Icosa;
    use num_traits::Zero;

    fn setup(swap: bool) -> (Icosa, SurfaceComplex, Homology, VHomLattice) {
        let ic = Icosa::with_split(swap).unwrap();
        let s = SurfaceComplex::build(&ic.model, &ic.group).unwrap();
        let h = Homology::build(&s).unwrap();
        let v = VHomLattice::build(&s, &h, &ic.group, &ic.split).unwrap();
        (ic, s, h, v)
    }

    #[test]
    fn hom_ranks_and_cokernel() {
        let (_, _, _, v) = setup(false);
        assert_eq!(v.hom_z1.rank(), 2);
        assert_eq!(v.hom_b1.rank(), 0);
        assert!(v.z1_is_spanned());
        assert_eq!(v.class_cokernel, vec![BigInt::from(3)]);
        assert!(v.is_basis());
    }

    #[test]
    fn witness_checks_out() {
        let (_, s, _, v) = setup(false);
        let lhs = s.boundary2_of(&v.witness.f);
        let u = chain_from_big(&v.u.u_edge.column(0));
        let rhs: Chain = u.iter().zip(&v.witness.w).map(|(a, b)| a - 3 * b).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scale_is_a_unit() {
        let (_, _, h, v) = setup(false);
        println!("scale = {}", v.scale);
        let p = v.normalized_pairing(&h).unwrap();
        assert_eq!(p[0][1], Rational::from_integer(1.into()));
        assert_eq!(p[1][0], Rational::from_integer((-1).into()));
        assert!(p[0][0].is_zero() && p[1][1].is_zero());
    }

    #[test]
    fn special_intersections() {
        for swap in [false, true] {
            let (ic, s, h, v) = setup(swap);
            let t = SpecialIntersections::compute(&s, &h, &v.u);
            println!("{:?}\n{:?}", t.edge_vs_trc, t.trc_vs_edge);
            assert_eq!(t.edge_vs_trc, SpecialIntersections::expected_edge_vs_trc(&ic.split, 20));
            assert_eq!(t.trc_vs_edge, SpecialIntersections::expected_trc_vs_edge(&s, &ic.split));
        }
    }
}
