use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::sl2::SL2Mat;
use crate::arith::{IntMat, IntVec};
use crate::icosa::GroupData;
use crate::replat::{build_lattice, equivariant_hom, LatticeKind};
use crate::surface::{Homology, VHomLattice};
use crate::{Error, Result};

fn cert(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

/// Basis of `Hom(Vo, H_1)` in which 2 × 2 matrices are written.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `(U_edge, U_trc)`.
    Standard,
    /// `(U_trc, -U_edge)`.
    Repbas,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::Standard, Convention::Repbas];

    pub fn basis_description(self) -> &'static str {
        match self {
            Convention::Standard => "(U_edge, U_trc)",
            Convention::Repbas => "(U_trc, -U_edge)",
        }
    }

    /// Matrix of the new basis in terms of `(U_edge, U_trc)` (columns).
    pub fn change_of_basis(self) -> SL2Mat {
        match self {
            Convention::Standard => SL2Mat::identity(),
            Convention::Repbas => SL2Mat::s(),
        }
    }

    /// Rewrites a matrix given in the standard basis.
    pub fn convert(self, m: &SL2Mat) -> SL2Mat {
        let p = self.change_of_basis();
        &(&p.inverse() * m) * &p
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Standard => "standard",
            Convention::Repbas => "repbas",
        })
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Convention> {
        match s {
            "standard" => Ok(Convention::Standard),
            "repbas" => Ok(Convention::Repbas),
            _ => Err(Error::InvalidArgument(format!("unknown convention {s}"))),
        }
    }
}

/// The vanishing classes with duplicates removed, and one representative per `±` pair
/// (the one whose first nonzero coordinate is positive).
pub fn vanishing_set(classes: &[IntVec]) -> Result<(Vec<IntVec>, Vec<IntVec>)> {
    let mut set: Vec<IntVec> = classes.to_vec();
    set.sort();
    set.dedup();
    for l in &set {
        let neg: IntVec = l.iter().map(|x| -x).collect();
        if set.binary_search(&neg).is_err() {
            return Err(cert("vanishing set is not closed under negation"));
        }
    }
    let reps = set.iter().filter(|l| l.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive())).cloned().collect();
    Ok((set, reps))
}

/// `ρ(h) = h + Σ_{l ∈ reps} ⟨h, l⟩ l`, as a matrix on `H_1` coordinates.
pub fn picard_lefschetz(reps: &[IntVec], form: &IntMat) -> Result<IntMat> {
    let n = form.rows();
    for a in reps {
        for b in reps {
            if !pair(form, a, b).is_zero() {
                return Err(cert("vanishing cycles are not pairwise orthogonal"));
            }
        }
    }
    let mut rho = IntMat::identity(n);
    for l in reps {
        // ⟨h, l⟩ = hᵀ Ω l, so the rank-one term is l (Ω l)ᵀ
        let ol = form.mul_vec(l);
        for i in 0..n {
            if l[i].is_zero() {
                continue;
            }
            for j in 0..n {
                *rho.get_mut(i, j) += &l[i] * &ol[j];
            }
        }
    }
    Ok(rho)
}

fn pair(form: &IntMat, a: &[BigInt], b: &[BigInt]) -> BigInt {
    let fb = form.mul_vec(b);
    a.iter().zip(&fb).map(|(x, y)| x * y).sum()
}

/// Properties every nodal monodromy must have.
#[derive(Clone, Debug, Serialize)]
pub struct PicardLefschetzCheck {
    pub symplectic: bool,
    pub equivariant: bool,
    pub unipotent: bool,
    pub fixes_vanishing: bool,
    pub image_in_span: bool,
}

impl PicardLefschetzCheck {
    pub fn run(rho: &IntMat, set: &[IntVec], h: &Homology) -> PicardLefschetzCheck {
        let n = rho.rows();
        let id = IntMat::identity(n);
        let nil = rho - &id;
        let span = IntMat::from_columns(n, set);
        PicardLefschetzCheck {
            symplectic: &(&rho.transpose() * &h.form) * rho == h.form,
            equivariant: h.action.iter().all(|a| a * rho == rho * a),
            unipotent: (&nil * &nil).is_zero(),
            fixes_vanishing: set.iter().all(|l| rho.mul_vec(l) == *l),
            image_in_span: crate::arith::express_in_basis(&span, &nil).is_some(),
        }
    }

    pub fn all(&self) -> bool {
        self.symplectic && self.equivariant && self.unipotent && self.fixes_vanishing && self.image_in_span
    }
}

/// Matrix of `u ↦ ρ ∘ u` on `Hom(Vo, H_1)` in the basis `(U_edge, U_trc)`.
pub fn induced_sl2(rho: &IntMat, v: &VHomLattice) -> Result<SL2Mat> {
    let basis = IntMat::from_columns(v.big_u_edge.rows() * 4, &[v.big_u_edge.vectorize(), v.big_u_trc.vectorize()]);
    let snf = crate::arith::smith_normal_form(&basis);
    let col = |u: &IntMat| snf.solve(&(rho * u).vectorize()).ok_or_else(|| cert("image is not an integral combination of U_edge, U_trc"));
    let e = col(&v.big_u_edge)?;
    let t = col(&v.big_u_trc)?;
    SL2Mat::new(e[0].clone(), t[0].clone(), e[1].clone(), t[1].clone())
}

/// The local monodromies on `Hom(Vo, H_1)`.
#[derive(Clone, Debug, Serialize)]
pub struct MonodromyTable {
    pub convention: Convention,
    pub rho_edge: SL2Mat,
    pub rho_trc: SL2Mat,
    pub rho_zero: SL2Mat,
    pub rho_minus_one: SL2Mat,
    /// `ρ_edge ρ_trc`.
    pub rho_edge_trc: SL2Mat,
}

impl MonodromyTable {
    pub fn from_generators(rho_edge: SL2Mat, rho_trc: SL2Mat) -> MonodromyTable {
        let rho_zero = (&rho_trc * &rho_edge).inverse();
        let rho_edge_trc = &rho_edge * &rho_trc;
        MonodromyTable { convention: Convention::Standard, rho_edge, rho_trc, rho_zero, rho_minus_one: SL2Mat::identity(), rho_edge_trc }
    }

    pub fn in_convention(&self, c: Convention) -> MonodromyTable {
        if c == self.convention {
            return self.clone();
        }
        let to_standard = |m: &SL2Mat| {
            let p = self.convention.change_of_basis();
            &(&p * m) * &p.inverse()
        };
        let conv = |m: &SL2Mat| c.convert(&to_standard(m));
        MonodromyTable {
            convention: c,
            rho_edge: conv(&self.rho_edge),
            rho_trc: conv(&self.rho_trc),
            rho_zero: conv(&self.rho_zero),
            rho_minus_one: conv(&self.rho_minus_one),
            rho_edge_trc: conv(&self.rho_edge_trc),
        }
    }

    /// `ρ_0 = (ρ_trc ρ_edge)^{-1}`, `ρ_0^3 = 1 ≠ ρ_0`, `ρ_0^2 + ρ_0 + 1 = 0`, `ρ_{-1} = 1`.
    pub fn identities_hold(&self) -> bool {
        let z = &self.rho_zero;
        let z2 = z * z;
        let order3 = z2.a.clone() + &z.a + 1 == BigInt::zero()
            && z2.b.clone() + &z.b == BigInt::zero()
            && z2.c.clone() + &z.c == BigInt::zero()
            && z2.d.clone() + &z.d + 1 == BigInt::zero();
        *z == (&self.rho_trc * &self.rho_edge).inverse()
            && z.pow(3).is_identity()
            && !z.is_identity()
            && order3
            && self.rho_minus_one.is_identity()
            && self.rho_edge_trc.pow(3).is_identity()
            && !self.rho_edge_trc.is_identity()
    }
}

/// Picard–Lefschetz operators for both degenerations and their induced matrices.
#[derive(Clone, Debug, Serialize)]
pub struct LocalMonodromy {
    pub rho_trc_h1: IntMat,
    pub rho_edge_h1: IntMat,
    pub check_trc: PicardLefschetzCheck,
    pub check_edge: PicardLefschetzCheck,
    pub vanishing_trc: usize,
    pub vanishing_edge: usize,
    /// `Hom(Vo, E_o) = 0`, which makes the monodromy around `-1` trivial.
    pub hom_vo_eo_rank: usize,
    pub table: MonodromyTable,
}

impl LocalMonodromy {
    pub fn build(h: &Homology, v: &VHomLattice, group: &GroupData) -> Result<LocalMonodromy> {
        let trc: Vec<IntVec> = h.cycles.delta_trc.iter().map(|c| h.project(c)).collect::<Result<_>>()?;
        let edge: Vec<IntVec> = h.cycles.delta_edge.iter().map(|c| h.project(c)).collect::<Result<_>>()?;
        let (trc_set, trc_reps) = vanishing_set(&trc)?;
        let (edge_set, edge_reps) = vanishing_set(&edge)?;
        let rho_trc_h1 = picard_lefschetz(&trc_reps, &h.form)?;
        let rho_edge_h1 = picard_lefschetz(&edge_reps, &h.form)?;
        let check_trc = PicardLefschetzCheck::run(&rho_trc_h1, &trc_set, h);
        let check_edge = PicardLefschetzCheck::run(&rho_edge_h1, &edge_set, h);
        let vo = build_lattice(LatticeKind::Vo, group);
        let eo = build_lattice(LatticeKind::Eo, group);
        let hom_vo_eo_rank = equivariant_hom(&vo, &eo, group)?.rank();
        let table = MonodromyTable::from_generators(induced_sl2(&rho_edge_h1, v)?, induced_sl2(&rho_trc_h1, v)?);
        Ok(LocalMonodromy {
            rho_trc_h1,
            rho_edge_h1,
            check_trc,
            check_edge,
            vanishing_trc: trc_set.len(),
            vanishing_edge: edge_set.len(),
            hom_vo_eo_rank,
            table,
        })
    }
}
