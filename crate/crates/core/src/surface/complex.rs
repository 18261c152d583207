use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::IntMat;
use crate::icosa::{DodecModel, GroupData};
use crate::{Error, Result};

/// Integer 1-chain (or 0-/2-chain) with machine-word coefficients.
pub type Chain = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Cell1 {
    /// Edge `{a, b}` of the dodecahedron, `a < b`, oriented `a -> b`.
    Edge { a: usize, b: usize },
    /// Side of the removed triangle at `x` (a vertex of `R`) from the corner towards `a`
    /// to the corner towards the next neighbour counterclockwise.
    Trc { x: usize, a: usize },
}

/// One end of a 1-cell at a 0-cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HalfEdge {
    pub cell: usize,
    pub start: bool,
}

/// Permutation with signs: basis vector `j` goes to `sign[j] * e_{image[j]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedPerm {
    pub image: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPerm {
    pub fn apply(&self, v: &[i64]) -> Chain {
        let mut out = vec![0; v.len()];
        for (j, &c) in v.iter().enumerate() {
            out[self.image[j]] += self.sign[j] as i64 * c;
        }
        out
    }

    pub fn matrix(&self) -> IntMat {
        let n = self.image.len();
        let mut m = IntMat::zeros(n, n);
        for j in 0..n {
            m.set_i64(self.image[j], j, self.sign[j] as i64);
        }
        m
    }
}

/// The genus-10 surface: the dodecahedron with a small triangle removed at every vertex and
/// opposite boundary points identified.
///
/// 0-cells are antipodal pairs of darts `{y, ιy}`, indexed by the darts with tail in `R`.
/// 1-cells `0..30` are edge cells (edge order of the model), `30..60` are truncation cells
/// `(x, a)` for `x` in `R` in rotation order. 2-cells are the faces.
#[derive(Clone, Debug, Serialize)]
pub struct SurfaceComplex {
    /// Vertices `x` with `x < ιx`.
    pub r: Vec<usize>,
    #[serde(skip)]
    r_index: Vec<Option<usize>>,
    /// Representative dart (tail in `R`) of each 0-cell.
    pub cells0: Vec<usize>,
    #[serde(skip)]
    cell0_of_dart: Vec<usize>,
    pub cells1: Vec<Cell1>,
    pub cells2: Vec<Vec<usize>>,
    pub boundary1: IntMat,
    pub boundary2: IntMat,
    /// Counterclockwise cyclic order of the 1-cell ends at each 0-cell.
    pub rotation: Vec<[HalfEdge; 4]>,
    #[serde(skip)]
    pub action0: Vec<SignedPerm>,
    #[serde(skip)]
    pub action1: Vec<SignedPerm>,
    #[serde(skip)]
    pub action2: Vec<SignedPerm>,
    #[serde(skip)]
    model: DodecModel,
}

pub const N_EDGE: usize = 30;

fn err(msg: impl Into<String>) -> Error {
    Error::Construction(msg.into())
}

impl SurfaceComplex {
    pub fn build(model: &DodecModel, group: &GroupData) -> Result<SurfaceComplex> {
        let nv = model.vertices.len();
        let r: Vec<usize> = (0..nv).filter(|&x| x < model.antipode[x]).collect();
        let mut r_index = vec![None; nv];
        for (i, &x) in r.iter().enumerate() {
            r_index[x] = Some(i);
        }
        let cells0: Vec<usize> = (0..model.darts.len()).filter(|&d| r_index[model.darts[d].tail].is_some()).collect();
        let mut cell0_of_dart = vec![usize::MAX; model.darts.len()];
        for (i, &d) in cells0.iter().enumerate() {
            cell0_of_dart[d] = i;
            cell0_of_dart[model.dart_antipode(d)] = i;
        }
        let mut cells1: Vec<Cell1> = model.edges.iter().map(|&(a, b)| Cell1::Edge { a, b }).collect();
        for &x in &r {
            for &a in &model.rotation[x] {
                cells1.push(Cell1::Trc { x, a });
            }
        }
        let mut s = SurfaceComplex {
            r,
            r_index,
            cells0,
            cell0_of_dart,
            cells1,
            cells2: model.faces.clone(),
            boundary1: IntMat::zeros(0, 0),
            boundary2: IntMat::zeros(0, 0),
            rotation: Vec::new(),
            action0: Vec::new(),
            action1: Vec::new(),
            action2: Vec::new(),
            model: model.clone(),
        };

        let (n0, n1, n2) = s.counts();
        let mut b1 = IntMat::zeros(n0, n1);
        for (c, cell) in s.cells1.iter().enumerate() {
            let (from, to) = match *cell {
                Cell1::Edge { a, b } => (s.corner(a, b), s.corner(b, a)),
                Cell1::Trc { x, a } => (s.corner(x, a), s.corner(x, model.next_around(x, a))),
            };
            *b1.get_mut(to, c) += BigInt::from(1);
            *b1.get_mut(from, c) -= BigInt::from(1);
        }
        let mut b2 = IntMat::zeros(n1, n2);
        for f in 0..n2 {
            let mut col = vec![0i64; n1];
            for (cell, sign) in s.face_boundary(f) {
                col[cell] += sign;
            }
            for (i, v) in col.into_iter().enumerate() {
                b2.set_i64(i, f, v);
            }
        }
        s.boundary1 = b1;
        s.boundary2 = b2;

        s.rotation = s
            .cells0
            .iter()
            .map(|&d| {
                let dart = model.darts[d];
                let (x, a) = (dart.tail, dart.head);
                let (ix, ia) = (model.antipode[x], model.antipode[a]);
                let edge_half = |u: usize, v: usize| HalfEdge { cell: model.edge_index(u, v), start: u < v };
                [
                    HalfEdge { cell: s.trc(x, model.prev_around(x, a)).0, start: false },
                    edge_half(x, a),
                    HalfEdge { cell: s.trc(x, a).0, start: true },
                    edge_half(ix, ia),
                ]
            })
            .collect();

        for e in &group.elements {
            let a0 = SignedPerm { image: s.cells0.iter().map(|&d| s.cell0_of_dart[e.darts[d]]).collect(), sign: vec![1; n0] };
            let mut a1 = SignedPerm { image: vec![0; n1], sign: vec![0; n1] };
            for (c, cell) in s.cells1.iter().enumerate() {
                let (img, sign) = match *cell {
                    Cell1::Edge { a, b } => s.edge(e.vertices[a], e.vertices[b]),
                    Cell1::Trc { x, a } => s.trc(e.vertices[x], e.vertices[a]),
                };
                a1.image[c] = img;
                a1.sign[c] = sign as i8;
            }
            let a2 = SignedPerm { image: e.faces.clone(), sign: vec![1; n2] };
            s.action0.push(a0);
            s.action1.push(a1);
            s.action2.push(a2);
        }
        s.self_check()?;
        Ok(s)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.cells0.len(), self.cells1.len(), self.cells2.len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (a, b, c) = self.counts();
        a as i64 - b as i64 + c as i64
    }

    pub fn model(&self) -> &DodecModel {
        &self.model
    }

    pub fn r_index(&self, x: usize) -> Option<usize> {
        self.r_index[x]
    }

    /// The 0-cell at the corner of the triangle at `x` on the edge towards `a`.
    pub fn corner(&self, x: usize, a: usize) -> usize {
        self.cell0_of_dart[self.model.dart(x, a)]
    }

    /// Edge cell carrying `u -> v`, with the sign of that orientation.
    pub fn edge(&self, u: usize, v: usize) -> (usize, i64) {
        (self.model.edge_index(u, v), if u < v { 1 } else { -1 })
    }

    /// Truncation cell carrying the triangle side at `x` from the corner towards `a` to the next corner.
    pub fn trc(&self, x: usize, a: usize) -> (usize, i64) {
        let m = &self.model;
        match self.r_index[x] {
            Some(i) => {
                let k = m.rotation[x].iter().position(|&w| w == a).expect("neighbour");
                (N_EDGE + 3 * i + k, 1)
            }
            None => {
                let (c, s) = self.trc(m.antipode[x], m.antipode[m.next_around(x, a)]);
                (c, -s)
            }
        }
    }

    /// Signed 1-cells along the counterclockwise boundary of face `f`.
    pub fn face_boundary(&self, f: usize) -> Vec<(usize, i64)> {
        let face = &self.cells2[f];
        let mut out = Vec::new();
        for i in 0..5 {
            let (u, v, w) = (face[i], face[(i + 1) % 5], face[(i + 2) % 5]);
            out.push(self.edge(u, v));
            let (c, s) = self.trc(v, w);
            out.push((c, -s));
        }
        out
    }

    pub fn chain_of(&self, terms: &[(usize, i64)]) -> Chain {
        let mut c = vec![0; self.cells1.len()];
        for &(cell, s) in terms {
            c[cell] += s;
        }
        c
    }

    /// Truncation walk around `x` from the corner towards `from` counterclockwise to the corner towards `to`.
    pub fn trc_walk(&self, x: usize, from: usize, to: usize) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        let mut c = from;
        while c != to {
            out.push(self.trc(x, c));
            c = self.model.next_around(x, c);
        }
        out
    }

    pub fn boundary1_of(&self, c: &[i64]) -> Chain {
        mul_small(&self.boundary1, c)
    }

    pub fn boundary2_of(&self, c: &[i64]) -> Chain {
        mul_small(&self.boundary2, c)
    }

    pub fn is_cycle(&self, c: &[i64]) -> bool {
        self.boundary1_of(c).iter().all(|&x| x == 0)
    }

    /// Algebraic intersection number of two 1-cycles.
    ///
    /// `b` is pushed off to the left of each of its cells; near every 0-cell its strands are
    /// routed along a small circle counterclockwise from a base gap, and crossings with the
    /// outgoing germs of `a` are counted (tangent of `a`, then tangent of `b`).
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut total = 0;
        for halves in &self.rotation {
            let k = halves.len();
            let out_a = |h: &HalfEdge| if h.start { a[h.cell] } else { -a[h.cell] };
            let mut partial = 0;
            for i in 0..k {
                partial += out_a(&halves[i]);
                let h = &halves[i];
                let next = &halves[(i + 1) % k];
                let mut gap = 0;
                if h.start {
                    gap += b[h.cell];
                }
                if !next.start {
                    gap -= b[next.cell];
                }
                total += gap * partial;
            }
        }
        total
    }

    fn self_check(&self) -> Result<()> {
        if self.counts() != (30, 60, 12) {
            return Err(err("wrong cell counts"));
        }
        if !(&self.boundary1 * &self.boundary2).is_zero() {
            return Err(err("boundary of boundary is not zero"));
        }
        // the rotation lists every end exactly once, at the 0-cell the boundary map assigns
        let mut seen = vec![[false; 2]; self.cells1.len()];
        for (p, halves) in self.rotation.iter().enumerate() {
            for h in halves {
                let expected = if h.start { -1 } else { 1 };
                if self.boundary1.get(p, h.cell) != &BigInt::from(expected) {
                    return Err(err("rotation disagrees with the boundary map"));
                }
                if std::mem::replace(&mut seen[h.cell][h.start as usize], true) {
                    return Err(err("1-cell end listed twice"));
                }
            }
        }
        for g in 0..self.action1.len() {
            if !self.commutes(g) {
                return Err(err("group action does not commute with the boundary maps"));
            }
        }
        Ok(())
    }

    /// `∂ ∘ g = g ∘ ∂` in both degrees for element `g`.
    pub fn commutes(&self, g: usize) -> bool {
        let (_, n1, n2) = self.counts();
        let unit = |n: usize, i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        };
        (0..n1).all(|c| {
            let e = unit(n1, c);
            self.boundary1_of(&self.action1[g].apply(&e)) == self.action0[g].apply(&self.boundary1_of(&e))
        }) && (0..n2).all(|f| {
            let e = unit(n2, f);
            self.boundary2_of(&self.action2[g].apply(&e)) == self.action1[g].apply(&self.boundary2_of(&e))
        })
    }

    /// Replace the boundary maps (used to exercise failure reporting).
    pub fn with_boundaries(mut self, b1: IntMat, b2: IntMat) -> SurfaceComplex {
        self.boundary1 = b1;
        self.boundary2 = b2;
        self
    }
}

/// Orbit and stabiliser data of the group action on the cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitStructure {
    /// Sizes of the orbits on 0-cells and the stabiliser order of each orbit.
    pub orbits0: Vec<(usize, usize)>,
    /// Orbit sizes on oriented 1-cells (each 1-cell with both orientations).
    pub oriented_orbits1: Vec<usize>,
    pub orbits2: Vec<(usize, usize)>,
    /// The stabiliser of face 0 is generated by the order-5 rotation about it, which
    /// preserves its orientation, and face 0 generates `C_2`: `C_2 ≅ ZG/(h-1)ZG`.
    pub faces_cyclic_module: bool,
}

fn orbit_sizes(n: usize, image: impl Fn(usize, usize) -> usize, order: usize) -> Vec<(usize, usize)> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit: Vec<usize> = (0..order).map(|g| image(g, start)).collect();
        let stab = orbit.iter().filter(|&&x| x == start).count();
        orbit.sort();
        orbit.dedup();
        for &x in &orbit {
            seen[x] = true;
        }
        out.push((orbit.len(), stab));
    }
    out
}

impl SurfaceComplex {
    pub fn orbit_structure(&self, group: &GroupData) -> OrbitStructure {
        let (n0, n1, n2) = self.counts();
        let order = group.order();
        let orbits0 = orbit_sizes(n0, |g, x| self.action0[g].image[x], order);
        let oriented = |g: usize, k: usize| {
            let (c, o) = (k / 2, k % 2);
            let a = &self.action1[g];
            2 * a.image[c] + if a.sign[c] > 0 { o } else { 1 - o }
        };
        let oriented_orbits1 = orbit_sizes(2 * n1, oriented, order).into_iter().map(|(s, _)| s).collect();
        let orbits2 = orbit_sizes(n2, |g, x| self.action2[g].image[x], order);
        let h = group.order5;
        let stab: Vec<usize> = (0..order).filter(|&g| self.action2[g].image[0] == 0).collect();
        let cyclic: Vec<usize> = (0..5).map(|k| group.power(h, k)).collect();
        let mut sorted = cyclic.clone();
        sorted.sort();
        let faces_cyclic_module = sorted == stab && stab.iter().all(|&g| self.action2[g].sign[0] == 1) && orbits2.len() == 1;
        OrbitStructure { orbits0, oriented_orbits1, orbits2, faces_cyclic_module }
    }
}

/// Matrix times small-integer vector, for matrices with small entries.
pub fn mul_small(m: &IntMat, v: &[i64]) -> Chain {
    use num_traits::ToPrimitive;
    (0..m.rows()).map(|i| m.row(i).iter().zip(v).map(|(x, &y)| x.to_i64().expect("small entry") * y).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosa::rotation_group;

    fn setup() -> SurfaceComplex {
        let m = DodecModel::build().unwrap();
        let g = rotation_group(&m).unwrap();
        SurfaceComplex::build(&m, &g).unwrap()
    }

    #[test]
    fn counts_and_euler() {
        let s = setup();
        assert_eq!(s.counts(), (30, 60, 12));
        assert_eq!(s.euler_characteristic(), -18);
    }

    #[test]
    fn boundary_of_boundary() {
        let s = setup();
        assert!((&s.boundary1 * &s.boundary2).is_zero());
    }

    #[test]
    fn truncation_cells_at_antipodes() {
        let s = setup();
        let m = s.model().clone();
        for x in 0..20 {
            for &a in &m.rotation[x] {
                let (c, sg) = s.trc(x, a);
                let (c2, sg2) = s.trc(m.antipode[x], m.antipode[m.next_around(x, a)]);
                assert_eq!((c, sg), (c2, -sg2));
            }
        }
    }

    #[test]
    fn orbit_structure() {
        let m = DodecModel::build().unwrap();
        let g = rotation_group(&m).unwrap();
        let s = SurfaceComplex::build(&m, &g).unwrap();
        let o = s.orbit_structure(&g);
        assert_eq!(o.orbits0, vec![(30, 2)]);
        assert_eq!(o.oriented_orbits1, vec![60, 60]);
        assert_eq!(o.orbits2, vec![(12, 5)]);
        assert!(o.faces_cyclic_module);
    }

    #[test]
    fn pairing_on_a_square_torus() {
        // one 0-cell, cells a (east) and b (north); ends counterclockwise: a out, b out, a in, b in
        let mut s = setup();
        s.rotation = vec![[
            HalfEdge { cell: 0, start: true },
            HalfEdge { cell: 1, start: true },
            HalfEdge { cell: 0, start: false },
            HalfEdge { cell: 1, start: false },
        ]];
        let mut a = vec![0; 60];
        let mut b = vec![0; 60];
        a[0] = 1;
        b[1] = 1;
        assert_eq!(s.pairing(&a, &b), 1);
        assert_eq!(s.pairing(&b, &a), -1);
        assert_eq!(s.pairing(&a, &a), 0);
    }
}
