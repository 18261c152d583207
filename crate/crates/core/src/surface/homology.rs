use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::complex::{Chain, SurfaceComplex};
use crate::arith::{integer_kernel, smith_normal_form, IntMat, IntVec, SmithDecomposition};
use crate::{Error, Result};

/// The distinguished cycles: truncation loops `δ_x`, edge loops `δ_y`, and the crossing paths `γ_x`.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalCycles {
    /// `δ_x` for every vertex (counterclockwise triangle boundary).
    pub delta_trc: Vec<Chain>,
    /// `δ_y = y - ιy` for every dart.
    pub delta_edge: Vec<Chain>,
    /// `γ_x` for each `x` in `R`, in the order of `R`.
    pub gamma: Vec<Chain>,
    /// Vertex path of each `γ_x` from `x` to `ιx`.
    pub gamma_paths: Vec<Vec<usize>>,
}

/// Integral homology with the basis `[δ_x, γ_x]` (`x` in `R`) of `H_1`.
#[derive(Clone, Debug)]
pub struct Homology {
    pub cycles: CanonicalCycles,
    /// Basis cycles as columns (60 × 20).
    pub basis: IntMat,
    pub basis_chains: Vec<Chain>,
    /// Basis of `Z_1` (columns).
    pub z1: IntMat,
    pub rank_h0: usize,
    pub rank_h1: usize,
    pub rank_h2: usize,
    pub torsion_h1: Vec<BigInt>,
    /// Induced action of each element on `H_1` coordinates.
    pub action: Vec<IntMat>,
    /// Intersection matrix of the basis.
    pub form: IntMat,
    projector: SmithDecomposition,
}

fn err(msg: impl Into<String>) -> Error {
    Error::Construction(msg.into())
}

fn to_big(c: &[i64]) -> IntVec {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn chain_from_big(v: &[BigInt]) -> Chain {
    v.iter().map(|x| x.to_i64().expect("small coefficient")).collect()
}

impl CanonicalCycles {
    pub fn build(s: &SurfaceComplex) -> Result<CanonicalCycles> {
        let m = s.model();
        let delta_trc: Vec<Chain> =
            (0..m.vertices.len()).map(|x| s.chain_of(&m.rotation[x].iter().map(|&a| s.trc(x, a)).collect::<Vec<_>>())).collect();
        let delta_edge: Vec<Chain> = m
            .darts
            .iter()
            .map(|d| {
                let (c1, s1) = s.edge(d.tail, d.head);
                let (c2, s2) = s.edge(m.antipode[d.tail], m.antipode[d.head]);
                s.chain_of(&[(c1, s1), (c2, -s2)])
            })
            .collect();
        let mut gamma = Vec::new();
        let mut gamma_paths = Vec::new();
        for &x in &s.r {
            let path = shortest_path(s, x, m.antipode[x]);
            let mut terms = Vec::new();
            let last = path.len() - 1;
            for i in 0..last {
                terms.push(s.edge(path[i], path[i + 1]));
                if i + 1 < last {
                    terms.extend(s.trc_walk(path[i + 1], path[i], path[i + 2]));
                }
            }
            // close up at ιx: back round to the corner identified with the starting corner
            terms.extend(s.trc_walk(path[last], path[last - 1], m.antipode[path[1]]));
            let mut c = s.chain_of(&terms);
            if !s.is_cycle(&c) {
                return Err(err("crossing path does not close up"));
            }
            match s.pairing(&c, &delta_trc[x]) {
                1 => {}
                -1 => c.iter_mut().for_each(|v| *v = -*v),
                k => return Err(err(format!("crossing path meets its own triangle {k} times"))),
            }
            gamma.push(c);
            gamma_paths.push(path);
        }
        Ok(CanonicalCycles { delta_trc, delta_edge, gamma, gamma_paths })
    }
}

/// Breadth-first shortest vertex path, neighbours explored in index order.
fn shortest_path(s: &SurfaceComplex, from: usize, to: usize) -> Vec<usize> {
    let m = s.model();
    let mut parent = vec![usize::MAX; m.vertices.len()];
    parent[from] = from;
    let mut q = VecDeque::from([from]);
    while let Some(v) = q.pop_front() {
        if v == to {
            break;
        }
        let mut nb = m.rotation[v].to_vec();
        nb.sort();
        for w in nb {
            if parent[w] == usize::MAX {
                parent[w] = v;
                q.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    while *path.last().expect("nonempty") != from {
        path.push(parent[*path.last().expect("nonempty")]);
    }
    path.reverse();
    path
}

impl Homology {
    pub fn build(s: &SurfaceComplex) -> Result<Homology> {
        let cycles = CanonicalCycles::build(s)?;
        let snf1 = smith_normal_form(&s.boundary1);
        let snf2 = smith_normal_form(&s.boundary2);
        let (n0, n1, n2) = s.counts();
        let rank_h0 = n0 - snf1.rank;
        let rank_h2 = n2 - snf2.rank;
        let rank_h1 = n1 - snf1.rank - snf2.rank;
        let torsion_h1: Vec<BigInt> = snf2.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
        if !snf1.all_units() {
            return Err(err("H_0 has torsion"));
        }

        let basis_chains: Vec<Chain> = s.r.iter().map(|&x| cycles.delta_trc[x].clone()).chain(cycles.gamma.iter().cloned()).collect();
        let basis = IntMat::from_columns(n1, &basis_chains.iter().map(|c| to_big(c)).collect::<Vec<_>>());
        let projector = smith_normal_form(&basis.hstack(&s.boundary2));
        if projector.rank != rank_h1 + snf2.rank || !projector.all_units() {
            return Err(err("distinguished cycles do not give a basis of H_1"));
        }
        let z1 = integer_kernel(&s.boundary1);

        let mut h = Homology {
            cycles,
            basis,
            basis_chains,
            z1,
            rank_h0,
            rank_h1,
            rank_h2,
            torsion_h1,
            action: Vec::new(),
            form: IntMat::zeros(0, 0),
            projector,
        };
        let mut action = Vec::with_capacity(s.action1.len());
        for a in &s.action1 {
            let cols: Vec<IntVec> = h.basis_chains.iter().map(|c| h.project(&a.apply(c))).collect::<Result<_>>()?;
            action.push(IntMat::from_columns(rank_h1, &cols));
        }
        h.action = action;
        let k = h.basis_chains.len();
        let mut form = IntMat::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                form.set_i64(i, j, s.pairing(&h.basis_chains[i], &h.basis_chains[j]));
            }
        }
        h.form = form;
        Ok(h)
    }

    /// `H_1` coordinates of a cycle.
    pub fn project(&self, z: &[i64]) -> Result<IntVec> {
        let sol = self.projector.solve(&to_big(z)).ok_or_else(|| Error::Certificate("chain is not a cycle".into()))?;
        Ok(sol[..self.basis_chains.len()].to_vec())
    }

    /// Some cycle representing the given class.
    pub fn lift(&self, h: &[BigInt]) -> Chain {
        chain_from_big(&self.basis.mul_vec(h))
    }

    /// `Ω(a, b)` for classes given in coordinates.
    pub fn omega(&self, a: &[BigInt], b: &[BigInt]) -> BigInt {
        let fb = self.form.mul_vec(b);
        a.iter().zip(&fb).map(|(x, y)| x * y).sum()
    }

    /// `⟨δ_x, δ_y⟩` for every vertex `x` (rows) and dart `y` (columns).
    pub fn trc_edge_table(&self, s: &SurfaceComplex) -> Vec<Vec<i64>> {
        self.cycles.delta_trc.iter().map(|a| self.cycles.delta_edge.iter().map(|b| s.pairing(a, b)).collect()).collect()
    }

    /// Closed form of [`Homology::trc_edge_table`]: `+1` when `x` is the head of `y` or the tail
    /// of `ιy`, `-1` when `x` is the tail of `y` or the head of `ιy`, `0` otherwise.
    pub fn expected_trc_edge(s: &SurfaceComplex, x: usize, y: usize) -> i64 {
        let m = s.model();
        let d = m.darts[y];
        let on = |v: usize| (x == v) as i64 - (x == m.antipode[v]) as i64;
        on(d.head) - on(d.tail)
    }

    /// Largest `|⟨a, b⟩|` over pairs within the given family.
    pub fn max_pairing_within(s: &SurfaceComplex, family: &[Chain]) -> i64 {
        family.iter().flat_map(|a| family.iter().map(move |b| s.pairing(a, b).abs())).max().unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        self.basis_chains.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_unimodular;
    use crate::icosa::{rotation_group, DodecModel};

    fn setup() -> (SurfaceComplex, Homology) {
        let m = DodecModel::build().unwrap();
        let g = rotation_group(&m).unwrap();
        let s = SurfaceComplex::build(&m, &g).unwrap();
        let h = Homology::build(&s).unwrap();
        (s, h)
    }

    #[test]
    fn betti_numbers() {
        let (_, h) = setup();
        assert_eq!((h.rank_h0, h.rank_h1, h.rank_h2), (1, 20, 1));
        assert!(h.torsion_h1.is_empty());
        assert_eq!(h.z1.cols(), 31);
    }

    #[test]
    fn canonical_cycles_are_cycles() {
        let (s, h) = setup();
        for c in h.cycles.delta_trc.iter().chain(&h.cycles.delta_edge).chain(&h.cycles.gamma) {
            assert!(s.is_cycle(c));
        }
    }

    #[test]
    fn antipodal_relations() {
        let (s, h) = setup();
        let m = s.model();
        let neg = |c: &Chain| c.iter().map(|x| -x).collect::<Chain>();
        for x in 0..20 {
            assert_eq!(h.cycles.delta_trc[m.antipode[x]], neg(&h.cycles.delta_trc[x]));
        }
        for y in 0..60 {
            assert_eq!(h.cycles.delta_edge[m.reverse(y)], neg(&h.cycles.delta_edge[y]));
            assert_eq!(h.cycles.delta_edge[m.dart_antipode(y)], neg(&h.cycles.delta_edge[y]));
        }
    }

    #[test]
    fn form_is_alternating_unimodular_invariant() {
        let (_, h) = setup();
        let f = &h.form;
        assert_eq!(f.transpose(), -f);
        assert!(is_unimodular(f));
        for a in &h.action {
            assert_eq!(&(&a.transpose() * f) * a, *f);
        }
    }

    #[test]
    fn pairing_kills_boundaries() {
        let (s, h) = setup();
        for f in 0..12 {
            let mut e = vec![0; 12];
            e[f] = 1;
            let b = s.boundary2_of(&e);
            for c in &h.basis_chains {
                assert_eq!(s.pairing(c, &b), 0);
                assert_eq!(s.pairing(&b, c), 0);
            }
        }
    }

    #[test]
    fn same_type_loops_do_not_meet() {
        let (s, h) = setup();
        assert_eq!(Homology::max_pairing_within(&s, &h.cycles.delta_trc), 0);
        assert_eq!(Homology::max_pairing_within(&s, &h.cycles.delta_edge), 0);
    }

    #[test]
    fn truncation_meets_edge_per_closed_form() {
        let (s, h) = setup();
        let t = h.trc_edge_table(&s);
        for x in 0..20 {
            for y in 0..60 {
                assert_eq!(t[x][y], Homology::expected_trc_edge(&s, x, y), "x={x} y={y}");
            }
        }
    }

    #[test]
    fn truncation_classes_span_a_primitive_lagrangian() {
        let (_, h) = setup();
        let coords = IntMat::identity(20).submatrix(0..20, 0..10);
        assert!(crate::arith::is_saturated(&coords));
        assert!((&(&coords.transpose() * &h.form) * &coords).is_zero());
    }

    #[test]
    fn gamma_is_dual_to_delta() {
        let (s, h) = setup();
        for (i, g) in h.cycles.gamma.iter().enumerate() {
            for (j, &x) in s.r.iter().enumerate() {
                assert_eq!(s.pairing(g, &h.cycles.delta_trc[x]), (i == j) as i64);
            }
        }
    }
}
