use serde::Serialize;

use super::group::GroupData;
use super::mat3::{norm2, sub};
use super::model::DodecModel;
use crate::arith::GoldenNumber;
use crate::{Error, Result};

/// How a vertex orders its two cubes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairOrientation {
    /// First cube contains the face diagonal two steps counterclockwise along a face at the vertex.
    Counterclockwise,
    Clockwise,
}

/// The five inscribed cubes and the ordered cube pair attached to each vertex.
#[derive(Clone, Debug, Serialize)]
pub struct CubeSet {
    pub cubes: Vec<Vec<usize>>,
    pub vertex_to_pair: Vec<(usize, usize)>,
    pub orientation: PairOrientation,
}

/// The two tetrads of a cube: vertex sets with no cube edge inside either one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TetradSplit {
    pub cube: usize,
    pub e: Vec<usize>,
    pub iota_e: Vec<usize>,
}

fn err(msg: impl Into<String>) -> Error {
    Error::Construction(msg.into())
}

fn cube_containing(cubes: &[Vec<usize>], a: usize, b: usize) -> Option<usize> {
    cubes.iter().position(|c| c.contains(&a) && c.contains(&b))
}

/// Ordered cube pair at each vertex, read off the pentagon diagonals at that vertex.
pub fn vertex_pairs(model: &DodecModel, cubes: &[Vec<usize>], orientation: PairOrientation) -> Result<Vec<(usize, usize)>> {
    (0..model.vertices.len())
        .map(|x| {
            let mut per_face = Vec::new();
            for &w in &model.rotation[x] {
                let face = &model.faces[model.left_face[model.dart(x, w)]];
                let i = face.iter().position(|&v| v == x).expect("vertex on its face");
                let fwd = cube_containing(cubes, x, face[(i + 2) % 5]).ok_or_else(|| err("diagonal not in a cube"))?;
                let back = cube_containing(cubes, x, face[(i + 3) % 5]).ok_or_else(|| err("diagonal not in a cube"))?;
                per_face.push(match orientation {
                    PairOrientation::Counterclockwise => (fwd, back),
                    PairOrientation::Clockwise => (back, fwd),
                });
            }
            if per_face.iter().any(|p| *p != per_face[0]) || per_face[0].0 == per_face[0].1 {
                return Err(err("cube pair depends on the face"));
            }
            Ok(per_face[0])
        })
        .collect()
}

impl CubeSet {
    pub fn new(model: &DodecModel, group: &GroupData, orientation: PairOrientation) -> Result<CubeSet> {
        let cubes = group.cubes.clone();
        let vertex_to_pair = vertex_pairs(model, &cubes, orientation)?;
        let set = CubeSet { cubes, vertex_to_pair, orientation };
        if !set.reverses_under_antipode(model) || !set.is_equivariant(group) {
            return Err(err("vertex-to-pair map is not compatible with the symmetries"));
        }
        Ok(set)
    }

    pub fn reverses_under_antipode(&self, model: &DodecModel) -> bool {
        (0..model.vertices.len()).all(|x| {
            let (a, b) = self.vertex_to_pair[x];
            self.vertex_to_pair[model.antipode[x]] == (b, a)
        })
    }

    pub fn is_equivariant(&self, group: &GroupData) -> bool {
        pairs_equivariant(&self.vertex_to_pair, group)
    }

    pub fn vertex_multiplicities(&self, nvertices: usize) -> Vec<usize> {
        let mut count = vec![0; nvertices];
        for c in &self.cubes {
            for &v in c {
                count[v] += 1;
            }
        }
        count
    }
}

/// Checks `pair(g x) = (g a, g b)` for every element and vertex.
pub fn pairs_equivariant(pairs: &[(usize, usize)], group: &GroupData) -> bool {
    group.elements.iter().all(|e| {
        (0..pairs.len()).all(|x| {
            let (a, b) = pairs[x];
            pairs[e.vertices[x]] == (e.cubes[a], e.cubes[b])
        })
    })
}

impl TetradSplit {
    /// Splits `cube` into its two tetrads; `E` holds the cube's smallest vertex.
    pub fn new(model: &DodecModel, cubes: &[Vec<usize>], cube: usize) -> Result<TetradSplit> {
        let verts = cubes.get(cube).ok_or_else(|| Error::InvalidArgument(format!("no cube {cube}")))?;
        let d2 = |a: usize, b: usize| norm2(&sub(&model.vertices[a], &model.vertices[b]));
        let min_d = verts
            .iter()
            .flat_map(|&a| verts.iter().filter(move |&&b| b != a).map(move |&b| (a, b)))
            .map(|(a, b)| d2(a, b))
            .min()
            .ok_or_else(|| err("empty cube"))?;
        if min_d != GoldenNumber::from_int(4) {
            return Err(err("cube edge is not of length 2"));
        }
        let adjacent = |a: usize, b: usize| a != b && d2(a, b) == min_d;
        // 2-colour the cube graph starting from the smallest vertex
        let start = *verts.iter().min().expect("nonempty");
        let mut colour = vec![None; model.vertices.len()];
        colour[start] = Some(0u8);
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for &b in verts {
                if adjacent(a, b) {
                    let want = 1 - colour[a].expect("coloured");
                    match colour[b] {
                        None => {
                            colour[b] = Some(want);
                            stack.push(b);
                        }
                        Some(c) if c != want => return Err(err("cube graph is not bipartite")),
                        _ => {}
                    }
                }
            }
        }
        let e: Vec<usize> = verts.iter().copied().filter(|&v| colour[v] == Some(0)).collect();
        let iota_e: Vec<usize> = verts.iter().copied().filter(|&v| colour[v] == Some(1)).collect();
        let split = TetradSplit { cube, e, iota_e };
        let mut anti: Vec<usize> = split.e.iter().map(|&v| model.antipode[v]).collect();
        anti.sort();
        if split.e.len() != 4 || anti != split.iota_e {
            return Err(err("tetrads are not antipodal"));
        }
        if split.e.iter().any(|&a| split.e.iter().any(|&b| adjacent(a, b))) {
            return Err(err("tetrad contains a cube edge"));
        }
        Ok(split)
    }

    /// The same cube with the roles of `E` and `ιE` exchanged.
    pub fn swapped(&self) -> TetradSplit {
        TetradSplit { cube: self.cube, e: self.iota_e.clone(), iota_e: self.e.clone() }
    }

    pub fn stabilizer(&self, group: &GroupData) -> Vec<usize> {
        (0..group.order())
            .filter(|&g| {
                let mut img: Vec<usize> = self.e.iter().map(|&v| group.elements[g].vertices[v]).collect();
                img.sort();
                img == self.e
            })
            .collect()
    }

    pub fn orbit(&self, group: &GroupData) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = group
            .elements
            .iter()
            .map(|el| {
                let mut img: Vec<usize> = self.e.iter().map(|&v| el.vertices[v]).collect();
                img.sort();
                img
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn membership(&self, v: usize) -> i64 {
        if self.e.contains(&v) {
            1
        } else if self.iota_e.contains(&v) {
            -1
        } else {
            0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosa::group::rotation_group;

    fn setup() -> (DodecModel, GroupData) {
        let m = DodecModel::build().unwrap();
        let g = rotation_group(&m).unwrap();
        (m, g)
    }

    #[test]
    fn each_vertex_in_two_cubes() {
        let (m, g) = setup();
        let cs = CubeSet::new(&m, &g, PairOrientation::Counterclockwise).unwrap();
        assert_eq!(cs.cubes.len(), 5);
        assert!(cs.vertex_multiplicities(20).iter().all(|&k| k == 2));
        for (x, &(a, b)) in cs.vertex_to_pair.iter().enumerate() {
            assert!(cs.cubes[a].contains(&x) && cs.cubes[b].contains(&x));
        }
    }

    #[test]
    fn both_orientations_reverse_under_antipode() {
        let (m, g) = setup();
        for o in [PairOrientation::Counterclockwise, PairOrientation::Clockwise] {
            let cs = CubeSet::new(&m, &g, o).unwrap();
            assert!(cs.reverses_under_antipode(&m));
            assert!(cs.is_equivariant(&g));
        }
    }

    #[test]
    fn index_ordered_pairs_do_not_reverse() {
        let (m, g) = setup();
        let cs = CubeSet::new(&m, &g, PairOrientation::Counterclockwise).unwrap();
        let naive: Vec<(usize, usize)> = cs.vertex_to_pair.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        let naive_set = CubeSet { vertex_to_pair: naive, ..cs };
        assert!(!naive_set.reverses_under_antipode(&m));
    }

    #[test]
    fn tetrad_split_of_every_cube() {
        let (m, g) = setup();
        for k in 0..5 {
            let t = TetradSplit::new(&m, &g.cubes, k).unwrap();
            assert_eq!(t.e.len(), 4);
            assert_eq!(t.stabilizer(&g).len(), 12);
            assert_eq!(t.orbit(&g).len(), 5);
            assert_eq!(t.e[0], *g.cubes[k].iter().min().unwrap());
        }
    }

    #[test]
    fn swapped_split() {
        let (m, g) = setup();
        let t = TetradSplit::new(&m, &g.cubes, 0).unwrap();
        let s = t.swapped();
        assert_eq!(s.e, t.iota_e);
        assert_eq!(s.swapped(), t);
        assert_eq!(s.membership(t.e[0]), -1);
    }
}
