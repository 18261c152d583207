use serde::Serialize;

use super::mat3::{neg, norm2, sub, triple, Vec3};
use crate::arith::GoldenNumber;
use crate::{Error, Result};

/// Directed edge `tail -> head` of the dodecahedron (an element of the oriented edge set).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dart {
    pub tail: usize,
    pub head: usize,
}

/// The regular dodecahedron with exact coordinates in Q(sqrt 5).
///
/// Vertices are sorted lexicographically by coordinates; darts are sorted by
/// `(tail, head)`; faces are listed counterclockwise seen from outside, starting at their
/// smallest vertex, and sorted lexicographically.
#[derive(Clone, Debug, Serialize)]
pub struct DodecModel {
    pub vertices: Vec<Vec3>,
    /// Undirected edges `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<Vec<usize>>,
    pub antipode: Vec<usize>,
    /// Counterclockwise (from outside) cyclic order of the neighbours of each vertex,
    /// starting with the smallest neighbour.
    pub rotation: Vec<[usize; 3]>,
    pub darts: Vec<Dart>,
    #[serde(skip)]
    dart_lookup: Vec<[Option<usize>; 20]>,
    /// Face lying to the left of each dart (the dart runs counterclockwise on its boundary).
    pub left_face: Vec<usize>,
    pub face_antipode: Vec<usize>,
}

fn build_error(msg: impl Into<String>) -> Error {
    Error::Construction(msg.into())
}

fn raw_vertices() -> Vec<Vec3> {
    let one = GoldenNumber::one();
    let phi = GoldenNumber::phi();
    let inv_phi = &phi - &one;
    let zero = GoldenNumber::zero();
    let mut out = Vec::new();
    for sx in [-1i64, 1] {
        for sy in [-1i64, 1] {
            for sz in [-1i64, 1] {
                out.push([GoldenNumber::from_int(sx), GoldenNumber::from_int(sy), GoldenNumber::from_int(sz)]);
            }
        }
    }
    let signed = |x: &GoldenNumber, s: i64| if s < 0 { -x } else { x.clone() };
    for s1 in [-1i64, 1] {
        for s2 in [-1i64, 1] {
            let a = signed(&inv_phi, s1);
            let b = signed(&phi, s2);
            out.push([zero.clone(), a.clone(), b.clone()]);
            out.push([a.clone(), b.clone(), zero.clone()]);
            out.push([b, zero.clone(), a]);
        }
    }
    out
}

impl DodecModel {
    /// Builds the dodecahedron and runs its combinatorial self-checks.
    pub fn build() -> Result<DodecModel> {
        let mut vertices = raw_vertices();
        vertices.sort();
        let n = vertices.len();
        if n != 20 {
            return Err(build_error("expected 20 vertices"));
        }

        let antipode: Vec<usize> = (0..n)
            .map(|i| {
                let m = neg(&vertices[i]);
                vertices.iter().position(|w| *w == m).ok_or_else(|| build_error("vertex set not centrally symmetric"))
            })
            .collect::<Result<_>>()?;

        // edges: pairs at minimal squared distance
        let mut min_d: Option<GoldenNumber> = None;
        for i in 0..n {
            for j in i + 1..n {
                let d = norm2(&sub(&vertices[i], &vertices[j]));
                if min_d.as_ref().map_or(true, |m| d < *m) {
                    min_d = Some(d);
                }
            }
        }
        let min_d = min_d.expect("vertices exist");
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if norm2(&sub(&vertices[i], &vertices[j])) == min_d {
                    edges.push((i, j));
                }
            }
        }
        let mut nbrs = vec![Vec::new(); n];
        for &(a, b) in &edges {
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
        if nbrs.iter().any(|v| v.len() != 3) {
            return Err(build_error("vertex of degree != 3"));
        }

        // rotation system: n2 follows n1 counterclockwise iff det(n1 - v, n2 - v, v) > 0
        let mut rotation = Vec::with_capacity(n);
        for v in 0..n {
            let mut nb = nbrs[v].clone();
            nb.sort();
            let p = &vertices[v];
            let d = triple(&sub(&vertices[nb[0]], p), &sub(&vertices[nb[1]], p), p);
            match d.signum() {
                1 => rotation.push([nb[0], nb[1], nb[2]]),
                -1 => rotation.push([nb[0], nb[2], nb[1]]),
                _ => return Err(build_error("degenerate orientation test")),
            }
        }

        let mut darts: Vec<Dart> = edges.iter().flat_map(|&(a, b)| [Dart { tail: a, head: b }, Dart { tail: b, head: a }]).collect();
        darts.sort();
        let mut dart_lookup = vec![[None; 20]; n];
        for (k, d) in darts.iter().enumerate() {
            dart_lookup[d.tail][d.head] = Some(k);
        }

        let mut model = DodecModel {
            vertices,
            edges,
            faces: Vec::new(),
            antipode,
            rotation,
            darts,
            dart_lookup,
            left_face: Vec::new(),
            face_antipode: Vec::new(),
        };

        // faces: orbits of u->v  |->  v->prev_v(u)
        let mut seen = vec![false; model.darts.len()];
        let mut faces = Vec::new();
        for start in 0..model.darts.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                cycle.push(model.darts[d].tail);
                d = model.face_successor(d);
            }
            if d != start || cycle.len() != 5 {
                return Err(build_error("face is not a pentagon"));
            }
            let k = (0..5).min_by_key(|&i| cycle[i]).expect("nonempty");
            cycle.rotate_left(k);
            faces.push(cycle);
        }
        faces.sort();
        model.faces = faces;
        let mut left_face = vec![usize::MAX; model.darts.len()];
        for (f, face) in model.faces.iter().enumerate() {
            for i in 0..5 {
                left_face[model.dart(face[i], face[(i + 1) % 5])] = f;
            }
        }
        model.left_face = left_face;
        model.face_antipode = (0..model.faces.len())
            .map(|f| {
                let mut img: Vec<usize> = model.faces[f].iter().map(|&v| model.antipode[v]).collect();
                img.sort();
                model
                    .faces
                    .iter()
                    .position(|g| {
                        let mut s = g.clone();
                        s.sort();
                        s == img
                    })
                    .ok_or_else(|| build_error("antipode does not map faces to faces"))
            })
            .collect::<Result<_>>()?;
        model.self_check()?;
        Ok(model)
    }

    pub fn dart(&self, tail: usize, head: usize) -> usize {
        self.dart_lookup[tail][head].unwrap_or_else(|| panic!("{tail}->{head} is not an edge"))
    }

    pub fn try_dart(&self, tail: usize, head: usize) -> Option<usize> {
        self.dart_lookup[tail][head]
    }

    pub fn reverse(&self, d: usize) -> usize {
        let Dart { tail, head } = self.darts[d];
        self.dart(head, tail)
    }

    /// The antipodal dart `-tail -> -head`.
    pub fn dart_antipode(&self, d: usize) -> usize {
        let Dart { tail, head } = self.darts[d];
        self.dart(self.antipode[tail], self.antipode[head])
    }

    pub fn next_around(&self, v: usize, w: usize) -> usize {
        let r = &self.rotation[v];
        let i = r.iter().position(|&x| x == w).expect("not a neighbour");
        r[(i + 1) % 3]
    }

    pub fn prev_around(&self, v: usize, w: usize) -> usize {
        let r = &self.rotation[v];
        let i = r.iter().position(|&x| x == w).expect("not a neighbour");
        r[(i + 2) % 3]
    }

    /// `v -> w` rotated counterclockwise about its tail.
    pub fn rotate_dart(&self, d: usize) -> usize {
        let Dart { tail, head } = self.darts[d];
        self.dart(tail, self.next_around(tail, head))
    }

    /// Next dart along the counterclockwise boundary of the face left of `d`.
    pub fn face_successor(&self, d: usize) -> usize {
        let Dart { tail, head } = self.darts[d];
        self.dart(head, self.prev_around(head, tail))
    }

    pub fn edge_index(&self, a: usize, b: usize) -> usize {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).unwrap_or_else(|_| panic!("{a}-{b} is not an edge"))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn squared_edge_length(&self) -> GoldenNumber {
        let (a, b) = self.edges[0];
        norm2(&sub(&self.vertices[a], &self.vertices[b]))
    }

    fn self_check(&self) -> Result<()> {
        if self.edges.len() != 30 || self.faces.len() != 12 || self.euler_characteristic() != 2 {
            return Err(build_error("wrong cell counts"));
        }
        // every edge on exactly two faces with opposite orientations: each dart has one left face
        if self.left_face.iter().any(|&f| f == usize::MAX) {
            return Err(build_error("dart without a face"));
        }
        for d in 0..self.darts.len() {
            if self.left_face[d] == self.left_face[self.reverse(d)] {
                return Err(build_error("edge with the same face on both sides"));
            }
        }
        // faces counterclockwise seen from outside: outward normal
        for face in &self.faces {
            let [a, b, c] = [&self.vertices[face[0]], &self.vertices[face[1]], &self.vertices[face[2]]];
            if triple(&sub(b, a), &sub(c, b), a).signum() <= 0 {
                return Err(build_error("face not counterclockwise from outside"));
            }
        }
        for &(a, b) in &self.edges {
            let (x, y) = (self.antipode[a], self.antipode[b]);
            if self.edges.binary_search(&(x.min(y), x.max(y))).is_err() {
                return Err(build_error("antipode does not preserve edges"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_euler() {
        let m = DodecModel::build().unwrap();
        assert_eq!((m.vertices.len(), m.edges.len(), m.faces.len()), (20, 30, 12));
        assert_eq!(m.euler_characteristic(), 2);
        assert_eq!(m.darts.len(), 60);
    }

    #[test]
    fn edge_length() {
        // |(1,1,1) - (0, phi-1, phi)|^2 = 1 + (2 - phi)^2 + (1 - phi)^2 = 6 - 2 sqrt 5
        let m = DodecModel::build().unwrap();
        let one = GoldenNumber::one();
        let phi = GoldenNumber::phi();
        let a = &GoldenNumber::from_int(2) - &phi;
        let b = &one - &phi;
        let oracle = &(&one + &(&a * &a)) + &(&b * &b);
        assert_eq!(oracle, GoldenNumber::from_parts(6, -2, 1));
        assert_eq!(m.squared_edge_length(), oracle);
        let s = &GoldenNumber::sqrt5() - &one;
        assert_eq!(&s * &s, oracle);
    }

    #[test]
    fn antipode_is_free_involution() {
        let m = DodecModel::build().unwrap();
        for v in 0..20 {
            assert_ne!(m.antipode[v], v);
            assert_eq!(m.antipode[m.antipode[v]], v);
        }
        for f in 0..12 {
            assert_ne!(m.face_antipode[f], f);
            assert_eq!(m.face_antipode[m.face_antipode[f]], f);
        }
    }

    #[test]
    fn antipode_reverses_rotation() {
        let m = DodecModel::build().unwrap();
        for v in 0..20 {
            let w = m.rotation[v][0];
            let (x, y) = (m.antipode[v], m.antipode[w]);
            assert_eq!(m.antipode[m.next_around(v, w)], m.prev_around(x, y));
        }
    }
}
