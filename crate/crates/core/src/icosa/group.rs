use std::collections::VecDeque;

use serde::Serialize;

use super::mat3::Mat3;
use super::model::DodecModel;
use crate::arith::GoldenNumber;
use crate::{Error, Result};

/// Names of the conjugacy classes in their fixed order.
pub const CLASS_NAMES: [&str; 5] = ["1", "(12)(34)", "(123)", "(12345)", "(12354)"];

/// One rotation of the dodecahedron, as permutations of every derived index set.
#[derive(Clone, Debug, Serialize)]
pub struct GroupElement {
    pub darts: Vec<usize>,
    pub vertices: Vec<usize>,
    pub faces: Vec<usize>,
    pub cubes: Vec<usize>,
    pub axes: Vec<usize>,
    pub order: usize,
    pub class: usize,
}

/// The rotation group of the dodecahedron.
///
/// Element `g` is indexed by the image of dart 0, so the identity is element 0.
/// `mul[g][h]` is `g ∘ h` (apply `h` first).
#[derive(Clone, Debug, Serialize)]
pub struct GroupData {
    pub elements: Vec<GroupElement>,
    pub mul: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
    /// Members of each class, in the order of [`CLASS_NAMES`].
    pub classes: Vec<Vec<usize>>,
    /// Rotation about the axis of face 0 by one step counterclockwise seen from outside.
    pub order5: usize,
    /// Two elements generating the group.
    pub generators: [usize; 2],
    /// Exact rotation matrices (acting on column vectors).
    #[serde(skip)]
    pub matrices: Vec<Mat3>,
    /// Trace of each class's rotation matrix.
    pub class_traces: Vec<GoldenNumber>,
    pub cubes: Vec<Vec<usize>>,
    pub axes: Vec<[usize; 2]>,
}

fn err(msg: impl Into<String>) -> Error {
    Error::Construction(msg.into())
}

/// Propagates `0 -> target` to a dart permutation commuting with reversal and rotation.
fn propagate(model: &DodecModel, target: usize) -> Option<Vec<usize>> {
    let n = model.darts.len();
    let mut image = vec![usize::MAX; n];
    image[0] = target;
    let mut queue = VecDeque::from([0usize]);
    while let Some(d) = queue.pop_front() {
        let e = image[d];
        for (src, dst) in [(model.reverse(d), model.reverse(e)), (model.rotate_dart(d), model.rotate_dart(e))] {
            if image[src] == usize::MAX {
                image[src] = dst;
                queue.push_back(src);
            } else if image[src] != dst {
                return None;
            }
        }
    }
    let mut hit = vec![false; n];
    for &x in &image {
        if x == usize::MAX || std::mem::replace(&mut hit[x], true) {
            return None;
        }
    }
    Some(image)
}

fn compose(g: &[usize], h: &[usize]) -> Vec<usize> {
    h.iter().map(|&x| g[x]).collect()
}

fn is_even(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for s in 0..p.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

fn set_image(perm: &[usize], set: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = set.iter().map(|&v| perm[v]).collect();
    out.sort();
    out
}

fn rotation_matrix(model: &DodecModel, vperm: &[usize]) -> Result<Mat3> {
    let d0 = model.darts[0];
    let third = model.rotation[d0.tail][1];
    let pick = [d0.tail, d0.head, third];
    let a = Mat3::from_columns(&model.vertices[pick[0]], &model.vertices[pick[1]], &model.vertices[pick[2]]);
    let b = Mat3::from_columns(&model.vertices[vperm[pick[0]]], &model.vertices[vperm[pick[1]]], &model.vertices[vperm[pick[2]]]);
    let ainv = a.inverse().ok_or_else(|| err("reference vertices are linearly dependent"))?;
    let r = b.mul(&ainv);
    for (v, p) in model.vertices.iter().enumerate() {
        if r.apply(p) != model.vertices[vperm[v]] {
            return Err(err("vertex permutation is not linear"));
        }
    }
    if r.transpose().mul(&r) != Mat3::identity() || r.det() != GoldenNumber::one() {
        return Err(err("automorphism is not a rotation"));
    }
    Ok(r)
}

/// Builds the 60 rotations as automorphisms of the rotation system.
pub fn rotation_group(model: &DodecModel) -> Result<GroupData> {
    let n = model.darts.len();
    let dart_perms: Vec<Vec<usize>> = (0..n).filter_map(|t| propagate(model, t)).collect();
    if dart_perms.len() != 60 {
        return Err(err(format!("found {} automorphisms, expected 60", dart_perms.len())));
    }
    let m = dart_perms.len();
    let mul: Vec<Vec<usize>> = (0..m).map(|g| (0..m).map(|h| dart_perms[g][h]).collect()).collect();
    for g in 0..m {
        for h in 0..m {
            if compose(&dart_perms[g], &dart_perms[h]) != dart_perms[mul[g][h]] {
                return Err(err("multiplication table inconsistent"));
            }
        }
    }
    let inverse: Vec<usize> =
        (0..m).map(|g| (0..m).find(|&h| mul[g][h] == 0).ok_or_else(|| err("missing inverse"))).collect::<Result<_>>()?;

    let vperms: Vec<Vec<usize>> = dart_perms
        .iter()
        .map(|p| {
            let mut v = vec![0; model.vertices.len()];
            for (d, dart) in model.darts.iter().enumerate() {
                v[dart.tail] = model.darts[p[d]].tail;
            }
            v
        })
        .collect();
    let fperms: Vec<Vec<usize>> = dart_perms
        .iter()
        .map(|p| {
            let mut f = vec![0; model.faces.len()];
            for d in 0..n {
                f[model.left_face[d]] = model.left_face[p[d]];
            }
            f
        })
        .collect();
    let matrices: Vec<Mat3> = vperms.iter().map(|v| rotation_matrix(model, v)).collect::<Result<_>>()?;

    let orders: Vec<usize> = (0..m)
        .map(|g| {
            let mut k = 1;
            let mut x = g;
            while x != 0 {
                x = mul[g][x];
                k += 1;
            }
            k
        })
        .collect();

    // conjugacy classes, then ordered by (order, trace)
    let mut class_of = vec![usize::MAX; m];
    let mut raw_classes: Vec<Vec<usize>> = Vec::new();
    for g in 0..m {
        if class_of[g] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = (0..m).map(|h| mul[mul[h][g]][inverse[h]]).collect();
        members.sort();
        members.dedup();
        for &x in &members {
            class_of[x] = raw_classes.len();
        }
        raw_classes.push(members);
    }
    if raw_classes.len() != 5 {
        return Err(err("expected 5 conjugacy classes"));
    }
    let phi = GoldenNumber::phi();
    let one_minus_phi = &GoldenNumber::one() - &phi;
    let slot = |c: &Vec<usize>| -> Result<usize> {
        let g = c[0];
        Ok(match orders[g] {
            1 => 0,
            2 => 1,
            3 => 2,
            5 if matrices[g].trace() == phi => 3,
            5 if matrices[g].trace() == one_minus_phi => 4,
            _ => return Err(err("unexpected element order or trace")),
        })
    };
    let mut classes = vec![Vec::new(); 5];
    for c in &raw_classes {
        classes[slot(c)?] = c.clone();
    }
    let mut class_index = vec![0; m];
    for (k, c) in classes.iter().enumerate() {
        for &g in c {
            class_index[g] = k;
        }
    }
    let class_traces: Vec<GoldenNumber> = classes.iter().map(|c| matrices[c[0]].trace()).collect();

    // g5: rotates face 0 one step counterclockwise
    let f0 = &model.faces[0];
    let d_from = model.dart(f0[0], f0[1]);
    let d_to = model.dart(f0[1], f0[2]);
    let order5 = (0..m).find(|&g| dart_perms[g][d_from] == d_to).ok_or_else(|| err("no face rotation"))?;
    if orders[order5] != 5 || fperms[order5][0] != 0 {
        return Err(err("face rotation is not of order 5"));
    }

    let cubes = build_cubes(model, &vperms, order5, &mul)?;
    let axes: Vec<[usize; 2]> =
        (0..model.faces.len()).filter(|&f| f < model.face_antipode[f]).map(|f| [f, model.face_antipode[f]]).collect();

    let elements: Vec<GroupElement> = (0..m)
        .map(|g| {
            let cube_perm = cubes
                .iter()
                .map(|c| {
                    let img = set_image(&vperms[g], c);
                    cubes.iter().position(|k| *k == img).ok_or_else(|| err("cube image is not a cube"))
                })
                .collect::<Result<Vec<_>>>()?;
            let axis_perm = axes
                .iter()
                .map(|a| {
                    let f = fperms[g][a[0]];
                    axes.iter().position(|b| b.contains(&f)).ok_or_else(|| err("axis image is not an axis"))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(GroupElement {
                darts: dart_perms[g].clone(),
                vertices: vperms[g].clone(),
                faces: fperms[g].clone(),
                cubes: cube_perm,
                axes: axis_perm,
                order: orders[g],
                class: class_index[g],
            })
        })
        .collect::<Result<_>>()?;

    let involution =
        (0..m).find(|&g| orders[g] == 2 && generated_order(&mul, &[order5, g]) == m).ok_or_else(|| err("no generating involution"))?;

    let group =
        GroupData { elements, mul, inverse, classes, order5, generators: [order5, involution], matrices, class_traces, cubes, axes };
    group.self_check(model)?;
    Ok(group)
}

fn build_cubes(model: &DodecModel, vperms: &[Vec<usize>], g5: usize, mul: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let one = GoldenNumber::one();
    let base: Vec<usize> = (0..model.vertices.len()).filter(|&v| model.vertices[v].iter().all(|c| c == &one || c == &-&one)).collect();
    if base.len() != 8 {
        return Err(err("base cube does not have 8 vertices"));
    }
    let mut cubes = vec![base];
    let mut g = g5;
    for _ in 1..5 {
        cubes.push(set_image(&vperms[g], &cubes[0]));
        g = mul[g5][g];
    }
    let mut count = vec![0; model.vertices.len()];
    for c in &cubes {
        for &v in c {
            count[v] += 1;
        }
    }
    if count.iter().any(|&k| k != 2) {
        return Err(err("cubes do not cover every vertex exactly twice"));
    }
    Ok(cubes)
}

fn generated_order(mul: &[Vec<usize>], gens: &[usize]) -> usize {
    let mut seen = vec![false; mul.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut count = 1;
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = mul[g][x];
            if !seen[y] {
                seen[y] = true;
                count += 1;
                queue.push_back(y);
            }
        }
    }
    count
}

impl GroupData {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn class_representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn power(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul[g][acc])
    }

    /// Order of the subgroup generated by `gens`.
    pub fn generated_order(&self, gens: &[usize]) -> usize {
        generated_order(&self.mul, gens)
    }

    /// Elements fixing `x` under the given permutation action.
    pub fn stabilizer(&self, perm: impl Fn(usize) -> Vec<usize>, x: usize) -> Vec<usize> {
        (0..self.order()).filter(|&g| perm(g)[x] == x).collect()
    }

    /// Some element sending cube 0 to cube `k` (the power of the order-5 generator).
    pub fn cube_transporter(&self, k: usize) -> usize {
        self.power(self.order5, k)
    }

    fn self_check(&self, model: &DodecModel) -> Result<()> {
        if self.class_sizes() != [1, 15, 20, 12, 12] {
            return Err(err("class sizes are not (1, 15, 20, 12, 12)"));
        }
        let ant_darts: Vec<usize> = (0..model.darts.len()).map(|d| model.dart_antipode(d)).collect();
        let mut cube_images = Vec::new();
        for e in &self.elements {
            for d in 0..model.darts.len() {
                if e.darts[model.rotate_dart(d)] != model.rotate_dart(e.darts[d]) {
                    return Err(err("element does not preserve the rotation system"));
                }
                if e.darts[ant_darts[d]] != ant_darts[e.darts[d]] {
                    return Err(err("element does not commute with the antipode"));
                }
            }
            if e.darts == ant_darts {
                return Err(err("antipode is a rotation"));
            }
            if !is_even(&e.cubes) {
                return Err(err("odd permutation of cubes"));
            }
            cube_images.push(e.cubes.clone());
        }
        cube_images.sort();
        cube_images.dedup();
        if cube_images.len() != 60 {
            return Err(err("action on cubes is not faithful"));
        }
        for g in self.generators {
            if g == 0 {
                return Err(err("identity as generator"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (DodecModel, GroupData) {
        let m = DodecModel::build().unwrap();
        let g = rotation_group(&m).unwrap();
        (m, g)
    }

    #[test]
    fn sixty_elements_with_identity_first() {
        let (_, g) = setup();
        assert_eq!(g.order(), 60);
        assert!(g.elements[0].darts.iter().enumerate().all(|(i, &x)| i == x));
        assert_eq!(g.elements[0].class, 0);
    }

    #[test]
    fn class_sizes_and_orders() {
        let (_, g) = setup();
        assert_eq!(g.class_sizes(), vec![1, 15, 20, 12, 12]);
        let orders: Vec<usize> = g.class_representatives().iter().map(|&r| g.elements[r].order).collect();
        assert_eq!(orders, vec![1, 2, 3, 5, 5]);
    }

    #[test]
    fn traces_of_class_representatives() {
        // 1 + 2 cos(2 pi k / n) for the rotation angles of each class
        let (_, g) = setup();
        let phi = GoldenNumber::phi();
        let expected = vec![
            GoldenNumber::from_int(3),
            GoldenNumber::from_int(-1),
            GoldenNumber::from_int(0),
            phi.clone(),
            &GoldenNumber::one() - &phi,
        ];
        assert_eq!(g.class_traces, expected);
    }

    #[test]
    fn flag_transitive_and_free_on_darts() {
        let (m, g) = setup();
        let orbit: std::collections::BTreeSet<usize> = g.elements.iter().map(|e| e.darts[0]).collect();
        assert_eq!(orbit.len(), 60);
        for e in g.elements.iter().skip(1) {
            assert!((0..m.darts.len()).all(|d| e.darts[d] != d));
        }
    }

    #[test]
    fn antipode_commutes_with_every_element() {
        let (m, g) = setup();
        for e in &g.elements {
            for v in 0..20 {
                assert_eq!(e.vertices[m.antipode[v]], m.antipode[e.vertices[v]]);
            }
        }
    }

    #[test]
    fn cube_action_is_alternating_group() {
        let (_, g) = setup();
        let imgs: std::collections::BTreeSet<Vec<usize>> = g.elements.iter().map(|e| e.cubes.clone()).collect();
        assert_eq!(imgs.len(), 60);
        assert!(imgs.iter().all(|p| is_even(p)));
        assert_eq!(g.cubes.len(), 5);
    }

    #[test]
    fn axes_transitive_with_dihedral_stabilizer() {
        let (_, g) = setup();
        assert_eq!(g.axes.len(), 6);
        let orbit: std::collections::BTreeSet<usize> = g.elements.iter().map(|e| e.axes[0]).collect();
        assert_eq!(orbit.len(), 6);
        for a in 0..6 {
            assert_eq!(g.stabilizer(|x| g.elements[x].axes.clone(), a).len(), 10);
        }
    }

    #[test]
    fn generators_generate() {
        let (_, g) = setup();
        assert_eq!(g.generated_order(&g.generators), 60);
        assert_eq!(g.elements[g.generators[0]].order, 5);
        assert_eq!(g.elements[g.generators[1]].order, 2);
    }

    #[test]
    fn matrices_form_a_representation() {
        let (_, g) = setup();
        for a in [1, 7, 23, 41] {
            for b in [2, 13, 59] {
                assert_eq!(g.matrices[a].mul(&g.matrices[b]), g.matrices[g.mul[a][b]]);
            }
        }
    }

    #[test]
    fn parity_helper() {
        assert!(is_even(&[1, 2, 0]));
        assert!(!is_even(&[1, 0, 2]));
    }
}
