use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::lattice::ZGLattice;
use crate::arith::{GoldenNumber, Rational};
use crate::icosa::GroupData;
use crate::{Error, Result};

/// Names of the irreducible characters, in table order.
pub const IRREDUCIBLE_NAMES: [&str; 5] = ["triv", "V", "W", "I", "I'"];

/// A class function, one value per conjugacy class in the fixed class order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFunction {
    pub values: Vec<GoldenNumber>,
}

impl ClassFunction {
    pub fn from_ints(v: &[i64]) -> ClassFunction {
        ClassFunction { values: v.iter().map(|&x| GoldenNumber::from_int(x)).collect() }
    }

    pub fn add(&self, o: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&o.values).map(|(a, b)| a - b).collect() }
    }

    pub fn conjugate(&self) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(GoldenNumber::conjugate).collect() }
    }

    /// Integer values, when every value is a rational integer.
    pub fn as_ints(&self) -> Option<Vec<i64>> {
        self.values.iter().map(|v| v.to_integer().and_then(|x| x.to_i64())).collect()
    }

    pub fn degree(&self) -> GoldenNumber {
        self.values[0].clone()
    }

    /// `(1/|G|) Σ_c |c| χ(c) ψ(c)`; all characters of this group are real.
    pub fn inner(&self, o: &ClassFunction, class_sizes: &[usize]) -> GoldenNumber {
        let total: usize = class_sizes.iter().sum();
        let sum = self
            .values
            .iter()
            .zip(&o.values)
            .zip(class_sizes)
            .fold(GoldenNumber::zero(), |acc, ((a, b), &k)| &acc + &(&GoldenNumber::from_int(k as i64) * &(a * b)));
        let scale = GoldenNumber::from_rational(Rational::new(1.into(), (total as i64).into()));
        &sum * &scale
    }
}

pub fn character_of(lattice: &ZGLattice, group: &GroupData) -> ClassFunction {
    ClassFunction {
        values: group
            .class_representatives()
            .iter()
            .map(|&g| GoldenNumber::from_rational(Rational::from_integer(lattice.action[g].trace())))
            .collect(),
    }
}

/// Permutation character: number of fixed points of a class representative.
pub fn permutation_character(perm: impl Fn(usize) -> Vec<usize>, group: &GroupData) -> ClassFunction {
    ClassFunction {
        values: group
            .class_representatives()
            .iter()
            .map(|&g| {
                let p = perm(g);
                GoldenNumber::from_int(p.iter().enumerate().filter(|(i, &x)| *i == x).count() as i64)
            })
            .collect(),
    }
}

/// The irreducible characters triv, V, W, I, I′, built from the cube and axis permutations and
/// the traces of the exact rotation matrices.
pub fn irreducible_table(group: &GroupData) -> Vec<ClassFunction> {
    let ones = ClassFunction { values: vec![GoldenNumber::one(); 5] };
    let v = permutation_character(|g| group.elements[g].cubes.clone(), group).sub(&ones);
    let w = permutation_character(|g| group.elements[g].axes.clone(), group).sub(&ones);
    let i = ClassFunction { values: group.class_traces.clone() };
    let i2 = i.conjugate();
    vec![ones, v, w, i, i2]
}

/// Gram matrix of the table under the class-function inner product.
pub fn table_gram(table: &[ClassFunction], class_sizes: &[usize]) -> Vec<Vec<GoldenNumber>> {
    table.iter().map(|a| table.iter().map(|b| a.inner(b, class_sizes)).collect()).collect()
}

/// Multiplicities of the irreducibles in `chi`; fails unless they are nonnegative integers.
pub fn decompose_character(chi: &ClassFunction, group: &GroupData) -> Result<Vec<u64>> {
    let sizes = group.class_sizes();
    irreducible_table(group)
        .iter()
        .map(|irr| {
            let m = chi.inner(irr, &sizes);
            match m.to_integer() {
                Some(k) if !k.is_negative() => k.to_u64().ok_or_else(|| Error::NotACharacter("multiplicity overflow".into())),
                _ => Err(Error::NotACharacter(format!("multiplicity {m} is not a nonnegative integer"))),
            }
        })
        .collect()
}

pub fn is_orthonormal(table: &[ClassFunction], class_sizes: &[usize]) -> bool {
    table_gram(table, class_sizes)
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| if i == j { x.is_rational() && x.rat.is_one() } else { x.is_zero() }))
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
    fn faces_character_and_decomposition() {
        let g = group();
        let chi = permutation_character(|x| g.elements[x].faces.clone(), &g);
        assert_eq!(chi.as_ints().unwrap(), vec![12, 0, 0, 2, 2]);
        assert_eq!(decompose_character(&chi, &g).unwrap(), vec![1, 0, 1, 1, 1]);
    }

    #[test]
    fn characters_of_vo_and_wo() {
        let g = group();
        assert_eq!(character_of(&build_lattice(LatticeKind::Vo, &g), &g).as_ints().unwrap(), vec![4, 0, 1, -1, -1]);
        assert_eq!(character_of(&build_lattice(LatticeKind::Wo, &g), &g).as_ints().unwrap(), vec![5, 1, -1, 0, 0]);
        assert_eq!(decompose_character(&character_of(&build_lattice(LatticeKind::Vo, &g), &g), &g).unwrap(), vec![0, 1, 0, 0, 0]);
    }

    #[test]
    fn table_is_orthonormal() {
        let g = group();
        let t = irreducible_table(&g);
        assert!(is_orthonormal(&t, &g.class_sizes()));
        let squares = t.iter().fold(GoldenNumber::zero(), |acc, c| &acc + &(&c.degree() * &c.degree()));
        assert_eq!(squares, GoldenNumber::from_int(60));
        assert_eq!(t[3].values[3], GoldenNumber::phi());
        assert_eq!(t[3].values[..3].to_vec(), vec![GoldenNumber::from_int(3), GoldenNumber::from_int(-1), GoldenNumber::zero()]);
    }

    #[test]
    fn eo_splits_into_i_and_i_prime() {
        let g = group();
        let chi = character_of(&build_lattice(LatticeKind::Eo, &g), &g);
        assert_eq!(decompose_character(&chi, &g).unwrap(), vec![0, 0, 0, 1, 1]);
    }

    #[test]
    fn additivity() {
        let g = group();
        let a = character_of(&build_lattice(LatticeKind::Wedge2ZK, &g), &g);
        let b = character_of(&build_lattice(LatticeKind::Wo, &g), &g);
        let da = decompose_character(&a, &g).unwrap();
        let db = decompose_character(&b, &g).unwrap();
        let dsum = decompose_character(&a.add(&b), &g).unwrap();
        assert_eq!(dsum, da.iter().zip(&db).map(|(x, y)| x + y).collect::<Vec<_>>());
    }

    #[test]
    fn rejects_non_characters() {
        let g = group();
        let bad = ClassFunction::from_ints(&[2, 0, 0, 0, 0]);
        assert!(matches!(decompose_character(&bad, &g), Err(Error::NotACharacter(_))));
    }
}
