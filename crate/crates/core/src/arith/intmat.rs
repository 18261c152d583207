use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize};

/// Integer column vector.
pub type IntVec = Vec<BigInt>;

pub fn int_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Dense integer matrix, row-major, arbitrary precision entries.
///
/// Vectors are columns and matrices act on the left throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, k: i64) -> Self {
        let mut m = IntMat::identity(n);
        m.scale_in_place(&BigInt::from(k));
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntMat { rows, cols, data: entries.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMat { rows: r, cols: c, data }
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        IntMat { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors; `rows` is needed when the list is empty.
    pub fn from_columns(rows: usize, columns: &[IntVec]) -> Self {
        let mut m = IntMat::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.data[i * columns.len() + j] = x.clone();
            }
        }
        m
    }

    pub fn column_vector(v: &[BigInt]) -> Self {
        IntMat { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn set_i64(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = BigInt::from(v);
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVec> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == IntMat::identity(self.rows)
    }

    pub fn trace(&self) -> BigInt {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> IntVec {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale_in_place(&mut self, k: &BigInt) {
        for x in &mut self.data {
            *x *= k;
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut m = self.clone();
        m.scale_in_place(&BigInt::from(k));
        m
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &IntMat) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut m = IntMat::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                m.data[i * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        m
    }

    /// `[self; other]`
    pub fn vstack(&self, other: &IntMat) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut m = IntMat::zeros(rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let cols: Vec<IntVec> = idx.iter().map(|&j| self.column(j)).collect();
        IntMat::from_columns(self.rows, &cols)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let t = s * k;
                self.data[dst * self.cols + j] += t;
            }
        }
    }

    /// col[dst] += k * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let t = s * k;
                self.data[i * self.cols + dst] += t;
            }
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -x;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -x;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = 1;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Rank over Q by fraction-free elimination; independent of the Smith machinery.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for c in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(p) = (rank..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(p, rank);
            for i in rank + 1..a.rows {
                for j in c + 1..a.cols {
                    let v = (a.get(i, j) * a.get(rank, c) - a.get(i, c) * a.get(rank, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, c, BigInt::zero());
            }
            prev = a.get(rank, c).clone();
            rank += 1;
        }
        rank
    }

    /// gcd of all entries (0 for the zero matrix).
    pub fn content(&self) -> BigInt {
        self.data.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Entries as i64 rows, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect()).collect()
    }

    /// Exact division of every entry; `None` if some entry is not divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<IntMat> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            let (q, r) = x.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            data.push(q);
        }
        Some(IntMat { rows: self.rows, cols: self.cols, data })
    }

    /// Column-stacked vectorisation (X_{ij} at index j*rows + i).
    pub fn vectorize(&self) -> IntVec {
        (0..self.cols).flat_map(|j| (0..self.rows).map(move |i| (i, j))).map(|(i, j)| self.get(i, j).clone()).collect()
    }

    pub fn unvectorize(rows: usize, cols: usize, v: &[BigInt]) -> IntMat {
        assert_eq!(v.len(), rows * cols);
        let mut m = IntMat::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m.set(i, j, v[j * rows + i].clone());
            }
        }
        m
    }

    pub fn pow(&self, mut e: u32) -> IntMat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = IntMat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl<'a> Mul<&'a IntMat> for &'a IntMat {
    type Output = IntMat;
    fn mul(self, o: &IntMat) -> IntMat {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product {:?} x {:?}", self.shape(), o.shape());
        let mut m = IntMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        *m.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        m
    }
}

impl<'a> Add<&'a IntMat> for &'a IntMat {
    type Output = IntMat;
    fn add(self, o: &IntMat) -> IntMat {
        assert_eq!(self.shape(), o.shape(), "shape mismatch in sum");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        IntMat { rows: self.rows, cols: self.cols, data }
    }
}

impl<'a> Sub<&'a IntMat> for &'a IntMat {
    type Output = IntMat;
    fn sub(self, o: &IntMat) -> IntMat {
        assert_eq!(self.shape(), o.shape(), "shape mismatch in difference");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        IntMat { rows: self.rows, cols: self.cols, data }
    }
}

impl Neg for &IntMat {
    type Output = IntMat;
    fn neg(self) -> IntMat {
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Serializes an integer as a JSON number when it fits in i64, otherwise as a decimal string.
pub fn serialize_int<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

/// Serde `serialize_with` helper for integer vectors.
pub fn serialize_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    JsonInts(v).serialize(s)
}

/// Rationals serialize as an integer when integral, otherwise as the string `"p/q"`.
pub fn serialize_rational<S: serde::Serializer>(x: &num_rational::BigRational, s: S) -> Result<S::Ok, S::Error> {
    if x.is_integer() {
        serialize_int(x.numer(), s)
    } else {
        s.serialize_str(&x.to_string())
    }
}

/// Serde adapter for integer vectors using [`serialize_int`] per entry.
pub struct JsonInts<'a>(pub &'a [BigInt]);

impl Serialize for JsonInts<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in self.0 {
            seq.serialize_element(&JsonInt(x))?;
        }
        seq.end()
    }
}

pub struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_int(self.0, s)
    }
}

/// Array-of-rows form.
impl Serialize for IntMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&JsonInts(self.row(i)))?;
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WireInt {
    Num(i64),
    Str(String),
}

impl<'de> Deserialize<'de> for IntMat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<WireInt>> = Vec::deserialize(d)?;
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(serde::de::Error::custom("ragged matrix rows"));
            }
            for x in row {
                data.push(match x {
                    WireInt::Num(v) => BigInt::from(v),
                    WireInt::Str(s) => s.parse().map_err(serde::de::Error::custom)?,
                });
            }
        }
        Ok(IntMat { rows: r, cols: c, data })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMat::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(&a * &b, IntMat::from_rows(&[vec![2, 1], vec![4, 3]]));
        assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
    }

    #[test]
    fn determinant() {
        let a = IntMat::from_rows(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]);
        assert_eq!(a.det(), BigInt::from(2 * (3 - 2) + (1 - 3)));
        let p = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(p.det(), BigInt::from(-1));
        assert_eq!(IntMat::zeros(3, 3).det(), BigInt::zero());
    }

    #[test]
    fn rank_over_q() {
        let a = IntMat::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(IntMat::zeros(2, 5).rank(), 0);
        assert_eq!(IntMat::identity(4).rank(), 4);
    }

    #[test]
    fn json_form_is_array_of_rows() {
        let mut a = IntMat::from_rows(&[vec![1, -2], vec![0, 5]]);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[[1,-2],[0,5]]");
        a.set(0, 0, BigInt::from(i64::MAX) * 4);
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.starts_with("[[\"36893488147419103228\""));
        let back: IntMat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn vectorize_roundtrip() {
        let a = IntMat::from_rows(&[vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(a.vectorize(), int_vec(&[1, 4, 2, 5, 3, 6]));
        assert_eq!(IntMat::unvectorize(2, 3, &a.vectorize()), a);
    }
}
