use crate::arith::GoldenNumber;

pub type Vec3 = [GoldenNumber; 3];

/// 3x3 matrix over Q(sqrt 5), row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat3(pub [[GoldenNumber; 3]; 3]);

pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn neg(a: &Vec3) -> Vec3 {
    [-&a[0], -&a[1], -&a[2]]
}

pub fn dot(a: &Vec3, b: &Vec3) -> GoldenNumber {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [&(&a[1] * &b[2]) - &(&a[2] * &b[1]), &(&a[2] * &b[0]) - &(&a[0] * &b[2]), &(&a[0] * &b[1]) - &(&a[1] * &b[0])]
}

/// `det[a, b, c]` with the vectors as columns.
pub fn triple(a: &Vec3, b: &Vec3, c: &Vec3) -> GoldenNumber {
    dot(&cross(a, b), c)
}

pub fn norm2(a: &Vec3) -> GoldenNumber {
    dot(a, a)
}

impl Mat3 {
    pub fn from_columns(a: &Vec3, b: &Vec3, c: &Vec3) -> Mat3 {
        Mat3(std::array::from_fn(|i| [a[i].clone(), b[i].clone(), c[i].clone()]))
    }

    pub fn identity() -> Mat3 {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| GoldenNumber::from_int((i == j) as i64))))
    }

    pub fn det(&self) -> GoldenNumber {
        let m = &self.0;
        let col = |j: usize| [m[0][j].clone(), m[1][j].clone(), m[2][j].clone()];
        triple(&col(0), &col(1), &col(2))
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].clone())))
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).fold(GoldenNumber::zero(), |acc, k| &acc + &(&self.0[i][k] * &o.0[k][j])))
        }))
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        std::array::from_fn(|i| (0..3).fold(GoldenNumber::zero(), |acc, k| &acc + &(&self.0[i][k] * &v[k])))
    }

    pub fn trace(&self) -> GoldenNumber {
        &(&self.0[0][0] + &self.0[1][1]) + &self.0[2][2]
    }

    pub fn inverse(&self) -> Option<Mat3> {
        let d = self.det();
        let dinv = d.inverse().ok()?;
        let m = &self.0;
        let cof = |i: usize, j: usize| {
            let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
            let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
            &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0])
        };
        // inverse = adj / det, adj = cofactor^T
        Some(Mat3(std::array::from_fn(|i| std::array::from_fn(|j| &cof(j, i) * &dinv))))
    }
}
