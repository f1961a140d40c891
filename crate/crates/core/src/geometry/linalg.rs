//! Fixed-size real and complex vectors and matrices.
//!
//! Everything here is 3- or 4-dimensional, so the types are plain arrays
//! with the handful of operations the rest of the crate needs.

use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3(pub [f64; 3]);

pub const X_HAT: Vec3 = Vec3([1.0, 0.0, 0.0]);
pub const Y_HAT: Vec3 = Vec3([0.0, 1.0, 0.0]);
pub const Z_HAT: Vec3 = Vec3([0.0, 0.0, 1.0]);

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }
    pub fn y(&self) -> f64 {
        self.0[1]
    }
    pub fn z(&self) -> f64 {
        self.0[2]
    }

    pub fn dot(&self, o: &Vec3) -> f64 {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = o.0;
        Vec3([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(&self) -> Vec3 {
        *self * (1.0 / self.norm())
    }

    /// Angle between two nonzero vectors, accurate near 0 and pi.
    pub fn angle_to(&self, o: &Vec3) -> f64 {
        self.cross(o).norm().atan2(self.dot(o))
    }

    pub fn complexify(&self) -> CVec3 {
        CVec3(self.0.map(|x| Complex64::new(x, 0.0)))
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3(self.0.map(|x| -x))
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3(self.0.map(|x| x * s))
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Complex 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CVec3(pub [Complex64; 3]);

impl CVec3 {
    /// `a + i b` for real `a`, `b`.
    pub fn from_re_im(re: &Vec3, im: &Vec3) -> Self {
        CVec3([0, 1, 2].map(|i| Complex64::new(re.0[i], im.0[i])))
    }

    /// Hermitian product, conjugate-linear in `self`.
    pub fn hdot(&self, o: &CVec3) -> Complex64 {
        self.0[0].conj() * o.0[0] + self.0[1].conj() * o.0[1] + self.0[2].conj() * o.0[2]
    }

    /// Bilinear product without conjugation.
    pub fn dot(&self, o: &CVec3) -> Complex64 {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    /// Bilinear contraction with a real vector, `k . E`.
    pub fn dot_real(&self, k: &Vec3) -> Complex64 {
        self.0[0] * k.0[0] + self.0[1] * k.0[1] + self.0[2] * k.0[2]
    }

    /// `k x E` for real `k`.
    pub fn cross_real_left(&self, k: &Vec3) -> CVec3 {
        let [e0, e1, e2] = self.0;
        let [k0, k1, k2] = k.0;
        CVec3([k1 * e2 - k2 * e1, k2 * e0 - k0 * e2, k0 * e1 - k1 * e0])
    }

    pub fn norm(&self) -> f64 {
        self.hdot(self).re.sqrt()
    }

    pub fn scale(&self, s: Complex64) -> CVec3 {
        CVec3(self.0.map(|x| x * s))
    }

    pub fn scale_re(&self, s: f64) -> CVec3 {
        CVec3(self.0.map(|x| x * s))
    }

    pub fn conj(&self) -> CVec3 {
        CVec3(self.0.map(|x| x.conj()))
    }

    pub fn add(&self, o: &CVec3) -> CVec3 {
        CVec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn sub(&self, o: &CVec3) -> CVec3 {
        CVec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Real 3x3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn from_columns(c0: &Vec3, c1: &Vec3, c2: &Vec3) -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            m[i] = [c0.0[i], c1.0[i], c2.0[i]];
        }
        Mat3(m)
    }

    pub fn column(&self, j: usize) -> Vec3 {
        Vec3([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn transpose(&self) -> Mat3 {
        let mut t = [[0.0; 3]; 3];
        for (i, row) in self.0.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t[j][i] = *v;
            }
        }
        Mat3(t)
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        Vec3(self.0.map(|row| row[0] * v.0[0] + row[1] * v.0[1] + row[2] * v.0[2]))
    }

    pub fn mul_cvec(&self, v: &CVec3) -> CVec3 {
        CVec3(self.0.map(|row| v.0[0] * row[0] + v.0[1] * row[1] + v.0[2] * row[2]))
    }

    pub fn mul_mat(&self, o: &Mat3) -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|l| self.0[i][l] * o.0[l][j]).sum();
            }
        }
        Mat3(m)
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Largest entry of `|M^T M - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let p = self.transpose().mul_mat(self);
        max_abs_diff3(&p, &Mat3::IDENTITY)
    }
}

pub fn max_abs_diff3(a: &Mat3, b: &Mat3) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            d = d.max((a.0[i][j] - b.0[i][j]).abs());
        }
    }
    d
}

/// Real 4x4 matrix, row-major, index 0 = time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat4(pub [[f64; 4]; 4]);

/// Minkowski metric, signature (+,-,-,-).
pub const METRIC: Mat4 = Mat4([
    [1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0],
    [0.0, 0.0, -1.0, 0.0],
    [0.0, 0.0, 0.0, -1.0],
]);

impl Mat4 {
    pub const IDENTITY: Mat4 = Mat4([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]);

    pub fn transpose(&self) -> Mat4 {
        let mut t = [[0.0; 4]; 4];
        for (i, row) in self.0.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t[j][i] = *v;
            }
        }
        Mat4(t)
    }

    pub fn mul_mat(&self, o: &Mat4) -> Mat4 {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..4).map(|l| self.0[i][l] * o.0[l][j]).sum();
            }
        }
        Mat4(m)
    }

    pub fn mul_vec(&self, v: &[f64; 4]) -> [f64; 4] {
        self.0.map(|row| (0..4).map(|j| row[j] * v[j]).sum())
    }

    pub fn max_abs_diff(&self, o: &Mat4) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.0[i][j] - o.0[i][j]).abs());
            }
        }
        d
    }

    /// Spatial 3x3 block.
    pub fn spatial(&self) -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[i + 1][j + 1];
            }
        }
        Mat3(m)
    }

    pub fn det(&self) -> f64 {
        // Laplace expansion along row 0.
        let m = &self.0;
        (0..4)
            .map(|c| {
                let mut minor = [[0.0; 3]; 3];
                for r in 1..4 {
                    let mut cc = 0;
                    for j in 0..4 {
                        if j != c {
                            minor[r - 1][cc] = m[r][j];
                            cc += 1;
                        }
                    }
                }
                let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][c] * Mat3(minor).det()
            })
            .sum()
    }
}

/// Minkowski product `a^mu b_mu` with signature (+,-,-,-).
pub fn minkowski_dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}
