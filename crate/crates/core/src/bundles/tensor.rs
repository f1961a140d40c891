use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::geometry::{CVec3, Mat3, Vec3};

/// Dense complex tensor of rank `r` over C^3, stored row-major with
/// `3^r` entries. Rank 0 is a scalar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tensor {
    rank: usize,
    data: Vec<Complex64>,
}

impl Tensor {
    pub fn scalar(z: Complex64) -> Self {
        Tensor { rank: 0, data: vec![z] }
    }

    pub fn from_vector(v: &CVec3) -> Self {
        Tensor {
            rank: 1,
            data: v.0.to_vec(),
        }
    }

    /// `v (x) v (x) ... (x) v`, `n` factors.
    pub fn power(v: &CVec3, n: usize) -> Self {
        (0..n).fold(Tensor::scalar(Complex64::new(1.0, 0.0)), |t, _| t.outer(v))
    }

    /// Appends one more index carrying `v`.
    pub fn outer(&self, v: &CVec3) -> Tensor {
        let data = self.data.iter().flat_map(|a| v.0.iter().map(move |b| a * b)).collect();
        Tensor {
            rank: self.rank + 1,
            data,
        }
    }

    /// Row-major data of length `3^rank`.
    pub fn from_parts(rank: usize, data: Vec<Complex64>) -> Option<Self> {
        (data.len() == 3usize.pow(rank as u32)).then_some(Tensor { rank, data })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Full contraction, conjugating `self`.
    pub fn inner(&self, other: &Tensor) -> Complex64 {
        debug_assert_eq!(self.rank, other.rank);
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.sqrt()
    }

    pub fn scale(&self, z: Complex64) -> Tensor {
        Tensor {
            rank: self.rank,
            data: self.data.iter().map(|a| a * z).collect(),
        }
    }

    /// Applies `r` to every index.
    pub fn rotate(&self, r: &Mat3) -> Tensor {
        let mut data = self.data.clone();
        for axis in 0..self.rank {
            let inner = 3usize.pow((self.rank - 1 - axis) as u32);
            let outer = data.len() / (3 * inner);
            let mut next = vec![Complex64::new(0.0, 0.0); data.len()];
            for o in 0..outer {
                for i in 0..3 {
                    for n in 0..inner {
                        next[(o * 3 + i) * inner + n] = (0..3).map(|j| data[(o * 3 + j) * inner + n] * r.0[i][j]).sum();
                    }
                }
            }
            data = next;
        }
        Tensor { rank: self.rank, data }
    }

    /// Largest entry of `k` contracted into any one index.
    pub fn transversality_defect(&self, k: &Vec3) -> f64 {
        let mut worst: f64 = 0.0;
        for axis in 0..self.rank {
            let inner = 3usize.pow((self.rank - 1 - axis) as u32);
            let outer = self.data.len() / (3 * inner);
            for o in 0..outer {
                for n in 0..inner {
                    let c: Complex64 = (0..3).map(|j| self.data[(o * 3 + j) * inner + n] * k.0[j]).sum();
                    worst = worst.max(c.norm());
                }
            }
        }
        worst
    }

    /// Largest change under swapping any two adjacent indices.
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for axis in 0..self.rank.saturating_sub(1) {
            let inner = 3usize.pow((self.rank - 2 - axis) as u32);
            let outer = self.data.len() / (9 * inner);
            for o in 0..outer {
                for i in 0..3 {
                    for j in 0..3 {
                        for n in 0..inner {
                            let a = self.data[((o * 3 + i) * 3 + j) * inner + n];
                            let b = self.data[((o * 3 + j) * 3 + i) * inner + n];
                            worst = worst.max((a - b).norm());
                        }
                    }
                }
            }
        }
        worst
    }

    /// Trace over the first two indices (rank >= 2), as a max-abs defect.
    pub fn trace_defect(&self) -> f64 {
        if self.rank < 2 {
            return 0.0;
        }
        let inner = 3usize.pow((self.rank - 2) as u32);
        (0..inner)
            .map(|n| {
                (0..3)
                    .map(|i| self.data[(i * 3 + i) * inner + n])
                    .sum::<Complex64>()
                    .norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Tensor) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rotation_from_axis_angle, X_HAT, Y_HAT, Z_HAT};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn power_dimensions() {
        let v = CVec3::from_re_im(&X_HAT, &Y_HAT);
        for n in 0..=3 {
            let t = Tensor::power(&v, n);
            assert_eq!(t.rank(), n);
            assert_eq!(t.data().len(), 3usize.pow(n as u32));
        }
    }

    #[test]
    fn inner_factorizes_over_tensor_products() {
        let a = CVec3([c(0.3, 0.1), c(-0.2, 0.5), c(0.7, 0.0)]);
        let b = CVec3([c(0.1, -0.4), c(0.0, 0.2), c(-0.6, 0.3)]);
        let lhs = Tensor::from_vector(&a)
            .outer(&b)
            .inner(&Tensor::from_vector(&b).outer(&a));
        let rhs = a.hdot(&b) * b.hdot(&a);
        assert!((lhs - rhs).norm() < 1e-15);
    }

    #[test]
    fn rotation_acts_on_every_index() {
        let a = CVec3([c(0.3, 0.1), c(-0.2, 0.5), c(0.7, 0.0)]);
        let b = CVec3([c(0.1, -0.4), c(0.0, 0.2), c(-0.6, 0.3)]);
        let r = rotation_from_axis_angle(&Vec3::new(1.0, 1.0, 0.0).normalized(), 0.8);
        let rotated = Tensor::from_vector(&a).outer(&b).rotate(&r);
        let expected = Tensor::from_vector(&r.mul_cvec(&a)).outer(&r.mul_cvec(&b));
        assert!(rotated.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn defects_detect_asymmetry_and_longitudinal_parts() {
        let a = CVec3::from_re_im(&X_HAT, &Vec3::default());
        let b = CVec3::from_re_im(&Z_HAT, &Vec3::default());
        let t = Tensor::from_vector(&a).outer(&b);
        assert!((t.symmetry_defect() - 1.0).abs() < 1e-15);
        assert!((t.transversality_defect(&Z_HAT) - 1.0).abs() < 1e-15);
        assert_eq!(t.trace_defect(), 0.0);
    }
}
