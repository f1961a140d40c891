use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::polarization::{polarization_vector, Sign};
use super::tensor::Tensor;
use crate::error::Result;
use crate::geometry::{Chart, Mat3, MomentumPoint, Vec3};

/// Graviton polarization `t^{ij} = v^i v^j` built from one circular photon
/// polarization, embedded in the symmetric 3x3 complex matrices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GravitonTensor {
    pub t: [[Complex64; 3]; 3],
    pub k: MomentumPoint,
    pub sign: Sign,
}

pub fn graviton_fiber(khat: &Vec3, chart: Chart, sign: Sign) -> Result<GravitonTensor> {
    let k = MomentumPoint::from_direction(*khat)?;
    let v = polarization_vector(&k.direction(), chart, sign)?;
    let mut t = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = v.0[i] * v.0[j];
        }
    }
    Ok(GravitonTensor { t, k, sign })
}

impl GravitonTensor {
    pub fn symmetry_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.t[i][j] - self.t[j][i]).norm());
            }
        }
        d
    }

    /// Largest entry of `t . khat`.
    pub fn transversality_defect(&self) -> f64 {
        let k = self.k.direction();
        self.t
            .iter()
            .map(|row| (0..3).map(|j| row[j] * k.0[j]).sum::<Complex64>().norm())
            .fold(0.0, f64::max)
    }

    pub fn trace_defect(&self) -> f64 {
        (self.t[0][0] + self.t[1][1] + self.t[2][2]).norm()
    }

    /// Worst of the symmetric, transverse and traceless conditions.
    pub fn gauge_defect(&self) -> f64 {
        self.symmetry_defect()
            .max(self.transversality_defect())
            .max(self.trace_defect())
    }

    /// Frobenius product, conjugating `self`.
    pub fn inner(&self, other: &GravitonTensor) -> Complex64 {
        self.t
            .iter()
            .flatten()
            .zip(other.t.iter().flatten())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `R t R^T`, carrying the base point along.
    pub fn rotate(&self, r: &Mat3) -> Result<GravitonTensor> {
        let mut t = [[Complex64::new(0.0, 0.0); 3]; 3];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                for a in 0..3 {
                    for b in 0..3 {
                        *x += self.t[a][b] * (r.0[i][a] * r.0[j][b]);
                    }
                }
            }
        }
        Ok(GravitonTensor {
            t,
            k: MomentumPoint::new(r.mul_vec(&self.k.k()))?,
            sign: self.sign,
        })
    }

    /// Same matrix as a rank-2 [`Tensor`].
    pub fn to_tensor(&self) -> Tensor {
        Tensor::from_parts(2, self.t.iter().flatten().copied().collect()).expect("3x3 matrix has 9 entries")
    }
}
