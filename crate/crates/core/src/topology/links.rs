//! Link variables `U(a, b)` between the sections at mesh vertices.

use num_complex::Complex64;

use crate::bundles::{
    check_overlap, graviton_fiber, helicity_power, polarization_vector, GravitonTensor, HelicityBundle, Mode, Sign,
    Tensor,
};
use crate::error::{Error, Result};
use crate::geometry::{Chart, SphereMesh, POLE_GUARD};

/// A line bundle sampled on a fixed mesh: one unit section per vertex.
pub trait LinkField: Sync {
    /// Helicity label of the bundle.
    fn helicity(&self) -> i32;

    /// Sum of the absolute helicities of all factors, used to bound the
    /// plaquette phase a face can carry.
    fn helicity_magnitude(&self) -> u32 {
        self.helicity().unsigned_abs()
    }

    /// `<s(a), s(b)>` for vertex indices `a`, `b`.
    fn link(&self, a: usize, b: usize) -> Result<Complex64>;
}

/// Which chart each vertex's section is taken in.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum ChartAssignment {
    /// North chart on the closed upper hemisphere, south chart below.
    #[default]
    Hemisphere,
    PerVertex(Vec<Chart>),
}

impl ChartAssignment {
    pub fn charts(&self, mesh: &SphereMesh) -> Result<Vec<Chart>> {
        match self {
            ChartAssignment::Hemisphere => Ok(mesh.vertices().iter().map(Chart::for_direction).collect()),
            ChartAssignment::PerVertex(c) => {
                if c.len() != mesh.vertices().len() {
                    return Err(Error::FiberMismatch(format!(
                        "{} charts for {} vertices",
                        c.len(),
                        mesh.vertices().len()
                    )));
                }
                for (v, chart) in mesh.vertices().iter().zip(c) {
                    if !chart.is_valid_at(v, POLE_GUARD) {
                        return Err(Error::ChartSingularity {
                            khat: v.0,
                            chart: *chart,
                        });
                    }
                }
                Ok(c.clone())
            }
        }
    }
}

enum VertexFibers {
    /// Photon `gamma_{+1}` vectors; links are raised to the helicity.
    Photon(Vec<crate::geometry::CVec3>),
    Tensor(Vec<Tensor>),
}

/// Sections of `gamma_h` at every vertex of a mesh.
pub struct BundleLinks {
    bundle: HelicityBundle,
    fibers: VertexFibers,
}

impl BundleLinks {
    pub fn new(bundle: HelicityBundle, mesh: &SphereMesh, charts: &ChartAssignment) -> Result<Self> {
        let charts = charts.charts(mesh)?;
        let points = mesh.vertices().iter().zip(&charts);
        let fibers = match bundle.mode() {
            Mode::OverlapPower => VertexFibers::Photon(
                points
                    .map(|(v, c)| polarization_vector(v, *c, Sign::Plus))
                    .collect::<Result<_>>()?,
            ),
            Mode::ExplicitTensor => {
                let n = bundle.h().unsigned_abs() as usize;
                VertexFibers::Tensor(
                    points
                        .map(|(v, c)| Ok(Tensor::power(&polarization_vector(v, *c, bundle.factor_sign())?, n)))
                        .collect::<Result<_>>()?,
                )
            }
        };
        Ok(BundleLinks { bundle, fibers })
    }

    pub fn bundle(&self) -> HelicityBundle {
        self.bundle
    }
}

impl LinkField for BundleLinks {
    fn helicity(&self) -> i32 {
        self.bundle.h()
    }

    fn link(&self, a: usize, b: usize) -> Result<Complex64> {
        let u = match &self.fibers {
            VertexFibers::Photon(v) => helicity_power(v[a].hdot(&v[b]), self.bundle.h()),
            VertexFibers::Tensor(t) => t[a].inner(&t[b]),
        };
        check_overlap(u)
    }
}

/// Graviton sections `v (x) v` stored as explicit 3x3 matrices.
pub struct GravitonLinks {
    sign: Sign,
    fibers: Vec<GravitonTensor>,
}

impl GravitonLinks {
    pub fn new(sign: Sign, mesh: &SphereMesh, charts: &ChartAssignment) -> Result<Self> {
        let charts = charts.charts(mesh)?;
        let fibers = mesh
            .vertices()
            .iter()
            .zip(&charts)
            .map(|(v, c)| graviton_fiber(v, *c, sign))
            .collect::<Result<_>>()?;
        Ok(GravitonLinks { sign, fibers })
    }

    pub fn fibers(&self) -> &[GravitonTensor] {
        &self.fibers
    }
}

impl LinkField for GravitonLinks {
    fn helicity(&self) -> i32 {
        2 * self.sign.value()
    }

    fn link(&self, a: usize, b: usize) -> Result<Complex64> {
        check_overlap(self.fibers[a].inner(&self.fibers[b]))
    }
}

/// Tensor product of two line bundles: links multiply.
pub struct ProductLinks<'a> {
    pub left: &'a dyn LinkField,
    pub right: &'a dyn LinkField,
}

impl LinkField for ProductLinks<'_> {
    fn helicity(&self) -> i32 {
        self.left.helicity() + self.right.helicity()
    }

    fn helicity_magnitude(&self) -> u32 {
        self.left.helicity_magnitude() + self.right.helicity_magnitude()
    }

    fn link(&self, a: usize, b: usize) -> Result<Complex64> {
        check_overlap(self.left.link(a, b)? * self.right.link(a, b)?)
    }
}

/// Multiplies each vertex's section by its own unit phase.
pub struct GaugeTransformed<'a> {
    pub inner: &'a dyn LinkField,
    pub phases: Vec<Complex64>,
}

impl LinkField for GaugeTransformed<'_> {
    fn helicity(&self) -> i32 {
        self.inner.helicity()
    }

    fn helicity_magnitude(&self) -> u32 {
        self.inner.helicity_magnitude()
    }

    fn link(&self, a: usize, b: usize) -> Result<Complex64> {
        Ok(self.phases[a].conj() * self.phases[b] * self.inner.link(a, b)?)
    }
}
