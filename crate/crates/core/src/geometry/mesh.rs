//! Closed, outward-oriented meshes of the unit sphere of momentum directions.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::linalg::Vec3;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum MeshSpec {
    /// Latitude-longitude grid: `n_theta` polar bands, `n_phi` azimuthal
    /// segments, quads in the interior and triangle fans at both poles.
    LatLon { n_theta: usize, n_phi: usize },
    /// Subdivided icosahedron.
    Icosphere { level: usize },
}

impl Default for MeshSpec {
    fn default() -> Self {
        MeshSpec::LatLon {
            n_theta: 64,
            n_phi: 128,
        }
    }
}

impl fmt::Display for MeshSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeshSpec::LatLon { n_theta, n_phi } => write!(f, "latlon:{n_theta}x{n_phi}"),
            MeshSpec::Icosphere { level } => write!(f, "ico:{level}"),
        }
    }
}

impl FromStr for MeshSpec {
    type Err = String;

    /// `latlon:NxM` or `ico:L`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (family, params) = s
            .split_once(':')
            .ok_or_else(|| format!("mesh spec `{s}` must look like latlon:NxM or ico:L"))?;
        match family {
            "latlon" => {
                let (a, b) = params
                    .split_once('x')
                    .ok_or_else(|| format!("latlon mesh needs NxM, got `{params}`"))?;
                let n_theta = a.parse().map_err(|e| format!("bad n_theta `{a}`: {e}"))?;
                let n_phi = b.parse().map_err(|e| format!("bad n_phi `{b}`: {e}"))?;
                Ok(MeshSpec::LatLon { n_theta, n_phi })
            }
            "ico" | "icosphere" => {
                let level = params
                    .parse()
                    .map_err(|e| format!("bad icosphere level `{params}`: {e}"))?;
                Ok(MeshSpec::Icosphere { level })
            }
            other => Err(format!("unknown mesh family `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereMesh {
    spec: MeshSpec,
    vertices: Vec<Vec3>,
    faces: Vec<Vec<usize>>,
    /// Area of the smooth sphere patch each face discretizes.
    cell_areas: Vec<f64>,
}

#[derive(Serialize)]
struct MeshJson<'a> {
    vertices: Vec<[f64; 3]>,
    faces: &'a [Vec<usize>],
}

pub fn build_mesh(spec: MeshSpec) -> Result<SphereMesh> {
    let mesh = match spec {
        MeshSpec::LatLon { n_theta, n_phi } => latlon(n_theta, n_phi)?,
        MeshSpec::Icosphere { level } => icosphere(level)?,
    };
    mesh.audit()?;
    Ok(mesh)
}

fn latlon(n_theta: usize, n_phi: usize) -> Result<SphereMesh> {
    if n_theta < 4 || n_phi < 8 {
        return Err(Error::ResolutionTooLow(format!(
            "latlon needs n_theta >= 4 and n_phi >= 8, got {n_theta}x{n_phi}"
        )));
    }
    let mut vertices = Vec::with_capacity(2 + (n_theta - 1) * n_phi);
    vertices.push(Vec3::new(0.0, 0.0, 1.0));
    let theta = |i: usize| i as f64 * PI / n_theta as f64;
    let dphi = 2.0 * PI / n_phi as f64;
    for i in 1..n_theta {
        let (st, ct) = theta(i).sin_cos();
        for j in 0..n_phi {
            let (sp, cp) = (j as f64 * dphi).sin_cos();
            vertices.push(Vec3::new(st * cp, st * sp, ct));
        }
    }
    vertices.push(Vec3::new(0.0, 0.0, -1.0));
    let south = vertices.len() - 1;
    let ring = |i: usize, j: usize| 1 + (i - 1) * n_phi + j % n_phi;

    let cap = dphi * (1.0 - theta(1).cos());
    let mut faces = Vec::with_capacity(n_theta * n_phi);
    let mut cell_areas = Vec::with_capacity(n_theta * n_phi);
    for j in 0..n_phi {
        faces.push(vec![0, ring(1, j), ring(1, j + 1)]);
        cell_areas.push(cap);
    }
    for i in 1..n_theta - 1 {
        let band = dphi * (theta(i).cos() - theta(i + 1).cos());
        for j in 0..n_phi {
            faces.push(vec![ring(i, j), ring(i + 1, j), ring(i + 1, j + 1), ring(i, j + 1)]);
            cell_areas.push(band);
        }
    }
    for j in 0..n_phi {
        faces.push(vec![south, ring(n_theta - 1, j + 1), ring(n_theta - 1, j)]);
        cell_areas.push(cap);
    }
    Ok(SphereMesh {
        spec: MeshSpec::LatLon { n_theta, n_phi },
        vertices,
        faces,
        cell_areas,
    })
}

fn icosphere(level: usize) -> Result<SphereMesh> {
    if level < 1 {
        return Err(Error::ResolutionTooLow(format!(
            "icosphere needs level >= 1, got {level}"
        )));
    }
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut vertices: Vec<Vec3> = [
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ]
    .iter()
    .map(|v| Vec3(*v).normalized())
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for f in faces.iter_mut() {
        let [a, b, c] = f.map(|i| vertices[i]);
        if a.dot(&b.cross(&c)) < 0.0 {
            f.swap(1, 2);
        }
    }
    for _ in 0..level {
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, verts: &mut Vec<Vec3>| {
            let key = (a.min(b), a.max(b));
            *midpoints.entry(key).or_insert_with(|| {
                verts.push((verts[a] + verts[b]).normalized());
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = mid(a, b, &mut vertices);
            let bc = mid(b, c, &mut vertices);
            let ca = mid(c, a, &mut vertices);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    let faces: Vec<Vec<usize>> = faces.into_iter().map(|f| f.to_vec()).collect();
    let cell_areas = faces
        .iter()
        .map(|f| polygon_solid_angle(f.iter().map(|&i| vertices[i])))
        .collect();
    Ok(SphereMesh {
        spec: MeshSpec::Icosphere { level },
        vertices,
        faces,
        cell_areas,
    })
}

/// Solid angle of the geodesic triangle `(a, b, c)` on the unit sphere
/// (Van Oosterom-Strackee). Positive for counterclockwise order seen from
/// outside.
pub fn triangle_solid_angle(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    let num = a.dot(&b.cross(c));
    let den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    2.0 * num.atan2(den)
}

/// Solid angle of a geodesic polygon, fanned from its first vertex.
pub fn polygon_solid_angle(vertices: impl IntoIterator<Item = Vec3>) -> f64 {
    let v: Vec<Vec3> = vertices.into_iter().collect();
    (1..v.len() - 1)
        .map(|m| triangle_solid_angle(&v[0], &v[m], &v[m + 1]))
        .sum()
}

impl SphereMesh {
    pub fn spec(&self) -> MeshSpec {
        self.spec
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn cell_area(&self, face: usize) -> f64 {
        self.cell_areas[face]
    }

    pub fn face_solid_angle(&self, face: usize) -> f64 {
        polygon_solid_angle(self.faces[face].iter().map(|&i| self.vertices[i]))
    }

    pub fn max_face_solid_angle(&self) -> f64 {
        (0..self.faces.len())
            .map(|f| self.face_solid_angle(f).abs())
            .fold(0.0, f64::max)
    }

    /// Number of distinct undirected edges.
    pub fn edge_count(&self) -> usize {
        self.directed_edges().len() / 2
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    fn directed_edges(&self) -> HashMap<(usize, usize), usize> {
        let mut edges = HashMap::new();
        for f in &self.faces {
            for m in 0..f.len() {
                *edges.entry((f[m], f[(m + 1) % f.len()])).or_insert(0) += 1;
            }
        }
        edges
    }

    /// Closed, consistently oriented, unit vertices, outward faces.
    pub fn audit(&self) -> Result<()> {
        for (i, v) in self.vertices.iter().enumerate() {
            if (v.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::MeshAudit(format!("vertex {i} has norm {}", v.norm())));
            }
        }
        self.audit_closure()?;
        if let Some(f) = (0..self.faces.len()).find(|&f| self.face_solid_angle(f) <= 0.0) {
            return Err(Error::MeshAudit(format!("face {f} is not outward oriented")));
        }
        Ok(())
    }

    /// Every directed edge is traversed once, and its reverse once.
    pub fn audit_closure(&self) -> Result<()> {
        let edges = self.directed_edges();
        for (&(a, b), &count) in &edges {
            if count != 1 {
                return Err(Error::MeshAudit(format!("edge {a}->{b} traversed {count} times")));
            }
            if edges.get(&(b, a)) != Some(&1) {
                return Err(Error::MeshAudit(format!("edge {a}->{b} has no opposite partner")));
            }
        }
        Ok(())
    }

    /// Same mesh with every face traversed backwards. The result is still
    /// closed but its faces point inward.
    pub fn reversed(&self) -> SphereMesh {
        let mut m = self.clone();
        for f in m.faces.iter_mut() {
            f.reverse();
        }
        m
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MeshJson {
            vertices: self.vertices.iter().map(|v| v.0).collect(),
            faces: &self.faces,
        })
        .expect("mesh serializes")
    }
}
