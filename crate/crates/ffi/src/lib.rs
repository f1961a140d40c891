//! C interface to the helicity core.
//!
//! Every fallible entry point returns a [`HelStatus`]. On failure a message is
//! kept per thread and can be read with [`hel_last_error`]. Meshes are opaque
//! handles owned by the caller and released with [`hel_mesh_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use helicity::bundles::{overlap_hemisphere, HelicityBundle};
use helicity::geometry::{build_mesh, MeshSpec, SphereMesh, Vec3};
use helicity::poincare::measure_helicity;
use helicity::topology::{chern_clutching, chern_lattice, ChernReport, Method};
use helicity::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HelStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ZeroMomentum = 3,
    ChartSingularity = 4,
    ResolutionTooLow = 5,
    MeshAudit = 6,
    ModeMismatch = 7,
    FiberMismatch = 8,
    DegenerateOverlap = 9,
    AdmissibilityViolation = 10,
    AliasingRisk = 11,
    TooFewSamples = 12,
    NotPhotonMode = 13,
    InvalidLorentz = 14,
    NonLinearPhase = 15,
    Panic = 99,
}

impl From<&Error> for HelStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::ZeroMomentum { .. } => HelStatus::ZeroMomentum,
            Error::ChartSingularity { .. } => HelStatus::ChartSingularity,
            Error::ResolutionTooLow(_) => HelStatus::ResolutionTooLow,
            Error::MeshAudit(_) => HelStatus::MeshAudit,
            Error::ModeMismatch(_) => HelStatus::ModeMismatch,
            Error::FiberMismatch(_) => HelStatus::FiberMismatch,
            Error::DegenerateOverlap { .. } => HelStatus::DegenerateOverlap,
            Error::AdmissibilityViolation { .. } => HelStatus::AdmissibilityViolation,
            Error::AliasingRisk { .. } => HelStatus::AliasingRisk,
            Error::TooFewSamples { .. } => HelStatus::TooFewSamples,
            Error::NotPhotonMode { .. } => HelStatus::NotPhotonMode,
            Error::InvalidLorentz(_) => HelStatus::InvalidLorentz,
            Error::NonLinearPhase { .. } => HelStatus::NonLinearPhase,
        }
    }
}

/// Which invariant produced a [`HelChernReport`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HelMethod {
    Lattice = 0,
    Clutching = 1,
}

/// Result of a Chern number computation.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelChernReport {
    pub h: i32,
    pub method: HelMethod,
    pub chern: i64,
    pub raw_sum: f64,
    pub integer_residual: f64,
    pub max_plaquette_phase: f64,
    /// Number of faces (lattice) or loop samples (clutching).
    pub samples: usize,
}

/// Opaque sphere mesh.
pub struct HelMesh(SphereMesh);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: HelStatus, msg: impl Into<String>) -> HelStatus {
    set_error(msg.into());
    status
}

fn guard(f: impl FnOnce() -> Result<(), HelStatus>) -> HelStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HelStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(HelStatus::Panic, format!("internal panic: {msg}"))
        }
    }
}

fn core(e: Error) -> HelStatus {
    fail(HelStatus::from(&e), e.to_string())
}

unsafe fn vec3(p: *const f64, name: &str) -> Result<Vec3, HelStatus> {
    if p.is_null() {
        return Err(fail(HelStatus::NullPointer, format!("{name} is null")));
    }
    let s = std::slice::from_raw_parts(p, 3);
    let v = Vec3::new(s[0], s[1], s[2]);
    if !s.iter().all(|x| x.is_finite()) {
        return Err(fail(HelStatus::InvalidArgument, format!("{name} is not finite")));
    }
    Ok(v)
}

unsafe fn write<T>(out: *mut T, value: T, name: &str) -> Result<(), HelStatus> {
    if out.is_null() {
        return Err(fail(HelStatus::NullPointer, format!("{name} is null")));
    }
    out.write(value);
    Ok(())
}

fn report(r: ChernReport, faces: usize) -> HelChernReport {
    HelChernReport {
        h: r.h,
        method: match r.method {
            Method::LatticeFieldStrength => HelMethod::Lattice,
            Method::ClutchingWinding => HelMethod::Clutching,
        },
        chern: r.chern,
        raw_sum: r.raw_sum,
        integer_residual: r.integer_residual,
        max_plaquette_phase: r.max_plaquette_phase,
        samples: r.samples.unwrap_or(faces),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hel_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(s) => s,
        Err(_) => panic!("version string"),
    };
    VERSION.as_ptr()
}

/// Message for the last failed call on this thread, or NULL.
///
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hel_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

fn new_mesh(spec: MeshSpec, out: *mut *mut HelMesh) -> HelStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(HelStatus::NullPointer, "out is null"));
        }
        unsafe { out.write(ptr::null_mut()) };
        let mesh = build_mesh(spec).map_err(core)?;
        unsafe { out.write(Box::into_raw(Box::new(HelMesh(mesh)))) };
        Ok(())
    })
}

/// Build a latitude-longitude mesh. Free it with `hel_mesh_free`.
#[no_mangle]
pub extern "C" fn hel_mesh_latlon(n_theta: usize, n_phi: usize, out: *mut *mut HelMesh) -> HelStatus {
    new_mesh(MeshSpec::LatLon { n_theta, n_phi }, out)
}

/// Build a subdivided icosahedron. Free it with `hel_mesh_free`.
#[no_mangle]
pub extern "C" fn hel_mesh_icosphere(level: usize, out: *mut *mut HelMesh) -> HelStatus {
    new_mesh(MeshSpec::Icosphere { level }, out)
}

/// Release a mesh. NULL is ignored.
///
/// # Safety
/// `mesh` must come from a mesh constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hel_mesh_free(mesh: *mut HelMesh) {
    if !mesh.is_null() {
        drop(Box::from_raw(mesh));
    }
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `mesh` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hel_mesh_vertex_count(mesh: *const HelMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.0.vertices().len())
}

/// Number of faces, or 0 for NULL.
///
/// # Safety
/// `mesh` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hel_mesh_face_count(mesh: *const HelMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.0.faces().len())
}

/// Lattice Chern number of the helicity-`h` bundle on `mesh`.
///
/// # Safety
/// `mesh` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hel_chern_lattice(h: i32, mesh: *const HelMesh, out: *mut HelChernReport) -> HelStatus {
    guard(|| {
        let mesh = mesh
            .as_ref()
            .ok_or_else(|| fail(HelStatus::NullPointer, "mesh is null"))?;
        let r = chern_lattice(h, &mesh.0).map_err(core)?;
        write(out, report(r, mesh.0.faces().len()), "out")
    })
}

/// Chern number from the winding of the equatorial transition function.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hel_chern_clutching(h: i32, samples: usize, out: *mut HelChernReport) -> HelStatus {
    guard(|| {
        let r = chern_clutching(h, samples).map_err(core)?;
        write(out, report(r, 0), "out")
    })
}

/// Link variable between directions `p` and `q` (3 doubles each), using
/// hemisphere charts.
///
/// # Safety
/// `p` and `q` must point to 3 doubles; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hel_overlap(h: i32, p: *const f64, q: *const f64, re: *mut f64, im: *mut f64) -> HelStatus {
    guard(|| {
        let p = vec3(p, "p")?;
        let q = vec3(q, "q")?;
        if re.is_null() || im.is_null() {
            return Err(fail(HelStatus::NullPointer, "output is null"));
        }
        let u = overlap_hemisphere(&HelicityBundle::power(h), &p, &q).map_err(core)?;
        write(re, u.re, "re")?;
        write(im, u.im, "im")
    })
}

/// Helicity read off from the rotation phase about `khat`.
///
/// # Safety
/// `khat` must point to 3 doubles and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn hel_measure_helicity(h: i32, khat: *const f64, out: *mut i32) -> HelStatus {
    guard(|| {
        let k = vec3(khat, "khat")?;
        let m = measure_helicity(&HelicityBundle::power(h), &k).map_err(core)?;
        write(out, m, "out")
    })
}
