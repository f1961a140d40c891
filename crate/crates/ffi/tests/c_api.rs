use std::ffi::CStr;
use std::ptr;

use helicity_ffi::*;

fn last_error() -> Option<String> {
    let p = hel_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn mesh_latlon(n_theta: usize, n_phi: usize) -> *mut HelMesh {
    let mut m = ptr::null_mut();
    assert_eq!(hel_mesh_latlon(n_theta, n_phi, &mut m), HelStatus::Ok);
    assert!(!m.is_null());
    m
}

fn blank() -> HelChernReport {
    HelChernReport {
        h: 0,
        method: HelMethod::Lattice,
        chern: 0,
        raw_sum: 0.0,
        integer_residual: 0.0,
        max_plaquette_phase: 0.0,
        samples: 0,
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(hel_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn mesh_handles() {
    let m = mesh_latlon(8, 16);
    unsafe {
        assert_eq!(hel_mesh_face_count(m), 128);
        assert_eq!(hel_mesh_vertex_count(m), 16 * 7 + 2);
        hel_mesh_free(m);
        assert_eq!(hel_mesh_face_count(ptr::null()), 0);
        hel_mesh_free(ptr::null_mut());
    }
    let mut m = ptr::null_mut();
    assert_eq!(hel_mesh_icosphere(2, &mut m), HelStatus::Ok);
    unsafe {
        assert_eq!(hel_mesh_face_count(m), 20 * 16);
        hel_mesh_free(m);
    }
}

#[test]
fn bad_meshes_report_resolution() {
    let mut m = ptr::null_mut();
    assert_eq!(hel_mesh_latlon(2, 4, &mut m), HelStatus::ResolutionTooLow);
    assert!(m.is_null());
    assert!(last_error().unwrap().contains("resolution"));
    assert_eq!(hel_mesh_latlon(8, 16, ptr::null_mut()), HelStatus::NullPointer);
}

#[test]
fn lattice_and_clutching_agree() {
    let m = mesh_latlon(32, 64);
    for h in -3..=3 {
        let mut a = blank();
        let mut b = blank();
        unsafe {
            assert_eq!(hel_chern_lattice(h, m, &mut a), HelStatus::Ok);
            assert_eq!(hel_chern_clutching(h, 256, &mut b), HelStatus::Ok);
        }
        assert_eq!(a.chern, -2 * h as i64);
        assert_eq!(b.chern, a.chern);
        assert_eq!(a.method, HelMethod::Lattice);
        assert_eq!(b.method, HelMethod::Clutching);
        assert_eq!(a.samples, 32 * 64);
        assert_eq!(b.samples, 256);
        assert!(a.integer_residual < 1e-9);
    }
    unsafe { hel_mesh_free(m) };
    assert!(last_error().is_none());
}

#[test]
fn core_errors_map_to_status() {
    let m = mesh_latlon(16, 32);
    let mut r = blank();
    unsafe {
        assert_eq!(hel_chern_lattice(100, m, &mut r), HelStatus::AdmissibilityViolation);
        assert!(last_error().unwrap().contains("refine the mesh"));
        assert_eq!(hel_chern_lattice(1, ptr::null(), &mut r), HelStatus::NullPointer);
        assert_eq!(hel_chern_lattice(1, m, ptr::null_mut()), HelStatus::NullPointer);
        assert_eq!(hel_chern_clutching(10, 40, &mut r), HelStatus::TooFewSamples);
        hel_mesh_free(m);
    }
}

#[test]
fn overlap_and_helicity() {
    let p = [0.0, 0.0, 1.0];
    let q = [1.0, 0.0, 0.0];
    let (mut re, mut im) = (0.0, 0.0);
    unsafe {
        assert_eq!(hel_overlap(1, p.as_ptr(), p.as_ptr(), &mut re, &mut im), HelStatus::Ok);
        assert!((re - 1.0).abs() < 1e-15 && im.abs() < 1e-15);
        assert_eq!(hel_overlap(2, p.as_ptr(), q.as_ptr(), &mut re, &mut im), HelStatus::Ok);
        assert!(re.hypot(im) <= 1.0 + 1e-12);
        let bad = [f64::NAN, 0.0, 1.0];
        assert_eq!(
            hel_overlap(1, bad.as_ptr(), q.as_ptr(), &mut re, &mut im),
            HelStatus::InvalidArgument
        );
        assert_eq!(
            hel_overlap(1, ptr::null(), q.as_ptr(), &mut re, &mut im),
            HelStatus::NullPointer
        );

        let k = [1.0, 2.0, 2.0];
        for h in [-7, -1, 0, 1, 5] {
            let mut got = 99;
            assert_eq!(hel_measure_helicity(h, k.as_ptr(), &mut got), HelStatus::Ok);
            assert_eq!(got, h);
        }
        let zero = [0.0; 3];
        let mut got = 0;
        assert_eq!(
            hel_measure_helicity(1, zero.as_ptr(), &mut got),
            HelStatus::ZeroMomentum
        );
    }
}

#[test]
fn errors_are_per_thread() {
    let mut m = ptr::null_mut();
    assert_eq!(hel_mesh_latlon(2, 4, &mut m), HelStatus::ResolutionTooLow);
    std::thread::spawn(|| assert!(last_error().is_none())).join().unwrap();
    assert!(last_error().is_some());
}
