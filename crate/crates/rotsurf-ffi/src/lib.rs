//! C ABI over the rotsurf core: opaque profile and mesh handles, status
//! codes, and a thread-local message for the last error.
//!
//! The generated header lands in `include/rotsurf.h` at build time. All
//! functions are safe to call from any thread; handles must not be shared
//! across threads while being freed.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rotsurf::profile::{ProfileSolution, SurfaceSpec};
use rotsurf::spaceform::RotationKind;
use rotsurf::surface::{sample_mesh, Immersion, Projection, SurfaceMesh};
use rotsurf::Error;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotsurfStatus {
    Ok = 0,
    DomainError = 1,
    RangeError = 2,
    Infeasible = 3,
    NoSolution = 4,
    NoRoot = 5,
    Degenerate = 6,
    SingularPoint = 7,
    NullPointer = 8,
    InternalError = 9,
}

/// Ambient space form.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotsurfSpace {
    Sphere3 = 0,
    Hyperbolic3 = 1,
}

/// Rotation subgroup kind.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotsurfRotation {
    Elliptic = 0,
    Hyperbolic = 1,
    Parabolic = 2,
}

/// Curvature class of the requested surface.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotsurfClass {
    /// Constant mean curvature; `value` is H >= 0.
    Cmc = 0,
    /// Constant harmonic mean curvature; `value` is Hbar with |Hbar| >= 1.
    Chc = 1,
}

/// Opaque resolved profile handle.
pub struct RotsurfProfile {
    profile: ProfileSolution,
    immersion: Immersion,
}

/// Opaque mesh handle.
pub struct RotsurfMesh {
    mesh: SurfaceMesh,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> RotsurfStatus {
    match err {
        Error::Domain(_) | Error::FrameMismatch(_) | Error::Config(_) => {
            RotsurfStatus::DomainError
        }
        Error::Range(_) => RotsurfStatus::RangeError,
        Error::Infeasible { .. } => RotsurfStatus::Infeasible,
        Error::NoSolution(_) => RotsurfStatus::NoSolution,
        Error::NoRoot(_) => RotsurfStatus::NoRoot,
        Error::Degenerate(_) => RotsurfStatus::Degenerate,
        Error::Singular(_) => RotsurfStatus::SingularPoint,
        Error::Io(_) => RotsurfStatus::InternalError,
    }
}

fn guard<F: FnOnce() -> RotsurfStatus>(f: F) -> RotsurfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            RotsurfStatus::InternalError
        }
    }
}

/// Message describing the most recent error on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rotsurf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Solves the profile for a surface spec and returns an owned handle through
/// `out`. `value` is H for cmc specs and Hbar for chc specs.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn rotsurf_profile_solve(
    space: RotsurfSpace,
    rotation: RotsurfRotation,
    class: RotsurfClass,
    value: f64,
    c: f64,
    out: *mut *mut RotsurfProfile,
) -> RotsurfStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is null");
            return RotsurfStatus::NullPointer;
        }
        let rotation = match rotation {
            RotsurfRotation::Elliptic => RotationKind::Elliptic,
            RotsurfRotation::Hyperbolic => RotationKind::Hyperbolic,
            RotsurfRotation::Parabolic => RotationKind::Parabolic,
        };
        let spec = match (space, class) {
            (RotsurfSpace::Sphere3, RotsurfClass::Cmc) if rotation == RotationKind::Elliptic => {
                SurfaceSpec::cmc_s3(value, c)
            }
            (RotsurfSpace::Sphere3, _) => Err(Error::Domain(
                "S3 supports elliptic-rotation cmc surfaces only".into(),
            )),
            (RotsurfSpace::Hyperbolic3, RotsurfClass::Cmc) => {
                SurfaceSpec::cmc_h3(rotation, value, c)
            }
            (RotsurfSpace::Hyperbolic3, RotsurfClass::Chc) => {
                SurfaceSpec::chc_h3(rotation, value, c)
            }
        };
        let built = spec
            .and_then(|spec| ProfileSolution::for_spec(&spec))
            .and_then(|profile| Ok((profile.clone(), Immersion::new(profile)?)));
        match built {
            Ok((profile, immersion)) => {
                let handle = Box::new(RotsurfProfile { profile, immersion });
                unsafe { *out = Box::into_raw(handle) };
                RotsurfStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                unsafe { *out = ptr::null_mut() };
                status_of(&e)
            }
        }
    })
}

/// Frees a profile handle. Null is a no-op.
///
/// # Safety
/// `handle` must come from `rotsurf_profile_solve` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rotsurf_profile_free(handle: *mut RotsurfProfile) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Evaluates the coordinate functions r, psi, d at t. Output pointers may be
/// null to skip a component.
///
/// # Safety
/// `handle` must be a live profile handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn rotsurf_profile_eval(
    handle: *const RotsurfProfile,
    t: f64,
    r: *mut f64,
    psi: *mut f64,
    d: *mut f64,
) -> RotsurfStatus {
    guard(|| {
        let Some(p) = (unsafe { handle.as_ref() }) else {
            set_error("profile handle is null");
            return RotsurfStatus::NullPointer;
        };
        if !t.is_finite() {
            set_error("t must be finite");
            return RotsurfStatus::DomainError;
        }
        unsafe {
            if !r.is_null() {
                *r = p.profile.r(t);
            }
            if !psi.is_null() {
                *psi = p.profile.psi(t);
            }
            if !d.is_null() {
                *d = p.profile.d(t);
            }
        }
        RotsurfStatus::Ok
    })
}

/// Copies the resolved profile data: roots (radicand root first), elliptic
/// modulus, argument scale and the evaluable t-domain. Null outputs skip.
///
/// # Safety
/// `handle` must be a live profile handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn rotsurf_profile_info(
    handle: *const RotsurfProfile,
    root1: *mut f64,
    root2: *mut f64,
    modulus: *mut f64,
    scale: *mut f64,
    t_min: *mut f64,
    t_max: *mut f64,
) -> RotsurfStatus {
    guard(|| {
        let Some(p) = (unsafe { handle.as_ref() }) else {
            set_error("profile handle is null");
            return RotsurfStatus::NullPointer;
        };
        let (c1, c2) = p.profile.roots();
        let (lo, hi) = p.profile.domain();
        unsafe {
            if !root1.is_null() {
                *root1 = c1;
            }
            if !root2.is_null() {
                *root2 = c2;
            }
            if !modulus.is_null() {
                *modulus = p.profile.modulus().p();
            }
            if !scale.is_null() {
                *scale = p.profile.scale();
            }
            if !t_min.is_null() {
                *t_min = lo;
            }
            if !t_max.is_null() {
                *t_max = hi;
            }
        }
        RotsurfStatus::Ok
    })
}

/// Samples the surface on an ntheta x nt grid into an owned mesh handle.
/// `theta_range` and `t_range` are optional pointers to [lo, hi] pairs; null
/// selects the defaults (full turn / profile domain).
///
/// # Safety
/// `handle` must be a live profile handle; range pointers, when non-null,
/// must point to two doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rotsurf_mesh_generate(
    handle: *const RotsurfProfile,
    ntheta: usize,
    nt: usize,
    theta_range: *const f64,
    t_range: *const f64,
    out: *mut *mut RotsurfMesh,
) -> RotsurfStatus {
    guard(|| {
        let Some(p) = (unsafe { handle.as_ref() }) else {
            set_error("profile handle is null");
            return RotsurfStatus::NullPointer;
        };
        if out.is_null() {
            set_error("out pointer is null");
            return RotsurfStatus::NullPointer;
        }
        let theta = if theta_range.is_null() {
            None
        } else {
            let r = unsafe { std::slice::from_raw_parts(theta_range, 2) };
            Some((r[0], r[1]))
        };
        let t = if t_range.is_null() {
            None
        } else {
            let r = unsafe { std::slice::from_raw_parts(t_range, 2) };
            Some((r[0], r[1]))
        };
        let projection = Projection::default_for(&p.profile.spec().space_form);
        match sample_mesh(&p.immersion, ntheta, nt, theta, t, projection) {
            Ok(mesh) => {
                unsafe { *out = Box::into_raw(Box::new(RotsurfMesh { mesh })) };
                RotsurfStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                unsafe { *out = ptr::null_mut() };
                status_of(&e)
            }
        }
    })
}

/// Frees a mesh handle. Null is a no-op.
///
/// # Safety
/// `handle` must come from `rotsurf_mesh_generate` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rotsurf_mesh_free(handle: *mut RotsurfMesh) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Number of vertices in the mesh (0 for a null handle).
///
/// # Safety
/// `handle` must be null or a live mesh handle.
#[no_mangle]
pub unsafe extern "C" fn rotsurf_mesh_vertex_count(handle: *const RotsurfMesh) -> usize {
    unsafe { handle.as_ref() }.map_or(0, |m| m.mesh.vertices.len())
}

/// Number of quad faces in the mesh (0 for a null handle).
///
/// # Safety
/// `handle` must be null or a live mesh handle.
#[no_mangle]
pub unsafe extern "C" fn rotsurf_mesh_face_count(handle: *const RotsurfMesh) -> usize {
    unsafe { handle.as_ref() }.map_or(0, |m| m.mesh.faces.len())
}

/// Copies ambient vertex coordinates (4 doubles per vertex, row-major in
/// (t, theta)) into `out`, which holds `cap` doubles.
///
/// # Safety
/// `handle` must be a live mesh handle and `out` writable for `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn rotsurf_mesh_vertices(
    handle: *const RotsurfMesh,
    out: *mut f64,
    cap: usize,
) -> RotsurfStatus {
    guard(|| {
        let Some(m) = (unsafe { handle.as_ref() }) else {
            set_error("mesh handle is null");
            return RotsurfStatus::NullPointer;
        };
        let needed = m.mesh.vertices.len() * 4;
        if out.is_null() || cap < needed {
            set_error(&format!("vertex buffer needs {needed} doubles, got {cap}"));
            return RotsurfStatus::DomainError;
        }
        let buf = unsafe { std::slice::from_raw_parts_mut(out, needed) };
        for (i, v) in m.mesh.vertices.iter().enumerate() {
            buf[4 * i..4 * i + 4].copy_from_slice(&v.coords);
        }
        RotsurfStatus::Ok
    })
}

/// Copies the projected R3 copy (3 doubles per vertex) into `out`.
///
/// # Safety
/// `handle` must be a live mesh handle and `out` writable for `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn rotsurf_mesh_projected(
    handle: *const RotsurfMesh,
    out: *mut f64,
    cap: usize,
) -> RotsurfStatus {
    guard(|| {
        let Some(m) = (unsafe { handle.as_ref() }) else {
            set_error("mesh handle is null");
            return RotsurfStatus::NullPointer;
        };
        let needed = m.mesh.projected.len() * 3;
        if out.is_null() || cap < needed {
            set_error(&format!("projected buffer needs {needed} doubles, got {cap}"));
            return RotsurfStatus::DomainError;
        }
        let buf = unsafe { std::slice::from_raw_parts_mut(out, needed) };
        for (i, p) in m.mesh.projected.iter().enumerate() {
            buf[3 * i..3 * i + 3].copy_from_slice(p);
        }
        RotsurfStatus::Ok
    })
}

/// Copies 0-based quad indices (4 per face) into `out`.
///
/// # Safety
/// `handle` must be a live mesh handle and `out` writable for `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn rotsurf_mesh_faces(
    handle: *const RotsurfMesh,
    out: *mut u32,
    cap: usize,
) -> RotsurfStatus {
    guard(|| {
        let Some(m) = (unsafe { handle.as_ref() }) else {
            set_error("mesh handle is null");
            return RotsurfStatus::NullPointer;
        };
        let needed = m.mesh.faces.len() * 4;
        if out.is_null() || cap < needed {
            set_error(&format!("face buffer needs {needed} entries, got {cap}"));
            return RotsurfStatus::DomainError;
        }
        let buf = unsafe { std::slice::from_raw_parts_mut(out, needed) };
        for (i, f) in m.mesh.faces.iter().enumerate() {
            for j in 0..4 {
                buf[4 * i + j] = f[j] as u32;
            }
        }
        RotsurfStatus::Ok
    })
}

/// Solves the S3 torus closure condition for mean curvature `h` and lobe
/// count `n`; writes the embedded root (or the first root found) and its
/// radius period.
///
/// # Safety
/// Non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn rotsurf_torus_solve(
    h: f64,
    n: u32,
    c_star: *mut f64,
    period: *mut f64,
) -> RotsurfStatus {
    guard(|| {
        let solved = rotsurf::closure::ClosureProblem::new(h, n, None)
            .and_then(|p| rotsurf::closure::solve_torus(&p));
        match solved {
            Ok(sols) => {
                let best = sols.iter().find(|s| s.embedded).unwrap_or(&sols[0]);
                unsafe {
                    if !c_star.is_null() {
                        *c_star = best.c_star;
                    }
                    if !period.is_null() {
                        *period = best.period;
                    }
                }
                RotsurfStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}
