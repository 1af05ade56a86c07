/* rotsurf C API: rotational cmc/chc surfaces in S3 and H3. */

#ifndef ROTSURF_H
#define ROTSURF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Curvature class of the requested surface.
 */
typedef enum RotsurfClass {
  /**
   * Constant mean curvature; `value` is H >= 0.
   */
  RotsurfClass_Cmc = 0,
  /**
   * Constant harmonic mean curvature; `value` is Hbar with |Hbar| >= 1.
   */
  RotsurfClass_Chc = 1,
} RotsurfClass;

/**
 * Rotation subgroup kind.
 */
typedef enum RotsurfRotation {
  RotsurfRotation_Elliptic = 0,
  RotsurfRotation_Hyperbolic = 1,
  RotsurfRotation_Parabolic = 2,
} RotsurfRotation;

/**
 * Ambient space form.
 */
typedef enum RotsurfSpace {
  RotsurfSpace_Sphere3 = 0,
  RotsurfSpace_Hyperbolic3 = 1,
} RotsurfSpace;

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum RotsurfStatus {
  RotsurfStatus_Ok = 0,
  RotsurfStatus_DomainError = 1,
  RotsurfStatus_RangeError = 2,
  RotsurfStatus_Infeasible = 3,
  RotsurfStatus_NoSolution = 4,
  RotsurfStatus_NoRoot = 5,
  RotsurfStatus_Degenerate = 6,
  RotsurfStatus_SingularPoint = 7,
  RotsurfStatus_NullPointer = 8,
  RotsurfStatus_InternalError = 9,
} RotsurfStatus;

/**
 * Opaque mesh handle.
 */
typedef struct RotsurfMesh RotsurfMesh;

/**
 * Opaque resolved profile handle.
 */
typedef struct RotsurfProfile RotsurfProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent error on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *rotsurf_last_error_message(void);

/**
 * Solves the profile for a surface spec and returns an owned handle through
 * `out`. `value` is H for cmc specs and Hbar for chc specs.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum RotsurfStatus rotsurf_profile_solve(enum RotsurfSpace space,
                                         enum RotsurfRotation rotation,
                                         enum RotsurfClass class_,
                                         double value,
                                         double c,
                                         struct RotsurfProfile **out);

/**
 * Frees a profile handle. Null is a no-op.
 *
 * # Safety
 * `handle` must come from `rotsurf_profile_solve` and not be freed twice.
 */
void rotsurf_profile_free(struct RotsurfProfile *handle);

/**
 * Evaluates the coordinate functions r, psi, d at t. Output pointers may be
 * null to skip a component.
 *
 * # Safety
 * `handle` must be a live profile handle; non-null outputs must be writable.
 */
enum RotsurfStatus rotsurf_profile_eval(const struct RotsurfProfile *handle,
                                        double t,
                                        double *r,
                                        double *psi,
                                        double *d);

/**
 * Copies the resolved profile data: roots (radicand root first), elliptic
 * modulus, argument scale and the evaluable t-domain. Null outputs skip.
 *
 * # Safety
 * `handle` must be a live profile handle; non-null outputs must be writable.
 */
enum RotsurfStatus rotsurf_profile_info(const struct RotsurfProfile *handle,
                                        double *root1,
                                        double *root2,
                                        double *modulus,
                                        double *scale,
                                        double *t_min,
                                        double *t_max);

/**
 * Samples the surface on an ntheta x nt grid into an owned mesh handle.
 * `theta_range` and `t_range` are optional pointers to [lo, hi] pairs; null
 * selects the defaults (full turn / profile domain).
 *
 * # Safety
 * `handle` must be a live profile handle; range pointers, when non-null,
 * must point to two doubles; `out` must be writable.
 */
enum RotsurfStatus rotsurf_mesh_generate(const struct RotsurfProfile *handle,
                                         uintptr_t ntheta,
                                         uintptr_t nt,
                                         const double *theta_range,
                                         const double *t_range,
                                         struct RotsurfMesh **out);

/**
 * Frees a mesh handle. Null is a no-op.
 *
 * # Safety
 * `handle` must come from `rotsurf_mesh_generate` and not be freed twice.
 */
void rotsurf_mesh_free(struct RotsurfMesh *handle);

/**
 * Number of vertices in the mesh (0 for a null handle).
 *
 * # Safety
 * `handle` must be null or a live mesh handle.
 */
uintptr_t rotsurf_mesh_vertex_count(const struct RotsurfMesh *handle);

/**
 * Number of quad faces in the mesh (0 for a null handle).
 *
 * # Safety
 * `handle` must be null or a live mesh handle.
 */
uintptr_t rotsurf_mesh_face_count(const struct RotsurfMesh *handle);

/**
 * Copies ambient vertex coordinates (4 doubles per vertex, row-major in
 * (t, theta)) into `out`, which holds `cap` doubles.
 *
 * # Safety
 * `handle` must be a live mesh handle and `out` writable for `cap` doubles.
 */
enum RotsurfStatus rotsurf_mesh_vertices(const struct RotsurfMesh *handle,
                                         double *out,
                                         uintptr_t cap);

/**
 * Copies the projected R3 copy (3 doubles per vertex) into `out`.
 *
 * # Safety
 * `handle` must be a live mesh handle and `out` writable for `cap` doubles.
 */
enum RotsurfStatus rotsurf_mesh_projected(const struct RotsurfMesh *handle,
                                          double *out,
                                          uintptr_t cap);

/**
 * Copies 0-based quad indices (4 per face) into `out`.
 *
 * # Safety
 * `handle` must be a live mesh handle and `out` writable for `cap` entries.
 */
enum RotsurfStatus rotsurf_mesh_faces(const struct RotsurfMesh *handle,
                                      uint32_t *out,
                                      uintptr_t cap);

/**
 * Solves the S3 torus closure condition for mean curvature `h` and lobe
 * count `n`; writes the embedded root (or the first root found) and its
 * radius period.
 *
 * # Safety
 * Non-null outputs must be writable.
 */
enum RotsurfStatus rotsurf_torus_solve(double h, uint32_t n, double *c_star, double *period);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ROTSURF_H */
