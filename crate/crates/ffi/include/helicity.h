#ifndef HELICITY_H
#define HELICITY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Which invariant produced a [`HelChernReport`].
typedef enum HelMethod {
  HEL_METHOD_LATTICE = 0,
  HEL_METHOD_CLUTCHING = 1,
} HelMethod;

// Status codes returned by every fallible call.
typedef enum HelStatus {
  HEL_STATUS_OK = 0,
  HEL_STATUS_NULL_POINTER = 1,
  HEL_STATUS_INVALID_ARGUMENT = 2,
  HEL_STATUS_ZERO_MOMENTUM = 3,
  HEL_STATUS_CHART_SINGULARITY = 4,
  HEL_STATUS_RESOLUTION_TOO_LOW = 5,
  HEL_STATUS_MESH_AUDIT = 6,
  HEL_STATUS_MODE_MISMATCH = 7,
  HEL_STATUS_FIBER_MISMATCH = 8,
  HEL_STATUS_DEGENERATE_OVERLAP = 9,
  HEL_STATUS_ADMISSIBILITY_VIOLATION = 10,
  HEL_STATUS_ALIASING_RISK = 11,
  HEL_STATUS_TOO_FEW_SAMPLES = 12,
  HEL_STATUS_NOT_PHOTON_MODE = 13,
  HEL_STATUS_INVALID_LORENTZ = 14,
  HEL_STATUS_NON_LINEAR_PHASE = 15,
  HEL_STATUS_PANIC = 99,
} HelStatus;

// Opaque sphere mesh.
typedef struct HelMesh HelMesh;

// Result of a Chern number computation.
typedef struct HelChernReport {
  int32_t h;
  enum HelMethod method;
  int64_t chern;
  double raw_sum;
  double integer_residual;
  double max_plaquette_phase;
  // Number of faces (lattice) or loop samples (clutching).
  size_t samples;
} HelChernReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *hel_version(void);

// Message for the last failed call on this thread, or NULL.
//
// The pointer stays valid until the next call into this library on the same thread.
const char *hel_last_error(void);

// Build a latitude-longitude mesh. Free it with `hel_mesh_free`.
enum HelStatus hel_mesh_latlon(size_t n_theta, size_t n_phi, struct HelMesh **out);

// Build a subdivided icosahedron. Free it with `hel_mesh_free`.
enum HelStatus hel_mesh_icosphere(size_t level, struct HelMesh **out);

// Release a mesh. NULL is ignored.
//
// # Safety
// `mesh` must come from a mesh constructor and not have been freed.
void hel_mesh_free(struct HelMesh *mesh);

// Number of vertices, or 0 for NULL.
//
// # Safety
// `mesh` must be NULL or a live handle.
size_t hel_mesh_vertex_count(const struct HelMesh *mesh);

// Number of faces, or 0 for NULL.
//
// # Safety
// `mesh` must be NULL or a live handle.
size_t hel_mesh_face_count(const struct HelMesh *mesh);

// Lattice Chern number of the helicity-`h` bundle on `mesh`.
//
// # Safety
// `mesh` must be a live handle and `out` writable.
enum HelStatus hel_chern_lattice(int32_t h, const struct HelMesh *mesh, struct HelChernReport *out);

// Chern number from the winding of the equatorial transition function.
//
// # Safety
// `out` must be writable.
enum HelStatus hel_chern_clutching(int32_t h, size_t samples, struct HelChernReport *out);

// Link variable between directions `p` and `q` (3 doubles each), using
// hemisphere charts.
//
// # Safety
// `p` and `q` must point to 3 doubles; `re` and `im` must be writable.
enum HelStatus hel_overlap(int32_t h, const double *p, const double *q, double *re, double *im);

// Helicity read off from the rotation phase about `khat`.
//
// # Safety
// `khat` must point to 3 doubles and `out` be writable.
enum HelStatus hel_measure_helicity(int32_t h, const double *khat, int32_t *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HELICITY_H */
