#ifndef VECG_H
#define VECG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes; the first three match the CLI exit codes.
typedef enum VecgStatus {
  VECG_STATUS_OK = 0,
  VECG_STATUS_INVALID = 1,
  VECG_STATUS_BOUND_EXCEEDED = 2,
  VECG_STATUS_NULL_POINTER = 3,
  VECG_STATUS_PANIC = 4,
} VecgStatus;

// Opaque 3-cocycle on a group.
typedef struct VecgCocycle VecgCocycle;

// Opaque finite group.
typedef struct VecgGroup VecgGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. Valid until the next
// failing call on the same thread.
const char *vecg_last_error(void);

// Replace every group-order enumeration limit; 0 restores the defaults.
void vecg_set_bound(size_t limit);

// Build a group from a spec such as `family:cyclic:4` or a JSON table.
//
// # Safety
// `spec` must be a valid C string and `out` a valid pointer.
enum VecgStatus vecg_group_new(const char *spec, struct VecgGroup **out);

// # Safety
// `g` must come from `vecg_group_new` and not be used afterwards.
void vecg_group_free(struct VecgGroup *g);

// Order of the group, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t vecg_group_order(const struct VecgGroup *g);

// Product `a·b` of element indices; writes 0 and fails on bad indices.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum VecgStatus vecg_group_mul(const struct VecgGroup *g, size_t a, size_t b, size_t *out);

// Parse a 3-cocycle spec (`0`, `cyclic:n:k` or JSON) on `g`.
//
// # Safety
// `g` must be a live handle, `spec` a valid C string and `out` a valid pointer.
enum VecgStatus vecg_cocycle_new(const struct VecgGroup *g,
                                 const char *spec,
                                 struct VecgCocycle **out);

// # Safety
// `w` must come from `vecg_cocycle_new` and not be used afterwards.
void vecg_cocycle_free(struct VecgCocycle *w);

// Number of indecomposable module categories over `Vec_G^ω`.
//
// # Safety
// `g` and `w` must be live handles for the same group and `out` a valid pointer.
enum VecgStatus vecg_module_category_count(const struct VecgGroup *g,
                                           const struct VecgCocycle *w,
                                           size_t *out);

// `|BrPic(Vec_G^ω)|`.
//
// # Safety
// `g` and `w` must be live handles for the same group and `out` a valid pointer.
enum VecgStatus vecg_brpic_order(const struct VecgGroup *g,
                                 const struct VecgCocycle *w,
                                 size_t *out);

// Rank of the center `Z(Vec_G^ω)`.
//
// # Safety
// `g` and `w` must be live handles for the same group and `out` a valid pointer.
enum VecgStatus vecg_center_rank(const struct VecgGroup *g,
                                 const struct VecgCocycle *w,
                                 size_t *out);

// Number of invertible objects of the center.
//
// # Safety
// `g` and `w` must be live handles for the same group and `out` a valid pointer.
enum VecgStatus vecg_center_invertible_count(const struct VecgGroup *g,
                                             const struct VecgCocycle *w,
                                             size_t *out);

// `|Out⊗(Vec_G^ω)|`.
//
// # Safety
// `g` and `w` must be live handles for the same group and `out` a valid pointer.
enum VecgStatus vecg_out_tensor_order(const struct VecgGroup *g,
                                      const struct VecgCocycle *w,
                                      size_t *out);

// Run a CLI command given as `argc` arguments (without the program name).
// On return `*out_json` holds the JSON report or error object, to be
// released with `vecg_string_free`; the result is the CLI exit code.
//
// # Safety
// `argv` must point to `argc` valid C strings and `out_json` be a valid pointer.
int32_t vecg_run(const char *const *argv, size_t argc, char **out_json);

// # Safety
// `s` must come from `vecg_run` and not be used afterwards.
void vecg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VECG_H */
