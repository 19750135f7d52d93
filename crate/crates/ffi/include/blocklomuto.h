#ifndef BLOCKLOMUTO_H
#define BLOCKLOMUTO_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Opaque sorter: an algorithm plus its configuration.
typedef struct BlSorter BlSorter;

// Status code returned by every function.
typedef int32_t BlStatus;

// Comparison and access counts of one instrumented sort.
typedef struct BlCounters {
  uint64_t partitions;
  uint64_t sum_partition_cmp;
  uint64_t sum_partition_ma;
  uint64_t boundary_ma;
  uint64_t sample_cmp;
  uint64_t sample_ma;
  uint64_t small_sort_cmp;
  uint64_t small_sort_ma;
  uint64_t guard_cmp;
  uint64_t total_cmp;
  uint64_t total_ma;
  uint64_t total_swaps;
  uint32_t max_depth;
} BlCounters;

#define BL_OK 0

// A required pointer argument was null.
#define BL_ERR_NULL 1

// A string argument was not valid UTF-8.
#define BL_ERR_UTF8 2

// An algorithm, strategy, distribution, scheme or measure name was not recognized.
#define BL_ERR_UNKNOWN_NAME 3

// A configuration value was rejected (block size, cutoff, pivot count).
#define BL_ERR_INVALID_CONFIG 4

// The operation is not available for this algorithm.
#define BL_ERR_UNSUPPORTED 5

// An output buffer was too small.
#define BL_ERR_BUFFER_TOO_SMALL 6

// Any other failure, including internal panics.
#define BL_ERR_INTERNAL 7

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty if none. The
// pointer stays valid until the next failing call on the same thread.
const char *bl_last_error(void);

// Creates a sorter for `algorithm` ("classic", "L1", "L2" or "std") with
// default settings.
//
// # Safety
// `algorithm` must be a NUL-terminated string, `out` a valid pointer.
BlStatus bl_sorter_new(const char *algorithm, struct BlSorter **out);

// Releases a sorter. Null is ignored.
//
// # Safety
// `sorter` must be null or come from [`bl_sorter_new`] and not be used
// afterwards.
void bl_sorter_free(struct BlSorter *sorter);

// # Safety
// `sorter` must be a live handle.
BlStatus bl_sorter_set_block_size(struct BlSorter *sorter, size_t block_size);

// # Safety
// `sorter` must be a live handle.
BlStatus bl_sorter_set_cutoff(struct BlSorter *sorter, size_t cutoff);

// # Safety
// `sorter` must be a live handle.
BlStatus bl_sorter_set_equal_guard(struct BlSorter *sorter, bool on);

// Sets the pivot strategy by name, e.g. "2 (1,3 of 5)".
//
// # Safety
// `sorter` must be a live handle, `name` a NUL-terminated string.
BlStatus bl_sorter_set_strategy(struct BlSorter *sorter, const char *name);

// Sorts `len` unsigned 64-bit keys in place.
//
// # Safety
// `sorter` must be a live handle; `data` must point to `len` writable
// elements (may be null if `len` is 0).
BlStatus bl_sort_u64(struct BlSorter *sorter, uint64_t *data, size_t len);

// Sorts `len` signed 64-bit keys in place.
//
// # Safety
// As [`bl_sort_u64`].
BlStatus bl_sort_i64(struct BlSorter *sorter, int64_t *data, size_t len);

// Sorts like [`bl_sort_u64`] and reports the cost counts. Not available
// for "std".
//
// # Safety
// As [`bl_sort_u64`]; `counters` must be a valid pointer.
BlStatus bl_sort_u64_counted(struct BlSorter *sorter,
                             uint64_t *data,
                             size_t len,
                             struct BlCounters *counters);

// Writes `H(t)` for the sample vector `t[0..len]`.
//
// # Safety
// `t` must point to `len` elements, `out` must be valid.
BlStatus bl_entropy(const size_t *t, size_t len, double *out);

// Writes the `n ln n` coefficient of the expected sorting cost.
//
// # Safety
// `scheme` and `measure` must be NUL-terminated strings; `t` must point to
// `len` elements; `out` must be valid.
BlStatus bl_sorting_constant(const char *scheme,
                             const char *measure,
                             const size_t *t,
                             size_t len,
                             double *out);

// Finds the best sample vector with `additional` extra elements. Writes
// the vector to `t_out` (capacity `t_cap`), its length to `t_len` and the
// constant to `constant`.
//
// # Safety
// String arguments must be NUL-terminated; `t_out` must hold `t_cap`
// elements; `t_len` and `constant` must be valid.
BlStatus bl_best_t(const char *scheme,
                   const char *measure,
                   size_t additional,
                   size_t *t_out,
                   size_t t_cap,
                   size_t *t_len,
                   double *constant);

// Fills `out[0..n]` with the named input distribution.
//
// # Safety
// `dist` must be a NUL-terminated string; `out` must hold `n` elements
// (may be null if `n` is 0).
BlStatus bl_generate(const char *dist, size_t n, uint64_t seed, uint64_t stream, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BLOCKLOMUTO_H */
