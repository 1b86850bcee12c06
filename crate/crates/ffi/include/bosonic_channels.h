#ifndef BOSONIC_CHANNELS_H
#define BOSONIC_CHANNELS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum BgStatus {
  BG_STATUS_OK = 0,
  BG_STATUS_NULL_POINTER = 1,
  BG_STATUS_INVALID_STATE = 2,
  BG_STATUS_INVALID_COUPLING = 3,
  BG_STATUS_DISPLACED_ENVIRONMENT = 4,
  BG_STATUS_OUT_OF_RANGE = 5,
  BG_STATUS_UNSUPPORTED = 6,
  BG_STATUS_INVALID_PARAMETER = 7,
  BG_STATUS_PANIC = 8,
} BgStatus;

typedef enum BgRegime {
  /**
   * `q = k ∈ (0, 1)`.
   */
  BG_REGIME_BEAM_SPLITTER = 0,
  /**
   * `q = k > 1`.
   */
  BG_REGIME_AMPLIFIER = 1,
  /**
   * `q = 1 − k < 0`.
   */
  BG_REGIME_NEGATIVE = 2,
} BgRegime;

typedef enum BgMapKind {
  BG_MAP_KIND_CONJUGATE_AMPLIFIER = 0,
  BG_MAP_KIND_BEAM_SPLITTER = 1,
  BG_MAP_KIND_AMPLIFIER = 2,
  BG_MAP_KIND_UNDETERMINED = 3,
} BgMapKind;

typedef enum BgIdentity {
  BG_IDENTITY_WEAK_DEGRADABILITY = 0,
  BG_IDENTITY_ANTI_DEGRADABILITY = 1,
} BgIdentity;

typedef enum BgCase {
  BG_CASE_BEAM_SPLITTER = 0,
  BG_CASE_AMPLIFIER = 1,
  BG_CASE_CONJUGATE_AMPLIFIER = 2,
} BgCase;

/**
 * Two-mode coupling matrix.
 */
typedef struct BgCoupling BgCoupling;

/**
 * One-mode Gaussian state.
 */
typedef struct BgState BgState;

/**
 * Plain parameters of a state.
 */
typedef struct BgStateParams {
  double n;
  double m_re;
  double m_im;
  double d_re;
  double d_im;
} BgStateParams;

/**
 * Classification verdict. Absent parameters are NaN.
 */
typedef struct BgClassification {
  double q;
  bool weakly_degradable;
  bool anti_degradable;
  double degrading_k;
  double antidegrading_k;
  enum BgMapKind equivalent_map;
  double equivalent_k;
} BgClassification;

typedef struct BgResidual {
  double k;
  double k_prime;
  double max_residual;
} BgResidual;

/**
 * Parameters of a decomposed coupling; see the `decompose` module of the
 * Rust crate for the factor order.
 */
typedef struct BgDecomposition {
  enum BgCase case_;
  double k;
  double sa_r;
  double sa_phi;
  double sb_r;
  double sb_phi;
  double sb_prime_r;
  double sb_prime_phi;
  double phase_a;
  double phase_b;
  double global_phase;
  bool swapped;
} BgDecomposition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; valid until the next
 * failing call on the same thread.
 */
const char *bg_last_error_message(void);

enum BgStatus bg_state_new(double n,
                           double m_re,
                           double m_im,
                           double d_re,
                           double d_im,
                           struct BgState **out);

void bg_state_free(struct BgState *state);

enum BgStatus bg_state_params(const struct BgState *state, struct BgStateParams *out);

enum BgStatus bg_state_char_fn(const struct BgState *state,
                               double mu_re,
                               double mu_im,
                               double *out_re,
                               double *out_im);

enum BgStatus bg_state_squeeze(const struct BgState *state,
                               double r,
                               double phi,
                               struct BgState **out);

/**
 * Max-norm distance over `(n, Re m, Im m, Re d, Im d)`.
 */
enum BgStatus bg_state_distance(const struct BgState *a, const struct BgState *b, double *out);

/**
 * Beam splitter (`k ≤ 1`) or amplifier (`k > 1`) coupling.
 */
enum BgStatus bg_coupling_canonical(double k, struct BgCoupling **out);

/**
 * Builds a coupling from 32 doubles: the 16 entries in row-major order,
 * each as `(re, im)`. The matrix is not validated here.
 */
enum BgStatus bg_coupling_from_entries(const double *entries, struct BgCoupling **out);

/**
 * Writes the 16 entries as 32 doubles, row-major `(re, im)` pairs.
 */
enum BgStatus bg_coupling_entries(const struct BgCoupling *coupling, double *out);

void bg_coupling_free(struct BgCoupling *coupling);

enum BgStatus bg_coupling_q(const struct BgCoupling *coupling, double *out);

/**
 * Returns `Ok` iff the symplectic residual is at most `tol`; the residual
 * is written to `residual` either way.
 */
enum BgStatus bg_coupling_validate(const struct BgCoupling *coupling, double tol, double *residual);

enum BgStatus bg_coupling_swap(const struct BgCoupling *coupling, struct BgCoupling **out);

/**
 * Random dressed coupling in the requested regime; pass `k = NaN` to draw
 * `k` from the seed as well.
 */
enum BgStatus bg_coupling_generate(uint64_t seed,
                                   enum BgRegime regime,
                                   double k,
                                   struct BgCoupling **out);

/**
 * Output of `E[k, env]` (or its weakly complementary map) on `rho`.
 */
enum BgStatus bg_apply_k(double k,
                         const struct BgState *env,
                         const struct BgState *rho,
                         bool complementary,
                         struct BgState **out);

/**
 * Output of the channel given by an arbitrary coupling, through the joint
 * two-mode evolution.
 */
enum BgStatus bg_apply_general(const struct BgCoupling *coupling,
                               const struct BgState *env,
                               const struct BgState *rho,
                               bool complementary,
                               struct BgState **out);

enum BgStatus bg_classify(const struct BgCoupling *coupling, struct BgClassification *out);

/**
 * Max residual of a degrading-map identity over `samples` random inputs.
 */
enum BgStatus bg_verify_identity(enum BgIdentity identity,
                                 double k,
                                 const struct BgState *env,
                                 size_t samples,
                                 uint64_t seed,
                                 struct BgResidual *out);

enum BgStatus bg_decompose(const struct BgCoupling *coupling, struct BgDecomposition *out);

enum BgStatus bg_apply_decomposed(const struct BgDecomposition *decomposition,
                                  const struct BgState *env,
                                  const struct BgState *rho,
                                  struct BgState **out);

/**
 * Max distance between the direct channel and its decomposed form.
 */
enum BgStatus bg_verify_decomposition(const struct BgCoupling *coupling,
                                      const struct BgState *env,
                                      size_t samples,
                                      uint64_t seed,
                                      double *residual);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOSONIC_CHANNELS_H */
