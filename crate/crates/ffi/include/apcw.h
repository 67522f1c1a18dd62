#ifndef APCW_H
#define APCW_H

/* Generated by cbindgen from apcw-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status of an FFI call. Everything except `Ok` leaves a message in
// `apcw_last_error_message`.
typedef enum ApcwStatus {
  APCW_STATUS_OK = 0,
  // Null pointer or malformed argument at the ABI boundary.
  APCW_STATUS_INVALID_ARGUMENT = 1,
  // Input outside an operation's domain or failed validation.
  APCW_STATUS_DOMAIN = 2,
  // Numerical method failed to converge.
  APCW_STATUS_NUMERICAL = 3,
  // Probe frequency falls inside the photonic band gap.
  APCW_STATUS_BAND_GAP = 4,
  // Geometry not supported by the requested solver.
  APCW_STATUS_UNSUPPORTED_GEOMETRY = 5,
  // Parse failure (config/JSON).
  APCW_STATUS_PARSE = 6,
  // I/O failure.
  APCW_STATUS_IO = 7,
} ApcwStatus;

// Opaque tensioned-beam description.
typedef struct ApcwBeam ApcwBeam;

// Opaque band-edge dispersion model.
typedef struct ApcwDispersion ApcwDispersion;

// Opaque mode table.
typedef struct ApcwModeTable ApcwModeTable;

// Opaque time series (sample rate + samples).
typedef struct ApcwTrace ApcwTrace;

// One mechanical eigenmode row.
typedef struct ApcwMode {
  // Mode index p >= 1.
  uint32_t p;
  // Eigenfrequency, Hz.
  double frequency;
  // Effective mass, kg.
  double m_eff;
  // Zero-point amplitude, m.
  double alpha_zp;
  // Thermal rms amplitude at 300 K, m.
  double alpha_th_rms;
  // Quality factor.
  double q;
} ApcwMode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread. Valid until
// the next failing call on the same thread; never null.
const char *apcw_last_error_message(void);

// Library version as a static string.
const char *apcw_version(void);

// Build a beam from the same JSON schema as the config's `beam` section
// (plain SI numbers or unit-suffixed strings such as `"280 nm"`).
//
// # Safety
// `json` must be a valid NUL-terminated UTF-8 string and `out` a valid
// pointer; the returned handle must be freed with `apcw_beam_free`.
enum ApcwStatus apcw_beam_from_json(const char *json, struct ApcwBeam **out);

// The reference double-nanobeam device. Free with `apcw_beam_free`.
struct ApcwBeam *apcw_beam_reference_device(void);

// # Safety
// `beam` must come from this library and not already be freed.
void apcw_beam_free(struct ApcwBeam *beam);

// Analytic hinged-beam ladder (uniform cross-section only).
//
// # Safety
// `beam` and `out` must be valid; the table must be freed with
// `apcw_mode_table_free`.
enum ApcwStatus apcw_analytic_modes(const struct ApcwBeam *beam,
                                    uintptr_t p_max,
                                    struct ApcwModeTable **out);

// 1D finite-element eigenmodes (any piecewise geometry / boundary).
//
// # Safety
// As for `apcw_analytic_modes`.
enum ApcwStatus apcw_fem_modes(const struct ApcwBeam *beam,
                               uintptr_t p_max,
                               uintptr_t n_elements,
                               struct ApcwModeTable **out);

// Number of rows in a mode table.
//
// # Safety
// `table` must be a live handle from this library.
uintptr_t apcw_mode_table_len(const struct ApcwModeTable *table);

// Copy row `index` into `out`.
//
// # Safety
// `table` must be live and `out` valid.
enum ApcwStatus apcw_mode_table_get(const struct ApcwModeTable *table,
                                    uintptr_t index,
                                    struct ApcwMode *out);

// # Safety
// `table` must come from this library and not already be freed.
void apcw_mode_table_free(struct ApcwModeTable *table);

// Zero-point amplitude sqrt(hbar / (2 m omega)), m.
//
// # Safety
// `out` must be valid.
enum ApcwStatus apcw_zero_point_amplitude(double m_eff, double frequency, double *out);

// Bose occupation plus quantum and classical thermal rms amplitudes.
//
// # Safety
// All out-pointers must be valid.
enum ApcwStatus apcw_thermal_amplitude(double m_eff,
                                       double frequency,
                                       double temperature,
                                       double *out_n_bar,
                                       double *out_quantum_rms,
                                       double *out_classical_rms);

// Thermomechanical force sensitivity sqrt(4 pi m f kT / Q), N/rtHz.
//
// # Safety
// `out` must be valid.
enum ApcwStatus apcw_force_sensitivity(double m_eff,
                                       double frequency,
                                       double quality_factor,
                                       double temperature,
                                       double *out);

// On-resonance thermal position instability sqrt(2 kT Q / (m omega^3)),
// m/rtHz (symmetrized convention).
//
// # Safety
// `out` must be valid.
enum ApcwStatus apcw_position_instability(double m_eff,
                                          double frequency,
                                          double quality_factor,
                                          double temperature,
                                          double *out);

// Reference-device dispersion model. Free with `apcw_dispersion_free`.
struct ApcwDispersion *apcw_dispersion_reference_device(void);

// Build a dispersion model from explicit parameters (SI units).
//
// # Safety
// `out` must be valid; free the handle with `apcw_dispersion_free`.
enum ApcwStatus apcw_dispersion_new(double nu_be,
                                    double nu_be2,
                                    double zeta,
                                    double lattice_a,
                                    uintptr_t n_cells,
                                    double band_edge_gap_slope,
                                    struct ApcwDispersion **out);

// # Safety
// `disp` must come from this library and not already be freed.
void apcw_dispersion_free(struct ApcwDispersion *disp);

// Bloch-wavevector deviation from the zone edge at `nu`, rad/m.
//
// # Safety
// `disp` must be live and `out` valid.
enum ApcwStatus apcw_delta_kx(const struct ApcwDispersion *disp, double nu, double *out);

// Fill `out[0..n_max]` with the rung frequencies nu_1..nu_n, Hz.
//
// # Safety
// `out` must point to at least `n_max` writable f64 values.
enum ApcwStatus apcw_resonance_ladder(const struct ApcwDispersion *disp,
                                      uintptr_t n_max,
                                      double *out);

// Dispersive transduction factor xi(nu), (rad/m)/m.
//
// # Safety
// `disp` must be live and `out` valid.
enum ApcwStatus apcw_xi_dispersive(const struct ApcwDispersion *disp, double nu, double *out);

// Thermal (Langevin) trajectory of a damped mode; bit-reproducible per seed.
//
// # Safety
// `out` must be valid; free the handle with `apcw_trace_free`.
enum ApcwStatus apcw_langevin_trajectory(double frequency,
                                         double quality_factor,
                                         double m_eff,
                                         double temperature,
                                         double sample_rate,
                                         double duration,
                                         uint64_t seed,
                                         struct ApcwTrace **out);

// Number of samples in a trace.
//
// # Safety
// `trace` must be a live handle.
uintptr_t apcw_trace_len(const struct ApcwTrace *trace);

// Sample rate of a trace, Hz.
//
// # Safety
// `trace` must be a live handle.
double apcw_trace_sample_rate(const struct ApcwTrace *trace);

// Borrow the sample buffer; valid until the trace is freed.
//
// # Safety
// `trace` must be a live handle; do not write through the pointer.
const double *apcw_trace_data(const struct ApcwTrace *trace);

// # Safety
// `trace` must come from this library and not already be freed.
void apcw_trace_free(struct ApcwTrace *trace);

// Zero-phase fourth-order Butterworth bandpass of `input` into `output`
// (both of length `len`).
//
// # Safety
// `input` must point to `len` readable and `output` to `len` writable f64.
enum ApcwStatus apcw_butterworth_bandpass(const double *input,
                                          double *output,
                                          uintptr_t len,
                                          double f_lo,
                                          double f_hi,
                                          double sample_rate);

// Number of one-sided PSD bins for a Welch segment length.
uintptr_t apcw_welch_bins(uintptr_t segment_length);

// Welch PSD (Hann, one-sided). `out_freqs` and `out_psd` must hold
// `apcw_welch_bins(segment_length)` values each.
//
// # Safety
// `series` must point to `len` readable f64; the out-buffers must be
// writable with the documented capacity.
enum ApcwStatus apcw_welch_psd(const double *series,
                               uintptr_t len,
                               uintptr_t segment_length,
                               double overlap,
                               double sample_rate,
                               double *out_freqs,
                               double *out_psd);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* APCW_H */
