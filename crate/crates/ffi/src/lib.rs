//! C ABI over the apcw library.
//!
//! Conventions:
//!
//! * every fallible call returns an [`ApcwStatus`]; results come back through
//!   out-pointers;
//! * handles (`ApcwBeam`, `ApcwDispersion`, `ApcwModeTable`, `ApcwTrace`) are
//!   opaque and must be released with their `_free` function;
//! * `apcw_last_error_message` returns a thread-local description of the most
//!   recent failure, valid until the next failing call on the same thread;
//! * buffers passed in are caller-owned; no callback ever retains a pointer.

// `!(x > 0.0)` rather than `x <= 0.0`: the negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use apcw::error::Error;
use apcw::mech::{analytic_modes, fem_eigenmodes, BeamSpec, MechMode};
use apcw::noise::{butterworth_bandpass, langevin_trajectory, welch_psd, LangevinParams, Trajectory};
use apcw::optics::{delta_kx, resonance_ladder, xi_dispersive, DispersionSpec};
use apcw::spectrum::PsdUnits;

/// Status of an FFI call. Everything except `Ok` leaves a message in
/// `apcw_last_error_message`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApcwStatus {
    Ok = 0,
    /// Null pointer or malformed argument at the ABI boundary.
    InvalidArgument = 1,
    /// Input outside an operation's domain or failed validation.
    Domain = 2,
    /// Numerical method failed to converge.
    Numerical = 3,
    /// Probe frequency falls inside the photonic band gap.
    BandGap = 4,
    /// Geometry not supported by the requested solver.
    UnsupportedGeometry = 5,
    /// Parse failure (config/JSON).
    Parse = 6,
    /// I/O failure.
    Io = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> ApcwStatus {
    match err {
        Error::Domain(_) | Error::Validation(_) => ApcwStatus::Domain,
        Error::Numerical(_) => ApcwStatus::Numerical,
        Error::BandGap(_) => ApcwStatus::BandGap,
        Error::UnsupportedGeometry(_) => ApcwStatus::UnsupportedGeometry,
        Error::Parse(_) => ApcwStatus::Parse,
        Error::Io(_) => ApcwStatus::Io,
    }
}

fn fail(err: Error) -> ApcwStatus {
    set_error(&err.to_string());
    status_of(&err)
}

fn invalid(msg: &str) -> ApcwStatus {
    set_error(msg);
    ApcwStatus::InvalidArgument
}

/// Message describing the most recent failure on this thread. Valid until
/// the next failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn apcw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn apcw_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

// ------------------------------------------------------------------ beam --

/// Opaque tensioned-beam description.
pub struct ApcwBeam(BeamSpec);

/// Build a beam from the same JSON schema as the config's `beam` section
/// (plain SI numbers or unit-suffixed strings such as `"280 nm"`).
///
/// # Safety
/// `json` must be a valid NUL-terminated UTF-8 string and `out` a valid
/// pointer; the returned handle must be freed with `apcw_beam_free`.
#[no_mangle]
pub unsafe extern "C" fn apcw_beam_from_json(
    json: *const c_char,
    out: *mut *mut ApcwBeam,
) -> ApcwStatus {
    if json.is_null() || out.is_null() {
        return invalid("null pointer");
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => return invalid("json is not valid UTF-8"),
    };
    match apcw::config::beam_from_json(text) {
        Ok(spec) => {
            *out = Box::into_raw(Box::new(ApcwBeam(spec)));
            ApcwStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// The reference double-nanobeam device. Free with `apcw_beam_free`.
#[no_mangle]
pub extern "C" fn apcw_beam_reference_device() -> *mut ApcwBeam {
    Box::into_raw(Box::new(ApcwBeam(BeamSpec::reference_device())))
}

/// # Safety
/// `beam` must come from this library and not already be freed.
#[no_mangle]
pub unsafe extern "C" fn apcw_beam_free(beam: *mut ApcwBeam) {
    if !beam.is_null() {
        drop(Box::from_raw(beam));
    }
}

// ----------------------------------------------------------------- modes --

/// One mechanical eigenmode row.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct ApcwMode {
    /// Mode index p >= 1.
    pub p: u32,
    /// Eigenfrequency, Hz.
    pub frequency: f64,
    /// Effective mass, kg.
    pub m_eff: f64,
    /// Zero-point amplitude, m.
    pub alpha_zp: f64,
    /// Thermal rms amplitude at 300 K, m.
    pub alpha_th_rms: f64,
    /// Quality factor.
    pub q: f64,
}

/// Opaque mode table.
pub struct ApcwModeTable(Vec<MechMode>);

fn mode_table_out(modes: Vec<MechMode>, out: *mut *mut ApcwModeTable) -> ApcwStatus {
    unsafe {
        *out = Box::into_raw(Box::new(ApcwModeTable(modes)));
    }
    ApcwStatus::Ok
}

/// Analytic hinged-beam ladder (uniform cross-section only).
///
/// # Safety
/// `beam` and `out` must be valid; the table must be freed with
/// `apcw_mode_table_free`.
#[no_mangle]
pub unsafe extern "C" fn apcw_analytic_modes(
    beam: *const ApcwBeam,
    p_max: usize,
    out: *mut *mut ApcwModeTable,
) -> ApcwStatus {
    if beam.is_null() || out.is_null() {
        return invalid("null pointer");
    }
    match analytic_modes(&(*beam).0, p_max) {
        Ok(m) => mode_table_out(m, out),
        Err(e) => fail(e),
    }
}

/// 1D finite-element eigenmodes (any piecewise geometry / boundary).
///
/// # Safety
/// As for `apcw_analytic_modes`.
#[no_mangle]
pub unsafe extern "C" fn apcw_fem_modes(
    beam: *const ApcwBeam,
    p_max: usize,
    n_elements: usize,
    out: *mut *mut ApcwModeTable,
) -> ApcwStatus {
    if beam.is_null() || out.is_null() {
        return invalid("null pointer");
    }
    match fem_eigenmodes(&(*beam).0, p_max, n_elements) {
        Ok(m) => mode_table_out(m, out),
        Err(e) => fail(e),
    }
}

/// Number of rows in a mode table.
///
/// # Safety
/// `table` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn apcw_mode_table_len(table: *const ApcwModeTable) -> usize {
    if table.is_null() {
        return 0;
    }
    (*table).0.len()
}

/// Copy row `index` into `out`.
///
/// # Safety
/// `table` must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn apcw_mode_table_get(
    table: *const ApcwModeTable,
    index: usize,
    out: *mut ApcwMode,
) -> ApcwStatus {
    if table.is_null() || out.is_null() {
        return invalid("null pointer");
    }
    let modes = &(*table).0;
    if index >= modes.len() {
        return invalid("mode index out of range");
    }
    let m = &modes[index];
    *out = ApcwMode {
        p: m.index as u32,
        frequency: m.frequency,
        m_eff: m.m_eff,
        alpha_zp: m.alpha_zp,
        alpha_th_rms: m.alpha_th_rms,
        q: m.q,
    };
    ApcwStatus::Ok
}

/// # Safety
/// `table` must come from this library and not already be freed.
#[no_mangle]
pub unsafe extern "C" fn apcw_mode_table_free(table: *mut ApcwModeTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

// --------------------------------------------------------------- scalars --

/// Zero-point amplitude sqrt(hbar / (2 m omega)), m.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn apcw_zero_point_amplitude(
    m_eff: f64,
    frequency: f64,
    out: *mut f64,
) -> ApcwStatus {
    if out.is_null() {
        return invalid("null pointer");
    }
    match apcw::mech::zero_point_amplitude(m_eff, frequency) {
        Ok(v) => {
            *out = v;
            ApcwStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Bose occupation plus quantum and classical thermal rms amplitudes.
///
/// # Safety
/// All out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn apcw_thermal_amplitude(
    m_eff: f64,
    frequency: f64,
    temperature: f64,
    out_n_bar: *mut f64,
    out_quantum_rms: *mut f64,
    out_classical_rms: *mut f64,
) -> ApcwStatus {
    if out_n_bar.is_null() || out_quantum_rms.is_null() || out_classical_rms.is_null() {
        return invalid("null pointer");
    }
    match apcw::mech::thermal_amplitude(m_eff, frequency, temperature) {
        Ok(t) => {
            *out_n_bar = t.n_bar;
            *out_quantum_rms = t.quantum_rms;
            *out_classical_rms = t.classical_rms;
            ApcwStatus::Ok
        }
        Err(e) => fail(e),
    }
}

fn scratch_mode(m_eff: f64, frequency: f64, q: f64) -> Result<MechMode, Error> {
    let alpha_zp = apcw::mech::zero_point_amplitude(m_eff, frequency)?;
    if !(q > 0.0) {
        return Err(Error::Domain("quality factor must be positive".into()));
    }
    Ok(MechMode {
        index: 1,
        family: apcw::mech::ModeFamily::Generic,
        frequency,
        shape: vec![(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)],
        m_eff,
        alpha_zp,
        alpha_th_rms: 0.0,
        temperature: 300.0,
        q,
    })
}

/// Thermomechanical force sensitivity sqrt(4 pi m f kT / Q), N/rtHz.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn apcw_force_sensitivity(
    m_eff: f64,
    frequency: f64,
    quality_factor: f64,
    temperature: f64,
    out: *mut f64,
) -> ApcwStatus {
    if out.is_null() {
        return invalid("null pointer");
    }
    let result = scratch_mode(m_eff, frequency, quality_factor)
        .and_then(|m| apcw::noise::force_sensitivity(&m, temperature));
    match result {
        Ok(v) => {
            *out = v;
            ApcwStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// On-resonance thermal position instability sqrt(2 kT Q / (m omega^3)),
/// m/rtHz (symmetrized convention).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn apcw_position_instability(
    m_eff: f64,
    frequency: f64,
    quality_factor: f64,
    temperature: f64,
    out: *mut f64,
) -> ApcwStatus {
    if out.is_null() {
        return invalid("null pointer");
    }
    let result = scratch_mode(m_eff, frequency, quality_factor)
        .and_then(|m| apcw::noise::thermal_position_instability(&m, temperature));
    match result {
        Ok(v) => {
            *out = v;
            ApcwStatus::Ok
        }
        Err(e) => fail(e),
    }
}

// ------------------------------------------------------------ dispersion --

/// Opaque band-edge dispersion model.
pub struct ApcwDispersion(DispersionSpec);

/// Reference-device dispersion model. Free with `apcw_dispersion_free`.
#[no_mangle]
pub extern "C" fn apcw_dispersion_reference_device() -> *mut ApcwDispersion {
    Box::into_raw(Box::new(ApcwDispersion(DispersionSpec::reference_device())))
}

/// Build a dispersion model from explicit parameters (SI units).
///
/// # Safety
/// `out` must be valid; free the handle with `apcw_dispersion_free`.
#[no_mangle]
pub unsafe extern "C" fn apcw_dispersion_new(
    nu_be: f64,
    nu_be2: f64,
    zeta: f64,
    lattice_a: f64,
    n_cells: usize,
    band_edge_gap_slope: f64,
    out: *mut *mut ApcwDispersion,
) -> ApcwStatus {
    if out.is_null() {
        return invalid("null pointer");
    }
    let spec = DispersionSpec {
        nu_be,
        nu_be2,
        zeta,
        lattice_a,
        n_cells,
        band_edge_gap_slope,
    };
    if let Err(e) = spec.validate() {
        return fail(e);
    }
    *out = Box::into_raw(Box::new(ApcwDispersion(spec)));
    ApcwStatus::Ok
}

/// # Safety
/// `disp` must come from this library and not already be freed.
#[no_mangle]
pub unsafe extern "C" fn apcw_dispersion_free(disp: *mut ApcwDispersion) {
    if !disp.is_null() {
        drop(Box::from_raw(disp));
    }
}

/// Bloch-wavevector deviation from the zone edge at `nu`, rad/m.
///
/// # Safety
/// `disp` must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn apcw_delta_kx(
    disp: *const ApcwDispersion,
    nu: f64,
    out: *mut f64,
) -> ApcwStatus {
    if disp.is_null() || out.is_null() {
        return invalid("null pointer");
    }
    match delta_kx(&(*disp).0, nu) {
        Ok(v) => {
            *out = v;
            ApcwStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Fill `out[0..n_max]` with the rung frequencies nu_1..nu_n, Hz.
///
/// # Safety
/// `out` must point to at least `n_max` writable f64 values.
#[no_mangle]
pub unsafe extern "C" fn apcw_resonance_ladder(
    disp: *const ApcwDispersion,
    n_max: usize,
    out: *mut f64,
) -> ApcwStatus {
    if disp.is_null() || out.is_null() {
        return invalid("null pointer");
    }
    match resonance_ladder(&(*disp).0, n_max) {
        Ok(l) => {
            for (i, (_, nu)) in l.into_iter().enumerate() {
                *out.add(i) = nu;
            }
            ApcwStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Dispersive transduction factor xi(nu), (rad/m)/m.
///
/// # Safety
/// `disp` must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn apcw_xi_dispersive(
    disp: *const ApcwDispersion,
    nu: f64,
    out: *mut f64,
) -> ApcwStatus {
    if disp.is_null() || out.is_null() {
        return invalid("null pointer");
    }
    match xi_dispersive(&(*disp).0, nu) {
        Ok(v) => {
            *out = v;
            ApcwStatus::Ok
        }
        Err(e) => fail(e),
    }
}

// ----------------------------------------------------------------- traces --

/// Opaque time series (sample rate + samples).
pub struct ApcwTrace(Trajectory);

/// Thermal (Langevin) trajectory of a damped mode; bit-reproducible per seed.
///
/// # Safety
/// `out` must be valid; free the handle with `apcw_trace_free`.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn apcw_langevin_trajectory(
    frequency: f64,
    quality_factor: f64,
    m_eff: f64,
    temperature: f64,
    sample_rate: f64,
    duration: f64,
    seed: u64,
    out: *mut *mut ApcwTrace,
) -> ApcwStatus {
    if out.is_null() {
        return invalid("null pointer");
    }
    let params = LangevinParams {
        frequency,
        q: quality_factor,
        m_eff,
        temperature,
        sample_rate,
        duration,
        rng_seed: seed,
    };
    match langevin_trajectory(&params) {
        Ok(t) => {
            *out = Box::into_raw(Box::new(ApcwTrace(t)));
            ApcwStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Number of samples in a trace.
///
/// # Safety
/// `trace` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn apcw_trace_len(trace: *const ApcwTrace) -> usize {
    if trace.is_null() {
        return 0;
    }
    (*trace).0.samples.len()
}

/// Sample rate of a trace, Hz.
///
/// # Safety
/// `trace` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn apcw_trace_sample_rate(trace: *const ApcwTrace) -> f64 {
    if trace.is_null() {
        return 0.0;
    }
    (*trace).0.sample_rate
}

/// Borrow the sample buffer; valid until the trace is freed.
///
/// # Safety
/// `trace` must be a live handle; do not write through the pointer.
#[no_mangle]
pub unsafe extern "C" fn apcw_trace_data(trace: *const ApcwTrace) -> *const f64 {
    if trace.is_null() {
        return ptr::null();
    }
    (*trace).0.samples.as_ptr()
}

/// # Safety
/// `trace` must come from this library and not already be freed.
#[no_mangle]
pub unsafe extern "C" fn apcw_trace_free(trace: *mut ApcwTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

// -------------------------------------------------------------------- dsp --

/// Zero-phase fourth-order Butterworth bandpass of `input` into `output`
/// (both of length `len`).
///
/// # Safety
/// `input` must point to `len` readable and `output` to `len` writable f64.
#[no_mangle]
pub unsafe extern "C" fn apcw_butterworth_bandpass(
    input: *const f64,
    output: *mut f64,
    len: usize,
    f_lo: f64,
    f_hi: f64,
    sample_rate: f64,
) -> ApcwStatus {
    if input.is_null() || output.is_null() {
        return invalid("null pointer");
    }
    let series = std::slice::from_raw_parts(input, len);
    match butterworth_bandpass(series, f_lo, f_hi, sample_rate) {
        Ok(filtered) => {
            std::ptr::copy_nonoverlapping(filtered.as_ptr(), output, len);
            ApcwStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Number of one-sided PSD bins for a Welch segment length.
#[no_mangle]
pub extern "C" fn apcw_welch_bins(segment_length: usize) -> usize {
    segment_length / 2 + 1
}

/// Welch PSD (Hann, one-sided). `out_freqs` and `out_psd` must hold
/// `apcw_welch_bins(segment_length)` values each.
///
/// # Safety
/// `series` must point to `len` readable f64; the out-buffers must be
/// writable with the documented capacity.
#[no_mangle]
pub unsafe extern "C" fn apcw_welch_psd(
    series: *const f64,
    len: usize,
    segment_length: usize,
    overlap: f64,
    sample_rate: f64,
    out_freqs: *mut f64,
    out_psd: *mut f64,
) -> ApcwStatus {
    if series.is_null() || out_freqs.is_null() || out_psd.is_null() {
        return invalid("null pointer");
    }
    let data = std::slice::from_raw_parts(series, len);
    match welch_psd(data, segment_length, overlap, sample_rate, PsdUnits::DimensionlessPerHz) {
        Ok(rec) => {
            std::ptr::copy_nonoverlapping(rec.freqs.as_ptr(), out_freqs, rec.freqs.len());
            std::ptr::copy_nonoverlapping(rec.psd.as_ptr(), out_psd, rec.psd.len());
            ApcwStatus::Ok
        }
        Err(e) => fail(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beam_round_trip_and_modes() {
        let beam = apcw_beam_reference_device();
        let mut table: *mut ApcwModeTable = ptr::null_mut();
        let status = unsafe { apcw_analytic_modes(beam, 3, &mut table) };
        assert_eq!(status, ApcwStatus::Ok);
        assert_eq!(unsafe { apcw_mode_table_len(table) }, 3);
        let mut mode = ApcwMode {
            p: 0,
            frequency: 0.0,
            m_eff: 0.0,
            alpha_zp: 0.0,
            alpha_th_rms: 0.0,
            q: 0.0,
        };
        assert_eq!(
            unsafe { apcw_mode_table_get(table, 0, &mut mode) },
            ApcwStatus::Ok
        );
        assert!(mode.frequency > 2.3e6 && mode.frequency < 2.4e6);
        assert_eq!(
            unsafe { apcw_mode_table_get(table, 9, &mut mode) },
            ApcwStatus::InvalidArgument
        );
        unsafe {
            apcw_mode_table_free(table);
            apcw_beam_free(beam);
        }
    }

    #[test]
    fn error_message_is_populated() {
        let mut out = 0.0;
        let status = unsafe { apcw_zero_point_amplitude(-1.0, 1.0, &mut out) };
        assert_eq!(status, ApcwStatus::Domain);
        let msg = unsafe { CStr::from_ptr(apcw_last_error_message()) };
        assert!(!msg.to_bytes().is_empty());
    }

    #[test]
    fn dispersion_ladder_via_ffi() {
        let disp = apcw_dispersion_reference_device();
        let mut rungs = [0.0f64; 3];
        let status = unsafe { apcw_resonance_ladder(disp, 3, rungs.as_mut_ptr()) };
        assert_eq!(status, ApcwStatus::Ok);
        assert!(rungs[0] > rungs[1] && rungs[1] > rungs[2]);
        let mut k = 0.0;
        assert_eq!(
            unsafe { apcw_delta_kx(disp, 348e12, &mut k) },
            ApcwStatus::BandGap
        );
        unsafe { apcw_dispersion_free(disp) };
    }

    #[test]
    fn trajectory_buffer_access() {
        let mut trace: *mut ApcwTrace = ptr::null_mut();
        let status = unsafe {
            apcw_langevin_trajectory(1e3, 50.0, 1e-12, 300.0, 2e4, 1.0, 7, &mut trace)
        };
        assert_eq!(status, ApcwStatus::Ok);
        let len = unsafe { apcw_trace_len(trace) };
        assert_eq!(len, 20_000);
        let data = unsafe { std::slice::from_raw_parts(apcw_trace_data(trace), len) };
        assert!(data.iter().any(|&x| x != 0.0));
        unsafe { apcw_trace_free(trace) };
    }

    #[test]
    fn json_beam_parse_errors_are_reported() {
        let bad = CString::new("{\"length\": -1}").unwrap();
        let mut beam: *mut ApcwBeam = ptr::null_mut();
        let status = unsafe { apcw_beam_from_json(bad.as_ptr(), &mut beam) };
        assert_eq!(status, ApcwStatus::Parse);
    }

    #[test]
    fn json_beam_accepts_unit_suffixes() {
        let doc = CString::new(
            r#"{
                "length": "107 um",
                "youngs_modulus": "250 GPa",
                "density": 3180,
                "stress": "800 MPa",
                "cross_section": [
                    {"x_start": 0, "width": "280 nm", "thickness": "200 nm"}
                ],
                "pair_gap": "238 nm"
            }"#,
        )
        .unwrap();
        let mut beam: *mut ApcwBeam = ptr::null_mut();
        assert_eq!(
            unsafe { apcw_beam_from_json(doc.as_ptr(), &mut beam) },
            ApcwStatus::Ok
        );
        let mut table: *mut ApcwModeTable = ptr::null_mut();
        assert_eq!(
            unsafe { apcw_analytic_modes(beam, 1, &mut table) },
            ApcwStatus::Ok
        );
        let mut mode = ApcwMode {
            p: 0,
            frequency: 0.0,
            m_eff: 0.0,
            alpha_zp: 0.0,
            alpha_th_rms: 0.0,
            q: 0.0,
        };
        unsafe { apcw_mode_table_get(table, 0, &mut mode) };
        assert!((mode.frequency - 2.3669e6).abs() < 2e3);
        unsafe {
            apcw_mode_table_free(table);
            apcw_beam_free(beam);
        }
    }
}
