//! Command implementations behind the `apcw` binary.
//!
//! Every command is a pure function of (config, options, seed) that writes
//! its outputs under one directory and returns a serializable summary, so
//! the binary stays a thin argument-parsing shell and integration tests can
//! call commands directly.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::ScenarioConfig;
use crate::error::{Error, Result};
use crate::io;
use crate::mech::{
    analytic_modes, dispersion_deviation, fem_eigenmodes, phononic_bands, BoundaryCondition,
    MechMode,
};
use crate::noise::{
    langevin_trajectory, segment_length_for_rbw, sql_report, welch_psd, LangevinParams,
    ProbeReadout, SqlReport, Trajectory,
};
use crate::optics::{
    coupling_from_slope, delta_kx, resonance_ladder, rung_band_edge_sensitivity, xi_dispersive,
};
use crate::scenario::{fundamental_mode, scenario_modes};
use crate::spectrum::{PsdUnits, SpectrumRecord};
use crate::transduce::{
    phase_overlap, rms_phase_estimate, synth_homodyne_trace, BandEdgeParams, TransductionModel,
};

/// Which transduction regime a spectrum run models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RegimeFlag {
    Dispersive,
    BandEdge,
}

/// Resolve the output directory: explicit flag, then APCW_OUT, then config.
pub fn resolve_outdir(flag: Option<&Path>, config: &ScenarioConfig) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Ok(env) = std::env::var("APCW_OUT") {
        if !env.is_empty() {
            return PathBuf::from(env);
        }
    }
    PathBuf::from(&config.outputs.directory)
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Numerical(format!("serialization failed: {e}")))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

// ---------------------------------------------------------------- modes --

#[derive(Debug, Clone, Serialize)]
pub struct ModesSummary {
    pub f1_analytic: Option<f64>,
    pub f1_fem: f64,
    pub max_rel_error: Option<f64>,
    pub n_modes: usize,
    pub boundary: String,
    pub files: Vec<String>,
}

pub struct ModesOptions {
    pub p_max: usize,
    pub elements: usize,
    pub boundary: Option<BoundaryCondition>,
}

impl Default for ModesOptions {
    fn default() -> Self {
        ModesOptions {
            p_max: 5,
            elements: 200,
            boundary: None,
        }
    }
}

/// Analytic and FEM mode tables, their comparison, the string-ladder
/// deviation columns, and (when configured) the phononic band structure.
pub fn cmd_modes(config: &ScenarioConfig, opts: &ModesOptions, outdir: &Path) -> Result<ModesSummary> {
    ensure_dir(outdir)?;
    let mut beam = config.beam.clone();
    if let Some(bc) = opts.boundary {
        beam.boundary = bc;
    }

    let fem = fem_eigenmodes(&beam, opts.p_max, opts.elements)?;
    let analytic = if beam.is_uniform() && beam.boundary == BoundaryCondition::HingedHinged {
        Some(analytic_modes(&beam, opts.p_max)?)
    } else {
        None
    };

    let mut files = Vec::new();
    io::write_mode_table_file(outdir.join("modes_fem.csv"), &fem)?;
    files.push("modes_fem.csv".into());

    let mut max_rel_error = None;
    if let Some(analytic) = &analytic {
        io::write_mode_table_file(outdir.join("modes_analytic.csv"), analytic)?;
        files.push("modes_analytic.csv".into());

        let dev_a = dispersion_deviation(analytic).ok();
        let dev_f = dispersion_deviation(&fem).ok();
        let mut rows = Vec::new();
        let mut worst: f64 = 0.0;
        for (i, (a, f)) in analytic.iter().zip(&fem).enumerate() {
            let rel = (f.frequency - a.frequency).abs() / a.frequency;
            worst = worst.max(rel);
            rows.push(vec![
                (i + 1) as f64,
                a.frequency,
                f.frequency,
                rel,
                dev_a.as_ref().map(|d| d[i].1).unwrap_or(f64::NAN),
                dev_f.as_ref().map(|d| d[i].1).unwrap_or(f64::NAN),
            ]);
        }
        io::write_table_file(
            outdir.join("comparison.csv"),
            "p,f_analytic_Hz,f_fem_Hz,rel_error,deltaf_analytic_Hz,deltaf_fem_Hz",
            &rows,
        )?;
        files.push("comparison.csv".into());
        max_rel_error = Some(worst);
    }

    // Injected family fundamentals at the configured temperature.
    let scenario = scenario_modes(config, opts.p_max)?;
    let mut family_modes: Vec<MechMode> = scenario.ladder.clone();
    family_modes.extend(scenario.extra.iter().cloned());
    io::write_mode_table_file(outdir.join("modes_families.csv"), &family_modes)?;
    files.push("modes_families.csv".into());

    if let Some(ph) = &config.phononic {
        let bands = phononic_bands(&ph.cell, ph.f_max, ph.n_q)?;
        let mut rows = Vec::new();
        for point in &bands.points {
            for (b, f) in point.frequencies.iter().enumerate() {
                rows.push(vec![point.q, b as f64, *f]);
            }
        }
        io::write_table_file(outdir.join("phononic_bands.csv"), "q_rad_per_m,band,f_Hz", &rows)?;
        let gap_rows: Vec<Vec<f64>> = bands.gaps.iter().map(|(lo, hi)| vec![*lo, *hi]).collect();
        io::write_table_file(outdir.join("phononic_gaps.csv"), "f_lo_Hz,f_hi_Hz", &gap_rows)?;
        files.push("phononic_bands.csv".into());
        files.push("phononic_gaps.csv".into());
    }

    write_gnuplot_stub(
        &outdir.join("modes.gp"),
        "comparison.csv",
        "p",
        "f_fem_Hz",
        "mode ladder",
    )?;
    files.push("modes.gp".into());

    let summary = ModesSummary {
        f1_analytic: analytic.as_ref().map(|a| a[0].frequency),
        f1_fem: fem[0].frequency,
        max_rel_error,
        n_modes: fem.len(),
        boundary: format!("{:?}", beam.boundary),
        files,
    };
    write_json(&outdir.join("modes_summary.json"), &summary)?;
    Ok(summary)
}

// ------------------------------------------------------------- spectrum --

#[derive(Debug, Clone, Serialize)]
pub struct PeakEntry {
    pub frequency: f64,
    pub power: f64,
    pub label: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumSummary {
    pub regime: String,
    pub seed: u64,
    pub n_samples: usize,
    pub sample_rate: f64,
    pub rms_phase_f1: f64,
    pub peaks: Vec<PeakEntry>,
    pub warnings: Vec<String>,
    pub files: Vec<String>,
}

/// Synthesize thermal trajectories for the configured ladder, run them
/// through the homodyne model, and emit the trace, its Welch spectrum, and an
/// annotated peak list.
pub fn cmd_spectrum(
    config: &ScenarioConfig,
    regime: RegimeFlag,
    seed: u64,
    outdir: &Path,
) -> Result<SpectrumSummary> {
    ensure_dir(outdir)?;
    let sp = &config.spectrum;
    let modes = scenario_modes(config, sp.p_max)?.ladder;

    // One deterministic sub-seed per mode, plus one for detection noise.
    let sub_seed = |k: usize| seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k as u64);

    let mut warnings = Vec::new();
    let trajectories: Vec<Trajectory> = modes
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let params = LangevinParams::for_mode(
                m,
                config.temperature,
                sp.sample_rate,
                sp.duration,
                sub_seed(i + 1),
            );
            langevin_trajectory(&params)
        })
        .collect::<Result<Vec<_>>>()?;
    for t in &trajectories {
        warnings.extend(t.warnings.iter().cloned());
    }

    let mode_freqs: Vec<f64> = modes.iter().map(|m| m.frequency).collect();
    let mut probe = config.probe;

    let (model, band_edge) = match regime {
        RegimeFlag::Dispersive => {
            let xi = xi_dispersive(&config.dispersion, probe.optical_frequency)?;
            // Anti-phase beam motion changes the gap by twice the mode
            // amplitude.
            (TransductionModel::dispersive_from_modes(&modes, xi, 2.0), None)
        }
        RegimeFlag::BandEdge => {
            let ladder = resonance_ladder(&config.dispersion, 1)?;
            let (n1, nu1) = ladder[0];
            let sens = rung_band_edge_sensitivity(&config.dispersion, n1, nu1);
            let dnu_dg = sens * config.dispersion.band_edge_gap_slope;
            // Anti-phase gap motion doubles the per-beam displacement; the
            // mode-shape average along the structure brings the odd-p factor
            // 2/(p pi) and cancels even p.
            let gains: Vec<f64> = modes
                .iter()
                .map(|m| {
                    let overlap = phase_overlap(&m.shape, 1.0) / config.beam.length;
                    let snapped = if overlap.abs() < 1e-10 { 0.0 } else { overlap };
                    2.0 * dnu_dg * snapped
                })
                .collect();
            probe.optical_frequency = nu1;
            let params = BandEdgeParams {
                resonance_nu1: nu1,
                linewidth: config.band_edge.linewidth,
                quadratic_gain: config.band_edge.quadratic_gain,
            };
            (
                TransductionModel::band_edge(gains, config.band_edge.quadratic_gain),
                Some(params),
            )
        }
    };

    let traj_refs: Vec<&Trajectory> = trajectories.iter().collect();
    let trace = synth_homodyne_trace(
        &traj_refs,
        &model,
        &probe,
        band_edge.as_ref(),
        &mode_freqs,
        sub_seed(0),
    )?;
    warnings.extend(trace.warnings.iter().cloned());

    let segment = segment_length_for_rbw(sp.sample_rate, sp.rbw)?;
    let spec = welch_psd(
        &trace.samples,
        segment.min(trace.samples.len()),
        0.5,
        sp.sample_rate,
        PsdUnits::DimensionlessPerHz,
    )?;

    let f1 = modes[0].frequency;
    let rms_phase_f1 = rms_phase_estimate(
        &trace.samples,
        sp.sample_rate,
        f1,
        100e3,
        trace.fringe_amplitude,
    )?;

    let peaks = annotate_peaks(&spec, &mode_freqs);

    let mut files = Vec::new();
    if config.outputs.formats.iter().any(|f| f == "csv") {
        io::write_series_file(outdir.join("trace.csv"), sp.sample_rate, &trace.samples)?;
        files.push("trace.csv".into());
    }
    if config.outputs.formats.iter().any(|f| f == "bin") {
        io::write_trace_file(outdir.join("trace.bin"), sp.sample_rate, &trace.samples)?;
        files.push("trace.bin".into());
    }
    io::write_spectrum_file(outdir.join("spectrum.csv"), &spec)?;
    files.push("spectrum.csv".into());
    write_json(&outdir.join("peaks.json"), &peaks)?;
    files.push("peaks.json".into());
    write_gnuplot_stub(
        &outdir.join("spectrum.gp"),
        "spectrum.csv",
        "f_Hz",
        "psd",
        "homodyne spectrum",
    )?;
    files.push("spectrum.gp".into());

    let summary = SpectrumSummary {
        regime: format!("{regime:?}"),
        seed,
        n_samples: trace.samples.len(),
        sample_rate: sp.sample_rate,
        rms_phase_f1,
        peaks,
        warnings,
        files,
    };
    write_json(&outdir.join("spectrum_summary.json"), &summary)?;
    Ok(summary)
}

/// Local-maximum peak search with harmonic / intermodulation labeling.
fn annotate_peaks(spec: &SpectrumRecord, mode_freqs: &[f64]) -> Vec<PeakEntry> {
    let n = spec.psd.len();
    if n < 8 {
        return Vec::new();
    }
    let mut sorted: Vec<f64> = spec.psd.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let median = sorted[n / 2];
    let threshold = median * 30.0;

    let tol = 2.0 * spec.resolution_bandwidth;
    let f1 = mode_freqs.first().copied().unwrap_or(0.0);

    let mut peaks = Vec::new();
    for i in 5..n - 5 {
        let p = spec.psd[i];
        if p < threshold {
            continue;
        }
        if p <= spec.psd[i - 1] || p < spec.psd[i + 1] {
            continue;
        }
        // Narrow lines concentrate within +-2 bins; demanding contrast
        // against the +-4..5 bin surroundings rejects bumps riding on the
        // leakage skirt of a much stronger neighbor.
        let local_floor = spec.psd[i - 5]
            .max(spec.psd[i - 4])
            .max(spec.psd[i + 4])
            .max(spec.psd[i + 5]);
        if p < 3.0 * local_floor {
            continue;
        }
        let power: f64 = spec.psd[i - 2..=i + 2].iter().sum::<f64>() * spec.resolution_bandwidth;
        let f = spec.freqs[i];
        peaks.push(PeakEntry {
            frequency: f,
            power,
            label: label_peak(f, f1, mode_freqs, tol),
        });
    }
    // Strongest first, stable order for equal powers.
    peaks.sort_by(|a, b| {
        b.power
            .partial_cmp(&a.power)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.frequency.partial_cmp(&b.frequency).unwrap_or(std::cmp::Ordering::Equal))
    });
    peaks
}

fn label_peak(f: f64, f1: f64, mode_freqs: &[f64], tol: f64) -> String {
    for (i, fp) in mode_freqs.iter().enumerate() {
        if (f - fp).abs() <= tol {
            return format!("f{}", i + 1);
        }
    }
    if f1 > 0.0 {
        for h in 2..=12 {
            if (f - h as f64 * f1).abs() <= tol {
                return format!("{h}f1");
            }
        }
    }
    for (i, fi) in mode_freqs.iter().enumerate() {
        if (f - 2.0 * fi).abs() <= tol {
            return format!("2f{}", i + 1);
        }
        for (j, fj) in mode_freqs.iter().enumerate().skip(i + 1) {
            if (f - (fi + fj)).abs() <= tol {
                return format!("f{}+f{}", i + 1, j + 1);
            }
            if (f - (fj - fi)).abs() <= tol {
                return format!("f{}-f{}", j + 1, i + 1);
            }
        }
    }
    "unidentified".into()
}

// --------------------------------------------------------------- report --

#[derive(Debug, Clone, Serialize)]
pub struct ReportSummary {
    pub report: SqlReport,
    pub transduction_rad_per_m: f64,
    pub files: Vec<String>,
}

/// Sensitivity / standard-quantum-limit block for the configured fundamental.
pub fn cmd_report(config: &ScenarioConfig, outdir: &Path) -> Result<ReportSummary> {
    ensure_dir(outdir)?;
    let mode = fundamental_mode(config)?;

    // Transduction from the dispersive model at the configured probe; the
    // factor 2 converts the mode amplitude to the gap change it produces.
    let xi = xi_dispersive(&config.dispersion, config.probe.optical_frequency)?;
    let transduction = 2.0 * phase_overlap(&mode.shape, xi);

    let report = sql_report(
        &mode,
        ProbeReadout {
            power: config.probe.power_out,
            optical_frequency: config.probe.optical_frequency,
        },
        config.temperature,
        Some(transduction),
    )?;

    write_json(&outdir.join("report.json"), &report)?;
    std::fs::write(outdir.join("report.txt"), report.render_text())?;

    Ok(ReportSummary {
        report,
        transduction_rad_per_m: transduction,
        files: vec!["report.json".into(), "report.txt".into()],
    })
}

// ------------------------------------------------------------- coupling --

#[derive(Debug, Clone, Serialize)]
pub struct CouplingSummary {
    pub n_rungs: usize,
    pub nu_1: f64,
    pub coupling_at_nu1: f64,
    pub max_coupling: f64,
    pub truncated: bool,
    pub files: Vec<String>,
}

pub struct CouplingOptions {
    pub nu_start: Option<f64>,
    pub nu_stop: Option<f64>,
    pub points: usize,
    pub n_rungs: usize,
}

impl Default for CouplingOptions {
    fn default() -> Self {
        CouplingOptions {
            nu_start: None,
            nu_stop: None,
            points: 241,
            n_rungs: 8,
        }
    }
}

/// Tabulate the dispersive transduction factor, the resonance ladder, and
/// per-rung coupling rates across a probe-frequency sweep.
pub fn cmd_coupling(
    config: &ScenarioConfig,
    opts: &CouplingOptions,
    outdir: &Path,
) -> Result<CouplingSummary> {
    ensure_dir(outdir)?;
    let disp = &config.dispersion;
    let mode = fundamental_mode(config)?;

    let ladder = resonance_ladder(disp, opts.n_rungs)?;
    let nu_1 = ladder[0].1;

    // Per-rung sensitivity to the band edge and coupling rate.
    let mut ladder_rows = Vec::new();
    let mut couplings = Vec::new();
    for &(n, nu_n) in &ladder {
        let k = delta_kx(disp, nu_n)?;
        let k_target = n as f64 * std::f64::consts::PI / disp.effective_length();
        let sens = rung_band_edge_sensitivity(disp, n, nu_n);
        let dnu_dg = sens * disp.band_edge_gap_slope;
        let g = coupling_from_slope(dnu_dg, &mode, true);
        couplings.push(g);
        ladder_rows.push(vec![
            n as f64,
            nu_n,
            k / k_target - 1.0,
            sens,
            dnu_dg,
            g,
        ]);
    }
    io::write_table_file(
        outdir.join("ladder.csv"),
        "n,nu_Hz,delta_kx_rel_residual,dnu_dnube,dnu_dgap_Hz_per_m,G_Hz",
        &ladder_rows,
    )?;

    // Probe sweep strictly below the band edge; truncate anything that
    // reaches into the gap.
    let default_start = disp.nu_be - 12e12;
    let default_stop = disp.nu_be - 20e9;
    let start = opts.nu_start.unwrap_or(default_start);
    let stop = opts.nu_stop.unwrap_or(default_stop);
    if !(start < stop) {
        return Err(Error::Domain("sweep needs nu_start < nu_stop".into()));
    }
    let margin = 1e9;
    let mut truncated = false;
    let stop = if stop > disp.nu_be - margin {
        truncated = true;
        disp.nu_be - margin
    } else {
        stop
    };

    let mut sweep_rows = Vec::new();
    for i in 0..opts.points {
        let nu = start + (stop - start) * i as f64 / (opts.points - 1) as f64;
        let xi = xi_dispersive(disp, nu)?;
        // Nearest rung and its coupling.
        let (idx, _) = ladder
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let da = (a.1 - nu).abs();
                let db = (b.1 - nu).abs();
                da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("ladder is non-empty");
        sweep_rows.push(vec![
            nu,
            delta_kx(disp, nu)?,
            xi,
            ladder[idx].0 as f64,
            couplings[idx],
        ]);
    }
    io::write_table_file(
        outdir.join("coupling_sweep.csv"),
        "nu_Hz,delta_kx_rad_per_m,xi_rad_per_m2,nearest_rung,G_Hz",
        &sweep_rows,
    )?;

    write_gnuplot_stub(
        &outdir.join("coupling.gp"),
        "coupling_sweep.csv",
        "nu_Hz",
        "G_Hz",
        "coupling sweep",
    )?;

    let summary = CouplingSummary {
        n_rungs: ladder.len(),
        nu_1,
        coupling_at_nu1: couplings[0],
        max_coupling: couplings.iter().copied().fold(0.0, f64::max),
        truncated,
        files: vec![
            "ladder.csv".into(),
            "coupling_sweep.csv".into(),
            "coupling.gp".into(),
        ],
    };
    write_json(&outdir.join("coupling_summary.json"), &summary)?;
    Ok(summary)
}

// ---------------------------------------------------------------- misc --

fn write_gnuplot_stub(path: &Path, data: &str, x: &str, y: &str, title: &str) -> Result<()> {
    let text = format!(
        "# gnuplot stub; run: gnuplot -p {file}\nset datafile separator ','\nset key autotitle columnhead\nset title '{title}'\nplot '{data}' using '{x}':'{y}' with lines\n",
        file = path.file_name().and_then(|s| s.to_str()).unwrap_or("plot.gp"),
    );
    std::fs::write(path, text)?;
    Ok(())
}
