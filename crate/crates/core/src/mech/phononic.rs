//! 1D phononic band structure of a periodically loaded string.
//!
//! Transverse waves on a string under tension F with piecewise-constant
//! linear mass density mu_i propagate at c_i = sqrt(F / mu_i) in each
//! segment. A per-cell transfer matrix on the state (u, u') gives the Bloch
//! condition `cos(q a) = tr(M_cell) / 2`; real Bloch wavevectors exist where
//! |tr/2| <= 1 and band gaps open where it exceeds 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhononicSegment {
    /// Segment length, m.
    pub length: f64,
    /// Linear mass density, kg/m.
    pub linear_mass_density: f64,
}

/// One unit cell of the periodic string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhononicCellSpec {
    pub segments: Vec<PhononicSegment>,
    /// String tension, N.
    pub tension: f64,
}

impl PhononicCellSpec {
    pub fn validate(&self) -> Result<()> {
        if self.segments.is_empty() {
            return Err(Error::Validation("cell needs at least one segment".into()));
        }
        for (i, s) in self.segments.iter().enumerate() {
            if !(s.length > 0.0) || !(s.linear_mass_density > 0.0) {
                return Err(Error::Validation(format!(
                    "segment {i}: length and density must be positive"
                )));
            }
        }
        if !(self.tension > 0.0) {
            return Err(Error::Validation("tension must be positive".into()));
        }
        Ok(())
    }

    /// Cell period a, m.
    pub fn cell_length(&self) -> f64 {
        self.segments.iter().map(|s| s.length).sum()
    }
}

/// Band frequencies at one Bloch wavevector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandPoint {
    /// Bloch wavevector in [0, pi/a], rad/m.
    pub q: f64,
    /// Band frequencies at this q, ascending, Hz.
    pub frequencies: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhononicBands {
    pub points: Vec<BandPoint>,
    /// Frequency intervals with no real Bloch wavevector, Hz.
    pub gaps: Vec<(f64, f64)>,
    pub cell_length: f64,
}

/// 2x2 transfer matrix across one segment at angular frequency `omega`.
fn segment_matrix(seg: &PhononicSegment, tension: f64, omega: f64) -> [[f64; 2]; 2] {
    let c = (tension / seg.linear_mass_density).sqrt();
    let k = omega / c;
    let l = seg.length;
    if k * l < 1e-9 {
        // Long-wavelength limit: straight-line propagation of (u, u').
        [[1.0, l], [0.0, 1.0]]
    } else {
        let (s, co) = (k * l).sin_cos();
        [[co, s / k], [-k * s, co]]
    }
}

fn mat_mul(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

/// Full-cell transfer matrix at frequency `f` (Hz).
pub fn cell_matrix(cell: &PhononicCellSpec, f: f64) -> [[f64; 2]; 2] {
    let omega = 2.0 * std::f64::consts::PI * f;
    let mut m = [[1.0, 0.0], [0.0, 1.0]];
    for seg in &cell.segments {
        m = mat_mul(segment_matrix(seg, cell.tension, omega), m);
    }
    m
}

/// Half-trace of the cell matrix; |value| <= 1 marks a propagating band.
pub fn half_trace(cell: &PhononicCellSpec, f: f64) -> f64 {
    let m = cell_matrix(cell, f);
    0.5 * (m[0][0] + m[1][1])
}

/// Band structure up to `f_max` on `n_q` Bloch wavevectors spanning
/// [0, pi/a], plus the band-gap intervals found on a dense frequency scan.
pub fn phononic_bands(cell: &PhononicCellSpec, f_max: f64, n_q: usize) -> Result<PhononicBands> {
    cell.validate()?;
    if !(f_max > 0.0) {
        return Err(Error::Domain("f_max must be positive".into()));
    }
    if n_q < 2 {
        return Err(Error::Domain("n_q must be at least 2".into()));
    }

    let a = cell.cell_length();
    let n_scan = (16 * n_q).max(4096);
    let df = f_max / n_scan as f64;

    // Dense scan of the half-trace for gap detection and root bracketing.
    let traces: Vec<f64> = (0..=n_scan).map(|i| half_trace(cell, i as f64 * df)).collect();

    let mut gaps = Vec::new();
    let mut gap_start: Option<f64> = None;
    for (i, trace) in traces.iter().enumerate() {
        let f = i as f64 * df;
        let in_gap = trace.abs() > 1.0 && f > 0.0;
        match (in_gap, gap_start) {
            (true, None) => {
                let lo = if i > 0 {
                    refine_crossing(cell, (i - 1) as f64 * df, f)
                } else {
                    0.0
                };
                gap_start = Some(lo);
            }
            (false, Some(lo)) => {
                let hi = refine_crossing(cell, (i - 1) as f64 * df, f);
                gaps.push((lo, hi));
                gap_start = None;
            }
            _ => {}
        }
    }
    if let Some(lo) = gap_start {
        gaps.push((lo, f_max));
    }

    let mut points = Vec::with_capacity(n_q);
    for iq in 0..n_q {
        let q = (std::f64::consts::PI / a) * iq as f64 / (n_q - 1) as f64;
        let target = (q * a).cos();
        let mut frequencies = Vec::new();
        for i in 1..=n_scan {
            let g0 = traces[i - 1] - target;
            let g1 = traces[i] - target;
            if g0 == 0.0 && i == 1 {
                frequencies.push(0.0);
            }
            if g0 * g1 < 0.0 || g1 == 0.0 {
                let f_lo = (i - 1) as f64 * df;
                let f_hi = i as f64 * df;
                frequencies.push(bisect(|f| half_trace(cell, f) - target, f_lo, f_hi));
            }
        }
        points.push(BandPoint { q, frequencies });
    }

    Ok(PhononicBands {
        points,
        gaps,
        cell_length: a,
    })
}

/// Locate the |tr/2| = 1 crossing between two scan frequencies.
fn refine_crossing(cell: &PhononicCellSpec, f_lo: f64, f_hi: f64) -> f64 {
    bisect(|f| half_trace(cell, f).abs() - 1.0, f_lo, f_hi)
}

fn bisect<F: Fn(f64) -> f64>(g: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut g_lo = g(lo);
    for _ in 0..90 {
        let mid = 0.5 * (lo + hi);
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return mid;
        }
        if g_lo * g_mid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            g_lo = g_mid;
        }
        if (hi - lo) <= f64::EPSILON * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}
