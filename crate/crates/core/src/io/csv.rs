//! CSV emission for mode tables, spectra, and time series.
//!
//! All numeric output uses a fixed scientific format so identical inputs
//! produce byte-identical files.

use std::io::Write;
use std::path::Path;

use crate::error::Result;
use crate::mech::MechMode;
use crate::spectrum::SpectrumRecord;

fn fmt(v: f64) -> String {
    format!("{v:.12e}")
}

/// Mode table with the canonical header
/// `p, family, f_Hz, m_eff_kg, alpha_zp_m, alpha_th_m, Q`.
pub fn write_mode_table<W: Write>(mut w: W, modes: &[MechMode]) -> Result<()> {
    writeln!(w, "p,family,f_Hz,m_eff_kg,alpha_zp_m,alpha_th_m,Q")?;
    for m in modes {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            m.index,
            m.family,
            fmt(m.frequency),
            fmt(m.m_eff),
            fmt(m.alpha_zp),
            fmt(m.alpha_th_rms),
            fmt(m.q)
        )?;
    }
    Ok(())
}

pub fn write_mode_table_file<P: AsRef<Path>>(path: P, modes: &[MechMode]) -> Result<()> {
    let f = std::fs::File::create(path)?;
    write_mode_table(std::io::BufWriter::new(f), modes)
}

/// Spectrum as `f_Hz,psd` rows with units and metadata in header comments.
pub fn write_spectrum<W: Write>(mut w: W, rec: &SpectrumRecord) -> Result<()> {
    writeln!(w, "# units: {}", rec.units)?;
    writeln!(w, "# resolution_bandwidth_Hz: {}", fmt(rec.resolution_bandwidth))?;
    for (k, v) in &rec.metadata {
        writeln!(w, "# {k}: {v}")?;
    }
    writeln!(w, "f_Hz,psd")?;
    for (f, p) in rec.freqs.iter().zip(&rec.psd) {
        writeln!(w, "{},{}", fmt(*f), fmt(*p))?;
    }
    Ok(())
}

pub fn write_spectrum_file<P: AsRef<Path>>(path: P, rec: &SpectrumRecord) -> Result<()> {
    let f = std::fs::File::create(path)?;
    write_spectrum(std::io::BufWriter::new(f), rec)
}

/// Time series as `t_s,value` rows.
pub fn write_series<W: Write>(mut w: W, sample_rate: f64, samples: &[f64]) -> Result<()> {
    writeln!(w, "t_s,value")?;
    for (i, v) in samples.iter().enumerate() {
        writeln!(w, "{},{}", fmt(i as f64 / sample_rate), fmt(*v))?;
    }
    Ok(())
}

pub fn write_series_file<P: AsRef<Path>>(path: P, sample_rate: f64, samples: &[f64]) -> Result<()> {
    let f = std::fs::File::create(path)?;
    write_series(std::io::BufWriter::new(f), sample_rate, samples)
}

/// Generic table with caller-provided header and rows.
pub fn write_table<W: Write>(mut w: W, header: &str, rows: &[Vec<f64>]) -> Result<()> {
    writeln!(w, "{header}")?;
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| fmt(*v)).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn write_table_file<P: AsRef<Path>>(path: P, header: &str, rows: &[Vec<f64>]) -> Result<()> {
    let f = std::fs::File::create(path)?;
    write_table(std::io::BufWriter::new(f), header, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::PsdUnits;

    #[test]
    fn mode_table_header_is_canonical() {
        let mut buf = Vec::new();
        write_mode_table(&mut buf, &[]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("p,family,f_Hz,m_eff_kg,alpha_zp_m,alpha_th_m,Q\n"));
    }

    #[test]
    fn spectrum_carries_units_comment() {
        let rec = SpectrumRecord::new(
            vec![0.0, 1.0, 2.0],
            vec![0.5, 0.5, 0.5],
            PsdUnits::RadianSquaredPerHz,
        )
        .unwrap();
        let mut buf = Vec::new();
        write_spectrum(&mut buf, &rec).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("# units: rad^2/Hz"));
        assert!(text.contains("f_Hz,psd"));
    }

    #[test]
    fn deterministic_formatting() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_series(&mut a, 10.0, &[0.1, 0.2]).unwrap();
        write_series(&mut b, 10.0, &[0.1, 0.2]).unwrap();
        assert_eq!(a, b);
    }
}
