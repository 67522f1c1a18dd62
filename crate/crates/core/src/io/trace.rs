//! Compact binary time-series format.
//!
//! Layout, all little-endian:
//!
//! | offset | size | field                      |
//! |--------|------|----------------------------|
//! | 0      | 8    | magic `b"APCWTRC\0"`       |
//! | 8      | 4    | version (u32, currently 1) |
//! | 12     | 8    | sample_rate (f64, Hz)      |
//! | 20     | 8    | length (u64, sample count) |
//! | 28     | 8*length | samples (f64)          |

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::noise::Trajectory;

pub const TRACE_MAGIC: &[u8; 8] = b"APCWTRC\0";
pub const TRACE_VERSION: u32 = 1;

pub fn write_trace<W: Write>(mut w: W, sample_rate: f64, samples: &[f64]) -> Result<()> {
    w.write_all(TRACE_MAGIC)?;
    w.write_all(&TRACE_VERSION.to_le_bytes())?;
    w.write_all(&sample_rate.to_le_bytes())?;
    w.write_all(&(samples.len() as u64).to_le_bytes())?;
    for s in samples {
        w.write_all(&s.to_le_bytes())?;
    }
    Ok(())
}

pub fn write_trace_file<P: AsRef<Path>>(path: P, sample_rate: f64, samples: &[f64]) -> Result<()> {
    let f = std::fs::File::create(path)?;
    write_trace(std::io::BufWriter::new(f), sample_rate, samples)
}

pub fn read_trace<R: Read>(mut r: R) -> Result<Trajectory> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != TRACE_MAGIC {
        return Err(Error::Parse("not a trace file (bad magic)".into()));
    }
    let mut b4 = [0u8; 4];
    r.read_exact(&mut b4)?;
    let version = u32::from_le_bytes(b4);
    if version != TRACE_VERSION {
        return Err(Error::Parse(format!("unsupported trace version {version}")));
    }
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b8)?;
    let sample_rate = f64::from_le_bytes(b8);
    r.read_exact(&mut b8)?;
    let len = u64::from_le_bytes(b8) as usize;
    let mut samples = Vec::with_capacity(len);
    for _ in 0..len {
        r.read_exact(&mut b8)?;
        samples.push(f64::from_le_bytes(b8));
    }
    Ok(Trajectory {
        sample_rate,
        samples,
        warnings: vec![],
    })
}

pub fn read_trace_file<P: AsRef<Path>>(path: P) -> Result<Trajectory> {
    let f = std::fs::File::open(path)?;
    read_trace(std::io::BufReader::new(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_wrong_magic_and_version() {
        let mut buf = Vec::new();
        write_trace(&mut buf, 100.0, &[1.0, 2.0]).unwrap();
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(read_trace(bad.as_slice()).is_err());
        let mut bad = buf.clone();
        bad[8] = 9;
        assert!(read_trace(bad.as_slice()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn round_trip_is_bit_exact(
            samples in proptest::collection::vec(-1e12f64..1e12, 0..500),
            fs in 1.0f64..1e9,
        ) {
            let mut buf = Vec::new();
            write_trace(&mut buf, fs, &samples).unwrap();
            let back = read_trace(buf.as_slice()).unwrap();
            prop_assert_eq!(back.sample_rate.to_bits(), fs.to_bits());
            prop_assert_eq!(back.samples.len(), samples.len());
            for (a, b) in back.samples.iter().zip(&samples) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }
}
