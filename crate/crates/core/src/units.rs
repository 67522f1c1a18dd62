//! Unit-suffixed quantity parsing for the configuration boundary.
//!
//! Config files may give dimensioned values either as plain numbers (taken as
//! SI base units) or as strings with an explicit unit suffix, e.g. `"370 nm"`,
//! `"800 MPa"`, `"344 THz"`, `"0.034 THz/nm"`. Everything is converted to SI
//! at the boundary; the library itself works in strict SI throughout.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical dimension expected for a config field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Pressure,
    Frequency,
    Temperature,
    Power,
    MassDensity,
    LinearMassDensity,
    Mass,
    Force,
    Time,
    Angle,
    FrequencyPerLength,
    Dimensionless,
}

impl Dimension {
    fn si_unit(self) -> &'static str {
        match self {
            Dimension::Length => "m",
            Dimension::Pressure => "Pa",
            Dimension::Frequency => "Hz",
            Dimension::Temperature => "K",
            Dimension::Power => "W",
            Dimension::MassDensity => "kg/m^3",
            Dimension::LinearMassDensity => "kg/m",
            Dimension::Mass => "kg",
            Dimension::Force => "N",
            Dimension::Time => "s",
            Dimension::Angle => "rad",
            Dimension::FrequencyPerLength => "Hz/m",
            Dimension::Dimensionless => "",
        }
    }

    fn factor(self, unit: &str) -> Option<f64> {
        let table: &[(&str, f64)] = match self {
            Dimension::Length => &[
                ("m", 1.0),
                ("cm", 1e-2),
                ("mm", 1e-3),
                ("um", 1e-6),
                ("µm", 1e-6),
                ("nm", 1e-9),
                ("pm", 1e-12),
                ("fm", 1e-15),
            ],
            Dimension::Pressure => &[
                ("Pa", 1.0),
                ("kPa", 1e3),
                ("MPa", 1e6),
                ("GPa", 1e9),
            ],
            Dimension::Frequency => &[
                ("Hz", 1.0),
                ("kHz", 1e3),
                ("MHz", 1e6),
                ("GHz", 1e9),
                ("THz", 1e12),
            ],
            Dimension::Temperature => &[("K", 1.0)],
            Dimension::Power => &[
                ("W", 1.0),
                ("mW", 1e-3),
                ("uW", 1e-6),
                ("µW", 1e-6),
                ("nW", 1e-9),
                ("pW", 1e-12),
            ],
            Dimension::MassDensity => &[
                ("kg/m^3", 1.0),
                ("kg/m3", 1.0),
                ("g/cm^3", 1e3),
                ("g/cm3", 1e3),
            ],
            Dimension::LinearMassDensity => &[
                ("kg/m", 1.0),
                ("g/m", 1e-3),
                ("mg/m", 1e-6),
                ("ug/m", 1e-9),
                ("µg/m", 1e-9),
            ],
            Dimension::Mass => &[
                ("kg", 1.0),
                ("g", 1e-3),
                ("mg", 1e-6),
                ("ug", 1e-9),
                ("µg", 1e-9),
                ("ng", 1e-12),
                ("pg", 1e-15),
                ("fg", 1e-18),
            ],
            Dimension::Force => &[
                ("N", 1.0),
                ("mN", 1e-3),
                ("uN", 1e-6),
                ("µN", 1e-6),
                ("nN", 1e-9),
                ("pN", 1e-12),
                ("aN", 1e-18),
            ],
            Dimension::Time => &[
                ("s", 1.0),
                ("ms", 1e-3),
                ("us", 1e-6),
                ("µs", 1e-6),
                ("ns", 1e-9),
            ],
            Dimension::Angle => &[("rad", 1.0), ("mrad", 1e-3), ("deg", std::f64::consts::PI / 180.0)],
            Dimension::FrequencyPerLength => &[
                ("Hz/m", 1.0),
                ("kHz/m", 1e3),
                ("MHz/m", 1e6),
                ("GHz/m", 1e9),
                ("THz/m", 1e12),
                ("Hz/nm", 1e9),
                ("MHz/nm", 1e15),
                ("GHz/nm", 1e18),
                ("THz/nm", 1e21),
            ],
            Dimension::Dimensionless => &[("", 1.0)],
        };
        table.iter().find(|(u, _)| *u == unit).map(|(_, f)| *f)
    }
}

/// A config value that is either a bare number (SI) or a `"value unit"` string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UnitValue {
    Number(f64),
    Text(String),
}

impl UnitValue {
    /// Resolve to SI base units for the expected dimension.
    pub fn resolve(&self, dim: Dimension, field: &str) -> Result<f64> {
        match self {
            UnitValue::Number(x) => Ok(*x),
            UnitValue::Text(s) => parse_quantity(s, dim).map_err(|e| {
                Error::Validation(format!("field `{field}`: {e}"))
            }),
        }
    }
}

impl From<f64> for UnitValue {
    fn from(x: f64) -> Self {
        UnitValue::Number(x)
    }
}

/// Parse `"<number> <unit>"` (or a bare number string) into SI base units.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty quantity".into()));
    }
    // Split the trailing unit off the leading numeric part.
    let split = s
        .char_indices()
        .find(|(_, c)| !(c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E')))
        .map(|(i, _)| i)
        .unwrap_or(s.len());
    // A sign right after an exponent marker belongs to the number ("1e-6").
    let split = fix_exponent_split(s, split);
    let (num_part, unit_part) = s.split_at(split);
    let value: f64 = num_part.trim().parse().map_err(|_| {
        Error::Parse(format!("cannot parse number in quantity `{s}`"))
    })?;
    let unit = unit_part.trim();
    if unit.is_empty() {
        return Ok(value);
    }
    match dim.factor(unit) {
        Some(f) => Ok(value * f),
        None => Err(Error::Parse(format!(
            "unit `{unit}` is not valid for {} (expected e.g. `{}`)",
            dimension_name(dim),
            dim.si_unit()
        ))),
    }
}

fn fix_exponent_split(s: &str, split: usize) -> usize {
    // `find` stops at the first non-numeric char; 'e'/'E' are allowed, so the
    // only correction needed is when it stopped because a unit follows an
    // exponent-less number. Nothing to do beyond verifying the parse works;
    // retry shorter splits if the numeric head fails to parse.
    let mut split = split;
    while split > 0 && s[..split].parse::<f64>().is_err() {
        split -= 1;
    }
    split
}

fn dimension_name(dim: Dimension) -> &'static str {
    match dim {
        Dimension::Length => "a length",
        Dimension::Pressure => "a pressure",
        Dimension::Frequency => "a frequency",
        Dimension::Temperature => "a temperature",
        Dimension::Power => "a power",
        Dimension::MassDensity => "a mass density",
        Dimension::LinearMassDensity => "a linear mass density",
        Dimension::Mass => "a mass",
        Dimension::Force => "a force",
        Dimension::Time => "a time",
        Dimension::Angle => "an angle",
        Dimension::FrequencyPerLength => "a frequency per length",
        Dimension::Dimensionless => "a dimensionless value",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs()
    }

    #[test]
    fn parses_common_suffixes() {
        assert!(close(parse_quantity("370 nm", Dimension::Length).unwrap(), 370e-9));
        assert!(close(parse_quantity("107 um", Dimension::Length).unwrap(), 107e-6));
        assert!(close(parse_quantity("800 MPa", Dimension::Pressure).unwrap(), 800e6));
        assert!(close(parse_quantity("344 THz", Dimension::Frequency).unwrap(), 344e12));
        assert!(close(parse_quantity("10 uW", Dimension::Power).unwrap(), 10e-6));
        assert!(close(parse_quantity("16.3 pg", Dimension::Mass).unwrap(), 16.3e-15));
        assert!(close(
            parse_quantity("0.034 THz/nm", Dimension::FrequencyPerLength).unwrap(),
            0.034e21
        ));
    }

    #[test]
    fn parses_exponent_notation() {
        assert_eq!(parse_quantity("1e-6 m", Dimension::Length).unwrap(), 1e-6);
        assert_eq!(parse_quantity("2.5e3", Dimension::Frequency).unwrap(), 2500.0);
        assert_eq!(parse_quantity("1E-3 s", Dimension::Time).unwrap(), 1e-3);
    }

    #[test]
    fn bare_number_is_si() {
        assert_eq!(parse_quantity("3180", Dimension::MassDensity).unwrap(), 3180.0);
    }

    #[test]
    fn rejects_wrong_unit() {
        assert!(parse_quantity("5 kg", Dimension::Length).is_err());
        assert!(parse_quantity("abc", Dimension::Length).is_err());
    }

    #[test]
    fn unicode_micro_accepted() {
        assert_eq!(parse_quantity("107 µm", Dimension::Length).unwrap(), 107e-6);
        assert_eq!(parse_quantity("0.5 mW", Dimension::Power).unwrap(), 0.5e-3);
    }
}
