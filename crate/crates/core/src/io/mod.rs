//! File formats: CSV tables/spectra/series and the binary trace container.

mod csv;
mod trace;

pub use csv::{
    write_mode_table, write_mode_table_file, write_series, write_series_file, write_spectrum,
    write_spectrum_file, write_table, write_table_file,
};
pub use trace::{
    read_trace, read_trace_file, write_trace, write_trace_file, TRACE_MAGIC, TRACE_VERSION,
};
