//! Brute-force oracle, per-instance comparison with the closed forms,
//! parameter sweeps and CSV/JSON export.

mod export;
mod oracle;
mod row;
mod sweep;

pub use export::{read_csv, read_json, write_csv, write_json, write_rows, ExportError, Format, COLUMNS};
pub use oracle::{eigen_spectra, run_oracle, EigenSpectra, OracleError, OracleResult};
pub use row::{evaluate, Agreement, EvalOptions, Instance, OracleOutcome, ReportRow};
pub use sweep::{parse_primes, parse_range, run_sweep, GridError, GridSpec, SweepReport};
