//! Library surface behind the `qem` binary: sweep construction, peak
//! search, oracle checks, and deterministic CSV formatting.

pub mod checks;
pub mod error;
pub mod format;
pub mod peak;
pub mod sweep;

pub use checks::{oracle_check, OracleReport};
pub use error::CliError;
pub use format::{parse_angle, parse_angle_list, parse_float_list, sig12};
pub use peak::{find_peak, Peak};
pub use sweep::{
    cloud_csv, cloud_sweep, coin_csv, coin_sweep, grid, sweep_csv, CloudRow, CloudSweepSpec,
    CoinRow, CoinSweepSpec, SweepSpec,
};
