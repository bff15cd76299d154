//! CSV value formatting and angle parsing.
//!
//! All data values are printed with 12 significant digits in scientific
//! notation so repeated runs are byte-identical and diff-able.

use crate::error::CliError;

/// 12-significant-digit scientific rendering used for every CSV value.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Parses an angle token: a plain float, or a rational multiple of pi such
/// as `pi`, `pi/2`, `3pi/8`, `3*pi/8`.
///
/// The pi forms evaluate as `coefficient * std::f64::consts::PI / divisor`,
/// so `pi/2` yields exactly `FRAC_PI_2` and downstream comparisons against
/// that constant are bit-exact.
pub fn parse_angle(token: &str) -> Result<f64, CliError> {
    let t = token.trim().to_ascii_lowercase();
    if t.is_empty() {
        return Err(CliError::Usage("empty angle token".into()));
    }
    match t.split_once("pi") {
        None => t
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("cannot parse angle {token:?}"))),
        Some((before, after)) => {
            let coefficient = match before.trim().trim_end_matches('*').trim() {
                "" => 1.0,
                c => c
                    .parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("bad pi coefficient in {token:?}")))?,
            };
            let divisor = match after.trim() {
                "" => 1.0,
                d => d
                    .strip_prefix('/')
                    .ok_or_else(|| CliError::Usage(format!("bad pi divisor in {token:?}")))?
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("bad pi divisor in {token:?}")))?,
            };
            if divisor == 0.0 {
                return Err(CliError::Usage(format!("zero divisor in {token:?}")));
            }
            Ok(coefficient * std::f64::consts::PI / divisor)
        }
    }
}

/// Comma-separated list of angle tokens.
pub fn parse_angle_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').map(parse_angle).collect()
}

/// Comma-separated list of plain floats.
pub fn parse_float_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("cannot parse number {t:?}")))
        })
        .collect()
}
