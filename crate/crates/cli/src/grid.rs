//! `start:stop:step` grid parsing, shared by the dB and exponent flags.

use crate::CliError;

/// Parses an inclusive arithmetic grid. The endpoint is included when it is
/// within a relative epsilon of a grid point.
pub fn parse(spec: &str, what: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "{what} grid must be start:stop:step, got {spec:?}"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{what} grid has a non-numeric field: {p:?}")))
        })
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !start.is_finite() || !stop.is_finite() || !step.is_finite() || step <= 0.0 || stop < start {
        return Err(CliError::Usage(format!(
            "{what} grid needs start <= stop and step > 0, got {spec:?}"
        )));
    }
    let count = ((stop - start) / step + 1.0 + 1e-9).floor() as usize;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}
