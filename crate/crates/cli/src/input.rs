use std::fmt;

use pade_core::{
    read_coefficients, taylor_of_rational, Complex, PadeError, Polynomial, PowerSeries,
    RationalSpec,
};

use crate::args::InputArgs;

#[derive(Debug)]
pub enum CliError {
    /// Malformed arguments or input data.
    Usage(String),
    Core(PadeError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<PadeError> for CliError {
    fn from(e: PadeError) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(PadeError::KernelDimensionMismatch { .. }) => 3,
            CliError::Core(PadeError::ConvergenceFailure { .. }) => 1,
            CliError::Core(_) => 2,
        }
    }
}

fn parse_real(token: &str, what: &str) -> Result<f64, CliError> {
    let v: f64 = token
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{what}: cannot parse {token:?} as a number")))?;
    if !v.is_finite() {
        return Err(CliError::Usage(format!("{what}: {token:?} is not finite")));
    }
    Ok(v)
}

/// `re` or `re,im`.
pub fn parse_complex(token: &str, what: &str) -> Result<Complex, CliError> {
    match token.split_once(',') {
        Some((re, im)) => Ok(Complex::new(parse_real(re, what)?, parse_real(im, what)?)),
        None => Ok(Complex::new(parse_real(token, what)?, 0.0)),
    }
}

/// Whitespace-separated coefficients, lowest order first.
pub fn parse_coefficient_list(text: &str, what: &str) -> Result<Vec<Complex>, CliError> {
    let coeffs = text
        .split_whitespace()
        .map(|t| parse_complex(t, what))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.is_empty() {
        return Err(CliError::Usage(format!("{what}: no coefficients given")));
    }
    Ok(coeffs)
}

pub fn positive(value: f64, what: &str) -> Result<f64, CliError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CliError::Usage(format!(
            "{what} must be a positive finite number, got {value}"
        )))
    }
}

/// The series to approximate, with at least `count` coefficients when built
/// from a rational function.
pub fn load_series(
    input: &InputArgs,
    center: Option<&str>,
    count: usize,
) -> Result<PowerSeries, CliError> {
    let center = center.map(|c| parse_complex(c, "--center")).transpose()?;
    if let Some(path) = &input.coeffs {
        let f = read_coefficients(path).map_err(|e| match e {
            PadeError::Io(io) => CliError::Usage(format!("{}: {io}", path.display())),
            other => CliError::Usage(format!("{}: {other}", path.display())),
        })?;
        if let Some(a) = center {
            if a != f.center() {
                return Err(PadeError::CenterMismatch {
                    left: format!("--center {a}"),
                    right: format!("file header {}", f.center()),
                }
                .into());
            }
        }
        f.require(count)?;
        return Ok(f);
    }
    let (Some(num), Some(den)) = (&input.num, &input.den) else {
        return Err(CliError::Usage("give --num and --den, or --coeffs".into()));
    };
    let zero = Complex::new(0.0, 0.0);
    let num = Polynomial::new(parse_coefficient_list(num, "--num")?, zero)?;
    let den = Polynomial::new(parse_coefficient_list(den, "--den")?, zero)?;
    let spec = RationalSpec::new(num, den)?;
    Ok(taylor_of_rational(&spec, center.unwrap_or(zero), count)?)
}
