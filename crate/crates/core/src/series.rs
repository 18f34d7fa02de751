//! Complex polynomials and truncated power series about a center point,
//! Taylor expansion of rational functions, and the coefficient file format.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{PadeError, Result};

pub type Complex = num_complex::Complex64;

/// Default guard for [`taylor_of_rational`]: the expansion is refused when
/// `|den(a)| <= DEFAULT_POLE_GUARD * max|den_k|` for the recentered denominator.
pub const DEFAULT_POLE_GUARD: f64 = 1e-12;

const ZERO: Complex = Complex::new(0.0, 0.0);

fn check_finite(values: &[Complex]) -> Result<()> {
    if values.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        Ok(())
    } else {
        Err(PadeError::NonFinite)
    }
}

fn max_abs(values: &[Complex]) -> f64 {
    values.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Dense polynomial in powers of `(z - center)`, lowest order first.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
    center: Complex,
}

impl Polynomial {
    /// An empty coefficient list is taken as the zero polynomial `[0]`.
    pub fn new(coeffs: Vec<Complex>, center: Complex) -> Result<Self> {
        check_finite(&coeffs)?;
        check_finite(&[center])?;
        let coeffs = if coeffs.is_empty() {
            vec![ZERO]
        } else {
            coeffs
        };
        Ok(Self { coeffs, center })
    }

    /// Real coefficients about the origin.
    ///
    /// # Panics
    /// If any coefficient is not finite.
    pub fn from_real(coeffs: &[f64]) -> Self {
        let coeffs = coeffs.iter().map(|&x| Complex::new(x, 0.0)).collect();
        Self::new(coeffs, ZERO).expect("finite real coefficients")
    }

    pub fn zero(center: Complex) -> Self {
        Self {
            coeffs: vec![ZERO],
            center,
        }
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn center(&self) -> Complex {
        self.center
    }

    /// Coefficient of `(z - center)^k`; zero beyond the stored length.
    pub fn coeff(&self, k: usize) -> Complex {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn formal_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest `k` with an exactly nonzero coefficient; `None` for the zero polynomial.
    pub fn effective_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.effective_degree().is_none()
    }

    /// Number of exactly-zero low-order coefficients (multiplicity of the root at the center).
    pub fn low_order_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| **c == ZERO).count()
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.coeffs)
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            center: self.center,
        }
    }

    /// Horner evaluation at `z`.
    pub fn eval(&self, z: Complex) -> Complex {
        let w = z - self.center;
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * w + c)
    }

    /// Re-expands the polynomial in powers of `(z - a)` by repeated synthetic division.
    pub fn recenter(&self, a: Complex) -> Self {
        let h = a - self.center;
        let mut c = self.coeffs.clone();
        let deg = c.len() - 1;
        if h != ZERO {
            for i in 0..deg {
                for j in (i..deg).rev() {
                    let next = c[j + 1];
                    c[j] += h * next;
                }
            }
        }
        Self {
            coeffs: c,
            center: a,
        }
    }
}

/// Horner evaluation of `p` at `z`, relative to the polynomial's center.
pub fn poly_eval(p: &Polynomial, z: Complex) -> Complex {
    p.eval(z)
}

/// Finite prefix `c_0, …, c_N` of a Taylor series about `center`.
///
/// Indexing with a negative `k` yields zero, matching the convention
/// `c_k = 0` for `k < 0` used by every Toeplitz construction.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex>,
    center: Complex,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Complex>, center: Complex) -> Result<Self> {
        check_finite(&coeffs)?;
        check_finite(&[center])?;
        Ok(Self { coeffs, center })
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        let coeffs = coeffs.iter().map(|&x| Complex::new(x, 0.0)).collect();
        Self::new(coeffs, ZERO).expect("finite real coefficients")
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn center(&self) -> Complex {
        self.center
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `c_k`, zero for negative `k`.
    ///
    /// # Panics
    /// If `k` is at or beyond the stored length; callers check with [`PowerSeries::require`].
    pub fn coeff(&self, k: i64) -> Complex {
        if k < 0 {
            ZERO
        } else {
            self.coeffs[k as usize]
        }
    }

    /// Fails unless at least `count` coefficients are present.
    pub fn require(&self, count: usize) -> Result<()> {
        if self.coeffs.len() < count {
            Err(PadeError::InsufficientCoefficients {
                needed: count,
                available: self.coeffs.len(),
            })
        } else {
            Ok(())
        }
    }

    pub fn truncate(&self, count: usize) -> Self {
        Self {
            coeffs: self.coeffs.iter().take(count).copied().collect(),
            center: self.center,
        }
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.coeffs)
    }
}

/// A rational function `numerator / denominator`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSpec {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalSpec {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(PadeError::ZeroDenominator);
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }
}

/// Taylor coefficients `c_0 … c_{count-1}` of `spec` about `a`, using the
/// default pole guard.
pub fn taylor_of_rational(spec: &RationalSpec, a: Complex, count: usize) -> Result<PowerSeries> {
    taylor_of_rational_with_guard(spec, a, count, DEFAULT_POLE_GUARD)
}

/// Both polynomials are recentered at `a`, then divided as power series:
/// `c_k = (b_k - Σ_{j=1..k} d_j c_{k-j}) / d_0`.
pub fn taylor_of_rational_with_guard(
    spec: &RationalSpec,
    a: Complex,
    count: usize,
    guard_tol: f64,
) -> Result<PowerSeries> {
    let num = spec.numerator.recenter(a);
    let den = spec.denominator.recenter(a);
    let d0 = den.coeff(0);
    if d0.norm() <= guard_tol * den.max_abs() {
        return Err(PadeError::PoleAtCenter {
            magnitude: d0.norm(),
        });
    }
    let d = den.coeffs();
    let mut c: Vec<Complex> = Vec::with_capacity(count);
    for k in 0..count {
        let mut acc = num.coeff(k);
        for j in 1..=k.min(d.len() - 1) {
            acc -= d[j] * c[k - j];
        }
        c.push(acc / d0);
    }
    PowerSeries::new(c, a)
}

/// First `upto` coefficients of the Cauchy product `f · q`.
pub fn series_mul_poly(f: &PowerSeries, q: &Polynomial, upto: usize) -> Result<PowerSeries> {
    f.require(upto)?;
    if f.center() != q.center() {
        return Err(PadeError::CenterMismatch {
            left: f.center().to_string(),
            right: q.center().to_string(),
        });
    }
    let qc = q.coeffs();
    let out = (0..upto)
        .map(|k| {
            (0..=k.min(qc.len() - 1))
                .map(|j| qc[j] * f.coeffs[k - j])
                .sum()
        })
        .collect();
    PowerSeries::new(out, f.center())
}

fn parse_number(token: &str, line: usize) -> Result<f64> {
    let x: f64 = token.parse().map_err(|_| PadeError::Parse {
        line,
        message: format!("invalid number `{token}`"),
    })?;
    if !x.is_finite() {
        return Err(PadeError::Parse {
            line,
            message: format!("non-finite value `{token}`"),
        });
    }
    Ok(x)
}

/// Parses the line-oriented coefficient format.
///
/// ```text
/// # center 0.5 0        (optional, before any data; imaginary part optional)
/// 2 -1                  c_0 = 2 - i
/// 0                     c_1 = 0
/// ```
///
/// Everything after `#` on a line is a comment.
pub fn parse_coefficients(text: &str) -> Result<PowerSeries> {
    let mut center = ZERO;
    let mut coeffs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some("center") {
                if !coeffs.is_empty() {
                    return Err(PadeError::Parse {
                        line,
                        message: "center header must precede the coefficients".into(),
                    });
                }
                let parts: Vec<&str> = words.collect();
                center = match parts.as_slice() {
                    [re] => Complex::new(parse_number(re, line)?, 0.0),
                    [re, im] => Complex::new(parse_number(re, line)?, parse_number(im, line)?),
                    _ => {
                        return Err(PadeError::Parse {
                            line,
                            message: "expected `# center <re> [<im>]`".into(),
                        })
                    }
                };
            }
            continue;
        }
        let data = trimmed.split('#').next().unwrap_or("").trim();
        if data.is_empty() {
            continue;
        }
        let parts: Vec<&str> = data.split_whitespace().collect();
        let value = match parts.as_slice() {
            [re] => Complex::new(parse_number(re, line)?, 0.0),
            [re, im] => Complex::new(parse_number(re, line)?, parse_number(im, line)?),
            _ => {
                return Err(PadeError::Parse {
                    line,
                    message: format!("expected `<re> [<im>]`, found {} fields", parts.len()),
                })
            }
        };
        coeffs.push(value);
    }
    if coeffs.is_empty() {
        return Err(PadeError::EmptyInput);
    }
    PowerSeries::new(coeffs, center)
}

pub fn read_coefficients(path: impl AsRef<Path>) -> Result<PowerSeries> {
    let text = std::fs::read_to_string(path)?;
    parse_coefficients(&text)
}

/// Serializes a series in the format read by [`parse_coefficients`]. Values use
/// the shortest representation that parses back to the same `f64`.
pub fn write_coefficients(f: &PowerSeries) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# center {} {}", f.center.re, f.center.im);
    for c in &f.coeffs {
        let _ = writeln!(out, "{} {}", c.re, c.im);
    }
    out
}
