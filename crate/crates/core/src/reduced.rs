//! Reduced Padé approximants: essential indices, the minimal-degree
//! denominator, vanishing-coefficient cleanup, and the classical baseline.
//!
//! Pipeline for order `(m, n)` and series `c_0 … c_{m+n}`:
//!
//! 1. `κ = rank T_m`, `μ₁ = m - n + κ`, `μ₂ = m + n - κ + 1`.
//! 2. The kernel of `T_{μ₁+1}` (shape `(2n-κ) × (κ+1)`) is one-dimensional;
//!    its basis vector is the minimal denominator `Q₁` of formal degree `κ`.
//! 3. `q_k = 0` exactly when deleting column `k+1` of `T_{μ₁+1}` drops the
//!    rank to `κ - 1`.
//! 4. `p_k = Σ_j c_{k-j} q_j` for `k = 0..=m`.
//! 5. `p_k = 0` exactly when prepending the row `(c_k, …, c_{k-κ})` keeps
//!    the rank at `κ`.
//!
//! Every rank decision uses the same caller tolerance, or each matrix's own
//! default `max(M, N) · ulp(σ₁)` when none is given.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{PadeError, Result};
use crate::numrank::{null_space_with_report, numerical_rank, rank_of, svd, RankReport};
use crate::series::{series_mul_poly, Complex, Polynomial, PowerSeries};
use crate::toeplitz::{build_tk, delete_column, insert_row, Matrix, PadeOrder};

const ZERO: Complex = Complex::new(0.0, 0.0);

/// Coefficients below this fraction of the largest one are skipped when
/// choosing the coefficient that fixes the phase.
const PHASE_FLOOR: f64 = 1.5e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReduceOptions {
    /// Set vanishing coefficients exactly to zero.
    pub cleanup: bool,
    /// Rank threshold shared by every rank decision in one run.
    pub tol: Option<f64>,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        Self {
            cleanup: true,
            tol: None,
        }
    }
}

/// Non-fatal findings attached to a result.
#[derive(Clone, Debug, PartialEq)]
pub enum Warning {
    /// Rank gap below the well-determined threshold.
    IllDeterminedRank { matrix: String, gap: f64 },
    /// A cleanup rank test returned a value the theory rules out.
    UnexpectedCleanupRank {
        matrix: String,
        rank: usize,
        kappa: usize,
    },
    /// Every denominator coefficient tested as vanishing; cleanup skipped.
    CleanupWouldZeroDenominator,
    /// `c_{m-n+1} … c_{m+n}` is numerically zero; `Q = 1` and `P` is the truncated series.
    DegenerateWindow,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::IllDeterminedRank { matrix, gap } => {
                write!(
                    f,
                    "numerical rank of {matrix} is not well determined (gap {gap:e})"
                )
            }
            Warning::UnexpectedCleanupRank {
                matrix,
                rank,
                kappa,
            } => {
                write!(
                    f,
                    "rank of {matrix} is {rank}, outside the admissible values for kappa = {kappa}"
                )
            }
            Warning::CleanupWouldZeroDenominator => {
                write!(
                    f,
                    "all denominator coefficients tested as vanishing; cleanup not applied"
                )
            }
            Warning::DegenerateWindow => {
                write!(
                    f,
                    "coefficient window c_(m-n+1)..c_(m+n) is numerically zero"
                )
            }
        }
    }
}

/// `κ = rank T_m` and the essential indices derived from it.
#[derive(Clone, Debug, PartialEq)]
pub struct EssentialIndices {
    pub kappa: usize,
    pub mu1: i64,
    pub mu2: i64,
    /// Rank report of `T_m`.
    pub rank_report: RankReport,
}

impl EssentialIndices {
    pub fn new(order: PadeOrder, kappa: usize, rank_report: RankReport) -> Self {
        let (m, n) = (order.m as i64, order.n as i64);
        assert!(kappa as i64 <= n, "kappa exceeds n");
        let mu1 = m - n + kappa as i64;
        let mu2 = m + n - kappa as i64 + 1;
        debug_assert_eq!(mu1 + mu2, 2 * m + 1);
        debug_assert!(mu1 <= m && m < mu2);
        Self {
            kappa,
            mu1,
            mu2,
            rank_report,
        }
    }
}

/// Result of a vanishing-coefficient pass.
#[derive(Clone, Debug, PartialEq)]
pub struct Cleanup {
    pub poly: Polynomial,
    /// Indices whose rank test reported a vanishing coefficient.
    pub zeroed: BTreeSet<usize>,
    pub warnings: Vec<Warning>,
}

#[derive(Clone, Debug)]
pub struct ReducedPade {
    pub order: PadeOrder,
    pub center: Complex,
    /// `P₁`, formal degree `m`.
    pub numerator: Polynomial,
    /// `Q₁`, formal degree `κ`.
    pub denominator: Polynomial,
    pub indices: EssentialIndices,
    /// Multiplicity of the root of `Q₁` at the center.
    pub deficiency: usize,
    /// A denominator with nonzero constant term exists.
    pub baker_exists: bool,
    /// Denominator indices set to zero (empty without cleanup).
    pub zeroed_q: BTreeSet<usize>,
    /// Numerator indices set to zero (empty without cleanup).
    pub zeroed_p: BTreeSet<usize>,
    /// Rank report of `T_{μ₁+1}`.
    pub kernel_rank_report: RankReport,
    pub cleanup_applied: bool,
    pub degenerate_window: bool,
    pub tolerance: Option<f64>,
    pub warnings: Vec<Warning>,
}

/// Multiplies by a unimodular scalar so that the lowest-order significant
/// coefficient is real and positive.
fn fix_phase(v: &mut [Complex]) {
    let top = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if top == 0.0 {
        return;
    }
    if let Some(lead) = v.iter().find(|c| c.norm() > PHASE_FLOOR * top).copied() {
        let rot = lead.conj() / lead.norm();
        for c in v.iter_mut() {
            *c *= rot;
        }
    }
}

/// `κ = rank T_m` with `μ₁ = m - n + κ`, `μ₂ = m + n - κ + 1`. For `n = 0`
/// the matrix has no columns and `κ = 0`.
pub fn essential_indices(
    f: &PowerSeries,
    order: PadeOrder,
    tol: Option<f64>,
) -> Result<EssentialIndices> {
    f.require(order.coefficients_needed())?;
    if order.n == 0 {
        let mut report = RankReport::empty();
        if let Some(t) = tol {
            report.tolerance = t;
        }
        return Ok(EssentialIndices::new(order, 0, report));
    }
    let t_m = build_tk(f, order, order.m as i64)?;
    let report = rank_of(&t_m, tol)?;
    Ok(EssentialIndices::new(order, report.rank, report))
}

/// `T_{μ₁+1}`.
pub fn kernel_matrix(f: &PowerSeries, order: PadeOrder, idx: &EssentialIndices) -> Result<Matrix> {
    build_tk(f, order, idx.mu1 + 1)
}

/// Basis vector of the one-dimensional kernel of `T_{μ₁+1}` as a polynomial
/// of formal degree `κ`, unit 2-norm, phase-normalized.
pub fn minimal_denominator(
    f: &PowerSeries,
    order: PadeOrder,
    idx: &EssentialIndices,
    tol: Option<f64>,
) -> Result<(Polynomial, RankReport)> {
    let t = kernel_matrix(f, order, idx)?;
    let (basis, report) = null_space_with_report(&t, tol)?;
    if basis.len() != 1 {
        return Err(PadeError::KernelDimensionMismatch {
            dimension: basis.len(),
        });
    }
    let mut q = basis.into_iter().next().expect("one basis vector");
    fix_phase(&mut q);
    Ok((Polynomial::new(q, f.center())?, report))
}

/// Indices `k` with `rank T_{μ₁+1}^{(k+1)} = κ - 1`.
pub fn vanishing_denominator_coefficients(
    f: &PowerSeries,
    order: PadeOrder,
    idx: &EssentialIndices,
    tol: Option<f64>,
) -> Result<(BTreeSet<usize>, Vec<Warning>)> {
    let t = kernel_matrix(f, order, idx)?;
    let kappa = idx.kappa;
    let mut zeroed = BTreeSet::new();
    let mut warnings = Vec::new();
    for k in 0..=kappa {
        let reduced = delete_column(&t, k + 1)?;
        let rank = rank_of(&reduced, tol)?.rank;
        if kappa > 0 && rank == kappa - 1 {
            zeroed.insert(k);
        } else if rank != kappa {
            warnings.push(Warning::UnexpectedCleanupRank {
                matrix: format!("T_(mu1+1)^({})", k + 1),
                rank,
                kappa,
            });
        }
    }
    Ok((zeroed, warnings))
}

/// Sets to zero every denominator coefficient whose column-deletion rank test
/// reports it as vanishing.
pub fn cleanup_denominator(
    f: &PowerSeries,
    order: PadeOrder,
    idx: &EssentialIndices,
    q: &Polynomial,
    tol: Option<f64>,
) -> Result<Cleanup> {
    let (zeroed, mut warnings) = vanishing_denominator_coefficients(f, order, idx, tol)?;
    if zeroed.len() == q.coeffs().len() {
        warnings.push(Warning::CleanupWouldZeroDenominator);
        return Ok(Cleanup {
            poly: q.clone(),
            zeroed: BTreeSet::new(),
            warnings,
        });
    }
    Ok(Cleanup {
        poly: zero_out(q, &zeroed)?,
        zeroed,
        warnings,
    })
}

fn zero_out(p: &Polynomial, indices: &BTreeSet<usize>) -> Result<Polynomial> {
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &c)| if indices.contains(&k) { ZERO } else { c })
        .collect();
    Polynomial::new(coeffs, p.center())
}

/// `p_k = Σ_j c_{k-j} q_j` for `k = 0..=m`.
pub fn numerator_from_denominator(
    f: &PowerSeries,
    order: PadeOrder,
    q: &Polynomial,
) -> Result<Polynomial> {
    f.require(order.m + 1)?;
    let qc = q.coeffs();
    let p = (0..=order.m)
        .map(|k| {
            (0..=k.min(qc.len() - 1))
                .map(|j| f.coeff((k - j) as i64) * qc[j])
                .sum::<Complex>()
        })
        .collect();
    Polynomial::new(p, f.center())
}

/// Indices `k` with `rank T_{μ₁+1}^{[k]} = κ`.
pub fn vanishing_numerator_coefficients(
    f: &PowerSeries,
    order: PadeOrder,
    idx: &EssentialIndices,
    tol: Option<f64>,
) -> Result<(BTreeSet<usize>, Vec<Warning>)> {
    let t = kernel_matrix(f, order, idx)?;
    let kappa = idx.kappa;
    let mut zeroed = BTreeSet::new();
    let mut warnings = Vec::new();
    for k in 0..=order.m {
        let extended = insert_row(&t, f, k, kappa)?;
        let rank = rank_of(&extended, tol)?.rank;
        if rank == kappa {
            zeroed.insert(k);
        } else if rank != kappa + 1 {
            warnings.push(Warning::UnexpectedCleanupRank {
                matrix: format!("T_(mu1+1)^[{k}]"),
                rank,
                kappa,
            });
        }
    }
    Ok((zeroed, warnings))
}

/// Sets to zero every numerator coefficient whose row-insertion rank test
/// reports it as vanishing.
pub fn cleanup_numerator(
    f: &PowerSeries,
    order: PadeOrder,
    idx: &EssentialIndices,
    p: &Polynomial,
    tol: Option<f64>,
) -> Result<Cleanup> {
    let (zeroed, warnings) = vanishing_numerator_coefficients(f, order, idx, tol)?;
    Ok(Cleanup {
        poly: zero_out(p, &zeroed)?,
        zeroed,
        warnings,
    })
}

/// The reduced `(m, n)` approximant of `f`.
///
/// The rank tests for the denominator always run, since they decide the
/// deficiency index and the Baker flag; `options.cleanup` only controls
/// whether the vanishing coefficients are overwritten with zeros.
pub fn reduced_pade(
    f: &PowerSeries,
    order: PadeOrder,
    options: &ReduceOptions,
) -> Result<ReducedPade> {
    let tol = options.tol;
    f.require(order.coefficients_needed())?;
    let mut warnings = Vec::new();

    let indices = essential_indices(f, order, tol)?;
    if !indices.rank_report.well_determined {
        warnings.push(Warning::IllDeterminedRank {
            matrix: "T_m".into(),
            gap: indices.rank_report.gap,
        });
    }
    let degenerate_window = order.n > 0 && indices.kappa == 0;
    if degenerate_window {
        warnings.push(Warning::DegenerateWindow);
    }

    let (q, kernel_rank_report) = minimal_denominator(f, order, &indices, tol)?;
    if !kernel_rank_report.well_determined {
        warnings.push(Warning::IllDeterminedRank {
            matrix: "T_(mu1+1)".into(),
            gap: kernel_rank_report.gap,
        });
    }

    let (vanishing_q, w) = vanishing_denominator_coefficients(f, order, &indices, tol)?;
    warnings.extend(w);
    let deficiency = (0..).take_while(|k| vanishing_q.contains(k)).count();
    let baker_exists = !vanishing_q.contains(&0);

    let mut zeroed_q = BTreeSet::new();
    let mut q = q;
    if options.cleanup {
        if vanishing_q.len() == q.coeffs().len() {
            warnings.push(Warning::CleanupWouldZeroDenominator);
        } else {
            q = zero_out(&q, &vanishing_q)?;
            zeroed_q = vanishing_q;
        }
    }
    let mut qc = q.coeffs().to_vec();
    fix_phase(&mut qc);
    let q = Polynomial::new(qc, f.center())?;

    let p = numerator_from_denominator(f, order, &q)?;
    let mut zeroed_p = BTreeSet::new();
    let p = if options.cleanup {
        let cleaned = cleanup_numerator(f, order, &indices, &p, tol)?;
        warnings.extend(cleaned.warnings);
        zeroed_p = cleaned.zeroed;
        cleaned.poly
    } else {
        p
    };

    Ok(ReducedPade {
        order,
        center: f.center(),
        numerator: p,
        denominator: q,
        indices,
        deficiency,
        baker_exists,
        zeroed_q,
        zeroed_p,
        kernel_rank_report,
        cleanup_applied: options.cleanup,
        degenerate_window,
        tolerance: tol,
        warnings,
    })
}

/// Baseline approximant from an arbitrary element of `ker T_{m+1}`.
#[derive(Clone, Debug)]
pub struct ClassicalPade {
    pub numerator: Polynomial,
    pub denominator: Polynomial,
    /// Rank report of `T_{m+1}` under the run's tolerance.
    pub kernel_rank_report: RankReport,
}

/// Classical baseline: the right singular vector of `T_{m+1}` belonging to
/// its smallest singular value, with the numerator from the same product
/// formula. Nothing ensures minimality, so inside a singular block the
/// result carries spurious common factors.
pub fn classical_pade(
    f: &PowerSeries,
    order: PadeOrder,
    tol: Option<f64>,
) -> Result<ClassicalPade> {
    f.require(order.coefficients_needed())?;
    let t = build_tk(f, order, order.m as i64 + 1)?;
    let s = svd(&t)?;
    let report = numerical_rank(&s, tol);
    let mut q = s.v.column(order.n);
    fix_phase(&mut q);
    let q = Polynomial::new(q, f.center())?;
    let p = numerator_from_denominator(f, order, &q)?;
    Ok(ClassicalPade {
        numerator: p,
        denominator: q,
        kernel_rank_report: report,
    })
}

/// Magnitudes of the coefficients of `f·Q - P` over all available terms. The
/// first `m + n + 1` vanish for any valid approximant.
pub fn order_condition_residual(
    f: &PowerSeries,
    p: &Polynomial,
    q: &Polynomial,
    order: PadeOrder,
) -> Result<Vec<f64>> {
    f.require(order.coefficients_needed())?;
    let prod = series_mul_poly(f, q, f.len())?;
    Ok((0..f.len())
        .map(|k| (prod.coeff(k as i64) - p.coeff(k)).norm())
        .collect())
}

/// Coefficients of `f - P/Q`, obtained by removing the common `z^δ` from
/// `f·Q - P` and `Q` and dividing as power series. The result has
/// `len(f) - δ` terms.
pub fn approximation_error(f: &PowerSeries, p: &Polynomial, q: &Polynomial) -> Result<PowerSeries> {
    if q.is_zero() {
        return Err(PadeError::ZeroDenominator);
    }
    let delta = q.low_order_zeros();
    let len = f.len();
    f.require(delta + 1)?;
    let prod = series_mul_poly(f, q, len)?;
    let r: Vec<Complex> = (delta..len)
        .map(|k| prod.coeff(k as i64) - p.coeff(k))
        .collect();
    let d: Vec<Complex> = q.coeffs()[delta..].to_vec();
    let mut e: Vec<Complex> = Vec::with_capacity(r.len());
    for k in 0..r.len() {
        let mut acc = r[k];
        for j in 1..=k.min(d.len() - 1) {
            acc -= d[j] * e[k - j];
        }
        e.push(acc / d[0]);
    }
    PowerSeries::new(e, f.center())
}
