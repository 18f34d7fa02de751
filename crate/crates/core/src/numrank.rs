//! Dense complex SVD by one-sided Jacobi rotations, with numerical rank,
//! rank gap and numerical null space on top of it.
//!
//! Matrices here are at most a few dozen rows and columns. One-sided Jacobi
//! computes small singular values with absolute accuracy close to
//! `eps · σ₁`, which is what the rank decisions downstream depend on.

use crate::error::{PadeError, Result};
use crate::series::Complex;
use crate::toeplitz::Matrix;

/// Rank reports whose gap `σ_r / σ_{r+1}` falls below this are flagged as
/// not well determined.
pub const DEFAULT_GAP_THRESHOLD: f64 = 1e6;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// `A = U · Σ · Vᴴ` with `U` (`M × M`) and `V` (`N × N`) unitary.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: Matrix,
    /// Descending, `min(M, N)` entries.
    pub singular: Vec<f64>,
    pub v: Matrix,
}

impl Svd {
    pub fn rows(&self) -> usize {
        self.u.rows()
    }

    pub fn cols(&self) -> usize {
        self.v.rows()
    }

    /// `U · Σ · Vᴴ`.
    pub fn reconstruct(&self) -> Matrix {
        let (m, n) = (self.rows(), self.cols());
        Matrix::from_fn(m, n, |i, j| {
            self.singular
                .iter()
                .enumerate()
                .map(|(k, &s)| self.u[(i, k)] * s * self.v[(j, k)].conj())
                .sum()
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankReport {
    /// Number of singular values strictly above `tolerance`.
    pub rank: usize,
    pub tolerance: f64,
    /// `σ_r / σ_{r+1}`; infinite when `σ_{r+1} = 0`, when `r = min(M, N)`, or when `r = 0`.
    pub gap: f64,
    pub singular: Vec<f64>,
    pub well_determined: bool,
}

impl RankReport {
    /// Report for a matrix with no rows or no columns.
    pub fn empty() -> Self {
        Self {
            rank: 0,
            tolerance: default_tolerance(0, 0, 0.0),
            gap: f64::INFINITY,
            singular: Vec::new(),
            well_determined: true,
        }
    }
}

fn ulp(x: f64) -> f64 {
    let x = x.abs();
    x.next_up() - x
}

/// `max(M, N) · ulp(σ₁)`.
pub fn default_tolerance(rows: usize, cols: usize, sigma1: f64) -> f64 {
    rows.max(cols).max(1) as f64 * ulp(sigma1)
}

fn dot(a: &[Complex], b: &[Complex]) -> Complex {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm_sqr(a: &[Complex]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

/// Applies `[a_p a_q] ← [a_p a_q] · [[c, s], [-s·ē, c·ē]]`.
fn rotate(cols: &mut [Vec<Complex>], p: usize, q: usize, c: f64, s: f64, e_conj: Complex) {
    let (left, right) = cols.split_at_mut(q);
    let (ap, aq) = (&mut left[p], &mut right[0]);
    for (x, y) in ap.iter_mut().zip(aq.iter_mut()) {
        let yp = *y * e_conj;
        let xp = *x;
        *x = xp * c - yp * s;
        *y = xp * s + yp * c;
    }
}

/// Extends orthonormal `vecs` (vectors of length `dim`) until there are
/// `target` of them, each time taking the standard basis vector with the
/// largest component outside the current span.
fn complete_basis(mut vecs: Vec<Vec<Complex>>, dim: usize, target: usize) -> Vec<Vec<Complex>> {
    while vecs.len() < target.min(dim) {
        let best = (0..dim)
            .map(|i| {
                let mut e = vec![ZERO; dim];
                e[i] = ONE;
                project_out(&mut e, &vecs);
                e
            })
            .max_by(|a, b| norm_sqr(a).total_cmp(&norm_sqr(b)))
            .expect("dim > 0");
        let nrm = norm_sqr(&best).sqrt();
        vecs.push(best.into_iter().map(|c| c / nrm).collect());
    }
    vecs
}

fn project_out(v: &mut [Complex], basis: &[Vec<Complex>]) {
    for _ in 0..2 {
        for b in basis {
            let proj = dot(b, v);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= proj * bi;
            }
        }
    }
}

/// Two passes of Gram-Schmidt against `basis`; `None` if little of `x` survives.
fn orthonormalize(x: &[Complex], basis: &[Vec<Complex>]) -> Option<Vec<Complex>> {
    let mut v = x.to_vec();
    let start = norm_sqr(&v).sqrt();
    project_out(&mut v, basis);
    let nrm = norm_sqr(&v).sqrt();
    if start == 0.0 || nrm < 0.5 * start {
        return None;
    }
    Some(v.into_iter().map(|c| c / nrm).collect())
}

/// Householder QR of a tall `b` (`N × M`, `N >= M`): returns the full unitary
/// `Q` (`N × N`) and the leading `M × M` block of `R`.
fn householder_qr(b: &Matrix) -> (Matrix, Matrix) {
    let (n, m) = b.shape();
    let mut r = b.clone();
    let mut q = Matrix::identity(n);
    for k in 0..m.min(n) {
        let x: Vec<Complex> = (k..n).map(|i| r[(i, k)]).collect();
        let xnorm = norm_sqr(&x).sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0] == ZERO {
            ONE
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm2 = norm_sqr(&v);
        if vnorm2 == 0.0 {
            continue;
        }
        // r <- (I - 2 v vᴴ / vᴴv) r on rows k..
        for j in 0..m {
            let s: Complex =
                (k..n).map(|i| v[i - k].conj() * r[(i, j)]).sum::<Complex>() * (2.0 / vnorm2);
            for i in k..n {
                r[(i, j)] -= v[i - k] * s;
            }
        }
        // q <- q (I - 2 v vᴴ / vᴴv) on columns k..
        for i in 0..n {
            let s: Complex = (k..n).map(|j| q[(i, j)] * v[j - k]).sum::<Complex>() * (2.0 / vnorm2);
            for j in k..n {
                q[(i, j)] -= s * v[j - k].conj();
            }
        }
    }
    let r1 = Matrix::from_fn(m, m, |i, j| if i <= j { r[(i, j)] } else { ZERO });
    (q, r1)
}

/// Singular value decomposition of an arbitrary `M × N` complex matrix.
///
/// Empty shapes give identity factors and no singular values. Fails with
/// [`PadeError::ConvergenceFailure`] after `100 · min(M, N)` sweeps.
pub fn svd(a: &Matrix) -> Result<Svd> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Ok(Svd {
            u: Matrix::identity(m),
            singular: Vec::new(),
            v: Matrix::identity(n),
        });
    }
    if m < n {
        // A = [L 0] Qᴴ with L = R₁ᴴ from the QR factorization of Aᴴ; the
        // trailing columns of Q span part of the kernel exactly.
        let (q, r1) = householder_qr(&a.conj_transpose());
        let inner = jacobi_svd(&r1.conj_transpose())?;
        let v = Matrix::from_fn(n, n, |i, k| {
            if k < m {
                (0..m).map(|l| q[(i, l)] * inner.v[(l, k)]).sum()
            } else {
                q[(i, k)]
            }
        });
        return Ok(Svd {
            u: inner.u,
            singular: inner.singular,
            v,
        });
    }
    jacobi_svd(a)
}

/// One-sided Jacobi for `M >= N`.
fn jacobi_svd(a: &Matrix) -> Result<Svd> {
    let (m, n) = a.shape();

    let mut w: Vec<Vec<Complex>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex>> = (0..n)
        .map(|j| {
            let mut e = vec![ZERO; n];
            e[j] = ONE;
            e
        })
        .collect();

    let tol = f64::EPSILON * m as f64;
    // Columns this small relative to the matrix are treated as converged
    // zeros. In a rank-deficient matrix the surplus columns shrink by about
    // a factor eps per sweep and would otherwise stall in the subnormal range.
    let floor = f64::EPSILON * f64::EPSILON * a.frobenius();
    let max_sweeps = 100 * m.min(n);
    let mut converged = false;
    for _ in 0..max_sweeps {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm_sqr(&w[p]);
                let beta = norm_sqr(&w[q]);
                if alpha.sqrt() <= floor || beta.sqrt() <= floor {
                    continue;
                }
                let gamma = dot(&w[p], &w[q]);
                let g = gamma.norm();
                if g <= tol * alpha.sqrt() * beta.sqrt() {
                    continue;
                }
                rotated = true;
                let e_conj = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s, e_conj);
                rotate(&mut v, p, q, c, s, e_conj);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(PadeError::ConvergenceFailure { sweeps: max_sweeps });
    }

    let norms: Vec<f64> = w.iter().map(|col| norm_sqr(col).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let p = m.min(n);
    let singular: Vec<f64> = order[..p].iter().map(|&j| norms[j]).collect();

    let mut ucols: Vec<Vec<Complex>> = Vec::with_capacity(m);
    for &j in &order[..p] {
        let cand: Option<Vec<Complex>> = if norms[j] > 0.0 {
            let u: Vec<Complex> = w[j].iter().map(|x| x / norms[j]).collect();
            orthonormalize(&u, &ucols)
        } else {
            None
        };
        match cand {
            Some(u) => ucols.push(u),
            None => {
                // Direction carries no weight in the product; any orthonormal fill works.
                let target = ucols.len() + 1;
                ucols = complete_basis(ucols, m, target);
            }
        }
    }
    let ucols = complete_basis(ucols, m, m);
    let u = Matrix::from_fn(m, m, |i, k| ucols[k][i]);
    let vm = Matrix::from_fn(n, n, |i, k| v[order[k]][i]);
    Ok(Svd { u, singular, v: vm })
}

/// Rank decision on a computed SVD. `tol` overrides the default
/// `max(M, N) · ulp(σ₁)`.
pub fn numerical_rank(s: &Svd, tol: Option<f64>) -> RankReport {
    let sigma1 = s.singular.first().copied().unwrap_or(0.0);
    let tolerance = tol.unwrap_or_else(|| default_tolerance(s.rows(), s.cols(), sigma1));
    report_from_singular(s.singular.clone(), tolerance)
}

fn report_from_singular(singular: Vec<f64>, tolerance: f64) -> RankReport {
    let rank = singular.iter().filter(|&&x| x > tolerance).count();
    let gap = if rank == 0 || rank == singular.len() || singular[rank] == 0.0 {
        f64::INFINITY
    } else {
        singular[rank - 1] / singular[rank]
    };
    RankReport {
        rank,
        tolerance,
        gap,
        singular,
        well_determined: gap >= DEFAULT_GAP_THRESHOLD,
    }
}

/// SVD followed by [`numerical_rank`].
pub fn rank_of(a: &Matrix, tol: Option<f64>) -> Result<RankReport> {
    if a.rows() == 0 || a.cols() == 0 {
        let mut r = RankReport::empty();
        if let Some(t) = tol {
            r.tolerance = t;
        }
        return Ok(r);
    }
    Ok(numerical_rank(&svd(a)?, tol))
}

/// Orthonormal basis of the numerical null space: the last `N - r` right
/// singular vectors.
pub fn null_space(a: &Matrix, tol: Option<f64>) -> Result<Vec<Vec<Complex>>> {
    Ok(null_space_with_report(a, tol)?.0)
}

/// [`null_space`] together with the rank report it was cut from.
pub fn null_space_with_report(
    a: &Matrix,
    tol: Option<f64>,
) -> Result<(Vec<Vec<Complex>>, RankReport)> {
    let s = svd(a)?;
    let report = numerical_rank(&s, tol);
    let basis = (report.rank..a.cols()).map(|k| s.v.column(k)).collect();
    Ok((basis, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Matrix {
        Matrix::from_fn(m, n, |_, _| {
            Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    fn max_diff(a: &Matrix, b: &Matrix) -> f64 {
        a.as_slice()
            .iter()
            .zip(b.as_slice())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    fn unitary_defect(q: &Matrix) -> f64 {
        let g = &q.conj_transpose() * q;
        max_diff(&g, &Matrix::identity(q.cols()))
    }

    #[test]
    fn identity_and_diagonal() {
        let s = svd(&Matrix::identity(3)).unwrap();
        assert_eq!(s.singular, vec![1.0, 1.0, 1.0]);
        let d = svd(&Matrix::from_real_rows(&[&[3.0, 0.0], &[0.0, 0.0]])).unwrap();
        assert_eq!(d.singular, vec![3.0, 0.0]);
        let r = numerical_rank(&d, None);
        assert_eq!(r.rank, 1);
        assert_eq!(r.gap, f64::INFINITY);
    }

    #[test]
    fn random_square_self_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_matrix(&mut rng, 8, 8);
        let s = svd(&a).unwrap();
        let s1 = s.singular[0];
        assert!(max_diff(&s.reconstruct(), &a) <= 1e-12 * s1);
        assert!(unitary_defect(&s.u) <= 1e-12);
        assert!(unitary_defect(&s.v) <= 1e-12);
        assert!(s.singular.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn rectangular_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (m, n) in [(3, 7), (7, 3), (1, 5), (5, 1), (4, 4)] {
            let a = random_matrix(&mut rng, m, n);
            let s = svd(&a).unwrap();
            assert_eq!(s.singular.len(), m.min(n));
            assert_eq!(s.u.shape(), (m, m));
            assert_eq!(s.v.shape(), (n, n));
            assert!(max_diff(&s.reconstruct(), &a) <= 1e-12 * s.singular[0]);
            assert!(unitary_defect(&s.u) <= 1e-12 && unitary_defect(&s.v) <= 1e-12);
        }
    }

    #[test]
    fn empty_shapes() {
        let s = svd(&Matrix::zeros(0, 3)).unwrap();
        assert!(s.singular.is_empty());
        assert_eq!(s.v, Matrix::identity(3));
        assert_eq!(null_space(&Matrix::zeros(0, 3), None).unwrap().len(), 3);
        assert_eq!(rank_of(&Matrix::zeros(4, 0), None).unwrap().rank, 0);
    }

    #[test]
    fn tiny_trailing_value_is_dropped() {
        let s = Svd {
            u: Matrix::identity(2),
            singular: vec![1.0, 1e-20],
            v: Matrix::identity(2),
        };
        let r = numerical_rank(&s, None);
        assert_eq!(r.rank, 1);
        assert!(r.well_determined);
    }

    #[test]
    fn zero_matrix() {
        let r = rank_of(&Matrix::zeros(3, 2), None).unwrap();
        assert_eq!(r.rank, 0);
        assert_eq!(r.gap, f64::INFINITY);
        assert_eq!(null_space(&Matrix::zeros(3, 2), None).unwrap().len(), 2);
    }

    fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
        let a = random_matrix(rng, n, n);
        householder_qr(&a).0
    }

    #[test]
    fn constructed_rank_two() {
        // A = U diag(5, 3, 1e-14) Vᴴ
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_unitary(&mut rng, 3);
        let v = random_unitary(&mut rng, 3);
        let sig = [5.0, 3.0, 1e-14];
        let a = Matrix::from_fn(3, 3, |i, j| {
            (0..3).map(|k| u[(i, k)] * sig[k] * v[(j, k)].conj()).sum()
        });
        let s = svd(&a).unwrap();
        for (got, want) in s.singular.iter().zip(sig) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
        let r = numerical_rank(&s, Some(1e-12));
        assert_eq!(r.rank, 2);
        assert!((r.gap / 3e14 - 1.0).abs() < 0.05, "gap {}", r.gap);
        // the default tolerance, 3·ulp(5) ≈ 2.7e-15, still sees the third value
        assert_eq!(numerical_rank(&s, None).rank, 3);
    }

    #[test]
    fn duplicated_columns_null_vector() {
        // columns 1 and 3 equal: null vector ∝ (1, 0, -1)
        let a = Matrix::from_real_rows(&[&[1.0, 2.0, 1.0], &[3.0, -1.0, 3.0]]);
        let ns = null_space(&a, Some(1e-12)).unwrap();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert!(v[1].norm() < 1e-14);
        assert!((v[0] + v[2]).norm() < 1e-14);
        assert!((v[0].norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn adjoint_has_same_singular_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (m, n) in [(5, 3), (6, 6), (2, 9)] {
            let a = random_matrix(&mut rng, m, n);
            let s1 = svd(&a).unwrap().singular;
            let s2 = svd(&a.conj_transpose()).unwrap().singular;
            for (x, y) in s1.iter().zip(&s2) {
                assert!((x - y).abs() <= 1e-13 * s1[0]);
            }
        }
    }
}
