//! Exact-rational reference computation of reduced approximants.
//!
//! Built only with the `oracle` feature. Everything here is computed from
//! the definitions with Gaussian elimination over `BigRational`; nothing is
//! shared with the floating-point pipeline, so the test suites can use it as
//! ground truth.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::series::Complex;
use crate::toeplitz::PadeOrder;

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// `c_0 … c_{count-1}` of `num / den` about the origin; `den[0]` must be nonzero.
pub fn exact_taylor(num: &[Rational], den: &[Rational], count: usize) -> Vec<Rational> {
    assert!(!den[0].is_zero(), "pole at the origin");
    let mut c: Vec<Rational> = Vec::with_capacity(count);
    for k in 0..count {
        let mut acc = num.get(k).cloned().unwrap_or_else(Rational::zero);
        for j in 1..=k.min(den.len() - 1) {
            acc -= &den[j] * &c[k - j];
        }
        c.push(acc / &den[0]);
    }
    c
}

fn coeff(c: &[Rational], k: i64) -> Rational {
    if k < 0 {
        Rational::zero()
    } else {
        c[k as usize].clone()
    }
}

/// `T_k` from its defining formula; returns (rows, column count).
pub fn toeplitz(c: &[Rational], order: PadeOrder, k: i64) -> (Vec<Vec<Rational>>, usize) {
    let (m, n) = (order.m as i64, order.n as i64);
    assert!((m - n + 1..=m + n + 1).contains(&k));
    let rows = (m + n - k + 1) as usize;
    let cols = (k - m + n) as usize;
    let mat = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| coeff(c, k + i as i64 - j as i64))
                .collect()
        })
        .collect();
    (mat, cols)
}

/// Reduced row echelon form and pivot columns.
pub fn rref(mut a: Vec<Vec<Rational>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let pivot_row = a[row].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(a: &[Vec<Rational>], cols: usize) -> usize {
    rref(a.to_vec(), cols).1.len()
}

/// Basis of the exact kernel, one vector per free column.
pub fn kernel_basis(a: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(a.to_vec(), cols);
    (0..cols)
        .filter(|j| !pivots.contains(j))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][free].clone();
            }
            v
        })
        .collect()
}

/// Polynomial division (lowest order first); `b` must have a nonzero leading coefficient.
pub fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = b
        .iter()
        .rposition(|x| !x.is_zero())
        .expect("nonzero divisor");
    let mut rem: Vec<Rational> = a.to_vec();
    if rem.len() <= db {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let factor = &rem[k + db] / &b[db];
        if factor.is_zero() {
            continue;
        }
        for j in 0..=db {
            let delta = &factor * &b[j];
            rem[k + j] -= delta;
        }
        quot[k] = factor;
    }
    rem.truncate(db.max(1));
    (quot, rem)
}

#[derive(Clone, Debug)]
pub struct ExactPade {
    pub numerator: Vec<Rational>,
    pub denominator: Vec<Rational>,
    pub kappa: usize,
    pub mu1: i64,
    /// Dimension of the exact kernel of `T_{μ₁+1}`.
    pub kernel_dim: usize,
    pub deficiency: usize,
    pub zeroed_q: BTreeSet<usize>,
    pub zeroed_p: BTreeSet<usize>,
}

impl ExactPade {
    pub fn numerator_f64(&self) -> Vec<Complex> {
        to_complex(&self.numerator)
    }

    pub fn denominator_f64(&self) -> Vec<Complex> {
        to_complex(&self.denominator)
    }
}

pub fn to_complex(v: &[Rational]) -> Vec<Complex> {
    v.iter()
        .map(|x| Complex::new(x.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect()
}

/// Reduced approximant of the exact series `c` (at least `m + n + 1` terms).
pub fn exact_oracle(c: &[Rational], order: PadeOrder) -> ExactPade {
    let (m, n) = (order.m as i64, order.n as i64);
    assert!(c.len() > (m + n) as usize, "need c_0..c_(m+n)");
    let kappa = if n == 0 {
        0
    } else {
        let (t_m, cols) = toeplitz(c, order, m);
        rank(&t_m, cols)
    };
    let mu1 = m - n + kappa as i64;
    let (t, cols) = toeplitz(c, order, mu1 + 1);
    let kernel = kernel_basis(&t, cols);
    let q = kernel[0].clone();
    let p: Vec<Rational> = (0..=m)
        .map(|k| {
            q.iter()
                .enumerate()
                .map(|(j, qj)| coeff(c, k - j as i64) * qj)
                .fold(Rational::zero(), |acc, x| acc + x)
        })
        .collect();
    let zeroed_q = q
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_zero())
        .map(|(k, _)| k)
        .collect();
    let zeroed_p = p
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_zero())
        .map(|(k, _)| k)
        .collect();
    let deficiency = q.iter().take_while(|x| x.is_zero()).count();
    ExactPade {
        numerator: p,
        denominator: q,
        kappa,
        mu1,
        kernel_dim: kernel.len(),
        deficiency,
        zeroed_q,
        zeroed_p,
    }
}

/// Exact kernel of `T_{m+1}`: every admissible classical denominator.
pub fn classical_kernel(c: &[Rational], order: PadeOrder) -> Vec<Vec<Rational>> {
    let (t, cols) = toeplitz(c, order, order.m as i64 + 1);
    kernel_basis(&t, cols)
}

/// Largest absolute value, for scale-aware comparisons.
pub fn max_abs(v: &[Rational]) -> Rational {
    v.iter()
        .map(|x| x.abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn geometric() {
        let r = exact_oracle(&ints(&[1, 1, 1]), PadeOrder::new(1, 1));
        assert_eq!(r.kappa, 1);
        assert_eq!(r.kernel_dim, 1);
        // q ∝ (1, -1)
        assert_eq!(&r.denominator[0] + &r.denominator[1], Rational::zero());
    }

    #[test]
    fn f_equals_z() {
        let r = exact_oracle(&ints(&[0, 1]), PadeOrder::new(0, 1));
        assert!(r.denominator[0].is_zero() && !r.denominator[1].is_zero());
        assert!(r.numerator.iter().all(|x| x.is_zero()));
        assert_eq!(r.deficiency, 1);
    }

    #[test]
    fn divrem() {
        // (z^2 - 1) / (z - 1) = z + 1
        let (q, r) = poly_divrem(&ints(&[-1, 0, 1]), &ints(&[-1, 1]));
        assert_eq!(q, ints(&[1, 1]));
        assert!(r.iter().all(|x| x.is_zero()));
    }
}
