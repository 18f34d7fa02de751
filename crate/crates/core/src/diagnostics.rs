//! Zeros and poles of computed approximants, Froissart doublet detection, and
//! the classical-versus-reduced comparison.

use std::f64::consts::PI;

use crate::error::{PadeError, Result};
use crate::reduced::{classical_pade, reduced_pade, ClassicalPade, ReduceOptions, ReducedPade};
use crate::series::{Complex, Polynomial, PowerSeries};
use crate::toeplitz::PadeOrder;

/// Relative distance under which a zero and a pole count as a doublet.
pub const DEFAULT_PAIRING_TOL: f64 = 1e-3;

const ZERO: Complex = Complex::new(0.0, 0.0);
const MAX_ABERTH_ITERS: usize = 500;

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    /// Roots in the `z` plane (center already added), sorted by real then imaginary part.
    pub roots: Vec<Complex>,
    pub effective_degree: usize,
    /// Leading coefficients dropped before solving.
    pub trimmed_leading: usize,
}

impl RootSet {
    fn empty() -> Self {
        Self {
            roots: Vec::new(),
            effective_degree: 0,
            trimmed_leading: 0,
        }
    }
}

/// Roots of `p` by Aberth–Ehrlich iteration followed by one Newton step
/// per root.
///
/// Leading coefficients with `|c| <= trim_tol · max|c|` are dropped first;
/// `trim_tol = 0` drops only exact zeros, so a tiny spurious leading
/// coefficient `ε` shows up as a root of magnitude about `|c_{d-1} / ε|`.
pub fn poly_roots(p: &Polynomial, trim_tol: f64) -> Result<RootSet> {
    let coeffs = p.coeffs();
    let top = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if top == 0.0 {
        return Err(PadeError::ZeroPolynomial);
    }
    let last = coeffs
        .iter()
        .rposition(|c| c.norm() > trim_tol * top && *c != ZERO)
        .expect("nonzero coefficient");
    let trimmed_leading = coeffs.len() - 1 - last;
    let kept = &coeffs[..=last];

    // exact roots at the center
    let at_center = kept.iter().take_while(|c| **c == ZERO).count();
    let reduced = &kept[at_center..];

    let mut roots: Vec<Complex> = vec![ZERO; at_center];
    roots.extend(aberth(reduced));
    let mut roots: Vec<Complex> = roots.into_iter().map(|w| w + p.center()).collect();
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(RootSet {
        roots,
        effective_degree: last,
        trimmed_leading,
    })
}

fn horner_with_derivative(a: &[Complex], z: Complex) -> (Complex, Complex) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &c in a.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn abs_horner(a: &[Complex], r: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Starting points on circles whose radii come from the upper convex hull of
/// `(k, log|a_k|)`.
fn initial_guesses(a: &[Complex]) -> Vec<Complex> {
    let d = a.len() - 1;
    let pts: Vec<(usize, f64)> = a
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != ZERO)
        .map(|(k, c)| (k, c.norm().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (k1, y1) = hull[hull.len() - 2];
            let (k2, y2) = hull[hull.len() - 1];
            let cross =
                (k2 as f64 - k1 as f64) * (pt.1 - y1) - (y2 - y1) * (pt.0 as f64 - k1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut guesses = Vec::with_capacity(d);
    for w in hull.windows(2) {
        let ((k1, y1), (k2, y2)) = (w[0], w[1]);
        let count = k2 - k1;
        let radius = ((y1 - y2) / count as f64).exp();
        for j in 0..count {
            let angle = 2.0 * PI * j as f64 / count as f64 + 2.0 * PI * k1 as f64 / d as f64 + 0.4;
            guesses.push(Complex::from_polar(radius, angle));
        }
    }
    guesses
}

fn aberth(a: &[Complex]) -> Vec<Complex> {
    let d = a.len() - 1;
    match d {
        0 => return Vec::new(),
        1 => return vec![-a[0] / a[1]],
        _ => {}
    }
    let mut z = initial_guesses(a);
    let mut done = vec![false; d];
    let eps = f64::EPSILON;
    for _ in 0..MAX_ABERTH_ITERS {
        if done.iter().all(|&x| x) {
            break;
        }
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (p, dp) = horner_with_derivative(a, z[i]);
            if p.norm() <= 4.0 * eps * abs_horner(a, z[i].norm()) {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: Complex = (0..d)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex::new(1.0, 0.0) - ratio * sum);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() <= eps * z[i].norm() {
                done[i] = true;
            }
        }
    }
    for zi in z.iter_mut() {
        let (p, dp) = horner_with_derivative(a, *zi);
        if dp != ZERO {
            let cand = *zi - p / dp;
            let (pc, _) = horner_with_derivative(a, cand);
            if pc.norm() < p.norm() {
                *zi = cand;
            }
        }
    }
    z
}

/// Clusters roots lying within `rel_tol · max(1, |r|)` of each other and
/// reports each cluster's mean with its size.
pub fn group_roots(roots: &[Complex], rel_tol: f64) -> Vec<(Complex, usize)> {
    let mut clusters: Vec<(Complex, Vec<Complex>)> = Vec::new();
    for &r in roots {
        match clusters
            .iter_mut()
            .find(|(rep, _)| (r - *rep).norm() <= rel_tol * rep.norm().max(1.0))
        {
            Some((_, members)) => members.push(r),
            None => clusters.push((r, vec![r])),
        }
    }
    clusters
        .into_iter()
        .map(|(_, members)| {
            let n = members.len();
            (members.iter().sum::<Complex>() / n as f64, n)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Doublet {
    pub zero: Complex,
    pub pole: Complex,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoubletReport {
    pub doublets: Vec<Doublet>,
    pub unpaired_zeros: Vec<Complex>,
    pub unpaired_poles: Vec<Complex>,
    pub pairing_tol: f64,
}

/// Greedy pairing: the globally closest eligible (zero, pole) pair is taken
/// first, both are removed, and the process repeats. A pair is eligible when
/// `|zero - pole| <= pairing_tol · max(1, |zero|)`. Greedy matching is not an
/// optimal assignment, which makes no difference at the sizes involved here.
pub fn detect_doublets(zeros: &[Complex], poles: &[Complex], pairing_tol: f64) -> DoubletReport {
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for (i, z) in zeros.iter().enumerate() {
        for (j, p) in poles.iter().enumerate() {
            let dist = (z - p).norm();
            if dist <= pairing_tol * z.norm().max(1.0) {
                candidates.push((dist, i, j));
            }
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut used_z = vec![false; zeros.len()];
    let mut used_p = vec![false; poles.len()];
    let mut doublets = Vec::new();
    for (distance, i, j) in candidates {
        if used_z[i] || used_p[j] {
            continue;
        }
        used_z[i] = true;
        used_p[j] = true;
        doublets.push(Doublet {
            zero: zeros[i],
            pole: poles[j],
            distance,
        });
    }
    DoubletReport {
        doublets,
        unpaired_zeros: zeros
            .iter()
            .zip(&used_z)
            .filter(|(_, u)| !**u)
            .map(|(z, _)| *z)
            .collect(),
        unpaired_poles: poles
            .iter()
            .zip(&used_p)
            .filter(|(_, u)| !**u)
            .map(|(p, _)| *p)
            .collect(),
        pairing_tol,
    }
}

/// Roots of a polynomial, empty for the zero polynomial.
pub fn roots_or_empty(p: &Polynomial, trim_tol: f64) -> Result<RootSet> {
    match poly_roots(p, trim_tol) {
        Err(PadeError::ZeroPolynomial) => Ok(RootSet::empty()),
        other => other,
    }
}

/// Zeros, poles and doublets of one approximant.
#[derive(Clone, Debug, PartialEq)]
pub struct RootAnalysis {
    pub zeros: RootSet,
    pub poles: RootSet,
    pub doublets: DoubletReport,
}

pub fn analyze(
    p: &Polynomial,
    q: &Polynomial,
    trim_tol: f64,
    pairing_tol: f64,
) -> Result<RootAnalysis> {
    let zeros = roots_or_empty(p, trim_tol)?;
    let poles = roots_or_empty(q, trim_tol)?;
    let doublets = detect_doublets(&zeros.roots, &poles.roots, pairing_tol);
    Ok(RootAnalysis {
        zeros,
        poles,
        doublets,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompareOptions {
    pub reduce: ReduceOptions,
    pub pairing_tol: f64,
    pub trim_tol: f64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            reduce: ReduceOptions::default(),
            pairing_tol: DEFAULT_PAIRING_TOL,
            trim_tol: 0.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub classical: ClassicalPade,
    pub classical_roots: RootAnalysis,
    pub reduced: ReducedPade,
    pub reduced_roots: RootAnalysis,
}

/// Runs the classical baseline and the reduced approximant on the same input.
pub fn compare(f: &PowerSeries, order: PadeOrder, options: &CompareOptions) -> Result<Comparison> {
    let classical = classical_pade(f, order, options.reduce.tol)?;
    let reduced = reduced_pade(f, order, &options.reduce)?;
    let classical_roots = analyze(
        &classical.numerator,
        &classical.denominator,
        options.trim_tol,
        options.pairing_tol,
    )?;
    let reduced_roots = analyze(
        &reduced.numerator,
        &reduced.denominator,
        options.trim_tol,
        options.pairing_tol,
    )?;
    Ok(Comparison {
        classical,
        classical_roots,
        reduced,
        reduced_roots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn from_roots(roots: &[Complex], lead: Complex) -> Polynomial {
        let mut coeffs = vec![lead];
        for &r in roots {
            let mut next = vec![ZERO; coeffs.len() + 1];
            for (k, &a) in coeffs.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * r;
            }
            coeffs = next;
        }
        Polynomial::new(coeffs, ZERO).unwrap()
    }

    fn assert_roots_match(got: &[Complex], want: &[Complex], tol: f64) {
        assert_eq!(got.len(), want.len());
        let mut used = vec![false; want.len()];
        for g in got {
            let (k, d) = want
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, w)| (k, (g - w).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            assert!(d <= tol, "root {g} off by {d}");
            used[k] = true;
        }
    }

    #[test]
    fn unit_imaginary_pair() {
        let r = poly_roots(&Polynomial::from_real(&[1.0, 0.0, 1.0]), 0.0).unwrap();
        assert_roots_match(&r.roots, &[c(0.0, 1.0), c(0.0, -1.0)], 1e-14);
        assert_eq!(r.effective_degree, 2);
    }

    #[test]
    fn example_denominator_roots() {
        // (z + 2.1)(z - 1)
        let r = poly_roots(&Polynomial::from_real(&[-2.1, 1.1, 1.0]), 0.0).unwrap();
        assert_roots_match(&r.roots, &[c(-2.1, 0.0), c(1.0, 0.0)], 1e-12);
    }

    #[test]
    fn degree_six_from_roots() {
        let want = [
            c(1.5, 0.0),
            c(-0.3, 0.7),
            c(-0.3, -0.7),
            c(2.0, -3.0),
            c(-4.0, 0.5),
            c(0.05, 0.0),
        ];
        let p = from_roots(&want, c(0.7, -0.2));
        let r = poly_roots(&p, 0.0).unwrap();
        assert_roots_match(&r.roots, &want, 1e-8);
    }

    #[test]
    fn recentered_polynomial_roots_are_absolute() {
        let p = from_roots(&[c(1.0, 0.0), c(-2.0, 0.0)], c(1.0, 0.0)).recenter(c(0.5, 0.5));
        let r = poly_roots(&p, 0.0).unwrap();
        assert_roots_match(&r.roots, &[c(1.0, 0.0), c(-2.0, 0.0)], 1e-12);
    }

    #[test]
    fn roots_at_center_and_trimming() {
        // z^2 (z - 3) plus an exact zero leading coefficient
        let p = Polynomial::from_real(&[0.0, 0.0, -3.0, 1.0, 0.0]);
        let r = poly_roots(&p, 0.0).unwrap();
        assert_eq!(r.trimmed_leading, 1);
        assert_eq!(r.effective_degree, 3);
        assert_roots_match(&r.roots, &[c(0.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)], 1e-14);

        let noisy = Polynomial::from_real(&[-3.0, 1.0, 1e-13]);
        assert_eq!(poly_roots(&noisy, 1e-10).unwrap().roots.len(), 1);
        assert_eq!(poly_roots(&noisy, 0.0).unwrap().roots.len(), 2);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            poly_roots(&Polynomial::from_real(&[0.0, 0.0]), 0.0),
            Err(PadeError::ZeroPolynomial)
        ));
    }

    #[test]
    fn doublet_example() {
        let zeros = [c(-1.48273, 0.0), c(-1.0, 0.0), c(2.0, 0.0)];
        let poles = [c(-2.1, 0.0), c(-1.48273, 0.0), c(1.0, 0.0)];
        let rep = detect_doublets(&zeros, &poles, 1e-3);
        assert_eq!(rep.doublets.len(), 1);
        assert_eq!(rep.doublets[0].zero, c(-1.48273, 0.0));
        assert_eq!(rep.unpaired_zeros.len(), 2);
        assert_eq!(rep.unpaired_poles.len(), 2);
    }

    #[test]
    fn disjoint_and_identical_sets() {
        let a = [c(1.0, 0.0), c(2.0, 1.0)];
        let b = [c(-5.0, 0.0), c(10.0, 3.0)];
        assert!(detect_doublets(&a, &b, 1e-3).doublets.is_empty());
        let rep = detect_doublets(&a, &a, 1e-3);
        assert_eq!(rep.doublets.len(), 2);
        assert!(rep.doublets.iter().all(|d| d.distance == 0.0));
    }

    #[test]
    fn grouping() {
        let g = group_roots(&[c(1.0, 0.0), c(1.0 + 1e-9, 0.0), c(-2.0, 0.0)], 1e-6);
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].1, 2);
        assert_eq!(g[1].1, 1);
    }

    proptest! {
        #[test]
        fn tiny_leading_coefficient_gives_huge_root(
            eps_exp in 10i32..17, c1 in 0.5f64..3.0, c0 in -3.0f64..3.0,
        ) {
            let eps = 10f64.powi(-eps_exp);
            let p = Polynomial::from_real(&[c0, c1, eps]);
            let r = poly_roots(&p, 0.0).unwrap();
            let biggest = r.roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assert!(biggest >= 0.1 * (c1 / eps));
        }

        #[test]
        fn doublets_permutation_invariant(
            zs in proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 0..6),
            ps in proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 0..6),
            rot in 0usize..6,
        ) {
            let zeros: Vec<Complex> = zs.iter().map(|&(a, b)| c(a, b)).collect();
            let mut poles: Vec<Complex> = ps.iter().map(|&(a, b)| c(a, b)).collect();
            // plant a few exact doublets
            poles.extend(zeros.iter().take(2).map(|z| z + c(1e-5, 0.0)));
            let base = detect_doublets(&zeros, &poles, 0.5);
            prop_assert!(base.doublets.len() <= zeros.len().min(poles.len()));
            let mut z2 = zeros.clone();
            let mut p2 = poles.clone();
            if !z2.is_empty() { let k = rot % z2.len(); z2.rotate_left(k); }
            if !p2.is_empty() { let k = rot % p2.len(); p2.rotate_right(k); }
            let other = detect_doublets(&z2, &p2, 0.5);
            let key = |r: &DoubletReport| {
                let mut v: Vec<(u64, u64, u64, u64)> = r.doublets.iter()
                    .map(|d| (d.zero.re.to_bits(), d.zero.im.to_bits(), d.pole.re.to_bits(), d.pole.im.to_bits()))
                    .collect();
                v.sort();
                v
            };
            prop_assert_eq!(key(&base), key(&other));
        }
    }
}
