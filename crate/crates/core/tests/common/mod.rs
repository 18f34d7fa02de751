//! Fixtures and comparison helpers shared by the integration tests.

#![allow(dead_code)]

use pade_core::oracle::{self, Rational};
use pade_core::{taylor_of_rational, Complex, PadeOrder, Polynomial, PowerSeries, RationalSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FIXTURE_SEED: u64 = 0x5eed_f0ad;

/// Random rational function with small integer coefficients plus an order.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub num: Vec<i64>,
    pub den: Vec<i64>,
    pub order: PadeOrder,
}

impl Fixture {
    pub fn exact_series(&self) -> Vec<Rational> {
        let num: Vec<Rational> = self.num.iter().map(|&x| oracle::int(x)).collect();
        let den: Vec<Rational> = self.den.iter().map(|&x| oracle::int(x)).collect();
        oracle::exact_taylor(&num, &den, self.order.coefficients_needed())
    }

    pub fn float_series(&self) -> PowerSeries {
        let num = Polynomial::from_real(&self.num.iter().map(|&x| x as f64).collect::<Vec<_>>());
        let den = Polynomial::from_real(&self.den.iter().map(|&x| x as f64).collect::<Vec<_>>());
        let spec = RationalSpec::new(num, den).expect("nonzero denominator");
        taylor_of_rational(
            &spec,
            Complex::new(0.0, 0.0),
            self.order.coefficients_needed(),
        )
        .expect("regular at the origin")
    }
}

fn random_poly(rng: &mut ChaCha8Rng) -> Vec<i64> {
    let deg = rng.gen_range(0..=4);
    (0..=deg).map(|_| rng.gen_range(-5..=5)).collect()
}

/// `count` fixtures: degrees at most 4, coefficients in `[-5, 5]`, no pole
/// at the origin, `m, n <= 6`, and a nonzero coefficient window.
pub fn fixtures(count: usize) -> Vec<Fixture> {
    let mut rng = ChaCha8Rng::seed_from_u64(FIXTURE_SEED);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let num = random_poly(&mut rng);
        let den = random_poly(&mut rng);
        if den[0] == 0 || num.iter().all(|&x| x == 0) {
            continue;
        }
        let order = PadeOrder::new(rng.gen_range(0..=6), rng.gen_range(0..=6));
        let fx = Fixture { num, den, order };
        if order.n > 0 {
            let c = fx.exact_series();
            let lo = (order.m as i64 - order.n as i64 + 1).max(0) as usize;
            let hi = order.m + order.n;
            if c[lo..=hi].iter().all(|x| *x == oracle::int(0)) {
                continue;
            }
        }
        out.push(fx);
    }
    out
}

/// `(P, Q)` concatenated, scaled to unit norm, with the first denominator
/// coefficient above `1.5e-8 · max|Q|` made real positive.
pub fn normalized(p: &[Complex], q: &[Complex]) -> Vec<Complex> {
    let mut v: Vec<Complex> = p.iter().chain(q).copied().collect();
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let top = q.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let lead = q
        .iter()
        .find(|c| c.norm() > 1.5e-8 * top)
        .copied()
        .unwrap_or(Complex::new(1.0, 0.0));
    let scale = lead.conj() / (lead.norm() * norm);
    for c in v.iter_mut() {
        *c *= scale;
    }
    v
}

pub fn max_diff(a: &[Complex], b: &[Complex]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Padded to `len` with zeros.
pub fn padded(p: &Polynomial, len: usize) -> Vec<Complex> {
    (0..len).map(|k| p.coeff(k)).collect()
}

pub fn rational_spec(num: &[f64], den: &[f64]) -> RationalSpec {
    RationalSpec::new(Polynomial::from_real(num), Polynomial::from_real(den)).unwrap()
}

/// Product `lead · Π (z - r)` as real coefficients, lowest first.
pub fn real_poly_from_roots(roots: &[f64], lead: f64) -> Vec<f64> {
    let mut c = vec![lead];
    for &r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (k, &x) in c.iter().enumerate() {
            next[k + 1] += x;
            next[k] -= r * x;
        }
        c = next;
    }
    c
}

/// Every root in `expected` has a distinct partner in `found` within `tol`.
pub fn roots_match(found: &[Complex], expected: &[Complex], tol: f64) -> bool {
    if found.len() != expected.len() {
        return false;
    }
    let mut used = vec![false; found.len()];
    expected.iter().all(|e| {
        let best = found
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .min_by(|a, b| (a.1 - e).norm().total_cmp(&(b.1 - e).norm()));
        match best {
            Some((i, z)) if (z - e).norm() <= tol => {
                used[i] = true;
                true
            }
            _ => false,
        }
    })
}

pub fn random_complex_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> pade_core::Matrix {
    pade_core::Matrix::from_fn(rows, cols, |_, _| {
        Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
