//! Serializable reports. Field order in the structs is the field order in
//! the JSON output; floats are written with 17 significant digits.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use pade_core::{
    Comparison, Complex, Doublet, PadeTable, Polynomial, RankReport, ReducedPade, RootAnalysis,
    RootSet,
};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

pub const SCHEMA: u32 = 1;

/// Roots closer than this (relative) are reported as one root with a multiplicity.
pub const MULTIPLICITY_TOL: f64 = 1e-6;

/// A float rendered as `{:.16e}`; `null` when not finite.
#[derive(Clone, Copy, Debug)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(format!("{:.16e}", self.0))
                .map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

#[derive(Serialize, Clone, Copy, Debug)]
pub struct C {
    re: Num,
    im: Num,
}

impl From<Complex> for C {
    fn from(z: Complex) -> Self {
        C {
            re: Num(z.re),
            im: Num(z.im),
        }
    }
}

fn cs(v: &[Complex]) -> Vec<C> {
    v.iter().copied().map(C::from).collect()
}

fn nums(v: &[f64]) -> Vec<Num> {
    v.iter().copied().map(Num).collect()
}

#[derive(Serialize)]
pub struct Order {
    m: usize,
    n: usize,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
pub struct PerMatrix<T> {
    Tm: T,
    Tkernel: T,
}

#[derive(Serialize)]
pub struct ApproximateReport {
    schema: u32,
    order: Order,
    center: C,
    kappa: usize,
    mu1: i64,
    mu2: i64,
    deficiency: usize,
    baker_exists: bool,
    numerator: Vec<C>,
    denominator: Vec<C>,
    zeroed_p: Vec<usize>,
    zeroed_q: Vec<usize>,
    singular_values: PerMatrix<Vec<Num>>,
    gaps: PerMatrix<Num>,
    tolerance_used: PerMatrix<Num>,
    warnings: Vec<String>,
    zeros: Vec<C>,
    poles: Vec<C>,
}

fn set(s: &BTreeSet<usize>) -> Vec<usize> {
    s.iter().copied().collect()
}

pub fn approximate(r: &ReducedPade, roots: &RootAnalysis) -> ApproximateReport {
    let tm: &RankReport = &r.indices.rank_report;
    let tk = &r.kernel_rank_report;
    ApproximateReport {
        schema: SCHEMA,
        order: Order {
            m: r.order.m,
            n: r.order.n,
        },
        center: r.center.into(),
        kappa: r.indices.kappa,
        mu1: r.indices.mu1,
        mu2: r.indices.mu2,
        deficiency: r.deficiency,
        baker_exists: r.baker_exists,
        numerator: cs(r.numerator.coeffs()),
        denominator: cs(r.denominator.coeffs()),
        zeroed_p: set(&r.zeroed_p),
        zeroed_q: set(&r.zeroed_q),
        singular_values: PerMatrix {
            Tm: nums(&tm.singular),
            Tkernel: nums(&tk.singular),
        },
        gaps: PerMatrix {
            Tm: Num(tm.gap),
            Tkernel: Num(tk.gap),
        },
        tolerance_used: PerMatrix {
            Tm: Num(tm.tolerance),
            Tkernel: Num(tk.tolerance),
        },
        warnings: r.warnings.iter().map(|w| w.to_string()).collect(),
        zeros: cs(&roots.zeros.roots),
        poles: cs(&roots.poles.roots),
    }
}

#[derive(Serialize)]
pub struct DoubletOut {
    zero: C,
    pole: C,
    distance: Num,
}

fn doublets(d: &[Doublet]) -> Vec<DoubletOut> {
    d.iter()
        .map(|d| DoubletOut {
            zero: d.zero.into(),
            pole: d.pole.into(),
            distance: Num(d.distance),
        })
        .collect()
}

#[derive(Serialize)]
pub struct Side {
    numerator: Vec<C>,
    denominator: Vec<C>,
    zeros: Vec<C>,
    poles: Vec<C>,
    doublets: Vec<DoubletOut>,
}

fn side(p: &Polynomial, q: &Polynomial, roots: &RootAnalysis) -> Side {
    Side {
        numerator: cs(p.coeffs()),
        denominator: cs(q.coeffs()),
        zeros: cs(&roots.zeros.roots),
        poles: cs(&roots.poles.roots),
        doublets: doublets(&roots.doublets.doublets),
    }
}

#[derive(Serialize)]
pub struct CompareReport {
    schema: u32,
    order: Order,
    center: C,
    pairing_tol: Num,
    kernel_dimension: usize,
    classical: Side,
    reduced: Side,
    warnings: Vec<String>,
}

pub fn compare(c: &Comparison, pairing_tol: f64) -> CompareReport {
    let r = &c.reduced;
    let report = &c.classical.kernel_rank_report;
    CompareReport {
        schema: SCHEMA,
        order: Order {
            m: r.order.m,
            n: r.order.n,
        },
        center: r.center.into(),
        pairing_tol: Num(pairing_tol),
        kernel_dimension: r.order.n + 1 - report.rank,
        classical: side(
            &c.classical.numerator,
            &c.classical.denominator,
            &c.classical_roots,
        ),
        reduced: side(&r.numerator, &r.denominator, &c.reduced_roots),
        warnings: r.warnings.iter().map(|w| w.to_string()).collect(),
    }
}

#[derive(Serialize)]
pub struct RootOut {
    root: C,
    multiplicity: usize,
}

#[derive(Serialize)]
pub struct RootsOut {
    effective_degree: usize,
    trimmed_leading: usize,
    roots: Vec<RootOut>,
}

fn roots_out(s: &RootSet) -> RootsOut {
    RootsOut {
        effective_degree: s.effective_degree,
        trimmed_leading: s.trimmed_leading,
        roots: pade_core::group_roots(&s.roots, MULTIPLICITY_TOL)
            .into_iter()
            .map(|(z, k)| RootOut {
                root: z.into(),
                multiplicity: k,
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct RootsReport {
    schema: u32,
    order: Order,
    center: C,
    zeros: RootsOut,
    poles: RootsOut,
    warnings: Vec<String>,
}

pub fn roots(r: &ReducedPade, a: &RootAnalysis) -> RootsReport {
    RootsReport {
        schema: SCHEMA,
        order: Order {
            m: r.order.m,
            n: r.order.n,
        },
        center: r.center.into(),
        zeros: roots_out(&a.zeros),
        poles: roots_out(&a.poles),
        warnings: r.warnings.iter().map(|w| w.to_string()).collect(),
    }
}

#[derive(Serialize)]
pub struct CellOut {
    m: usize,
    n: usize,
    class: usize,
    kappa: usize,
    deficiency: usize,
}

#[derive(Serialize)]
pub struct TableReport {
    schema: u32,
    mmax: usize,
    nmax: usize,
    center: C,
    class_count: usize,
    blocks_are_square: bool,
    cells: Vec<CellOut>,
}

pub fn table(t: &PadeTable, center: Complex) -> TableReport {
    TableReport {
        schema: SCHEMA,
        mmax: t.m_max,
        nmax: t.n_max,
        center: center.into(),
        class_count: t.class_count(),
        blocks_are_square: t.blocks_are_square(),
        cells: t
            .cells
            .iter()
            .map(|c| CellOut {
                m: c.m,
                n: c.n,
                class: c.class,
                kappa: c.kappa,
                deficiency: c.deficiency,
            })
            .collect(),
    }
}

pub fn json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn g(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

fn txt(z: Complex) -> String {
    if z.im == 0.0 {
        format!("{:.10e}", z.re)
    } else {
        format!(
            "{:.10e} {} {:.10e}i",
            z.re,
            if z.im < 0.0 { '-' } else { '+' },
            z.im.abs()
        )
    }
}

fn poly_text(p: &Polynomial) -> String {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| format!("  {k:>3}  {}\n", txt(*c)))
        .collect()
}

// CSV layouts

pub fn approximate_csv(r: &ReducedPade) -> String {
    let mut s = String::from("k,numerator_re,numerator_im,denominator_re,denominator_im\n");
    let len = r.numerator.coeffs().len().max(r.denominator.coeffs().len());
    for k in 0..len {
        let cell = |p: &Polynomial| {
            if k < p.coeffs().len() {
                (g(p.coeff(k).re), g(p.coeff(k).im))
            } else {
                (String::new(), String::new())
            }
        };
        let (pr, pi) = cell(&r.numerator);
        let (qr, qi) = cell(&r.denominator);
        let _ = writeln!(s, "{k},{pr},{pi},{qr},{qi}");
    }
    s
}

pub fn roots_csv(a: &RootAnalysis) -> String {
    let mut s = String::from("kind,re,im,multiplicity\n");
    for (kind, set) in [("zero", &a.zeros), ("pole", &a.poles)] {
        for (z, k) in pade_core::group_roots(&set.roots, MULTIPLICITY_TOL) {
            let _ = writeln!(s, "{kind},{},{},{k}", g(z.re), g(z.im));
        }
    }
    s
}

pub fn compare_csv(c: &Comparison) -> String {
    let mut s = String::from("approximant,kind,re,im,in_doublet\n");
    for (name, a) in [
        ("classical", &c.classical_roots),
        ("reduced", &c.reduced_roots),
    ] {
        let paired_zero = |z: &Complex| a.doublets.doublets.iter().any(|d| d.zero == *z);
        let paired_pole = |z: &Complex| a.doublets.doublets.iter().any(|d| d.pole == *z);
        for z in &a.zeros.roots {
            let _ = writeln!(s, "{name},zero,{},{},{}", g(z.re), g(z.im), paired_zero(z));
        }
        for z in &a.poles.roots {
            let _ = writeln!(s, "{name},pole,{},{},{}", g(z.re), g(z.im), paired_pole(z));
        }
    }
    s
}

pub fn table_csv(t: &PadeTable) -> String {
    let mut s = String::from("m,n,class,kappa,deficiency\n");
    for c in &t.cells {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            c.m, c.n, c.class, c.kappa, c.deficiency
        );
    }
    s
}

// Text layouts

fn warnings_text(s: &mut String, r: &ReducedPade) {
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
}

pub fn approximate_text(r: &ReducedPade, a: &RootAnalysis) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "order ({}, {}) at {}",
        r.order.m,
        r.order.n,
        txt(r.center)
    );
    let _ = writeln!(
        s,
        "kappa {}  mu1 {}  mu2 {}  deficiency {}  baker {}",
        r.indices.kappa, r.indices.mu1, r.indices.mu2, r.deficiency, r.baker_exists
    );
    let _ = writeln!(s, "numerator (zeroed {:?})", set(&r.zeroed_p));
    s.push_str(&poly_text(&r.numerator));
    let _ = writeln!(s, "denominator (zeroed {:?})", set(&r.zeroed_q));
    s.push_str(&poly_text(&r.denominator));
    let _ = writeln!(s, "zeros");
    for z in &a.zeros.roots {
        let _ = writeln!(s, "  {}", txt(*z));
    }
    let _ = writeln!(s, "poles");
    for z in &a.poles.roots {
        let _ = writeln!(s, "  {}", txt(*z));
    }
    warnings_text(&mut s, r);
    s
}

pub fn roots_text(r: &ReducedPade, a: &RootAnalysis) -> String {
    let mut s = String::new();
    for (kind, set) in [("zeros", &a.zeros), ("poles", &a.poles)] {
        let _ = writeln!(
            s,
            "{kind} (degree {}, trimmed {})",
            set.effective_degree, set.trimmed_leading
        );
        for (z, k) in pade_core::group_roots(&set.roots, MULTIPLICITY_TOL) {
            let _ = writeln!(s, "  {}  x{k}", txt(z));
        }
    }
    warnings_text(&mut s, r);
    s
}

pub fn compare_text(c: &Comparison) -> String {
    let mut s = String::new();
    for (name, a) in [
        ("classical", &c.classical_roots),
        ("reduced", &c.reduced_roots),
    ] {
        let _ = writeln!(
            s,
            "{name}: {} zeros, {} poles, {} doublets",
            a.zeros.roots.len(),
            a.poles.roots.len(),
            a.doublets.doublets.len()
        );
        for d in &a.doublets.doublets {
            let _ = writeln!(
                s,
                "  zero {}  pole {}  distance {:.3e}",
                txt(d.zero),
                txt(d.pole),
                d.distance
            );
        }
    }
    warnings_text(&mut s, &c.reduced);
    s
}

pub fn table_text(t: &PadeTable) -> String {
    let mut s = String::from("class ids, rows m = 0.., columns n = 0..\n");
    for m in 0..=t.m_max {
        let row: Vec<String> = (0..=t.n_max)
            .map(|n| format!("{:>3}", t.cell(m, n).class))
            .collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    let _ = writeln!(
        s,
        "{} classes, square blocks: {}",
        t.class_count(),
        t.blocks_are_square()
    );
    s
}
