//! Grids of reduced approximants with cells grouped by the rational function
//! they represent.

use crate::error::Result;
use crate::reduced::{reduced_pade, ReduceOptions, ReducedPade};
use crate::series::{Complex, PowerSeries};
use crate::toeplitz::PadeOrder;

/// Cells whose normalized coefficient vectors differ by at most this much
/// share a class.
pub const CLASS_TOL: f64 = 1e-8;

const PHASE_FLOOR: f64 = 1.5e-8;

#[derive(Clone, Debug)]
pub struct TableCell {
    pub m: usize,
    pub n: usize,
    pub class: usize,
    pub kappa: usize,
    pub deficiency: usize,
    pub approximant: ReducedPade,
}

#[derive(Clone, Debug)]
pub struct PadeTable {
    pub m_max: usize,
    pub n_max: usize,
    /// Ordered by `m`, then `n`.
    pub cells: Vec<TableCell>,
}

impl PadeTable {
    pub fn cell(&self, m: usize, n: usize) -> &TableCell {
        &self.cells[m * (self.n_max + 1) + n]
    }

    pub fn class_count(&self) -> usize {
        self.cells.iter().map(|c| c.class + 1).max().unwrap_or(0)
    }

    /// Every class occupies a full rectangle that is square, or would be
    /// square if the grid were extended past `m_max` / `n_max`.
    pub fn blocks_are_square(&self) -> bool {
        (0..self.class_count()).all(|class| {
            let members: Vec<&TableCell> = self.cells.iter().filter(|c| c.class == class).collect();
            let m0 = members.iter().map(|c| c.m).min().unwrap();
            let m1 = members.iter().map(|c| c.m).max().unwrap();
            let n0 = members.iter().map(|c| c.n).min().unwrap();
            let n1 = members.iter().map(|c| c.n).max().unwrap();
            let width = m1 - m0 + 1;
            let height = n1 - n0 + 1;
            let full = members.len() == width * height;
            let square = width == height
                || (width < height && m1 == self.m_max)
                || (height < width && n1 == self.n_max);
            full && square
        })
    }
}

/// `(P, Q)` padded to the grid's maximal degrees, scaled to unit norm with
/// the first significant denominator coefficient real positive.
fn signature(r: &ReducedPade, m_max: usize, n_max: usize) -> Vec<Complex> {
    let mut v: Vec<Complex> = (0..=m_max).map(|k| r.numerator.coeff(k)).collect();
    v.extend((0..=n_max).map(|k| r.denominator.coeff(k)));
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let q = &v[m_max + 1..];
    let top = q.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let lead = q
        .iter()
        .find(|c| c.norm() > PHASE_FLOOR * top)
        .copied()
        .unwrap_or(Complex::new(1.0, 0.0));
    let scale = lead.conj() / (lead.norm() * norm);
    v.iter().map(|c| c * scale).collect()
}

/// Reduced approximants for `0 <= m <= m_max`, `0 <= n <= n_max`; class ids
/// are assigned in order of first appearance.
pub fn pade_table(
    f: &PowerSeries,
    m_max: usize,
    n_max: usize,
    options: &ReduceOptions,
) -> Result<PadeTable> {
    f.require(m_max + n_max + 1)?;
    let mut cells = Vec::with_capacity((m_max + 1) * (n_max + 1));
    let mut reps: Vec<Vec<Complex>> = Vec::new();
    for m in 0..=m_max {
        for n in 0..=n_max {
            let approximant = reduced_pade(f, PadeOrder::new(m, n), options)?;
            let sig = signature(&approximant, m_max, n_max);
            let class = match reps
                .iter()
                .position(|r| r.iter().zip(&sig).all(|(a, b)| (a - b).norm() <= CLASS_TOL))
            {
                Some(id) => id,
                None => {
                    reps.push(sig);
                    reps.len() - 1
                }
            };
            cells.push(TableCell {
                m,
                n,
                class,
                kappa: approximant.indices.kappa,
                deficiency: approximant.deficiency,
                approximant,
            });
        }
    }
    Ok(PadeTable {
        m_max,
        n_max,
        cells,
    })
}
