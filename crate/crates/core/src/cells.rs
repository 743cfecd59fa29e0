//! Fundamental domains spanned by relevant vectors for which the `3^n`
//! block suffices.

use crate::copies::{copy_counts_with, primitive_coefficients, CopyCounts};
use crate::error::Result;
use crate::lattice::{Basis, LatticeVector};
use crate::linalg::IntMatrix;
use crate::reduction::is_reduced;
use crate::tol::TOL_SNAP;
use crate::voronoi::{cell_from_relevant, relevant_vectors, RelevantVectorSet, VoronoiCell};

/// Columns sign-normalized (first nonzero entry positive), then sorted.
/// Two cells with the same key are lattice translates of each other up to
/// relabelling of the axes.
pub type CanonicalKey = Vec<Vec<i64>>;

pub fn canonical_key(coeffs: &IntMatrix) -> CanonicalKey {
    let n = coeffs.dim();
    let mut cols: Vec<Vec<i64>> = (0..n)
        .map(|j| LatticeVector::new(coeffs.column(j)).expect("dimension 2 or 3").canonical().coeffs().to_vec())
        .collect();
    cols.sort();
    cols
}

#[derive(Debug, Clone)]
pub struct CellBasisCandidate {
    /// Spanning vectors in reduced-basis coefficients, in key order.
    pub coeffs: IntMatrix,
    pub basis: Basis,
    pub key: CanonicalKey,
    pub copies: CopyCounts,
}

fn sufficient(c: &CopyCounts) -> bool {
    c.h.iter().all(|&h| h <= 1.0 + TOL_SNAP)
}

fn enumerate_from(rel: &RelevantVectorSet, v: &VoronoiCell) -> Result<Vec<CellBasisCandidate>> {
    let rb = rel.reduced().basis();
    let n = rb.dim();
    let reps: Vec<Vec<i64>> = rel.vectors().iter().map(|r| r.reduced_coeffs.coeffs().to_vec()).collect();
    let mut out: Vec<CellBasisCandidate> = Vec::new();
    let mut visit = |cols: Vec<Vec<i64>>| -> Result<()> {
        let m = IntMatrix::from_columns(&cols);
        if !m.is_unimodular() {
            return Ok(());
        }
        let key = canonical_key(&m);
        if out.iter().any(|c| c.key == key) {
            return Ok(());
        }
        let coeffs = IntMatrix::from_columns(&key);
        let basis = rb.transformed(&coeffs)?;
        let copies = copy_counts_with(&basis, v)?;
        if sufficient(&copies) {
            out.push(CellBasisCandidate { coeffs, basis, key, copies });
        }
        Ok(())
    };
    let k = reps.len();
    for a in 0..k {
        for b in a + 1..k {
            if n == 2 {
                visit(vec![reps[a].clone(), reps[b].clone()])?;
                continue;
            }
            for c in b + 1..k {
                visit(vec![reps[a].clone(), reps[b].clone(), reps[c].clone()])?;
            }
        }
    }
    out.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(out)
}

/// All cells spanned by `n` relevant vectors that are primitive and whose
/// copy block is `3^n`, one per canonical key, sorted by key.
pub fn enumerate_ps(lattice: &Basis) -> Result<Vec<CellBasisCandidate>> {
    let rel = relevant_vectors(lattice)?;
    let v = cell_from_relevant(&rel)?;
    enumerate_from(&rel, &v)
}

#[derive(Debug, Clone)]
pub struct CellReport {
    pub sufficient: bool,
    pub copies: CopyCounts,
    /// The cell's key matches an enumerated candidate.
    pub ps_member: bool,
    pub is_reduced: bool,
    /// Cell vectors in reduced-basis coefficients.
    pub coeffs: IntMatrix,
    pub key: CanonicalKey,
}

pub fn check_cell(cell: &Basis, lattice: &Basis) -> Result<CellReport> {
    let u = primitive_coefficients(cell, lattice)?;
    let rel = relevant_vectors(lattice)?;
    let v = cell_from_relevant(&rel)?;
    let coeffs = rel.reduced().inverse_transform().mul(&u);
    let key = canonical_key(&coeffs);
    let copies = copy_counts_with(cell, &v)?;
    let ps_member = enumerate_from(&rel, &v)?.iter().any(|c| c.key == key);
    Ok(CellReport { sufficient: sufficient(&copies), copies, ps_member, is_reduced: is_reduced(cell), coeffs, key })
}
