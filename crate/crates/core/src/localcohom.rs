//! Local cohomology stalks over open stars and difference complexes.
//!
//! The stalk `L(w)` over a live cell `w` has one basis element for every
//! live cell `z >= w`, placed in degree `dim z`, with codifferential given by
//! the incidence degrees. For a codimension-one relation `x >1 y` the open
//! star of `x` is an open subset of the star of `y`, so `L(x)` is a
//! subcomplex of `L(y)` and the inclusion is a quasi-isomorphism exactly
//! when the quotient, supported on `st(y) - st(x)`, is acyclic.

use crate::complex::{upset_graded, CellId, CwComplex, LiveMask};
use crate::error::{Error, Result};
use crate::field::{cohomology_dims, PrimeField, SparseMatrix};

/// A bounded cochain complex over GF(p) whose basis elements are cells.
///
/// Degrees are absolute: `basis(k)` holds cells of dimension `k`, sorted by
/// id, and `codifferential(k)` maps degree `k` to degree `k + 1` (rows are
/// indexed by `basis(k + 1)`, columns by `basis(k)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    field: PrimeField,
    bases: Vec<Vec<CellId>>,
    codiff: Vec<SparseMatrix>,
}

impl CochainComplex {
    pub fn new(field: PrimeField, bases: Vec<Vec<CellId>>, codiff: Vec<SparseMatrix>) -> Result<Self> {
        if codiff.len() != bases.len().saturating_sub(1) {
            return Err(Error::Invariant(format!(
                "{} bases need {} codifferentials, got {}",
                bases.len(),
                bases.len().saturating_sub(1),
                codiff.len()
            )));
        }
        for (k, m) in codiff.iter().enumerate() {
            if m.cols() != bases[k].len() || m.rows() != bases[k + 1].len() || m.field() != field {
                return Err(Error::Invariant(format!("codifferential {k} has the wrong shape or field")));
            }
        }
        Ok(CochainComplex { field, bases, codiff })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Number of degrees stored, i.e. one more than the top degree.
    pub fn degrees(&self) -> usize {
        self.bases.len()
    }

    /// Basis of degree `k`; empty beyond the stored range.
    pub fn basis(&self, k: usize) -> &[CellId] {
        self.bases.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn module_rank(&self, k: usize) -> usize {
        self.basis(k).len()
    }

    /// Module ranks in every stored degree.
    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn codifferential(&self, k: usize) -> &SparseMatrix {
        &self.codiff[k]
    }

    pub fn cells(&self) -> impl Iterator<Item = CellId> + '_ {
        self.bases.iter().flatten().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.bases.iter().all(Vec::is_empty)
    }
}

/// The complex spanned by `graded` (entry `k` holds cells of dimension `k`),
/// with codifferential entries `<x, z>` for `x` in degree `k + 1` and `z` in
/// degree `k`. Incidences leaving the cell set are dropped.
pub fn restricted_complex(complex: &CwComplex, mut graded: Vec<Vec<CellId>>, field: PrimeField) -> CochainComplex {
    for layer in &mut graded {
        layer.sort_unstable();
        layer.dedup();
    }
    while graded.last().is_some_and(Vec::is_empty) {
        graded.pop();
    }
    let codiff = (0..graded.len().saturating_sub(1))
        .map(|k| {
            let (cols, rows) = (&graded[k], &graded[k + 1]);
            let trips = rows.iter().enumerate().flat_map(|(r, &x)| {
                complex
                    .boundary(x)
                    .iter()
                    .filter_map(move |inc| cols.binary_search(&inc.cell).ok().map(|c| (r, c, inc.degree as i64)))
            });
            SparseMatrix::from_triplets(field, rows.len(), cols.len(), trips).expect("indices are in range")
        })
        .collect();
    CochainComplex { field, bases: graded, codiff }
}

fn absolute(complex: &CwComplex, base: CellId, layers: Vec<Vec<CellId>>) -> Vec<Vec<CellId>> {
    if layers.is_empty() {
        return layers;
    }
    let mut graded = vec![Vec::new(); complex.dim(base)];
    graded.extend(layers);
    graded
}

/// The stalk `L(w)` of local cohomology over the live subcomplex: alive cells
/// `z >= w` graded by dimension.
pub fn star_complex(complex: &CwComplex, mask: &LiveMask, w: CellId, field: PrimeField) -> Result<CochainComplex> {
    let layers = upset_graded(complex, mask, None, w)?;
    Ok(restricted_complex(complex, absolute(complex, w, layers), field))
}

/// The quotient `L(y) / L(x)` for a codimension-one relation `x >1 y`,
/// supported on the alive cells `>= y` that are not `>= x`.
pub fn diff_complex(
    complex: &CwComplex,
    mask: &LiveMask,
    x: CellId,
    y: CellId,
    field: PrimeField,
) -> Result<CochainComplex> {
    if x.index() >= complex.len() {
        return Err(Error::UnknownCell(x));
    }
    if y.index() >= complex.len() {
        return Err(Error::UnknownCell(y));
    }
    if complex.relation_id(x, y).is_none() {
        return Err(Error::NotCodimOne { x, y });
    }
    let layers = upset_graded(complex, mask, Some(x), y)?;
    Ok(restricted_complex(complex, absolute(complex, y, layers), field))
}

/// Cohomology dimensions of the stalk over `w`.
pub fn star_cohomology(complex: &CwComplex, mask: &LiveMask, w: CellId, field: PrimeField) -> Result<Vec<usize>> {
    cohomology_dims(&star_complex(complex, mask, w, field)?)
}

/// Whether the inclusion `L(x) -> L(y)` is a quasi-isomorphism, decided by
/// acyclicity of the difference complex.
pub fn is_quasi_iso(complex: &CwComplex, mask: &LiveMask, x: CellId, y: CellId, field: PrimeField) -> Result<bool> {
    let dims = cohomology_dims(&diff_complex(complex, mask, x, y, field)?)?;
    Ok(dims.iter().all(|&h| h == 0))
}

/// True iff `dims` is 1 at index `k` and 0 everywhere else.
pub fn is_delta(dims: &[usize], k: usize) -> bool {
    dims.iter().enumerate().all(|(i, &h)| h == usize::from(i == k)) && dims.len() > k
}
