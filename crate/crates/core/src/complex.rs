//! Finite regular CW complexes stored as face posets with signed
//! codimension-one incidences.
//!
//! Only codimension-one incidences are stored. The full face relation
//! `x >= y` is recovered by walking coboundaries upwards, which is all the
//! stratification loop ever needs (see [`upset`]).
//!
//! Cells are removed from the working subcomplex by masking them in a
//! [`LiveMask`], never by deleting them, so [`CellId`]s are stable for the
//! whole run.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{cohomology_dims, PrimeField};
use crate::localcohom::restricted_complex;

/// Dense index of a cell, `0..m` for a complex with `m` cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellId(pub u32);

impl CellId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for CellId {
    fn from(i: usize) -> Self {
        CellId(i as u32)
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// One signed codimension-one incidence `<x, y>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Incidence {
    pub cell: CellId,
    pub degree: i8,
}

/// Index of a codimension-one face relation `x >1 y`; one per boundary entry.
pub type RelationId = usize;

/// An immutable regular CW complex.
///
/// Boundary and coboundary lists are stored in CSR form and are exact
/// transposes of one another when built through [`build_from_simplices`] or
/// [`build_from_cw`]. Within each list entries are sorted by cell id.
#[derive(Clone, Debug)]
pub struct CwComplex {
    dims: Vec<u32>,
    labels: Vec<String>,
    bnd_start: Vec<usize>,
    bnd: Vec<Incidence>,
    // owner of every boundary entry, i.e. the coface `x` of relation `x >1 y`
    rel_coface: Vec<CellId>,
    cob_start: Vec<usize>,
    cob: Vec<Incidence>,
    // relation id of each coboundary entry, u32::MAX when it has no partner
    cob_rel: Vec<u32>,
    by_dim: Vec<Vec<CellId>>,
}

impl CwComplex {
    fn assemble(dims: Vec<u32>, labels: Vec<String>, mut boundary: Vec<Vec<Incidence>>) -> Self {
        for list in &mut boundary {
            list.sort();
        }
        let mut coboundary: Vec<Vec<Incidence>> = vec![Vec::new(); dims.len()];
        for (x, list) in boundary.iter().enumerate() {
            for inc in list {
                coboundary[inc.cell.index()].push(Incidence { cell: CellId::from(x), degree: inc.degree });
            }
        }
        Self::assemble_raw(dims, labels, boundary, coboundary)
    }

    fn assemble_raw(
        dims: Vec<u32>,
        labels: Vec<String>,
        boundary: Vec<Vec<Incidence>>,
        mut coboundary: Vec<Vec<Incidence>>,
    ) -> Self {
        let m = dims.len();
        for list in &mut coboundary {
            list.sort();
        }
        let mut bnd_start = Vec::with_capacity(m + 1);
        let mut bnd = Vec::new();
        let mut rel_coface = Vec::new();
        bnd_start.push(0);
        for (x, list) in boundary.iter().enumerate() {
            bnd.extend_from_slice(list);
            rel_coface.extend(std::iter::repeat_n(CellId::from(x), list.len()));
            bnd_start.push(bnd.len());
        }

        // Pair every coboundary entry (y <- x) with the boundary entry (x -> y).
        // Repeated pairs are matched in order of appearance.
        let mut cob_start = Vec::with_capacity(m + 1);
        let mut cob = Vec::new();
        let mut cob_rel = Vec::new();
        let mut used = vec![false; bnd.len()];
        cob_start.push(0);
        for (y, list) in coboundary.iter().enumerate() {
            for inc in list {
                let x = inc.cell.index();
                let rel = (bnd_start[x]..bnd_start[x + 1])
                    .find(|&r| !used[r] && bnd[r].cell.index() == y && bnd[r].degree == inc.degree);
                match rel {
                    Some(r) => {
                        used[r] = true;
                        cob_rel.push(r as u32);
                    }
                    None => cob_rel.push(u32::MAX),
                }
                cob.push(*inc);
            }
            cob_start.push(cob.len());
        }

        let top = dims.iter().copied().max().map_or(0, |d| d as usize + 1);
        let mut by_dim = vec![Vec::new(); top];
        for (i, &d) in dims.iter().enumerate() {
            by_dim[d as usize].push(CellId::from(i));
        }

        CwComplex { dims, labels, bnd_start, bnd, rel_coface, cob_start, cob, cob_rel, by_dim }
    }

    /// Builds a complex from explicit boundary and coboundary lists without
    /// checking that they agree. Intended for exercising [`validate`] on
    /// broken data; every other constructor derives the coboundary itself.
    pub fn from_raw_parts(
        dims: Vec<u32>,
        boundary: Vec<Vec<(CellId, i8)>>,
        coboundary: Vec<Vec<(CellId, i8)>>,
    ) -> Result<Self> {
        let m = dims.len();
        if boundary.len() != m || coboundary.len() != m {
            return Err(Error::Malformed("boundary/coboundary length differs from cell count".into()));
        }
        let conv = |lists: Vec<Vec<(CellId, i8)>>| -> Result<Vec<Vec<Incidence>>> {
            lists
                .into_iter()
                .map(|l| {
                    l.into_iter()
                        .map(|(cell, degree)| {
                            if cell.index() >= m {
                                Err(Error::UnknownCell(cell))
                            } else {
                                Ok(Incidence { cell, degree })
                            }
                        })
                        .collect()
                })
                .collect()
        };
        let boundary = conv(boundary)?;
        let coboundary = conv(coboundary)?;
        let labels = (0..m).map(|i| i.to_string()).collect();
        let mut boundary = boundary;
        for list in &mut boundary {
            list.sort();
        }
        Ok(Self::assemble_raw(dims, labels, boundary, coboundary))
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Maximum cell dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn dim(&self, c: CellId) -> usize {
        self.dims[c.index()] as usize
    }

    pub fn label(&self, c: CellId) -> &str {
        &self.labels[c.index()]
    }

    pub fn cell_by_label(&self, label: &str) -> Option<CellId> {
        self.labels.iter().position(|l| l == label).map(CellId::from)
    }

    pub fn cells(&self) -> impl ExactSizeIterator<Item = CellId> + '_ {
        (0..self.len()).map(CellId::from)
    }

    /// Cells of dimension `k`, in ascending id order.
    pub fn cells_of_dim(&self, k: usize) -> &[CellId] {
        self.by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn boundary(&self, x: CellId) -> &[Incidence] {
        &self.bnd[self.bnd_start[x.index()]..self.bnd_start[x.index() + 1]]
    }

    pub fn coboundary(&self, y: CellId) -> &[Incidence] {
        &self.cob[self.cob_start[y.index()]..self.cob_start[y.index() + 1]]
    }

    /// Codimension-one cofaces of `y` together with the id of each relation.
    pub fn coface_relations(&self, y: CellId) -> impl Iterator<Item = (Incidence, RelationId)> + '_ {
        let range = self.cob_start[y.index()]..self.cob_start[y.index() + 1];
        self.cob[range.clone()].iter().copied().zip(self.cob_rel[range].iter().map(|&r| r as usize))
    }

    /// Number of codimension-one face relations.
    pub fn relation_count(&self) -> usize {
        self.bnd.len()
    }

    /// The pair `(x, y)` with `x >1 y` for relation `r`.
    pub fn relation(&self, r: RelationId) -> (CellId, CellId) {
        (self.rel_coface[r], self.bnd[r].cell)
    }

    /// Relation id of `x >1 y`, if `y` is a codimension-one face of `x`.
    pub fn relation_id(&self, x: CellId, y: CellId) -> Option<RelationId> {
        let start = self.bnd_start[x.index()];
        self.boundary(x).iter().position(|inc| inc.cell == y).map(|i| start + i)
    }

    /// Net incidence degree `<x, y>` (sum over repeated entries).
    pub fn degree(&self, x: CellId, y: CellId) -> i64 {
        self.boundary(x).iter().filter(|inc| inc.cell == y).map(|inc| inc.degree as i64).sum()
    }

    /// Largest open star, measured in cells. Stars of vertices are the largest.
    pub fn star_size(&self) -> usize {
        let mask = LiveMask::full(self.len());
        self.cells_of_dim(0)
            .iter()
            .map(|&v| upset_graded(self, &mask, None, v).map_or(0, |g| g.iter().map(Vec::len).sum()))
            .max()
            .unwrap_or(0)
    }

    /// Serializable description of this complex, usable with [`build_from_cw`].
    pub fn to_description(&self) -> CwDescription {
        CwDescription {
            cells: self
                .cells()
                .map(|c| CwCellSpec {
                    id: CellKey::Name(self.label(c).to_string()),
                    dim: self.dim(c) as u32,
                    boundary: self
                        .boundary(c)
                        .iter()
                        .map(|inc| (CellKey::Name(self.label(inc.cell).to_string()), inc.degree as i64))
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Membership predicate for the current subcomplex `Y_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiveMask {
    alive: Vec<bool>,
    count: usize,
}

impl LiveMask {
    pub fn full(m: usize) -> Self {
        LiveMask { alive: vec![true; m], count: m }
    }

    pub fn from_fn(m: usize, f: impl FnMut(usize) -> bool) -> Self {
        let alive: Vec<bool> = (0..m).map(f).collect();
        let count = alive.iter().filter(|&&a| a).count();
        LiveMask { alive, count }
    }

    #[inline]
    pub fn is_alive(&self, c: CellId) -> bool {
        self.alive[c.index()]
    }

    pub fn kill(&mut self, c: CellId) {
        if std::mem::replace(&mut self.alive[c.index()], false) {
            self.count -= 1;
        }
    }

    pub fn alive_count(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn alive_cells(&self) -> impl Iterator<Item = CellId> + '_ {
        self.alive.iter().enumerate().filter(|(_, &a)| a).map(|(i, _)| CellId::from(i))
    }

    /// True when every face of an alive cell is alive.
    pub fn is_face_closed(&self, complex: &CwComplex) -> bool {
        self.alive_cells().all(|x| complex.boundary(x).iter().all(|inc| self.is_alive(inc.cell)))
    }
}

// ---------------------------------------------------------------------------
// Construction

/// Identifier of a cell in a user-supplied CW description.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellKey {
    Int(i64),
    Name(String),
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellKey::Int(i) => write!(f, "{i}"),
            CellKey::Name(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CwCellSpec {
    pub id: CellKey,
    pub dim: u32,
    #[serde(default)]
    pub boundary: Vec<(CellKey, i64)>,
}

/// Explicit cell list with signed boundaries; the JSON input format.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CwDescription {
    pub cells: Vec<CwCellSpec>,
}

const MAX_SIMPLEX_VERTICES: usize = 16;

/// Builds the simplicial complex of all faces of the given simplices.
///
/// Vertices are sorted within each simplex and the face omitting the `i`-th
/// vertex gets incidence degree `(-1)^i`. Cells are numbered by dimension,
/// then lexicographically by vertex list; labels are the comma-joined
/// vertex ids.
pub fn build_from_simplices(maximal: &[Vec<i64>]) -> Result<CwComplex> {
    let mut faces: HashMap<Vec<i64>, u32> = HashMap::new();
    for (i, simplex) in maximal.iter().enumerate() {
        if simplex.is_empty() {
            return Err(Error::Malformed(format!("simplex {i} is empty")));
        }
        if simplex.len() > MAX_SIMPLEX_VERTICES {
            return Err(Error::Malformed(format!(
                "simplex {i} has {} vertices (limit {MAX_SIMPLEX_VERTICES})",
                simplex.len()
            )));
        }
        let mut s = simplex.clone();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Malformed(format!("simplex {i} repeats a vertex: {simplex:?}")));
        }
        if faces.contains_key(&s) {
            continue;
        }
        let k = s.len();
        for bits in 1u32..(1u32 << k) {
            let face: Vec<i64> = (0..k).filter(|j| bits >> j & 1 == 1).map(|j| s[j]).collect();
            faces.entry(face).or_insert(0);
        }
    }

    let mut ordered: Vec<Vec<i64>> = faces.keys().cloned().collect();
    ordered.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    for (i, f) in ordered.iter().enumerate() {
        *faces.get_mut(f).unwrap() = i as u32;
    }

    let mut dims = Vec::with_capacity(ordered.len());
    let mut labels = Vec::with_capacity(ordered.len());
    let mut boundary = Vec::with_capacity(ordered.len());
    let mut scratch = Vec::new();
    for f in &ordered {
        dims.push(f.len() as u32 - 1);
        labels.push(f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
        let mut b = Vec::new();
        if f.len() > 1 {
            for i in 0..f.len() {
                scratch.clear();
                scratch.extend(f.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
                let degree = if i % 2 == 0 { 1 } else { -1 };
                b.push(Incidence { cell: CellId(faces[&scratch]), degree });
            }
        }
        boundary.push(b);
    }
    Ok(CwComplex::assemble(dims, labels, boundary))
}

/// Builds a complex from an explicit cell list. Cells keep their input order.
///
/// Rejects duplicate ids, dangling face references, degrees outside
/// `{+1, -1}` and boundary entries that do not drop exactly one dimension.
/// A face listed twice is kept as two entries; [`validate`] with the deep
/// flag reports the resulting non-regular cell.
pub fn build_from_cw(desc: &CwDescription) -> Result<CwComplex> {
    let mut index: HashMap<&CellKey, u32> = HashMap::with_capacity(desc.cells.len());
    for (i, cell) in desc.cells.iter().enumerate() {
        if index.insert(&cell.id, i as u32).is_some() {
            return Err(Error::Malformed(format!("duplicate cell id {}", cell.id)));
        }
    }
    let mut dims = Vec::with_capacity(desc.cells.len());
    let mut labels = Vec::with_capacity(desc.cells.len());
    let mut boundary = Vec::with_capacity(desc.cells.len());
    for cell in &desc.cells {
        let mut b = Vec::with_capacity(cell.boundary.len());
        for (face, deg) in &cell.boundary {
            let &fi = index
                .get(face)
                .ok_or_else(|| Error::Malformed(format!("cell {} references unknown face {face}", cell.id)))?;
            if *deg != 1 && *deg != -1 {
                return Err(Error::Malformed(format!(
                    "cell {} has degree {deg} on face {face}; expected 1 or -1",
                    cell.id
                )));
            }
            let face_dim = desc.cells[fi as usize].dim;
            if face_dim + 1 != cell.dim {
                return Err(Error::Malformed(format!(
                    "cell {} (dim {}) lists face {face} of dim {face_dim}",
                    cell.id, cell.dim
                )));
            }
            b.push(Incidence { cell: CellId(fi), degree: *deg as i8 });
        }
        dims.push(cell.dim);
        labels.push(cell.id.to_string());
        boundary.push(b);
    }
    Ok(CwComplex::assemble(dims, labels, boundary))
}

// ---------------------------------------------------------------------------
// Validation

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum ValidationIssue {
    DegreeOutOfRange { cell: CellId, face: CellId, degree: i8 },
    DimensionDrop { cell: CellId, face: CellId },
    TransposeMismatch { cell: CellId, face: CellId },
    BoundarySquaredNonzero { cell: CellId, face: CellId, coefficient: i64 },
    /// The proper faces of `cell` do not have the reduced cohomology of a sphere
    /// of dimension `dim cell - 1`.
    NotSphereBoundary { cell: CellId, reduced_cohomology: Vec<i64> },
}

impl ValidationIssue {
    pub fn cell(&self) -> CellId {
        match *self {
            ValidationIssue::DegreeOutOfRange { cell, .. }
            | ValidationIssue::DimensionDrop { cell, .. }
            | ValidationIssue::TransposeMismatch { cell, .. }
            | ValidationIssue::BoundarySquaredNonzero { cell, .. }
            | ValidationIssue::NotSphereBoundary { cell, .. } => cell,
        }
    }
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::DegreeOutOfRange { cell, face, degree } => {
                write!(f, "cell {cell}: degree {degree} on face {face} is not +1 or -1")
            }
            ValidationIssue::DimensionDrop { cell, face } => {
                write!(f, "cell {cell}: face {face} is not one dimension lower")
            }
            ValidationIssue::TransposeMismatch { cell, face } => {
                write!(f, "cell {cell}: incidence with {face} missing from one of boundary/coboundary")
            }
            ValidationIssue::BoundarySquaredNonzero { cell, face, coefficient } => {
                write!(f, "cell {cell}: boundary of boundary has coefficient {coefficient} on {face}")
            }
            ValidationIssue::NotSphereBoundary { cell, reduced_cohomology } => {
                write!(f, "cell {cell}: proper faces have reduced cohomology {reduced_cohomology:?}, not a sphere")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }

    /// Offending cells, sorted and deduplicated.
    pub fn cells(&self) -> Vec<CellId> {
        let mut v: Vec<CellId> = self.issues.iter().map(ValidationIssue::cell).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for issue in &self.issues {
            writeln!(f, "  {issue}")?;
        }
        Ok(())
    }
}

/// Checks the combinatorial regularity conditions.
///
/// Shallow checks (always): degrees in `{+1, -1}`, one-dimension drops,
/// boundary/coboundary transposition and integral `∂∘∂ = 0`. With `deep`,
/// additionally requires the proper faces of every cell of dimension
/// `d >= 1` to have the reduced GF(p) cohomology of the `(d-1)`-sphere. This
/// is a necessary condition for regularity, not a certificate.
pub fn validate(complex: &CwComplex, deep: bool, field: PrimeField) -> ValidationReport {
    let mut issues = Vec::new();

    for x in complex.cells() {
        for inc in complex.boundary(x) {
            if inc.degree != 1 && inc.degree != -1 {
                issues.push(ValidationIssue::DegreeOutOfRange { cell: x, face: inc.cell, degree: inc.degree });
            }
            if complex.dim(inc.cell) + 1 != complex.dim(x) {
                issues.push(ValidationIssue::DimensionDrop { cell: x, face: inc.cell });
            }
        }
    }

    let mut from_bnd: Vec<(CellId, CellId, i8)> = complex
        .cells()
        .flat_map(|x| complex.boundary(x).iter().map(move |inc| (x, inc.cell, inc.degree)))
        .collect();
    let mut from_cob: Vec<(CellId, CellId, i8)> = complex
        .cells()
        .flat_map(|y| complex.coboundary(y).iter().map(move |inc| (inc.cell, y, inc.degree)))
        .collect();
    from_bnd.sort_unstable();
    from_cob.sort_unstable();
    if from_bnd != from_cob {
        let (mut i, mut j) = (0, 0);
        while i < from_bnd.len() || j < from_cob.len() {
            match (from_bnd.get(i), from_cob.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    issues.push(ValidationIssue::TransposeMismatch { cell: a.0, face: a.1 });
                    i += 1;
                }
                (Some(a), None) => {
                    issues.push(ValidationIssue::TransposeMismatch { cell: a.0, face: a.1 });
                    i += 1;
                }
                (_, Some(b)) => {
                    issues.push(ValidationIssue::TransposeMismatch { cell: b.0, face: b.1 });
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
    }

    let mut acc: Vec<(CellId, i64)> = Vec::new();
    for x in complex.cells() {
        acc.clear();
        for a in complex.boundary(x) {
            for b in complex.boundary(a.cell) {
                acc.push((b.cell, a.degree as i64 * b.degree as i64));
            }
        }
        acc.sort_unstable_by_key(|&(c, _)| c);
        let mut k = 0;
        while k < acc.len() {
            let face = acc[k].0;
            let mut coefficient = 0;
            while k < acc.len() && acc[k].0 == face {
                coefficient += acc[k].1;
                k += 1;
            }
            if coefficient != 0 {
                issues.push(ValidationIssue::BoundarySquaredNonzero { cell: x, face, coefficient });
            }
        }
    }

    if deep && issues.is_empty() {
        for x in complex.cells() {
            let d = complex.dim(x);
            if d == 0 {
                continue;
            }
            let reduced = reduced_boundary_cohomology(complex, x, field);
            let sphere = reduced.iter().enumerate().all(|(k, &h)| h == i64::from(k == d));
            if !sphere {
                issues.push(ValidationIssue::NotSphereBoundary { cell: x, reduced_cohomology: reduced });
            }
        }
    }

    ValidationReport { issues }
}

/// Reduced cohomology of the closed subcomplex of proper faces of `x`,
/// indexed from degree -1 (so entry `k` is degree `k - 1`).
fn reduced_boundary_cohomology(complex: &CwComplex, x: CellId, field: PrimeField) -> Vec<i64> {
    let d = complex.dim(x);
    let mut graded: Vec<Vec<CellId>> = vec![Vec::new(); d];
    let mut frontier: Vec<CellId> = complex.boundary(x).iter().map(|inc| inc.cell).collect();
    frontier.sort_unstable();
    frontier.dedup();
    for k in (0..d).rev() {
        graded[k] = frontier.clone();
        let mut next: Vec<CellId> =
            frontier.iter().flat_map(|&c| complex.boundary(c).iter().map(|inc| inc.cell)).collect();
        next.sort_unstable();
        next.dedup();
        frontier = next;
    }
    let cx = restricted_complex(complex, graded, field);
    let dims = cohomology_dims(&cx).expect("closed subcomplexes always square to zero");
    let nonempty = !cx.basis(0).is_empty();
    let mut reduced = vec![0i64; d + 1];
    // the empty space is the (-1)-sphere
    reduced[0] = i64::from(!nonempty);
    for (k, &h) in dims.iter().enumerate() {
        reduced[k + 1] = h as i64 - i64::from(k == 0 && nonempty);
    }
    reduced
}

// ---------------------------------------------------------------------------
// Traversal

/// Alive cells `w >= v` with `w` not `>= u`, grouped by dimension.
///
/// Entry `k` of the result holds cells of dimension `dim v + k`, sorted by
/// id. The walk only follows codimension-one cofaces; every alive cell above
/// `v` is reached because intermediate cells are faces of alive cells and the
/// mask is face-closed. When `u` is given its own up-set is computed first
/// and used as the pruning set.
pub fn upset_graded(
    complex: &CwComplex,
    mask: &LiveMask,
    u: Option<CellId>,
    v: CellId,
) -> Result<Vec<Vec<CellId>>> {
    for c in u.iter().chain(std::iter::once(&v)) {
        if c.index() >= complex.len() {
            return Err(Error::UnknownCell(*c));
        }
        if !mask.is_alive(*c) {
            return Err(Error::NotAlive(*c));
        }
    }
    let pruned = u.map(|u| (complex.dim(u), walk_up(complex, mask, u, |_, _| false)));
    let dv = complex.dim(v);
    let is_pruned = |c: CellId, d: usize| -> bool {
        match &pruned {
            Some((du, layers)) if d >= *du => {
                layers.get(d - du).is_some_and(|layer| layer.binary_search(&c).is_ok())
            }
            _ => false,
        }
    };
    if is_pruned(v, dv) {
        return Ok(Vec::new());
    }
    Ok(walk_up(complex, mask, v, is_pruned))
}

fn walk_up(
    complex: &CwComplex,
    mask: &LiveMask,
    v: CellId,
    skip: impl Fn(CellId, usize) -> bool,
) -> Vec<Vec<CellId>> {
    let mut layers = vec![vec![v]];
    let mut d = complex.dim(v);
    loop {
        d += 1;
        let last = layers.last().unwrap();
        let mut next: Vec<CellId> = last
            .iter()
            .flat_map(|&z| complex.coboundary(z).iter().map(|inc| inc.cell))
            .filter(|&x| mask.is_alive(x) && !skip(x, d))
            .collect();
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        next.dedup();
        layers.push(next);
    }
    layers
}

/// The alive cells `w >= v` that are not `>= u`, in ascending id order.
/// With `u = None` this is the open star of `v` in the live subcomplex.
pub fn upset(complex: &CwComplex, mask: &LiveMask, u: Option<CellId>, v: CellId) -> Result<Vec<CellId>> {
    let mut out: Vec<CellId> = upset_graded(complex, mask, u, v)?.into_iter().flatten().collect();
    out.sort_unstable();
    Ok(out)
}
