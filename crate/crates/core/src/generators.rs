//! Small complexes used as fixtures, tests and benchmark inputs.

use crate::complex::{CellKey, CwCellSpec, CwDescription};

/// A cycle of `k >= 3` edges on vertices `0..k`.
pub fn circle(k: usize) -> Vec<Vec<i64>> {
    assert!(k >= 3, "a simplicial circle needs at least 3 vertices");
    let k = k as i64;
    (0..k).map(|i| vec![i, (i + 1) % k]).collect()
}

/// The closed `d`-simplex on vertices `0..=d`.
pub fn closed_simplex(d: usize) -> Vec<Vec<i64>> {
    vec![(0..=d as i64).collect()]
}

/// The boundary of the `(d+1)`-simplex, a triangulated `d`-sphere.
pub fn sphere_boundary(d: usize) -> Vec<Vec<i64>> {
    let full: Vec<i64> = (0..=d as i64 + 1).collect();
    (0..full.len()).map(|skip| full.iter().copied().filter(|&v| v != skip as i64).collect()).collect()
}

/// Triangulated flat torus on an `a x b` vertex grid (`a, b >= 3`), with
/// `6ab` cells and every vertex star of 13 cells.
pub fn grid_torus(a: usize, b: usize) -> Vec<Vec<i64>> {
    assert!(a >= 3 && b >= 3, "grid torus needs at least 3x3 vertices");
    let v = |i: usize, j: usize| ((i % a) * b + (j % b)) as i64;
    let mut out = Vec::with_capacity(2 * a * b);
    for i in 0..a {
        for j in 0..b {
            out.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            out.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    out
}

/// Vertex ids used by [`pinched_torus_with_disk`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PinchedTorusVertices {
    pub pinch: i64,
    pub disk_apex: i64,
    /// Vertex `k` of ring `r` is `ring_base + r * ring_size + k`.
    pub ring_base: i64,
    pub ring_size: usize,
    pub rings: usize,
}

impl PinchedTorusVertices {
    pub fn ring(&self, r: usize, k: usize) -> i64 {
        self.ring_base + (r * self.ring_size + k) as i64
    }

    /// The closed equatorial cycle through the pinch point, in order.
    pub fn equator(&self) -> Vec<i64> {
        let mut cycle = vec![self.pinch];
        cycle.extend((0..self.rings).map(|r| self.ring(r, 0)));
        cycle
    }
}

/// A torus with one meridian collapsed to a point, plus a disk spanning an
/// equatorial circle through the pinch point.
///
/// The torus body is a cylinder of `rings` rings of `ring_size` vertices
/// whose two end rings are coned to the same pinch vertex. The equator runs
/// from the pinch along vertex 0 of every ring and back; the disk is the cone
/// over it from an extra apex.
pub fn pinched_torus_with_disk(ring_size: usize, rings: usize) -> (Vec<Vec<i64>>, PinchedTorusVertices) {
    assert!(ring_size >= 3 && rings >= 2, "need ring_size >= 3 and rings >= 2");
    let vx = PinchedTorusVertices { pinch: 0, disk_apex: 1, ring_base: 2, ring_size, rings };
    let mut out = Vec::new();
    for r in 0..rings - 1 {
        for k in 0..ring_size {
            let k1 = (k + 1) % ring_size;
            out.push(vec![vx.ring(r, k), vx.ring(r + 1, k), vx.ring(r + 1, k1)]);
            out.push(vec![vx.ring(r, k), vx.ring(r, k1), vx.ring(r + 1, k1)]);
        }
    }
    for r in [0, rings - 1] {
        for k in 0..ring_size {
            out.push(vec![vx.pinch, vx.ring(r, k), vx.ring(r, (k + 1) % ring_size)]);
        }
    }
    let eq = vx.equator();
    for i in 0..eq.len() {
        out.push(vec![vx.disk_apex, eq[i], eq[(i + 1) % eq.len()]]);
    }
    (out, vx)
}

/// Four triangles subdividing a parallelogram through its centre, plus one
/// extra triangle attached along a half-diagonal.
///
/// Corners are `0..4`, the centre is `4` and the apex of the extra triangle
/// is `5`; the shared half-diagonal is the edge `0,4`.
pub fn fin_on_parallelogram() -> Vec<Vec<i64>> {
    vec![vec![4, 0, 1], vec![4, 1, 2], vec![4, 2, 3], vec![4, 3, 0], vec![4, 0, 5]]
}

fn name(s: &str) -> CellKey {
    CellKey::Name(s.to_string())
}

fn cell(id: &str, dim: u32, boundary: &[(&str, i64)]) -> CwCellSpec {
    CwCellSpec { id: name(id), dim, boundary: boundary.iter().map(|&(f, d)| (name(f), d)).collect() }
}

/// The closed cone over a wedge of `k >= 1` circles as a regular CW complex.
///
/// The wedge point is `p` and the cone point is `q`. Circle `i` has a second
/// vertex `z{i}` joined to `p` by edges `w{2i-1}` and `w{2i}`. The cone edges
/// are `e` (over `p`) and `y{i}` (over `z{i}`), and each `w{a}` spans a
/// 2-cell `x{a}` bounded by `e`, `w{a}` and the matching `y{i}`.
pub fn cone_over_wedge(k: usize) -> CwDescription {
    assert!(k >= 1, "need at least one circle");
    let mut cells = vec![cell("p", 0, &[]), cell("q", 0, &[])];
    for i in 1..=k {
        cells.push(cell(&format!("z{i}"), 0, &[]));
    }
    for a in 1..=2 * k {
        let z = format!("z{}", a.div_ceil(2));
        cells.push(cell(&format!("w{a}"), 1, &[(z.as_str(), 1), ("p", -1)]));
    }
    for i in 1..=k {
        let z = format!("z{i}");
        cells.push(cell(&format!("y{i}"), 1, &[(z.as_str(), 1), ("q", -1)]));
    }
    cells.push(cell("e", 1, &[("p", 1), ("q", -1)]));
    for a in 1..=2 * k {
        let w = format!("w{a}");
        let y = format!("y{}", a.div_ceil(2));
        cells.push(cell(&format!("x{a}"), 2, &[("e", 1), (w.as_str(), 1), (y.as_str(), -1)]));
    }
    CwDescription { cells }
}

/// A simplicial cone over a wedge of two triangles: cone point `0`, wedge
/// point `1`, first circle `1,2,3`, second circle `1,4,5`.
pub fn simplicial_cone_over_wedge() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for circle in [[1, 2, 3], [1, 4, 5]] {
        for i in 0..3 {
            out.push(vec![0, circle[i], circle[(i + 1) % 3]]);
        }
    }
    out
}
