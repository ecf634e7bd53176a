//! Test-only oracles: dense GF(p) linear algebra, a literal evaluation of
//! the `Y_d / E_d / W_d` tower over all face pairs, and random complexes.
#![allow(dead_code)]

use std::collections::BTreeSet;

use cellstrat::generators;
use cellstrat::io::{parse, InputFormat};
use cellstrat::{build_from_cw, build_from_simplices, CellId, CwComplex};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const FIXTURES: &[(&str, InputFormat)] = &[
    ("circle.txt", InputFormat::Simplices),
    ("circle_cw.json", InputFormat::Cw),
    ("closed_triangle.txt", InputFormat::Simplices),
    ("tetrahedron_boundary.txt", InputFormat::Simplices),
    ("torus_4x4.txt", InputFormat::Simplices),
    ("fin_on_parallelogram.txt", InputFormat::Simplices),
    ("cone_wedge2.json", InputFormat::Cw),
    ("cone_wedge3.json", InputFormat::Cw),
    ("cone_wedge_simplicial.txt", InputFormat::Simplices),
    ("pinched_torus_disk.txt", InputFormat::Simplices),
    ("pinched_torus_disk.json", InputFormat::Cw),
];

pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn load_fixture(name: &str, format: InputFormat) -> CwComplex {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    parse(&text, format).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn all_fixtures() -> Vec<(String, CwComplex)> {
    FIXTURES.iter().map(|&(name, fmt)| (name.to_string(), load_fixture(name, fmt))).collect()
}

pub fn cell(cx: &CwComplex, label: &str) -> CellId {
    cx.cell_by_label(label).unwrap_or_else(|| panic!("no cell labelled {label}"))
}

// ---------------------------------------------------------------------------
// Dense GF(p)

pub struct Gf(pub u64);

impl Gf {
    pub fn red(&self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    pub fn inv(&self, a: u64) -> u64 {
        (1..self.0).find(|&b| a * b % self.0 == 1).expect("nonzero element")
    }

    /// Row echelon form in place; returns pivot columns.
    #[allow(clippy::needless_range_loop)]
    fn echelon(&self, m: &mut [Vec<u64>]) -> Vec<usize> {
        let p = self.0;
        let cols = m.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(k) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, k);
            let inv = self.inv(m[r][c]);
            for v in m[r].iter_mut() {
                *v = *v * inv % p;
            }
            for i in 0..m.len() {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..cols {
                        m[i][j] = (m[i][j] + p * p - f * m[r][j]) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, mut m: Vec<Vec<u64>>) -> usize {
        self.echelon(&mut m).len()
    }

    /// Basis of `{v : m v = 0}` for an `r x c` matrix.
    pub fn nullspace(&self, mut m: Vec<Vec<u64>>, c: usize) -> Vec<Vec<u64>> {
        let pivots = self.echelon(&mut m);
        let p = self.0;
        (0..c)
            .filter(|j| !pivots.contains(j))
            .map(|free| {
                let mut v = vec![0; c];
                v[free] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m[row][free]) % p;
                }
                v
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Literal tower

/// `above[x]` holds every cell `z >= x` (including `x`).
pub fn up_closure(cx: &CwComplex) -> Vec<BTreeSet<CellId>> {
    let mut above: Vec<BTreeSet<CellId>> = vec![BTreeSet::new(); cx.len()];
    let top = cx.dimension().unwrap_or(0);
    for d in (0..=top).rev() {
        for &x in cx.cells_of_dim(d) {
            let mut s = BTreeSet::from([x]);
            for inc in cx.coboundary(x) {
                s.extend(above[inc.cell.index()].iter().copied());
            }
            above[x.index()] = s;
        }
    }
    above
}

struct DenseStalk {
    bases: Vec<Vec<CellId>>,
    // codiff[k]: rows basis k+1, cols basis k
    codiff: Vec<Vec<Vec<u64>>>,
}

fn stalk(cx: &CwComplex, gf: &Gf, above: &[BTreeSet<CellId>], alive: &[bool], x: CellId, n: usize) -> DenseStalk {
    let mut bases = vec![Vec::new(); n + 2];
    for &z in &above[x.index()] {
        if alive[z.index()] {
            bases[cx.dim(z)].push(z);
        }
    }
    let codiff = (0..=n)
        .map(|k| {
            bases[k + 1]
                .iter()
                .map(|&w| bases[k].iter().map(|&z| gf.red(cx.degree(w, z))).collect())
                .collect()
        })
        .collect();
    DenseStalk { bases, codiff }
}

fn transpose(m: &[Vec<u64>], rows_out: usize) -> Vec<Vec<u64>> {
    (0..rows_out).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

/// Cohomology dimensions of a dense stalk.
fn dense_cohomology(gf: &Gf, s: &DenseStalk) -> Vec<usize> {
    let n = s.bases.len() - 1;
    let ranks: Vec<usize> = (0..n).map(|k| gf.rank(s.codiff[k].clone())).collect();
    (0..n)
        .map(|k| s.bases[k].len() - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect()
}

/// Whether the inclusion `L(x) -> L(y)` (for `x >= y`) induces isomorphisms
/// in every degree: equal dimensions and a full-rank induced map.
fn induced_iso(gf: &Gf, a: &DenseStalk, b: &DenseStalk) -> bool {
    let n = a.bases.len() - 1;
    for k in 0..n {
        let (na, nb) = (a.bases[k].len(), b.bases[k].len());
        let za = gf.nullspace(a.codiff[k].clone(), na);
        let bnd_a = if k > 0 { gf.rank(a.codiff[k - 1].clone()) } else { 0 };
        let zb = gf.nullspace(b.codiff[k].clone(), nb);
        // image of d_B^(k-1), one row per generator of degree k-1
        let im_b: Vec<Vec<u64>> = if k > 0 { transpose(&b.codiff[k - 1], b.bases[k - 1].len()) } else { Vec::new() };
        let im_b: Vec<Vec<u64>> = im_b.into_iter().map(|c| if c.is_empty() { vec![0; nb] } else { c }).collect();
        let bnd_b = gf.rank(im_b.clone());
        let (h_a, h_b) = (za.len() - bnd_a, zb.len() - bnd_b);
        let mut joint: Vec<Vec<u64>> = za
            .iter()
            .map(|v| {
                b.bases[k].iter().map(|z| a.bases[k].iter().position(|w| w == z).map_or(0, |i| v[i])).collect()
            })
            .collect();
        joint.extend(im_b);
        let map_rank = gf.rank(joint) - bnd_b;
        if !(h_a == h_b && h_b == map_rank) {
            return false;
        }
    }
    true
}

fn is_delta(h: &[usize], k: usize) -> bool {
    h.iter().enumerate().all(|(i, &v)| v == usize::from(i == k)) && h.len() > k
}

/// Outcome of the literal tower: codimension per cell and the live set
/// `Y_d` of every stage.
pub struct Literal {
    pub codims: Vec<u32>,
    pub live: Vec<Vec<bool>>,
}

/// Literal evaluation of the tower over all face pairs `x >= y` including
/// identities, recomputing every stalk from scratch at each stage.
pub fn literal_codims(cx: &CwComplex, p: u64) -> Literal {
    let gf = Gf(p);
    let m = cx.len();
    if m == 0 {
        return Literal { codims: Vec::new(), live: Vec::new() };
    }
    let n = cx.dimension().unwrap();
    let above = up_closure(cx);
    let pairs: Vec<(CellId, CellId)> =
        cx.cells().flat_map(|y| above[y.index()].iter().map(move |&x| (x, y))).collect();

    let mut in_e = vec![true; pairs.len()];
    let mut in_w = vec![false; pairs.len()];
    let ident: Vec<usize> = {
        let mut v = vec![usize::MAX; m];
        for (i, &(x, y)) in pairs.iter().enumerate() {
            if x == y {
                v[y.index()] = i;
            }
        }
        v
    };
    let mut alive = vec![true; m];
    let mut codims = vec![u32::MAX; m];
    let mut live = Vec::new();
    for d in 0..=n {
        if d > 0 {
            for y in cx.cells() {
                if alive[y.index()] && in_w[ident[y.index()]] {
                    alive[y.index()] = false;
                }
            }
        }
        live.push(alive.clone());
        let stalks: Vec<Option<DenseStalk>> =
            cx.cells().map(|c| alive[c.index()].then(|| stalk(cx, &gf, &above, &alive, c, n))).collect();
        let h: Vec<Option<Vec<usize>>> = stalks.iter().map(|s| s.as_ref().map(|s| dense_cohomology(&gf, s))).collect();

        for (i, &(x, y)) in pairs.iter().enumerate() {
            let here = alive[x.index()] && alive[y.index()];
            in_e[i] = in_e[i]
                && here
                && induced_iso(&gf, stalks[x.index()].as_ref().unwrap(), stalks[y.index()].as_ref().unwrap());
        }
        let mut new_w = in_w.clone();
        for (i, &(_, y)) in pairs.iter().enumerate() {
            if !in_e[i] || in_w[i] {
                continue;
            }
            let dim_ok = is_delta(h[y.index()].as_ref().unwrap(), n - d);
            let upward = pairs
                .iter()
                .enumerate()
                .filter(|(_, &(x2, y2))| y2 == y && alive[x2.index()])
                .all(|(j, _)| in_e[j]);
            if dim_ok && upward {
                new_w[i] = true;
            }
        }
        in_w = new_w;
        for y in cx.cells() {
            if alive[y.index()] && in_w[ident[y.index()]] {
                codims[y.index()] = d as u32;
            }
        }
    }
    assert!(codims.iter().all(|&c| c != u32::MAX), "literal tower left cells unassigned");
    Literal { codims, live }
}

/// Strata as components over all face pairs within a codimension class,
/// numbered by `(codim, smallest cell)`.
pub fn literal_strata(cx: &CwComplex, codims: &[u32]) -> Vec<usize> {
    let above = up_closure(cx);
    let m = cx.len();
    let mut adj = vec![Vec::new(); m];
    for y in cx.cells() {
        for &x in &above[y.index()] {
            if x != y && codims[x.index()] == codims[y.index()] {
                adj[x.index()].push(y.index());
                adj[y.index()].push(x.index());
            }
        }
    }
    let mut comp = vec![usize::MAX; m];
    let mut groups: Vec<(u32, usize, Vec<usize>)> = Vec::new();
    for s in 0..m {
        if comp[s] != usize::MAX {
            continue;
        }
        let g = groups.len();
        let mut stack = vec![s];
        comp[s] = g;
        let mut members = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = g;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        groups.push((codims[s], s, members));
    }
    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.sort_by_key(|&g| (groups[g].0, groups[g].1));
    let mut rename = vec![0; groups.len()];
    for (new, &old) in order.iter().enumerate() {
        rename[old] = new;
    }
    comp.iter().map(|&c| rename[c]).collect()
}

/// The full frontier order `tau ⪰ sigma` (strict), from all face pairs.
pub fn literal_frontier(cx: &CwComplex, stratum_of: &[usize]) -> BTreeSet<(usize, usize)> {
    let above = up_closure(cx);
    let mut rel = BTreeSet::new();
    for y in cx.cells() {
        for &x in &above[y.index()] {
            let (t, s) = (stratum_of[x.index()], stratum_of[y.index()]);
            if t != s {
                rel.insert((t, s));
            }
        }
    }
    // transitive closure
    loop {
        let extra: Vec<(usize, usize)> = rel
            .iter()
            .flat_map(|&(a, b)| rel.range((b, 0)..(b + 1, 0)).map(move |&(_, c)| (a, c)))
            .filter(|e| !rel.contains(e))
            .collect();
        if extra.is_empty() {
            break;
        }
        rel.extend(extra);
    }
    rel
}

pub fn closure_of(cover: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let mut rel: BTreeSet<(usize, usize)> = cover.iter().copied().collect();
    loop {
        let extra: Vec<(usize, usize)> = rel
            .iter()
            .flat_map(|&(a, b)| rel.range((b, 0)..(b + 1, 0)).map(move |&(_, c)| (a, c)))
            .filter(|e| !rel.contains(e))
            .collect();
        if extra.is_empty() {
            return rel;
        }
        rel.extend(extra);
    }
}

// ---------------------------------------------------------------------------
// Random complexes

/// A random pure-ish 2-dimensional simplicial complex on at most `max_v`
/// vertices: random triangles plus a few dangling edges.
pub fn random_2d(rng: &mut StdRng, max_v: usize) -> Vec<Vec<i64>> {
    let v = rng.gen_range(4..=max_v) as i64;
    let triangles = rng.gen_range(1..=(2 * v as usize).min(60));
    let mut out = Vec::new();
    for _ in 0..triangles {
        let mut t: Vec<i64> = Vec::new();
        while t.len() < 3 {
            let c = rng.gen_range(0..v);
            if !t.contains(&c) {
                t.push(c);
            }
        }
        out.push(t);
    }
    for _ in 0..rng.gen_range(0..3) {
        let a = rng.gen_range(0..v);
        let b = rng.gen_range(0..v);
        if a != b {
            out.push(vec![a, b]);
        }
    }
    out
}

/// Random complexes of mixed type, each with at most `max_cells` cells.
pub fn random_complex(rng: &mut StdRng, max_cells: usize) -> CwComplex {
    loop {
        let kind = rng.gen_range(0..5);
        let cx = match kind {
            // random simplices of dimension 1..=3 on few vertices
            0 | 1 => {
                let v = rng.gen_range(4..20) as i64;
                let count = rng.gen_range(1..40);
                let simplices: Vec<Vec<i64>> = (0..count)
                    .map(|_| {
                        let k = rng.gen_range(2..=if kind == 0 { 3 } else { 4 });
                        let mut s: Vec<i64> = Vec::new();
                        while s.len() < k {
                            let c = rng.gen_range(0..v);
                            if !s.contains(&c) {
                                s.push(c);
                            }
                        }
                        s
                    })
                    .collect();
                build_from_simplices(&simplices).unwrap()
            }
            // a torus with holes punched and a few flaps glued on
            2 => {
                let mut t = generators::grid_torus(rng.gen_range(3..5), rng.gen_range(3..6));
                let drop = rng.gen_range(0..6);
                for _ in 0..drop {
                    let i = rng.gen_range(0..t.len());
                    t.remove(i);
                }
                for _ in 0..rng.gen_range(0..3) {
                    let a = rng.gen_range(0..9);
                    let b = rng.gen_range(0..9);
                    if a != b {
                        t.push(vec![a, b, 100 + rng.gen_range(0..3)]);
                    }
                }
                build_from_simplices(&t).unwrap()
            }
            3 => build_from_cw(&generators::cone_over_wedge(rng.gen_range(1..5))).unwrap(),
            _ => {
                let mut s = random_2d(rng, 16);
                if rng.gen_bool(0.5) {
                    s.push(vec![0, 1, 2, 3]);
                }
                build_from_simplices(&s).unwrap()
            }
        };
        if !cx.is_empty() && cx.len() <= max_cells {
            return cx;
        }
    }
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Dense check that `L(x) -> L(y)` is a quasi-isomorphism over the live
/// cells, for any `x >= y`.
pub fn oracle_quasi_iso(cx: &CwComplex, alive: &[bool], x: CellId, y: CellId, p: u64) -> bool {
    let gf = Gf(p);
    let above = up_closure(cx);
    let n = cx.dimension().unwrap_or(0);
    induced_iso(&gf, &stalk(cx, &gf, &above, alive, x, n), &stalk(cx, &gf, &above, alive, y, n))
}

/// Dense stalk cohomology over the live cells.
pub fn oracle_star_cohomology(cx: &CwComplex, alive: &[bool], x: CellId, p: u64) -> Vec<usize> {
    let gf = Gf(p);
    let above = up_closure(cx);
    let n = cx.dimension().unwrap_or(0);
    dense_cohomology(&gf, &stalk(cx, &gf, &above, alive, x, n))
}
