//! Canonical strata and their frontier order.
//!
//! A stratum is a connected component of the cells sharing one codimension,
//! where connectivity runs over codimension-one face relations. Restricting
//! to codimension-one relations loses nothing: each codimension class is
//! interval-closed in the face poset, so any face chain between two of its
//! cells stays inside it.
//!
//! Two cells are isomorphic in the localized face category exactly when they
//! share a stratum, and there is a morphism from `w` to `z` exactly when the
//! stratum of `w` is at or above the stratum of `z` in the frontier order:
//! compose the stratum-level morphism with isomorphisms inside each stratum.
//! Both queries are answered here without building zigzags.

use serde::{Deserialize, Serialize};

use crate::complex::{CellId, CwComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub id: usize,
    pub dim: usize,
    pub codim: u32,
    pub cells: Vec<CellId>,
}

/// Strata of a complex plus the covering relation of the frontier order.
///
/// Ids are assigned in order of `(codim, smallest cell id)`. A cover edge
/// `(tau, sigma)` means `sigma` lies in the closure of `tau` with nothing in
/// between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    n: usize,
    stratum_of: Vec<usize>,
    strata: Vec<Stratum>,
    cover: Vec<(usize, usize)>,
    below: Vec<Vec<usize>>,
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(m: usize) -> Self {
        UnionFind { parent: (0..m).collect(), size: vec![1; m] }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

fn adjacency(count: usize, cover: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut below = vec![Vec::new(); count];
    for &(t, s) in cover {
        below[t].push(s);
    }
    below
}

impl Stratification {
    /// Groups cells into strata. The frontier is left empty; see [`Self::frontier`].
    pub fn components(complex: &CwComplex, codims: &[u32]) -> Result<Self> {
        if codims.len() != complex.len() {
            return Err(Error::Invariant(format!("{} labels for {} cells", codims.len(), complex.len())));
        }
        let n = complex.dimension().unwrap_or(0);
        if let Some(c) = complex.cells().find(|c| codims[c.index()] as usize > n) {
            return Err(Error::Invariant(format!("cell {c} has codimension above {n}")));
        }

        let mut uf = UnionFind::new(complex.len());
        for r in 0..complex.relation_count() {
            let (x, y) = complex.relation(r);
            if codims[x.index()] == codims[y.index()] {
                uf.union(x.index(), y.index());
            }
        }

        // cells are visited in id order, so the first cell seen is the smallest
        let mut root_slot = vec![usize::MAX; complex.len()];
        let mut groups: Vec<Vec<CellId>> = Vec::new();
        for c in complex.cells() {
            let root = uf.find(c.index());
            if root_slot[root] == usize::MAX {
                root_slot[root] = groups.len();
                groups.push(Vec::new());
            }
            groups[root_slot[root]].push(c);
        }
        groups.sort_by_key(|g| (codims[g[0].index()], g[0]));

        let mut stratum_of = vec![0; complex.len()];
        let strata = groups
            .into_iter()
            .enumerate()
            .map(|(id, cells)| {
                for c in &cells {
                    stratum_of[c.index()] = id;
                }
                let codim = codims[cells[0].index()];
                Stratum { id, dim: n - codim as usize, codim, cells }
            })
            .collect::<Vec<_>>();
        let below = vec![Vec::new(); strata.len()];
        Ok(Stratification { n, stratum_of, strata, cover: Vec::new(), below })
    }

    /// Fills in the frontier order from the face relations between strata and
    /// keeps only its covering relation.
    pub fn frontier(mut self, complex: &CwComplex) -> Result<Self> {
        let s = self.strata.len();
        let mut seeds: Vec<(usize, usize)> = (0..complex.relation_count())
            .filter_map(|r| {
                let (x, y) = complex.relation(r);
                let (t, b) = (self.stratum_of[x.index()], self.stratum_of[y.index()]);
                (t != b).then_some((t, b))
            })
            .collect();
        seeds.sort_unstable();
        seeds.dedup();
        self.cover = transitive_reduction(s, &seeds)?;
        self.below = adjacency(s, &self.cover);
        Ok(self)
    }

    /// Strata and frontier of a complete codimension labeling.
    pub fn from_codims(complex: &CwComplex, codims: &[u32]) -> Result<Self> {
        Self::components(complex, codims)?.frontier(complex)
    }

    /// Rebuilds a stratification from serialized parts, checking consistency.
    pub fn from_parts(
        n: usize,
        stratum_of: Vec<usize>,
        dims: &[usize],
        cover: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let s = dims.len();
        let mut cells: Vec<Vec<CellId>> = vec![Vec::new(); s];
        for (i, &t) in stratum_of.iter().enumerate() {
            if t >= s {
                return Err(Error::Malformed(format!("cell {i} refers to unknown stratum {t}")));
            }
            cells[t].push(CellId::from(i));
        }
        let mut strata = Vec::with_capacity(s);
        for (id, (cells, &dim)) in cells.into_iter().zip(dims).enumerate() {
            if dim > n || cells.is_empty() {
                return Err(Error::Malformed(format!("stratum {id} is empty or has dimension above {n}")));
            }
            strata.push(Stratum { id, dim, codim: (n - dim) as u32, cells });
        }
        let mut sorted = cover.clone();
        sorted.sort_unstable();
        if sorted.iter().any(|&(t, b)| t >= s || b >= s) || transitive_reduction(s, &sorted)? != sorted {
            return Err(Error::Malformed("frontier is not a covering relation".into()));
        }
        let below = adjacency(s, &sorted);
        Ok(Stratification { n, stratum_of, strata, cover: sorted, below })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, id: usize) -> &Stratum {
        &self.strata[id]
    }

    pub fn stratum_of(&self, c: CellId) -> usize {
        self.stratum_of[c.index()]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.stratum_of
    }

    /// Covering edges `(upper, lower)` of the frontier order, sorted.
    pub fn cover(&self) -> &[(usize, usize)] {
        &self.cover
    }

    /// `tau ⪰ sigma`: `sigma` lies in the closure of `tau` (reflexive).
    pub fn dominates(&self, tau: usize, sigma: usize) -> bool {
        if tau == sigma {
            return true;
        }
        let mut seen = vec![false; self.strata.len()];
        let mut stack = vec![tau];
        seen[tau] = true;
        while let Some(t) = stack.pop() {
            for &b in &self.below[t] {
                if b == sigma {
                    return true;
                }
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        false
    }

    /// Whether `a` and `b` are isomorphic in the localized face category.
    pub fn same_stratum(&self, a: CellId, b: CellId) -> bool {
        self.stratum_of(a) == self.stratum_of(b)
    }

    /// Whether the localized face category has a morphism from `w` to `z`.
    pub fn has_morphism(&self, w: CellId, z: CellId) -> bool {
        self.dominates(self.stratum_of(w), self.stratum_of(z))
    }
}

/// Covering relation of the order generated by `edges` on `0..s`.
/// Fails on a cycle.
fn transitive_reduction(s: usize, edges: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
    let succ = adjacency(s, edges);
    let mut indeg = vec![0usize; s];
    for &(_, b) in edges {
        indeg[b] += 1;
    }
    let mut order = Vec::with_capacity(s);
    let mut queue: Vec<usize> = (0..s).filter(|&v| indeg[v] == 0).collect();
    queue.reverse();
    while let Some(v) = queue.pop() {
        order.push(v);
        for &b in &succ[v] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                queue.push(b);
            }
        }
    }
    if order.len() < s {
        let stuck = (0..s).find(|&v| indeg[v] > 0).unwrap();
        return Err(Error::FrontierCycle(stuck));
    }
    let mut pos = vec![0; s];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }

    let words = s.div_ceil(64);
    let mut reach: Vec<Vec<u64>> = vec![vec![0; words]; s];
    let mut cover = Vec::new();
    for &a in order.iter().rev() {
        let mut next = succ[a].clone();
        next.sort_unstable_by_key(|&b| pos[b]);
        next.dedup();
        let mut acc = vec![0u64; words];
        for b in next {
            if acc[b / 64] >> (b % 64) & 1 == 1 {
                continue;
            }
            cover.push((a, b));
            acc[b / 64] |= 1 << (b % 64);
            for (w, r) in acc.iter_mut().zip(&reach[b]) {
                *w |= r;
            }
        }
        reach[a] = acc;
    }
    cover.sort_unstable();
    Ok(cover)
}
