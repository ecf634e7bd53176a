//! Prime-field arithmetic and sparse rank computation.
//!
//! Cohomology over GF(p) reduces to ranks of codifferential matrices. The
//! matrices are bounded by the size of an open star, so elimination uses a
//! plain fill-reducing column order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::localcohom::CochainComplex;

/// The field GF(p) for a prime `p < 2^31`. Elements are plain `u32` values in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse in GF({})", self.p);
        self.pow(a, self.p as u64 - 2)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Row-major sparse matrix over GF(p). Rows are sorted by column, hold no
/// zeros and no repeated positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Vec<(u32, u32)>>,
}

impl SparseMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        SparseMatrix { field, rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Values at a repeated
    /// position are summed; entries that reduce to zero are dropped.
    pub fn from_triplets(
        field: PrimeField,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self> {
        let mut data: Vec<Vec<(u32, u32)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Malformed(format!("entry ({r}, {c}) outside a {rows}x{cols} matrix")));
            }
            data[r].push((c as u32, field.reduce(v)));
        }
        for row in &mut data {
            row.sort_unstable_by_key(|&(c, _)| c);
            let mut out: Vec<(u32, u32)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match out.last_mut() {
                    Some(last) if last.0 == c => last.1 = field.add(last.1, v),
                    _ => out.push((c, v)),
                }
            }
            out.retain(|&(_, v)| v != 0);
            *row = out;
        }
        Ok(SparseMatrix { field, rows, cols, data })
    }

    pub fn from_dense(field: PrimeField, dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let trips = dense
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v)));
        Self::from_triplets(field, rows, cols, trips).expect("dense rows must have equal length")
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v;
        }
        out
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(u32, u32)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r].binary_search_by_key(&(c as u32), |&(col, _)| col).map_or(0, |i| self.data[r][i].1)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c as usize, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Vec<(u32, u32)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.entries() {
            data[c].push((r as u32, v));
        }
        SparseMatrix { field: self.field, rows: self.cols, cols: self.rows, data }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Invariant(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let mut data = Vec::with_capacity(self.rows);
        let mut acc: Vec<(u32, u32)> = Vec::new();
        for row in &self.data {
            acc.clear();
            for &(j, a) in row {
                acc.extend(rhs.data[j as usize].iter().map(|&(l, b)| (l, f.mul(a, b))));
            }
            acc.sort_unstable_by_key(|&(c, _)| c);
            let mut out: Vec<(u32, u32)> = Vec::new();
            for &(c, v) in &acc {
                match out.last_mut() {
                    Some(last) if last.0 == c => last.1 = f.add(last.1, v),
                    _ => out.push((c, v)),
                }
            }
            out.retain(|&(_, v)| v != 0);
            data.push(out);
        }
        Ok(SparseMatrix { field: f, rows: self.rows, cols: rhs.cols, data })
    }
}

fn entry_at(row: &[(u32, u32)], c: u32) -> Option<u32> {
    row.binary_search_by_key(&c, |&(col, _)| col).ok().map(|i| row[i].1)
}

/// Rank over GF(p) by sparse Gaussian elimination.
///
/// Columns are visited in order of increasing initial nonzero count; within
/// a column the shortest remaining row is chosen as pivot. Fill-in is
/// tracked so every column sees all rows that became nonzero there.
pub fn rank(m: &SparseMatrix) -> usize {
    let f = m.field;
    let mut rows = m.data.clone();
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); m.cols];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].push(r as u32);
        }
    }
    let mut order: Vec<usize> = (0..m.cols).collect();
    order.sort_by_key(|&c| (col_rows[c].len(), c));

    let mut used = vec![false; m.rows];
    let mut rank = 0;
    let mut merged: Vec<(u32, u32)> = Vec::new();
    for c in order {
        let c32 = c as u32;
        let mut cands = std::mem::take(&mut col_rows[c]);
        cands.retain(|&r| !used[r as usize] && entry_at(&rows[r as usize], c32).is_some());
        cands.sort_unstable();
        cands.dedup();
        let Some(&pivot) = cands.iter().min_by_key(|&&r| (rows[r as usize].len(), r)) else {
            continue;
        };
        used[pivot as usize] = true;
        rank += 1;
        let prow = std::mem::take(&mut rows[pivot as usize]);
        let pinv = f.inv(entry_at(&prow, c32).unwrap());
        for &r in &cands {
            if r == pivot {
                continue;
            }
            let row = &rows[r as usize];
            let factor = f.mul(entry_at(row, c32).unwrap(), pinv);
            // row <- row - factor * prow
            merged.clear();
            let (mut i, mut j) = (0, 0);
            while i < row.len() || j < prow.len() {
                let take_row = j >= prow.len() || (i < row.len() && row[i].0 < prow[j].0);
                let take_piv = i >= row.len() || (j < prow.len() && prow[j].0 < row[i].0);
                if take_row {
                    merged.push(row[i]);
                    i += 1;
                } else if take_piv {
                    let (col, v) = prow[j];
                    merged.push((col, f.neg(f.mul(factor, v))));
                    col_rows[col as usize].push(r);
                    j += 1;
                } else {
                    let (col, a) = row[i];
                    let v = f.sub(a, f.mul(factor, prow[j].1));
                    if v != 0 {
                        merged.push((col, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            rows[r as usize].clone_from(&merged);
        }
    }
    rank
}

/// Dimensions of the cohomology of a cochain complex over GF(p), one entry
/// per degree: `dim H^k = n_k - rank d^k - rank d^(k-1)`.
///
/// Fails if two successive codifferentials do not compose to zero.
pub fn cohomology_dims(cx: &CochainComplex) -> Result<Vec<usize>> {
    let top = cx.degrees();
    for k in 0..top.saturating_sub(2) {
        if !cx.codifferential(k + 1).mul(cx.codifferential(k))?.is_zero() {
            return Err(Error::NonzeroComposition { degree: k });
        }
    }
    let ranks: Vec<usize> = (0..top.saturating_sub(1)).map(|k| rank(cx.codifferential(k))).collect();
    Ok((0..top)
        .map(|k| {
            let out = if k < ranks.len() { ranks[k] } else { 0 };
            let inc = if k > 0 { ranks[k - 1] } else { 0 };
            cx.module_rank(k) - out - inc
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::CellId;
    use proptest::prelude::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Dense Gauss-Jordan elimination, independent of the sparse path.
    #[allow(clippy::needless_range_loop)]
    fn dense_rank(f: PrimeField, mut a: Vec<Vec<u32>>) -> usize {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, p);
            let inv = f.inv(a[r][c]);
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let factor = f.mul(a[i][c], inv);
                    for j in 0..cols {
                        let t = f.mul(factor, a[r][j]);
                        a[i][j] = f.sub(a[i][j], t);
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn synthetic(n: usize, start: u32) -> Vec<CellId> {
        (start..start + n as u32).map(CellId).collect()
    }

    #[test]
    fn field_arithmetic() {
        let f = gf(7);
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.reduce(-1), 6);
        assert_eq!(f.neg(0), 0);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn non_primes_rejected() {
        for p in [0, 1, 4, 9, 15, 1 << 31] {
            assert!(PrimeField::new(p).is_err(), "{p}");
        }
        for p in [2, 3, 5, 97, 65_537] {
            assert!(PrimeField::new(p).is_ok(), "{p}");
        }
    }

    #[test]
    fn identity_rank() {
        let m = SparseMatrix::from_dense(gf(2), &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(rank(&m), 3);
    }

    #[test]
    fn single_row_rank() {
        let m = SparseMatrix::from_dense(gf(2), &[vec![1, 1]]);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn triangle_coboundary_rank() {
        // closed 2-simplex: edges (0,1),(0,2),(1,2) -> triangle with degrees +1,-1,+1
        let m = SparseMatrix::from_dense(gf(2), &[vec![1, -1, 1]]);
        assert_eq!(rank(&m), 1);
        assert_eq!(rank(&SparseMatrix::zeros(gf(2), 0, 0)), 0);
        assert_eq!(rank(&SparseMatrix::zeros(gf(5), 4, 3)), 0);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // [[1,1],[1,-1]] has determinant -2
        let dense = [vec![1, 1], vec![1, -1]];
        assert_eq!(rank(&SparseMatrix::from_dense(gf(2), &dense)), 1);
        assert_eq!(rank(&SparseMatrix::from_dense(gf(3), &dense)), 2);
    }

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let m = SparseMatrix::from_triplets(gf(3), 2, 2, [(0, 0, 1), (0, 0, 2), (1, 1, 4)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), 1);
        assert!(SparseMatrix::from_triplets(gf(3), 1, 1, [(0, 1, 1)]).is_err());
    }

    #[test]
    fn cohomology_of_shifted_unit() {
        // 0 -> R -> 0 concentrated in degree 2
        let bases = vec![vec![], vec![], synthetic(1, 0)];
        let cx = CochainComplex::new(
            gf(2),
            bases,
            vec![SparseMatrix::zeros(gf(2), 0, 0), SparseMatrix::zeros(gf(2), 1, 0)],
        )
        .unwrap();
        assert_eq!(cohomology_dims(&cx).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn cohomology_of_rank_one_into_two() {
        // 0 -> R -> R^2 -> 0 in degrees 1,2 with a rank-one map
        let f = gf(2);
        let cx = CochainComplex::new(
            f,
            vec![vec![], synthetic(1, 0), synthetic(2, 1)],
            vec![SparseMatrix::zeros(f, 1, 0), SparseMatrix::from_dense(f, &[vec![1], vec![1]])],
        )
        .unwrap();
        assert_eq!(cohomology_dims(&cx).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn cohomology_of_rank_one_into_one() {
        let f = gf(2);
        let cx = CochainComplex::new(
            f,
            vec![vec![], synthetic(1, 0), synthetic(1, 1)],
            vec![SparseMatrix::zeros(f, 1, 0), SparseMatrix::from_dense(f, &[vec![1]])],
        )
        .unwrap();
        assert_eq!(cohomology_dims(&cx).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn nonzero_composition_reported() {
        let f = gf(3);
        let cx = CochainComplex::new(
            f,
            vec![synthetic(1, 0), synthetic(1, 1), synthetic(1, 2)],
            vec![SparseMatrix::from_dense(f, &[vec![1]]), SparseMatrix::from_dense(f, &[vec![1]])],
        )
        .unwrap();
        assert!(matches!(cohomology_dims(&cx), Err(Error::NonzeroComposition { degree: 0 })));
    }

    fn arb_matrix() -> impl Strategy<Value = (u64, Vec<Vec<i64>>)> {
        (prop::sample::select(vec![2u64, 3, 5, 7]), 0usize..50, 0usize..50, 0.0f64..0.5).prop_flat_map(
            |(p, r, c, density)| {
                let cell = prop::bool::weighted(density).prop_flat_map(move |nz| {
                    if nz {
                        (1i64..p as i64).boxed()
                    } else {
                        Just(0i64).boxed()
                    }
                });
                (Just(p), prop::collection::vec(prop::collection::vec(cell, c), r))
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn rank_matches_dense_oracle((p, dense) in arb_matrix()) {
            let f = gf(p);
            let m = SparseMatrix::from_dense(f, &dense);
            prop_assert_eq!(rank(&m), dense_rank(f, m.to_dense()));
        }

        #[test]
        fn rank_is_transpose_invariant((p, dense) in arb_matrix()) {
            let m = SparseMatrix::from_dense(gf(p), &dense);
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn euler_characteristic_is_preserved(
            p in prop::sample::select(vec![2u64, 3, 5]),
            simplices in prop::collection::vec(prop::collection::btree_set(0i64..8, 1..5), 1..8),
        ) {
            let simplices: Vec<Vec<i64>> = simplices.into_iter().map(|s| s.into_iter().collect()).collect();
            let cx = crate::complex::build_from_simplices(&simplices).unwrap();
            let graded: Vec<Vec<CellId>> = (0..=cx.dimension().unwrap()).map(|k| cx.cells_of_dim(k).to_vec()).collect();
            let cochains = crate::localcohom::restricted_complex(&cx, graded, gf(p));
            let h = cohomology_dims(&cochains).unwrap();
            let alt = |v: &[usize]| -> i64 { v.iter().enumerate().map(|(j, &n)| if j % 2 == 0 { n as i64 } else { -(n as i64) }).sum() };
            prop_assert_eq!(alt(&cochains.ranks()), alt(&h));
        }
    }
}
