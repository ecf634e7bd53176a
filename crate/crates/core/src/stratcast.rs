//! The canonical stratification loop.
//!
//! Iteration `d` works on the live subcomplex `Y_d` and runs four phases:
//!
//! - **A**: star cohomology `h(w)` of every alive cell.
//! - **B**: every alive relation `x >1 y` whose level is `d - 1` is promoted
//!   to level `d` when its difference complex is acyclic.
//! - **C**: alive `(n-d)`-cells get codimension `d`; then, for decreasing
//!   dimension `i`, an alive `i`-cell `u` gets codimension `d` when `h(u)` is
//!   the delta at `n - d` and every alive `v >1 u` has codimension `d` and
//!   `level(v >1 u) = d`.
//! - **D**: cells of codimension `d` leave the mask.
//!
//! A and B are independent and run concurrently; C starts after both finish.
//! Within A, B and each dimension slice of C the work is split across a
//! rayon pool with one result slot per item, so the output never depends on
//! the number of workers.
//!
//! The level of a relation is the largest `k` such that it lies in the
//! quasi-isomorphism sets of iterations `0..=k`, and `-1` if it failed at
//! iteration 0. Only codimension-one relations carry levels; checking them
//! in decreasing dimension order is equivalent to quantifying over all
//! cofaces.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::complex::{validate, CellId, CwComplex, LiveMask};
use crate::error::{Error, Result};
use crate::field::{cohomology_dims, PrimeField};
use crate::localcohom::{is_delta, is_quasi_iso, star_complex};

/// Mutable state of a stratification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratState {
    codim: Vec<Option<u32>>,
    level: Vec<i32>,
    d: usize,
    n: usize,
    mask: LiveMask,
}

/// Wall time of each phase of one iteration.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PhaseTimings {
    pub d: usize,
    /// Phases A and B together, measured around the concurrent join.
    pub ab: Duration,
    pub a: Duration,
    pub b: Duration,
    pub c: Duration,
    pub d_phase: Duration,
    pub stars: usize,
    pub relations_tested: usize,
}

impl StratState {
    pub fn new(complex: &CwComplex) -> Self {
        StratState {
            codim: vec![None; complex.len()],
            level: vec![-1; complex.relation_count()],
            d: 0,
            n: complex.dimension().unwrap_or(0),
            mask: LiveMask::full(complex.len()),
        }
    }

    /// Index of the next iteration to run.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Dimension of the complex.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The live subcomplex `Y_d`.
    pub fn mask(&self) -> &LiveMask {
        &self.mask
    }

    pub fn codim(&self, c: CellId) -> Option<u32> {
        self.codim[c.index()]
    }

    pub fn level(&self, relation: usize) -> i32 {
        self.level[relation]
    }

    pub fn levels(&self) -> &[i32] {
        &self.level
    }

    pub fn is_finished(&self) -> bool {
        self.mask.is_empty()
    }

    /// Codimension of every cell, or `None` if some cell is still unassigned.
    pub fn try_codims(&self) -> Option<Vec<u32>> {
        self.codim.iter().copied().collect()
    }

    /// Codimension of every cell. Panics if the run has not finished.
    pub fn codims(&self) -> Vec<u32> {
        self.try_codims().expect("stratification run has not finished")
    }

    /// Runs iteration `d` and advances to `d + 1`.
    pub fn iterate(&mut self, complex: &CwComplex, field: PrimeField) -> Result<PhaseTimings> {
        if self.d > self.n || self.is_finished() {
            return Err(Error::Invariant(format!("iteration {} past the end of the run", self.d)));
        }
        let d = self.d;
        let target = self.n - d;
        let mut timings = PhaseTimings { d, ..Default::default() };

        let alive: Vec<CellId> = self.mask.alive_cells().collect();
        let candidates: Vec<usize> = (0..complex.relation_count())
            .filter(|&r| self.level[r] == d as i32 - 1)
            .filter(|&r| {
                let (x, y) = complex.relation(r);
                self.mask.is_alive(x) && self.mask.is_alive(y)
            })
            .collect();
        timings.stars = alive.len();
        timings.relations_tested = candidates.len();

        // Phases A and B.
        let mask = &self.mask;
        let started = Instant::now();
        let (delta, promoted) = rayon::join(
            || {
                let t = Instant::now();
                let out: Result<Vec<bool>> = alive
                    .par_iter()
                    .map(|&w| {
                        let dims = cohomology_dims(&star_complex(complex, mask, w, field)?)?;
                        Ok(is_delta(&dims, target))
                    })
                    .collect();
                (out, t.elapsed())
            },
            || {
                let t = Instant::now();
                let out: Result<Vec<bool>> = candidates
                    .par_iter()
                    .map(|&r| {
                        let (x, y) = complex.relation(r);
                        is_quasi_iso(complex, mask, x, y, field)
                    })
                    .collect();
                (out, t.elapsed())
            },
        );
        timings.ab = started.elapsed();
        let (delta, promoted) = ((delta.0?, delta.1), (promoted.0?, promoted.1));
        timings.a = delta.1;
        timings.b = promoted.1;

        let mut is_delta_cell = vec![false; complex.len()];
        for (&w, &ok) in alive.iter().zip(&delta.0) {
            is_delta_cell[w.index()] = ok;
        }
        for (&r, &ok) in candidates.iter().zip(&promoted.0) {
            if ok {
                self.level[r] = d as i32;
            }
        }

        // Phase C.
        let started = Instant::now();
        let code = d as u32;
        for &z in complex.cells_of_dim(target) {
            if self.mask.is_alive(z) {
                self.codim[z.index()] = Some(code);
            }
        }
        for i in (0..target).rev() {
            let slice: Vec<CellId> =
                complex.cells_of_dim(i).iter().copied().filter(|&u| self.mask.is_alive(u)).collect();
            let (codim, level, mask) = (&self.codim, &self.level, &self.mask);
            let accepted: Vec<bool> = slice
                .par_iter()
                .map(|&u| {
                    is_delta_cell[u.index()]
                        && complex.coface_relations(u).all(|(inc, r)| {
                            !mask.is_alive(inc.cell) || (codim[inc.cell.index()] == Some(code) && level[r] == d as i32)
                        })
                })
                .collect();
            for (&u, &ok) in slice.iter().zip(&accepted) {
                if ok {
                    self.codim[u.index()] = Some(code);
                }
            }
        }
        timings.c = started.elapsed();

        // Phase D.
        let started = Instant::now();
        for &c in &alive {
            if self.codim[c.index()] == Some(code) {
                self.mask.kill(c);
            }
        }
        timings.d_phase = started.elapsed();

        self.d += 1;
        Ok(timings)
    }
}

fn check_inputs(complex: &CwComplex, workers: usize) -> Result<rayon::ThreadPool> {
    if workers == 0 {
        return Err(Error::Invariant("worker count must be at least 1".into()));
    }
    // p only matters for deep validation
    let report = validate(complex, false, PrimeField::new(2)?);
    if !report.is_ok() {
        return Err(Error::Validation(report));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Invariant(format!("cannot start worker pool: {e}")))
}

/// Assigns a canonical codimension to every cell of `complex`.
///
/// The complex must pass shallow validation. The result does not depend on
/// `workers`.
pub fn run(complex: &CwComplex, field: PrimeField, workers: usize) -> Result<StratState> {
    run_with_timings(complex, field, workers).map(|(state, _)| state)
}

/// [`run`], also returning per-iteration phase timings.
pub fn run_with_timings(
    complex: &CwComplex,
    field: PrimeField,
    workers: usize,
) -> Result<(StratState, Vec<PhaseTimings>)> {
    let pool = check_inputs(complex, workers)?;
    pool.install(|| {
        let mut state = StratState::new(complex);
        let mut timings = Vec::new();
        while !state.is_finished() {
            timings.push(state.iterate(complex, field)?);
        }
        Ok((state, timings))
    })
}
