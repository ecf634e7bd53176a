//! Canonical stratification of finite regular CW complexes.
//!
//! Every cell of a regular CW complex is assigned a *canonical codimension*:
//! the cell lies in a stratum of the coarsest stratification into
//! cohomology manifolds whose strata are unions of cells, and that stratum
//! has dimension `n - codim`. Cells are then grouped into strata and the
//! frontier order between strata is recovered.
//!
//! The pipeline is
//!
//! 1. [`complex`]: build a [`CwComplex`] from maximal simplices or from an
//!    explicit cell list with signed incidences, and validate it.
//! 2. [`stratcast`]: iterate `d = 0..=n`, computing the local cohomology of
//!    every open star in the live subcomplex `Y_d` and testing every
//!    codimension-one face relation for quasi-isomorphism, in parallel.
//! 3. [`strata`]: group equal-codimension cells into connected components and
//!    compute the frontier partial order.
//!
//! ```
//! use cellstrat::{build_from_simplices, stratcast, PrimeField, Stratification};
//!
//! // A closed triangle: one open 2-stratum bounded by a circle.
//! let tri = build_from_simplices(&[vec![0, 1, 2]]).unwrap();
//! let state = stratcast::run(&tri, PrimeField::new(2).unwrap(), 1).unwrap();
//! let strat = Stratification::from_codims(&tri, &state.codims()).unwrap();
//! assert_eq!(strat.strata().len(), 2);
//! assert_eq!(strat.cover().len(), 1);
//! ```

pub mod bench;
pub mod complex;
mod error;
pub mod field;
pub mod generators;
pub mod io;
pub mod localcohom;
pub mod report;
pub mod strata;
pub mod stratcast;

pub use complex::{build_from_cw, build_from_simplices, upset, CellId, CwComplex, LiveMask};
pub use error::{Error, Result};
pub use field::{cohomology_dims, rank, PrimeField, SparseMatrix};
pub use localcohom::{diff_complex, is_delta, star_complex, CochainComplex};
pub use strata::{Stratification, Stratum};
pub use stratcast::StratState;
