//! Random simplicial complexes with exact cohomology.
//!
//! The crate samples multiparametric random complexes — every dimension-`i`
//! face appears with probability `n^{-α_i}` — in two closures of the same
//! coin flips (a lower closure needing complete boundaries and an upper
//! downward closure), and analyzes the results exactly: Betti numbers and
//! cup products over the rationals or a prime field, Steenrod squares over
//! `F_2` via cup-i products, discrete collapses, and subcomplex copy counts.
//! A threshold calculus predicts where rational cohomology vanishes or
//! survives and prices the combinatorial expansions behind those statements,
//! and a Monte Carlo harness turns the asymptotic claims into finite-`n`
//! trend reports with deterministic, seed-reproducible output.
//!
//! Modules:
//! - [`simplex`], [`complex`]: ordered simplices and closed complexes, with
//!   skeleta, links, strong connectivity components, and a suspension-like
//!   construction that keeps low skeleta complete.
//! - [`io`]: a plain-text facet format and bundled small triangulations
//!   (torus, projective plane, dunce hat, and friends).
//! - [`models`]: the random hypergraph and its lower/upper closures on a
//!   counter-based coin stream (coupled, lazy, order-independent).
//! - [`field`], [`matrix`], [`cochain`], [`cohomology`]: exact linear
//!   algebra over `Q` and `F_p`, simplicial cochains with cup and cup-i
//!   products, cohomology bases, cup length, and Steenrod squares.
//! - [`collapse`], [`subcount`]: random discrete collapses and exact
//!   pattern-copy counting.
//! - [`params`]: threshold exponents, log-expectations, and the budget
//!   calculus for the upper model.
//! - [`experiments`]: the Monte Carlo harness with CSV/JSON/SVG reporting.

pub mod cochain;
pub mod cohomology;
pub mod collapse;
pub mod complex;
pub mod error;
pub mod experiments;
pub mod field;
pub mod io;
pub mod matrix;
pub mod models;
pub mod params;
pub mod simplex;
pub mod subcount;

pub use cochain::Cochain;
pub use cohomology::{
    betti_number, betti_numbers, cup_length, sq, sq_is_nontrivial,
    steenrod_nontrivial_on_components, CohomologyBasis,
};
pub use collapse::{collapse_to_dim, free_faces, CollapseOutcome};
pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use experiments::{
    cup_length_sweep, run, steenrod_search, subcount_concentration, ExperimentConfig,
    ExperimentResult, Measurement, Model,
};
pub use field::{Elem, Field};
pub use models::{
    alpha_to_p, lower_closure, sample_hypergraph, upper_closure, ParamVector, SampleSeed, Tail,
};
pub use params::{
    cohomology_region, expansion_cost, log_expectation, minimal_edge_addition_cost,
    upper_budget_cost, upper_model_params, upper_simplex_log_expectation, vertex_bound,
    CohomologyRegion, UpperModelParams,
};
pub use simplex::Simplex;
pub use subcount::{count_subcomplex_copies, CopyCount};
