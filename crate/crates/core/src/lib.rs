//! Brute-force verification engine for invariant Einstein metrics on compact
//! homogeneous spaces G/H built from classical matrix Lie algebras.
//!
//! The pipeline realizes G = SO(N) together with a chain H in K in G of
//! centralizer type, decomposes the algebra B-orthogonally as
//! `g = h + m1 + m2` (B is the negative Killing form), brute-forces the
//! curvature coefficients `[i,j,k]` and Casimir constants from structure
//! constants, solves the critical-point polynomial of the scalar curvature
//! restricted to the two-parameter metric family
//! `x1 B|_m1 + x2 B|_m2`, and certifies every root as an Einstein metric
//! with an independent Ricci oracle. Results are emitted as deterministic,
//! machine-readable certificates.
//!
//! Everything is plain `f64` with explicit tolerances ([`config::Tolerances`]),
//! no randomness anywhere, and deterministic summation order, so reports are
//! byte-for-byte reproducible.

// index loops mirror the matrix formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod catalog;
pub mod config;
pub mod curvature;
pub mod decomp;
pub mod einstein;
pub mod embed;
pub mod error;
pub mod numeric;
pub mod reference;
pub mod report;

pub use algebra::{
    build_so, build_sp, build_su, build_u, killing_form, AlgebraSpec, BilinearForm, FormKind,
    MatrixLieAlgebra, OrthonormalFrame, StructureConstants,
};
pub use catalog::{Catalog, Disposition, KoSpaceRecord, TripleRecord};
pub use config::Tolerances;
pub use curvature::{InvariantMetric, RicciData, TripleTensor};
pub use decomp::{Acting, CasimirResult, ChainDims, OrthoDecomposition, Space};
pub use einstein::{
    analyze_chain, ChainAnalysis, CriticalPolynomial, EinsteinCertificate, PolynomialSource,
};
pub use embed::{build_chain_sp, build_chain_su, embed_standard, Embedding, SubalgebraChain};
pub use error::{Error, Result};
pub use report::{build_report, OutputFormat, Report, RunConfig};
