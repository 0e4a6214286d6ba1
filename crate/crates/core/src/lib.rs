//! High-order simplicial finite elements built from Lagrange point evaluations
//! and per-point direction frames.
//!
//! Scalar and vector Lagrange, BDM (`H(div)`) and second-kind Nédélec
//! (`H(curl)`) spaces of arbitrary degree on triangles and tetrahedra share one
//! construction: a basis function is `φ_α ê`, the nodal Lagrange function at a
//! lattice point times a dual frame vector. Conformity comes from choosing
//! global directions for shared DoFs and numbering them on global entity data.
//!
//! ```text
//! lattice     multi-indices, dictionary rank, sub-simplex tables
//! mesh        meshes, structured cube, topology, geometry, text IO
//! basis       product-form Lagrange basis, Bernstein, bubbles
//! quadrature  simplex rules
//! frames      t-n frames and duals
//! dofs        cell2ipoint, cell2dof, dof2vector, boundary masks
//! assembly    CSR, mass / div / curl-curl, loads, error norms
//! solver      dense LU, CG, MINRES
//! experiments convergence studies behind the CLI
//! ```
//!
//! See `examples/` for one runnable program per capability.

pub mod assembly;
pub mod basis;
pub mod dofs;
pub mod error;
pub mod experiments;
pub mod frames;
pub mod lattice;
pub mod mesh;
pub mod quadrature;
pub mod solver;

pub use error::{FemError, Result};
