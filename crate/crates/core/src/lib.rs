//! Exact symbolic computation in the solenoidal Heisenberg-Virasoro algebra:
//! scalar field, index lattice, brackets, 2-cocycles, T-modules and Verma modules.

pub mod algebra;
pub mod cocycles;
pub mod lattice;
pub mod repmod;
pub mod scalars;
pub mod syntax;
pub mod verma;
