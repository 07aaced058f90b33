//! Staggered DG pressure operator: 1D basis integrals, 2D assembly and the
//! boundary correction `E_n = K_N - T_n(f)`.

mod basis;
mod boundary;
mod poly;
mod pressure;

pub use basis::{build_basis, build_h_operators, flip, Basis1D, BasisReport, BoundaryCouplings, HOperators};
pub use boundary::{extract_boundary_part, BlockKind, BoundaryPart, BoundaryReport, FlipPairing};
pub use poly::Poly;
pub use pressure::{assemble_pressure_operator, BoundaryCondition, PressureOperator};
