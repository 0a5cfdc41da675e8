//! Kähler calculus of differential forms on Euclidean grids.
//!
//! Pointwise Clifford algebra of differentials, finite-difference `d`, `δ`
//! and `∂`, Newtonian potentials, and the Helmholtz–Hodge decomposition of a
//! sampled k-form into closed, co-closed and harmonic parts.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod field;
pub mod fieldspec;
pub mod green;
pub mod grid;
pub mod hodge;
pub mod identities;
pub mod lattice_sum;
pub mod oracle;
pub mod potential;
pub mod suites;
pub mod table;

pub use algebra::{complement, unit_n_form, BasisIndex, Multivector};
pub use error::{Error, Result};
pub use field::FormField;
pub use fieldspec::{evaluate_spec, parse_field_spec, FieldSpec, SpecError};
pub use grid::{Axis, GridSpec, NodeClass, Region};
pub use potential::{IntegralPart, KernelSpec, SelfCellRule};
