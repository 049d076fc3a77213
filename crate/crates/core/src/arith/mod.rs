//! Exact arithmetic over a prime basis and small integer linear systems.

mod factor;
mod ilp;
mod lattice;

pub use factor::{divides, factor, FactoredInt, FactoredRational, PrimeBasis};
pub use ilp::{ilp_feasible, ConstraintRow, LinearConstraintSystem, Relation, DEFAULT_SEARCH_BOX};
pub use lattice::{hermite_normal_form, lattices_equal, solve_integer_linear};
