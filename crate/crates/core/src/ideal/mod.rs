//! Polynomial rings, term orders, Gröbner bases and binomial ideals.

mod binomial;
mod groebner;
mod monomial;
mod polynomial;
mod toric;

pub use groebner::{buchberger, buchberger_with, IdealGB, Strategy};
pub use monomial::{Monomial, OrderChoice, OrderKind, TermOrder};
pub use polynomial::{Polynomial, Ring, Term, ETA_NAME};
pub use toric::{
    component_images, degeneration_ideal, degeneration_ideal_with, family_images, ideal_contains, ideal_equal,
    lattice_ideal_generators, saturate_all_variables, saturate_with, specialize_eta, split_positive_negative,
    substitute_monomials, toric_ideal, vanishes_on_component, vanishes_on_parametrization, KernelVectorSplit, Laurent,
};
