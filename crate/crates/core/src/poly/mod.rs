//! Exact multivariate polynomial arithmetic over the rationals.

pub mod groebner;
pub mod matrix;
pub mod monomial;
pub mod order;
pub mod polynomial;
pub mod render;

pub use groebner::{buchberger, GroebnerBasis, GroebnerBudget};
pub use matrix::PolyMatrix;
pub use monomial::{Monomial, VariableId};
pub use order::{DenseMonomial, MonomialOrder};
pub use polynomial::{coeff, Coeff, Polynomial};
pub use render::{parse_polynomial, parse_variable, polynomial_from_json, polynomial_to_json, render_monomial, render_polynomial, render_variable, ElementNames, JsonTerm};
