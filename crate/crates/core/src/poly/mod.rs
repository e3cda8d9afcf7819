//! Exact polynomial arithmetic over Q.

mod factor;
mod monomial;
mod order;
mod parse;
mod polynomial;
mod ratfun;
mod univariate;

pub use factor::{factor_form, factor_univariate};
pub use monomial::{binomial, monomial_basis, Monomial};
pub(crate) use order::grevlex;
pub use order::MonomialOrder;
pub use parse::{parse_poly, parse_rational, x_names};
pub use polynomial::Polynomial;
pub use ratfun::RationalFunction;
pub use univariate::{q, UniPoly};

pub type Rational = num_rational::BigRational;

/// Displays a rational as `p/q` (or an integer).
pub fn fmt_rational(c: &Rational) -> String {
    polynomial::fmt_rational(c)
}
