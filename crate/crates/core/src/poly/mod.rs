//! Exact polynomial engine: cosine-product expansions, the four polynomial
//! families in the variables `X_i`, and their weight functions.

mod expansion;
mod family;
mod json;
mod polynomial;
mod table;
mod weight;

pub use expansion::{product_rule, CosBasis, CosExpansion};
pub use family::{
    family_polynomial, jacobian_eval, labels_up_to, monomial_to_cos, phi_map, variable_scale,
    Family,
};
pub use json::{PolynomialRecord, TermRecord};
pub use polynomial::RationalPolynomial;
pub use table::{coefficient_tables, CoefficientTable};
pub use weight::{
    continuous_inner_product, sym_int_to_polynomial, weight_polynomial, WeightKind,
    WeightPolynomial,
};
