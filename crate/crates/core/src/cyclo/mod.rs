//! Cyclotomic integers, Gauss periods and period polynomials over `Z`.

mod closed_form;
mod element;
mod intpoly;
mod periods;
mod units;

pub use closed_form::{
    closed_form_coperiod_quartic, closed_form_period_quadratic, link_period_coperiod,
    quadratic_partition, LinkDirection, QuadraticPartition,
};
pub use element::{product_tree_poly, CycloPoly, CyclotomicInteger};
pub use intpoly::{cyclotomic_polynomial, IntegerPolynomial};
pub use periods::{
    coperiod_from_period, factor_degree_check, gauss_periods, period_polynomial,
    period_polynomial_of, period_spec, FactorDegreeCheck, PeriodSpec,
};
pub use units::{cyclic_subgroup, is_subgroup, order_modulo_subgroup, subgroups_of_order, unit_group};
