//! The weight-lattice Laurent algebra and the maps `P^k`.

mod invariant;
mod polymap;
mod polynomial;
mod reduce;

pub use invariant::{FundamentalInvariants, WeightInvariant};
pub use polymap::{functional_equation_error, functional_equation_error_f64, sample_torus_points, PolyMap, FORMAT_VERSION};
pub use polynomial::{graded_lex, IntPoly, Monomial, Polynomial, RatPoly};
pub use reduce::{
    compute_p, compute_p_with_budget, evaluate_on_fundamentals, express_in_fundamentals, full_group_sum_map,
    Reducer, DEFAULT_WEIGHT_BUDGET,
};
