//! Exact arithmetic in Q and in number fields.

mod factor;
mod kpoly;
mod number_field;
mod qpoly;
mod unity;

pub use factor::{
    adjoin_root, distinct_root_count, factor_k, factor_q, is_square, roots_in_field,
    squarefree_decomposition, Adjoined, Embed, Embedding,
};
pub use kpoly::KPoly;
pub use number_field::{FieldExt, FieldRef, NumberField, Scalar, DEFAULT_DEGREE_CAP};
pub(crate) use number_field::same_field;
pub use qpoly::{fmt_rat, rat, rat_frac, QPoly, Rat};
pub use unity::{candidate_orders, euler_phi, root_of_unity_order};
