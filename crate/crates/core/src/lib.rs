pub mod error;
pub mod field;
pub mod order_result;

pub use error::{Error, Result};
pub use order_result::{InfinityReason, OrderResult};
pub mod form;
pub mod linalg;
pub mod parse;
pub mod point;
pub mod solve;
pub mod hesse;
pub mod algebra;
pub mod classify;
pub mod table1;
pub mod order;
pub mod verdict;
pub mod io;
