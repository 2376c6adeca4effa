use core::fmt;

use num_traits::{FromPrimitive, NumRef};

/// Scalar used for exact counting.
///
/// Everything counted in this crate (vertices, levels, sequence values,
/// binomial coefficients) is a nonnegative integer, and all arithmetic on it
/// is exact: sums, products, and the stepwise divisions inside binomial rows
/// never round. Any integer type with owned-by-reference ops qualifies;
/// [`Natural`](crate::Natural) is the default carrier and is wide enough for
/// every input, while `u64`/`u128` work wherever the caller knows the values
/// fit.
pub trait Count: Clone + Ord + NumRef + FromPrimitive + fmt::Debug + fmt::Display {}

impl<T> Count for T where T: Clone + Ord + NumRef + FromPrimitive + fmt::Debug + fmt::Display {}
