use crate::Index;

/// Domain and resource-guard failures. Math itself never fails here; these
/// signal that a request fell outside a method's valid range.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Tree construction refused: the tree of the requested height would
    /// exceed the configured node budget.
    #[error("height {requested} exceeds the height cap {cap}")]
    HeightCapExceeded { requested: Index, cap: Index },

    /// A double-precision Binet form was asked for an index past the point
    /// where it is known to round to the exact value.
    #[error("n = {n} is outside the float method's domain 0..={max}")]
    FloatDomainExceeded { n: Index, max: Index },

    /// A level outside `0..=h` was requested.
    #[error("level k = {k} does not exist in a tree of height {h}")]
    InvalidLevel { h: Index, k: Index },
}
