//! Ground sets, subsets as bitmasks, exact rank tables and the basic
//! polymatroid operators.
//!
//! All values are exact rationals. The empty set always has rank 0, and it
//! counts as a flat exactly when no element has rank 0.

mod function;
mod ground;
mod ops;
mod subset;

pub use function::{
    make_set_function, validate_polymatroid, Flags, Measure, Polymatroid, SetFunction,
    ValidationReport, Violation,
};
pub use ground::{map_subset, GroundSet};
pub use ops::{
    closure, contract, factor, flats, induced_measure, is_flat, modular_defect, restrict,
    restrict_polymatroid, FlatFamily, Partition,
};
pub use subset::{canonical_subsets, Elements, Submasks, Subset, MAX_GROUND};

/// Exact rational value used for every rank and weight.
pub type Ratio = num_rational::Rational64;

/// Parse `p`, `-p` or `p/q`.
pub fn parse_ratio(text: &str) -> Option<Ratio> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().ok()?, d.trim().parse::<i64>().ok()?),
        None => (text.parse::<i64>().ok()?, 1),
    };
    (den > 0).then(|| Ratio::new(num, den))
}
