//! JSON encoding for arbitrary-precision integers.
//!
//! Values that fit in an `i64` are written as JSON numbers; larger values are
//! written as decimal strings so no precision is lost.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serializer;

pub(crate) fn serialize<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    match value.to_i64() {
        Some(small) => serializer.serialize_i64(small),
        None => serializer.serialize_str(&value.to_string()),
    }
}

pub(crate) fn serialize_opt<S: Serializer>(
    value: &Option<BigInt>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => serialize(v, serializer),
        None => serializer.serialize_none(),
    }
}

/// Wrapper that lets a `BigInt` sit inside a derived `Serialize` container.
pub(crate) struct Int<'a>(pub &'a BigInt);

impl serde::Serialize for Int<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize(self.0, serializer)
    }
}
