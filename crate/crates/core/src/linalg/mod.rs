//! Exact integer linear algebra and polynomial utilities.

mod charpoly;
mod det;
mod matrix;
mod pfaffian;
mod poly;

pub use charpoly::{charpoly, inverse_unimodular, sigma_coefficients};
pub use det::{bareiss_i128, det, principal_minor};
pub use matrix::IntMatrix;
pub use pfaffian::{pfaffian, pfaffian_elimination, pfaffian_expansion, EXPANSION_LIMIT};
pub use poly::{squarefree_decomposition, IntPoly, SquarefreeFactor};

/// Serde helper writing a `BigInt` as a decimal string.
pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.collect_str(v),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
            let s: Option<String> = Option::deserialize(d)?;
            s.map(|s| s.parse().map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}
