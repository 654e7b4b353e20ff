//! JSON form: `{"conductor":n,"terms":[[k,"p/q"],...]}` with exponents
//! strictly increasing and rationals written as `p/q` or `p`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::{Cyclotomic, Rational};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Repr {
    conductor: u64,
    terms: Vec<(u64, String)>,
}

fn rational_text(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse `p/q` or `p` in lowest terms with `q > 0`.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = n.parse().map_err(|_| format!("bad numerator in `{s}`"))?;
    let den: BigInt = match d {
        Some(d) => d.parse().map_err(|_| format!("bad denominator in `{s}`"))?,
        None => BigInt::one(),
    };
    if den <= BigInt::zero() {
        return Err(format!("denominator must be positive in `{s}`"));
    }
    let q = Rational::new(num, den);
    if rational_text(&q) != s {
        return Err(format!("rational `{s}` is not in lowest terms"));
    }
    Ok(q)
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            conductor: self.conductor,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, rational_text(c)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = Repr::deserialize(d)?;
        if repr.conductor == 0 {
            return Err(de::Error::custom("conductor must be positive"));
        }
        let mut v = vec![Rational::zero(); repr.conductor as usize];
        let mut last: Option<u64> = None;
        for (k, text) in &repr.terms {
            if *k >= repr.conductor {
                return Err(de::Error::custom(format!(
                    "exponent {k} out of range for conductor {}",
                    repr.conductor
                )));
            }
            if last.is_some_and(|l| l >= *k) {
                return Err(de::Error::custom("exponents must be strictly increasing"));
            }
            last = Some(*k);
            let c = parse_rational(text).map_err(de::Error::custom)?;
            if c.is_zero() {
                return Err(de::Error::custom(format!("zero coefficient at exponent {k}")));
            }
            v[*k as usize] = c;
        }
        Ok(Cyclotomic::from_dense(v))
    }
}

impl Cyclotomic {
    /// Compact JSON text; byte-identical for equal values.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cyclotomic serialization is infallible")
    }

    /// Read the JSON form. Non-canonical but well-formed input (e.g. a
    /// non-minimal conductor) is accepted and canonicalised.
    pub fn parse_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| json_error_at(&e, text))
    }
}

/// serde_json reports semantic (custom) errors without a position; those
/// are attributed to the end of the value.
pub(crate) fn json_error_at(e: &serde_json::Error, text: &str) -> Error {
    let (line, column) = if e.line() == 0 {
        let trimmed = text.trim_end();
        let line = trimmed.lines().count().max(1);
        let column = trimmed.lines().last().map_or(1, |l| l.chars().count().max(1));
        (line, column)
    } else {
        (e.line(), e.column())
    };
    Error::Parse {
        line,
        column,
        message: e.to_string(),
    }
}
