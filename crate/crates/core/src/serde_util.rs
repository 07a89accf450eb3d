//! Serde adapters: arbitrary-precision values travel as decimal strings in
//! JSON (they do not fit in JSON numbers).

use crate::arith::{Int, Rational};
use num_traits::Zero;

pub fn rational_to_string(r: &Rational) -> String {
    r.to_string()
}

pub fn rational_from_string(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        None => s.trim().parse::<Int>().ok().map(Rational::from_integer),
        Some((n, d)) => {
            let num = n.trim().parse::<Int>().ok()?;
            let den = d.trim().parse::<Int>().ok()?;
            if den.is_zero() {
                None
            } else {
                Some(Rational::new(num, den))
            }
        }
    }
}

pub mod int_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse::<Int>().map_err(serde::de::Error::custom)
    }
}

pub mod int_vec_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| s.trim().parse::<Int>().map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod rat_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        rational_from_string(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))
    }
}

pub mod rat_opt_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_some(&rational_to_string(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        match s {
            None => Ok(None),
            Some(s) => rational_from_string(&s)
                .map(Some)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn rational_string_roundtrip() {
        for r in [rat(3, 4), rat(-5, 74), rat(7, 1), rat(0, 9)] {
            assert_eq!(rational_from_string(&rational_to_string(&r)), Some(r));
        }
        assert_eq!(rational_from_string("1/0"), None);
    }
}
