//! Frequencies in scenario files: a bare number of Hz or a string with a unit
//! suffix such as `"10 GHz"`, `"1MHz"` or `"10 mHz"`. Suffixes are
//! case-sensitive, so `mHz` is millihertz and `MHz` megahertz.

use serde::de::{self, Deserializer, Visitor};
use std::fmt;

const UNITS: [(&str, f64); 6] = [
    ("THz", 1e12),
    ("GHz", 1e9),
    ("MHz", 1e6),
    ("kHz", 1e3),
    ("mHz", 1e-3),
    ("Hz", 1.0),
];

pub fn parse_frequency(text: &str) -> Result<f64, String> {
    let text = text.trim();
    let (number, scale) = UNITS
        .iter()
        .find_map(|(suffix, scale)| text.strip_suffix(suffix).map(|n| (n.trim(), *scale)))
        .unwrap_or((text, 1.0));
    let value: f64 = number.parse().map_err(|_| {
        format!("`{text}` is not a frequency (expected e.g. 10, \"10 GHz\", \"1 MHz\")")
    })?;
    Ok(value * scale)
}

struct FrequencyVisitor;

impl<'de> Visitor<'de> for FrequencyVisitor {
    type Value = f64;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a frequency in Hz or a string such as \"10 GHz\"")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
        Ok(v)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
        Ok(v as f64)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
        Ok(v as f64)
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
        parse_frequency(v).map_err(E::custom)
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    d.deserialize_any(FrequencyVisitor)
}

pub fn deserialize_option<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
    struct OptionVisitor;

    impl<'de> Visitor<'de> for OptionVisitor {
        type Value = Option<f64>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("null or a frequency")
        }

        fn visit_none<E: de::Error>(self) -> Result<Self::Value, E> {
            Ok(None)
        }

        fn visit_unit<E: de::Error>(self) -> Result<Self::Value, E> {
            Ok(None)
        }

        fn visit_some<D: Deserializer<'de>>(self, d: D) -> Result<Self::Value, D::Error> {
            deserialize(d).map(Some)
        }
    }

    d.deserialize_option(OptionVisitor)
}
