//! Machine-readable result records and their two on-disk encodings.
//!
//! json-lines: one JSON object per line, every integer rendered as a
//! decimal string so consumers limited to 53-bit floats cannot truncate.
//! CSV: fixed header row, empty cells for absent fields; solution lists
//! use ';' as the inner separator so cells never contain commas.

use serde::{Deserialize, Serialize};
use std::fmt;

/// One sweep outcome: a pattern verdict or a solve on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    #[serde(with = "u64_str")]
    pub p: u64,
    #[serde(with = "u32_str")]
    pub e: u32,
    #[serde(with = "u64_str")]
    pub g: u64,
    #[serde(with = "u64_str")]
    pub c: u64,
    /// Pattern id, or "solve" for enumeration records.
    pub pattern: String,
    /// holds / fails / not_applicable, or "solved".
    pub verdict: String,
    /// Semicolon-joined solution list for solve records.
    pub solutions: Option<String>,
    #[serde(with = "opt_u128_str")]
    pub sum: Option<u128>,
    #[serde(with = "opt_u64_str")]
    pub sum_modulus: Option<u64>,
    #[serde(with = "opt_u64_str")]
    pub m_p: Option<u64>,
    #[serde(with = "opt_u64_str")]
    pub m_pe: Option<u64>,
    #[serde(with = "u64_str")]
    pub elapsed_us: u64,
}

pub const CSV_HEADER: &str =
    "p,e,g,c,pattern,verdict,solutions,sum,sum_modulus,m_p,m_pe,elapsed_us";

#[derive(Debug)]
pub struct ParseRecordError(pub String);

impl fmt::Display for ParseRecordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad record: {}", self.0)
    }
}

impl std::error::Error for ParseRecordError {}

impl ResultRecord {
    /// Sort key for deterministic output files.
    pub fn sort_key(&self) -> (u64, u32, u64, u64, String) {
        (self.p, self.e, self.g, self.c, self.pattern.clone())
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serialization cannot fail")
    }

    pub fn from_json_line(line: &str) -> Result<Self, ParseRecordError> {
        serde_json::from_str(line).map_err(|e| ParseRecordError(e.to_string()))
    }

    pub fn to_csv_row(&self) -> String {
        fn opt<T: fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map(|x| x.to_string()).unwrap_or_default()
        }
        debug_assert!(!self.pattern.contains(',') && !self.verdict.contains(','));
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.p,
            self.e,
            self.g,
            self.c,
            self.pattern,
            self.verdict,
            opt(&self.solutions),
            opt(&self.sum),
            opt(&self.sum_modulus),
            opt(&self.m_p),
            opt(&self.m_pe),
            self.elapsed_us,
        )
    }

    pub fn from_csv_row(line: &str) -> Result<Self, ParseRecordError> {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 12 {
            return Err(ParseRecordError(format!(
                "expected 12 CSV fields, got {}",
                fields.len()
            )));
        }
        fn num<T: std::str::FromStr>(s: &str, name: &str) -> Result<T, ParseRecordError> {
            s.parse()
                .map_err(|_| ParseRecordError(format!("bad {name}: {s:?}")))
        }
        fn opt_num<T: std::str::FromStr>(
            s: &str,
            name: &str,
        ) -> Result<Option<T>, ParseRecordError> {
            if s.is_empty() {
                Ok(None)
            } else {
                num(s, name).map(Some)
            }
        }
        Ok(ResultRecord {
            p: num(fields[0], "p")?,
            e: num(fields[1], "e")?,
            g: num(fields[2], "g")?,
            c: num(fields[3], "c")?,
            pattern: fields[4].to_string(),
            verdict: fields[5].to_string(),
            solutions: if fields[6].is_empty() {
                None
            } else {
                Some(fields[6].to_string())
            },
            sum: opt_num(fields[7], "sum")?,
            sum_modulus: opt_num(fields[8], "sum_modulus")?,
            m_p: opt_num(fields[9], "m_p")?,
            m_pe: opt_num(fields[10], "m_pe")?,
            elapsed_us: num(fields[11], "elapsed_us")?,
        })
    }
}

macro_rules! string_codec {
    ($mod_name:ident, $ty:ty) => {
        mod $mod_name {
            use serde::{Deserialize, Deserializer, Serializer};

            pub fn serialize<S: Serializer>(v: &$ty, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(&v.to_string())
            }

            pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<$ty, D::Error> {
                let raw = String::deserialize(d)?;
                raw.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

macro_rules! opt_string_codec {
    ($mod_name:ident, $ty:ty) => {
        mod $mod_name {
            use serde::{Deserialize, Deserializer, Serializer};

            pub fn serialize<S: Serializer>(v: &Option<$ty>, s: S) -> Result<S::Ok, S::Error> {
                match v {
                    Some(x) => s.serialize_some(&x.to_string()),
                    None => s.serialize_none(),
                }
            }

            pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<$ty>, D::Error> {
                let raw = Option::<String>::deserialize(d)?;
                raw.map(|s| s.parse().map_err(serde::de::Error::custom))
                    .transpose()
            }
        }
    };
}

string_codec!(u64_str, u64);
string_codec!(u32_str, u32);
opt_string_codec!(opt_u64_str, u64);
opt_string_codec!(opt_u128_str, u128);

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultRecord {
        ResultRecord {
            p: 3,
            e: 2,
            g: 2,
            c: 1,
            pattern: "conjecture_A".into(),
            verdict: "fails".into(),
            solutions: None,
            sum: Some(15),
            sum_modulus: Some(9),
            m_p: Some(2),
            m_pe: Some(6),
            elapsed_us: 12,
        }
    }

    #[test]
    fn json_line_uses_decimal_strings() {
        let line = sample().to_json_line();
        assert!(line.contains("\"p\":\"3\""), "{line}");
        assert!(line.contains("\"sum\":\"15\""), "{line}");
        assert_eq!(ResultRecord::from_json_line(&line).unwrap(), sample());
    }

    #[test]
    fn csv_round_trip() {
        let mut rec = sample();
        rec.pattern = "solve".into();
        rec.verdict = "solved".into();
        rec.solutions = Some("4;11".into());
        rec.sum = None;
        rec.sum_modulus = None;
        let row = rec.to_csv_row();
        assert_eq!(ResultRecord::from_csv_row(&row).unwrap(), rec);
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
    }

    #[test]
    fn csv_rejects_malformed_rows() {
        assert!(ResultRecord::from_csv_row("1,2,3").is_err());
        assert!(ResultRecord::from_csv_row("x,2,3,4,a,b,,,,,,9").is_err());
    }
}
