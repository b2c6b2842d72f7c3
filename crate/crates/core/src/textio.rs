//! Number formatting shared by the CSV layouts: '.' decimal point and 17
//! significant digits, which round-trips every `f64` exactly.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub fn fmt_num<T: Scalar>(x: T) -> String {
    format!("{:.16e}", x)
}

pub fn parse_num<T: Scalar>(s: &str) -> Result<T> {
    T::from_str_radix(s.trim(), 10).map_err(|_| Error::Parse(format!("not a number: {s:?}")))
}

/// Parses `# tag key=value key=value ...` into its key/value pairs.
pub fn parse_header(line: &str, tag: &str) -> Result<BTreeMap<String, String>> {
    let rest = line
        .strip_prefix('#')
        .map(str::trim_start)
        .and_then(|l| l.strip_prefix(tag))
        .ok_or_else(|| Error::Parse(format!("expected header '# {tag} ...', got {line:?}")))?;
    let mut out = BTreeMap::new();
    for tok in rest.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("malformed header field {tok:?}")))?;
        out.insert(k.to_string(), v.to_string());
    }
    Ok(out)
}

pub fn header_num<T: Scalar>(map: &BTreeMap<String, String>, key: &str) -> Result<T> {
    let v = map
        .get(key)
        .ok_or_else(|| Error::Parse(format!("header is missing {key:?}")))?;
    parse_num(v)
}
