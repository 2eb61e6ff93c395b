use hatgame::analysis::AlgebraicNumber;
use hatgame::exact::{parse_rational, to_decimal, to_fraction};
use num_rational::BigRational;
use serde::Serialize;

use crate::CliError;

pub const DIGITS: usize = 12;

pub fn decimal(v: &BigRational) -> String {
    to_decimal(v, DIGITS)
}

pub fn fraction(v: &BigRational) -> String {
    to_fraction(v)
}

/// Decimal and exact forms, separated by a space.
pub fn both(v: &BigRational) -> String {
    format!("{} {}", decimal(v), fraction(v))
}

pub fn csv<R: AsRef<[u8]>>(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<R>>,
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(csv_error)?;
    for row in rows {
        w.write_record(&row).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.into()))?;
    s.push('\n');
    Ok(s)
}

/// A point of [0, 1]: a rational or one of the two quadratic breakpoints.
pub fn parse_point(text: &str) -> Result<AlgebraicNumber, CliError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.as_str() {
        "sqrt2-1" | "sqrt(2)-1" => Ok(AlgebraicNumber::sqrt2_minus_1()),
        "2-sqrt2" | "2-sqrt(2)" => Ok(AlgebraicNumber::two_minus_sqrt2()),
        _ => Ok(AlgebraicNumber::rational(parse_rational(&compact)?)),
    }
}

pub fn point_label(x: &AlgebraicNumber) -> String {
    match x.as_rational() {
        Some(r) => decimal(r),
        None => x.to_string(),
    }
}
