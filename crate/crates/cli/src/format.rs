use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::failure::{Failure, Outcome};

pub const SIGNIFICANT_DIGITS: usize = 12;
pub const NOT_APPLICABLE: &str = "n/a";

/// A numeric output cell that may be inapplicable at a given point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Field {
    Value(f64),
    NotApplicable,
}

impl From<Option<f64>> for Field {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Field::NotApplicable, Field::Value)
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Value(v)
    }
}

impl Field {
    pub fn render(self) -> String {
        match self {
            Field::Value(v) => format_g(v),
            Field::NotApplicable => NOT_APPLICABLE.to_string(),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Field::Value(v) => s.serialize_f64(v),
            Field::NotApplicable => s.serialize_str(NOT_APPLICABLE),
        }
    }
}

/// One named entry of a single-point report.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Field(Field),
    Angles(Vec<f64>),
    Text(String),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Field(f) => f.render(),
            Cell::Angles(a) if a.is_empty() => NOT_APPLICABLE.to_string(),
            Cell::Angles(a) => join_angles(a),
            Cell::Text(t) => t.clone(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Field(f) => f.serialize(s),
            Cell::Angles(a) => a.serialize(s),
            Cell::Text(t) => t.serialize(s),
        }
    }
}

/// Ordered key/value report, printed as an aligned table or a JSON object.
#[derive(Debug, Default)]
pub struct Record(Vec<(&'static str, Cell)>);

impl Record {
    pub fn field(&mut self, name: &'static str, value: impl Into<Field>) -> Outcome<&mut Self> {
        let f = finite(name, value.into())?;
        self.0.push((name, Cell::Field(f)));
        Ok(self)
    }

    pub fn angles(&mut self, name: &'static str, angles: Vec<f64>) -> &mut Self {
        self.0.push((name, Cell::Angles(angles)));
        self
    }

    pub fn text(&mut self, name: &'static str, text: impl Into<String>) -> &mut Self {
        self.0.push((name, Cell::Text(text.into())));
        self
    }

    pub fn table(&self) -> String {
        let width = self.0.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        self.0
            .iter()
            .map(|(k, v)| format!("{k:<width$}  {}\n", v.render()))
            .collect()
    }
}

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// Formats like C's `%.12g`: twelve significant digits, trailing zeros
/// dropped, exponent form outside `[1e-4, 1e12)`.
pub fn format_g(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT_DIGITS as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rejects NaN and infinities before they reach an output file.
pub fn finite(name: &str, field: Field) -> Outcome<Field> {
    match field {
        Field::Value(v) if !v.is_finite() => Err(Failure::numerical(anyhow::anyhow!(
            "{name} is not finite ({v})"
        ))),
        f => Ok(f),
    }
}

pub fn join_angles(angles: &[f64]) -> String {
    angles
        .iter()
        .map(|&t| format_g(t))
        .collect::<Vec<_>>()
        .join(";")
}
