use serde_json::Value;

use orbit_curvature::rootsys::Vector;
use orbit_curvature::{Error, Rational};

pub struct Report {
    pub passed: bool,
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn new(passed: bool, json: Value, text: String) -> Self {
        Report { passed, json, text }
    }

    pub fn ok(json: Value, text: String) -> Self {
        Report::new(true, json, text)
    }
}

/// Usage problems, reported with exit status 2.
pub struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

impl From<String> for Usage {
    fn from(s: String) -> Self {
        Usage(s)
    }
}

impl From<&str> for Usage {
    fn from(s: &str) -> Self {
        Usage(s.to_string())
    }
}

pub type Outcome = Result<Report, Usage>;

/// A float rounded to 12 significant digits; non-finite values become null.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float");
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

pub fn rational(q: &Rational) -> Value {
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

pub fn vector(v: &Vector) -> Value {
    Value::Array(v.coords().iter().map(rational).collect())
}
