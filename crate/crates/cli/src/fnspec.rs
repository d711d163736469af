//! Text form of concrete monotone functions.
//!
//! ```text
//! fnspec := "poly:" EXPR-IN-m
//!         | "table:" x ":" y ("," x ":" y)* ";tail:" ("hold" | "slope:" k | "poly:" EXPR-IN-m)
//! ```

use hopoly_core::syntax::parse_univariate;
use hopoly_core::{Error, MonotoneFn, Natural, Tail};

/// Why a function spec was rejected.
#[derive(Debug, thiserror::Error)]
pub enum FnSpecError {
    /// Not of the grammar above.
    #[error("bad function spec: {0}")]
    Syntax(String),
    /// Well formed but not a monotone function.
    #[error(transparent)]
    Domain(Error),
}

fn nat(s: &str) -> Result<Natural, FnSpecError> {
    s.trim().parse().map_err(|_| FnSpecError::Syntax(format!("'{s}' is not a natural number")))
}

fn poly(s: &str) -> Result<hopoly_core::Poly1, FnSpecError> {
    parse_univariate(s, "m").map_err(|e| FnSpecError::Syntax(e.to_string()))
}

pub fn parse_fnspec(spec: &str) -> Result<MonotoneFn, FnSpecError> {
    if let Some(body) = spec.strip_prefix("poly:") {
        return MonotoneFn::from_poly(poly(body)?).map_err(FnSpecError::Domain);
    }
    let body = spec
        .strip_prefix("table:")
        .ok_or_else(|| FnSpecError::Syntax("expected 'poly:' or 'table:'".into()))?;
    let (table, tail) = body
        .split_once(";tail:")
        .ok_or_else(|| FnSpecError::Syntax("table needs ';tail:'".into()))?;
    let mut points = Vec::new();
    for pair in table.split(',') {
        let (x, y) = pair
            .split_once(':')
            .ok_or_else(|| FnSpecError::Syntax(format!("'{pair}' is not x:y")))?;
        points.push((nat(x)?, nat(y)?));
    }
    let tail = match tail {
        "hold" => Tail::Hold,
        t => {
            if let Some(k) = t.strip_prefix("slope:") {
                Tail::AffineSlope(nat(k)?)
            } else if let Some(p) = t.strip_prefix("poly:") {
                Tail::Poly(poly(p)?)
            } else {
                return Err(FnSpecError::Syntax(format!("unknown tail '{t}'")));
            }
        }
    };
    MonotoneFn::new(points, tail).map_err(FnSpecError::Domain)
}
