//! The outcome record shared by every check.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
        })
    }
}

/// Both sides of one inequality instance.
///
/// `margin` is `rhs − lhs` for `Le` and `lhs − rhs` for `Ge`; the check
/// passes when `margin ≥ −tolerance`, the tolerance being recorded in the
/// context under `"tolerance"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub direction: Relation,
    pub margin: f64,
    pub pass: bool,
    pub context: Map<String, Value>,
}

/// JSON has no infinities; clamp to the largest finite values.
fn finite(x: f64) -> f64 {
    if x.is_nan() {
        f64::MAX
    } else {
        x.clamp(f64::MIN, f64::MAX)
    }
}

impl CheckReport {
    pub fn new(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        direction: Relation,
        tolerance: f64,
    ) -> Self {
        let raw_margin = match direction {
            Relation::Le => rhs - lhs,
            Relation::Ge => lhs - rhs,
        };
        // NaN on either side fails.
        let pass = raw_margin >= -tolerance;
        let mut context = Map::new();
        context.insert("tolerance".into(), Value::from(finite(tolerance)));
        Self {
            name: name.into(),
            lhs: finite(lhs),
            rhs: finite(rhs),
            direction,
            margin: if raw_margin.is_nan() {
                f64::MIN
            } else {
                finite(raw_margin)
            },
            pass,
            context,
        }
    }

    /// A residual check `|residual| ≤ tolerance`.
    pub fn residual(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self::new(name, residual.abs(), tolerance, Relation::Le, 0.0)
    }

    /// Adds a context entry; non-finite floats become strings.
    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.context.insert(key.to_string(), value.into());
        self
    }

    pub fn with_f64(self, key: &str, value: f64) -> Self {
        if value.is_finite() {
            self.with(key, value)
        } else {
            self.with(key, value.to_string())
        }
    }

    pub fn tolerance(&self) -> f64 {
        self.context
            .get("tolerance")
            .and_then(Value::as_f64)
            .unwrap_or(0.0)
    }
}

/// Fixed-width text table, one line per report, followed by a count line.
pub fn summary_table(reports: &[CheckReport]) -> String {
    let width = reports
        .iter()
        .map(|r| r.name.chars().count())
        .max()
        .unwrap_or(4)
        .max(4);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:>14}    {:>14}  {:>12}  result",
        "name", "lhs", "rhs", "margin"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:<width$}  {:>14.6e} {} {:>14.6e}  {:>12.4e}  {}",
            r.name,
            r.lhs,
            r.direction,
            r.rhs,
            r.margin,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    let _ = writeln!(
        out,
        "{} checks, {} passed, {} failed",
        reports.len(),
        reports.len() - failed,
        failed
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margins_and_tolerance() {
        let r = CheckReport::new("a", 1.0, 2.0, Relation::Le, 0.0);
        assert!(r.pass && r.margin == 1.0);
        let r = CheckReport::new("b", 1.0, 2.0, Relation::Ge, 0.0);
        assert!(!r.pass && r.margin == -1.0);
        let r = CheckReport::new("c", 2.0 + 1e-9, 2.0, Relation::Le, 1e-8);
        assert!(r.pass);
        let r = CheckReport::new("d", f64::NAN, 2.0, Relation::Le, 1.0);
        assert!(!r.pass && r.lhs.is_finite() && r.margin.is_finite());
        let r = CheckReport::new("e", 0.0, f64::INFINITY, Relation::Le, 0.0);
        assert!(r.pass && r.rhs == f64::MAX);
    }

    #[test]
    fn json_round_trip() {
        let r = CheckReport::new("x", 0.1 + 0.2, 1.0 / 3.0, Relation::Ge, 1e-6)
            .with("q", 5)
            .with_f64("inf", f64::INFINITY)
            .with("label", "2;1");
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"direction\":\">=\""));
        let back: CheckReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.tolerance(), 1e-6);
        let table = summary_table(&[r]);
        assert!(table.contains("FAIL") && table.ends_with("1 checks, 0 passed, 1 failed\n"));
    }
}
