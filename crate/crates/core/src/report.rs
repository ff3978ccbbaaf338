//! Deterministic structured reports: sorted keys, floats as `{:.14e}` strings.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Fail,
    /// Reported value without a pass/fail claim.
    Info,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Info => "INFO",
        }
    }
}

/// Fixed float formatting with 15 significant digits.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.14e}")
    } else {
        x.to_string()
    }
}

pub fn float(x: f64) -> Value {
    Value::String(fmt_float(x))
}

pub fn complex(z: num_complex::Complex64) -> Value {
    let mut m = Map::new();
    m.insert("re".into(), float(z.re));
    m.insert("im".into(), float(z.im));
    Value::Object(m)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub verdict: Verdict,
    pub inputs: BTreeMap<String, Value>,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub witness: Option<String>,
    /// Degree and series-order bounds the check ran with.
    pub bounds: BTreeMap<String, i64>,
    pub values: BTreeMap<String, Value>,
    pub wall_seconds: Option<f64>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, verdict: Verdict) -> Self {
        CheckRecord {
            name: name.into(),
            verdict,
            inputs: BTreeMap::new(),
            residual: None,
            tolerance: None,
            witness: None,
            bounds: BTreeMap::new(),
            values: BTreeMap::new(),
            wall_seconds: None,
        }
    }

    /// `residual < tolerance` decides the verdict.
    pub fn toleranced(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        let mut r = Self::new(name, Verdict::from_bool(residual < tolerance));
        r.residual = Some(residual);
        r.tolerance = Some(tolerance);
        r
    }

    pub fn input(mut self, key: &str, v: Value) -> Self {
        self.inputs.insert(key.into(), v);
        self
    }

    pub fn bound(mut self, key: &str, v: i64) -> Self {
        self.bounds.insert(key.into(), v);
        self
    }

    pub fn value(mut self, key: &str, v: Value) -> Self {
        self.values.insert(key.into(), v);
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn to_json(&self, timing: bool) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), Value::String(self.name.clone()));
        m.insert("verdict".into(), Value::String(self.verdict.label().into()));
        m.insert("inputs".into(), Value::Object(self.inputs.clone().into_iter().collect()));
        if let Some(r) = self.residual {
            m.insert("residual".into(), float(r));
        }
        if let Some(t) = self.tolerance {
            m.insert("tolerance".into(), float(t));
        }
        if let Some(w) = &self.witness {
            m.insert("witness".into(), Value::String(w.clone()));
        }
        if !self.bounds.is_empty() {
            m.insert("bounds".into(), Value::Object(self.bounds.iter().map(|(k, v)| (k.clone(), (*v).into())).collect()));
        }
        if !self.values.is_empty() {
            m.insert("values".into(), Value::Object(self.values.clone().into_iter().collect()));
        }
        if timing {
            if let Some(t) = self.wall_seconds {
                m.insert("wall_seconds".into(), float(t));
            }
        }
        Value::Object(m)
    }

    /// One human-readable line.
    pub fn line(&self) -> String {
        let mut s = format!("{} {}", self.verdict.label(), self.name);
        match (self.residual, self.tolerance) {
            (Some(r), Some(t)) => s.push_str(&format!(" residual={} tol={}", fmt_float(r), fmt_float(t))),
            (Some(r), None) => s.push_str(&format!(" residual={}", fmt_float(r))),
            _ => {}
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!(" witness: {w}"));
        }
        s
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub command: Vec<String>,
    pub checks: Vec<CheckRecord>,
    /// Free-form outputs such as a serialized dual dimer.
    pub outputs: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report { command, ..Default::default() }
    }

    pub fn push(&mut self, c: CheckRecord) {
        self.checks.push(c);
    }

    pub fn output(&mut self, key: &str, v: Value) {
        self.outputs.insert(key.into(), v);
    }

    pub fn overall(&self) -> Verdict {
        Verdict::from_bool(self.checks.iter().all(CheckRecord::passed))
    }

    pub fn to_json(&self, timing: bool) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::Array(self.command.iter().map(|s| Value::String(s.clone())).collect()));
        m.insert("checks".into(), Value::Array(self.checks.iter().map(|c| c.to_json(timing)).collect()));
        m.insert("outputs".into(), Value::Object(self.outputs.clone().into_iter().collect()));
        m.insert("overall".into(), Value::String(self.overall().label().into()));
        Value::Object(m)
    }

    pub fn to_json_string(&self, timing: bool) -> String {
        serde_json::to_string_pretty(&self.to_json(timing)).expect("report serializes") + "\n"
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.line());
            out.push('\n');
        }
        for (k, v) in &self.outputs {
            match v {
                Value::String(s) => out.push_str(&format!("{k}:\n{s}\n")),
                other => out.push_str(&format!("{k}: {other}\n")),
            }
        }
        out.push_str(&format!("overall: {}\n", self.overall().label()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_sorted_and_stable() {
        let mut r = Report::new(vec!["family".into(), "333".into()]);
        let mut c = CheckRecord::toleranced("hesse", 1.5e-12, 1e-9).input("t", float(0.27)).input("s", float(0.13));
        c.wall_seconds = Some(0.25);
        r.push(c);
        let a = r.to_json_string(false);
        assert_eq!(a, r.clone().to_json_string(false));
        assert!(!a.contains("wall_seconds"));
        assert!(r.to_json_string(true).contains("wall_seconds"));
        let s_pos = a.find("\"s\"").unwrap();
        let t_pos = a.find("\"t\"").unwrap();
        assert!(s_pos < t_pos);
        assert!(a.contains("\"1.50000000000000e-12\""));
        assert_eq!(r.overall(), Verdict::Pass);
    }

    #[test]
    fn one_failure_fails_the_report() {
        let mut r = Report::new(vec![]);
        r.push(CheckRecord::new("info", Verdict::Info));
        assert_eq!(r.overall(), Verdict::Pass);
        r.push(CheckRecord::toleranced("x", 1.0, 1e-9));
        assert_eq!(r.overall(), Verdict::Fail);
    }
}
