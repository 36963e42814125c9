//! Verification reports: named pass/fail checks with exact witnesses.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::exactnum::ParameterSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: false,
            witness: Some(witness.into()),
        }
    }

    /// Passes when `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w),
        }
    }

    /// An error during a check is itself a failure with the error as witness.
    pub fn from_result(name: impl Into<String>, r: Result<Option<String>>) -> Self {
        match r {
            Ok(w) => Check::from_witness(name, w),
            Err(e) => Check::fail(name, format!("error: {e}")),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Scope {
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme: Option<String>,
}

impl Scope {
    pub fn level(n: u32) -> Self {
        Scope {
            n: Some(n),
            ..Scope::default()
        }
    }

    pub fn degree(d: u32) -> Self {
        Scope {
            d: Some(d),
            ..Scope::default()
        }
    }

    fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(n) = self.n {
            parts.push(format!("N={n}"));
        }
        if let Some(d) = self.d {
            parts.push(format!("D={d}"));
        }
        if let Some(k) = self.k {
            parts.push(format!("K={k}"));
        }
        if let Some(s) = &self.scheme {
            parts.push(format!("scheme={s}"));
        }
        parts.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: Vec<String>,
    pub scope: Scope,
    pub seed: u64,
    pub checks: Vec<Check>,
    /// Left `None` unless timing was requested, so output stays reproducible.
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(suite: impl Into<String>, params: &ParameterSet, scope: Scope, seed: u64) -> Self {
        Report {
            suite: suite.into(),
            params: params.to_strings(),
            scope,
            seed,
            checks: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Appends another report's checks, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "suite: {}", self.suite);
        let _ = writeln!(s, "params: {}", self.params.join(","));
        let _ = writeln!(s, "scope: {}", self.scope.describe());
        let _ = writeln!(s, "seed: {}", self.seed);
        for c in &self.checks {
            match &c.witness {
                None => {
                    let _ = writeln!(s, "PASS  {}", c.name);
                }
                Some(w) => {
                    let _ = writeln!(s, "FAIL  {}: {}", c.name, w);
                }
            }
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(
            s,
            "result: {} ({}/{} checks passed)",
            if self.passed() { "PASS" } else { "FAIL" },
            passed,
            self.checks.len()
        );
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(s, "elapsed_ms: {ms}");
        }
        s
    }

    /// One row per check; set `header` for the first report in a stream.
    pub fn to_csv(&self, header: bool) -> String {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(Vec::new());
        if header {
            w.write_record([
                "suite", "params", "N", "D", "K", "scheme", "seed", "check", "pass", "witness",
                "elapsed_ms",
            ])
            .expect("in-memory csv");
        }
        let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
        for c in &self.checks {
            w.write_record([
                self.suite.clone(),
                self.params.join(","),
                opt(self.scope.n),
                opt(self.scope.d),
                opt(self.scope.k),
                self.scope.scheme.clone().unwrap_or_default(),
                self.seed.to_string(),
                c.name.clone(),
                c.pass.to_string(),
                c.witness.clone().unwrap_or_default(),
                self.elapsed_ms.map(|m| m.to_string()).unwrap_or_default(),
            ])
            .expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
    }
}
