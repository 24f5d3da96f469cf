//! Reports: a human-readable section followed by a delimited machine block of
//! `key = value` lines. Every check records its measured value, its tolerance
//! and the comparison applied.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

pub const MACHINE_BEGIN: &str = "--- machine ---";
pub const MACHINE_END: &str = "--- end machine ---";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `measured ≤ tolerance`
    AtMost,
    /// `measured > tolerance`
    Above,
}

impl Relation {
    pub fn holds(self, measured: f64, tolerance: f64) -> bool {
        match self {
            Relation::AtMost => measured <= tolerance,
            Relation::Above => measured > tolerance,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::Above => ">",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub pass: bool,
    /// Gating checks decide the exit status; the others record findings.
    pub gating: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub command: String,
    pub title: String,
    pub echo: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub values: Vec<(String, String)>,
    pub notes: Vec<String>,
}

pub fn fmt_float(v: f64) -> String {
    format!("{v:.12e}")
}

impl Report {
    pub fn new(command: &str, title: impl Into<String>) -> Self {
        Self { command: command.to_string(), title: title.into(), ..Self::default() }
    }

    pub fn echo(&mut self, key: &str, value: impl fmt::Display) {
        self.echo.push((key.to_string(), value.to_string()));
    }

    pub fn value(&mut self, key: &str, value: f64) {
        self.values.push((key.to_string(), fmt_float(value)));
    }

    pub fn count(&mut self, key: &str, value: usize) {
        self.values.push((key.to_string(), value.to_string()));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn push(&mut self, name: &str, measured: f64, tolerance: f64, relation: Relation, gating: bool) -> bool {
        let pass = relation.holds(measured, tolerance);
        self.checks.push(Check { name: name.to_string(), measured, tolerance, relation, pass, gating });
        pass
    }

    pub fn at_most(&mut self, name: &str, measured: f64, tolerance: f64) -> bool {
        self.push(name, measured, tolerance, Relation::AtMost, true)
    }

    pub fn above(&mut self, name: &str, measured: f64, tolerance: f64) -> bool {
        self.push(name, measured, tolerance, Relation::Above, true)
    }

    /// A non-gating comparison; its outcome is a finding rather than a failure.
    pub fn finding(&mut self, name: &str, measured: f64, tolerance: f64, relation: Relation) -> bool {
        self.push(name, measured, tolerance, relation, false)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.gating).all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "quatspin {}: {}", self.command, self.title);
        for (k, v) in &self.echo {
            let _ = writeln!(out, "  {k} = {v}");
        }
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        if !self.checks.is_empty() {
            out.push('\n');
        }
        for c in &self.checks {
            let tag = match (c.gating, c.pass) {
                (true, true) => "PASS",
                (true, false) => "FAIL",
                (false, true) => "YES ",
                (false, false) => "NO  ",
            };
            let _ = writeln!(
                out,
                "  [{tag}] {:<width$}  {:>12.4e} {} {:.4e}",
                c.name,
                c.measured,
                c.relation.symbol(),
                c.tolerance
            );
        }
        if !self.values.is_empty() {
            out.push('\n');
        }
        for (k, v) in &self.values {
            let _ = writeln!(out, "  {k}: {v}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        let _ = writeln!(out, "\nresult: {}\n", if self.passed() { "pass" } else { "fail" });

        let _ = writeln!(out, "{MACHINE_BEGIN}");
        let _ = writeln!(out, "command = {}", self.command);
        for (k, v) in &self.echo {
            let _ = writeln!(out, "echo.{k} = {v}");
        }
        for c in &self.checks {
            let _ = writeln!(out, "check.{}.measured = {}", c.name, fmt_float(c.measured));
            let _ = writeln!(out, "check.{}.tolerance = {}", c.name, fmt_float(c.tolerance));
            let _ = writeln!(out, "check.{}.relation = {}", c.name, c.relation.symbol());
            let _ = writeln!(out, "check.{}.gating = {}", c.name, c.gating);
            let _ = writeln!(out, "check.{}.pass = {}", c.name, c.pass);
        }
        for (k, v) in &self.values {
            let _ = writeln!(out, "value.{k} = {v}");
        }
        let _ = writeln!(out, "result = {}", if self.passed() { "pass" } else { "fail" });
        let _ = writeln!(out, "{MACHINE_END}");
        out
    }
}

/// The machine block of a rendered report, verbatim.
pub fn machine_block(text: &str) -> Option<&str> {
    let start = text.find(MACHINE_BEGIN)?;
    let end = text[start..].find(MACHINE_END)? + start + MACHINE_END.len();
    Some(&text[start..end])
}

/// Parses the machine block into an ordered map.
pub fn parse_machine(text: &str) -> Option<BTreeMap<String, String>> {
    let block = machine_block(text)?;
    Some(block.lines().filter_map(|l| l.split_once(" = ")).map(|(k, v)| (k.to_string(), v.to_string())).collect())
}
