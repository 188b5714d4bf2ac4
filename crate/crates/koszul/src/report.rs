//! Structured verdict reports: deterministic, machine-readable summaries of
//! a batch run. For a fixed (input, seed, version) the serialized report is
//! byte-identical across runs; anything nondeterministic (wall-clock time)
//! stays out of the report and goes to stderr.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// A labelled row of numbers, e.g. dimensions per degree.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub label: String,
    pub values: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub name: String,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub tool_version: String,
    pub command: String,
    /// SHA-256 of the input file bytes, hex-encoded.
    pub input_digest: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

impl VerdictReport {
    pub fn new(command: &str, input: &[u8], seed: u64) -> VerdictReport {
        VerdictReport {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input_digest: hex::encode(Sha256::digest(input)),
            seed,
            checks: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn check(&mut self, name: &str, status: Status, witness: Option<String>) {
        self.checks.push(Check { name: name.to_string(), status, witness });
    }

    pub fn pass_fail(&mut self, name: &str, ok: bool, witness: Option<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.check(name, status, if ok { None } else { witness });
    }

    pub fn table(&mut self, name: &str, rows: Vec<(String, Vec<i64>)>) {
        self.tables.push(Table {
            name: name.to_string(),
            rows: rows.into_iter().map(|(label, values)| TableRow { label, values }).collect(),
        });
    }

    /// 0 = all pass, 1 = some check failed, 2 = undecided but nothing failed.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self.checks.iter().any(|c| c.status == Status::Undecided) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Undecided => "UNDECIDED",
            };
            out.push_str(&format!("{tag:<9} {}", c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  [{w}]"));
            }
            out.push('\n');
        }
        for t in &self.tables {
            out.push_str(&format!("{}:\n", t.name));
            for row in &t.rows {
                let vals: Vec<String> = row.values.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!("  {:<16} {}\n", row.label, vals.join(" ")));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut r = VerdictReport::new("x", b"input", 0);
        assert_eq!(r.exit_code(), 0);
        r.check("a", Status::Undecided, None);
        assert_eq!(r.exit_code(), 2);
        r.check("b", Status::Fail, Some("w".into()));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn deterministic_serialization() {
        let build = || {
            let mut r = VerdictReport::new("oracle", b"data", 7);
            r.pass_fail("stabilized", true, None);
            r.table("dims", vec![("F".into(), vec![1, 3, 6])]);
            r.to_json()
        };
        assert_eq!(build(), build());
    }

    #[test]
    fn digest_tracks_input() {
        let a = VerdictReport::new("x", b"one", 0);
        let b = VerdictReport::new("x", b"two", 0);
        assert_ne!(a.input_digest, b.input_digest);
    }
}
