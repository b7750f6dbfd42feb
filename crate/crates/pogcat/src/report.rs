//! Reports: an ordered list of checks, each with a status, witnesses and
//! optional rank tables. The JSON and text renderings are produced from the
//! same data.

use std::fmt::Write as _;

use pogcat_core::homology::AbelianGroup;
use pogcat_core::scalars::fmt_rational;
use pogcat_core::Rational;
use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    fn severity(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Inconclusive => 1,
            Status::Fail => 2,
        }
    }

    pub fn worst(self, other: Status) -> Status {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }

    pub fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRow {
    pub hom: String,
    pub degree: i64,
    pub weight: String,
    pub group: String,
    pub rank: usize,
}

impl RankRow {
    pub fn new(hom: impl Into<String>, degree: i64, weight: &Rational, group: &AbelianGroup) -> Self {
        RankRow { hom: hom.into(), degree, weight: fmt_rational(weight), group: group.to_string(), rank: group.rank }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub summary: String,
    pub witnesses: Vec<String>,
    pub ranks: Vec<RankRow>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, summary: impl Into<String>) -> Self {
        Check { name: name.into(), status, summary: summary.into(), witnesses: Vec::new(), ranks: Vec::new() }
    }

    pub fn with_witnesses(mut self, w: impl IntoIterator<Item = String>) -> Self {
        self.witnesses.extend(w);
        self
    }

    pub fn with_ranks(mut self, r: Vec<RankRow>) -> Self {
        self.ranks = r;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { schema: SCHEMA, command: command.into(), status: Status::Pass, checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.status = self.status.worst(c.status);
        self.checks.push(c);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, self.status.as_str());
        for c in &self.checks {
            let _ = writeln!(out, "  [{}] {}: {}", c.status.as_str(), c.name, c.summary);
            for w in &c.witnesses {
                let _ = writeln!(out, "      {}", w);
            }
            if !c.ranks.is_empty() {
                let width = c.ranks.iter().map(|r| r.hom.len()).max().unwrap_or(0);
                for r in &c.ranks {
                    let _ = writeln!(out, "      {:<width$}  deg {:>3}  wt {:>5}  {}", r.hom, r.degree, r.weight, r.group);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_combines_to_the_worst() {
        let mut r = Report::new("t");
        r.push(Check::new("a", Status::Pass, ""));
        assert_eq!(r.status, Status::Pass);
        r.push(Check::new("b", Status::Inconclusive, ""));
        assert_eq!(r.status, Status::Inconclusive);
        r.push(Check::new("c", Status::Fail, ""));
        r.push(Check::new("d", Status::Inconclusive, ""));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.status.exit_code(), 1);
    }

    #[test]
    fn renderings_list_the_same_checks() {
        let mut r = Report::new("t");
        r.push(Check::new("a", Status::Pass, "fine").with_witnesses(["w1".to_string()]));
        r.push(Check::new("b", Status::Fail, "broken"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let text = r.to_text();
        for c in json["checks"].as_array().unwrap() {
            let line = format!("[{}] {}:", c["status"].as_str().unwrap(), c["name"].as_str().unwrap());
            assert!(text.contains(&line), "{line}");
        }
        assert_eq!(json["schema"], 1);
        assert!(text.contains("w1"));
    }
}
