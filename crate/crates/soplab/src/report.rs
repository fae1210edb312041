//! Machine-readable verification outcomes.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::qlinalg::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// Outcome of one verification claim.
///
/// `claim` is a frozen identifier (e.g. `banach.eq1`, `amalgam.clm_conv.2`,
/// `groups.triangle`); rationals are serialized losslessly as `"p/q"`.
/// Runtime is tracked for the text summary but excluded from the
/// json-lines form, which must be byte-deterministic for a fixed seed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub claim: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip)]
    pub runtime: Option<Duration>,
}

impl CheckReport {
    pub fn new(claim: impl Into<String>, status: Status) -> Self {
        CheckReport {
            claim: claim.into(),
            status,
            values: BTreeMap::new(),
            witness: None,
            runtime: None,
        }
    }

    pub fn pass(claim: impl Into<String>) -> Self {
        Self::new(claim, Status::Pass)
    }

    pub fn fail(claim: impl Into<String>, witness: impl Into<String>) -> Self {
        let mut r = Self::new(claim, Status::Fail);
        r.witness = Some(witness.into());
        r
    }

    pub fn with_value(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.values.insert(key.into(), value.to_string());
        self
    }

    pub fn with_rational(self, key: impl Into<String>, value: &Rational) -> Self {
        // always "p/q", never a decimal
        self.with_value(key, format!("{}/{}", value.numer(), value.denom()))
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    JsonLines,
    SummaryText,
}

/// Serialize reports in a fixed order: sorted by claim identifier, then by
/// the serialized parameter values.
pub fn sort_reports(reports: &mut [CheckReport]) {
    reports.sort_by(|a, b| {
        (a.claim.as_str(), &a.values).cmp(&(b.claim.as_str(), &b.values))
    });
}

pub fn emit<W: Write>(
    reports: &[CheckReport],
    format: ReportFormat,
    out: &mut W,
) -> std::io::Result<()> {
    match format {
        ReportFormat::JsonLines => {
            for r in reports {
                let line = serde_json::to_string(r).expect("report serialization");
                writeln!(out, "{line}")?;
            }
        }
        ReportFormat::SummaryText => {
            let mut pass = 0usize;
            let mut fail = 0usize;
            let mut inconclusive = 0usize;
            for r in reports {
                let tag = match r.status {
                    Status::Pass => {
                        pass += 1;
                        "PASS"
                    }
                    Status::Fail => {
                        fail += 1;
                        "FAIL"
                    }
                    Status::Inconclusive => {
                        inconclusive += 1;
                        "INCONCLUSIVE"
                    }
                };
                let rt = r
                    .runtime
                    .map(|d| format!(" ({} ms)", d.as_millis()))
                    .unwrap_or_default();
                writeln!(out, "[{tag}] {}{rt}", r.claim)?;
                for (k, v) in &r.values {
                    writeln!(out, "    {k} = {v}")?;
                }
                if let Some(w) = &r.witness {
                    writeln!(out, "    witness: {w}")?;
                }
            }
            writeln!(
                out,
                "{} checks: {pass} pass, {fail} fail, {inconclusive} inconclusive",
                reports.len()
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_stream() {
        let mut json = Vec::new();
        emit(&[], ReportFormat::JsonLines, &mut json).unwrap();
        assert!(json.is_empty());
        let mut text = Vec::new();
        emit(&[], ReportFormat::SummaryText, &mut text).unwrap();
        assert_eq!(String::from_utf8(text).unwrap(), "0 checks: 0 pass, 0 fail, 0 inconclusive\n");
    }

    #[test]
    fn one_pass_record() {
        let report = CheckReport::pass("banach.eq1").with_rational("norm", &crate::qlinalg::rational(2, 1));
        let mut json = Vec::new();
        emit(&[report], ReportFormat::JsonLines, &mut json).unwrap();
        let line = String::from_utf8(json).unwrap();
        assert_eq!(line.lines().count(), 1);
        assert!(line.contains("\"status\":\"pass\""));
        assert!(line.contains("\"norm\":\"2/1\""));
    }

    #[test]
    fn summary_counts_match() {
        let reports = vec![
            CheckReport::pass("x"),
            CheckReport::fail("y", "w"),
            CheckReport::new("z", Status::Inconclusive),
        ];
        let mut text = Vec::new();
        emit(&reports, ReportFormat::SummaryText, &mut text).unwrap();
        let s = String::from_utf8(text).unwrap();
        assert!(s.contains("3 checks: 1 pass, 1 fail, 1 inconclusive"));
    }

    #[test]
    fn json_lines_deterministic() {
        let mut reports = vec![
            CheckReport::pass("b.claim").with_value("k", "1"),
            CheckReport::pass("a.claim"),
        ];
        sort_reports(&mut reports);
        let mut first = Vec::new();
        emit(&reports, ReportFormat::JsonLines, &mut first).unwrap();
        let mut second = Vec::new();
        emit(&reports, ReportFormat::JsonLines, &mut second).unwrap();
        assert_eq!(first, second);
        assert!(reports[0].claim == "a.claim");
    }
}
