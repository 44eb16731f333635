//! Named checks with a verdict, shared by the decomposition audits, the
//! certificates and the verification suites.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// Recorded for the reader; not a condition anything depends on.
    Noted,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Noted => "NOTED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AuditLine {
    pub subject: String,
    pub observed: String,
    pub expected: String,
    pub verdict: Verdict,
}

impl AuditLine {
    /// Passes iff the renderings of `observed` and `expected` agree.
    pub fn compare(
        subject: impl Into<String>,
        observed: impl fmt::Display,
        expected: impl fmt::Display,
    ) -> Self {
        let observed = observed.to_string();
        let expected = expected.to_string();
        let verdict = if observed == expected {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            subject: subject.into(),
            observed,
            expected,
            verdict,
        }
    }

    pub fn predicate(
        subject: impl Into<String>,
        observed: impl fmt::Display,
        expected: impl Into<String>,
        holds: bool,
    ) -> Self {
        Self {
            subject: subject.into(),
            observed: observed.to_string(),
            expected: expected.into(),
            verdict: if holds { Verdict::Pass } else { Verdict::Fail },
        }
    }

    pub fn noted(subject: impl Into<String>, observed: impl fmt::Display) -> Self {
        Self {
            subject: subject.into(),
            observed: observed.to_string(),
            expected: String::new(),
            verdict: Verdict::Noted,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

impl fmt::Display for AuditLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::Noted => write!(f, "[{}] {}: {}", self.verdict, self.subject, self.observed),
            _ => write!(
                f,
                "[{}] {}: observed {}, expected {}",
                self.verdict, self.subject, self.observed, self.expected
            ),
        }
    }
}

/// First failing line, if any.
pub fn first_failure<'a>(lines: impl IntoIterator<Item = &'a AuditLine>) -> Option<&'a AuditLine> {
    lines.into_iter().find(|l| !l.passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        assert_eq!(AuditLine::compare("g", 3, "3").verdict, Verdict::Pass);
        assert_eq!(AuditLine::compare("g", 3, 4).verdict, Verdict::Fail);
        assert!(AuditLine::noted("x", "y").passed());
        assert!(!AuditLine::predicate("x", 1, "even", false).passed());
        let lines = [AuditLine::compare("a", 1, 1), AuditLine::compare("b", 1, 2)];
        assert_eq!(first_failure(&lines).unwrap().subject, "b");
        assert_eq!(lines[1].to_string(), "[FAIL] b: observed 1, expected 2");
    }
}
