//! Serializable verification reports.

use serde::{Deserialize, Serialize};

use crate::coeff::fmt_rational;
use crate::ideal::{MembershipCertificate, MembershipVerdict, NonMembership};
use crate::ncpoly::{Alphabet, NcPoly};
use crate::parser::print_expr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// FAIL dominates INCONCLUSIVE, which dominates PASS.
    pub fn combine<I: IntoIterator<Item = Verdict>>(it: I) -> Verdict {
        let mut out = Verdict::Pass;
        for v in it {
            match v {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Pass => {}
            }
        }
        out
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }

    /// Process exit code: 0 pass, 1 fail, 2 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTermJson {
    pub left: String,
    pub relation: usize,
    pub right: String,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub target: String,
    pub relations: Vec<String>,
    pub terms: Vec<CertificateTermJson>,
}

impl CertificateJson {
    pub fn new(cert: &MembershipCertificate, target: &NcPoly, relations: &[NcPoly], alphabet: &Alphabet) -> Self {
        let names = alphabet.params();
        CertificateJson {
            target: print_expr(target, alphabet),
            relations: relations.iter().map(|r| print_expr(r, alphabet)).collect(),
            terms: cert
                .terms
                .iter()
                .map(|t| CertificateTermJson {
                    left: t.left.fmt_with(alphabet),
                    relation: t.relation,
                    right: t.right.fmt_with(alphabet),
                    coefficient: t.coefficient.fmt_with(names),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub name: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
}

impl Step {
    pub fn new(name: impl Into<String>, verdict: Verdict) -> Self {
        Step {
            name: name.into(),
            verdict,
            detail: None,
            certificate: None,
        }
    }

    pub fn check(name: impl Into<String>, ok: bool) -> Self {
        Step::new(name, Verdict::from_bool(ok))
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

/// Human-readable description of a membership outcome.
pub fn describe_membership(v: &MembershipVerdict, alphabet: &Alphabet) -> String {
    match v {
        MembershipVerdict::Member(c) => {
            format!(
                "member, {} certificate terms, wrapper length {}",
                c.len(),
                c.wrapper_len()
            )
        }
        MembershipVerdict::NonMember(NonMembership::Graded { degree }) => {
            format!("not a member: outside the degree-{degree} slice of the ideal")
        }
        MembershipVerdict::NonMember(NonMembership::Character { point }) => {
            let pts: Vec<String> = point
                .iter()
                .enumerate()
                .map(|(i, v)| format!("{}={}", alphabet.generators()[i], fmt_rational(v)))
                .collect();
            format!(
                "not a member: the character {} kills every relation but not the target",
                pts.join(", ")
            )
        }
        MembershipVerdict::Inconclusive { wrapper_len } => {
            format!("undecided at wrapper length {wrapper_len}")
        }
    }
}

pub fn membership_verdict(v: &MembershipVerdict) -> Verdict {
    match v {
        MembershipVerdict::Member(_) => Verdict::Pass,
        MembershipVerdict::NonMember(_) => Verdict::Fail,
        MembershipVerdict::Inconclusive { .. } => Verdict::Inconclusive,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub lambda: String,
    pub equation: String,
    pub discriminant: String,
    pub j: Option<String>,
    pub singular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub mode: String,
    pub b: Option<i64>,
    pub wrapper_len: usize,
    pub verdict: Verdict,
    pub steps: Vec<Step>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveJson>,
    /// Extra checks that do not affect the verdict.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<Step>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let b = match self.b {
            Some(b) => format!("b = {b}"),
            None if self.mode == "symbolic" => "symbolic b".to_string(),
            None => self.mode.clone(),
        };
        out.push_str(&format!(
            "{} ({}, wrapper length {}): {}\n",
            self.claim,
            b,
            self.wrapper_len,
            self.verdict.as_str()
        ));
        let line = |out: &mut String, s: &Step| {
            out.push_str(&format!("  [{}] {}", s.verdict.as_str(), s.name));
            if let Some(d) = &s.detail {
                out.push_str(&format!(": {d}"));
            }
            out.push('\n');
            if let Some(c) = &s.certificate {
                out.push_str(&format!("      {} =\n", c.target));
                for t in &c.terms {
                    out.push_str(&format!(
                        "        + ({}) * {} * [{}] * {}\n",
                        t.coefficient, t.left, c.relations[t.relation], t.right
                    ));
                }
            }
        };
        for s in &self.steps {
            line(&mut out, s);
        }
        if let Some(c) = &self.curve {
            out.push_str(&format!("  curve: {} = 0, lambda = {}\n", c.equation, c.lambda));
            out.push_str(&format!("    discriminant = {}\n", c.discriminant));
            match &c.j {
                Some(j) => out.push_str(&format!("    j = {j}\n")),
                None => out.push_str("    j undefined\n"),
            }
            out.push_str(&format!(
                "    {}\n",
                if c.singular { "SINGULAR" } else { "non-singular" }
            ));
        }
        if !self.observations.is_empty() {
            out.push_str("  observations (not part of the verdict):\n");
            for s in &self.observations {
                out.push_str("  ");
                line(&mut out, s);
            }
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("  elapsed: {ms} ms\n"));
        }
        out
    }
}
