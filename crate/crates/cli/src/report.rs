//! The JSON report every command prints, and the exit-code mapping.

use serde::Serialize;
use serde_json::Value;

use fincat::{Exhausted, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    LawFailure,
    AxiomFailure,
    BudgetExhausted,
    ParseError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::LawFailure => 1,
            Status::AxiomFailure => 2,
            Status::BudgetExhausted => 3,
            Status::ParseError => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LawKind {
    /// Input hypotheses: category axioms, multiplicative-system axioms, d² = 0.
    Axiom,
    /// Properties the command checks.
    Law,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Law {
    pub law: String,
    pub kind: LawKind,
    pub pass: bool,
    pub witnesses: Vec<Violation>,
}

impl Law {
    pub fn check(name: impl Into<String>, pass: bool, witnesses: Vec<Violation>) -> Self {
        Law {
            law: name.into(),
            kind: LawKind::Law,
            pass,
            witnesses,
        }
    }

    pub fn axiom(name: impl Into<String>, pass: bool, witnesses: Vec<Violation>) -> Self {
        Law {
            law: name.into(),
            kind: LawKind::Axiom,
            pass,
            witnesses,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Echo {
    pub verb: String,
    pub args: Vec<String>,
    pub budget: u64,
    pub tie_break: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorInfo {
    pub message: String,
    /// Key path into the offending file, for parse errors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Violation>,
}

/// Enumeration steps charged to the budget; deterministic, unlike wall time.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub steps: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: Echo,
    pub status: Status,
    pub exit_code: i32,
    pub laws: Vec<Law>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub timing: Timing,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Why a command stopped before producing its laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Parse {
        message: String,
        path: Option<String>,
    },
    Axiom {
        message: String,
        witnesses: Vec<Violation>,
    },
    Budget {
        limit: u64,
    },
    Law {
        law: String,
        witnesses: Vec<Violation>,
    },
}

impl Failure {
    pub fn parse(message: impl Into<String>, path: Option<String>) -> Self {
        Failure::Parse {
            message: message.into(),
            path,
        }
    }

    pub fn axiom(message: impl Into<String>) -> Self {
        Failure::Axiom {
            message: message.into(),
            witnesses: Vec::new(),
        }
    }

    pub fn status(&self) -> Status {
        match self {
            Failure::Parse { .. } => Status::ParseError,
            Failure::Axiom { .. } => Status::AxiomFailure,
            Failure::Budget { .. } => Status::BudgetExhausted,
            Failure::Law { .. } => Status::LawFailure,
        }
    }

    pub fn info(&self) -> ErrorInfo {
        match self {
            Failure::Parse { message, path } => ErrorInfo {
                message: message.clone(),
                path: path.clone(),
                witnesses: vec![],
            },
            Failure::Axiom { message, witnesses } => ErrorInfo {
                message: message.clone(),
                path: None,
                witnesses: witnesses.clone(),
            },
            Failure::Budget { limit } => ErrorInfo {
                message: format!("step budget of {limit} exhausted"),
                path: None,
                witnesses: vec![],
            },
            Failure::Law { law, witnesses } => ErrorInfo {
                message: format!("{law} failed"),
                path: None,
                witnesses: witnesses.clone(),
            },
        }
    }
}

impl From<Exhausted> for Failure {
    fn from(e: Exhausted) -> Self {
        Failure::Budget { limit: e.limit }
    }
}

impl From<Vec<Violation>> for Failure {
    fn from(v: Vec<Violation>) -> Self {
        Failure::Axiom {
            message: "invalid input".into(),
            witnesses: v,
        }
    }
}

impl From<multsys::LocError> for Failure {
    fn from(e: multsys::LocError) -> Self {
        use multsys::LocError::*;
        match e {
            FormulaUnsupported { ref missing, .. } => Failure::Axiom {
                message: e.to_string(),
                witnesses: vec![Violation::new("missing-axioms", missing.clone())],
            },
            TooLarge { bound } => Failure::Budget {
                limit: bound as u64,
            },
            Inconsistent(v) => Failure::Law {
                law: "internal-consistency".into(),
                witnesses: v,
            },
        }
    }
}

impl From<deligne::DeligneError> for Failure {
    fn from(e: deligne::DeligneError) -> Self {
        use deligne::DeligneError::*;
        match e {
            SideUnsupported { ref missing, .. } => Failure::Axiom {
                message: e.to_string(),
                witnesses: vec![Violation::new("missing-axioms", missing.clone())],
            },
            CompletionNotFound(ref w) => Failure::Axiom {
                message: "square completion failed".into(),
                witnesses: vec![Violation::new("completion", w.clone())],
            },
            Loc(l) => l.into(),
            Exhausted(x) => x.into(),
            Invalid(v) => v.into(),
        }
    }
}

fn unsolvable(u: &trider::Unsolvable) -> Violation {
    Violation::new(
        "unsolvable",
        vec![
            u.what.clone(),
            format!("unknowns={}", u.unknowns),
            format!("equations={}", u.equations),
            format!("rank={}", u.rank),
            format!("augmented_rank={}", u.augmented_rank),
        ],
    )
}

impl From<trider::TriError> for Failure {
    fn from(e: trider::TriError) -> Self {
        use trider::TriError::*;
        match e {
            Ring(m) | Malformed(m) => Failure::parse(m, None),
            Precondition(m) => Failure::axiom(m),
            NoRetraction(u) => Failure::Law {
                law: "retraction".into(),
                witnesses: vec![unsolvable(&u)],
            },
            ConstructionFailed(u) => Failure::Law {
                law: "construction".into(),
                witnesses: vec![unsolvable(&u)],
            },
            Exhausted(x) => x.into(),
            Internal(m) => Failure::Law {
                law: "internal-assertion".into(),
                witnesses: vec![Violation::new("assertion", vec![m])],
            },
        }
    }
}

/// Fold laws and an optional early failure into a status.
pub fn status_of(laws: &[Law], failure: Option<&Failure>) -> Status {
    if let Some(f) = failure {
        return f.status();
    }
    if laws.iter().any(|l| !l.pass && l.kind == LawKind::Axiom) {
        Status::AxiomFailure
    } else if laws.iter().any(|l| !l.pass) {
        Status::LawFailure
    } else {
        Status::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_outrank_laws() {
        let ok = Law::check("a", true, vec![]);
        let bad_law = Law::check("b", false, vec![]);
        let bad_axiom = Law::axiom("c", false, vec![]);
        assert_eq!(status_of(std::slice::from_ref(&ok), None), Status::Pass);
        assert_eq!(
            status_of(&[ok.clone(), bad_law.clone()], None),
            Status::LawFailure
        );
        assert_eq!(status_of(&[bad_law, bad_axiom], None), Status::AxiomFailure);
        assert_eq!(
            status_of(&[ok], Some(&Failure::Budget { limit: 1 })),
            Status::BudgetExhausted
        );
    }

    #[test]
    fn exit_codes() {
        let all = [
            Status::Pass,
            Status::LawFailure,
            Status::AxiomFailure,
            Status::BudgetExhausted,
            Status::ParseError,
        ];
        assert_eq!(all.map(Status::exit_code), [0, 1, 2, 3, 4]);
    }
}
