//! Named checks that recompute structural facts about `𝒰_ℤ` and the
//! subalgebras of `𝒰_r`, each producing a self-contained JSON report.
//!
//! A report is deterministic given its configuration and the engine version,
//! except for `wall_ms`, which is zero when timing is switched off.

mod dump;
mod expect;
mod lie;
mod roots;
mod spans;
mod torus;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::pbw::Algebra;
use crate::rootsys::{parse_word, CartanType, Family};
use crate::subalg::DEFAULT_BUDGET;

pub use dump::{dump, Artifact};
pub use expect::{DimensionEntry, Expectations, MembershipEntry};
pub use torus::{check_torus_containment, check_triangular};

/// Environment variable overriding the closure budget.
pub const BUDGET_ENV: &str = "HYPERALG_BUDGET";

pub const VERSION: &str = concat!("hyperalg ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CheckId {
    #[serde(rename = "prop3.2-shape")]
    CommutatorShape,
    #[serde(rename = "prop4.6-equality")]
    Equality,
    #[serde(rename = "prop4.7-membership")]
    Membership,
    #[serde(rename = "prop4.8-generates")]
    Generates,
    #[serde(rename = "prop4.9-g2")]
    G2Membership,
    #[serde(rename = "thm4.11-basis")]
    Basis,
    #[serde(rename = "thm4.11-minimal")]
    Minimal,
    #[serde(rename = "thm4.13-minus")]
    Minus,
    #[serde(rename = "prop4.14-torus")]
    Torus,
    #[serde(rename = "thm4.16/17-triangular")]
    Triangular,
    #[serde(rename = "g2-closed-forms")]
    G2ClosedForms,
    #[serde(rename = "root-lemmas")]
    RootLemmas,
}

impl CheckId {
    pub const ALL: [CheckId; 12] = [
        CheckId::CommutatorShape,
        CheckId::Equality,
        CheckId::Membership,
        CheckId::Generates,
        CheckId::G2Membership,
        CheckId::Basis,
        CheckId::Minimal,
        CheckId::Minus,
        CheckId::Torus,
        CheckId::Triangular,
        CheckId::G2ClosedForms,
        CheckId::RootLemmas,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::CommutatorShape => "prop3.2-shape",
            CheckId::Equality => "prop4.6-equality",
            CheckId::Membership => "prop4.7-membership",
            CheckId::Generates => "prop4.8-generates",
            CheckId::G2Membership => "prop4.9-g2",
            CheckId::Basis => "thm4.11-basis",
            CheckId::Minimal => "thm4.11-minimal",
            CheckId::Minus => "thm4.13-minus",
            CheckId::Torus => "prop4.14-torus",
            CheckId::Triangular => "thm4.16/17-triangular",
            CheckId::G2ClosedForms => "g2-closed-forms",
            CheckId::RootLemmas => "root-lemmas",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<CheckId> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown check id {:?}", s)))
    }
}

fn default_p() -> u32 {
    2
}

fn default_r() -> u32 {
    1
}

fn default_timing() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

fn is_zero(x: &u64) -> bool {
    *x == 0
}

/// Everything needed to re-run a check. Echoed verbatim in its report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    pub check: CheckId,
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    #[serde(default = "default_p")]
    pub p: u32,
    #[serde(default = "default_r")]
    pub r: u32,
    /// Reduced word for the convex order, 1-based, e.g. `"212121"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    /// Cap on closure dimensions; falls back to `HYPERALG_BUDGET`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    /// Random samples for checks that do not enumerate exhaustively.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    /// When false, `wall_ms` is reported as 0 so reports compare byte for byte.
    #[serde(default = "default_timing", skip_serializing_if = "is_true")]
    pub timing: bool,
}

impl CheckConfig {
    pub fn new(check: CheckId, cartan_type: CartanType, p: u32, r: u32) -> CheckConfig {
        CheckConfig {
            check,
            family: cartan_type.family,
            rank: cartan_type.rank,
            p,
            r,
            word: None,
            budget: None,
            samples: None,
            seed: 0,
            out: None,
            timing: true,
        }
    }

    pub fn from_value(v: Value) -> Result<CheckConfig> {
        serde_json::from_value(v).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn cartan_type(&self) -> Result<CartanType> {
        CartanType::new(self.family, self.rank)
    }

    /// The configured budget, else `HYPERALG_BUDGET`, else the default.
    pub fn effective_budget(&self) -> Result<usize> {
        if let Some(b) = self.budget {
            return Ok(b);
        }
        match std::env::var(BUDGET_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{} must be a non-negative integer, got {:?}", BUDGET_ENV, s))),
            Err(_) => Ok(DEFAULT_BUDGET),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub expected: Value,
    pub expected_provenance: String,
    pub actual: Value,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: CheckConfig,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub assertions: Vec<Assertion>,
    pub wall_ms: u64,
    pub version: String,
}

impl Report {
    /// 0 on pass, 1 on a mathematical failure, 2 when the budget ran out.
    pub fn exit_code(&self) -> i32 {
        match (&self.reason, self.pass) {
            (Some(_), _) => 2,
            (None, true) => 0,
            (None, false) => 1,
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn failed(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.ok)
    }
}

/// Shared state while a check runs.
pub(crate) struct Ctx {
    pub cfg: CheckConfig,
    pub alg: Arc<Algebra>,
    pub budget: usize,
    pub expect: &'static Expectations,
    pub assertions: Vec<Assertion>,
}

impl Ctx {
    pub fn record<E: Serialize, A: Serialize>(
        &mut self,
        name: impl Into<String>,
        expected: E,
        provenance: impl Into<String>,
        actual: A,
    ) -> bool {
        let expected = serde_json::to_value(expected).expect("serializable");
        let actual = serde_json::to_value(actual).expect("serializable");
        let ok = expected == actual;
        self.assertions.push(Assertion {
            name: name.into(),
            expected,
            expected_provenance: provenance.into(),
            actual,
            ok,
        });
        ok
    }

    /// Records an assertion whose outcome is not plain equality.
    pub fn record_if<E: Serialize, A: Serialize>(
        &mut self,
        name: impl Into<String>,
        expected: E,
        provenance: impl Into<String>,
        actual: A,
        ok: bool,
    ) -> bool {
        self.assertions.push(Assertion {
            name: name.into(),
            expected: serde_json::to_value(expected).expect("serializable"),
            expected_provenance: provenance.into(),
            actual: serde_json::to_value(actual).expect("serializable"),
            ok,
        });
        ok
    }

    /// Records a counted family of cases that must produce no violations.
    pub fn record_cases(&mut self, name: &str, cases: usize, violations: &[String], provenance: &str) -> bool {
        let actual = match violations.first() {
            None => serde_json::json!(0),
            Some(first) => serde_json::json!({ "count": violations.len(), "first": first }),
        };
        let ok = self.record(format!("{} ({} cases)", name, cases), 0, provenance, actual);
        if cases == 0 {
            let last = self.assertions.last_mut().expect("just pushed");
            last.ok = false;
            last.actual = serde_json::json!("no cases");
            return false;
        }
        ok
    }

    pub fn p(&self) -> u32 {
        self.cfg.p
    }

    pub fn r(&self) -> u32 {
        self.cfg.r
    }

    pub fn family(&self) -> Family {
        self.cfg.family
    }

    pub fn unsupported(&self, why: &str) -> Error {
        Error::Config(format!("{} does not apply to {} with p = {}, r = {}: {}", self.cfg.check, self.alg.cartan_type(), self.cfg.p, self.cfg.r, why))
    }
}

/// Runs the configured check.
///
/// Configuration problems are returned as errors. Running out of budget
/// yields a failing report whose `reason` starts with `"budget"`.
pub fn run_check(cfg: &CheckConfig) -> Result<Report> {
    let start = Instant::now();
    let cartan_type = cfg.cartan_type()?;
    if cfg.r == 0 {
        return Err(Error::Config("r must be at least 1".into()));
    }
    if !crate::rootsys::is_prime(cfg.p) || cfg.p > 65521 {
        return Err(Error::Config(format!("p = {} is not a supported prime", cfg.p)));
    }
    let word = cfg.word.as_deref().map(parse_word).transpose()?;
    let alg = Algebra::new(cartan_type, word.as_deref())?;
    let mut ctx = Ctx {
        cfg: cfg.clone(),
        alg,
        budget: cfg.effective_budget()?,
        expect: Expectations::builtin(),
        assertions: Vec::new(),
    };
    let outcome = match cfg.check {
        CheckId::CommutatorShape => lie::commutator_shapes(&mut ctx),
        CheckId::G2ClosedForms => lie::g2_closed_forms(&mut ctx),
        CheckId::RootLemmas => roots::root_lemmas(&mut ctx),
        CheckId::Equality => spans::equality(&mut ctx),
        CheckId::Membership => spans::membership(&mut ctx),
        CheckId::Generates => spans::generates(&mut ctx),
        CheckId::G2Membership => spans::g2_membership(&mut ctx),
        CheckId::Basis => spans::basis(&mut ctx),
        CheckId::Minimal => spans::minimal(&mut ctx),
        CheckId::Minus => spans::minus(&mut ctx),
        CheckId::Torus => torus::torus(&mut ctx),
        CheckId::Triangular => torus::triangular(&mut ctx),
    };
    let reason = match outcome {
        Ok(()) => None,
        Err(Error::Budget(m)) => Some(format!("budget: {}", m)),
        Err(e) => return Err(e),
    };
    let pass = reason.is_none() && !ctx.assertions.is_empty() && ctx.assertions.iter().all(|a| a.ok);
    let wall_ms = if cfg.timing { start.elapsed().as_millis() as u64 } else { 0 };
    Ok(Report { config: cfg.clone(), pass, reason, assertions: ctx.assertions, wall_ms, version: VERSION.to_string() })
}

#[cfg(test)]
mod tests;
