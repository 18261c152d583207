//! The certificate suite: named checks over a fully built [`Context`], and the report format.

mod checks;
mod context;
pub mod emit;

use std::time::Instant;

use globset::Glob;
use serde::Serialize;
use serde_json::Value;

pub use checks::{expected_table, registry, CheckDef, CheckFn, Outcome, ROBUSTNESS_ID};
pub use context::{Context, Options};

use crate::monodromy::Convention;
use crate::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckResult {
    pub id: String,
    pub description: String,
    pub anchor: String,
    pub status: Status,
    pub data: Value,
    /// Zero unless timings were requested, so that reports stay byte-identical.
    pub elapsed_millis: u64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Conventions {
    pub e_choice: String,
    pub cube_pair_orientation: String,
    pub basis_convention: String,
    pub basis: String,
    pub one_cell_orientation: String,
}

impl Conventions {
    pub fn of(options: &Options) -> Conventions {
        Conventions {
            e_choice: if options.swap_tetrads {
                "E is the tetrad of cube 0 not containing its smallest vertex".into()
            } else {
                "E is the tetrad of cube 0 containing its smallest vertex".into()
            },
            cube_pair_orientation: "counterclockwise".into(),
            basis_convention: options.convention.to_string(),
            basis: options.convention.basis_description().into(),
            one_cell_orientation:
                "edge cells from smaller to larger vertex index; truncation cells counterclockwise around their vertex in R".into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub tool_version: String,
    pub conventions: Conventions,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = format!(
            "winger {} | convention {} {} | {}\n",
            self.tool_version, self.conventions.basis_convention, self.conventions.basis, self.conventions.e_choice
        );
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{status}  {:width$}  {}  [{}]\n", c.id, c.description, c.anchor));
        }
        out.push_str(&format!("{} checks, {} passed, {} failed\n", self.summary.total, self.summary.pass, self.summary.fail));
        out
    }
}

/// Checks whose id matches the glob (all of them for `None`).
pub fn select(filter: Option<&str>) -> Result<Vec<CheckDef>> {
    let all = registry();
    let Some(pattern) = filter else { return Ok(all) };
    let m = Glob::new(pattern).map_err(|e| Error::InvalidArgument(format!("bad pattern {pattern}: {e}")))?.compile_matcher();
    let picked: Vec<CheckDef> = all.into_iter().filter(|c| m.is_match(c.id)).collect();
    if picked.is_empty() {
        return Err(Error::InvalidArgument(format!("no check matches {pattern}")));
    }
    Ok(picked)
}

/// Runs one check; an error counts as a failure with the message recorded.
pub fn run_check(def: &CheckDef, ctx: &Context, timings: bool) -> CheckResult {
    let start = Instant::now();
    let (status, data) = match (def.run)(ctx) {
        Ok(o) => (if o.passed { Status::Pass } else { Status::Fail }, o.data),
        Err(e) => (Status::Fail, serde_json::json!({ "error": e.to_string() })),
    };
    CheckResult {
        id: def.id.into(),
        description: def.description.into(),
        anchor: def.anchor.into(),
        status,
        data,
        elapsed_millis: if timings { start.elapsed().as_millis() as u64 } else { 0 },
    }
}

pub fn run(ctx: &Context, defs: &[CheckDef], timings: bool) -> Report {
    let checks: Vec<CheckResult> = defs.iter().map(|d| run_check(d, ctx, timings)).collect();
    let pass = checks.iter().filter(|c| c.status == Status::Pass).count();
    Report {
        tool_version: TOOL_VERSION.into(),
        conventions: Conventions::of(&ctx.options),
        summary: Summary { total: checks.len(), pass, fail: checks.len() - pass },
        checks,
    }
}

/// Builds the context and runs the selected checks.
pub fn verify(options: Options, filter: Option<&str>, timings: bool) -> Result<Report> {
    let defs = select(filter)?;
    let ctx = Context::build(options)?;
    Ok(run(&ctx, &defs, timings))
}

impl Options {
    pub fn with_convention(convention: Convention) -> Options {
        Options { convention, ..Options::default() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glob_filter() {
        let m = select(Some("monodromy.*")).unwrap();
        assert!(!m.is_empty());
        assert!(m.iter().all(|c| c.id.starts_with("monodromy.")));
        assert_eq!(select(Some("surface.ddzero")).unwrap().len(), 1);
        assert!(select(Some("nothing.*")).is_err());
    }

    #[test]
    fn fault_is_detected() {
        let opts = Options { inject_fault: true, ..Options::default() };
        let r = verify(opts, Some("surface.ddzero"), false).unwrap();
        assert_eq!(r.checks[0].status, Status::Fail);
        assert!(!r.all_passed());
    }
}
