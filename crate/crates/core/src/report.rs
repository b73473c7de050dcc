//! Uniform pass/fail records shared by every verification routine.

use crate::scalar::{fmt_q, Q};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), anchor: anchor.into(), pass, detail: detail.into() }
    }

    /// Passes iff the exact residual is zero.
    pub fn residual(name: impl Into<String>, anchor: &str, r: &Q) -> Self {
        let zero = Q::from_integer(0.into());
        Check::new(name, anchor, *r == zero, format!("max residual {}", fmt_q(r)))
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Collapse repeated checks with the same name into one, failing if any failed.
pub fn merge_by_name(checks: Vec<Check>) -> Vec<Check> {
    let mut out: Vec<Check> = Vec::new();
    for c in checks {
        match out.iter_mut().find(|o| o.name == c.name) {
            Some(o) => {
                if o.pass && !c.pass {
                    o.pass = false;
                    o.detail = c.detail;
                }
            }
            None => out.push(c),
        }
    }
    out
}
