//! Topological obstructions to torsion-free G2-structures on compact 7-manifolds.
//!
//! The input describes spaces by Betti numbers (plus signature and parity of
//! the intersection form for 4-manifolds), builds new ones by products and
//! connected sums, and attaches Massey evidence computed on a dga model of a
//! factor. Everything the report states is recomputed from these data.
//!
//! Grammar, one statement per line; lines starting with `#` are comments:
//!
//! ```text
//! space <name> betti <b0> <b1> … <bn> [signature <int>] [even|odd]
//! sum <name> = <a> # <b>
//! product <name> = <a> x <b>
//! target <name>
//! four-manifold <name>
//! massey <space> example <builtin> classes <a>;<b>;<c>
//! massey <space> ce-file <path> classes <a>;<b>;<c>
//! ```

use super::parse::{parse_ce, parse_classes};
use super::{massey_triple, Dga, DgaError, MasseyResult};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// `b^k(W × L) = Σ_i b^i(W) b^{k−i}(L)`.
pub fn kunneth_betti(bw: &[usize], bl: &[usize]) -> Vec<usize> {
    if bw.is_empty() || bl.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; bw.len() + bl.len() - 1];
    for (i, x) in bw.iter().enumerate() {
        for (j, y) in bl.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Betti numbers of `M # N` for closed connected `n`-manifolds.
pub fn connected_sum_betti(bm: &[usize], bn: &[usize]) -> Option<Vec<usize>> {
    if bm.len() != bn.len() || bm.len() < 2 {
        return None;
    }
    let n = bm.len() - 1;
    Some((0..=n).map(|k| if k == 0 || k == n { 1 } else { bm[k] + bn[k] }).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VanishingRule {
    /// Only `d : A^{k−1} → A^k` is nonzero in a quasi-isomorphic model.
    SingleDifferential { k: usize },
    /// Compact manifold with holonomy exactly G2 (so `b¹ = 0`).
    FullHolonomy,
}

/// Whether a defined Massey product of classes of these degrees must vanish.
pub fn almost_formal_vanishing_filter(p: usize, q: usize, r: usize, rule: VanishingRule) -> bool {
    match rule {
        VanishingRule::SingleDifferential { k } => p + q != k && q + r != k,
        VanishingRule::FullHolonomy => (p, q, r) != (2, 2, 2),
    }
}

#[derive(Debug, Error)]
pub enum ObstructionError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown space `{0}`")]
    UnknownSpace(String),
    #[error("no target declared")]
    NoTarget,
    #[error("cannot read {path}: {err}")]
    Io { path: String, err: String },
    #[error("massey model for `{space}`: {err}")]
    Model { space: String, err: DgaError },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Origin {
    Given,
    Product(String, String),
    ConnectedSum(String, String),
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceData {
    pub name: String,
    pub betti: Vec<usize>,
    pub signature: Option<i64>,
    pub even: Option<bool>,
    pub origin: Origin,
}

#[derive(Clone, Debug, Serialize)]
pub enum ModelSource {
    Example(String),
    CeFile(PathBuf),
}

#[derive(Clone, Debug, Serialize)]
pub struct MasseySpec {
    pub space: String,
    pub source: ModelSource,
    pub classes: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ObstructionInput {
    pub spaces: BTreeMap<String, SpaceData>,
    pub target: Option<String>,
    pub four_manifold: Option<String>,
    pub massey: Vec<MasseySpec>,
}

fn perr(line: usize, msg: impl Into<String>) -> ObstructionError {
    ObstructionError::Parse { line, msg: msg.into() }
}

impl ObstructionInput {
    /// `base` resolves relative `ce-file` paths.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self, ObstructionError> {
        let mut inp = ObstructionInput::default();
        for (ln, raw) in text.lines().enumerate() {
            let line = ln + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = body.split_whitespace().collect();
            match toks[0] {
                "space" => inp.parse_space(&toks, line)?,
                "sum" | "product" => {
                    let op = if toks[0] == "sum" { "#" } else { "x" };
                    if toks.len() != 6 || toks[2] != "=" || toks[4] != op {
                        return Err(perr(line, format!("expected `{} <name> = <a> {op} <b>`", toks[0])));
                    }
                    let (a, b) = (inp.get(toks[3])?.clone(), inp.get(toks[5])?.clone());
                    let data = if op == "x" {
                        SpaceData {
                            name: toks[1].into(),
                            betti: kunneth_betti(&a.betti, &b.betti),
                            signature: None,
                            even: None,
                            origin: Origin::Product(a.name, b.name),
                        }
                    } else {
                        let betti = connected_sum_betti(&a.betti, &b.betti).ok_or_else(|| perr(line, "connected sum needs equal dimensions"))?;
                        SpaceData {
                            name: toks[1].into(),
                            betti,
                            signature: a.signature.zip(b.signature).map(|(x, y)| x + y),
                            even: a.even.zip(b.even).map(|(x, y)| x && y),
                            origin: Origin::ConnectedSum(a.name, b.name),
                        }
                    };
                    inp.insert(data, line)?;
                }
                "target" | "four-manifold" => {
                    if toks.len() != 2 {
                        return Err(perr(line, format!("expected `{} <name>`", toks[0])));
                    }
                    inp.get(toks[1])?;
                    if toks[0] == "target" {
                        inp.target = Some(toks[1].into());
                    } else {
                        inp.four_manifold = Some(toks[1].into());
                    }
                }
                "massey" => {
                    if toks.len() < 6 || toks[4] != "classes" {
                        return Err(perr(line, "expected `massey <space> example|ce-file <arg> classes <a;b;c>`"));
                    }
                    inp.get(toks[1])?;
                    let source = match toks[2] {
                        "example" => ModelSource::Example(toks[3].into()),
                        "ce-file" => {
                            let p = PathBuf::from(toks[3]);
                            ModelSource::CeFile(match base {
                                Some(b) if p.is_relative() => b.join(p),
                                _ => p,
                            })
                        }
                        other => return Err(perr(line, format!("unknown model source `{other}`"))),
                    };
                    inp.massey.push(MasseySpec { space: toks[1].into(), source, classes: toks[5..].join(" ") });
                }
                other => return Err(perr(line, format!("unknown keyword `{other}`"))),
            }
        }
        if inp.target.is_none() {
            return Err(ObstructionError::NoTarget);
        }
        Ok(inp)
    }

    fn parse_space(&mut self, toks: &[&str], line: usize) -> Result<(), ObstructionError> {
        if toks.len() < 4 || toks[2] != "betti" {
            return Err(perr(line, "expected `space <name> betti <b0> … [signature <s>] [even|odd]`"));
        }
        let mut i = 3;
        let mut betti = Vec::new();
        while i < toks.len() {
            match toks[i].parse::<usize>() {
                Ok(b) => betti.push(b),
                Err(_) => break,
            }
            i += 1;
        }
        if betti.is_empty() {
            return Err(perr(line, "no Betti numbers"));
        }
        let (mut signature, mut even) = (None, None);
        while i < toks.len() {
            match toks[i] {
                "signature" => {
                    let v = toks.get(i + 1).and_then(|s| s.parse::<i64>().ok()).ok_or_else(|| perr(line, "signature needs an integer"))?;
                    signature = Some(v);
                    i += 2;
                }
                "even" | "odd" => {
                    even = Some(toks[i] == "even");
                    i += 1;
                }
                other => return Err(perr(line, format!("unexpected `{other}`"))),
            }
        }
        self.insert(SpaceData { name: toks[1].into(), betti, signature, even, origin: Origin::Given }, line)
    }

    fn insert(&mut self, d: SpaceData, line: usize) -> Result<(), ObstructionError> {
        if self.spaces.contains_key(&d.name) {
            return Err(perr(line, format!("space `{}` defined twice", d.name)));
        }
        self.spaces.insert(d.name.clone(), d);
        Ok(())
    }

    fn get(&self, name: &str) -> Result<&SpaceData, ObstructionError> {
        self.spaces.get(name).ok_or_else(|| ObstructionError::UnknownSpace(name.into()))
    }

    /// Whether `factor` is a product factor of `space` (possibly iterated).
    pub fn is_factor(&self, factor: &str, space: &str) -> bool {
        if factor == space {
            return true;
        }
        match self.spaces.get(space).map(|s| &s.origin) {
            Some(Origin::Product(a, b)) => self.is_factor(factor, a) || self.is_factor(factor, b),
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionCheck {
    pub name: String,
    pub category: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MasseyEvidence {
    pub space: String,
    pub model_betti: Vec<usize>,
    pub declared_betti: Vec<usize>,
    pub transported_to_target: bool,
    pub result: MasseyResult,
    /// Nonvanishing on the target although the degree filter forces vanishing.
    pub violates_filter: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub target: String,
    pub betti: Vec<usize>,
    pub checks: Vec<ObstructionCheck>,
    pub massey: Vec<MasseyEvidence>,
    pub verdict: &'static str,
    pub conclusion: &'static str,
}

impl ObstructionReport {
    pub fn status_of(&self, name: &str) -> Option<Status> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.status)
    }
}

fn st(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn load_model(spec: &MasseySpec) -> Result<Dga, ObstructionError> {
    let model = |err| ObstructionError::Model { space: spec.space.clone(), err };
    match &spec.source {
        ModelSource::Example(name) => super::examples::builtin_model(name).ok_or_else(|| model(DgaError::Parse { line: 0, msg: format!("unknown built-in model `{name}`") })),
        ModelSource::CeFile(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| ObstructionError::Io { path: path.display().to_string(), err: e.to_string() })?;
            parse_ce(&text).map_err(model)
        }
    }
}

pub fn obstruction_check(input: &ObstructionInput) -> Result<ObstructionReport, ObstructionError> {
    let target = input.target.clone().ok_or(ObstructionError::NoTarget)?;
    let m = input.get(&target)?;
    let b = |k: usize| m.betti.get(k).copied().unwrap_or(0);
    let mut checks = Vec::new();
    let dim_ok = m.betti.len() == 8;
    checks.push(ObstructionCheck {
        name: "dimension 7".into(),
        category: "input",
        status: st(dim_ok),
        detail: format!("{} Betti numbers given", m.betti.len()),
    });
    checks.push(ObstructionCheck {
        name: "b3 >= b1 + b0".into(),
        category: "classical",
        status: st(b(3) >= b(1) + b(0)),
        detail: format!("b3 = {}, b1 + b0 = {}", b(3), b(1) + b(0)),
    });
    checks.push(ObstructionCheck { name: "b2 >= b1".into(), category: "classical", status: st(b(2) >= b(1)), detail: format!("b2 = {}, b1 = {}", b(2), b(1)) });
    checks.push(ObstructionCheck {
        name: "b1 in {0,1,3,7}".into(),
        category: "classical",
        status: st([0, 1, 3, 7].contains(&b(1))),
        detail: format!("b1 = {}", b(1)),
    });
    let four = input.four_manifold.as_ref().map(|n| input.get(n)).transpose()?;
    let four_factor = input.four_manifold.as_ref().is_some_and(|n| input.is_factor(n, &target));
    let (p1, p1_detail) = if b(1) == 7 {
        (Status::Pass, "b1 = 7 forces a flat metric, where p1 is not required to be nonzero".to_string())
    } else {
        match four.and_then(|f| f.signature.map(|s| (f, s))) {
            Some((f, s)) if s != 0 && four_factor => (Status::Pass, format!("sigma({}) = {s} != 0, so p1 of the factor and hence of the target is nonzero", f.name)),
            Some((f, s)) => (Status::Undetermined, format!("sigma({}) = {s}; p1 not decided", f.name)),
            None => (Status::Undetermined, "no four-manifold factor with a signature given".into()),
        }
    };
    checks.push(ObstructionCheck { name: "p1 != 0 (non-flat case)".into(), category: "classical", status: p1, detail: p1_detail });
    let (w2, w2_detail) = match four.and_then(|f| f.even.map(|e| (f, e))) {
        Some((f, e)) if four_factor => (st(e), format!("intersection form of {} is {}", f.name, if e { "even" } else { "odd" })),
        Some((f, _)) => (Status::Undetermined, format!("{} is not a product factor of {target}", f.name)),
        None => (Status::Undetermined, "no four-manifold parity given".into()),
    };
    checks.push(ObstructionCheck { name: "w2 = 0 (G2-structures exist)".into(), category: "spin", status: w2, detail: w2_detail });

    let rule = if b(1) == 0 { VanishingRule::FullHolonomy } else { VanishingRule::SingleDifferential { k: 4 } };
    let mut massey = Vec::new();
    for spec in &input.massey {
        let dga = load_model(spec)?;
        let model = |err| ObstructionError::Model { space: spec.space.clone(), err };
        let [a, bb, c] = parse_classes(&dga, &spec.classes).map_err(model)?;
        let result = massey_triple(&dga, &a, &bb, &c).map_err(model)?;
        let declared = input.get(&spec.space)?.betti.clone();
        let model_betti = dga.betti();
        let transported = input.is_factor(&spec.space, &target) && model_betti == declared;
        let [p, q, r] = result.degrees;
        // VanishingRule::SingleDifferential at k = 4 holds on every compact torsion-free G2 manifold
        let forced = almost_formal_vanishing_filter(p, q, r, VanishingRule::SingleDifferential { k: 4 }) || almost_formal_vanishing_filter(p, q, r, rule);
        let violates = transported && !result.vanishes && forced;
        massey.push(MasseyEvidence { space: spec.space.clone(), model_betti, declared_betti: declared, transported_to_target: transported, result, violates_filter: violates });
    }
    let violated = massey.iter().any(|e| e.violates_filter);
    let detail = if massey.is_empty() {
        "no Massey evidence supplied".to_string()
    } else {
        massey
            .iter()
            .map(|e| {
                format!(
                    "<{}> on {} {} (degrees {:?}){}",
                    e.result.classes.join(", "),
                    e.space,
                    if e.result.vanishes { "vanishes" } else { "is nonzero" },
                    e.result.degrees,
                    if e.transported_to_target { ", pulls back injectively to the target" } else { ", not transported to the target" }
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    };
    checks.push(ObstructionCheck { name: "Massey products vanish where forced".into(), category: "massey", status: st(!violated), detail });

    let failed = checks.iter().any(|c| c.status == Status::Fail);
    let (verdict, conclusion) = if failed {
        ("NO", "no torsion-free G2-structure")
    } else {
        ("COMPATIBLE", "no obstruction found; inconclusive")
    };
    Ok(ObstructionReport { target, betti: m.betti.clone(), checks, massey, verdict, conclusion })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kunneth_examples() {
        let m = kunneth_betti(&[1, 2, 2, 1], &[1, 1, 22, 1, 1]);
        assert_eq!(&m[..4], &[1, 3, 26, 48]);
        assert_eq!(kunneth_betti(&[1, 3, 3, 1], &[1, 4, 6, 4, 1]), vec![1, 7, 21, 35, 35, 21, 7, 1]);
        for b1 in 0..5 {
            assert_eq!(kunneth_betti(&[1, 2, 2, 1], &[1, b1, 3, b1, 1])[1], 2 + b1);
        }
        assert_eq!(connected_sum_betti(&[1, 0, 22, 0, 1], &[1, 1, 0, 1, 1]), Some(vec![1, 1, 22, 1, 1]));
    }

    #[test]
    fn filter() {
        let k4 = VanishingRule::SingleDifferential { k: 4 };
        assert!(almost_formal_vanishing_filter(1, 1, 1, k4));
        assert!(!almost_formal_vanishing_filter(2, 2, 2, k4));
        assert!(almost_formal_vanishing_filter(2, 2, 3, VanishingRule::FullHolonomy));
        assert!(!almost_formal_vanishing_filter(2, 2, 2, VanishingRule::FullHolonomy));
    }

    #[test]
    fn bad_b1() {
        let inp = ObstructionInput::parse("space X betti 1 5 10 10 10 10 5 1\ntarget X", None).unwrap();
        let r = obstruction_check(&inp).unwrap();
        assert_eq!(r.status_of("b1 in {0,1,3,7}"), Some(Status::Fail));
        assert_eq!(r.verdict, "NO");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(ObstructionInput::parse("space X betti 1 2\nproduct Y = X x Z\ntarget Y", None), Err(ObstructionError::UnknownSpace(_))));
        assert!(matches!(ObstructionInput::parse("space X betti 1 2", None), Err(ObstructionError::NoTarget)));
        assert!(matches!(ObstructionInput::parse("blah", None), Err(ObstructionError::Parse { line: 1, .. })));
    }
}
