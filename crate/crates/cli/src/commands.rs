//! One function per subcommand; each returns a report plus optional text to
//! print before the check list.

use crate::report::ReportDocument;
use g2calc::derivations::probe_constant;
use g2calc::figures::FigureOp;
use g2calc::graded::Probe;
use g2calc::massey_dga::examples::{builtin_input, builtin_model, default_classes, INPUTS, MODELS};
use g2calc::massey_dga::obstruction::Status;
use g2calc::massey_dga::parse::{parse_ce, parse_classes};
use g2calc::massey_dga::{massey_triple, massey_triple_perturbed, obstruction_check, Dga, Element, MasseyResult, ObstructionInput};
use g2calc::report::Check;
use g2calc::scalar::{fmt_q, Field};
use g2calc::suites::{self, rng_for, sample_nonzero_modes, Suite};
use g2calc::torus_spectral::verify::probe_in_table;
use g2calc::torus_spectral::{build_mode_table, truncation_series, verify_complexes, ComplexSnapshot, Mode};
use serde::Serialize;
use serde_json::json;
use std::fmt::Write as _;
use std::path::Path;

pub struct Outcome {
    pub doc: ReportDocument,
    /// Human-readable tables shown above the checks (omitted with `--json`).
    pub preamble: String,
    /// Print only the preamble (CSV output).
    pub raw: bool,
}

impl Outcome {
    fn plain(doc: ReportDocument) -> Self {
        Outcome { doc, preamble: String::new(), raw: false }
    }
}

pub fn verify(suite: Suite, seed: u64, modes: Option<usize>) -> Outcome {
    let count = modes.unwrap_or_else(|| suite.default_count());
    let checks = suites::run(suite, seed, count);
    Outcome::plain(ReportDocument::new("verify", suite.name(), seed, checks, json!({})).param("count", count))
}

const PHI_DE_RHAM_DEGREES: [usize; 6] = [0, 1, 2, 5, 6, 7];
const PSI_DE_RHAM_DEGREES: [usize; 4] = [0, 1, 6, 7];

fn fmt_dims(v: &[usize]) -> String {
    let s: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("({})", s.join(","))
}

fn degrees_match(name: String, anchor: &str, a: &[usize], b: &[usize], degrees: &[usize]) -> Check {
    let ok = degrees.iter().all(|&j| a[j] == b[j]);
    Check::new(name, anchor, ok, format!("{} vs {}", fmt_dims(a), fmt_dims(b)))
}

pub fn cohomology_truncation(seed: u64, n: i64) -> Outcome {
    let series = truncation_series(n);
    let mut checks = Vec::new();
    for t in &series {
        let n = t.truncation;
        let (hp, hs, dr) = (t.h_phi(), t.h_psi(), t.de_rham());
        checks.push(degrees_match(format!("H_phi = H_dR in degrees 0,1,2,5,6,7 (N={n})"), "hphi-de-rham-degrees", &hp, &dr, &PHI_DE_RHAM_DEGREES));
        checks.push(Check::new(format!("H^3_phi = H^4_phi > 0 (N={n})"), "hphi-middle-degrees", hp[3] == hp[4] && hp[3] > 0, format!("{} and {}", hp[3], hp[4])));
        checks.push(degrees_match(format!("H_psi = H_dR in degrees 0,1,6,7 (N={n})"), "hpsi-de-rham-degrees", &hs, &dr, &PSI_DE_RHAM_DEGREES));
        let harm: Vec<usize> = t.totals.iter().map(|d| d.harmonic).collect();
        checks.push(Check::new(format!("harmonic = H_dR (N={n})"), "hodge-de-rham", harm == dr, fmt_dims(&harm)));
    }
    if series.len() >= 2 {
        let h3: Vec<usize> = series.iter().map(|t| t.h_phi()[3]).collect();
        let up = h3.windows(2).all(|w| w[0] < w[1]);
        checks.push(Check::new("dim H^3_phi strictly increases with N", "hphi-infinite-dimensional", up, fmt_dims(&h3)));
        for j in 2..=5 {
            let v: Vec<usize> = series.iter().map(|t| t.h_psi()[j]).collect();
            let up = v.windows(2).all(|w| w[0] < w[1]);
            checks.push(Check::new(format!("dim H^{j}_psi strictly increases with N"), "hpsi-infinite-dimensional", up, fmt_dims(&v)));
        }
    }
    let mut pre = String::from(" N  pairs  orbits  H_phi                      H_psi\n");
    for t in &series {
        let _ = writeln!(pre, "{:>2} {:>6} {:>7}  {}  {}", t.truncation, t.mode_pairs, t.orbits, fmt_dims(&t.h_phi()), fmt_dims(&t.h_psi()));
    }
    let growth: Vec<_> = series.iter().map(|t| json!({"truncation": t.truncation, "h3_phi": t.h_phi()[3], "h4_phi": t.h_phi()[4]})).collect();
    let data = json!({
        "series": series.iter().map(|t| json!({
            "truncation": t.truncation,
            "mode_pairs": t.mode_pairs,
            "orbits": t.orbits,
            "h_phi": t.h_phi(),
            "h_psi": t.h_psi(),
            "de_rham": t.de_rham(),
            "totals": t.totals,
        })).collect::<Vec<_>>(),
        "growth": growth,
    });
    let doc = ReportDocument::new("cohomology", "truncation", seed, checks, data).param("truncation", n);
    Outcome { doc, preamble: pre, raw: false }
}

fn snapshot_table(s: &ComplexSnapshot) -> String {
    let mut pre = String::from("deg  dim  H_phi  H_psi  H_dR  harmonic  ker_LB  (ker LB,d)  (ker LB cap im LB,d)\n");
    for d in &s.degrees {
        let _ = writeln!(
            pre,
            "{:>3} {:>4} {:>6} {:>6} {:>5} {:>9} {:>7} {:>11} {:>21}",
            d.degree, d.dim, d.h_phi, d.h_psi, d.de_rham, d.harmonic, d.ker_lb, d.ker_lb_complex, d.image_complex
        );
    }
    pre
}

pub fn cohomology_mode(seed: u64, k: Mode) -> Outcome {
    let (snap, mut checks) = verify_complexes(k);
    let (hp, hs, dr) = (snap.h_phi(), snap.h_psi(), snap.de_rham());
    if k.iter().all(|&x| x == 0) {
        let binom: Vec<usize> = (0..=7).map(|j| g2calc::g2_linear::binom(7, j)).collect();
        checks.push(Check::new("harmonic forms are all constant forms", "hodge-de-rham", snap.harmonic() == binom, fmt_dims(&snap.harmonic())));
        checks.push(Check::new("H_phi = H_psi = H_dR at the zero mode", "hphi-de-rham-degrees", hp == dr && hs == dr, fmt_dims(&hp)));
    } else {
        checks.push(Check::new("H_phi vanishes in degrees 0,1,2,5,6,7", "hphi-de-rham-degrees", PHI_DE_RHAM_DEGREES.iter().all(|&j| hp[j] == 0), fmt_dims(&hp)));
        checks.push(Check::new("H^3_phi = H^4_phi > 0", "hphi-middle-degrees", hp[3] == hp[4] && hp[3] > 0, format!("{} and {}", hp[3], hp[4])));
        checks.push(Check::new("H_psi vanishes in degrees 0,1,6,7", "hpsi-de-rham-degrees", PSI_DE_RHAM_DEGREES.iter().all(|&j| hs[j] == 0), fmt_dims(&hs)));
    }
    let pre = snapshot_table(&snap);
    let doc = ReportDocument::new("cohomology", "mode", seed, checks, serde_json::to_value(&snap).expect("snapshot serializes")).param("mode", k);
    Outcome { doc, preamble: pre, raw: false }
}

#[derive(Serialize)]
struct Product {
    #[serde(flatten)]
    result: MasseyResult,
    stable_under_resolves: bool,
}

fn load_dga(ce_file: Option<&Path>, example: Option<&str>) -> Result<(String, Dga), String> {
    match (ce_file, example) {
        (Some(p), None) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            let dga = parse_ce(&text).map_err(|e| format!("{}: {e}", p.display()))?;
            Ok((p.display().to_string(), dga))
        }
        (None, Some(name)) => builtin_model(name)
            .map(|d| (name.to_string(), d))
            .ok_or_else(|| format!("unknown example `{name}`; available: {}", MODELS.join(", "))),
        _ => Err("give exactly one of --ce-file and --example".into()),
    }
}

pub fn massey(seed: u64, ce_file: Option<&Path>, example: Option<&str>, classes: Option<&str>, resolves: usize) -> Result<Outcome, String> {
    let (name, dga) = load_dga(ce_file, example)?;
    let classes = classes.or_else(|| example.and_then(default_classes));
    let triples: Vec<([Element; 3], MasseyResult)> = match classes {
        Some(spec) => {
            let [a, b, c] = parse_classes(&dga, spec).map_err(|e| e.to_string())?;
            let m = massey_triple(&dga, &a, &b, &c).map_err(|e| e.to_string())?;
            vec![([a, b, c], m)]
        }
        None => {
            let h = dga.cohomology();
            let mut v = Vec::new();
            for a in h.reps(1) {
                for b in h.reps(1) {
                    for c in h.reps(1) {
                        if let Ok(m) = massey_triple(&dga, a, b, c) {
                            v.push(([a.clone(), b.clone(), c.clone()], m));
                        }
                    }
                }
            }
            v
        }
    };
    let mut rng = rng_for(seed);
    let mut checks = vec![Check::new("d^2 = 0 and Leibniz", "dga-axioms", dga.axiom_failures().is_empty(), dga.axiom_failures().join("; "))];
    let mut products = Vec::new();
    for ([a, b, c], m) in triples {
        let mut stable = true;
        for _ in 0..resolves {
            let r = massey_triple_perturbed(&dga, &a, &b, &c, &mut rng).map_err(|e| e.to_string())?;
            stable &= r.vanishes == m.vanishes;
        }
        let label = format!("<{}, {}, {}>", m.classes[0], m.classes[1], m.classes[2]);
        let verdict = if m.vanishes { "vanishes" } else { "nonvanishing" };
        checks.push(Check::new(
            format!("{label} verdict stable under {resolves} primitive re-choices"),
            "massey-indeterminacy",
            stable,
            format!("{verdict}; representative {}", m.representative),
        ));
        products.push(Product { result: m, stable_under_resolves: stable });
    }
    let nonvanishing = products.iter().filter(|p| !p.result.vanishes).count();
    let verdict = if products.is_empty() {
        "no defined products"
    } else if nonvanishing > 0 {
        "nonvanishing"
    } else {
        "all vanish"
    };
    let mut pre = format!("model {name}: generators {}, Betti {}\n", dga.names.join(" "), fmt_dims(&dga.betti()));
    for p in &products {
        let m = &p.result;
        let _ = writeln!(
            pre,
            "<{}, {}, {}> = [{}]  {}",
            m.classes[0],
            m.classes[1],
            m.classes[2],
            m.representative,
            if m.vanishes { "vanishes" } else { "NONVANISHING" }
        );
    }
    let _ = writeln!(pre, "verdict: {verdict}");
    let data = json!({
        "model": name,
        "generators": dga.names,
        "betti": dga.betti(),
        "products": products,
        "verdict": verdict,
    });
    let doc = ReportDocument::new("massey", &name, seed, checks, data).param("resolves", resolves).param("classes", classes);
    Ok(Outcome { doc, preamble: pre, raw: false })
}

fn obstruction_anchor(category: &str) -> &'static str {
    match category {
        "classical" => "known-obstructions",
        "spin" => "spin-obstruction",
        "massey" => "massey-obstruction",
        _ => "obstruction-input",
    }
}

pub fn obstruct(seed: u64, input: Option<&Path>, example: Option<&str>) -> Result<Outcome, String> {
    let (name, parsed) = match (input, example) {
        (Some(p), None) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            let inp = ObstructionInput::parse(&text, p.parent()).map_err(|e| format!("{}: {e}", p.display()))?;
            (p.display().to_string(), inp)
        }
        (None, Some(n)) => {
            let text = builtin_input(n).ok_or_else(|| format!("unknown example `{n}`; available: {}", INPUTS.join(", ")))?;
            (n.to_string(), ObstructionInput::parse(text, None).map_err(|e| e.to_string())?)
        }
        _ => return Err("give exactly one of --input and --example".into()),
    };
    let rep = obstruction_check(&parsed).map_err(|e| e.to_string())?;
    let checks = rep
        .checks
        .iter()
        .map(|c| {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Undetermined => "undetermined",
            };
            Check::new(c.name.clone(), obstruction_anchor(c.category), c.status != Status::Fail, format!("{status}: {}", c.detail))
        })
        .collect();
    let pre = format!("target {}: Betti {}\nverdict: {} ({})\n", rep.target, fmt_dims(&rep.betti), rep.verdict, rep.conclusion);
    let doc = ReportDocument::new("obstruct", &name, seed, checks, serde_json::to_value(&rep).expect("report serializes"));
    Ok(Outcome { doc, preamble: pre, raw: false })
}

#[derive(Serialize)]
struct TableRow {
    op: &'static str,
    from: String,
    to: String,
    constant: String,
    expected: String,
    matches: bool,
}

fn render<F: Field>(p: &Probe<F>) -> String {
    match p {
        Probe::Zero => "0".into(),
        other => other.render(),
    }
}

/// Probes every component slot at one mode and tabulates the constants found.
pub fn tables(seed: u64, mode: Option<Mode>, csv: bool) -> Outcome {
    let k = mode.unwrap_or_else(|| sample_nonzero_modes(&mut rng_for(seed), 1)[0]);
    let t = build_mode_table(k);
    let zero_mode = k.iter().all(|&x| x == 0);
    let mut rows = Vec::new();
    for op in FigureOp::all() {
        for (from, to) in op.slots() {
            let (found, expected) = match op {
                FigureOp::IotaB | FigureOp::IotaK => {
                    let p = probe_constant(op, from, to).expect("valid slot");
                    (render(&p), op.expected(from, to).map_or("0".into(), |c| fmt_q(&c)))
                }
                _ => {
                    let p = probe_in_table(&t, op, from, to).expect("valid slot");
                    let e = if zero_mode { None } else { op.expected(from, to) };
                    (render(&p), e.map_or("0".into(), |c| fmt_q(&c)))
                }
            };
            rows.push(TableRow { op: op.name(), from: from.to_string(), to: to.to_string(), matches: found == expected, constant: found, expected });
        }
    }
    let bad: Vec<String> = rows.iter().filter(|r| !r.matches).map(|r| format!("{} {} -> {}", r.op, r.from, r.to)).collect();
    let nonzero = rows.iter().filter(|r| r.constant != "0").count();
    let checks = vec![Check::new(
        "every component constant matches its table entry",
        "component-tables",
        bad.is_empty(),
        if bad.is_empty() { format!("{} slots, {nonzero} nonzero", rows.len()) } else { format!("mismatch at {}", bad.join(", ")) },
    )];
    let mut pre = String::new();
    if csv {
        pre.push_str("op,from,to,constant,expected,matches\n");
        for r in &rows {
            let _ = writeln!(pre, "{},{},{},{},{},{}", r.op, r.from, r.to, r.constant, r.expected, r.matches);
        }
    }
    let doc = ReportDocument::new("tables", "components", seed, checks, json!({ "mode": k, "rows": rows })).param("mode", k);
    Outcome { doc, preamble: pre, raw: csv }
}
