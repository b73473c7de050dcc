//! Line-oriented text formats for Lie algebras and dga elements.
//!
//! Element expressions are sums of terms `[coef] name^name^…`, with `coef`
//! an exact rational `p/q` and `1` standing for the unit:
//!
//! ```text
//! -e1^e2 + 2/3 e1^e4
//! ```
//!
//! A CE file lists generators and then either brackets or differentials:
//!
//! ```text
//! # Heisenberg algebra
//! generators e1 e2 e3
//! bracket e1 e2 = e3
//! ```
//!
//! or `d e3 = -e1^e2`. Blank lines and `#` comments are ignored.

use super::{Dga, DgaError, Element};
use crate::scalar::{parse_q, Q};

fn perr(line: usize, msg: impl Into<String>) -> DgaError {
    DgaError::Parse { line, msg: msg.into() }
}

/// Terms `(coefficient, generator indices in written order)`.
pub fn parse_terms(names: &[String], s: &str, line: usize) -> Result<Vec<(Q, Vec<usize>)>, DgaError> {
    let spaced = s.replace('+', " + ").replace('-', " - ").replace('*', " ");
    let one = || Q::from_integer(1.into());
    let mut out = Vec::new();
    let mut sign = one();
    let mut coef: Option<Q> = None;
    // a sign was read and no term has followed yet
    let mut open = false;
    // a term was just completed, so the next token must be a sign
    let mut need_sign = false;
    for tok in spaced.split_whitespace() {
        if tok == "+" || tok == "-" {
            if let Some(c) = coef.take() {
                out.push((sign * c, Vec::new()));
            }
            if open {
                return Err(perr(line, format!("two signs in a row in `{s}`")));
            }
            sign = if tok == "-" { -one() } else { one() };
            open = true;
            need_sign = false;
            continue;
        }
        if need_sign {
            return Err(perr(line, format!("missing `+` or `-` before `{tok}` in `{s}`")));
        }
        if tok.starts_with(|c: char| c.is_ascii_digit()) {
            let v = parse_q(tok).ok_or_else(|| perr(line, format!("bad rational `{tok}`")))?;
            if coef.is_some() {
                return Err(perr(line, format!("two coefficients in a row in `{s}`")));
            }
            coef = Some(v);
            continue;
        }
        let mut idx = Vec::new();
        for g in tok.split('^') {
            idx.push(names.iter().position(|n| n == g).ok_or_else(|| DgaError::UnknownGenerator(g.to_string()))?);
        }
        out.push((sign * coef.take().unwrap_or_else(one), idx));
        sign = one();
        open = false;
        need_sign = true;
    }
    if let Some(c) = coef {
        out.push((sign * c, Vec::new()));
    } else if open {
        return Err(perr(line, format!("dangling sign in `{s}`")));
    }
    if out.is_empty() && s.trim() != "0" {
        return Err(perr(line, format!("empty expression `{s}`")));
    }
    Ok(out)
}

/// Parses a homogeneous element; `0` is accepted with the given fallback degree.
pub fn parse_element(dga: &Dga, s: &str, zero_degree: usize) -> Result<Element, DgaError> {
    let terms = parse_terms(&dga.names, s, 0)?;
    let degrees: Vec<usize> = terms.iter().map(|(_, i)| i.len()).collect();
    let deg = degrees.first().copied().unwrap_or(zero_degree);
    if degrees.iter().any(|&d| d != deg) {
        return Err(DgaError::MixedDegrees(s.to_string()));
    }
    let mut e = dga.zero(deg);
    for (c, idx) in terms {
        e = e.add(&dga.monomial_signed(&idx).scale(&c));
    }
    Ok(e)
}

/// `a;b;c` (or comma separated) into three elements.
pub fn parse_classes(dga: &Dga, s: &str) -> Result<[Element; 3], DgaError> {
    let parts: Vec<&str> = s.split([';', ',']).map(str::trim).collect();
    if parts.len() != 3 {
        return Err(perr(0, format!("expected three classes separated by `;`, got {}", parts.len())));
    }
    Ok([parse_element(dga, parts[0], 1)?, parse_element(dga, parts[1], 1)?, parse_element(dga, parts[2], 1)?])
}

pub fn parse_ce(text: &str) -> Result<Dga, DgaError> {
    let mut names: Option<Vec<String>> = None;
    let mut brackets: Vec<(usize, usize, Vec<(Q, usize)>)> = Vec::new();
    let mut diffs: Vec<(usize, Vec<(Q, Vec<usize>)>)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (kw, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        match kw {
            "generators" => {
                if names.is_some() {
                    return Err(perr(line, "generators declared twice"));
                }
                let v: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if v.is_empty() {
                    return Err(perr(line, "no generators listed"));
                }
                for g in &v {
                    if !g.chars().next().is_some_and(char::is_alphabetic) || g.contains(['^', '+', '-', '*', '=']) {
                        return Err(perr(line, format!("invalid generator name `{g}`")));
                    }
                }
                names = Some(v);
            }
            "bracket" | "d" => {
                let ns = names.as_ref().ok_or_else(|| perr(line, "generators must come first"))?;
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| perr(line, "missing `=`"))?;
                let lhs: Vec<&str> = lhs.split_whitespace().collect();
                let find = |g: &str| ns.iter().position(|n| n == g).ok_or_else(|| DgaError::UnknownGenerator(g.to_string()));
                let terms = parse_terms(ns, rhs, line)?;
                if kw == "bracket" {
                    if lhs.len() != 2 {
                        return Err(perr(line, "bracket needs two generators"));
                    }
                    let (i, j) = (find(lhs[0])?, find(lhs[1])?);
                    if i == j {
                        return Err(perr(line, "bracket of a generator with itself"));
                    }
                    let mut rhs_lin = Vec::new();
                    for (c, idx) in terms {
                        if idx.len() != 1 {
                            return Err(perr(line, "bracket values must be linear in the generators"));
                        }
                        rhs_lin.push((c, idx[0]));
                    }
                    if brackets.iter().any(|(a, b, _)| (*a, *b) == (i, j) || (*a, *b) == (j, i)) {
                        return Err(perr(line, "bracket given twice"));
                    }
                    brackets.push((i, j, rhs_lin));
                } else {
                    if lhs.len() != 1 {
                        return Err(perr(line, "d takes one generator"));
                    }
                    let i = find(lhs[0])?;
                    if terms.iter().any(|(_, idx)| idx.len() != 2) {
                        return Err(perr(line, "d of a generator must be a 2-form"));
                    }
                    if diffs.iter().any(|(a, _)| *a == i) {
                        return Err(perr(line, "d given twice"));
                    }
                    diffs.push((i, terms));
                }
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
    }
    let names = names.ok_or_else(|| perr(0, "no generators line"))?;
    if !brackets.is_empty() && !diffs.is_empty() {
        return Err(perr(0, "use either bracket lines or d lines, not both"));
    }
    if !diffs.is_empty() {
        let mut gen_d = vec![Vec::new(); names.len()];
        for (i, t) in diffs {
            gen_d[i] = t;
        }
        return Dga::new(names, gen_d);
    }
    // the brackets were given in arbitrary order; orient as i < j
    let oriented = brackets
        .into_iter()
        .map(|(i, j, rhs)| if i < j { (i, j, rhs) } else { (j, i, rhs.into_iter().map(|(c, k)| (-c, k)).collect()) })
        .collect::<Vec<_>>();
    Dga::chevalley_eilenberg(names, &oriented)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    #[test]
    fn expressions() {
        let n: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(parse_terms(&n, "-x^y + 2/3 y^z", 1).unwrap(), vec![(qi(-1), vec![0, 1]), (q(2, 3), vec![1, 2])]);
        assert_eq!(parse_terms(&n, "3*z - 1/2 x", 1).unwrap(), vec![(qi(3), vec![2]), (q(-1, 2), vec![0])]);
        assert_eq!(parse_terms(&n, "1", 1).unwrap(), vec![(qi(1), vec![])]);
        assert!(parse_terms(&n, "w", 1).is_err());
        assert!(parse_terms(&n, "x -", 1).is_err());
        assert!(parse_terms(&n, "x y", 1).is_err());
    }

    #[test]
    fn heisenberg_both_ways() {
        let a = parse_ce("# h\ngenerators e1 e2 e3\nbracket e1 e2 = e3\n").unwrap();
        let b = parse_ce("generators e1 e2 e3\nd e3 = -e1^e2").unwrap();
        let c = parse_ce("generators e1 e2 e3\nbracket e2 e1 = -e3").unwrap();
        assert_eq!(a.gen_d, b.gen_d);
        assert_eq!(a.gen_d, c.gen_d);
        assert_eq!(a.betti(), vec![1, 2, 2, 1]);
        let cl = parse_classes(&a, "e1; e2; e2").unwrap();
        assert_eq!(cl[0], a.generator("e1").unwrap());
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse_ce("generators a b\nfoo a"), Err(DgaError::Parse { line: 2, .. })));
        assert!(matches!(parse_ce("generators a b\nd a = b"), Err(DgaError::Parse { line: 2, .. })));
        assert!(matches!(parse_ce("generators a b c e\nd c = a^b\nd e = c^e"), Err(DgaError::DSquared(_))));
    }
}
