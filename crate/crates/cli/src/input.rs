//! Readers for theory files (one formula per line) and quantum declaration files.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use epiq::formula::{parse, Atom, Formula};
use epiq::quantum::{IntervalProposition, ObservableKind, PhysicsConfig, Rational};
use num_bigint::BigInt;
use num_traits::Zero;

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(code, _)| code).trim()
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Formulas of a theory or constraint file, one per non-blank line.
pub fn parse_formula_lines(source: &str, origin: &str) -> Result<Vec<Formula>> {
    let mut out = Vec::new();
    for (n, line) in source.lines().enumerate() {
        let text = strip_comment(line);
        if text.is_empty() {
            continue;
        }
        let f = parse(text).map_err(|e| anyhow::anyhow!("{origin}:{}: {e}", n + 1))?;
        out.push(f);
    }
    Ok(out)
}

/// Contents of a declaration file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Declarations {
    pub config: PhysicsConfig,
    pub props: Vec<IntervalProposition>,
}

/// Parses `a/b`, integers and finite decimals exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let value = if let Some((num, den)) = body.split_once('/') {
        if !digits(num) || !digits(den) {
            return None;
        }
        let den: BigInt = den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Rational::new(num.parse().ok()?, den)
    } else if let Some((int, frac)) = body.split_once('.') {
        if !digits(int) || !digits(frac) {
            return None;
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        Rational::new(format!("{int}{frac}").parse().ok()?, scale)
    } else {
        if !digits(body) {
            return None;
        }
        Rational::from_integer(body.parse().ok()?)
    };
    Some(if negative { -value } else { value })
}

pub fn parse_declarations(source: &str, origin: &str) -> Result<Declarations> {
    let mut bound: Option<Rational> = None;
    let mut props: Vec<IntervalProposition> = Vec::new();
    for (n, line) in source.lines().enumerate() {
        let at = |msg: String| anyhow::anyhow!("{origin}:{}: {msg}", n + 1);
        let text = strip_comment(line);
        if text.is_empty() {
            continue;
        }
        let (keyword, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        match keyword {
            "bound" => {
                if bound.is_some() {
                    return Err(at("duplicate `bound` directive".into()));
                }
                let value = parse_rational(rest.trim())
                    .ok_or_else(|| at(format!("`{}` is not a rational number", rest.trim())))?;
                PhysicsConfig::new(value.clone()).map_err(|e| at(e.to_string()))?;
                bound = Some(value);
            }
            "atom" => {
                let prop = parse_atom_entry(rest).map_err(at)?;
                if props.iter().any(|p| p.atom() == prop.atom()) {
                    return Err(at(format!("atom `{}` is declared more than once", prop.atom())));
                }
                props.push(prop);
            }
            other => return Err(at(format!("unknown directive `{other}` (expected `atom` or `bound`)"))),
        }
    }
    let config = match bound {
        Some(b) => PhysicsConfig::new(b)?,
        None => PhysicsConfig::default(),
    };
    Ok(Declarations { config, props })
}

// `<name> <kind> [<lo>, <hi>]`
fn parse_atom_entry(rest: &str) -> std::result::Result<IntervalProposition, String> {
    let usage = "expected `atom <name> <position|momentum> [<lo>, <hi>]`";
    let mut words = rest.split_whitespace();
    let (Some(name), Some(kind)) = (words.next(), words.next()) else {
        return Err(usage.into());
    };
    let atom = Atom::new(name).map_err(|e| e.to_string())?;
    let kind: ObservableKind = kind.parse().map_err(|e: epiq::quantum::QuantumError| e.to_string())?;
    let interval: String = words.collect::<Vec<_>>().join(" ");
    let inner = interval
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| format!("{usage}; interval must be written as [lo, hi]"))?;
    let (lo, hi) = inner.split_once(',').ok_or_else(|| format!("{usage}; missing `,` in interval"))?;
    let endpoint = |s: &str| {
        parse_rational(s.trim()).ok_or_else(|| format!("`{}` is not an exact rational or finite decimal", s.trim()))
    };
    IntervalProposition::new(atom, kind, endpoint(lo)?, endpoint(hi)?).map_err(|e| e.to_string())
}

/// Canonical text for a declaration set; parses back to the same declarations.
pub fn echo_declarations(decls: &Declarations) -> String {
    let mut out = String::new();
    writeln!(out, "bound {}", decls.config.bound()).unwrap();
    for p in &decls.props {
        writeln!(out, "atom {} {} [{}, {}]", p.atom(), p.kind(), p.lo(), p.hi()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use epiq::quantum::ratio;

    const PAPER: &str = "\
# particle on a line
atom p momentum [0, 1/6]
atom q position [-1, 1]   # first position interval
atom r position [1, 3]
";

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/6"), Some(ratio(1, 6)));
        assert_eq!(parse_rational("-3"), Some(ratio(-3, 1)));
        assert_eq!(parse_rational("0.5"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("-1.25"), Some(ratio(-5, 4)));
        assert_eq!(parse_rational("2/4"), Some(ratio(1, 2)));
        for bad in ["", "1/0", "1e3", ".5", "5.", "a", "1/-2", "--1", "0x10", "1.2.3"] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }

    #[test]
    fn paper_declarations() {
        let d = parse_declarations(PAPER, "paper.decl").unwrap();
        assert_eq!(d.props.len(), 3);
        assert_eq!(d.config, PhysicsConfig::default());
        assert_eq!(d.props[0].width(), ratio(1, 6));
        assert_eq!(d.props[2].kind(), ObservableKind::Position);
    }

    #[test]
    fn echo_round_trips() {
        let d = parse_declarations(&format!("bound 0.25\n{PAPER}"), "x").unwrap();
        let echoed = echo_declarations(&d);
        assert!(echoed.starts_with("bound 1/4\n"));
        assert_eq!(parse_declarations(&echoed, "echo").unwrap(), d);
    }

    #[test]
    fn declaration_errors_are_located() {
        let cases = [
            ("atom p momentum [0, 1/6]\natom p position [0, 1]", "x:2:"),
            ("bound 1/2\nbound 1", "x:2:"),
            ("bound 0", "x:1:"),
            ("atom p spin [0, 1]", "x:1:"),
            ("atom p position [1, 0]", "x:1:"),
            ("atom p position 0, 1", "x:1:"),
            ("atom P position [0, 1]", "x:1:"),
            ("\n\natom p position [0, 1e2]", "x:3:"),
            ("particle p", "x:1:"),
        ];
        for (src, prefix) in cases {
            let err = parse_declarations(src, "x").unwrap_err().to_string();
            assert!(err.starts_with(prefix), "{src:?}: {err}");
        }
    }

    #[test]
    fn formula_lines() {
        let fs = parse_formula_lines("# axioms\nK(p) -> !K(q)\n\n  K(p) -> !K(r)  # second\n", "t").unwrap();
        assert_eq!(fs.len(), 2);
        let err = parse_formula_lines("p\np &\n", "t.thy").unwrap_err().to_string();
        assert!(err.starts_with("t.thy:2: syntax error at offset 4"), "{err}");
    }
}
