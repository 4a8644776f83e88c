//! The plain-text system format.
//!
//! ```text
//! # comment
//! vars: t1 t2 t3
//! f1: -1 + t1^2 + t2^2
//! p: t2^2
//! q: 1
//! A1: 0 0; 1 0; 0 1
//! root: 1/2 3; 2
//! a: 2 0
//! degree: 2
//! ```

use std::collections::BTreeMap;

use toric_trace::poly::{parse_polynomial, parse_rational, Polynomial, Rational, Support};
use toric_trace::Error;

use crate::error::CliError;

#[derive(Clone, Debug, Default)]
pub struct SystemFile {
    pub vars: Vec<String>,
    /// `f0`, `f1`, ... keyed by index.
    pub polys: BTreeMap<usize, Polynomial>,
    pub p: Option<Polynomial>,
    pub q: Option<Polynomial>,
    pub supports: BTreeMap<usize, Support>,
    pub roots: Vec<(Vec<Rational>, u32)>,
    pub monomial: Option<Vec<i64>>,
    pub degree: Option<i64>,
}

impl SystemFile {
    /// `f1, .., fn` (an `f0` line is kept apart).
    pub fn system(&self) -> Result<Vec<Polynomial>, CliError> {
        let f: Vec<Polynomial> = self.polys.iter().filter(|(i, _)| **i > 0).map(|(_, g)| g.clone()).collect();
        for (n, i) in self.polys.keys().filter(|i| **i > 0).enumerate() {
            if *i != n + 1 {
                return Err(CliError::Usage(format!("equations must be numbered f1, f2, ... (missing f{})", n + 1)));
            }
        }
        if f.is_empty() {
            return Err(CliError::Usage("the input has no equations".into()));
        }
        Ok(f)
    }

    pub fn parse_poly(&self, text: &str) -> Result<Polynomial, CliError> {
        parse_polynomial(text, &self.vars).map_err(|e| CliError::from_core(e, None, 0))
    }
}

fn parse_ints(text: &str, line: usize, column: usize) -> Result<Vec<i64>, CliError> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>().map_err(|_| CliError::Parse { line, column, message: format!("expected an integer, found `{s}`") })
        })
        .collect()
}

pub fn parse_monomial(text: &str) -> Result<Vec<i64>, CliError> {
    parse_ints(text, 0, 0)
}

pub fn parse_system(src: &str) -> Result<SystemFile, CliError> {
    let mut out = SystemFile::default();
    for (ln, raw) in src.lines().enumerate() {
        let line = ln + 1;
        let text = raw.split('#').next().unwrap_or("");
        if text.trim().is_empty() {
            continue;
        }
        let Some(colon) = text.find(':') else {
            return Err(CliError::Parse { line, column: 1, message: "expected `key: value`".into() });
        };
        let (key, value) = (text[..colon].trim(), &text[colon + 1..]);
        // 1-based column of the first character of the value
        let column = colon + 2 + (value.len() - value.trim_start().len());
        let value = value.trim();
        let poly = |out: &SystemFile| -> Result<Polynomial, CliError> {
            if out.vars.is_empty() {
                return Err(CliError::Parse { line, column: 1, message: "`vars:` must come first".into() });
            }
            parse_polynomial(value, &out.vars).map_err(|e| CliError::from_core(e, Some(line), column))
        };
        match key {
            "vars" => {
                out.vars = value.split_whitespace().map(str::to_string).collect();
                if out.vars.is_empty() {
                    return Err(CliError::Parse { line, column, message: "no variables".into() });
                }
            }
            "p" => out.p = Some(poly(&out)?),
            "q" => out.q = Some(poly(&out)?),
            "a" => out.monomial = Some(parse_ints(value, line, column)?),
            "degree" => {
                out.degree = Some(value.parse().map_err(|_| CliError::Parse { line, column, message: "expected an integer".into() })?)
            }
            "root" => {
                let (coords, mult) = match value.split_once(';') {
                    Some((c, m)) => (c, m.trim().parse::<u32>().map_err(|_| CliError::Parse {
                        line,
                        column,
                        message: "multiplicity must be a positive integer".into(),
                    })?),
                    None => (value, 1),
                };
                let xs = coords
                    .split_whitespace()
                    .map(|s| parse_rational(s).map_err(|e| CliError::from_core(e, Some(line), column)))
                    .collect::<Result<Vec<_>, _>>()?;
                out.roots.push((xs, mult));
            }
            _ if key.starts_with('f') || key.starts_with('A') => {
                let idx: usize = key[1..]
                    .parse()
                    .map_err(|_| CliError::Parse { line, column: 1, message: format!("unknown key `{key}`") })?;
                if key.starts_with('f') {
                    let g = poly(&out)?;
                    if out.polys.insert(idx, g).is_some() {
                        return Err(CliError::Parse { line, column: 1, message: format!("duplicate `{key}`") });
                    }
                } else {
                    let pts = value
                        .split(';')
                        .map(|pt| parse_ints(pt, line, column))
                        .collect::<Result<Vec<_>, _>>()?;
                    let dim = pts.first().map(|p| p.len()).unwrap_or(0);
                    if dim == 0 || pts.iter().any(|p| p.len() != dim) {
                        return Err(CliError::Parse { line, column, message: "points must share one dimension".into() });
                    }
                    out.supports.insert(idx, Support::new(dim, pts));
                }
            }
            _ => return Err(CliError::Parse { line, column: 1, message: format!("unknown key `{key}`") }),
        }
    }
    Ok(out)
}

impl CliError {
    pub fn from_core(e: Error, line: Option<usize>, column: usize) -> CliError {
        match (e, line) {
            (Error::Syntax { position, message }, Some(line)) => CliError::Parse { line, column: column + position, message },
            (Error::UnknownVariable(v), Some(line)) => {
                CliError::Parse { line, column, message: format!("unknown variable `{v}`") }
            }
            (e, _) => CliError::Core(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_file() {
        let src = "vars: t1 t2\n# comment\nf1: t1 + t2 - 1\nf2: t1*t2 - 2 # trailing\np: t2^2\nA1: 0 0; 1 0\nroot: 1/2 3; 2\na: 2, 0\n";
        let sys = parse_system(src).unwrap();
        assert_eq!(sys.vars, vec!["t1", "t2"]);
        assert_eq!(sys.system().unwrap().len(), 2);
        assert!(sys.q.is_none());
        assert_eq!(sys.supports[&1].len(), 2);
        assert_eq!(sys.roots[0].1, 2);
        assert_eq!(sys.monomial, Some(vec![2, 0]));
    }

    #[test]
    fn positions_are_reported() {
        let err = parse_system("vars: x\nf1: x + y\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }), "{err:?}");
        let err = parse_system("vars: x\nf1: x +* 2\n").unwrap_err();
        match err {
            CliError::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 4);
            }
            e => panic!("{e:?}"),
        }
        assert!(parse_system("f1: x\n").is_err());
        assert!(parse_system("vars: x\nbogus: 1\n").is_err());
    }
}
