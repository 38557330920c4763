//! Plain-text pair format:
//!
//! ```text
//! explicit:
//! 0   0
//! 1   0
//! b: 1 0
//! c: 0 1
//! implicit:
//! 0   0
//! 0   1
//! b: 0 1
//! c: 0 1
//! ```
//!
//! Coefficients are decimals or fractions `p/q`; `#` starts a comment.

use std::path::Path;

use super::{builtin, ImexPair, RkTableau, TableauError};

fn number(tok: &str, line: usize) -> Result<f64, TableauError> {
    let bad = || TableauError::Parse {
        line,
        msg: format!("not a number: `{tok}`"),
    };
    let v = match tok.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0.0 {
                return Err(TableauError::Parse {
                    line,
                    msg: format!("zero denominator in `{tok}`"),
                });
            }
            p / q
        }
        None => tok.parse().map_err(|_| bad())?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

fn numbers(text: &str, line: usize) -> Result<Vec<f64>, TableauError> {
    text.split_whitespace().map(|t| number(t, line)).collect()
}

#[derive(Default)]
struct Block {
    rows: Vec<Vec<f64>>,
    b: Option<Vec<f64>>,
    c: Option<Vec<f64>>,
}

impl Block {
    fn finish(self, which: &str) -> Result<RkTableau, TableauError> {
        let missing = |k: &str| TableauError::Shape(format!("{which} block lacks a `{k}:` line"));
        let b = self.b.ok_or_else(|| missing("b"))?;
        let c = self.c.ok_or_else(|| missing("c"))?;
        RkTableau::new(self.rows, b, c)
    }
}

/// Parse the text format, naming the pair `name`.
pub fn parse_pair(name: &str, text: &str) -> Result<ImexPair, TableauError> {
    let mut ex: Option<Block> = None;
    let mut im: Option<Block> = None;
    let mut in_explicit: Option<bool> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let lower = body.to_ascii_lowercase();
        if lower == "explicit:" {
            if ex.is_some() {
                return Err(TableauError::Parse { line, msg: "duplicate explicit block".into() });
            }
            ex = Some(Block::default());
            in_explicit = Some(true);
            continue;
        }
        if lower == "implicit:" {
            if im.is_some() {
                return Err(TableauError::Parse { line, msg: "duplicate implicit block".into() });
            }
            im = Some(Block::default());
            in_explicit = Some(false);
            continue;
        }
        let block = match in_explicit {
            Some(true) => ex.as_mut(),
            Some(false) => im.as_mut(),
            None => None,
        };
        let Some(block) = block else {
            return Err(TableauError::Parse {
                line,
                msg: "coefficients before an `explicit:` or `implicit:` header".into(),
            });
        };
        if let Some(rest) = lower.strip_prefix("b:") {
            block.b = Some(numbers(rest, line)?);
        } else if let Some(rest) = lower.strip_prefix("c:") {
            block.c = Some(numbers(rest, line)?);
        } else {
            if block.b.is_some() || block.c.is_some() {
                return Err(TableauError::Parse {
                    line,
                    msg: "matrix row after the `b:`/`c:` lines".into(),
                });
            }
            block.rows.push(numbers(body, line)?);
        }
    }
    let ex = ex.ok_or_else(|| TableauError::Shape("missing `explicit:` block".into()))?;
    let im = im.ok_or_else(|| TableauError::Shape("missing `implicit:` block".into()))?;
    ImexPair::infer(name, ex.finish("explicit")?, im.finish("implicit")?)
}

/// Resolve a builtin identifier, falling back to reading a tableau file.
pub fn load_pair(name_or_path: &str) -> Result<ImexPair, TableauError> {
    match builtin(name_or_path) {
        Ok(p) => Ok(p),
        Err(e) => {
            let path = Path::new(name_or_path);
            if !path.is_file() {
                return Err(e);
            }
            let text = std::fs::read_to_string(path)
                .map_err(|err| TableauError::Io(format!("{}: {err}", path.display())))?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| name_or_path.to_string());
            parse_pair(&name, &text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ARS111: &str = "\
explicit:
0 0
1 0
b: 1 0
c: 0 1
implicit:
0 0   # first stage explicit
0 1
b: 0 1
c: 0 1
";

    #[test]
    fn parses_ars111() {
        let p = parse_pair("mine", ARS111).unwrap();
        assert_eq!(p, ImexPair { name: "mine".into(), ..builtin("ARS111").unwrap() });
        assert_eq!(p.declared_order, 1);
    }

    #[test]
    fn fractions() {
        let text = "explicit:\n0 0 0\n2/3 0 0\n1/4 3/4 0\nb: 1/4 3/4 0\nc: 0 2/3 1\n\
                    implicit:\n0 0 0\n0 2/3 0\n0 1/4 3/4\nb: 0 1/4 3/4\nc: 0 2/3 1\n";
        let p = parse_pair("f", text).unwrap();
        assert_eq!(p.explicit().a(1, 0), 2.0 / 3.0);
        assert!(p.is_gsa());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_pair("x", "explicit:\n0 x\n"),
            Err(TableauError::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_pair("x", "implicit:\n0\nb: 1\nc: 0\n"), Err(TableauError::Shape(_))));
        assert!(matches!(parse_pair("x", "1 2\n"), Err(TableauError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_pair("x", "explicit:\n0\nb: 1\nc: 0\nimplicit:\n1 0\nb: 1\nc: 1\n"),
            Err(TableauError::Shape(_))
        ));
    }

    #[test]
    fn load_unknown() {
        assert!(matches!(load_pair("nope"), Err(TableauError::UnknownName { .. })));
    }
}
