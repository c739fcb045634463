//! Ring definition files.
//!
//! ```text
//! # comment
//! field: QQ
//! vars: x, y, z, w
//! ideal: x^3, y^3, z^3 - x*y^2,
//!        x^2*z^2, xyz^2
//! cutoff: 12
//! depth: 0
//! ```
//!
//! A line starting with whitespace continues the previous value. Keys are
//! `field`, `vars`, `ideal` (required) and `cutoff`, `depth` (optional).

use crate::error::{Error, Result};
use crate::exactlin::{Field, FieldSpec};
use crate::polyring::{parse_polynomial, GradedQuotientRing, Polynomial};

/// Text with the source position of every byte.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceText {
    pub text: String,
    positions: Vec<(usize, usize)>,
    end: (usize, usize),
}

impl SourceText {
    fn new() -> Self {
        SourceText {
            text: String::new(),
            positions: Vec::new(),
            end: (0, 0),
        }
    }

    fn push(&mut self, c: char, line: usize, col: usize) {
        self.text.push(c);
        self.positions
            .extend(std::iter::repeat_n((line, col), c.len_utf8()));
        self.end = (line, col + 1);
    }

    /// `(line, column)` of a byte offset, both 1-based.
    pub fn locate(&self, offset: usize) -> (usize, usize) {
        self.positions.get(offset).copied().unwrap_or(self.end)
    }

    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        let (line, col) = self.locate(offset);
        Error::RingFile {
            line,
            col,
            message: message.into(),
        }
    }

    fn start(&self) -> (usize, usize) {
        self.locate(0)
    }

    /// Splits on `sep`, trimming whitespace.
    fn split(&self, sep: char) -> Vec<SourceText> {
        let mut parts = vec![SourceText::new()];
        for (off, c) in self.text.char_indices() {
            let (line, col) = self.positions[off];
            if c == sep {
                parts.push(SourceText::new());
            } else {
                parts.last_mut().expect("nonempty").push(c, line, col);
            }
        }
        for p in &mut parts {
            if p.text.is_empty() {
                p.end = self.end;
            }
        }
        parts.into_iter().map(|p| p.trimmed()).collect()
    }

    fn trimmed(&self) -> SourceText {
        let start = self.text.len() - self.text.trim_start().len();
        let end = self.text.trim_end().len().max(start);
        let mut out = SourceText::new();
        out.end = self.end;
        for (off, c) in self.text[start..end].char_indices() {
            let (line, col) = self.positions[start + off];
            out.push(c, line, col);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDefinition {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub ideal: Vec<SourceText>,
    pub cutoff: Option<usize>,
    pub depth: Option<usize>,
}

const KEYS: [&str; 5] = ["field", "vars", "ideal", "cutoff", "depth"];

fn valid_var(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_count(v: &SourceText, key: &str, positive: bool) -> Result<usize> {
    let n: usize = v
        .text
        .parse()
        .map_err(|_| v.error(0, format!("`{key}` expects a non-negative integer")))?;
    if positive && n == 0 {
        return Err(v.error(0, format!("`{key}` must be positive")));
    }
    Ok(n)
}

impl RingDefinition {
    pub fn parse(src: &str) -> Result<Self> {
        let mut values: Vec<(String, (usize, usize), SourceText)> = Vec::new();
        for (ln, raw) in src.lines().enumerate() {
            let line = ln + 1;
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            if body.starts_with(char::is_whitespace) {
                let Some((_, _, value)) = values.last_mut() else {
                    return Err(Error::RingFile {
                        line,
                        col: 1,
                        message: "continuation line before any key".into(),
                    });
                };
                value.push(' ', line, 1);
                for (k, c) in body.chars().enumerate() {
                    value.push(c, line, k + 1);
                }
                continue;
            }
            let Some(colon) = body.find(':') else {
                return Err(Error::RingFile {
                    line,
                    col: 1,
                    message: "expected `key: value`".into(),
                });
            };
            let key = body[..colon].trim().to_string();
            if !KEYS.contains(&key.as_str()) {
                return Err(Error::RingFile {
                    line,
                    col: 1,
                    message: format!("unknown key `{key}`"),
                });
            }
            if values.iter().any(|(k, _, _)| *k == key) {
                return Err(Error::RingFile {
                    line,
                    col: 1,
                    message: format!("duplicate key `{key}`"),
                });
            }
            let mut value = SourceText::new();
            let value_col = body[..=colon].chars().count() + 1;
            value.end = (line, value_col);
            for (k, c) in body[colon + 1..].chars().enumerate() {
                value.push(c, line, value_col + k);
            }
            values.push((key, (line, 1), value));
        }
        let get = |key: &str| {
            values
                .iter()
                .find(|(k, _, _)| k == key)
                .map(|(_, _, v)| v.trimmed())
        };
        let last_line = src.lines().count().max(1);
        let missing = |key: &str| Error::RingFile {
            line: last_line,
            col: 1,
            message: format!("missing key `{key}`"),
        };

        let field_text = get("field").ok_or_else(|| missing("field"))?;
        let field =
            FieldSpec::parse(&field_text.text).map_err(|e| field_text.error(0, e.to_string()))?;

        let vars_text = get("vars").ok_or_else(|| missing("vars"))?;
        let mut vars = Vec::new();
        for v in vars_text.split(',') {
            if !valid_var(&v.text) {
                let (line, col) = v.start();
                return Err(Error::RingFile {
                    line,
                    col,
                    message: format!("invalid variable name `{}`", v.text),
                });
            }
            if vars.contains(&v.text) {
                return Err(v.error(0, format!("duplicate variable `{}`", v.text)));
            }
            vars.push(v.text.clone());
        }

        let ideal_text = get("ideal").ok_or_else(|| missing("ideal"))?;
        let ideal = if ideal_text.text.is_empty() {
            Vec::new()
        } else {
            ideal_text.split(',')
        };
        if let Some(empty) = ideal.iter().find(|g| g.text.is_empty()) {
            let (line, col) = empty.end;
            return Err(Error::RingFile {
                line,
                col,
                message: "empty generator".into(),
            });
        }

        let cutoff = get("cutoff")
            .map(|v| parse_count(&v, "cutoff", true))
            .transpose()?;
        let depth = get("depth")
            .map(|v| parse_count(&v, "depth", false))
            .transpose()?;
        if let Some(d) = depth {
            if d > vars.len() {
                let v = get("depth").expect("present");
                return Err(v.error(0, "depth exceeds the number of variables"));
            }
        }
        Ok(RingDefinition {
            field,
            vars,
            ideal,
            cutoff,
            depth,
        })
    }

    /// Parses the generators over `F`, with positions of parse errors.
    pub fn generators<F: Field>(&self, desc: &F::Desc) -> Result<Vec<Polynomial<F>>> {
        self.ideal
            .iter()
            .map(|g| {
                parse_polynomial::<F>(&g.text, &self.vars, desc).map_err(|e| match e {
                    Error::PolyParse { offset, message } => g.error(offset, message),
                    other => other,
                })
            })
            .collect()
    }

    /// Builds the quotient ring; `cutoff` overrides the file value.
    pub fn build<F: Field>(
        &self,
        desc: &F::Desc,
        cutoff: Option<usize>,
    ) -> Result<GradedQuotientRing<F>> {
        let gens = self.generators::<F>(desc)?;
        for (g, text) in gens.iter().zip(&self.ideal) {
            if !g.is_homogeneous() {
                return Err(text.error(0, "generator is not homogeneous"));
            }
        }
        let ring = GradedQuotientRing::new(self.vars.clone(), gens, cutoff.or(self.cutoff), desc)?;
        if ring.is_artinian() && self.depth.is_some_and(|d| d > 0) {
            return Err(Error::Input("an artinian ring has depth 0".into()));
        }
        Ok(ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rational;

    #[test]
    fn parses_multiline_ideal() {
        let src = "# ring\nfield: QQ\nvars: x, y\nideal: x^2,\n   x*y, y^2\n";
        let d = RingDefinition::parse(src).unwrap();
        assert_eq!(d.vars, vec!["x", "y"]);
        assert_eq!(
            d.ideal.iter().map(|g| g.text.as_str()).collect::<Vec<_>>(),
            vec!["x^2", "x*y", "y^2"]
        );
        assert_eq!(d.ideal[1].locate(0), (5, 4));
        let r = d.build::<Rational>(&(), None).unwrap();
        assert_eq!(r.hilbert_series()[..3], [1, 2, 0]);
    }

    #[test]
    fn reports_positions() {
        let src = "field: QQ\nvars: x, y\nideal: x^2, x*+y\n";
        let e = RingDefinition::parse(src)
            .unwrap()
            .build::<Rational>(&(), None)
            .unwrap_err();
        assert!(
            matches!(
                e,
                Error::RingFile {
                    line: 3,
                    col: 15,
                    ..
                }
            ),
            "{e:?}"
        );

        let e = RingDefinition::parse("field: QQ\nvars: x, 1y\nideal: x^2\n").unwrap_err();
        assert!(
            matches!(
                e,
                Error::RingFile {
                    line: 2,
                    col: 10,
                    ..
                }
            ),
            "{e:?}"
        );

        let e = RingDefinition::parse("field: QQ\nvars: x\nideal: x^2\nfoo: 1\n").unwrap_err();
        assert!(
            matches!(
                e,
                Error::RingFile {
                    line: 4,
                    col: 1,
                    ..
                }
            ),
            "{e:?}"
        );

        let e = RingDefinition::parse("field: QQ\nideal: x^2\n").unwrap_err();
        assert!(
            matches!(e, Error::RingFile { ref message, .. } if message.contains("vars")),
            "{e:?}"
        );

        let e = RingDefinition::parse("field: QQ\nvars: x, y\nideal: x^2 + y\n")
            .unwrap()
            .build::<Rational>(&(), None);
        assert!(
            matches!(
                e,
                Err(Error::RingFile {
                    line: 3,
                    col: 8,
                    ..
                })
            ),
            "{e:?}"
        );
    }

    #[test]
    fn optional_fields() {
        let d = RingDefinition::parse("field: GF(101)\nvars: x\nideal: x^3\ncutoff: 7\ndepth: 0\n")
            .unwrap();
        assert_eq!(d.field, FieldSpec::Prime(101));
        assert_eq!((d.cutoff, d.depth), (Some(7), Some(0)));
        assert!(RingDefinition::parse("field: QQ\nvars: x\nideal: x^3\ncutoff: 0\n").is_err());
        assert!(RingDefinition::parse("field: QQ\nvars: x\nideal: x^3\ndepth: 2\n").is_err());
        assert!(RingDefinition::parse("field: QQ\nvars: x, x\nideal: x^3\n").is_err());
        assert!(RingDefinition::parse("field: RR\nvars: x\nideal: x^3\n").is_err());
    }
}
