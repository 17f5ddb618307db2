//! The `rank3gen v1` generator-file format.
//!
//! ```text
//! rank3gen v1
//! dim <n> field <q> gens <k>
//! modulus <c0 … ca>          (only for q = p^a with a > 1; optional)
//! form                       (optional, then n rows)
//! gen 1                      (k blocks of n rows)
//! ```
//!
//! Lines starting with `#` are comments. Two comment forms carry data:
//! `# base <name> <n entries>` names a base point, and `# <key> <text>`
//! (e.g. `# factor-of …`, `# label …`) is kept as metadata.

use std::fmt::Write as _;
use std::path::Path;

use rank3_core::constructions::ConstructedCase;
use rank3_core::groups::MatrixGroup;
use rank3_core::{Elem, FiniteField, Mat, QuadraticSpace};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenFileError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, GenFileError> {
    Err(GenFileError::Parse { line, msg: msg.into() })
}

/// A parsed generator file.
#[derive(Clone, Debug)]
pub struct GeneratorFile {
    pub field: FiniteField,
    pub dim: usize,
    pub gens: Vec<Mat>,
    pub form: Option<Mat>,
    pub bases: Vec<(String, Vec<Elem>)>,
    pub meta: Vec<(String, String)>,
}

/// `q = p^a` for a prime `p`.
fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut t, mut a) = (q, 0);
    while t % p == 0 {
        t /= p;
        a += 1;
    }
    (t == 1).then_some((p, a))
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Option<(usize, &'a str)> {
        let it = self.items.get(self.pos).copied();
        self.pos += 1;
        it
    }
    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }
    fn last_line(&self) -> usize {
        self.items.last().map_or(0, |x| x.0)
    }
}

fn parse_row(line: usize, text: &str, n: usize, q: u32) -> Result<Vec<Elem>, GenFileError> {
    let mut row = Vec::with_capacity(n);
    for tok in text.split_whitespace() {
        let v: u32 = match tok.parse() {
            Ok(v) => v,
            Err(_) => return err(line, format!("'{tok}' is not a field element")),
        };
        if v >= q {
            return err(line, format!("entry {v} is not in [0, {q})"));
        }
        row.push(v);
    }
    if row.len() != n {
        return err(line, format!("expected {n} entries, found {}", row.len()));
    }
    Ok(row)
}

fn parse_matrix(lines: &mut Lines, n: usize, q: u32, what: &str) -> Result<Mat, GenFileError> {
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let Some((ln, text)) = lines.next() else {
            return err(lines.last_line(), format!("{what} ends after {} of {n} rows", rows.len()));
        };
        rows.push(parse_row(ln, text, n, q)?);
    }
    Ok(if n == 0 { Mat::zeros(0, 0) } else { Mat::from_rows(&rows) })
}

impl GeneratorFile {
    pub fn parse(text: &str) -> Result<Self, GenFileError> {
        let mut bases = Vec::new();
        let mut meta = Vec::new();
        let mut items = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let t = raw.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(c) = t.strip_prefix('#') {
                let c = c.trim();
                if let Some(rest) = c.strip_prefix("base ") {
                    let mut toks = rest.split_whitespace();
                    let name = toks.next().unwrap_or_default().to_string();
                    bases.push((line, name, toks.collect::<Vec<_>>().join(" ")));
                } else if let Some((k, v)) = c.split_once(char::is_whitespace) {
                    meta.push((k.to_string(), v.trim().to_string()));
                }
                continue;
            }
            items.push((line, t));
        }
        let mut lines = Lines { items, pos: 0 };
        match lines.next() {
            Some((_, "rank3gen v1")) => {}
            Some((ln, other)) => return err(ln, format!("expected header 'rank3gen v1', found '{other}'")),
            None => return err(1, "empty file"),
        }
        let Some((ln, dims)) = lines.next() else {
            return err(1, "missing 'dim … field … gens …' line");
        };
        let toks: Vec<&str> = dims.split_whitespace().collect();
        let (n, q, k) = match toks.as_slice() {
            ["dim", n, "field", q, "gens", k] => match (n.parse::<usize>(), q.parse::<u32>(), k.parse::<usize>()) {
                (Ok(n), Ok(q), Ok(k)) => (n, q, k),
                _ => return err(ln, "dim, field and gens must be non-negative integers"),
            },
            _ => return err(ln, "expected 'dim <n> field <q> gens <k>'"),
        };
        let Some((p, a)) = prime_power(q) else {
            return err(ln, format!("field order {q} is not a prime power"));
        };
        let mut modulus = None;
        if let Some((ml, text)) = lines.peek() {
            if let Some(rest) = text.strip_prefix("modulus") {
                lines.next();
                if a == 1 {
                    return err(ml, format!("GF({q}) is a prime field and takes no modulus"));
                }
                let cs: Result<Vec<u32>, _> = rest.split_whitespace().map(str::parse).collect();
                match cs {
                    Ok(cs) => modulus = Some((ml, cs)),
                    Err(_) => return err(ml, "modulus coefficients must be integers"),
                }
            }
        }
        let field = match &modulus {
            Some((ml, cs)) => FiniteField::with_modulus(p, a, Some(cs)).or_else(|e| err(*ml, e.to_string()))?,
            None => FiniteField::new(p, a).or_else(|e| err(ln, e.to_string()))?,
        };
        let mut form = None;
        if let Some((fl, "form")) = lines.peek() {
            lines.next();
            let g = parse_matrix(&mut lines, n, q, "form")?;
            if !g.is_symmetric() {
                return err(fl, "form is not symmetric");
            }
            if n > 0 && g.det(&field) == 0 {
                return err(fl, "form is degenerate");
            }
            form = Some(g);
        }
        let mut gens = Vec::with_capacity(k);
        for i in 1..=k {
            let Some((gl, head)) = lines.next() else {
                return err(lines.last_line(), format!("missing block 'gen {i}'"));
            };
            if head.split_whitespace().collect::<Vec<_>>() != ["gen", &i.to_string()] {
                return err(gl, format!("expected 'gen {i}', found '{head}'"));
            }
            let g = parse_matrix(&mut lines, n, q, &format!("gen {i}"))?;
            if n > 0 && g.det(&field) == 0 {
                return err(gl, format!("generator {i} is singular"));
            }
            if let Some(b) = &form {
                if g.mul(b, &field).mul(&g.transpose(), &field) != *b {
                    return err(gl, format!("generator {i} does not preserve the form"));
                }
            }
            gens.push(g);
        }
        if let Some((ln, text)) = lines.next() {
            return err(ln, format!("unexpected trailing line '{text}'"));
        }
        let mut parsed_bases = Vec::with_capacity(bases.len());
        for (bl, name, entries) in bases {
            if name.is_empty() {
                return err(bl, "base point needs a name");
            }
            parsed_bases.push((name, parse_row(bl, &entries, n, q)?));
        }
        Ok(GeneratorFile { field, dim: n, gens, form, bases: parsed_bases, meta })
    }

    pub fn read(path: &Path) -> Result<Self, GenFileError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| GenFileError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn group(&self) -> MatrixGroup {
        MatrixGroup::new(self.field.clone(), self.dim, self.gens.clone()).expect("validated while parsing")
    }

    pub fn space(&self) -> Option<QuadraticSpace> {
        self.form.as_ref().map(|g| QuadraticSpace::new(self.field.clone(), g.clone()).expect("validated while parsing"))
    }

    pub fn base(&self, name: &str) -> Option<&[Elem]> {
        self.bases.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn from_case(case: &ConstructedCase) -> Self {
        GeneratorFile {
            field: case.space.field().clone(),
            dim: case.space.dim(),
            gens: case.group.gens().to_vec(),
            form: Some(case.space.gram().clone()),
            bases: case.base_points.iter().map(|b| (b.name.clone(), b.vector.clone())).collect(),
            meta: vec![("label".into(), case.label.clone()), ("citation".into(), case.citation.clone())],
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("rank3gen v1\n");
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k} {v}");
        }
        let n = self.dim;
        let _ = writeln!(out, "dim {n} field {} gens {}", self.field.order(), self.gens.len());
        if self.field.degree() > 1 {
            let cs: Vec<String> = self.field.modulus().iter().map(u32::to_string).collect();
            let _ = writeln!(out, "modulus {}", cs.join(" "));
        }
        let write_mat = |out: &mut String, m: &Mat| {
            for r in 0..m.rows() {
                let row: Vec<String> = m.row(r).iter().map(u32::to_string).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        };
        for (name, v) in &self.bases {
            let row: Vec<String> = v.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "# base {name} {}", row.join(" "));
        }
        if let Some(g) = &self.form {
            out.push_str("form\n");
            write_mat(&mut out, g);
        }
        for (i, g) in self.gens.iter().enumerate() {
            let _ = writeln!(out, "gen {}", i + 1);
            write_mat(&mut out, g);
        }
        out
    }
}

/// Reads a file and returns its validated group.
pub fn parse_generator_file(path: &Path) -> Result<MatrixGroup, GenFileError> {
    Ok(GeneratorFile::read(path)?.group())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "rank3gen v1\ndim 2 field 3 gens 1\ngen 1\n0 1\n1 0\n";

    #[test]
    fn minimal_file() {
        let g = GeneratorFile::parse(SMALL).unwrap();
        assert_eq!((g.dim, g.gens.len()), (2, 1));
        assert!(g.form.is_none());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "rank3gen v1\ndim 2 field 3 gens 1\ngen 1\n1 1\n1 1\n";
        let e = GeneratorFile::parse(bad).unwrap_err().to_string();
        assert!(e.starts_with("line 3:") && e.contains("singular"), "{e}");
        let e = GeneratorFile::parse("rank3gen v2\n").unwrap_err().to_string();
        assert!(e.starts_with("line 1:"), "{e}");
        let e = GeneratorFile::parse("rank3gen v1\ndim 2 field 6 gens 0\n").unwrap_err().to_string();
        assert!(e.contains("prime power"), "{e}");
        let e = GeneratorFile::parse("rank3gen v1\ndim 2 field 3 gens 1\ngen 1\n0 3\n1 0\n").unwrap_err().to_string();
        assert!(e.starts_with("line 4:"), "{e}");
    }

    #[test]
    fn gf27_modulus_line() {
        let text = "rank3gen v1\ndim 1 field 27 gens 1\nmodulus 1 2 0 1\ngen 1\n3\n";
        let g = GeneratorFile::parse(text).unwrap();
        assert_eq!(g.field.order(), 27);
        assert_eq!(g.field.modulus(), &[1, 2, 0, 1]);
        let e = GeneratorFile::parse("rank3gen v1\ndim 1 field 27 gens 0\nmodulus 1 1 0 1\n").unwrap_err();
        assert!(e.to_string().starts_with("line 3:"));
    }

    #[test]
    fn form_preservation_is_checked() {
        let text = "rank3gen v1\ndim 2 field 3 gens 1\nform\n1 0\n0 1\ngen 1\n1 1\n0 1\n";
        let e = GeneratorFile::parse(text).unwrap_err().to_string();
        assert!(e.contains("preserve"), "{e}");
    }
}
