//! Line-oriented group file format.
//!
//! ```text
//! # comment
//! name: S4
//! degree: 4
//! gen: (1,2)
//! gen: (1,2,3,4)
//! ```
//!
//! `name:` and `degree:` appear at most once, before any `gen:` line.
//! Generators are in disjoint-cycle notation with 1-based points; `()` is
//! the identity. `#` starts a comment anywhere on a line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::{Perm, MAX_DEGREE};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl GroupFile {
    pub fn from_group(name: impl Into<String>, g: &Group) -> Self {
        GroupFile {
            name: name.into(),
            degree: g.degree(),
            generators: g.gens().to_vec(),
        }
    }

    pub fn to_group(&self) -> Result<Group> {
        Group::new(self.degree, self.generators.iter().cloned())
    }

    /// Canonical text form.
    pub fn emit(&self) -> String {
        let mut s = String::new();
        writeln!(s, "name: {}", self.name).unwrap();
        writeln!(s, "degree: {}", self.degree).unwrap();
        for g in &self.generators {
            writeln!(s, "gen: {g}").unwrap();
        }
        s
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_group_file(text: &str) -> Result<GroupFile> {
    let mut name: Option<String> = None;
    let mut degree: Option<usize> = None;
    let mut generators = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let col0 = content.len() - content.trim_start().len();
        let Some(colon) = content.find(':') else {
            return Err(err(line_no, col0 + 1, "expected `key: value`"));
        };
        let key = content[..colon].trim();
        let value_start = colon + 1;
        let value = &content[value_start..];
        let value_col = value_start + (value.len() - value.trim_start().len()) + 1;
        let value = value.trim();
        match key {
            "name" => {
                if name.is_some() {
                    return Err(err(line_no, col0 + 1, "duplicate `name:`"));
                }
                if value.is_empty() || value.chars().any(char::is_whitespace) {
                    return Err(err(line_no, value_col, "name must be a non-empty identifier"));
                }
                name = Some(value.to_string());
            }
            "degree" => {
                if degree.is_some() {
                    return Err(err(line_no, col0 + 1, "duplicate `degree:`"));
                }
                if !generators.is_empty() {
                    return Err(err(line_no, col0 + 1, "`degree:` must precede `gen:` lines"));
                }
                let d: usize = value
                    .parse()
                    .map_err(|_| err(line_no, value_col, format!("invalid degree `{value}`")))?;
                if d > MAX_DEGREE {
                    return Err(err(line_no, value_col, format!("degree {d} exceeds {MAX_DEGREE}")));
                }
                degree = Some(d);
            }
            "gen" => {
                let Some(d) = degree else {
                    return Err(err(line_no, col0 + 1, "`gen:` before `degree:`"));
                };
                generators.push(parse_cycles_at(d, value, line_no, value_col)?);
            }
            other => {
                return Err(err(line_no, col0 + 1, format!("unknown key `{other}`")));
            }
        }
    }
    let degree = degree.ok_or_else(|| err(1, 1, "missing `degree:`"))?;
    Ok(GroupFile {
        name: name.unwrap_or_else(|| "unnamed".to_string()),
        degree,
        generators,
    })
}

/// Parses a group file and builds the group.
pub fn parse_group(text: &str) -> Result<(String, Group)> {
    let file = parse_group_file(text)?;
    let g = file.to_group()?;
    Ok((file.name, g))
}

/// One permutation in cycle notation.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Perm> {
    parse_cycles_at(degree, text.trim(), 1, 1)
}

/// Generators separated by `;`, e.g. `(1,2)(3,4); (1,3)`.
pub fn parse_generators(degree: usize, text: &str) -> Result<Vec<Perm>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        let lead = part.len() - part.trim_start().len();
        if !part.trim().is_empty() {
            out.push(parse_cycles_at(degree, part.trim(), 1, offset + lead + 1)?);
        }
        offset += part.len() + 1;
    }
    Ok(out)
}

fn parse_cycles_at(degree: usize, text: &str, line: usize, col: usize) -> Result<Perm> {
    let bytes = text.as_bytes();
    let mut images: Vec<usize> = (0..degree).collect();
    let mut used = vec![false; degree];
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == bytes.len() {
        return Err(err(line, col, "empty permutation; use `()` for the identity"));
    }
    while i < bytes.len() {
        if bytes[i] != b'(' {
            return Err(err(line, col + i, format!("expected `(`, found `{}`", bytes[i] as char)));
        }
        i += 1;
        let mut cycle: Vec<usize> = Vec::new();
        loop {
            skip_ws(&mut i);
            if i < bytes.len() && bytes[i] == b')' && cycle.is_empty() {
                i += 1;
                break;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err(line, col + start, "expected a point"));
            }
            let pt: usize = text[start..i]
                .parse()
                .map_err(|_| err(line, col + start, "point out of range"))?;
            if pt == 0 || pt > degree {
                return Err(err(line, col + start, format!("point {pt} outside 1..{degree}")));
            }
            if used[pt - 1] {
                return Err(err(line, col + start, format!("duplicate point {pt}")));
            }
            used[pt - 1] = true;
            cycle.push(pt - 1);
            skip_ws(&mut i);
            match bytes.get(i) {
                Some(b',') => i += 1,
                Some(b')') => {
                    i += 1;
                    break;
                }
                Some(&c) => return Err(err(line, col + i, format!("unexpected `{}`", c as char))),
                None => return Err(err(line, col + i, "unterminated cycle")),
            }
        }
        for (k, &pt) in cycle.iter().enumerate() {
            images[pt] = cycle[(k + 1) % cycle.len()];
        }
        skip_ws(&mut i);
    }
    Perm::from_images(images).map_err(|e| err(line, col, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_s4() {
        let (name, g) = parse_group("name: S4\ndegree: 4\ngen: (1,2)\ngen: (1,2,3,4)\n").unwrap();
        assert_eq!(name, "S4");
        assert_eq!(g.order(), 24);
    }

    #[test]
    fn no_generators_is_trivial() {
        let (_, g) = parse_group("# nothing\nname: one\ndegree: 3\n").unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn duplicate_point_is_reported_with_position() {
        let e = parse_group("name: x\ndegree: 3\ngen: (1,1)\n").unwrap_err();
        match e {
            Error::Parse { line, column, message } => {
                assert_eq!(line, 3);
                assert_eq!(column, 9);
                assert!(message.contains("duplicate"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors() {
        assert!(parse_group("degree: 3\ngen: (1,4)\n").is_err());
        assert!(parse_group("degree: 3\ngen: (1,2\n").is_err());
        assert!(parse_group("degree: 3\ngen: 1,2\n").is_err());
        assert!(parse_group("gen: (1,2)\ndegree: 3\n").is_err());
        assert!(parse_group("degree: 3\ncolour: red\n").is_err());
        assert!(parse_group("name: a\n").is_err());
    }

    #[test]
    fn cycle_notation() {
        let p = parse_cycles(5, " (1, 2)(3,4,5) ").unwrap();
        assert_eq!(p.to_string(), "(1,2)(3,4,5)");
        assert!(parse_cycles(5, "()").unwrap().is_identity());
        assert!(parse_cycles(5, "(1,2)(2,3)").is_err());
        let gens = parse_generators(4, "(1,2)(3,4); (1,3)").unwrap();
        assert_eq!(gens.len(), 2);
        assert!(parse_generators(4, "").unwrap().is_empty());
    }

    #[test]
    fn canonical_round_trip() {
        let text = "name: D8\ndegree: 4\ngen: (1,2,3,4)\ngen: (2,4)\n";
        let file = parse_group_file(text).unwrap();
        assert_eq!(file.emit(), text);
    }
}
