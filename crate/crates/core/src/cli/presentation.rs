//! The key–value presentation format:
//!
//! ```text
//! # k[x,y,z]/(x^2, xy, y^2)
//! field = QQ
//! generators = x, y, z
//! commutative = true
//! relations = x*x, x*y, y*y
//! ```
//!
//! Repeated `relations` lines append. Coefficients are integers.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::algebra::QuadraticPresentation;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::freetensor::{NCPoly, Word};

/// A parsed file, before a coefficient field is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub field: FieldSpec,
    pub generators: Vec<String>,
    pub commutative: bool,
    /// Each relation as `word -> integer coefficient`.
    pub relations: Vec<BTreeMap<Word, i64>>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits on top-level commas, keeping the 0-based char offset of each piece.
fn split_commas(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if c == ',' {
            out.push((start, &s[start..i]));
            start = i + 1;
        }
    }
    out.push((start, &s[start..]));
    out
}

struct PolyParser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    // column of chars[0]
    base: usize,
    generators: &'a [String],
}

impl PolyParser<'_> {
    fn col(&self) -> usize {
        self.base + self.pos
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| syntax(self.line, self.base + start, format!("bad integer `{text}`")))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(is_ident) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    /// `[int ['*']] factor ('*' factor)*` or a bare integer.
    fn term(&mut self) -> Result<(i64, Vec<usize>, String)> {
        self.skip_ws();
        let start = self.pos;
        let mut coeff = 1i64;
        let mut word = Vec::new();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            coeff = self.number()?;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                self.skip_ws();
            } else if !self.peek().is_some_and(is_ident_start) {
                let text = self.text(start);
                return Ok((coeff, word, text));
            }
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if is_ident_start(c) => {}
                Some(c) => return Err(syntax(self.line, self.col(), format!("expected a generator, found `{c}`"))),
                None => return Err(syntax(self.line, self.col(), "expected a generator")),
            }
            let name = self.ident();
            let g = self
                .generators
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            self.skip_ws();
            let mut power = 1;
            if self.peek() == Some('^') {
                self.pos += 1;
                self.skip_ws();
                if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(syntax(self.line, self.col(), "expected an exponent"));
                }
                power = self.number()?;
                self.skip_ws();
            }
            word.extend(std::iter::repeat_n(g, power as usize));
            if self.peek() == Some('*') {
                self.pos += 1;
                continue;
            }
            break;
        }
        let text = self.text(start);
        Ok((coeff, word, text))
    }

    fn text(&self, start: usize) -> String {
        let s: String = self.chars[start..self.pos].iter().collect();
        s.trim().to_string()
    }

    fn poly(&mut self) -> Result<BTreeMap<Word, i64>> {
        let mut out: BTreeMap<Word, i64> = BTreeMap::new();
        self.skip_ws();
        let mut sign = 1i64;
        if let Some(c @ ('+' | '-')) = self.peek() {
            sign = if c == '-' { -1 } else { 1 };
            self.pos += 1;
        }
        loop {
            let (c, w, text) = self.term()?;
            if w.len() != 2 {
                return Err(Error::NonQuadraticRelation { term: text, degree: w.len() });
            }
            let v = c
                .checked_mul(sign)
                .and_then(|v| v.checked_add(*out.get(&Word(w.clone())).unwrap_or(&0)))
                .ok_or_else(|| syntax(self.line, self.col(), "coefficient overflow"))?;
            out.insert(Word(w), v);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                Some(c) => return Err(syntax(self.line, self.col(), format!("unexpected `{c}`"))),
            }
            self.pos += 1;
        }
        out.retain(|_, c| *c != 0);
        Ok(out)
    }
}

/// Parses the text of a presentation file.
pub fn parse_presentation_file(text: &str) -> Result<PresentationFile> {
    let mut field = None;
    let mut generators: Option<Vec<String>> = None;
    let mut commutative = None;
    // (line, value column, value)
    let mut relation_lines: Vec<(usize, usize, &str)> = Vec::new();
    let mut last_line = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let eq = content
            .find('=')
            .ok_or_else(|| syntax(line, content.len() - content.trim_start().len() + 1, "expected `key = value`"))?;
        let key = content[..eq].trim();
        let value = &content[eq + 1..];
        let value_col = eq + 2;
        let once = |seen: bool| if seen { Err(syntax(line, 1, format!("`{key}` given twice"))) } else { Ok(()) };
        match key {
            "field" => {
                once(field.is_some())?;
                field = Some(value.trim().parse::<FieldSpec>().map_err(|e| match e {
                    Error::InvalidField(m) => syntax(line, value_col, m),
                    other => other,
                })?);
            }
            "generators" => {
                once(generators.is_some())?;
                let mut names = Vec::new();
                for (off, piece) in split_commas(value) {
                    let name = piece.trim();
                    let col = value_col + off + (piece.len() - piece.trim_start().len());
                    if name.is_empty() || !name.starts_with(is_ident_start) || !name.chars().all(is_ident) {
                        return Err(syntax(line, col, format!("`{name}` is not a generator name")));
                    }
                    if names.iter().any(|n| n == name) {
                        return Err(syntax(line, col, format!("duplicate generator `{name}`")));
                    }
                    names.push(name.to_string());
                }
                generators = Some(names);
            }
            "commutative" => {
                once(commutative.is_some())?;
                commutative = Some(match value.trim() {
                    "true" | "yes" => true,
                    "false" | "no" => false,
                    other => return Err(syntax(line, value_col, format!("expected true or false, found `{other}`"))),
                });
            }
            "relations" => relation_lines.push((line, value_col, value)),
            other => return Err(syntax(line, 1, format!("unknown key `{other}`"))),
        }
    }
    let generators = generators.ok_or_else(|| syntax(last_line + 1, 1, "missing `generators`"))?;
    let mut relations = Vec::new();
    for (line, col, value) in relation_lines {
        if value.trim().is_empty() {
            continue;
        }
        for (off, piece) in split_commas(value) {
            let mut p = PolyParser {
                chars: piece.chars().collect(),
                pos: 0,
                line,
                base: col + off,
                generators: &generators,
            };
            if piece.trim().is_empty() {
                return Err(syntax(line, col + off, "empty relation"));
            }
            relations.push(p.poly()?);
        }
    }
    Ok(PresentationFile {
        field: field.unwrap_or(FieldSpec::Rationals),
        generators,
        commutative: commutative.unwrap_or(false),
        relations,
    })
}

impl PresentationFile {
    /// Maps the integer coefficients into `field`.
    pub fn to_presentation<F: Field>(&self, field: F) -> Result<QuadraticPresentation<F>> {
        let rels = self
            .relations
            .iter()
            .map(|r| NCPoly::from_terms(&field, r.iter().map(|(w, c)| (w.clone(), field.from_i64(*c)))))
            .collect::<Result<Vec<_>>>()?;
        QuadraticPresentation::new(field, self.generators.clone(), rels, self.commutative)
    }
}

/// Renders a presentation in the file format; with the commutative flag set,
/// the commutators it implies are left out.
pub fn render_presentation<F: Field>(pres: &QuadraticPresentation<F>) -> String {
    let f = pres.field();
    let names = pres.generator_names();
    let rels: Vec<String> = pres
        .relations()
        .iter()
        .filter(|r| !(pres.is_commutative() && is_commutator(f, r)))
        .map(|r| r.render(f, names, "*"))
        .collect();
    let mut out = String::new();
    out.push_str(&format!("field = {}\n", f.spec()));
    out.push_str(&format!("generators = {}\n", names.join(", ")));
    out.push_str(&format!("commutative = {}\n", pres.is_commutative()));
    out.push_str(&format!("relations = {}\n", rels.join(", ")));
    out
}

fn is_commutator<F: Field>(f: &F, r: &NCPoly<F>) -> bool {
    let t: Vec<(&Word, &F::Elem)> = r.terms().iter().collect();
    if t.len() != 2 {
        return false;
    }
    let (u, v) = (t[0].0.letters(), t[1].0.letters());
    u.len() == 2 && u[0] == v[1] && u[1] == v[0] && f.is_zero(&f.add(t[0].1, t[1].1))
}

/// SHA-256 over a canonical rendering: field, generator names and the
/// reduced echelon basis of the relation space.
pub fn algebra_hash<F: Field>(pres: &QuadraticPresentation<F>) -> String {
    let f = pres.field();
    let d = pres.d();
    let mut canon = format!("field={}\ngenerators={}\n", f.spec(), pres.generator_names().join(","));
    for row in pres.relation_space().sparse_rows() {
        let poly = NCPoly::from_sparse(f, d, 2, row);
        canon.push_str(&poly.render(f, pres.generator_names(), "*"));
        canon.push('\n');
    }
    hex::encode(Sha256::digest(canon.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    const EX0: &str = "# ex0\nfield = QQ\ngenerators = x, y, z\ncommutative = true\nrelations = x*x, x*y, y*y\n";

    #[test]
    fn ex0_file() {
        let file = parse_presentation_file(EX0).unwrap();
        let p = file.to_presentation(Rationals).unwrap();
        assert_eq!(p.d(), 3);
        assert_eq!(p.relations().len(), 6);
    }

    #[test]
    fn exponents_signs_and_coefficients() {
        let text = "generators = x, y\nrelations = x^2 - 3*y*x + 2 x*y, -y^2\nrelations = x*y + y*x\n";
        let file = parse_presentation_file(text).unwrap();
        assert_eq!(file.relations.len(), 3);
        let r0 = &file.relations[0];
        assert_eq!(r0[&Word(vec![0, 0])], 1);
        assert_eq!(r0[&Word(vec![1, 0])], -3);
        assert_eq!(r0[&Word(vec![0, 1])], 2);
        assert_eq!(file.relations[1][&Word(vec![1, 1])], -1);
        assert_eq!(file.relations[2].len(), 2);
        assert!(!file.commutative);
    }

    #[test]
    fn rejections() {
        let cubic = "generators = x, y\nrelations = x*y, x*x*x\n";
        match parse_presentation_file(cubic) {
            Err(Error::NonQuadraticRelation { term, degree }) => assert_eq!((term.as_str(), degree), ("x*x*x", 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_presentation_file("generators = x\nrelations = x*w\n"),
            Err(Error::UnknownGenerator(w)) if w == "w"
        ));
        match parse_presentation_file("generators = x, y\nrelations = x*y, x*/y\n") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 20)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_presentation_file("generators = x, x\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_presentation_file("gens = x\n"), Err(Error::Syntax { line: 1, column: 1, .. })));
        assert!(matches!(parse_presentation_file("field = RR\ngenerators = x\n"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn duplicates_collapse() {
        let file = parse_presentation_file("generators = x, y\nrelations = x*y, x*y, 2*x*y\n").unwrap();
        assert_eq!(file.to_presentation(Rationals).unwrap().relations().len(), 1);
    }

    #[test]
    fn round_trip() {
        for text in [
            EX0,
            "field = GF 7\ngenerators = a, b\nrelations = a*b + b*a, 3*a*a - b*b\n",
            "generators = x, y\nrelations =\n",
        ] {
            let file = parse_presentation_file(text).unwrap();
            match file.field {
                FieldSpec::Rationals => {
                    let p = file.to_presentation(Rationals).unwrap();
                    let again = parse_presentation_file(&render_presentation(&p)).unwrap();
                    let q = again.to_presentation(Rationals).unwrap();
                    assert!(p.same_algebra(&q));
                    assert_eq!(again.commutative, file.commutative);
                    assert_eq!(algebra_hash(&p), algebra_hash(&q));
                }
                FieldSpec::Prime(m) => {
                    let f = PrimeField::new(m).unwrap();
                    let p = file.to_presentation(f).unwrap();
                    let rendered = render_presentation(&p);
                    assert!(rendered.starts_with("field = GF 7\n"));
                    let q = parse_presentation_file(&rendered).unwrap().to_presentation(f).unwrap();
                    assert!(p.same_algebra(&q));
                }
            }
        }
        let p = parse_presentation_file(EX0).unwrap().to_presentation(Rationals).unwrap();
        assert_eq!(render_presentation(&p).lines().last().unwrap(), "relations = x*x, x*y, y*y");
    }

    #[test]
    fn hash_is_presentation_independent() {
        let a = parse_presentation_file("generators = x, y\nrelations = x*y, x*y + y*x\n").unwrap();
        let b = parse_presentation_file("generators = x, y\nrelations = y*x, 2*x*y\n").unwrap();
        let (a, b) = (a.to_presentation(Rationals).unwrap(), b.to_presentation(Rationals).unwrap());
        assert_eq!(algebra_hash(&a), algebra_hash(&b));
        assert_eq!(algebra_hash(&a).len(), 64);
    }
}
