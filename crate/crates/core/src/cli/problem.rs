//! The sectioned problem-file format.
//!
//! ```text
//! [field]
//! vars = x, t
//! param = t
//!
//! [sigma s]
//! x = x + 1
//! inverse x = x - 1
//!
//! [system]
//! n = 1
//! A s = [[t]]
//!
//! [seed 1]
//! X'[1,1] - x/t*X[1,1]
//! ```
//!
//! Other sections: `[delta ID]` (images of the variables under a derivation),
//! `[partial ID]` (the parameter derivation given by images, instead of `param`),
//! `[ideal NAME]` (a polynomial ideal with `vars`, optional `order` and one
//! generator per line) and `[options]`. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;

use crate::basefield::{BaseField, BaseFieldError, OperatorSpec, RationalFunction};
use crate::expr::{ParseError, Pos};
use crate::groebner::{Budget, IdealPresentation};
use crate::jetring::{JetOptions, JetPoly, JetRing};
use crate::linsys::{KMatrix, LinearSystem, Matrix};
use crate::polyring::{Field, PolyRing, TermOrder};

/// A problem-file error anchored at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ProblemError {}

impl ProblemError {
    fn at(pos: Pos, message: impl Into<String>) -> Self {
        ProblemError {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }
}

impl From<ParseError> for ProblemError {
    fn from(e: ParseError) -> Self {
        ProblemError {
            line: e.line,
            column: e.column,
            message: e.message,
        }
    }
}

/// Text with the position it was read from. Equality ignores the position.
#[derive(Clone, Debug, Eq)]
pub struct Spanned {
    pub text: String,
    pub pos: Pos,
}

impl PartialEq for Spanned {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl Spanned {
    pub fn new(text: impl Into<String>) -> Self {
        Spanned {
            text: text.into(),
            pos: Pos { line: 1, column: 1 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSection {
    pub vars: Vec<String>,
    /// `∂ = d/d(param)`.
    pub param: Option<Spanned>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSection {
    pub id: String,
    pub images: Vec<(String, Spanned)>,
    /// Only for automorphisms.
    pub inverse: Vec<(String, Spanned)>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixEntry {
    pub id: String,
    pub rows: Vec<Vec<Spanned>>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSection {
    pub n: usize,
    pub a: Vec<MatrixEntry>,
    pub b: Vec<MatrixEntry>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSection {
    pub name: String,
    pub vars: Vec<String>,
    pub order: Option<String>,
    pub generators: Vec<Spanned>,
    pub pos: Pos,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub max_reductions: Option<u64>,
    pub max_degree: Option<u32>,
    pub dmax: Option<usize>,
    pub degree_bound: Option<u32>,
    pub order: Option<String>,
}

pub const DEFAULT_DMAX: usize = 6;
pub const DEFAULT_DEGREE_BOUND: u32 = 3;

impl Options {
    pub fn budget(&self) -> Budget {
        let d = Budget::default();
        Budget {
            max_reductions: self.max_reductions.unwrap_or(d.max_reductions),
            max_degree: self.max_degree.unwrap_or(d.max_degree),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProblemFile {
    pub field: Option<FieldSection>,
    pub partial: Option<OperatorSection>,
    pub sigmas: Vec<OperatorSection>,
    pub deltas: Vec<OperatorSection>,
    pub system: Option<SystemSection>,
    pub seeds: BTreeMap<usize, Vec<Spanned>>,
    pub ideals: Vec<IdealSection>,
    pub options: Options,
    /// Position of each `[seed d]` header.
    pub seed_pos: BTreeMap<usize, Pos>,
}

enum Section {
    None,
    Field,
    Partial,
    Sigma,
    Delta,
    System,
    Seed(usize),
    Ideal,
    Options,
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || c == '_')
}

fn order_name(s: &str, pos: Pos) -> Result<String, ProblemError> {
    match s {
        "grevlex" | "lex" => Ok(s.to_string()),
        _ => Err(ProblemError::at(pos, format!("unknown term order '{s}' (expected grevlex or lex)"))),
    }
}

fn term_order(s: Option<&str>) -> TermOrder {
    match s {
        Some("lex") => TermOrder::Lex,
        _ => TermOrder::Grevlex,
    }
}

/// Splits `a, b, c` into trimmed items with their columns.
fn split_list(text: &str, pos: Pos) -> Vec<(String, Pos)> {
    let mut out = Vec::new();
    let mut start = 0;
    let chars: Vec<char> = text.chars().collect();
    for i in 0..=chars.len() {
        if i == chars.len() || chars[i] == ',' {
            let raw: String = chars[start..i].iter().collect();
            let lead = raw.chars().take_while(|c| c.is_whitespace()).count();
            out.push((
                raw.trim().to_string(),
                Pos {
                    line: pos.line,
                    column: pos.column + start + lead,
                },
            ));
            start = i + 1;
        }
    }
    out
}

fn parse_names(text: &str, pos: Pos) -> Result<Vec<String>, ProblemError> {
    let mut out = Vec::new();
    for (name, p) in split_list(text, pos) {
        if !is_ident(&name) {
            return Err(ProblemError::at(p, format!("'{name}' is not a valid variable name")));
        }
        if out.contains(&name) {
            return Err(ProblemError::at(p, format!("duplicate variable '{name}'")));
        }
        out.push(name);
    }
    Ok(out)
}

/// Parses `[[a, b], [c, d]]`.
fn parse_matrix(text: &str, pos: Pos) -> Result<Vec<Vec<Spanned>>, ProblemError> {
    let chars: Vec<char> = text.chars().collect();
    let at = |i: usize| Pos {
        line: pos.line,
        column: pos.column + i,
    };
    let mut i = 0;
    let skip = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let expect = |i: &mut usize, c: char| -> Result<(), ProblemError> {
        skip(i);
        if chars.get(*i) == Some(&c) {
            *i += 1;
            Ok(())
        } else {
            Err(ProblemError::at(at(*i), format!("expected '{c}' in matrix")))
        }
    };
    expect(&mut i, '[')?;
    let mut rows = Vec::new();
    loop {
        expect(&mut i, '[')?;
        let start = i;
        while i < chars.len() && chars[i] != ']' {
            if chars[i] == '[' {
                return Err(ProblemError::at(at(i), "unexpected '[' in matrix entry"));
            }
            i += 1;
        }
        let inner: String = chars[start..i].iter().collect();
        let row: Vec<Spanned> = split_list(&inner, at(start))
            .into_iter()
            .map(|(text, pos)| Spanned { text, pos })
            .collect();
        if let Some(e) = row.iter().find(|e| e.text.is_empty()) {
            return Err(ProblemError::at(e.pos, "empty matrix entry"));
        }
        rows.push(row);
        expect(&mut i, ']')?;
        skip(&mut i);
        match chars.get(i) {
            Some(',') => i += 1,
            Some(']') => {
                i += 1;
                break;
            }
            _ => return Err(ProblemError::at(at(i), "expected ',' or ']' in matrix")),
        }
    }
    skip(&mut i);
    if i < chars.len() {
        return Err(ProblemError::at(at(i), "trailing text after matrix"));
    }
    Ok(rows)
}

fn parse_number<T: std::str::FromStr>(text: &str, pos: Pos, what: &str) -> Result<T, ProblemError> {
    text.parse()
        .map_err(|_| ProblemError::at(pos, format!("{what} must be a non-negative integer, got '{text}'")))
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, ProblemError> {
        let mut p = ProblemFile::default();
        let mut section = Section::None;
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let content = raw.split('#').next().unwrap_or("");
            let lead = content.chars().take_while(|c| c.is_whitespace()).count();
            let body = content.trim();
            if body.is_empty() {
                continue;
            }
            let pos = Pos {
                line: line_no,
                column: lead + 1,
            };
            if body.starts_with('[') {
                section = p.header(body, pos)?;
                continue;
            }
            match section {
                Section::None => return Err(ProblemError::at(pos, "text before the first section header")),
                Section::Seed(d) => p.seeds.get_mut(&d).unwrap().push(Spanned {
                    text: body.to_string(),
                    pos,
                }),
                Section::Ideal if !body.contains('=') => p.ideals.last_mut().unwrap().generators.push(Spanned {
                    text: body.to_string(),
                    pos,
                }),
                _ => {
                    let (key, value, vpos) = split_kv(body, pos)?;
                    p.entry(&section, &key, value, pos, vpos)?;
                }
            }
        }
        p.validate()?;
        Ok(p)
    }

    fn header(&mut self, body: &str, pos: Pos) -> Result<Section, ProblemError> {
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| ProblemError::at(pos, "malformed section header"))?;
        let words: Vec<&str> = inner.split_whitespace().collect();
        let arg = |k: &str| -> Result<String, ProblemError> {
            match words.as_slice() {
                [_, id] if is_ident(id) => Ok(id.to_string()),
                _ => Err(ProblemError::at(pos, format!("section [{k}] needs one identifier argument"))),
            }
        };
        let op = |id: String| OperatorSection {
            id,
            images: Vec::new(),
            inverse: Vec::new(),
            pos,
        };
        let no_arg = |k: &str| -> Result<(), ProblemError> {
            if words.len() == 1 {
                Ok(())
            } else {
                Err(ProblemError::at(pos, format!("section [{k}] takes no argument")))
            }
        };
        let dup = |k: &str| ProblemError::at(pos, format!("duplicate section [{k}]"));
        match words.first().copied() {
            Some("field") => {
                no_arg("field")?;
                if self.field.is_some() {
                    return Err(dup("field"));
                }
                self.field = Some(FieldSection {
                    vars: Vec::new(),
                    param: None,
                    pos,
                });
                Ok(Section::Field)
            }
            Some("partial") => {
                if self.partial.is_some() {
                    return Err(dup("partial"));
                }
                self.partial = Some(op(arg("partial")?));
                Ok(Section::Partial)
            }
            Some("sigma") => {
                let id = arg("sigma")?;
                self.check_new_operator(&id, pos)?;
                self.sigmas.push(op(id));
                Ok(Section::Sigma)
            }
            Some("delta") => {
                let id = arg("delta")?;
                self.check_new_operator(&id, pos)?;
                self.deltas.push(op(id));
                Ok(Section::Delta)
            }
            Some("system") => {
                no_arg("system")?;
                if self.system.is_some() {
                    return Err(dup("system"));
                }
                self.system = Some(SystemSection {
                    n: 0,
                    a: Vec::new(),
                    b: Vec::new(),
                    pos,
                });
                Ok(Section::System)
            }
            Some("seed") => {
                let d = match words.as_slice() {
                    [_, d] => parse_number::<usize>(d, pos, "seed level")?,
                    _ => return Err(ProblemError::at(pos, "section [seed] needs a level argument")),
                };
                if self.seeds.insert(d, Vec::new()).is_some() {
                    return Err(dup(&format!("seed {d}")));
                }
                self.seed_pos.insert(d, pos);
                Ok(Section::Seed(d))
            }
            Some("ideal") => {
                let name = arg("ideal")?;
                if self.ideals.iter().any(|i| i.name == name) {
                    return Err(dup(&format!("ideal {name}")));
                }
                self.ideals.push(IdealSection {
                    name,
                    vars: Vec::new(),
                    order: None,
                    generators: Vec::new(),
                    pos,
                });
                Ok(Section::Ideal)
            }
            Some("options") => {
                no_arg("options")?;
                Ok(Section::Options)
            }
            Some(other) => Err(ProblemError::at(pos, format!("unknown section [{other}]"))),
            None => Err(ProblemError::at(pos, "empty section header")),
        }
    }

    fn check_new_operator(&self, id: &str, pos: Pos) -> Result<(), ProblemError> {
        let taken = self.sigmas.iter().chain(&self.deltas).chain(&self.partial).any(|o| o.id == id);
        if taken {
            return Err(ProblemError::at(pos, format!("duplicate operator id '{id}'")));
        }
        Ok(())
    }

    fn entry(&mut self, section: &Section, key: &str, value: Spanned, pos: Pos, vpos: Pos) -> Result<(), ProblemError> {
        let unknown = || ProblemError::at(pos, format!("unknown key '{key}'"));
        let once = |set: bool| {
            if set {
                Err(ProblemError::at(pos, format!("duplicate key '{key}'")))
            } else {
                Ok(())
            }
        };
        match section {
            Section::Field => {
                let f = self.field.as_mut().unwrap();
                match key {
                    "vars" => {
                        once(!f.vars.is_empty())?;
                        f.vars = parse_names(&value.text, vpos)?;
                    }
                    "param" => {
                        once(f.param.is_some())?;
                        f.param = Some(value);
                    }
                    _ => return Err(unknown()),
                }
            }
            Section::Partial | Section::Sigma | Section::Delta => {
                let op = match section {
                    Section::Partial => self.partial.as_mut().unwrap(),
                    Section::Sigma => self.sigmas.last_mut().unwrap(),
                    _ => self.deltas.last_mut().unwrap(),
                };
                let (list, var) = match key.strip_prefix("inverse ") {
                    Some(v) if matches!(section, Section::Sigma) => (&mut op.inverse, v.trim()),
                    _ => (&mut op.images, key),
                };
                if !is_ident(var) {
                    return Err(unknown());
                }
                if list.iter().any(|(v, _)| v == var) {
                    return Err(ProblemError::at(pos, format!("duplicate image for '{var}'")));
                }
                list.push((var.to_string(), value));
            }
            Section::System => {
                let s = self.system.as_mut().unwrap();
                let words: Vec<&str> = key.split_whitespace().collect();
                match words.as_slice() {
                    ["n"] => {
                        once(s.n != 0)?;
                        s.n = parse_number(&value.text, vpos, "n")?;
                        if s.n == 0 {
                            return Err(ProblemError::at(vpos, "n must be at least 1"));
                        }
                    }
                    [which @ ("A" | "B"), id] => {
                        let list = if *which == "A" { &mut s.a } else { &mut s.b };
                        if list.iter().any(|m| m.id == *id) {
                            return Err(ProblemError::at(pos, format!("duplicate matrix {which} {id}")));
                        }
                        list.push(MatrixEntry {
                            id: id.to_string(),
                            rows: parse_matrix(&value.text, vpos)?,
                            pos,
                        });
                    }
                    _ => return Err(unknown()),
                }
            }
            Section::Ideal => {
                let i = self.ideals.last_mut().unwrap();
                match key {
                    "vars" => {
                        once(!i.vars.is_empty())?;
                        i.vars = parse_names(&value.text, vpos)?;
                    }
                    "order" => {
                        once(i.order.is_some())?;
                        i.order = Some(order_name(&value.text, vpos)?);
                    }
                    _ => return Err(unknown()),
                }
            }
            Section::Options => {
                let o = &mut self.options;
                match key {
                    "max_reductions" => {
                        once(o.max_reductions.is_some())?;
                        o.max_reductions = Some(parse_number(&value.text, vpos, key)?);
                    }
                    "max_degree" => {
                        once(o.max_degree.is_some())?;
                        o.max_degree = Some(parse_number(&value.text, vpos, key)?);
                    }
                    "dmax" => {
                        once(o.dmax.is_some())?;
                        o.dmax = Some(parse_number(&value.text, vpos, key)?);
                    }
                    "degree_bound" => {
                        once(o.degree_bound.is_some())?;
                        o.degree_bound = Some(parse_number(&value.text, vpos, key)?);
                    }
                    "order" => {
                        once(o.order.is_some())?;
                        o.order = Some(order_name(&value.text, vpos)?);
                    }
                    _ => return Err(unknown()),
                }
            }
            Section::None | Section::Seed(_) => unreachable!(),
        }
        Ok(())
    }

    /// Structural checks that need the whole file.
    fn validate(&self) -> Result<(), ProblemError> {
        if let Some(f) = &self.field {
            if f.vars.is_empty() {
                return Err(ProblemError::at(f.pos, "[field] needs 'vars = ...'"));
            }
            if f.param.is_some() && self.partial.is_some() {
                return Err(ProblemError::at(f.pos, "give either 'param' or a [partial] section, not both"));
            }
        }
        let ops = self.sigmas.iter().chain(&self.deltas).chain(&self.partial);
        if let Some(op) = ops.clone().next() {
            if self.field.is_none() {
                return Err(ProblemError::at(op.pos, "operator sections need a [field] section"));
            }
        }
        if let Some(s) = &self.system {
            if s.n == 0 {
                return Err(ProblemError::at(s.pos, "[system] needs 'n = ...'"));
            }
            if self.field.is_none() {
                return Err(ProblemError::at(s.pos, "[system] needs a [field] section"));
            }
        }
        if let Some((d, _)) = self.seeds.iter().next() {
            if self.system.is_none() {
                return Err(ProblemError::at(self.seed_pos[d], "[seed] sections need a [system] section"));
            }
        }
        for i in &self.ideals {
            if i.vars.is_empty() {
                return Err(ProblemError::at(i.pos, format!("[ideal {}] needs 'vars = ...'", i.name)));
            }
        }
        Ok(())
    }

    fn field_section(&self) -> Result<&FieldSection, ProblemError> {
        self.field
            .as_ref()
            .ok_or_else(|| ProblemError::at(Pos { line: 1, column: 1 }, "the file has no [field] section"))
    }

    fn images(
        &self,
        names: &[String],
        given: &[(String, Spanned)],
        identity: bool,
    ) -> Result<Vec<RationalFunction>, ProblemError> {
        let mut out: Vec<RationalFunction> = (0..names.len())
            .map(|v| if identity { RationalFunction::var(v) } else { RationalFunction::zero() })
            .collect();
        for (var, s) in given {
            let v = names
                .iter()
                .position(|n| n == var)
                .ok_or_else(|| ProblemError::at(s.pos, format!("unknown variable '{var}'")))?;
            out[v] = RationalFunction::parse_at(&s.text, names, s.pos)?;
        }
        Ok(out)
    }

    pub fn base_field(&self) -> Result<BaseField, ProblemError> {
        let f = self.field_section()?;
        let names = f.vars.clone();
        let mut sigmas = Vec::new();
        for op in &self.sigmas {
            for (var, s) in &op.images {
                if !op.inverse.iter().any(|(v, _)| v == var) && s.text.trim() != var {
                    return Err(ProblemError::at(
                        op.pos,
                        format!("automorphism '{}' has no inverse image for '{var}' (add 'inverse {var} = ...')", op.id),
                    ));
                }
            }
            let im = self.images(&names, &op.images, true)?;
            let inv = self.images(&names, &op.inverse, true)?;
            sigmas.push(OperatorSpec::automorphism(op.id.clone(), im, inv));
        }
        let mut deltas = Vec::new();
        for op in &self.deltas {
            deltas.push(OperatorSpec::derivation(op.id.clone(), self.images(&names, &op.images, false)?));
        }
        let partial = match (&f.param, &self.partial) {
            (Some(p), _) => {
                let v = names
                    .iter()
                    .position(|n| *n == p.text)
                    .ok_or_else(|| ProblemError::at(p.pos, format!("unknown variable '{}'", p.text)))?;
                let mut im = vec![RationalFunction::zero(); names.len()];
                im[v] = RationalFunction::one();
                OperatorSpec::parameter("partial", im)
            }
            (None, Some(op)) => OperatorSpec::parameter(op.id.clone(), self.images(&names, &op.images, false)?),
            (None, None) => {
                return Err(ProblemError::at(
                    f.pos,
                    "no parameter derivation: add 'param = VAR' or a [partial ID] section",
                ))
            }
        };
        BaseField::new(names, sigmas, deltas, partial).map_err(|e| {
            let pos = match &e {
                BaseFieldError::InverseMismatch { id, .. } | BaseFieldError::WrongKind { id, .. } => self
                    .sigmas
                    .iter()
                    .chain(&self.deltas)
                    .find(|o| o.id == *id)
                    .map_or(f.pos, |o| o.pos),
                _ => f.pos,
            };
            ProblemError::at(pos, e.to_string())
        })
    }

    fn matrix(&self, field: &BaseField, m: &MatrixEntry, n: usize) -> Result<KMatrix, ProblemError> {
        if m.rows.len() != n || m.rows.iter().any(|r| r.len() != n) {
            return Err(ProblemError::at(m.pos, format!("matrix for '{}' must be {n}x{n}", m.id)));
        }
        let rows = m
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| RationalFunction::parse_at(&e.text, field.names(), e.pos))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(rows))
    }

    pub fn linear_system(&self) -> Result<LinearSystem, ProblemError> {
        let field = self.base_field()?;
        let s = self
            .system
            .as_ref()
            .ok_or_else(|| ProblemError::at(Pos { line: 1, column: 1 }, "the file has no [system] section"))?;
        let conv = |list: &[MatrixEntry]| -> Result<Vec<(String, KMatrix)>, ProblemError> {
            list.iter().map(|m| Ok((m.id.clone(), self.matrix(&field, m, s.n)?))).collect()
        };
        let a = conv(&s.a)?;
        let b = conv(&s.b)?;
        LinearSystem::new(field, s.n, a, b).map_err(|e| ProblemError::at(s.pos, e.to_string()))
    }

    pub fn jet_options(&self) -> JetOptions {
        JetOptions {
            dmax: self.options.dmax.unwrap_or(DEFAULT_DMAX),
            order: term_order(self.options.order.as_deref()),
            budget: self.options.budget(),
        }
    }

    pub fn jet_ring(&self) -> Result<JetRing, ProblemError> {
        let sys = self.linear_system()?;
        let pos = self.system.as_ref().map_or(Pos { line: 1, column: 1 }, |s| s.pos);
        JetRing::new(sys, self.jet_options()).map_err(|e| ProblemError::at(pos, e.to_string()))
    }

    /// Seed numerators per level.
    pub fn seeds(&self, ring: &JetRing) -> Result<BTreeMap<usize, Vec<JetPoly>>, ProblemError> {
        let mut out = BTreeMap::new();
        for (d, gens) in &self.seeds {
            if *d > ring.dmax() {
                return Err(ProblemError::at(
                    self.seed_pos[d],
                    format!("seed level {d} exceeds D_max = {}", ring.dmax()),
                ));
            }
            let mut polys = Vec::new();
            for g in gens {
                let f = ring.parse_at(&g.text, g.pos)?;
                if f.level() > *d {
                    return Err(ProblemError::at(
                        g.pos,
                        format!("seed at level {d} uses jets of order {}", f.level()),
                    ));
                }
                polys.push(f.poly().clone());
            }
            out.insert(*d, polys);
        }
        Ok(out)
    }

    pub fn ideal(&self, name: &str) -> Result<IdealPresentation<RationalFunction>, ProblemError> {
        let i = self.ideals.iter().find(|i| i.name == name).ok_or_else(|| {
            ProblemError::at(Pos { line: 1, column: 1 }, format!("no [ideal {name}] section"))
        })?;
        let coeffs = self.field.as_ref().map_or_else(Vec::new, |f| f.vars.clone());
        let order = term_order(i.order.as_deref());
        let ring = PolyRing::new(i.vars.clone(), coeffs, order).map_err(|e| ProblemError::at(i.pos, e.to_string()))?;
        let gens = i
            .generators
            .iter()
            .map(|g| ring.parse_at(&g.text, g.pos))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IdealPresentation::new(ring, gens))
    }

    /// Canonical text: sections in a fixed order, one entry per line.
    pub fn print(&self) -> String {
        let mut out: Vec<String> = Vec::new();
        let mut block = |lines: Vec<String>| {
            if !out.is_empty() {
                out.push(String::new());
            }
            out.extend(lines);
        };
        if let Some(f) = &self.field {
            let mut l = vec!["[field]".to_string(), format!("vars = {}", f.vars.join(", "))];
            if let Some(p) = &f.param {
                l.push(format!("param = {}", p.text));
            }
            block(l);
        }
        let op_lines = |kind: &str, op: &OperatorSection| {
            let mut l = vec![format!("[{kind} {}]", op.id)];
            l.extend(op.images.iter().map(|(v, e)| format!("{v} = {}", e.text)));
            l.extend(op.inverse.iter().map(|(v, e)| format!("inverse {v} = {}", e.text)));
            l
        };
        if let Some(op) = &self.partial {
            block(op_lines("partial", op));
        }
        for op in &self.sigmas {
            block(op_lines("sigma", op));
        }
        for op in &self.deltas {
            block(op_lines("delta", op));
        }
        if let Some(s) = &self.system {
            let mut l = vec!["[system]".to_string(), format!("n = {}", s.n)];
            let mat = |m: &MatrixEntry| {
                let rows: Vec<String> = m
                    .rows
                    .iter()
                    .map(|r| format!("[{}]", r.iter().map(|e| e.text.as_str()).collect::<Vec<_>>().join(", ")))
                    .collect();
                format!("[{}]", rows.join(", "))
            };
            l.extend(s.a.iter().map(|m| format!("A {} = {}", m.id, mat(m))));
            l.extend(s.b.iter().map(|m| format!("B {} = {}", m.id, mat(m))));
            block(l);
        }
        for (d, gens) in &self.seeds {
            let mut l = vec![format!("[seed {d}]")];
            l.extend(gens.iter().map(|g| g.text.clone()));
            block(l);
        }
        for i in &self.ideals {
            let mut l = vec![format!("[ideal {}]", i.name), format!("vars = {}", i.vars.join(", "))];
            if let Some(o) = &i.order {
                l.push(format!("order = {o}"));
            }
            l.extend(i.generators.iter().map(|g| g.text.clone()));
            block(l);
        }
        let o = &self.options;
        let mut l = vec!["[options]".to_string()];
        let mut kv = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                l.push(format!("{k} = {v}"));
            }
        };
        kv("max_reductions", o.max_reductions.map(|v| v.to_string()));
        kv("max_degree", o.max_degree.map(|v| v.to_string()));
        kv("dmax", o.dmax.map(|v| v.to_string()));
        kv("degree_bound", o.degree_bound.map(|v| v.to_string()));
        kv("order", o.order.clone());
        if l.len() > 1 {
            block(l);
        }
        let mut text = out.join("\n");
        text.push('\n');
        text
    }
}

fn split_kv(body: &str, pos: Pos) -> Result<(String, Spanned, Pos), ProblemError> {
    let Some(eq) = body.find('=') else {
        return Err(ProblemError::at(pos, "expected 'key = value'"));
    };
    let key = body[..eq].trim().to_string();
    let rest = &body[eq + 1..];
    let lead = rest.chars().take_while(|c| c.is_whitespace()).count();
    let value = rest.trim().to_string();
    let vpos = Pos {
        line: pos.line,
        column: pos.column + body[..eq].chars().count() + 1 + lead,
    };
    if key.is_empty() {
        return Err(ProblemError::at(pos, "missing key before '='"));
    }
    if value.is_empty() {
        return Err(ProblemError::at(vpos, format!("missing value for '{key}'")));
    }
    Ok((key, Spanned { text: value, pos: vpos }, vpos))
}
