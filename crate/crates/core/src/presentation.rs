//! Parser and printer for the quiver-with-relations DSL naming an
//! elementary algebra `kQ/I`.
//!
//! Statements are separated by `;`, comments run from `#` to end of line:
//!
//! ```text
//! field Q;                 # or: field F 5
//! vertices 1 2 3;
//! arrows a: 1 -> 2; b: 2 -> 3;
//! relations a*b; 2 p - 1/3 q;   # coefficients are integers or n/d
//! cap 30;                  # optional nilpotency cap (default 30)
//! ```
//!
//! Path composition convention: `a*b` means "a then b", so a path `p` from
//! `i` to `j` satisfies `e_i * p = p = p * e_j`. This convention is fixed
//! here once and determines module conventions everywhere else.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Scalar};

pub const DEFAULT_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Number of arrows with source and target both at vertex `i`.
    pub fn loops_at(&self, i: usize) -> usize {
        let v = &self.vertices[i];
        self.arrows.iter().filter(|a| &a.source == v && &a.target == v).count()
    }
}

/// A path: a vertex name (the trivial path `e_i`) or a nonempty arrow
/// sequence composed left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathExpr {
    Vertex(String),
    Arrows(Vec<String>),
}

impl PathExpr {
    pub fn len(&self) -> usize {
        match self {
            PathExpr::Vertex(_) => 0,
            PathExpr::Arrows(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for PathExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathExpr::Vertex(v) => write!(f, "{v}"),
            PathExpr::Arrows(a) => write!(f, "{}", a.join("*")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, PathExpr)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub field: FieldSpec,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub cap: usize,
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(i64),
    Colon,
    ArrowTo, // ->
    Star,
    Plus,
    Minus,
    Slash,
    Semi,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { chars: text.chars().peekable(), line: 1, col: 1 }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> char {
        let c = self.chars.next().unwrap();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut lx = Lexer::new(text);
    let mut toks = Vec::new();
    while let Some(c) = lx.peek() {
        let (line, col) = (lx.line, lx.col);
        match c {
            '#' => {
                while let Some(c) = lx.peek() {
                    lx.bump();
                    if c == '\n' {
                        break;
                    }
                }
            }
            c if c.is_whitespace() => {
                lx.bump();
            }
            ';' | ':' | '*' | '+' | '/' => {
                lx.bump();
                let tok = match c {
                    ';' => Tok::Semi,
                    ':' => Tok::Colon,
                    '*' => Tok::Star,
                    '+' => Tok::Plus,
                    _ => Tok::Slash,
                };
                toks.push(Spanned { tok, line, col });
            }
            '-' => {
                lx.bump();
                if lx.peek() == Some('>') {
                    lx.bump();
                    toks.push(Spanned { tok: Tok::ArrowTo, line, col });
                } else {
                    toks.push(Spanned { tok: Tok::Minus, line, col });
                }
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(c) = lx.peek() {
                    if c.is_ascii_digit() {
                        s.push(lx.bump());
                    } else {
                        break;
                    }
                }
                if lx.peek().map_or(false, |c| c.is_alphanumeric() || c == '_') {
                    // A digit run glued to name characters is a name like `1a`.
                    while let Some(c) = lx.peek() {
                        if c.is_alphanumeric() || c == '_' {
                            s.push(lx.bump());
                        } else {
                            break;
                        }
                    }
                    toks.push(Spanned { tok: Tok::Name(s), line, col });
                } else {
                    let n: i64 = s.parse().map_err(|_| Error::Parse {
                        line,
                        col,
                        msg: format!("integer out of range: {s}"),
                    })?;
                    toks.push(Spanned { tok: Tok::Int(n), line, col });
                }
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while let Some(c) = lx.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        s.push(lx.bump());
                    } else {
                        break;
                    }
                }
                toks.push(Spanned { tok: Tok::Name(s), line, col });
            }
            other => {
                return Err(Error::Parse { line, col, msg: format!("unexpected character {other:?}") })
            }
        }
    }
    Ok(toks)
}

// ---------------------------------------------------------------------------
// Parser

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Arrows,
    Relations,
}

/// Parse the DSL into a validated [`Presentation`].
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let toks = lex(text)?;
    let mut field: Option<FieldSpec> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut raw_relations: Vec<(Vec<Spanned>, usize, usize)> = Vec::new();
    let mut cap: Option<usize> = None;
    let mut section = Section::None;

    for stmt in toks.split(|s| s.tok == Tok::Semi) {
        if stmt.is_empty() {
            continue;
        }
        let head = &stmt[0];
        let keyword = match &head.tok {
            Tok::Name(n) => match n.as_str() {
                "field" | "vertices" | "arrows" | "relations" | "cap" => Some(n.clone()),
                _ => None,
            },
            _ => None,
        };
        match keyword.as_deref() {
            Some("field") => {
                section = Section::None;
                if field.is_some() {
                    return err(head, "duplicate field declaration");
                }
                field = Some(parse_field(&stmt[1..], head)?);
            }
            Some("vertices") => {
                section = Section::None;
                if !vertices.is_empty() {
                    return err(head, "duplicate vertices declaration");
                }
                for s in &stmt[1..] {
                    vertices.push(name_of(s)?);
                }
                if vertices.is_empty() {
                    return err(head, "expected at least one vertex name");
                }
            }
            Some("arrows") => {
                section = Section::Arrows;
                if stmt.len() > 1 {
                    arrows.push(parse_arrow(&stmt[1..], head)?);
                }
            }
            Some("relations") => {
                section = Section::Relations;
                if stmt.len() > 1 {
                    raw_relations.push((stmt[1..].to_vec(), head.line, head.col));
                }
            }
            Some("cap") => {
                section = Section::None;
                match &stmt[1..] {
                    [Spanned { tok: Tok::Int(n), .. }] if *n > 0 => cap = Some(*n as usize),
                    _ => return err(head, "expected `cap <positive integer>`"),
                }
            }
            _ => match section {
                Section::Arrows => arrows.push(parse_arrow(stmt, head)?),
                Section::Relations => raw_relations.push((stmt.to_vec(), head.line, head.col)),
                Section::None => {
                    return err(head, "expected a section keyword (field/vertices/arrows/relations/cap)")
                }
            },
        }
    }

    let field = field.unwrap_or(FieldSpec::Rationals);
    let quiver = Quiver { vertices, arrows };
    check_quiver(&quiver)?;

    let mut relations = Vec::new();
    for (stmt, line, col) in raw_relations {
        relations.push(parse_relation(&stmt, &field, &quiver, line, col)?);
    }

    let p = Presentation { field, quiver, relations, cap: cap.unwrap_or(DEFAULT_CAP) };
    validate(&p)?;
    Ok(p)
}

fn err<T>(at: &Spanned, msg: &str) -> Result<T> {
    Err(Error::Parse { line: at.line, col: at.col, msg: msg.to_string() })
}

fn name_of(s: &Spanned) -> Result<String> {
    match &s.tok {
        Tok::Name(n) => Ok(n.clone()),
        Tok::Int(n) => Ok(n.to_string()),
        _ => err(s, "expected a name"),
    }
}

fn parse_field(rest: &[Spanned], head: &Spanned) -> Result<FieldSpec> {
    match rest {
        [s] if name_of(s).as_deref() == Ok("Q") => Ok(FieldSpec::Rationals),
        [s, Spanned { tok: Tok::Int(p), line, col }] if name_of(s).as_deref() == Ok("F") => {
            FieldSpec::prime(u64::try_from(*p).unwrap_or(0)).map_err(|e| Error::Parse {
                line: *line,
                col: *col,
                msg: e.to_string(),
            })
        }
        _ => err(head, "expected `field Q` or `field F <p>`"),
    }
}

fn parse_arrow(stmt: &[Spanned], head: &Spanned) -> Result<Arrow> {
    match stmt {
        [n, Spanned { tok: Tok::Colon, .. }, s, Spanned { tok: Tok::ArrowTo, .. }, t] => Ok(Arrow {
            name: name_of(n)?,
            source: name_of(s)?,
            target: name_of(t)?,
        }),
        _ => err(head, "expected `name: source -> target`"),
    }
}

fn check_quiver(q: &Quiver) -> Result<()> {
    for (i, v) in q.vertices.iter().enumerate() {
        if q.vertices[..i].contains(v) {
            return Err(Error::InvalidPresentation(format!("duplicate vertex name `{v}`")));
        }
    }
    for (i, a) in q.arrows.iter().enumerate() {
        if q.arrows[..i].iter().any(|b| b.name == a.name) {
            return Err(Error::InvalidPresentation(format!("duplicate arrow name `{}`", a.name)));
        }
        if q.vertices.contains(&a.name) {
            return Err(Error::InvalidPresentation(format!(
                "name `{}` used for both a vertex and an arrow",
                a.name
            )));
        }
        if q.vertex_index(&a.source).is_none() {
            return Err(Error::InvalidPresentation(format!(
                "arrow `{}` has unknown source vertex `{}`",
                a.name, a.source
            )));
        }
        if q.vertex_index(&a.target).is_none() {
            return Err(Error::InvalidPresentation(format!(
                "arrow `{}` has unknown target vertex `{}`",
                a.name, a.target
            )));
        }
    }
    Ok(())
}

fn parse_relation(
    stmt: &[Spanned],
    field: &FieldSpec,
    quiver: &Quiver,
    line: usize,
    col: usize,
) -> Result<Relation> {
    // term ((+|-) term)*, term := [coeff] path, path := name (* name)*
    let mut terms = Vec::new();
    let mut i = 0usize;
    let mut sign_negative = false;
    loop {
        let mut coeff = Scalar::one(field);
        if let Some(Spanned { tok: Tok::Int(n), .. }) = stmt.get(i) {
            let n = *n;
            let is_fraction = matches!(stmt.get(i + 1).map(|s| &s.tok), Some(Tok::Slash));
            let after = if is_fraction { i + 3 } else { i + 1 };
            // Only treat the number as a coefficient when a path follows.
            let followed_by_path =
                matches!(stmt.get(after).map(|s| &s.tok), Some(Tok::Name(_)) | Some(Tok::Int(_)));
            if followed_by_path {
                if is_fraction {
                    let d = match stmt.get(i + 2).map(|s| &s.tok) {
                        Some(Tok::Int(d)) => *d,
                        _ => return err(&stmt[i], "expected denominator after `/`"),
                    };
                    coeff = Scalar::from_fraction(n, d, field).map_err(|e| Error::Parse {
                        line: stmt[i].line,
                        col: stmt[i].col,
                        msg: e.to_string(),
                    })?;
                    i += 3;
                } else {
                    coeff = Scalar::from_integer(n, field);
                    i += 1;
                }
            }
        }
        if sign_negative {
            coeff = coeff.neg();
        }
        let mut names = Vec::new();
        loop {
            match stmt.get(i) {
                Some(s @ Spanned { tok: Tok::Name(_) | Tok::Int(_), .. }) => {
                    names.push((name_of(s)?, s.line, s.col));
                    i += 1;
                }
                Some(s) => return err(s, "expected a path"),
                None => {
                    return Err(Error::Parse { line, col, msg: "expected a path".to_string() })
                }
            }
            if matches!(stmt.get(i).map(|s| &s.tok), Some(Tok::Star)) {
                i += 1;
            } else {
                break;
            }
        }
        let path = resolve_path(&names, quiver)?;
        terms.push((coeff, path));
        match stmt.get(i).map(|s| &s.tok) {
            None => break,
            Some(Tok::Plus) => {
                sign_negative = false;
                i += 1;
            }
            Some(Tok::Minus) => {
                sign_negative = true;
                i += 1;
            }
            Some(_) => return err(&stmt[i], "expected `+`, `-` or end of relation"),
        }
    }
    Ok(Relation { terms })
}

fn resolve_path(names: &[(String, usize, usize)], quiver: &Quiver) -> Result<PathExpr> {
    if names.len() == 1 {
        let (n, line, col) = &names[0];
        if quiver.vertex_index(n).is_some() {
            return Ok(PathExpr::Vertex(n.clone()));
        }
        if quiver.arrow_index(n).is_some() {
            return Ok(PathExpr::Arrows(vec![n.clone()]));
        }
        return Err(Error::Parse {
            line: *line,
            col: *col,
            msg: format!("unknown vertex or arrow `{n}`"),
        });
    }
    let mut arrows = Vec::new();
    for (n, line, col) in names {
        if quiver.arrow_index(n).is_none() {
            return Err(Error::Parse { line: *line, col: *col, msg: format!("unknown arrow `{n}`") });
        }
        arrows.push(n.clone());
    }
    Ok(PathExpr::Arrows(arrows))
}

/// Endpoints of a path, if composable under the `a*b = a then b` convention.
pub fn path_endpoints(path: &PathExpr, quiver: &Quiver) -> Result<(usize, usize)> {
    match path {
        PathExpr::Vertex(v) => {
            let i = quiver
                .vertex_index(v)
                .ok_or_else(|| Error::InvalidPresentation(format!("unknown vertex `{v}`")))?;
            Ok((i, i))
        }
        PathExpr::Arrows(names) => {
            let mut src = None;
            let mut cur = None;
            for n in names {
                let idx = quiver
                    .arrow_index(n)
                    .ok_or_else(|| Error::InvalidPresentation(format!("unknown arrow `{n}`")))?;
                let a = &quiver.arrows[idx];
                let s = quiver.vertex_index(&a.source).unwrap();
                let t = quiver.vertex_index(&a.target).unwrap();
                if let Some(c) = cur {
                    if c != s {
                        return Err(Error::InvalidPresentation(format!(
                            "path not composable at `{n}` in `{}`",
                            names.join("*")
                        )));
                    }
                } else {
                    src = Some(s);
                }
                cur = Some(t);
            }
            Ok((src.unwrap(), cur.unwrap()))
        }
    }
}

/// Re-check all presentation invariants.
pub fn validate(p: &Presentation) -> Result<()> {
    if let FieldSpec::Prime(q) = p.field {
        FieldSpec::prime(q)?;
    }
    check_quiver(&p.quiver)?;
    if p.cap == 0 {
        return Err(Error::InvalidPresentation("cap must be positive".into()));
    }
    for rel in &p.relations {
        if rel.terms.is_empty() {
            return Err(Error::InvalidPresentation("empty relation".into()));
        }
        let mut endpoints = None;
        for (c, path) in &rel.terms {
            if c.field() != p.field {
                return Err(Error::FieldMismatch);
            }
            if path.len() < 2 {
                return Err(Error::InvalidPresentation(format!(
                    "relation term `{path}` has length {} < 2",
                    path.len()
                )));
            }
            let ep = path_endpoints(path, &p.quiver)?;
            match endpoints {
                None => endpoints = Some(ep),
                Some(e) if e == ep => {}
                Some(_) => {
                    return Err(Error::InvalidPresentation(format!(
                        "relation terms not parallel: `{path}` has different endpoints"
                    )))
                }
            }
        }
    }
    Ok(())
}

/// Render back to DSL text; `parse_presentation(print_presentation(p)) == p`.
pub fn print_presentation(p: &Presentation) -> String {
    let mut out = String::new();
    match &p.field {
        FieldSpec::Rationals => out.push_str("field Q;\n"),
        FieldSpec::Prime(q) => out.push_str(&format!("field F {q};\n")),
    }
    out.push_str(&format!("vertices {};\n", p.quiver.vertices.join(" ")));
    if !p.quiver.arrows.is_empty() {
        out.push_str("arrows ");
        let decls: Vec<String> = p
            .quiver
            .arrows
            .iter()
            .map(|a| format!("{}: {} -> {}", a.name, a.source, a.target))
            .collect();
        out.push_str(&decls.join("; "));
        out.push_str(";\n");
    }
    if !p.relations.is_empty() {
        out.push_str("relations ");
        let rels: Vec<String> = p.relations.iter().map(print_relation).collect();
        out.push_str(&rels.join("; "));
        out.push_str(";\n");
    }
    out.push_str(&format!("cap {};\n", p.cap));
    out
}

fn print_relation(rel: &Relation) -> String {
    let mut out = String::new();
    for (i, (c, path)) in rel.terms.iter().enumerate() {
        let (neg, mag) = match c {
            Scalar::Rat(r) => {
                if r.numer().sign() == num_bigint::Sign::Minus {
                    (true, Scalar::Rat(-r.clone()))
                } else {
                    (false, c.clone())
                }
            }
            // Prime-field coefficients print as their residue.
            Scalar::Mod { .. } => (false, c.clone()),
        };
        if i == 0 {
            if neg {
                out.push_str("- ");
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag} "));
        }
        out.push_str(&path.to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a2() {
        let p = parse_presentation("field Q; vertices 1 2; arrows a: 1 -> 2;").unwrap();
        assert_eq!(p.field, FieldSpec::Rationals);
        assert_eq!(p.quiver.vertices, vec!["1", "2"]);
        assert_eq!(p.quiver.arrows.len(), 1);
        assert!(p.relations.is_empty());
        assert_eq!(p.cap, DEFAULT_CAP);
    }

    #[test]
    fn parses_loop_relation() {
        let p =
            parse_presentation("field Q; vertices 1; arrows l: 1 -> 1; relations l*l;").unwrap();
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].terms.len(), 1);
        assert_eq!(p.relations[0].terms[0].1, PathExpr::Arrows(vec!["l".into(), "l".into()]));
    }

    #[test]
    fn rejects_non_composable_terms() {
        let e = parse_presentation(
            "field Q; vertices 1 2 3; arrows a: 1 -> 2; b: 2 -> 3; relations a*b - b*a;",
        )
        .unwrap_err();
        assert!(e.to_string().contains("not composable"), "{e}");
    }

    #[test]
    fn rejects_non_parallel_terms() {
        let e = parse_presentation(
            "field Q; vertices 1 2 3 4; arrows a: 1 -> 2; b: 2 -> 3; c: 2 -> 4; d: 1 -> 2; \
             relations a*b - d*c;",
        )
        .unwrap_err();
        assert!(e.to_string().contains("not parallel"), "{e}");
    }

    #[test]
    fn rejects_short_relation_terms() {
        let e =
            parse_presentation("field Q; vertices 1; arrows l: 1 -> 1; relations l;").unwrap_err();
        assert!(e.to_string().contains("length"), "{e}");
        let e2 =
            parse_presentation("field Q; vertices 1; arrows l: 1 -> 1; relations 1;").unwrap_err();
        assert!(e2.to_string().contains("length"), "{e2}");
    }

    #[test]
    fn rejects_duplicate_arrow() {
        let e =
            parse_presentation("field Q; vertices 1; arrows l: 1 -> 1; l: 1 -> 1;").unwrap_err();
        assert!(e.to_string().contains("duplicate arrow"), "{e}");
    }

    #[test]
    fn rejects_unknown_vertex() {
        let e = parse_presentation("field Q; vertices 1; arrows a: 1 -> 9;").unwrap_err();
        assert!(e.to_string().contains("unknown"), "{e}");
    }

    #[test]
    fn rejects_composite_modulus() {
        let e = parse_presentation("field F 6; vertices 1;").unwrap_err();
        assert!(e.to_string().contains("not prime"), "{e}");
    }

    #[test]
    fn parses_coefficients_and_fractions() {
        let p = parse_presentation(
            "field Q; vertices 1 2 4; arrows a: 1 -> 2; b: 2 -> 4; c: 1 -> 2; d: 2 -> 4; \
             relations 2 a*b - 1/3 c*d + a*d;",
        )
        .unwrap();
        let terms = &p.relations[0].terms;
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[0].0, Scalar::from_integer(2, &FieldSpec::Rationals));
        assert_eq!(terms[1].0, Scalar::from_fraction(-1, 3, &FieldSpec::Rationals).unwrap());
        assert_eq!(terms[2].0, Scalar::from_integer(1, &FieldSpec::Rationals));
    }

    #[test]
    fn roundtrip_fixtures() {
        let sources = [
            "field Q; vertices 1 2; arrows a: 1 -> 2;",
            "field Q; vertices 1; arrows l: 1 -> 1; relations l*l; cap 10;",
            "field F 5; vertices 1 2 3; arrows a: 1 -> 2; b: 2 -> 3; relations 2 a*b;",
            "field Q; vertices 1 2 3 4; arrows a: 1 -> 2; b: 2 -> 4; c: 1 -> 3; d: 3 -> 4; \
             relations a*b - c*d;",
        ];
        for src in sources {
            let p = parse_presentation(src).unwrap();
            let printed = print_presentation(&p);
            let q = parse_presentation(&printed).unwrap();
            assert_eq!(p, q, "round trip failed for {src}");
        }
    }

    #[test]
    fn comments_and_whitespace_ignored() {
        let p = parse_presentation(
            "# a quiver\nfield Q;\nvertices 1 2; # two vertices\narrows a: 1 -> 2;\n",
        )
        .unwrap();
        assert_eq!(p.quiver.arrows.len(), 1);
    }

    #[test]
    fn validate_rejects_tampered_value() {
        let mut p =
            parse_presentation("field Q; vertices 1; arrows l: 1 -> 1; relations l*l;").unwrap();
        p.relations[0].terms[0].1 = PathExpr::Arrows(vec!["l".into()]);
        assert!(validate(&p).is_err());
    }
}
