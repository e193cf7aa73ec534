//! Tokenizer and parser for `.cx` documents.

use std::collections::BTreeMap;

use crate::cube::Cube;
use crate::error::{Error, Result};
use crate::morphism::FinMorphism;
use crate::object::{FinObject, OpSpec, Signature};
use crate::simplicial::{Flavor, TruncatedSimplicial};

use super::{Document, HEADER};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Int(usize),
    Str(String),
    Punct(&'static str),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column: col,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c == '#' {
                break;
            } else if c == '"' {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(err(line_no, col, "unterminated string")),
                        Some('"') => break,
                        Some('\\') => {
                            match chars.get(i + 1) {
                                Some('"') => s.push('"'),
                                Some('\\') => s.push('\\'),
                                Some('n') => s.push('\n'),
                                _ => return Err(err(line_no, i + 1, "unknown escape")),
                            }
                            i += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
                out.push(Token { tok: Tok::Str(s), line: line_no, col });
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s
                    .parse()
                    .map_err(|_| err(line_no, col, format!("integer {s} is out of range")))?;
                out.push(Token { tok: Tok::Int(v), line: line_no, col });
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '.' || chars[i] == '-' && chars.get(i + 1) != Some(&'>')) {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Word(chars[start..i].iter().collect()),
                    line: line_no,
                    col,
                });
            } else {
                let p = match c {
                    '{' => "{",
                    '}' => "}",
                    '[' => "[",
                    ']' => "]",
                    '=' => "=",
                    ':' => ":",
                    ',' => ",",
                    '-' if chars.get(i + 1) == Some(&'>') => "->",
                    _ => return Err(err(line_no, col, format!("unexpected character {c:?}"))),
                };
                i += p.len();
                out.push(Token { tok: Tok::Punct(p), line: line_no, col });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map(|t| (t.line, t.col)).unwrap_or(self.end)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(err(l, c, message))
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn word(&mut self) -> Result<String> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => self.fail("expected a name"),
        }
    }

    fn keyword(&mut self, k: &str) -> Result<()> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Word(w)) if w == k => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(format!("expected `{k}`")),
        }
    }

    fn is_word(&self, k: &str) -> bool {
        matches!(self.peek().map(|t| &t.tok), Some(Tok::Word(w)) if w == k)
    }

    fn punct(&mut self, p: &str) -> Result<()> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Punct(q)) if *q == p => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(format!("expected `{p}`")),
        }
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek().map(|t| &t.tok), Some(Tok::Punct(q)) if *q == p)
    }

    fn int(&mut self) -> Result<usize> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => self.fail("expected an integer"),
        }
    }

    fn ints(&mut self) -> Vec<usize> {
        let mut out = Vec::new();
        while let Some(Tok::Int(v)) = self.peek().map(|t| &t.tok) {
            out.push(*v);
            self.pos += 1;
        }
        out
    }

    fn strings(&mut self) -> Vec<String> {
        let mut out = Vec::new();
        while let Some(Tok::Str(s)) = self.peek().map(|t| &t.tok) {
            out.push(s.clone());
            self.pos += 1;
        }
        out
    }

    fn subset(&mut self) -> Result<usize> {
        self.punct("[")?;
        let mut mask = 0usize;
        if !self.is_punct("]") {
            loop {
                let (l, c) = self.here();
                let i = self.int()?;
                if i >= usize::BITS as usize - 1 || mask >> i & 1 == 1 {
                    return Err(err(l, c, format!("bad subset member {i}")));
                }
                mask |= 1 << i;
                if self.is_punct(",") {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.punct("]")?;
        Ok(mask)
    }
}

/// Raw declarations, resolved after the whole file is read.
enum Decl {
    Object { labels: Vec<String>, algebra: Option<(Vec<(String, usize, Vec<usize>)>, bool)> },
    Morphism { dom: String, cod: String, table: Vec<usize> },
    Cube { dim: usize, at: Vec<(usize, String)>, gens: Vec<(usize, usize, String)> },
    Simplicial(SimplicialDecl),
}

struct SimplicialDecl {
    flavor: Flavor,
    top: usize,
    base: Option<String>,
    levels: Vec<(usize, String)>,
    faces: Vec<(usize, usize, String)>,
    degeneracies: Vec<(usize, usize, String)>,
    contraction: Vec<(usize, String)>,
}

pub fn parse(text: &str) -> Result<Document> {
    let toks = tokenize(text)?;
    let last_line = text.lines().count().max(1);
    let mut p = Parser {
        toks,
        pos: 0,
        end: (last_line, text.lines().last().map(|l| l.chars().count() + 1).unwrap_or(1)),
    };
    match (p.next(), p.next()) {
        (Some(Token { tok: Tok::Word(w), .. }), Some(Token { tok: Tok::Int(1), .. })) if w == "cubex-format" => {}
        _ => return Err(err(1, 1, format!("expected header `{HEADER}`"))),
    }
    let mut doc = Document::new();
    let mut decls: Vec<(String, (usize, usize), Decl)> = Vec::new();
    let mut names: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    while p.peek().is_some() {
        let at = p.here();
        let kind = p.word()?;
        if kind == "meta" {
            let key = p.word()?;
            let value = match p.next() {
                Some(Token { tok: Tok::Str(s), .. }) => s,
                _ => return Err(err(at.0, at.1, "meta needs a quoted value")),
            };
            doc.set_meta(&key, value).map_err(|e| err(at.0, at.1, e.to_string()))?;
            continue;
        }
        let name_at = p.here();
        let name = p.word()?;
        if !super::valid_name(&name) {
            return Err(err(name_at.0, name_at.1, format!("invalid name {name:?}")));
        }
        if names.insert(name.clone(), name_at).is_some() {
            return Err(err(name_at.0, name_at.1, format!("name {name} is declared twice")));
        }
        let decl = match kind.as_str() {
            "object" => parse_object(&mut p)?,
            "morphism" => {
                p.punct(":")?;
                let dom = p.word()?;
                p.punct("->")?;
                let cod = p.word()?;
                p.punct("=")?;
                Decl::Morphism { dom, cod, table: p.ints() }
            }
            "cube" => parse_cube(&mut p)?,
            "simplicial" => parse_simplicial(&mut p)?,
            other => return Err(err(at.0, at.1, format!("unknown declaration `{other}`"))),
        };
        decls.push((name, at, decl));
    }
    resolve(doc, decls)
}

fn parse_object(p: &mut Parser) -> Result<Decl> {
    p.punct("=")?;
    if p.is_word("set") {
        p.pos += 1;
        return Ok(Decl::Object { labels: p.strings(), algebra: None });
    }
    p.keyword("algebra")?;
    let labels = p.strings();
    p.punct("{")?;
    let mut ops = Vec::new();
    let mut group = false;
    loop {
        if p.is_punct("}") {
            p.pos += 1;
            break;
        }
        if p.is_word("group") {
            p.pos += 1;
            group = true;
            continue;
        }
        p.keyword("op")?;
        let name = p.word()?;
        let arity = p.int()?;
        p.punct("=")?;
        ops.push((name, arity, p.ints()));
    }
    Ok(Decl::Object { labels, algebra: Some((ops, group)) })
}

fn parse_cube(p: &mut Parser) -> Result<Decl> {
    p.keyword("dim")?;
    let dim = p.int()?;
    p.punct("{")?;
    let mut at = Vec::new();
    let mut gens = Vec::new();
    loop {
        if p.is_punct("}") {
            p.pos += 1;
            break;
        }
        if p.is_word("at") {
            p.pos += 1;
            let s = p.subset()?;
            at.push((s, p.word()?));
        } else {
            p.keyword("gen")?;
            let s = p.subset()?;
            let i = p.int()?;
            gens.push((s, i, p.word()?));
        }
    }
    Ok(Decl::Cube { dim, at, gens })
}

fn parse_simplicial(p: &mut Parser) -> Result<Decl> {
    let at = p.here();
    let f = p.word()?;
    let flavor = Flavor::parse(&f).ok_or_else(|| err(at.0, at.1, format!("unknown flavor `{f}`")))?;
    p.keyword("top")?;
    let top = p.int()?;
    p.punct("{")?;
    let mut d = SimplicialDecl {
        flavor,
        top,
        base: None,
        levels: Vec::new(),
        faces: Vec::new(),
        degeneracies: Vec::new(),
        contraction: Vec::new(),
    };
    loop {
        if p.is_punct("}") {
            p.pos += 1;
            break;
        }
        let (l, c) = p.here();
        match p.word()?.as_str() {
            "base" => d.base = Some(p.word()?),
            "level" => {
                let n = p.int()?;
                d.levels.push((n, p.word()?));
            }
            "face" => {
                let n = p.int()?;
                let i = p.int()?;
                d.faces.push((n, i, p.word()?));
            }
            "degeneracy" => {
                let n = p.int()?;
                let j = p.int()?;
                d.degeneracies.push((n, j, p.word()?));
            }
            "contraction" => {
                let n = p.int()?;
                d.contraction.push((n, p.word()?));
            }
            other => return Err(err(l, c, format!("unknown simplicial entry `{other}`"))),
        }
    }
    Ok(Decl::Simplicial(d))
}

fn resolve(mut doc: Document, decls: Vec<(String, (usize, usize), Decl)>) -> Result<Document> {
    let wrap = |at: (usize, usize), e: Error| -> Error {
        match e {
            Error::Parse { .. } => e,
            other => err(at.0, at.1, other.to_string()),
        }
    };
    for (name, at, d) in &decls {
        if let Decl::Object { labels, algebra } = d {
            let obj = match algebra {
                None => FinObject::set(labels.clone()),
                Some((ops, group)) => Signature::new(
                    ops.iter()
                        .map(|(n, a, _)| OpSpec { name: n.clone(), arity: *a })
                        .collect(),
                )
                .and_then(|sig| {
                    FinObject::algebra(labels.clone(), sig, ops.iter().map(|o| o.2.clone()).collect(), *group)
                }),
            }
            .map_err(|e| wrap(*at, e))?;
            doc.objects.insert(name.clone(), obj);
        }
    }
    let object = |doc: &Document, at: (usize, usize), n: &str| {
        doc.objects
            .get(n)
            .cloned()
            .ok_or_else(|| err(at.0, at.1, format!("unknown object {n}")))
    };
    for (name, at, d) in &decls {
        if let Decl::Morphism { dom, cod, table } = d {
            let m = FinMorphism::new(object(&doc, *at, dom)?, object(&doc, *at, cod)?, table.clone())
                .map_err(|e| wrap(*at, e))?;
            doc.morphisms.insert(name.clone(), m);
        }
    }
    let morphism = |doc: &Document, at: (usize, usize), n: &str| {
        doc.morphisms
            .get(n)
            .cloned()
            .ok_or_else(|| err(at.0, at.1, format!("unknown morphism {n}")))
    };
    for (name, at, d) in &decls {
        match d {
            Decl::Cube { dim, at: objs, gens } => {
                if *dim >= usize::BITS as usize - 1 {
                    return Err(err(at.0, at.1, "cube dimension is too large"));
                }
                let size = 1usize << dim;
                let mut objects = vec![None; size];
                for (s, o) in objs {
                    if *s >= size {
                        return Err(err(at.0, at.1, format!("subset {} lies outside a {dim}-cube", crate::cube::subset_name(*s))));
                    }
                    objects[*s] = Some(object(&doc, *at, o)?);
                }
                let objects = objects
                    .into_iter()
                    .enumerate()
                    .map(|(s, o)| {
                        o.ok_or_else(|| err(at.0, at.1, format!("no object at {}", crate::cube::subset_name(s))))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let g = gens
                    .iter()
                    .map(|(s, i, m)| Ok(((*s, *i), morphism(&doc, *at, m)?)))
                    .collect::<Result<Vec<_>>>()?;
                let c = Cube::build(*dim, objects, g).map_err(|e| wrap(*at, e))?;
                doc.cubes.insert(name.clone(), c);
            }
            Decl::Simplicial(s) => {
                let ss = build_simplicial(&doc, *at, s, &object, &morphism).map_err(|e| wrap(*at, e))?;
                doc.simplicials.insert(name.clone(), ss);
            }
            _ => {}
        }
    }
    Ok(doc)
}

type Lookup<'a, T> = &'a dyn Fn(&Document, (usize, usize), &str) -> Result<T>;

fn build_simplicial(
    doc: &Document,
    at: (usize, usize),
    s: &SimplicialDecl,
    object: Lookup<'_, crate::object::Obj>,
    morphism: Lookup<'_, FinMorphism>,
) -> Result<TruncatedSimplicial> {
    let top = s.top;
    let slot = |what: &str, n: usize, bound: usize| -> Result<()> {
        if n >= bound {
            Err(err(at.0, at.1, format!("{what} index {n} is out of range")))
        } else {
            Ok(())
        }
    };
    let base = s.base.as_ref().map(|b| object(doc, at, b)).transpose()?;
    let mut levels = vec![None; top + 1];
    for (n, o) in &s.levels {
        slot("level", *n, top + 1)?;
        levels[*n] = Some(object(doc, at, o)?);
    }
    let levels = levels
        .into_iter()
        .enumerate()
        .map(|(n, o)| o.ok_or_else(|| err(at.0, at.1, format!("level {n} is missing"))))
        .collect::<Result<Vec<_>>>()?;
    let mut faces: Vec<Vec<Option<FinMorphism>>> = (0..=top)
        .map(|n| vec![None; if n == 0 { usize::from(base.is_some()) } else { n + 1 }])
        .collect();
    for (n, i, m) in &s.faces {
        slot("face level", *n, top + 1)?;
        slot("face", *i, faces[*n].len())?;
        faces[*n][*i] = Some(morphism(doc, at, m)?);
    }
    let faces = faces
        .into_iter()
        .enumerate()
        .map(|(n, row)| {
            row.into_iter()
                .enumerate()
                .map(|(i, f)| f.ok_or_else(|| err(at.0, at.1, format!("face ∂_{i} at level {n} is missing"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let degeneracies = if s.flavor == Flavor::Semi {
        if !s.degeneracies.is_empty() {
            return Err(err(at.0, at.1, "a semi-simplicial object has no degeneracies"));
        }
        Vec::new()
    } else {
        let mut d: Vec<Vec<Option<FinMorphism>>> = (0..top).map(|n| vec![None; n + 1]).collect();
        for (n, j, m) in &s.degeneracies {
            slot("degeneracy level", *n, top)?;
            slot("degeneracy", *j, n + 1)?;
            d[*n][*j] = Some(morphism(doc, at, m)?);
        }
        d.into_iter()
            .enumerate()
            .map(|(n, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, f)| {
                        f.ok_or_else(|| err(at.0, at.1, format!("degeneracy σ_{j} at level {n} is missing")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?
    };
    let contraction = if s.contraction.is_empty() {
        None
    } else {
        let mut c = vec![None; top + 1];
        for (n, m) in &s.contraction {
            slot("contraction level", *n, top + 1)?;
            c[*n] = Some(morphism(doc, at, m)?);
        }
        Some(
            c.into_iter()
                .enumerate()
                .map(|(n, f)| f.ok_or_else(|| err(at.0, at.1, format!("σ_{{-1}} at level {n} is missing"))))
                .collect::<Result<Vec<_>>>()?,
        )
    };
    TruncatedSimplicial::new(s.flavor, base, levels, faces, degeneracies, contraction)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_err(text: &str) -> (usize, usize, String) {
        match parse(text) {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_object() {
        let d = parse("cubex-format 1\nobject x = set \"a\" \"b\"\n").unwrap();
        assert_eq!(d.objects()["x"].labels(), &["a", "b"]);
    }

    #[test]
    fn header_is_required() {
        assert_eq!(parse_err("object x = set\n").0, 1);
    }

    #[test]
    fn non_commuting_square_names_the_corner() {
        let text = "cubex-format 1
object one = set \"*\"
object two = set \"0\" \"1\"
morphism id : two -> two = 0 1
morphism sw : two -> two = 1 0
cube sq dim 2 {
  at [] two
  at [0] two
  at [1] two
  at [0,1] two
  gen [] 0 id
  gen [] 1 id
  gen [0] 1 sw
  gen [1] 0 id
}
";
        let (line, _, msg) = parse_err(text);
        assert_eq!(line, 6);
        assert!(msg.contains("(∅,0,1)"), "{msg}");
    }

    #[test]
    fn bad_table_points_at_declaration() {
        let text = "cubex-format 1\nobject two = set \"0\" \"1\"\n\nmorphism f : two -> two = 0 5\n";
        let (line, col, msg) = parse_err(text);
        assert_eq!((line, col), (4, 1));
        assert!(msg.contains('5'), "{msg}");
    }

    #[test]
    fn unknown_reference() {
        let (line, _, msg) = parse_err("cubex-format 1\nmorphism f : a -> b = 0\n");
        assert_eq!(line, 2);
        assert!(msg.contains("unknown object a"));
    }

    #[test]
    fn comments_and_order_do_not_matter() {
        let a = parse("cubex-format 1\n# two maps\nmorphism f : s -> s = 0\nobject s = set \"x\" # trailing\n").unwrap();
        let b = parse("cubex-format 1\nobject s = set \"x\"\nmorphism f : s -> s = 0\n").unwrap();
        assert_eq!(a, b);
    }
}
