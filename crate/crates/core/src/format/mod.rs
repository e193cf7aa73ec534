//! The `.cx` text format.
//!
//! ```text
//! cubex-format 1
//! meta source "example"
//! object two = set "0" "1"
//! object z2 = algebra "0" "1" {
//!   op e 0 = 0
//!   op mul 2 = 0 1 1 0
//!   op inv 1 = 0 1
//!   group
//! }
//! morphism p : two -> one = 0 0
//! cube sq dim 2 {
//!   at [] b0
//!   gen [] 0 b
//! }
//! simplicial s quasi top 1 {
//!   base x
//!   level 0 a0
//!   face 0 0 d
//!   degeneracy 0 0 s
//!   contraction 0 c
//! }
//! ```
//!
//! Declarations may appear in any order; the canonical form lists meta,
//! objects, morphisms, cubes and simplicial objects, each sorted by name.

mod parse;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::cube::{members, Cube};
use crate::error::{Error, Result};
use crate::extension::SquareArrow;
use crate::morphism::FinMorphism;
use crate::object::Obj;
use crate::simplicial::TruncatedSimplicial;

pub use parse::parse;

pub const HEADER: &str = "cubex-format 1";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    meta: BTreeMap<String, String>,
    objects: BTreeMap<String, Obj>,
    morphisms: BTreeMap<String, FinMorphism>,
    cubes: BTreeMap<String, Cube>,
    simplicials: BTreeMap<String, TruncatedSimplicial>,
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn objects(&self) -> &BTreeMap<String, Obj> {
        &self.objects
    }

    pub fn morphisms(&self) -> &BTreeMap<String, FinMorphism> {
        &self.morphisms
    }

    pub fn cubes(&self) -> &BTreeMap<String, Cube> {
        &self.cubes
    }

    pub fn simplicials(&self) -> &BTreeMap<String, TruncatedSimplicial> {
        &self.simplicials
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty() && self.morphisms.is_empty() && self.cubes.is_empty() && self.simplicials.is_empty()
    }

    fn check_fresh(&self, name: &str) -> Result<()> {
        if !valid_name(name) {
            return Err(Error::Validation(format!("invalid declaration name {name:?}")));
        }
        if self.objects.contains_key(name)
            || self.morphisms.contains_key(name)
            || self.cubes.contains_key(name)
            || self.simplicials.contains_key(name)
        {
            return Err(Error::Validation(format!("name {name} is declared twice")));
        }
        Ok(())
    }

    pub fn set_meta(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        if !valid_name(key) {
            return Err(Error::Validation(format!("invalid meta key {key:?}")));
        }
        self.meta.insert(key.to_string(), value.into());
        Ok(())
    }

    pub fn add_object(&mut self, name: &str, obj: Obj) -> Result<()> {
        self.check_fresh(name)?;
        self.objects.insert(name.to_string(), obj);
        Ok(())
    }

    pub fn add_morphism(&mut self, name: &str, m: FinMorphism) -> Result<()> {
        self.check_fresh(name)?;
        self.intern_object(name, m.dom());
        self.intern_object(name, m.cod());
        self.morphisms.insert(name.to_string(), m);
        Ok(())
    }

    pub fn add_cube(&mut self, name: &str, c: Cube) -> Result<()> {
        self.check_fresh(name)?;
        for o in c.objects() {
            self.intern_object(name, o);
        }
        for (_, g) in c.generators() {
            self.intern_morphism(name, g);
        }
        self.cubes.insert(name.to_string(), c);
        Ok(())
    }

    pub fn add_square(&mut self, name: &str, s: &SquareArrow) -> Result<()> {
        self.add_cube(name, Cube::from_square(s)?)
    }

    pub fn add_simplicial(&mut self, name: &str, ss: TruncatedSimplicial) -> Result<()> {
        self.check_fresh(name)?;
        for o in ss.base().into_iter().chain(ss.levels()) {
            self.intern_object(name, o);
        }
        for m in simplicial_maps(&ss) {
            self.intern_morphism(name, m);
        }
        self.simplicials.insert(name.to_string(), ss);
        Ok(())
    }

    fn object_name(&self, o: &Obj) -> Option<&str> {
        self.objects.iter().find(|(_, v)| *v == o).map(|(k, _)| k.as_str())
    }

    fn morphism_name(&self, m: &FinMorphism) -> Option<&str> {
        self.morphisms.iter().find(|(_, v)| *v == m).map(|(k, _)| k.as_str())
    }

    fn fresh(&self, prefix: &str, tag: char) -> String {
        (0..)
            .map(|k| format!("{prefix}.{tag}{k}"))
            .find(|n| self.check_fresh(n).is_ok())
            .unwrap()
    }

    fn intern_object(&mut self, prefix: &str, o: &Obj) {
        if self.object_name(o).is_none() {
            let n = self.fresh(prefix, 'o');
            self.objects.insert(n, o.clone());
        }
    }

    fn intern_morphism(&mut self, prefix: &str, m: &FinMorphism) {
        self.intern_object(prefix, m.dom());
        self.intern_object(prefix, m.cod());
        if self.morphism_name(m).is_none() {
            let n = self.fresh(prefix, 'm');
            self.morphisms.insert(n, m.clone());
        }
    }

    /// The canonical text.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(HEADER);
        out.push('\n');
        let section = |out: &mut String, body: String| {
            if !body.is_empty() {
                out.push('\n');
                out.push_str(&body);
            }
        };
        let mut meta = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(meta, "meta {k} {}", quote(v));
        }
        section(&mut out, meta);
        let mut objs = String::new();
        for (name, o) in &self.objects {
            write_object(&mut objs, name, o);
        }
        section(&mut out, objs);
        let mut maps = String::new();
        for (name, m) in &self.morphisms {
            let _ = write!(
                maps,
                "morphism {name} : {} -> {} =",
                self.object_name(m.dom()).unwrap(),
                self.object_name(m.cod()).unwrap()
            );
            for v in m.table() {
                let _ = write!(maps, " {v}");
            }
            maps.push('\n');
        }
        section(&mut out, maps);
        let mut cubes = String::new();
        for (name, c) in &self.cubes {
            let _ = writeln!(cubes, "cube {name} dim {} {{", c.dim());
            let mut masks: Vec<usize> = (0..1usize << c.dim()).collect();
            masks.sort_by_key(|&m| members(m));
            for &m in &masks {
                let _ = writeln!(cubes, "  at {} {}", subset_text(m), self.object_name(c.object(m)).unwrap());
            }
            for &m in &masks {
                for i in 0..c.dim() {
                    if m >> i & 1 == 0 {
                        let _ = writeln!(
                            cubes,
                            "  gen {} {i} {}",
                            subset_text(m),
                            self.morphism_name(c.gen(m, i)).unwrap()
                        );
                    }
                }
            }
            cubes.push_str("}\n");
        }
        section(&mut out, cubes);
        let mut simps = String::new();
        for (name, ss) in &self.simplicials {
            let _ = writeln!(simps, "simplicial {name} {} top {} {{", ss.flavor().name(), ss.top());
            if let Some(b) = ss.base() {
                let _ = writeln!(simps, "  base {}", self.object_name(b).unwrap());
            }
            for (n, o) in ss.levels().iter().enumerate() {
                let _ = writeln!(simps, "  level {n} {}", self.object_name(o).unwrap());
            }
            for n in 0..=ss.top() {
                for (i, f) in ss.faces(n).iter().enumerate() {
                    let _ = writeln!(simps, "  face {n} {i} {}", self.morphism_name(f).unwrap());
                }
            }
            for (n, row) in ss.degeneracies().iter().enumerate() {
                for (j, s) in row.iter().enumerate() {
                    let _ = writeln!(simps, "  degeneracy {n} {j} {}", self.morphism_name(s).unwrap());
                }
            }
            if let Some(c) = ss.contraction_maps() {
                for (n, s) in c.iter().enumerate() {
                    let _ = writeln!(simps, "  contraction {n} {}", self.morphism_name(s).unwrap());
                }
            }
            simps.push_str("}\n");
        }
        section(&mut out, simps);
        out
    }
}

fn simplicial_maps(ss: &TruncatedSimplicial) -> Vec<&FinMorphism> {
    let mut out: Vec<&FinMorphism> = (0..=ss.top()).flat_map(|n| ss.faces(n).iter()).collect();
    out.extend(ss.degeneracies().iter().flatten());
    if let Some(c) = ss.contraction_maps() {
        out.extend(c.iter());
    }
    out
}

fn subset_text(mask: usize) -> String {
    let m: Vec<String> = members(mask).iter().map(|i| i.to_string()).collect();
    format!("[{}]", m.join(","))
}

pub(crate) fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn write_object(out: &mut String, name: &str, o: &Obj) {
    let labels: Vec<String> = o.labels().iter().map(|l| quote(l)).collect();
    let sep = if labels.is_empty() { "" } else { " " };
    match o.structure() {
        None => {
            let _ = writeln!(out, "object {name} = set{sep}{}", labels.join(" "));
        }
        Some(s) => {
            let _ = writeln!(out, "object {name} = algebra{sep}{} {{", labels.join(" "));
            for (spec, table) in s.signature().ops().iter().zip(s.tables()) {
                let _ = write!(out, "  op {} {} =", spec.name, spec.arity);
                for v in table {
                    let _ = write!(out, " {v}");
                }
                out.push('\n');
            }
            if s.claims_group() {
                out.push_str("  group\n");
            }
            out.push_str("}\n");
        }
    }
}

/// Parses and re-serializes.
pub fn canonicalize(text: &str) -> Result<String> {
    Ok(parse(text)?.serialize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::catalog::relation_square;
    use crate::simplicial::examples;

    #[test]
    fn empty_document_is_header_only() {
        assert_eq!(Document::new().serialize(), "cubex-format 1\n");
        assert_eq!(parse("cubex-format 1\n").unwrap(), Document::new());
    }

    #[test]
    fn round_trip() {
        let mut d = Document::new();
        d.set_meta("note", "a \"quoted\" value").unwrap();
        d.add_object("z2", catalog::cyclic(2)).unwrap();
        d.add_square("bad", &relation_square()).unwrap();
        let q = FinMorphism::new(catalog::cyclic(4), catalog::cyclic(2), vec![0, 1, 0, 1]).unwrap();
        d.add_simplicial("cech", examples::cech_nerve(&q, 2).unwrap()).unwrap();
        let text = d.serialize();
        let back = parse(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.serialize(), text);
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let mut d = Document::new();
        d.add_object("x", catalog::cyclic(2)).unwrap();
        assert!(d.add_object("x", catalog::cyclic(3)).is_err());
    }
}
