//! Finite objects: finite carriers, optionally with operation tables.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};

/// Shared handle to an immutable object.
pub type Obj = Arc<FinObject>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpSpec {
    pub name: String,
    pub arity: usize,
}

/// A list of named operations. Constants are arity-0 operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<OpSpec>,
}

impl Signature {
    pub fn new(ops: Vec<OpSpec>) -> Result<Self> {
        let mut seen = HashSet::new();
        for op in &ops {
            if !seen.insert(op.name.as_str()) {
                return Err(Error::Validation(format!(
                    "duplicate operation name {:?} in signature",
                    op.name
                )));
            }
        }
        Ok(Signature { ops })
    }

    /// The signature `e/0, mul/2, inv/1`.
    pub fn group() -> Self {
        Signature {
            ops: vec![
                OpSpec { name: "e".into(), arity: 0 },
                OpSpec { name: "mul".into(), arity: 2 },
                OpSpec { name: "inv".into(), arity: 1 },
            ],
        }
    }

    pub fn ops(&self) -> &[OpSpec] {
        &self.ops
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    /// Index of the designated constant: the first arity-0 operation.
    pub fn constant(&self) -> Option<usize> {
        self.ops.iter().position(|o| o.arity == 0)
    }

    pub fn is_group_signature(&self) -> bool {
        let has = |n: &str, a: usize| self.ops.iter().any(|o| o.name == n && o.arity == a);
        self.ops.len() == 3 && has("e", 0) && has("mul", 2) && has("inv", 1)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ops
            .iter()
            .map(|o| format!("{}/{}", o.name, o.arity))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Operation tables over a carrier. Table entries for an `r`-ary operation
/// are stored row-major: the first argument is the most significant digit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    signature: Arc<Signature>,
    tables: Vec<Vec<usize>>,
    group: bool,
}

impl Structure {
    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn claims_group(&self) -> bool {
        self.group
    }

    pub fn apply(&self, op: usize, args: &[usize], size: usize) -> usize {
        self.tables[op][flat_index(args, size)]
    }
}

pub(crate) fn flat_index(args: &[usize], size: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * size + a)
}

/// Calls `f` on every argument tuple in `0..size` of length `arity`, in
/// lexicographic order, together with its flat table index.
pub(crate) fn for_each_args(size: usize, arity: usize, mut f: impl FnMut(&[usize], usize)) {
    let total = size.checked_pow(arity as u32).unwrap_or(usize::MAX);
    if total == 0 {
        return;
    }
    let mut args = vec![0usize; arity];
    for flat in 0..total {
        f(&args, flat);
        for d in (0..arity).rev() {
            args[d] += 1;
            if args[d] < size {
                break;
            }
            args[d] = 0;
        }
    }
}

pub(crate) fn table_len(size: usize, arity: usize) -> Option<usize> {
    size.checked_pow(arity as u32)
}

/// A finite carrier `0..m` with string labels and optional operation tables.
#[derive(Debug, Clone)]
pub struct FinObject {
    labels: Vec<String>,
    structure: Option<Structure>,
    fingerprint: u64,
}

impl PartialEq for FinObject {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.labels == other.labels
            && self.structure == other.structure
    }
}

impl Eq for FinObject {}

impl Hash for FinObject {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.fingerprint.hash(state);
    }
}

impl FinObject {
    fn assemble(labels: Vec<String>, structure: Option<Structure>) -> Obj {
        let mut h = DefaultHasher::new();
        labels.hash(&mut h);
        structure.hash(&mut h);
        Arc::new(FinObject {
            labels,
            structure,
            fingerprint: h.finish(),
        })
    }

    /// A plain finite set.
    pub fn set<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Obj> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_labels(&labels)?;
        Ok(Self::assemble(labels, None))
    }

    /// The plain set `{0, .., n-1}` labelled by decimal indices.
    pub fn set_of_size(n: usize) -> Obj {
        Self::assemble((0..n).map(|i| i.to_string()).collect(), None)
    }

    /// A finite algebra given by one table per operation.
    pub fn algebra<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        signature: Signature,
        tables: Vec<Vec<usize>>,
        group: bool,
    ) -> Result<Obj> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_labels(&labels)?;
        let size = labels.len();
        if tables.len() != signature.ops().len() {
            return Err(Error::Validation(format!(
                "signature {} has {} operations but {} tables were given",
                signature,
                signature.ops().len(),
                tables.len()
            )));
        }
        if size == 0 && signature.constant().is_some() {
            return Err(Error::Validation(
                "an algebra with constants needs a nonempty carrier".into(),
            ));
        }
        for (op, table) in signature.ops().iter().zip(&tables) {
            let want = table_len(size, op.arity).ok_or_else(|| {
                Error::resource(format!("table of {}", op.name), usize::MAX, usize::MAX)
            })?;
            if table.len() != want {
                return Err(Error::Validation(format!(
                    "table of {}/{} has {} entries, expected {}",
                    op.name,
                    op.arity,
                    table.len(),
                    want
                )));
            }
            if let Some(bad) = table.iter().find(|&&v| v >= size) {
                return Err(Error::Validation(format!(
                    "table of {} has entry {} outside the carrier of size {}",
                    op.name, bad, size
                )));
            }
        }
        let structure = Structure {
            signature: Arc::new(signature),
            tables,
            group,
        };
        if group {
            check_group_axioms(&structure, size)?;
        }
        Ok(Self::assemble(labels, Some(structure)))
    }

    /// A group from its multiplication table; identity and inverses are derived.
    pub fn group_from_mul<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        mul: Vec<usize>,
    ) -> Result<Obj> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        if mul.len() != n * n {
            return Err(Error::Validation(format!(
                "multiplication table has {} entries, expected {}",
                mul.len(),
                n * n
            )));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] == x && mul[x * n + e] == x))
            .ok_or_else(|| Error::Validation("multiplication has no identity".into()))?;
        let mut inv = Vec::with_capacity(n);
        for x in 0..n {
            let y = (0..n)
                .find(|&y| mul[x * n + y] == e)
                .ok_or_else(|| Error::Validation(format!("element {x} has no inverse")))?;
            inv.push(y);
        }
        Self::algebra(labels, Signature::group(), vec![vec![e], mul, inv], true)
    }

    pub(crate) fn from_parts_unchecked(labels: Vec<String>, structure: Option<Structure>) -> Obj {
        Self::assemble(labels, structure)
    }

    pub(crate) fn structure_from_tables(
        signature: Arc<Signature>,
        tables: Vec<Vec<usize>>,
        group: bool,
    ) -> Structure {
        Structure {
            signature,
            tables,
            group,
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn structure(&self) -> Option<&Structure> {
        self.structure.as_ref()
    }

    pub fn signature(&self) -> Option<&Arc<Signature>> {
        self.structure.as_ref().map(|s| &s.signature)
    }

    pub fn is_group(&self) -> bool {
        self.structure.as_ref().is_some_and(|s| s.group)
    }

    /// The designated constant of a pointed algebra.
    pub fn constant(&self) -> Option<usize> {
        let s = self.structure.as_ref()?;
        let op = s.signature.constant()?;
        Some(s.tables[op][0])
    }

    /// Group multiplication, when this object is a group.
    pub fn mul(&self, x: usize, y: usize) -> Option<usize> {
        let s = self.structure.as_ref().filter(|s| s.group)?;
        let op = s.signature.position("mul")?;
        Some(s.apply(op, &[x, y], self.size()))
    }

    pub fn inv(&self, x: usize) -> Option<usize> {
        let s = self.structure.as_ref().filter(|s| s.group)?;
        let op = s.signature.position("inv")?;
        Some(s.apply(op, &[x], self.size()))
    }

    /// True when both objects carry operation tables for one signature.
    pub fn same_signature(&self, other: &FinObject) -> bool {
        match (self.signature(), other.signature()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// The one-point object of the same signature (the terminal object).
    pub fn terminal_like(&self) -> Obj {
        let structure = self.structure.as_ref().map(|s| Structure {
            signature: s.signature.clone(),
            tables: s.signature.ops().iter().map(|_| vec![0]).collect(),
            group: s.group,
        });
        Self::assemble(vec!["*".into()], structure)
    }

    /// The sub-object on `keep` (sorted ascending), assumed closed under the
    /// operations. Labels are inherited.
    pub(crate) fn restrict(&self, keep: &[usize]) -> Result<Obj> {
        let mut pos = vec![usize::MAX; self.size()];
        for (i, &k) in keep.iter().enumerate() {
            pos[k] = i;
        }
        let labels = keep.iter().map(|&k| self.labels[k].clone()).collect();
        let structure = match &self.structure {
            None => None,
            Some(s) => {
                let m = keep.len();
                let mut tables = Vec::with_capacity(s.tables.len());
                for (op, spec) in s.signature.ops().iter().enumerate() {
                    let len = table_len(m, spec.arity).unwrap_or(usize::MAX);
                    let cap = Caps::current().table_entries;
                    if len > cap {
                        return Err(Error::resource("operation table", len, cap));
                    }
                    let mut t = vec![0; len];
                    let mut closed = true;
                    let mut full = vec![0; spec.arity];
                    for_each_args(m, spec.arity, |args, flat| {
                        for (d, a) in args.iter().enumerate() {
                            full[d] = keep[*a];
                        }
                        let v = pos[s.apply(op, &full, self.size())];
                        if v == usize::MAX {
                            closed = false;
                        } else {
                            t[flat] = v;
                        }
                    });
                    if !closed {
                        return Err(Error::Validation(format!(
                            "subset is not closed under {}",
                            spec.name
                        )));
                    }
                    tables.push(t);
                }
                Some(Structure {
                    signature: s.signature.clone(),
                    tables,
                    group: s.group,
                })
            }
        };
        Ok(Self::assemble(labels, structure))
    }
}

impl fmt::Display for FinObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(","))?;
        if let Some(s) = &self.structure {
            write!(f, " with {}", s.signature)?;
        }
        Ok(())
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::Validation(format!("duplicate element label {l:?}")));
        }
    }
    Ok(())
}

fn check_group_axioms(s: &Structure, n: usize) -> Result<()> {
    if !s.signature.is_group_signature() {
        return Err(Error::Validation(format!(
            "a group needs the signature {{e/0, mul/2, inv/1}}, got {}",
            s.signature
        )));
    }
    let sig = &s.signature;
    let e = s.tables[sig.position("e").unwrap()][0];
    let mul = &s.tables[sig.position("mul").unwrap()];
    let inv = &s.tables[sig.position("inv").unwrap()];
    let m = |x: usize, y: usize| mul[x * n + y];
    for x in 0..n {
        if m(e, x) != x || m(x, e) != x {
            return Err(Error::Validation(format!(
                "group axiom: identity fails at element {x}"
            )));
        }
        if m(x, inv[x]) != e || m(inv[x], x) != e {
            return Err(Error::Validation(format!(
                "group axiom: inverse fails at element {x}"
            )));
        }
        for y in 0..n {
            let xy = m(x, y);
            for z in 0..n {
                if m(xy, z) != m(x, m(y, z)) {
                    return Err(Error::Validation(format!(
                        "group axiom: associativity fails at ({x},{y},{z})"
                    )));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Obj {
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        FinObject::group_from_mul((0..n).map(|i| i.to_string()), mul).unwrap()
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(FinObject::set(["a", "a"]).is_err());
    }

    #[test]
    fn group_axioms_checked() {
        let g = z(4);
        assert!(g.is_group());
        assert_eq!(g.constant(), Some(0));
        assert_eq!(g.inv(1), Some(3));
        // subtraction is not associative
        let bad: Vec<usize> = (0..9).map(|i| (3 + i / 3 - i % 3) % 3).collect();
        let inv = vec![0, 2, 1];
        let r = FinObject::algebra(
            ["0", "1", "2"],
            Signature::group(),
            vec![vec![0], bad, inv],
            true,
        );
        assert!(matches!(r, Err(Error::Validation(_))));
    }

    #[test]
    fn empty_carrier_rules() {
        assert!(FinObject::set(Vec::<String>::new()).is_ok());
        let r = FinObject::algebra(Vec::<String>::new(), Signature::group(), vec![vec![], vec![], vec![]], false);
        assert!(r.is_err());
    }

    #[test]
    fn table_range_checked() {
        let sig = Signature::new(vec![OpSpec { name: "f".into(), arity: 1 }]).unwrap();
        assert!(FinObject::algebra(["a", "b"], sig, vec![vec![0, 2]], false).is_err());
    }

    #[test]
    fn restrict_kernel_like_subgroup() {
        let g = z(4);
        let h = g.restrict(&[0, 2]).unwrap();
        assert_eq!(h.size(), 2);
        assert_eq!(h.mul(1, 1), Some(0));
        assert!(g.restrict(&[0, 1]).is_err());
    }

    #[test]
    fn terminal_like_keeps_signature() {
        let t = z(3).terminal_like();
        assert_eq!(t.size(), 1);
        assert!(t.same_signature(&z(2)));
    }
}
