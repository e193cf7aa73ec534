//! Morphisms between finite objects as total function tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::object::{for_each_args, FinObject, Obj};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinMorphism {
    dom: Obj,
    cod: Obj,
    table: Arc<[usize]>,
}

impl FinMorphism {
    /// Validates totality, range and (when both ends share a signature) the
    /// homomorphism property.
    pub fn new(dom: Obj, cod: Obj, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size() {
            return Err(Error::Validation(format!(
                "map table has {} entries but the domain has {} elements",
                table.len(),
                dom.size()
            )));
        }
        if let Some((x, &y)) = table.iter().enumerate().find(|(_, &y)| y >= cod.size()) {
            return Err(Error::Validation(format!(
                "element {x} is sent to {y}, outside the codomain of size {}",
                cod.size()
            )));
        }
        if let Some(w) = hom_violation(&dom, &cod, &table) {
            return Err(Error::Validation(format!(
                "map is not a homomorphism: {w}"
            )));
        }
        Ok(FinMorphism {
            dom,
            cod,
            table: table.into(),
        })
    }

    /// Builds a morphism the caller has already validated.
    pub(crate) fn new_unchecked(dom: Obj, cod: Obj, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), dom.size());
        FinMorphism {
            dom,
            cod,
            table: table.into(),
        }
    }

    pub fn identity(obj: &Obj) -> Self {
        Self::new_unchecked(obj.clone(), obj.clone(), (0..obj.size()).collect())
    }

    /// The unique map into the one-point object `target`.
    pub fn to_terminal(dom: &Obj, target: &Obj) -> Result<Self> {
        if target.size() != 1 {
            return Err(Error::Validation("target is not a one-point object".into()));
        }
        Self::new(dom.clone(), target.clone(), vec![0; dom.size()])
    }

    pub fn dom(&self) -> &Obj {
        &self.dom
    }

    pub fn cod(&self) -> &Obj {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &FinMorphism) -> Result<FinMorphism> {
        compose(self, g)
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.table.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        for &y in self.table.iter() {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        for &y in self.table.iter() {
            if hit[y] {
                return false;
            }
            hit[y] = true;
        }
        true
    }

    pub fn is_iso(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinMorphism> {
        if !self.is_iso() {
            return None;
        }
        let mut inv = vec![0; self.cod.size()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y] = x;
        }
        Some(Self::new_unchecked(self.cod.clone(), self.dom.clone(), inv))
    }

    /// The lexicographically first section that is a morphism of the
    /// category, if any.
    pub fn is_split_epi(&self) -> Option<FinMorphism> {
        self.first_section(true)
    }

    /// The lexicographically first section as a plain function, ignoring
    /// any structure.
    pub fn set_section(&self) -> Option<Vec<usize>> {
        self.first_section(false).map(|s| s.table.to_vec())
    }

    fn first_section(&self, structured: bool) -> Option<FinMorphism> {
        let mut fibers = vec![Vec::new(); self.cod.size()];
        for (x, &y) in self.table.iter().enumerate() {
            fibers[y].push(x);
        }
        if fibers.iter().any(|f| f.is_empty()) {
            return None;
        }
        let mut found = None;
        search_maps(&self.cod, &self.dom, &fibers, structured, |t| {
            found = Some(t.to_vec());
            false
        });
        found.map(|t| {
            if structured {
                Self::new_unchecked(self.cod.clone(), self.dom.clone(), t)
            } else {
                FinMorphism {
                    dom: strip(&self.cod),
                    cod: strip(&self.dom),
                    table: t.into(),
                }
            }
        })
    }
}

fn strip(o: &Obj) -> Obj {
    if o.structure().is_none() {
        o.clone()
    } else {
        FinObject::from_parts_unchecked(o.labels().to_vec(), None)
    }
}

/// `f ∘ g`; requires `cod(g) = dom(f)`.
pub fn compose(f: &FinMorphism, g: &FinMorphism) -> Result<FinMorphism> {
    if g.cod != f.dom {
        return Err(Error::Composition(format!(
            "codomain {} of the first map differs from domain {} of the second",
            g.cod, f.dom
        )));
    }
    let table = g.table.iter().map(|&x| f.table[x]).collect();
    Ok(FinMorphism::new_unchecked(g.dom.clone(), f.cod.clone(), table))
}

/// Every morphism `dom → cod` in lexicographic order of tables.
pub fn enumerate_morphisms(dom: &Obj, cod: &Obj) -> Vec<FinMorphism> {
    let candidates = vec![(0..cod.size()).collect::<Vec<_>>(); dom.size()];
    let mut out = Vec::new();
    search_maps(dom, cod, &candidates, true, |t| {
        out.push(FinMorphism::new_unchecked(dom.clone(), cod.clone(), t.to_vec()));
        true
    });
    out
}

/// Describes the first operation instance a table fails to preserve.
pub(crate) fn hom_violation(dom: &FinObject, cod: &FinObject, table: &[usize]) -> Option<String> {
    if !dom.same_signature(cod) {
        return None;
    }
    let (ds, cs) = (dom.structure()?, cod.structure()?);
    let (m, n) = (dom.size(), cod.size());
    for (op, spec) in ds.signature().ops().iter().enumerate() {
        let mut bad = None;
        let mut img = vec![0; spec.arity];
        for_each_args(m, spec.arity, |args, flat| {
            if bad.is_some() {
                return;
            }
            for (d, &a) in args.iter().enumerate() {
                img[d] = table[a];
            }
            if table[ds.tables()[op][flat]] != cs.apply(op, &img, n) {
                bad = Some(format!("{} at arguments {:?}", spec.name, args));
            }
        });
        if bad.is_some() {
            return bad;
        }
    }
    None
}

/// Backtracking enumeration of tables `t` with `t[x] ∈ candidates[x]`,
/// in lexicographic order, pruned by operation compatibility when
/// `structured` and both objects share a signature. `visit` returns false
/// to stop.
pub(crate) fn search_maps(
    dom: &FinObject,
    cod: &FinObject,
    candidates: &[Vec<usize>],
    structured: bool,
    mut visit: impl FnMut(&[usize]) -> bool,
) {
    let m = dom.size();
    let check = structured && dom.same_signature(cod);
    let mut table = vec![0usize; m];
    if m == 0 {
        visit(&table);
        return;
    }
    let mut choice = vec![0usize; m];
    let mut k = 0usize;
    loop {
        if choice[k] < candidates[k].len() {
            table[k] = candidates[k][choice[k]];
            choice[k] += 1;
            if check && !consistent_upto(dom, cod, &table, k) {
                continue;
            }
            if k + 1 == m {
                if !visit(&table) {
                    return;
                }
            } else {
                k += 1;
                choice[k] = 0;
            }
        } else {
            if k == 0 {
                return;
            }
            k -= 1;
        }
    }
}

/// Checks every operation instance whose arguments and result lie in
/// `0..=k` and which involves `k`.
fn consistent_upto(dom: &FinObject, cod: &FinObject, table: &[usize], k: usize) -> bool {
    let (ds, cs) = match (dom.structure(), cod.structure()) {
        (Some(a), Some(b)) => (a, b),
        _ => return true,
    };
    let (m, n) = (dom.size(), cod.size());
    let bound = k + 1;
    for (op, spec) in ds.signature().ops().iter().enumerate() {
        let mut ok = true;
        let mut full = vec![0; spec.arity];
        let mut img = vec![0; spec.arity];
        for_each_args(bound, spec.arity, |args, _| {
            if !ok {
                return;
            }
            full.copy_from_slice(args);
            let out = ds.apply(op, &full, m);
            if out > k {
                return;
            }
            if out != k && !args.contains(&k) {
                return;
            }
            for (d, &a) in args.iter().enumerate() {
                img[d] = table[a];
            }
            if table[out] != cs.apply(op, &img, n) {
                ok = false;
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

impl fmt::Display for FinMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.table.iter().map(|v| v.to_string()).collect();
        write!(f, "{} -> {} [{}]", self.dom, self.cod, parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn compose_identities_and_constants() {
        let two = FinObject::set_of_size(2);
        let id = FinMorphism::identity(&two);
        assert_eq!(compose(&id, &id).unwrap(), id);
        let one = FinObject::set_of_size(1);
        let three = FinObject::set_of_size(3);
        let c = FinMorphism::new(two.clone(), one.clone(), vec![0, 0]).unwrap();
        let g = FinMorphism::new(three.clone(), two.clone(), vec![0, 1, 1]).unwrap();
        assert_eq!(compose(&c, &g).unwrap().table(), &[0, 0, 0]);
        assert!(matches!(compose(&g, &c), Err(Error::Composition(_))));
    }

    #[test]
    fn quotient_after_doubling_is_trivial() {
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        let q = FinMorphism::new(z4.clone(), z2, vec![0, 1, 0, 1]).unwrap();
        let dbl = FinMorphism::new(z4.clone(), z4, vec![0, 2, 0, 2]).unwrap();
        assert_eq!(compose(&q, &dbl).unwrap().table(), &[0, 0, 0, 0]);
    }

    #[test]
    fn homomorphism_checked() {
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        assert!(FinMorphism::new(z4, z2, vec![0, 1, 1, 0]).is_err());
    }

    #[test]
    fn surjective_and_iso() {
        let two = FinObject::set_of_size(2);
        assert!(!FinMorphism::new(two.clone(), two.clone(), vec![0, 0]).unwrap().is_surjective());
        let swap = FinMorphism::new(two.clone(), two.clone(), vec![1, 0]).unwrap();
        assert!(swap.is_iso());
        assert_eq!(swap.inverse().unwrap(), swap);
    }

    #[test]
    fn split_epis() {
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        let q = FinMorphism::new(z4, z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert!(q.is_split_epi().is_none());
        assert_eq!(q.set_section().unwrap(), vec![0, 1]);

        let v = catalog::product(&z2, &z2);
        let p = FinMorphism::new(v.clone(), z2.clone(), (0..4).map(|i| i / 2).collect()).unwrap();
        let s = p.is_split_epi().unwrap();
        // (x, 0) has index 2x
        assert_eq!(s.table(), &[0, 2]);
        let id = FinMorphism::identity(&v);
        assert_eq!(id.is_split_epi().unwrap(), id);
    }

    #[test]
    fn hom_counts() {
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        assert_eq!(enumerate_morphisms(&z2, &z4).len(), 2);
        assert_eq!(enumerate_morphisms(&z4, &z4).len(), 4);
        let s3 = catalog::symmetric3();
        assert_eq!(enumerate_morphisms(&s3, &s3).len(), 10);
        let a = FinObject::set_of_size(2);
        let b = FinObject::set_of_size(3);
        assert_eq!(enumerate_morphisms(&a, &b).len(), 9);
    }
}
