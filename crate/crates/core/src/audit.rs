//! Finite-universe audits of the extension axioms (E1)–(E5).

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::extension::{is_double_extension, ClassedCategory, Square};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    E1,
    E2,
    E3,
    E4,
    E5,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [Axiom::E1, Axiom::E2, Axiom::E3, Axiom::E4, Axiom::E5];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::E1 => "E1",
            Axiom::E2 => "E2",
            Axiom::E3 => "E3",
            Axiom::E4 => "E4",
            Axiom::E5 => "E5",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomStatus {
    Verified { instances: usize },
    Violated { witness: String },
    NotApplicable { reason: String },
}

impl AxiomStatus {
    pub fn label(&self) -> &'static str {
        match self {
            AxiomStatus::Verified { .. } => "verified-on-universe",
            AxiomStatus::Violated { .. } => "violated",
            AxiomStatus::NotApplicable { .. } => "not-applicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub axiom: Axiom,
    pub status: AxiomStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub universe: String,
    pub findings: Vec<Finding>,
}

impl AuditReport {
    pub fn status(&self, axiom: Axiom) -> Option<&AxiomStatus> {
        self.findings
            .iter()
            .find(|f| f.axiom == axiom)
            .map(|f| &f.status)
    }

    pub fn verified(&self, axiom: Axiom) -> bool {
        matches!(self.status(axiom), Some(AxiomStatus::Verified { .. }))
    }

    pub fn violated(&self, axiom: Axiom) -> bool {
        matches!(self.status(axiom), Some(AxiomStatus::Violated { .. }))
    }

    pub fn render(&self) -> String {
        let mut out = format!("universe: {}\n", self.universe);
        for f in &self.findings {
            match &f.status {
                AxiomStatus::Verified { instances } => {
                    out.push_str(&format!("{}: verified-on-universe ({instances} instances)\n", f.axiom))
                }
                AxiomStatus::Violated { witness } => {
                    out.push_str(&format!("{}: violated, witness {witness}\n", f.axiom))
                }
                AxiomStatus::NotApplicable { reason } => {
                    out.push_str(&format!("{}: not-applicable ({reason})\n", f.axiom))
                }
            }
        }
        out
    }
}

/// Morphisms of a universe indexed by their end objects.
struct Indexed<C: ClassedCategory> {
    objs: Vec<C::Obj>,
    mors: Vec<C::Mor>,
    ends: Vec<(usize, usize)>,
    by_dom: HashMap<usize, Vec<usize>>,
    by_cod: HashMap<usize, Vec<usize>>,
    member: Vec<bool>,
}

impl<C: ClassedCategory> Indexed<C> {
    fn build(cat: &C, mors: Vec<C::Mor>) -> Result<Self> {
        let mut obj_ix: HashMap<C::Obj, usize> = HashMap::new();
        let mut objs = Vec::new();
        let mut ends = Vec::with_capacity(mors.len());
        let mut intern = |o: C::Obj| -> usize {
            if let Some(&i) = obj_ix.get(&o) {
                return i;
            }
            objs.push(o.clone());
            obj_ix.insert(o, objs.len() - 1);
            objs.len() - 1
        };
        for m in &mors {
            let d = intern(cat.dom(m));
            let c = intern(cat.cod(m));
            ends.push((d, c));
        }
        let mut by_dom: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut by_cod: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, &(d, c)) in ends.iter().enumerate() {
            by_dom.entry(d).or_default().push(i);
            by_cod.entry(c).or_default().push(i);
        }
        let member = mors
            .par_iter()
            .map(|m| cat.member(m))
            .collect::<Result<Vec<bool>>>()?;
        Ok(Indexed {
            objs,
            mors,
            ends,
            by_dom,
            by_cod,
            member,
        })
    }

    fn out_of(&self, obj: usize) -> &[usize] {
        self.by_dom.get(&obj).map(Vec::as_slice).unwrap_or(&[])
    }

    fn into(&self, obj: usize) -> &[usize] {
        self.by_cod.get(&obj).map(Vec::as_slice).unwrap_or(&[])
    }
}

fn dedup<T: Eq + std::hash::Hash + Clone>(items: Vec<T>) -> Vec<T> {
    let mut seen = std::collections::HashSet::new();
    items.into_iter().filter(|x| seen.insert(x.clone())).collect()
}

type Check = Result<(usize, Option<String>)>;

fn finish(axiom: Axiom, r: Check) -> Result<Finding> {
    let (instances, witness) = r?;
    let status = match witness {
        Some(w) => AxiomStatus::Violated { witness: w },
        None => AxiomStatus::Verified { instances },
    };
    Ok(Finding { axiom, status })
}

/// Audits the requested axioms on an explicit universe of morphisms.
///
/// The universe is closed once under composites of composable pairs and
/// under the pullback legs built while checking (E2); (E3) and (E4) run on
/// the closed universe. Verdicts speak only about this universe.
pub fn audit_axioms<C: ClassedCategory>(
    cat: &C,
    universe: &[C::Mor],
    axioms: &[Axiom],
) -> Result<AuditReport> {
    let base = Indexed::build(cat, dedup(universe.to_vec()))?;
    let mut findings = Vec::new();
    let mut extra: Vec<C::Mor> = Vec::new();

    if axioms.contains(&Axiom::E1) {
        findings.push(finish(Axiom::E1, check_e1(cat, &base))?);
    }
    if axioms.contains(&Axiom::E2) {
        let (r, legs) = check_e2(cat, &base)?;
        extra.extend(legs);
        findings.push(finish(Axiom::E2, Ok(r))?);
    }
    if axioms.contains(&Axiom::E3) || axioms.contains(&Axiom::E4) {
        let closed = close(cat, &base, extra)?;
        if axioms.contains(&Axiom::E3) {
            findings.push(finish(Axiom::E3, check_e3(cat, &closed))?);
        }
        if axioms.contains(&Axiom::E4) {
            findings.push(finish(Axiom::E4, check_e4(cat, &closed))?);
        }
    }
    if axioms.contains(&Axiom::E5) {
        findings.push(finish(Axiom::E5, check_e5(cat, &base))?);
    }
    findings.sort_by_key(|f| f.axiom);
    Ok(AuditReport {
        universe: format!(
            "{} morphisms over {} objects",
            base.mors.len(),
            base.objs.len()
        ),
        findings,
    })
}

fn close<C: ClassedCategory>(
    cat: &C,
    u: &Indexed<C>,
    extra: Vec<C::Mor>,
) -> Result<Indexed<C>> {
    let cap = Caps::current().apex;
    let mut all = u.mors.clone();
    all.extend(extra);
    for (i, &(_, c)) in u.ends.iter().enumerate() {
        for &j in u.out_of(c) {
            all.push(cat.compose(&u.mors[j], &u.mors[i])?);
            if all.len() > cap {
                return Err(Error::resource("audit universe closure", all.len(), cap));
            }
        }
    }
    Indexed::build(cat, dedup(all))
}

fn check_e1<C: ClassedCategory>(cat: &C, u: &Indexed<C>) -> Check {
    let mut n = 0;
    for o in &u.objs {
        n += 1;
        let id = cat.identity(o);
        if !cat.member(&id)? {
            return Ok((n, Some(format!("identity {}", cat.describe(&id)))));
        }
    }
    for (i, m) in u.mors.iter().enumerate() {
        if cat.is_iso(m) {
            n += 1;
            if !u.member[i] {
                return Ok((n, Some(format!("isomorphism {}", cat.describe(m)))));
            }
        }
    }
    Ok((n, None))
}

fn check_e2<C: ClassedCategory>(cat: &C, u: &Indexed<C>) -> Result<((usize, Option<String>), Vec<C::Mor>)> {
    let jobs: Vec<(usize, usize)> = (0..u.mors.len())
        .filter(|&p| u.member[p])
        .flat_map(|p| u.into(u.ends[p].1).iter().map(move |&g| (p, g)))
        .collect();
    let results: Vec<Result<(Option<String>, Vec<C::Mor>)>> = jobs
        .par_iter()
        .map(|&(p, g)| {
            let (pm, gm) = (&u.mors[p], &u.mors[g]);
            match cat.pullback(pm, gm)? {
                None => Ok((
                    Some(format!(
                        "pullback of {} along {} does not exist",
                        cat.describe(pm),
                        cat.describe(gm)
                    )),
                    Vec::new(),
                )),
                Some(cone) => {
                    let (l0, l1) = cat.cone_legs(&cone);
                    let w = (!cat.member(&l1)?).then(|| {
                        format!(
                            "pullback of {} along {} gives {}",
                            cat.describe(pm),
                            cat.describe(gm),
                            cat.describe(&l1)
                        )
                    });
                    Ok((w, vec![l0, l1]))
                }
            }
        })
        .collect();
    let mut legs = Vec::new();
    for r in results {
        let (w, l) = r?;
        if let Some(w) = w {
            return Ok(((jobs.len(), Some(w)), legs));
        }
        legs.extend(l);
    }
    Ok(((jobs.len(), None), legs))
}

fn composable_pairs<C: ClassedCategory>(u: &Indexed<C>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (f, &(_, c)) in u.ends.iter().enumerate() {
        for &g in u.out_of(c) {
            out.push((f, g));
        }
    }
    out
}

fn first_violation(results: Vec<Result<Option<String>>>) -> Result<Option<String>> {
    for r in results {
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn check_e3<C: ClassedCategory>(cat: &C, u: &Indexed<C>) -> Check {
    let pairs: Vec<(usize, usize)> = composable_pairs(u)
        .into_iter()
        .filter(|&(f, g)| u.member[f] && u.member[g])
        .collect();
    let results = pairs
        .par_iter()
        .map(|&(f, g)| {
            let gf = cat.compose(&u.mors[g], &u.mors[f])?;
            Ok((!cat.member(&gf)?).then(|| {
                format!(
                    "{} then {} composes to a non-member",
                    cat.describe(&u.mors[f]),
                    cat.describe(&u.mors[g])
                )
            }))
        })
        .collect();
    Ok((pairs.len(), first_violation(results)?))
}

fn check_e4<C: ClassedCategory>(cat: &C, u: &Indexed<C>) -> Check {
    let pairs = composable_pairs(u);
    let results: Vec<Result<(bool, Option<String>)>> = pairs
        .par_iter()
        .map(|&(f, g)| {
            let gf = cat.compose(&u.mors[g], &u.mors[f])?;
            if !cat.member(&gf)? {
                return Ok((false, None));
            }
            let w = (!u.member[g]).then(|| {
                format!(
                    "{} then {} composes to a member but the second is not one",
                    cat.describe(&u.mors[f]),
                    cat.describe(&u.mors[g])
                )
            });
            Ok((true, w))
        })
        .collect();
    let mut n = 0;
    for r in results {
        let (counted, w) = r?;
        if counted {
            n += 1;
        }
        if let Some(w) = w {
            return Ok((n, Some(w)));
        }
    }
    Ok((n, None))
}

/// Pairs `(p, s)` of the universe with `p ∘ s = 1`, grouped by `dom p`.
fn split_pairs<C: ClassedCategory>(cat: &C, u: &Indexed<C>) -> Result<HashMap<usize, Vec<(usize, usize)>>> {
    let mut out: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (p, &(d, c)) in u.ends.iter().enumerate() {
        let id = cat.identity(&u.objs[c]);
        for &s in u.out_of(c) {
            if u.ends[s].1 == d && cat.compose(&u.mors[p], &u.mors[s])? == id {
                out.entry(d).or_default().push((p, s));
            }
        }
    }
    Ok(out)
}

/// Every split epimorphism of extensions `(f1, f0): a → b` with section
/// `(s1, s0)` whose parts lie in the universe; `b` is forced to be
/// `f0 ∘ a ∘ s1`.
pub fn split_epis_of_extensions<C: ClassedCategory>(
    cat: &C,
    universe: &[C::Mor],
) -> Result<Vec<Square<C::Mor>>> {
    let u = Indexed::build(cat, dedup(universe.to_vec()))?;
    split_epis_indexed(cat, &u)
}

fn split_epis_indexed<C: ClassedCategory>(cat: &C, u: &Indexed<C>) -> Result<Vec<Square<C::Mor>>> {
    let splits = split_pairs(cat, u)?;
    let none = Vec::new();
    let mut out = Vec::new();
    for (ai, &(d, c)) in u.ends.iter().enumerate() {
        if !u.member[ai] {
            continue;
        }
        let a = &u.mors[ai];
        for &(f1, s1) in splits.get(&d).unwrap_or(&none) {
            let a_s1 = cat.compose(a, &u.mors[s1])?;
            for &(f0, s0) in splits.get(&c).unwrap_or(&none) {
                let b = cat.compose(&u.mors[f0], &a_s1)?;
                if !cat.member(&b)? {
                    continue;
                }
                let left = cat.compose(&u.mors[f0], a)?;
                let right = cat.compose(&b, &u.mors[f1])?;
                if left != right {
                    continue;
                }
                if a_s1 != cat.compose(&u.mors[s0], &b)? {
                    continue;
                }
                out.push(Square {
                    a: a.clone(),
                    b,
                    f1: u.mors[f1].clone(),
                    f0: u.mors[f0].clone(),
                });
            }
        }
    }
    Ok(out)
}

fn check_e5<C: ClassedCategory>(cat: &C, u: &Indexed<C>) -> Check {
    let squares = split_epis_indexed(cat, u)?;
    let results = squares
        .par_iter()
        .map(|s| {
            Ok((!is_double_extension(cat, s)?).then(|| {
                format!(
                    "split epimorphism of extensions a: {}, b: {}, f1: {}, f0: {}",
                    cat.describe(&s.a),
                    cat.describe(&s.b),
                    cat.describe(&s.f1),
                    cat.describe(&s.f0)
                )
            }))
        })
        .collect();
    Ok((squares.len(), first_violation(results)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::extension::{Base, ExtensionClass};
    use crate::morphism::enumerate_morphisms;

    fn all_maps(objs: &[crate::object::Obj]) -> Vec<crate::morphism::FinMorphism> {
        let mut out = Vec::new();
        for a in objs {
            for b in objs {
                out.extend(enumerate_morphisms(a, b));
            }
        }
        out
    }

    #[test]
    fn surjections_on_small_sets() {
        let objs: Vec<_> = catalog::sets_up_to(2).into_iter().map(|(_, o)| o).collect();
        let u = all_maps(&objs);
        let r = audit_axioms(&Base::new(ExtensionClass::Surjections), &u, &Axiom::ALL).unwrap();
        for ax in [Axiom::E1, Axiom::E2, Axiom::E3, Axiom::E4] {
            assert!(r.verified(ax), "{}", r.render());
        }
    }

    #[test]
    fn isomorphisms_fail_e4() {
        let objs: Vec<_> = catalog::sets_up_to(2).into_iter().map(|(_, o)| o).collect();
        let u = all_maps(&objs);
        let r = audit_axioms(&Base::new(ExtensionClass::Isomorphisms), &u, &[Axiom::E4]).unwrap();
        assert!(r.violated(Axiom::E4));
    }

    #[test]
    fn surjections_on_small_groups_satisfy_e5() {
        let objs: Vec<_> = catalog::groups_up_to(4).into_iter().map(|(_, o)| o).collect();
        let u = all_maps(&objs);
        let r = audit_axioms(&Base::new(ExtensionClass::Surjections), &u, &Axiom::ALL).unwrap();
        for ax in Axiom::ALL {
            assert!(r.verified(ax), "{}", r.render());
        }
    }
}
