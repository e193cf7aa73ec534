//! Exhaustive search for a split epimorphism of split epimorphisms that is
//! not a double extension.

use std::collections::HashMap;

use crate::catalog;
use crate::error::Result;
use crate::extension::{is_double_extension, square_comparison, Base, ExtensionClass, SquareArrow};
use crate::format::Document;
use crate::morphism::{compose, enumerate_morphisms, FinMorphism};
use crate::object::{FinObject, Obj};
use crate::simplicial::examples::{split_square_truncation, SplitSquare};
use crate::simplicial::{is_exact_at, is_kan};

use super::report::{TheoremReport, Verdict};

pub const SEARCH_ID: &str = "maltsev-search";

/// Where to look.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchDomain {
    /// Plain sets with `1..=n` elements.
    Sets(usize),
    /// The catalog groups of order at most `n`.
    Groups(usize),
}

impl SearchDomain {
    pub fn describe(self) -> String {
        match self {
            SearchDomain::Sets(n) => format!("finite sets with carriers 1..={n}"),
            SearchDomain::Groups(n) => format!("groups of order <= {n}"),
        }
    }

    fn objects(self) -> Vec<Obj> {
        match self {
            SearchDomain::Sets(n) => (1..=n).map(FinObject::set_of_size).collect(),
            SearchDomain::Groups(n) => catalog::groups_up_to(n).into_iter().map(|(_, g)| g).collect(),
        }
    }
}

/// Every `(p, s)` with `p: X → Y`, `s: Y → X` and `p ∘ s = 1`, memoized
/// by the pair of object indices.
pub(crate) struct SplitPairs<'a> {
    objs: &'a [Obj],
    cache: HashMap<(usize, usize), Vec<(FinMorphism, FinMorphism)>>,
}

impl<'a> SplitPairs<'a> {
    pub(crate) fn new(objs: &'a [Obj]) -> Self {
        SplitPairs {
            objs,
            cache: HashMap::new(),
        }
    }

    pub(crate) fn get(&mut self, x: usize, y: usize) -> &[(FinMorphism, FinMorphism)] {
        let objs = self.objs;
        self.cache.entry((x, y)).or_insert_with(|| {
            let (ox, oy) = (&objs[x], &objs[y]);
            if ox.size() < oy.size() {
                return Vec::new();
            }
            let sections = enumerate_morphisms(oy, ox);
            let mut out = Vec::new();
            for p in enumerate_morphisms(ox, oy) {
                if !p.is_surjective() {
                    continue;
                }
                for s in &sections {
                    if compose(&p, s).unwrap().is_identity() {
                        out.push((p.clone(), s.clone()));
                    }
                }
            }
            out
        })
    }
}

/// Calls `visit` on every split square whose corners are drawn from
/// `objs`, corner sizes ordered by their sum and then lexicographically,
/// until it returns `Some`.
pub(crate) fn for_each_split_square<T>(
    objs: &[Obj],
    prune: impl Fn(&Obj, &Obj) -> bool,
    mut visit: impl FnMut(SplitSquare) -> Result<Option<T>>,
) -> Result<Option<T>> {
    let n = objs.len();
    let mut corners: Vec<[usize; 4]> = Vec::new();
    for a1 in 0..n {
        for a0 in 0..n {
            for b1 in 0..n {
                for b0 in 0..n {
                    let ok = prune(&objs[a1], &objs[a0])
                        && prune(&objs[a1], &objs[b1])
                        && prune(&objs[b1], &objs[b0])
                        && prune(&objs[a0], &objs[b0]);
                    if ok {
                        corners.push([a1, a0, b1, b0]);
                    }
                }
            }
        }
    }
    let key = |c: &[usize; 4]| {
        let sizes: Vec<usize> = c.iter().map(|&i| objs[i].size()).collect();
        (sizes.iter().sum::<usize>(), sizes, *c)
    };
    corners.sort_by_key(key);
    let mut pairs = SplitPairs::new(objs);
    for [a1, a0, b1, b0] in corners {
        let f0s = pairs.get(a0, b0).to_vec();
        let bs = pairs.get(b1, b0).to_vec();
        let as_ = pairs.get(a1, a0).to_vec();
        let f1s = pairs.get(a1, b1).to_vec();
        for (f0, f0_bar) in &f0s {
            for (b, b_bar) in &bs {
                for (a, a_bar) in &as_ {
                    let f0a = compose(f0, a)?;
                    let a_f1bar_target = compose(f0_bar, b)?;
                    let bbar_f0 = compose(b_bar, f0)?;
                    let abar_f0bar = compose(a_bar, f0_bar)?;
                    for (f1, f1_bar) in &f1s {
                        if compose(b, f1)? != f0a
                            || compose(a, f1_bar)? != a_f1bar_target
                            || compose(f1, a_bar)? != bbar_f0
                            || compose(f1_bar, b_bar)? != abar_f0bar
                        {
                            continue;
                        }
                        let sq = SquareArrow {
                            a: a.clone(),
                            b: b.clone(),
                            f1: f1.clone(),
                            f0: f0.clone(),
                        };
                        let split = SplitSquare {
                            square: sq,
                            a_bar: a_bar.clone(),
                            b_bar: b_bar.clone(),
                            f1_bar: f1_bar.clone(),
                            f0_bar: f0_bar.clone(),
                        };
                        if let Some(t) = visit(split)? {
                            return Ok(Some(t));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Number of pullback elements hit by the comparison, and the pullback size.
pub fn comparison_image(sq: &SquareArrow) -> Result<(usize, usize)> {
    let (pb, c) = square_comparison(&Base::new(ExtensionClass::All), sq)?.expect("pullbacks exist");
    let mut hit = c.table().to_vec();
    hit.sort_unstable();
    hit.dedup();
    Ok((hit.len(), pb.apex().size()))
}

/// The split square with its sections as a `.cx` document.
pub fn split_square_document(s: &SplitSquare) -> Result<Document> {
    let mut doc = Document::new();
    doc.add_square("square", &s.square)?;
    doc.add_morphism("a_bar", s.a_bar.clone())?;
    doc.add_morphism("b_bar", s.b_bar.clone())?;
    doc.add_morphism("f1_bar", s.f1_bar.clone())?;
    doc.add_morphism("f0_bar", s.f0_bar.clone())?;
    Ok(doc)
}

/// Searches `domain` with `E` the surjections. A witness is re-checked
/// through its truncated simplicial object, which must fail exactness at
/// `A_0` and the Kan property.
pub fn search_maltsev_counterexample(domain: SearchDomain) -> Result<TheoremReport> {
    let objs = domain.objects();
    let base = Base::new(ExtensionClass::Surjections);
    let groups = matches!(domain, SearchDomain::Groups(_));
    let prune = |x: &Obj, y: &Obj| x.size() >= y.size() && (!groups || x.size() % y.size() == 0);
    let mut examined = 0usize;
    let found = for_each_split_square(&objs, prune, |s| {
        examined += 1;
        Ok((!is_double_extension(&base, &s.square)?).then_some(s))
    })?;
    let instance = domain.describe();
    let Some(s) = found else {
        return Ok(TheoremReport::new(SEARCH_ID, instance, Verdict::NoneFoundInBounds)
            .with_detail(format!("{examined} split epimorphisms of split epimorphisms examined")));
    };
    let (hit, size) = comparison_image(&s.square)?;
    let trunc = split_square_truncation(&s)?;
    let exact0 = is_exact_at(&trunc, 0, ExtensionClass::Surjections)?;
    let kan = is_kan(&trunc, ExtensionClass::Surjections)?;
    let mut doc = split_square_document(&s)?;
    doc.add_simplicial("trunc", trunc)?;
    let sizes = [&s.square.a.dom(), &s.square.a.cod(), &s.square.b.dom(), &s.square.b.cod()].map(|o| o.size());
    Ok(TheoremReport::new(SEARCH_ID, instance, Verdict::Violated)
        .with_detail(format!("{examined} split epimorphisms of split epimorphisms examined"))
        .with_detail(format!(
            "corner sizes A1={} A0={} B1={} B0={}",
            sizes[0], sizes[1], sizes[2], sizes[3]
        ))
        .with_detail(format!("comparison image {hit} of {size}"))
        .with_detail(format!("truncated object exact at A_0: {exact0}"))
        .with_detail(format!("truncated object Kan: {kan}"))
        .with_witness(doc.serialize()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sets_up_to_three_have_a_witness() {
        let r = search_maltsev_counterexample(SearchDomain::Sets(3)).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert!(r.detail.iter().any(|d| d == "comparison image 3 of 4"), "{:?}", r.detail);
        assert!(r.detail.iter().any(|d| d == "truncated object exact at A_0: false"));
        assert!(r.detail.iter().any(|d| d == "truncated object Kan: false"));
    }

    #[test]
    fn singletons_have_none() {
        let r = search_maltsev_counterexample(SearchDomain::Sets(1)).unwrap();
        assert_eq!(r.verdict, Verdict::NoneFoundInBounds);
    }

    #[test]
    fn small_groups_have_none() {
        let r = search_maltsev_counterexample(SearchDomain::Groups(4)).unwrap();
        assert_eq!(r.verdict, Verdict::NoneFoundInBounds);
    }
}
