//! Standard simplicial objects: constant objects, nerves, Čech nerves and
//! the two-level object attached to a split square.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::extension::SquareArrow;
use crate::limit::{compute_limit, Cone, FinDiagram};
use crate::morphism::{compose, FinMorphism};
use crate::object::{FinObject, Obj};

use super::tv::{extend_by_kernel, IdentityCover};
use super::{CoverChooser, Flavor, TruncatedSimplicial};

/// All `A_n = X`, all maps identities, augmented over `X` and contracted by
/// identities. Semi flavor drops the degeneracies.
pub fn constant(x: &Obj, top: usize, flavor: Flavor) -> TruncatedSimplicial {
    let id = FinMorphism::identity(x);
    let faces = (0..=top)
        .map(|n| vec![id.clone(); n + 1])
        .collect();
    let degeneracies = if flavor == Flavor::Semi {
        Vec::new()
    } else {
        (0..top).map(|n| vec![id.clone(); n + 1]).collect()
    };
    TruncatedSimplicial::new(
        flavor,
        Some(x.clone()),
        vec![x.clone(); top + 1],
        faces,
        degeneracies,
        Some(vec![id; top + 1]),
    )
    .expect("constant simplicial object")
}

/// Tuples over a fixed list of coordinates, with lookup.
struct Tuples {
    obj: Obj,
    cone: Option<Cone>,
}

impl Tuples {
    fn from_cone(cone: Cone) -> Self {
        Tuples {
            obj: cone.apex().clone(),
            cone: Some(cone),
        }
    }

    fn tuple(&self, x: usize) -> &[usize] {
        match &self.cone {
            Some(c) => c.tuple(x),
            None => &[],
        }
    }

    fn find(&self, t: &[usize]) -> usize {
        match &self.cone {
            Some(c) => c.find(t).expect("tuple in carrier"),
            None => 0,
        }
    }
}

fn tuple_map(dom: &Tuples, cod: &Tuples, f: impl Fn(&[usize]) -> Vec<usize>) -> Result<FinMorphism> {
    let table = (0..dom.obj.size()).map(|x| cod.find(&f(dom.tuple(x)))).collect();
    FinMorphism::new(dom.obj.clone(), cod.obj.clone(), table)
}

fn drop_at(t: &[usize], i: usize) -> Vec<usize> {
    let mut v = t.to_vec();
    v.remove(i);
    v
}

fn dup_at(t: &[usize], j: usize) -> Vec<usize> {
    let mut v = t.to_vec();
    v.insert(j, t[j]);
    v
}

/// The nerve of the ordinal `{0 < 1}`: `A_n` holds the nondecreasing 0/1
/// sequences of length `n+1`, faces delete and degeneracies repeat an
/// entry. Not augmented.
pub fn ordinal_nerve(top: usize) -> TruncatedSimplicial {
    let seqs = |n: usize| -> Vec<Vec<usize>> {
        // lexicographic: more zeros first
        (0..=n + 1)
            .rev()
            .map(|zeros| (0..=n).map(|p| usize::from(p >= zeros)).collect())
            .collect()
    };
    let obj = |n: usize| {
        FinObject::set(seqs(n).iter().map(|s| s.iter().map(|b| b.to_string()).collect::<String>()))
            .expect("distinct sequences")
    };
    let levels: Vec<Obj> = (0..=top).map(obj).collect();
    let map = |from: usize, to: usize, f: &dyn Fn(&[usize]) -> Vec<usize>| {
        let (src, dst) = (seqs(from), seqs(to));
        let table = src
            .iter()
            .map(|s| dst.iter().position(|t| *t == f(s)).unwrap())
            .collect();
        FinMorphism::new(levels[from].clone(), levels[to].clone(), table).unwrap()
    };
    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        faces.push((0..=n).map(|i| map(n, n - 1, &|s| drop_at(s, i))).collect());
    }
    let degeneracies = (0..top)
        .map(|n| (0..=n).map(|j| map(n, n + 1, &|s| dup_at(s, j))).collect())
        .collect();
    TruncatedSimplicial::new(Flavor::Full, None, levels, faces, degeneracies, None)
        .expect("nerve of an ordinal")
}

fn power(g: &Obj, n: usize) -> Result<Tuples> {
    if n == 0 {
        return Ok(Tuples {
            obj: g.terminal_like(),
            cone: None,
        });
    }
    let mut d = FinDiagram::new();
    for i in 0..n {
        d.add_node(format!("g{i:02}"), g.clone())?;
    }
    Ok(Tuples::from_cone(compute_limit(&d)?))
}

/// The nerve of an abelian group: `A_n = G^n`, `∂_0` and `∂_n` drop the
/// first and last entry, inner faces multiply neighbours, degeneracies
/// insert the identity. Not augmented.
pub fn abelian_nerve(g: &Obj, top: usize) -> Result<TruncatedSimplicial> {
    let e = g
        .constant()
        .filter(|_| g.is_group())
        .ok_or_else(|| Error::Precondition("nerve needs a group".into()))?;
    for x in 0..g.size() {
        for y in 0..g.size() {
            if g.mul(x, y) != g.mul(y, x) {
                return Err(Error::Precondition("inner faces need an abelian group".into()));
            }
        }
    }
    let pows = (0..=top).map(|n| power(g, n)).collect::<Result<Vec<_>>>()?;
    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        let mut row = Vec::new();
        for i in 0..=n {
            row.push(tuple_map(&pows[n], &pows[n - 1], |t| {
                if i == 0 {
                    t[1..].to_vec()
                } else if i == n {
                    t[..n - 1].to_vec()
                } else {
                    let mut v = t.to_vec();
                    let m = g.mul(v[i - 1], v[i]).unwrap();
                    v[i - 1] = m;
                    v.remove(i);
                    v
                }
            })?);
        }
        faces.push(row);
    }
    let mut degeneracies = Vec::new();
    for n in 0..top {
        let row = (0..=n)
            .map(|j| {
                tuple_map(&pows[n], &pows[n + 1], |t| {
                    let mut v = t.to_vec();
                    v.insert(j, e);
                    v
                })
            })
            .collect::<Result<Vec<_>>>()?;
        degeneracies.push(row);
    }
    let levels = pows.iter().map(|p| p.obj.clone()).collect();
    TruncatedSimplicial::new(Flavor::Full, None, levels, faces, degeneracies, None)
}

/// The Čech nerve of `f: G → Q`: `A_{-1} = Q`, `A_n` the `(n+1)`-fold
/// fibre product, faces delete and degeneracies repeat a coordinate. When
/// `f` splits, `σ_{-1}` prepends `s f x_0`.
pub fn cech_nerve(f: &FinMorphism, top: usize) -> Result<TruncatedSimplicial> {
    let mut levels = Vec::new();
    for n in 0..=top {
        let mut d = FinDiagram::new();
        d.add_aux_node("q", f.cod().clone())?;
        for i in 0..=n {
            d.add_node(format!("x{i:02}"), f.dom().clone())?;
            d.add_edge(format!("f{i:02}"), &format!("x{i:02}"), "q", f.clone())?;
        }
        levels.push(Tuples::from_cone(compute_limit(&d)?));
    }
    let aug = FinMorphism::new(
        levels[0].obj.clone(),
        f.cod().clone(),
        (0..levels[0].obj.size()).map(|x| f.apply(levels[0].tuple(x)[0])).collect(),
    )?;
    let mut faces = vec![vec![aug]];
    for n in 1..=top {
        faces.push(
            (0..=n)
                .map(|i| tuple_map(&levels[n], &levels[n - 1], |t| drop_at(t, i)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let mut degeneracies = Vec::new();
    for n in 0..top {
        degeneracies.push(
            (0..=n)
                .map(|j| tuple_map(&levels[n], &levels[n + 1], |t| dup_at(t, j)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let section = match f.dom().structure() {
        None => f.set_section(),
        Some(_) => f.is_split_epi().map(|s| s.table().to_vec()),
    };
    let contraction = match section {
        None => None,
        Some(s) => {
            let mut c = vec![FinMorphism::new(
                f.cod().clone(),
                levels[0].obj.clone(),
                (0..f.cod().size()).map(|q| levels[0].find(&[s[q]])).collect(),
            )?];
            for n in 1..=top {
                c.push(tuple_map(&levels[n - 1], &levels[n], |t| {
                    let mut v = vec![s[f.apply(t[0])]];
                    v.extend_from_slice(t);
                    v
                })?);
            }
            Some(c)
        }
    };
    TruncatedSimplicial::new(
        Flavor::Full,
        Some(f.cod().clone()),
        levels.iter().map(|t| t.obj.clone()).collect(),
        faces,
        degeneracies,
        contraction,
    )
}

/// A square `(a, b, f1, f0)` of split epimorphisms with sections
/// `ā, b̄, f̄1, f̄0` commuting with the square.
#[derive(Debug, Clone)]
pub struct SplitSquare {
    pub square: SquareArrow,
    pub a_bar: FinMorphism,
    pub b_bar: FinMorphism,
    pub f1_bar: FinMorphism,
    pub f0_bar: FinMorphism,
}

impl SplitSquare {
    pub fn new(
        square: SquareArrow,
        a_bar: FinMorphism,
        b_bar: FinMorphism,
        f1_bar: FinMorphism,
        f0_bar: FinMorphism,
    ) -> Result<Self> {
        let s = &square;
        let is_id = |p: &FinMorphism, q: &FinMorphism| compose(p, q).map(|m| m.is_identity());
        let same = |p: Result<FinMorphism>, q: Result<FinMorphism>| matches!((p, q), (Ok(x), Ok(y)) if x == y);
        if !(is_id(&s.a, &a_bar)? && is_id(&s.b, &b_bar)? && is_id(&s.f1, &f1_bar)? && is_id(&s.f0, &f0_bar)?) {
            return Err(Error::Precondition("a given section is not a section".into()));
        }
        if !same(compose(&f0_bar, &s.b), compose(&s.a, &f1_bar))
            || !same(compose(&b_bar, &s.f0), compose(&s.f1, &a_bar))
            || !same(compose(&a_bar, &f0_bar), compose(&f1_bar, &b_bar))
        {
            return Err(Error::Precondition("sections do not commute with the square".into()));
        }
        Ok(SplitSquare {
            square,
            a_bar,
            b_bar,
            f1_bar,
            f0_bar,
        })
    }
}

/// The contractible augmented object attached to a split square: level
/// `-1` is the bottom corner `B0`, level 0 the top corner `A1` with
/// `∂_0 = f0 ∘ a`, level 1 the pullback of `⟨a, f1⟩` along `a ×_{B0} f1`,
/// and level 2 the simplicial kernel of what lies below. Level 1 is exact
/// exactly when the square is a double extension.
pub fn split_square_truncation(s: &SplitSquare) -> Result<TruncatedSimplicial> {
    let sq = &s.square;
    let top_obj = sq.a.dom().clone();
    let mut d = FinDiagram::new();
    for id in ["w", "x", "y"] {
        d.add_node(id, top_obj.clone())?;
    }
    d.add_aux_node("u", sq.a.cod().clone())?;
    d.add_aux_node("v", sq.f1.cod().clone())?;
    d.add_edge("xa", "x", "u", sq.a.clone())?;
    d.add_edge("wa", "w", "u", sq.a.clone())?;
    d.add_edge("yf", "y", "v", sq.f1.clone())?;
    d.add_edge("wf", "w", "v", sq.f1.clone())?;
    let cone = compute_limit(&d)?;
    let a1 = cone.apex().clone();
    let aug = compose(&sq.f0, &sq.a)?;
    let d0 = cone.leg("x").clone();
    let d1 = cone.leg("y").clone();
    let id = FinMorphism::identity(&top_obj);
    let maps = |w: &FinMorphism, x: &FinMorphism, y: &FinMorphism| {
        let m: BTreeMap<String, FinMorphism> = [("w", w), ("x", x), ("y", y)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        cone.mediate(&top_obj, &m)
    };
    let sigma0 = maps(&id, &id, &id)?;
    let c0 = compose(&s.a_bar, &s.f0_bar)?;
    let aa = compose(&s.a_bar, &sq.a)?;
    let back = compose(&c0, &aug)?;
    let c1 = maps(&aa, &id, &back)?;
    let low = TruncatedSimplicial::new(
        Flavor::Quasi,
        Some(sq.f0.cod().clone()),
        vec![top_obj.clone(), a1],
        vec![vec![aug], vec![d0, d1]],
        vec![vec![sigma0]],
        Some(vec![c0, c1]),
    )?;
    let k2 = super::simplicial_kernel(&low, 2)?;
    extend_by_kernel(&low, &IdentityCover.cover(2, &k2.apex)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::extension::{is_double_extension, Base, ExtensionClass};
    use crate::simplicial::{is_exact_at, is_kan};

    #[test]
    fn cech_nerve_of_split_quotient() {
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        let p = catalog::product(&z2, &z2);
        let q = FinMorphism::new(p.clone(), z2.clone(), vec![0, 0, 1, 1]).unwrap();
        let ss = cech_nerve(&q, 3).unwrap();
        assert!(ss.contraction_maps().is_some());
        assert_eq!(ss.level(2).size(), 16);
        // Z/4 → Z/2 does not split
        let r = FinMorphism::new(z4.clone(), z2, vec![0, 1, 0, 1]).unwrap();
        assert!(cech_nerve(&r, 2).unwrap().contraction_maps().is_none());
    }

    #[test]
    fn nerve_sizes() {
        let n = ordinal_nerve(3);
        let sizes: Vec<usize> = n.levels().iter().map(|a| a.size()).collect();
        assert_eq!(sizes, vec![2, 3, 4, 5]);
        assert_eq!(n.level(1).labels(), &["00", "01", "11"]);
    }

    fn split_pair(dom: &Obj, cod: &Obj, p: &[usize], s: &[usize]) -> (FinMorphism, FinMorphism) {
        (
            FinMorphism::new(dom.clone(), cod.clone(), p.to_vec()).unwrap(),
            FinMorphism::new(cod.clone(), dom.clone(), s.to_vec()).unwrap(),
        )
    }

    #[test]
    fn truncation_of_relation_square() {
        // A1 = {00, 01, 10} with coordinate projections onto 2 = {0, 1}
        let a1 = FinObject::set(["00", "01", "10"]).unwrap();
        let two = FinObject::set_of_size(2);
        let one = FinObject::set_of_size(1);
        let (a, a_bar) = split_pair(&a1, &two, &[0, 0, 1], &[0, 2]);
        let (f1, f1_bar) = split_pair(&a1, &two, &[0, 1, 0], &[0, 1]);
        let (b, b_bar) = split_pair(&two, &one, &[0, 0], &[0]);
        let (f0, f0_bar) = split_pair(&two, &one, &[0, 0], &[0]);
        let sq = SquareArrow::new(a, b, f1, f0).unwrap();
        let split = SplitSquare::new(sq.clone(), a_bar, b_bar, f1_bar, f0_bar).unwrap();
        let ss = split_square_truncation(&split).unwrap();
        assert!(ss.validate().is_empty());
        let class = ExtensionClass::Surjections;
        assert!(!is_double_extension(&Base::new(class), &sq).unwrap());
        assert!(!is_exact_at(&ss, 0, class).unwrap());
        assert!(!is_kan(&ss, class).unwrap());
    }
}
