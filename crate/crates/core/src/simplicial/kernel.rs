//! Simplicial kernels, exactness, horn objects and the Kan property.

use crate::error::{Error, Result};
use crate::extension::{is_double_extension, Base, ExtensionClass, SquareArrow};
use crate::limit::{compute_limit, Cone, FinDiagram};
use crate::morphism::{compose, FinMorphism};
use crate::object::Obj;

use super::TruncatedSimplicial;

/// `K_n` with its legs `k_0..k_n`. For `n = 0` this is `A_{-1}` with the
/// single leg the identity.
#[derive(Debug, Clone)]
pub struct KernelObject {
    pub n: usize,
    pub apex: Obj,
    pub legs: Vec<FinMorphism>,
    cone: Option<Cone>,
}

impl KernelObject {
    /// The map `dom → K_n` with `k_i ∘ it = maps[i]`.
    pub fn mediate(&self, dom: &Obj, maps: &[&FinMorphism]) -> Result<FinMorphism> {
        match &self.cone {
            Some(c) => c.mediate_ordered(dom, maps),
            None => {
                let [m] = maps else {
                    return Err(Error::Validation("K_0 takes a single map".into()));
                };
                Ok((*m).clone())
            }
        }
    }

    pub fn cone(&self) -> Option<&Cone> {
        self.cone.as_ref()
    }

    /// Element of `K_n` with the given leg values.
    pub fn find(&self, tuple: &[usize]) -> Option<usize> {
        match &self.cone {
            Some(c) => c.find(tuple),
            None => tuple.first().copied().filter(|&x| x < self.apex.size()),
        }
    }

    pub fn tuple(&self, x: usize) -> Vec<usize> {
        match &self.cone {
            Some(c) => c.tuple(x).to_vec(),
            None => vec![x],
        }
    }
}

/// Limit of `n+1` copies of `A_{n-1}` under `∂_i k_j = ∂_{j-1} k_i`
/// (`i < j`).
pub fn simplicial_kernel(ss: &TruncatedSimplicial, n: usize) -> Result<KernelObject> {
    if n > ss.top() + 1 {
        return Err(Error::Precondition(format!(
            "simplicial kernel K_{n} needs level {} but the object stops at {}",
            n - 1,
            ss.top()
        )));
    }
    if n == 0 {
        let base = ss
            .base()
            .ok_or_else(|| Error::Precondition("K_0 is the augmentation, which is missing".into()))?;
        return Ok(KernelObject {
            n,
            apex: base.clone(),
            legs: vec![FinMorphism::identity(base)],
            cone: None,
        });
    }
    let below = ss.level(n - 1);
    let mut d = FinDiagram::new();
    for j in 0..=n {
        d.add_node(format!("k{j:02}"), below.clone())?;
    }
    let related = n >= 2 || ss.is_augmented();
    if related {
        let target = ss.obj(n as isize - 2).unwrap();
        for j in 0..=n {
            for i in 0..j {
                let r = format!("r{i:02}{j:02}");
                d.add_aux_node(r.clone(), target.clone())?;
                d.add_edge(format!("{r}a"), &format!("k{j:02}"), &r, ss.face(n - 1, i).clone())?;
                d.add_edge(format!("{r}b"), &format!("k{i:02}"), &r, ss.face(n - 1, j - 1).clone())?;
            }
        }
    }
    let cone = compute_limit(&d)?;
    let legs = (0..=n).map(|j| cone.leg(&format!("k{j:02}")).clone()).collect();
    Ok(KernelObject {
        n,
        apex: cone.apex().clone(),
        legs,
        cone: Some(cone),
    })
}

/// `⟨∂_0, …, ∂_n⟩: A_n → K_n`, together with the kernel.
pub fn kernel_comparison(ss: &TruncatedSimplicial, n: usize) -> Result<(KernelObject, FinMorphism)> {
    if n > ss.top() {
        return Err(Error::Precondition(format!("level {n} exceeds the top level {}", ss.top())));
    }
    let k = simplicial_kernel(ss, n)?;
    let faces: Vec<&FinMorphism> = ss.faces(n).iter().collect();
    let c = k.mediate(ss.level(n), &faces)?;
    Ok((k, c))
}

/// Exactness at `A_n` (`-1 ≤ n ≤ N-1`): the comparison
/// `A_{n+1} → K_{n+1}` is in `E`.
pub fn is_exact_at(ss: &TruncatedSimplicial, n: isize, class: ExtensionClass) -> Result<bool> {
    if n < -1 || n >= ss.top() as isize {
        return Err(Error::Precondition(format!(
            "exactness is checked at A_-1..A_{}, not at A_{n}",
            ss.top() as isize - 1
        )));
    }
    let (_, c) = kernel_comparison(ss, (n + 1) as usize)?;
    Ok(class.member(&c))
}

/// Exactness at every `A_n`, `-1 ≤ n ≤ N-1`, in order.
pub fn resolution_report(ss: &TruncatedSimplicial, class: ExtensionClass) -> Result<Vec<(isize, bool)>> {
    (-1..ss.top() as isize)
        .map(|n| Ok((n, is_exact_at(ss, n, class)?)))
        .collect()
}

/// Resolution up to the top level.
pub fn is_resolution(ss: &TruncatedSimplicial, class: ExtensionClass) -> Result<bool> {
    for n in -1..ss.top() as isize {
        if !is_exact_at(ss, n, class)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A(n,k)` with legs `a_i` for `i ≠ k`, listed in increasing `i`.
#[derive(Debug, Clone)]
pub struct HornObject {
    pub n: usize,
    pub k: usize,
    pub apex: Obj,
    pub legs: Vec<(usize, FinMorphism)>,
    cone: Option<Cone>,
}

impl HornObject {
    pub fn cone(&self) -> Option<&Cone> {
        self.cone.as_ref()
    }
}

pub fn horn_object(ss: &TruncatedSimplicial, n: usize, k: usize) -> Result<HornObject> {
    if n == 0 || n > ss.top() || k > n {
        return Err(Error::Precondition(format!(
            "no ({n},{k})-horn in an object of level {}",
            ss.top()
        )));
    }
    if n == 1 {
        let a0 = ss.level(0);
        return Ok(HornObject {
            n,
            k,
            apex: a0.clone(),
            legs: vec![(1 - k, FinMorphism::identity(a0))],
            cone: None,
        });
    }
    let below = ss.level(n - 1);
    let target = ss.level(n - 2);
    let mut d = FinDiagram::new();
    let idx: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
    for &j in &idx {
        d.add_node(format!("a{j:02}"), below.clone())?;
    }
    for &j in &idx {
        for &i in idx.iter().filter(|&&i| i < j) {
            let r = format!("r{i:02}{j:02}");
            d.add_aux_node(r.clone(), target.clone())?;
            d.add_edge(format!("{r}a"), &format!("a{j:02}"), &r, ss.face(n - 1, i).clone())?;
            d.add_edge(format!("{r}b"), &format!("a{i:02}"), &r, ss.face(n - 1, j - 1).clone())?;
        }
    }
    let cone = compute_limit(&d)?;
    let legs = idx
        .iter()
        .map(|&i| (i, cone.leg(&format!("a{i:02}")).clone()))
        .collect();
    Ok(HornObject {
        n,
        k,
        apex: cone.apex().clone(),
        legs,
        cone: Some(cone),
    })
}

/// `A_n → A(n,k)`; for `n = 1` the comparisons are `∂_0` into `A(1,0)`
/// and `∂_1` into `A(1,1)`.
pub fn horn_comparison(ss: &TruncatedSimplicial, n: usize, k: usize) -> Result<(HornObject, FinMorphism)> {
    let h = horn_object(ss, n, k)?;
    let c = match &h.cone {
        None => ss.face(1, k).clone(),
        Some(cone) => {
            let maps: Vec<&FinMorphism> = (0..=n).filter(|&i| i != k).map(|i| ss.face(n, i)).collect();
            cone.mediate_ordered(ss.level(n), &maps)?
        }
    };
    Ok((h, c))
}

/// Membership of every horn comparison, `1 ≤ n ≤ N`, `0 ≤ k ≤ n`.
pub fn kan_report(ss: &TruncatedSimplicial, class: ExtensionClass) -> Result<Vec<((usize, usize), bool)>> {
    let mut out = Vec::new();
    for n in 1..=ss.top() {
        for k in 0..=n {
            let (_, c) = horn_comparison(ss, n, k)?;
            out.push(((n, k), class.member(&c)));
        }
    }
    Ok(out)
}

pub fn is_kan(ss: &TruncatedSimplicial, class: ExtensionClass) -> Result<bool> {
    Ok(kan_report(ss, class)?.iter().all(|(_, ok)| *ok))
}

/// One line of [`lifted_resolution_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedStep {
    pub what: String,
    pub holds: bool,
}

/// Reads `∂: A⁻ → A` as a simplicial object in the category of
/// extensions and checks that it is a resolution for the lifted class:
/// every component `∂_0` must be an extension, every simplicial kernel of
/// the arrow object must exist among extensions, and every comparison
/// square must be a double extension.
pub fn lifted_resolution_report(ss: &TruncatedSimplicial, class: ExtensionClass) -> Result<Vec<LiftedStep>> {
    let (minus, comps) = ss.shift()?;
    let base = Base::new(class);
    let mut out = Vec::new();
    // comps[m + 1] = B_m : A⁻_m → A_m, m = -1..N-1
    for (ix, b) in comps.iter().enumerate() {
        out.push(LiftedStep {
            what: format!("object B_{} is an extension", ix as isize - 1),
            holds: class.member(b),
        });
    }
    // m = 0: the kernel is B_{-1} itself
    let sq = SquareArrow::new(
        comps[1].clone(),
        comps[0].clone(),
        minus.face(0, 0).clone(),
        ss.face(0, 0).clone(),
    )?;
    out.push(LiftedStep {
        what: "comparison at level 0 is a double extension".into(),
        holds: is_double_extension(&base, &sq)?,
    });
    for m in 1..=minus.top() {
        let (km, cm) = kernel_comparison(&minus, m)?;
        let (ka, ca) = kernel_comparison(ss, m)?;
        let legs = km
            .legs
            .iter()
            .map(|k| compose(&comps[m], k))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&FinMorphism> = legs.iter().collect();
        let kappa = ka.mediate(&km.apex, &refs)?;
        let in_ext = class.member(&kappa);
        out.push(LiftedStep {
            what: format!("simplicial kernel K_{m} exists among extensions"),
            holds: in_ext,
        });
        let sq = SquareArrow::new(comps[m + 1].clone(), kappa, cm, ca)?;
        out.push(LiftedStep {
            what: format!("comparison at level {m} is a double extension"),
            holds: in_ext && is_double_extension(&base, &sq)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::examples;
    use super::super::Flavor;
    use super::*;
    use crate::catalog;
    use crate::object::FinObject;

    #[test]
    fn kernel_of_constant_object_is_diagonal() {
        let x = FinObject::set_of_size(3);
        let c = examples::constant(&x, 3, Flavor::Full);
        for n in 0..=4 {
            let k = simplicial_kernel(&c, n).unwrap();
            assert_eq!(k.apex.size(), 3, "n={n}");
        }
        assert!(is_resolution(&c, ExtensionClass::Surjections).unwrap());
        assert!(is_kan(&c, ExtensionClass::Isomorphisms).unwrap());
    }

    #[test]
    fn first_kernel_is_kernel_pair() {
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        let q = FinMorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let ss = examples::cech_nerve(&q, 1).unwrap();
        let k = simplicial_kernel(&ss, 1).unwrap();
        assert_eq!(k.apex.size(), 8);
        assert!(k.apex.is_group());
    }

    #[test]
    fn low_horns_are_faces() {
        let nerve = examples::ordinal_nerve(2);
        for k in 0..2 {
            let (h, c) = horn_comparison(&nerve, 1, k).unwrap();
            assert_eq!(&h.apex, nerve.level(0));
            assert_eq!(&c, nerve.face(1, k));
        }
    }

    #[test]
    fn ordinal_nerve_is_not_kan() {
        let nerve = examples::ordinal_nerve(2);
        let report = kan_report(&nerve, ExtensionClass::Surjections).unwrap();
        let bad: Vec<_> = report.iter().filter(|(_, ok)| !ok).map(|(nk, _)| *nk).collect();
        assert!(bad.contains(&(2, 0)), "{report:?}");
    }

    #[test]
    fn group_nerve_is_kan() {
        let g = catalog::cyclic(3);
        let nerve = examples::abelian_nerve(&g, 3).unwrap();
        assert!(is_kan(&nerve, ExtensionClass::Surjections).unwrap());
    }
}
