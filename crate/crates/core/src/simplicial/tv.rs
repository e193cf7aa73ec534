//! Resolutions built by covering simplicial kernels level by level.

use crate::catalog;
use crate::error::{Error, Result};
use crate::extension::ExtensionClass;
use crate::morphism::{compose, FinMorphism};
use crate::object::{FinObject, Obj};

use super::kernel::simplicial_kernel;
use super::{Flavor, TruncatedSimplicial};

/// A cover `p: P → K` with a section `s` (`p ∘ s = 1`).
#[derive(Debug, Clone)]
pub struct Cover {
    pub obj: Obj,
    pub proj: FinMorphism,
    pub section: FinMorphism,
}

pub trait CoverChooser {
    /// The cover of `obj`, which is `X` at level 0 and `K_n` at level `n`.
    fn cover(&self, level: usize, obj: &Obj) -> Result<Cover>;
}

/// `P = K`, `p = 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityCover;

impl CoverChooser for IdentityCover {
    fn cover(&self, _level: usize, obj: &Obj) -> Result<Cover> {
        let id = FinMorphism::identity(obj);
        Ok(Cover {
            obj: obj.clone(),
            proj: id.clone(),
            section: id,
        })
    }
}

/// `P = K × 2` (with `Z/2` for groups) at the chosen levels, the identity
/// elsewhere; `p` projects and the section is `k ↦ (k, 0)`.
#[derive(Debug, Clone, Default)]
pub struct DoublingCover {
    levels: Vec<usize>,
}

impl DoublingCover {
    pub fn at_levels(levels: Vec<usize>) -> Self {
        DoublingCover { levels }
    }
}

impl CoverChooser for DoublingCover {
    fn cover(&self, level: usize, obj: &Obj) -> Result<Cover> {
        if !self.levels.contains(&level) {
            return IdentityCover.cover(level, obj);
        }
        let two = match obj.structure() {
            None => FinObject::set_of_size(2),
            Some(_) if obj.is_group() => catalog::cyclic(2),
            Some(_) => {
                return Err(Error::Unsupported(
                    "doubling covers are defined for sets and groups".into(),
                ))
            }
        };
        let p = catalog::product(obj, &two);
        let n = obj.size();
        let proj = FinMorphism::new(p.clone(), obj.clone(), (0..2 * n).map(|i| i / 2).collect())?;
        let section = FinMorphism::new(obj.clone(), p.clone(), (0..n).map(|i| 2 * i).collect())?;
        Ok(Cover {
            obj: p,
            proj,
            section,
        })
    }
}

/// Adds level `N+1`: a cover of `K_{N+1}`, faces `k_i ∘ p`, degeneracies
/// and contraction through the section of the cover.
pub(crate) fn extend_by_kernel(ss: &TruncatedSimplicial, cover: &Cover) -> Result<TruncatedSimplicial> {
    let n = ss.top();
    let k = simplicial_kernel(ss, n + 1)?;
    if cover.proj.cod() != &k.apex || cover.section.dom() != &k.apex {
        return Err(Error::Validation("cover does not cover the simplicial kernel".into()));
    }
    let new_level = cover.obj.clone();
    let faces = k
        .legs
        .iter()
        .map(|leg| compose(leg, &cover.proj))
        .collect::<Result<Vec<_>>>()?;
    let lift = |dom: &Obj, cols: Vec<FinMorphism>| -> Result<FinMorphism> {
        let refs: Vec<&FinMorphism> = cols.iter().collect();
        let into_k = k.mediate(dom, &refs)?;
        compose(&cover.section, &into_k)
    };
    let src = ss.level(n);
    let id = FinMorphism::identity(src);
    let mut degeneracies = ss.degeneracies().to_vec();
    if ss.flavor() != Flavor::Semi {
        let mut row = Vec::new();
        for j in 0..=n {
            let mut cols = Vec::with_capacity(n + 2);
            for i in 0..=n + 1 {
                cols.push(if i < j {
                    compose(ss.degeneracy(n - 1, j - 1).unwrap(), ss.face(n, i))?
                } else if i == j || i == j + 1 {
                    id.clone()
                } else {
                    compose(ss.degeneracy(n - 1, j).unwrap(), ss.face(n, i - 1))?
                });
            }
            row.push(lift(src, cols)?);
        }
        degeneracies.push(row);
    }
    let contraction = match ss.contraction_maps() {
        None => None,
        Some(c) => {
            let mut cols = vec![id.clone()];
            for i in 1..=n + 1 {
                cols.push(compose(&c[n], ss.face(n, i - 1))?);
            }
            let mut all = c.to_vec();
            all.push(lift(src, cols)?);
            Some(all)
        }
    };
    let mut levels = ss.levels().to_vec();
    levels.push(new_level);
    let mut all_faces: Vec<Vec<FinMorphism>> = (0..=n).map(|m| ss.faces(m).to_vec()).collect();
    all_faces.push(faces);
    TruncatedSimplicial::new(
        ss.flavor(),
        ss.base().cloned(),
        levels,
        all_faces,
        degeneracies,
        contraction,
    )
}

/// Covers `X`, then each simplicial kernel in turn, up to level `top`.
/// The result is an augmented quasi-simplicial object with a contraction
/// assembled from the sections of the covers.
pub fn tv_resolution(
    x: &Obj,
    class: ExtensionClass,
    chooser: &dyn CoverChooser,
    top: usize,
) -> Result<TruncatedSimplicial> {
    let c0 = chooser.cover(0, x)?;
    check_cover(&c0, class, 0)?;
    let mut ss = TruncatedSimplicial::new(
        Flavor::Quasi,
        Some(x.clone()),
        vec![c0.obj.clone()],
        vec![vec![c0.proj.clone()]],
        Vec::new(),
        Some(vec![c0.section.clone()]),
    )?;
    for n in 1..=top {
        let k = simplicial_kernel(&ss, n)?;
        let c = chooser.cover(n, &k.apex)?;
        check_cover(&c, class, n)?;
        ss = extend_by_kernel(&ss, &c)?;
    }
    Ok(ss)
}

fn check_cover(c: &Cover, class: ExtensionClass, level: usize) -> Result<()> {
    if compose(&c.proj, &c.section)?.is_identity() && class.member(&c.proj) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "the cover chosen at level {level} is not a split {} map",
            class.name()
        )))
    }
}
