//! Truncated augmented semi-, quasi- and full simplicial objects.
//!
//! Levels run from `A_{-1}` (the augmentation, optional) to `A_N`. Faces at
//! level `n` are `∂_i: A_n → A_{n-1}` for `0 ≤ i ≤ n`; at level 0 the only
//! face is the augmentation `∂_0`. Degeneracies at level `n < N` are
//! `σ_j: A_n → A_{n+1}` for `0 ≤ j ≤ n`, and a contraction is a family
//! `σ_{-1}: A_{n-1} → A_n` for `0 ≤ n ≤ N`.

mod arr;
pub mod examples;
mod kernel;
mod contract;
pub mod tv;

use std::fmt;

use crate::error::{Error, Result};
use crate::morphism::{compose, FinMorphism};
use crate::object::Obj;

pub use arr::{arr, codomains_agree};
pub use contract::{is_contractible, Contractibility};
pub use kernel::{
    horn_comparison, horn_object, is_exact_at, is_kan, is_resolution, kan_report, kernel_comparison,
    lifted_resolution_report, resolution_report, simplicial_kernel, HornObject, KernelObject, LiftedStep,
};
pub use tv::{tv_resolution, Cover, CoverChooser, DoublingCover, IdentityCover};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Semi,
    Quasi,
    Full,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Semi => "semi",
            Flavor::Quasi => "quasi",
            Flavor::Full => "full",
        }
    }

    pub fn parse(s: &str) -> Option<Flavor> {
        match s {
            "semi" => Some(Flavor::Semi),
            "quasi" => Some(Flavor::Quasi),
            "full" => Some(Flavor::Full),
            _ => None,
        }
    }

    fn has_degeneracies(self) -> bool {
        self != Flavor::Semi
    }
}

/// A violated identity, naming the level and indices involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: &'static str,
    pub level: usize,
    pub indices: Vec<(&'static str, isize)>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at n={}", self.identity, self.level)?;
        for (name, v) in &self.indices {
            write!(f, ", {name}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSimplicial {
    flavor: Flavor,
    base: Option<Obj>,
    levels: Vec<Obj>,
    faces: Vec<Vec<FinMorphism>>,
    degeneracies: Vec<Vec<FinMorphism>>,
    contraction: Option<Vec<FinMorphism>>,
}

impl TruncatedSimplicial {
    /// Builds and validates. `faces[n]` lists the faces at level `n`
    /// (`faces[0]` is `[∂_0]` when augmented, empty otherwise);
    /// `degeneracies[n]` lists `σ_0..σ_n` at level `n < N`.
    pub fn new(
        flavor: Flavor,
        base: Option<Obj>,
        levels: Vec<Obj>,
        faces: Vec<Vec<FinMorphism>>,
        degeneracies: Vec<Vec<FinMorphism>>,
        contraction: Option<Vec<FinMorphism>>,
    ) -> Result<Self> {
        let ss = Self::assemble(flavor, base, levels, faces, degeneracies, contraction)?;
        if let Some(v) = ss.validate().into_iter().next() {
            return Err(Error::Identity(v.to_string()));
        }
        Ok(ss)
    }

    /// Checks shapes and types only.
    pub(crate) fn assemble(
        flavor: Flavor,
        base: Option<Obj>,
        levels: Vec<Obj>,
        faces: Vec<Vec<FinMorphism>>,
        degeneracies: Vec<Vec<FinMorphism>>,
        contraction: Option<Vec<FinMorphism>>,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Validation("a simplicial object needs level 0".into()));
        }
        let top = levels.len() - 1;
        if faces.len() != levels.len() {
            return Err(Error::Validation(format!(
                "expected faces for levels 0..={top}, got {} lists",
                faces.len()
            )));
        }
        let ss = TruncatedSimplicial {
            flavor,
            base,
            levels,
            faces,
            degeneracies,
            contraction,
        };
        let want0 = usize::from(ss.base.is_some());
        if ss.faces[0].len() != want0 {
            return Err(Error::Validation(if want0 == 1 {
                "an augmented object needs the face ∂_0 at level 0".into()
            } else {
                "level 0 has a face but no augmentation object".into()
            }));
        }
        for n in 0..=top {
            if n > 0 && ss.faces[n].len() != n + 1 {
                return Err(Error::Validation(format!(
                    "level {n} needs {} faces, got {}",
                    n + 1,
                    ss.faces[n].len()
                )));
            }
            for (i, f) in ss.faces[n].iter().enumerate() {
                if f.dom() != &ss.levels[n] || Some(f.cod()) != ss.obj(n as isize - 1) {
                    return Err(Error::Validation(format!(
                        "face ∂_{i} at level {n} has the wrong domain or codomain"
                    )));
                }
            }
        }
        if flavor.has_degeneracies() {
            if ss.degeneracies.len() != top {
                return Err(Error::Validation(format!(
                    "a {} simplicial object of level {top} needs degeneracies at levels 0..{top}",
                    flavor.name()
                )));
            }
            for n in 0..top {
                if ss.degeneracies[n].len() != n + 1 {
                    return Err(Error::Validation(format!(
                        "level {n} needs {} degeneracies",
                        n + 1
                    )));
                }
                for (j, s) in ss.degeneracies[n].iter().enumerate() {
                    if s.dom() != &ss.levels[n] || s.cod() != &ss.levels[n + 1] {
                        return Err(Error::Validation(format!(
                            "degeneracy σ_{j} at level {n} has the wrong domain or codomain"
                        )));
                    }
                }
            }
        } else if !ss.degeneracies.is_empty() {
            return Err(Error::Validation(
                "a semi-simplicial object has no degeneracies".into(),
            ));
        }
        if let Some(c) = &ss.contraction {
            if ss.base.is_none() {
                return Err(Error::Validation("a contraction needs an augmentation".into()));
            }
            if c.len() != top + 1 {
                return Err(Error::Validation(format!(
                    "a contraction needs σ_{{-1}} at levels 0..={top}"
                )));
            }
            for (n, s) in c.iter().enumerate() {
                if Some(s.dom()) != ss.obj(n as isize - 1) || s.cod() != &ss.levels[n] {
                    return Err(Error::Validation(format!(
                        "σ_{{-1}} at level {n} has the wrong domain or codomain"
                    )));
                }
            }
        }
        Ok(ss)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// The top level `N`.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn is_augmented(&self) -> bool {
        self.base.is_some()
    }

    /// `A_n` for `-1 ≤ n ≤ N`.
    pub fn obj(&self, n: isize) -> Option<&Obj> {
        if n == -1 {
            self.base.as_ref()
        } else {
            self.levels.get(usize::try_from(n).ok()?)
        }
    }

    pub fn level(&self, n: usize) -> &Obj {
        &self.levels[n]
    }

    pub fn base(&self) -> Option<&Obj> {
        self.base.as_ref()
    }

    pub fn levels(&self) -> &[Obj] {
        &self.levels
    }

    /// `∂_i: A_n → A_{n-1}`.
    pub fn face(&self, n: usize, i: usize) -> &FinMorphism {
        &self.faces[n][i]
    }

    pub fn faces(&self, n: usize) -> &[FinMorphism] {
        &self.faces[n]
    }

    /// `σ_j: A_n → A_{n+1}`.
    pub fn degeneracy(&self, n: usize, j: usize) -> Option<&FinMorphism> {
        self.degeneracies.get(n)?.get(j)
    }

    pub fn degeneracies(&self) -> &[Vec<FinMorphism>] {
        &self.degeneracies
    }

    /// `σ_{-1}: A_{n-1} → A_n`, when a contraction is stored.
    pub fn contraction(&self, n: usize) -> Option<&FinMorphism> {
        self.contraction.as_ref()?.get(n)
    }

    pub fn contraction_maps(&self) -> Option<&[FinMorphism]> {
        self.contraction.as_deref()
    }

    pub fn with_contraction(&self, c: Option<Vec<FinMorphism>>) -> Result<Self> {
        let mut out = self.clone();
        out.contraction = c;
        Self::assemble(
            out.flavor,
            out.base,
            out.levels,
            out.faces,
            out.degeneracies,
            out.contraction,
        )
    }

    /// Forgets degeneracies and contraction.
    pub fn as_semi(&self) -> Self {
        TruncatedSimplicial {
            flavor: Flavor::Semi,
            base: self.base.clone(),
            levels: self.levels.clone(),
            faces: self.faces.clone(),
            degeneracies: Vec::new(),
            contraction: None,
        }
    }

    /// Truncates to levels `-1..=n`.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.top());
        TruncatedSimplicial {
            flavor: self.flavor,
            base: self.base.clone(),
            levels: self.levels[..=n].to_vec(),
            faces: self.faces[..=n].to_vec(),
            degeneracies: if self.flavor.has_degeneracies() {
                self.degeneracies[..n].to_vec()
            } else {
                Vec::new()
            },
            contraction: self.contraction.as_ref().map(|c| c[..=n].to_vec()),
        }
    }

    /// Replaces a face, keeping everything else; the result is validated
    /// as a semi-simplicial object.
    pub fn with_face(&self, n: usize, i: usize, g: FinMorphism) -> Result<Self> {
        let mut faces = self.faces.clone();
        faces[n][i] = g;
        Self::new(
            Flavor::Semi,
            self.base.clone(),
            self.levels.clone(),
            faces,
            Vec::new(),
            None,
        )
    }

    /// Every violated identity.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let top = self.top();
        let eq = |f: Result<FinMorphism>, g: Result<FinMorphism>| matches!((f, g), (Ok(a), Ok(b)) if a == b);
        // ∂_i∂_j = ∂_{j-1}∂_i, i < j, applied to A_n
        for n in 1..=top {
            if n == 1 && self.base.is_none() {
                continue;
            }
            for j in 0..=n {
                for i in 0..j {
                    let l = compose(self.face(n - 1, i), self.face(n, j));
                    let r = compose(self.face(n - 1, j - 1), self.face(n, i));
                    if !eq(l, r) {
                        out.push(Violation {
                            identity: "simplicial identity ∂_i∂_j = ∂_{j−1}∂_i",
                            level: n,
                            indices: vec![("i", i as isize), ("j", j as isize)],
                        });
                    }
                }
            }
        }
        if self.flavor.has_degeneracies() {
            // ∂_i σ_j on A_n, σ_j: A_n → A_{n+1}
            for n in 0..top {
                for j in 0..=n {
                    let s = &self.degeneracies[n][j];
                    for i in 0..=n + 1 {
                        if n == 0 && self.base.is_none() && i > 1 {
                            continue;
                        }
                        let l = compose(self.face(n + 1, i), s);
                        let r = if i < j {
                            compose(&self.degeneracies[n - 1][j - 1], self.face(n, i))
                        } else if i == j || i == j + 1 {
                            Ok(FinMorphism::identity(&self.levels[n]))
                        } else {
                            compose(&self.degeneracies[n - 1][j], self.face(n, i - 1))
                        };
                        if !eq(l, r) {
                            out.push(Violation {
                                identity: "quasi-simplicial identity for ∂_iσ_j",
                                level: n,
                                indices: vec![("i", i as isize), ("j", j as isize)],
                            });
                        }
                    }
                }
            }
        }
        if self.flavor == Flavor::Full {
            // σ_iσ_j = σ_{j+1}σ_i, i ≤ j, on A_n
            for n in 0..top.saturating_sub(1) {
                for j in 0..=n {
                    for i in 0..=j {
                        let l = compose(&self.degeneracies[n + 1][i], &self.degeneracies[n][j]);
                        let r = compose(&self.degeneracies[n + 1][j + 1], &self.degeneracies[n][i]);
                        if !eq(l, r) {
                            out.push(Violation {
                                identity: "simplicial identity σ_iσ_j = σ_{j+1}σ_i",
                                level: n,
                                indices: vec![("i", i as isize), ("j", j as isize)],
                            });
                        }
                    }
                }
            }
        }
        if let Some(c) = &self.contraction {
            for n in 0..=top {
                let below = self.obj(n as isize - 1).unwrap();
                let l = compose(self.face(n, 0), &c[n]);
                if !eq(l, Ok(FinMorphism::identity(below))) {
                    out.push(Violation {
                        identity: "contraction identity ∂_0σ_{−1} = 1",
                        level: n,
                        indices: vec![],
                    });
                }
                for i in 1..=n {
                    let l = compose(self.face(n, i), &c[n]);
                    let r = compose(&c[n - 1], self.face(n - 1, i - 1));
                    if !eq(l, r) {
                        out.push(Violation {
                            identity: "contraction identity ∂_iσ_{−1} = σ_{−1}∂_{i−1}",
                            level: n,
                            indices: vec![("i", i as isize)],
                        });
                    }
                }
            }
        }
        out
    }

    /// Whether stored degeneracies also satisfy `σ_iσ_j = σ_{j+1}σ_i`.
    pub fn degeneracies_commute(&self) -> bool {
        if !self.flavor.has_degeneracies() {
            return false;
        }
        let mut full = self.clone();
        full.flavor = Flavor::Full;
        full.validate().is_empty()
    }

    /// `A⁻`: drops `A_{-1}` and every `∂_0`, together with the levelwise
    /// map `∂ = (∂_0)_n: A⁻ → A`. Components are listed for the levels
    /// `-1..=N-1` of `A⁻`.
    pub fn shift(&self) -> Result<(TruncatedSimplicial, Vec<FinMorphism>)> {
        let top = self.top();
        if top < 1 || self.base.is_none() {
            return Err(Error::Precondition(
                "shifting needs an augmented object of level at least 1".into(),
            ));
        }
        let base = Some(self.levels[0].clone());
        let levels = self.levels[1..].to_vec();
        let mut faces = Vec::new();
        for m in 0..top {
            faces.push(self.faces[m + 1][1..].to_vec());
        }
        let (degeneracies, contraction) = if self.flavor.has_degeneracies() {
            let d = (0..top - 1)
                .map(|m| self.degeneracies[m + 1][1..].to_vec())
                .collect();
            let c = (0..top).map(|m| self.degeneracies[m][0].clone()).collect();
            (d, Some(c))
        } else {
            (Vec::new(), None)
        };
        let minus = Self::assemble(self.flavor, base, levels, faces, degeneracies, contraction)?;
        let components = (0..=top - 1).map(|m| self.faces[m + 1][0].clone()).collect::<Vec<_>>();
        let components = std::iter::once(self.faces[0][0].clone())
            .chain(components)
            .collect::<Vec<_>>();
        // components[0] is A⁻_{-1} = A_0 → A_{-1}
        Ok((minus, components))
    }

    /// Adds the one-point augmentation.
    pub fn canonical_augmentation(&self) -> Result<Self> {
        if self.base.is_some() {
            return Err(Error::Precondition("object is already augmented".into()));
        }
        let point = self.levels[0].terminal_like();
        let mut faces = self.faces.clone();
        faces[0] = vec![FinMorphism::to_terminal(&self.levels[0], &point)?];
        Self::new(
            self.flavor,
            Some(point),
            self.levels.clone(),
            faces,
            self.degeneracies.clone(),
            None,
        )
    }

    /// The same object with `A_{-1}` forgotten.
    pub fn without_augmentation(&self) -> Self {
        let mut out = self.clone();
        out.base = None;
        out.faces[0].clear();
        out.contraction = None;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::examples;
    use super::*;
    use crate::object::FinObject;

    #[test]
    fn constant_object_is_valid() {
        let x = FinObject::set_of_size(3);
        let c = examples::constant(&x, 3, Flavor::Full);
        assert!(c.validate().is_empty());
        let (minus, comps) = c.shift().unwrap();
        assert_eq!(minus.top(), 2);
        assert!(comps.iter().all(|m| m.is_identity()));
    }

    #[test]
    fn swapped_faces_are_reported() {
        let z2 = crate::catalog::cyclic(2);
        let v4 = crate::catalog::klein();
        let q = FinMorphism::new(v4, z2, vec![0, 0, 1, 1]).unwrap();
        let nerve = examples::cech_nerve(&q, 2).unwrap();
        let mut faces = nerve.faces.clone();
        faces[2].swap(0, 1);
        let r = TruncatedSimplicial::new(Flavor::Semi, nerve.base.clone(), nerve.levels.clone(), faces, vec![], None);
        let msg = match r {
            Err(Error::Identity(m)) => m,
            other => panic!("{other:?}"),
        };
        assert!(msg.contains("∂_i∂_j = ∂_{j−1}∂_i at n=2"), "{msg}");
    }

    #[test]
    fn augmentation_is_not_idempotent() {
        let nerve = examples::ordinal_nerve(2);
        let aug = nerve.canonical_augmentation().unwrap();
        assert_eq!(aug.obj(-1).unwrap().size(), 1);
        assert!(matches!(aug.canonical_augmentation(), Err(Error::Precondition(_))));
    }
}
