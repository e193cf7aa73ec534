//! n-cubes: objects indexed by subsets of `{0..n-1}` and maps along
//! inclusions, with the two extension checkers.
//!
//! Subsets are bit masks. The generator `a^{S∪{i}}_S` runs from
//! `A_{S∪{i}}` to `A_S` and is stored at `(S, i)`. A square
//!
//! ```text
//!  A1 --f1--> B1        A_{0,1} --> A_{0}
//!  |a         |b    =   |           |
//!  A0 --f0--> B0        A_{1}   --> A_∅
//! ```
//!
//! is the 2-cube with `a = (S={1}, i=0)`, `b = (∅, 0)`, `f1 = ({0}, 1)` and
//! `f0 = (∅, 1)`; as an arrow `a → b` it points in direction 1, the largest
//! index.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::extension::{ExtensionClass, SquareArrow};
use crate::limit::{compute_limit, Cone, FinDiagram};
use crate::morphism::{compose, FinMorphism};
use crate::object::Obj;

/// `[0,2]`-style key used by the file format.
pub fn subset_key(mask: usize) -> String {
    let parts: Vec<String> = members(mask).iter().map(|i| i.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// `∅` or `{0,2}`, used in diagnostics.
pub fn subset_name(mask: usize) -> String {
    if mask == 0 {
        return "∅".into();
    }
    let parts: Vec<String> = members(mask).iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn members(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).collect()
}

#[derive(Debug, Clone)]
pub struct Cube {
    dim: usize,
    objects: Vec<Obj>,
    gens: Vec<Option<FinMorphism>>,
    memo: Arc<Mutex<HashMap<(usize, usize), FinMorphism>>>,
}

impl PartialEq for Cube {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.objects == other.objects && self.gens == other.gens
    }
}

impl Eq for Cube {}

impl Cube {
    /// Validates a cube from its objects (indexed by mask) and generators
    /// `((S, i), a^{S∪{i}}_S)`.
    pub fn build(
        dim: usize,
        objects: Vec<Obj>,
        generators: impl IntoIterator<Item = ((usize, usize), FinMorphism)>,
    ) -> Result<Cube> {
        let cap = Caps::current().dim;
        if dim > cap {
            return Err(Error::resource("cube dimension", dim, cap));
        }
        let n = 1usize << dim;
        if objects.len() != n {
            return Err(Error::Validation(format!(
                "a {dim}-cube needs {n} objects, got {}",
                objects.len()
            )));
        }
        let mut gens = vec![None; n * dim.max(1)];
        for ((s, i), m) in generators {
            if i >= dim || s >= n || s >> i & 1 == 1 {
                return Err(Error::Validation(format!(
                    "no generator at ({}, {i})",
                    subset_name(s)
                )));
            }
            let t = s | 1 << i;
            if m.dom() != &objects[t] || m.cod() != &objects[s] {
                return Err(Error::Validation(format!(
                    "generator a^{}_{} does not run from A_{} to A_{}",
                    subset_name(t),
                    subset_name(s),
                    subset_name(t),
                    subset_name(s)
                )));
            }
            gens[s * dim + i] = Some(m);
        }
        let cube = Cube {
            dim,
            objects,
            gens,
            memo: Arc::default(),
        };
        for s in 0..n {
            for i in 0..dim {
                if s >> i & 1 == 0 && cube.gens[s * dim + i].is_none() {
                    return Err(Error::MissingGenerator {
                        source_set: subset_name(s | 1 << i),
                        target: subset_name(s),
                        index: i,
                    });
                }
            }
        }
        for s in 0..n {
            for i in 0..dim {
                for j in i + 1..dim {
                    if s >> i & 1 == 1 || s >> j & 1 == 1 {
                        continue;
                    }
                    let (si, sj) = (s | 1 << i, s | 1 << j);
                    let left = compose(cube.gen(s, i), cube.gen(si, j))?;
                    let right = compose(cube.gen(s, j), cube.gen(sj, i))?;
                    if left != right {
                        return Err(Error::NonCommuting(format!(
                            "({},{i},{j})",
                            subset_name(s)
                        )));
                    }
                }
            }
        }
        Ok(cube)
    }

    pub fn point(obj: Obj) -> Cube {
        Cube {
            dim: 0,
            objects: vec![obj],
            gens: vec![None],
            memo: Arc::default(),
        }
    }

    pub fn from_morphism(f: FinMorphism) -> Cube {
        Cube {
            dim: 1,
            objects: vec![f.cod().clone(), f.dom().clone()],
            gens: vec![Some(f), None],
            memo: Arc::default(),
        }
    }

    pub fn from_square(s: &SquareArrow) -> Result<Cube> {
        Cube::build(
            2,
            vec![
                s.b.cod().clone(),
                s.b.dom().clone(),
                s.a.cod().clone(),
                s.a.dom().clone(),
            ],
            [
                ((0b10, 0), s.a.clone()),
                ((0b00, 0), s.b.clone()),
                ((0b01, 1), s.f1.clone()),
                ((0b00, 1), s.f0.clone()),
            ],
        )
    }

    pub fn to_square(&self) -> Option<SquareArrow> {
        (self.dim == 2).then(|| SquareArrow {
            a: self.gen(0b10, 0).clone(),
            b: self.gen(0b00, 0).clone(),
            f1: self.gen(0b01, 1).clone(),
            f0: self.gen(0b00, 1).clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn object(&self, mask: usize) -> &Obj {
        &self.objects[mask]
    }

    pub fn objects(&self) -> &[Obj] {
        &self.objects
    }

    /// `a^{S∪{i}}_S`.
    pub fn gen(&self, s: usize, i: usize) -> &FinMorphism {
        self.gens[s * self.dim + i].as_ref().expect("validated cube")
    }

    /// All generators in `(S, i)` order.
    pub fn generators(&self) -> Vec<((usize, usize), &FinMorphism)> {
        let mut out = Vec::new();
        for s in 0..1usize << self.dim {
            for i in 0..self.dim {
                if s >> i & 1 == 0 {
                    out.push(((s, i), self.gen(s, i)));
                }
            }
        }
        out
    }

    /// The composite `a^T_S` for `S ⊆ T`.
    pub fn map(&self, t: usize, s: usize) -> FinMorphism {
        assert_eq!(t & s, s, "not a subset");
        if t == s {
            return FinMorphism::identity(&self.objects[t]);
        }
        if let Some(m) = self.memo.lock().unwrap().get(&(t, s)) {
            return m.clone();
        }
        let i = (t & !s).trailing_zeros() as usize;
        let rest = self.map(t & !(1 << i), s);
        let m = compose(&rest, self.gen(t & !(1 << i), i)).expect("validated cube");
        self.memo.lock().unwrap().insert((t, s), m.clone());
        m
    }

    /// The view as an arrow in direction `i`: domain on subsets containing
    /// `i`, codomain on subsets avoiding it, both reindexed to `dim - 1`.
    pub fn arrow_view(&self, i: usize) -> Result<ArrowView> {
        if i >= self.dim {
            return Err(Error::Validation(format!(
                "a {}-cube has no direction {i}",
                self.dim
            )));
        }
        let d = self.dim - 1;
        let expand = |m: usize| expand_mask(m, i);
        let n = 1usize << d;
        let dom_objs = (0..n).map(|m| self.objects[expand(m) | 1 << i].clone()).collect();
        let cod_objs = (0..n).map(|m| self.objects[expand(m)].clone()).collect();
        let mut dom_gens = Vec::new();
        let mut cod_gens = Vec::new();
        for m in 0..n {
            for p in 0..d {
                if m >> p & 1 == 0 {
                    let q = if p < i { p } else { p + 1 };
                    dom_gens.push(((m, p), self.gen(expand(m) | 1 << i, q).clone()));
                    cod_gens.push(((m, p), self.gen(expand(m), q).clone()));
                }
            }
        }
        let components = (0..n).map(|m| self.gen(expand(m), i).clone()).collect();
        Ok(ArrowView {
            direction: i,
            domain: Cube::build(d, dom_objs, dom_gens)?,
            codomain: Cube::build(d, cod_objs, cod_gens)?,
            components,
        })
    }

    pub fn arrow_views(&self) -> Result<Vec<ArrowView>> {
        (0..self.dim).map(|i| self.arrow_view(i)).collect()
    }

    /// The cube with `B_{σ(S)} = A_S`.
    pub fn permute(&self, sigma: &[usize]) -> Result<Cube> {
        let mut seen = vec![false; self.dim];
        if sigma.len() != self.dim || sigma.iter().any(|&x| x >= self.dim || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::Validation("not a permutation of the cube's directions".into()));
        }
        let image = |m: usize| {
            (0..self.dim)
                .filter(|&i| m >> i & 1 == 1)
                .fold(0, |acc, i| acc | 1 << sigma[i])
        };
        let n = 1usize << self.dim;
        let mut objects = vec![self.objects[0].clone(); n];
        for m in 0..n {
            objects[image(m)] = self.objects[m].clone();
        }
        let gens = self
            .generators()
            .into_iter()
            .map(|((s, i), g)| ((image(s), sigma[i]), g.clone()));
        Cube::build(self.dim, objects, gens)
    }
}

/// Inserts a zero bit at position `i`.
fn expand_mask(m: usize, i: usize) -> usize {
    let low = m & ((1 << i) - 1);
    let high = m >> i;
    low | high << (i + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowView {
    pub direction: usize,
    pub domain: Cube,
    pub codomain: Cube,
    /// `a^{S∪{i}}_S` indexed by the reindexed `S`.
    pub components: Vec<FinMorphism>,
}

impl ArrowView {
    pub fn reassemble(&self) -> Result<Cube> {
        let i = self.direction;
        let d = self.domain.dim;
        let n = 1usize << (d + 1);
        let mut objects = vec![self.codomain.objects[0].clone(); n];
        let mut gens = Vec::new();
        for m in 0..1usize << d {
            let e = expand_mask(m, i);
            objects[e] = self.codomain.objects[m].clone();
            objects[e | 1 << i] = self.domain.objects[m].clone();
            gens.push(((e, i), self.components[m].clone()));
            for p in 0..d {
                if m >> p & 1 == 0 {
                    let q = if p < i { p } else { p + 1 };
                    gens.push(((e, q), self.codomain.gen(m, p).clone()));
                    gens.push(((e | 1 << i, q), self.domain.gen(m, p).clone()));
                }
            }
        }
        Cube::build(d + 1, objects, gens)
    }
}

fn node_id(mask: usize) -> String {
    format!("s{mask:02}")
}

/// The limit of `A_J` over proper subsets `J ⊊ I`, either over all of them
/// (`full`) or over the initial part with `|J| ≥ |I| - 2`, together with
/// the comparison from `A_I`.
pub fn sublimit(c: &Cube, i_mask: usize, full: bool) -> Result<(Cone, FinMorphism)> {
    if i_mask == 0 || i_mask >= 1 << c.dim {
        return Err(Error::Validation("sublimit needs a nonempty subset of the cube".into()));
    }
    let k = i_mask.count_ones();
    let tops: Vec<usize> = members(i_mask).iter().map(|&i| i_mask & !(1 << i)).collect();
    let mut d = FinDiagram::new();
    for &t in &tops {
        d.add_node(node_id(t), c.objects[t].clone())?;
    }
    let mut lower = Vec::new();
    for j in 0..i_mask {
        if j & i_mask != j || j.count_ones() + 1 >= k {
            continue;
        }
        if !full && j.count_ones() + 2 < k {
            continue;
        }
        lower.push(j);
        d.add_aux_node(node_id(j), c.objects[j].clone())?;
    }
    for &t in &tops {
        for &j in &lower {
            if j & t == j {
                d.add_edge(
                    format!("{}>{}", node_id(t), node_id(j)),
                    &node_id(t),
                    &node_id(j),
                    c.map(t, j),
                )?;
            }
        }
    }
    let cone = compute_limit(&d)?;
    let maps: Vec<FinMorphism> = cone.coords().iter().map(|id| {
        let t: usize = id[1..].parse().unwrap();
        c.map(i_mask, t)
    }).collect();
    let refs: Vec<&FinMorphism> = maps.iter().collect();
    let comparison = cone.mediate_ordered(&c.objects[i_mask], &refs)?;
    Ok((cone, comparison))
}

/// `lim_{J⊊I} A_J` over the initial part with `|J| ≥ |I| - 2`, and the
/// comparison `A_I → lim`.
pub fn sublimit_comparison(c: &Cube, i_mask: usize) -> Result<(Cone, FinMorphism)> {
    sublimit(c, i_mask, false)
}

/// Per nonempty `I` (in mask order), whether the comparison is in `E`.
pub fn limitwise_report(c: &Cube, class: ExtensionClass) -> Result<Vec<(usize, bool)>> {
    (1..1usize << c.dim)
        .into_par_iter()
        .map(|m| Ok((m, class.member(&sublimit_comparison(c, m)?.1))))
        .collect()
}

/// Every comparison `A_I → lim_{J⊊I} A_J` with `I` nonempty is in `E`.
pub fn is_extension_limitwise(c: &Cube, class: ExtensionClass) -> Result<bool> {
    Ok(limitwise_report(c, class)?.iter().all(|&(_, ok)| ok))
}

/// Codomains in every direction are extensions one dimension down and the
/// top comparison (over all proper subsets) is in `E`.
pub fn is_extension_inductive(c: &Cube, class: ExtensionClass) -> Result<bool> {
    match c.dim {
        0 => Ok(true),
        1 => Ok(class.member(c.gen(0, 0))),
        n => {
            for i in 0..n {
                if !is_extension_inductive(&c.arrow_view(i)?.codomain, class)? {
                    return Ok(false);
                }
            }
            let (_, cmp) = sublimit(c, (1 << n) - 1, true)?;
            Ok(class.member(&cmp))
        }
    }
}
