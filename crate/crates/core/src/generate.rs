//! Seeded generators for cubes, squares and simplicial objects.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog;
use crate::cube::Cube;
use crate::error::{Error, Result};
use crate::extension::{ExtensionClass, SquareArrow};
use crate::morphism::{compose, FinMorphism};
use crate::object::{FinObject, Obj};
use crate::simplicial::{
    examples, kernel_comparison, tv_resolution, DoublingCover, IdentityCover, TruncatedSimplicial,
};
use crate::subgroup;

pub const DEFAULT_SEED: u64 = 7;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random commuting cube of finite sets with carriers in `1..=max`.
///
/// Objects are filled from the top down; the maps into `A_S` are a random
/// function out of the pushout of the already built `A_{S∪{i}}`, so the
/// faces commute by construction.
pub fn random_set_cube(rng: &mut impl Rng, dim: usize, max: usize) -> Result<Cube> {
    let n = 1usize << dim;
    let full = n - 1;
    let mut objects: Vec<Option<Obj>> = vec![None; n];
    let mut tables: Vec<Option<Vec<usize>>> = vec![None; n * dim.max(1)];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&s| std::cmp::Reverse(s.count_ones()));
    for s in order {
        if s == full {
            objects[s] = Some(FinObject::set_of_size(rng.gen_range(1..=max)));
            continue;
        }
        let above: Vec<usize> = (0..dim).filter(|&i| s >> i & 1 == 0).collect();
        // disjoint union of the A_{S∪{i}}
        let mut offset = Vec::new();
        let mut total = 0;
        for &i in &above {
            offset.push(total);
            total += objects[s | 1 << i].as_ref().unwrap().size();
        }
        let mut uf: Vec<usize> = (0..total).collect();
        fn root(uf: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            uf[x] = r;
            r
        }
        for (pi, &i) in above.iter().enumerate() {
            for (pj, &j) in above.iter().enumerate().skip(pi + 1) {
                let top = s | 1 << i | 1 << j;
                let to_i = tables[(s | 1 << i) * dim + j].as_ref().unwrap();
                let to_j = tables[(s | 1 << j) * dim + i].as_ref().unwrap();
                for z in 0..objects[top].as_ref().unwrap().size() {
                    let a = root(&mut uf, offset[pi] + to_i[z]);
                    let b = root(&mut uf, offset[pj] + to_j[z]);
                    uf[a] = b;
                }
            }
        }
        let mut classes: Vec<usize> = (0..total).map(|x| root(&mut uf, x)).collect();
        let mut distinct = classes.clone();
        distinct.sort_unstable();
        distinct.dedup();
        for c in classes.iter_mut() {
            *c = distinct.binary_search(c).unwrap();
        }
        let k = distinct.len();
        let size = rng.gen_range(1..=max);
        let values: Vec<usize> = if rng.gen_bool(0.5) && k >= size {
            // surjective: a shuffled cover of 0..size, then random
            let mut v: Vec<usize> = (0..size).collect();
            v.extend((size..k).map(|_| rng.gen_range(0..size)));
            v.shuffle(rng);
            v
        } else {
            (0..k).map(|_| rng.gen_range(0..size)).collect()
        };
        objects[s] = Some(FinObject::set_of_size(size));
        for (pi, &i) in above.iter().enumerate() {
            let src = objects[s | 1 << i].as_ref().unwrap().size();
            tables[s * dim + i] = Some((0..src).map(|x| values[classes[offset[pi] + x]]).collect());
        }
    }
    let objects: Vec<Obj> = objects.into_iter().map(Option::unwrap).collect();
    let mut gens = Vec::new();
    for s in 0..n {
        for i in 0..dim {
            if s >> i & 1 == 0 {
                let t = tables[s * dim + i].clone().unwrap();
                gens.push(((s, i), FinMorphism::new(objects[s | 1 << i].clone(), objects[s].clone(), t)?));
            }
        }
    }
    Cube::build(dim, objects, gens)
}

/// Every commuting square of finite sets with carriers in `0..=max`, in
/// a fixed order.
pub fn all_set_squares(max: usize) -> Vec<SquareArrow> {
    let sets: Vec<Obj> = (0..=max).map(FinObject::set_of_size).collect();
    let maps = |d: &Obj, c: &Obj| crate::morphism::enumerate_morphisms(d, c);
    let mut out = Vec::new();
    for a1 in &sets {
        for a0 in &sets {
            for b1 in &sets {
                for b0 in &sets {
                    for a in maps(a1, a0) {
                        for f1 in maps(a1, b1) {
                            for b in maps(b1, b0) {
                                for f0 in maps(a0, b0) {
                                    if compose(&f0, &a).ok() == compose(&b, &f1).ok() {
                                        out.push(SquareArrow {
                                            a: a.clone(),
                                            b: b.clone(),
                                            f1: f1.clone(),
                                            f0,
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// A group of order at most `max_order` from the catalog.
pub fn random_group(rng: &mut impl Rng, max_order: usize) -> Obj {
    let groups = catalog::groups_up_to(max_order);
    groups.choose(rng).expect("nonempty catalog").1.clone()
}

/// A cube of quotients of a group `G`: `A_S = G/N_{S'}` where `S'` is the
/// complement of `S` and `N_T` is generated by the chosen normal subgroups
/// `N_i`, `i ∈ T`; the top corner may be replaced by a subgroup of `G`.
pub fn random_group_cube(rng: &mut impl Rng, dim: usize, max_order: usize) -> Result<Cube> {
    let g = random_group(rng, max_order);
    let normals = subgroup::normal_subgroups(&g)?;
    let ns: Vec<Vec<usize>> = (0..dim).map(|_| normals.choose(rng).unwrap().clone()).collect();
    let top = if rng.gen_bool(0.5) {
        let subs = subgroup::subgroups(&g)?;
        Some(subs.choose(rng).unwrap().clone())
    } else {
        None
    };
    quotient_cube(&g, &ns, top.as_deref())
}

/// See [`random_group_cube`].
pub fn quotient_cube(g: &Obj, ns: &[Vec<usize>], top: Option<&[usize]>) -> Result<Cube> {
    let dim = ns.len();
    let n = 1usize << dim;
    let full = n - 1;
    let mut projections = Vec::with_capacity(n);
    for s in 0..n {
        let gens: Vec<usize> = (0..dim)
            .filter(|&i| s >> i & 1 == 0)
            .flat_map(|i| ns[i].iter().copied())
            .collect();
        let nt = subgroup::generated(g, &gens)?;
        projections.push(subgroup::quotient(g, &nt)?);
    }
    let (top_obj, top_map) = match top {
        Some(h) => {
            let (sub, incl) = subgroup::subgroup_object(g, h)?;
            let m = compose(&projections[full].1, &incl)?;
            (sub, m)
        }
        None => (projections[full].0.clone(), FinMorphism::identity(&projections[full].0)),
    };
    let mut objects: Vec<Obj> = projections.iter().map(|(q, _)| q.clone()).collect();
    objects[full] = top_obj.clone();
    // a map out of the top corner or between quotients, induced on elements
    let induced = |t: usize, s: usize| -> Result<FinMorphism> {
        let (qs, ps) = &projections[s];
        if t == full {
            let lift = top_map.table().iter().map(|&c| {
                let rep = projections[full].1.table().iter().position(|&y| y == c).unwrap();
                ps.apply(rep)
            });
            // top_map lands in G/N_∅ = G, so lifting through it is exact
            FinMorphism::new(top_obj.clone(), qs.clone(), lift.collect())
        } else {
            let pt = &projections[t].1;
            let table = (0..projections[t].0.size())
                .map(|c| ps.apply(pt.table().iter().position(|&y| y == c).unwrap()))
                .collect();
            FinMorphism::new(projections[t].0.clone(), qs.clone(), table)
        }
    };
    let mut gens = Vec::new();
    for s in 0..n {
        for i in 0..dim {
            if s >> i & 1 == 0 {
                gens.push(((s, i), induced(s | 1 << i, s)?));
            }
        }
    }
    Cube::build(dim, objects, gens)
}

/// A random group square whose four sides are surjective.
pub fn random_surjective_group_square(rng: &mut impl Rng, max_order: usize) -> Result<SquareArrow> {
    loop {
        let c = random_group_cube(rng, 2, max_order)?;
        let sq = c.to_square().unwrap();
        if [&sq.a, &sq.b, &sq.f1, &sq.f0].iter().all(|m| m.is_surjective()) {
            return Ok(sq);
        }
    }
}

/// How a generated simplicial group was built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicialRecipe {
    Covering { order: usize, doubled: Vec<usize> },
    Cech { order: usize, kernel: usize },
    Nerve { order: usize },
}

impl SimplicialRecipe {
    pub fn describe(&self) -> String {
        match self {
            SimplicialRecipe::Covering { order, doubled } if doubled.is_empty() => {
                format!("covering resolution of a group of order {order}")
            }
            SimplicialRecipe::Covering { order, doubled } => {
                format!("covering resolution of a group of order {order}, doubled at {doubled:?}")
            }
            SimplicialRecipe::Cech { order, kernel } => {
                format!("Cech nerve of a group of order {order} over a kernel of order {kernel}")
            }
            SimplicialRecipe::Nerve { order } => format!("nerve of an abelian group of order {order}"),
        }
    }
}

/// A truncated simplicial group of level `top`: a covering resolution with
/// random doubling levels, the Čech nerve of a random quotient, or the
/// nerve of an abelian group with its canonical augmentation.
pub fn random_simplicial_group(
    rng: &mut impl Rng,
    top: usize,
    max_order: usize,
) -> Result<(SimplicialRecipe, TruncatedSimplicial)> {
    loop {
        let g = random_group(rng, max_order);
        match rng.gen_range(0..3) {
            0 => {
                let doubled: Vec<usize> = (0..top.min(2)).filter(|_| rng.gen_bool(0.3)).collect();
                let chooser = DoublingCover::at_levels(doubled.clone());
                match tv_resolution(&g, ExtensionClass::Surjections, &chooser, top) {
                    Ok(ss) => return Ok((SimplicialRecipe::Covering { order: g.size(), doubled }, ss)),
                    Err(Error::Resource { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            1 => {
                let normals = subgroup::normal_subgroups(&g)?;
                let n = normals.choose(rng).unwrap();
                if n.len().pow(top as u32) * g.size() > 4096 {
                    continue;
                }
                let (_, p) = subgroup::quotient(&g, n)?;
                let ss = examples::cech_nerve(&p, top)?;
                return Ok((
                    SimplicialRecipe::Cech {
                        order: g.size(),
                        kernel: n.len(),
                    },
                    ss,
                ));
            }
            _ => {
                if g.size().pow(top as u32) > 4096 {
                    continue;
                }
                match examples::abelian_nerve(&g, top) {
                    Ok(ss) => {
                        return Ok((
                            SimplicialRecipe::Nerve { order: g.size() },
                            ss.canonical_augmentation()?,
                        ))
                    }
                    Err(Error::Precondition(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
        }
    }
}

/// A single-face mutation at `level`, truncated there.
#[derive(Debug, Clone)]
pub struct Mutation {
    pub base: String,
    pub level: usize,
    pub face: usize,
    pub original: TruncatedSimplicial,
    pub mutated: TruncatedSimplicial,
}

/// Replaces one face of a covering resolution of `x`. At level 0 the
/// augmentation becomes constant (needs `|X| ≥ 2`); at level `L ≥ 1` the
/// resolution is built with a doubled cover at level `L-1` and face `k`
/// becomes `s ∘ c ∘ ∂_k`, with `c` the comparison at level `L-1` and `s`
/// its section. Either way the simplicial identities survive and exactness
/// first fails at `A_{L-1}`.
pub fn face_mutation(x: &Obj, level: usize, face: usize) -> Result<Mutation> {
    if level == 0 {
        if x.size() < 2 {
            return Err(Error::Precondition("a constant augmentation needs two elements".into()));
        }
        let ss = tv_resolution(x, ExtensionClass::Surjections, &IdentityCover, 0)?;
        let target = x.constant().unwrap_or(0);
        let constant = FinMorphism::new(ss.level(0).clone(), x.clone(), vec![target; ss.level(0).size()])?;
        let mutated = ss.with_face(0, 0, constant)?;
        return Ok(Mutation {
            base: x.to_string(),
            level,
            face: 0,
            original: ss,
            mutated,
        });
    }
    if face > level {
        return Err(Error::Precondition(format!("level {level} has no face {face}")));
    }
    let chooser = DoublingCover::at_levels(vec![level - 1]);
    let ss = tv_resolution(x, ExtensionClass::Surjections, &chooser, level)?;
    let (_, c) = kernel_comparison(&ss, level - 1)?;
    let s = c
        .is_split_epi()
        .ok_or_else(|| Error::Precondition("comparison below the mutated level does not split".into()))?;
    let e = compose(&s, &c)?;
    let g = compose(&e, ss.face(level, face))?;
    let mutated = ss.with_face(level, face, g)?;
    Ok(Mutation {
        base: x.to_string(),
        level,
        face,
        original: ss,
        mutated,
    })
}

/// `count` seeded mutations of covering resolutions of a three-element set
/// and of `Z/2`, at levels `0..=3`.
pub fn mutation_family(seed: u64, count: usize) -> Result<Vec<Mutation>> {
    let mut r = rng(seed);
    let bases = [FinObject::set_of_size(3), catalog::cyclic(2)];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = bases.choose(&mut r).unwrap();
        let level = r.gen_range(0..=3usize);
        let face = r.gen_range(0..=level);
        out.push(face_mutation(x, level, face)?);
    }
    Ok(out)
}
