//! Subgroups, normal subgroups and quotients of small finite groups.

use crate::error::{Error, Result};
use crate::morphism::FinMorphism;
use crate::object::{FinObject, Obj};

fn require_group(g: &Obj) -> Result<usize> {
    g.constant()
        .filter(|_| g.is_group())
        .ok_or_else(|| Error::Precondition("expected a group".into()))
}

/// The subgroup generated by `gens`, sorted.
pub fn generated(g: &Obj, gens: &[usize]) -> Result<Vec<usize>> {
    let e = require_group(g)?;
    let mut inside = vec![false; g.size()];
    inside[e] = true;
    let mut members = vec![e];
    for &x in gens {
        if !inside[x] {
            inside[x] = true;
            members.push(x);
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot = members.clone();
        for &x in &snapshot {
            for &y in &snapshot {
                let z = g.mul(x, y).unwrap();
                if !inside[z] {
                    inside[z] = true;
                    members.push(z);
                    changed = true;
                }
            }
        }
    }
    members.sort_unstable();
    Ok(members)
}

/// Every subgroup, ordered by size then elements.
pub fn subgroups(g: &Obj) -> Result<Vec<Vec<usize>>> {
    require_group(g)?;
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut frontier = vec![generated(g, &[])?];
    while let Some(h) = frontier.pop() {
        if out.contains(&h) {
            continue;
        }
        for x in 0..g.size() {
            if h.binary_search(&x).is_err() {
                let mut gens = h.clone();
                gens.push(x);
                frontier.push(generated(g, &gens)?);
            }
        }
        out.push(h);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

pub fn is_normal(g: &Obj, h: &[usize]) -> bool {
    (0..g.size()).all(|x| {
        let xi = g.inv(x).unwrap();
        h.iter()
            .all(|&n| h.binary_search(&g.mul(g.mul(x, n).unwrap(), xi).unwrap()).is_ok())
    })
}

pub fn normal_subgroups(g: &Obj) -> Result<Vec<Vec<usize>>> {
    Ok(subgroups(g)?.into_iter().filter(|h| is_normal(g, h)).collect())
}

/// `G/N` with cosets ordered by least element and labelled `[x]` by it,
/// together with the projection.
pub fn quotient(g: &Obj, n: &[usize]) -> Result<(Obj, FinMorphism)> {
    require_group(g)?;
    if !is_normal(g, n) {
        return Err(Error::Precondition("quotient by a non-normal subgroup".into()));
    }
    let coset_rep = |x: usize| n.iter().map(|&k| g.mul(x, k).unwrap()).min().unwrap();
    let mut reps: Vec<usize> = (0..g.size()).map(coset_rep).collect();
    let proj_reps = reps.clone();
    reps.sort_unstable();
    reps.dedup();
    let pos = |r: usize| reps.binary_search(&r).unwrap();
    let mut mul = Vec::with_capacity(reps.len() * reps.len());
    for &x in &reps {
        for &y in &reps {
            mul.push(pos(coset_rep(g.mul(x, y).unwrap())));
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", g.label(r)));
    let q = FinObject::group_from_mul(labels, mul)?;
    let p = FinMorphism::new(g.clone(), q.clone(), proj_reps.into_iter().map(pos).collect())?;
    Ok((q, p))
}

/// The subgroup `h` as an object, with its inclusion.
pub fn subgroup_object(g: &Obj, h: &[usize]) -> Result<(Obj, FinMorphism)> {
    require_group(g)?;
    let sub = g.restrict(h)?;
    let incl = FinMorphism::new(sub.clone(), g.clone(), h.to_vec())?;
    Ok((sub, incl))
}
