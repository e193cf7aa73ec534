//! Finite limits by constrained enumeration of compatible tuples.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::morphism::FinMorphism;
use crate::object::{for_each_args, table_len, FinObject, Obj};

#[derive(Debug, Clone)]
pub struct Edge {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub map: FinMorphism,
}

/// A finite diagram. Auxiliary nodes take part in the edge equations but
/// are not stored as apex coordinates; each must be the target of an edge
/// from an ordinary node, which determines its value.
#[derive(Debug, Clone, Default)]
pub struct FinDiagram {
    nodes: BTreeMap<String, Obj>,
    aux: BTreeSet<String>,
    edges: Vec<Edge>,
}

impl FinDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: impl Into<String>, obj: Obj) -> Result<()> {
        let id = id.into();
        if self.nodes.contains_key(&id) {
            return Err(Error::Validation(format!("duplicate diagram node {id}")));
        }
        self.nodes.insert(id, obj);
        Ok(())
    }

    pub fn add_aux_node(&mut self, id: impl Into<String>, obj: Obj) -> Result<()> {
        let id = id.into();
        self.add_node(id.clone(), obj)?;
        self.aux.insert(id);
        Ok(())
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        src: &str,
        dst: &str,
        map: FinMorphism,
    ) -> Result<()> {
        let id = id.into();
        let s = self
            .nodes
            .get(src)
            .ok_or_else(|| Error::Validation(format!("edge {id}: unknown source node {src}")))?;
        let d = self
            .nodes
            .get(dst)
            .ok_or_else(|| Error::Validation(format!("edge {id}: unknown target node {dst}")))?;
        if map.dom() != s || map.cod() != d {
            return Err(Error::Validation(format!(
                "edge {id}: morphism does not run from {src} to {dst}"
            )));
        }
        self.edges.push(Edge {
            id,
            src: src.to_string(),
            dst: dst.to_string(),
            map,
        });
        Ok(())
    }

    pub fn nodes(&self) -> &BTreeMap<String, Obj> {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_aux(&self, id: &str) -> bool {
        self.aux.contains(id)
    }
}

/// A limit cone. The apex elements are the compatible tuples over the
/// ordinary nodes, sorted lexicographically.
#[derive(Debug, Clone)]
pub struct Cone {
    apex: Obj,
    legs: BTreeMap<String, FinMorphism>,
    coords: Vec<String>,
    tuples: Vec<Vec<usize>>,
    // aux node -> (coordinate of a source, edge map)
    aux_paths: BTreeMap<String, (usize, FinMorphism)>,
}

impl Cone {
    pub fn apex(&self) -> &Obj {
        &self.apex
    }

    pub fn legs(&self) -> &BTreeMap<String, FinMorphism> {
        &self.legs
    }

    pub fn leg(&self, id: &str) -> &FinMorphism {
        &self.legs[id]
    }

    /// The coordinate nodes in apex tuple order.
    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn tuple(&self, x: usize) -> &[usize] {
        &self.tuples[x]
    }

    pub fn find(&self, tuple: &[usize]) -> Option<usize> {
        self.tuples.binary_search_by(|t| t.as_slice().cmp(tuple)).ok()
    }

    /// The unique map `dom → apex` whose composite with each leg is the
    /// given map. Every coordinate node needs a map; maps for auxiliary
    /// nodes are optional and checked when given.
    pub fn mediate(&self, dom: &Obj, maps: &BTreeMap<String, FinMorphism>) -> Result<FinMorphism> {
        let mut cols = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            let m = maps
                .get(c)
                .ok_or_else(|| Error::Validation(format!("cone lacks a map to node {c}")))?;
            if m.dom() != dom || m.cod() != self.legs[c].cod() {
                return Err(Error::Validation(format!("cone map to {c} has the wrong type")));
            }
            cols.push(m);
        }
        let mut table = Vec::with_capacity(dom.size());
        let mut t = vec![0; cols.len()];
        for x in 0..dom.size() {
            for (d, m) in cols.iter().enumerate() {
                t[d] = m.apply(x);
            }
            let y = self.find(&t).ok_or_else(|| {
                Error::Validation(format!("element {x} does not give a compatible tuple"))
            })?;
            table.push(y);
        }
        for (a, (coord, path)) in &self.aux_paths {
            if let Some(m) = maps.get(a) {
                for x in 0..dom.size() {
                    if path.apply(cols[*coord].apply(x)) != m.apply(x) {
                        return Err(Error::Validation(format!(
                            "cone map to {a} disagrees at element {x}"
                        )));
                    }
                }
            }
        }
        Ok(FinMorphism::new_unchecked(dom.clone(), self.apex.clone(), table))
    }

    /// `mediate` with maps listed in coordinate order.
    pub fn mediate_ordered(&self, dom: &Obj, maps: &[&FinMorphism]) -> Result<FinMorphism> {
        if maps.len() != self.coords.len() {
            return Err(Error::Validation(format!(
                "expected {} cone maps, got {}",
                self.coords.len(),
                maps.len()
            )));
        }
        let named = self
            .coords
            .iter()
            .cloned()
            .zip(maps.iter().map(|m| (*m).clone()))
            .collect();
        self.mediate(dom, &named)
    }
}

#[derive(Clone, Copy)]
enum Mode {
    /// value = edge map applied to an already known node
    Forced { edge: usize },
    /// value ranges over the fiber of an edge into a known node
    Fiber { edge: usize },
    Free,
}

struct Step {
    var: usize,
    mode: Mode,
    // aux nodes that become known, with the edge determining each
    reveals: Vec<(usize, usize)>,
    checks: Vec<usize>,
}

pub fn compute_limit(d: &FinDiagram) -> Result<Cone> {
    if d.nodes.is_empty() {
        return Err(Error::Validation("limit of an empty diagram".into()));
    }
    let ids: Vec<&String> = d.nodes.keys().collect();
    let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let objs: Vec<&Obj> = d.nodes.values().collect();
    let is_aux: Vec<bool> = ids.iter().map(|s| d.aux.contains(*s)).collect();
    let edges: Vec<(usize, usize, &FinMorphism)> = d
        .edges
        .iter()
        .map(|e| (index[e.src.as_str()], index[e.dst.as_str()], &e.map))
        .collect();
    for (i, id) in ids.iter().enumerate() {
        if is_aux[i] && !edges.iter().any(|&(s, t, _)| t == i && !is_aux[s]) {
            return Err(Error::Validation(format!(
                "auxiliary node {id} is not the target of an ordinary node"
            )));
        }
    }
    let coords: Vec<usize> = (0..ids.len()).filter(|&i| !is_aux[i]).collect();
    let steps = plan(&objs, &is_aux, &edges);

    let fibers: Vec<Option<Vec<Vec<usize>>>> = edges
        .iter()
        .enumerate()
        .map(|(ei, (_, _, m))| {
            let used = steps.iter().any(|s| matches!(s.mode, Mode::Fiber { edge } if edge == ei));
            used.then(|| {
                let mut f = vec![Vec::new(); m.cod().size()];
                for (x, &y) in m.table().iter().enumerate() {
                    f[y].push(x);
                }
                f
            })
        })
        .collect();

    let cap = Caps::current().apex;
    let mut values = vec![usize::MAX; ids.len()];
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut overflow = false;
    enumerate(
        0,
        &steps,
        &edges,
        &objs,
        &fibers,
        &mut values,
        &mut |vals| {
            if rows.len() >= cap {
                overflow = true;
                return false;
            }
            rows.push(coords.iter().map(|&c| vals[c]).collect());
            true
        },
    );
    if overflow {
        return Err(Error::resource("limit apex", rows.len() + 1, cap));
    }
    rows.sort_unstable();

    let labels: Vec<String> = rows
        .iter()
        .map(|r| {
            let parts: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            format!("({})", parts.join(","))
        })
        .collect();

    let structure = pointwise_structure(&objs, &coords, &rows)?;
    let apex = FinObject::from_parts_unchecked(labels, structure);

    let mut legs = BTreeMap::new();
    for (k, &c) in coords.iter().enumerate() {
        let table = rows.iter().map(|r| r[k]).collect();
        legs.insert(
            ids[c].clone(),
            FinMorphism::new_unchecked(apex.clone(), objs[c].clone(), table),
        );
    }
    let mut aux_paths = BTreeMap::new();
    for (i, id) in ids.iter().enumerate() {
        if !is_aux[i] {
            continue;
        }
        let &(s, _, m) = edges.iter().find(|&&(s, t, _)| t == i && !is_aux[s]).unwrap();
        let k = coords.iter().position(|&c| c == s).unwrap();
        let table = rows.iter().map(|r| m.apply(r[k])).collect();
        legs.insert(
            (*id).clone(),
            FinMorphism::new_unchecked(apex.clone(), objs[i].clone(), table),
        );
        aux_paths.insert((*id).clone(), (k, m.clone()));
    }
    Ok(Cone {
        apex,
        legs,
        coords: coords.iter().map(|&c| ids[c].clone()).collect(),
        tuples: rows,
        aux_paths,
    })
}

fn plan(objs: &[&Obj], is_aux: &[bool], edges: &[(usize, usize, &FinMorphism)]) -> Vec<Step> {
    let n = objs.len();
    let mut known = vec![false; n];
    let mut edge_done = vec![false; edges.len()];
    let mut steps = Vec::new();
    let pending = |known: &[bool]| (0..n).filter(|&v| !is_aux[v] && !known[v]).collect::<Vec<_>>();
    loop {
        let open = pending(&known);
        if open.is_empty() {
            break;
        }
        let forced = open.iter().find_map(|&v| {
            edges
                .iter()
                .position(|&(s, t, _)| t == v && known[s])
                .map(|e| (v, Mode::Forced { edge: e }))
        });
        let choice = forced.or_else(|| {
            open.iter()
                .filter_map(|&v| {
                    edges
                        .iter()
                        .enumerate()
                        .filter(|(_, &(s, t, _))| s == v && known[t])
                        .min_by_key(|(_, (_, _, m))| m.dom().size() / m.cod().size().max(1))
                        .map(|(e, _)| (v, Mode::Fiber { edge: e }))
                })
                .min_by_key(|&(v, mode)| match mode {
                    Mode::Fiber { edge } => {
                        let m = edges[edge].2;
                        (m.dom().size() / m.cod().size().max(1), v)
                    }
                    _ => (usize::MAX, v),
                })
        });
        let (var, mode) = choice.unwrap_or_else(|| {
            let v = *open.iter().min_by_key(|&&v| (objs[v].size(), v)).unwrap();
            (v, Mode::Free)
        });
        known[var] = true;
        match mode {
            Mode::Forced { edge } | Mode::Fiber { edge } => edge_done[edge] = true,
            Mode::Free => {}
        }
        let mut reveals = Vec::new();
        for (e, &(s, t, _)) in edges.iter().enumerate() {
            if s == var && is_aux[t] && !known[t] {
                known[t] = true;
                edge_done[e] = true;
                reveals.push((t, e));
            }
        }
        let mut checks = Vec::new();
        for (e, &(s, t, _)) in edges.iter().enumerate() {
            if !edge_done[e] && known[s] && known[t] {
                edge_done[e] = true;
                checks.push(e);
            }
        }
        steps.push(Step {
            var,
            mode,
            reveals,
            checks,
        });
    }
    steps
}

fn enumerate(
    depth: usize,
    steps: &[Step],
    edges: &[(usize, usize, &FinMorphism)],
    objs: &[&Obj],
    fibers: &[Option<Vec<Vec<usize>>>],
    values: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if depth == steps.len() {
        return emit(values);
    }
    let step = &steps[depth];
    let mut attempt = |x: usize, values: &mut Vec<usize>| -> bool {
        values[step.var] = x;
        for &(t, e) in &step.reveals {
            let (s, _, m) = edges[e];
            values[t] = m.apply(values[s]);
        }
        let ok = step.checks.iter().all(|&e| {
            let (s, t, m) = edges[e];
            m.apply(values[s]) == values[t]
        });
        if ok {
            enumerate(depth + 1, steps, edges, objs, fibers, values, emit)
        } else {
            true
        }
    };
    match step.mode {
        Mode::Forced { edge } => {
            let (s, _, m) = edges[edge];
            attempt(m.apply(values[s]), values)
        }
        Mode::Fiber { edge } => {
            let (_, t, _) = edges[edge];
            let fiber = &fibers[edge].as_ref().unwrap()[values[t]];
            for &x in fiber {
                if !attempt(x, values) {
                    return false;
                }
            }
            true
        }
        Mode::Free => {
            for x in 0..objs[step.var].size() {
                if !attempt(x, values) {
                    return false;
                }
            }
            true
        }
    }
}

fn pointwise_structure(
    objs: &[&Obj],
    coords: &[usize],
    rows: &[Vec<usize>],
) -> Result<Option<crate::object::Structure>> {
    let first = objs[0];
    let sig = match first.signature() {
        Some(s) => s.clone(),
        None => return Ok(None),
    };
    if !objs.iter().all(|o| o.same_signature(first)) {
        return Ok(None);
    }
    let group = objs.iter().all(|o| o.is_group());
    let p = rows.len();
    let cap = Caps::current().table_entries;
    let mut tables = Vec::with_capacity(sig.ops().len());
    for (op, spec) in sig.ops().iter().enumerate() {
        let len = table_len(p, spec.arity).unwrap_or(usize::MAX);
        if len > cap {
            return Err(Error::resource("operation table of a limit", len, cap));
        }
        let mut t = Vec::with_capacity(len);
        let mut out = vec![0; coords.len()];
        let mut args_k = vec![0; spec.arity];
        let mut missing = false;
        for_each_args(p, spec.arity, |args, _| {
            for (k, &c) in coords.iter().enumerate() {
                for (d, &a) in args.iter().enumerate() {
                    args_k[d] = rows[a][k];
                }
                out[k] = objs[c].structure().unwrap().apply(op, &args_k, objs[c].size());
            }
            match rows.binary_search(&out) {
                Ok(i) => t.push(i),
                Err(_) => {
                    missing = true;
                    t.push(0);
                }
            }
        });
        if missing {
            // only possible when some edge map is not a homomorphism
            return Ok(None);
        }
        tables.push(t);
    }
    Ok(Some(FinObject::structure_from_tables(Arc::clone(&sig), tables, group)))
}

/// Pullback of the cospan `f, g`; legs `p0` toward `dom f` and `p1`
/// toward `dom g`.
pub fn compute_pullback(f: &FinMorphism, g: &FinMorphism) -> Result<Cone> {
    if f.cod() != g.cod() {
        return Err(Error::Composition(
            "pullback of maps with different codomains".into(),
        ));
    }
    let mut d = FinDiagram::new();
    d.add_node("p0", f.dom().clone())?;
    d.add_node("p1", g.dom().clone())?;
    d.add_aux_node("q", f.cod().clone())?;
    d.add_edge("f", "p0", "q", f.clone())?;
    d.add_edge("g", "p1", "q", g.clone())?;
    compute_limit(&d)
}

/// Kernel pair of `f`, with projections `p0` and `p1`.
pub fn compute_kernel_pair(f: &FinMorphism) -> Result<Cone> {
    compute_pullback(f, f)
}

/// The sub-object of `dom f` sent to the designated constant, with its
/// inclusion.
pub fn compute_kernel(f: &FinMorphism) -> Result<(Obj, FinMorphism)> {
    let c = f.cod().constant().ok_or_else(|| {
        Error::Unsupported("kernel needs a codomain with a designated constant".into())
    })?;
    if f.dom().constant().is_none() {
        return Err(Error::Unsupported(
            "kernel needs a domain with a designated constant".into(),
        ));
    }
    let keep: Vec<usize> = (0..f.dom().size()).filter(|&x| f.apply(x) == c).collect();
    let k = f.dom().restrict(&keep)?;
    let incl = FinMorphism::new_unchecked(k.clone(), f.dom().clone(), keep);
    Ok((k, incl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn set(n: usize) -> Obj {
        FinObject::set_of_size(n)
    }

    fn map(d: &Obj, c: &Obj, t: &[usize]) -> FinMorphism {
        FinMorphism::new(d.clone(), c.clone(), t.to_vec()).unwrap()
    }

    #[test]
    fn point_diagram() {
        let mut d = FinDiagram::new();
        d.add_node("x", set(3)).unwrap();
        let c = compute_limit(&d).unwrap();
        assert_eq!(c.apex().size(), 3);
        assert!(c.leg("x").is_iso());
    }

    #[test]
    fn pullback_over_point_is_product() {
        let f = map(&set(2), &set(1), &[0, 0]);
        let g = map(&set(1), &set(1), &[0]);
        let c = compute_pullback(&f, &g).unwrap();
        assert_eq!(c.apex().labels(), &["(0,0)", "(1,0)"]);
        let h = compute_pullback(&f, &f).unwrap();
        assert_eq!(h.apex().size(), 4);
    }

    #[test]
    fn pullback_along_identity() {
        let f = map(&set(3), &set(2), &[0, 0, 1]);
        let id = FinMorphism::identity(&set(2));
        let c = compute_pullback(&f, &id).unwrap();
        assert_eq!(c.apex().size(), 3);
        assert!(c.leg("p0").is_iso());
        assert_eq!(c.leg("p1").table(), f.table());
    }

    #[test]
    fn kernel_pair_of_quotient() {
        let z4 = catalog::cyclic(4);
        let q = map(&z4, &catalog::cyclic(2), &[0, 1, 0, 1]);
        let c = compute_kernel_pair(&q).unwrap();
        assert_eq!(c.apex().size(), 8);
        assert!(c.apex().is_group());
        for x in 0..8 {
            let t = c.tuple(x);
            assert_eq!((t[0] + 4 - t[1]) % 4 % 2, 0);
        }
        let (k, incl) = compute_kernel(&q).unwrap();
        assert_eq!(incl.table(), &[0, 2]);
        assert!(k.is_group());
        let (k2, _) = compute_kernel(&FinMorphism::identity(&z4)).unwrap();
        assert_eq!(k2.size(), 1);
        let t = map(&catalog::cyclic(2), &catalog::trivial_group(), &[0, 0]);
        assert_eq!(compute_kernel(&t).unwrap().0.size(), 2);
        assert!(matches!(
            compute_kernel(&map(&set(2), &set(1), &[0, 0])),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn mediate_unique() {
        let f = map(&set(3), &set(2), &[0, 1, 1]);
        let c = compute_kernel_pair(&f).unwrap();
        let id = FinMorphism::identity(&set(3));
        let diag = c.mediate_ordered(&set(3), &[&id, &id]).unwrap();
        assert_eq!(diag.table().len(), 3);
        let g = map(&set(3), &set(3), &[1, 0, 2]);
        assert!(c.mediate_ordered(&set(3), &[&id, &g]).is_err());
    }

    #[test]
    fn apex_cap_enforced() {
        let caps = Caps {
            apex: 5,
            ..Caps::default()
        };
        let f = map(&set(3), &set(1), &[0, 0, 0]);
        let r = caps.scoped(|| compute_kernel_pair(&f));
        assert!(matches!(r, Err(Error::Resource { .. })));
    }

    #[test]
    fn aux_node_must_be_determined() {
        let mut d = FinDiagram::new();
        d.add_aux_node("a", set(2)).unwrap();
        assert!(compute_limit(&d).is_err());
    }
}
