//! Searching for a contraction `σ_{-1}`.

use crate::caps::Caps;
use crate::morphism::{compose, search_maps, FinMorphism};

use super::TruncatedSimplicial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Contractibility {
    /// `σ_{-1}` at levels `0..=N`.
    Found(Vec<FinMorphism>),
    Absent,
    UnknownExceededCap,
}

impl Contractibility {
    pub fn witness(&self) -> Option<&[FinMorphism]> {
        match self {
            Contractibility::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Contractibility::Found(_) => "contractible",
            Contractibility::Absent => "not contractible",
            Contractibility::UnknownExceededCap => "unknown-exceeded-cap",
        }
    }
}

/// The stored contraction when it is valid, otherwise the lexicographically
/// first one found level by level with backtracking.
pub fn is_contractible(ss: &TruncatedSimplicial) -> Contractibility {
    if !ss.is_augmented() {
        return Contractibility::Absent;
    }
    if let Some(c) = ss.contraction_maps() {
        if ss.validate().is_empty() {
            return Contractibility::Found(c.to_vec());
        }
    }
    let mut search = Search {
        ss,
        cap: Caps::current().contraction_candidates,
        tried: vec![0; ss.top() + 1],
        exceeded: false,
        chosen: Vec::new(),
    };
    if search.level(0) {
        Contractibility::Found(search.chosen)
    } else if search.exceeded {
        Contractibility::UnknownExceededCap
    } else {
        Contractibility::Absent
    }
}

struct Search<'a> {
    ss: &'a TruncatedSimplicial,
    cap: usize,
    tried: Vec<usize>,
    exceeded: bool,
    chosen: Vec<FinMorphism>,
}

impl Search<'_> {
    fn level(&mut self, n: usize) -> bool {
        let ss = self.ss;
        if n > ss.top() {
            return true;
        }
        let dom = ss.obj(n as isize - 1).unwrap().clone();
        let cod = ss.level(n).clone();
        // the face tuple σ(x) must have
        let wanted: Vec<Vec<usize>> = if n == 0 {
            (0..dom.size()).map(|x| vec![x]).collect()
        } else {
            let prev = &self.chosen[n - 1];
            let shifted: Vec<FinMorphism> = (0..n)
                .map(|i| compose(prev, ss.face(n - 1, i)).expect("typed"))
                .collect();
            (0..dom.size())
                .map(|x| std::iter::once(x).chain(shifted.iter().map(|m| m.apply(x))).collect())
                .collect()
        };
        let faces = ss.faces(n);
        let candidates: Vec<Vec<usize>> = wanted
            .iter()
            .map(|w| {
                (0..cod.size())
                    .filter(|&y| faces.iter().zip(w).all(|(f, &v)| f.apply(y) == v))
                    .collect()
            })
            .collect();
        if candidates.iter().any(|c| c.is_empty()) {
            return false;
        }
        let mut found = false;
        search_maps(&dom, &cod, &candidates, true, |t| {
            self.tried[n] += 1;
            if self.tried[n] > self.cap {
                self.exceeded = true;
                return false;
            }
            self.chosen
                .push(FinMorphism::new(dom.clone(), cod.clone(), t.to_vec()).expect("homomorphism"));
            if self.level(n + 1) {
                found = true;
                return false;
            }
            self.chosen.pop();
            !self.exceeded
        });
        found
    }
}
