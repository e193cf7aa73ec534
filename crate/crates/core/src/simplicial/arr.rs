//! The cube `arr_n A`: `A_S` sits at level `|S| - 1` and the map
//! `A_{S∪{i}} → A_S` is the face deleting the position of `i` in `S ∪ {i}`.

use crate::cube::Cube;
use crate::error::{Error, Result};

use super::TruncatedSimplicial;

pub fn arr(ss: &TruncatedSimplicial, n: usize) -> Result<Cube> {
    if n > ss.top() + 1 {
        return Err(Error::Precondition(format!(
            "arr_{n} needs level {} but the object stops at {}",
            n as isize - 1,
            ss.top()
        )));
    }
    if !ss.is_augmented() {
        return Err(Error::Precondition("arr_n needs an augmented object".into()));
    }
    let size = 1usize << n;
    let objects = (0..size)
        .map(|s| ss.obj(s.count_ones() as isize - 1).unwrap().clone())
        .collect();
    let mut gens = Vec::new();
    for s in 0..size {
        for i in 0..n {
            if s >> i & 1 == 0 {
                let p = (s & ((1 << i) - 1)).count_ones() as usize;
                let level = s.count_ones() as usize;
                gens.push(((s, i), ss.face(level, p).clone()));
            }
        }
    }
    Cube::build(n, objects, gens)
}

/// Whether the codomains of all arrow views of `arr_n A` coincide.
pub fn codomains_agree(ss: &TruncatedSimplicial, n: usize) -> Result<bool> {
    let c = arr(ss, n)?;
    let views = c.arrow_views()?;
    Ok(views.windows(2).all(|w| w[0].codomain == w[1].codomain))
}

#[cfg(test)]
mod tests {
    use super::super::examples;
    use super::*;
    use crate::catalog;
    use crate::morphism::FinMorphism;

    #[test]
    fn low_dimensions() {
        let q = FinMorphism::new(catalog::cyclic(4), catalog::cyclic(2), vec![0, 1, 0, 1]).unwrap();
        let ss = examples::cech_nerve(&q, 2).unwrap();
        assert_eq!(arr(&ss, 0).unwrap().object(0), ss.base().unwrap());
        assert_eq!(arr(&ss, 1).unwrap().gen(0, 0), ss.face(0, 0));
        let sq = arr(&ss, 2).unwrap().to_square().unwrap();
        assert_eq!(&sq.f1, ss.face(1, 1));
        assert_eq!(&sq.a, ss.face(1, 0));
        assert_eq!(&sq.b, ss.face(0, 0));
        assert_eq!(&sq.f0, ss.face(0, 0));
        for n in 0..=3 {
            assert!(codomains_agree(&ss, n).unwrap());
        }
    }
}
