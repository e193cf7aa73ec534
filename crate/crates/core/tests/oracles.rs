//! Library results against brute-force oracles written from the
//! definitions: limits by enumerating compatible families, horns by
//! enumerating compatible tuples of faces.

use cubex::catalog;
use cubex::cube::sublimit;
use cubex::generate::{mutation_family, random_group_cube, random_set_cube, random_surjective_group_square, rng};
use cubex::simplicial::{examples, horn_object, kan_report, tv_resolution, IdentityCover};
use cubex::{
    compute_kernel, compute_pullback, is_extension_inductive, is_extension_limitwise, Cube, ExtensionClass,
    FinMorphism, FinObject, Flavor, TruncatedSimplicial,
};
use proptest::prelude::*;

const S: ExtensionClass = ExtensionClass::Surjections;

/// Every tuple over `sizes`, in lexicographic order.
fn tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &n in sizes {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Compatible families over the proper subsets of `i`, and how many of
/// them come from `A_i`.
fn families(c: &Cube, i: usize) -> (usize, usize) {
    let proper: Vec<usize> = (0..i).filter(|&j| j & i == j).collect();
    let sizes: Vec<usize> = proper.iter().map(|&j| c.object(j).size()).collect();
    let compatible: Vec<Vec<usize>> = tuples(&sizes)
        .into_iter()
        .filter(|t| {
            proper.iter().enumerate().all(|(p, &j)| {
                proper
                    .iter()
                    .enumerate()
                    .all(|(q, &k)| k & j != k || c.map(j, k).apply(t[p]) == t[q])
            })
        })
        .collect();
    let hit = compatible
        .iter()
        .filter(|t| {
            (0..c.object(i).size()).any(|x| proper.iter().zip(t.iter()).all(|(&j, &v)| c.map(i, j).apply(x) == v))
        })
        .count();
    (compatible.len(), hit)
}

/// Surjective comparison onto the limit over all proper subsets, for every
/// nonempty subset.
fn oracle_extension(c: &Cube) -> bool {
    (1..1usize << c.dim()).all(|i| {
        let (total, hit) = families(c, i);
        total == hit
    })
}

#[test]
fn cube_checkers_match_the_family_oracle() {
    let mut r = rng(3);
    let mut positive = 0;
    for k in 0..300 {
        let dim = 1 + k % 3;
        let c = random_set_cube(&mut r, dim, 3).unwrap();
        let want = oracle_extension(&c);
        assert_eq!(is_extension_limitwise(&c, S).unwrap(), want, "set cube #{k}");
        assert_eq!(is_extension_inductive(&c, S).unwrap(), want, "set cube #{k}");
        positive += want as usize;
    }
    for k in 0..60 {
        let c = random_group_cube(&mut r, 2 + k % 2, 6).unwrap();
        let want = oracle_extension(&c);
        assert_eq!(is_extension_limitwise(&c, S).unwrap(), want, "group cube #{k}");
        assert_eq!(is_extension_inductive(&c, S).unwrap(), want, "group cube #{k}");
        positive += want as usize;
    }
    assert!(positive > 20, "too few positive instances: {positive}");
}

#[test]
fn sublimit_sizes_match_the_family_oracle() {
    let mut r = rng(5);
    for _ in 0..40 {
        let c = random_set_cube(&mut r, 3, 3).unwrap();
        for i in 1..8usize {
            let (total, _) = families(&c, i);
            assert_eq!(sublimit(&c, i, true).unwrap().0.apex().size(), total);
            assert_eq!(sublimit(&c, i, false).unwrap().0.apex().size(), total);
        }
    }
}

fn identity_of(g: &cubex::Obj) -> usize {
    let s = g.structure().unwrap();
    s.tables()[s.signature().constant().unwrap()][0]
}

#[test]
fn kernels_match_the_preimage_of_the_identity() {
    let mut r = rng(9);
    for _ in 0..50 {
        let sq = random_surjective_group_square(&mut r, 8).unwrap();
        for f in [&sq.a, &sq.b, &sq.f1, &sq.f0] {
            let e = identity_of(f.cod());
            let want = (0..f.dom().size()).filter(|&x| f.apply(x) == e).count();
            let (k, inc) = compute_kernel(f).unwrap();
            assert_eq!(k.size(), want);
            assert!(inc.is_injective());
            assert!((0..k.size()).all(|x| f.apply(inc.apply(x)) == e));
        }
    }
}

/// Horn tuples `(x_i)_{i≠k}` with `d_i x_j = d_{j-1} x_i` for `i < j`, and
/// how many have a filler.
fn horns(ss: &TruncatedSimplicial, n: usize, k: usize) -> (usize, usize) {
    let idx: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
    let below = ss.level(n - 1).size();
    let compatible: Vec<Vec<usize>> = tuples(&vec![below; idx.len()])
        .into_iter()
        .filter(|t| {
            n < 2
                || idx.iter().enumerate().all(|(p, &i)| {
                    idx.iter().enumerate().all(|(q, &j)| {
                        i >= j || ss.face(n - 1, i).apply(t[q]) == ss.face(n - 1, j - 1).apply(t[p])
                    })
                })
        })
        .collect();
    let hit = compatible
        .iter()
        .filter(|t| {
            (0..ss.level(n).size()).any(|y| idx.iter().zip(t.iter()).all(|(&i, &v)| ss.face(n, i).apply(y) == v))
        })
        .count();
    (compatible.len(), hit)
}

#[test]
fn horns_match_the_tuple_oracle() {
    let z = catalog::cyclic;
    let q = FinMorphism::new(z(4), z(2), vec![0, 1, 0, 1]).unwrap();
    let mut cases = vec![
        ("ordinal-2 nerve", examples::ordinal_nerve(2)),
        ("ordinal-3 nerve", examples::ordinal_nerve(3)),
        ("constant set", examples::constant(&FinObject::set_of_size(2), 2, Flavor::Full)),
        ("nerve of Z3", examples::abelian_nerve(&z(3), 2).unwrap()),
        ("Cech nerve", examples::cech_nerve(&q, 2).unwrap()),
        ("covering resolution", tv_resolution(&FinObject::set_of_size(3), S, &IdentityCover, 2).unwrap()),
    ];
    for m in mutation_family(4, 6).unwrap() {
        if m.mutated.level(m.mutated.top()).size() <= 64 {
            cases.push(("mutation", m.mutated));
        }
    }
    let mut failures = 0;
    for (name, ss) in &cases {
        for ((n, k), ok) in kan_report(ss, S).unwrap() {
            // At n = 1 the comparison into A(1,k) is the face d_k, which the
            // tuple oracle calls the (1,1-k) horn.
            let (total, hit) = horns(ss, n, if n == 1 { 1 - k } else { k });
            assert_eq!(horn_object(ss, n, k).unwrap().apex.size(), total, "{name} ({n},{k})");
            assert_eq!(ok, total == hit, "{name} ({n},{k})");
            failures += !ok as usize;
        }
    }
    assert!(failures > 0);
}

fn set_map(dom: usize, cod: usize) -> impl Strategy<Value = FinMorphism> {
    prop::collection::vec(0..cod, dom).prop_map(move |t| {
        FinMorphism::new(FinObject::set_of_size(dom), FinObject::set_of_size(cod), t).unwrap()
    })
}

fn cospan() -> impl Strategy<Value = (FinMorphism, FinMorphism)> {
    (1usize..5, 1usize..5, 1usize..4).prop_flat_map(|(a, b, c)| (set_map(a, c), set_map(b, c)))
}

proptest! {
    #[test]
    fn pullbacks_are_the_matching_pairs((f, g) in cospan()) {
        let cone = compute_pullback(&f, &g).unwrap();
        let legs: Vec<&FinMorphism> = cone.legs().values().collect();
        let pairs: Vec<(usize, usize)> = (0..f.dom().size())
            .flat_map(|x| (0..g.dom().size()).map(move |y| (x, y)))
            .filter(|&(x, y)| f.apply(x) == g.apply(y))
            .collect();
        prop_assert_eq!(cone.apex().size(), pairs.len());
        let (lf, lg) = if legs[0].cod() == f.dom() && legs[1].cod() == g.dom() { (legs[0], legs[1]) } else { (legs[1], legs[0]) };
        let mut seen: Vec<(usize, usize)> = (0..cone.apex().size()).map(|p| (lf.apply(p), lg.apply(p))).collect();
        seen.sort();
        prop_assert_eq!(seen, pairs);
    }
}
