use cubex::format::{parse, Document};
use cubex::generate::{random_group_cube, random_set_cube, rng};
use cubex::{
    is_double_extension, is_extension_inductive, is_extension_limitwise, lift_class, Base, Cube, ExtensionClass,
    Square, SquareArrow,
};
use proptest::prelude::*;

const S: ExtensionClass = ExtensionClass::Surjections;

fn cube(seed: u64, dim: usize, groups: bool) -> Cube {
    let mut r = rng(seed);
    if groups {
        random_group_cube(&mut r, dim, 6).unwrap()
    } else {
        random_set_cube(&mut r, dim, 3).unwrap()
    }
}

/// A 3-cube as a square (directions 1, 2) of arrows in direction 0.
fn nested(c: &Cube) -> Square<SquareArrow> {
    let inner = |m: usize| c.gen(m << 1, 0).clone();
    let edge = |s: usize, i: usize| Square {
        a: inner(s | 1 << i),
        b: inner(s),
        f1: c.gen(s << 1 | 1, i + 1).clone(),
        f0: c.gen(s << 1, i + 1).clone(),
    };
    Square {
        a: edge(0b10, 0),
        b: edge(0, 0),
        f1: edge(0b01, 1),
        f0: edge(0, 1),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permuting_directions_preserves_extensions(
        seed in any::<u64>(),
        groups in any::<bool>(),
        sigma in Just(vec![0usize, 1, 2]).prop_shuffle(),
    ) {
        let c = cube(seed, 3, groups);
        let p = c.permute(&sigma).unwrap();
        let want = is_extension_limitwise(&c, S).unwrap();
        prop_assert_eq!(is_extension_limitwise(&p, S).unwrap(), want);
        prop_assert_eq!(is_extension_inductive(&p, S).unwrap(), want);
    }

    #[test]
    fn squares_agree_with_double_extensions(seed in any::<u64>(), groups in any::<bool>()) {
        let c = cube(seed, 2, groups);
        let sq = c.to_square().unwrap();
        let base = Base::new(S);
        let want = is_double_extension(&base, &sq).unwrap();
        prop_assert_eq!(is_extension_limitwise(&c, S).unwrap(), want);
        prop_assert_eq!(is_double_extension(&base, &sq.transpose()).unwrap(), want);
    }

    #[test]
    fn three_cubes_agree_with_lifted_double_extensions(seed in any::<u64>(), groups in any::<bool>()) {
        let c = cube(seed, 3, groups);
        let outer = nested(&c);
        let lifted = lift_class(Base::new(S));
        let inner_ok = (0..4).all(|m| S.member(c.gen(m << 1, 0)));
        let want = inner_ok && is_double_extension(&lifted, &outer).unwrap();
        prop_assert_eq!(is_extension_limitwise(&c, S).unwrap(), want);
    }

    #[test]
    fn arrow_views_reassemble(seed in any::<u64>(), dim in 1usize..4, groups in any::<bool>()) {
        let c = cube(seed, dim, groups);
        for v in c.arrow_views().unwrap() {
            prop_assert_eq!(&v.reassemble().unwrap(), &c);
        }
    }

    #[test]
    fn cubes_round_trip_through_text(seed in any::<u64>(), dim in 0usize..4, groups in any::<bool>()) {
        let c = cube(seed, dim, groups);
        let mut d = Document::new();
        d.add_cube("c", c.clone()).unwrap();
        let text = d.serialize();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back.cubes()["c"], &c);
        prop_assert_eq!(back.serialize(), text);
    }
}
