//! Seeded instance sets for each theorem id.

use rand::Rng;

use crate::audit::{split_epis_of_extensions, Axiom};
use crate::catalog;
use crate::cube::Cube;
use crate::e5plus::{instance_from_square, E5PlusInstance};
use crate::error::{Error, Result};
use crate::extension::{Base, ExtensionClass, SquareArrow};
use crate::generate::{
    all_set_squares, mutation_family, random_group_cube, random_set_cube, random_simplicial_group,
    random_surjective_group_square, rng,
};
use crate::morphism::FinMorphism;
use crate::object::{FinObject, Obj};
use crate::simplicial::{examples, tv_resolution, Flavor, IdentityCover, TruncatedSimplicial};

use super::checks::*;
use super::report::TheoremReport;
use super::search::{search_maltsev_counterexample, SearchDomain, SEARCH_ID};

pub const THEOREM_IDS: [&str; 14] = [
    DIP_ID,
    E5_EQUIV_ID,
    KERNEL_PAIR_ID,
    GO_UP_ID,
    KAN_ID,
    CONTRACTIBLE_KAN_ID,
    SEARCH_ID,
    E5_PLUS_ID,
    RESOLUTION_EXTENSION_ID,
    CODOMAIN_ID,
    KAN_EXTENSION_ID,
    LIFTED_RESOLUTION_ID,
    TRUNCATION_SQUARE_ID,
    KERNEL_EXISTS_ID,
];

const S: ExtensionClass = ExtensionClass::Surjections;

fn z(n: usize) -> Obj {
    catalog::cyclic(n)
}

/// Named simplicial instances: covering resolutions of a three-element
/// set and of `Z/2`, seeded simplicial groups and the augmented ordinal
/// nerve.
fn simplicial_instances(seed: u64, groups: usize, top: usize) -> Result<Vec<(String, TruncatedSimplicial)>> {
    let mut out = vec![
        (
            format!("covering resolution of a three-element set, level {top}"),
            tv_resolution(&FinObject::set_of_size(3), S, &IdentityCover, top)?,
        ),
        (
            format!("covering resolution of Z2, level {top}"),
            tv_resolution(&z(2), S, &IdentityCover, top)?,
        ),
        (
            format!("constant Z3, level {top}"),
            examples::constant(&z(3), top, Flavor::Full),
        ),
    ];
    let mut r = rng(seed);
    for k in 0..groups {
        let (recipe, ss) = random_simplicial_group(&mut r, top, 8)?;
        out.push((format!("#{k} {}, level {top}", recipe.describe()), ss));
    }
    Ok(out)
}

/// Runs the seeded instance set of theorem `id`.
pub fn verify(id: &str, seed: u64) -> Result<Vec<TheoremReport>> {
    match id {
        DIP_ID => {
            let mut out = Vec::new();
            let q = FinMorphism::new(z(4), z(2), vec![0, 1, 0, 1])?;
            let id_cube = Cube::from_square(&SquareArrow::identity_on(&q))?;
            out.push(check_dip_equivalence(&id_cube, S, "identity square on Z4 -> Z2")?);
            let bad = Cube::from_square(&catalog::relation_square())?;
            out.push(check_dip_equivalence(&bad, S, "relation square {00,01,10}")?);
            let mut r = rng(seed);
            for k in 0..12 {
                let dim = 2 + k % 2;
                let c = random_set_cube(&mut r, dim, 3)?;
                out.push(check_dip_equivalence(&c, S, &format!("#{k} random set {dim}-cube"))?);
                let c = random_group_cube(&mut r, dim, 8)?;
                out.push(check_dip_equivalence(&c, S, &format!("#{k} random group {dim}-cube"))?);
            }
            Ok(out)
        }
        E5_EQUIV_ID => {
            let groups: Vec<Obj> = catalog::groups_up_to(4).into_iter().map(|(_, g)| g).collect();
            let sets: Vec<Obj> = (1..=3).map(FinObject::set_of_size).collect();
            Ok(vec![
                check_e5_equivalences(S, &groups, "surjections on groups of order <= 4")?,
                check_e5_equivalences(S, &sets, "surjections on sets with carriers 1..=3")?,
                check_e5_equivalences(ExtensionClass::All, &sets[..2], "all maps on sets with carriers 1..=2")?,
            ])
        }
        KERNEL_PAIR_ID => {
            let mut out = Vec::new();
            let q = FinMorphism::new(z(4), z(2), vec![0, 1, 0, 1])?;
            out.push(check_kernel_pair_lemma(&SquareArrow::identity_on(&q), S, "identity square on Z4 -> Z2")?);
            let mut r = rng(seed);
            for k in 0..20 {
                let sq = random_surjective_group_square(&mut r, 8)?;
                out.push(check_kernel_pair_lemma(&sq, S, &format!("#{k} random surjective group square"))?);
            }
            let set_squares: Vec<SquareArrow> = all_set_squares(2)
                .into_iter()
                .filter(|s| [&s.a, &s.b, &s.f1, &s.f0].iter().all(|m| m.is_surjective()))
                .collect();
            for (k, sq) in set_squares.iter().enumerate() {
                out.push(check_kernel_pair_lemma(sq, S, &format!("set square #{k} with carriers <= 2"))?);
            }
            out.push(check_kernel_pair_lemma(&catalog::relation_square(), S, "relation square {00,01,10}")?);
            Ok(out)
        }
        GO_UP_ID => {
            let sets: Vec<Obj> = catalog::sets_up_to(2).into_iter().map(|(_, s)| s).collect();
            let groups: Vec<Obj> = catalog::groups_up_to(4).into_iter().map(|(_, g)| g).collect();
            let low = [Axiom::E1, Axiom::E2, Axiom::E3];
            Ok(vec![
                check_axioms_go_up(S, &sets, &low, "surjections on sets of size <= 2, (E1)-(E3)")?,
                check_axioms_go_up(S, &groups, &Axiom::ALL, "surjections on groups of order <= 4, (E1)-(E5)")?,
                check_axioms_go_up(
                    ExtensionClass::Isomorphisms,
                    &sets,
                    &[Axiom::E1, Axiom::E2, Axiom::E3, Axiom::E4],
                    "isomorphisms on sets of size <= 2, (E1)-(E4)",
                )?,
            ])
        }
        KAN_ID => {
            let mut out = vec![check_kan_theorem(&examples::ordinal_nerve(2), S, "ordinal-2 nerve, level 2")?];
            for (name, ss) in simplicial_instances(seed, 8, 2)? {
                out.push(check_kan_theorem(&ss, S, &name)?);
            }
            Ok(out)
        }
        CONTRACTIBLE_KAN_ID => {
            let nerve = examples::ordinal_nerve(2).canonical_augmentation()?;
            let mut out = vec![check_contractible_kan(&nerve, S, "augmented ordinal-2 nerve, level 2")?];
            for (name, ss) in simplicial_instances(seed, 8, 2)? {
                out.push(check_contractible_kan(&ss, S, &name)?);
            }
            Ok(out)
        }
        SEARCH_ID => Ok(vec![
            search_maltsev_counterexample(SearchDomain::Sets(1))?,
            search_maltsev_counterexample(SearchDomain::Sets(3))?,
            search_maltsev_counterexample(SearchDomain::Groups(6))?,
        ]),
        E5_PLUS_ID => {
            let mut out = Vec::new();
            let one = catalog::trivial_group();
            let id = FinMorphism::identity(&one);
            let trivial = E5PlusInstance::new(id.clone(), id.clone(), id)?;
            out.push(check_e5_plus_suite(S, &[trivial], &[], "trivial group")?);
            let groups: Vec<Obj> = catalog::groups_up_to(4).into_iter().map(|(_, g)| g).collect();
            let universe = all_morphisms(&groups);
            let split = split_epis_of_extensions(&Base::new(S), &universe)?;
            let mut r = rng(seed);
            let mut instances = Vec::new();
            for _ in 0..20 {
                let sq = random_surjective_group_square(&mut r, 8)?;
                instances.push(instance_from_square(&sq)?);
            }
            out.push(check_e5_plus_suite(
                S,
                &instances,
                &split,
                "surjections: random group squares and split epimorphisms over groups of order <= 4",
            )?);
            let mut quotients = Vec::new();
            for _ in 0..10 {
                let sq = random_surjective_group_square(&mut r, 8)?;
                quotients.push(instance_from_square(&sq)?);
            }
            out.push(check_e5_plus_suite(
                ExtensionClass::SetSplit,
                &quotients,
                &[],
                "set-split class on group quotients",
            )?);
            Ok(out)
        }
        RESOLUTION_EXTENSION_ID | LIFTED_RESOLUTION_ID | KERNEL_EXISTS_ID => {
            let mut items = simplicial_instances(seed, 4, 2)?;
            for m in mutation_family(seed, 6)? {
                items.push((
                    format!("covering resolution of {} with face {} replaced at level {}", m.base, m.face, m.level),
                    m.mutated,
                ));
            }
            items
                .iter()
                .map(|(name, ss)| match id {
                    RESOLUTION_EXTENSION_ID => check_resolution_extension(ss, S, name),
                    LIFTED_RESOLUTION_ID => check_lifted_resolution(ss, S, name),
                    _ => check_kernel_exists(ss, S, name),
                })
                .collect()
        }
        CODOMAIN_ID | TRUNCATION_SQUARE_ID => {
            let mut items = simplicial_instances(seed, 6, 3)?;
            items.push((
                "augmented ordinal-3 nerve".into(),
                examples::ordinal_nerve(3).canonical_augmentation()?,
            ));
            items
                .iter()
                .map(|(name, ss)| {
                    if id == CODOMAIN_ID {
                        check_codomain_lemma(ss, name)
                    } else {
                        check_truncation_square(ss, name)
                    }
                })
                .collect()
        }
        KAN_EXTENSION_ID => {
            let mut items = simplicial_instances(seed, 6, 2)?;
            items.push(("ordinal-2 nerve".into(), examples::ordinal_nerve(2)));
            let mut r = rng(seed ^ 0x5eed);
            let x = FinObject::set_of_size(2 + r.gen_range(0..2));
            items.push((
                format!("constant set of size {}", x.size()),
                examples::constant(&x, 2, Flavor::Full),
            ));
            items.iter().map(|(name, ss)| check_kan_extension(ss, S, name)).collect()
        }
        other => Err(Error::Validation(format!(
            "unknown theorem id {other:?} (known: {})",
            THEOREM_IDS.join(", ")
        ))),
    }
}
