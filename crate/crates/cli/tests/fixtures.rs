//! The fixture corpus under `fixtures/`: every file is in canonical form
//! and matches what the generators below produce. Run with
//! `UPDATE_FIXTURES=1` to rewrite the corpus.

use std::collections::BTreeMap;
use std::path::PathBuf;

use cubex::catalog;
use cubex::cube::Cube;
use cubex::extension::{ExtensionClass, SquareArrow};
use cubex::format::{canonicalize, parse, Document};
use cubex::generate::{face_mutation, random_group_cube, random_set_cube, random_simplicial_group, rng};
use cubex::simplicial::examples::{self, split_square_truncation};
use cubex::simplicial::{tv_resolution, Flavor, IdentityCover};
use cubex::theorems::{search_maltsev_counterexample, SearchDomain};
use cubex::{FinMorphism, FinObject};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn single(f: impl FnOnce(&mut Document)) -> String {
    let mut d = Document::new();
    f(&mut d);
    d.serialize()
}

fn corpus() -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    let mut put = |name: &str, text: String| {
        out.insert(format!("{name}.cx"), text);
    };
    let s = ExtensionClass::Surjections;
    let z = catalog::cyclic;
    let q42 = FinMorphism::new(z(4), z(2), vec![0, 1, 0, 1]).unwrap();

    put("three", single(|d| d.add_object("three", FinObject::set_of_size(3)).unwrap()));
    put("point", single(|d| d.add_object("point", FinObject::set_of_size(1)).unwrap()));
    put("z2", single(|d| d.add_object("z2", z(2)).unwrap()));
    put("z3", single(|d| d.add_object("z3", z(3)).unwrap()));
    put("v4", single(|d| d.add_object("v4", catalog::klein()).unwrap()));
    put("s3", single(|d| d.add_object("s3", catalog::symmetric3()).unwrap()));
    put("d4", single(|d| d.add_object("d4", catalog::dihedral4()).unwrap()));
    put("q8", single(|d| d.add_object("q8", catalog::quaternion()).unwrap()));
    put("hom-z4-z2", single(|d| d.add_morphism("q", q42.clone()).unwrap()));
    put(
        "square-bad",
        single(|d| {
            d.set_meta("note", "the square {00,01,10} over a point").unwrap();
            d.add_square("bad", &catalog::relation_square()).unwrap();
        }),
    );
    put(
        "square-identity",
        single(|d| d.add_square("id", &SquareArrow::identity_on(&q42)).unwrap()),
    );
    put(
        "cube-point",
        single(|d| d.add_cube("pt", Cube::point(z(3))).unwrap()),
    );
    put(
        "cube-arrow",
        single(|d| d.add_cube("arrow", Cube::from_morphism(q42.clone())).unwrap()),
    );
    let mut r = rng(7);
    for k in 0..4 {
        let dim = 2 + k % 2;
        let c = random_set_cube(&mut r, dim, 3).unwrap();
        put(&format!("set-cube-{k}"), single(|d| d.add_cube("c", c).unwrap()));
    }
    for k in 0..4 {
        let dim = 2 + k % 2;
        let c = random_group_cube(&mut r, dim, 8).unwrap();
        put(&format!("group-cube-{k}"), single(|d| d.add_cube("c", c).unwrap()));
    }
    put(
        "constant-z3",
        single(|d| d.add_simplicial("s", examples::constant(&z(3), 2, Flavor::Full)).unwrap()),
    );
    put(
        "nerve-ordinal-2",
        single(|d| d.add_simplicial("nerve", examples::ordinal_nerve(2)).unwrap()),
    );
    put(
        "nerve-ordinal-3-augmented",
        single(|d| {
            d.add_simplicial("nerve", examples::ordinal_nerve(3).canonical_augmentation().unwrap())
                .unwrap()
        }),
    );
    put(
        "nerve-z3",
        single(|d| d.add_simplicial("nerve", examples::abelian_nerve(&z(3), 2).unwrap()).unwrap()),
    );
    put(
        "cech-z4-z2",
        single(|d| d.add_simplicial("cech", examples::cech_nerve(&q42, 2).unwrap()).unwrap()),
    );
    put(
        "tv-three-2",
        single(|d| {
            d.add_simplicial("tv", tv_resolution(&FinObject::set_of_size(3), s, &IdentityCover, 2).unwrap())
                .unwrap()
        }),
    );
    put(
        "tv-z2-3",
        single(|d| d.add_simplicial("tv", tv_resolution(&z(2), s, &IdentityCover, 3).unwrap()).unwrap()),
    );
    for (base, x) in [("three", FinObject::set_of_size(3)), ("z2", z(2))] {
        for (level, face) in [(0, 0), (1, 1), (2, 0)] {
            let m = face_mutation(&x, level, face).unwrap();
            put(
                &format!("mutation-{base}-{level}-{face}"),
                single(|d| d.add_simplicial("mutant", m.mutated).unwrap()),
            );
        }
    }
    let mut r = rng(11);
    for k in 0..3 {
        let (recipe, ss) = random_simplicial_group(&mut r, 2, 8).unwrap();
        put(
            &format!("simplicial-group-{k}"),
            single(|d| {
                d.set_meta("recipe", recipe.describe()).unwrap();
                d.add_simplicial("s", ss).unwrap();
            }),
        );
    }
    let witness = search_maltsev_counterexample(SearchDomain::Sets(3)).unwrap();
    put("maltsev-witness", witness.witness.unwrap());
    let sq = catalog::relation_square();
    let map = |d: &cubex::Obj, c: &cubex::Obj, t: Vec<usize>| FinMorphism::new(d.clone(), c.clone(), t).unwrap();
    let split = examples::SplitSquare::new(
        sq.clone(),
        map(sq.a.cod(), sq.a.dom(), vec![0, 2]),
        map(sq.b.cod(), sq.b.dom(), vec![0]),
        map(sq.f1.cod(), sq.f1.dom(), vec![0, 1]),
        map(sq.f0.cod(), sq.f0.dom(), vec![0]),
    )
    .unwrap();
    put(
        "trunc-relation-square",
        single(|d| d.add_simplicial("trunc", split_square_truncation(&split).unwrap()).unwrap()),
    );
    out
}

#[test]
fn corpus_is_canonical_and_current() {
    let dir = dir();
    let expected = corpus();
    if std::env::var_os("UPDATE_FIXTURES").is_some() {
        std::fs::create_dir_all(&dir).unwrap();
        for (name, text) in &expected {
            std::fs::write(dir.join(name), text).unwrap();
        }
    }
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("cx") {
            continue;
        }
        seen += 1;
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let once = doc.serialize();
        assert_eq!(once, text, "{} is not canonical", path.display());
        assert_eq!(parse(&once).unwrap(), doc);
        assert_eq!(canonicalize(&once).unwrap(), once);
        let name = path.file_name().unwrap().to_str().unwrap();
        if let Some(want) = expected.get(name) {
            assert_eq!(&text, want, "{name} differs from its generator");
        }
    }
    assert!(seen >= 30, "only {seen} fixtures");
}
