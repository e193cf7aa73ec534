//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use cubex::audit::Axiom;
use cubex::catalog;
use cubex::cube::{is_extension_inductive, is_extension_limitwise};
use cubex::extension::ExtensionClass;
use cubex::format::parse;
use cubex::generate::{all_set_squares, mutation_family, random_set_cube, random_simplicial_group, random_surjective_group_square, rng};
use cubex::object::FinObject;
use cubex::simplicial::examples;
use cubex::simplicial::{
    arr, codomains_agree, is_contractible, is_kan, is_resolution, kan_report, resolution_report, tv_resolution,
    Contractibility, DoublingCover, IdentityCover, TruncatedSimplicial,
};
use cubex::theorems::{check_axioms_go_up, check_kernel_pair_lemma, search_maltsev_counterexample, SearchDomain};
use cubex::{Caps, Cube, Obj, Verdict};
use rand::Rng;

const S: ExtensionClass = ExtensionClass::Surjections;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T>(r: cubex::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn checkers_agree(c: &Cube, class: ExtensionClass) -> Result<bool, String> {
    Ok(e(is_extension_limitwise(c, class))? == e(is_extension_inductive(c, class))?)
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    let squares = all_set_squares(2);
    for class in ExtensionClass::ALL_CLASSES {
        for (k, sq) in squares.iter().enumerate() {
            let c = e(Cube::from_square(sq))?;
            ensure(checkers_agree(&c, class)?, || format!("exhaustive square #{k} disagrees for {class}"))?;
            total += 1;
        }
    }
    let mut r = rng(7);
    for k in 0..1200 {
        let dim = 2 + k % 2;
        let c = e(random_set_cube(&mut r, dim, 3))?;
        ensure(checkers_agree(&c, S)?, || format!("random {dim}-cube #{k} disagrees"))?;
        total += 1;
    }
    Ok(format!(
        "{total} cubes agree ({} exhaustive squares x {} classes, 1200 random 2- and 3-cubes)",
        squares.len(),
        ExtensionClass::ALL_CLASSES.len()
    ))
}

/// For `1 ≤ n ≤ N+1`: whether exactness below `n` and both checkers on
/// `arr_n` agree, and the first `n` where they fail.
fn arr_profile(ss: &TruncatedSimplicial) -> Result<(bool, Option<usize>), String> {
    let exact = e(resolution_report(ss, S))?;
    let mut first = None;
    for n in 1..=ss.top() + 1 {
        let lhs = exact[..n].iter().all(|(_, ok)| *ok);
        let c = e(arr(ss, n))?;
        let lw = e(is_extension_limitwise(&c, S))?;
        let ind = e(is_extension_inductive(&c, S))?;
        if lhs != lw || lhs != ind {
            return Ok((false, None));
        }
        if !lhs && first.is_none() {
            first = Some(n);
        }
    }
    Ok((true, first))
}

fn criterion_2() -> Outcome {
    let bases = [
        ("three-element set", FinObject::set_of_size(3)),
        ("Z2", catalog::cyclic(2)),
    ];
    let mut cubes = 0;
    for (name, x) in &bases {
        for (label, chooser) in [
            ("identity covers", DoublingCover::at_levels(vec![])),
            ("doubled at level 0", DoublingCover::at_levels(vec![0])),
        ] {
            let ss = e(tv_resolution(x, S, &chooser, 3))?;
            ensure(e(is_resolution(&ss, S))?, || format!("{name} with {label}: not a resolution"))?;
            for n in 0..=4 {
                let c = e(arr(&ss, n))?;
                let ok = e(is_extension_limitwise(&c, S))? && e(is_extension_inductive(&c, S))?;
                ensure(ok, || format!("{name} with {label}: arr_{n} is not an extension"))?;
                cubes += 1;
            }
        }
    }
    let mutations = e(mutation_family(7, 20))?;
    for (k, m) in mutations.iter().enumerate() {
        let what = || format!("mutation #{k} of {} at level {} face {}", m.base, m.level, m.face);
        ensure(!e(is_resolution(&m.mutated, S))?, || format!("{} is still a resolution", what()))?;
        let (agree, first) = arr_profile(&m.mutated)?;
        ensure(agree, || format!("{}: exactness and cube checks disagree", what()))?;
        ensure(first == Some(m.level + 1), || {
            format!("{}: first failing cube arr_{first:?}, expected arr_{}", what(), m.level + 1)
        })?;
        let exact = e(resolution_report(&m.mutated, S))?;
        let first_inexact = exact.iter().find(|(_, ok)| !ok).map(|(n, _)| *n);
        ensure(first_inexact == Some(m.level as isize - 1), || {
            format!("{}: first inexact level {first_inexact:?}", what())
        })?;
    }
    Ok(format!(
        "{cubes} resolution cubes pass both checkers; {} mutations fail together at the matching level",
        mutations.len()
    ))
}

fn generated_augmented() -> Result<Vec<(String, TruncatedSimplicial)>, String> {
    let mut out = Vec::new();
    for (name, x) in [("three", FinObject::set_of_size(3)), ("Z2", catalog::cyclic(2)), ("Z3", catalog::cyclic(3))] {
        out.push((format!("covering resolution of {name}"), e(tv_resolution(&x, S, &IdentityCover, 3))?));
        out.push((
            format!("doubled covering resolution of {name}"),
            e(tv_resolution(&x, S, &DoublingCover::at_levels(vec![0, 1]), 3))?,
        ));
    }
    let mut r = rng(7);
    for k in 0..30 {
        let (recipe, ss) = e(random_simplicial_group(&mut r, 3, 8))?;
        out.push((format!("#{k} {}", recipe.describe()), ss));
    }
    for m in e(mutation_family(7, 10))? {
        out.push((format!("mutation of {} at level {}", m.base, m.level), m.mutated));
    }
    out.push(("augmented ordinal-3 nerve".into(), e(examples::ordinal_nerve(3).canonical_augmentation())?));
    Ok(out)
}

fn criterion_3() -> Outcome {
    // Level-3 groups of order 8 have level-4 operation tables past the default cap.
    let caps = Caps { table_entries: 1 << 26, ..Caps::default() };
    caps.scoped(codomain_agreement)
}

fn codomain_agreement() -> Outcome {
    let items = generated_augmented()?;
    let mut checks = 0;
    for (name, ss) in &items {
        for n in 1..=(ss.top() + 1).min(4) {
            ensure(e(codomains_agree(ss, n))?, || format!("{name}: codomains of arr_{n} differ"))?;
            checks += 1;
        }
    }
    Ok(format!(
        "{checks} cubes over {} augmented objects, zero failures (table cap 2^26)",
        items.len()
    ))
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let sets = e(search_maltsev_counterexample(SearchDomain::Sets(3)))?;
    let sets_time = t.elapsed();
    ensure(sets.verdict == Verdict::Violated, || "no witness among sets with carriers <= 3".into())?;
    ensure(sets.detail.iter().any(|d| d == "comparison image 3 of 4"), || {
        format!("witness has the wrong comparison image: {:?}", sets.detail)
    })?;
    ensure(sets_time <= Duration::from_secs(10), || format!("set search took {sets_time:?}"))?;
    let t = Instant::now();
    let groups = e(search_maltsev_counterexample(SearchDomain::Groups(6)))?;
    let groups_time = t.elapsed();
    ensure(groups.verdict == Verdict::NoneFoundInBounds, || "a group witness was reported".into())?;
    ensure(groups_time <= Duration::from_secs(600), || format!("group search took {groups_time:?}"))?;
    Ok(format!(
        "sets: witness with comparison image 3 of 4 in {} ms; groups of order <= 6: none found in {} ms",
        sets_time.as_millis(),
        groups_time.as_millis()
    ))
}

fn criterion_5() -> Outcome {
    let mut r = rng(7);
    let mut levels = [0usize; 4];
    for k in 0..60 {
        let top = r.gen_range(1..=3);
        let (recipe, ss) = e(random_simplicial_group(&mut r, top, 8))?;
        ensure(e(is_kan(&ss, S))?, || format!("#{k} {} at level {top} is not Kan", recipe.describe()))?;
        levels[top] += 1;
    }
    Ok(format!(
        "60 simplicial groups are Kan (levels 1/2/3: {}/{}/{})",
        levels[1], levels[2], levels[3]
    ))
}

fn criterion_6() -> Outcome {
    let nerve = examples::ordinal_nerve(2);
    let report = e(kan_report(&nerve, S))?;
    let bad: Vec<String> = report
        .iter()
        .filter(|((n, _), ok)| !ok && *n <= 2)
        .map(|((n, k), _)| format!("({n},{k})"))
        .collect();
    ensure(!bad.is_empty(), || "the ordinal-2 nerve is Kan".into())?;
    Ok(format!("ordinal-2 nerve fails at {}", bad.join(", ")))
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let mut found = 0;
    let mut tried = 0;
    while found < 25 {
        tried += 1;
        ensure(tried <= 500, || format!("only {found} contractible Kan instances in 500 draws"))?;
        let top = r.gen_range(1..=3);
        let (recipe, ss) = e(random_simplicial_group(&mut r, top, 8))?;
        if !matches!(is_contractible(&ss), Contractibility::Found(_)) || !e(is_kan(&ss, S))? {
            continue;
        }
        ensure(e(is_resolution(&ss, S))?, || format!("{} is contractible and Kan but not a resolution", recipe.describe()))?;
        found += 1;
    }
    Ok(format!("{found} contractible Kan simplicial groups are resolutions ({tried} draws)"))
}

fn criterion_8() -> Outcome {
    let mut r = rng(7);
    for k in 0..120 {
        let sq = e(random_surjective_group_square(&mut r, 8))?;
        let rep = e(check_kernel_pair_lemma(&sq, S, &format!("#{k}")))?;
        ensure(rep.verdict == Verdict::Holds, || format!("square #{k}: {}", rep.render_text(false)))?;
    }
    Ok("120 surjective group squares satisfy the biconditional".into())
}

fn criterion_9() -> Outcome {
    let sets: Vec<Obj> = catalog::sets_up_to(2).into_iter().map(|(_, o)| o).collect();
    let groups: Vec<Obj> = catalog::groups_up_to(4).into_iter().map(|(_, o)| o).collect();
    let low = e(check_axioms_go_up(S, &sets, &[Axiom::E1, Axiom::E2, Axiom::E3], "sets <= 2"))?;
    ensure(low.verdict == Verdict::Holds, || low.render_text(false))?;
    let high = e(check_axioms_go_up(S, &groups, &Axiom::ALL, "groups <= 4"))?;
    ensure(high.verdict == Verdict::Holds, || high.render_text(false))?;
    let universe = |r: &cubex::TheoremReport| {
        r.detail
            .iter()
            .find(|d| d.starts_with("lifted universe"))
            .cloned()
            .unwrap_or_default()
    };
    Ok(format!(
        "sets: E1-E3 verified ({}); groups: E1-E5 verified ({})",
        universe(&low),
        universe(&high)
    ))
}

fn criterion_10() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut files = 0;
    for entry in std::fs::read_dir(&dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().and_then(|x| x.to_str()) != Some("cx") {
            continue;
        }
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let doc = parse(&text).map_err(|err| format!("{}: {err}", path.display()))?;
        let once = doc.serialize();
        let twice = parse(&once).map_err(|err| err.to_string())?.serialize();
        ensure(once == text && twice == once, || format!("{} is not byte-stable", path.display()))?;
        files += 1;
    }
    ensure(files >= 30, || format!("only {files} fixtures"))?;
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_cubex"))
            .args(["verify", "--id", "all", "--seed", "7", "--report", "structured"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    // Exit 1 is expected: some checks report their known counterexamples.
    ensure(matches!(a.status.code(), Some(0 | 1)) && a.status.code() == b.status.code(), || {
        format!("verify exited with {:?}: {}", a.status.code(), String::from_utf8_lossy(&a.stderr))
    })?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || "structured reports differ between runs".into())?;
    Ok(format!(
        "{files} fixtures byte-stable; two seeded verify runs produced identical {}-record reports",
        a.stdout.iter().filter(|&&c| c == b'\n').count()
    ))
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "checker equivalence", 120, criterion_1),
        (2, "resolution iff extensions", 300, criterion_2),
        (3, "codomain agreement", 600, criterion_3),
        (4, "Mal'tsev counterexample search", 610, criterion_4),
        (5, "simplicial groups are Kan", 300, criterion_5),
        (6, "non-Kan simplicial set", 5, criterion_6),
        (7, "contractible and Kan implies resolution", 600, criterion_7),
        (8, "kernel-pair lemma", 600, criterion_8),
        (9, "axioms go up", 600, criterion_9),
        (10, "format round-trip and stable reports", 600, criterion_10),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed > Duration::from_secs(limit) {
                Err(format!("took {:.1} s, limit {limit} s ({msg})", elapsed.as_secs_f64()))
            } else {
                Ok(msg)
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {n:>2} PASS  {name}: {msg} [{:.1} s]", elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {msg} [{:.1} s]", elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
