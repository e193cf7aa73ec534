//! Small named objects: finite sets and every group of order at most 8.

use crate::extension::SquareArrow;
use crate::morphism::FinMorphism;
use crate::object::{for_each_args, FinObject, Obj};

pub fn cyclic(n: usize) -> Obj {
    assert!(n >= 1);
    let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    FinObject::group_from_mul((0..n).map(|i| i.to_string()), mul).expect("cyclic group")
}

pub fn trivial_group() -> Obj {
    cyclic(1)
}

/// Direct product with pairs ordered first-coordinate-major and labelled
/// `(x,y)`. Structure is carried pointwise when both factors share a
/// signature.
pub fn product(a: &Obj, b: &Obj) -> Obj {
    let (m, n) = (a.size(), b.size());
    let labels: Vec<String> = (0..m * n)
        .map(|i| format!("({},{})", a.label(i / n), b.label(i % n)))
        .collect();
    if !a.same_signature(b) {
        return FinObject::set(labels).expect("distinct pair labels");
    }
    let (sa, sb) = (a.structure().unwrap(), b.structure().unwrap());
    let size = m * n;
    let mut tables = Vec::new();
    for (op, spec) in sa.signature().ops().iter().enumerate() {
        let mut t = Vec::new();
        let mut xa = vec![0; spec.arity];
        let mut xb = vec![0; spec.arity];
        for_each_args(size, spec.arity, |args, _| {
            for (d, &p) in args.iter().enumerate() {
                xa[d] = p / n;
                xb[d] = p % n;
            }
            t.push(sa.apply(op, &xa, m) * n + sb.apply(op, &xb, n));
        });
        tables.push(t);
    }
    let group = sa.claims_group() && sb.claims_group();
    FinObject::algebra(labels, (**sa.signature()).clone(), tables, group).expect("product algebra")
}

/// `{00, 01, 10} ⊂ 2 × 2` with both coordinate projections over a point:
/// a square of split surjections whose comparison to the pullback misses
/// `(1, 1)`.
pub fn relation_square() -> SquareArrow {
    let a1 = FinObject::set(["00", "01", "10"]).expect("labels");
    let two = FinObject::set_of_size(2);
    let one = FinObject::set_of_size(1);
    let map = |d: &Obj, c: &Obj, t: &[usize]| FinMorphism::new(d.clone(), c.clone(), t.to_vec()).expect("map");
    SquareArrow {
        a: map(&a1, &two, &[0, 0, 1]),
        b: map(&two, &one, &[0, 0]),
        f1: map(&a1, &two, &[0, 1, 0]),
        f0: map(&two, &one, &[0, 0]),
    }
}

pub fn klein() -> Obj {
    product(&cyclic(2), &cyclic(2))
}

/// Permutations of {0,1,2} in lexicographic order, composed as functions.
pub fn symmetric3() -> Obj {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let mut mul = Vec::new();
    for p in &perms {
        for q in &perms {
            mul.push(idx([p[q[0]], p[q[1]], p[q[2]]]));
        }
    }
    let labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2]));
    FinObject::group_from_mul(labels, mul).expect("S3")
}

/// Symmetries of the square as `r^i s^j`, index `2i + j`.
pub fn dihedral4() -> Obj {
    let mut mul = Vec::new();
    for x in 0..8 {
        let (i1, j1) = (x / 2, x % 2);
        for y in 0..8 {
            let (i2, j2) = (y / 2, y % 2);
            let i = if j1 == 0 { i1 + i2 } else { i1 + 4 - i2 } % 4;
            mul.push(2 * i + (j1 + j2) % 2);
        }
    }
    let labels = (0..8).map(|x| match x % 2 {
        0 => format!("r{}", x / 2),
        _ => format!("r{}s", x / 2),
    });
    FinObject::group_from_mul(labels, mul).expect("D4")
}

/// Quaternion units; index `2u + s` for unit u in (1,i,j,k) and sign s.
pub fn quaternion() -> Obj {
    // unit products as (sign, unit)
    const T: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut mul = Vec::new();
    for x in 0..8 {
        for y in 0..8 {
            let (s, u) = T[x / 2][y / 2];
            mul.push(2 * u + (s + x % 2 + y % 2) % 2);
        }
    }
    let names = ["1", "i", "j", "k"];
    let labels = (0..8).map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2]));
    FinObject::group_from_mul(labels, mul).expect("Q8")
}

/// Every group of order at most `max_order`, up to isomorphism, with names.
pub fn groups_up_to(max_order: usize) -> Vec<(String, Obj)> {
    let mut out: Vec<(String, Obj)> = Vec::new();
    for n in 1..=max_order.min(8) {
        out.push((format!("Z{n}"), cyclic(n)));
        match n {
            4 => out.push(("V4".into(), klein())),
            6 => out.push(("S3".into(), symmetric3())),
            8 => {
                out.push(("Z4xZ2".into(), product(&cyclic(4), &cyclic(2))));
                out.push(("Z2^3".into(), product(&klein(), &cyclic(2))));
                out.push(("D4".into(), dihedral4()));
                out.push(("Q8".into(), quaternion()));
            }
            _ => {}
        }
    }
    out
}

/// The plain sets `{0..n-1}` for `n` in `0..=max_size`.
pub fn sets_up_to(max_size: usize) -> Vec<(String, Obj)> {
    (0..=max_size)
        .map(|n| (format!("set{n}"), FinObject::set_of_size(n)))
        .collect()
}
