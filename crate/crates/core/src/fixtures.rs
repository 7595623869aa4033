//! Built-in example algebras and their dual families.
//!
//! Parameter names follow the original presentation (`a`, `b`, `c`, `d`,
//! `m`, `f`, `g`, `h`); they are free symbols, so every check on these
//! fixtures is a polynomial identity in them.

use crate::algebras::{Algebra3, AlgebraKind};
use crate::exactmath::Scalar;
use crate::structure::Sc3;

fn build(name: &str, dim: usize, kind: AlgebraKind, entries: &[([usize; 4], &str)]) -> Algebra3 {
    let sc = Sc3::from_entries(
        dim,
        entries
            .iter()
            .map(|(k, v)| (*k, v.parse::<Scalar>().expect("fixture scalar"))),
    )
    .expect("fixture indices");
    let sc = if kind == AlgebraKind::Lie3 {
        sc.antisymmetric_completion().expect("fixture completion")
    } else {
        sc
    };
    Algebra3::new(name, sc, kind).expect("fixture is well formed")
}

/// `[e2,e3,e3] = e1`, `[e3,e3,e3] = e2`.
pub fn a1() -> Algebra3 {
    build(
        "a1",
        3,
        AlgebraKind::LeibnizFirst,
        &[([2, 3, 3, 1], "1"), ([3, 3, 3, 2], "1")],
    )
}

/// `[e3,e2,e3] = e2`, `[e3,e3,e2] = -e2`, `[e3,e3,e3] = e1 + e2`.
pub fn a2() -> Algebra3 {
    build(
        "a2",
        3,
        AlgebraKind::LeibnizFirst,
        &[
            ([3, 2, 3, 2], "1"),
            ([3, 3, 2, 2], "-1"),
            ([3, 3, 3, 1], "1"),
            ([3, 3, 3, 2], "1"),
        ],
    )
}

/// Antisymmetric extension of `[e2,e3,e4] = e1`, `[e1,e3,e4] = e2`.
pub fn l4() -> Algebra3 {
    build("l4", 4, AlgebraKind::Lie3, &[([2, 3, 4, 1], "1"), ([1, 3, 4, 2], "1")])
}

/// Second-kind dual of A1: `[ẽ1,ẽ1,ẽ1] = bẽ2 + aẽ3`, `[ẽ1,ẽ2,ẽ1] = bẽ3`.
pub fn d1_second() -> Algebra3 {
    build(
        "d1_second",
        3,
        AlgebraKind::LeibnizSecond,
        &[([1, 1, 1, 2], "b"), ([1, 1, 1, 3], "a"), ([1, 2, 1, 3], "b")],
    )
}

/// Third-kind dual of A1: `[ẽ1,ẽ1,ẽ1] = bẽ2 + aẽ3`, `[ẽ1,ẽ1,ẽ2] = bẽ3`.
pub fn d1_third() -> Algebra3 {
    build(
        "d1_third",
        3,
        AlgebraKind::LeibnizThird,
        &[([1, 1, 1, 2], "b"), ([1, 1, 1, 3], "a"), ([1, 1, 2, 3], "b")],
    )
}

/// First-kind dual family of A2, parameters `a, b, c, d`.
pub fn d2_first() -> Algebra3 {
    build(
        "d2_first",
        3,
        AlgebraKind::LeibnizFirst,
        &[
            ([1, 1, 2, 3], "a"),
            ([1, 2, 2, 3], "b"),
            ([2, 1, 2, 3], "c"),
            ([2, 2, 2, 3], "d"),
        ],
    )
}

/// Second-kind dual family of A2, parameters `a, b, c, d`.
pub fn d2_second() -> Algebra3 {
    build(
        "d2_second",
        3,
        AlgebraKind::LeibnizSecond,
        &[
            ([1, 1, 1, 3], "a"),
            ([1, 1, 2, 3], "b"),
            ([1, 2, 1, 3], "c"),
            ([1, 2, 2, 3], "d"),
        ],
    )
}

/// Third-kind dual family of A2, parameters `a, b, c, d, m, f, g, h`.
pub fn d2_third() -> Algebra3 {
    build(
        "d2_third",
        3,
        AlgebraKind::LeibnizThird,
        &[
            ([1, 1, 1, 3], "a"),
            ([1, 1, 2, 3], "b"),
            ([1, 2, 1, 3], "c"),
            ([1, 2, 2, 3], "d"),
            ([2, 1, 1, 3], "m"),
            ([2, 1, 2, 3], "f"),
            ([2, 2, 1, 3], "g"),
            ([2, 2, 2, 3], "h"),
        ],
    )
}

/// Lie dual of L4: `[ẽ1,ẽ2,ẽ4] = bẽ1`, `[ẽ3,ẽ2,ẽ4] = bẽ3`.
pub fn db_lie_first() -> Algebra3 {
    build(
        "db_lie_first",
        4,
        AlgebraKind::Lie3,
        &[([1, 2, 4, 1], "b"), ([3, 2, 4, 3], "b")],
    )
}

/// Lie dual of L4: `[ẽ2,ẽ3,ẽ1] = bẽ2`, `[ẽ4,ẽ3,ẽ1] = bẽ4`.
pub fn db_lie_second() -> Algebra3 {
    build(
        "db_lie_second",
        4,
        AlgebraKind::Lie3,
        &[([2, 3, 1, 2], "b"), ([4, 3, 1, 4], "b")],
    )
}

/// Relabels a first-kind algebra so it satisfies the identity of `target`:
/// `g_{ijk} = f_{jik}` for the second kind and `g_{ijk} = f_{kij}` for the
/// third. Duals paired with the original stay valid partners under the
/// relabeled algebra's own cocycle condition.
pub fn relabel_first_kind(alg: &Algebra3, target: AlgebraKind) -> Algebra3 {
    assert_eq!(
        alg.kind,
        AlgebraKind::LeibnizFirst,
        "relabel expects a first-kind algebra"
    );
    let sc = match target {
        AlgebraKind::LeibnizFirst => alg.sc.clone(),
        AlgebraKind::LeibnizSecond => alg.sc.permute_slots([1, 0, 2]),
        AlgebraKind::LeibnizThird => alg.sc.permute_slots([2, 0, 1]),
        AlgebraKind::Lie3 => panic!("a Leibniz algebra cannot be relabeled into a Lie algebra"),
    };
    let suffix = match target {
        AlgebraKind::LeibnizFirst => "",
        AlgebraKind::LeibnizSecond => "_as_second",
        _ => "_as_third",
    };
    Algebra3 {
        name: format!("{}{suffix}", alg.name),
        sc,
        kind: target,
    }
}

/// Every named fixture, for lookup by name.
pub fn all() -> Vec<Algebra3> {
    vec![
        a1(),
        a2(),
        l4(),
        d1_second(),
        d1_third(),
        d2_first(),
        d2_second(),
        d2_third(),
        db_lie_first(),
        db_lie_second(),
    ]
}

pub fn by_name(name: &str) -> Option<Algebra3> {
    all().into_iter().find(|a| a.name == name)
}
