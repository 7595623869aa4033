//! Ternary algebras, their brackets and fundamental-identity residuals.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::contract::signed_sum;
use crate::exactmath::{Rational, Scalar};
use crate::report::{Report, Residual, Stage, Status};
use crate::structure::{is_antisymmetric, slice_chi, slice_y, slice_y_prime, Matrix, Sc3};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("`{name}` is declared lie3 but its structure constants are not antisymmetric")]
    NotAntisymmetric { name: String },
    #[error("slot must be 1, 2 or 3, got {0}")]
    InvalidSlot(usize),
    #[error("unknown algebra kind `{0}` (expected leibniz1, leibniz2, leibniz3 or lie3)")]
    UnknownKind(String),
}

/// Which identity the algebra obeys. The i-th kind makes the adjoint map
/// acting in slot i a derivation; `Lie3` is the antisymmetric case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgebraKind {
    LeibnizFirst,
    LeibnizSecond,
    LeibnizThird,
    Lie3,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 4] = [
        AlgebraKind::LeibnizFirst,
        AlgebraKind::LeibnizSecond,
        AlgebraKind::LeibnizThird,
        AlgebraKind::Lie3,
    ];
    pub const LEIBNIZ: [AlgebraKind; 3] = [
        AlgebraKind::LeibnizFirst,
        AlgebraKind::LeibnizSecond,
        AlgebraKind::LeibnizThird,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgebraKind::LeibnizFirst => "leibniz1",
            AlgebraKind::LeibnizSecond => "leibniz2",
            AlgebraKind::LeibnizThird => "leibniz3",
            AlgebraKind::Lie3 => "lie3",
        }
    }

    /// Slot (1..=3) whose identity governs this kind. Lie3 uses the third,
    /// which is the Filippov identity once the bracket is antisymmetric.
    pub fn identity_slot(self) -> usize {
        match self {
            AlgebraKind::LeibnizFirst => 1,
            AlgebraKind::LeibnizSecond => 2,
            AlgebraKind::LeibnizThird | AlgebraKind::Lie3 => 3,
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgebraKind {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlgebraKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| AlgebraError::UnknownKind(s.to_string()))
    }
}

/// Coordinate vector over the basis `e_1..e_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vector {
    coords: Vec<Scalar>,
}

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Self { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Scalar::zero(); dim])
    }

    /// Basis vector `e_i`, 1-based.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[i - 1] = Scalar::one();
        v
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.coords[i - 1]
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

/// A ternary algebra: structure constants plus the identity they obey.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra3 {
    pub name: String,
    pub sc: Sc3,
    pub kind: AlgebraKind,
}

impl Algebra3 {
    /// Fails for `Lie3` unless the tensor is antisymmetric.
    pub fn new(name: impl Into<String>, sc: Sc3, kind: AlgebraKind) -> Result<Self, AlgebraError> {
        let name = name.into();
        if kind == AlgebraKind::Lie3 && !is_antisymmetric(&sc) {
            return Err(AlgebraError::NotAntisymmetric { name });
        }
        Ok(Self { name, sc, kind })
    }

    pub fn dim(&self) -> usize {
        self.sc.dim()
    }

    /// Specializes parameters; antisymmetry is preserved by evaluation.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Algebra3 {
        Algebra3 {
            name: self.name.clone(),
            sc: self.sc.eval(assignment),
            kind: self.kind,
        }
    }
}

fn check_dims(alg: &Algebra3, vs: &[&Vector]) -> Result<(), AlgebraError> {
    for v in vs {
        if v.dim() != alg.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: alg.dim(),
                found: v.dim(),
            });
        }
    }
    Ok(())
}

/// `[x, y, z]^m = Σ x^i y^j z^k f_{ijk}^m`.
pub fn bracket(alg: &Algebra3, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector, AlgebraError> {
    check_dims(alg, &[x, y, z])?;
    let mut out = Vector::zero(alg.dim());
    for (&[i, j, k, m], f) in alg.sc.entries() {
        let (a, b, c) = (x.get(i), y.get(j), z.get(k));
        if a.is_zero() || b.is_zero() || c.is_zero() {
            continue;
        }
        out.coords[m - 1] += &(&(a * b) * &(c * f));
    }
    Ok(out)
}

/// Matrix of `z ↦ [z,u,v]` (slot 1), `[u,z,v]` (slot 2) or `[u,v,z]`
/// (slot 3); column `c` is the image of `e_c`.
pub fn ad_matrix(alg: &Algebra3, slot: usize, u: &Vector, v: &Vector) -> Result<Matrix, AlgebraError> {
    check_dims(alg, &[u, v])?;
    if !(1..=3).contains(&slot) {
        return Err(AlgebraError::InvalidSlot(slot));
    }
    let n = alg.dim();
    let mut out = Matrix::zeros(n, n);
    for c in 1..=n {
        let e = Vector::basis(n, c);
        let image = match slot {
            1 => bracket(alg, &e, u, v)?,
            2 => bracket(alg, u, &e, v)?,
            _ => bracket(alg, u, v, &e)?,
        };
        for r in 1..=n {
            out.set(r, c, image.get(r).clone());
        }
    }
    Ok(out)
}

pub const FI_LABELS: [&str; 6] = ["a", "b", "c", "s", "t", "m"];

/// Residual `R(a,b,c,s,t,m)`, LHS − RHS of the identity of `kind`
/// evaluated on basis tuples in structure-constant form.
pub fn fi_residual_of(f: &Sc3, kind: AlgebraKind) -> Residual {
    let terms: [(bool, &str, &str); 4] = match kind.identity_slot() {
        1 => [
            (false, "abcp", "pstm"),
            (true, "astp", "pbcm"),
            (true, "bstp", "apcm"),
            (true, "cstp", "abpm"),
        ],
        2 => [
            (false, "abcp", "sptm"),
            (true, "satp", "pbcm"),
            (true, "sbtp", "apcm"),
            (true, "sctp", "abpm"),
        ],
        _ => [
            (false, "abcp", "stpm"),
            (true, "stap", "pbcm"),
            (true, "stbp", "apcm"),
            (true, "stcp", "abpm"),
        ],
    };
    let terms: Vec<_> = terms.iter().map(|&(neg, pa, pb)| (neg, pa, f, pb, f)).collect();
    Residual::new(&FI_LABELS, signed_sum(&terms, "abcstm"))
}

pub fn fi_residual(alg: &Algebra3) -> Residual {
    fi_residual_of(&alg.sc, alg.kind)
}

/// The same residual assembled from slice-matrix products, with the tensor
/// read in the dual role (`χ̃`, `Ỹ`, `Ỹ'`). Entries are keyed like
/// [`fi_residual_of`] so the two can be compared directly.
pub fn fi_residual_matrix(f: &Sc3, kind: AlgebraKind) -> Residual {
    let n = f.dim();
    let chi = |a, b| slice_chi(f, a, b).expect("in range");
    let y = |a, b| slice_y(f, a, b).expect("in range");
    let yp = |a, b| slice_y_prime(f, a, b).expect("in range");
    let mul = |a: &Matrix, b: &Matrix| a.matmul(b).expect("square");
    let mut entries = BTreeMap::new();
    let mut store = |m: &Matrix, key: &dyn Fn(usize, usize) -> Vec<usize>| {
        for r in 1..=n {
            for c in 1..=n {
                let v = m.get(r, c);
                if !v.is_zero() {
                    entries.insert(key(r, c), v.clone());
                }
            }
        }
    };
    let range = || 1..=n;
    match kind.identity_slot() {
        1 => {
            for i in range() {
                for j in range() {
                    for s in range() {
                        for q in range() {
                            let chi_ij = chi(i, j);
                            let mut m = mul(&chi_ij, &yp(s, q));
                            m = m.sub(&mul(&yp(j, q).transpose(), &chi(i, s).transpose())).unwrap();
                            m = m.sub(&mul(&y(i, q).transpose(), &chi(j, s).transpose())).unwrap();
                            for p in range() {
                                m = m.sub(&yp(s, p).scale(chi_ij.get(p, q))).unwrap();
                            }
                            store(&m, &|k, mm| vec![i, j, k, s, mm, q]);
                        }
                    }
                }
            }
        }
        2 => {
            for j in range() {
                for k in range() {
                    for i in range() {
                        for q in range() {
                            let chi_jk = chi(j, k);
                            let mut m = mul(&chi_jk, &y(i, q));
                            m = m.sub(&mul(&yp(k, q).transpose(), &chi(i, j).transpose())).unwrap();
                            m = m.sub(&mul(&y(j, q).transpose(), &chi(i, k).transpose())).unwrap();
                            for p in range() {
                                m = m.sub(&y(i, p).scale(chi_jk.get(p, q))).unwrap();
                            }
                            store(&m, &|s, mm| vec![j, k, s, i, mm, q]);
                        }
                    }
                }
            }
        }
        _ => {
            for k in range() {
                for s in range() {
                    for i in range() {
                        for j in range() {
                            let chi_ij = chi(i, j);
                            let chi_ks = chi(k, s);
                            let mut m = mul(&chi_ks, &chi_ij);
                            for p in range() {
                                m = m.sub(&chi(p, s).scale(chi_ij.get(k, p))).unwrap();
                                m = m.sub(&chi(k, p).scale(chi_ij.get(s, p))).unwrap();
                            }
                            m = m.sub(&mul(&chi_ij, &chi_ks)).unwrap();
                            store(&m, &|mm, q| vec![k, s, mm, i, j, q]);
                        }
                    }
                }
            }
        }
    }
    Residual::new(&FI_LABELS, entries)
}

/// Which of the three Leibniz identities a tensor satisfies.
pub fn satisfied_identities(f: &Sc3) -> [bool; 3] {
    AlgebraKind::LEIBNIZ.map(|k| fi_residual_of(f, k).is_zero())
}

/// Checks a tensor against the identity of `kind`, gating Lie3 on
/// antisymmetry first.
pub fn check_tensor(name: &str, f: &Sc3, kind: AlgebraKind) -> Report {
    let mut report = Report::new(format!("check {name} as {kind}"));
    if kind == AlgebraKind::Lie3 {
        if is_antisymmetric(f) {
            report.push(Stage::new("antisymmetry", Status::Pass));
        } else {
            let witness = f
                .entries()
                .find(|(&[i, j, k, m], v)| f.get(j, i, k, m) != -(*v).clone() || f.get(i, k, j, m) != -(*v).clone())
                .map(|([i, j, k, m], v)| format!("f({i},{j},{k};{m}) = {v} has no matching antisymmetric partner"))
                .unwrap_or_default();
            report.push(Stage::new("antisymmetry", Status::Fail).note(witness));
            report.push(Stage::info("fundamental identity").note("skipped: antisymmetry gate failed"));
            return report;
        }
    }
    let residual = fi_residual_of(f, kind);
    report.push(Stage::from_residual(
        format!("fundamental identity ({kind})"),
        &residual,
    ));
    report
}

/// Pass iff the fundamental identity of the algebra's kind holds
/// identically (and, for Lie3, the bracket is antisymmetric).
pub fn check(alg: &Algebra3) -> Report {
    check_tensor(&alg.name, &alg.sc, alg.kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::structure::antisymmetrize;

    #[test]
    fn brackets_of_examples() {
        let a1 = fixtures::a1();
        let e = |i| Vector::basis(3, i);
        assert_eq!(bracket(&a1, &e(2), &e(3), &e(3)).unwrap(), e(1));
        assert!(bracket(&a1, &e(1), &e(1), &e(1)).unwrap().is_zero());
        let l4 = fixtures::l4();
        let f = |i| Vector::basis(4, i);
        assert_eq!(bracket(&l4, &f(2), &f(3), &f(4)).unwrap(), f(1));
        assert_eq!(
            bracket(&l4, &f(3), &f(2), &f(4)).unwrap(),
            Vector::from_ints(&[-1, 0, 0, 0])
        );
        assert!(bracket(&a1, &f(1), &e(1), &e(1)).is_err());
    }

    #[test]
    fn adjoint_matrices() {
        let a1 = fixtures::a1();
        let e3 = Vector::basis(3, 3);
        let ad = ad_matrix(&a1, 1, &e3, &e3).unwrap();
        let expected = Matrix::from_fn(3, 3, |r, c| {
            Scalar::from_int(((r, c) == (1, 2) || (r, c) == (2, 3)) as i64)
        });
        assert_eq!(ad, expected);

        let zero = Algebra3::new("zero", Sc3::zero(3), AlgebraKind::LeibnizFirst).unwrap();
        assert!(ad_matrix(&zero, 2, &e3, &e3).unwrap().is_zero());

        let l4 = fixtures::l4();
        let u = Vector::from_ints(&[1, 2, 0, -1]);
        let v = Vector::from_ints(&[0, 1, 1, 3]);
        let ad1 = ad_matrix(&l4, 1, &u, &v).unwrap();
        let ad2 = ad_matrix(&l4, 2, &u, &v).unwrap();
        assert_eq!(ad1, ad2.scale(&Scalar::from_int(-1)));
        assert!(ad_matrix(&l4, 4, &u, &v).is_err());
    }

    #[test]
    fn bracket_agrees_with_adjoint_action() {
        let l4 = fixtures::l4();
        let x = Vector::from_ints(&[2, -1, 0, 1]);
        let u = Vector::from_ints(&[1, 0, 1, 1]);
        let v = Vector::from_ints(&[0, 3, -2, 1]);
        let apply = |m: &Matrix, z: &Vector| {
            Vector::new(
                (1..=4)
                    .map(|r| (1..=4).fold(Scalar::zero(), |acc, c| &acc + &(m.get(r, c) * z.get(c))))
                    .collect(),
            )
        };
        let b = bracket(&l4, &x, &u, &v).unwrap();
        assert_eq!(apply(&ad_matrix(&l4, 1, &u, &v).unwrap(), &x), b);
        assert_eq!(apply(&ad_matrix(&l4, 2, &x, &v).unwrap(), &u), b);
        assert_eq!(apply(&ad_matrix(&l4, 3, &x, &u).unwrap(), &v), b);
    }

    #[test]
    fn example_identities() {
        assert!(fi_residual(&fixtures::a1()).is_zero());
        assert!(fi_residual(&fixtures::a2()).is_zero());
        assert!(fi_residual(&fixtures::l4()).is_zero());
        for kind in AlgebraKind::ALL {
            assert!(fi_residual_of(&Sc3::zero(3), kind).is_zero());
        }
        assert_eq!(satisfied_identities(&fixtures::a1().sc), [true, false, false]);
        assert_eq!(satisfied_identities(&fixtures::a2().sc), [true, false, false]);
        assert_eq!(satisfied_identities(&fixtures::l4().sc), [true, true, true]);
    }

    #[test]
    fn checks() {
        assert!(check(&fixtures::a1()).passed());
        assert!(check(&fixtures::a2()).passed());
        let gate = check_tensor("a1", &fixtures::a1().sc, AlgebraKind::Lie3);
        assert!(!gate.passed());
        assert_eq!(gate.stages[0].name, "antisymmetry");
        assert!(!check_tensor("a1", &fixtures::a1().sc, AlgebraKind::LeibnizSecond).passed());
    }

    #[test]
    fn lie_agrees_with_third() {
        let f =
            antisymmetrize(&Sc3::from_ints(4, &[([1, 2, 3, 1], 6), ([2, 3, 4, 2], -6), ([1, 2, 4, 4], 12)]).unwrap());
        assert_eq!(
            fi_residual_of(&f, AlgebraKind::Lie3),
            fi_residual_of(&f, AlgebraKind::LeibnizThird)
        );
    }

    #[test]
    fn matrix_forms_match_tensor_forms() {
        let f = Sc3::from_ints(
            3,
            &[
                ([1, 2, 3, 1], 1),
                ([2, 2, 1, 3], -2),
                ([3, 1, 1, 2], 1),
                ([1, 1, 2, 2], 2),
                ([3, 3, 2, 1], -1),
            ],
        )
        .unwrap();
        for kind in AlgebraKind::LEIBNIZ {
            let tensor = fi_residual_of(&f, kind);
            assert!(!tensor.is_zero());
            assert_eq!(fi_residual_matrix(&f, kind), tensor, "{kind}");
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in AlgebraKind::ALL {
            assert_eq!(kind.as_str().parse::<AlgebraKind>().unwrap(), kind);
        }
        assert!("leibniz4".parse::<AlgebraKind>().is_err());
    }
}
