//! 1-cocycle compatibility between an algebra and a dual algebra.
//!
//! The dual tensor is read as `f̃^{jkm}_p` under the key `(j, k, m, p)`,
//! so `γ(e_p) = Σ f̃^{jkm}_p e_j⊗e_k⊗e_m`. Residuals are indexed
//! `(i, s, n, j, k, m)`: the `e_j⊗e_k⊗e_m` coefficient of
//! `γ([e_i, e_s, e_n])` minus the module action on the other side.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebras::{check, Algebra3, AlgebraKind};
use crate::contract::signed_sum;
use crate::report::{Report, Residual, Stage};
use crate::structure::{slice_chi, slice_y, slice_y_prime, Matrix, Sc3, Tensor3Element};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairError {
    #[error("dimension mismatch: algebra has dimension {left}, dual has {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("a lie3 algebra pairs only with a lie3 dual (got {a} with {astar})")]
    MixedLie { a: AlgebraKind, astar: AlgebraKind },
    #[error("cocycle variant {variant} does not apply to a {a}/{astar} pair")]
    VariantMismatch {
        variant: CocycleVariant,
        a: AlgebraKind,
        astar: AlgebraKind,
    },
    #[error("unknown cocycle variant `{0}` (expected 1, 2, 3 or lie)")]
    UnknownVariant(String),
}

/// Which 1-cocycle equation applies; fixed by the kind of the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CocycleVariant {
    First,
    Second,
    Third,
    Lie,
}

impl CocycleVariant {
    pub const ALL: [CocycleVariant; 4] = [
        CocycleVariant::First,
        CocycleVariant::Second,
        CocycleVariant::Third,
        CocycleVariant::Lie,
    ];

    pub fn for_kind(kind: AlgebraKind) -> Self {
        match kind {
            AlgebraKind::LeibnizFirst => CocycleVariant::First,
            AlgebraKind::LeibnizSecond => CocycleVariant::Second,
            AlgebraKind::LeibnizThird => CocycleVariant::Third,
            AlgebraKind::Lie3 => CocycleVariant::Lie,
        }
    }
}

impl fmt::Display for CocycleVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CocycleVariant::First => "1",
            CocycleVariant::Second => "2",
            CocycleVariant::Third => "3",
            CocycleVariant::Lie => "lie",
        })
    }
}

impl FromStr for CocycleVariant {
    type Err = PairError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CocycleVariant::ALL
            .into_iter()
            .find(|v| v.to_string() == s)
            .ok_or_else(|| PairError::UnknownVariant(s.to_string()))
    }
}

/// An algebra together with a candidate dual algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BialgebraPair {
    pub a: Algebra3,
    pub astar: Algebra3,
}

impl BialgebraPair {
    pub fn new(a: Algebra3, astar: Algebra3) -> Result<Self, PairError> {
        if a.dim() != astar.dim() {
            return Err(PairError::DimensionMismatch {
                left: a.dim(),
                right: astar.dim(),
            });
        }
        if (a.kind == AlgebraKind::Lie3) != (astar.kind == AlgebraKind::Lie3) {
            return Err(PairError::MixedLie {
                a: a.kind,
                astar: astar.kind,
            });
        }
        Ok(Self { a, astar })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn variant(&self) -> CocycleVariant {
        CocycleVariant::for_kind(self.a.kind)
    }

    fn check_variant(&self, variant: CocycleVariant) -> Result<(), PairError> {
        let lie_pair = self.a.kind == AlgebraKind::Lie3;
        if (variant == CocycleVariant::Lie) != lie_pair {
            return Err(PairError::VariantMismatch {
                variant,
                a: self.a.kind,
                astar: self.astar.kind,
            });
        }
        Ok(())
    }
}

/// `γ(e_i)` for every basis index, zero images included.
pub fn gamma_of(astar: &Sc3) -> BTreeMap<usize, Tensor3Element> {
    let n = astar.dim();
    let mut out: BTreeMap<usize, Tensor3Element> = (1..=n).map(|i| (i, Tensor3Element::zero(n))).collect();
    for (&[j, k, m, i], v) in astar.entries() {
        out.get_mut(&i).expect("in range").entries.insert([j, k, m], v.clone());
    }
    out
}

pub const COCYCLE_LABELS: [&str; 6] = ["i", "s", "n", "j", "k", "m"];

fn rhs_patterns(variant: CocycleVariant) -> Vec<(&'static str, &'static str)> {
    // (dual pattern, algebra pattern)
    let first = [("Jkmi", "Jsnj"), ("jKmi", "Ksnk"), ("jkMi", "Msnm")];
    let second = [("Jkms", "iJnj"), ("jKms", "iKnk"), ("jkMs", "iMnm")];
    let third = [("Jkmn", "isJj"), ("jKmn", "isKk"), ("jkMn", "isMm")];
    match variant {
        CocycleVariant::First => first.to_vec(),
        CocycleVariant::Second => second.to_vec(),
        CocycleVariant::Third => third.to_vec(),
        CocycleVariant::Lie => first.iter().chain(&second).chain(&third).copied().collect(),
    }
}

/// Tensor-form residual `R(i,s,n,j,k,m)` for algebra tensor `f` and dual
/// tensor `g`, with no kind checks.
pub fn cocycle_tensor(f: &Sc3, g: &Sc3, variant: CocycleVariant) -> Residual {
    let mut terms = vec![(false, "isnp", f, "jkmp", g)];
    for (pg, pf) in rhs_patterns(variant) {
        terms.push((true, pg, g, pf, f));
    }
    Residual::new(&COCYCLE_LABELS, signed_sum(&terms, "isnjkm"))
}

/// The same residual assembled from slice-matrix products: for each
/// `(i, s, j, k)` an `n × m` matrix.
pub fn cocycle_matrix(f: &Sc3, g: &Sc3, variant: CocycleVariant) -> Residual {
    let dim = f.dim();
    let chi = |t: &Sc3, a, b| slice_chi(t, a, b).expect("in range");
    let y = |t: &Sc3, a, b| slice_y(t, a, b).expect("in range");
    let yp = |t: &Sc3, a, b| slice_y_prime(t, a, b).expect("in range");
    let mul = |a: &Matrix, b: &Matrix| a.matmul(b).expect("square");
    let sum_scaled = |coeffs: &dyn Fn(usize) -> crate::Scalar, mats: &dyn Fn(usize) -> Matrix| {
        (1..=dim).fold(Matrix::zeros(dim, dim), |acc, x| {
            acc.add(&mats(x).scale(&coeffs(x))).expect("square")
        })
    };

    let rhs_first = |i, s, j, k| {
        let chit = chi(g, j, k);
        mul(&yp(f, s, j).transpose(), &yp(g, k, i))
            .add(&mul(&yp(f, s, k).transpose(), &y(g, j, i)))
            .and_then(|m| m.add(&sum_scaled(&|x| chit.get(x, i).clone(), &|x| chi(f, x, s))))
            .expect("square")
    };
    let rhs_second = |i, s, j, k| {
        let chit = chi(g, j, k);
        mul(&y(f, i, j).transpose(), &yp(g, k, s))
            .add(&mul(&y(f, i, k).transpose(), &y(g, j, s)))
            .and_then(|m| m.add(&sum_scaled(&|x| chit.get(x, s).clone(), &|x| chi(f, i, x))))
            .expect("square")
    };
    let rhs_third = |i, s, j, k| {
        let chi_is = chi(f, i, s);
        sum_scaled(&|x| chi_is.get(x, j).clone(), &|x| chi(g, x, k).transpose())
            .add(&sum_scaled(&|x| chi_is.get(x, k).clone(), &|x| {
                chi(g, j, x).transpose()
            }))
            .and_then(|m| m.add(&mul(&chi(g, j, k).transpose(), &chi_is)))
            .expect("square")
    };

    let mut entries = BTreeMap::new();
    for i in 1..=dim {
        for s in 1..=dim {
            for j in 1..=dim {
                for k in 1..=dim {
                    let lhs = mul(&chi(f, i, s), &chi(g, j, k).transpose());
                    let rhs = match variant {
                        CocycleVariant::First => rhs_first(i, s, j, k),
                        CocycleVariant::Second => rhs_second(i, s, j, k),
                        CocycleVariant::Third => rhs_third(i, s, j, k),
                        CocycleVariant::Lie => rhs_first(i, s, j, k)
                            .add(&rhs_second(i, s, j, k))
                            .and_then(|m| m.add(&rhs_third(i, s, j, k)))
                            .expect("square"),
                    };
                    let res = lhs.sub(&rhs).expect("square");
                    for n in 1..=dim {
                        for m in 1..=dim {
                            let v = res.get(n, m);
                            if !v.is_zero() {
                                entries.insert(vec![i, s, n, j, k, m], v.clone());
                            }
                        }
                    }
                }
            }
        }
    }
    Residual::new(&COCYCLE_LABELS, entries)
}

pub fn cocycle_residual_tensor(pair: &BialgebraPair, variant: CocycleVariant) -> Result<Residual, PairError> {
    pair.check_variant(variant)?;
    Ok(cocycle_tensor(&pair.a.sc, &pair.astar.sc, variant))
}

pub fn cocycle_residual_matrix(pair: &BialgebraPair, variant: CocycleVariant) -> Result<Residual, PairError> {
    pair.check_variant(variant)?;
    Ok(cocycle_matrix(&pair.a.sc, &pair.astar.sc, variant))
}

/// Pass iff both algebras satisfy their identities and the cocycle
/// condition selected by the algebra's kind holds identically.
pub fn pair_check(pair: &BialgebraPair) -> Report {
    let mut report = Report::new(format!("pair {} / {}", pair.a.name, pair.astar.name));
    report.absorb(check(&pair.a));
    report.absorb(check(&pair.astar));
    let variant = pair.variant();
    let residual = cocycle_tensor(&pair.a.sc, &pair.astar.sc, variant);
    report.push(Stage::from_residual(
        format!("1-cocycle condition (variant {variant})"),
        &residual,
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Scalar;
    use crate::fixtures;

    fn pair(a: Algebra3, b: Algebra3) -> BialgebraPair {
        BialgebraPair::new(a, b).unwrap()
    }

    #[test]
    fn gamma_of_d1() {
        let gamma = gamma_of(&fixtures::d1_second().sc);
        let b = Scalar::param("b");
        assert!(gamma[&1].is_zero());
        assert_eq!(gamma[&2].entries, BTreeMap::from([([1, 1, 1], b.clone())]));
        assert_eq!(
            gamma[&3].entries,
            BTreeMap::from([([1, 1, 1], Scalar::param("a")), ([1, 2, 1], b)])
        );
        assert!(gamma_of(&Sc3::zero(3)).values().all(Tensor3Element::is_zero));
    }

    #[test]
    fn gamma_of_lie_dual() {
        let gamma = gamma_of(&fixtures::db_lie_first().sc);
        let e1 = &gamma[&1];
        assert_eq!(e1.entries.len(), 6);
        assert_eq!(e1.get(1, 2, 4), Scalar::param("b"));
        assert_eq!(e1.get(2, 1, 4), -Scalar::param("b"));
        assert_eq!(e1.get(4, 2, 1), -Scalar::param("b"));
    }

    #[test]
    fn example_pairs_pass() {
        for (a, d) in [
            (fixtures::a1(), fixtures::d1_second()),
            (fixtures::a1(), fixtures::d1_third()),
            (fixtures::a2(), fixtures::d2_first()),
            (fixtures::a2(), fixtures::d2_second()),
            (fixtures::a2(), fixtures::d2_third()),
            (fixtures::l4(), fixtures::db_lie_first()),
            (fixtures::l4(), fixtures::db_lie_second()),
        ] {
            let p = pair(a, d);
            let report = pair_check(&p);
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn self_pairing_of_a1_fails() {
        let a1 = fixtures::a1();
        let report = pair_check(&pair(a1.clone(), a1));
        assert!(!report.passed());
        assert!(report.stages.last().unwrap().residual.is_some());
    }

    #[test]
    fn lie_dual_fails_single_variants() {
        // The Lie condition is the sum of the three; individually they fail.
        let (f, g) = (fixtures::l4().sc, fixtures::db_lie_first().sc);
        assert!(cocycle_tensor(&f, &g, CocycleVariant::Lie).is_zero());
        for v in [CocycleVariant::First, CocycleVariant::Second, CocycleVariant::Third] {
            assert!(!cocycle_tensor(&f, &g, v).is_zero());
        }
    }

    #[test]
    fn matrix_form_matches_tensor_form() {
        let f = fixtures::a1().sc;
        let g = fixtures::d1_second().sc;
        let h = Sc3::from_ints(3, &[([1, 2, 3, 1], 2), ([2, 1, 1, 3], -1), ([3, 3, 1, 2], 1)]).unwrap();
        for variant in CocycleVariant::ALL {
            assert_eq!(
                cocycle_matrix(&f, &g, variant),
                cocycle_tensor(&f, &g, variant),
                "{variant}"
            );
            let t = cocycle_tensor(&f, &h, variant);
            assert!(!t.is_zero());
            assert_eq!(cocycle_matrix(&f, &h, variant), t, "{variant}");
        }
    }

    #[test]
    fn zero_algebra_gives_zero_residual() {
        let g = fixtures::d1_second().sc;
        for variant in CocycleVariant::ALL {
            assert!(cocycle_tensor(&Sc3::zero(3), &g, variant).is_zero());
            assert!(cocycle_matrix(&Sc3::zero(3), &Sc3::zero(3), variant).is_zero());
        }
    }

    #[test]
    fn pair_validation() {
        assert!(matches!(
            BialgebraPair::new(fixtures::a1(), fixtures::l4()),
            Err(PairError::DimensionMismatch { .. })
        ));
        let lie3 = Algebra3::new("z", Sc3::zero(3), AlgebraKind::Lie3).unwrap();
        assert!(matches!(
            BialgebraPair::new(fixtures::a1(), lie3),
            Err(PairError::MixedLie { .. })
        ));
        let p = pair(fixtures::a1(), fixtures::d1_second());
        assert!(cocycle_residual_tensor(&p, CocycleVariant::Lie).is_err());
        assert!(cocycle_residual_matrix(&p, CocycleVariant::First).unwrap().is_zero());
    }
}
