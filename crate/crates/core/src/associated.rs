//! The binary Leibniz algebra induced on `A⊗A` and its cocycle conditions.
//!
//! Basis pairs `e_i⊗e_j` are encoded as `I = (i-1)·n + j`, so a Leibniz
//! algebra over a base of dimension `n` has dimension `n²`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebras::{Algebra3, AlgebraKind};
use crate::contract::{accumulate, Operand, SparseTensor};
use crate::exactmath::Scalar;
use crate::report::Residual;
use crate::structure::Sc3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssociatedError {
    #[error("bracket form {form} is not available for a {kind} algebra")]
    Inadmissible { form: LeibnizForm, kind: AlgebraKind },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("unknown bracket form `{0}` (expected 1, 21, 22 or 3)")]
    UnknownForm(String),
    #[error("unknown cocycle form `{0}` (expected 7, 8, 9 or 10)")]
    UnknownCocycleForm(String),
}

/// Which Leibniz identity a binary bracket obeys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Side {
    Left,
    Right,
}

/// The four bracket constructions on `A⊗A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LeibnizForm {
    /// `[x1⊗x2, y1⊗y2] = [x1,y1,y2]⊗x2 + x1⊗[x2,y1,y2]`
    One,
    /// `[x1⊗x2, y1⊗y2] = [x1,y1,x2]⊗y2 + y1⊗[x1,y2,x2]`
    TwentyOne,
    /// `[x1⊗x2, y1⊗y2] = [y1,x1,y2]⊗x2 + x1⊗[y1,x2,y2]`
    TwentyTwo,
    /// `[x1⊗x2, y1⊗y2] = [x1,x2,y1]⊗y2 + y1⊗[x1,x2,y2]`
    Three,
}

impl LeibnizForm {
    pub const ALL: [LeibnizForm; 4] = [
        LeibnizForm::One,
        LeibnizForm::TwentyOne,
        LeibnizForm::TwentyTwo,
        LeibnizForm::Three,
    ];

    pub fn code(self) -> u32 {
        match self {
            LeibnizForm::One => 1,
            LeibnizForm::TwentyOne => 21,
            LeibnizForm::TwentyTwo => 22,
            LeibnizForm::Three => 3,
        }
    }

    pub fn side(self) -> Side {
        match self {
            LeibnizForm::One | LeibnizForm::TwentyTwo => Side::Right,
            LeibnizForm::TwentyOne | LeibnizForm::Three => Side::Left,
        }
    }

    pub fn admissible(self, kind: AlgebraKind) -> bool {
        matches!(
            (self, kind),
            (LeibnizForm::One, AlgebraKind::LeibnizFirst)
                | (
                    LeibnizForm::TwentyOne | LeibnizForm::TwentyTwo,
                    AlgebraKind::LeibnizSecond
                )
                | (LeibnizForm::Three, AlgebraKind::LeibnizThird | AlgebraKind::Lie3)
        )
    }
}

impl fmt::Display for LeibnizForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

impl FromStr for LeibnizForm {
    type Err = AssociatedError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LeibnizForm::ALL
            .into_iter()
            .find(|f| f.code().to_string() == s)
            .ok_or_else(|| AssociatedError::UnknownForm(s.to_string()))
    }
}

pub fn encode(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * n + j
}

pub fn decode(n: usize, pair: usize) -> (usize, usize) {
    ((pair - 1) / n + 1, (pair - 1) % n + 1)
}

/// Binary structure constants `c_{IJ}^K` on `A⊗A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    pub base_dim: usize,
    pub form: LeibnizForm,
    pub side: Side,
    sc2: BTreeMap<[usize; 3], Scalar>,
}

impl LeibnizAlgebra {
    pub fn dim(&self) -> usize {
        self.base_dim * self.base_dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.sc2.get(&[i, j, k]).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize; 3], &Scalar)> {
        self.sc2.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.sc2.is_empty()
    }

    /// `[e_a⊗e_b, e_c⊗e_d]` as a map from pair index to coefficient.
    pub fn bracket_pairs(&self, x: (usize, usize), y: (usize, usize)) -> BTreeMap<(usize, usize), Scalar> {
        let n = self.base_dim;
        let (i, j) = (encode(n, x.0, x.1), encode(n, y.0, y.1));
        self.sc2
            .range([i, j, 1]..=[i, j, usize::MAX])
            .map(|(&[_, _, k], v)| (decode(n, k), v.clone()))
            .collect()
    }
}

/// Builds the associated Leibniz algebra, rejecting forms that do not match
/// the algebra's kind.
pub fn associated(alg: &Algebra3, form: LeibnizForm) -> Result<LeibnizAlgebra, AssociatedError> {
    if !form.admissible(alg.kind) {
        return Err(AssociatedError::Inadmissible { form, kind: alg.kind });
    }
    Ok(associated_unchecked(&alg.sc, form))
}

/// The bracket of `form` built from any tensor, whatever identity it obeys.
pub fn associated_unchecked(f: &Sc3, form: LeibnizForm) -> LeibnizAlgebra {
    let n = f.dim();
    let mut sc2: BTreeMap<[usize; 3], Scalar> = BTreeMap::new();
    let mut add = |(a, b): (usize, usize), (c, d): (usize, usize), (p, q): (usize, usize), v: &Scalar| {
        let slot = sc2
            .entry([encode(n, a, b), encode(n, c, d), encode(n, p, q)])
            .or_default();
        *slot += v;
    };
    for (&[x, y, z, p], v) in f.entries() {
        for w in 1..=n {
            match form {
                LeibnizForm::One => {
                    // f_{acd}^p e_p⊗e_b + f_{bcd}^p e_a⊗e_p
                    add((x, w), (y, z), (p, w), v);
                    add((w, x), (y, z), (w, p), v);
                }
                LeibnizForm::TwentyOne => {
                    // f_{acb}^p e_p⊗e_d + f_{adb}^p e_c⊗e_p
                    add((x, z), (y, w), (p, w), v);
                    add((x, z), (w, y), (w, p), v);
                }
                LeibnizForm::TwentyTwo => {
                    // f_{cad}^p e_p⊗e_b + f_{cbd}^p e_a⊗e_p
                    add((y, w), (x, z), (p, w), v);
                    add((w, y), (x, z), (w, p), v);
                }
                LeibnizForm::Three => {
                    // f_{abc}^p e_p⊗e_d + f_{abd}^p e_c⊗e_p
                    add((x, y), (z, w), (p, w), v);
                    add((x, y), (w, z), (w, p), v);
                }
            }
        }
    }
    sc2.retain(|_, v| !v.is_zero());
    LeibnizAlgebra {
        base_dim: n,
        form,
        side: form.side(),
        sc2,
    }
}

pub const LEIBNIZ_LABELS: [&str; 4] = ["X", "Y", "Z", "K"];

/// Right: `[[X,Y],Z] − [[X,Z],Y] − [X,[Y,Z]]`.
/// Left: `[X,[Y,Z]] − [[X,Y],Z] − [Y,[X,Z]]`.
pub fn leibniz_residual(g: &LeibnizAlgebra) -> Residual {
    let terms: [(bool, &str, &str); 3] = match g.side {
        Side::Right => [(false, "IJP", "PKM"), (true, "IKP", "PJM"), (true, "JKP", "IPM")],
        Side::Left => [(false, "JKP", "IPM"), (true, "IJP", "PKM"), (true, "IKP", "JPM")],
    };
    let mut acc = SparseTensor::new();
    for (neg, pa, pb) in terms {
        accumulate(
            &mut acc,
            neg,
            &Operand::sparse(pa, &g.sc2),
            &Operand::sparse(pb, &g.sc2),
            "IJKM",
        );
    }
    Residual::new(&LEIBNIZ_LABELS, acc)
}

/// A cobracket `δ(e_I) = Σ D[I,P,Q] e_P⊗e_Q` on a Leibniz algebra of
/// dimension `dim`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeltaMap {
    pub dim: usize,
    entries: BTreeMap<[usize; 3], Scalar>,
}

impl DeltaMap {
    pub fn new(dim: usize, entries: BTreeMap<[usize; 3], Scalar>) -> Self {
        Self {
            dim,
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// δ dual to the bracket of `gstar`: `D[u, I, J] = c*_{IJ}^u`.
    pub fn transpose_of(gstar: &LeibnizAlgebra) -> Self {
        Self::new(
            gstar.dim(),
            gstar.sc2.iter().map(|(&[i, j, u], v)| ([u, i, j], v.clone())).collect(),
        )
    }

    pub fn get(&self, i: usize, p: usize, q: usize) -> Scalar {
        self.entries.get(&[i, p, q]).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize; 3], &Scalar)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `δ(e_I)` as a map `(P, Q) → coefficient`.
    pub fn image(&self, i: usize) -> BTreeMap<(usize, usize), Scalar> {
        self.entries
            .range([i, 1, 1]..=[i, usize::MAX, usize::MAX])
            .map(|(&[_, p, q], v)| ((p, q), v.clone()))
            .collect()
    }
}

/// The four shapes a Leibniz 1-cocycle condition can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CocycleForm {
    /// `δ[X,Y] = (ad^l_X ⊗ 1)δ(Y) + (ad^r_Y ⊗ 1)δ(X)`
    Seven,
    /// `δ[X,Y] = (1 ⊗ ad^r_Y + ad^r_Y ⊗ 1)δ(X)`
    Eight,
    /// `δ[X,Y] = (1 ⊗ ad^l_X + ad^l_X ⊗ 1)δ(Y)`
    Nine,
    /// `δ[X,Y] = (1 ⊗ ad^l_X)δ(Y) + (1 ⊗ ad^r_Y)δ(X)`
    Ten,
}

impl CocycleForm {
    pub const ALL: [CocycleForm; 4] = [
        CocycleForm::Seven,
        CocycleForm::Eight,
        CocycleForm::Nine,
        CocycleForm::Ten,
    ];

    pub fn code(self) -> u32 {
        match self {
            CocycleForm::Seven => 7,
            CocycleForm::Eight => 8,
            CocycleForm::Nine => 9,
            CocycleForm::Ten => 10,
        }
    }
}

impl fmt::Display for CocycleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

impl FromStr for CocycleForm {
    type Err = AssociatedError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CocycleForm::ALL
            .into_iter()
            .find(|f| f.code().to_string() == s)
            .ok_or_else(|| AssociatedError::UnknownCocycleForm(s.to_string()))
    }
}

pub const COCYCLE_LABELS: [&str; 4] = ["X", "Y", "P", "Q"];

/// Residual of `form` for `δ` on `g`, entry `(X, Y, P, Q)` being the
/// `e_P⊗e_Q` coefficient of LHS − RHS on basis elements `e_X, e_Y`.
pub fn cocycle_residual(g: &LeibnizAlgebra, delta: &DeltaMap, form: CocycleForm) -> Result<Residual, AssociatedError> {
    if g.dim() != delta.dim {
        return Err(AssociatedError::DimensionMismatch {
            left: g.dim(),
            right: delta.dim,
        });
    }
    // D operand first, bracket second; I = X, J = Y.
    let rhs: [(&str, &str); 2] = match form {
        CocycleForm::Seven => [("JpQ", "IpP"), ("IpQ", "pJP")],
        CocycleForm::Eight => [("IPq", "qJQ"), ("IpQ", "pJP")],
        CocycleForm::Nine => [("JPq", "IqQ"), ("JpQ", "IpP")],
        CocycleForm::Ten => [("JPq", "IqQ"), ("IPq", "qJQ")],
    };
    let mut acc = SparseTensor::new();
    let c = Operand::sparse;
    accumulate(&mut acc, false, &c("IJK", &g.sc2), &c("KPQ", &delta.entries), "IJPQ");
    for (pd, pc) in rhs {
        accumulate(&mut acc, true, &c(pd, &delta.entries), &c(pc, &g.sc2), "IJPQ");
    }
    Ok(Residual::new(&COCYCLE_LABELS, acc))
}

/// [`cocycle_residual`] with δ taken as the transpose of `gstar`'s bracket.
pub fn delta_cocycle_residual(
    g: &LeibnizAlgebra,
    gstar: &LeibnizAlgebra,
    form: CocycleForm,
) -> Result<Residual, AssociatedError> {
    if g.dim() != gstar.dim() {
        return Err(AssociatedError::DimensionMismatch {
            left: g.dim(),
            right: gstar.dim(),
        });
    }
    cocycle_residual(g, &DeltaMap::transpose_of(gstar), form)
}
