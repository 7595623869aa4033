//! Search for dual algebras compatible with a fixed numeric algebra.
//!
//! The cocycle condition is linear in the dual tensor, so its solution set
//! is the nullspace of an exact rational system. The dual's own identity is
//! quadratic; it is reported as polynomial constraints on the nullspace
//! coordinates `t1..td` and solved only by enumerating a finite grid.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;

use crate::algebras::{fi_residual_of, Algebra3, AlgebraKind};
use crate::bialgebra::{cocycle_tensor, CocycleVariant};
use crate::exactmath::{rational, Rational, Scalar};
use crate::structure::{Sc3, PERMUTATIONS3};

/// Largest family dimension [`grid_search`] accepts unless told otherwise.
pub const DEFAULT_MAX_DIM: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("dual search needs numeric structure constants, found parameters {0:?}")]
    SymbolicInput(Vec<String>),
    #[error("a {a} algebra cannot have a {astar} dual")]
    KindMismatch { a: AlgebraKind, astar: AlgebraKind },
    #[error("family dimension {dim} exceeds the grid-search cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("dimension mismatch: family has dimension {left}, candidate has {right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// `{-2, -1, 0, 1, 2}`.
pub fn default_grid() -> Vec<Rational> {
    (-2..=2).map(|v| rational(v, 1)).collect()
}

type SparseRow = BTreeMap<usize, Rational>;

/// Positions `(j, k, m, p)` of the unknown dual constants. For Lie3 only
/// `j < k < m` is listed; the rest follow by antisymmetry.
fn unknown_positions(dim: usize, kind: AlgebraKind) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for j in 1..=dim {
        for k in 1..=dim {
            for m in 1..=dim {
                if kind == AlgebraKind::Lie3 && !(j < k && k < m) {
                    continue;
                }
                for p in 1..=dim {
                    out.push([j, k, m, p]);
                }
            }
        }
    }
    out
}

/// Expands unknown values into a tensor, applying antisymmetry for Lie3.
fn expand(dim: usize, kind: AlgebraKind, unknowns: &[[usize; 4]], values: &[Scalar]) -> Sc3 {
    let mut out = Sc3::zero(dim);
    for (&[j, k, m, p], v) in unknowns.iter().zip(values) {
        if v.is_zero() {
            continue;
        }
        if kind == AlgebraKind::Lie3 {
            let src = [j, k, m];
            for (perm, sign) in PERMUTATIONS3 {
                let key = [src[perm[0]], src[perm[1]], src[perm[2]], p];
                out.add_at(key, &v.scale(&rational(sign, 1))).expect("in range");
            }
        } else {
            out.add_at([j, k, m, p], v).expect("in range");
        }
    }
    out
}

/// The cocycle equations as a linear system in the dual constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub dim: usize,
    pub astar_kind: AlgebraKind,
    pub variant: CocycleVariant,
    pub unknowns: Vec<[usize; 4]>,
    /// Each row is `Σ coeff · unknown = 0`, keyed by unknown position.
    pub rows: Vec<SparseRow>,
    /// Residual index `(i, s, n, j, k, m)` each row came from.
    pub origins: Vec<Vec<usize>>,
}

impl LinearSystem {
    pub fn num_unknowns(&self) -> usize {
        self.unknowns.len()
    }
}

/// Assembles one row per residual entry `(i,s,n,j,k,m)` that involves any
/// unknown, reading the cocycle residual as linear in the dual tensor.
pub fn assemble_cocycle_system(a: &Algebra3, astar_kind: AlgebraKind) -> Result<LinearSystem, SearchError> {
    if !a.sc.is_numeric() {
        return Err(SearchError::SymbolicInput(a.sc.params().into_iter().collect()));
    }
    if (a.kind == AlgebraKind::Lie3) != (astar_kind == AlgebraKind::Lie3) {
        return Err(SearchError::KindMismatch {
            a: a.kind,
            astar: astar_kind,
        });
    }
    let dim = a.dim();
    let unknowns = unknown_positions(dim, astar_kind);
    let names: Vec<Scalar> = (0..unknowns.len()).map(|i| Scalar::param(&format!("u{i}"))).collect();
    let generic = expand(dim, astar_kind, &unknowns, &names);
    let variant = CocycleVariant::for_kind(a.kind);
    let residual = cocycle_tensor(&a.sc, &generic, variant);

    let mut rows = Vec::new();
    let mut origins = Vec::new();
    for (index, value) in residual.entries() {
        let mut row = SparseRow::new();
        for (mono, coeff) in value.terms() {
            let (name, exp) = mono.factors().next().expect("linear in the unknowns");
            debug_assert_eq!(exp, 1);
            let col: usize = name[1..].parse().expect("unknown name");
            row.insert(col, coeff.clone());
        }
        rows.push(row);
        origins.push(index.clone());
    }
    Ok(LinearSystem {
        dim,
        astar_kind,
        variant,
        unknowns,
        rows,
        origins,
    })
}

/// Candidate duals: `Σ t_r basis_r` subject to `constraints = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFamily {
    pub dim: usize,
    pub astar_kind: AlgebraKind,
    pub unknowns: Vec<[usize; 4]>,
    /// Rank of the linear system.
    pub rank: usize,
    /// Index into `unknowns` of the free column behind each parameter.
    pub free: Vec<usize>,
    pub basis: Vec<Sc3>,
    pub params: Vec<String>,
    pub constraints: Vec<Scalar>,
}

impl LinearFamily {
    /// Number of free parameters `d`.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `Σ t_r basis_r` with symbolic `t_r`.
    pub fn general_member(&self) -> Sc3 {
        self.combine(&self.params.iter().map(|p| Scalar::param(p)).collect::<Vec<_>>())
    }

    pub fn combine(&self, coords: &[Scalar]) -> Sc3 {
        let mut out = Sc3::zero(self.dim);
        for (basis, t) in self.basis.iter().zip(coords) {
            if !t.is_zero() {
                out = out.add(&basis.scale(t)).expect("same dimension");
            }
        }
        out
    }

    pub fn member_at(&self, t: &[Rational]) -> Sc3 {
        self.combine(&t.iter().cloned().map(Scalar::from_rational).collect::<Vec<_>>())
    }

    fn assignment(&self, coords: &[Scalar]) -> BTreeMap<String, Scalar> {
        self.params.iter().cloned().zip(coords.iter().cloned()).collect()
    }
}

fn subtract_scaled(target: &mut SparseRow, factor: &Rational, row: &SparseRow) {
    for (col, v) in row {
        let entry = target.entry(*col).or_insert_with(Rational::zero);
        *entry -= factor * v;
        if entry.is_zero() {
            target.remove(col);
        }
    }
}

/// Exact nullspace by sparse rational Gauss-Jordan elimination: every
/// pivot column ends up with a single 1 in its own row. The basis vector
/// for free column `f` has a 1 there and minus the pivot rows' `f` entries
/// at the pivots, so the basis depends only on the input rows.
pub fn nullspace(sys: &LinearSystem) -> LinearFamily {
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for row in &sys.rows {
        let mut r = row.clone();
        while let Some((&lead, _)) = r.iter().find(|(c, _)| pivots.contains_key(c)) {
            let factor = r[&lead].clone();
            subtract_scaled(&mut r, &factor, &pivots[&lead]);
        }
        if let Some((&lead, lead_value)) = r.iter().next() {
            let inv = lead_value.recip();
            let normalized: SparseRow = r.iter().map(|(c, v)| (*c, v * &inv)).collect();
            // Keep existing pivot rows free of the new pivot column.
            for other in pivots.values_mut() {
                if let Some(f) = other.get(&lead).cloned() {
                    subtract_scaled(other, &f, &normalized);
                }
            }
            pivots.insert(lead, normalized);
        }
    }

    let n = sys.num_unknowns();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains_key(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut values = vec![Scalar::zero(); n];
            values[f] = Scalar::one();
            for (&p, row) in &pivots {
                if let Some(v) = row.get(&f) {
                    values[p] = Scalar::from_rational(-v.clone());
                }
            }
            expand(sys.dim, sys.astar_kind, &sys.unknowns, &values)
        })
        .collect::<Vec<_>>();
    let params = (1..=basis.len()).map(|r| format!("t{r}")).collect();
    LinearFamily {
        dim: sys.dim,
        astar_kind: sys.astar_kind,
        unknowns: sys.unknowns.clone(),
        rank: pivots.len(),
        free,
        basis,
        params,
        constraints: Vec::new(),
    }
}

/// Substitutes the general member into the dual's identity and keeps the
/// distinct nonzero entries, deduplicated up to a rational factor.
pub fn quadratic_constraints(mut family: LinearFamily) -> LinearFamily {
    family.constraints.clear();
    if family.basis.is_empty() {
        return family;
    }
    let residual = fi_residual_of(&family.general_member(), family.astar_kind);
    let mut seen = HashSet::new();
    for (_, value) in residual.entries() {
        let monic = value.monic();
        if seen.insert(monic.clone()) {
            family.constraints.push(monic);
        }
    }
    family
}

/// Assembles, solves and constrains in one go.
pub fn dual_family(a: &Algebra3, astar_kind: AlgebraKind) -> Result<LinearFamily, SearchError> {
    let sys = assemble_cocycle_system(a, astar_kind)?;
    Ok(quadratic_constraints(nullspace(&sys)))
}

/// Outcome of [`verify_member`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// The candidate is `Σ t_r basis_r` for these `t_r` and every
    /// constraint vanishes there.
    Member { assignment: Vec<(String, Scalar)> },
    /// No coordinates reproduce the candidate; first mismatching entry.
    OutsideSpan {
        index: [usize; 4],
        candidate: Scalar,
        span: Scalar,
    },
    /// In the span, but this constraint does not vanish.
    ConstraintViolated { constraint: usize, value: Scalar },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// Reads coordinates off the free positions, rebuilds the candidate from
/// them and checks the constraints. Candidates may be symbolic, in which
/// case everything holds as a polynomial identity.
pub fn verify_member(family: &LinearFamily, candidate: &Sc3) -> Result<Membership, SearchError> {
    if candidate.dim() != family.dim {
        return Err(SearchError::DimensionMismatch {
            left: family.dim,
            right: candidate.dim(),
        });
    }
    let coords: Vec<Scalar> = family
        .free
        .iter()
        .map(|&c| {
            let [j, k, m, p] = family.unknowns[c];
            candidate.get(j, k, m, p)
        })
        .collect();
    let rebuilt = family.combine(&coords);
    let mismatch = candidate
        .entries()
        .map(|(k, _)| *k)
        .chain(rebuilt.entries().map(|(k, _)| *k))
        .filter(|&[j, k, m, p]| candidate.get(j, k, m, p) != rebuilt.get(j, k, m, p))
        .min();
    if let Some(index @ [j, k, m, p]) = mismatch {
        return Ok(Membership::OutsideSpan {
            index,
            candidate: candidate.get(j, k, m, p),
            span: rebuilt.get(j, k, m, p),
        });
    }
    let assignment = family.assignment(&coords);
    for (idx, c) in family.constraints.iter().enumerate() {
        let value = c.substitute(&assignment);
        if !value.is_zero() {
            return Ok(Membership::ConstraintViolated { constraint: idx, value });
        }
    }
    Ok(Membership::Member {
        assignment: assignment.into_iter().collect(),
    })
}

/// A grid point satisfying every constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSolution {
    pub t: Vec<Rational>,
    pub tensor: Sc3,
}

struct CompiledConstraint {
    terms: Vec<(Rational, Vec<(usize, u32)>)>,
}

impl CompiledConstraint {
    fn eval(&self, t: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (coeff, factors) in &self.terms {
            let mut term = coeff.clone();
            for &(var, exp) in factors {
                for _ in 0..exp {
                    term *= &t[var];
                }
                if term.is_zero() {
                    break;
                }
            }
            acc += term;
        }
        acc
    }
}

/// Every `t ∈ grid^d` satisfying all constraints, in lexicographic order
/// of `t` over the sorted grid. Constraints are tested as soon as their
/// highest parameter is assigned, pruning whole subtrees.
pub fn grid_search(family: &LinearFamily, grid: &[Rational], max_dim: usize) -> Result<Vec<GridSolution>, SearchError> {
    let d = family.dimension();
    if d > max_dim {
        return Err(SearchError::DimensionCap { dim: d, cap: max_dim });
    }
    let mut grid = grid.to_vec();
    grid.sort();
    grid.dedup();

    let index: HashMap<&str, usize> = family.params.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
    let mut by_last: Vec<Vec<CompiledConstraint>> = (0..d.max(1)).map(|_| Vec::new()).collect();
    for c in &family.constraints {
        let mut last = 0;
        let terms = c
            .terms()
            .map(|(mono, coeff)| {
                let factors: Vec<(usize, u32)> = mono
                    .factors()
                    .map(|(name, exp)| {
                        let var = index[name];
                        last = last.max(var);
                        (var, exp)
                    })
                    .collect();
                (coeff.clone(), factors)
            })
            .collect();
        by_last[last].push(CompiledConstraint { terms });
    }

    let mut out = Vec::new();
    let mut t = vec![Rational::zero(); d];
    if d == 0 {
        out.push(GridSolution {
            t: Vec::new(),
            tensor: Sc3::zero(family.dim),
        });
        return Ok(out);
    }
    descend(family, &grid, &by_last, 0, &mut t, &mut out);
    Ok(out)
}

fn descend(
    family: &LinearFamily,
    grid: &[Rational],
    by_last: &[Vec<CompiledConstraint>],
    depth: usize,
    t: &mut Vec<Rational>,
    out: &mut Vec<GridSolution>,
) {
    for value in grid {
        t[depth] = value.clone();
        if by_last[depth].iter().any(|c| !c.eval(t).is_zero()) {
            continue;
        }
        if depth + 1 == t.len() {
            out.push(GridSolution {
                t: t.clone(),
                tensor: family.member_at(t),
            });
        } else {
            descend(family, grid, by_last, depth + 1, t, out);
        }
    }
}

/// Family parameters assignment helper: `t_r ↦ values[r]`.
pub fn assignment_of(family: &LinearFamily, values: &[Rational]) -> BTreeMap<String, Rational> {
    family.params.iter().cloned().zip(values.iter().cloned()).collect()
}
