//! Structure-constant tensors and the slice matrices built from them.
//!
//! Indices are 1-based everywhere. A dual tensor f̃^{jkm}_p is stored in
//! the same [`Sc3`] container under the key `(j, k, m, p)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::exactmath::{rational, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("entry ({i},{j},{k},{m}) conflicts with the antisymmetric completion of another entry")]
    ConflictingEntry { i: usize, j: usize, k: usize, m: usize },
}

fn check_index(index: usize, dim: usize) -> Result<(), StructureError> {
    if index == 0 || index > dim {
        Err(StructureError::IndexOutOfRange { index, dim })
    } else {
        Ok(())
    }
}

/// The six permutations of three slots with their signs.
pub const PERMUTATIONS3: [([usize; 3], i64); 6] = [
    ([0, 1, 2], 1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
    ([1, 0, 2], -1),
    ([0, 2, 1], -1),
    ([2, 1, 0], -1),
];

/// Rank-4 structure-constant tensor `f_{ijk}^m`, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sc3 {
    dim: usize,
    entries: BTreeMap<[usize; 4], Scalar>,
}

impl Sc3 {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a tensor from `((i, j, k, m), value)` pairs; repeated keys add up.
    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = ([usize; 4], Scalar)>,
    ) -> Result<Self, StructureError> {
        let mut out = Self::zero(dim);
        for (key, value) in entries {
            out.add_at(key, &value)?;
        }
        Ok(out)
    }

    /// Convenience constructor for integer tables such as fixtures.
    pub fn from_ints(dim: usize, entries: &[([usize; 4], i64)]) -> Result<Self, StructureError> {
        Self::from_entries(dim, entries.iter().map(|(k, v)| (*k, Scalar::from_int(*v))))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize, m: usize) -> Scalar {
        self.entries.get(&[i, j, k, m]).cloned().unwrap_or_default()
    }

    pub fn entry(&self, key: &[usize; 4]) -> Option<&Scalar> {
        self.entries.get(key)
    }

    pub fn set(&mut self, key: [usize; 4], value: Scalar) -> Result<(), StructureError> {
        for idx in key {
            check_index(idx, self.dim)?;
        }
        if value.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
        Ok(())
    }

    pub fn add_at(&mut self, key: [usize; 4], value: &Scalar) -> Result<(), StructureError> {
        let current = self.entries.get(&key).cloned().unwrap_or_default();
        self.set(key, &current + value)
    }

    /// Nonzero entries in lexicographic index order.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize; 4], &Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn params(&self) -> BTreeSet<String> {
        self.entries.values().flat_map(Scalar::params).collect()
    }

    pub fn is_numeric(&self) -> bool {
        self.entries.values().all(Scalar::is_constant)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Sc3 {
        Sc3 {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (*k, f(v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Sc3 {
        self.map(|v| v * factor)
    }

    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Sc3 {
        self.map(|v| v.eval(assignment))
    }

    pub fn substitute(&self, assignment: &BTreeMap<String, Scalar>) -> Sc3 {
        self.map(|v| v.substitute(assignment))
    }

    pub fn add(&self, other: &Sc3) -> Result<Sc3, StructureError> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Sc3) -> Result<Sc3, StructureError> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Sc3, negate: bool) -> Result<Sc3, StructureError> {
        if self.dim != other.dim {
            return Err(StructureError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let mut out = self.clone();
        for (k, v) in &other.entries {
            let v = if negate { -v } else { v.clone() };
            out.add_at(*k, &v)?;
        }
        Ok(out)
    }

    /// Relabels lower slots: the result satisfies
    /// `g[x_0, x_1, x_2] = f[x_{perm[0]}, x_{perm[1]}, x_{perm[2]}]`.
    pub fn permute_slots(&self, perm: [usize; 3]) -> Sc3 {
        let mut entries = BTreeMap::new();
        for (&[i, j, k, m], v) in &self.entries {
            let src = [i, j, k];
            let mut key = [0; 3];
            for (pos, &slot) in perm.iter().enumerate() {
                key[slot] = src[pos];
            }
            entries.insert([key[0], key[1], key[2], m], v.clone());
        }
        Sc3 { dim: self.dim, entries }
    }

    /// Fills in `f_{σ(ijk)}^m = sign(σ) f_{ijk}^m` for every listed entry.
    /// Fails if two listed entries disagree, or an entry has a repeated
    /// lower index with a nonzero value.
    pub fn antisymmetric_completion(&self) -> Result<Sc3, StructureError> {
        let mut out = Sc3::zero(self.dim);
        for (&[i, j, k, m], v) in &self.entries {
            if i == j || j == k || i == k {
                return Err(StructureError::ConflictingEntry { i, j, k, m });
            }
            let src = [i, j, k];
            for (perm, sign) in PERMUTATIONS3 {
                let key = [src[perm[0]], src[perm[1]], src[perm[2]], m];
                let value = v.scale(&rational(sign, 1));
                match out.entries.get(&key) {
                    Some(existing) if *existing != value => {
                        return Err(StructureError::ConflictingEntry { i, j, k, m });
                    }
                    _ => {
                        out.entries.insert(key, value);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Sc3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "(zero tensor, dim {})", self.dim);
        }
        for (idx, ([i, j, k, m], v)) in self.entries.iter().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({i},{j},{k};{m})={v}")?;
        }
        Ok(())
    }
}

/// `g_{ijk}^m = (1/6) Σ_σ sign(σ) f_{σ(ijk)}^m`.
pub fn antisymmetrize(f: &Sc3) -> Sc3 {
    let sixth = rational(1, 6);
    let mut out = Sc3::zero(f.dim);
    for (&[i, j, k, m], v) in &f.entries {
        let src = [i, j, k];
        for (perm, sign) in PERMUTATIONS3 {
            // f at src contributes to g at the key whose σ-image is src.
            let mut key = [0; 3];
            for pos in 0..3 {
                key[perm[pos]] = src[pos];
            }
            let contribution = v.scale(&(&sixth * rational(sign, 1)));
            out.add_at([key[0], key[1], key[2], m], &contribution)
                .expect("indices already validated");
        }
    }
    out
}

pub fn is_antisymmetric(f: &Sc3) -> bool {
    f.entries.iter().all(|(&[i, j, k, m], v)| {
        let src = [i, j, k];
        PERMUTATIONS3.iter().all(|(perm, sign)| {
            let image = f.get(src[perm[0]], src[perm[1]], src[perm[2]], m);
            image == v.scale(&rational(*sign, 1))
        })
    })
}

/// Dense matrix of scalars with 1-based accessors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 1..=rows {
            for c in 1..=cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[(r - 1) * self.cols + (c - 1)]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.data[(r - 1) * self.cols + (c - 1)] = value;
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix, StructureError> {
        if self.cols != other.rows {
            return Err(StructureError::DimensionMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 1..=self.rows {
            for k in 1..=self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 1..=other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = (r - 1) * out.cols + (c - 1);
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, StructureError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, StructureError> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix, StructureError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(StructureError::DimensionMismatch {
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, factor: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 1..=self.rows {
            let row: Vec<String> = (1..=self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Element of `A⊗A⊗A`, e.g. a value `γ(e_i)` of a cocommutator.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tensor3Element {
    pub dim: usize,
    pub entries: BTreeMap<[usize; 3], Scalar>,
}

impl Tensor3Element {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn get(&self, j: usize, k: usize, m: usize) -> Scalar {
        self.entries.get(&[j, k, m]).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for Tensor3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (idx, ([j, k, m], v)) in self.entries.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({v})*e{j}⊗e{k}⊗e{m}")?;
        }
        Ok(())
    }
}

fn check_pair(f: &Sc3, a: usize, b: usize) -> Result<(), StructureError> {
    check_index(a, f.dim)?;
    check_index(b, f.dim)
}

/// `(χ_{is})_n^p = f_{isn}^p`: rows `n`, columns `p`.
pub fn slice_chi(f: &Sc3, i: usize, s: usize) -> Result<Matrix, StructureError> {
    check_pair(f, i, s)?;
    Ok(Matrix::from_fn(f.dim, f.dim, |n, p| f.get(i, s, n, p)))
}

/// `(χ'_{si})_n^p = f_{isn}^p`, i.e. `slice_chi(f, i, s)`.
pub fn slice_chi_prime(f: &Sc3, s: usize, i: usize) -> Result<Matrix, StructureError> {
    slice_chi(f, i, s)
}

/// `(Y_i^p)_{sn} = f_{isn}^p`: rows `s`, columns `n`.
pub fn slice_y(f: &Sc3, i: usize, p: usize) -> Result<Matrix, StructureError> {
    check_pair(f, i, p)?;
    Ok(Matrix::from_fn(f.dim, f.dim, |s, n| f.get(i, s, n, p)))
}

/// `(Y'_s^p)_{in} = f_{isn}^p`: rows `i`, columns `n`.
pub fn slice_y_prime(f: &Sc3, s: usize, p: usize) -> Result<Matrix, StructureError> {
    check_pair(f, s, p)?;
    Ok(Matrix::from_fn(f.dim, f.dim, |i, n| f.get(i, s, n, p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn chi_slices_of_a1() {
        let a1 = fixtures::a1().sc;
        let m = slice_chi(&a1, 2, 3).unwrap();
        let nonzero: Vec<_> = (1..=3)
            .flat_map(|r| (1..=3).map(move |c| (r, c)))
            .filter(|&(r, c)| !m.get(r, c).is_zero())
            .collect();
        assert_eq!(nonzero, vec![(3, 1)]);
        assert_eq!(*m.get(3, 1), Scalar::one());

        let m33 = slice_chi(&a1, 3, 3).unwrap();
        assert_eq!(*m33.get(3, 2), Scalar::one());
        assert!(m33.get(2, 1).is_zero());
        assert_eq!(slice_chi_prime(&a1, 3, 2).unwrap(), m);
        assert!(slice_chi(&Sc3::zero(3), 1, 2).unwrap().is_zero());
    }

    #[test]
    fn primed_chi_on_antisymmetric_tensor() {
        let l4 = fixtures::l4().sc;
        for i in 1..=4 {
            for s in 1..=4 {
                if i != s {
                    let lhs = slice_chi_prime(&l4, s, i).unwrap();
                    let rhs = slice_chi(&l4, s, i).unwrap().scale(&Scalar::from_int(-1));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn y_slice_and_reassembly() {
        let a1 = fixtures::a1().sc;
        let y = slice_y(&a1, 2, 1).unwrap();
        assert_eq!(*y.get(3, 3), Scalar::one());
        assert!(slice_y(&Sc3::zero(2), 1, 1).unwrap().is_zero());

        let mut from_y = Sc3::zero(3);
        let mut from_chi = Sc3::zero(3);
        for i in 1..=3 {
            for p in 1..=3 {
                let y = slice_y(&a1, i, p).unwrap();
                let chi = slice_chi(&a1, i, p).unwrap();
                for r in 1..=3 {
                    for c in 1..=3 {
                        from_y.set([i, r, c, p], y.get(r, c).clone()).unwrap();
                        from_chi.set([i, p, r, c], chi.get(r, c).clone()).unwrap();
                    }
                }
            }
        }
        assert_eq!(from_y, a1);
        assert_eq!(from_chi, a1);
    }

    #[test]
    fn slice_index_errors() {
        let f = Sc3::zero(2);
        assert!(slice_chi(&f, 3, 1).is_err());
        assert!(slice_y(&f, 0, 1).is_err());
    }

    #[test]
    fn antisymmetrizer_examples() {
        let sym = Sc3::from_ints(3, &[([2, 3, 3, 1], 1)]).unwrap();
        assert!(antisymmetrize(&sym).is_zero());
        let l4 = fixtures::l4().sc;
        assert_eq!(antisymmetrize(&l4), l4);
        assert!(is_antisymmetric(&l4));
        assert!(!is_antisymmetric(&fixtures::a1().sc));
        assert!(is_antisymmetric(&Sc3::zero(3)));
    }

    #[test]
    fn completion_rejects_conflicts() {
        let bad = Sc3::from_ints(4, &[([1, 2, 3, 1], 1), ([2, 1, 3, 1], 1)]).unwrap();
        assert!(bad.antisymmetric_completion().is_err());
        let diag = Sc3::from_ints(3, &[([1, 1, 2, 1], 1)]).unwrap();
        assert!(diag.antisymmetric_completion().is_err());
        let ok = Sc3::from_ints(4, &[([1, 2, 3, 1], 1), ([2, 1, 3, 1], -1)]).unwrap();
        assert_eq!(ok.antisymmetric_completion().unwrap().nnz(), 6);
    }

    #[test]
    fn permute_slots_relabels() {
        let f = Sc3::from_ints(3, &[([1, 2, 3, 1], 5)]).unwrap();
        // g[x0,x1,x2] = f[x1,x0,x2]
        let g = f.permute_slots([1, 0, 2]);
        assert_eq!(g.get(2, 1, 3, 1), Scalar::from_int(5));
        // g[x0,x1,x2] = f[x2,x0,x1]
        let h = f.permute_slots([2, 0, 1]);
        assert_eq!(h.get(2, 3, 1, 1), Scalar::from_int(5));
    }

    #[test]
    fn matrix_product() {
        let a = Matrix::from_fn(2, 2, |r, c| Scalar::from_int((r * 10 + c) as i64));
        let id = Matrix::from_fn(2, 2, |r, c| Scalar::from_int((r == c) as i64));
        assert_eq!(a.matmul(&id).unwrap(), a);
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.sub(&a).unwrap().is_zero());
    }
}
