//! Sparse two-operand index contraction, the workhorse behind all residuals.
//!
//! Operands are labelled by one ASCII letter per slot, Einstein style:
//! letters shared by both operands and absent from the output are summed.

use std::collections::{BTreeMap, HashMap};

use crate::exactmath::Scalar;
use crate::structure::Sc3;

pub(crate) type SparseTensor = BTreeMap<Vec<usize>, Scalar>;

pub(crate) struct Operand<'a> {
    pattern: &'a [u8],
    entries: Vec<(&'a [usize], &'a Scalar)>,
}

impl<'a> Operand<'a> {
    pub(crate) fn sc3(pattern: &'a str, f: &'a Sc3) -> Self {
        debug_assert_eq!(pattern.len(), 4);
        Self {
            pattern: pattern.as_bytes(),
            entries: f.entries().map(|(k, v)| (k.as_slice(), v)).collect(),
        }
    }

    pub(crate) fn sparse<K: AsRef<[usize]>>(pattern: &'a str, map: &'a BTreeMap<K, Scalar>) -> Self {
        Self {
            pattern: pattern.as_bytes(),
            entries: map.iter().map(|(k, v)| (k.as_ref(), v)).collect(),
        }
    }
}

fn bind(pattern: &[u8], index: &[usize], slots: &mut [usize; 128]) -> bool {
    for (&letter, &value) in pattern.iter().zip(index) {
        let slot = &mut slots[letter as usize];
        if *slot != 0 && *slot != value {
            return false;
        }
        *slot = value;
    }
    true
}

/// `acc[out] += ± Σ a[pa] * b[pb]` over all letters not in `out`.
pub(crate) fn accumulate(acc: &mut SparseTensor, negate: bool, a: &Operand, b: &Operand, out: &str) {
    let shared: Vec<u8> = a
        .pattern
        .iter()
        .copied()
        .filter(|l| b.pattern.contains(l))
        .fold(Vec::new(), |mut v, l| {
            if !v.contains(&l) {
                v.push(l);
            }
            v
        });
    let shared_key = |slots: &[usize; 128]| -> Vec<usize> { shared.iter().map(|&l| slots[l as usize]).collect() };

    let mut by_shared: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (idx, (index, _)) in b.entries.iter().enumerate() {
        let mut slots = [0usize; 128];
        if bind(b.pattern, index, &mut slots) {
            by_shared.entry(shared_key(&slots)).or_default().push(idx);
        }
    }

    let out = out.as_bytes();
    for (index_a, value_a) in &a.entries {
        let mut slots_a = [0usize; 128];
        if !bind(a.pattern, index_a, &mut slots_a) {
            continue;
        }
        let Some(matches) = by_shared.get(&shared_key(&slots_a)) else {
            continue;
        };
        for &idx in matches {
            let (index_b, value_b) = b.entries[idx];
            let mut slots = slots_a;
            if !bind(b.pattern, index_b, &mut slots) {
                continue;
            }
            let key: Vec<usize> = out
                .iter()
                .map(|&l| {
                    let v = slots[l as usize];
                    debug_assert!(v != 0, "output letter {} unbound", l as char);
                    v
                })
                .collect();
            let product = *value_a * value_b;
            let slot = acc.entry(key).or_default();
            if negate {
                *slot -= &product;
            } else {
                *slot += &product;
            }
        }
    }
    acc.retain(|_, v| !v.is_zero());
}

/// Sum of signed contraction terms `±(pa·pb)` of two 4-slot tensors.
pub(crate) fn signed_sum(terms: &[(bool, &str, &Sc3, &str, &Sc3)], out: &str) -> SparseTensor {
    let mut acc = SparseTensor::new();
    for &(negate, pa, a, pb, b) in terms {
        accumulate(&mut acc, negate, &Operand::sc3(pa, a), &Operand::sc3(pb, b), out);
    }
    acc
}
