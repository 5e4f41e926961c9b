//! Exterior-algebra combinatorics: strictly increasing multi-indices,
//! alternating elements with `Scalar` coefficients, wedge products, and the
//! merge-permutation sign conventions used by the determinantal forms.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::scalar::Scalar;
use crate::{Error, Result};

/// Strictly increasing tuple of 1-based indices; length is the exterior
/// degree of the basis element it labels.
pub type MultiIndex = Vec<usize>;

/// Number of inversions between two index lists: pairs `(x in a, y in b)`
/// with `x > y`. For disjoint sorted tuples this is the parity-determining
/// count of the merge permutation.
pub fn inv_count(a: &[usize], b: &[usize]) -> usize {
    let mut count = 0;
    for &x in a {
        for &y in b {
            if x > y {
                count += 1;
            }
        }
    }
    count
}

/// Sign of the permutation sorting the concatenation of two disjoint
/// strictly increasing tuples, together with the sorted union. `None` when
/// the tuples share an index (the wedge vanishes).
pub fn merge_indices(a: &[usize], b: &[usize]) -> Option<(MultiIndex, i64)> {
    if a.iter().any(|x| b.contains(x)) {
        return None;
    }
    let mut merged: MultiIndex = a.iter().chain(b.iter()).copied().collect();
    merged.sort_unstable();
    let sign = if inv_count(a, b) % 2 == 0 { 1 } else { -1 };
    Some((merged, sign))
}

/// Complement of a strictly increasing tuple inside `{1, ..., n}`.
pub fn complement(idx: &[usize], n: usize) -> MultiIndex {
    (1..=n).filter(|i| !idx.contains(i)).collect()
}

/// All strictly increasing k-tuples over `{1, ..., n}` in lexicographic
/// order.
pub fn subsets(n: usize, k: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur: MultiIndex = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let remaining = k - cur.len();
        for i in start..=n {
            if n - i + 1 < remaining {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 1, &mut cur, &mut out);
    out
}

/// Sign of the permutation taking `src` to `dst`. Errors when `dst` is not
/// a permutation of `src`.
pub fn perm_sign(src: &[usize], dst: &[usize]) -> Result<i64> {
    if src.len() != dst.len() {
        return Err(Error::NotAPermutation);
    }
    // A repeated value makes the sign ill-defined: the two matchings of the
    // equal entries differ by a transposition.
    for i in 0..src.len() {
        for j in i + 1..src.len() {
            if src[i] == src[j] {
                return Err(Error::NotAPermutation);
            }
        }
    }
    let mut used = alloc::vec![false; src.len()];
    let mut perm = Vec::with_capacity(src.len());
    for &d in dst {
        let Some(p) = src
            .iter()
            .enumerate()
            .position(|(i, &s)| s == d && !used[i])
        else {
            return Err(Error::NotAPermutation);
        };
        used[p] = true;
        perm.push(p);
    }
    let mut inv = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    Ok(if inv % 2 == 0 { 1 } else { -1 })
}

/// Element of the exterior algebra in a fixed degree: a sparse map from
/// strictly increasing multi-indices to `Scalar` coefficients. Serves both
/// for polyvectors and for covector framings; the basis interpretation is
/// the caller's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorElement {
    n: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl ExteriorElement {
    /// Zero element. A degree above `n` is allowed; such an element is
    /// identically zero (no strictly increasing tuple exists), which lets
    /// wedge powers saturate to zero instead of erroring.
    pub fn zero(n: usize, degree: usize) -> Self {
        ExteriorElement { n, degree, terms: BTreeMap::new() }
    }

    /// Basis element `e_I` with coefficient 1 (arity-0 scalar).
    pub fn basis(n: usize, idx: &[usize]) -> Self {
        let mut el = ExteriorElement::zero(n, idx.len());
        el.insert_add(idx.to_vec(), Scalar::from_int(1, 0));
        el
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[usize]) -> Scalar {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(0))
    }

    pub fn insert_add(&mut self, idx: MultiIndex, c: Scalar) {
        assert_eq!(idx.len(), self.degree, "multi-index length must equal degree");
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]), "multi-index not strictly increasing");
        debug_assert!(idx.iter().all(|&i| 1 <= i && i <= self.n), "index out of range");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &ExteriorElement) -> ExteriorElement {
        assert_eq!(self.n, other.n);
        assert_eq!(self.degree, other.degree, "cannot add different degrees");
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.insert_add(idx.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> ExteriorElement {
        ExteriorElement {
            n: self.n,
            degree: self.degree,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> ExteriorElement {
        let mut out = ExteriorElement::zero(self.n, self.degree);
        for (idx, c) in &self.terms {
            out.insert_add(idx.clone(), c * s);
        }
        out
    }

    pub fn scale_int(&self, w: i64) -> ExteriorElement {
        self.scale(&Scalar::from_int(w, 0))
    }

    /// Graded-anticommutative product; terms with a repeated index vanish,
    /// so a product of total degree above `n` is zero.
    pub fn wedge(&self, other: &ExteriorElement) -> ExteriorElement {
        assert_eq!(self.n, other.n);
        let mut out = ExteriorElement::zero(self.n, self.degree + other.degree);
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                if let Some((merged, sign)) = merge_indices(ia, ib) {
                    let coeff = &(ca * cb) * &Scalar::from_int(sign, 0);
                    out.insert_add(merged, coeff);
                }
            }
        }
        out
    }

    /// Wedge of degree-1 vectors given by coordinates; used for
    /// tautological framings.
    pub fn from_vector(n: usize, v: &[Scalar]) -> Self {
        assert_eq!(v.len(), n);
        let mut el = ExteriorElement::zero(n, 1);
        for (i, c) in v.iter().enumerate() {
            el.insert_add(alloc::vec![i + 1], c.clone());
        }
        el
    }
}
