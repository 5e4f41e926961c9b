//! Tropical tori, determinantal cochains, their evaluation, and their
//! period groups (closed formula plus a brute-force integration oracle).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Signed;

use crate::chains::{self, FramedCell, FramedChain};
use crate::exterior::{complement, inv_count, subsets, ExteriorElement, MultiIndex};
use crate::scalar::{det_scalar, Scalar};
use crate::{Error, Result};

/// The torus `B(Q) = R^n / Q.Z^n` with integral tangent lattice `Z^n`.
#[derive(Debug, Clone)]
pub struct TropicalTorus {
    pub n: usize,
    /// symmetric n x n matrix of scalars
    pub q: Vec<Vec<Scalar>>,
}

impl TropicalTorus {
    pub fn new(q: Vec<Vec<Scalar>>) -> Self {
        let n = q.len();
        assert!(q.iter().all(|r| r.len() == n), "Q must be square");
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(q[i][j], q[j][i], "Q must be symmetric");
            }
        }
        TropicalTorus { n, q }
    }

    /// Column i of Q as a vector: the i-th period lattice generator.
    pub fn lattice_column(&self, i: usize) -> Vec<Scalar> {
        (0..self.n).map(|r| self.q[r][i].clone()).collect()
    }

    pub fn lattice(&self) -> Vec<Vec<Scalar>> {
        (0..self.n).map(|i| self.lattice_column(i)).collect()
    }

    /// Positive definiteness via leading principal minors. `None` when Q is
    /// not entirely numeric (symbolic positivity is out of scope).
    pub fn is_positive_definite(&self) -> Option<bool> {
        if self
            .q
            .iter()
            .flatten()
            .any(|s| !s.is_constant())
        {
            return None;
        }
        for k in 1..=self.n {
            let minor: Vec<Vec<Scalar>> =
                (0..k).map(|r| (0..k).map(|c| self.q[r][c].clone()).collect()).collect();
            let det = det_scalar(&minor)
                .as_rational()
                .expect("numeric minor determinant");
            if !det.is_positive() {
                return Some(false);
            }
        }
        Some(true)
    }
}

/// Constant cochain of bidegree (j, k): a sparse sum of terms
/// `coefficient * e*_K (x) dx_J` with `K` a k-index and `J` a j-index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantCochain {
    pub n: usize,
    pub j: usize,
    pub k: usize,
    terms: BTreeMap<(MultiIndex, MultiIndex), Scalar>,
}

impl ConstantCochain {
    pub fn zero(n: usize, j: usize, k: usize) -> Self {
        ConstantCochain { n, j, k, terms: BTreeMap::new() }
    }

    pub fn insert_add(&mut self, key_k: MultiIndex, key_j: MultiIndex, c: Scalar) {
        assert_eq!(key_k.len(), self.k, "framing index length must be k");
        assert_eq!(key_j.len(), self.j, "form index length must be j");
        if c.is_zero() {
            return;
        }
        let key = (key_k, key_j);
        match self.terms.entry(key) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

/// The determinantal form of bidegree (j, k) on an n-torus: for every
/// (j+k)-subset I of {1..n} and every k-subset K of I with complement
/// S = I \ K, the term `(-1)^{inv(K, S)} e*_K (x) dx_S`.
pub fn determinantal_form(n: usize, j: usize, k: usize) -> Result<ConstantCochain> {
    if j + k > n {
        return Err(Error::DegreeMismatch(alloc::format!(
            "bidegree ({j},{k}) needs j+k <= n = {n}"
        )));
    }
    let mut out = ConstantCochain::zero(n, j, k);
    for i_set in subsets(n, j + k) {
        for positions in subsets(j + k, k) {
            let key_k: MultiIndex = positions.iter().map(|&p| i_set[p - 1]).collect();
            let key_j: MultiIndex = i_set
                .iter()
                .filter(|v| !key_k.contains(v))
                .copied()
                .collect();
            let sign = if inv_count(&key_k, &key_j) % 2 == 0 { 1 } else { -1 };
            out.insert_add(key_k, key_j, Scalar::from_int(sign, 0));
        }
    }
    Ok(out)
}

/// Pointwise evaluation of a cochain on a degree-k polyvector and j tangent
/// vectors: sum over terms of coefficient x (polyvector coefficient at K)
/// x det(rows J of the vector matrix). Multilinear and alternating in the
/// vectors.
pub fn evaluate_form(
    omega: &ConstantCochain,
    coframe: &ExteriorElement,
    vectors: &[Vec<Scalar>],
) -> Scalar {
    assert_eq!(coframe.degree(), omega.k, "polyvector degree must equal k");
    assert_eq!(vectors.len(), omega.j, "need exactly j vectors");
    let nvars = vectors
        .iter()
        .flatten()
        .map(Scalar::nvars)
        .max()
        .unwrap_or(0);
    let mut acc = Scalar::zero(nvars);
    for ((key_k, key_j), c) in omega.terms() {
        let pairing = coframe.coeff(key_k);
        if pairing.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> = key_j
            .iter()
            .map(|&row| vectors.iter().map(|v| v[row - 1].clone()).collect())
            .collect();
        let det = det_scalar(&minor);
        acc = &acc + &(&(c * &pairing) * &det);
    }
    acc
}

/// Finitely generated subgroup of the scalar ring, stored as a canonical
/// generator list: each generator sign-normalized to a positive leading
/// coefficient, zeros dropped, duplicates removed, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodGroup {
    pub generators: Vec<Scalar>,
}

impl PeriodGroup {
    pub fn new(raw: impl IntoIterator<Item = Scalar>) -> Self {
        let mut gens: Vec<Scalar> = raw
            .into_iter()
            .filter(|s| !s.is_zero())
            .map(|s| s.sign_normalized())
            .collect();
        gens.sort();
        gens.dedup();
        PeriodGroup { generators: gens }
    }

    /// Group equality: mutual lattice membership of all generators.
    pub fn same_group(&self, other: &PeriodGroup) -> bool {
        self.generators
            .iter()
            .all(|g| matches!(chains::classify_flux(g, other), chains::FluxVerdict::InLattice { .. }))
            && other
                .generators
                .iter()
                .all(|g| matches!(chains::classify_flux(g, self), chains::FluxVerdict::InLattice { .. }))
    }
}

/// Period generators of the determinantal form over `B(Q)` by the closed
/// formula: for each k-index `i` and j-index `r`, the signed sum over
/// j-subsets `s` disjoint from `i` of `(-1)^{inv(i, s)} det Q[s, r]`.
pub fn period_group(omega: &ConstantCochain, torus: &TropicalTorus) -> PeriodGroup {
    let (n, j, k) = (omega.n, omega.j, omega.k);
    assert_eq!(torus.n, n, "torus dimension must match the cochain");
    let nvars = torus
        .q
        .iter()
        .flatten()
        .map(Scalar::nvars)
        .max()
        .unwrap_or(0);
    let mut raw = Vec::new();
    for i_set in subsets(n, k) {
        let comp = complement(&i_set, n);
        for r_set in subsets(n, j) {
            let mut gen = Scalar::zero(nvars);
            for s_pos in subsets(comp.len(), j) {
                let s_set: MultiIndex = s_pos.iter().map(|&p| comp[p - 1]).collect();
                let minor: Vec<Vec<Scalar>> = s_set
                    .iter()
                    .map(|&sr| {
                        r_set
                            .iter()
                            .map(|&rc| torus.q[sr - 1][rc - 1].clone())
                            .collect()
                    })
                    .collect();
                let sign = if inv_count(&i_set, &s_set) % 2 == 0 { 1 } else { -1 };
                gen = &gen + &(&det_scalar(&minor) * &Scalar::from_int(sign, 0));
            }
            raw.push(gen);
        }
    }
    PeriodGroup::new(raw)
}

/// Brute-force period oracle: integrates the cochain over every basis
/// homology class, realized as the framed parallelotope with framing
/// `e_{i1} ^ ... ^ e_{ik}` and spanning vectors the Q-columns `r1..rj`.
/// Returns the same group as [`period_group`] (generators may differ by
/// sign before normalization).
pub fn period_oracle(omega: &ConstantCochain, torus: &TropicalTorus) -> PeriodGroup {
    let (n, j, k) = (omega.n, omega.j, omega.k);
    assert_eq!(torus.n, n, "torus dimension must match the cochain");
    let nvars = torus
        .q
        .iter()
        .flatten()
        .map(Scalar::nvars)
        .max()
        .unwrap_or(0);
    let lattice = torus.lattice();
    let mut raw = Vec::new();
    for i_set in subsets(n, k) {
        for r_set in subsets(n, j) {
            let spans: Vec<Vec<Scalar>> = r_set
                .iter()
                .map(|&r| torus.lattice_column(r - 1))
                .collect();
            let factors: Vec<Vec<i64>> = i_set
                .iter()
                .map(|&i| {
                    let mut v = vec![0i64; n];
                    v[i - 1] = 1;
                    v
                })
                .collect();
            let cell = FramedCell {
                base: vec![Scalar::zero(nvars); n],
                spans,
                weight: 1,
                framing: ExteriorElement::basis(n, &i_set),
                factors: Some(vec![factors]),
            };
            let chain = FramedChain::new(n, j, k, vec![cell], lattice.clone());
            raw.push(chains::integrate(omega, &chain));
        }
    }
    PeriodGroup::new(raw)
}
