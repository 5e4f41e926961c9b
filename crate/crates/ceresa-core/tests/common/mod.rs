//! Shared fixtures: the graphs, tori, and random generators used across the
//! integration tests.

#![allow(dead_code)]

use ceresa_core::graph::Edge;
use ceresa_core::{FramedCell, FramedChain, MetricGraph, Scalar, TropicalTorus};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn sc(num: i64, den: i64) -> Scalar {
    Scalar::from_rational(ratio(num, den), 0)
}

pub fn si(v: i64) -> Scalar {
    Scalar::from_int(v, 0)
}

/// Complete graph on four vertices in the layout the Ceresa pipeline expects:
/// the first three edges form a star at `p0`, the last three close the three
/// independent cycles.  Edge lengths are passed in listing order
/// (D: p0-p1, E: p0-p2, F: p0-p3, A: p2-p3, B: p3-p1, C: p1-p2).
pub fn k4_with(lengths: [Scalar; 6], var_names: Vec<String>) -> MetricGraph {
    let [d, e, f, a, b, c] = lengths;
    MetricGraph {
        vertex_names: vec!["p0".into(), "p1".into(), "p2".into(), "p3".into()],
        var_names,
        edges: vec![
            Edge { name: "D".into(), from: 0, to: 1, length: d },
            Edge { name: "E".into(), from: 0, to: 2, length: e },
            Edge { name: "F".into(), from: 0, to: 3, length: f },
            Edge { name: "A".into(), from: 2, to: 3, length: a },
            Edge { name: "B".into(), from: 3, to: 1, length: b },
            Edge { name: "C".into(), from: 1, to: 2, length: c },
        ],
        basepoint: 1,
        basepoint2: Some(3),
    }
}

pub fn k4_var_names() -> Vec<String> {
    ["a", "b", "c", "d", "e", "f"].iter().map(|s| s.to_string()).collect()
}

/// K4 with six independent symbolic edge lengths a..f.
pub fn k4_symbolic() -> MetricGraph {
    let v = |i| Scalar::var(i, 6);
    k4_with([v(3), v(4), v(5), v(0), v(1), v(2)], k4_var_names())
}

/// K4 with the rational test lengths (a,b,c,d,e,f) = (1, 1/2, 3/2, 1, 1/2, 1).
pub fn k4_numeric() -> MetricGraph {
    k4_with(
        [si(1), sc(1, 2), si(1), si(1), sc(1, 2), sc(3, 2)],
        Vec::new(),
    )
}

/// K4 specialised to a = d = e = f = s with b, c, s symbolic.
pub fn k4_torsion() -> MetricGraph {
    let b = Scalar::var(0, 3);
    let c = Scalar::var(1, 3);
    let s = || Scalar::var(2, 3);
    k4_with(
        [s(), s(), s(), s(), b, c],
        ["b", "c", "s"].iter().map(|x| x.to_string()).collect(),
    )
}

/// Single vertex with one loop of symbolic length l.
pub fn loop_graph() -> MetricGraph {
    MetricGraph {
        vertex_names: vec!["v".into()],
        var_names: vec!["l".into()],
        edges: vec![Edge { name: "L".into(), from: 0, to: 0, length: Scalar::var(0, 1) }],
        basepoint: 0,
        basepoint2: None,
    }
}

/// Theta graph: two vertices joined by three edges.  The listing order makes
/// e2 the tree edge, so the cycles are e1 - e2 and e2 + e3.
pub fn theta_graph() -> MetricGraph {
    let v = |i| Scalar::var(i, 3);
    MetricGraph {
        vertex_names: vec!["v".into(), "w".into()],
        var_names: vec!["l1".into(), "l2".into(), "l3".into()],
        edges: vec![
            Edge { name: "e2".into(), from: 0, to: 1, length: v(1) },
            Edge { name: "e1".into(), from: 0, to: 1, length: v(0) },
            Edge { name: "e3".into(), from: 1, to: 0, length: v(2) },
        ],
        basepoint: 0,
        basepoint2: None,
    }
}

/// The polarisation torus of the symbolic K4.
pub fn k4_torus() -> TropicalTorus {
    let g = k4_symbolic();
    let basis = g.cycle_basis().expect("K4 is connected");
    TropicalTorus::new(g.polarisation_matrix(&basis))
}

/// Random symmetric integer matrix with entries in [-bound, bound].
pub fn random_symmetric_q(r: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Vec<Scalar>> {
    let mut q = vec![vec![Scalar::from_int(0, 0); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = r.gen_range(-bound..=bound);
            q[i][j] = Scalar::from_int(v, 0);
            q[j][i] = Scalar::from_int(v, 0);
        }
    }
    q
}

/// Random integer vector of constants.
pub fn random_vector(r: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Scalar> {
    (0..n).map(|_| Scalar::from_int(r.gen_range(-bound..=bound), 0)).collect()
}

/// Random framed cell of dimension `dim` and framing degree `k` in rank n,
/// with integer data.  Spans are kept linearly independent by construction:
/// a random unimodular-ish integer matrix is sampled until the first `dim`
/// columns have full rank.
pub fn random_cell(r: &mut ChaCha8Rng, n: usize, dim: usize, k: usize) -> FramedCell {
    use ceresa_core::ExteriorElement;
    loop {
        let base = random_vector(r, n, 3);
        let spans: Vec<Vec<Scalar>> = (0..dim).map(|_| random_vector(r, n, 2)).collect();
        let ok = ceresa_core::scalar::rank_scalar(&spans) == dim;
        if !ok {
            continue;
        }
        let mut framing = ExteriorElement::zero(n, k);
        let idxs = subsets_of(n, k);
        for idx in &idxs {
            let coeff = r.gen_range(-2..=2i64);
            if coeff != 0 {
                framing = framing.add(&ExteriorElement::basis(n, idx).scale_int(coeff));
            }
        }
        if framing.is_zero() {
            framing = ExteriorElement::basis(n, &idxs[0]);
        }
        let factors = spans.iter().map(|v| {
            v.iter()
                .map(|s| s.as_rational().expect("integer entry").to_integer())
                .map(|b| i64::try_from(&b).expect("small entry"))
                .collect::<Vec<i64>>()
        });
        let factors: Vec<Vec<i64>> = factors.collect();
        return FramedCell {
            base,
            spans,
            weight: r.gen_range(1..=3i64) * if r.gen_bool(0.5) { 1 } else { -1 },
            framing,
            factors: Some(vec![factors.clone()]),
        };
    }
}

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(0); n]
}

pub fn int_vec(entries: &[i64]) -> Vec<Scalar> {
    entries.iter().map(|&v| si(v)).collect()
}

/// Columns of the identity matrix, as a lattice for chains on the standard
/// torus.
pub fn identity_lattice(n: usize) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|i| (0..n).map(|r| si((r == i) as i64)).collect())
        .collect()
}

/// 1-based strictly increasing k-subsets of 1..=n in lexicographic order.
pub fn subsets_of(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..=n {
            acc.push(i);
            go(i + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Random framed chain: a handful of independent random cells sharing the
/// torus lattice.
pub fn random_chain(
    r: &mut ChaCha8Rng,
    torus: &TropicalTorus,
    dim: usize,
    k: usize,
    cells: usize,
) -> FramedChain {
    let n = torus.n;
    let cells: Vec<FramedCell> = (0..cells).map(|_| random_cell(r, n, dim, k)).collect();
    FramedChain::new(n, dim, k, cells, torus.lattice())
}
