//! The symplectic lift: constant forms and chains on the torus
//! `X(B) = T^{2n}` fibered over the tropical torus, the degree-shifting
//! chain maps between tropical and symplectic data, the integration pairing
//! they preserve, symplectic period groups, and the Lefschetz lattice on
//! middle-plus-one cohomology.
//!
//! Coordinates on `X(B)` are fixed globally as `(x_1..x_n, p_1..p_n)`; all
//! signs below derive from that order.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chains::{integrate, FramedChain};
use crate::exterior::{complement, inv_count, subsets, ExteriorElement, MultiIndex};
use crate::intmat::{kernel_saturated, solve_integer, IntMatrix};
use crate::scalar::{det_scalar, Scalar};
use crate::torus::{ConstantCochain, PeriodGroup, TropicalTorus};
use crate::{Error, Result};

/// Constant-coefficient differential form on `X(B)`: an exterior element
/// over the 2n coordinates, x-block indices 1..n and p-block indices
/// n+1..2n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantFormX {
    pub n: usize,
    pub el: ExteriorElement,
}

impl ConstantFormX {
    pub fn zero(n: usize, degree: usize) -> Self {
        ConstantFormX { n, el: ExteriorElement::zero(2 * n, degree) }
    }

    pub fn degree(&self) -> usize {
        self.el.degree()
    }

    pub fn scale(&self, s: &Scalar) -> ConstantFormX {
        ConstantFormX { n: self.n, el: self.el.scale(s) }
    }

    pub fn add(&self, other: &ConstantFormX) -> ConstantFormX {
        assert_eq!(self.n, other.n);
        ConstantFormX { n: self.n, el: self.el.add(&other.el) }
    }
}

/// The standard symplectic form `omega = sum_i dx_i ^ dp_i`. Its periods
/// over the mixed basis 2-cells of `X(B)` are the entries of Q.
pub fn symplectic_form(torus: &TropicalTorus) -> ConstantFormX {
    let n = torus.n;
    let mut el = ExteriorElement::zero(2 * n, 2);
    for i in 1..=n {
        el.insert_add(vec![i, n + i], Scalar::from_int(1, 0));
    }
    ConstantFormX { n, el }
}

/// Graded-commutative exterior product of forms on `X(B)`.
pub fn wedge_x(a: &ConstantFormX, b: &ConstantFormX) -> ConstantFormX {
    assert_eq!(a.n, b.n);
    ConstantFormX { n: a.n, el: a.el.wedge(&b.el) }
}

/// `omega^j` (j-fold wedge power; `omega^0 = 1`).
pub fn omega_power(torus: &TropicalTorus, j: usize) -> ConstantFormX {
    let n = torus.n;
    let mut acc = ConstantFormX { n, el: ExteriorElement::basis(2 * n, &[]) };
    let omega = symplectic_form(torus);
    for _ in 0..j {
        acc = wedge_x(&acc, &omega);
    }
    acc
}

/// The cochain-side Kunneth map: the term `e*_K (x) dx_J` of a (j,k)-cochain
/// goes to `dp_{K^c} ^ dx_J` with the shuffle sign of (K, K^c), times the
/// global twist `(-1)^{k + j(n-k)}` that makes the integration pairing hold.
/// In the sorted (x,p) basis the reordering of `dx_J` past `dp_{K^c}` cancels
/// the `j(n-k)` part, leaving the coefficient below.
pub fn psi_hat(omega: &ConstantCochain) -> ConstantFormX {
    let (n, k) = (omega.n, omega.k);
    let mut out = ConstantFormX::zero(n, omega.j + n - k);
    for ((key_k, key_j), c) in omega.terms() {
        let kc = complement(key_k, n);
        let mut idx: MultiIndex = key_j.clone();
        idx.extend(kc.iter().map(|&i| n + i));
        let mut sign = if inv_count(key_k, &kc) % 2 == 0 { 1 } else { -1 };
        if k % 2 == 1 {
            sign = -sign;
        }
        out.el.insert_add(idx, c * &Scalar::from_int(sign, 0));
    }
    out
}

/// Unframed parallelotope in `R^{2n}`.
#[derive(Debug, Clone)]
pub struct CellX {
    pub base: Vec<Scalar>,
    pub spans: Vec<Vec<Scalar>>,
    pub weight: i64,
}

/// Chain on `X(B)`: cells of a common degree, over the lattice spanned by
/// the Q-columns in the x-block and the standard basis in the p-block.
#[derive(Debug, Clone)]
pub struct ChainX {
    pub n: usize,
    pub degree: usize,
    pub cells: Vec<CellX>,
    pub lattice: Vec<Vec<Scalar>>,
}

/// The chain-side Kunneth map: a cell `(b; v_1..v_j)` with framing term
/// `c * e_I` goes to the (j + n - k)-cell with x-block spans `(v_i, 0)` and
/// p-block spans `(0, e_m)` for m in the complement of I, weighted by
/// `c * (-1)^{inv(I, I^c)}`. Linear over framing terms; framing
/// coefficients must be integers.
pub fn phi_hat(chain: &FramedChain, torus: &TropicalTorus) -> Result<ChainX> {
    let n = chain.n;
    assert_eq!(torus.n, n, "torus dimension must match the chain");
    let (j, k) = (chain.degree, chain.framing_degree);
    let mut cells = Vec::new();
    for cell in &chain.cells {
        for (idx, coeff) in cell.framing.terms() {
            let c_int = coeff
                .as_rational()
                .filter(|r| r.is_integer())
                .and_then(|r| i64::try_from(r.to_integer()).ok())
                .ok_or(Error::NoFactorization)?;
            let ic = complement(idx, n);
            let sign = if inv_count(idx, &ic) % 2 == 0 { 1 } else { -1 };
            let mut base: Vec<Scalar> = cell.base.clone();
            base.extend(vec![Scalar::zero(0); n]);
            let mut spans: Vec<Vec<Scalar>> = Vec::with_capacity(j + n - k);
            for v in &cell.spans {
                let mut s = v.clone();
                s.extend(vec![Scalar::zero(0); n]);
                spans.push(s);
            }
            for &m in &ic {
                let mut s = vec![Scalar::zero(0); 2 * n];
                s[n + m - 1] = Scalar::from_int(1, 0);
                spans.push(s);
            }
            cells.push(CellX {
                base,
                spans,
                weight: cell.weight * c_int * sign,
            });
        }
    }
    let mut lattice: Vec<Vec<Scalar>> = Vec::with_capacity(2 * n);
    for col in 0..n {
        let mut v = torus.lattice_column(col);
        v.extend(vec![Scalar::zero(0); n]);
        lattice.push(v);
    }
    for m in 0..n {
        let mut v = vec![Scalar::zero(0); 2 * n];
        v[n + m] = Scalar::from_int(1, 0);
        lattice.push(v);
    }
    Ok(ChainX { n, degree: j + n - k, cells, lattice })
}

/// Integral of a constant form over a chain on `X(B)`: the plain
/// determinant pairing, summed over cells and form terms.
pub fn integrate_x(alpha: &ConstantFormX, chain: &ChainX) -> Scalar {
    assert_eq!(alpha.n, chain.n, "ambient dimensions differ");
    assert_eq!(alpha.degree(), chain.degree, "form degree must match chain degree");
    let mut acc = Scalar::zero(0);
    for cell in &chain.cells {
        let mut cell_val = Scalar::zero(0);
        for (idx, c) in alpha.el.terms() {
            let minor: Vec<Vec<Scalar>> = idx
                .iter()
                .map(|&row| cell.spans.iter().map(|v| v[row - 1].clone()).collect())
                .collect();
            cell_val = &cell_val + &(c * &det_scalar(&minor));
        }
        acc = &acc + &(&cell_val * &Scalar::from_int(cell.weight, 0));
    }
    acc
}

/// The pairing-preservation identity: the tropical integral of a cochain
/// over a framed chain equals the symplectic integral of its lifted form
/// over the lifted chain.
pub fn pairing_check(
    chain: &FramedChain,
    omega: &ConstantCochain,
    torus: &TropicalTorus,
) -> Result<bool> {
    let lhs = integrate(omega, chain);
    let rhs = integrate_x(&psi_hat(omega), &phi_hat(chain, torus)?);
    Ok((&lhs - &rhs).is_zero())
}

/// Periods of a constant form over all basis parallelotopes of `X(B)`:
/// cells spanned by subsets of the 2n vectors `(Q e_i, 0)` and `(0, e_m)`.
pub fn symplectic_period_group(alpha: &ConstantFormX, torus: &TropicalTorus) -> PeriodGroup {
    let n = alpha.n;
    assert_eq!(torus.n, n, "torus dimension must match the form");
    let deg = alpha.degree();
    let mut raw = Vec::new();
    for d_set in subsets(2 * n, deg) {
        let spans: Vec<Vec<Scalar>> = d_set
            .iter()
            .map(|&d| {
                if d <= n {
                    let mut v = torus.lattice_column(d - 1);
                    v.extend(vec![Scalar::zero(0); n]);
                    v
                } else {
                    let mut v = vec![Scalar::zero(0); 2 * n];
                    v[n + (d - n) - 1] = Scalar::from_int(1, 0);
                    v
                }
            })
            .collect();
        let cell = CellX { base: vec![Scalar::zero(0); 2 * n], spans, weight: 1 };
        let chain = ChainX { n, degree: deg, cells: vec![cell], lattice: Vec::new() };
        raw.push(integrate_x(alpha, &chain));
    }
    PeriodGroup::new(raw)
}

/// One Lefschetz level: `omega^i` cup the saturated integer kernel of
/// `omega^{2i}` from degree n+1-2i to n+1+2i.
#[derive(Debug, Clone)]
pub struct LefschetzLevel {
    pub i: usize,
    pub primitive_rank: usize,
    pub classes: Vec<ConstantFormX>,
}

/// Integer basis of middle-plus-one cohomology of `X(B)` assembled from the
/// Lefschetz decomposition.
#[derive(Debug, Clone)]
pub struct LefschetzLattice {
    pub n: usize,
    pub levels: Vec<LefschetzLevel>,
    /// whether each fiber-volume class `dx_s ^ dp_1..dp_n` was verified to
    /// lie in the level-1 component as an omega-multiple of an integer
    /// primitive class
    pub fiber_classes_in_level_one: bool,
}

impl LefschetzLattice {
    pub fn rank(&self) -> usize {
        self.levels.iter().map(|l| l.classes.len()).sum()
    }
}

fn integer_coeff(s: &Scalar) -> BigInt {
    let r = s.as_rational().expect("exterior coefficient must be constant");
    assert!(r.is_integer(), "exterior coefficient must be an integer");
    r.to_integer()
}

/// Matrix of `power ^ (-)` from degree `src_deg` to `src_deg + power.degree`,
/// over the standard bases of both exterior powers. Entries are integers.
fn wedge_matrix(power: &ExteriorElement, two_n: usize, src_deg: usize) -> (IntMatrix, Vec<MultiIndex>, Vec<MultiIndex>) {
    let src = subsets(two_n, src_deg);
    let dst = subsets(two_n, src_deg + power.degree());
    let mut m = IntMatrix::zero(dst.len(), src.len());
    for (col, idx) in src.iter().enumerate() {
        let image = power.wedge(&ExteriorElement::basis(two_n, idx));
        for (key, c) in image.terms() {
            let row = dst.binary_search(key).expect("image term in basis");
            m.set(row, col, integer_coeff(c));
        }
    }
    (m, src, dst)
}

/// Integer basis of `H^{n+1}` of `X(B)` from the Lefschetz decomposition:
/// for each level i >= 1 with n+1-2i >= 0, the classes `omega^i ^ kappa`
/// with kappa running over a saturated integer basis of
/// `ker(omega^{2i}: Lambda^{n+1-2i} -> Lambda^{n+1+2i})`. Also verifies
/// that every fiber-volume class `dx_s ^ dp_1..dp_n` is an omega-multiple
/// of an integer level-1 primitive class. Requires numeric invertible Q.
pub fn lefschetz_lattice(torus: &TropicalTorus) -> Result<LefschetzLattice> {
    let n = torus.n;
    if torus.q.iter().flatten().any(|s| !s.is_constant()) {
        return Err(Error::SymbolicInput(String::from(
            "the Lefschetz lattice needs numeric edge lengths",
        )));
    }
    let det = det_scalar(&torus.q)
        .as_rational()
        .expect("numeric determinant");
    if det.is_zero() {
        return Err(Error::BadLayout(String::from(
            "the polarisation matrix must be invertible",
        )));
    }
    let two_n = 2 * n;
    let omega = symplectic_form(torus).el;
    let mut levels = Vec::new();
    let mut level_one_kernel: Vec<ExteriorElement> = Vec::new();
    let mut i = 1;
    while n + 1 >= 2 * i {
        let src_deg = n + 1 - 2 * i;
        let mut power = ExteriorElement::basis(two_n, &[]);
        for _ in 0..2 * i {
            power = power.wedge(&omega);
        }
        let kernel: Vec<ExteriorElement> = if power.is_zero()
            || src_deg + 2 * (2 * i) > two_n
        {
            // the cup map is identically zero: the kernel is everything
            subsets(two_n, src_deg)
                .iter()
                .map(|idx| ExteriorElement::basis(two_n, idx))
                .collect()
        } else {
            let (m, src, _) = wedge_matrix(&power, two_n, src_deg);
            kernel_saturated(&m)
                .into_iter()
                .map(|coords| {
                    let mut el = ExteriorElement::zero(two_n, src_deg);
                    for (pos, c) in coords.iter().enumerate() {
                        el.insert_add(src[pos].clone(), Scalar::from_bigint(c.clone(), 0));
                    }
                    el
                })
                .collect()
        };
        let mut omega_i = ExteriorElement::basis(two_n, &[]);
        for _ in 0..i {
            omega_i = omega_i.wedge(&omega);
        }
        let classes: Vec<ConstantFormX> = kernel
            .iter()
            .map(|kappa| ConstantFormX { n, el: omega_i.wedge(kappa) })
            .collect();
        if i == 1 {
            level_one_kernel = kernel.clone();
        }
        levels.push(LefschetzLevel { i, primitive_rank: kernel.len(), classes });
        i += 1;
    }

    // Fiber-volume classes dx_s ^ dp_1..dp_n must be omega-multiples of
    // integer primitive classes at level 1.
    let mut verified = true;
    if !level_one_kernel.is_empty() {
        let dst = subsets(two_n, n + 1);
        let mut m = IntMatrix::zero(dst.len(), level_one_kernel.len());
        for (col, kappa) in level_one_kernel.iter().enumerate() {
            let image = omega.wedge(kappa);
            for (key, c) in image.terms() {
                let row = dst.binary_search(key).expect("image term in basis");
                m.set(row, col, integer_coeff(c));
            }
        }
        for s in 1..=n {
            let mut target: MultiIndex = vec![s];
            target.extend((1..=n).map(|m| n + m));
            let b: Vec<BigInt> = dst
                .iter()
                .map(|idx| if *idx == target { BigInt::from(1) } else { BigInt::zero() })
                .collect();
            if solve_integer(&m, &b).is_none() {
                verified = false;
                break;
            }
        }
    } else {
        verified = false;
    }

    Ok(LefschetzLattice { n, levels, fiber_classes_in_level_one: verified })
}
